"""PBW normal form for the higher reduced enveloping algebra of SL2.

Monomials are f^(i) binom(h, k) e^(j) with i, j, k < N = p^(r+1).  All
structure constants live in F_p (chi is canonical, so its values do too);
coefficients of an `AlgebraElement` may sit in an extension field.

Product of two monomials (f^(i1) B1 e^(j1)) (f^(i2) B2 e^(j2)):

    e^(a) f^(b)  = sum_t f^(b-t) binom(h - a - b + 2t, t) e^(a-t)
    P(h) f^(m)   = f^(m) P(h - 2m)
    e^(m) P(h)   = P(h - 2m) e^(m)

then merge like generators digit by digit and multiply toral parts in
the level algebra  (x)_u F_p[y_u]/(y_u^p - y_u - c_u),  y_u = binom(h, p^u).
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import linalg as la
from .combinatorics import binom_mod_p, digits, factorial_mod_p, from_digits, inv_factorial_mod_p, multinomial_mod_p
from .errors import ContextMismatchError, LevelError
from .field import FieldElem
from .weights import ChiForm, shift_matrix


@dataclass(frozen=True)
class Context:
    chi: ChiForm

    @property
    def p(self):
        return self.chi.p

    @property
    def r(self):
        return self.chi.r

    @property
    def N(self):
        return self.chi.N

    @property
    def field(self):
        return self.chi.field()


@dataclass(frozen=True, order=True)
class PbwMonomial:
    i: int
    k: int
    j: int


# ---------------------------------------------------------------- scalars


@lru_cache(maxsize=None)
def merge_divided(a, b, p, r, chi_top):
    """f^(a) f^(b) = coeff * f^(index) for one family of divided powers.

    A carry below the top level kills the product; a top-level overflow
    a_r + b_r = p + s contributes chi_top * s! / (a_r! b_r!).
    Returns (coeff mod p, index) or (0, None).
    """
    da, db = digits(a, p, r + 1), digits(b, p, r + 1)
    coeff = 1
    out = []
    for u in range(r + 1):
        x, y = da[u], db[u]
        if x + y < p:
            coeff = coeff * binom_mod_p(x + y, x, p) % p
            out.append(x + y)
        elif u < r or chi_top == 0:
            return 0, None
        else:
            s = x + y - p
            coeff = coeff * chi_top * factorial_mod_p(s, p) * inv_factorial_mod_p(x, p) * inv_factorial_mod_p(y, p) % p
            out.append(s)
    if coeff == 0:
        return 0, None
    return coeff, from_digits(out, p)


def _level_tensor(p, c):
    """t[a, b, m] with binom(y, a) binom(y, b) = sum_m t[a,b,m] binom(y, m) in F_p[y]/(y^p - y - c)."""
    # column a of P holds the power-basis coefficients of binom(y, a)
    P = np.zeros((p, p), dtype=np.int64)
    for a in range(p):
        poly = np.zeros(p, dtype=np.int64)
        poly[0] = 1
        for s in range(a):
            # multiply by (y - s)
            new = np.zeros(p, dtype=np.int64)
            new[1:] = poly[:-1]
            new = (new - s * poly) % p
            poly = new
        P[:, a] = poly * inv_factorial_mod_p(a, p) % p
    from .field import prime_field

    F = prime_field(p)
    Pinv = la.inverse(F, la.from_ints(F, P))[..., 0]
    t = np.zeros((p, p, p), dtype=np.int64)
    for a in range(p):
        for b in range(p):
            prod = np.convolve(P[:, a], P[:, b]) % p
            # reduce y^m for m >= p via y^p = y + c
            for m in range(len(prod) - 1, p - 1, -1):
                coef = prod[m]
                if coef:
                    prod[m] = 0
                    prod[m - p + 1] += coef
                    prod[m - p] += coef * c
            prod = prod[:p] % p
            t[a, b] = Pinv @ prod % p
    return t


@lru_cache(maxsize=None)
def toral_tensor(p, r, c_top):
    """T[k, l, m]: binom(h,k) binom(h,l) = sum_m T[k,l,m] binom(h,m), k, l, m < p^(r+1)."""
    N = p ** (r + 1)
    D = np.array([digits(k, p, r + 1) for k in range(N)], dtype=np.int64)
    T = np.ones((N, N, N), dtype=np.int64)
    for u in range(r + 1):
        t = _level_tensor(p, c_top if u == r else 0)
        T = T * t[D[:, u][:, None, None], D[:, u][None, :, None], D[:, u][None, None, :]] % p
    T.setflags(write=False)
    return T


def toral_tensor_from_structure_constants(p, r):
    """The same table from delta_k delta_l = sum_i (k+l-i)!/((k-i)!(l-i)!i!) delta_(k+l-i).

    Only valid without the chi deformation; indices >= p^(r+1) must carry
    zero coefficients, which is asserted.
    """
    N = p ** (r + 1)
    T = np.zeros((N, N, N), dtype=np.int64)
    for k in range(N):
        for l in range(N):
            for i in range(min(k, l) + 1):
                c = multinomial_mod_p([k - i, l - i, i], p)
                m = k + l - i
                if m >= N:
                    assert c == 0, f"nonzero out-of-range coefficient at delta_{k} delta_{l}, index {m}"
                    continue
                T[k, l, m] = c
    return T


def toral_mul(T, x, y, p):
    return np.einsum("k,l,klm->m", x, y, T) % p


# ---------------------------------------------------------------- engine


class Engine:
    """Caches all monomial products for one context."""

    _instances = {}

    def __new__(cls, ctx):
        key = ctx.chi
        inst = cls._instances.get(key)
        if inst is None:
            inst = super().__new__(cls)
            inst._init(ctx)
            cls._instances[key] = inst
        return inst

    def _init(self, ctx):
        self.ctx = ctx
        self.p, self.r, self.N = ctx.p, ctx.r, ctx.N
        self.T = toral_tensor(self.p, self.r, ctx.chi.c_h)
        self._mono_cache = {}
        self._kostant_cache = {}

    def shift(self, n):
        return shift_matrix(n, self.p, self.N)

    def unit(self, k):
        v = np.zeros(self.N, dtype=np.int64)
        v[k] = 1
        return v

    def kostant(self, a, b):
        """e^(a) f^(b) as a list of (f index, toral vector, e index)."""
        key = (a, b)
        out = self._kostant_cache.get(key)
        if out is None:
            out = []
            for t in range(min(a, b) + 1):
                C = self.shift(-a - b + 2 * t)[:, t].copy()
                if np.any(C):
                    out.append((b - t, C, a - t))
            self._kostant_cache[key] = out
        return out

    def monomial_product(self, m1, m2):
        """Product of two PBW monomials as a dict {(i, k, j): int mod p}."""
        key = (m1, m2)
        out = self._mono_cache.get(key)
        if out is not None:
            return out
        p = self.p
        chi = self.ctx.chi
        i1, k1, j1 = m1
        i2, k2, j2 = m2
        acc = {}
        for fi, C, ej in self.kostant(j1, i2):
            cf, I = merge_divided(i1, fi, p, self.r, chi.c_f)
            if not cf:
                continue
            ce, J = merge_divided(ej, j2, p, self.r, chi.c_e)
            if not ce:
                continue
            B1 = self.shift(-2 * fi)[:, k1]
            B2 = self.shift(-2 * ej)[:, k2]
            B = toral_mul(self.T, toral_mul(self.T, B1, C, p), B2, p)
            scale = cf * ce % p
            for K in np.nonzero(B)[0]:
                key2 = (I, int(K), J)
                acc[key2] = (acc.get(key2, 0) + scale * int(B[K])) % p
        out = {m: c for m, c in acc.items() if c}
        self._mono_cache[key] = out
        return out


class AlgebraElement:
    """Sparse linear combination of PBW monomials with field coefficients."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx, terms=None):
        self.ctx = ctx
        F = ctx.field
        clean = {}
        for m, c in (terms or {}).items():
            m = m if isinstance(m, tuple) else (m.i, m.k, m.j)
            for x in m:
                if not 0 <= x < ctx.N:
                    raise LevelError(f"exponent code {x} outside [0, {ctx.N})")
            c = F(c)
            if not c.is_zero():
                clean[m] = clean[m] + c if m in clean else c
        self.terms = {m: c for m, c in clean.items() if not c.is_zero()}

    @classmethod
    def monomial(cls, ctx, i=0, k=0, j=0, coeff=1):
        return cls(ctx, {(i, k, j): coeff})

    @classmethod
    def one(cls, ctx):
        return cls.monomial(ctx)

    def _check(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        if other.ctx != self.ctx:
            raise ContextMismatchError("elements live in different algebras")
        return other

    def __add__(self, other):
        other = self._check(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms[m] + c if m in terms else c
        return AlgebraElement(self.ctx, terms)

    def __neg__(self):
        return AlgebraElement(self.ctx, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, FieldElem)):
            return AlgebraElement(self.ctx, {m: c * other for m, c in self.terms.items()})
        return pbw_multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, FieldElem)):
            return self * other
        return NotImplemented

    def __pow__(self, n):
        out = AlgebraElement.one(self.ctx)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        return isinstance(other, AlgebraElement) and self.ctx == other.ctx and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted((m, c.coeffs) for m, c in self.terms.items())))

    def is_zero(self):
        return not self.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = [f"{c!r}*f({i})B({k})e({j})" for (i, k, j), c in sorted(self.terms.items())]
        return " + ".join(parts)

    def to_json(self):
        return [{"i": i, "k": k, "j": j, "coeff": c.to_json()} for (i, k, j), c in sorted(self.terms.items())]

    @classmethod
    def from_json(cls, ctx, obj):
        F = ctx.field
        return cls(ctx, {(d["i"], d["k"], d["j"]): F(d["coeff"]) for d in obj})


def generator(ctx, kind, level):
    if not 0 <= level <= ctx.r:
        raise LevelError(f"level {level} not in [0, {ctx.r}]")
    q = ctx.p**level
    if kind == "e":
        return AlgebraElement.monomial(ctx, j=q)
    if kind == "h":
        return AlgebraElement.monomial(ctx, k=q)
    if kind == "f":
        return AlgebraElement.monomial(ctx, i=q)
    raise ValueError(f"unknown generator kind {kind!r}")


def pbw_multiply(x, y):
    if x.ctx != y.ctx:
        raise ContextMismatchError("elements live in different algebras")
    eng = Engine(x.ctx)
    F = x.ctx.field
    acc = {}
    for m1, c1 in x.terms.items():
        for m2, c2 in y.terms.items():
            c12 = c1 * c2
            for m, s in eng.monomial_product(m1, m2).items():
                v = c12 * s
                acc[m] = acc[m] + v if m in acc else v
    return AlgebraElement(x.ctx, acc)


# ---------------------------------------------------------------- modules


def matrix_binom(F, X, a):
    """binom(X, a) = X (X-1) ... (X-a+1) / a! for a matrix X and a < p."""
    n = X.shape[0]
    I = la.identity(F, n)
    acc = I
    for s in range(a):
        acc = la.matmul(F, acc, la.sub(F, X, (s * I) % F.p))
    return la.scale(F, inv_factorial_mod_p(a, F.p), acc)


class MonomialActor:
    """Evaluates PBW monomials on a module given by generator matrices."""

    def __init__(self, rep):
        self.rep = rep
        self.F = rep.field
        self._cache = {}

    def _family(self, name, code):
        key = (name, code)
        M = self._cache.get(key)
        if M is not None:
            return M
        rep, F, p = self.rep, self.F, self.rep.p
        mats = getattr(rep, name)
        M = la.identity(F, rep.dim)
        for u, a in enumerate(digits(code, p, rep.r + 1)):
            if a == 0:
                continue
            if name == "H":
                part = matrix_binom(F, mats[u], a)
            else:
                part = la.scale(F, inv_factorial_mod_p(a, p), la.matpow(F, mats[u], a))
            M = la.matmul(F, M, part)
        self._cache[key] = M
        return M

    def f(self, i):
        return self._family("F", i)

    def hb(self, k):
        return self._family("H", k)

    def e(self, j):
        return self._family("E", j)

    def shifted_hb(self, n, l):
        """Matrix of binom(h + n, l)."""
        p = self.rep.p
        S = shift_matrix(n, p, p ** (self.rep.r + 1))
        out = la.zeros(self.F, (self.rep.dim, self.rep.dim))
        for t in range(l + 1):
            if S[t, l]:
                out = la.add(self.F, out, la.scale(self.F, int(S[t, l]), self.hb(t)))
        return out

    def monomial(self, i, k, j):
        key = ("mono", i, k, j)
        M = self._cache.get(key)
        if M is None:
            F = self.F
            M = la.matmul(F, la.matmul(F, self.f(i), self.hb(k)), self.e(j))
            self._cache[key] = M
        return M

    def element(self, x):
        F = self.F
        out = la.zeros(F, (self.rep.dim, self.rep.dim))
        for (i, k, j), c in x.terms.items():
            out = la.add(F, out, la.scale(F, F(c), self.monomial(i, k, j)))
        return out


def act_on_module(x, rep):
    if x.ctx.chi != rep.chi:
        raise ContextMismatchError("element and module have different contexts")
    return rep.actor().element(x)


def verify_centrality(rep):
    """Central elements act by the chi scalars and commute with every generator."""
    F, p, r = rep.field, rep.p, rep.r
    n = rep.dim
    I = la.identity(F, n)
    chi = rep.chi
    central = {
        "e^(p^r) to the p": (la.matpow(F, rep.E[r], p), chi.c_e),
        "f^(p^r) to the p": (la.matpow(F, rep.F[r], p), chi.c_f),
        "binom(h,p^r)^p - binom(h,p^r)": (la.sub(F, la.matpow(F, rep.H[r], p), rep.H[r]), chi.c_h),
    }
    report = {"ok": True, "violations": [], "scalars": {}}
    gens = [(f"{name}{u}", M) for name in "EHF" for u, M in enumerate(getattr(rep, name))]
    for label, (Z, c) in central.items():
        expected = la.scale(F, pow(c, p, p), I)
        report["scalars"][label] = c
        if not la.equal(Z, expected):
            report["ok"] = False
            report["violations"].append(f"{label} is not {c}^p * I")
        for g, M in gens:
            if not la.is_zero(la.commutator(F, Z, M)):
                report["ok"] = False
                report["violations"].append(f"{label} does not commute with {g}")
    return report
