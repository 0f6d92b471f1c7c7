"""Modules given by generator matrices, and the Verma-type constructions.

E[u], H[u], F[u] are the actions of e^(p^u), binom(h, p^u), f^(p^u).
"""

from dataclasses import dataclass, field as dc_field

import numpy as np

from . import linalg as la
from .algebra import AlgebraElement, Context, Engine, MonomialActor, generator
from .combinatorics import binom_mod_p, digits, factorial_mod_p, inv_factorial_mod_p
from .errors import InvalidExtensionError, InvalidWeightError, LiftError, SpecMismatchError
from .field import FieldElem, FiniteField
from .weights import ChiForm, Weight, shifted_table

FAMILIES = ("E", "H", "F")


@dataclass(eq=False)
class ModuleRep:
    chi: ChiForm
    field: FiniteField
    E: list
    H: list
    F: list
    labels: list = dc_field(default=None)

    def __post_init__(self):
        n = self.E[0].shape[0]
        for name in FAMILIES:
            mats = getattr(self, name)
            if len(mats) != self.chi.r + 1:
                raise ValueError(f"{name} needs {self.chi.r + 1} matrices, got {len(mats)}")
            for M in mats:
                if M.shape != (n, n, self.field.d):
                    raise SpecMismatchError(f"matrix of shape {M.shape}, expected {(n, n, self.field.d)}")
        self._actor = None

    @property
    def dim(self):
        return self.E[0].shape[0]

    @property
    def p(self):
        return self.chi.p

    @property
    def r(self):
        return self.chi.r

    def generators(self):
        """(label, matrix) for all 3(r+1) generators."""
        return [(f"{name}{u}", M) for name in FAMILIES for u, M in enumerate(getattr(self, name))]

    def matrices(self):
        return [M for _, M in self.generators()]

    def actor(self):
        if self._actor is None:
            self._actor = MonomialActor(self)
        return self._actor

    def copy(self):
        return ModuleRep(self.chi, self.field, [M.copy() for M in self.E], [M.copy() for M in self.H],
                         [M.copy() for M in self.F], self.labels)

    def restrict_to(self, idx):
        """Generator matrices compressed to the coordinates in idx."""
        idx = np.asarray(idx, dtype=np.int64)
        cut = lambda M: M[np.ix_(idx, idx)]
        labels = [self.labels[i] for i in idx] if self.labels else None
        return ModuleRep(self.chi, self.field, [cut(M) for M in self.E], [cut(M) for M in self.H],
                         [cut(M) for M in self.F], labels)

    def change_basis(self, P):
        """Matrices in the basis given by the columns of P."""
        F = self.field
        Pinv = la.inverse(F, P)
        conj = lambda M: la.matmul(F, Pinv, la.matmul(F, M, P))
        return ModuleRep(self.chi, F, [conj(M) for M in self.E], [conj(M) for M in self.H],
                         [conj(M) for M in self.F])

    def over(self, field):
        """The same module with scalars extended to ``field``."""
        if field == self.field:
            return self
        emb = lambda M: la.embed(field, M)
        return ModuleRep(self.chi, field, [emb(M) for M in self.E], [emb(M) for M in self.H],
                         [emb(M) for M in self.F], self.labels)

    def to_json(self):
        F = self.field
        return {
            "dim": self.dim,
            "p": self.p,
            "r": self.r,
            "chi": self.chi.to_json(),
            "field": {"modulus": list(F.modulus)},
            "matrices": {name: [la.tolist(M) for M in getattr(self, name)] for name in FAMILIES},
        }

    @classmethod
    def from_json(cls, obj):
        p, r = obj["p"], obj["r"]
        chi = ChiForm.from_json(obj["chi"], p, r)
        F = chi.field()
        modulus = obj.get("field", {}).get("modulus")
        if modulus is not None and tuple(modulus) != F.modulus:
            F = FiniteField(p, modulus)
        mats = {name: [np.array(M, dtype=np.int64).reshape(obj["dim"], obj["dim"], F.d) % p
                       for M in obj["matrices"][name]] for name in FAMILIES}
        return cls(chi, F, mats["E"], mats["H"], mats["F"])


def trivial_module(chi, field=None):
    F = field or chi.field()
    if chi.c_f or chi.c_h:
        raise InvalidWeightError("a one-dimensional module needs chi = 0")
    z = [la.zeros(F, (1, 1)) for _ in range(chi.r + 1)]
    return ModuleRep(chi, F, list(z), [M.copy() for M in z], [M.copy() for M in z])


# ---------------------------------------------------------------- baby Verma


def e_coefficient(lam, l, k):
    """Scalar c with e^(l) v_k = c v_(k-l), as a coefficient vector."""
    p = lam.p
    out = np.zeros(lam.field.d, dtype=np.int64)
    if l > k:
        return out
    for t in range(l + 1):
        b = binom_mod_p(l - k, l - t, p)
        if b:
            out = (out + b * lam.table[t]) % p
    return out


def f_merge_onto(chi, l, k):
    """f^(l) v_k = c v_m, returned as (c, m) with c in F_p, or (0, None)."""
    from .algebra import merge_divided

    return merge_divided(l, k, chi.p, chi.r, chi.c_f)


def baby_verma(chi, lam):
    """Z(lambda) on the basis v_k = f^(k) m_0, from the closed-form actions."""
    if not isinstance(lam, Weight) or lam.chi != chi:
        raise InvalidWeightError("weight does not belong to this chi")
    p, r, F = chi.p, chi.r, lam.field
    N = chi.N
    E, H, Fm = [], [], []
    for u in range(r + 1):
        q = p**u
        Eu = la.zeros(F, (N, N))
        for k in range(q, N):
            Eu[k - q, k] = e_coefficient(lam, q, k)
        Hu = la.zeros(F, (N, N))
        for k in range(N):
            Hu[k, k] = shifted_table(lam, -2 * k)[q]
        Fu = la.zeros(F, (N, N))
        for k in range(N):
            c, m = f_merge_onto(chi, q, k)
            if c:
                Fu[m, k, 0] = c
        E.append(Eu)
        H.append(Hu)
        Fm.append(Fu)
    return ModuleRep(chi, F, E, H, Fm, labels=[f"v{k}" for k in range(N)])


def induced_verma(chi, lam):
    """Z(lambda) computed by the straightening engine.

    g v_k is read off from g f^(k) = sum c f^(i) binom(h, m) e^(j): only
    j = 0 survives on m_0, where binom(h, m) acts by lambda(binom(h, m)).
    """
    ctx = Context(chi)
    eng = Engine(ctx)
    p, r, F, N = chi.p, chi.r, lam.field, chi.N
    mats = {}
    for name, kind in zip(FAMILIES, "ehf"):
        mats[name] = []
        for u in range(r + 1):
            g = generator(ctx, kind, u)
            (mono,) = g.terms
            M = la.zeros(F, (N, N))
            for k in range(N):
                for (i, m, j), c in eng.monomial_product(mono, (k, 0, 0)).items():
                    if j == 0:
                        M[i, k] = (M[i, k] + c * lam.table[m]) % p
            mats[name].append(M)
    return ModuleRep(chi, F, mats["E"], mats["H"], mats["F"], labels=[f"v{k}" for k in range(N)])


# ---------------------------------------------------------------- teenage Verma


def highest_weight_vector(rep):
    """The unique (up to scalar) vector killed by every E_u."""
    F = rep.field
    K = la.kernel_of_stack(F, rep.E)
    if K.shape[0] != 1:
        raise InvalidExtensionError(f"expected a one-dimensional highest weight space, got {K.shape[0]}")
    return K[0]


def weight_basis(rep):
    """Columns F^(i) n0 for the i where they do not vanish, and those i."""
    F = rep.field
    n0 = highest_weight_vector(rep)
    actor = rep.actor()
    cols, idx = [], []
    for i in range(rep.p ** (rep.r + 1)):
        w = la.matmul(F, actor.f(i), n0)
        if not la.is_zero(w):
            cols.append(w)
            idx.append(i)
    P = np.stack(cols, axis=1)
    if len(idx) != rep.dim or la.rank(F, np.stack(cols, axis=0)) != rep.dim:
        raise InvalidExtensionError("f^(i) n0 do not form a basis; is N irreducible?")
    return P, idx


def teenage_verma(N_rep, top, chi):
    """Induce from N (level r-1, chi = 0) extended by e^(p^r) = 0 and binom(h, p^r) via top."""
    r = chi.r
    p = chi.p
    if r < 1 or N_rep.r != r - 1 or N_rep.chi.kind != "zero" or N_rep.p != p:
        raise InvalidExtensionError("N must be a level r-1 module with chi = 0")
    F = chi.field()
    top = F(top)
    if top ** p - top != F(chi.c_h):
        raise InvalidExtensionError(f"{top!r} does not solve X^p - X = {chi.c_h}")
    Nr = N_rep.over(F)
    P, idx = weight_basis(Nr)
    Nr = Nr.change_basis(P)
    n = Nr.dim
    q = p**r
    # highest weight of N, read on n0 = first basis vector
    low = []
    for u in range(r):
        h = la.entry(F, Nr.H[u], 0, 0)
        if not h.in_prime_subfield():
            raise InvalidExtensionError("N has a non-integral weight")
        low.append(h.to_int())
    lam = Weight(chi, tuple(low), top, F)
    # hat N: level r acts by e^(p^r) = 0 and binom(h, p^r) = lambda(binom(h - 2i, p^r)) on w_i
    Hr = la.zeros(F, (n, n))
    for pos, i in enumerate(idx):
        Hr[pos, pos] = shifted_table(lam, -2 * i)[q]
    hat = ModuleRep(chi, F, Nr.E + [la.zeros(F, (n, n))], Nr.H + [Hr], Nr.F + [la.zeros(F, (n, n))])
    actor = hat.actor()
    ctx = Context(chi)
    eng = Engine(ctx)
    dim = p * n
    mats = {}
    for name, kind in zip(FAMILIES, "ehf"):
        mats[name] = []
        for u in range(r + 1):
            (mono,) = generator(ctx, kind, u).terms
            M = la.zeros(F, (dim, dim))
            for b in range(p):
                for (I, K, J), c in eng.monomial_product(mono, (b * q, 0, 0)).items():
                    if J >= q:
                        continue
                    a, I_low = divmod(I, q)
                    block = la.scale(F, c, actor.monomial(I_low, K, J))
                    rows = slice(a * n, (a + 1) * n)
                    cols = slice(b * n, (b + 1) * n)
                    M[rows, cols] = la.add(F, M[rows, cols], block)
            mats[name].append(M)
    labels = [f"f({b * q}) w{i}" for b in range(p) for i in idx]
    return ModuleRep(chi, F, mats["E"], mats["H"], mats["F"], labels=labels), lam


# ---------------------------------------------------------------- lifting


def lift_module(rep, target_r):
    """Pull a level-s module back to level target_r; the lowest target_r - s levels act by 0."""
    s = rep.r
    if target_r < s:
        raise LiftError(f"cannot lift level {s} to lower level {target_r}")
    shift = target_r - s
    F = rep.field
    zero = lambda: la.zeros(F, (rep.dim, rep.dim))
    chi = rep.chi.with_level(target_r)
    mats = {name: [zero() for _ in range(shift)] + [M.copy() for M in getattr(rep, name)] for name in FAMILIES}
    out = ModuleRep(chi, F, mats["E"], mats["H"], mats["F"], rep.labels)
    report = verify_relations(out)
    if not report["ok"]:
        raise LiftError("lifted module violates relations: " + "; ".join(report["violations"][:3]))
    return out


# ---------------------------------------------------------------- relations


def verify_relations(rep, engine_check=False):
    """Check the defining relations of the higher reduced algebra as matrix identities."""
    F, p, r, n = rep.field, rep.p, rep.r, rep.dim
    chi = rep.chi
    I = la.identity(F, n)
    actor = MonomialActor(rep)
    violations = []
    checked = 0

    def expect(label, lhs, rhs):
        nonlocal checked
        checked += 1
        if not la.equal(lhs % p, rhs % p):
            violations.append(label)

    for u in range(r + 1):
        Ep, Fp, Hp = (la.matpow(F, M[u], p) for M in (rep.E, rep.F, rep.H))
        Z = la.zeros(F, (n, n))
        if u < r:
            expect(f"E{u}^p = 0", Ep, Z)
            expect(f"F{u}^p = 0", Fp, Z)
            expect(f"H{u}^p = H{u}", Hp, rep.H[u])
        else:
            expect(f"E{u}^p = chi_e", Ep, la.scale(F, chi.c_e, I))
            expect(f"F{u}^p = chi_f", Fp, la.scale(F, chi.c_f, I))
            expect(f"H{u}^p - H{u} = chi_h", la.sub(F, Hp, rep.H[u]), la.scale(F, chi.c_h, I))

    for name in FAMILIES:
        mats = getattr(rep, name)
        for s in range(r + 1):
            for u in range(s + 1, r + 1):
                expect(f"[{name}{s}, {name}{u}] = 0", la.commutator(F, mats[s], mats[u]), la.zeros(F, (n, n)))

    for s in range(r + 1):
        for u in range(r + 1):
            # e^(p^s) binom(h, p^u) = binom(h - 2p^s, p^u) e^(p^s)
            expect(f"E{s} H{u}", la.matmul(F, rep.E[s], rep.H[u]),
                   la.matmul(F, actor.shifted_hb(-2 * p**s, p**u), rep.E[s]))
            # binom(h, p^u) f^(p^s) = f^(p^s) binom(h - 2p^s, p^u)
            expect(f"H{u} F{s}", la.matmul(F, rep.H[u], rep.F[s]),
                   la.matmul(F, rep.F[s], actor.shifted_hb(-2 * p**s, p**u)))
            # e^(a) f^(b) = sum_t f^(b-t) binom(h - a - b + 2t, t) e^(a-t)
            a, b = p**s, p**u
            rhs = la.zeros(F, (n, n))
            for t in range(min(a, b) + 1):
                term = la.matmul(F, la.matmul(F, actor.f(b - t), actor.shifted_hb(-a - b + 2 * t, t)), actor.e(a - t))
                rhs = la.add(F, rhs, term)
            expect(f"E{s} F{u}", la.matmul(F, rep.E[s], rep.F[u]), rhs)

    if engine_check:
        ctx = Context(chi)
        gens = [generator(ctx, kind, u) for kind in "ehf" for u in range(r + 1)]
        for x in gens:
            for y in gens:
                expect(f"engine {x!r} * {y!r}", actor.element(x * y), la.matmul(F, actor.element(x), actor.element(y)))

    return {"ok": not violations, "checked": checked, "violations": violations}
