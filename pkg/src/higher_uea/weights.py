"""p-characters in canonical form and the weights they admit.

A weight is stored through its values lambda(binom(h, p^i)) for i <= r.
The lower coordinates are integers in [0, p); the top one is a field
element solving X^p - X = chi(binom(h, p^r))^p.
"""

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from itertools import product

import numpy as np

from .combinatorics import binom_mod_p, digits
from .errors import InvalidChiError, InvalidWeightError
from .field import FieldElem, artin_schreier_roots, binom_field, make_artin_schreier, prime_field

KINDS = ("zero", "nilpotent", "semisimple")

_FIELD_CACHE = {}


@dataclass(frozen=True)
class ChiForm:
    """chi in one of the three canonical shapes.

    c_h = chi(binom(h, p^r)), c_f = chi(f^(p^r)), c_e = chi(e^(p^r)) = 0.
    """

    kind: str
    p: int
    r: int
    c: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidChiError(f"unknown chi kind {self.kind!r}")
        if self.p <= 2:
            raise InvalidChiError("p must be an odd prime")
        if self.r < 0:
            raise InvalidChiError("r must be nonnegative")
        c = self.c % self.p
        if self.kind == "semisimple" and c == 0:
            raise InvalidChiError("semisimple chi needs c != 0; c = 0 is the zero form")
        object.__setattr__(self, "c", c if self.kind == "semisimple" else 0)

    @property
    def c_h(self):
        return self.c if self.kind == "semisimple" else 0

    @property
    def c_f(self):
        return 1 if self.kind == "nilpotent" else 0

    @property
    def c_e(self):
        return 0

    @property
    def is_zero(self):
        return self.kind == "zero"

    @property
    def N(self):
        return self.p ** (self.r + 1)

    def field(self):
        """Smallest field holding every weight for this chi."""
        key = (self.p, self.c_h)
        if key not in _FIELD_CACHE:
            _FIELD_CACHE[key] = make_artin_schreier(self.p, self.c_h) if self.c_h else prime_field(self.p)
        return _FIELD_CACHE[key]

    def with_level(self, r):
        return ChiForm(self.kind, self.p, r, self.c)

    def linear_form(self):
        """Values of chi on the basis (e, h, f) of sl2."""
        return {"e": self.c_e, "h": self.c_h, "f": self.c_f}

    def to_json(self):
        return {"kind": self.kind, "c": self.c}

    @classmethod
    def from_json(cls, obj, p, r):
        return cls(obj["kind"], p, r, obj.get("c", 0))


def standard_chi(kind, p, r, c=None):
    if kind == "semisimple":
        if c is None or c % p == 0:
            raise InvalidChiError("semisimple chi needs c != 0 mod p")
        return ChiForm(kind, p, r, c)
    return ChiForm(kind, p, r, 0)


@dataclass(frozen=True, eq=False)
class Weight:
    chi: ChiForm
    low: tuple
    top: FieldElem
    field: object = dc_field(repr=False)

    def __post_init__(self):
        p, r = self.chi.p, self.chi.r
        if len(self.low) != r:
            raise InvalidWeightError(f"expected {r} lower coordinates, got {len(self.low)}")
        for x in self.low:
            if not (isinstance(x, (int, np.integer)) and 0 <= x < p):
                raise InvalidWeightError(f"lower coordinate {x!r} is not in [0, {p})")
        top = self.field(self.top)
        object.__setattr__(self, "top", top)
        if top ** p - top != self.field(self.chi.c_h):
            raise InvalidWeightError(f"top coordinate {top!r} does not solve X^p - X = {self.chi.c_h}")

    @property
    def p(self):
        return self.chi.p

    @property
    def r(self):
        return self.chi.r

    @property
    def coords(self):
        F = self.field
        return tuple(F(x) for x in self.low) + (self.top,)

    @cached_property
    def table(self):
        """lambda(binom(h, k)) for k < p^(r+1), as an (N, d) coefficient array."""
        p, r, F = self.p, self.r, self.field
        per_level = [[binom_field(x, a) for a in range(p)] for x in self.coords]
        out = np.zeros((p ** (r + 1), F.d), dtype=np.int64)
        for k in range(p ** (r + 1)):
            acc = F.one
            for u, a in enumerate(digits(k, p, r + 1)):
                acc = acc * per_level[u][a]
                if acc.is_zero():
                    break
            out[k] = acc.coeffs
        out.setflags(write=False)
        return out

    def key(self):
        return (self.chi, self.low, self.top.coeffs)

    def __eq__(self, other):
        return isinstance(other, Weight) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"Weight({list(self.low) + [self.top]})"

    def top_label(self):
        """Integer j with top = j (prime field) or top = theta + j."""
        if self.top.in_prime_subfield():
            return self.top.to_int()
        return self.top.coeffs[0]

    def restricted(self):
        """The weight (lambda_0, ..., lambda_{r-1}) at level r-1 with chi = 0."""
        if self.r == 0:
            raise InvalidWeightError("level 0 weights have no restriction")
        chi0 = ChiForm("zero", self.p, self.r - 1)
        return make_weight(chi0, self.low)

    def to_json(self):
        return {"lambda": list(self.low) + [self.top.to_json()]}


def make_weight(chi, coords):
    """Build a weight from integers; for semisimple chi the last entry j means theta + j."""
    coords = list(coords)
    F = chi.field()
    if len(coords) != chi.r + 1:
        raise InvalidWeightError(f"need {chi.r + 1} coordinates, got {len(coords)}")
    last = coords[-1]
    if not isinstance(last, FieldElem) and not 0 <= int(last) < chi.p:
        raise InvalidWeightError(f"top coordinate {last} is not in [0, {chi.p})")
    if isinstance(last, FieldElem):
        top = F(last)
    elif chi.kind == "semisimple":
        top = F.theta + int(last)
    else:
        top = F(int(last))
    return Weight(chi, tuple(int(x) for x in coords[:-1]), top, F)


def weight_from_json(chi, obj):
    lam = obj["lambda"]
    F = chi.field()
    top = lam[-1]
    top = F(top) if isinstance(top, list) else F(int(top))
    return Weight(chi, tuple(int(x) for x in lam[:-1]), top, F)


def enumerate_weights(chi, field=None):
    F = field if field is not None else chi.field()
    tops = artin_schreier_roots(F, chi.c_h)
    tops = sorted(tops, key=lambda x: x.coeffs)
    out = []
    for low in product(range(chi.p), repeat=chi.r):
        for top in tops:
            out.append(Weight(chi, tuple(low), top, F))
    assert len(out) == chi.N
    return out


def lambda_binom(lam, k):
    N = lam.p ** (lam.r + 1)
    if not 0 <= k < N:
        raise IndexError(f"k = {k} outside [0, {N})")
    return FieldElem(lam.field, tuple(int(c) for c in lam.table[k]))


def shifted_table(lam, m):
    """lambda(binom(h + m, k)) for every k < p^(r+1), as an (N, d) array."""
    p = lam.p
    N = p ** (lam.r + 1)
    S = shift_matrix(m, p, N)
    return (S.T @ lam.table) % p


def lambda_binom_shifted(lam, m, k):
    N = lam.p ** (lam.r + 1)
    if not 0 <= k < N:
        raise IndexError(f"k = {k} outside [0, {N})")
    p = lam.p
    coeffs = np.zeros(lam.field.d, dtype=np.int64)
    for t in range(k + 1):
        b = binom_mod_p(m, k - t, p)
        if b:
            coeffs = (coeffs + b * lam.table[t]) % p
    return FieldElem(lam.field, tuple(int(c) for c in coeffs))


_SHIFT_CACHE = {}


def shift_matrix(n, p, N):
    """S with binom(h + n, l) = sum_t S[t, l] binom(h, t), for l, t < N.

    binom(n, s) mod p for s < N only depends on n mod N.
    """
    key = (n % N, p, N)
    S = _SHIFT_CACHE.get(key)
    if S is None:
        n0 = n % N
        S = np.zeros((N, N), dtype=np.int64)
        for l in range(N):
            for t in range(l + 1):
                S[t, l] = binom_mod_p(n0, l - t, p)
        S.setflags(write=False)
        _SHIFT_CACHE[key] = S
    return S
