"""Submodules, irreducibility, intertwiners, classification and restriction."""

from dataclasses import dataclass, field as dc_field
from itertools import product
from math import prod

import numpy as np

from . import linalg as la
from .errors import TheoremViolation
from .modules import ModuleRep, baby_verma
from .weights import ChiForm, Weight, enumerate_weights, make_weight


@dataclass
class Subspace:
    """Row space of an echelon matrix inside F^ambient_dim."""

    field: object
    ambient_dim: int
    basis: np.ndarray

    @classmethod
    def span(cls, F, n, rows):
        rows = np.asarray(rows, dtype=np.int64).reshape(-1, n, F.d)
        R = la.rref(F, rows)[0] if rows.shape[0] else la.zeros(F, (0, n))
        return cls(F, n, R)

    @classmethod
    def coordinate(cls, F, n, idx):
        rows = la.zeros(F, (len(idx), n))
        for row, i in enumerate(sorted(idx)):
            rows[row, i, 0] = 1
        return cls(F, n, rows)

    @property
    def dim(self):
        return self.basis.shape[0]

    def contains(self, v):
        if self.dim == 0:
            return la.is_zero(v)
        stacked = np.concatenate([self.basis, np.asarray(v)[None]], axis=0)
        return la.rank(self.field, stacked) == self.dim

    def issubspace(self, other):
        if self.dim == 0:
            return True
        stacked = np.concatenate([other.basis, self.basis], axis=0)
        return la.rank(self.field, stacked) == other.dim

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.ambient_dim == other.ambient_dim
                and la.equal(self.basis, other.basis))

    def is_full(self):
        return self.dim == self.ambient_dim


def spin(rep, vectors):
    """Smallest subspace containing ``vectors`` and stable under every generator."""
    F, n = rep.field, rep.dim
    vectors = np.asarray(vectors, dtype=np.int64).reshape(-1, n, F.d)
    S = Subspace.span(F, n, vectors)
    gens_T = [np.transpose(M, (1, 0, 2)) for M in rep.matrices()]
    while 0 < S.dim < n:
        images = [la.matmul(F, S.basis, GT) for GT in gens_T]
        R, _ = la.rref(F, np.concatenate([S.basis] + images, axis=0))
        if R.shape[0] == S.dim:
            break
        S = Subspace(F, n, R)
    return S


def is_invariant(rep, S):
    if S.dim == 0:
        return True
    F = rep.field
    for M in rep.matrices():
        img = la.matmul(F, S.basis, np.transpose(M, (1, 0, 2)))
        if la.rank(F, np.concatenate([S.basis, img], axis=0)) != S.dim:
            return False
    return True


def unit_vector(F, n, k):
    v = la.zeros(F, n)
    v[k, 0] = 1
    return v


# ---------------------------------------------------------------- submodule formulas


def maximal_submodule_indices(lam):
    """Indices k with v_k in the maximal submodule of Z(lambda)."""
    p, r = lam.p, lam.r
    q = p**r
    out = []
    for k in range(p ** (r + 1)):
        key = k % q if lam.chi.kind == "nilpotent" else k
        if not lam.table[key].any():
            out.append(k)
    return out


def maximal_submodule(lam, Z=None, verify=True):
    """Coordinate subspace M(lambda); checks closure, maximality and uniqueness by spinning."""
    Z = Z if Z is not None else baby_verma(lam.chi, lam)
    idx = maximal_submodule_indices(lam)
    M = Subspace.coordinate(Z.field, Z.dim, idx)
    if verify:
        if not is_invariant(Z, M):
            raise TheoremViolation(f"M({lam}) is not a submodule")
        inside = set(idx)
        for k in range(Z.dim):
            if k in inside:
                continue
            if not spin(Z, unit_vector(Z.field, Z.dim, k)).is_full():
                raise TheoremViolation(f"v_{k} lies outside M({lam}) but does not generate Z")
    return M


def expected_quotient_dim(lam):
    p = lam.p
    lows = prod(x + 1 for x in lam.low)
    if lam.chi.kind == "zero":
        return lows * (lam.top.to_int() + 1)
    return lows * p


def irreducible_quotient(lam, Z=None, verify=False):
    """L(lambda) = Z(lambda)/M(lambda) on the surviving basis vectors."""
    Z = Z if Z is not None else baby_verma(lam.chi, lam)
    dead = set(maximal_submodule_indices(lam))
    keep = [k for k in range(Z.dim) if k not in dead]
    if verify:
        maximal_submodule(lam, Z, verify=True)
    L = Z.restrict_to(keep)
    if L.dim != expected_quotient_dim(lam):
        raise TheoremViolation(f"dim L({lam}) = {L.dim}, expected {expected_quotient_dim(lam)}")
    L.kept = keep
    return L


# ---------------------------------------------------------------- irreducibility


@dataclass
class Certificate:
    verdict: object  # True, False or None (inconclusive)
    strategy: str
    details: dict = dc_field(default_factory=dict)

    def __bool__(self):
        return self.verdict is True


def joint_h_tuples(rep):
    """Per basis vector, the tuple of diagonal H-entries, or None if some H is not diagonal."""
    if not all(la.is_diagonal(M) for M in rep.H):
        return None
    diags = [la.diagonal(M) for M in rep.H]
    return [tuple(tuple(int(c) for c in D[i]) for D in diags) for i in range(rep.dim)]


def _projective_points(F, m):
    """One representative per line in F^m."""
    elems = [np.array(x.coeffs, dtype=np.int64) for x in F.elements()]
    one = np.array(F.one.coeffs, dtype=np.int64)
    for lead in range(m):
        for tail in product(range(len(elems)), repeat=m - lead - 1):
            v = np.zeros((m, F.d), dtype=np.int64)
            v[lead] = one
            for off, t in enumerate(tail):
                v[lead + 1 + off] = elems[t]
            yield v


def is_irreducible(rep, seed=0, small_dim=12, max_points=20000, strategies=("A", "B", "C")):
    """Certificate for irreducibility; verdict None means no strategy could decide."""
    F, n = rep.field, rep.dim
    if n == 1:
        return Certificate(True, "dimension-one")
    tuples = joint_h_tuples(rep)
    if "A" in strategies and tuples is not None and len(set(tuples)) == n:
        # every submodule is spanned by basis vectors
        for k in range(n):
            S = spin(rep, unit_vector(F, n, k))
            if not S.is_full():
                return Certificate(False, "A", {"witness": k, "submodule_dim": S.dim})
        return Certificate(True, "A", {"tuples": len(tuples)})
    if "B" in strategies and tuples is not None and n <= small_dim:
        # a minimal submodule is spun by a single joint eigenvector
        spaces = {}
        for i, t in enumerate(tuples):
            spaces.setdefault(t, []).append(i)
        total = sum((F.q ** len(ix) - 1) // (F.q - 1) for ix in spaces.values())
        if total <= max_points:
            for ix in spaces.values():
                for coords in _projective_points(F, len(ix)):
                    v = la.zeros(F, n)
                    v[ix] = coords
                    S = spin(rep, v)
                    if not S.is_full():
                        return Certificate(False, "B", {"submodule_dim": S.dim})
            return Certificate(True, "B", {"points": total})
    if "C" not in strategies:
        return Certificate(None, "none")
    rng = np.random.default_rng(seed)
    for _ in range(8):
        v = la.random_matrix(F, (n,), rng)
        if la.is_zero(v):
            continue
        S = spin(rep, v)
        if not S.is_full():
            return Certificate(False, "C", {"submodule_dim": S.dim, "seed": seed})
    end_dim = len(find_intertwiners(rep, rep))
    if end_dim > 1:
        return Certificate(False, "C", {"end_dim": end_dim, "seed": seed})
    return Certificate(None, "C", {"end_dim": end_dim, "seed": seed})


# ---------------------------------------------------------------- intertwiners


def find_intertwiners(A, B, generators=None):
    """Basis of {T : T g_A = g_B T for every generator}, T of shape (dim B, dim A)."""
    F = A.field
    if B.field != F:
        big = A.field if A.field.d >= B.field.d else B.field
        A, B, F = A.over(big), B.over(big), big
    nA, nB = A.dim, B.dim
    pairs = list(zip(A.matrices(), B.matrices())) if generators is None else generators
    ta, tb = joint_h_tuples(A), joint_h_tuples(B)
    if ta is not None and tb is not None:
        allowed = [b * nA + a for b in range(nB) for a in range(nA) if ta[a] == tb[b]]
    else:
        allowed = list(range(nA * nB))
    if not allowed:
        return []
    allowed = np.array(allowed)
    IA, IB = np.eye(nA, dtype=np.int64), np.eye(nB, dtype=np.int64)
    blocks = []
    for GA, GB in pairs:
        # row-major vec: vec(T GA) = kron(I_B, GA^T) vec(T), vec(GB T) = kron(GB, I_A) vec(T)
        sys = np.stack([np.kron(IB, GA[..., c].T)[:, allowed] - np.kron(GB[..., c], IA)[:, allowed]
                        for c in range(F.d)], axis=-1) % F.p
        keep = np.any(sys != 0, axis=(1, 2))
        if keep.any():
            blocks.append(sys[keep])
    if not blocks:
        basis = la.identity(F, len(allowed))
    else:
        basis = la.nullspace(F, np.concatenate(blocks, axis=0))
    out = []
    for row in basis:
        T = la.zeros(F, (nA * nB,))
        T[allowed] = row
        out.append(T.reshape(nB, nA, F.d))
    return out


def find_isomorphism(A, B, seed=0, tries=16):
    """An invertible intertwiner A -> B, or None."""
    if A.dim != B.dim:
        return None
    Ts = find_intertwiners(A, B)
    if not Ts:
        return None
    F = A.field if A.field.d >= B.field.d else B.field
    for T in Ts:
        if la.is_invertible(F, T):
            return T
    rng = np.random.default_rng(seed)
    for _ in range(tries):
        T = la.zeros(F, Ts[0].shape[:2])
        for S in Ts:
            T = la.add(F, T, la.scale(F, la.random_matrix(F, (), rng), S))
        if la.is_invertible(F, T):
            return T
    return None


# ---------------------------------------------------------------- classification


@dataclass
class IsoClass:
    representative: Weight
    dim: int
    members: list
    restriction: dict = dc_field(default_factory=dict)

    def to_json(self):
        return {
            "lambda": self.representative.to_json()["lambda"],
            "dim": self.dim,
            "members": [w.to_json()["lambda"] for w in self.members],
            "restriction": self.restriction,
        }


def expected_class_count(chi):
    p, r = chi.p, chi.r
    if chi.kind == "nilpotent":
        return p**r * (p + 1) // 2
    return p ** (r + 1)


def nilpotent_partner(lam):
    """The weight with top coordinate -lambda_r - 2."""
    top = (-lam.top - 2)
    return Weight(lam.chi, lam.low, top, lam.field)


def classify(chi, seed=0, with_restriction=True):
    quotients = {}
    classes = []
    for lam in enumerate_weights(chi):
        L = irreducible_quotient(lam)
        quotients[lam] = L
        for cls in classes:
            if cls.dim != L.dim:
                continue
            T = find_isomorphism(quotients[cls.representative], L, seed=seed)
            if T is not None:
                cls.members.append(lam)
                break
        else:
            classes.append(IsoClass(lam, L.dim, [lam]))
    if len(classes) != expected_class_count(chi):
        raise TheoremViolation(f"{len(classes)} classes for {chi}, expected {expected_class_count(chi)}")
    if chi.kind == "nilpotent":
        for cls in classes:
            want = {cls.representative, nilpotent_partner(cls.representative)}
            if set(cls.members) != want:
                raise TheoremViolation(f"class of {cls.representative} is {cls.members}, expected {sorted(want, key=repr)}")
    if with_restriction:
        for cls in classes:
            dec = restrict_and_decompose(cls.representative, quotients[cls.representative])
            cls.restriction = {"dimN": dec.N.dim, "multiplicity": dec.multiplicity}
    return classes


def classification_to_json(chi, classes):
    return {"p": chi.p, "r": chi.r, "chi": chi.to_json(), "classes": [c.to_json() for c in classes]}


# ---------------------------------------------------------------- Frobenius kernel restriction


@dataclass
class Decomposition:
    N: ModuleRep
    multiplicity: int
    blocks: list  # blocks[a][z_pos] = position in L of v_(a p^r + z)
    hom_dim: int = None


def low_levels(rep):
    """rep viewed through its generators of level < r, as a level r-1 module with chi = 0."""
    r = rep.r
    chi0 = ChiForm("zero", rep.p, r - 1)
    return ModuleRep(chi0, rep.field, rep.E[:r], rep.H[:r], rep.F[:r])


def restrict_and_decompose(lam, L=None):
    L = L if L is not None else irreducible_quotient(lam)
    p, r, F = lam.p, lam.r, L.field
    q = p**r
    kept = L.kept
    pos = {k: i for i, k in enumerate(kept)}
    zs = [k for k in kept if k < q]
    blocks = []
    for a in range(p):
        if a * q + zs[0] not in pos:
            continue
        block = []
        for z in zs:
            if a * q + z not in pos:
                raise TheoremViolation(f"v_{a * q + z} missing from block {a}")
            block.append(pos[a * q + z])
        blocks.append(block)
    m = len(blocks)
    if m * len(zs) != L.dim:
        raise TheoremViolation(f"blocks cover {m * len(zs)} of {L.dim} dimensions")
    expected = p if lam.chi.kind != "zero" else lam.top.to_int() + 1
    if r == 0:
        expected = L.dim
    if m != expected:
        raise TheoremViolation(f"multiplicity {m}, expected {expected}")
    if r == 0:
        chi0 = ChiForm("zero", p, 0)
        z = la.zeros(F, (1, 1))
        N = ModuleRep(chi0, F, [z], [z.copy()], [z.copy()])
        return Decomposition(N, m, blocks, hom_dim=L.dim)
    low = low_levels(L)
    N = low.restrict_to(blocks[0])
    for a, block in enumerate(blocks):
        rest = [i for i in range(L.dim) if i not in set(block)]
        for label, M in low.generators():
            if rest and not la.is_zero(M[np.ix_(rest, block)]):
                raise TheoremViolation(f"block {a} is not stable under {label}")
            # phi_a(v_z) = v_(a p^r + z) intertwines N with block a
            if not la.equal(M[np.ix_(block, block)], getattr(N, label[0])[int(label[1:])]):
                raise TheoremViolation(f"phi_{a} does not intertwine {label}")
    target = irreducible_quotient(lam.restricted())
    if find_isomorphism(N, target) is None:
        raise TheoremViolation(f"N is not the level {r - 1} irreducible at {lam.low}")
    hom_dim = len(find_intertwiners(N, low))
    return Decomposition(N, m, blocks, hom_dim=hom_dim)


def orbit_dimension(chi):
    """rank of (x, y) -> chi([x, y]) on sl2 with basis e, h, f."""
    bracket = {
        ("e", "f"): {"h": 1}, ("f", "e"): {"h": -1},
        ("h", "e"): {"e": 2}, ("e", "h"): {"e": -2},
        ("h", "f"): {"f": -2}, ("f", "h"): {"f": 2},
    }
    form = chi.linear_form()
    basis = ("e", "h", "f")
    from .field import prime_field

    F = prime_field(chi.p)
    A = [[sum(c * form[z] for z, c in bracket.get((x, y), {}).items()) for y in basis] for x in basis]
    return la.rank(F, la.from_ints(F, A))


def kw_divisibility(chi, classes=None):
    """p^(orbit dim / 2) divides dim Hom(N, M) = multiplicity, and dim M = dim N * multiplicity."""
    if chi.kind == "zero":
        raise ValueError("divisibility is stated for nonzero chi")
    classes = classes if classes is not None else classify(chi, with_restriction=False)
    d = orbit_dimension(chi)
    divisor = chi.p ** (d // 2)
    rows = []
    ok = True
    for cls in classes:
        dec = restrict_and_decompose(cls.representative)
        row = {
            "lambda": cls.representative.to_json()["lambda"],
            "dim": cls.dim,
            "dimN": dec.N.dim,
            "hom_dim": dec.hom_dim,
            "multiplicity": dec.multiplicity,
            "divisible": dec.hom_dim % divisor == 0,
            "tensor_dims": cls.dim == dec.N.dim * dec.hom_dim,
        }
        ok = ok and row["divisible"] and row["tensor_dims"] and dec.hom_dim == dec.multiplicity
        rows.append(row)
    if not ok:
        raise TheoremViolation("divisibility or tensor dimension check failed")
    return {"orbit_dim": d, "divisor": divisor, "ok": ok, "rows": rows}
