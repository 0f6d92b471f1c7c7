"""The reduced algebras of the additive and multiplicative groups.

Both are commutative of dimension p^(r+1) over F_p with basis gamma_k
(resp. delta_k), k < p^(r+1), and generators t_i = gamma_(p^i) (delta_(p^i)).
"""

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import linalg as la
from .algebra import merge_divided, toral_tensor, toral_tensor_from_structure_constants
from .combinatorics import digits
from .errors import TheoremViolation
from .field import prime_field


@dataclass(eq=False)
class CommAlgebra:
    group: str
    p: int
    r: int
    chi: int
    table: np.ndarray  # table[k, l, m]: b_k b_l = sum_m table[k,l,m] b_m

    @property
    def dim(self):
        return self.table.shape[0]

    @property
    def field(self):
        return prime_field(self.p)

    def unit(self):
        v = np.zeros(self.dim, dtype=np.int64)
        v[0] = 1
        return v

    def basis_vector(self, k):
        v = np.zeros(self.dim, dtype=np.int64)
        v[k] = 1
        return v

    def generator(self, i):
        return self.basis_vector(self.p**i)

    def mul(self, x, y):
        return np.einsum("k,l,klm->m", x, y, self.table) % self.p

    def power(self, x, n):
        out = self.unit()
        for _ in range(n):
            out = self.mul(out, x)
        return out

    def mult_matrix(self, x):
        """Matrix of y -> x y, acting on columns."""
        return np.einsum("k,klm->ml", x, self.table) % self.p

    @cached_property
    def frobenius_matrix(self):
        """x -> x^p is F_p-linear here; columns are images of basis vectors."""
        return np.stack([self.power(self.basis_vector(k), self.p) for k in range(self.dim)], axis=1)

    def is_commutative(self):
        return np.array_equal(self.table, np.transpose(self.table, (1, 0, 2)))

    def check_associative(self, triples):
        for a, b, c in triples:
            x, y, z = (self.basis_vector(i) for i in (a, b, c))
            if not np.array_equal(self.mul(self.mul(x, y), z), self.mul(x, self.mul(y, z))):
                return False
        return True

    def minimal_polynomial(self, x):
        """Monic coefficients (lowest first) of the minimal polynomial of x."""
        F = self.field
        powers = [self.unit()]
        while True:
            nxt = self.mul(powers[-1], x)
            A = la.from_ints(F, np.stack(powers, axis=0))
            stacked = np.concatenate([A, la.from_ints(F, nxt[None])], axis=0)
            if la.rank(F, stacked) == len(powers):
                # solve nxt = sum c_i powers_i
                sol = la.nullspace(F, np.transpose(stacked, (1, 0, 2)))
                v = sol[0][..., 0]
                v = v * pow(int(v[-1]), self.p - 2, self.p) % self.p
                return [int(c) for c in v]
            powers.append(nxt)

    def presentation_polynomials(self):
        """Expected minimal polynomials of t_i from the abstract presentation."""
        p, c = self.p, self.chi
        out = []
        for i in range(self.r + 1):
            poly = [0] * (p + 1)
            poly[p] = 1
            if self.group == "Gm":
                poly[1] = p - 1
            if i == self.r:
                poly[0] = (-pow(c, p, p)) % p
            out.append(poly)
        return out

    def check_presentation(self):
        """t_i satisfy the presentation and their monomials prod t_i^a_i form a basis."""
        for i, want in enumerate(self.presentation_polynomials()):
            got = self.minimal_polynomial(self.generator(i))
            if got != want:
                raise TheoremViolation(f"minimal polynomial of t_{i} is {got}, expected {want}")
        F = self.field
        images = []
        for k in range(self.dim):
            v = self.unit()
            for i, a in enumerate(digits(k, self.p, self.r + 1)):
                v = self.mul(v, self.power(self.generator(i), a))
            images.append(v)
        if la.rank(F, la.from_ints(F, np.stack(images))) != self.dim:
            raise TheoremViolation("monomials in the t_i do not span the algebra")
        return True


def build_additive(p, r, chi=0):
    """gamma_k gamma_l = binom(k+l, k) gamma_(k+l), with t_r^p = chi^p."""
    N = p ** (r + 1)
    chi = int(chi) % p
    T = np.zeros((N, N, N), dtype=np.int64)
    for k in range(N):
        for l in range(N):
            c, m = merge_divided(k, l, p, r, chi)
            if c:
                T[k, l, m] = c
    A = CommAlgebra("Ga", p, r, chi, T)
    A.check_presentation()
    return A


def build_multiplicative(p, r, chi=0):
    """delta_k delta_l from the level presentation; agrees with the multinomial rule when chi = 0."""
    chi = int(chi) % p
    T = np.array(toral_tensor(p, r, chi))
    if chi == 0:
        assert np.array_equal(T, toral_tensor_from_structure_constants(p, r))
    A = CommAlgebra("Gm", p, r, chi, T)
    A.check_presentation()
    return A


def _kernel_dim(F, M):
    return M.shape[1] - la.rank(F, la.from_ints(F, M))


def analyze_ring(A):
    F = A.field
    p, n = A.p, A.dim
    m = 0
    while p**m < n:
        m += 1
    Fr = la.from_ints(F, A.frobenius_matrix)
    Frm = la.matpow(F, Fr, max(m, 1))[..., 0]
    radical_dim = _kernel_dim(F, Frm)
    # the image of a high Frobenius power is the separable part, isomorphic to A / rad
    img = la.rref(F, la.from_ints(F, Frm.T))[0][..., 0]  # rows span the image
    s = img.shape[0]
    # Frobenius restricted to the separable part, in the basis img
    FrS_cols = (A.frobenius_matrix @ img.T) % p  # n x s
    coords = np.stack([_coords_in(F, img, FrS_cols[:, j]) for j in range(s)], axis=1) if s else np.zeros((0, 0), dtype=np.int64)
    I = np.eye(s, dtype=np.int64)
    base_idem = _kernel_dim(F, (coords - I) % p) if s else 0
    d, P = 1, coords.copy()
    while s and not np.array_equal(P % p, I):
        P = P @ coords % p
        d += 1
    idempotents = _kernel_dim(F, (P - I) % p) if s else 0
    stated = A.r * p
    return {
        "group": A.group,
        "p": p,
        "r": A.r,
        "chi": A.chi,
        "dim": n,
        "radical_dim": radical_dim,
        "idempotents": idempotents,
        "local": idempotents == 1,
        "splitting_degree": d,
        "base_idempotents": base_idem,
        "stated_copies": stated if A.group == "Gm" else None,
        "stated_copies_discrepant": (stated != idempotents) if A.group == "Gm" else None,
    }


def _coords_in(F, rows, v):
    """Coordinates of v in the span of the (echelon) rows."""
    A = la.from_ints(F, np.concatenate([rows, v[None]], axis=0).T)
    null = la.nullspace(F, A)
    for z in null:
        z = z[..., 0]
        if z[-1]:
            inv = pow(int(z[-1]), F.p - 2, F.p)
            return (-z[:-1] * inv) % F.p
    raise ValueError("vector not in span")


def count_idempotents_bruteforce(A, field):
    """Number of x in A (x) field with x^2 = x, by exhaustive search."""
    from itertools import product as iproduct

    elems = [np.array(e.coeffs, dtype=np.int64) for e in field.elements()]
    n, p = A.dim, A.p
    count = 0
    for combo in iproduct(range(len(elems)), repeat=n):
        x = np.stack([elems[i] for i in combo])  # (n, d)
        # x^2 = sum_{k,l} x_k x_l T[k,l,:]
        prod_kl = field.mul(x[:, None, :], x[None, :, :])  # (n, n, d)
        sq = np.einsum("kld,klm->md", prod_kl, A.table) % p
        if np.array_equal(sq, x):
            count += 1
    return count
