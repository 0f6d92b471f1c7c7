"""Exact dense linear algebra over a `FiniteField`.

A matrix with entries in F_{p^d} is an int64 array of shape (m, n, d);
a vector has shape (n, d).  Everything is reduced mod p on output.
"""

import numpy as np

from .field import FieldElem


def zeros(F, shape):
    if isinstance(shape, int):
        shape = (shape,)
    return np.zeros(tuple(shape) + (F.d,), dtype=np.int64)


def identity(F, n):
    out = zeros(F, (n, n))
    out[np.arange(n), np.arange(n), 0] = 1
    return out


def scalar(F, x):
    return np.array(F(x).coeffs, dtype=np.int64)


def scalar_matrix(F, x, n):
    return identity(F, n) * 0 + np.eye(n, dtype=np.int64)[:, :, None] * scalar(F, x)


def from_ints(F, a):
    """Embed an integer array (entries read mod p) as prime-field entries."""
    a = np.asarray(a, dtype=np.int64) % F.p
    out = np.zeros(a.shape + (F.d,), dtype=np.int64)
    out[..., 0] = a
    return out


def from_elems(F, rows):
    return np.array([[F(x).coeffs for x in row] for row in rows], dtype=np.int64)


def vector_from_elems(F, xs):
    return np.array([F(x).coeffs for x in xs], dtype=np.int64)


def entry(F, a, *idx):
    return FieldElem(F, tuple(int(c) for c in a[idx]))


def to_elems(F, a):
    a = np.asarray(a)
    if a.ndim == 1:
        return FieldElem(F, tuple(int(c) for c in a))
    return [to_elems(F, x) for x in a]


def embed(F_big, a, F_small=None):
    """Move prime-field data into an extension field (pads coefficients)."""
    a = np.asarray(a, dtype=np.int64)
    if a.shape[-1] == F_big.d:
        return a
    if a.shape[-1] != 1:
        raise ValueError("only prime-field arrays can be embedded")
    out = np.zeros(a.shape[:-1] + (F_big.d,), dtype=np.int64)
    out[..., 0] = a[..., 0]
    return out


def is_zero(a):
    return not np.any(a)


def equal(a, b):
    return a.shape == b.shape and np.array_equal(a, b)


def add(F, a, b):
    return (a + b) % F.p


def sub(F, a, b):
    return (a - b) % F.p


def scale(F, x, a):
    """x * a for a scalar x (FieldElem, int or coefficient vector)."""
    if isinstance(x, (int, np.integer, FieldElem)):
        x = scalar(F, x)
    return F.mul(a, np.asarray(x))


def _exact_matmul(x, y, p):
    # float64 BLAS is exact while inner sums stay below 2^53
    if x.shape[-1] * (p - 1) ** 2 < 2**52:
        return np.rint(x.astype(np.float64) @ y.astype(np.float64)).astype(np.int64) % p
    return (x @ y) % p


def matmul(F, a, b):
    p, d = F.p, F.d
    if d == 1:
        return _exact_matmul(a[..., 0], b[..., 0], p)[..., None]
    # polynomial product of the coefficient slices, then reduce by the modulus
    out_shape = (a.shape[0],) + b.shape[1:-1] + (d,)
    out = np.zeros(out_shape, dtype=np.int64)
    tensor = F._mul_tensor
    for i in range(d):
        ai = a[..., i]
        if not ai.any():
            continue
        for j in range(d):
            bj = b[..., j]
            if not bj.any():
                continue
            prod = _exact_matmul(ai, bj, p)
            out += prod[..., None] * tensor[i * d + j]
    return out % p


def matpow(F, a, n):
    result = identity(F, a.shape[0])
    base = a
    while n:
        if n & 1:
            result = matmul(F, result, base)
        base = matmul(F, base, base)
        n >>= 1
    return result


def commutator(F, a, b):
    return sub(F, matmul(F, a, b), matmul(F, b, a))


def is_diagonal(a):
    n = a.shape[0]
    off = a.copy()
    off[np.arange(n), np.arange(n)] = 0
    return not np.any(off)


def diagonal(a):
    n = a.shape[0]
    return a[np.arange(n), np.arange(n)]


def diag(F, entries):
    entries = np.asarray(entries, dtype=np.int64)
    n = entries.shape[0]
    out = zeros(F, (n, n))
    out[np.arange(n), np.arange(n)] = entries
    return out


def _outer(F, x, y):
    """out[m, n] = x[m] * y[n] for field vectors x, y."""
    if F.d == 1:
        return (x[:, None, :] * y[None, :, :]) % F.p
    d, n = F.d, y.shape[0]
    # row i of the regular representation: theta^i * y
    basis = np.eye(d, dtype=np.int64)
    reg = F.mul(basis[:, None, :], y[None, :, :])
    return _exact_matmul(x, reg.reshape(d, n * d), F.p).reshape(x.shape[0], n, d)


def rref(F, a):
    """Reduced row echelon form and pivot columns."""
    a = np.array(a, dtype=np.int64) % F.p
    m, n = a.shape[0], a.shape[1]
    pivots = []
    row = 0
    for col in range(n):
        if row >= m:
            break
        nz = np.nonzero(np.any(a[row:, col] != 0, axis=-1))[0]
        if nz.size == 0:
            continue
        piv = row + int(nz[0])
        if piv != row:
            a[[row, piv]] = a[[piv, row]]
        inv = F.inv_coeffs(a[row, col])
        a[row] = F.mul(a[row], inv)
        factors = a[:, col].copy()
        factors[row] = 0
        if np.any(factors):
            a = (a - _outer(F, factors, a[row])) % F.p
        pivots.append(col)
        row += 1
    return a[:row], pivots


def rank(F, a):
    if a.shape[0] == 0:
        return 0
    return len(rref(F, a)[1])


def nullspace(F, a):
    """Basis (as rows) of {x : a x = 0}."""
    n = a.shape[1]
    r, pivots = rref(F, a) if a.shape[0] else (zeros(F, (0, n)), [])
    free = [c for c in range(n) if c not in pivots]
    basis = zeros(F, (len(free), n))
    for idx, fc in enumerate(free):
        basis[idx, fc, 0] = 1
        for i, pc in enumerate(pivots):
            basis[idx, pc] = (-r[i, fc]) % F.p
    return basis


def inverse(F, a):
    n = a.shape[0]
    aug = np.concatenate([a % F.p, identity(F, n)], axis=1)
    r, pivots = rref(F, aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n or pivots[n - 1] != n - 1:
        raise ZeroDivisionError("matrix is singular")
    return r[:, n:]


def is_invertible(F, a):
    return a.shape[0] == a.shape[1] and rank(F, a) == a.shape[0]


def kernel_of_stack(F, mats):
    """Common kernel of several square matrices, as rows."""
    stacked = np.concatenate(mats, axis=0)
    return nullspace(F, stacked)


def solve_change_of_basis(F, g, basis_cols):
    """Matrix of g in the basis given by the columns of basis_cols."""
    return matmul(F, inverse(F, basis_cols), matmul(F, g, basis_cols))


def random_matrix(F, shape, rng):
    return rng.integers(0, F.p, size=tuple(shape) + (F.d,), dtype=np.int64)


def tolist(a):
    return np.asarray(a).tolist()
