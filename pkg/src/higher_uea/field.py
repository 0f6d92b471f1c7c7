"""Prime fields and Artin-Schreier extensions F_p[t]/(t^p - t - c).

Scalars are `FieldElem` objects.  Matrices and vectors are numpy integer
arrays whose last axis holds the d coefficients of each entry; see
`higher_uea.linalg`.
"""

from functools import cached_property

import numpy as np

from .combinatorics import binom_mod_p, inv_factorial_mod_p, is_prime
from .errors import FieldError, InsufficientFieldError, SpecMismatchError


class FiniteField:
    """F_p[t]/(modulus) for a monic modulus of degree d >= 1.

    ``modulus`` lists coefficients lowest degree first, including the
    leading 1.
    """

    def __init__(self, p, modulus, as_constant=None):
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        modulus = tuple(int(a) % p for a in modulus)
        if len(modulus) < 2 or modulus[-1] != 1:
            raise FieldError("modulus must be monic of degree >= 1")
        self.p = p
        self.modulus = modulus
        self.d = len(modulus) - 1
        self.q = p**self.d
        # c for the Artin-Schreier modulus t^p - t - c, None otherwise
        self.as_constant = as_constant
        if self.d > 1 and any(self._eval_int_root(x) == 0 for x in range(p)):
            raise FieldError("modulus has a root in F_p, so it is reducible")
        self._build_tables()

    def _eval_int_root(self, x):
        return sum(a * pow(x, i, self.p) for i, a in enumerate(self.modulus)) % self.p

    def _build_tables(self):
        p, d = self.p, self.d
        # t^s reduced, for s < 2d - 1
        red = np.zeros((max(2 * d - 1, 1), d), dtype=np.int64)
        for s in range(d):
            red[s, s] = 1
        for s in range(d, 2 * d - 1):
            prev = red[s - 1]
            top = prev[d - 1]
            cur = np.zeros(d, dtype=np.int64)
            cur[1:] = prev[:-1]
            # t^d = -(m_0 + m_1 t + ... + m_{d-1} t^{d-1})
            for i in range(d):
                cur[i] -= top * self.modulus[i]
            red[s] = cur % p
        tensor = np.zeros((d, d, d), dtype=np.int64)
        for i in range(d):
            for j in range(d):
                tensor[i, j] = red[i + j]
        self._mul_tensor = tensor.reshape(d * d, d)

    def __repr__(self):
        if self.d == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.d}, modulus={self.modulus})"

    def __eq__(self, other):
        return isinstance(other, FiniteField) and (self.p, self.modulus) == (other.p, other.modulus)

    def __hash__(self):
        return hash((self.p, self.modulus))

    @property
    def is_prime_field(self):
        return self.d == 1

    def __call__(self, value):
        if isinstance(value, FieldElem):
            if value.field == self:
                return value
            if value.field.is_prime_field:
                return self(value.coeffs[0])
            raise SpecMismatchError(f"cannot coerce {value!r} into {self!r}")
        if isinstance(value, (int, np.integer)):
            return FieldElem(self, (int(value) % self.p,) + (0,) * (self.d - 1))
        coeffs = tuple(int(a) % self.p for a in value)
        if len(coeffs) != self.d:
            raise SpecMismatchError(f"expected {self.d} coefficients, got {len(coeffs)}")
        return FieldElem(self, coeffs)

    @cached_property
    def zero(self):
        return self(0)

    @cached_property
    def one(self):
        return self(1)

    @property
    def theta(self):
        if self.d == 1:
            raise FieldError("the prime field has no adjoined generator")
        return self((0, 1) + (0,) * (self.d - 2))

    def elements(self):
        for n in range(self.q):
            cs = []
            for _ in range(self.d):
                n, a = divmod(n, self.p)
                cs.append(a)
            yield FieldElem(self, tuple(cs))

    def prime_subfield(self):
        return [self(a) for a in range(self.p)]

    # array-level arithmetic on coefficient vectors (last axis = d)

    def mul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.d == 1:
            return (a * b) % self.p
        outer = a[..., :, None] * b[..., None, :]
        shape = outer.shape[:-2] + (self.d * self.d,)
        return (outer.reshape(shape) @ self._mul_tensor) % self.p

    def mul_matrix(self, x):
        """d x d matrix M with y * x = y @ M for coefficient vectors y."""
        x = np.asarray(x, dtype=np.int64)
        eye = np.eye(self.d, dtype=np.int64)
        return self.mul(eye, x[None, :])

    def inv_coeffs(self, x):
        key = tuple(int(c) for c in x)
        cache = self.__dict__.setdefault("_inv_cache", {})
        out = cache.get(key)
        if out is None:
            out = cache[key] = np.array((~self(key)).coeffs, dtype=np.int64)
        return out


class FieldElem:
    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = coeffs

    def _pair(self, other):
        """Both operands in one field, or None if other is not a scalar."""
        if isinstance(other, FieldElem):
            if other.field == self.field:
                return self, other
            if other.field.is_prime_field:
                return self, self.field(other.coeffs[0])
            if self.field.is_prime_field:
                return other.field(self.coeffs[0]), other
            raise SpecMismatchError(f"{self.field!r} vs {other.field!r}")
        if isinstance(other, (int, np.integer)):
            return self, self.field(other)
        return None

    def __add__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        p = a.field.p
        return FieldElem(a.field, tuple((x + y) % p for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return FieldElem(self.field, tuple((-a) % p for a in self.coeffs))

    def __sub__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        F = a.field
        if F.d == 1:
            return FieldElem(F, ((a.coeffs[0] * b.coeffs[0]) % F.p,))
        prod = F.mul(np.array(a.coeffs), np.array(b.coeffs))
        return FieldElem(F, tuple(int(x) for x in prod))

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            return (~self) ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __invert__(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        F = self.field
        if F.d == 1:
            return F(pow(self.coeffs[0], F.p - 2, F.p))
        return self ** (F.q - 2)

    def __truediv__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a * ~b

    def __rtruediv__(self, other):
        return self.field(other) * ~self

    def __eq__(self, other):
        if isinstance(other, (int, np.integer)):
            other = self.field(other)
        if not isinstance(other, FieldElem):
            return NotImplemented
        if other.field != self.field:
            if other.field.is_prime_field or self.field.is_prime_field:
                return self.in_prime_subfield() and other.in_prime_subfield() and self.coeffs[0] == other.coeffs[0]
            return False
        return self.coeffs == other.coeffs

    def __hash__(self):
        if self.in_prime_subfield():
            return hash(self.coeffs[0])
        return hash((self.field.p, self.field.modulus, self.coeffs))

    def __repr__(self):
        if self.field.d == 1:
            return f"{self.coeffs[0]}"
        terms = []
        for i, a in enumerate(self.coeffs):
            if a:
                mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
                coef = "" if a == 1 and i else str(a)
                terms.append(coef + mono)
        return " + ".join(terms) if terms else "0"

    def is_zero(self):
        return not any(self.coeffs)

    def in_prime_subfield(self):
        return not any(self.coeffs[1:])

    def to_int(self):
        if not self.in_prime_subfield():
            raise ValueError(f"{self!r} is not in the prime subfield")
        return self.coeffs[0]

    def frobenius(self):
        return self ** self.field.p

    def to_json(self):
        return list(self.coeffs)


def prime_field(p):
    return FiniteField(p, (0, 1))


def make_artin_schreier(p, c):
    """F_p[t]/(t^p - t - c^p); the class of t solves X^p - X = c^p."""
    c = int(c) % p
    if c == 0:
        raise FieldError("X^p - X splits over F_p; use the prime field for c = 0")
    cp = pow(c, p, p)
    modulus = [(-cp) % p, p - 1] + [0] * (p - 2) + [1]
    return FiniteField(p, modulus, as_constant=cp)


def binom_field(x, k):
    """x(x-1)...(x-k+1)/k! for 0 <= k < p."""
    F = x.field
    if not 0 <= k < F.p:
        raise ValueError(f"binom_field needs 0 <= k < p, got k = {k}")
    acc = F.one
    for i in range(k):
        acc = acc * (x - i)
    return acc * inv_factorial_mod_p(k, F.p)


def artin_schreier_roots(field, c):
    """All roots of X^p - X - c^p in ``field``, checked by substitution."""
    c = field(c)
    if not c.in_prime_subfield():
        raise FieldError("c must lie in the prime subfield")
    p = field.p
    target = c ** p
    if target.is_zero():
        candidates = [field(j) for j in range(p)]
    elif field.d > 1:
        # t + j for the Artin-Schreier generator, plus a full search if the
        # field was built for a different constant
        candidates = [field.theta + j for j in range(p)] if field.as_constant == target.to_int() else list(field.elements())
    else:
        candidates = []
    roots = [x for x in candidates if x ** p - x == target]
    if len(roots) != p:
        raise InsufficientFieldError(f"found {len(roots)} roots of X^{p} - X - {target!r} in {field!r}, expected {p}")
    return roots


def binom_int_field(n, k, field):
    return field(binom_mod_p(n, k, field.p))
