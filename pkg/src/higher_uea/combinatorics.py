"""Base-p digits and binomial coefficients modulo a prime.

Digits are always stored least-significant first.
"""

from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial

from .errors import DigitOverflowError


@dataclass(frozen=True)
class DigitVector:
    digits: tuple
    p: int

    @property
    def width(self):
        return len(self.digits)

    @property
    def value(self):
        return sum(a * self.p**i for i, a in enumerate(self.digits))

    def __iter__(self):
        return iter(self.digits)

    def __getitem__(self, i):
        return self.digits[i]

    def __len__(self):
        return len(self.digits)


@lru_cache(maxsize=None)
def digits(n: int, p: int, width: int) -> tuple:
    if n < 0:
        raise ValueError(f"negative integer {n} has no base-{p} digits")
    if n >= p**width:
        raise DigitOverflowError(f"{n} does not fit in {width} base-{p} digits")
    out = []
    for _ in range(width):
        n, a = divmod(n, p)
        out.append(a)
    return tuple(out)


def base_p_digits(n: int, p: int, width: int) -> DigitVector:
    return DigitVector(digits(n, p, width), p)


def from_digits(ds, p: int) -> int:
    return sum(a * p**i for i, a in enumerate(ds))


def _all_digits(n, p):
    out = []
    while n:
        n, a = divmod(n, p)
        out.append(a)
    return out


@lru_cache(maxsize=None)
def binom_mod_p(n: int, k: int, p: int) -> int:
    """binom(n, k) mod p for any integer n and k >= 0.

    Negative n goes through binom(n, k) = (-1)^k binom(-n+k-1, k),
    nonnegative n through Lucas' theorem.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0:
        return 1
    if n < 0:
        v = binom_mod_p(-n + k - 1, k, p)
        return v if k % 2 == 0 else (-v) % p
    if k > n:
        return 0
    result = 1
    while k:
        n, a = divmod(n, p)
        k, b = divmod(k, p)
        if b > a:
            return 0
        result = result * comb(a, b) % p
    return result


def kummer_carry_vanishes(a: int, b: int, p: int) -> bool:
    """True iff adding a and b in base p carries at least once."""
    if a < 0 or b < 0:
        raise ValueError("arguments must be nonnegative")
    carry = 0
    while a or b:
        a, x = divmod(a, p)
        b, y = divmod(b, p)
        if x + y + carry >= p:
            return True
        carry = 0
    return False


def p_valuation_factorial(n: int, p: int) -> int:
    """Legendre's formula for v_p(n!)."""
    v = 0
    while n:
        n //= p
        v += n
    return v


def multinomial_mod_p(parts, p: int) -> int:
    """(sum parts)! / prod(part!) mod p.

    The p-adic valuation is the number of carries when the parts are added
    in base p (Kummer), so the value is either 0 or a product of digit-wise
    multinomials (Lucas).
    """
    parts = [int(x) for x in parts]
    if any(x < 0 for x in parts):
        raise ValueError("parts must be nonnegative")
    total = sum(parts)
    val = p_valuation_factorial(total, p) - sum(p_valuation_factorial(x, p) for x in parts)
    assert val >= 0, "multinomial coefficient with negative valuation"
    if val > 0:
        return 0
    result = 1
    rest = [list(_all_digits(x, p)) for x in parts]
    width = max([len(_all_digits(total, p))] + [len(r) for r in rest])
    for i in range(width):
        ds = [r[i] if i < len(r) else 0 for r in rest]
        num = factorial(sum(ds))
        den = 1
        for x in ds:
            den *= factorial(x)
        result = result * (num // den) % p
    return result


def inverse_mod_p(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroDivisionError(f"0 has no inverse modulo {p}")
    return pow(a, p - 2, p)


@lru_cache(maxsize=None)
def factorial_mod_p(n: int, p: int) -> int:
    if n >= p:
        return 0
    return factorial(n) % p


@lru_cache(maxsize=None)
def inv_factorial_mod_p(n: int, p: int) -> int:
    if n >= p:
        raise ZeroDivisionError(f"{n}! vanishes modulo {p}")
    return inverse_mod_p(factorial(n), p)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True
