"""Exact coefficient domains: finite fields F_{p^n} and p-local integers Z_(p).

Finite-field elements are coefficient tuples over F_p reduced modulo an
explicit monic irreducible polynomial in the symbol `t`.  The modulus is
chosen deterministically (lexicographically least irreducible candidate),
so two fields built from the same (p, n) are interchangeable.

Z_(p) elements are plain `fractions.Fraction` values whose denominator is
coprime to p; the domain object only supplies coercion and metadata.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import NoIrreducibleFound, NonPrime

MAX_EXTENSION_DEGREE = 4


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    d = 2
    while d * d <= m:
        if m % d == 0:
            return False
        d += 1
    return True


def _poly_mod(coeffs, modulus, p):
    # reduce a coefficient list (ascending powers of t) mod a monic modulus
    coeffs = [c % p for c in coeffs]
    n = len(modulus) - 1
    for k in range(len(coeffs) - 1, n - 1, -1):
        c = coeffs[k]
        if c:
            for i, m in enumerate(modulus[:-1]):
                coeffs[k - n + i] = (coeffs[k - n + i] - c * m) % p
        coeffs[k] = 0
    out = coeffs[:n]
    return tuple(out + [0] * (n - len(out)))


def _poly_eval(coeffs, x, p):
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % p
    return acc


def _poly_divmod(num, den, p):
    # schoolbook division of coefficient lists over F_p; den monic-normalized
    num = list(num)
    dn = len(den) - 1
    while den and den[-1] == 0:
        den = den[:-1]
        dn -= 1
    inv_lead = pow(den[-1], p - 2, p)
    quot = [0] * max(0, len(num) - dn)
    for k in range(len(num) - 1, dn - 1, -1):
        c = (num[k] * inv_lead) % p
        if c:
            quot[k - dn] = c
            for i, m in enumerate(den):
                num[k - dn + i] = (num[k - dn + i] - c * m) % p
    while num and num[-1] == 0:
        num.pop()
    return quot, num


def _is_irreducible(coeffs, p):
    """Irreducibility over F_p for degree <= 4: linear polynomials always;
    otherwise a root check, plus trial division by every monic quadratic
    in degree 4."""
    deg = len(coeffs) - 1
    if deg == 1:
        return True
    for x in range(p):
        if _poly_eval(coeffs, x, p) == 0:
            return False
    if deg == 4:
        for a in range(p):
            for b in range(p):
                _, rem = _poly_divmod(list(coeffs), [b, a, 1], p)
                if not rem:
                    return False
    return deg >= 2


@dataclass(frozen=True)
class FiniteField:
    """The field F_{p^n} presented as F_p[t] / (modulus)."""

    p: int
    n: int
    modulus: tuple[int, ...]  # ascending coefficients, monic, length n + 1

    @property
    def size(self) -> int:
        return self.p**self.n

    @property
    def characteristic(self) -> int:
        return self.p

    def zero(self):
        return FFElement(self, (0,) * self.n)

    def one(self):
        return FFElement(self, (1,) + (0,) * (self.n - 1))

    def generator(self):
        """The class of t (a multiplicative generator candidate, n > 1)."""
        if self.n == 1:
            raise ValueError("prime field has no extension generator")
        return FFElement(self, (0, 1) + (0,) * (self.n - 2))

    def element(self, value) -> "FFElement":
        if isinstance(value, FFElement):
            if value.field != self:
                raise ValueError("element of a different field")
            return value
        if isinstance(value, int):
            return FFElement(self, (value % self.p,) + (0,) * (self.n - 1))
        if isinstance(value, (tuple, list)):
            coeffs = tuple(c % self.p for c in value)
            if len(coeffs) > self.n:
                coeffs = _poly_mod(list(coeffs), self.modulus, self.p)
            return FFElement(self, coeffs + (0,) * (self.n - len(coeffs)))
        raise TypeError(f"cannot coerce {value!r} into F_{self.p}^{self.n}")

    coerce = element

    def elements(self):
        for coeffs in itertools.product(range(self.p), repeat=self.n):
            yield FFElement(self, coeffs)

    def is_finite(self) -> bool:
        return True

    def two_is_invertible(self) -> bool:
        return self.p != 2

    def is_unit(self, value) -> bool:
        return bool(value)

    def invert(self, value):
        return value.inverse()

    def __str__(self):
        return f"F_{self.p}" if self.n == 1 else f"F_{self.p}^{self.n}"


@dataclass(frozen=True)
class FFElement:
    field: FiniteField
    coeffs: tuple[int, ...]

    def _binop_ready(self, other):
        if isinstance(other, int):
            return self.field.element(other)
        if isinstance(other, FFElement):
            if other.field != self.field:
                raise ValueError("mixed-field arithmetic")
            return other
        return None

    def __add__(self, other):
        o = self._binop_ready(other)
        if o is None:
            return NotImplemented
        p = self.field.p
        return FFElement(self.field, tuple((a + b) % p for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return FFElement(self.field, tuple((-a) % p for a in self.coeffs))

    def __sub__(self, other):
        o = self._binop_ready(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._binop_ready(other)
        if o is None:
            return NotImplemented
        p, n = self.field.p, self.field.n
        if n == 1:
            return FFElement(self.field, ((self.coeffs[0] * o.coeffs[0]) % p,))
        raw = [0] * (2 * n - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    raw[i + j] = (raw[i + j] + a * b) % p
        return FFElement(self.field, _poly_mod(raw, self.field.modulus, p))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        acc = self.field.one()
        base = self
        while k:
            if k & 1:
                acc = acc * base
            base = base * base
            k >>= 1
        return acc

    def inverse(self):
        if not self:
            raise ZeroDivisionError("inverse of zero")
        return self ** (self.field.size - 2)

    def __truediv__(self, other):
        o = self._binop_ready(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __bool__(self):
        return any(self.coeffs)

    def __str__(self):
        if self.field.n == 1:
            return str(self.coeffs[0])
        parts = []
        for e in range(self.field.n - 1, -1, -1):
            c = self.coeffs[e]
            if not c:
                continue
            if e == 0:
                parts.append(str(c))
            else:
                head = "t" if c == 1 else f"{c}*t"
                parts.append(head if e == 1 else f"{head}^{e}")
        return "+".join(parts) if parts else "0"

    __repr__ = __str__


def make_field(p: int, n: int) -> FiniteField:
    """Build F_{p^n} with the deterministic (lexicographically least) modulus."""
    if not is_prime(p):
        raise NonPrime(p)
    if not 1 <= n <= MAX_EXTENSION_DEGREE:
        raise ValueError(f"extension degree {n} outside the supported range 1..{MAX_EXTENSION_DEGREE}")
    # candidates t^n + c_{n-1} t^{n-1} + ... + c_0, ordered by (c_{n-1}, ..., c_0)
    for tail in itertools.product(range(p), repeat=n):
        coeffs = tuple(reversed(tail)) + (1,)
        if _is_irreducible(coeffs, p):
            return FiniteField(p, n, coeffs)
    raise NoIrreducibleFound(f"no irreducible monic polynomial of degree {n} over F_{p}")


@dataclass(frozen=True)
class PLocalIntegers:
    """Z_(p): fractions with denominator coprime to p."""

    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise NonPrime(self.p)

    @property
    def characteristic(self) -> int:
        return 0

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def element(self, value) -> Fraction:
        f = Fraction(value)
        if f.denominator % self.p == 0:
            raise ValueError(f"{value} is not p-local at p={self.p}")
        return f

    coerce = element

    def elements(self):
        raise ValueError("Z_(p) is infinite; cannot enumerate")

    def is_finite(self) -> bool:
        return False

    def two_is_invertible(self) -> bool:
        return self.p != 2

    def is_unit(self, value) -> bool:
        return value != 0 and value.numerator % self.p != 0

    def invert(self, value):
        if not self.is_unit(value):
            raise ZeroDivisionError(f"{value} is not a unit in Z_({self.p})")
        return 1 / value

    def __str__(self):
        return f"Z_({self.p})"
