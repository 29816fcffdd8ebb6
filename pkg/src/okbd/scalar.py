"""Exact numbers of the form p + q*sqrt(d) with p, q rational."""

from __future__ import annotations

import math
from decimal import Decimal, localcontext
from fractions import Fraction
from numbers import Rational

__all__ = ["AlgebraicScalar", "sqrt", "squarefree_split", "to_fraction"]


def to_fraction(value) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings to a Fraction.

    Floats are accepted only when they hold an integer value; anything else
    would silently import binary rounding error into exact computations.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float) and value.is_integer():
        return Fraction(int(value))
    raise TypeError(f"cannot use {value!r} as an exact rational")


def squarefree_split(n: int) -> tuple[int, int]:
    """Return (s, d) with n = s*s*d and d squarefree, for n >= 0."""
    if n < 0:
        raise ValueError("squarefree_split needs a nonnegative integer")
    if n == 0:
        return 0, 0
    s = 1
    d = 1
    rest = n
    p = 2
    # once p**3 exceeds what is left, at most two prime factors remain, so
    # the leftover is squarefree unless it is a perfect square
    while p * p * p <= rest:
        e = 0
        while rest % p == 0:
            rest //= p
            e += 1
        s *= p ** (e // 2)
        if e % 2:
            d *= p
        p += 1 if p == 2 else 2
    r = math.isqrt(rest)
    if r * r == rest:
        return s * r, d
    return s, d * rest


def _is_squarefree(d: int) -> bool:
    return squarefree_split(d)[0] == 1


class AlgebraicScalar:
    """p + q*sqrt(d), exact.

    Values with different radicands d cannot be combined; the engine only
    ever produces one radicand per computation, so mixing them is a bug and
    raises ValueError.
    """

    __slots__ = ("p", "q", "d")

    def __init__(self, p=0, q=0, d=0):
        p = to_fraction(p)
        q = to_fraction(q)
        d = int(d)
        if d < 0:
            raise ValueError("radicand must be nonnegative")
        if q == 0 or d == 0:
            q, d = Fraction(0), 0
        elif d == 1:
            p, q, d = p + q, Fraction(0), 0
        elif not _is_squarefree(d):
            s, d = squarefree_split(d)
            q = q * s
        self.p = p
        self.q = q
        self.d = d

    @classmethod
    def coerce(cls, value) -> "AlgebraicScalar":
        if isinstance(value, AlgebraicScalar):
            return value
        return cls(value)

    @property
    def is_rational(self) -> bool:
        return self.q == 0

    def as_fraction(self) -> Fraction:
        if self.q != 0:
            raise ValueError(f"{self} is irrational")
        return self.p

    def _field(self, other: "AlgebraicScalar") -> int:
        if self.d == 0:
            return other.d
        if other.d == 0 or other.d == self.d:
            return self.d
        raise ValueError(f"cannot combine sqrt({self.d}) and sqrt({other.d})")

    def __add__(self, other):
        try:
            other = AlgebraicScalar.coerce(other)
        except TypeError:
            return NotImplemented
        d = self._field(other)
        return AlgebraicScalar(self.p + other.p, self.q + other.q, d)

    __radd__ = __add__

    def __neg__(self):
        return AlgebraicScalar(-self.p, -self.q, self.d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        try:
            other = AlgebraicScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = AlgebraicScalar.coerce(other)
        except TypeError:
            return NotImplemented
        d = self._field(other)
        p = self.p * other.p + self.q * other.q * d
        q = self.p * other.q + self.q * other.p
        return AlgebraicScalar(p, q, d)

    __rmul__ = __mul__

    def conjugate(self) -> "AlgebraicScalar":
        return AlgebraicScalar(self.p, -self.q, self.d)

    def norm(self) -> Fraction:
        return self.p * self.p - self.q * self.q * self.d

    def __truediv__(self, other):
        try:
            other = AlgebraicScalar.coerce(other)
        except TypeError:
            return NotImplemented
        n = other.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero")
        return self * other.conjugate() * AlgebraicScalar(1 / n)

    def __rtruediv__(self, other):
        return AlgebraicScalar.coerce(other) / self

    def sign(self) -> int:
        sp = (self.p > 0) - (self.p < 0)
        sq = (self.q > 0) - (self.q < 0)
        if sq == 0:
            return sp
        if sp == 0 or sp == sq:
            return sq
        lhs = self.p * self.p
        rhs = self.q * self.q * self.d
        if lhs > rhs:
            return sp
        if lhs < rhs:
            return sq
        return 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def _cmp(self, other) -> int:
        return (self - AlgebraicScalar.coerce(other)).sign()

    def __eq__(self, other):
        try:
            other = AlgebraicScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self.p == other.p and self.q == other.q and self.d == other.d

    def __hash__(self):
        if self.q == 0:
            return hash(self.p)
        return hash((self.p, self.q, self.d))

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __bool__(self):
        return self.p != 0 or self.q != 0

    def __float__(self):
        return float(self.p) + float(self.q) * math.sqrt(self.d)

    def to_decimal(self, digits: int = 12) -> str:
        """Decimal rendering with a fixed number of significant digits."""
        with localcontext() as ctx:
            ctx.prec = digits + 20
            value = Decimal(self.p.numerator) / Decimal(self.p.denominator)
            if self.q:
                value += (Decimal(self.q.numerator) / Decimal(self.q.denominator)) * Decimal(self.d).sqrt()
        if value == 0:
            return "0"
        return f"{value:.{digits}g}"

    def to_json(self):
        if self.q == 0:
            return str(self.p)
        return {"p": str(self.p), "q": str(self.q), "d": self.d}

    @classmethod
    def from_json(cls, data) -> "AlgebraicScalar":
        if isinstance(data, dict):
            return cls(data["p"], data.get("q", 0), data.get("d", 0))
        return cls(data)

    def __str__(self):
        if self.q == 0:
            return str(self.p)
        sign = "+" if self.q > 0 else "-"
        coeff = abs(self.q)
        root = f"sqrt({self.d})" if coeff == 1 else f"{coeff}*sqrt({self.d})"
        if self.p == 0:
            return root if sign == "+" else f"-{root}"
        return f"{self.p} {sign} {root}"

    def __repr__(self):
        return f"AlgebraicScalar({str(self.p)!r}, {str(self.q)!r}, {self.d})"


def sqrt(value) -> AlgebraicScalar:
    """Exact square root of a nonnegative rational."""
    r = to_fraction(value)
    if r < 0:
        raise ValueError("square root of a negative number")
    # sqrt(a/b) = sqrt(a*b)/b
    s, d = squarefree_split(r.numerator * r.denominator)
    if d in (0, 1):
        return AlgebraicScalar(Fraction(s, r.denominator))
    return AlgebraicScalar(0, Fraction(s, r.denominator), d)
