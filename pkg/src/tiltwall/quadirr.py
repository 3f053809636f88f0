"""Exact numbers of the form a + b*sqrt(D) with rational a, b.

Every comparison is decided with integer arithmetic; floats only appear
in ``__float__`` for rendering.
"""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering
from math import isqrt
from typing import Union

from .errors import MixedRadicals

Rational = Union[int, Fraction]


def _square_free(n: int) -> tuple[int, int]:
    """Split n >= 0 as k*k*m with m square-free; return (k, m)."""
    if n < 2:
        return 1, n
    k = 1
    m = n
    p = 2
    while p * p <= m:
        pp = p * p
        while m % pp == 0:
            m //= pp
            k *= p
        p += 1 if p == 2 else 2
    return k, m


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


@total_ordering
class QuadIrr:
    """The real number a + b*sqrt(D), kept with D square-free."""

    __slots__ = ("a", "b", "D")

    def __init__(self, a: Rational = 0, b: Rational = 0, D: int = 0):
        if D < 0:
            raise ValueError("D must be non-negative")
        a = Fraction(a)
        b = Fraction(b)
        k, m = _square_free(int(D))
        b *= k
        if m == 1:
            a += b
            b = Fraction(0)
            m = 0
        if m == 0 or b == 0:
            b = Fraction(0)
            m = 0
        self.a = a
        self.b = b
        self.D = m

    # construction helpers -------------------------------------------------
    @classmethod
    def sqrt(cls, x: Rational) -> "QuadIrr":
        """Exact square root of a non-negative rational."""
        x = Fraction(x)
        if x < 0:
            raise ValueError("square root of a negative rational")
        p, q = x.numerator, x.denominator
        return cls(0, Fraction(1, q), p * q)

    @classmethod
    def coerce(cls, x: "Rational | QuadIrr") -> "QuadIrr":
        return x if isinstance(x, QuadIrr) else cls(x)

    # queries --------------------------------------------------------------
    def is_rational(self) -> bool:
        return self.b == 0

    def to_fraction(self) -> Fraction:
        if self.b != 0:
            raise ValueError(f"{self} is irrational")
        return self.a

    def conjugate(self) -> "QuadIrr":
        return QuadIrr(self.a, -self.b, self.D)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.D

    def sign(self) -> int:
        sa, sb = _sign(self.a), _sign(self.b)
        if sb == 0:
            return sa
        if sa == 0:
            return sb
        if sa == sb:
            return sa
        # opposite signs: compare a^2 with b^2 D
        diff = self.a * self.a - self.b * self.b * self.D
        return sa * _sign(diff)

    def floor(self) -> int:
        if self.b == 0:
            return self.a.numerator // self.a.denominator
        t = self.b * self.b * self.D
        p, q = t.numerator, t.denominator
        root = Fraction(isqrt(p * q), q)  # sqrt(t) - 1/q < root <= sqrt(t)
        approx = self.a + root if self.b > 0 else self.a - root
        n = approx.numerator // approx.denominator
        while (self - n).sign() < 0:
            n -= 1
        while (self - (n + 1)).sign() >= 0:
            n += 1
        return n

    def ceil(self) -> int:
        return -((-self).floor())

    # arithmetic -----------------------------------------------------------
    def _common(self, other) -> tuple["QuadIrr", int]:
        o = QuadIrr.coerce(other)
        if self.D and o.D and self.D != o.D:
            raise MixedRadicals(f"sqrt({self.D}) vs sqrt({o.D})")
        return o, self.D or o.D

    def __add__(self, other):
        if not isinstance(other, (int, Fraction, QuadIrr)):
            return NotImplemented
        o, D = self._common(other)
        return QuadIrr(self.a + o.a, self.b + o.b, D)

    __radd__ = __add__

    def __neg__(self):
        return QuadIrr(-self.a, -self.b, self.D)

    def __sub__(self, other):
        if not isinstance(other, (int, Fraction, QuadIrr)):
            return NotImplemented
        return self + (-QuadIrr.coerce(other))

    def __rsub__(self, other):
        return QuadIrr.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, (int, Fraction, QuadIrr)):
            return NotImplemented
        o, D = self._common(other)
        return QuadIrr(
            self.a * o.a + self.b * o.b * D, self.a * o.b + self.b * o.a, D
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, (int, Fraction, QuadIrr)):
            return NotImplemented
        o, _ = self._common(other)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt D)")
        return self * QuadIrr(o.a / n, -o.b / n, o.D)

    def __rtruediv__(self, other):
        return QuadIrr.coerce(other) / self

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = QuadIrr(1)
        for _ in range(k):
            out = out * self
        return out

    # comparison -----------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, (int, Fraction, QuadIrr)):
            return NotImplemented
        o = QuadIrr.coerce(other)
        return self.a == o.a and self.b == o.b and self.D == o.D

    def __lt__(self, other):
        if not isinstance(other, (int, Fraction, QuadIrr)):
            return NotImplemented
        return compare(self, other) < 0

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.D))

    def __float__(self):
        return float(self.a) + float(self.b) * self.D ** 0.5

    def __repr__(self):
        return f"QuadIrr({self.a}, {self.b}, {self.D})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        sgn = "+" if self.b > 0 else "-"
        mag = abs(self.b)
        rad = f"sqrt({self.D})" if mag == 1 else f"{mag}*sqrt({self.D})"
        if self.a == 0:
            return rad if sgn == "+" else f"-{rad}"
        return f"{self.a} {sgn} {rad}"


Number = Union[int, Fraction, QuadIrr]


def sign_of(x: Number) -> int:
    if isinstance(x, QuadIrr):
        return x.sign()
    return _sign(Fraction(x))


def floor_of(x: Number) -> int:
    if isinstance(x, QuadIrr):
        return x.floor()
    f = Fraction(x)
    return f.numerator // f.denominator


def ceil_of(x: Number) -> int:
    return -floor_of(-x)


def compare(x: Number, y: Number) -> int:
    """Sign of x - y, also when x and y carry different radicals."""
    x, y = QuadIrr.coerce(x), QuadIrr.coerce(y)
    if not (x.D and y.D and x.D != y.D):
        return (x - y).sign()
    # x - y = u + w with u = (x.a - y.a) + x.b sqrt(x.D), w = -y.b sqrt(y.D)
    u = QuadIrr(x.a - y.a, x.b, x.D)
    su, sw = u.sign(), _sign(-y.b)
    if su == sw or sw == 0:
        return su
    if su == 0:
        return sw
    return su * (u * u - y.b * y.b * y.D).sign()
