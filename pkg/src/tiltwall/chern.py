"""Chern characters on P^3 and the numerical invariants built from them.

A character (r, c, d, e) is stored as integers (r, c, 2d, 6e) so that the
lattice congruences can be checked exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import BothZero, LatticeViolation
from .quadirr import Number, QuadIrr

Rational = Union[int, Fraction]
INF = math.inf

# Todd coefficients: chi(v) = r + 11/6 c + 2 d + e.
TODD = (Fraction(1), Fraction(11, 6), Fraction(2), Fraction(1))


def _as_fraction(x, what: str) -> Fraction:
    try:
        return Fraction(x)
    except (TypeError, ValueError) as exc:
        raise LatticeViolation(f"{what}={x!r} is not a rational number") from exc


def _scaled(x: Fraction, k: int, what: str) -> int:
    y = x * k
    if y.denominator != 1:
        raise LatticeViolation(f"{k}*{what} = {y} is not an integer")
    return y.numerator


@dataclass(frozen=True, order=True)
class Ch2:
    """A truncated character (r, c, d); d is stored as d2 = 2d."""

    r: int
    c: int
    d2: int

    def __post_init__(self):
        if (self.d2 - self.c) % 2:
            raise LatticeViolation(
                f"parity: 2d={self.d2} and c={self.c} differ mod 2"
            )

    @classmethod
    def of(cls, r: int, c: int, d: Rational) -> "Ch2":
        d = _as_fraction(d, "d")
        return cls(int(r), int(c), _scaled(d, 2, "d"))

    @property
    def d(self) -> Fraction:
        return Fraction(self.d2, 2)

    def as_tuple(self) -> tuple[int, int, Fraction]:
        return (self.r, self.c, self.d)

    def __add__(self, o: "Ch2") -> "Ch2":
        return Ch2(self.r + o.r, self.c + o.c, self.d2 + o.d2)

    def __sub__(self, o: "Ch2") -> "Ch2":
        return Ch2(self.r - o.r, self.c - o.c, self.d2 - o.d2)

    def __neg__(self) -> "Ch2":
        return Ch2(-self.r, -self.c, -self.d2)

    def is_zero(self) -> bool:
        return self.r == 0 and self.c == 0 and self.d2 == 0

    def __str__(self) -> str:
        return f"({self.r},{self.c},{self.d})"


@dataclass(frozen=True, order=True)
class ChernChar:
    """A full character (r, c, d, e) stored as (r, c, 2d, 6e)."""

    r: int
    c: int
    d2: int
    e6: int

    def __post_init__(self):
        if (self.d2 - self.c) % 2:
            raise LatticeViolation(
                f"parity: 2d={self.d2} and c={self.c} differ mod 2"
            )
        if (6 * self.r + 11 * self.c + 6 * self.d2 + self.e6) % 6:
            raise LatticeViolation(f"chi({self}) is not an integer")

    @property
    def d(self) -> Fraction:
        return Fraction(self.d2, 2)

    @property
    def e(self) -> Fraction:
        return Fraction(self.e6, 6)

    def truncate(self) -> Ch2:
        return Ch2(self.r, self.c, self.d2)

    def as_tuple(self) -> tuple[int, int, Fraction, Fraction]:
        return (self.r, self.c, self.d, self.e)

    def __add__(self, o: "ChernChar") -> "ChernChar":
        return ChernChar(self.r + o.r, self.c + o.c, self.d2 + o.d2, self.e6 + o.e6)

    def __sub__(self, o: "ChernChar") -> "ChernChar":
        return ChernChar(self.r - o.r, self.c - o.c, self.d2 - o.d2, self.e6 - o.e6)

    def __neg__(self) -> "ChernChar":
        return ChernChar(-self.r, -self.c, -self.d2, -self.e6)

    def scale(self, m: int) -> "ChernChar":
        return ChernChar(m * self.r, m * self.c, m * self.d2, m * self.e6)

    def __str__(self) -> str:
        return f"({self.r},{self.c},{self.d},{self.e})"


AnyChern = Union[ChernChar, Ch2]


def make(r: int, c: int, d: Rational, e: Rational) -> ChernChar:
    """Validated constructor; raises LatticeViolation off the lattice."""
    if int(r) != r or int(c) != c:
        raise LatticeViolation("r and c must be integers")
    d = _as_fraction(d, "d")
    e = _as_fraction(e, "e")
    return ChernChar(int(r), int(c), _scaled(d, 2, "d"), _scaled(e, 6, "e"))


def make2(r: int, c: int, d: Rational) -> Ch2:
    if int(r) != r or int(c) != c:
        raise LatticeViolation("r and c must be integers")
    return Ch2.of(r, c, d)


def line_bundle(n: int) -> ChernChar:
    """ch(O(n))."""
    return make(1, n, Fraction(n * n, 2), Fraction(n ** 3, 6))


def twist(v: AnyChern, n: int) -> AnyChern:
    """Tensor by O(n)."""
    r, c, d = v.r, v.c, v.d
    c2 = c + n * r
    dd = d + n * c + Fraction(n * n * r, 2)
    if isinstance(v, Ch2):
        return Ch2.of(r, c2, dd)
    e = v.e + n * d + Fraction(n * n * c, 2) + Fraction(n ** 3 * r, 6)
    return make(r, c2, dd, e)


def mul(v: ChernChar, w: ChernChar) -> ChernChar:
    """Product in the truncated cohomology ring Q[H]/H^4."""
    r = v.r * w.r
    c = v.r * w.c + v.c * w.r
    d = v.r * w.d + v.c * w.c + v.d * w.r
    e = v.r * w.e + v.c * w.d + v.d * w.c + v.e * w.r
    return make(r, c, d, e)


@dataclass(frozen=True)
class DualPair:
    plain: ChernChar
    shifted: ChernChar


def dual(v: ChernChar) -> DualPair:
    """ch of RHom(E, O) and of its shift by one."""
    plain = ChernChar(v.r, -v.c, v.d2, -v.e6)
    return DualPair(plain, -plain)


def chi(v: ChernChar) -> Fraction:
    return TODD[0] * v.r + TODD[1] * v.c + TODD[2] * v.d + TODD[3] * v.e


def euler_pairing(w: ChernChar, v: ChernChar) -> Fraction:
    """chi(w, v) = sum (-1)^i ext^i(w, v) at the level of characters."""
    return chi(mul(dual(w).plain, v))


def mu(v: AnyChern) -> Union[Fraction, float]:
    if v.r == 0:
        return INF
    return Fraction(v.c, v.r)


def delta(v: AnyChern) -> Fraction:
    return v.c * v.c - 2 * v.r * v.d


@dataclass(frozen=True)
class TwistedChern:
    ch0b: Number
    ch1b: Number
    ch2b: Number
    ch3b: Number | None = None


def twisted_ch(v: AnyChern, beta: Number) -> TwistedChern:
    """ch^beta = ch * exp(-beta H); works for rational or quadratic beta."""
    r, c, d = v.r, v.c, v.d
    b = beta if isinstance(beta, QuadIrr) else Fraction(beta)
    ch1 = c - b * r
    ch2 = d - b * c + b * b * r / 2
    ch3 = None
    if isinstance(v, ChernChar):
        ch3 = v.e - b * d + b * b * c / 2 - b * b * b * r / 6
    return TwistedChern(r, ch1, ch2, ch3)


def nu(v: AnyChern, alpha_sq: Rational, beta: Number):
    """Tilt slope; alpha enters only through alpha_sq >= 0."""
    if alpha_sq < 0:
        raise ValueError("alpha_sq must be non-negative")
    t = twisted_ch(v, beta)
    if t.ch1b == 0:
        return INF
    return (t.ch2b - Fraction(alpha_sq) * v.r / 2) / t.ch1b


def bigQ(v: ChernChar, alpha_sq: Rational, beta: Number):
    alpha_sq = Fraction(alpha_sq)
    t = twisted_ch(v, beta)
    return alpha_sq * delta(v) + 4 * t.ch2b * t.ch2b - 6 * t.ch1b * t.ch3b


# --------------------------------------------------------------------------
# Hilbert polynomials and the Gieseker pre-order


@dataclass(frozen=True)
class HilbertPoly:
    """P(m) = a3 m^3 + a2 m^2 + a1 m + a0."""

    a0: Fraction
    a1: Fraction
    a2: Fraction
    a3: Fraction

    def __call__(self, m: Rational) -> Fraction:
        m = Fraction(m)
        return ((self.a3 * m + self.a2) * m + self.a1) * m + self.a0

    def coeffs(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        """Top coefficient first."""
        return (self.a3, self.a2, self.a1, self.a0)

    def p2(self) -> "HilbertPoly":
        return HilbertPoly(Fraction(0), self.a1, self.a2, self.a3)

    def degree(self) -> int:
        for k, a in zip((3, 2, 1, 0), self.coeffs()):
            if a != 0:
                return k
        return -1

    def is_zero(self) -> bool:
        return self.degree() < 0


def hilbert_poly(v: ChernChar) -> HilbertPoly:
    r, c, d = v.r, v.c, v.d
    return HilbertPoly(
        a0=chi(v),
        a1=Fraction(11 * r, 6) + 2 * c + d,
        a2=r + Fraction(c, 2),
        a3=Fraction(r, 6),
    )


class Order(str, Enum):
    PREC = "≺"
    EQUIV = "≍"
    SUCC = "≻"


def _preceq(f: HilbertPoly, g: HilbertPoly) -> bool:
    if f.is_zero():
        return g.is_zero()
    if g.is_zero():
        return True
    if f.degree() != g.degree():
        return f.degree() > g.degree()
    k = 3 - f.degree()
    fc, gc = f.coeffs()[k:], g.coeffs()[k:]
    fn = [a / fc[0] for a in fc]
    gn = [a / gc[0] for a in gc]
    return fn <= gn


def gieseker_compare(f: HilbertPoly, g: HilbertPoly, mode: str = "full") -> Order:
    """Compare in the pre-order on polynomials (mode "p2" drops a0)."""
    if mode not in ("full", "p2"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "p2":
        f, g = f.p2(), g.p2()
    if f.is_zero() and g.is_zero():
        raise BothZero("both polynomials vanish")
    fg, gf = _preceq(f, g), _preceq(g, f)
    if fg and gf:
        return Order.EQUIV
    return Order.PREC if fg else Order.SUCC


# --------------------------------------------------------------------------
# Membership in CH, CH<=2 and CH<=1


@dataclass(frozen=True)
class MembershipReport:
    in_ch_le1: bool
    in_ch_le2: bool
    in_ch: bool
    violated_rules: tuple[str, ...] = field(default_factory=tuple)


def classify_membership(v: Union[AnyChern, Sequence]) -> MembershipReport:
    """Check the lattice rules level by level.

    Rule ids: ``grid`` (entries in Z, Z, Z/2, Z/6), ``i.a`` r >= 0,
    ``i.b`` r = 0 => c >= 0, ``ii.b`` r = c = 0 => d >= 0, ``ii.c``/``ii.d``
    parity of d against c, ``iii.b`` r = c = d = 0 => e >= 0, ``iii.c``
    chi integral.  Truncated input is reported only up to its length.
    """
    if isinstance(v, ChernChar):
        vals: list = [v.r, v.c, v.d, v.e]
    elif isinstance(v, Ch2):
        vals = [v.r, v.c, v.d]
    else:
        vals = [Fraction(x) for x in v]
    if len(vals) < 2 or len(vals) > 4:
        raise ValueError("expected 2 to 4 entries")
    vals = [Fraction(x) for x in vals]
    bad1: list[str] = []
    bad2: list[str] = []
    bad3: list[str] = []
    r, c = vals[0], vals[1]
    if r.denominator != 1 or c.denominator != 1:
        bad1.append("grid")
    if r < 0:
        bad1.append("i.a")
    if r == 0 and c < 0:
        bad1.append("i.b")
    if len(vals) >= 3:
        d = vals[2]
        if (2 * d).denominator != 1:
            bad2.append("grid")
        else:
            if r == 0 and c == 0 and d < 0:
                bad2.append("ii.b")
            if c.denominator == 1:
                if c.numerator % 2 == 0 and d.denominator != 1:
                    bad2.append("ii.c")
                if c.numerator % 2 == 1 and d.denominator == 1:
                    bad2.append("ii.d")
    if len(vals) == 4:
        e = vals[3]
        if (6 * e).denominator != 1:
            bad3.append("grid")
        if r == 0 and c == 0 and vals[2] == 0 and e < 0:
            bad3.append("iii.b")
        x = TODD[0] * r + TODD[1] * c + TODD[2] * vals[2] + TODD[3] * e
        if x.denominator != 1:
            bad3.append("iii.c")
    in1 = not bad1
    in2 = in1 and not bad2 and len(vals) >= 3
    in3 = in2 and not bad3 and len(vals) == 4
    rules = tuple(dict.fromkeys(bad1 + bad2 + bad3))
    return MembershipReport(in1, in2, in3, rules)


def random_lattice(rng, bound: int = 6, full: bool = True) -> AnyChern:
    """A random lattice point; used by tests and examples."""
    r = rng.randint(-bound, bound)
    c = rng.randint(-bound, bound)
    d2 = rng.randint(-2 * bound, 2 * bound)
    if (d2 - c) % 2:
        d2 += 1
    if not full:
        return Ch2(r, c, d2)
    e6 = rng.randint(-6 * bound, 6 * bound)
    e6 -= (6 * r + 11 * c + 6 * d2 + e6) % 6
    return ChernChar(r, c, d2, e6)


def iter_sum(vs: Iterable[ChernChar]) -> ChernChar:
    out = ChernChar(0, 0, 0, 0)
    for v in vs:
        out = out + v
    return out
