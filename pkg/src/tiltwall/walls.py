"""Numerical walls in the (alpha, beta) half-plane.

A wall is stored by its center on the beta-axis and its squared radius, so
every locus built from lattice characters has rational data.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence, Union

from .chern import AnyChern, Ch2, ChernChar, delta
from .errors import (
    DegenerateDiscriminant,
    NegativeDiscriminant,
    UnsupportedLocus,
    ZeroRank,
)
from .quadirr import Number, QuadIrr, sign_of


class WallLocus:
    """Base class of the four locus shapes."""

    kind = "abstract"

    def to_dict(self) -> dict:
        return {"type": self.kind}


@dataclass(frozen=True)
class Semicircle(WallLocus):
    s: Fraction
    rho_sq: Fraction
    kind = "semicircle"

    def __post_init__(self):
        if self.rho_sq <= 0:
            raise ValueError("a semicircle needs a positive squared radius")

    def radius(self) -> QuadIrr:
        return QuadIrr.sqrt(self.rho_sq)

    def endpoints(self) -> tuple[QuadIrr, QuadIrr]:
        r = self.radius()
        return (self.s - r, self.s + r)

    def shifted(self, n: int) -> "Semicircle":
        return Semicircle(self.s + n, self.rho_sq)

    def to_dict(self) -> dict:
        return {"type": self.kind, "s": str(self.s), "rho_sq": str(self.rho_sq)}

    def __str__(self) -> str:
        return f"W(s={self.s}, rho^2={self.rho_sq})"


@dataclass(frozen=True)
class VerticalLine(WallLocus):
    beta: Fraction
    kind = "vertical"

    def to_dict(self) -> dict:
        return {"type": self.kind, "beta": str(self.beta)}

    def __str__(self) -> str:
        return f"beta={self.beta}"


@dataclass(frozen=True)
class Empty(WallLocus):
    kind = "empty"

    def __str__(self) -> str:
        return "empty"


@dataclass(frozen=True)
class Everywhere(WallLocus):
    kind = "everywhere"

    def __str__(self) -> str:
        return "everywhere"


EMPTY = Empty()
EVERYWHERE = Everywhere()

TruncLike = Union[AnyChern, Sequence]


def _trunc(v: TruncLike) -> tuple[Fraction, Fraction, Fraction]:
    if isinstance(v, (ChernChar, Ch2)):
        return Fraction(v.r), Fraction(v.c), v.d
    r, c, d = list(v)[:3]
    return Fraction(r), Fraction(c), Fraction(d)


def wall_between(v: TruncLike, w: TruncLike) -> WallLocus:
    """Locus where nu(v) = nu(w); only ch_{<=2} matters."""
    r, c, d = _trunc(v)
    s, x, y = _trunc(w)
    A = c * s - x * r
    B = d * s - y * r
    C = d * x - y * c
    if A != 0:
        center = B / A
        rho_sq = center * center - 2 * C / A
        if rho_sq <= 0:
            return EMPTY
        return Semicircle(center, rho_sq)
    if B != 0:
        return VerticalLine(C / B)
    return EVERYWHERE if C == 0 else EMPTY


def beta_pm(v: TruncLike) -> tuple[QuadIrr, QuadIrr]:
    """The two roots of ch_2^beta(v) = 0, smaller first."""
    r, c, d = _trunc(v)
    if r == 0:
        raise ZeroRank("beta_pm needs non-zero rank")
    disc = c * c - 2 * r * d
    if disc < 0:
        raise NegativeDiscriminant(f"Delta = {disc} < 0")
    root = QuadIrr.sqrt(disc)
    a, b = (c - root) / r, (c + root) / r
    return (a, b) if a <= b else (b, a)


def q_wall(v: ChernChar) -> WallLocus:
    """The semicircle bounding the region where Q_{alpha,beta}(v) < 0."""
    disc = delta(v)
    if disc == 0:
        raise DegenerateDiscriminant("Q-wall is undefined when Delta = 0")
    if disc < 0:
        raise NegativeDiscriminant(f"Delta = {disc} < 0")
    return wall_between((v.r, v.c, v.d), (v.c, 2 * v.d, 3 * v.e))


def crosses_line(W: WallLocus, beta0: Number) -> bool:
    """Does W meet the ray beta = beta0 with alpha > 0?"""
    if isinstance(W, Semicircle):
        t = beta0 - W.s
        return sign_of(t * t - W.rho_sq) < 0
    if isinstance(W, VerticalLine):
        return sign_of(beta0 - W.beta) == 0
    return isinstance(W, Everywhere)


class Position(str, Enum):
    INSIDE = "inside"
    ON = "on"
    OUTSIDE = "outside"


def point_position(W: WallLocus, alpha_sq, beta) -> Position:
    """Where (alpha, beta) sits relative to W.

    For a vertical line, "inside" means to its left.
    """
    if isinstance(W, Semicircle):
        t = beta - W.s
        val = sign_of(Fraction(alpha_sq) + t * t - W.rho_sq)
    elif isinstance(W, VerticalLine):
        val = sign_of(beta - W.beta)
    else:
        raise UnsupportedLocus(f"no sides for {W}")
    return (Position.INSIDE, Position.ON, Position.OUTSIDE)[val + 1]


def left_of_vertical(W: WallLocus, v: TruncLike) -> bool:
    """True if all of W lies at beta <= mu(v); tangency counts as left."""
    r, c, _ = _trunc(v)
    if r == 0:
        raise ZeroRank("no vertical wall for rank zero")
    if not isinstance(W, Semicircle):
        raise UnsupportedLocus("left_of_vertical needs a semicircle")
    gap = c / r - W.s
    return gap >= 0 and gap * gap >= W.rho_sq


class Nesting(str, Enum):
    EQUAL = "equal"
    W1_INSIDE_W2 = "W1_inside_W2"
    W2_INSIDE_W1 = "W2_inside_W1"
    DISJOINT = "disjoint"
    CROSSING = "crossing"


def nesting_compare(W1: WallLocus, W2: WallLocus) -> Nesting:
    if not (isinstance(W1, Semicircle) and isinstance(W2, Semicircle)):
        raise UnsupportedLocus("nesting needs two semicircles")
    if W1 == W2:
        return Nesting.EQUAL
    d2 = (W1.s - W2.s) ** 2
    p, q = W1.rho_sq, W2.rho_sq
    prod = QuadIrr.sqrt(p * q)  # rho1 * rho2
    # |s1 - s2| <= |rho1 - rho2|  <=>  d2 <= p + q - 2 rho1 rho2
    if sign_of(p + q - 2 * prod - d2) >= 0:
        return Nesting.W1_INSIDE_W2 if p < q else Nesting.W2_INSIDE_W1
    if sign_of(d2 - (p + q + 2 * prod)) >= 0:
        return Nesting.DISJOINT
    return Nesting.CROSSING


def wall_size_key(W: WallLocus):
    """Sort key putting larger walls first (radius, then center)."""
    if isinstance(W, Semicircle):
        return (-W.rho_sq, W.s)
    return (Fraction(0), Fraction(0))


def locus_from_dict(obj: dict) -> WallLocus:
    kind = obj.get("type")
    if kind == "semicircle":
        return Semicircle(Fraction(obj["s"]), Fraction(obj["rho_sq"]))
    if kind == "vertical":
        return VerticalLine(Fraction(obj["beta"]))
    if kind == "empty":
        return EMPTY
    if kind == "everywhere":
        return EVERYWHERE
    raise ValueError(f"unknown locus type {kind!r}")


__all__ = [
    "WallLocus",
    "Semicircle",
    "VerticalLine",
    "Empty",
    "Everywhere",
    "EMPTY",
    "EVERYWHERE",
    "wall_between",
    "beta_pm",
    "q_wall",
    "crosses_line",
    "Position",
    "point_position",
    "left_of_vertical",
    "Nesting",
    "nesting_compare",
    "wall_size_key",
    "locus_from_dict",
]
