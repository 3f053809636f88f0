"""Sharp bounds D(r, c) on ch_2 and E(r, c, d) on ch_3, ranks 0 to 4.

Both functions are stored on a residue table with c in (-r, 0] and moved
to other slopes with the tensor-by-line-bundle covariance rules.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .chern import (
    ChernChar,
    classify_membership,
    dual,
    line_bundle,
    make,
    make2,
    twist,
)
from .errors import AboveDBound, NotASheafClass, OutOfDomain, OutOfRange
from .walls import WallLocus, wall_between

F = Fraction
Rational = Union[int, Fraction]


# --------------------------------------------------------------------------
# BoundValue


class BoundValue:
    is_finite = False
    is_infinite = False
    is_unknown = False

    def to_dict(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class Finite(BoundValue):
    value: Fraction
    is_finite = True

    def to_dict(self) -> dict:
        return {"finite": str(self.value)}

    def __str__(self) -> str:
        return str(self.value)


@dataclass(frozen=True)
class PlusInfinity(BoundValue):
    is_infinite = True

    def to_dict(self) -> dict:
        return {"infinity": True}

    def __str__(self) -> str:
        return "+inf"


@dataclass(frozen=True)
class Unknown(BoundValue):
    reason: str
    is_unknown = True

    def to_dict(self) -> dict:
        return {"unknown": self.reason}

    def __str__(self) -> str:
        return f"unknown ({self.reason})"


INFINITY = PlusInfinity()
MAX_RANK = 4


# --------------------------------------------------------------------------
# residue tables: c in (-r, 0]

D_TABLE: dict[tuple[int, int], Fraction] = {
    (1, 0): F(0),
    (2, 0): F(0),
    (2, -1): F(-1, 2),
    (3, 0): F(0),
    (3, -1): F(-1, 2),
    (3, -2): F(0),
    (4, 0): F(0),
    (4, -1): F(-3, 2),
    (4, -2): F(-1),
    (4, -3): F(-1, 2),
}


def _e_residue(r: int, c: int, d: Fraction) -> Fraction:
    """E on the residue table; d is already known to be <= D(r, c)."""
    h = d * d / 2
    if r == 1:
        return h - d / 2
    if r == 2:
        if c == -1:
            return h - d + F(5, 24)
        if d in (0, -1):
            return F(0)
        return h + d / 2 + 1
    if r == 3:
        if c == -2:
            return h - 3 * d / 2 + F(2, 3)
        if c == -1:
            return F(-1, 6) if d == F(-1, 2) else h + F(17, 24)
        if d == 0:
            return F(0)
        if d == -1:
            return F(-1)
        return h + d / 2
    if r == 4:
        if c == -3:
            return h - 2 * d + F(11, 8)
        if c == -2:
            return h - d / 2 + F(2, 3)
        if c == -1:
            return h - F(7, 24)
        if d in (0, -2):
            return F(0)
        if d == -1:
            return F(-2)
        return h + 3 * d / 2 + 2
    raise AssertionError("rank outside the table")


def _normalize(r: int, c: int) -> tuple[int, int]:
    """Return (n, c0) with c = c0 + n r and c0 in (-r, 0]."""
    n = -((-c) // r)  # ceil(c / r)
    return n, c - n * r


def _check_ch1(r: int, c: int) -> None:
    if r < 0 or (r == 0 and c < 0):
        raise NotASheafClass(f"({r},{c}) is not the class of a sheaf")


def bound_D(r: int, c: int) -> BoundValue:
    """Maximal ch_2 of a slope-semistable sheaf with ch_{<=1} = (r, c)."""
    _check_ch1(r, c)
    if r == 0:
        return INFINITY
    if r > MAX_RANK:
        return Unknown(f"rank {r} is beyond the classified range")
    n, c0 = _normalize(r, c)
    return Finite(D_TABLE[(r, c0)] + n * c0 + F(n * n * r, 2))


def solve_f(c: int, d: Rational) -> int:
    """The f in [0, c) with d + c^2/2 = -f (mod c)."""
    if c <= 0:
        raise OutOfRange("c must be positive")
    t = F(d) + F(c * c, 2)
    if t.denominator != 1:
        raise NotASheafClass(f"(0,{c},{d}) violates the parity rule")
    return (-t.numerator) % c


def epsilon(c: int, f: int) -> Fraction:
    if c <= 0 or not 0 <= f < c:
        raise OutOfRange(f"epsilon needs 0 <= f < c, got c={c}, f={f}")
    return F(f, 2) * (c - f - 1 + F(f, c))


def _bound_E_rank0(c: int, d: Fraction) -> BoundValue:
    if c == 0:
        return INFINITY
    f = solve_f(c, d)
    return Finite(F(c ** 3, 24) + d * d / (2 * c) - epsilon(c, f))


def bound_E(r: int, c: int, d: Rational) -> BoundValue:
    """Maximal ch_3 of a 2-Gieseker-semistable sheaf with ch_{<=2} = (r,c,d)."""
    d = F(d)
    rep = classify_membership((r, c, d))
    if not rep.in_ch_le2:
        raise NotASheafClass(
            f"({r},{c},{d}) fails {', '.join(rep.violated_rules)}"
        )
    if r == 0:
        return _bound_E_rank0(c, d)
    if r > MAX_RANK:
        return Unknown(f"rank {r} is beyond the classified range")
    D = bound_D(r, c)
    if d > D.value:
        raise AboveDBound(f"d = {d} exceeds D({r},{c}) = {D.value}")
    n, c0 = _normalize(r, c)
    base = twist(make2(r, c, d), -n)
    d0 = base.d
    e0 = _e_residue(r, c0, d0)
    return Finite(e0 + n * d0 + F(n * n * c0, 2) + F(n ** 3 * r, 6))


def rank1_center_bound(d: int, s: Rational) -> Fraction:
    """Max ch_3 of a rank-one (1,0,d) object stable along a wall centered at s."""
    s = F(s)
    if F(d).denominator != 1 or d > -3 or s >= 0:
        raise OutOfDomain("needs integer d <= -3 and center s < 0")
    d = int(d)
    f = d % 2
    if s <= d - F(1, 2):
        return F(d * d, 2) - F(d, 2)
    if s >= F(d, 2) + F(f - 3, 2):
        return F(d * d, 4) - d - F(f, 4)
    return F(d * d, 2) - d * s + s * s - 2 * d + 2 * s + F(3, 4)


def negative_rank1_bound(d: Rational) -> Fraction:
    """Max ch_3 of a tilt-semistable (-1, 0, d, e)."""
    d = F(d)
    if d < 0 or d.denominator != 1:
        raise OutOfDomain("needs integer d >= 0")
    return d * d / 2 + d / 2


def exists_2gieseker(v: ChernChar) -> Union[bool, Unknown]:
    """Is there a 2-Gieseker-semistable sheaf with character v?"""
    rep = classify_membership(v)
    if not rep.in_ch:
        return False
    if v.r > MAX_RANK:
        return Unknown(f"rank {v.r} is beyond the classified range")
    if v.r == 0 and v.c == 0:
        return True  # every (0,0,d>=0,e>=0) is realised by points and curves
    D = bound_D(v.r, v.c)
    if D.is_finite and v.d > D.value:
        return False
    E = bound_E(v.r, v.c, v.d)
    return (not E.is_finite) or v.e <= E.value


# --------------------------------------------------------------------------
# factor shapes for the extremal walls


class FactorShape:
    label = "?"

    def ch(self) -> ChernChar:
        raise NotImplementedError

    def twisted(self, n: int) -> "FactorShape":
        raise NotImplementedError

    def __str__(self) -> str:
        return self.label


def _mult(m: int, name: str) -> str:
    return name if m == 1 else f"{name}^{m}"


@dataclass(frozen=True)
class LineBundle(FactorShape):
    n: int
    mult: int = 1

    @property
    def label(self) -> str:
        return _mult(self.mult, f"O({self.n})")

    def ch(self) -> ChernChar:
        return line_bundle(self.n).scale(self.mult)

    def twisted(self, k: int) -> "LineBundle":
        return LineBundle(self.n + k, self.mult)


@dataclass(frozen=True)
class LineBundleShift(FactorShape):
    """mult copies of O(n)[1]."""

    n: int
    mult: int = 1

    @property
    def label(self) -> str:
        return _mult(self.mult, f"O({self.n})") + "[1]"

    def ch(self) -> ChernChar:
        return line_bundle(self.n).scale(-self.mult)

    def twisted(self, k: int) -> "LineBundleShift":
        return LineBundleShift(self.n + k, self.mult)


@dataclass(frozen=True)
class PlaneTorsion(FactorShape):
    """O_V(m) for a plane V."""

    m: Fraction

    @property
    def label(self) -> str:
        return f"O_V({self.m})"

    def ch(self) -> ChernChar:
        m = F(self.m)
        return make(0, 1, m - F(1, 2), m * m / 2 - m / 2 + F(1, 6))

    def twisted(self, k: int) -> "PlaneTorsion":
        return PlaneTorsion(F(self.m) + k)


def _ideal_plane_curve(k: int) -> ChernChar:
    return make(1, 0, -k, F(k * k, 2) + F(k, 2))


@dataclass(frozen=True)
class IdealPlaneCurve(FactorShape):
    """I_C(t) for a plane curve C of degree k (k = 0 gives O(t))."""

    k: int
    t: int = 0

    @property
    def label(self) -> str:
        return f"I_C(deg {self.k})({self.t})" if self.t else f"I_C(deg {self.k})"

    def ch(self) -> ChernChar:
        return twist(_ideal_plane_curve(self.k), self.t)

    def twisted(self, n: int) -> "IdealPlaneCurve":
        return IdealPlaneCurve(self.k, self.t + n)


@dataclass(frozen=True)
class DualIdealPlaneCurve(FactorShape):
    """The derived dual of I_C, shifted into the heart, tensored by O(t)."""

    k: int
    t: int = 0

    @property
    def label(self) -> str:
        return f"D(I_C)(deg {self.k})({self.t})"

    def ch(self) -> ChernChar:
        return twist(dual(_ideal_plane_curve(self.k)).shifted, self.t)

    def twisted(self, n: int) -> "DualIdealPlaneCurve":
        return DualIdealPlaneCurve(self.k, self.t + n)


@dataclass(frozen=True)
class TwistedTangent(FactorShape):
    """T(-2 + t)."""

    t: int = 0
    mult: int = 1

    @property
    def label(self) -> str:
        return _mult(self.mult, f"T({self.t - 2})")

    def ch(self) -> ChernChar:
        return twist(make(3, -2, 0, F(2, 3)), self.t).scale(self.mult)

    def twisted(self, n: int) -> "TwistedTangent":
        return TwistedTangent(self.t + n, self.mult)


@dataclass(frozen=True)
class TwistedCotangent(FactorShape):
    """Omega(1 + t)."""

    t: int = 0
    mult: int = 1

    @property
    def label(self) -> str:
        return _mult(self.mult, f"Omega({self.t + 1})")

    def ch(self) -> ChernChar:
        return twist(make(3, -1, F(-1, 2), F(-1, 6)), self.t).scale(self.mult)

    def twisted(self, n: int) -> "TwistedCotangent":
        return TwistedCotangent(self.t + n, self.mult)


@dataclass(frozen=True)
class ExtremalClass(FactorShape):
    """A semistable object with extremal character (r, c, d, e)."""

    r: int
    c: int
    d: Fraction
    e: Fraction

    @property
    def label(self) -> str:
        return f"M({self.r},{self.c},{self.d},{self.e})"

    def ch(self) -> ChernChar:
        return make(self.r, self.c, self.d, self.e)

    def twisted(self, n: int) -> "ExtremalClass":
        v = twist(self.ch(), n)
        return ExtremalClass(v.r, v.c, v.d, v.e)


@dataclass(frozen=True)
class ExtremalWall:
    locus: WallLocus
    factors: tuple[FactorShape, FactorShape]

    def to_dict(self) -> dict:
        return {
            "locus": self.locus.to_dict(),
            "factors": [
                {"shape": str(f), "ch": [str(x) for x in f.ch().as_tuple()]}
                for f in self.factors
            ],
        }


@dataclass(frozen=True)
class ExtremalWallEntry:
    key: tuple[int, int, Fraction]
    e: Fraction
    walls: tuple[ExtremalWall, ...]
    note: str = ""

    def to_dict(self) -> dict:
        out = {
            "key": [str(x) for x in self.key],
            "e": str(self.e),
            "walls": [w.to_dict() for w in self.walls],
        }
        if self.note:
            out["note"] = self.note
        return out


OMEGA = TwistedCotangent()
TANGENT = TwistedTangent()
F2 = ExtremalClass(2, -1, F(-1, 2), F(5, 6))  # the rank-two extremal bundle
F4 = ExtremalClass(4, -1, F(-3, 2), F(5, 6))


def _residue_walls(r: int, c: int, d: Fraction):
    """Extremal decompositions for a residue key; None when unclassified."""
    note = ""
    if r == 1:
        if d == 0:
            return [], "line bundle, no wall"
        return [(LineBundle(-1), PlaneTorsion(d))], note
    if r == 2:
        if (c, d) == (-1, F(-1, 2)):
            return [(LineBundle(-1, 3), LineBundleShift(-2))], note
        return None, "rank-two classification is not tabulated"
    if r == 3:
        if c == -2:
            if d == 0:
                return [(LineBundle(-1, 4), LineBundleShift(-2))], note
            return [(LineBundle(-1, 3), PlaneTorsion(d - 1))], note
        if c == -1:
            if d == F(-1, 2):
                return [], "Omega(1); no wall left of the vertical wall"
            if d == F(-3, 2):
                return [(LineBundle(-1, 5), LineBundleShift(-2, 2))], note
            if d == F(-5, 2):
                return [
                    (LineBundle(-1, 4), LineBundleShift(-3)),
                    (TANGENT, PlaneTorsion(-2)),
                    (F2, IdealPlaneCurve(2)),
                ], note
            k = int(-d - F(1, 2))
            return [
                (F2, IdealPlaneCurve(k)),
                (TANGENT, PlaneTorsion(d + F(1, 2))),
            ], note
        if d == 0:
            return [], "O^3, no wall"
        if d == -1:
            return [], "kernel of O^3 -> O_L(2); no wall left of the vertical wall"
        if d == -2:
            return [(OMEGA, PlaneTorsion(-1))], note
        if d == -3:
            return [
                (LineBundle(-1, 6), LineBundleShift(-2, 3)),
                (OMEGA, PlaneTorsion(-2)),
            ], note
        return [(OMEGA, PlaneTorsion(d + 1))], note
    if r == 4:
        if c == -3:
            return [(LineBundle(-1, 4), PlaneTorsion(d - F(3, 2)))], note
        if c == -2:
            if d == -1:
                return [(LineBundle(-1, 6), LineBundleShift(-2, 2))], note
            if d == -2:
                return [
                    (LineBundle(-1, 5), LineBundleShift(-3)),
                    (TANGENT, IdealPlaneCurve(2)),
                ], note
            return [(TANGENT, IdealPlaneCurve(int(-d)))], note
        if c == -1:
            if d == F(-3, 2):
                return [(OMEGA, IdealPlaneCurve(1))], note
            if d == F(-5, 2):
                return [
                    (LineBundle(-1, 7), LineBundleShift(-2, 3)),
                    (OMEGA, IdealPlaneCurve(2)),
                ], note
            return [(OMEGA, IdealPlaneCurve(int(-d - F(1, 2))))], note
        if d == 0:
            return [], "O^4, no wall"
        if d == -1:
            return [], "kernel of O^4 -> O_L(3); no wall left of the vertical wall"
        if d == -2:
            return [(TwistedCotangent(mult=2), LineBundleShift(-1, 2))], note
        # the rank-one factor here lives in a final model strictly below E(1, 0, d)
        final = "rank-one factor from a final model, not extremal"
        if d == -3:
            return [(OMEGA, ExtremalClass(1, 0, F(-3), F(5)).twisted(1))], final
        if d == -4:
            return [
                (LineBundle(-1, 8), LineBundleShift(-2, 4)),
                (OMEGA, ExtremalClass(1, 0, F(-4), F(8)).twisted(1)),
                (F4, PlaneTorsion(-2)),
            ], final
        return [(F4, PlaneTorsion(d + 2))], note
    raise AssertionError


def _rank0_walls(c: int, d: Fraction):
    f = solve_f(c, d)
    if c == 1:
        return [(LineBundle(int(d + F(1, 2))), LineBundleShift(int(d - F(1, 2))))]
    if c == 2 and f == 1:
        a = int((d + 1) / 2)
        return [(LineBundle(a, 2), LineBundleShift(a - 1, 2))]
    a = d / c + F(c, 2) + F(f, c)
    b = d / c - F(c, 2) + F(f, c)
    out: list = []
    if 2 * f <= c:
        out.append((IdealPlaneCurve(f, int(a)), LineBundleShift(int(b))))
    if 2 * f >= c and c >= 3:
        out.append((LineBundle(int(a) - 1), DualIdealPlaneCurve(c - f, int(b) - 1)))
    return out


def extremal_walls(r: int, c: int, d: Rational) -> Union[ExtremalWallEntry, Unknown]:
    """Walls and factors of objects with ch = (r, c, d, E(r, c, d))."""
    d = F(d)
    E = bound_E(r, c, d)
    if not E.is_finite:
        return Unknown(f"E({r},{c},{d}) is not finite")
    if r == 0:
        pairs = _rank0_walls(c, d)
        note = "both walls coincide when f = c/2" if len(pairs) > 1 else ""
        return _entry((r, c, d), E.value, pairs, note)
    n, c0 = _normalize(r, c)
    d0 = twist(make2(r, c, d), -n).d
    res, note = _residue_walls(r, c0, d0)
    if res is None:
        return Unknown(note)
    pairs = [(a.twisted(n), b.twisted(n)) for a, b in res]
    return _entry((r, c, d), E.value, pairs, note)


def _entry(key, e, pairs, note) -> ExtremalWallEntry:
    walls = []
    for a, b in pairs:
        locus = wall_between(key, a.ch())
        walls.append(ExtremalWall(locus, (a, b)))
    walls.sort(key=lambda w: (-getattr(w.locus, "rho_sq", 0), getattr(w.locus, "s", 0)))
    return ExtremalWallEntry(key, e, tuple(walls), note)
