"""Enumeration of candidate destabilizing sub-characters.

Given v and a region of the (alpha, beta) half-plane, list every truncated
character (s, x, y) that could induce a wall for v there, subject to the
usual necessary conditions (heart windows, Bogomolov, Delta additivity, the
beta_- inequality and Li's bound).  The rank of the sub-object is cut off
by ``rank_bound``, which also reports whether the cutoff is proved.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional, Union

from . import bounds as _bounds
from .chern import Ch2, ChernChar, delta, make, twist, twisted_ch
from .errors import AboveDBound, NotASheafClass, UnboundedRegion, ZeroRank
from .quadirr import Number, QuadIrr, ceil_of, floor_of, sign_of
from .walls import (
    Nesting,
    Semicircle,
    WallLocus,
    beta_pm,
    crosses_line,
    left_of_vertical,
    nesting_compare,
    wall_between,
)

F = Fraction


# --------------------------------------------------------------------------
# regions and filters


@dataclass(frozen=True)
class LeftOfVertical:
    def __str__(self) -> str:
        return "left-of-vertical"


@dataclass(frozen=True)
class MustCrossLine:
    beta0: Number

    def __str__(self) -> str:
        return f"cross({self.beta0})"


@dataclass(frozen=True)
class LargerThan:
    wall: Semicircle
    inclusive: bool = False

    def __str__(self) -> str:
        op = ">=" if self.inclusive else ">"
        return f"{op} {self.wall}"


@dataclass(frozen=True)
class CenterAtMost:
    bound: Fraction

    def __str__(self) -> str:
        return f"center <= {self.bound}"


Constraint = Union[LeftOfVertical, MustCrossLine, LargerThan, CenterAtMost]


@dataclass(frozen=True)
class RegionSpec:
    """Conjunction of constraints on the wall of a candidate."""

    constraints: tuple = ()

    @classmethod
    def of(cls, *cs: Constraint) -> "RegionSpec":
        return cls(tuple(cs))

    def __str__(self) -> str:
        return " and ".join(str(c) for c in self.constraints) or "anywhere"


@dataclass(frozen=True)
class FilterSet:
    bogomolov_sub: bool = True
    bogomolov_quot: bool = True
    delta_additivity: bool = True
    li_filter: bool = True
    beta_minus_monotone: bool = True
    known_exclusions: bool = True
    e_budget: Optional[Fraction] = None

    NAMES = (
        "bogomolov_sub",
        "bogomolov_quot",
        "delta_additivity",
        "li_filter",
        "beta_minus_monotone",
        "known_exclusions",
    )

    @classmethod
    def only(cls, *names: str, e_budget=None) -> "FilterSet":
        bad = set(names) - set(cls.NAMES)
        if bad:
            raise ValueError(f"unknown filters: {sorted(bad)}")
        flags = {n: (n in names) for n in cls.NAMES}
        return cls(**flags, e_budget=e_budget)

    def enabled(self) -> tuple[str, ...]:
        return tuple(n for n in self.NAMES if getattr(self, n))


ALL_FILTERS = FilterSet()


@dataclass(frozen=True)
class _Frame:
    """The crossing line used to bound x and y."""

    beta0: Number
    rho0_sq: Fraction
    inclusive: bool
    endpoints: Optional[tuple[QuadIrr, QuadIrr]] = None


def _as_ch2(v) -> Ch2:
    if isinstance(v, Ch2):
        return v
    if isinstance(v, ChernChar):
        return v.truncate()
    r, c, d = list(v)[:3]
    return Ch2.of(r, c, d)


def _frame(v: Ch2, region: RegionSpec) -> _Frame:
    for con in region.constraints:
        if isinstance(con, LargerThan):
            W = con.wall
            return _Frame(W.s, W.rho_sq, con.inclusive, W.endpoints())
    for con in region.constraints:
        if isinstance(con, MustCrossLine):
            return _Frame(con.beta0, F(0), False)
    for con in region.constraints:
        if isinstance(con, LeftOfVertical):
            if v.r <= 0:
                raise ZeroRank("left-of-vertical needs positive rank")
            if delta(v) <= 0:
                raise UnboundedRegion("no walls left of the vertical wall when Delta <= 0")
            return _Frame(beta_pm(v)[0], F(0), False)
    raise UnboundedRegion(f"region {region} fixes no crossing line")


def region_admits(v, sub, region: RegionSpec) -> bool:
    """Direct check that W(v, sub) is a semicircle in the region and that
    sub and v - sub both lie in the heart along it."""
    v = _as_ch2(v)
    sub = _as_ch2(sub)
    W = wall_between(v, sub)
    if not isinstance(W, Semicircle):
        return False
    fr = _frame(v, region)
    quot = v - sub
    t = twisted_ch(sub, fr.beta0).ch1b
    T = twisted_ch(v, fr.beta0).ch1b
    if not (sign_of(t) > 0 and sign_of(T - t) > 0):
        return False
    for con in region.constraints:
        if isinstance(con, LeftOfVertical):
            if not left_of_vertical(W, v):
                return False
        elif isinstance(con, MustCrossLine):
            if not crosses_line(W, con.beta0):
                return False
        elif isinstance(con, LargerThan):
            rel = nesting_compare(con.wall, W)
            ok = rel == Nesting.W1_INSIDE_W2 or (con.inclusive and rel == Nesting.EQUAL)
            if not ok:
                return False
            for b in con.wall.endpoints():
                if sign_of(twisted_ch(sub, b).ch1b) < 0:
                    return False
                if sign_of(twisted_ch(quot, b).ch1b) < 0:
                    return False
        elif isinstance(con, CenterAtMost):
            if W.s > con.bound:
                return False
    return True


# --------------------------------------------------------------------------
# Li's bound and the table of proven-empty characters


def li_violation(w) -> bool:
    """True if Li's inequality rules out tilt-stable objects of class w.

    Applies when 0 <= Delta < 3/8 r^2 and beta_-, beta_+ share a unit
    interval [n, n+1) or (n, n+1].  For Delta = 0 this only fires when the
    slope is not an integer, so line bundles are never excluded.
    """
    w = _as_ch2(w)
    if w.r == 0:
        raise ZeroRank("Li's bound needs non-zero rank")
    disc = delta(w)
    if disc < 0 or 8 * disc >= 3 * w.r * w.r:
        return False
    if disc == 0:
        return F(w.c, w.r).denominator != 1
    bm, bp = beta_pm(w)
    n = bm.floor()
    if bp < n + 1:
        return True
    return bm != n and bp == n + 1


KNOWN_EMPTY = {
    (4, -1, F(-1, 2)): "no tilt-stable object with ch<=2 = (4,-1,-1/2)",
    (5, -1, F(-1, 2)): "no tilt-stable object with ch<=2 = (5,-1,-1/2)",
    (4, -2, F(0)): "no tilt-stable object with ch<=2 = (4,-2,0)",
}


def _normal_form(w: Ch2) -> Ch2:
    """Twist w so that c lies in (-r, 0]; r must be positive."""
    n = -((-w.c) // w.r)
    return twist(w, -n)


def known_empty(w) -> Optional[str]:
    """Citation tag when no tilt-stable object of class w can exist."""
    w = _as_ch2(w)
    if w.r > 0:
        key = _normal_form(w).as_tuple()
        if key in KNOWN_EMPTY:
            return KNOWN_EMPTY[key]
        if w.r <= _bounds.MAX_RANK:
            D = _bounds.bound_D(w.r, w.c)
            if D.is_finite and w.d > D.value:
                return f"ch_2 above D({w.r},{w.c}) = {D.value}"
    if w.r != 0 and li_violation(w):
        return "Li: Delta < 3/8 r^2 with beta_-, beta_+ in one unit interval"
    return None


# --------------------------------------------------------------------------
# rank bound


@dataclass(frozen=True)
class RankBound:
    bound: int
    certified: bool
    justification: tuple[str, ...] = ()


def _window(v: Ch2, s: int, beta0: Number, T: Number) -> tuple[int, int]:
    """Integers x with 0 < x - beta0*s < T, and mu(x/s) < mu(v) if r > 0."""
    lo = floor_of(beta0 * s) + 1
    hi = ceil_of(beta0 * s + T) - 1
    if v.r > 0:
        hi = min(hi, ceil_of(F(s * v.c, v.r)) - 1)
    return lo, hi


def ch1_window(v, s: int, beta0: Number) -> list[int]:
    """All integer x with 0 < x - beta0*s < ch_1^{beta0}(v) and x/s < mu(v)."""
    v = _as_ch2(v)
    T = twisted_ch(v, beta0).ch1b
    lo, hi = _window(v, s, beta0, T)
    return list(range(lo, hi + 1))


def _radius_cert(v: Ch2, fr: _Frame) -> Optional[int]:
    if fr.rho0_sq <= 0 or v.r < 0:
        return None
    disc = delta(v)
    s = v.r + 1
    while True:
        cap = disc / (4 * s * (s - v.r))
        ok = cap >= fr.rho0_sq if fr.inclusive else cap > fr.rho0_sq
        if not ok:
            return s - 1
        s += 1


def _continuous_cert(v: Ch2, fr: _Frame, T: Number, c2: Number) -> Optional[int]:
    if fr.rho0_sq <= 0 or v.r < 0:
        return None
    low = min(0, c2) if not isinstance(c2, QuadIrr) else (c2 if c2.sign() < 0 else 0)
    s = max(v.r, 1)
    while True:
        lhs = fr.rho0_sq * (s - v.r) / 2 + low
        if sign_of(lhs - T * T / (2 * s)) > 0:
            return s - 1
        s += 1


def _lattice_cert(v: Ch2, fr: _Frame, T: Number, c2: Number) -> Optional[int]:
    if isinstance(fr.beta0, QuadIrr) and not fr.beta0.is_rational():
        return None
    if fr.rho0_sq != 0 or sign_of(c2) < 0:
        return None
    q = F(fr.beta0 if not isinstance(fr.beta0, QuadIrr) else fr.beta0.a).denominator
    k = ceil_of(T * q) - 1  # t_max = k/q
    if k <= 0:
        return 0
    return k * k


def _li_cert(v: Ch2, fr: _Frame, filters: FilterSet, T: Number) -> Optional[int]:
    needed = (
        filters.li_filter
        and filters.delta_additivity
        and filters.bogomolov_quot
        and filters.beta_minus_monotone
    )
    if not needed or v.r <= 0 or delta(v) <= 0 or fr.rho0_sq != 0:
        return None
    bm = beta_pm(v)[0]
    if QuadIrr.coerce(fr.beta0) != bm:
        return None
    n = bm.floor()
    dmax = delta(v) - 1
    gap = (n + 1) - bm  # positive

    def holds(s: int) -> bool:
        if 8 * dmax >= 3 * s * s:
            return False
        lo, hi = _window(v, s, bm, T)
        if lo > hi:
            return True
        room = (n + 1) * s - hi  # need sqrt(dmax) <= room and hi/s < n+1
        return room > 0 and room * room >= dmax

    s_tail = 1
    while True:
        L = gap * s_tail - T
        if L.sign() >= 0 and (L * L - dmax).sign() >= 0 and 3 * s_tail * s_tail > 8 * dmax:
            break
        s_tail += 1
    worst = 0
    for s in range(1, s_tail + 1):
        if not holds(s):
            worst = s
    return worst


def rank_bound(v, region: RegionSpec, filters: FilterSet = ALL_FILTERS) -> RankBound:
    """Largest sub-object rank that can still occur in the region."""
    v = _as_ch2(v)
    if delta(v) < 0:
        raise ValueError("rank_bound needs Delta(v) >= 0")
    fr = _frame(v, region)
    tv = twisted_ch(v, fr.beta0)
    T, c2 = tv.ch1b, tv.ch2b
    found: list[tuple[int, str]] = []
    for name, val in (
        ("radius bound", _radius_cert(v, fr)),
        ("continuous radius/Bogomolov bound", _continuous_cert(v, fr, T, c2)),
        ("lattice gap at rational beta", _lattice_cert(v, fr, T, c2)),
        ("Li certificate", _li_cert(v, fr, filters, T)),
    ):
        if val is not None:
            found.append((max(val, 0), name))
    if not found:
        cap = max(4 * max(v.r, 1), 8)
        return RankBound(cap, False, (f"no certificate applies; heuristic cap {cap}",))
    best = min(b for b, _ in found)
    why = tuple(f"{name}: s <= {b}" for b, name in found)
    return RankBound(best, True, why)


# --------------------------------------------------------------------------
# ch_3 budgets


def _ch3_upper(w: Ch2, W: Semicircle) -> Optional[Fraction]:
    """Largest ch_3 of a semistable factor of class w along W, if known."""
    r, c, d = w.r, w.c, w.d
    if r != 0 and delta(w) == 0 and c % r == 0:
        k = c // r
        return F(r * k ** 3, 6)
    if r == 0:
        if c <= 0:
            return None
        return _bounds.bound_E(0, c, d).value
    if r == -1:
        flat = twist(w, c)  # c' = 0
        if flat.d < 0 or flat.d.denominator != 1:
            return None
        e0 = _bounds.negative_rank1_bound(flat.d)
        return twist(make(flat.r, flat.c, flat.d, e0), -c).e
    if 1 <= r <= _bounds.MAX_RANK:
        try:
            E = _bounds.bound_E(r, c, d)
        except (AboveDBound, NotASheafClass):
            return None
        if not E.is_finite:
            return None
        e = E.value
        if r == 1:
            flat = twist(w, -c)
            center = W.s - c
            if flat.d <= -3 and center < 0:
                # for (1, 0, d) the lattice forces e to be an integer
                e0 = min(_bounds.bound_E(1, 0, flat.d).value,
                         floor_of(_bounds.rank1_center_bound(int(flat.d), center)))
                e = twist(make(1, 0, flat.d, e0), c).e
        return e
    return None


def ch3_budget(v, cand: "CandidateWall") -> Optional[Fraction]:
    """Upper bound for ch_3(v) if v is destabilized along cand's wall."""
    a = _ch3_upper(cand.sub, cand.locus)
    b = _ch3_upper(cand.quot, cand.locus)
    if a is None or b is None:
        return None
    return a + b


# --------------------------------------------------------------------------
# enumeration


@dataclass(frozen=True)
class CandidateWall:
    sub: Ch2
    quot: Ch2
    locus: Semicircle
    evidence: tuple[str, ...] = ()
    budget: Optional[Fraction] = None

    def key(self):
        return (-self.locus.rho_sq, self.locus.s, self.sub.r, self.sub.c, self.sub.d2)

    def to_dict(self) -> dict:
        out = {
            "sub": [str(x) for x in self.sub.as_tuple()],
            "quot": [str(x) for x in self.quot.as_tuple()],
            "locus": self.locus.to_dict(),
            "evidence": list(self.evidence),
        }
        out["budget"] = None if self.budget is None else str(self.budget)
        return out


@dataclass
class EnumerationResult:
    candidates: list[CandidateWall]
    rank: RankBound
    warnings: list[str] = field(default_factory=list)
    pruned: dict[str, int] = field(default_factory=dict)

    @property
    def certified(self) -> bool:
        return self.rank.certified

    def __iter__(self) -> Iterator[CandidateWall]:
        return iter(self.candidates)

    def __len__(self) -> int:
        return len(self.candidates)

    def __getitem__(self, i):
        return self.candidates[i]

    def loci(self) -> list[WallLocus]:
        out: list[WallLocus] = []
        for c in self.candidates:
            if c.locus not in out:
                out.append(c.locus)
        return out

    def to_dict(self) -> dict:
        return {
            "candidates": [c.to_dict() for c in self.candidates],
            "rank_bound": self.rank.bound,
            "certified": self.rank.certified,
            "justification": list(self.rank.justification),
            "warnings": list(self.warnings),
            "pruned": dict(sorted(self.pruned.items())),
        }


def _y2_range(v: Ch2, s: int, x: int, fr: _Frame, T: Number, c2: Number,
              filters: FilterSet) -> tuple[int, Optional[int]]:
    """Bounds on 2y (inclusive); the upper end is None when unbounded."""
    R, C, D = v.r, v.c, v.d
    b = fr.beta0
    t = x - b * s
    A = s * T - R * t
    low = b * x - b * b * s / 2 + (c2 * t + fr.rho0_sq * A / 2) / T
    closed = fr.inclusive and fr.rho0_sq > 0
    lo2 = ceil_of(2 * low) if closed else floor_of(2 * low) + 1
    hi2: Optional[int] = None
    if filters.bogomolov_sub:
        hi2 = floor_of(F(x * x, s))
    if filters.bogomolov_quot and s != R:
        edge = D + F((C - x) ** 2, 2 * (s - R))
        if s > R:
            e2 = floor_of(2 * edge)
            hi2 = e2 if hi2 is None else min(hi2, e2)
        else:
            lo2 = max(lo2, ceil_of(2 * edge))
    if (lo2 - x) % 2:
        lo2 += 1
    return lo2, hi2


def enumerate_candidate_walls(
    v,
    region: RegionSpec,
    filters: FilterSet = ALL_FILTERS,
    max_rank: Optional[int] = None,
) -> EnumerationResult:
    """All sub-characters that survive the active necessary conditions."""
    full = v if isinstance(v, ChernChar) else None
    v = _as_ch2(v)
    if delta(v) < 0:
        raise ValueError("enumeration needs Delta(v) >= 0")
    if v.r < 0:
        raise NotASheafClass("enumeration needs a non-negative rank")
    fr = _frame(v, region)
    tv = twisted_ch(v, fr.beta0)
    T, c2 = tv.ch1b, tv.ch2b
    if sign_of(T) <= 0:
        return EnumerationResult([], RankBound(0, True, ("ch_1 at the crossing line is not positive",)))
    rb = rank_bound(v, region, filters)
    warnings: list[str] = []
    if max_rank is not None:
        rb = RankBound(max_rank, rb.certified and max_rank >= rb.bound,
                       rb.justification + (f"override: s <= {max_rank}",))
    elif not rb.certified:
        warnings.append(
            f"UncertifiedCutoff: rank cutoff {rb.bound} is not proved for region {region}"
        )
    dv = delta(v)
    bm_v = beta_pm(v)[0] if v.r > 0 and dv >= 0 else None
    pruned: dict[str, int] = {}
    out: list[CandidateWall] = []

    def drop(tag: str) -> None:
        pruned[tag] = pruned.get(tag, 0) + 1

    for s in range(1, rb.bound + 1):
        lo, hi = _window(v, s, fr.beta0, T)
        if fr.endpoints is not None:
            for b in fr.endpoints:
                lo = max(lo, ceil_of(b * s))
                hi = min(hi, floor_of(v.c - b * (v.r - s)))
        for x in range(lo, hi + 1):
            lo2, hi2 = _y2_range(v, s, x, fr, T, c2, filters)
            if hi2 is None:
                raise UnboundedRegion(
                    f"y is unbounded for s={s}, x={x}; enable a Bogomolov filter"
                )
            for y2 in range(lo2, hi2 + 1, 2):
                sub = Ch2(s, x, y2)
                cand = _screen(v, full, sub, region, filters, bm_v, dv, drop)
                if cand is not None:
                    out.append(cand)
    out.sort(key=CandidateWall.key)
    return EnumerationResult(out, rb, warnings, pruned)


def _screen(v, full, sub, region, filters, bm_v, dv, drop) -> Optional[CandidateWall]:
    quot = v - sub
    W = wall_between(v, sub)
    if not isinstance(W, Semicircle):
        drop("not semicircular")
        return None
    if not region_admits(v, sub, region):
        drop("outside region")
        return None
    ev = ["lattice", "region"]
    if filters.bogomolov_sub:
        ev.append("bogomolov_sub")
    if filters.bogomolov_quot:
        if delta(quot) < 0:
            drop("bogomolov_quot")
            return None
        ev.append("bogomolov_quot")
    if v.r == 0 and quot.r == 0:
        drop("rank-zero factor")
        return None
    if filters.delta_additivity:
        if delta(sub) + delta(quot) >= dv:
            drop("delta_additivity")
            return None
        ev.append("delta_additivity")
    if filters.beta_minus_monotone and bm_v is not None:
        if delta(sub) < 0 or not bm_v < beta_pm(sub)[0]:
            drop("beta_minus_monotone")
            return None
        ev.append("beta_minus_monotone")
    if filters.li_filter:
        for w in (sub, quot):
            if w.r != 0 and delta(w) >= 0 and li_violation(w):
                drop("li_filter")
                return None
        ev.append("li_filter")
    if filters.known_exclusions:
        for w in (sub, quot):
            tag = known_empty(w) if delta(w) >= 0 else None
            if tag is not None:
                drop(f"known_exclusions: {tag}")
                return None
        ev.append("known_exclusions")
    cand = CandidateWall(sub, quot, W, tuple(ev))
    budget = ch3_budget(full, cand)
    if filters.e_budget is not None:
        if budget is None:
            ev.append("budget_unknown")
        elif budget < filters.e_budget:
            drop("e_budget")
            return None
        else:
            ev.append("e_budget")
    return CandidateWall(sub, quot, W, tuple(ev), budget)


def max_budget(v: ChernChar, region: RegionSpec, filters: FilterSet = ALL_FILTERS):
    """Largest ch3_budget among enumerated candidates, with its witnesses."""
    res = enumerate_candidate_walls(v, region, filters)
    best: Optional[Fraction] = None
    unknown = []
    for c in res:
        if c.budget is None:
            unknown.append(c)
        elif best is None or c.budget > best:
            best = c.budget
    witnesses = [c for c in res if c.budget is not None and c.budget == best]
    return best, witnesses, unknown, res
