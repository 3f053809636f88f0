from fractions import Fraction as F

import pytest
from hypothesis import HealthCheck, assume, given, settings, strategies as st

from tiltwall.chern import Ch2, delta, make, make2
from tiltwall.destab import (
    ALL_FILTERS, CandidateWall, CenterAtMost, FilterSet, LargerThan, LeftOfVertical, MustCrossLine,
    RegionSpec, ch1_window, ch3_budget, enumerate_candidate_walls, known_empty, li_violation,
    max_budget, rank_bound,
)
from tiltwall.errors import NotASheafClass, UnboundedRegion, ZeroRank
from tiltwall.quadirr import QuadIrr
from tiltwall.walls import Semicircle, beta_pm, q_wall, wall_between

from strategies import ch2, rationals

BOG = FilterSet.only("bogomolov_sub", "bogomolov_quot")
LEFT = RegionSpec.of(LeftOfVertical())


# ---------------------------------------------------------------- examples

@pytest.mark.parametrize("v, region, expected", [
    ((3, 0, -1), LEFT, 5),
    ((4, 0, -1), LEFT, 6),
    ((3, -1, F(-5, 2)), RegionSpec.of(LargerThan(wall_between((3, -1, F(-5, 2)), (1, -1, F(1, 2))))), 3),
])
def test_rank_bound_examples(v, region, expected):
    rb = rank_bound(make2(*v), region)
    assert rb.bound == expected and rb.certified and rb.justification


def test_rank_bound_uncertified_warns():
    res = enumerate_candidate_walls(make2(3, 0, -1), RegionSpec.of(MustCrossLine(F(-1, 3))), BOG)
    if not res.certified:
        assert any(w.startswith("UncertifiedCutoff") for w in res.warnings)


def test_ch1_window_examples():
    b0 = -QuadIrr.sqrt(6) / 3
    assert ch1_window(make2(3, 0, -1), 5, b0) == [-4, -3, -2]
    assert ch1_window(make2(3, 0, -1), 2, b0) == [-1]
    assert ch1_window(make2(4, -1, F(-1, 2)), 1, (-1 - QuadIrr.sqrt(5)) / 4) == []


def test_li_violation_examples():
    assert li_violation(make2(5, -2, 0))
    assert not li_violation(make2(4, -1, F(-1, 2)))
    assert not li_violation(make2(1, 0, 0))
    # Delta = 0 with non-integral slope has no stable objects either
    assert li_violation(make2(25, -20, 8))
    with pytest.raises(ZeroRank):
        li_violation(make2(0, 1, F(1, 2)))


def test_known_empty_examples():
    assert known_empty(make2(4, -1, F(-1, 2))) is not None
    assert known_empty(make2(4, -2, 0)) is not None
    assert known_empty(make2(5, 4, 1)) is not None    # twist of (5,-1,-1/2)
    assert known_empty(make2(1, 0, 0)) is None
    assert known_empty(make2(4, -3, F(1, 2))) is not None   # above D(4,-3)


@pytest.mark.parametrize("v", [(4, -1, F(-1, 2)), (3, 0, -1), (4, 0, -1), (3, -1, F(-1, 2))])
def test_no_walls_left_of_vertical(v):
    res = enumerate_candidate_walls(make2(*v), LEFT)
    assert len(res) == 0 and res.certified and not res.warnings


def test_enumerate_classification_3_m1():
    v = make(3, -1, F(-5, 2), F(23, 6))
    res = enumerate_candidate_walls(
        v, RegionSpec.of(LargerThan(q_wall(v), inclusive=True)), FilterSet(e_budget=F(23, 6))
    )
    assert set(res.loci()) == {Semicircle(F(-2), F(1)), Semicircle(F(-5, 2), F(35, 12)),
                               Semicircle(F(-7, 2), F(33, 4))}
    subs = {(c.sub.as_tuple(), c.locus) for c in res}
    assert ((3, -2, 0), Semicircle(F(-5, 2), F(35, 12))) in subs
    assert ((2, -1, F(-1, 2)), Semicircle(F(-7, 2), F(33, 4))) in subs
    assert res[0].locus == Semicircle(F(-7, 2), F(33, 4))   # largest first


def test_enumerate_classification_4_0_m4():
    v = make(4, 0, -4, 4)
    res = enumerate_candidate_walls(v, RegionSpec.of(LargerThan(q_wall(v), inclusive=True)),
                                    FilterSet(e_budget=F(4)))
    assert set(res.loci()) == {Semicircle(F(-3, 2), F(1, 4)), Semicircle(F(-5, 2), F(17, 4))}


def test_enumerate_errors():
    with pytest.raises(NotASheafClass):
        enumerate_candidate_walls(make2(-1, 0, 0), RegionSpec.of(MustCrossLine(F(-1))))
    with pytest.raises(UnboundedRegion):
        enumerate_candidate_walls(make2(3, 0, -1), RegionSpec.of(MustCrossLine(F(-1))),
                                  FilterSet.only(), max_rank=2)
    assert len(enumerate_candidate_walls(make2(1, 0, 0), RegionSpec.of(MustCrossLine(F(1))))) == 0


def _cand(v, sub):
    v, sub = make2(*v), make2(*sub)
    return CandidateWall(sub, v - sub, wall_between(v, sub))


def test_ch3_budget_examples():
    assert ch3_budget(make(3, -1, F(-5, 2), F(23, 6)), _cand((3, -1, F(-5, 2)), (3, -2, 0))) == F(23, 6)
    assert ch3_budget(make(4, -2, -2, F(11, 3)), _cand((4, -2, -2), (3, -2, 0))) == F(11, 3)
    assert ch3_budget(make(4, 0, -5, 7), _cand((4, 0, -5), (4, -1, F(-3, 2)))) == 7


def test_max_budget_attains_E():
    v = make(4, 0, -5, 7)
    best, witnesses, unknown, _ = max_budget(v, RegionSpec.of(LargerThan(q_wall(make(4, 0, -5, 7)), inclusive=True)))
    assert best == 7 and not unknown
    assert any(w.sub.as_tuple() == (4, -1, F(-3, 2)) for w in witnesses)


# ---------------------------------------------------------------- oracle

def _tw(w, b):
    r, c, d = w
    return c - b * r, d - b * c + b * b * r / 2


def _circle(v, w):
    """Center and squared radius of the locus where the tilt slopes agree,
    from clearing denominators in nu(v) = nu(w)."""
    R, C, D = v
    r, c, d = w
    K = r * C - R * c
    if K == 0:
        return None
    s = F(D * r - d * R, K)
    return s, s * s + 2 * F(d * C - D * c, K)


def _crosses(v, w, b0):
    C1, D1 = _tw(v, b0)
    c1, d1 = _tw(w, b0)
    K = w[0] * C1 - v[0] * c1
    return K != 0 and (d1 * C1 - D1 * c1) / K > 0


def _contains(outer, inner, inclusive):
    (s, p2), (s0, q2) = outer, inner
    if outer == inner:
        return inclusive
    if p2 <= q2:
        return False
    lhs = p2 + q2 - (s - s0) ** 2      # rho - rho0 >= |s - s0|
    return lhs >= 0 and lhs * lhs >= 4 * p2 * q2


def admissible(v, kind, param, s, x, y2):
    """Independent membership test for one lattice point (s, x, y2/2)."""
    R, C, d2 = v.r, v.c, v.d2
    if kind == "cross":
        b0 = param
    else:
        W0, inclusive = param
        b0 = W0[0]
    u = x - b0 * s
    # walls are reported once, with the lower-slope factor as sub
    if not (0 < u < C - b0 * R) or (R > 0 and x * R >= C * s):
        return False
    if kind == "larger":
        uq = (C - x) - b0 * (R - s)
        if u * u < s * s * W0[1] or uq < 0 or uq * uq < (R - s) ** 2 * W0[1]:
            return False
    if (y2 - x) % 2 or x * x - s * y2 < 0 or (C - x) ** 2 - (R - s) * (d2 - y2) < 0:
        return False
    vt, w = (R, C, F(d2, 2)), (s, x, F(y2, 2))
    if kind == "cross":
        return _crosses(vt, w, b0)
    circ = _circle(vt, w)
    return circ is not None and circ[1] > 0 and _contains(circ, W0, inclusive)


def brute_force(v, kind, param):
    """Scan the box 1 <= s <= 10, |x| <= 15, |y2| <= 60."""
    b0 = param if kind == "cross" else param[0][0]
    T = v.c - b0 * v.r
    out = set()
    for s in range(1, 11):
        for x in range(-15, 16):
            if not 0 < x - b0 * s < T:       # cheap pruning only
                continue
            out |= {(s, x, y2) for y2 in range(-60, 61) if admissible(v, kind, param, s, x, y2)}
    return out


def _check_oracle(v, kind, param, res):
    got = _keys(res)
    inside = {k for k in got if abs(k[1]) <= 15 and abs(k[2]) <= 60}
    assert inside == brute_force(v, kind, param)
    for k in got - inside:
        assert admissible(v, kind, param, *k)


@st.composite
def small_delta(draw, rmin=0, rmax=4):
    r = draw(st.integers(rmin, rmax))
    c = draw(st.integers(-5, 5))
    if r == 0:
        c = draw(st.integers(1, 5))
        d2 = draw(st.integers(-12, 12)) * 2 + (c % 2)
        return Ch2(0, c, d2)
    hi = (c * c) // r                       # Delta >= 0  <=>  r*d2 <= c^2
    lo = -(-(c * c - 40) // r)              # Delta <= 40
    k = draw(st.integers(-(-(lo - (c % 2)) // 2), (hi - (c % 2)) // 2))
    return Ch2(r, c, 2 * k + (c % 2))


def _keys(res):
    return {(c.sub.r, c.sub.c, c.sub.d2) for c in res}


@given(small_delta(), rationals(-4, 4, 4))
def test_oracle_must_cross(v, b0):
    res = enumerate_candidate_walls(v, RegionSpec.of(MustCrossLine(b0)), BOG, max_rank=10)
    _check_oracle(v, "cross", b0, res)


@given(small_delta(rmin=1), ch2(rmin=1, rmax=4, cmax=6, dmax=8), st.booleans())
def test_oracle_larger_than(v, w, inclusive):
    assume(delta(v) > 0)
    W0 = wall_between(v, w)
    assume(isinstance(W0, Semicircle) and W0.rho_sq > 0)
    res = enumerate_candidate_walls(v, RegionSpec.of(LargerThan(W0, inclusive)), BOG, max_rank=10)
    _check_oracle(v, "larger", ((W0.s, W0.rho_sq), inclusive), res)


# ---------------------------------------------------------------- properties

_region_kinds = st.sampled_from(["left", "cross"])


@given(small_delta(rmin=1), st.sets(st.sampled_from(FilterSet.NAMES)), st.sampled_from(FilterSet.NAMES),
       _region_kinds)
def test_adding_a_filter_never_enlarges(v, base, extra, kind):
    base = set(base) | {"bogomolov_sub"}
    assume(delta(v) > 0)
    region = LEFT if kind == "left" else RegionSpec.of(MustCrossLine(beta_pm(v)[0]))
    a = enumerate_candidate_walls(v, region, FilterSet.only(*base), max_rank=6)
    b = enumerate_candidate_walls(v, region, FilterSet.only(*(base | {extra})), max_rank=6)
    assert _keys(b) <= _keys(a)


@given(small_delta(rmin=1), st.sampled_from(["left", "cross", "larger", "center"]),
       ch2(rmin=1, rmax=3, cmax=5, dmax=6))
def test_emitted_loci_satisfy_region(v, kind, w):
    assume(delta(v) > 0)
    R, C, D = v.r, v.c, v.d
    mu = F(C, R)
    if kind == "left":
        region = LEFT
    elif kind == "cross":
        region = RegionSpec.of(MustCrossLine(beta_pm(v)[0]))
    elif kind == "center":
        region = RegionSpec.of(LeftOfVertical(), CenterAtMost(mu - 2))
    else:
        W0 = wall_between(v, w)
        assume(isinstance(W0, Semicircle) and W0.rho_sq > 0)
        region = RegionSpec.of(LargerThan(W0))
    res = enumerate_candidate_walls(v, region, ALL_FILTERS, max_rank=6)
    for cand in res:
        circ = _circle((R, C, D), (cand.sub.r, cand.sub.c, cand.sub.d))
        assert circ is not None and circ[1] > 0
        s, p2 = circ
        assert Semicircle(s, p2) == cand.locus
        if kind in ("left", "center"):
            assert s < mu and (mu - s) ** 2 >= p2
        if kind == "center":
            assert s <= mu - 2
        if kind == "cross":
            bm = beta_pm(v)[0]
            assert ((bm - s) * (bm - s) - p2).sign() < 0
        if kind == "larger":
            assert _contains(circ, (W0.s, W0.rho_sq), False)
        assert delta(cand.sub) >= 0 and delta(cand.quot) >= 0
        assert delta(cand.sub) + delta(cand.quot) < delta(v)


@given(ch2(), ch2())
def test_sub_quot_symmetry(v, w):
    assert wall_between(v, w) == wall_between(v, v - w)


@settings(suppress_health_check=[HealthCheck.filter_too_much])
@given(small_delta(rmin=1))
def test_certified_emptiness_extends_to_tail(v):
    assume(delta(v) > 0)
    res = enumerate_candidate_walls(v, LEFT)
    assume(len(res) == 0 and res.certified)
    far = enumerate_candidate_walls(v, LEFT, max_rank=3 * max(res.rank.bound, 1))
    assert len(far) == 0
