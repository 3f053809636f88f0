from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from tiltwall import bounds as B
from tiltwall.chern import chi, dual, make, twist
from tiltwall.errors import AboveDBound, NotASheafClass, OutOfDomain, OutOfRange
from tiltwall.walls import wall_between


def test_bound_D_examples():
    assert B.bound_D(4, -2).value == -1
    assert B.bound_D(3, 2).value == 0
    assert B.bound_D(2, 3).value == F(3, 2)
    assert B.bound_D(0, 2).is_infinite
    assert B.bound_D(5, 1).is_unknown


def test_bound_E_examples():
    assert B.bound_E(2, 0, -6).value == 16
    assert B.bound_E(3, -1, F(-5, 2)).value == F(23, 6)
    assert B.bound_E(0, 2, -1).value == F(1, 3)
    assert B.bound_E(4, -1, F(-3, 2)).value == F(5, 6)
    with pytest.raises(AboveDBound):
        B.bound_E(4, -1, F(-1, 2))
    with pytest.raises(NotASheafClass):
        B.bound_E(-1, 0, 0)


def test_epsilon_and_rank1_helpers():
    assert B.epsilon(5, 0) == 0
    assert B.epsilon(2, 1) == F(1, 4) and B.epsilon(3, 1) == F(2, 3)
    with pytest.raises(OutOfRange):
        B.epsilon(2, 2)
    assert B.rank1_center_bound(-3, F(-2)) == 5
    assert B.rank1_center_bound(-4, F(-5, 2)) == 8
    assert B.rank1_center_bound(-3, F(-7, 2)) == 6
    with pytest.raises(OutOfDomain):
        B.rank1_center_bound(-2, F(-3))
    assert B.negative_rank1_bound(0) == 0 and B.negative_rank1_bound(2) == 3


@pytest.mark.parametrize("d", range(0, 6))
def test_negative_rank_one_matches_dual_plane_curve(d):
    if d == 0:
        return
    shifted = dual(B.IdealPlaneCurve(d).ch()).shifted
    assert shifted.as_tuple()[:3] == (-1, 0, d)
    assert shifted.e == B.negative_rank1_bound(d)


def test_exists_examples():
    assert B.exists_2gieseker(make(2, 0, -1, 0)) is True
    assert B.exists_2gieseker(make(2, 0, 0, 1)) is False
    for e in (F(5, 6), F(-1, 6)):
        assert B.exists_2gieseker(make(4, -1, F(-1, 2), e)) is False


@given(st.integers(1, 4), st.integers(-8, 8), st.integers(0, 6), st.integers(-3, 3))
def test_E_twist_covariance(r, c, k, n):
    D = B.bound_D(r, c).value
    d = D - k
    E = B.bound_E(r, c, d).value
    w = twist(make(r, c, d, E), n)
    assert B.bound_E(w.r, w.c, w.d).value == w.e
    chi(make(r, c, d, E))  # the extremal character is on the lattice


@given(st.integers(1, 4), st.integers(-8, 8), st.integers(-3, 3))
def test_D_twist_and_dual(r, c, n):
    D = B.bound_D(r, c).value
    assert B.bound_D(r, -c).value == D
    assert B.bound_D(r, c + n * r).value == D + n * c + F(n * n * r, 2)


@pytest.mark.parametrize("d", [F(x, 2) for x in range(-21, 0, 2)])
def test_rank_zero_apex(d):
    a = B.LineBundle(int(d + F(1, 2))).ch()
    b = B.LineBundleShift(int(d - F(1, 2))).ch()
    total = a + b
    assert total.as_tuple()[:3] == (0, 1, d)
    assert total.e == F(1, 24) + d * d / 2 == B.bound_E(0, 1, d).value


def test_rank1_center_bound_continuous_and_monotone():
    for d in range(-9, -2):
        grid = [F(k, 8) for k in range(16 * d, 0)]
        vals = [B.rank1_center_bound(d, s) for s in grid]
        assert all(a >= b for a, b in zip(vals, vals[1:]))
        f = d % 2
        for bp in (d - F(1, 2), F(d, 2) + F(f - 3, 2)):
            if bp < 0:
                eps = F(1, 10 ** 6)
                assert abs(B.rank1_center_bound(d, bp - eps) - B.rank1_center_bound(d, bp + eps)) < F(1, 1000)


KEYS = [(1, 0, -2), (1, 0, -4), (2, -1, F(-1, 2)), (3, -2, 0), (3, -1, F(-3, 2)),
        (3, -1, F(-5, 2)), (3, 0, -3), (3, 0, -4), (4, -2, -1), (4, -2, -2), (4, -2, -3),
        (4, -1, F(-3, 2)), (4, -1, F(-5, 2)), (4, 0, -4), (4, 0, -5), (0, 2, -1), (0, 1, F(-3, 2)),
        (0, 3, F(-3, 2))]


@pytest.mark.parametrize("key", KEYS)
def test_extremal_coherence(key):
    entry = B.extremal_walls(*key)
    assert not isinstance(entry, B.Unknown)
    target = make(*key, B.bound_E(*key).value)
    for w in entry.walls:
        a, b = w.factors
        assert a.ch() + b.ch() == target
        assert w.locus == wall_between(target, a.ch())
        for f in (a, b):
            ch = f.ch()
            if ch.r == 1 and "final model" in entry.note:
                continue
            if 1 <= ch.r <= 4:
                assert ch.e == B.bound_E(ch.r, ch.c, ch.d).value


def test_extremal_shapes():
    e = B.extremal_walls(3, 0, -4)
    labels = {tuple(str(f) for f in w.factors) for w in e.walls}
    assert any("Omega(1)" in l[0] or "Omega(1)" in l[1] for l in labels)
    assert B.extremal_walls(2, 0, -3).is_unknown
