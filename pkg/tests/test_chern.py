from fractions import Fraction as F
import math

import pytest
import sympy
from hypothesis import given, strategies as st

from tiltwall.chern import (
    ChernChar, Order, bigQ, chi, classify_membership, delta, dual, euler_pairing,
    gieseker_compare, hilbert_poly, line_bundle, make, make2, mu, mul, nu, twist, twisted_ch,
)
from tiltwall.errors import BothZero, LatticeViolation

from strategies import chern, rationals

O = line_bundle


def hrr_chi(v: ChernChar):
    """Independent oracle: HRR with td(P^3) = 1 + 2H + 11/6 H^2 + H^3."""
    H = sympy.Symbol("H")
    ch = v.r + v.c * H + sympy.Rational(v.d2, 2) * H**2 + sympy.Rational(v.e6, 6) * H**3
    td = 1 + 2 * H + sympy.Rational(11, 6) * H**2 + H**3
    return F(str(sympy.expand(ch * td).coeff(H, 3)))


class TestMake:
    def test_unit_and_cotangent(self):
        assert make(1, 0, 0, 0) == O(0)
        om = make(3, -1, F(-1, 2), F(-1, 6))
        assert chi(om) == 0

    def test_parity_violation(self):
        with pytest.raises(LatticeViolation):
            make(2, 1, 0, 0)

    def test_chi_integrality_violation(self):
        with pytest.raises(LatticeViolation):
            make(1, 0, 0, F(1, 2))


class TestRing:
    def test_twist_examples(self):
        assert twist(O(0), -1) == make(1, -1, F(1, 2), F(-1, 6))
        assert twist(make(3, 4, 2, F(2, 3)), -2) == make(3, -2, 0, F(2, 3))

    def test_mul_examples(self):
        assert mul(O(1), O(-1)) == O(0)
        ov = make(0, 1, F(-1, 2), F(1, 6))
        p = mul(ov, O(1))
        assert p == make(0, 1, F(1, 2), F(1, 6)) and chi(p) == 3
        assert mul(make(3, -4, 2, F(-2, 3)), O(1)) == make(3, -1, F(-1, 2), F(-1, 6))

    def test_dual_examples(self):
        assert dual(O(0)).plain == O(0)
        assert dual(make(1, 0, -2, 3)).shifted == make(-1, 0, 2, 3)

    @given(chern(), st.integers(-5, 5))
    def test_twist_group_action(self, v, n):
        assert twist(twist(v, n), -n) == v
        assert twist(v, n) == mul(v, O(n))

    @given(chern(), chern())
    def test_dual_is_ring_hom(self, v, w):
        assert dual(mul(v, w)).plain == mul(dual(v).plain, dual(w).plain)

    @given(chern(), chern(), chern())
    def test_mul_comm_assoc_unit(self, u, v, w):
        assert mul(v, w) == mul(w, v)
        assert mul(mul(u, v), w) == mul(u, mul(v, w))
        assert mul(O(0), v) == v == mul(v, O(0))


class TestNumbers:
    def test_chi_examples(self):
        assert chi(O(0)) == 1
        for e in (F(5, 6), F(-1, 6), F(11, 6)):
            assert chi(make(4, -1, F(-1, 2), e)) == e + F(7, 6)
        assert chi(make(3, -1, F(-1, 2), F(-1, 6))) == 0

    @given(chern())
    def test_chi_matches_hrr(self, v):
        assert chi(v) == hrr_chi(v)
        assert chi(v).denominator == 1

    def test_pairing_examples(self):
        for e in (F(2, 3), F(-1, 3)):
            assert euler_pairing(O(-1), make(3, -2, 0, e)) == e + F(10, 3)
        om = make(3, -1, F(-1, 2), F(-1, 6))
        for e in (F(5, 6), F(-1, 6)):
            assert euler_pairing(om, make(4, -1, F(-3, 2), e)) == 3 * e - F(3, 2)
        assert euler_pairing(O(0), O(0)) == 1

    @given(st.integers(-6, 6), st.integers(-6, 6))
    def test_pairing_of_line_bundles_is_binomial(self, a, b):
        n = b - a
        assert euler_pairing(O(a), O(b)) == F((n + 1) * (n + 2) * (n + 3), 6)

    def test_mu_delta(self):
        assert mu(make2(3, -1, F(-1, 2))) == F(-1, 3)
        assert mu(make2(0, 2, -1)) == math.inf
        assert delta(O(0)) == 0
        assert delta(make2(3, -1, F(-5, 2))) == 16
        assert delta(make2(4, -1, F(-3, 2))) == 13

    def test_twisted_examples(self):
        v = make(3, -1, F(-1, 2), F(-1, 6))
        assert twisted_ch(v, 0).ch3b == v.e
        assert twisted_ch(v, -1).ch2b == 0
        assert twisted_ch(make2(4, -2, -1), -1).ch1b == 2

    def test_nu_examples(self):
        assert nu(make2(3, -1, F(-1, 2)), 0, -1) == 0
        assert nu(make2(4, -2, 0), 0, -1) == 0
        assert nu(O(0), F(1, 4), 0) == math.inf

    def test_bigQ_examples(self):
        assert bigQ(O(0), F(3), 0) == 0
        assert bigQ(make(3, -1, F(-7, 2), F(41, 6)), 0, -1) == -4
        assert bigQ(make(3, 0, -3, 3), 0, -1) == 0

    @given(chern(), st.integers(-4, 4))
    def test_mu_shifts(self, v, n):
        if v.r:
            assert mu(twist(v, n)) == mu(v) + n


class TestHilbert:
    def test_examples(self):
        P = hilbert_poly(O(0))
        assert P.coeffs() == (F(1, 6), 1, F(11, 6), 1)
        Pv = hilbert_poly(make(0, 1, F(-1, 2), F(1, 6)))
        for m in range(-3, 5):
            assert Pv(m) == F((m + 1) * (m + 2), 2)

    @given(chern(), st.integers(-4, 4), st.integers(-5, 5))
    def test_value_and_shift(self, v, n, m):
        P = hilbert_poly(v)
        assert P(0) == chi(v) and P.a3 == F(v.r, 6)
        assert hilbert_poly(twist(v, n))(m) == P(m + n)

    def test_compare(self):
        P = hilbert_poly
        assert gieseker_compare(P(O(0)), P(O(0) + O(0))) == Order.EQUIV
        assert gieseker_compare(P(O(0)), P(O(1))) == Order.PREC
        assert gieseker_compare(P(O(0)), P(make(0, 1, F(-1, 2), F(1, 6)))) == Order.PREC
        with pytest.raises(BothZero):
            gieseker_compare(P(make(0, 0, 0, 0)), P(make(0, 0, 0, 0)))


class TestMembership:
    def test_examples(self):
        assert "ii.b" in classify_membership((0, 0, -1)).violated_rules
        assert classify_membership((2, 1, F(1, 2))).in_ch_le2
        rep = classify_membership((-1, 0))
        assert not rep.in_ch_le1 and "i.a" in rep.violated_rules

    @given(chern(rmin=0))
    def test_valid_chars_pass_grid_rules(self, v):
        rep = classify_membership(v)
        assert "grid" not in rep.violated_rules and "iii.c" not in rep.violated_rules


# properties also used by the acceptance suite

@given(chern(), chern(), st.integers(-5, 5))
def test_lattice_closure(v, w, n):
    for x in (v + w, v - w, mul(v, w), twist(v, n), dual(v).plain):
        assert chi(x).denominator == 1
        assert (2 * x.d - x.c) % 2 == 0


@given(chern(), st.integers(-4, 4), rationals(0, 4), rationals())
def test_bigQ_twist_covariance(v, n, a2, b):
    assert bigQ(twist(v, n), a2, b + n) == bigQ(v, a2, b)


@given(chern(), st.integers(-4, 4))
def test_delta_twist_invariant(v, n):
    assert delta(twist(v, n)) == delta(v)


@given(chern(), chern())
def test_serre_duality(v, w):
    assert euler_pairing(w, v) == -euler_pairing(v, twist(w, -4))
