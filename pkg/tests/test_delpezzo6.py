import math
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from intapprox.delpezzo6 import (
    BlownUpCenter,
    InvalidResidue,
    ResidueClass,
    X_TARGET,
    cox_lift,
    count_N,
    dp6_family,
    enumerate_integral,
    figure_data,
    is_integral,
    strong_approx_lift,
)
from intapprox.metrics import P1xP1Point, dp6_distance, dp6_height


def P(s, t):
    return P1xP1Point.make(s, t)


class TestIsIntegral:
    def test_examples(self):
        assert is_integral(P((1, 1), (1, 0)))
        assert is_integral(P((0, 1), (0, 1)))
        assert not is_integral(P((3, 1), (1, 1)))
        assert is_integral(P((4, 3), (3, 2)))

    def test_blown_up_centers(self):
        with pytest.raises(BlownUpCenter):
            is_integral(P((0, 1), (1, 0)))
        with pytest.raises(BlownUpCenter):
            is_integral(P((1, 0), (0, 1)))


class TestCoxLift:
    def test_example(self):
        lift = cox_lift(P((4, 3), (3, 2)))
        assert (lift.e1, lift.e2) == (2, 3)
        assert (lift.sp0, lift.sp1, lift.tp0, lift.tp1) == (2, 1, 1, 1)
        assert lift.sp0 * lift.tp0 - lift.sp1 * lift.tp1 == 1

    def test_identity_lift(self):
        lift = cox_lift(P((1, 1), (1, 0)))
        assert (lift.e1, lift.e2) == (1, 1)

    def test_equivalence_eight_nine_small(self):
        # Cox-lift unit condition agrees with the direct predicate
        for s0, s1, t0, t1 in product(range(-6, 7), repeat=4):
            if math.gcd(s0, s1) != 1 or math.gcd(t0, t1) != 1:
                continue
            y = P((s0, s1), (t0, t1))
            try:
                direct = is_integral(y)
            except BlownUpCenter:
                continue
            lift = cox_lift(y)
            assert direct == (abs(lift.sp0 * lift.tp0 - lift.sp1 * lift.tp1) == 1)

    def test_lift_reconstructs_point(self):
        y = P((10, 9), (7, 6))
        lift = cox_lift(y)
        assert (lift.sp0 * lift.e1, lift.sp1 * lift.e2) == y.s.coords
        assert (lift.tp0 * lift.e2, lift.tp1 * lift.e1) == y.t.coords


def _brute(B):
    pts = set()
    for s0, s1 in product(range(-B, B + 1), repeat=2):
        if math.gcd(s0, s1) != 1 or max(abs(s0), abs(s1)) > B:
            continue
        ms = max(abs(s0), abs(s1))
        for t0, t1 in product(range(-B, B + 1), repeat=2):
            if math.gcd(t0, t1) != 1 or ms * max(abs(t0), abs(t1)) > B:
                continue
            y = P((s0, s1), (t0, t1))
            try:
                if is_integral(y):
                    pts.add(y)
            except BlownUpCenter:
                pass
    return pts


class TestEnumeration:
    def test_b1_contents(self):
        pts = enumerate_integral(1)
        assert P((1, 1), (1, 0)) in pts
        assert P((0, 1), (0, 1)) in pts
        assert P((0, 1), (1, 0)) not in pts

    def test_matches_brute_force(self):
        for B in (5, 12, 25):
            assert set(enumerate_integral(B)) == _brute(B)

    def test_heights_bounded_and_sorted(self):
        pts = enumerate_integral(15)
        hs = [dp6_height(y) for y in pts]
        assert max(hs) <= 15
        assert hs == sorted(hs)

    def test_parallel_equals_serial(self):
        serial = enumerate_integral(40)
        assert enumerate_integral(40, workers=3) == serial

    def test_fiber_free_subset(self):
        full = set(enumerate_integral(20))
        slim = set(enumerate_integral(20, include_fiber_lines=False))
        assert slim <= full
        dropped = full - slim
        assert dropped
        for y in dropped:
            assert 0 in y.s.coords or 0 in y.t.coords


class TestStrongApproxLift:
    def test_examples(self):
        y = strong_approx_lift(ResidueClass(5, 1, 2, 3, 1))
        assert y.quadruple == (1, 2, -7, -4)
        y2 = strong_approx_lift(ResidueClass(2, 1, 0, 1, 0))
        assert y2.quadruple == (1, 0, 1, 0)

    def test_invalid_residue(self):
        with pytest.raises(InvalidResidue):
            strong_approx_lift(ResidueClass(5, 1, 1, 1, 3))

    def test_exhaustive_small_moduli(self):
        for q in range(2, 9):
            for a0, a1, b0, b1 in product(range(q), repeat=4):
                if (a0 * b0 - a1 * b1) % q not in (1 % q, (-1) % q):
                    continue
                y = strong_approx_lift(ResidueClass(q, a0, a1, b0, b1))
                s0, s1, t0, t1 = y.quadruple
                assert s0 * t0 - s1 * t1 in (1, -1)
                assert math.gcd(s0, s1) == 1 and math.gcd(t0, t1) == 1
                assert (s0 - a0) % q == (s1 - a1) % q == 0
                assert (t0 - b0) % q == (t1 - b1) % q == 0


class TestCountN:
    def test_line_count_linear(self):
        fam = dp6_family("line1")
        n100 = count_N(fam, 100)
        n200 = count_N(fam, 200)
        # both sign families of ([1:1],[n+-1:n]) give ~2B points
        assert abs(n100 - 200) <= 6
        assert abs(n200 - 400) <= 6

    def test_cross_check_direct_filter(self):
        pts = enumerate_integral(100, include_fiber_lines=False)
        for name, a, b in (("conic", 1, 1), ("nodal", 1, 2)):
            fam = dp6_family(name, a, b)
            direct = count_N(fam, 100)
            again = count_N(fam, 100, points=pts)
            assert direct == again

    def test_nodal_log_growth(self):
        fam = dp6_family("nodal", 1, 2)
        counts = [count_N(fam, 4**k) for k in range(2, 6)]
        # roughly constant increments per factor-4 height step
        assert counts == sorted(counts)
        assert counts[-1] - counts[0] <= 12


class TestFigureData:
    def test_row_shape_and_roundtrip(self):
        rows = figure_data(40)
        assert rows
        for s0, s1, t0, t1, h, dn, dd, ratio in rows:
            y = P((s0, s1), (t0, t1))
            assert dp6_height(y) == h
            d = dp6_distance(y, X_TARGET)
            assert (d.numerator, d.denominator) == (dn, dd)
            if d >= 1:
                assert ratio is None
            else:
                assert ratio == pytest.approx(math.log(h) / -math.log(d))

    def test_deterministic(self):
        assert figure_data(30) == figure_data(30)


class TestResidueClass:
    def test_valid_flag(self):
        assert ResidueClass(5, 1, 2, 3, 1).valid
        assert not ResidueClass(5, 1, 1, 1, 3).valid

    @given(st.integers(2, 20), st.tuples(*[st.integers(0, 19)] * 4))
    @settings(max_examples=60)
    def test_lift_matches_class(self, q, residues):
        a0, a1, b0, b1 = (r % q for r in residues)
        rc = ResidueClass(q, a0, a1, b0, b1)
        if not rc.valid:
            with pytest.raises(InvalidResidue):
                strong_approx_lift(rc)
            return
        s0, s1, t0, t1 = strong_approx_lift(rc).quadruple
        assert s0 * t0 - s1 * t1 in (1, -1)
        assert [(s0 - a0) % q, (s1 - a1) % q, (t0 - b0) % q, (t1 - b1) % q] == [0] * 4
