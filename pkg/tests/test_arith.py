import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from intapprox.arith import (
    LatticeBasis,
    SearchExhausted,
    SquareInput,
    ZeroPair,
    continued_fraction_sqrt,
    gcd_normalize,
    norm_one_small_unit,
    padic_sup,
    pell_fundamental,
    slab_lattice_point,
    unit_powers,
)


class TestGcdNormalize:
    def test_examples(self):
        assert gcd_normalize((4, 6)) == (2, 3)
        assert gcd_normalize((-3, 0)) == (1, 0)
        assert gcd_normalize((0, -5)) == (0, 1)

    def test_zero_pair(self):
        with pytest.raises(ZeroPair):
            gcd_normalize((0, 0))

    @given(st.tuples(st.integers(-1000, 1000), st.integers(-1000, 1000)))
    def test_idempotent_primitive_canonical(self, pair):
        if pair == (0, 0):
            return
        out = gcd_normalize(pair)
        assert gcd_normalize(out) == out
        assert math.gcd(*out) == 1
        first = next(c for c in out if c != 0)
        assert first > 0


class TestPadicSup:
    def test_examples(self):
        assert padic_sup((4, 6), 2) == Fraction(1, 2)
        assert padic_sup((1, 10), 3) == 1
        assert padic_sup((9, 27), 3) == Fraction(1, 9)

    def test_not_prime(self):
        with pytest.raises(ValueError):
            padic_sup((1, 2), 4)

    @given(
        st.lists(st.integers(-500, 500), min_size=1, max_size=4).filter(
            lambda v: any(v)
        )
    )
    def test_product_formula(self, vec):
        # archimedean sup times all finite sups = sup of the primitive form
        bound = max(abs(c) for c in vec)
        prod = Fraction(bound)
        for p in range(2, bound + 1):
            try:
                prod *= padic_sup(vec, p)
            except ValueError:
                continue
        g = 0
        for c in vec:
            g = math.gcd(g, c)
        assert prod == bound // g


class TestContinuedFraction:
    def test_examples(self):
        assert continued_fraction_sqrt(2) == (1, (2,))
        assert continued_fraction_sqrt(3) == (1, (1, 2))
        with pytest.raises(SquareInput):
            continued_fraction_sqrt(4)

    def test_period_ends_with_2a0(self):
        for d in (2, 3, 5, 6, 7, 61, 109):
            a0, period = continued_fraction_sqrt(d)
            assert period[-1] == 2 * a0


def _pell_brute(d, mmax=10**6):
    n = 1
    while True:
        m2 = d * n * n + 1
        m = math.isqrt(m2)
        if m > mmax:
            return None
        if m * m == m2:
            return m, n
        n += 1


class TestPell:
    def test_examples(self):
        assert tuple(pell_fundamental(2)) == (3, 2)
        assert tuple(pell_fundamental(3)) == (2, 1)
        assert tuple(pell_fundamental(6)) == (5, 2)

    def test_large_classical(self):
        sol = pell_fundamental(61)
        assert (sol.m, sol.n) == (1766319049, 226153980)

    def test_brute_force_oracle_small_d(self):
        # direct minimal-solution search where feasible
        for d in range(2, 32):
            if math.isqrt(d) ** 2 == d:
                continue
            sol = pell_fundamental(d)
            assert (sol.m, sol.n) == _pell_brute(d, mmax=10**9)

    def test_independent_oracle_d_up_to_200(self):
        from sympy.solvers.diophantine.diophantine import diop_DN

        for d in range(2, 201):
            if math.isqrt(d) ** 2 == d:
                continue
            sol = pell_fundamental(d)
            assert sol.m * sol.m - d * sol.n * sol.n == 1
            oracle = min(
                ((abs(m), abs(n)) for m, n in diop_DN(d, 1) if n != 0),
                default=None,
            )
            assert oracle == (sol.m, sol.n)

    def test_all_small_solutions_are_powers(self):
        # every m <= 10**6 Pell solution appears among unit powers
        for d in range(2, 201):
            if math.isqrt(d) ** 2 == d:
                continue
            fund = pell_fundamental(d)
            powers = {(s.m, s.n) for s in unit_powers(fund, 40) if s.m <= 10**6}
            n = 1
            found = set()
            while True:
                m2 = d * n * n + 1
                m = math.isqrt(m2)
                if m > 10**6:
                    break
                if m * m == m2:
                    found.add((m, n))
                n += 1
            assert found <= powers


class TestUnitPowers:
    def test_examples(self):
        sol = pell_fundamental(2)
        assert [tuple(s) for s in unit_powers(sol, 2)] == [(3, 2), (17, 12)]
        sol3 = pell_fundamental(3)
        assert [tuple(s) for s in unit_powers(sol3, 3)] == [(2, 1), (7, 4), (26, 15)]
        assert [tuple(s) for s in unit_powers(sol, 1)] == [(3, 2)]

    def test_all_satisfy_pell(self):
        for d in (2, 3, 5, 7, 10):
            for s in unit_powers(pell_fundamental(d), 8):
                assert s.m * s.m - d * s.n * s.n == 1


class TestNormOneSmallUnit:
    def test_examples(self):
        assert norm_one_small_unit(2, Fraction(1, 5)) == (3, 2, 1)
        assert norm_one_small_unit(3, 1) == (2, 1, 1)

    def test_smallest_power_below_one_percent(self):
        # 17 - 12*sqrt(2) ~ 0.0294 > 1/100; the third power is the first below
        m, n, k = norm_one_small_unit(2, Fraction(1, 100))
        assert (m, n, k) == (99, 70, 3)

    def test_conjugate_in_slab_exact(self):
        for d, delta in ((2, Fraction(1, 1000)), (7, Fraction(1, 50))):
            m, n, k = norm_one_small_unit(d, delta)
            # 0 < m - n sqrt d < delta, exactly
            assert m * m > d * n * n
            lhs = Fraction(m) - delta
            assert lhs <= 0 or lhs * lhs < d * n * n
            # minimality: previous power (if any) is not in the slab
            if k > 1:
                prev = unit_powers(pell_fundamental(d), k - 1)[-1]
                lhs = Fraction(prev.m) - delta
                assert lhs > 0 and lhs * lhs >= d * prev.n * prev.n


class TestSlabLatticePoint:
    def _check(self, basis, delta, coeffs):
        x = basis.combine(coeffs)
        assert x[0] >= 1 / Fraction(delta)
        assert all(abs(t) <= Fraction(delta) for t in x[1:])

    def test_standard_basis(self):
        basis = LatticeBasis(((1, 0), (0, 1)))
        c = slab_lattice_point(basis, Fraction(1, 2))
        self._check(basis, Fraction(1, 2), c)
        assert basis.combine(c) == (2, 0)

    def test_kernel_case(self):
        basis = LatticeBasis(((1, 1), (0, 3)))
        c = slab_lattice_point(basis, Fraction(1, 2))
        self._check(basis, Fraction(1, 2), c)
        assert basis.combine(c) == (3, 0)

    def test_dim_one(self):
        basis = LatticeBasis(((5,),))
        c = slab_lattice_point(basis, Fraction(1, 2))
        assert basis.combine(c) == (5,)

    def test_irrational_slope_search(self):
        # no kernel vector: projection (second coordinate) is injective
        basis = LatticeBasis(((1, Fraction(1, 3)), (0, 1)))
        delta = Fraction(1, 7)
        c = slab_lattice_point(basis, delta)
        self._check(basis, delta, c)

    @given(
        st.integers(1, 9),
        st.integers(-3, 3),
        st.integers(1, 9),
    )
    def test_random_triangular(self, a, b, d):
        basis = LatticeBasis(((a, b), (0, d)))
        delta = Fraction(1, 3)
        c = slab_lattice_point(basis, delta)
        self._check(basis, delta, c)

    def test_dependent_basis_rejected(self):
        with pytest.raises(Exception):
            LatticeBasis(((1, 2), (2, 4)))
