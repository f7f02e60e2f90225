from fractions import Fraction as F
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate

from polyblotto.game import GameSpec, expected_payoff_reduced, kernel_range, payoff, reduced_matrix, shift_payoff
from polyblotto.poly import Polynomial
from polyblotto.strategy import DiscreteStrategy, embed_strategy, exact_payoff

from test_poly import closed_form_basis


def neg_square_game(n, a) -> GameSpec:
    """A game whose shifted kernel is exactly -z^2."""
    a = F(a)
    return GameSpec.from_coeffs(n, a, [a * a / 8, 0, F(-1, 2)])


def quad_entry(i, j, nu1, nu2, kernel):
    f = np.polynomial.Polynomial(closed_form_basis(nu1)[i])
    g = np.polynomial.Polynomial(closed_form_basis(nu2)[j])
    val, _ = integrate.dblquad(lambda y, x: kernel(x - y) * f(x) * g(y), -nu1, nu1, -nu2, nu2, epsabs=1e-13, epsrel=1e-13)
    return val


class TestShiftedKernel:
    def test_negative_cube(self):
        for a in (F(1), F(2, 3), F(5)):
            k = shift_payoff(GameSpec.from_coeffs(2, a, [0, 0, 0, -1]))
            assert k.P.coeffs == (-a**3 / 4, 0, -3 * a)
            assert k.M == 2

    def test_linear_is_constant(self):
        k = shift_payoff(GameSpec.from_coeffs(2, 3, [0, 1]))
        assert k.P.coeffs == (3,) and k.M == 0 and k.is_constant
        k0 = shift_payoff(GameSpec.from_coeffs(2, 0, [0, 1]))
        assert k0.P.is_zero and k0.M is None and k0.is_constant

    def test_square_with_advantage(self):
        assert shift_payoff(GameSpec.from_coeffs(1, 2, [0, 0, 1])).P.coeffs == (2, 0, 2)

    @settings(max_examples=60)
    @given(
        st.lists(st.fractions(-3, 3, max_denominator=6), min_size=1, max_size=10),
        st.fractions(0, 4, max_denominator=6),
    )
    def test_even_and_degree_drop(self, coeffs, a):
        g = GameSpec.from_coeffs(1, a, coeffs)
        P = g.P
        assert all(c == 0 for c in P.coeffs[1::2])
        if g.N is not None and P.degree is not None:
            assert P.degree <= g.N
            if g.N % 2:
                assert P.degree <= g.N - 1
        for z in (F(1, 3), F(-7, 5)):
            assert P(z) == g.r(z + a / 2) + g.r(-z + a / 2)

    def test_rejects_negative_resources(self):
        with pytest.raises(ValueError):
            GameSpec.from_coeffs(-1, 1, [1])
        with pytest.raises(ValueError):
            GameSpec.from_coeffs(1, -1, [1])


class TestPayoff:
    def test_examples(self):
        g = GameSpec.from_coeffs(2, 1, [0, 0, 0, -1])
        assert payoff(g, 0, 1) == F(-13, 4)
        assert payoff(GameSpec.from_coeffs(2, 0, [0, 0, 0, -1]), F(1, 2), F(-1, 3)) == 0
        assert payoff(GameSpec.from_coeffs(2, 3, [0, 1]), 0, 0) == 3

    def test_float_inputs(self):
        g = GameSpec.from_coeffs(2, 1, [0, 0, 0, -1])
        assert isinstance(payoff(g, 0.0, 1.0), float)

    def test_out_of_range(self):
        g = GameSpec.from_coeffs(2, 1, [0, 0, 0, -1])
        with pytest.raises(ValueError):
            payoff(g, 2, 0)
        with pytest.raises(ValueError):
            payoff(g, 0, F(3, 2))

    def test_kernel_range(self):
        lo, hi = kernel_range(GameSpec.from_coeffs(2, 1, [0, 0, 0, -1]))
        assert hi == -0.25 and lo == pytest.approx(-3 * 2.5**2 - 0.25)


class TestReducedMatrix:
    @pytest.mark.parametrize("n,a", [(2, 1), (1, F(1, 2)), (3, 2)])
    def test_negative_square_entries(self, n, a):
        g = neg_square_game(n, a)
        assert g.P.coeffs == (0, 0, -1)
        nu1, nu2 = float(g.nu1), float(g.nu2)
        A = reduced_matrix(g).normalized_view
        c = 4 * math.sqrt(5) / 15
        cross = (4 / 3) * (nu1 * nu2) ** 1.5
        assert A[2, 0] == pytest.approx(-c * nu1**2.5 * nu2**0.5, rel=1e-12)
        assert A[0, 2] == pytest.approx(-c * nu1**0.5 * nu2**2.5, rel=1e-12)
        assert A[0, 0] == pytest.approx(-(2 / 3) * (nu1**2.5 * nu2**0.5 + nu1**0.5 * nu2**2.5), rel=1e-12)
        # -(x - y)^2 = -x^2 + 2xy - y^2: the linear-linear coupling is positive
        assert A[1, 1] == pytest.approx(cross, rel=1e-12)
        assert A[2, 2] == 0 and A[1, 0] == 0

    def test_entries_match_quadrature(self):
        g = GameSpec.from_coeffs(2, 1, [0, 1, 0, -1, F(1, 5)])
        A = reduced_matrix(g).normalized_view
        P = np.polynomial.Polynomial([float(c) for c in g.P.coeffs])
        for i in range(A.shape[0]):
            for j in range(A.shape[1]):
                assert A[i, j] == pytest.approx(quad_entry(i, j, float(g.nu1), float(g.nu2), P), rel=1e-8, abs=1e-10)

    def test_zero_beyond_kernel_degree(self):
        g = neg_square_game(2, 1)
        R = reduced_matrix(g, basis_degree=5)
        for i in range(6):
            for j in range(6):
                if i > 2 or j > 2 or (i + j) % 2:
                    assert R.entries[i][j] == 0

    def test_errors(self):
        g = GameSpec.from_coeffs(2, 1, [0, 0, 0, -1])
        with pytest.raises(ValueError):
            reduced_matrix(g, basis_degree=1)
        with pytest.raises(ValueError):
            reduced_matrix(GameSpec.from_coeffs(0, 1, [0, 0, 0, -1]))


class TestExpectedPayoffReduced:
    def test_zero_vectors(self):
        R = reduced_matrix(neg_square_game(2, 1))
        assert expected_payoff_reduced(np.zeros(3), R, np.zeros(3)) == 0

    def test_pure_at_center(self):
        g = neg_square_game(2, 1)
        R = reduced_matrix(g)
        s1 = DiscreteStrategy.for_game(g, 1, [(0, 1)])
        s2 = DiscreteStrategy.for_game(g, 2, [(0, 1)])
        v = expected_payoff_reduced(embed_strategy(s1, R.basis1), R, embed_strategy(s2, R.basis2))
        assert abs(v - float(payoff(g, 0, 0))) <= 1e-10

    def test_worked_cubic_pair(self):
        g = GameSpec.from_coeffs(2, 1, [0, 0, 0, -1])
        R = reduced_matrix(g)
        s1 = DiscreteStrategy.for_game(g, 1, [(0, 1)])
        s2 = DiscreteStrategy.for_game(g, 2, [(-1, F(1, 2)), (1, F(1, 2))])
        v = expected_payoff_reduced(embed_strategy(s1, R.basis1), R, embed_strategy(s2, R.basis2))
        assert abs(v - float(exact_payoff(g, s1, s2))) <= 1e-10
        assert abs(v + 3.25) <= 1e-10

    def test_dimension_mismatch(self):
        R = reduced_matrix(neg_square_game(2, 1))
        with pytest.raises(ValueError):
            expected_payoff_reduced(np.zeros(2), R, np.zeros(3))
