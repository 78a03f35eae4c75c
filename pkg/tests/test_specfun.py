import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import integrate

from dengfan.errors import DomainError
from dengfan.specfun import (
    JacobiParams,
    hyp2f1_terminating,
    jacobi_poly,
    jacobi_poly_hyp,
    log_beta,
    log_gamma,
)


class TestLogGamma:
    def test_at_one(self):
        assert log_gamma(1.0) == pytest.approx(0.0, abs=1e-15)

    def test_at_half(self):
        assert log_gamma(0.5) == pytest.approx(0.5 * math.log(math.pi), rel=1e-14)

    def test_large_argument_frozen(self):
        # oracle: mpmath.loggamma(120.3) at 40 digits
        assert log_gamma(120.3) == pytest.approx(454.46026827735183, rel=1e-13)

    def test_nonpositive_rejected(self):
        for x in (0.0, -1.5):
            with pytest.raises(DomainError):
                log_gamma(x)

    @given(st.floats(1e-3, 150.0))
    def test_recurrence(self, x):
        lhs = log_gamma(x + 1.0)
        rhs = log_gamma(x) + math.log(x)
        assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-12)

    def test_convexity(self):
        h = 1e-3
        for x in (0.2, 0.7, 1.5, 3.0, 10.0, 80.0):
            second = log_gamma(x + h) - 2.0 * log_gamma(x) + log_gamma(x - h)
            assert second >= 0.0


class TestLogBeta:
    def test_ones(self):
        assert log_beta(1.0, 1.0) == pytest.approx(0.0, abs=1e-15)

    @given(st.floats(1e-3, 50.0), st.floats(1e-3, 50.0))
    def test_symmetry(self, a, b):
        assert log_beta(a, b) == log_beta(b, a)

    def test_against_quadrature_frozen(self):
        # oracle: mpmath tanh-sinh quadrature of int_0^1 t^2.7 (1-t)^1.2 dt, logged
        assert log_beta(3.7, 2.2) == pytest.approx(-3.0927723120378948, rel=1e-12)

    def test_against_live_quadrature(self):
        value, _ = integrate.quad(lambda t: t**2.7 * (1 - t) ** 1.2, 0.0, 1.0,
                                  epsabs=0.0, epsrel=1e-12)
        assert math.exp(log_beta(3.7, 2.2)) == pytest.approx(value, rel=1e-10)

    def test_nonpositive_rejected(self):
        with pytest.raises(DomainError):
            log_beta(0.0, 1.0)


class TestHyp2F1:
    def test_degree_zero_is_one(self):
        for beta, gamma, z in ((3.2, 1.1, 0.7), (-5.0, 2.0, -3.0)):
            assert hyp2f1_terminating(0, beta, gamma, z) == 1.0

    @given(st.floats(-10, 10), st.floats(0.5, 10), st.floats(-2, 2))
    def test_degree_one(self, beta, gamma, z):
        expected = 1.0 - beta * z / gamma
        assert hyp2f1_terminating(1, beta, gamma, z) == pytest.approx(expected, rel=1e-13, abs=1e-13)

    def test_frozen_exact_fraction(self):
        # oracle: exact rational summation of the 4-term series, -17/280
        expected = float(Fraction(-17, 280))
        assert hyp2f1_terminating(3, 5.5, 2.5, 0.3) == pytest.approx(expected, rel=1e-13)

    def test_gamma_pole_rejected(self):
        with pytest.raises(DomainError):
            hyp2f1_terminating(3, 1.0, -1.0, 0.5)

    def test_gamma_pole_reached_midsum(self):
        with pytest.raises(DomainError):
            hyp2f1_terminating(4, 1.0, -2.0, 0.5)

    def test_array_input(self):
        z = np.array([0.0, 0.25, 0.5])
        out = hyp2f1_terminating(1, 2.0, 4.0, z)
        assert np.allclose(out, 1.0 - 2.0 * z / 4.0)


class TestJacobi:
    def test_degree_zero(self):
        for a, b, x in ((1.3, 0.7, 0.25), (-0.5, 4.0, -1.0)):
            assert jacobi_poly(JacobiParams(0, a, b), x) == 1.0

    def test_degree_one_closed_form(self):
        p = JacobiParams(1, 1.3, 0.7)
        for x in (-1.0, -0.3, 0.0, 0.9):
            expected = 0.5 * (1.3 - 0.7) + 0.5 * (1.3 + 0.7 + 2.0) * x
            assert jacobi_poly(p, x) == pytest.approx(expected, rel=1e-14)

    @given(st.floats(-0.9, 6.0), st.floats(-0.9, 6.0), st.floats(-1.0, 1.0))
    def test_degree_one_property(self, a, b, x):
        expected = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * x
        assert jacobi_poly(JacobiParams(1, a, b), x) == pytest.approx(expected, rel=1e-12, abs=1e-12)

    def test_two_routes_agree_spot(self):
        p = JacobiParams(4, 1.3, 0.7)
        rec = jacobi_poly(p, 0.25)
        hyp = jacobi_poly_hyp(p, 0.25)
        assert rec == pytest.approx(hyp, rel=1e-12)

    def test_invalid_params(self):
        with pytest.raises(DomainError):
            JacobiParams(-1, 0.0, 0.0)
        with pytest.raises(DomainError):
            JacobiParams(2, -1.0, 0.0)
        with pytest.raises(DomainError):
            JacobiParams(2, 0.0, -1.5)

    def test_array_input(self):
        x = np.linspace(-1, 1, 7)
        p = JacobiParams(3, 0.4, 1.1)
        out = jacobi_poly(p, x)
        assert out.shape == x.shape
        assert np.allclose(out, [jacobi_poly(p, xi) for xi in x])

    def test_endpoint_values(self):
        # P_n(1) = C(n+a, n), P_n(-1) = (-1)^n C(n+b, n)
        p = JacobiParams(5, 2.0, 1.0)
        assert jacobi_poly(p, 1.0) == pytest.approx(math.comb(7, 5), rel=1e-13)
        assert jacobi_poly(p, -1.0) == pytest.approx(-math.comb(6, 5), rel=1e-13)


def exact_jacobi_via_series(n: int, a: Fraction, b: Fraction, x: Fraction):
    """Exact-rational evaluation of the hypergeometric route.

    Returns (value, conditioning) where conditioning is the sum of the
    absolute series terms: the natural scale against which any
    double-precision evaluation of the same sum must be compared.
    """
    prefactor = Fraction(1)
    for k in range(n):
        prefactor *= (a + 1 + k) / (k + 1)
    s = (1 - x) / 2
    beta = 1 + a + b + n
    gamma = a + 1
    term = Fraction(1)
    total = Fraction(1)
    cond = Fraction(1)
    for k in range(1, n + 1):
        term *= Fraction(-(n - k + 1)) * (beta + k - 1) / ((gamma + k - 1) * k) * s
        total += term
        cond += abs(term)
    return prefactor * total, abs(prefactor) * cond


def test_route_identity_small_lattice():
    # both double routes are anchored to an exact-rational oracle; the
    # dual-route tolerance is taken relative to the series conditioning
    # (term cancellation near x = -1 with a = -1/2 reaches 1e6 : 0.2)
    xs = [Fraction(2 * i, 49) - 1 for i in range(50)]
    for n in (0, 1, 2, 5, 10):
        for a in (Fraction(-1, 2), Fraction(3, 10), Fraction(17, 10), Fraction(4)):
            for b in (Fraction(-1, 2), Fraction(3, 10), Fraction(17, 10), Fraction(4)):
                p = JacobiParams(n, float(a), float(b))
                for x in xs:
                    exact, cond = exact_jacobi_via_series(n, a, b, x)
                    rec = jacobi_poly(p, float(x))
                    hyp = jacobi_poly_hyp(p, float(x))
                    scale = max(1.0, abs(float(exact)))
                    assert abs(rec - float(exact)) <= 1e-12 * scale
                    assert abs(rec - hyp) <= 1e-11 * max(scale, float(cond))


def test_orthogonality_by_quadrature():
    for a, b in ((0.4, 1.1), (1.5, 0.0)):
        for m in range(6):
            for n in range(m + 1, 6):
                pm = JacobiParams(m, a, b)
                pn = JacobiParams(n, a, b)
                value, _ = integrate.quad(
                    lambda x: jacobi_poly(pm, x) * jacobi_poly(pn, x),
                    -1.0, 1.0, weight="alg", wvar=(b, a), limit=200,
                )
                assert abs(value) < 1e-9
