import math

import numpy as np
import pytest

from idealpoly import oracles, specfun
from idealpoly.errors import PoleAtMultipleOfPi

PI = math.pi

# frozen oracle values (quadrature / series, cross-checked against
# mpmath clsin(2, 2x)/2 and scipy during development)
LOB_PI_3 = 0.3383138688032179
LOB_PI_4 = 0.4579827970886095
LOB_PI_6 = 0.5074708032048268


def test_lobachevsky_reference_values():
    assert specfun.lobachevsky(PI / 3) == pytest.approx(LOB_PI_3, abs=1e-12)
    assert specfun.lobachevsky(PI / 4) == pytest.approx(LOB_PI_4, abs=1e-12)
    assert specfun.lobachevsky(PI / 6) == pytest.approx(LOB_PI_6, abs=1e-12)


def test_lobachevsky_zero_at_multiples_of_pi():
    assert specfun.lobachevsky(0.0) == 0.0
    for k in range(-3, 4):
        assert abs(specfun.lobachevsky(k * PI)) < 1e-13


def test_lobachevsky_vanishes_at_half_pi():
    # L(pi - x) = -L(x) forces a zero at pi/2
    assert abs(specfun.lobachevsky(PI / 2)) < 1e-14


def test_table1_consistency():
    assert 3 * specfun.lobachevsky(PI / 3) == pytest.approx(1.014942, abs=5e-6)
    assert 8 * specfun.lobachevsky(PI / 4) == pytest.approx(3.663862, abs=5e-6)


def test_oddness_and_periodicity():
    rng = np.random.default_rng(0)
    for theta in rng.uniform(-10, 10, 1000):
        lob = specfun.lobachevsky
        assert abs(lob(-theta) + lob(theta)) < 1e-12
        assert abs(lob(theta + PI) - lob(theta)) < 1e-12


def test_triplication_point():
    lhs = specfun.lobachevsky(PI / 6)
    rhs = 1.5 * specfun.lobachevsky(PI / 3)
    assert abs(lhs - rhs) < 1e-12


def test_matches_quadrature_oracle_on_grid():
    for i in range(1, 100):
        theta = PI * i / 100
        assert abs(
            specfun.lobachevsky(theta) - oracles.lobachevsky_by_quadrature(theta)
        ) < 1e-10


def test_deriv_values():
    assert specfun.lobachevsky_deriv(PI / 6) == pytest.approx(0.0, abs=1e-15)
    assert specfun.lobachevsky_deriv(PI / 2) == pytest.approx(-math.log(2), abs=1e-15)
    assert specfun.lobachevsky_deriv(PI / 3) == pytest.approx(
        -math.log(math.sqrt(3)), abs=1e-14
    )


def test_deriv_matches_central_differences():
    h = 1e-5
    for theta in np.linspace(0.2, math.pi - 0.2, 25):
        fd = (specfun.lobachevsky(theta + h) - specfun.lobachevsky(theta - h)) / (2 * h)
        assert abs(fd - specfun.lobachevsky_deriv(theta)) < 1e-6


def test_deriv_pole():
    with pytest.raises(PoleAtMultipleOfPi):
        specfun.lobachevsky_deriv(0.0)


def test_second_deriv():
    assert specfun.lobachevsky_second_deriv(PI / 2) == pytest.approx(0.0, abs=1e-15)
    assert specfun.lobachevsky_second_deriv(PI / 4) == pytest.approx(-1.0, abs=1e-14)
    assert specfun.lobachevsky_second_deriv(PI / 3) == pytest.approx(
        -1 / math.sqrt(3), abs=1e-14
    )
    with pytest.raises(ValueError):
        specfun.lobachevsky_second_deriv(-0.1)


def test_incomplete_beta_endpoints_and_symmetry():
    assert specfun.regularized_incomplete_beta(2.0, 3.0, 0.0) == 0.0
    assert specfun.regularized_incomplete_beta(2.0, 3.0, 1.0) == 1.0
    assert specfun.regularized_incomplete_beta(1.0, 1.0, 0.5) == pytest.approx(
        0.5, abs=1e-12
    )
    assert specfun.regularized_incomplete_beta(2.0, 2.0, 0.5) == pytest.approx(
        0.5, abs=1e-12
    )
    rng = np.random.default_rng(1)
    for _ in range(200):
        a = rng.uniform(0.2, 20)
        b = rng.uniform(0.2, 20)
        x = rng.uniform(0, 1)
        s = specfun.regularized_incomplete_beta(
            a, b, x
        ) + specfun.regularized_incomplete_beta(b, a, 1 - x)
        assert abs(s - 1.0) < 1e-10


def test_incomplete_beta_against_scipy():
    scipy_special = pytest.importorskip("scipy.special")
    rng = np.random.default_rng(2)
    for _ in range(200):
        a = rng.uniform(0.1, 40)
        b = rng.uniform(0.1, 40)
        x = rng.uniform(0, 1)
        ours = specfun.regularized_incomplete_beta(a, b, x)
        ref = float(scipy_special.betainc(a, b, x))
        assert abs(ours - ref) < 1e-10 * max(1.0, abs(ref))


def test_digamma_values():
    euler_gamma = 0.5772156649015329
    assert specfun.digamma(1.0) == pytest.approx(-euler_gamma, abs=1e-10)
    assert specfun.digamma(2.0) == pytest.approx(1 - euler_gamma, abs=1e-10)
    assert specfun.digamma(0.5) == pytest.approx(
        -euler_gamma - 2 * math.log(2), abs=1e-10
    )
    # recurrence psi(x+1) = psi(x) + 1/x
    rng = np.random.default_rng(3)
    for x in rng.uniform(0.1, 30, 200):
        assert specfun.digamma(x + 1) - specfun.digamma(x) == pytest.approx(
            1 / x, abs=1e-10
        )


def test_digamma_trigamma_against_scipy():
    scipy_special = pytest.importorskip("scipy.special")
    rng = np.random.default_rng(4)
    for x in rng.uniform(0.05, 50, 300):
        assert specfun.digamma(x) == pytest.approx(
            float(scipy_special.digamma(x)), abs=1e-10
        )
        assert specfun.trigamma(x) == pytest.approx(
            float(scipy_special.polygamma(1, x)), abs=1e-9
        )


def test_kolmogorov_tail():
    assert specfun.kolmogorov_tail(0.0) == 1.0
    assert specfun.kolmogorov_tail(6.0) < 1e-10
    assert specfun.kolmogorov_tail(1.0) == pytest.approx(0.2699996716773545, abs=1e-10)


def test_kolmogorov_tail_against_scipy():
    scipy_stats = pytest.importorskip("scipy.stats")
    for lam in (0.3, 0.5, 0.8, 1.0, 1.5, 2.0):
        ref = float(scipy_stats.kstwobign.sf(lam))
        assert specfun.kolmogorov_tail(lam) == pytest.approx(ref, abs=1e-9)
