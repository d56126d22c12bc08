"""Normal-approximation benchmark tests."""

import numpy as np
import pytest
from scipy.integrate import quad

from listcode.bounds import (
    BoundQuery,
    bi_awgn_capacity_dispersion,
    gap_to_bound,
    normal_approx_epsilon,
)


def oracle_capacity_dispersion(sigma):
    """Adaptive-quadrature oracle for the BI-AWGN information density moments."""

    def density(y):
        return np.exp(-((y - 1.0) ** 2) / (2 * sigma**2)) / np.sqrt(2 * np.pi * sigma**2)

    def info(y):
        lam = 2.0 * y / sigma**2
        return 1.0 - np.logaddexp(0.0, -lam) / np.log(2.0)

    lo, hi = 1.0 - 12 * sigma, 1.0 + 12 * sigma
    c, _ = quad(lambda y: density(y) * info(y), lo, hi, limit=400)
    m2, _ = quad(lambda y: density(y) * info(y) ** 2, lo, hi, limit=400)
    return c, m2 - c * c


@pytest.mark.parametrize("sigma", [0.5, 0.9, 1.4, 2.5])
def test_capacity_dispersion_vs_quadrature_oracle(sigma):
    c, v = bi_awgn_capacity_dispersion(sigma)
    c_ref, v_ref = oracle_capacity_dispersion(sigma)
    assert abs(c - c_ref) <= 1e-6 * max(c_ref, 1e-12)
    assert abs(v - v_ref) <= 1e-6 * max(v_ref, 1e-12)


def test_capacity_saturates_at_one_bit():
    c, _ = bi_awgn_capacity_dispersion(0.05)  # very high snr
    assert 0.999 < c <= 1.0 + 1e-12


def test_epsilon_limits():
    assert normal_approx_epsilon(BoundQuery(215, 32, 25.0)) < 1e-12
    assert normal_approx_epsilon(BoundQuery(215, 32, -25.0)) > 1 - 1e-9


def test_epsilon_strictly_decreasing_in_ebno():
    grid = np.arange(-2.0, 8.01, 0.5)
    eps = [normal_approx_epsilon(BoundQuery(215, 32, e)) for e in grid]
    assert all(a > b for a, b in zip(eps, eps[1:]))


def test_epsilon_decreasing_in_blocklength_at_fixed_rate():
    # same rate 1/4 and same per-symbol snr: longer blocks are better
    for ebno in (1.0, 2.0, 3.0):
        eps = [
            normal_approx_epsilon(BoundQuery(n, n // 4, ebno))
            for n in (128, 256, 512, 1024)
        ]
        assert all(a > b for a, b in zip(eps, eps[1:]))


def test_gap_identities():
    ebno = np.arange(1.0, 4.01, 0.5)
    tfr = np.array([10.0 ** (-1 - e) for e in ebno])
    assert abs(gap_to_bound(ebno, tfr, ebno, tfr, 1e-3)) < 1e-12
    shifted = ebno + 0.5
    assert abs(gap_to_bound(shifted, tfr, ebno, tfr, 1e-3) - 0.5) < 1e-9


def test_gap_requires_bracketing():
    ebno = np.array([1.0, 2.0])
    tfr = np.array([1e-2, 1e-3])
    with pytest.raises(ValueError):
        gap_to_bound(ebno, tfr, ebno, tfr, 1e-6)


def test_query_validation():
    with pytest.raises(ValueError):
        BoundQuery(100, 100, 1.0)
    with pytest.raises(ValueError):
        bi_awgn_capacity_dispersion(0.0)
