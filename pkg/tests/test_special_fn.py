import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from tflocal.special_fn import (hermite_all, hermite_h, laguerre_fn, laguerre_poly, regularized_incomplete_beta,
                                regularized_lower_gamma)

# Reference values from explicit Hermite polynomials (numpy.polynomial.hermite) and mpmath at 30 digits.
H5_AT_03 = 0.43241452924037754
H10_AT_M07 = -0.005314549965441975
H1_AT_05 = 0.9610331019066873
P_4_PI = 0.384456296955979184898581591434
P_2_PI = 0.821025553585931057469540385738
P_35_22 = 0.2672769164361348019239828305
I03_2_35 = 0.411702502342564756933272077662
L5_15_AT_23 = -0.515480666666667189510656991539


def test_hermite_ground_state():
    assert hermite_h(0, 0.0) == pytest.approx(2 ** 0.25, abs=1e-15)
    assert hermite_h(1, 0.0) == 0.0


@pytest.mark.parametrize("n,t,ref", [(5, 0.3, H5_AT_03), (10, -0.7, H10_AT_M07), (1, 0.5, H1_AT_05)])
def test_hermite_against_explicit_polynomials(n, t, ref):
    assert hermite_h(n, t) == pytest.approx(ref, abs=1e-13)


def test_hermite_orthonormal_by_trapezoid():
    t = np.linspace(-12, 12, 24001)
    H = hermite_all(40, t)
    G = (H * (t[1] - t[0])) @ H.T
    assert np.max(np.abs(G - np.eye(41))) < 1e-10


def test_hermite_high_order_finite():
    t = np.linspace(-30, 30, 601)
    H = hermite_all(128, t)
    assert np.all(np.isfinite(H))
    assert np.max(np.abs(H[128])) < 2.0


@given(st.integers(0, 30), st.floats(-6, 6))
def test_hermite_parity(n, t):
    assert hermite_h(n, -t) == pytest.approx((-1) ** n * hermite_h(n, t), abs=1e-12)


def test_hermite_rejects_bad_input():
    with pytest.raises(ValueError):
        hermite_h(-1, 0.0)
    with pytest.raises(ValueError):
        hermite_all(3, [np.nan])


def test_lower_gamma_values():
    assert regularized_lower_gamma(1, math.pi) == pytest.approx(1 - math.exp(-math.pi), abs=1e-15)
    assert regularized_lower_gamma(4, math.pi) == pytest.approx(P_4_PI, abs=1e-14)
    assert regularized_lower_gamma(2, math.pi) == pytest.approx(P_2_PI, abs=1e-14)
    assert regularized_lower_gamma(3.5, 2.2) == pytest.approx(P_35_22, abs=1e-14)
    assert regularized_lower_gamma(3, 0.0) == 0.0


def test_incomplete_beta_values():
    assert regularized_incomplete_beta(2, 3.5, 0.3) == pytest.approx(I03_2_35, abs=1e-14)
    assert regularized_incomplete_beta(1, 1, 0.37) == pytest.approx(0.37, abs=1e-15)


@given(st.floats(0.1, 40), st.floats(0, 80), st.floats(0, 5))
def test_lower_gamma_monotone_in_x(s, x, dx):
    assert regularized_lower_gamma(s, x + dx) >= regularized_lower_gamma(s, x) - 1e-15


def test_special_domain_errors():
    with pytest.raises(ValueError):
        regularized_lower_gamma(0, 1.0)
    with pytest.raises(ValueError):
        regularized_lower_gamma(1, -1.0)
    with pytest.raises(ValueError):
        regularized_incomplete_beta(1, 1, 1.5)


def test_laguerre_values():
    assert laguerre_poly(5, 1.5, 2.3) == pytest.approx(L5_15_AT_23, abs=1e-12)
    assert laguerre_poly(1, 0.0, 2.0) == pytest.approx(-1.0)
    assert laguerre_fn(3, 1.0, -0.5) == 0.0


def test_laguerre_orthogonality():
    from scipy import integrate
    for m, n in [(2, 3), (1, 4), (3, 3)]:
        val, _ = integrate.quad(lambda x: laguerre_fn(m, 1.5, x) * laguerre_fn(n, 1.5, x), 0, np.inf, limit=200)
        ref = math.gamma(n + 2.5) / math.factorial(n) if m == n else 0.0
        assert val == pytest.approx(ref, abs=1e-9)
