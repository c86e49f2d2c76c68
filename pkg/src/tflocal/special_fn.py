"""Special functions: Hermite functions, incomplete gamma/beta, Laguerre.

Hermite functions follow the time-frequency convention where the window is
``h_0(t) = 2**(1/4) * exp(-pi t**2)``; the family is orthonormal in
L^2(R) and ``h_n`` has a positive leading coefficient, so the Bargmann
transform sends ``h_n`` to the normalized monomial ``sqrt(pi**n / n!) z**n``.
"""

import math

import numpy as np
from scipy import special as sp

_RESCALE = 1e150


def hermite_all(n_max, t):
    """Evaluate ``h_0 .. h_{n_max}`` at the points ``t``.

    Returns an array of shape ``(n_max + 1,) + np.shape(t)``.

    The normalized three-term recurrence is run on the polynomial part
    with a running log-scale, and the Gaussian factor is applied last, so
    neither large orders nor large ``|t|`` overflow.
    """
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    t = np.asarray(t, dtype=float)
    if not np.all(np.isfinite(t)):
        raise ValueError("t must be finite")
    x = math.sqrt(2.0 * math.pi) * t
    out = np.empty((n_max + 1,) + t.shape)
    log_scale = np.zeros(t.shape)
    prev = np.zeros(t.shape)
    cur = np.full(t.shape, 2.0 ** 0.25)
    gauss_log = -math.pi * t * t
    out[0] = cur * np.exp(gauss_log)
    for k in range(n_max):
        nxt = math.sqrt(2.0 / (k + 1)) * x * cur - math.sqrt(k / (k + 1)) * prev
        prev, cur = cur, nxt
        big = np.abs(cur) > _RESCALE
        if np.any(big):
            factor = np.where(big, np.abs(cur), 1.0)
            cur = cur / factor
            prev = prev / factor
            log_scale = log_scale + np.log(factor)
        out[k + 1] = cur * np.exp(log_scale + gauss_log)
    return out


def hermite_h(n, t):
    """L^2-orthonormal Hermite function ``h_n(t)``, with ``h_0 = 2^(1/4) e^{-pi t^2}``."""
    if n < 0:
        raise ValueError("Hermite order must be non-negative")
    return hermite_all(n, t)[n]


def regularized_lower_gamma(s, x):
    """Regularized lower incomplete gamma ``P(s, x) = gamma(s, x) / Gamma(s)``."""
    s_arr = np.asarray(s, dtype=float)
    x_arr = np.asarray(x, dtype=float)
    if np.any(s_arr <= 0):
        raise ValueError("regularized_lower_gamma requires s > 0")
    if np.any(x_arr < 0) or np.any(np.isnan(x_arr)):
        raise ValueError("regularized_lower_gamma requires x >= 0")
    return sp.gammainc(s_arr, x_arr)


def regularized_incomplete_beta(a, b, x):
    """Regularized incomplete beta ``I_x(a, b)`` for ``a, b > 0`` and ``0 <= x <= 1``."""
    a_arr = np.asarray(a, dtype=float)
    b_arr = np.asarray(b, dtype=float)
    x_arr = np.asarray(x, dtype=float)
    if np.any(a_arr <= 0) or np.any(b_arr <= 0):
        raise ValueError("regularized_incomplete_beta requires a, b > 0")
    if np.any(x_arr < 0) or np.any(x_arr > 1) or np.any(np.isnan(x_arr)):
        raise ValueError("regularized_incomplete_beta requires 0 <= x <= 1")
    return sp.betainc(a_arr, b_arr, x_arr)


def laguerre_poly(n, alpha, x):
    """Generalized Laguerre polynomial ``L_n^alpha(x)`` by forward recurrence."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if alpha <= -1:
        raise ValueError("alpha must exceed -1")
    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    if n == 0:
        return prev
    cur = 1.0 + alpha - x
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1 + alpha - x) * cur - (k + alpha) * prev) / (k + 1)
    return cur


def laguerre_fn(n, alpha, x):
    """Laguerre function ``l_n^alpha(x) = 1_{x>=0} e^{-x/2} x^{alpha/2} L_n^alpha(x)``."""
    x = np.asarray(x, dtype=float)
    xp = np.where(x >= 0, x, 0.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        val = np.exp(-xp / 2) * xp ** (alpha / 2) * laguerre_poly(n, alpha, xp)
    return np.where(x >= 0, val, 0.0)
