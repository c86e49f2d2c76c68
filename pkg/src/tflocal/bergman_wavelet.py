"""Wavelet-side analogue in the unit-disc model of weighted Bergman spaces.

Upper half-plane quantities are carried to the disc by the Cayley map
``w = (u - i) / (u + i)``. On the disc the monomials

    e_n^alpha(w) = sqrt(Gamma(n + 2 + alpha) / (n! Gamma(2 + alpha))) w^n

are orthonormal for ``(alpha + 1) (1 - |w|^2)^alpha dA`` and stay orthogonal
on every centered disk, so the same Galerkin machinery as in the Fock case
applies with a different radial weight.

Constants on the signal side are fixed so that the relations checked here
hold literally:

* ``Ber_alpha f(z) = c_alpha int_0^inf t^((alpha+1)/2) fhat(t) exp(i z t) dt`` with
  ``c_alpha^2 = 2^alpha / Gamma(alpha + 1)``, which makes ``Ber_alpha`` an
  isometry from ``L^2(0, inf)`` onto the Bergman space with weight
  ``s^alpha dx ds / pi``.
* ``psi_fourier_side`` is normalized so that ``Ber_alpha psi_n = Psi_n``.
* ``T_alpha Psi_n^alpha = kappa_alpha e_n^alpha`` with a unimodular-times-power-of-two
  constant ``kappa_alpha`` that does not depend on ``n``.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .errors import NonConvergence
from .fock_op import GalerkinOperator, galerkin_matrix
from .geometry import Disk, Domain, HalfPlanePseudoDisk, QuadratureSpec, RadialMeasure
from .special_fn import laguerre_fn, laguerre_poly, regularized_incomplete_beta

PseudoDisk = HalfPlanePseudoDisk
BOUNDARY_MARGIN = 1e-6


@dataclass(frozen=True)
class BergmanParams:
    alpha: float
    N: int = 24

    def __post_init__(self):
        if not self.alpha > -1:
            raise ValueError("alpha must exceed -1")
        if self.N < 1:
            raise ValueError("basis size must be at least 1")

    @property
    def measure(self):
        return RadialMeasure.bergman(self.alpha)


def _log_norm(n, alpha):
    return 0.5 * (math.lgamma(n + 2 + alpha) - math.lgamma(n + 1) - math.lgamma(2 + alpha))


def e_n_alpha(n: int, alpha: float, w):
    """Orthonormal monomial ``e_n^alpha(w)`` of the weighted Bergman space on the disc."""
    w = np.asarray(w, dtype=complex)
    if np.any(np.abs(w) >= 1):
        raise ValueError("e_n_alpha requires |w| < 1")
    if n == 0:
        return np.ones(w.shape, dtype=complex)
    r = np.abs(w)
    with np.errstate(divide="ignore"):
        mag = np.exp(_log_norm(n, alpha) + n * np.log(r))
    return np.where(r > 0, mag * np.exp(1j * n * np.angle(w)), 0.0)


def disc_eigenvalue_closed(r, n, alpha):
    """``C(r, n) = I_{r^2}(n + 1, alpha + 1)``: mass of ``|e_n^alpha|^2`` on the disk of radius ``r``."""
    r = np.asarray(r, dtype=float)
    if np.any(r < 0) or np.any(r > 1):
        raise ValueError("r must lie in [0, 1]")
    return regularized_incomplete_beta(np.asarray(n) + 1, alpha + 1, r * r)


def bergman_galerkin(domain: Domain, alpha: float, N: int,
                     quad: QuadratureSpec = QuadratureSpec()) -> GalerkinOperator:
    """Galerkin matrix ``int_domain e_n^alpha conj(e_m^alpha) dmu_alpha`` for a domain inside the disc."""
    if domain.bounding_radius > 1 - BOUNDARY_MARGIN * (1 - 1e-9):
        raise ValueError(f"domain must lie within radius 1 - {BOUNDARY_MARGIN:g} of the origin")
    measure = RadialMeasure.bergman(alpha)
    M, err = galerkin_matrix(domain, measure, N, quad)
    return GalerkinOperator(M, measure, f"bergman:{domain.to_dict()}", quad.target_abs_tol, err)


# ---------------------------------------------------------------------------
# Cayley geometry


def cayley_to_disc(u):
    """``w = (u - i) / (u + i)`` from the upper half-plane to the unit disc."""
    u = np.asarray(u, dtype=complex)
    if np.any(u.imag <= 0):
        raise ValueError("cayley_to_disc requires Im u > 0")
    return (u - 1j) / (u + 1j)


def cayley_to_halfplane(w):
    """``u = i (1 + w) / (1 - w)`` from the unit disc to the upper half-plane."""
    w = np.asarray(w, dtype=complex)
    if np.any(np.abs(w) >= 1):
        raise ValueError("cayley_to_halfplane requires |w| < 1")
    return 1j * (1 + w) / (1 - w)


def rho_halfplane(z1, z2):
    """Pseudohyperbolic distance ``|(z1 - z2) / (z1 - conj z2)|`` on the upper half-plane."""
    z1 = np.asarray(z1, dtype=complex)
    z2 = np.asarray(z2, dtype=complex)
    if np.any(z1.imag <= 0) or np.any(z2.imag <= 0):
        raise ValueError("rho_halfplane requires points in the upper half-plane")
    return np.abs((z1 - z2) / (z1 - np.conj(z2)))


def rho_disc(w1, w2):
    """Pseudohyperbolic distance ``|(w1 - w2) / (1 - w1 conj w2)|`` on the unit disc."""
    w1 = np.asarray(w1, dtype=complex)
    w2 = np.asarray(w2, dtype=complex)
    if np.any(np.abs(w1) >= 1) or np.any(np.abs(w2) >= 1):
        raise ValueError("rho_disc requires points in the unit disc")
    return np.abs((w1 - w2) / (1 - w1 * np.conj(w2)))


def disc_automorphism(a, w):
    """Involutive disc automorphism ``(a - w) / (1 - conj(a) w)`` swapping ``a`` and 0."""
    if abs(a) >= 1:
        raise ValueError("automorphism parameter must lie in the unit disc")
    w = np.asarray(w, dtype=complex)
    return (a - w) / (1 - np.conj(a) * w)


def map_pseudodisk(delta: PseudoDisk) -> Disk:
    """Euclidean disk in the unit disc equal to the Cayley image of ``delta``."""
    return delta.disk


def pseudodisk_from_disc_radius(r: float) -> PseudoDisk:
    """Half-plane pseudodisk centered at ``i`` whose Cayley image is ``Disk(0, r)``."""
    return PseudoDisk(1j, float(r))


# ---------------------------------------------------------------------------
# Laguerre side


def laguerre_laplace_check(n: int, alpha: float, s: float, tol: float = 1e-10):
    """Compare ``int_0^inf x^alpha L_n^alpha(x) exp(-s x) dx`` with its closed form.

    Returns ``(lhs, rhs, abs_err)``; the left side is adaptive quadrature.
    """
    if not alpha > -1:
        raise ValueError("alpha must exceed -1")
    if not s > 1:
        raise ValueError("s must exceed 1")
    poly = lambda x: laguerre_poly(n, alpha, x) * math.exp(-s * x)
    # algebraic weight handles x^alpha at the origin
    head, e1 = integrate.quad(poly, 0.0, 1.0, weight="alg", wvar=(alpha, 0.0),
                              epsabs=1e-14, epsrel=1e-13, limit=200)
    with warnings.catch_warnings():
        # the tail is tiny for large s; quad flags roundoff but its estimate stays valid
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        tail, e2 = integrate.quad(lambda x: x ** alpha * poly(x), 1.0, np.inf,
                                  epsabs=1e-14, epsrel=1e-13, limit=200)
    if e1 + e2 > tol:
        raise NonConvergence(f"Laplace-Laguerre quadrature error {e1 + e2:.2e} above {tol:.1e}",
                             err_estimate=e1 + e2)
    lhs = head + tail
    rhs = math.exp(math.lgamma(alpha + n + 1) - math.lgamma(n + 1)) * s ** (-alpha - n - 1) * (s - 1) ** n
    return lhs, rhs, abs(lhs - rhs)


def c_alpha(alpha: float) -> float:
    """Normalization of ``Ber_alpha`` making it isometric onto ``A_alpha`` with ``s^alpha dx ds / pi``."""
    return math.sqrt(2.0 ** alpha / math.gamma(alpha + 1))


def psi_coefficient(n: int, alpha: float) -> complex:
    """Constant ``A_n`` with ``F psi_n^alpha(t) = A_n l_n^(alpha+1)(2t)`` and ``Ber_alpha psi_n^alpha = Psi_n^alpha``."""
    log_mag = (-(2 * alpha + 1) * math.log(2) - 0.5 * (alpha + 1) * math.log(2) - math.log(c_alpha(alpha))
               + 0.5 * (math.lgamma(n + 1) - math.lgamma(n + 2 + alpha) - math.lgamma(2 + alpha)))
    return math.exp(log_mag) * cmath.exp(-0.5j * math.pi * (alpha + 2))


def psi_fourier_side(n: int, alpha: float, t):
    """Fourier-side wavelet basis function ``F psi_n^alpha(t)``, zero for ``t < 0``."""
    if not alpha > -1:
        raise ValueError("alpha must exceed -1")
    return psi_coefficient(n, alpha) * laguerre_fn(n, alpha + 1, 2 * np.asarray(t, dtype=float))


def Psi_n_alpha(n: int, alpha: float, z):
    """``Psi_n^alpha(z) = 4^-(alpha+1/2) K_n ((z-i)/(z+i))^n (z+i)^-(alpha+2)`` on the upper half-plane."""
    z = np.asarray(z, dtype=complex)
    if np.any(z.imag <= 0):
        raise ValueError("Psi_n_alpha requires Im z > 0")
    pref = math.exp(-(2 * alpha + 1) * math.log(2) + _log_norm(n, alpha))
    return pref * ((z - 1j) / (z + 1j)) ** n * (z + 1j) ** (-(alpha + 2))


def bergman_transform_numeric(fhat, alpha: float, z: complex, T: float | None = None,
                              tol: float = 1e-10):
    """``Ber_alpha`` of a Fourier-side function by quadrature on ``(0, T)``.

    ``fhat`` is either a callable on ``[0, inf)`` or a pair ``(t, values)`` of
    samples on a uniform grid starting at 0. Returns ``(value, tail_bound)``
    where ``tail_bound`` is ``|integrand(T)| / Im z``, the exponential-decay
    estimate of the neglected tail.
    """
    z = complex(z)
    if z.imag <= 0:
        raise ValueError("z must lie in the upper half-plane")
    c = c_alpha(alpha)
    p = 0.5 * (alpha + 1)
    if callable(fhat):
        T = 80.0 / (1.0 + z.imag) if T is None else T
        kern = lambda t: t ** p * fhat(t) * cmath.exp(1j * z * t)
        re, e1 = integrate.quad(lambda t: complex(kern(t)).real, 0.0, T, epsabs=1e-14, epsrel=1e-12, limit=400)
        im, e2 = integrate.quad(lambda t: complex(kern(t)).imag, 0.0, T, epsabs=1e-14, epsrel=1e-12, limit=400)
        if e1 + e2 > tol:
            raise NonConvergence(f"Bergman transform quadrature error {e1 + e2:.2e}", err_estimate=e1 + e2)
        return c * complex(re, im), abs(complex(kern(T))) / z.imag
    t, vals = (np.asarray(a) for a in fhat)
    integrand = t ** p * vals * np.exp(1j * z * t)
    return c * complex(integrate.simpson(integrand, x=t)), float(abs(integrand[-1])) / z.imag


def translation_constant(alpha: float) -> complex:
    """``kappa_alpha`` in ``T_alpha Psi_n^alpha = kappa_alpha e_n^alpha``."""
    return 2.0 ** (-2.5 * alpha - 2) * cmath.exp(-0.5j * math.pi * (alpha + 2))


def T_alpha(F, alpha: float, w):
    """``(T_alpha F)(w) = 2^(alpha/2 + 1) (1 - w)^-(alpha+2) F(i (1 + w) / (1 - w))``."""
    w = np.asarray(w, dtype=complex)
    return 2.0 ** (alpha / 2 + 1) * (1 - w) ** (-(alpha + 2)) * F(cayley_to_halfplane(w))
