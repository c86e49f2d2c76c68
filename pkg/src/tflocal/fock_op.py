"""Localization and Toeplitz operators on Bargmann-Fock space as Galerkin matrices.

Everything is expressed in the orthonormal monomial basis
``e_n(z) = sqrt(pi^n / n!) z^n`` of the Fock space with weight
``exp(-pi |z|^2)``. The matrix of the Toeplitz operator with symbol ``s`` is
``M[m, n] = int s(z) e_n(z) conj(e_m(z)) exp(-pi |z|^2) dz``; for an indicator
symbol this is the time-frequency localization operator seen through the
Bargmann transform, and the Hermite function ``h_n`` corresponds to ``e_n``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import SolverFailure
from .geometry import (Annulus, Disk, Domain, Empty, QuadratureSpec, RadialMeasure, Whole,
                       fock_cutoff, polar_rule, refine)
from .special_fn import regularized_incomplete_beta, regularized_lower_gamma

_CHUNK = 100_000


@dataclass(frozen=True, eq=False)
class GalerkinOperator:
    """Finite section of a localization operator in a normalized-monomial basis."""

    matrix: np.ndarray
    measure: RadialMeasure
    provenance: str
    quad_tol: float = 0.0
    err_estimate: float = 0.0

    @property
    def N(self):
        return self.matrix.shape[0]

    def hermitian_defect(self):
        return float(np.max(np.abs(self.matrix - self.matrix.conj().T), initial=0.0))


@dataclass(frozen=True, eq=False)
class Spectrum:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    residual_norm: float


@dataclass(frozen=True)
class SymbolFn:
    """Symbol ``sigma(r e^{i theta}) = s0(r) + s1(r) (e^{i p theta} + e^{-i p theta})``.

    ``general``, when given, replaces the radial/angular form entirely.
    ``breakpoints`` lists radii where the radial parts jump.
    """

    radial0: Callable | None = None
    radial1: Callable | None = None
    angular_order: int = 0
    general: Callable | None = None
    breakpoints: tuple = ()
    description: str = "symbol"
    meta: dict = field(default_factory=dict, compare=False)

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        if self.general is not None:
            return np.asarray(self.general(z))
        r = np.abs(z)
        val = np.asarray(self.radial0(r), dtype=float) if self.radial0 is not None else np.zeros(r.shape)
        if self.radial1 is not None and self.angular_order:
            val = val + np.asarray(self.radial1(r)) * 2 * np.cos(self.angular_order * np.angle(z))
        return val


def normalized_monomial(n, z):
    """``e_n(z) = sqrt(pi^n / n!) z^n``, evaluated in the log domain."""
    z = np.asarray(z, dtype=complex)
    if n == 0:
        return np.ones(z.shape, dtype=complex)
    r = np.abs(z)
    with np.errstate(divide="ignore"):
        logmag = 0.5 * (n * math.log(math.pi) - math.lgamma(n + 1)) + n * np.log(r)
    return np.where(r > 0, np.exp(logmag) * np.exp(1j * n * np.angle(z)), 0.0)


def weighted_basis(measure: RadialMeasure, N: int, z):
    """Columns ``e_n(z) sqrt(mu(|z|))`` for ``n < N``, built by a bounded recurrence."""
    z = np.asarray(z, dtype=complex)
    out = np.empty((len(z), N), dtype=complex)
    out[:, 0] = np.sqrt(measure.weight(np.abs(z)))
    for n in range(N - 1):
        if measure.kind == "fock":
            ratio = math.sqrt(math.pi / (n + 1))
        else:
            ratio = math.sqrt((n + 2 + measure.alpha) / (n + 1))
        out[:, n + 1] = out[:, n] * z * ratio
    return out


def galerkin_matrix(domain: Domain, measure: RadialMeasure, N: int, quad: QuadratureSpec,
                    symbol: Callable | None = None, extra_breaks=()):
    """Quadrature Gram matrix ``int_domain s e_n conj(e_m) dmu``; returns ``(M, err_estimate)``."""
    r_max = fock_cutoff(N - 1) if measure.kind == "fock" else None

    def compute(n_r, n_t):
        z, w = polar_rule(domain, measure, n_r, n_t, r_max=r_max, extra_breaks=extra_breaks)
        M = np.zeros((N, N), dtype=complex)
        for lo in range(0, len(z), _CHUNK):
            zc, wc = z[lo:lo + _CHUNK], w[lo:lo + _CHUNK]
            # polar_rule weights already carry mu; the basis carries sqrt(mu) twice
            wc = wc / measure.weight(np.abs(zc))
            if symbol is not None:
                wc = wc * symbol(zc)
            E = weighted_basis(measure, N, zc)
            M += E.conj().T @ (wc[:, None] * E)
        return M

    return refine(compute, quad, what="Galerkin matrix")


def disk_spectrum_closed(R, N):
    """Eigenvalues ``P(n + 1, pi R^2)`` of the disk localization operator, ``n < N``."""
    n = np.arange(N)
    if math.isinf(R):
        return np.ones(N)
    return regularized_lower_gamma(n + 1, math.pi * R * R)


def annulus_spectrum_closed(r_in, r_out, N):
    if not 0 <= r_in <= r_out:
        raise ValueError("annulus needs 0 <= r_in <= r_out")
    return disk_spectrum_closed(r_out, N) - (disk_spectrum_closed(r_in, N) if r_in > 0 else 0.0)


def closed_form_diagonal(domain, measure, N):
    """Closed-form diagonal for centered disks, annuli and the empty set; ``None`` otherwise."""
    if isinstance(domain, Empty):
        return np.zeros(N)
    if isinstance(domain, Disk) and domain.center == 0:
        r_in, r_out = 0.0, domain.radius
    elif isinstance(domain, Annulus):
        r_in, r_out = domain.r_in, domain.r_out
    else:
        return None
    if measure.kind == "fock":
        return annulus_spectrum_closed(r_in, r_out, N)
    n = np.arange(N)
    a = measure.alpha
    hi = regularized_incomplete_beta(n + 1, a + 1, r_out ** 2)
    lo = regularized_incomplete_beta(n + 1, a + 1, r_in ** 2) if r_in > 0 else 0.0
    return hi - lo


def assemble_indicator(domain: Domain, N: int, quad: QuadratureSpec = QuadratureSpec(),
                       method: str = "auto", measure: RadialMeasure | None = None) -> GalerkinOperator:
    """Galerkin matrix of the localization operator with indicator symbol of ``domain``.

    ``method="auto"`` uses closed forms for centered disks and annuli and
    quadrature otherwise; ``"quadrature"`` forces quadrature everywhere.
    """
    if N < 1:
        raise ValueError("basis size must be at least 1")
    measure = measure or RadialMeasure.fock()
    if method not in ("auto", "quadrature"):
        raise ValueError(f"unknown assembly method {method!r}")
    if measure.kind == "fock" and math.isinf(domain.bounding_radius) and not isinstance(domain, Whole):
        raise ValueError("domain must be bounded")
    diag = closed_form_diagonal(domain, measure, N) if method == "auto" else None
    if diag is not None:
        return GalerkinOperator(np.diag(diag).astype(complex), measure,
                                f"indicator:{domain.to_dict()}:closed", 0.0, 0.0)
    M, err = galerkin_matrix(domain, measure, N, quad)
    return GalerkinOperator(M, measure, f"indicator:{domain.to_dict()}:quadrature",
                            quad.target_abs_tol, err)


def radial_symbol_spectrum(profile: Callable, N: int, quad: QuadratureSpec = QuadratureSpec(),
                           breakpoints=()):
    """Diagonal ``(pi^n/n!) 2 pi int_0^inf profile(r) r^(2n+1) exp(-pi r^2) dr`` for ``n < N``."""
    r_max = fock_cutoff(N - 1)
    edges = [0.0] + sorted(b for b in breakpoints if 0 < b < r_max) + [r_max]
    n = np.arange(N)
    lg = np.array([math.lgamma(k + 1) for k in n])

    def compute(n_r, _n_t):
        x, w = np.polynomial.legendre.leggauss(n_r)
        total = np.zeros(N)
        for a, b in zip(edges[:-1], edges[1:]):
            r = 0.5 * (b - a) * x + 0.5 * (a + b)
            wr = 0.5 * (b - a) * w * np.asarray(profile(r), dtype=float)
            # 2 pi r * (pi r^2)^n / n! * exp(-pi r^2)
            logt = n[None, :] * np.log(math.pi * r[:, None] ** 2) - lg[None, :] - math.pi * r[:, None] ** 2
            total += (wr * 2 * math.pi * r) @ np.exp(logt)
        return total

    values, _ = refine(compute, quad, what="radial symbol spectrum")
    return values


def assemble_symbol(symbol: SymbolFn, N: int, quad: QuadratureSpec = QuadratureSpec()) -> GalerkinOperator:
    """Galerkin matrix of the Fock-space Toeplitz operator with a bounded symbol."""
    M, err = galerkin_matrix(Whole(), RadialMeasure.fock(), N, quad, symbol=symbol,
                             extra_breaks=symbol.breakpoints)
    return GalerkinOperator(M, RadialMeasure.fock(), f"symbol:{symbol.description}",
                            quad.target_abs_tol, err)


def _shell_moment(power, a, b):
    """``int_a^b r^power exp(-pi r^2) dr`` through the incomplete gamma function."""
    s = (power + 1) / 2
    scale = 0.5 * math.exp(math.lgamma(s) - s * math.log(math.pi))
    return scale * float(regularized_lower_gamma(s, math.pi * b * b) - regularized_lower_gamma(s, math.pi * a * a))


def build_counterexample_symbol(N_target: int, a: float = 0.3, b: float = 1.5,
                                c: float | None = None) -> SymbolFn:
    """Nonnegative, non-radial symbol whose Toeplitz operator has ``e_{N_target}`` as eigenvector.

    ``s1 = 1`` on ``[a, c)`` and ``-beta`` on ``[c, b]``, with ``beta`` chosen so
    that ``int s1(r) r^(3N+2) exp(-pi r^2) dr = 0``; ``s0 = 2 max(1, beta)`` on
    ``[a, b]``; the angular order is ``N_target + 1``.
    """
    if N_target < 0:
        raise ValueError("N_target must be non-negative")
    c = 0.5 * (a + b) if c is None else c
    if not 0 < a < c < b:
        raise ValueError("need 0 < a < c < b for the two-step radial profile")
    power = 3 * N_target + 2
    inner = _shell_moment(power, a, c)
    outer = _shell_moment(power, c, b)
    beta = inner / outer
    height = 2.0 * max(1.0, beta)

    def s1(r):
        r = np.asarray(r, dtype=float)
        return np.where((r >= a) & (r < c), 1.0, np.where((r >= c) & (r <= b), -beta, 0.0))

    def s0(r):
        r = np.asarray(r, dtype=float)
        return np.where((r >= a) & (r <= b), height, 0.0)

    return SymbolFn(radial0=s0, radial1=s1, angular_order=N_target + 1, breakpoints=(a, c, b),
                    description=f"counterexample(N={N_target},a={a},c={c},b={b})",
                    meta={"beta": beta, "a": a, "b": b, "c": c, "N_target": N_target})


def eigendecompose(op: GalerkinOperator) -> Spectrum:
    """Dense Hermitian eigendecomposition with eigenvalues in descending order."""
    M = 0.5 * (op.matrix + op.matrix.conj().T)
    try:
        vals, vecs = np.linalg.eigh(M)
    except np.linalg.LinAlgError as exc:
        raise SolverFailure(f"Hermitian eigensolver failed for N={op.N}: {exc}") from exc
    order = np.argsort(vals)[::-1]
    vals, vecs = vals[order], vecs[:, order]
    resid = np.linalg.norm(M @ vecs - vecs * vals[None, :], axis=0)
    return Spectrum(vals, vecs, float(np.max(resid, initial=0.0)))


def apply(op: GalerkinOperator, coeffs):
    coeffs = np.asarray(coeffs)
    if coeffs.shape[0] != op.N:
        raise ValueError(f"coefficient vector has length {coeffs.shape[0]}, operator is {op.N}x{op.N}")
    return op.matrix @ coeffs


def rotation_phases(N, angle):
    """``diag(exp(i n angle))``; rotating the domain by ``angle`` conjugates M by it."""
    return np.diag(np.exp(1j * angle * np.arange(N)))


def basis_size_for(radius: float) -> int:
    """Basis size capturing every eigenvalue above ~1e-10 for domains inside ``Disk(0, radius)``."""
    area = math.pi * radius * radius
    return int(math.ceil(area + 8 * math.sqrt(area) + 16))
