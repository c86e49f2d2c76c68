"""Identify a hidden localization domain by probing the operator with basis vectors.

A probe sends the ``n``-th basis function (Hermite function on the signal
side, monomial ``e_n`` on the Fock side) through a black-box operator and
measures how far the response is from a multiple of the input. If every
probe comes back as an eigenvector, the domain is radial under the
indicator-symbol hypothesis, and the eigenvalue of each probe pins down the
radius through ``lambda_n = P(n + 1, pi R^2)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, NamedTuple

import numpy as np
from scipy import optimize
from scipy import special as sp

from .errors import DegenerateSpectrum, FitFailure, OutOfRange, TruncationRisk
from .geometry import Domain, QuadratureSpec, RadialMeasure, monomial_moment
from .special_fn import regularized_incomplete_beta, regularized_lower_gamma

CAVEAT = "assuming the symbol is an indicator of a simply connected set"
GUARD = 8


class Verdict(str, Enum):
    DISK_CENTERED = "DiskCentered"
    RADIAL_MULTI_RING = "RadialMultiRing"
    NOT_RADIAL = "NotRadial"
    INCONCLUSIVE = "Inconclusive"


@dataclass
class BlackBox:
    """Opaque linear map on coefficient vectors of length ``dimension``."""

    action: Callable
    dimension: int
    basis_tag: str = "fock"
    alpha: float = 0.0

    def __post_init__(self):
        if self.basis_tag not in ("fock", "bergman"):
            raise ValueError(f"unknown basis tag {self.basis_tag!r}")

    @classmethod
    def from_matrix(cls, matrix, basis_tag="fock", alpha=0.0):
        M = np.asarray(matrix)
        if M.ndim != 2 or M.shape[0] != M.shape[1]:
            raise ValueError(f"black-box matrix must be square, got shape {M.shape}")
        return cls(lambda v: M @ v, M.shape[0], basis_tag, alpha)

    @classmethod
    def from_operator(cls, op):
        tag = "fock" if op.measure.kind == "fock" else "bergman"
        return cls.from_matrix(op.matrix, tag, op.measure.alpha)

    def __call__(self, v):
        return np.asarray(self.action(np.asarray(v, dtype=complex)), dtype=complex)

    def linearity_defect(self, rng=None, trials=3):
        """Worst ``|T(av+bw) - aTv - bTw| / (|a||v| + |b||w|)`` over random probes."""
        rng = np.random.default_rng(0) if rng is None else rng
        worst = 0.0
        for _ in range(trials):
            v = rng.standard_normal(self.dimension) + 1j * rng.standard_normal(self.dimension)
            w = rng.standard_normal(self.dimension) + 1j * rng.standard_normal(self.dimension)
            a, b = rng.standard_normal(2) + 1j * rng.standard_normal(2)
            lhs = self(a * v + b * w) - a * self(v) - b * self(w)
            scale = abs(a) * np.linalg.norm(v) + abs(b) * np.linalg.norm(w)
            worst = max(worst, float(np.linalg.norm(lhs) / scale))
        return worst


@dataclass
class ProbeRecord:
    n: int
    lambda_est: float
    residual: float
    lambda_imag: float = 0.0


@dataclass
class ProbeReport:
    probes: list
    verdict: Verdict
    radius_estimate: float | None = None
    ring_estimates: list | None = None
    consistency: float | None = None
    radius_per_probe: dict = field(default_factory=dict)
    tol: float = 1e-6
    consistency_tol: float = 1e-3
    flags: list = field(default_factory=list)
    caveat: str = CAVEAT

    def to_dict(self):
        return {
            "probes": [{"n": p.n, "lambda": p.lambda_est, "residual": p.residual,
                        "lambda_imag": p.lambda_imag} for p in self.probes],
            "verdict": self.verdict.value,
            "radius": self.radius_estimate,
            "rings": None if self.ring_estimates is None else [list(r) for r in self.ring_estimates],
            "consistency": self.consistency,
            "radius_per_probe": {str(k): v for k, v in self.radius_per_probe.items()},
            "tol": self.tol,
            "consistency_tol": self.consistency_tol,
            "flags": list(self.flags),
            "caveat": self.caveat,
        }


def probe_residual(box: BlackBox, n: int, guard: int = GUARD):
    """Send basis vector ``n`` through ``box``; returns ``(lambda_est, residual, lambda_imag)``."""
    if n < 0 or n > box.dimension - guard:
        raise TruncationRisk(f"probe {n} is within {guard} of the basis size {box.dimension}")
    delta = np.zeros(box.dimension, dtype=complex)
    delta[n] = 1.0
    out = box(delta)
    lam = out[n]
    delta[n] = lam.real
    return float(lam.real), float(np.linalg.norm(out - delta)), float(lam.imag)


def forward_disk(n, R, basis_tag="fock", alpha=0.0):
    """Eigenvalue of probe ``n`` for a centered disk of radius ``R``."""
    n = np.asarray(n)
    if basis_tag == "fock":
        return regularized_lower_gamma(n + 1, math.pi * np.square(R))
    return regularized_incomplete_beta(n + 1, alpha + 1, np.minimum(np.square(R), 1.0))


def forward_ring(n, r_in, r_out, basis_tag="fock", alpha=0.0):
    return forward_disk(n, r_out, basis_tag, alpha) - forward_disk(n, r_in, basis_tag, alpha)


def estimate_radius(lambda_est: float, n: int, basis_tag: str = "fock", alpha: float = 0.0) -> float:
    """Radius ``R`` of the centered disk whose ``n``-th eigenvalue is ``lambda_est``."""
    if not 0 < lambda_est < 1:
        raise OutOfRange(f"lambda_est={lambda_est} outside (0, 1)")
    if basis_tag == "fock":
        x = float(sp.gammaincinv(n + 1, lambda_est))
        # one Newton step in x = pi R^2 against the forward model
        for _ in range(2):
            dens = math.exp(n * math.log(x) - x - math.lgamma(n + 1)) if x > 0 else 0.0
            if dens > 0:
                x -= (float(regularized_lower_gamma(n + 1, x)) - lambda_est) / dens
        return math.sqrt(max(x, 0.0) / math.pi)
    u = float(sp.betaincinv(n + 1, alpha + 1, lambda_est))
    for _ in range(2):
        if 0 < u < 1:
            log_dens = (n * math.log(u) + alpha * math.log1p(-u)
                        - (math.lgamma(n + 1) + math.lgamma(alpha + 1) - math.lgamma(n + alpha + 2)))
            u -= (float(regularized_incomplete_beta(n + 1, alpha + 1, u)) - lambda_est) / math.exp(log_dens)
    return math.sqrt(min(max(u, 0.0), 1.0))


class RingFit(NamedTuple):
    r_in: float
    r_out: float
    fit_residual: float


def ring_fit(lambdas, basis_tag="fock", alpha=0.0, fit_tol=1e-5, r_max=None) -> RingFit:
    """Least-squares fit of a single centered annulus to ``[(n, lambda), ...]``.

    A coarse grid over ``(r_in, r_out)`` seeds a bounded local refinement.
    ``fit_residual`` is the largest absolute misfit; above ``fit_tol`` the fit
    is rejected with :class:`FitFailure`.
    """
    data = [(int(n), float(lam)) for n, lam in lambdas]
    if len(data) < 3:
        raise ValueError("ring_fit needs at least 3 probes")
    ns = np.array([d[0] for d in data])
    lam = np.array([d[1] for d in data])
    if r_max is None:
        r_max = 4.0 if basis_tag == "fock" else 1.0

    def resid(p):
        r_in, width = p
        return forward_ring(ns, r_in, min(r_in + width, r_max), basis_tag, alpha) - lam

    grid = np.linspace(0.0, r_max, 81)
    best, best_cost = None, math.inf
    for i, a in enumerate(grid):
        for b in grid[i + 1:]:
            cost = float(np.sum(resid((a, b - a)) ** 2))
            if cost < best_cost:
                best, best_cost = (a, b - a), cost
    sol = optimize.least_squares(resid, best, bounds=([0.0, 0.0], [r_max, r_max]),
                                 xtol=1e-15, ftol=1e-15, gtol=1e-15, max_nfev=2000)
    r_in, width = sol.x
    misfit = float(np.max(np.abs(resid(sol.x))))
    if misfit > fit_tol:
        raise FitFailure(f"single-annulus fit leaves misfit {misfit:.3e} > {fit_tol:.1e}")
    return RingFit(float(r_in), float(min(r_in + width, r_max)), misfit)


def disk_verdict(box: BlackBox, probes=range(8), tol: float = 1e-6,
                 consistency_tol: float = 1e-3) -> ProbeReport:
    """Decide whether the hidden domain is a centered disk and estimate its size.

    The verdict is only licensed under the hypothesis that the hidden symbol
    is the indicator of a simply connected set (or of nested rings); nonnegative
    non-radial symbols can have basis functions as eigenvectors too.
    """
    probes = list(probes)
    if not probes:
        raise ValueError("at least one probe is required")
    records = [ProbeRecord(n, *probe_residual(box, n)) for n in probes]
    lams = np.array([r.lambda_est for r in records])
    if np.all(lams < 10 * tol):
        raise DegenerateSpectrum("all probe eigenvalues are below 10*tol; domain too small to identify")
    report = ProbeReport(records, Verdict.INCONCLUSIVE, tol=tol, consistency_tol=consistency_tol)
    if any(r.residual > tol for r in records):
        report.verdict = Verdict.NOT_RADIAL
        return report
    if np.any(lams > 1 + tol) or np.any(lams < -tol):
        report.flags.append("lambda_out_of_range")
        return report
    informative = [r for r in records if 10 * tol <= r.lambda_est <= 1 - 10 * tol]
    if not informative:
        report.flags.append("no_informative_probe")
        return report
    radii = {r.n: estimate_radius(r.lambda_est, r.n, box.basis_tag, box.alpha) for r in informative}
    report.radius_per_probe = radii
    spread = max(radii.values()) - min(radii.values())
    report.consistency = spread
    if spread <= consistency_tol:
        report.verdict = Verdict.DISK_CENTERED
        report.radius_estimate = float(np.mean(list(radii.values())))
        return report
    if len(records) >= 3:
        try:
            fit = ring_fit([(r.n, r.lambda_est) for r in records], box.basis_tag, box.alpha)
        except FitFailure:
            report.flags.append("ring_fit_failed")
            return report
        report.verdict = Verdict.RADIAL_MULTI_RING
        report.ring_estimates = [(fit.r_in, fit.r_out)]
        return report
    report.flags.append("too_few_probes_for_ring_fit")
    return report


class DoubleOrthResult(NamedTuple):
    passed: bool
    worst_k: int
    worst_value: float
    first_failing_k: int | None


def double_orth_test(domain: Domain, measure: RadialMeasure, m: int, k_max: int, tol: float,
                     quad: QuadratureSpec = QuadratureSpec()) -> DoubleOrthResult:
    """Check ``|int_domain |z|^{2m} conj(z)^k dmu| <= tol`` for ``k = 1..k_max``."""
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    values = [abs(monomial_moment(domain, measure, m, k, quad)[0]) for k in range(1, k_max + 1)]
    worst = int(np.argmax(values))
    failing = [k for k, v in enumerate(values, start=1) if v > tol]
    return DoubleOrthResult(not failing, worst + 1, float(values[worst]), failing[0] if failing else None)
