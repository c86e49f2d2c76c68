"""Acceptance criteria, each at its stated tolerance; verdict lines are printed in the summary."""

import math

import numpy as np
import pytest

from tflocal.bergman_wavelet import (PseudoDisk, Psi_n_alpha, bergman_galerkin, bergman_transform_numeric,
                                     cayley_to_disc, cayley_to_halfplane, disc_eigenvalue_closed,
                                     laguerre_laplace_check, map_pseudodisk, psi_fourier_side, rho_disc,
                                     rho_halfplane)
from tflocal.fock_op import (annulus_spectrum_closed, assemble_indicator, assemble_symbol,
                             build_counterexample_symbol, disk_spectrum_closed, eigendecompose)
from tflocal.frame_lab import Lattice, frame_bounds_estimate
from tflocal.geometry import Annulus, Disk, RadialMeasure, square
from tflocal.inverse_probe import BlackBox, Verdict, disk_verdict, double_orth_test
from tflocal.special_fn import regularized_lower_gamma
from tflocal.stft_bridge import SampledSignal, concentration, hermite_matrix_timedomain

FOCK = RadialMeasure.fock()


def offdiag(M):
    return float(np.max(np.abs(M - np.diag(np.diag(M)))))


def test_1_direct_disk(criterion):
    worst_off, worst_eig = 0.0, 0.0
    for R in (0.5, 1.0, 2.0):
        M = assemble_indicator(Disk(0, R), 24, method="quadrature").matrix
        worst_off = max(worst_off, offdiag(M))
        worst_eig = max(worst_eig, float(np.max(np.abs(np.diag(M).real - disk_spectrum_closed(R, 24)))))
    criterion(1, worst_off <= 1e-8 and worst_eig <= 1e-8,
              f"disk R in {{0.5,1,2}}: max offdiag {worst_off:.2e}, max eig error {worst_eig:.2e} (tol 1e-8)")


def test_2_annulus(criterion):
    op = assemble_indicator(Annulus(0.5, 1.0), 24, method="quadrature")
    ev = np.sort(eigendecompose(op).eigenvalues)
    ref = np.sort(annulus_spectrum_closed(0.5, 1.0, 24))
    err = float(np.max(np.abs(ev - ref)))
    criterion(2, err <= 1e-8, f"annulus(0.5,1) spectrum error {err:.2e} (tol 1e-8)")


def test_3_inverse_procedure(criterion):
    errs = []
    for R in (0.4, 0.8, 1.2, 1.6):
        rep = disk_verdict(BlackBox.from_operator(assemble_indicator(Disk(0, R), 48, method="quadrature")),
                           range(8))
        errs.append(abs(rep.radius_estimate - R) if rep.verdict == Verdict.DISK_CENTERED else math.inf)
    sq = disk_verdict(BlackBox.from_operator(assemble_indicator(square(math.sqrt(math.pi)), 48)), range(8))
    ring = disk_verdict(BlackBox.from_operator(assemble_indicator(Annulus(0.5, 1.0), 48, method="quadrature")),
                        range(8))
    ring_err = (max(abs(ring.ring_estimates[0][0] - 0.5), abs(ring.ring_estimates[0][1] - 1.0))
                if ring.verdict == Verdict.RADIAL_MULTI_RING else math.inf)
    ok = max(errs) <= 1e-4 and sq.verdict == Verdict.NOT_RADIAL and ring_err <= 1e-3
    criterion(3, ok, f"max radius error {max(errs):.2e} (tol 1e-4); square -> {sq.verdict.value}; "
                     f"annulus -> {ring.verdict.value}, ring error {ring_err:.2e} (tol 1e-3)")


def test_4_double_orthogonality(criterion):
    disk_ok = all(double_orth_test(Disk(0, 1.3), FOCK, m, 8, 1e-8).passed for m in range(5))
    sq = double_orth_test(square(math.sqrt(math.pi)), FOCK, 0, 8, 1e-8)
    off = double_orth_test(Disk(0.3, 0.5), FOCK, 0, 8, 1e-8)
    ok = disk_ok and sq.first_failing_k == 4 and sq.worst_value >= 100 * 1e-8 and off.first_failing_k == 1
    criterion(4, ok, f"disk passes m<=4,k<=8: {disk_ok}; square first fails at k={sq.first_failing_k} "
                     f"with |I_04|={sq.worst_value:.3e}; off-center disk first fails at k={off.first_failing_k}")


def test_5_counterexample(criterion):
    parts, ok = [], True
    for k in (0, 1, 2):
        N = 2 * k + 8
        M = assemble_symbol(build_counterexample_symbol(k), N).matrix
        e = np.eye(N)
        r_target = float(np.linalg.norm(M[:, k] - M[k, k] * e[:, k]))
        r_next = float(np.linalg.norm(M[:, k + 1] - M[k + 1, k + 1] * e[:, k + 1]))
        coupling = float(abs(M[2 * k + 1, k]))
        ok &= r_target <= 1e-6 and r_next >= 1e-3 and coupling <= 1e-8
        parts.append(f"k={k}: {r_target:.1e}/{r_next:.2f}/{coupling:.1e}")
    criterion(5, ok, "target residual / next residual / coupling: " + ", ".join(parts))


def test_6_stft_cross_validation(criterion):
    errs = {}
    for name, dom in (("disk", Disk(0, 1.2)), ("annulus", Annulus(0.5, 1.2)), ("square", square(2.0))):
        G = hermite_matrix_timedomain(dom, N=12)
        M = assemble_indicator(dom.reflect(), 12, method="quadrature").matrix
        errs[name] = float(np.max(np.abs(G - M)))
    conc = concentration(SampledSignal.hermite(0), Disk(0, 1.0))
    conc_err = abs(conc - float(regularized_lower_gamma(1, math.pi)))
    ok = max(errs.values()) <= 1e-3 and conc_err <= 1e-3
    detail = ", ".join(f"{k} {v:.1e}" for k, v in errs.items())
    criterion(6, ok, f"entrywise errors {detail} (tol 1e-3); concentration error {conc_err:.1e}")


def test_7_bergman_disc(criterion):
    worst = 0.0
    n = np.arange(17)
    for alpha in (0.0, 0.5, 2.0):
        for r in (0.3, 0.6, 0.9):
            ev = np.diag(bergman_galerkin(Disk(0, r), alpha, 17).matrix).real
            worst = max(worst, float(np.max(np.abs(ev - disc_eigenvalue_closed(r, n, alpha)))))
    edge = max(float(np.max(np.abs(np.diag(bergman_galerkin(Disk(0, 1 - 1e-6), a, 17).matrix) - 1)))
               for a in (0.0, 0.5, 2.0))
    criterion(7, worst <= 1e-8 and edge <= 1e-4,
              f"eigenvalue error {worst:.2e} (tol 1e-8); |C - 1| at r=1-1e-6: {edge:.2e} (tol 1e-4)")


def test_8_cayley_geometry(criterion):
    rng = np.random.default_rng(8)
    u1 = rng.uniform(-3, 3, 1000) + 1j * rng.uniform(0.05, 3, 1000)
    u2 = rng.uniform(-3, 3, 1000) + 1j * rng.uniform(0.05, 3, 1000)
    inv = float(np.max(np.abs(rho_disc(cayley_to_disc(u1), cayley_to_disc(u2)) - rho_halfplane(u1, u2))))
    rho = 0.55
    disk = map_pseudodisk(PseudoDisk(1j, rho))
    w = np.sqrt(rng.uniform(0, 1, 10000)) * np.exp(2j * np.pi * rng.uniform(0, 1, 10000))
    agree = float(np.mean(disk.contains(w) == (rho_halfplane(cayley_to_halfplane(w), 1j) < rho)))
    centered = abs(disk.center) < 1e-12 and abs(disk.radius - rho) < 1e-12
    criterion(8, inv <= 1e-12 and agree >= 0.999 and centered,
              f"Cayley invariance {inv:.1e} (tol 1e-12); Monte Carlo agreement {agree:.4f} (>= 0.999)")


def test_9_laguerre_and_wavelet(criterion):
    lap = max(laguerre_laplace_check(n, a, s)[2] for n in range(9) for a in (0.0, 0.5, 1.5) for s in (1.2, 2.0, 5.0))
    pts = (2j, 0.5 + 1j, -1 + 0.5j, 1 + 3j, 0.25 + 0.75j)
    ber = 0.0
    for alpha in (0.0, 0.5, 1.5):
        for n in (0, 1, 3):
            for z in pts:
                val, _ = bergman_transform_numeric(lambda t: psi_fourier_side(n, alpha, t), alpha, z)
                ber = max(ber, abs(val - complex(Psi_n_alpha(n, alpha, z))))
    criterion(9, lap <= 1e-8 and ber <= 1e-4,
              f"Laplace identity error {lap:.1e} (tol 1e-8); Ber psi vs Psi error {ber:.1e} (tol 1e-4)")


def test_10_frame_experiment(criterion):
    rect = frame_bounds_estimate(Lattice.rectangular(2.0)).cond_est
    hexa = frame_bounds_estimate(Lattice.hexagonal(2.0)).cond_est
    sweep = (1.05, 1.25, 1.5, 2.0, 2.5, 3.0, 4.0)
    conds = [frame_bounds_estimate(getattr(Lattice, kind)(red)).cond_est
             for red in sweep for kind in ("rectangular", "hexagonal")]
    drift = max(abs(frame_bounds_estimate(getattr(Lattice, kind)(red, 16.0)).cond_est
                    / frame_bounds_estimate(getattr(Lattice, kind)(red, 8.0)).cond_est - 1)
                for red in (1.5, 2.0, 3.0) for kind in ("rectangular", "hexagonal"))
    ok = hexa < rect and min(conds) > 1 + 1e-3 and drift < 0.02
    criterion(10, ok, f"redundancy 2: hex {hexa:.4f} < rect {rect:.4f}; min cond over sweep "
                      f"{min(conds):.4f} (> 1.001); radius-doubling drift {drift:.1e} (< 2%)")
