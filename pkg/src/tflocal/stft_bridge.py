"""Time-domain Gabor transform with the Gaussian window and localization by a TF-plane domain.

Signals are sampled on a uniform time grid and every transform is a plain
Riemann sum, so each number here is computed independently of the Fock-side
Galerkin machinery and can be used to cross-check it. With the window
``phi = h_0`` the Bargmann relation evaluates the STFT at ``(x, -xi)``, so the
Fock-side image of a TF-plane domain is its mirror image ``conj(domain)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import GridTooCoarse, ZeroSignal
from .geometry import Domain, Empty, Whole
from .special_fn import hermite_all

_MAX_STEP = 0.5


@dataclass(frozen=True, eq=False)
class SampledSignal:
    samples: np.ndarray
    t0: float
    dt: float

    def __post_init__(self):
        if not self.dt > 0:
            raise ValueError("dt must be positive")
        object.__setattr__(self, "samples", np.asarray(self.samples, dtype=complex))

    @property
    def times(self):
        return self.t0 + self.dt * np.arange(len(self.samples))

    def norm2(self):
        """Squared L2 norm ``dt * sum |f_k|^2``."""
        return float(self.dt * np.sum(np.abs(self.samples) ** 2))

    def inner(self, other: "SampledSignal") -> complex:
        """``<self, other> = dt * sum self_k conj(other_k)``."""
        if len(other.samples) != len(self.samples) or other.dt != self.dt or other.t0 != self.t0:
            raise ValueError("signals live on different time grids")
        return complex(self.dt * np.vdot(other.samples, self.samples))

    @classmethod
    def from_function(cls, fn, t_min=-8.0, t_max=8.0, dt=1e-3):
        n = int(round((t_max - t_min) / dt)) + 1
        t = t_min + dt * np.arange(n)
        return cls(np.asarray(fn(t), dtype=complex), t_min, dt)

    @classmethod
    def hermite(cls, n, t_min=-8.0, t_max=8.0, dt=1e-3):
        k = int(round((t_max - t_min) / dt)) + 1
        t = t_min + dt * np.arange(k)
        return cls(hermite_all(n, t)[n], t_min, dt)


@dataclass(frozen=True)
class TFGrid:
    """Uniform midpoint grid over ``x_range x xi_range`` in the TF plane."""

    x_step: float = 0.05
    xi_step: float = 0.05
    x_range: tuple = (-4.0, 4.0)
    xi_range: tuple = (-4.0, 4.0)

    def __post_init__(self):
        if not (self.x_step > 0 and self.xi_step > 0):
            raise ValueError("grid steps must be positive")
        for lo, hi in (self.x_range, self.xi_range):
            if not math.isclose(lo, -hi) or hi <= 0:
                raise ValueError("grid ranges must be symmetric intervals")

    def _axis(self, rng, step):
        n = int(math.floor(rng[1] / step + 1e-9))
        return step * np.arange(-n, n + 1)

    @property
    def xs(self):
        return self._axis(self.x_range, self.x_step)

    @property
    def xis(self):
        return self._axis(self.xi_range, self.xi_step)

    @property
    def cell_area(self):
        return self.x_step * self.xi_step

    def check(self):
        if self.x_step > _MAX_STEP or self.xi_step > _MAX_STEP:
            raise GridTooCoarse(f"grid steps ({self.x_step}, {self.xi_step}) exceed {_MAX_STEP}")


def _window(t):
    return 2.0 ** 0.25 * np.exp(-math.pi * t * t)


def _check_decay(f: SampledSignal):
    s = np.abs(f.samples)
    peak = s.max(initial=0.0)
    if peak > 0 and max(s[0], s[-1]) > 1e-12 * peak:
        raise ValueError("signal does not decay below 1e-12 at its sample boundary")


def stft_gaussian(f: SampledSignal, grid: TFGrid = TFGrid()):
    """``V f(x, xi) = int f(t) phi(t - x) exp(-2 pi i xi t) dt`` on the grid, shape ``(n_x, n_xi)``."""
    grid.check()
    _check_decay(f)
    t = f.times
    xs, xis = grid.xs, grid.xis
    A = f.samples[None, :] * _window(t[None, :] - xs[:, None])
    E = np.exp(-2j * math.pi * np.outer(t, xis))
    return (A @ E) * f.dt


def coverage_weights(domain: Domain, grid: TFGrid = TFGrid(), supersample: int = 32):
    """Fraction of each grid cell inside ``domain``, shape ``(n_x, n_xi)``.

    Cells are first probed on a 5x5 sub-grid that includes their edges;
    cells with a mixed verdict and their eight neighbours are then resolved
    with ``supersample**2`` interior points.
    """
    xs, xis = grid.xs, grid.xis
    if isinstance(domain, Whole):
        return np.ones((len(xs), len(xis)))
    if isinstance(domain, Empty):
        return np.zeros((len(xs), len(xis)))

    def frac(cx, cxi, k, edges=False):
        off = np.linspace(-0.5, 0.5, k) if edges else (np.arange(k) + 0.5) / k - 0.5
        px = cx[:, None, None] + grid.x_step * off[None, :, None]
        pxi = cxi[:, None, None] + grid.xi_step * off[None, None, :]
        inside = domain.contains(px + 1j * pxi)
        return inside.reshape(len(cx), -1).mean(axis=1)

    X, XI = np.meshgrid(xs, xis, indexing="ij")
    # the probe includes cell edges, so any boundary crossing an edge marks the cell mixed
    coarse = frac(X.ravel(), XI.ravel(), 5, edges=True).reshape(X.shape)
    mixed = (coarse > 0) & (coarse < 1)
    # boundary slivers thinner than the coarse probe spacing sit next to a mixed cell,
    # possibly diagonally, so refine the full 3x3 neighbourhood
    padded = np.pad(mixed, 1)
    grown = np.zeros_like(mixed)
    for di in range(3):
        for dj in range(3):
            grown |= padded[di:di + mixed.shape[0], dj:dj + mixed.shape[1]]
    out = coarse.copy()
    idx = np.nonzero(grown)
    for lo in range(0, len(idx[0]), 256):
        sl = (idx[0][lo:lo + 256], idx[1][lo:lo + 256])
        out[sl] = frac(X[sl], XI[sl], supersample)
    return out


def _synthesize(coeffs, grid: TFGrid, like: SampledSignal):
    """``sum_z coeffs(z) pi(z) phi * cell_area`` sampled on ``like``'s time grid."""
    t = like.times
    xs, xis = grid.xs, grid.xis
    E = np.exp(2j * math.pi * np.outer(xis, t))
    B = coeffs @ E
    out = np.sum(_window(t[None, :] - xs[:, None]) * B, axis=0) * grid.cell_area
    return SampledSignal(out, like.t0, like.dt)


def apply_localization(f: SampledSignal, domain: Domain, grid: TFGrid = TFGrid(), weights=None):
    """Discretized ``H_domain f = sum_z chi(z) V f(z) pi(z) phi dx dxi``."""
    V = stft_gaussian(f, grid)
    w = coverage_weights(domain, grid) if weights is None else weights
    return _synthesize(w * V, grid, f)


def concentration(f: SampledSignal, domain: Domain, grid: TFGrid = TFGrid(), weights=None):
    """Fraction of the STFT energy of ``f`` inside ``domain``."""
    energy = f.norm2()
    if energy == 0:
        raise ZeroSignal("concentration of the zero signal is undefined")
    V = stft_gaussian(f, grid)
    w = coverage_weights(domain, grid) if weights is None else weights
    return float(np.sum(w * np.abs(V) ** 2) * grid.cell_area / energy)


def hermite_matrix_timedomain(domain: Domain, grid: TFGrid = TFGrid(), N: int = 12,
                              t_range=(-8.0, 8.0), dt=1e-3):
    """``G[m, n] = <H_domain h_n, h_m>`` from time-domain synthesis and inner products."""
    grid.check()
    w = coverage_weights(domain, grid)
    probes = [SampledSignal.hermite(n, t_range[0], t_range[1], dt) for n in range(N)]
    G = np.zeros((N, N), dtype=complex)
    if not np.any(w):
        return G
    for n, hn in enumerate(probes):
        out = apply_localization(hn, domain, grid, weights=w)
        for m, hm in enumerate(probes):
            G[m, n] = out.inner(hm)
    return G


def stft_hermite_closed(n, x, xi):
    """Closed form ``V h_n(x, xi) = exp(-i pi x xi) exp(-pi |z|^2 / 2) e_n(conj z)``, ``z = x + i xi``."""
    z = np.asarray(x) + 1j * np.asarray(xi)
    r2 = np.abs(z) ** 2
    with np.errstate(divide="ignore", invalid="ignore"):
        logmag = 0.5 * (n * math.log(math.pi) - math.lgamma(n + 1) + n * np.log(r2)) - 0.5 * math.pi * r2
    val = np.exp(logmag - 1j * n * np.angle(z))
    if n == 0:
        val = np.exp(-0.5 * math.pi * r2).astype(complex)
    return np.exp(-1j * math.pi * np.real(z) * np.imag(z)) * np.where(r2 > 0, val, 1.0 if n == 0 else 0.0)
