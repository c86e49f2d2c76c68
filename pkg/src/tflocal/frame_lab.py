"""Finite-section frame-bound estimates for Gaussian Gabor systems on lattices.

The frame operator ``S f = sum_z <f, pi(z) phi> pi(z) phi`` is compressed to
the span of the Hermite functions ``h_0 .. h_{N-1}``. Its matrix entries
``S[m, n] = sum_z V h_n(z) conj(V h_m(z))`` are exact up to the lattice
truncation, because ``V h_n`` has a closed form. Eigenvalues of a
compression lie inside the true frame bounds, so ``cond_est`` is a lower
estimate of the condition number; it is meant for comparing lattices, not
for certifying bounds.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np

from .errors import TruncationRisk
from .fock_op import weighted_basis
from .geometry import RadialMeasure

MIN_TRUNCATION = 6.0


@dataclass(frozen=True)
class Lattice:
    """Rectangular ``a Z x b Z`` or hexagonal lattice with side ``s``.

    Hexagonal lattices are spanned by ``s (1, 0)`` and ``s (1/2, sqrt(3)/2)``.
    """

    kind: str
    a: float = 0.0
    b: float = 0.0
    s: float = 0.0
    truncation_radius: float = 8.0

    def __post_init__(self):
        if self.kind == "rectangular":
            if not (self.a > 0 and self.b > 0):
                raise ValueError("rectangular lattice needs a, b > 0")
        elif self.kind == "hexagonal":
            if not self.s > 0:
                raise ValueError("hexagonal lattice needs s > 0")
        else:
            raise ValueError(f"unknown lattice kind {self.kind!r}")
        if self.truncation_radius < 0:
            raise ValueError("truncation radius must be non-negative")

    @classmethod
    def rectangular(cls, redundancy, truncation_radius=8.0, aspect=1.0):
        """Rectangular lattice with ``1/(ab) = redundancy`` and ``b/a = aspect``."""
        a = 1.0 / math.sqrt(redundancy * aspect)
        return cls("rectangular", a=a, b=aspect * a, truncation_radius=truncation_radius)

    @classmethod
    def hexagonal(cls, redundancy, truncation_radius=8.0):
        s = math.sqrt(2.0 / (math.sqrt(3.0) * redundancy))
        return cls("hexagonal", s=s, truncation_radius=truncation_radius)

    @property
    def generators(self):
        if self.kind == "rectangular":
            return complex(self.a, 0.0), complex(0.0, self.b)
        return complex(self.s, 0.0), self.s * complex(0.5, math.sqrt(3.0) / 2)

    @property
    def cell_area(self):
        g1, g2 = self.generators
        return abs(g1.real * g2.imag - g1.imag * g2.real)

    @property
    def redundancy(self):
        return 1.0 / self.cell_area

    def with_radius(self, radius):
        return Lattice(self.kind, self.a, self.b, self.s, radius)

    def to_dict(self):
        d = {"kind": self.kind, "truncation_radius": self.truncation_radius, "redundancy": self.redundancy}
        if self.kind == "rectangular":
            d.update(a=self.a, b=self.b)
        else:
            d["s"] = self.s
        return d


def lattice_points(lat: Lattice) -> np.ndarray:
    """All lattice points with ``|z| <= truncation_radius``, sorted by modulus then angle."""
    g1, g2 = lat.generators
    R = lat.truncation_radius
    kmax = int(math.ceil(R / g2.imag)) + 1
    jmax = int(math.ceil((R + kmax * abs(g2.real)) / g1.real)) + 1
    j, k = np.meshgrid(np.arange(-jmax, jmax + 1), np.arange(-kmax, kmax + 1), indexing="ij")
    z = (j * g1 + k * g2).ravel()
    z = z[np.abs(z) <= R * (1 + 1e-12)]
    order = np.lexsort((np.round(np.angle(z), 12), np.round(np.abs(z), 12)))
    return z[order]


def coherent_overlap(z1, z2):
    """``<pi(z1) phi, pi(z2) phi>`` for the Gaussian window, with ``pi(x + i xi) = M_xi T_x``."""
    z1 = np.asarray(z1, dtype=complex)
    z2 = np.asarray(z2, dtype=complex)
    d = z1 - z2
    phase = math.pi * (z1.imag - z2.imag) * (z1.real + z2.real)
    return np.exp(-0.5 * math.pi * np.abs(d) ** 2 + 1j * phase)


def stft_hermite_matrix(z, N):
    """Columns ``V h_n(z)`` for ``n < N`` at the points ``z``."""
    z = np.asarray(z, dtype=complex)
    E = weighted_basis(RadialMeasure.fock(), N, np.conj(z))
    return np.exp(-1j * math.pi * z.real * z.imag)[:, None] * E


def default_order(lat: Lattice) -> int:
    return max(1, min(32, int(math.pi * (lat.truncation_radius - 3) ** 2)))


@dataclass(frozen=True)
class FrameEstimate:
    A_est: float
    B_est: float
    cond_est: float
    N: int
    kept: int
    n_points: int
    hermitian_defect: float


def frame_matrix(lat: Lattice, N: int):
    """Hermite-basis compression ``S[m, n]`` of the frame operator, truncated to the lattice disk."""
    if lat.truncation_radius < MIN_TRUNCATION:
        raise TruncationRisk(f"truncation radius {lat.truncation_radius} below {MIN_TRUNCATION}")
    if N > math.pi * (lat.truncation_radius - 3) ** 2:
        raise TruncationRisk(f"probe order {N} not concentrated inside radius {lat.truncation_radius}")
    V = stft_hermite_matrix(lattice_points(lat), N)
    return V.T @ V.conj()


def frame_bounds_estimate(lat: Lattice, N: int | None = None) -> FrameEstimate:
    """Extreme eigenvalues of the central block of the compressed frame operator.

    The top quarter of Hermite indices is discarded before taking
    eigenvalues. Returns a :class:`FrameEstimate` with ``cond_est = B/A``.
    """
    if not lat.redundancy > 1:
        raise ValueError("frame estimates need redundancy > 1")
    N = default_order(lat) if N is None else N
    S = frame_matrix(lat, N)
    defect = float(np.max(np.abs(S - S.conj().T)))
    kept = max(1, N - N // 4)
    block = S[:kept, :kept]
    ev = np.linalg.eigvalsh(0.5 * (block + block.conj().T))
    A, B = float(ev[0]), float(ev[-1])
    return FrameEstimate(A, B, B / A, N, kept, len(lattice_points(lat)), defect)


def condition_sweep(redundancies, N: int | None = None, truncation_radius: float = 8.0):
    """Rows ``(redundancy, rect_cond, hex_cond, ratio)`` for square vs hexagonal lattices."""
    rows = []
    for red in redundancies:
        rect = frame_bounds_estimate(Lattice.rectangular(red, truncation_radius), N)
        hexa = frame_bounds_estimate(Lattice.hexagonal(red, truncation_radius), N)
        rows.append((float(red), rect.cond_est, hexa.cond_est, hexa.cond_est / rect.cond_est))
    return rows


def sweep_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["redundancy", "rect_cond", "hex_cond", "ratio"])
    for row in rows:
        w.writerow([repr(float(v)) for v in row])
    return buf.getvalue()
