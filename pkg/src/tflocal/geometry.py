"""Radial measures, planar domains and polar quadrature over their intersection.

All quadrature is polar about the origin (the center of every supported
measure). For each radial node the domain reports the exact set of angles
inside it as a union of arcs, so indicator discontinuities never fall
inside an angular rule. Radial segments are split at the radii where that
arc structure changes; segments ending at a tangency, where the arc length
behaves like ``sqrt(r - r0)``, get a polynomial change of variables that
makes the radial integrand smooth again.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy import special as sp

from .errors import NonConvergence
from .special_fn import regularized_incomplete_beta, regularized_lower_gamma

TWO_PI = 2.0 * math.pi

# ---------------------------------------------------------------------------
# measures


@dataclass(frozen=True)
class RadialMeasure:
    """Rotation-invariant weight ``mu(|z|) dz``.

    ``kind="fock"`` is the Gaussian ``exp(-pi |z|^2)`` on the plane;
    ``kind="bergman"`` is ``(alpha + 1) (1 - |w|^2)^alpha dA(w)`` on the unit
    disc, with ``dA = dx dy / pi`` the normalized area measure.
    """

    kind: str
    alpha: float = 0.0

    def __post_init__(self):
        if self.kind not in ("fock", "bergman"):
            raise ValueError(f"unknown measure kind {self.kind!r}")
        if self.kind == "bergman" and not self.alpha > -1:
            raise ValueError("Bergman weight requires alpha > -1")

    @classmethod
    def fock(cls):
        return cls("fock")

    @classmethod
    def bergman(cls, alpha):
        return cls("bergman", float(alpha))

    @property
    def support_radius(self):
        return math.inf if self.kind == "fock" else 1.0

    def weight(self, r):
        r = np.asarray(r, dtype=float)
        if self.kind == "fock":
            return np.exp(-math.pi * r * r)
        return (self.alpha + 1.0) / math.pi * (1.0 - r * r) ** self.alpha

    def to_dict(self):
        if self.kind == "fock":
            return {"kind": "fock"}
        return {"kind": "bergman", "alpha": self.alpha}


def weight_at(measure: RadialMeasure, r: float) -> float:
    if r < 0 or r >= measure.support_radius:
        raise ValueError(f"r={r} outside the support of the {measure.kind} measure")
    return float(measure.weight(r))


def closed_moment(measure: RadialMeasure, n: int, R: float) -> float:
    """``c_{n,R} = 2 pi int_0^R r^n mu(r) dr`` for odd ``n``, in closed form."""
    if n < 1 or n % 2 == 0:
        raise ValueError("closed_moment is defined for odd n >= 1")
    if R < 0 or R > measure.support_radius:
        raise ValueError("R must lie in [0, support_radius]")
    m = (n - 1) // 2
    if measure.kind == "fock":
        frac = 1.0 if math.isinf(R) else float(regularized_lower_gamma(m + 1, math.pi * R * R))
        return math.exp(math.lgamma(m + 1) - m * math.log(math.pi)) * frac
    a = measure.alpha
    log_beta = math.lgamma(m + 1) + math.lgamma(a + 1) - math.lgamma(m + a + 2)
    return (a + 1) * math.exp(log_beta) * float(regularized_incomplete_beta(m + 1, a + 1, min(R * R, 1.0)))


# ---------------------------------------------------------------------------
# domains


def _merge_arcs(arcs):
    """Merge touching arcs given as (start, end) pairs sorted by start."""
    merged = []
    for a, b in arcs:
        if b - a <= 0:
            continue
        if merged and a <= merged[-1][1] + 1e-15:
            merged[-1] = (merged[-1][0], max(merged[-1][1], b))
        else:
            merged.append((a, b))
    if len(merged) > 1 and merged[-1][1] >= merged[0][0] + TWO_PI - 1e-15:
        a0, b0 = merged.pop(0)
        a1, _ = merged[-1]
        merged[-1] = (a1, b0 + TWO_PI)
    return merged


def _arcs_from_crossings(angles, inside_at):
    """Arcs of the circle between sorted crossing angles whose midpoint is inside."""
    angles = np.sort(np.mod(angles, TWO_PI))
    keep = []
    for i, a in enumerate(angles):
        b = angles[i + 1] if i + 1 < len(angles) else angles[0] + TWO_PI
        if b - a < 1e-14:
            continue
        if inside_at(0.5 * (a + b)):
            keep.append((float(a), float(b)))
    return _merge_arcs(keep)


class Domain:
    """A measurable planar region with polar-clipping support."""

    bounding_radius: float = 0.0

    def contains(self, z):
        raise NotImplementedError

    def angular_intervals(self, r: float) -> list[tuple[float, float]]:
        """Arcs ``(start, end)`` of the circle ``|z| = r`` lying inside the domain."""
        raise NotImplementedError

    def radial_breakpoints(self) -> list[tuple[float, bool]]:
        """Radii where the arc structure changes; the flag marks tangencies."""
        raise NotImplementedError

    def area(self) -> float:
        raise NotImplementedError

    def reflect(self) -> "Domain":
        """Mirror image under ``z -> conj(z)``."""
        raise NotImplementedError

    def rotated(self, angle):
        return Rotation(self, angle)

    def to_dict(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class Empty(Domain):
    bounding_radius: float = 0.0

    def contains(self, z):
        return np.zeros(np.shape(z), dtype=bool)

    def angular_intervals(self, r):
        return []

    def radial_breakpoints(self):
        return []

    def area(self):
        return 0.0

    def reflect(self):
        return self

    def to_dict(self):
        return {"shape": "empty"}


@dataclass(frozen=True)
class Whole(Domain):
    """The whole support of the measure."""

    bounding_radius: float = math.inf

    def contains(self, z):
        return np.ones(np.shape(z), dtype=bool)

    def angular_intervals(self, r):
        return [(0.0, TWO_PI)]

    def radial_breakpoints(self):
        return []

    def area(self):
        return math.inf

    def reflect(self):
        return self

    def to_dict(self):
        return {"shape": "whole"}


@dataclass(frozen=True)
class Disk(Domain):
    center: complex
    radius: float

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError("disk radius must be positive")
        object.__setattr__(self, "center", complex(self.center))

    @property
    def bounding_radius(self):
        return abs(self.center) + self.radius

    def contains(self, z):
        return np.abs(np.asarray(z) - self.center) < self.radius

    def angular_intervals(self, r):
        c, rho = abs(self.center), self.radius
        if c == 0.0:
            return [(0.0, TWO_PI)] if r < rho else []
        if r == 0.0:
            return [(0.0, TWO_PI)] if c < rho else []
        q = (r * r + c * c - rho * rho) / (2 * r * c)
        if q <= -1:
            return [(0.0, TWO_PI)]
        if q >= 1:
            return []
        phi = math.atan2(self.center.imag, self.center.real)
        half = math.acos(q)
        return [(phi - half, phi + half)]

    def radial_breakpoints(self):
        c, rho = abs(self.center), self.radius
        if c == 0.0:
            return [(rho, False)]
        pts = [(c + rho, True), (abs(c - rho), True)]
        return [p for p in pts if p[0] > 0]

    def area(self):
        return math.pi * self.radius ** 2

    def reflect(self):
        return Disk(self.center.conjugate(), self.radius)

    def to_dict(self):
        return {"shape": "disk", "center": [self.center.real, self.center.imag], "radius": self.radius}


@dataclass(frozen=True)
class Annulus(Domain):
    """``r_in <= |z| < r_out``; ``r_in == r_out`` is the (empty) degenerate ring."""

    r_in: float
    r_out: float

    def __post_init__(self):
        if not 0 <= self.r_in <= self.r_out:
            raise ValueError("annulus needs 0 <= r_in <= r_out")

    @property
    def bounding_radius(self):
        return self.r_out

    def contains(self, z):
        a = np.abs(np.asarray(z))
        return (a >= self.r_in) & (a < self.r_out)

    def angular_intervals(self, r):
        return [(0.0, TWO_PI)] if self.r_in <= r < self.r_out else []

    def radial_breakpoints(self):
        return [(self.r_in, False), (self.r_out, False)]

    def area(self):
        return math.pi * (self.r_out ** 2 - self.r_in ** 2)

    def reflect(self):
        return self

    def to_dict(self):
        return {"shape": "annulus", "r_in": self.r_in, "r_out": self.r_out}


def _segments_cross(p1, p2, q1, q2):
    def orient(a, b, c):
        return np.sign(((b - a).conjugate() * (c - a)).imag)

    return (orient(p1, p2, q1) * orient(p1, p2, q2) < 0) and (orient(q1, q2, p1) * orient(q1, q2, p2) < 0)


@dataclass(frozen=True)
class Polygon(Domain):
    """Simple polygon; vertices are stored counterclockwise."""

    vertices: tuple

    def __post_init__(self):
        v = np.asarray([complex(p) if not isinstance(p, (list, tuple)) else complex(p[0], p[1])
                        for p in self.vertices])
        if len(v) < 3:
            raise ValueError("polygon needs at least 3 vertices")
        signed = 0.5 * np.sum((v.conjugate() * np.roll(v, -1)).imag)
        if signed < 0:
            v = v[::-1]
        n = len(v)
        for i in range(n):
            for j in range(i + 2, n):
                if i == 0 and j == n - 1:
                    continue
                if _segments_cross(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n]):
                    raise ValueError("polygon edges intersect; polygon must be simple")
        object.__setattr__(self, "vertices", tuple(complex(p) for p in v))

    @property
    def _v(self):
        return np.asarray(self.vertices)

    @property
    def bounding_radius(self):
        return float(np.max(np.abs(self._v)))

    def contains(self, z):
        z = np.asarray(z, dtype=complex)
        x, y = z.real, z.imag
        v = self._v
        inside = np.zeros(z.shape, dtype=bool)
        for a, b in zip(v, np.roll(v, -1)):
            straddle = (a.imag > y) != (b.imag > y)
            with np.errstate(divide="ignore", invalid="ignore"):
                xcross = a.real + (y - a.imag) * (b.real - a.real) / (b.imag - a.imag)
            inside ^= straddle & (x < xcross)
        return inside

    def angular_intervals(self, r):
        v = self._v
        d = np.roll(v, -1) - v
        A = np.abs(d) ** 2
        B = 2 * (v.conjugate() * d).real
        C = np.abs(v) ** 2 - r * r
        disc = B * B - 4 * A * C
        angles = []
        for k in np.nonzero(disc >= 0)[0]:
            sq = math.sqrt(disc[k])
            for s in ((-B[k] - sq) / (2 * A[k]), (-B[k] + sq) / (2 * A[k])):
                if 0.0 <= s <= 1.0:
                    p = v[k] + s * d[k]
                    angles.append(math.atan2(p.imag, p.real))
        if r == 0.0:
            return [(0.0, TWO_PI)] if self.contains(0j) else []
        if not angles:
            return [(0.0, TWO_PI)] if self.contains(complex(r, 0.0)) else []
        return _arcs_from_crossings(np.asarray(angles), lambda t: bool(self.contains(r * np.exp(1j * t))))

    def radial_breakpoints(self):
        v = self._v
        pts = [(float(abs(p)), False) for p in v]
        for a, b in zip(v, np.roll(v, -1)):
            d = b - a
            s = -(a.conjugate() * d).real / abs(d) ** 2
            if 0 < s < 1:
                pts.append((float(abs(a + s * d)), True))
        return pts

    def area(self):
        v = self._v
        return float(0.5 * np.sum((v.conjugate() * np.roll(v, -1)).imag))

    def reflect(self):
        return Polygon(tuple(p.conjugate() for p in self.vertices))

    def to_dict(self):
        return {"shape": "polygon", "vertices": [[p.real, p.imag] for p in self.vertices]}


def square(side, center=0j, angle=0.0):
    """Axis-aligned square (optionally rotated about its center) as a Polygon."""
    h = side / 2
    corners = np.array([-h - 1j * h, h - 1j * h, h + 1j * h, -h + 1j * h]) * np.exp(1j * angle)
    return Polygon(tuple(complex(center) + corners))


@dataclass(frozen=True)
class Union(Domain):
    """Disjoint union of domains."""

    parts: tuple

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))
        if len(self.parts) > 1:
            R = self.bounding_radius
            g = np.linspace(-R, R, 101)
            z = (g[:, None] + 1j * g[None, :]).ravel()
            count = sum(p.contains(z).astype(int) for p in self.parts)
            if np.any(count > 1):
                raise ValueError("union members must be pairwise disjoint")

    @property
    def bounding_radius(self):
        return max((p.bounding_radius for p in self.parts), default=0.0)

    def contains(self, z):
        out = np.zeros(np.shape(z), dtype=bool)
        for p in self.parts:
            out |= p.contains(z)
        return out

    def angular_intervals(self, r):
        arcs = []
        for p in self.parts:
            arcs.extend(p.angular_intervals(r))
        return arcs

    def radial_breakpoints(self):
        return [b for p in self.parts for b in p.radial_breakpoints()]

    def area(self):
        return sum(p.area() for p in self.parts)

    def reflect(self):
        return Union(tuple(p.reflect() for p in self.parts))

    def to_dict(self):
        return {"shape": "union", "parts": [p.to_dict() for p in self.parts]}


@dataclass(frozen=True)
class Rotation(Domain):
    """``{exp(i angle) u : u in inner}``."""

    inner: Domain
    angle: float

    @property
    def bounding_radius(self):
        return self.inner.bounding_radius

    def contains(self, z):
        return self.inner.contains(np.asarray(z) * np.exp(-1j * self.angle))

    def angular_intervals(self, r):
        return [(a + self.angle, b + self.angle) for a, b in self.inner.angular_intervals(r)]

    def radial_breakpoints(self):
        return self.inner.radial_breakpoints()

    def area(self):
        return self.inner.area()

    def reflect(self):
        return Rotation(self.inner.reflect(), -self.angle)

    def to_dict(self):
        return {"shape": "rotation", "inner": self.inner.to_dict(), "angle": self.angle}


def pseudodisk_in_disc(center_disc: complex, rho: float) -> Disk:
    """Euclidean disk equal to the pseudohyperbolic disk ``{w : rho_D(w, c) < rho}`` in the unit disc."""
    a2 = abs(center_disc) ** 2
    denom = 1 - rho * rho * a2
    return Disk(center_disc * (1 - rho * rho) / denom, rho * (1 - a2) / denom)


@dataclass(frozen=True)
class HalfPlanePseudoDisk(Domain):
    """Pseudohyperbolic disk of the upper half-plane, viewed in the unit disc.

    The domain lives in the disc model: ``contains(w)`` tests whether the
    Cayley preimage ``i (1 + w) / (1 - w)`` lies within pseudohyperbolic
    distance ``rho`` of ``center``.
    """

    center: complex
    rho: float

    def __post_init__(self):
        object.__setattr__(self, "center", complex(self.center))
        if not self.center.imag > 0:
            raise ValueError("pseudodisk center must lie in the upper half-plane")
        if not 0 < self.rho < 1:
            raise ValueError("pseudohyperbolic radius must lie in (0, 1)")

    @property
    def disk(self) -> Disk:
        c = self.center
        return pseudodisk_in_disc((c - 1j) / (c + 1j), self.rho)

    @property
    def bounding_radius(self):
        return self.disk.bounding_radius

    def contains(self, z):
        w = np.asarray(z, dtype=complex)
        with np.errstate(divide="ignore", invalid="ignore"):
            u = 1j * (1 + w) / (1 - w)
            dist = np.abs((u - self.center) / (u - self.center.conjugate()))
        return (np.abs(w) < 1) & (dist < self.rho)

    def angular_intervals(self, r):
        return self.disk.angular_intervals(r)

    def radial_breakpoints(self):
        return self.disk.radial_breakpoints()

    def area(self):
        return self.disk.area()

    def reflect(self):
        return self.disk.reflect()

    def to_dict(self):
        return {"shape": "pseudodisk", "center": [self.center.real, self.center.imag], "rho": self.rho}


def contains(domain: Domain, z):
    """Indicator of ``domain`` at ``z``; boundary points may go either way."""
    return domain.contains(z)


def domain_from_dict(spec: dict) -> Domain:
    """Build a domain from its tagged-record form, e.g. ``{"shape": "disk", ...}``."""
    shape = spec.get("shape")
    if shape == "disk":
        c = spec.get("center", [0.0, 0.0])
        return Disk(complex(c[0], c[1]), float(spec["radius"]))
    if shape == "annulus":
        return Annulus(float(spec["r_in"]), float(spec["r_out"]))
    if shape == "polygon":
        return Polygon(tuple(complex(x, y) for x, y in spec["vertices"]))
    if shape == "square":
        c = spec.get("center", [0.0, 0.0])
        return square(float(spec["side"]), complex(c[0], c[1]), float(spec.get("angle", 0.0)))
    if shape == "union":
        return Union(tuple(domain_from_dict(p) for p in spec["parts"]))
    if shape == "rotation":
        return Rotation(domain_from_dict(spec["inner"]), float(spec["angle"]))
    if shape == "pseudodisk":
        c = spec["center"]
        return HalfPlanePseudoDisk(complex(c[0], c[1]), float(spec["rho"]))
    if shape == "empty":
        return Empty()
    if shape == "whole":
        return Whole()
    raise ValueError(f"unknown domain shape {shape!r}")


# ---------------------------------------------------------------------------
# quadrature


@dataclass(frozen=True)
class QuadratureSpec:
    radial_nodes: int = 32
    angular_nodes: int = 32
    target_abs_tol: float = 1e-10
    max_refinements: int = 5

    def __post_init__(self):
        if self.radial_nodes < 16 or self.angular_nodes < 16:
            raise ValueError("node counts must be at least 16")
        if not self.target_abs_tol > 0:
            raise ValueError("target_abs_tol must be positive")


def fock_cutoff(degree=0):
    """Radius beyond which ``r^(2 degree) exp(-pi r^2)`` is below ~1e-20 relative."""
    return math.sqrt((60.0 + 2.0 * degree) / math.pi)


def _segment_nodes(a, b, left_singular, right_singular, n):
    s, w = np.polynomial.legendre.leggauss(n)
    s = 0.5 * (s + 1)
    w = 0.5 * w
    L = b - a
    if left_singular and right_singular:
        r = a + L * s * s * (3 - 2 * s)
        jac = L * 6 * s * (1 - s)
    elif left_singular:
        r = a + L * s * s
        jac = 2 * L * s
    elif right_singular:
        r = b - L * (1 - s) ** 2
        jac = 2 * L * (1 - s)
    else:
        r = a + L * s
        jac = np.full(n, L)
    return r, w * jac


def _boundary_layer_nodes(a, b, n):
    """Nodes on ``[a, b]`` uniform in ``t = -log(1 - r^2)``, for ``(1 - r^2)^alpha`` near ``r = 1``."""
    s, w = np.polynomial.legendre.leggauss(n)
    ta, tb = -math.log1p(-a * a), -math.log1p(-b * b)
    t = 0.5 * (tb - ta) * (s + 1) + ta
    r = np.sqrt(-np.expm1(-t))
    return r, 0.5 * (tb - ta) * w * np.exp(-t) / (2 * r)


def _edge_jacobi_nodes(a, alpha, n):
    """Nodes on ``[a, 1]`` for the ``dr`` factor when the segment touches the unit circle.

    Gauss-Jacobi in ``u = 1 - r^2`` absorbs ``u^alpha``; the returned weights are
    divided by ``r u^alpha`` because the caller multiplies by ``r`` and the density.
    """
    x, w = sp.roots_jacobi(n, 0.0, alpha)
    ua = 1.0 - a * a
    u = 0.5 * ua * (x + 1)
    r = np.sqrt(1.0 - u)
    return r, 0.5 * (0.5 * ua) ** (alpha + 1) * w / (r * u ** alpha)


_LAYER_START = 0.9


def polar_rule(domain: Domain, measure: RadialMeasure, n_r: int, n_theta: int,
               r_max: float | None = None, extra_breaks: Sequence[float] = ()):
    """Nodes ``z`` and weights ``w`` with ``sum(w f(z)) ~ int_domain f dmu``."""
    support = measure.support_radius
    top = domain.bounding_radius
    if math.isinf(top):
        if r_max is None:
            r_max = fock_cutoff() if math.isinf(support) else support
        top = min(r_max, support)
    elif top > support:
        raise ValueError("domain is not contained in the support of the measure")
    if top <= 0:
        return np.zeros(0, dtype=complex), np.zeros(0)
    singular = {}
    for r, flag in domain.radial_breakpoints():
        if 0 < r <= top:
            key = round(r, 14)
            singular[key] = singular.get(key, False) or flag
    for r in extra_breaks:
        if 0 < r < top:
            singular.setdefault(round(r, 14), False)
    # a non-polynomial Bergman weight needs graded nodes close to the unit circle
    layer = measure.kind == "bergman" and not float(measure.alpha).is_integer() and top > _LAYER_START
    if layer:
        singular.setdefault(_LAYER_START, False)
    top_flag = singular.pop(round(top, 14), False)
    edges = [0.0] + sorted(singular) + [top]
    flags = [False] + [singular[k] for k in sorted(singular)] + [top_flag]

    zs, ws = [], []
    theta_gl, wt_gl = np.polynomial.legendre.leggauss(n_theta)
    theta_tr = TWO_PI * np.arange(n_theta) / n_theta
    for i in range(len(edges) - 1):
        a, b = edges[i], edges[i + 1]
        if b - a < 1e-15:
            continue
        if layer and a >= _LAYER_START and b >= 1.0:
            rs, wr = _edge_jacobi_nodes(a, float(measure.alpha), n_r)
        elif layer and a >= _LAYER_START and not (flags[i] or flags[i + 1]):
            rs, wr = _boundary_layer_nodes(a, b, n_r)
        else:
            rs, wr = _segment_nodes(a, b, flags[i], flags[i + 1], n_r)
        mu = measure.weight(rs)
        for r, wgt, m in zip(rs, wr, mu):
            arcs = domain.angular_intervals(r)
            if not arcs:
                continue
            if len(arcs) == 1 and arcs[0][1] - arcs[0][0] >= TWO_PI - 1e-13:
                th = theta_tr + arcs[0][0]
                wth = np.full(n_theta, TWO_PI / n_theta)
            else:
                th = np.concatenate([0.5 * (q - p) * theta_gl + 0.5 * (q + p) for p, q in arcs])
                wth = np.concatenate([0.5 * (q - p) * wt_gl for p, q in arcs])
            zs.append(r * np.exp(1j * th))
            ws.append(wgt * r * m * wth)
    if not zs:
        return np.zeros(0, dtype=complex), np.zeros(0)
    return np.concatenate(zs), np.concatenate(ws)


def refine(compute: Callable[[int, int], np.ndarray], quad: QuadratureSpec, what="integral"):
    """Node-doubling driver: returns ``(value, err_estimate)`` at the first converged level."""
    n_r, n_t = quad.radial_nodes, quad.angular_nodes
    prev = compute(n_r, n_t)
    err = math.inf
    for _ in range(quad.max_refinements):
        n_r, n_t = 2 * n_r, 2 * n_t
        cur = compute(n_r, n_t)
        err = float(np.max(np.abs(np.asarray(cur) - np.asarray(prev)), initial=0.0))
        prev = cur
        if err <= quad.target_abs_tol:
            return cur, err
    raise NonConvergence(
        f"{what}: error estimate {err:.3e} above tolerance {quad.target_abs_tol:.1e} "
        f"at {n_r} radial x {n_t} angular nodes", err_estimate=err)


def integrate(domain: Domain, measure: RadialMeasure, f, quad: QuadratureSpec = QuadratureSpec(),
              r_max=None):
    """Integrate ``f(z)`` over ``domain`` against ``measure``; returns ``(value, err_estimate)``.

    ``f`` receives a 1-D complex array and may return an array of shape
    ``(len(z), ...)`` for vector-valued integrands.
    """

    def compute(n_r, n_t):
        z, w = polar_rule(domain, measure, n_r, n_t, r_max=r_max)
        if len(z) == 0:
            return np.asarray(0.0 * f(np.zeros(1, dtype=complex))[0])
        vals = np.asarray(f(z))
        return np.tensordot(w, vals, axes=(0, 0))

    value, err = refine(compute, quad)
    value = value[()] if np.ndim(value) == 0 else value
    return value, err


def monomial_moment(domain: Domain, measure: RadialMeasure, m: int, k: int,
                    quad: QuadratureSpec = QuadratureSpec()):
    """``I_{m,k} = int_domain |z|^{2m} conj(z)^k dmu(z)``; returns ``(value, err_estimate)``."""
    r_max = fock_cutoff(m + k) if measure.kind == "fock" else None
    return integrate(domain, measure, lambda z: np.abs(z) ** (2 * m) * np.conj(z) ** k, quad, r_max=r_max)
