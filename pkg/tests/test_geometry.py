import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from tflocal.errors import NonConvergence
from tflocal.geometry import (Annulus, Disk, Empty, HalfPlanePseudoDisk, Polygon, QuadratureSpec, RadialMeasure,
                              Rotation, Union, Whole, closed_moment, domain_from_dict, integrate, monomial_moment,
                              square)

FOCK = RadialMeasure.fock()
# separable 2-D quadrature (scipy.integrate.dblquad) over the square of side sqrt(pi)
SQUARE_I04 = -0.01777947592512173
SQUARE_I08 = 0.007794816131124114
# dblquad over the disk of center 0.3 and radius 0.5
OFFSET_DISK_I01 = 0.09029911396707993


def test_disk_mass_closed_form():
    val, err = integrate(Disk(0, 1), FOCK, lambda z: np.ones(len(z)))
    assert val == pytest.approx(1 - math.exp(-math.pi), abs=1e-12)
    assert err < 1e-10


def test_whole_plane_mass():
    val, _ = integrate(Whole(), FOCK, lambda z: np.ones(len(z)))
    assert val == pytest.approx(1.0, abs=1e-12)


def test_square_moments_against_dblquad():
    sq = square(math.sqrt(math.pi))
    assert monomial_moment(sq, FOCK, 0, 4)[0].real == pytest.approx(SQUARE_I04, abs=1e-12)
    assert monomial_moment(sq, FOCK, 0, 8)[0].real == pytest.approx(SQUARE_I08, abs=1e-12)
    for k in (1, 2, 3, 5):
        assert abs(monomial_moment(sq, FOCK, 0, k)[0]) < 1e-13


def test_offset_disk_moment():
    val, _ = monomial_moment(Disk(0.3, 0.5), FOCK, 0, 1)
    assert val.real == pytest.approx(OFFSET_DISK_I01, abs=1e-12)


def test_closed_moment_matches_quadrature():
    for n, R in [(1, 0.7), (5, 1.3), (9, 2.0)]:
        m = (n - 1) // 2
        q, _ = integrate(Disk(0, R), FOCK, lambda z: np.abs(z) ** (2 * m))
        assert closed_moment(FOCK, n, R) == pytest.approx(q, abs=1e-12)
    berg = RadialMeasure.bergman(1.5)
    q, _ = integrate(Disk(0, 0.8), berg, lambda z: np.abs(z) ** 4)
    assert closed_moment(berg, 5, 0.8) == pytest.approx(q, abs=1e-12)


@given(st.floats(0.05, 2.5), st.floats(0, 2 * math.pi))
def test_rotation_invariant_moments_of_disks(R, angle):
    a = monomial_moment(Disk(0, R), FOCK, 1, 0)[0]
    b = monomial_moment(Rotation(Disk(0, R), angle), FOCK, 1, 0)[0]
    assert abs(a - b) < 1e-12


@given(st.floats(0.0, 1.5), st.floats(0.05, 1.0), st.integers(1, 6))
def test_annulus_moments_vanish(r_in, width, k):
    assert abs(monomial_moment(Annulus(r_in, r_in + width), FOCK, 1, k)[0]) < 1e-12


def test_polygon_orientation_and_area():
    cw = Polygon((0j, 1j, 1 + 1j, 1 + 0j))
    assert cw.area() == pytest.approx(1.0)
    assert cw.contains(0.5 + 0.5j) and not cw.contains(1.5 + 0.5j)


def test_polygon_self_intersection_rejected():
    with pytest.raises(ValueError):
        Polygon((0j, 1 + 1j, 1 + 0j, 1j))


def test_union_rejects_overlap():
    with pytest.raises(ValueError):
        Union((Disk(0, 1), Disk(0.5, 1)))


def test_reflection():
    d = Disk(0.3 + 0.4j, 0.2).reflect()
    assert d.center == pytest.approx(0.3 - 0.4j)
    assert Empty().reflect() == Empty()


def test_domain_round_trip():
    for dom in [Disk(0.1 + 0.2j, 0.5), Annulus(0.2, 0.9), square(1.0, 0.1j, 0.2),
                Union((Disk(0, 0.3), Annulus(0.5, 0.8))), Rotation(square(1.0), 0.3),
                HalfPlanePseudoDisk(1j, 0.4), Empty(), Whole()]:
        back = domain_from_dict(dom.to_dict())
        pts = np.array([0.05 + 0.05j, 0.45 + 0.1j, -0.6 + 0.2j, 0.7j])
        assert np.array_equal(back.contains(pts), dom.contains(pts))


def test_unknown_shape():
    with pytest.raises(ValueError):
        domain_from_dict({"shape": "triangle"})


def test_quadrature_spec_validation():
    with pytest.raises(ValueError):
        QuadratureSpec(radial_nodes=8)


def test_nonconvergence_reported():
    # a jump the polar rule does not know about defeats node doubling
    quad = QuadratureSpec(max_refinements=2)
    with pytest.raises(NonConvergence) as info:
        integrate(Disk(0, 1), FOCK, lambda z: np.sign(z.real - 0.31), quad)
    assert info.value.err_estimate is not None


def test_domain_outside_bergman_support():
    with pytest.raises(ValueError):
        integrate(Disk(0, 1.5), RadialMeasure.bergman(0.0), lambda z: np.ones(len(z)))
