import math

import pytest
from hypothesis import given, strategies as st

from hybridsim.errors import DomainError
from hybridsim.quantities import e
from hybridsim.trap_geometry import (AxialPotential, TrapGeometry, axial_potential, heating_rate_scaled, ion_height,
                                     matches_optimum_ratios, optimum_widths)

from oracles import ion_height as oracle_height

# h/a at b = 4.90 a, c = b/2, frozen from oracles.ion_height(1, 4.9, 2.45)
H_OVER_A_OPTIMUM = 1.3621877827801703

pos = st.floats(min_value=1e-7, max_value=1e-2)


def test_reference_design_height():
    assert ion_height(18e-6, 90e-6, 45e-6) == pytest.approx(24.74e-6, rel=1e-3)
    assert ion_height(18e-6, 90e-6, 45e-6) == pytest.approx(oracle_height(18e-6, 90e-6, 45e-6), rel=1e-14)


def test_unit_symmetric_case():
    assert ion_height(1, 1, 1) == pytest.approx(math.sqrt(3) / 2)


def test_homogeneity_example():
    assert ion_height(7 * 18, 7 * 90, 7 * 45) == pytest.approx(7 * ion_height(18, 90, 45))


@given(pos, pos, pos)
def test_symmetric_in_b_c(a, b, c):
    assert ion_height(a, b, c) == pytest.approx(ion_height(a, c, b), rel=1e-13)


@given(pos, pos, pos, st.floats(min_value=1e-3, max_value=1e3))
def test_degree_one_homogeneity(a, b, c, k):
    assert ion_height(k * a, k * b, k * c) == pytest.approx(k * ion_height(a, b, c), rel=1e-12)


@given(pos)
def test_optimum_ratio_height_constant(a):
    b, c, _ = optimum_widths(a)
    assert ion_height(a, b, c) / a == pytest.approx(H_OVER_A_OPTIMUM, rel=1e-12)


def test_optimum_widths():
    b, c, w = optimum_widths(18e-6)
    assert (b, c, w) == pytest.approx((88.2e-6, 44.1e-6, 65.88e-6), rel=1e-12)
    assert optimum_widths(1.0) == pytest.approx((4.90, 2.45, 3.66))
    with pytest.raises(DomainError):
        optimum_widths(0)


def test_rounded_design_accepted_by_validator():
    assert matches_optimum_ratios(18e-6, 90e-6, 45e-6)
    assert not matches_optimum_ratios(18e-6, 120e-6, 45e-6)


def test_trap_geometry_derives_height_and_asymmetry():
    g = TrapGeometry.optimum(18e-6)
    assert g.h == ion_height(g.a, g.b, g.c)
    assert g.asymmetric
    assert not TrapGeometry(1, 2, 2, 3).asymmetric
    assert g.zeta == pytest.approx(4.90)


def test_axial_potential():
    p = AxialPotential(-1.0, 1.0, separation_zone=True)
    assert axial_potential(0.0, p) == 0
    assert axial_potential(1.0, p) == 0
    assert axial_potential(2.0, p) == pytest.approx(24 * e)
    assert axial_potential(2.0, p) == pytest.approx(3.845e-18, rel=1e-3)


def test_wedge_condition():
    with pytest.raises(DomainError):
        AxialPotential(1.0, 1.0, separation_zone=True)
    AxialPotential(1.0, 1.0)


def test_heating_rate_scaling():
    assert heating_rate_scaled(100, 25e-6, 25e-6) == 100
    assert heating_rate_scaled(100, 25e-6, 50e-6) == pytest.approx(8.839, rel=1e-4)
    assert heating_rate_scaled(100, 25e-6, 12.5e-6, 3.4) == pytest.approx(1055.6, rel=1e-4)
