import math
import warnings

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hybridsim.errors import DomainError
from hybridsim.modulation import (BawBeam, ModulationSpec, capacitance_waveform, carrier_plus_first,
                                  flexural_mode_frequency, fm_index_from_capacitance_modulation,
                                  fm_sideband_powers, harmonic_spectrum, max_index_for_power_fraction,
                                  mode_separation_check)
from scipy.special import jv

import oracles

C0 = 46e-15
NU = 2 * math.pi * 1e6


def spec(eta, scheme="single"):
    return ModulationSpec(C0, 2e-6, eta * 2e-6, NU, scheme)


def test_bessel_backend_matches_series_oracle():
    for n in range(6):
        for x in np.linspace(0, 3.5, 15):
            assert jv(n, x) == pytest.approx(oracles.bessel_j(n, x), abs=1e-10)


def test_waveform_examples():
    s = spec(0.0)
    assert np.all(capacitance_waveform(s, np.linspace(0, 1e-6, 7)) == C0)
    single = spec(0.3)
    t = math.pi / 2 / NU
    assert capacitance_waveform(single, t) == pytest.approx(C0 / 1.3, rel=1e-12)


def test_paired_mean_matches_quadrature():
    s = spec(0.3, "paired")
    mean = harmonic_spectrum(s)[0][1]
    assert mean == pytest.approx(oracles.fourier_amplitude(lambda x: oracles.paired_capacitance(0.3, x), 0),
                                 rel=1e-10)
    assert mean == pytest.approx(1 + 0.3**2 / 2, rel=0.005)  # second-order constant term


@given(st.floats(0.0, 0.9), st.floats(0.0, 1e-5))
@pytest.mark.filterwarnings("ignore:modulation depth")
def test_waveform_periodic(eta, t):
    for scheme in ("single", "paired"):
        s = spec(eta, scheme)
        assert capacitance_waveform(s, t + s.period) == pytest.approx(capacitance_waveform(s, t), rel=1e-9)


def test_spectrum_no_modulation():
    amps = harmonic_spectrum(spec(0.0))
    assert amps[0][1] == pytest.approx(1.0)
    assert max(a for k, a in amps[1:]) < 1e-14


def test_spectrum_matches_quadrature_oracle():
    for scheme, f in (("single", oracles.single_capacitance), ("paired", oracles.paired_capacitance)):
        amps = harmonic_spectrum(spec(0.3, scheme))
        for k in range(4):
            assert amps[k][1] == pytest.approx(oracles.fourier_amplitude(lambda x: f(0.3, x), k), abs=1e-9)


def test_single_second_harmonic_ratio():
    amps = harmonic_spectrum(spec(0.3))
    assert amps[2][1] / amps[1][1] == pytest.approx(0.15, rel=0.03)


def test_paired_cancels_second_harmonic():
    single = harmonic_spectrum(spec(0.3))[2][1]
    paired = harmonic_spectrum(spec(0.3, "paired"))[2][1]
    assert paired <= 0.1 * single


@pytest.mark.parametrize("eta", [0.05, 0.1, 0.2, 0.25])
def test_paired_fundamental_small_depth(eta):
    amp = harmonic_spectrum(spec(eta, "paired"))[1][1]
    assert amp == pytest.approx(eta / math.sqrt(2), rel=0.05)


def test_spectrum_sample_count_checked():
    with pytest.raises(DomainError):
        harmonic_spectrum(spec(0.3), 100)
    with pytest.raises(DomainError):
        harmonic_spectrum(spec(0.3), 300)


def test_depth_limits():
    with pytest.raises(DomainError):
        ModulationSpec(C0, 1e-6, 1e-6, NU)
    with pytest.warns(UserWarning):
        ModulationSpec(C0, 1e-6, 0.6e-6, NU)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        ModulationSpec(C0, 1e-6, 0.3e-6, NU)


def test_sideband_examples():
    powers, cpf = fm_sideband_powers(0.0)
    assert powers[0] == 1 and all(p == 0 for p in powers[1:])
    assert fm_sideband_powers(0.3)[1] == pytest.approx(oracles.carrier_plus_first(0.3), abs=1e-12)
    assert fm_sideband_powers(0.3)[1] == pytest.approx(0.99975, abs=1e-5)
    assert carrier_plus_first(1.0) == pytest.approx(0.97282, abs=1e-5)


@given(st.floats(0.0, 3.0))
def test_bessel_power_sum(m):
    assert sum(fm_sideband_powers(m, 40)[0]) == pytest.approx(1.0, abs=1e-9)


def test_max_index_against_scan_oracle():
    # the oracle walks upward to 1e-6 resolution, so it sits just below the crossing
    assert max_index_for_power_fraction(0.99) == pytest.approx(oracles.scan_max_index(0.99), abs=2e-4)
    assert max_index_for_power_fraction(0.5) == pytest.approx(oracles.scan_max_index(0.5), abs=2e-4)
    assert max_index_for_power_fraction(0.99) == pytest.approx(0.7677, abs=2e-4)
    assert max_index_for_power_fraction(0.5) == pytest.approx(2.4922, abs=2e-4)
    limits = [max_index_for_power_fraction(1 - 10.0**-k) for k in (4, 8, 12)]
    assert limits[0] > limits[1] > limits[2] and limits[2] < 5e-3
    with pytest.raises(DomainError):
        max_index_for_power_fraction(1.0)


def test_fm_index_conversion():
    assert fm_index_from_capacitance_modulation(0.0, 1e9, 1e6) == 0
    assert fm_index_from_capacitance_modulation(0.3, 1e9, 1e6) == pytest.approx(150)
    assert fm_index_from_capacitance_modulation(2e-9, 1e9, 1e6) == pytest.approx(1e-6)
    assert fm_index_from_capacitance_modulation(2e-6, 1e9, 1e6) == pytest.approx(1e-3)


def test_flexural_mode():
    beam = BawBeam(200e-6, 50e-6, 3e-6)
    f = flexural_mode_frequency(beam)
    assert f == pytest.approx(0.62e6, rel=0.01)
    assert 0.3e6 <= f <= 3e6
    thick = BawBeam(200e-6, 50e-6, 6e-6)
    assert flexural_mode_frequency(thick) == pytest.approx(2 * f)
    long = BawBeam(400e-6, 50e-6, 3e-6)
    assert flexural_mode_frequency(long) == pytest.approx(f / 4)


def test_mode_ratio_material_independent():
    expected = (oracles.flexural_root(2) / oracles.flexural_root(1)) ** 2
    for E, rho in ((63e9, 7500.0), (170e9, 2330.0)):
        f1 = flexural_mode_frequency(BawBeam(200e-6, 50e-6, 3e-6, E, rho, mode_number=1))
        f2 = flexural_mode_frequency(BawBeam(200e-6, 50e-6, 3e-6, E, rho, mode_number=2))
        assert f2 / f1 == pytest.approx(expected, rel=1e-8)
        assert f2 / f1 == pytest.approx(2.757, rel=1e-3)


def test_beam_validation():
    with pytest.raises(DomainError):
        BawBeam(50e-6, 200e-6, 3e-6)


def test_mode_separation_examples():
    by_pair = {c.pair: c for c in mode_separation_check(200e-6, 50e-6, 3e-6)}
    assert by_pair["length/width"].flagged and by_pair["length/width"].nearest == "4/1"
    assert {c.pair: c for c in mode_separation_check(199e-6, 50e-6, 3e-6)}["length/width"].flagged
    lw = {c.pair: c for c in mode_separation_check(200e-6, 61e-6, 3.1e-6)}["length/width"]
    assert not lw.flagged
    err, frac = oracles.nearest_fraction(200 / 61)
    assert lw.rel_error == pytest.approx(err) and lw.nearest == f"{frac.numerator}/{frac.denominator}"


@pytest.mark.parametrize("eta", [0.1, 0.3, 0.5])
def test_paired_fundamental_closed_form(eta):
    # 1/(1 + eta sin x) has first-harmonic amplitude 2 r / sqrt(1 - eta^2) with
    # r = (1 - sqrt(1 - eta^2)) / eta; the paired scheme adds two halves 90 deg apart
    r = (1 - math.sqrt(1 - eta**2)) / eta
    exact = math.sqrt(2) * r / math.sqrt(1 - eta**2)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        amp = harmonic_spectrum(spec(eta, "paired"))[1][1]
    assert amp == pytest.approx(exact, rel=1e-12)
