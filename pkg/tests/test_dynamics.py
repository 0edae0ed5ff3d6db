import math

import numpy as np
import pytest

from hybridsim.dynamics import (DynamicsConfig, TwoModeState, analytic_transfer, build_interaction, evolve,
                                mode_operators, swap_fidelity_with_damping, swap_time)
from hybridsim.errors import DomainError, SimulationError

import oracles

TWO_PI = 2 * math.pi
G35 = TWO_PI * 35.3e3


def excitation_number(traj):
    return traj.n_lc + traj.n_ion


def test_interaction_examples():
    assert np.all(build_interaction(0.0, 0.0, 3, 0.0) == 0)
    h = build_interaction(G35, 0.0, 1, 0.0)
    # basis |n_lc, n_ion> flattened LC-major: |0,1> = 1, |1,0> = 2
    assert abs(h[1, 2]) == pytest.approx(G35) and abs(h[2, 1]) == pytest.approx(G35)
    assert np.allclose(h, h.conj().T)
    norms = {round(np.linalg.norm(build_interaction(G35, TWO_PI * 70e3, 3, t)), 6) for t in (0, 1e-6, 3.3e-6)}
    assert len(norms) == 1


def test_interaction_commutes_with_excitation_number():
    a, b = mode_operators(4)
    n = a.conj().T @ a + b.conj().T @ b
    h = build_interaction(G35, TWO_PI * 10e3, 4, 1.7e-6)
    assert np.max(np.abs(h @ n - n @ h)) < 1e-6


def test_resonant_swap():
    traj = evolve(TwoModeState.fock(1, 0), DynamicsConfig(G35))
    assert traj.p_swap[-1] >= 0.999
    assert traj.t[-1] == pytest.approx(swap_time(G35))


def test_vacuum_is_stationary():
    traj = evolve(TwoModeState.fock(0, 0), DynamicsConfig(G35, t_end=5 * swap_time(G35)))
    assert np.all(traj.populations[:, 0, 0] == pytest.approx(1.0, abs=1e-15))


def test_detuned_transfer_peak_half():
    G = G35
    cfg = DynamicsConfig(G, delta=2 * G, t_end=math.pi / math.sqrt(2) / G)
    traj = evolve(TwoModeState.fock(1, 0), cfg)
    assert traj.peak_swap[1] == pytest.approx(0.5, abs=1e-6)


def test_analytic_examples():
    assert analytic_transfer(G35, 0.0, swap_time(G35)) == pytest.approx(1.0)
    assert analytic_transfer(G35, 0.0, 0.0) == 0.0
    assert analytic_transfer(0.0, 0.0, 1.0) == 0.0


def test_analytic_matches_independent_rk4():
    G, d, t = TWO_PI * 35e3, TWO_PI * 70e3, 10e-6
    assert analytic_transfer(G, d, t) == pytest.approx(oracles.two_level_transfer(G, d, t), abs=1e-10)


@pytest.mark.parametrize("G_khz", [10.0, 35.3, 80.0])
@pytest.mark.parametrize("d_khz", [-50.0, 0.0, 35.0, 120.0])
def test_evolve_matches_analytic_grid(G_khz, d_khz):
    G, d = TWO_PI * G_khz * 1e3, TWO_PI * d_khz * 1e3
    cfg = DynamicsConfig(G, d, t_end=20e-6)
    traj = evolve(TwoModeState.fock(1, 0), cfg)
    expected = np.array([analytic_transfer(G, d, t) for t in traj.t])
    assert np.max(np.abs(traj.p_swap - expected)) <= 1e-6
    assert np.max(np.abs(excitation_number(traj) - 1)) <= 1e-9


def test_norm_conserved_over_many_steps():
    cfg = DynamicsConfig(G35, TWO_PI * 20e3, t_end=50 * swap_time(G35))
    traj = evolve(TwoModeState.fock(1, 0), cfg)
    assert len(traj.t) > 1e4
    assert np.max(np.abs(traj.populations.sum(axis=(1, 2)) - 1)) < 1e-9


def test_step_halving_convergence():
    base = DynamicsConfig(G35, TWO_PI * 10e3, t_end=3 * swap_time(G35))
    half = DynamicsConfig(G35, TWO_PI * 10e3, t_end=base.t_end, dt=base.dt / 2)
    a = evolve(TwoModeState.fock(1, 0), base).final.populations()
    b = evolve(TwoModeState.fock(1, 0), half).final.populations()
    assert np.max(np.abs(a - b)) < 1e-8


def test_density_trace_and_positivity():
    cfg = DynamicsConfig(G35, kappa=5e3, gamma_ion=1e3, integrator="rk4_density")
    traj = evolve(TwoModeState.fock(1, 0, representation="density"), cfg)
    rho = traj.final.amplitudes
    assert abs(np.trace(rho).real - 1) < 1e-9
    assert np.max(np.abs(rho - rho.conj().T)) < 1e-12
    assert np.linalg.eigvalsh(rho).min() >= -1e-8


def test_damped_swap_fidelity():
    assert swap_fidelity_with_damping(DynamicsConfig(G35)) >= 0.999
    f = swap_fidelity_with_damping(DynamicsConfig(G35, gamma_ion=1e3, integrator="rk4_density"))
    assert f >= 0.99
    # first-order loss estimate gamma t_swap / 2
    assert 1 - f == pytest.approx(1e3 * swap_time(G35) / 2, rel=0.05)
    assert swap_fidelity_with_damping(DynamicsConfig(0.0, kappa=1e3, t_end=1e-6, integrator="rk4_density")) == 0


def test_step_rule_enforced():
    with pytest.raises(DomainError):
        DynamicsConfig(G35, dt=1e-5)
    cfg = DynamicsConfig(G35)
    assert cfg.dt <= 0.01 * TWO_PI / G35


def test_config_validation():
    with pytest.raises(DomainError):
        DynamicsConfig(G35, kappa=1.0)  # damping needs the density integrator
    with pytest.raises(DomainError):
        DynamicsConfig(0.0)
    with pytest.raises(DomainError):
        DynamicsConfig(G35, integrator="euler")


def test_state_validation():
    with pytest.raises(DomainError):
        TwoModeState(1, np.eye(2))
    with pytest.raises(DomainError):
        TwoModeState(2, np.zeros((3, 3)))
    with pytest.raises(DomainError):
        TwoModeState.fock(5, 0, 4)


def test_truncation_guard():
    # |2,2> at n_trunc = 2 already sits on the edge of the truncated space
    with pytest.raises(SimulationError):
        evolve(TwoModeState.fock(2, 2, 2), DynamicsConfig(G35))


def test_pure_and_density_agree():
    cfg_p = DynamicsConfig(G35, TWO_PI * 5e3)
    cfg_d = DynamicsConfig(G35, TWO_PI * 5e3, integrator="rk4_density")
    a = evolve(TwoModeState.fock(1, 0), cfg_p).final.populations()
    b = evolve(TwoModeState.fock(1, 0).to_density(), cfg_d).final.populations()
    assert np.max(np.abs(a - b)) < 1e-10
