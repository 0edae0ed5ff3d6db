"""Photon/phonon exchange between the LC mode and the ion motional mode.

Interaction picture, rotating-wave approximation:

    H(t)/hbar = i G exp(-i Delta t) a b^dag - i G exp(+i Delta t) a^dag b

with ``a`` the LC photon and ``b`` the ion phonon annihilation operator.
Fock basis index is ``n_lc * (n_trunc + 1) + n_ion``.  Damping is
zero-temperature Lindblad decay kappa D[a] + gamma_ion D[b].
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import DomainError, SimulationError

DEFAULT_TRUNCATION = 4
TRUNCATION_TOLERANCE = 1e-6
# dt <= STEP_RULE * 2pi / fastest rate
STEP_RULE = 0.01
# default dt as a fraction of the same period
DEFAULT_STEP_FRACTION = 0.001
_TINY_RATE = 1e-300


def destroy(n_trunc: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, n_trunc + 1, dtype=float)), 1).astype(complex)


def mode_operators(n_trunc: int) -> tuple[np.ndarray, np.ndarray]:
    """``(a, b)`` on the product space, LC mode first."""
    d = destroy(n_trunc)
    eye = np.eye(n_trunc + 1)
    return np.kron(d, eye), np.kron(eye, d)


def build_interaction(g_eff: float, delta: float, n_trunc: int, t: float) -> np.ndarray:
    """H(t)/hbar as a dense (n_trunc+1)^2 square matrix."""
    if n_trunc < 1:
        raise DomainError("n_trunc must be >= 1")
    a, b = mode_operators(n_trunc)
    term = 1j * g_eff * np.exp(-1j * delta * t) * (a @ b.conj().T)
    return term + term.conj().T


@dataclass
class TwoModeState:
    """Pure state (amplitudes shaped (n+1, n+1)) or density matrix ((n+1)^2 square)."""

    n_trunc: int
    amplitudes: np.ndarray
    representation: str = "pure"

    def __post_init__(self):
        if self.n_trunc < 2:
            raise DomainError("n_trunc must be >= 2")
        dim = self.n_trunc + 1
        self.amplitudes = np.asarray(self.amplitudes, dtype=complex)
        if self.representation == "pure":
            if self.amplitudes.shape != (dim, dim):
                raise DomainError(f"pure amplitudes must have shape {(dim, dim)}")
            if abs(np.vdot(self.amplitudes, self.amplitudes).real - 1) > 1e-9:
                raise DomainError("state is not normalised")
        elif self.representation == "density":
            if self.amplitudes.shape != (dim * dim, dim * dim):
                raise DomainError(f"density matrix must have shape {(dim * dim, dim * dim)}")
            if abs(np.trace(self.amplitudes).real - 1) > 1e-9:
                raise DomainError("density matrix trace is not 1")
            if np.max(np.abs(self.amplitudes - self.amplitudes.conj().T)) > 1e-12:
                raise DomainError("density matrix is not Hermitian")
        else:
            raise DomainError(f"representation must be 'pure' or 'density', got {self.representation!r}")

    @classmethod
    def fock(cls, n_lc: int, n_ion: int, n_trunc: int = DEFAULT_TRUNCATION, representation: str = "pure"):
        dim = n_trunc + 1
        if not (0 <= n_lc <= n_trunc and 0 <= n_ion <= n_trunc):
            raise DomainError("Fock numbers exceed the truncation")
        psi = np.zeros((dim, dim), dtype=complex)
        psi[n_lc, n_ion] = 1
        if representation == "density":
            v = psi.ravel()
            return cls(n_trunc, np.outer(v, v.conj()), "density")
        return cls(n_trunc, psi, "pure")

    def populations(self) -> np.ndarray:
        """P(n_lc, n_ion) as a (n+1, n+1) array."""
        dim = self.n_trunc + 1
        if self.representation == "pure":
            return np.abs(self.amplitudes) ** 2
        return np.real(np.diag(self.amplitudes)).reshape(dim, dim)

    def to_density(self) -> "TwoModeState":
        if self.representation == "density":
            return self
        v = self.amplitudes.ravel()
        return TwoModeState(self.n_trunc, np.outer(v, v.conj()), "density")


@dataclass
class DynamicsConfig:
    g_eff: float  # rad/s
    delta: float = 0.0  # rad/s
    kappa: float = 0.0
    gamma_ion: float = 0.0
    t_end: Optional[float] = None  # default: one resonant swap, pi / (2 G)
    dt: Optional[float] = None
    integrator: str = "rk4_state"
    record_every: int = 1
    truncation_tolerance: float = TRUNCATION_TOLERANCE

    def __post_init__(self):
        if self.integrator not in ("rk4_state", "rk4_density"):
            raise DomainError(f"integrator must be 'rk4_state' or 'rk4_density', got {self.integrator!r}")
        if self.kappa < 0 or self.gamma_ion < 0:
            raise DomainError("decay rates must be >= 0")
        if self.integrator == "rk4_state" and (self.kappa or self.gamma_ion):
            raise DomainError("damping needs the rk4_density integrator")
        if self.t_end is None:
            if self.g_eff == 0:
                raise DomainError("t_end is required when g_eff = 0")
            self.t_end = swap_time(self.g_eff)
        if self.t_end < 0:
            raise DomainError("t_end must be >= 0")
        bound = self.max_dt
        if self.dt is None:
            self.dt = DEFAULT_STEP_FRACTION / STEP_RULE * bound
        if not 0 < self.dt <= bound * (1 + 1e-12):
            raise DomainError(f"dt={self.dt:g} s violates the step rule dt <= {bound:g} s")
        if self.record_every < 1:
            raise DomainError("record_every must be >= 1")

    @property
    def fastest_rate(self) -> float:
        return max(abs(self.g_eff), abs(self.delta), self.kappa, self.gamma_ion, _TINY_RATE)

    @property
    def max_dt(self) -> float:
        return STEP_RULE * 2 * math.pi / self.fastest_rate


def swap_time(G: float) -> float:
    """Time of the first complete resonant exchange, pi / (2 G)."""
    return math.pi / (2 * abs(G))


def analytic_transfer(G: float, delta: float, t: float) -> float:
    """P(|1,0> -> |0,1>) in the single-excitation subspace."""
    omega2 = G**2 + delta**2 / 4
    if omega2 == 0:
        return 0.0
    return G**2 / omega2 * math.sin(math.sqrt(omega2) * t) ** 2


@dataclass
class Trajectory:
    t: np.ndarray
    n_lc: np.ndarray
    n_ion: np.ndarray
    p_swap: np.ndarray  # population of |0,1>
    populations: np.ndarray  # (steps, n+1, n+1)
    final: TwoModeState = field(repr=False)

    @property
    def peak_swap(self) -> tuple[float, float]:
        """(time, probability) of the largest recorded |0,1> population."""
        k = int(np.argmax(self.p_swap))
        return float(self.t[k]), float(self.p_swap[k])


class _Integrator:
    def __init__(self, cfg: DynamicsConfig, n_trunc: int):
        a, b = mode_operators(n_trunc)
        self.cfg = cfg
        self.ab_dag = a @ b.conj().T
        self.jumps = [(r, op) for r, op in ((cfg.kappa, a), (cfg.gamma_ion, b)) if r > 0]
        self.damping = sum((0.5 * r * op.conj().T @ op for r, op in self.jumps), np.zeros_like(a))

    def hamiltonian(self, t):
        term = 1j * self.cfg.g_eff * np.exp(-1j * self.cfg.delta * t) * self.ab_dag
        return term + term.conj().T

    def rhs_state(self, t, psi):
        return -1j * (self.hamiltonian(t) @ psi)

    def rhs_density(self, t, rho):
        h_eff = self.hamiltonian(t) - 1j * self.damping
        out = -1j * (h_eff @ rho) + 1j * (rho @ h_eff.conj().T)
        for r, op in self.jumps:
            out += r * (op @ rho @ op.conj().T)
        return out

    def step(self, f, t, y, dt):
        k1 = f(t, y)
        k2 = f(t + dt / 2, y + dt / 2 * k1)
        k3 = f(t + dt / 2, y + dt / 2 * k2)
        k4 = f(t + dt, y + dt * k3)
        return y + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4)


def _edge_population(pop: np.ndarray) -> float:
    return float(pop[-1, :].sum() + pop[:-1, -1].sum())


def evolve(state: TwoModeState, cfg: DynamicsConfig) -> Trajectory:
    """Fixed-step RK4 from t = 0 to ``cfg.t_end``.

    Observables are recorded every ``cfg.record_every`` steps and at the
    end.  Aborts with :class:`SimulationError` when population leaks into the
    truncation edge or the state stops being finite.
    """
    n = state.n_trunc
    dim = n + 1
    density = cfg.integrator == "rk4_density"
    if density:
        y = state.to_density().amplitudes.copy()
    elif state.representation == "density":
        raise DomainError("rk4_state needs a pure state")
    else:
        y = state.amplitudes.ravel().copy()

    integ = _Integrator(cfg, n)
    f = integ.rhs_density if density else integ.rhs_state
    n_steps = int(math.ceil(cfg.t_end / cfg.dt - 1e-9)) if cfg.t_end > 0 else 0
    dt = cfg.t_end / n_steps if n_steps else 0.0

    n_lc_diag = np.repeat(np.arange(dim), dim)
    n_ion_diag = np.tile(np.arange(dim), dim)
    ts, pops = [], []

    def record(t, y):
        p = np.real(np.diag(y)) if density else np.abs(y) ** 2
        ts.append(t)
        pops.append(p.reshape(dim, dim))

    record(0.0, y)
    for k in range(1, n_steps + 1):
        t0 = (k - 1) * dt
        y = integ.step(f, t0, y, dt)
        if not np.all(np.isfinite(y)):
            raise SimulationError(f"non-finite state at t={k * dt:g} s")
        if k % cfg.record_every == 0 or k == n_steps:
            record(k * dt, y)
            edge = _edge_population(pops[-1])
            if edge > cfg.truncation_tolerance:
                raise SimulationError(
                    f"truncation guard: population {edge:.3g} at n={n} edge at t={k * dt:g} s; raise n_trunc"
                )

    pops = np.array(pops)
    flat = pops.reshape(len(pops), -1)
    final = TwoModeState(n, y if density else y.reshape(dim, dim), "density" if density else "pure") \
        if _valid_final(y, density) else _raw_state(n, y, density)
    return Trajectory(
        t=np.array(ts),
        n_lc=flat @ n_lc_diag,
        n_ion=flat @ n_ion_diag,
        p_swap=pops[:, 0, 1],
        populations=pops,
        final=final,
    )


def _valid_final(y, density) -> bool:
    if density:
        return abs(np.trace(y).real - 1) <= 1e-9 and np.max(np.abs(y - y.conj().T)) <= 1e-12
    return abs(np.vdot(y, y).real - 1) <= 1e-9


def _raw_state(n, y, density):
    # Skip validation so callers can inspect a drifted state.
    s = object.__new__(TwoModeState)
    s.n_trunc = n
    s.amplitudes = y if density else y.reshape(n + 1, n + 1)
    s.representation = "density" if density else "pure"
    return s


def swap_fidelity_with_damping(cfg: DynamicsConfig, n_trunc: int = DEFAULT_TRUNCATION) -> float:
    """<0,1| rho |0,1> after evolving |1,0><1,0| for one resonant swap time.

    ``cfg.t_end`` is overridden with pi / (2 G).  With G = 0 nothing is ever
    transferred and the result is 0.
    """
    if cfg.g_eff == 0:
        return 0.0
    run = DynamicsConfig(cfg.g_eff, cfg.delta, cfg.kappa, cfg.gamma_ion, swap_time(cfg.g_eff),
                         None, "rk4_density", record_every=10**9,
                         truncation_tolerance=cfg.truncation_tolerance)
    if cfg.dt is not None and cfg.dt <= run.max_dt:
        run.dt = cfg.dt
    traj = evolve(TwoModeState.fock(1, 0, n_trunc, "density"), run)
    return float(traj.populations[-1, 0, 1])
