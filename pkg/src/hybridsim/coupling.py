"""Ion/circuit coupling strengths.

All rates are angular (rad/s); divide by 2*pi for Hz.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import DomainError
from .lc_circuit import zero_point_charge
from .quantities import IonSpecies, e, hbar, mu_B, mu_N

TWO_PI = 2 * math.pi

ZETA_GEOMETRY = 0.25
DECOHERENCE_RATE = 1e3  # s^-1, motional decoherence of the reference design
ION_HEIGHT = 25e-6
SECULAR_FREQUENCY = 1e6  # Hz
LC_FREQUENCY = 1e9  # Hz
MODULATION_DEPTH = 0.3


def harmonic_oscillator_length(mass: float, omega_i: float) -> float:
    """Ground-state extent ``sqrt(hbar / (2 m omega_i))`` in metres."""
    if not (mass > 0 and omega_i > 0):
        raise DomainError("mass and omega_i must be > 0")
    return math.sqrt(hbar / (2 * mass * omega_i))


def single_photon_coupling(zeta: float, z0: float, dq0: float, r: float, C0: float) -> float:
    """g0 = e zeta z0 dq0 / (r C0 hbar), in rad/s."""
    return e * zeta * z0 * dq0 / (r * C0 * hbar)


@dataclass(frozen=True)
class MotionalCouplingInput:
    zeta_geom: float = ZETA_GEOMETRY
    r: float = ION_HEIGHT
    C0: float = 46e-15
    z0: float = 24e-9
    dq0: float = 1.4e-19
    eta: float = MODULATION_DEPTH
    omega_i: float = TWO_PI * SECULAR_FREQUENCY
    omega_lc: float = TWO_PI * LC_FREQUENCY
    delta: float = 0.0
    kappa: Optional[float] = None
    decoherence: Optional[float] = DECOHERENCE_RATE

    def __post_init__(self):
        if not 0 < self.zeta_geom <= 1:
            raise DomainError(f"zeta_geom must lie in (0, 1], got {self.zeta_geom!r}")
        for name in ("r", "C0", "z0", "dq0", "eta", "omega_i", "omega_lc"):
            if not getattr(self, name) > 0:
                raise DomainError(f"{name} must be > 0")
        for name in ("kappa", "decoherence"):
            v = getattr(self, name)
            if v is not None and v < 0:
                raise DomainError(f"{name} must be >= 0")


@dataclass(frozen=True)
class CouplingResult:
    """Both coupling conventions.

    ``g_text = eta g0`` is the effective exchange rate usually quoted;
    ``g_hamiltonian = 2 eta g0 / 3`` is the prefactor of the rotating-wave
    exchange Hamiltonian.  The dynamics module defaults to the latter.
    """

    g0: float
    eta: float
    kappa: Optional[float]
    decoherence: Optional[float]
    g_text: float = field(init=False)
    g_hamiltonian: float = field(init=False)
    regime: str = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "g_text", self.eta * self.g0)
        object.__setattr__(self, "g_hamiltonian", 2 * self.eta * self.g0 / 3)
        object.__setattr__(self, "regime", classify_regime(self.g_text, self.kappa, self.decoherence))


def classify_regime(g: float, kappa: Optional[float] = None, decoherence: Optional[float] = None) -> str:
    """'strong' when g exceeds every supplied loss rate, else 'weak'."""
    losses = [x for x in (kappa, decoherence) if x is not None]
    if not losses:
        return "strong"
    return "strong" if g > max(losses) else "weak"


def motional_coupling(inp: MotionalCouplingInput) -> CouplingResult:
    g0 = single_photon_coupling(inp.zeta_geom, inp.z0, inp.dq0, inp.r, inp.C0)
    return CouplingResult(g0, inp.eta, inp.kappa, inp.decoherence)


def coupling_vs_capacitance(ion: IonSpecies, C_range, n_points: int, omega_lc: float,
                            zeta: float = ZETA_GEOMETRY, r: float = ION_HEIGHT,
                            omega_i: float = TWO_PI * SECULAR_FREQUENCY, scale: str = "log"):
    """g0/2pi (Hz) versus total capacitance at fixed circuit frequency.

    For each C the impedance is 1/(omega_lc C), so dq0 and hence g0 follow
    C**-1/2.  Returns ``(C, g0_over_2pi)`` arrays.
    """
    c_lo, c_hi = float(C_range[0]), float(C_range[1])
    if not (0 < c_lo <= c_hi) or n_points < 1:
        raise DomainError(f"empty capacitance range [{c_lo!r}, {c_hi!r}] or n_points < 1")
    if not omega_lc > 0:
        raise DomainError("omega_lc must be > 0")
    if n_points == 1:
        caps = np.array([c_lo])
    elif scale == "log":
        caps = np.geomspace(c_lo, c_hi, n_points)
    else:
        caps = np.linspace(c_lo, c_hi, n_points)
    z0 = harmonic_oscillator_length(ion.mass, omega_i)
    g = np.array([single_photon_coupling(zeta, z0, zero_point_charge(1 / (omega_lc * c)), r, c) for c in caps])
    return caps, g / TWO_PI


def magnetic_dipole_coupling(B_trans: float, matrix_element: float = 0.5, g_s: float = 2.0,
                             include_nuclear: bool = False, g_I: float = 0.0,
                             nuclear_matrix_element: Optional[float] = None) -> float:
    """Single-photon M1 coupling (rad/s) for a transverse field amplitude ``B_trans`` (T).

    The default matrix element 1/2 with g_s = 2 models the hyperfine clock
    transition with the nuclear term neglected (g_I << g_s).
    """
    if B_trans < 0:
        raise DomainError("B_trans must be >= 0")
    moment = mu_B * g_s * matrix_element
    if include_nuclear:
        m_i = matrix_element if nuclear_matrix_element is None else nuclear_matrix_element
        moment -= mu_N * g_I * m_i
    return moment * B_trans / (math.sqrt(2) * hbar)


def ensemble_coupling(g_single: float, N: int) -> float:
    """Collective coupling sqrt(N) g of N identical emitters."""
    if N < 1:
        raise DomainError(f"N must be >= 1, got {N!r}")
    return math.sqrt(N) * g_single


def charge_qubit_coupling(beta_cg: float, omega_r: float, c_per_len: float, line_len: float) -> float:
    """Cooper-pair box to transmission-line resonator coupling (rad/s)."""
    if not 0 < beta_cg < 1:
        raise DomainError("beta_cg must lie in (0, 1)")
    if not (omega_r > 0 and c_per_len > 0 and line_len > 0):
        raise DomainError("omega_r, c_per_len and line_len must be > 0")
    return beta_cg * e / hbar * math.sqrt(hbar * omega_r / (c_per_len * line_len))


def cavity_decay_rate(f: float, Q: float) -> float:
    """Energy decay rate kappa = 2 pi f / Q (rad/s)."""
    if not (f > 0 and Q > 0):
        raise DomainError("f and Q must be > 0")
    return TWO_PI * f / Q
