"""Lumped superconducting LC circuit quantities."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from .errors import DomainError
from .quantities import eps0, hbar

# |tan| above this is treated as a pole of the stub reactance
STUB_RESONANCE_LIMIT = 1e8

# Values quoted for the reference circuit.  They are not mutually consistent:
# sqrt(400 nH / 46 fF) is 2.95 kOhm, not 2.7 kOhm, and the inductor is also
# quoted as 440 nH elsewhere.
REFERENCE_C0 = 46e-15
REFERENCE_L0 = 400e-9
REFERENCE_L0_STUB = 440e-9
REFERENCE_Z = 2.7e3
REFERENCE_F_R = 1e9


def zero_point_charge(Z: float) -> float:
    """Zero-point charge fluctuation ``sqrt(hbar / 2Z)`` in coulomb."""
    if not Z > 0:
        raise DomainError(f"impedance must be > 0, got {Z!r}")
    return math.sqrt(hbar / (2 * Z))


def zero_point_flux(Z: float) -> float:
    """Zero-point flux fluctuation ``sqrt(hbar Z / 2)`` in weber."""
    if not Z > 0:
        raise DomainError(f"impedance must be > 0, got {Z!r}")
    return math.sqrt(hbar * Z / 2)


@dataclass(frozen=True)
class LcCircuit:
    """LC resonator.  ``Z_override`` replaces sqrt(L/C) in the zero-point terms."""

    C0: float
    L0: float
    Z_override: Optional[float] = None
    omega_r: float = field(init=False)
    Z: float = field(init=False)
    dq0: float = field(init=False)
    dphi0: float = field(init=False)

    def __post_init__(self):
        if not (self.C0 > 0 and self.L0 > 0):
            raise DomainError(f"C0 and L0 must be > 0, got C0={self.C0!r}, L0={self.L0!r}")
        if self.Z_override is not None and not self.Z_override > 0:
            raise DomainError(f"Z_override must be > 0, got {self.Z_override!r}")
        z = math.sqrt(self.L0 / self.C0)
        z_eff = z if self.Z_override is None else self.Z_override
        object.__setattr__(self, "omega_r", 1 / math.sqrt(self.L0 * self.C0))
        object.__setattr__(self, "Z", z)
        object.__setattr__(self, "dq0", zero_point_charge(z_eff))
        object.__setattr__(self, "dphi0", zero_point_flux(z_eff))

    @property
    def f_r(self) -> float:
        return self.omega_r / (2 * math.pi)

    @property
    def uncertainty_product(self) -> float:
        """dq0 * dphi0, equal to hbar/2 for the oscillator ground state."""
        return self.dq0 * self.dphi0


def derive_circuit(C0: float, L0: float, Z_override: Optional[float] = None) -> LcCircuit:
    return LcCircuit(C0, L0, Z_override)


def stub_reactance(Z0: float, length: float, wavelength: float, termination: str = "short"):
    """Input reactance of a lossless transmission-line stub.

    Returns ``(X, character)`` where character is ``"inductive"``,
    ``"capacitive"`` or ``"resonant"`` (at a pole, X is +/-inf).
    The character flips every quarter wavelength.
    """
    if not (Z0 > 0 and wavelength > 0) or length < 0:
        raise DomainError("need Z0 > 0, wavelength > 0, length >= 0")
    theta = 2 * math.pi * length / wavelength
    t = math.tan(theta)
    if termination == "short":
        if abs(t) > STUB_RESONANCE_LIMIT:
            return math.inf, "resonant"
        x = Z0 * t
    elif termination == "open":
        # -Z0 cot(theta); pole where tan -> 0
        if abs(t) < 1 / STUB_RESONANCE_LIMIT:
            return -math.inf, "resonant"
        x = -Z0 / t
    else:
        raise DomainError(f"termination must be 'short' or 'open', got {termination!r}")
    return x, "inductive" if x > 0 else "capacitive"


@dataclass(frozen=True)
class InterdigitalGeometry:
    n_fingers: int
    finger_length: float
    finger_width: float
    finger_thickness: float
    gap: float
    eps_eff: float = 1.0
    n_parallel: int = 1

    def __post_init__(self):
        if self.n_fingers < 2:
            raise DomainError("an interdigital capacitor needs at least 2 fingers")
        for name in ("finger_length", "finger_width", "finger_thickness", "gap", "eps_eff"):
            if not getattr(self, name) > 0:
                raise DomainError(f"{name} must be > 0")
        if self.n_parallel < 1:
            raise DomainError("n_parallel must be >= 1")


# 2 x four-finger capacitor, fingers 5 x 84 x 1 um, 5 um spacing.  eps_eff is
# the sapphire/vacuum average (11.5 + 1) / 2.
REFERENCE_INTERDIGITAL = InterdigitalGeometry(
    n_fingers=4, finger_length=84e-6, finger_width=5e-6, finger_thickness=1e-6,
    gap=5e-6, eps_eff=6.25, n_parallel=2,
)


def interdigital_capacitance_estimate(g: InterdigitalGeometry) -> float:
    """LOW-FIDELITY parallel-edge estimate of an interdigital capacitance (F).

    Counts only the finger side walls facing each other across each gap.
    Fringe fields and the moving plate are ignored, so the result sits far
    below measured or simulated totals.  Treat it as a lower-bound sanity
    check, never as a design value.
    """
    return g.n_parallel * (g.n_fingers - 1) * eps0 * g.eps_eff * g.finger_thickness * g.finger_length / g.gap
