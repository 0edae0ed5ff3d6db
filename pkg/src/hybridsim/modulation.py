"""Capacitance modulation by a flexing BAW plate and its spectral content.

The moving plate changes the plate separation from ``alpha`` to
``alpha + beta_amp * sin(nu t)``, so the capacitance follows
``C0 * alpha / (alpha + beta_amp sin(nu t))``.  In the paired scheme two
half-size capacitors are driven 90 degrees apart, which cancels the second
harmonic to leading order.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.special import jv

from .errors import DomainError

# Handbook PZT values (not from the design itself); override per run.
PZT_YOUNGS_MODULUS = 63e9
PZT_DENSITY = 7500.0

# beta_n * L roots of the Euler-Bernoulli characteristic equations
BETA_L = {
    "clamped-clamped": (4.730040745, 7.853204624, 10.995607838, 14.137165491, 17.278759657),
    "free-free": (4.730040745, 7.853204624, 10.995607838, 14.137165491, 17.278759657),
    "clamped-free": (1.875104069, 4.694091133, 7.854757438, 10.995540735, 14.137168391),
}


J1_FIRST_ZERO = 3.8317059702075125


@dataclass(frozen=True)
class ModulationSpec:
    C0: float
    alpha: float
    beta_amp: float
    nu: float  # rad/s
    scheme: str = "single"
    eta: float = field(init=False)

    def __post_init__(self):
        if self.scheme not in ("single", "paired"):
            raise DomainError(f"scheme must be 'single' or 'paired', got {self.scheme!r}")
        if not (self.C0 > 0 and self.alpha > 0 and self.nu > 0):
            raise DomainError("C0, alpha and nu must be > 0")
        if not 0 <= self.beta_amp < self.alpha:
            raise DomainError(f"need 0 <= beta_amp < alpha, got beta_amp={self.beta_amp!r}, alpha={self.alpha!r}")
        eta = self.beta_amp / self.alpha
        if eta > 0.5:
            warnings.warn(f"modulation depth {eta:.3g} > 0.5: series expansions are unreliable", stacklevel=3)
        object.__setattr__(self, "eta", eta)

    @property
    def period(self) -> float:
        return 2 * math.pi / self.nu


def capacitance_waveform(spec: ModulationSpec, t):
    """Exact capacitance at time(s) ``t``; scalar in, scalar out."""
    t = np.asarray(t, dtype=float)
    a, b, w = spec.alpha, spec.beta_amp, spec.nu * t
    if spec.scheme == "single":
        c = spec.C0 * a / (a + b * np.sin(w))
    else:
        c = 0.5 * spec.C0 * (a / (a + b * np.sin(w)) + a / (a + b * np.cos(w)))
    return float(c) if c.ndim == 0 else c


def harmonic_spectrum(spec: ModulationSpec, n_samples: int = 1024) -> list[tuple[int, float]]:
    """Amplitudes of harmonics 0..n_samples/2 over one drive period, in units of C0.

    Harmonic 0 is the mean; harmonic k > 0 is the peak amplitude of the
    k-th cosine/sine pair.
    """
    if n_samples < 256 or n_samples & (n_samples - 1):
        raise DomainError(f"n_samples must be a power of two >= 256, got {n_samples}")
    t = np.arange(n_samples) * spec.period / n_samples
    spectrum = np.abs(np.fft.rfft(capacitance_waveform(spec, t))) / n_samples
    spectrum[1:-1] *= 2
    spectrum /= spec.C0
    return [(k, float(v)) for k, v in enumerate(spectrum)]


def fm_sideband_powers(index: float, n_max: int = 10):
    """Power fractions of an FM carrier with modulation index ``index``.

    ``powers[0] = J0^2`` is the carrier, ``powers[n] = 2 Jn^2`` the pair of
    n-th sidebands.  Returns ``(powers, carrier_plus_first)``.
    """
    if index < 0:
        raise DomainError(f"modulation index must be >= 0, got {index!r}")
    n = np.arange(n_max + 1)
    p = jv(n, index) ** 2
    p[1:] *= 2
    powers = [float(x) for x in p]
    first = powers[1] if n_max >= 1 else 0.0
    return powers, powers[0] + first


def carrier_plus_first(index: float) -> float:
    return float(jv(0, index) ** 2 + 2 * jv(1, index) ** 2)


def max_index_for_power_fraction(threshold: float, tol: float = 1e-4) -> float:
    """Largest index whose carrier+first-sideband fraction is still >= ``threshold``.

    d/dx (J0^2 + 2 J1^2) = -2 J1 J2, so the fraction falls monotonically
    until the first zero of J1; the search stays on that branch.
    """
    if not 0 < threshold < 1:
        raise DomainError(f"threshold must lie in (0, 1), got {threshold!r}")
    lo, hi = 0.0, J1_FIRST_ZERO
    if carrier_plus_first(hi) >= threshold:
        return hi
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if carrier_plus_first(mid) >= threshold:
            lo = mid
        else:
            hi = mid
    return lo


def fm_index_from_capacitance_modulation(eta: float, f_carrier: float, f_mod: float) -> float:
    """FM index for a capacitance depth ``eta``.

    omega ~ C**-1/2 gives a peak fractional deviation eta/2 to first order,
    hence index = eta * f_carrier / (2 f_mod).
    """
    if eta < 0 or not (f_carrier > 0 and f_mod > 0):
        raise DomainError("need eta >= 0 and positive frequencies")
    return eta * f_carrier / (2 * f_mod)


@dataclass(frozen=True)
class BawBeam:
    length: float
    width: float
    thickness: float
    youngs_modulus: float = PZT_YOUNGS_MODULUS
    density: float = PZT_DENSITY
    boundary: str = "clamped-clamped"
    mode_number: int = 2

    def __post_init__(self):
        if not self.length > self.width > self.thickness > 0:
            raise DomainError("need length > width > thickness > 0")
        if self.boundary not in BETA_L:
            raise DomainError(f"boundary must be one of {sorted(BETA_L)}")
        if not 1 <= self.mode_number <= len(BETA_L[self.boundary]):
            raise DomainError(f"mode_number must be in 1..{len(BETA_L[self.boundary])}")
        if not (self.youngs_modulus > 0 and self.density > 0):
            raise DomainError("youngs_modulus and density must be > 0")


def flexural_mode_frequency(beam: BawBeam) -> float:
    """Euler-Bernoulli flexural frequency (Hz) of a uniform rectangular beam."""
    bl = BETA_L[beam.boundary][beam.mode_number - 1]
    stiffness = math.sqrt(beam.youngs_modulus * beam.thickness**2 / (12 * beam.density))
    return bl**2 / (2 * math.pi * beam.length**2) * stiffness


@dataclass(frozen=True)
class RatioCheck:
    pair: str
    ratio: float
    nearest: str
    rel_error: float
    flagged: bool


def mode_separation_check(length: float, width: float, thickness: float, max_ratio_den: int = 5,
                          tol: float = 0.02) -> list[RatioCheck]:
    """Flag dimension pairs whose ratio is near a small rational p/q.

    Near-commensurate dimensions let harmonics of other principal modes land
    on the drive frequency.  Ratios are taken larger/smaller and compared
    against every p/q with p, q <= ``max_ratio_den``.
    """
    dims = {"length": length, "width": width, "thickness": thickness}
    if any(not v > 0 for v in dims.values()):
        raise DomainError("dimensions must be > 0")
    candidates = sorted({Fraction(p, q) for p in range(1, max_ratio_den + 1) for q in range(1, max_ratio_den + 1)})
    out = []
    for x, y in (("length", "width"), ("length", "thickness"), ("width", "thickness")):
        big, small = max(dims[x], dims[y]), min(dims[x], dims[y])
        r = big / small
        best = min(candidates, key=lambda f: abs(r / float(f) - 1))
        err = abs(r / float(best) - 1)
        out.append(RatioCheck(f"{x}/{y}", r, f"{best.numerator}/{best.denominator}", err, err <= tol))
    return out
