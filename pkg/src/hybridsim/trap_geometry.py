"""Surface-electrode trap geometry.

Lengths are in metres.  ``a`` is the rf electrode separation, ``b`` and
``c`` are the two rf electrode widths.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import DomainError
from .quantities import e

# b/a at the optimum when c = b/2
ZETA_OPTIMUM = 4.90
# outer dc electrode width in units of a (maximises the quartic axial term)
W_OUTER_RATIO = 3.66
HEATING_EXPONENT = 3.5
HEATING_EXPONENT_UNCERTAINTY = 0.1


def _positive(**kw):
    for name, v in kw.items():
        if not v > 0:
            raise DomainError(f"{name} must be > 0, got {v!r}")


def ion_height(a: float, b: float, c: float) -> float:
    """Height of the rf null above a five-wire surface trap.

    ``sqrt(a*b*c*(a+b+c)) / (b+c)``, symmetric in ``b`` and ``c``.
    """
    _positive(a=a, b=b, c=c)
    return math.sqrt(a * b * c * (a + b + c)) / (b + c)


def optimum_widths(a: float) -> tuple[float, float, float]:
    """Return ``(b, c, w_outer)`` for separation ``a`` at b/a = 4.90, c = b/2."""
    _positive(a=a)
    b = ZETA_OPTIMUM * a
    return b, b / 2, W_OUTER_RATIO * a


def matches_optimum_ratios(a: float, b: float, c: float, tol: float = 0.03) -> bool:
    """True when ``(a, b, c)`` is within ``tol`` (relative) of the optimum ratios.

    Accepts rounded design sets such as 18/90/45 µm, where b/a = 5.0.
    """
    _positive(a=a, b=b, c=c)
    b_opt, c_opt, _ = optimum_widths(a)
    return abs(b / b_opt - 1) <= tol and abs(c / c_opt - 1) <= tol


@dataclass(frozen=True)
class TrapGeometry:
    a: float
    b: float
    c: float
    w_outer: float
    h: float = field(init=False)

    def __post_init__(self):
        _positive(a=self.a, b=self.b, c=self.c, w_outer=self.w_outer)
        object.__setattr__(self, "h", ion_height(self.a, self.b, self.c))

    @classmethod
    def optimum(cls, a: float) -> "TrapGeometry":
        b, c, w = optimum_widths(a)
        return cls(a, b, c, w)

    @property
    def asymmetric(self) -> bool:
        """b != c, required so a single cooling beam projects on all three axes."""
        return self.b != self.c

    @property
    def zeta(self) -> float:
        return self.b / self.a


@dataclass(frozen=True)
class AxialPotential:
    gamma: float  # V/m^2
    beta_quartic: float  # V/m^4
    separation_zone: bool = False

    def __post_init__(self):
        if self.separation_zone and not (self.gamma < 0 and self.beta_quartic > 0):
            raise DomainError("separation wedge needs gamma < 0 and beta_quartic > 0")


def axial_potential(z: float, p: AxialPotential) -> float:
    """Potential energy (J) of a singly charged ion at axial offset ``z``."""
    return 2 * e * p.gamma * z**2 + 2 * e * p.beta_quartic * z**4


def heating_rate_scaled(rate0: float, r0: float, r1: float, exponent: float = HEATING_EXPONENT) -> float:
    """Scale a heating rate measured at height ``r0`` to height ``r1``.

    Rates follow ``r**-exponent``; the measured exponent is 3.5 +/- 0.1.
    """
    if rate0 < 0:
        raise DomainError(f"rate0 must be >= 0, got {rate0!r}")
    _positive(r0=r0, r1=r1)
    return rate0 * (r0 / r1) ** exponent
