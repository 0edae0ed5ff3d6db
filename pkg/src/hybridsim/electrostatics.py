"""Field of the ion-interaction capacitor plates.

Two coplanar rectangular plates lie in the z = 0 plane, centred at
x = -d/2 (charge +q) and x = +d/2 (charge -q).  ``plate_length`` runs along
the separation axis x, ``plate_width`` along y.  Each plate carries a
uniform surface charge, discretised into ``grid_resolution**2`` point
charges at cell centres.  Plate thickness is ignored.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import DomainError
from .quantities import eps0

COULOMB_K = 1 / (4 * math.pi * eps0)

PLATE_LENGTH = 17e-6
PLATE_WIDTH = 8e-6
PLATE_GAP = 5e-6

SEARCH_RESOLUTION = 0.1e-6
_PRESCAN_POINTS = 201


@dataclass(frozen=True)
class PlatePair:
    plate_length: float = PLATE_LENGTH
    plate_width: float = PLATE_WIDTH
    center_separation: float = PLATE_LENGTH + PLATE_GAP
    charge: float = 1e-19
    grid_resolution: int = 32

    def __post_init__(self):
        if self.grid_resolution < 2:
            raise DomainError("grid_resolution must be >= 2")
        if self.plate_length < 0 or self.plate_width < 0:
            raise DomainError("plate dimensions must be >= 0")
        if self.center_separation < self.plate_length:
            raise DomainError(
                f"plates overlap: center_separation {self.center_separation:g} m < plate_length {self.plate_length:g} m"
            )

    @property
    def gap(self) -> float:
        return self.center_separation - self.plate_length

    def sources(self) -> tuple[np.ndarray, np.ndarray]:
        """Point-charge positions ``(N, 3)`` and charges ``(N,)``."""
        n = self.grid_resolution
        cells = (np.arange(n) + 0.5) / n - 0.5
        xs, ys = np.meshgrid(cells * self.plate_length, cells * self.plate_width, indexing="ij")
        local = np.column_stack([xs.ravel(), ys.ravel(), np.zeros(n * n)])
        half = self.center_separation / 2
        left = local + [-half, 0.0, 0.0]
        right = local + [half, 0.0, 0.0]
        q = self.charge / (n * n)
        pos = np.vstack([left, right])
        charges = np.concatenate([np.full(n * n, q), np.full(n * n, -q)])
        return pos, charges


def plate_pair_field(p: PlatePair, point) -> np.ndarray:
    """Electric field (V/m) of the plate pair at ``point`` (x, y, z in m)."""
    pos, q = p.sources()
    r = np.asarray(point, dtype=float) - pos
    dist = np.sqrt(np.einsum("ij,ij->i", r, r))
    if np.any(dist == 0):
        raise DomainError(f"field point {tuple(point)} coincides with a source charge")
    return COULOMB_K * np.einsum("i,ij->j", q / dist**3, r)


def axial_field(p: PlatePair, ion_height: float) -> float:
    """Field component along the separation axis at (0, 0, ion_height)."""
    return float(plate_pair_field(p, (0.0, 0.0, ion_height))[0])


def dipole_limit_field(charge: float, separation: float, ion_height: float) -> float:
    """Axial field of two point charges +/-q a distance ``separation`` apart."""
    return COULOMB_K * charge * separation / (ion_height**2 + separation**2 / 4) ** 1.5


def optimum_plate_separation(p: PlatePair, ion_height: float, search_range) -> float:
    """Centre separation maximising the axial field at the ion.

    ``p.center_separation`` is ignored.  A coarse pre-scan brackets the peak
    (and checks it is single), then golden-section refines it to better than
    0.1 um.
    """
    lo, hi = float(search_range[0]), float(search_range[1])
    lo = max(lo, p.plate_length)
    if not hi > lo:
        raise DomainError(f"empty feasible separation range [{lo:g}, {hi:g}] m")

    def neg_field(d):
        return -abs(axial_field(replace(p, center_separation=d), ion_height))

    ds = np.linspace(lo, hi, _PRESCAN_POINTS)
    vals = np.array([neg_field(d) for d in ds])
    i = int(np.argmin(vals))
    rising = np.diff(vals[: i + 1])
    falling = np.diff(vals[i:])
    if np.any(rising > 0) or np.any(falling < 0):
        raise DomainError("field is not single-peaked on the search range")
    if i == 0 or i == len(ds) - 1:
        return float(ds[i])
    res = minimize_scalar(neg_field, bracket=(ds[i - 1], ds[i], ds[i + 1]), method="golden",
                          options={"xtol": SEARCH_RESOLUTION / (10 * ds[i])})
    return float(res.x)


@dataclass(frozen=True)
class LengthCurve:
    lengths: np.ndarray
    field: np.ndarray
    slope: float  # (V/m)/m, nan when degenerate
    intercept: float
    degenerate: bool


def field_vs_plate_length(p: PlatePair, ion_height: float, lengths, hold: str = "gap") -> LengthCurve:
    """Axial field magnitude at the ion versus plate length, fixed charge per plate.

    ``hold="gap"`` keeps the edge-to-edge gap of ``p`` constant so the centre
    separation grows with the plates; ``hold="center"`` keeps the centre
    separation of ``p``.  A least-squares line is fitted through the curve.
    """
    if hold not in ("gap", "center"):
        raise DomainError(f"hold must be 'gap' or 'center', got {hold!r}")
    lengths = np.asarray(lengths, dtype=float)
    out = np.empty_like(lengths)
    for k, length in enumerate(lengths):
        sep = length + p.gap if hold == "gap" else p.center_separation
        out[k] = abs(axial_field(replace(p, plate_length=length, center_separation=sep), ion_height))
    degenerate = len(lengths) < 2 or np.ptp(lengths) == 0
    if degenerate:
        return LengthCurve(lengths, out, math.nan, math.nan, True)
    slope, intercept = np.polyfit(lengths, out, 1)
    return LengthCurve(lengths, out, float(slope), float(intercept), False)


def separation_sweep(p: PlatePair, ion_height: float, separations) -> tuple[np.ndarray, np.ndarray]:
    """Axial field at the ion for each separation, normalised to the sweep maximum."""
    seps = np.asarray(separations, dtype=float)
    vals = np.array([abs(axial_field(replace(p, center_separation=d), ion_height)) for d in seps])
    peak = vals.max() if len(vals) and vals.max() > 0 else 1.0
    return seps, vals / peak
