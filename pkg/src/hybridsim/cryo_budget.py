"""Dilution-refrigerator heat and noise budget."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConfigError, DomainError
from .quantities import k_B

OUTSIDE = "outside"


@dataclass(frozen=True)
class Stage:
    name: str
    temperature: float  # K
    cooling_power: float  # W; inf for the room-temperature flange


@dataclass(frozen=True)
class BudgetItem:
    source: str
    load: float  # W
    sink_stage: str

    def __post_init__(self):
        if self.load < 0:
            raise DomainError(f"negative load for {self.source!r}")


# Typical commercial dry dilution refrigerator.  Cooling powers are
# illustrative except the 10 mW available at 100 mK.
DEFAULT_STAGES = (
    Stage("300K", 300.0, math.inf),
    Stage("40K", 40.0, 40.0),
    Stage("4K", 4.0, 1.5),
    Stage("still", 1.0, 30e-3),
    Stage("100mK", 0.1, 10e-3),
    Stage("mixing", 0.01, 10e-6),
)

# Heat-load summary of the reference setup.  The "multiple stages" rows
# (DC wiring 3 mW, coax 5 mW) are split between 40 K and 4 K here; the split
# itself is an assumption.
REFERENCE_BUDGET_ITEMS = (
    BudgetItem("atomic oven", 25.0, OUTSIDE),
    BudgetItem("DC wires", 2e-3, "40K"),
    BudgetItem("DC wires", 1e-3, "4K"),
    BudgetItem("coax cables", 3e-3, "40K"),
    BudgetItem("coax cables", 2e-3, "4K"),
    BudgetItem("laser beams", 1.8e-3, "4K"),
    BudgetItem("RF dielectric dissipation", 5e-3, "100mK"),
)


def validate_stages(stages) -> None:
    temps = [s.temperature for s in stages]
    if any(t2 >= t1 for t1, t2 in zip(temps, temps[1:])):
        raise ConfigError(f"stage temperatures must strictly decrease, got {temps}")
    names = [s.name for s in stages]
    if len(set(names)) != len(names) or OUTSIDE in names:
        raise ConfigError(f"stage names must be unique and not {OUTSIDE!r}")


def conduction_load(lambda_mean: float, area: float, length: float, delta_T: float) -> float:
    """Heat (W) conducted along a wire: lambda * dT * A / L."""
    if not (lambda_mean > 0 and area > 0 and length > 0):
        raise DomainError("lambda_mean, area and length must be > 0")
    if delta_T < 0:
        raise DomainError("delta_T must be >= 0")
    return lambda_mean * delta_T * area / length


def thermal_noise_density(T: float) -> float:
    """Johnson-Nyquist available noise power per unit bandwidth, k_B T (J/Hz)."""
    if T < 0:
        raise DomainError("temperature must be >= 0")
    return k_B * T


def db_to_ratio(db: float) -> float:
    return 10 ** (db / 10)


@dataclass(frozen=True)
class ChainResult:
    output_noise_temp: float
    total_attenuation: float
    dissipated: list  # W per attenuator, for the given input power


def attenuation_chain(input_noise_temp: float, stages, input_power: float = 0.0) -> ChainResult:
    """Noise temperature after a cascade of matched attenuators.

    ``stages`` is a list of ``(Stage, attenuation_dB)`` ordered from the warm
    end.  An attenuator A at temperature T passes T_in / A and adds
    T (1 - 1/A).
    """
    t = float(input_noise_temp)
    power = float(input_power)
    total = 1.0
    dissipated = []
    for stage, db in stages:
        if db < 0:
            raise DomainError("attenuation must be >= 0 dB")
        a = db_to_ratio(db)
        t = t / a + stage.temperature * (1 - 1 / a)
        dissipated.append(power * (1 - 1 / a))
        power /= a
        total *= a
    return ChainResult(t, total, dissipated)


@dataclass(frozen=True)
class StageReport:
    name: str
    temperature: float
    cooling_power: float
    load: float

    @property
    def margin(self) -> float:
        return self.cooling_power - self.load

    @property
    def passed(self) -> bool:
        return self.load < self.cooling_power


@dataclass(frozen=True)
class BudgetReport:
    stages: list
    outside_load: float

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.stages)

    def stage(self, name: str) -> StageReport:
        for s in self.stages:
            if s.name == name:
                return s
        raise KeyError(name)


def aggregate_budget(items, stages=DEFAULT_STAGES) -> BudgetReport:
    """Sum loads per stage and compare with each stage's cooling power.

    Items sunk ``"outside"`` the fridge are totalled separately.
    """
    validate_stages(stages)
    known = {s.name for s in stages}
    for item in items:
        if item.sink_stage != OUTSIDE and item.sink_stage not in known:
            raise ConfigError(f"item {item.source!r} sinks to unknown stage {item.sink_stage!r}")
    # fsum is exactly rounded, so totals do not depend on item order
    totals = {name: math.fsum(i.load for i in items if i.sink_stage == name) for name in known}
    outside = math.fsum(i.load for i in items if i.sink_stage == OUTSIDE)
    return BudgetReport([StageReport(s.name, s.temperature, s.cooling_power, totals[s.name]) for s in stages], outside)


def quasiparticle_diffusion_length(D: float, tau_qp: float) -> float:
    """Mean quasiparticle travel before recombination, sqrt(D tau) (m)."""
    if not D > 0 or tau_qp < 0:
        raise DomainError("need D > 0 and tau_qp >= 0")
    return math.sqrt(D * tau_qp)
