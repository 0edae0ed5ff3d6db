"""Batch workbench: TOML configs, scenario runners, sweeps and report emitters."""

from .config import RunConfig, SweepSpec, build_config, load_config
from .report import Report, emit
from .scenarios import run_scenario
from .sweep import run_sweep

__all__ = ["RunConfig", "SweepSpec", "Report", "build_config", "load_config", "emit", "run_scenario", "run_sweep"]
