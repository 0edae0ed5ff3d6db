"""Run configuration: TOML files with unit-suffixed string values.

A config names one scenario and its parameters::

    scenario = "coupling"

    [parameters]
    species = "Be-9"
    C0 = "46fF"

Parameters may also sit at the top level (``a = "18um"`` next to
``scenario``).  Optional ``[sweep]`` and ``outputs`` entries drive
:func:`hybridsim.workbench.sweep.run_sweep` and the CLI.
"""

from __future__ import annotations

import hashlib
import json
import logging
import sys
from dataclasses import dataclass, field
from typing import Any, Optional

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from ..errors import ConfigError, DimensionError, ParseError
from ..quantities import parse_quantity

log = logging.getLogger(__name__)

SCENARIOS = ("geometry", "circuit", "plates", "modulation", "coupling", "dynamics", "budget", "sweep")
OUTPUT_FORMATS = ("table", "csv", "json", "svg")
_RESERVED = {"scenario", "parameters", "sweep", "outputs"}


@dataclass(frozen=True)
class Param:
    """Schema entry.  ``kind`` is one of quantity, int, str, bool, list, tables."""

    name: str
    kind: str = "quantity"
    unit: str = ""
    default: Any = None
    help: str = ""
    fields: Optional[tuple] = None  # sub-schema for kind == "tables"


def q(name, unit, default=None, help=""):
    return Param(name, "quantity", unit, default, help)


# Defaults are the reference design values.  Quantities are given as text and
# parsed like user input so defaults obey the same grammar.
SCHEMAS: dict[str, tuple[Param, ...]] = {
    "geometry": (
        q("a", "m", "18um", "rf electrode separation"),
        q("b", "m", None, "first rf electrode width (default 4.90 a)"),
        q("c", "m", None, "second rf electrode width (default b/2)"),
        q("w_outer", "m", None, "outer dc electrode width (default 3.66 a)"),
        q("heating_rate0", "", None, "heating rate at reference_height, 1/s"),
        q("reference_height", "m", "25um"),
        q("heating_exponent", "", "3.5"),
    ),
    "circuit": (
        q("C0", "F", "46fF"),
        q("L0", "H", "400nH"),
        q("Z", "Ω", None, "forced impedance for the zero-point terms"),
        q("stub_Z0", "Ω", None, "stub line impedance"),
        q("stub_length", "m", None),
        q("stub_wavelength", "m", None),
        Param("stub_termination", "str", default="short"),
        Param("interdigital", "bool", default=False, help="add the low-fidelity interdigital estimate"),
        Param("idc_fingers", "int", default=4),
        q("idc_finger_length", "m", "84um"),
        q("idc_finger_width", "m", "5um"),
        q("idc_finger_thickness", "m", "1um"),
        q("idc_gap", "m", "5um"),
        q("idc_eps_eff", "", "6.25"),
        Param("idc_parallel", "int", default=2),
    ),
    "plates": (
        q("plate_length", "m", "17um"),
        q("plate_width", "m", "8um"),
        q("charge", "C", "1e-19C"),
        Param("grid_resolution", "int", default=32),
        q("ion_height", "m", "25um"),
        q("sep_start", "m", "17um"),
        q("sep_stop", "m", "60um"),
        Param("n_points", "int", default=87),
    ),
    "modulation": (
        q("C0", "F", "46fF"),
        q("alpha", "m", "2um", "fixed plate separation"),
        q("beta_amp", "m", "0.6um", "moving-plate amplitude"),
        q("f_drive", "Hz", "1MHz"),
        Param("scheme", "str", default="paired"),
        Param("n_samples", "int", default=1024),
        Param("n_wave", "int", default=200, help="waveform samples per period"),
        Param("n_harmonics", "int", default=8, help="harmonic rows to emit"),
        q("fm_index", "", "0.3"),
        Param("n_max", "int", default=10),
        q("f_carrier", "Hz", "1GHz"),
        q("threshold", "", "0.99"),
        q("beam_length", "m", "200um"),
        q("beam_width", "m", "50um"),
        q("beam_thickness", "m", "3um"),
        q("youngs_modulus", "", "63e9", "Pa"),
        q("density", "", "7500", "kg/m^3"),
        Param("boundary", "str", default="clamped-clamped"),
        Param("mode_number", "int", default=2),
    ),
    "coupling": (
        Param("species", "str", default="Be-9"),
        q("zeta", "", "0.25"),
        q("r", "m", "25um"),
        q("C0", "F", "46fF"),
        q("f_i", "Hz", "1MHz", "secular frequency"),
        q("eta", "", "0.3"),
        q("Z", "Ω", None, "forced impedance"),
        q("L0", "H", None, "inductance; Z = sqrt(L0/C0)"),
        q("f_lc", "Hz", "1GHz", "circuit frequency; Z = 1/(2 pi f_lc C0) when neither Z nor L0 is set"),
        q("z0", "m", None, "override the oscillator length"),
        q("dq0", "C", None, "override the zero-point charge"),
        q("kappa", "", None, "LC decay rate, 1/s"),
        q("decoherence", "", "1e3", "ion decoherence rate, 1/s"),
        q("B_trans", "T", None, "transverse microwave field for M1 coupling"),
        q("matrix_element", "", "0.5"),
        Param("N", "int", default=None, help="ensemble size"),
        q("f_cpw", "Hz", None),
        q("Q", "", None),
        Param("curve_species", "list", default=None),
        q("C_start", "F", "2fF"),
        q("C_stop", "F", "50fF"),
        Param("n_points", "int", default=30),
    ),
    "dynamics": (
        q("G", "Hz", None, "exchange rate G/2pi; derived from g0 and eta when absent"),
        q("g0", "Hz", "176.6kHz", "g0/2pi"),
        q("eta", "", "0.3"),
        Param("convention", "str", default="hamiltonian", help="hamiltonian (2 eta g0 / 3) or text (eta g0)"),
        q("delta", "Hz", "0Hz", "detuning Delta/2pi"),
        q("kappa", "", "0", "LC decay rate, 1/s"),
        q("gamma_ion", "", "0", "ion decoherence rate, 1/s"),
        q("t_end", "s", None, "default: one swap time"),
        q("dt", "s", None),
        Param("n_trunc", "int", default=4),
        Param("initial", "str", default="10", help="Fock state n_lc n_ion, e.g. 10"),
        Param("record_every", "int", default=10),
    ),
    "budget": (
        Param("stages", "tables", fields=(Param("name", "str"), q("temperature", "K"), q("cooling_power", "W"))),
        Param("items", "tables", default=[], fields=(Param("source", "str"), q("load", "W"), Param("sink", "str"))),
        Param("attenuators", "tables", default=[], fields=(Param("stage", "str"), q("attenuation", "dB"))),
        q("input_noise_temp", "K", "300K"),
        q("input_power", "W", "0W"),
    ),
}

_SWEEP_KEYS = {"scenario", "parameter", "start", "stop", "n_points", "scale", "series_parameter",
               "series_values", "y"}


@dataclass(frozen=True)
class SweepSpec:
    scenario: str
    parameter: str
    start: float
    stop: float
    n_points: int
    scale: str = "linear"
    series_parameter: Optional[str] = None
    series_values: tuple = ()
    y: Optional[str] = None


@dataclass
class RunConfig:
    scenario: str
    parameters: dict
    sweep: Optional[SweepSpec] = None
    outputs: list = field(default_factory=lambda: ["table"])
    raw: dict = field(default_factory=dict, repr=False)

    @property
    def base_scenario(self) -> str:
        return self.sweep.scenario if self.scenario == "sweep" else self.scenario

    def input_hash(self) -> str:
        blob = json.dumps({"scenario": self.scenario, "raw": self.raw}, sort_keys=True, ensure_ascii=True,
                          default=str)
        return hashlib.sha256(blob.encode()).hexdigest()


def _param_map(scenario):
    return {p.name: p for p in SCHEMAS[scenario]}


def parse_value(p: Param, value, path: str):
    """Convert a raw TOML/CLI value to its internal form (SI float, int, ...)."""
    if value is None:
        return None
    try:
        if p.kind == "quantity":
            if isinstance(value, bool):
                raise ConfigError(f"{path}: expected a quantity, got a boolean")
            if isinstance(value, (int, float)):
                if p.unit:
                    raise DimensionError(f"bare number {value!r}, expected a value in {p.unit}")
                return float(value)
            return parse_quantity(str(value), expect=p.unit).value
        if p.kind == "int":
            if isinstance(value, bool) or (isinstance(value, float) and not value.is_integer()):
                raise ConfigError(f"{path}: expected an integer, got {value!r}")
            return int(value)
        if p.kind == "str":
            if not isinstance(value, str):
                raise ConfigError(f"{path}: expected text, got {value!r}")
            return value
        if p.kind == "bool":
            if isinstance(value, str):
                if value.lower() not in ("true", "false", "1", "0", "yes", "no"):
                    raise ConfigError(f"{path}: expected true/false, got {value!r}")
                return value.lower() in ("true", "1", "yes")
            return bool(value)
        if p.kind == "list":
            if isinstance(value, str):
                value = [v.strip() for v in value.split(",") if v.strip()]
            if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
                raise ConfigError(f"{path}: expected a list of text values")
            return list(value)
        if p.kind == "tables":
            if not isinstance(value, list) or not all(isinstance(v, dict) for v in value):
                raise ConfigError(f"{path}: expected an array of tables")
            sub = {f.name: f for f in p.fields}
            out = []
            for i, row in enumerate(value):
                unknown = set(row) - set(sub)
                if unknown:
                    raise ConfigError(f"{path}[{i}]: unknown keys {sorted(unknown)}")
                out.append({k: parse_value(sub[k], v, f"{path}[{i}].{k}") for k, v in row.items()})
            return out
    except (DimensionError, ParseError) as exc:
        raise ConfigError(f"{path}: {exc}") from exc
    raise ConfigError(f"{path}: unsupported parameter kind {p.kind!r}")


def resolve_parameters(scenario: str, raw: dict, strict: bool = False, prefix: str = "parameters") -> dict:
    """Validate ``raw`` against the scenario schema and fill in defaults."""
    if scenario not in SCHEMAS:
        raise ConfigError(f"unknown scenario {scenario!r}; expected one of {', '.join(SCENARIOS)}")
    schema = _param_map(scenario)
    unknown = sorted(set(raw) - set(schema))
    if unknown:
        msg = f"unknown {'key' if len(unknown) == 1 else 'keys'} for scenario {scenario!r}: " + ", ".join(
            f"{prefix}.{k}" for k in unknown)
        if strict:
            raise ConfigError(msg)
        log.warning("ignoring %s", msg)
    out = {}
    for name, p in schema.items():
        value = raw.get(name, p.default)
        out[name] = parse_value(p, value, f"{prefix}.{name}")
    return out


def _parse_sweep(block: dict, scenario: str, params: dict, strict: bool) -> SweepSpec:
    unknown = set(block) - _SWEEP_KEYS
    if unknown:
        msg = f"unknown sweep keys {sorted(unknown)}"
        if strict:
            raise ConfigError(msg)
        log.warning("ignoring %s", msg)
    base = block.get("scenario", "coupling") if scenario == "sweep" else scenario
    if base not in SCHEMAS:
        raise ConfigError(f"sweep.scenario: unknown scenario {base!r}")
    for key in ("parameter", "start", "stop", "n_points"):
        if key not in block:
            raise ConfigError(f"sweep.{key} is required")
    schema = _param_map(base)
    name = block["parameter"]
    if name not in schema or schema[name].kind != "quantity":
        raise ConfigError(f"sweep.parameter: {name!r} is not a numeric parameter of {base!r}")
    start = parse_value(schema[name], block["start"], "sweep.start")
    stop = parse_value(schema[name], block["stop"], "sweep.stop")
    n = parse_value(Param("n_points", "int"), block["n_points"], "sweep.n_points")
    if n < 1:
        raise ConfigError("sweep.n_points must be >= 1")
    scale = block.get("scale", "linear")
    if scale not in ("linear", "log"):
        raise ConfigError(f"sweep.scale must be 'linear' or 'log', got {scale!r}")
    if scale == "log" and not (start > 0 and stop > 0):
        raise ConfigError("sweep.start and sweep.stop must be > 0 for a log sweep")
    series = block.get("series_parameter")
    values = ()
    if series is not None:
        if series not in schema:
            raise ConfigError(f"sweep.series_parameter: {series!r} is not a parameter of {base!r}")
        raw_values = block.get("series_values")
        if not isinstance(raw_values, list) or not raw_values:
            raise ConfigError("sweep.series_values must be a non-empty list")
        for i, v in enumerate(raw_values):
            parse_value(schema[series], v, f"sweep.series_values[{i}]")
        values = tuple(raw_values)
    return SweepSpec(base, name, start, stop, n, scale, series, values, block.get("y"))


def build_config(data: dict, strict: bool = False) -> RunConfig:
    """Build a :class:`RunConfig` from an already-parsed TOML mapping."""
    scenario = data.get("scenario")
    if scenario not in SCENARIOS:
        raise ConfigError(f"scenario: expected one of {', '.join(SCENARIOS)}, got {scenario!r}")
    raw = dict(data.get("parameters", {}))
    for k, v in data.items():
        if k not in _RESERVED:
            if k in raw:
                raise ConfigError(f"{k} given both at top level and in [parameters]")
            raw[k] = v
    sweep_block = data.get("sweep")
    if scenario == "sweep" and sweep_block is None:
        raise ConfigError("scenario 'sweep' needs a [sweep] table")
    base = (sweep_block or {}).get("scenario", "coupling") if scenario == "sweep" else scenario
    if base not in SCHEMAS:
        raise ConfigError(f"sweep.scenario: unknown scenario {base!r}")
    params = resolve_parameters(base, raw, strict)
    sweep = _parse_sweep(sweep_block, scenario, params, strict) if sweep_block is not None else None
    outputs = data.get("outputs", ["table"])
    if isinstance(outputs, str):
        outputs = [outputs]
    bad = [o for o in outputs if o not in OUTPUT_FORMATS]
    if bad:
        raise ConfigError(f"outputs: unknown formats {bad}; expected {', '.join(OUTPUT_FORMATS)}")
    return RunConfig(scenario, params, sweep, list(outputs), raw={"parameters": raw, "sweep": sweep_block})


def read_toml(path) -> dict:
    """Parse a TOML file; syntax errors carry the line and column."""
    try:
        with open(path, "rb") as fh:
            return tomllib.load(fh)
    except OSError as exc:
        raise ConfigError(f"{path}: {exc.strerror}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{path}: {exc}") from exc


def load_config(path, strict: bool = False) -> RunConfig:
    """Read and validate a TOML run configuration."""
    data = read_toml(path)
    try:
        return build_config(data, strict)
    except ConfigError as exc:
        raise ConfigError(f"{path}: {exc}") from exc
