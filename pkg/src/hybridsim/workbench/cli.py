"""``hybridsim`` command line entry point.

Exit codes: 0 success, 1 computation or domain error, 2 configuration
error, 3 the budget scenario ran but some stage is over its cooling power.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .. import __version__
from ..errors import (ConfigError, DimensionError, DomainError, NotFoundError, ParseError,
                      SimulationError)
from .config import OUTPUT_FORMATS, SCENARIOS, SCHEMAS, build_config, read_toml
from .report import EmitError, Report, emit
from .scenarios import run_scenario
from .sweep import run_sweep

log = logging.getLogger("hybridsim")

EXIT_OK, EXIT_COMPUTE, EXIT_CONFIG, EXIT_BUDGET = 0, 1, 2, 3


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="TOML run configuration")
    common.add_argument("--out", type=Path, help="output file (default: stdout)")
    common.add_argument("--format", choices=OUTPUT_FORMATS, help="output format (default: config outputs, else table)")
    common.add_argument("--strict", action="store_true", help="treat unknown config keys as errors")

    ap = argparse.ArgumentParser(prog="hybridsim", description="Ion / LC-circuit hybrid design workbench.")
    ap.add_argument("--version", action="version", version=f"hybridsim {__version__}")
    sub = ap.add_subparsers(dest="command", required=True, metavar="{" + ",".join(SCENARIOS) + "}")
    for name in SCENARIOS:
        sp = sub.add_parser(name, parents=[common], help=f"run the {name} scenario")
        if name == "sweep":
            continue
        group = sp.add_argument_group("parameters (override the config)")
        for p in SCHEMAS[name]:
            if p.kind == "tables":
                continue
            hint = f"[{p.unit}] " if p.unit else ""
            default = f" (default {p.default})" if p.default not in (None, [], "") else ""
            group.add_argument(f"--{p.name}", dest=f"param_{p.name}", metavar="VALUE",
                               help=f"{hint}{p.help}{default}".strip())
    return ap


def _config_data(args) -> dict:
    data = read_toml(args.config) if args.config else {}
    scenario = data.get("scenario", args.command)
    if scenario != args.command:
        raise ConfigError(f"{args.config}: config is for scenario {scenario!r}, not {args.command!r}")
    data["scenario"] = scenario
    overrides = {k[len("param_"):]: v for k, v in vars(args).items() if k.startswith("param_") and v is not None}
    if overrides:
        params = dict(data.get("parameters", {}))
        for k, v in overrides.items():
            data.pop(k, None)
            params[k] = v
        data["parameters"] = params
    return data


def _write(report: Report, fmt: str, out: Path | None, stdout) -> None:
    if fmt == "csv" and len(report.tables) > 1:
        for name in report.tables:
            blob = emit(report, "csv", name)
            if out is None:
                stdout.write(f"# {name}\n".encode())
                stdout.write(blob)
            else:
                out.with_name(f"{out.stem}_{name}{out.suffix or '.csv'}").write_bytes(blob)
        return
    blob = emit(report, fmt)
    if out is None:
        stdout.write(blob)
    else:
        out.write_bytes(blob)


def _summary_line(report: Report) -> str:
    s = report.summary
    return (f"swap_time_s={s['swap_time_s']:.6g} peak_fidelity={s['peak_fidelity']:.12g} "
            f"peak_time_s={s['peak_time_s']:.6g}")


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="hybridsim: %(message)s")
    args = _parser().parse_args(argv)
    stdout = sys.stdout.buffer
    try:
        cfg = build_config(_config_data(args), strict=args.strict)
        if args.config:
            log.debug("loaded %s", args.config)
        formats = [args.format] if args.format else cfg.outputs
        if cfg.scenario == "sweep":
            report = run_sweep(cfg)
        else:
            report = run_scenario(cfg.scenario, cfg.parameters)
            report.input_hash = cfg.input_hash()
        for fmt in formats:
            out = args.out
            if out is not None and len(formats) > 1:
                out = out.with_suffix(f".{'txt' if fmt == 'table' else fmt}")
            _write(report, fmt, out, stdout)
        stdout.flush()
        if cfg.scenario == "dynamics" and "table" not in formats:
            print(_summary_line(report), file=sys.stderr)
    except (ConfigError, ParseError, DimensionError, NotFoundError) as exc:
        print(f"hybridsim: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (DomainError, SimulationError, EmitError) as exc:
        print(f"hybridsim: error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    if cfg.scenario == "budget" and not report.summary.get("passed", True):
        print("hybridsim: budget FAILED: a stage load exceeds its cooling power", file=sys.stderr)
        return EXIT_BUDGET
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
