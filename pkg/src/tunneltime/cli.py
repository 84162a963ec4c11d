"""Command-line front end: ``tunneltime {compute,sweep,hartman,validate}``."""

from __future__ import annotations

import argparse
import json
import sys
import time

from .core import NATURAL, BarrierConfig, UnitSystem
from .errors import DomainError
from .serialize import hartman_to_dict, record_to_dict, records_to_csv, records_to_json
from .sweep import AXES, SweepSpec, evaluate_point, hartman_analysis, run_sweep
from .validation import run_checks

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3

# hbar^2 / (2 m_e) in eV nm^2
HBAR2_OVER_2ME = 0.0380998
HBAR_EV_S = 6.582119569e-16

ELECTRON = UnitSystem(hbar=HBAR_EV_S, mass=HBAR_EV_S**2 / (2 * HBAR2_OVER_2ME))
UNIT_SYSTEMS = {"natural": NATURAL, "electron": ELECTRON}

DEFAULTS = {
    "energy": 0.5,
    "v0": 1.0,
    "v1": 0.0,
    "width": 1.0,
    "axis": "width",
    "start": None,
    "stop": None,
    "count": 50,
    "log": False,
    "units": "natural",
    "format": None,
    "output": None,
}

UNITS_HELP = (
    "natural: hbar = m = 1. electron: energies in eV, lengths in nm, electron "
    f"mass with hbar^2/(2 m_e) = {HBAR2_OVER_2ME} eV nm^2; times are reported in "
    "seconds and speeds in nm/s."
)


class UsageError(Exception):
    pass


def _parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--energy", type=float, help="incident energy E")
    common.add_argument("--v0", type=float, help="real barrier height V0")
    common.add_argument("--v1", type=float, help="absorption strength V1 (V = V0 - i V1)")
    common.add_argument("--width", type=float, help="barrier width a")
    common.add_argument("--units", choices=tuple(UNIT_SYSTEMS), help=UNITS_HELP)
    common.add_argument("--format", choices=("csv", "json"))
    common.add_argument("--output", metavar="PATH", help="write here instead of stdout")
    common.add_argument("--config", metavar="PATH", help="JSON file with flag values (kebab-case keys)")

    p = argparse.ArgumentParser(
        prog="tunneltime",
        description="Phase times for tunnelling through a complex square barrier V0 - i V1.",
    )
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("compute", parents=[common], help="evaluate a single point")

    sw = sub.add_parser("sweep", parents=[common], help="sweep one parameter")
    sw.add_argument("--axis", choices=AXES)
    sw.add_argument("--start", type=float)
    sw.add_argument("--stop", type=float)
    sw.add_argument("--count", type=int)
    sw.add_argument("--log", action="store_true", default=None, help="logarithmic spacing")

    hm = sub.add_parser("hartman", parents=[common], help="classify tau(a) over a width range")
    hm.add_argument("--start", type=float, help="smallest width")
    hm.add_argument("--stop", type=float, help="largest width")
    hm.add_argument("--count", type=int)

    sub.add_parser("validate", parents=[common], help="run the built-in verification suite")
    return p


def _load_config(path):
    if path is None:
        return {}
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(raw, dict):
        raise UsageError("config must be a flat JSON object")
    out = {}
    for key, value in raw.items():
        name = key.replace("-", "_")
        if name not in DEFAULTS:
            raise UsageError(f"unknown config key {key!r}")
        out[name] = value
    return out


def resolve(args) -> dict:
    """Merge flags over config file over defaults."""
    cfg = dict(DEFAULTS)
    cfg.update(_load_config(args.config))
    for name in DEFAULTS:
        value = getattr(args, name, None)
        if value is not None:
            cfg[name] = value
    if cfg["units"] not in UNIT_SYSTEMS:
        raise UsageError(f"unknown units {cfg['units']!r}")
    return cfg


def _emit(text, path):
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="\n") as fh:
            fh.write(text)


def cmd_compute(cfg) -> int:
    units = UNIT_SYSTEMS[cfg["units"]]
    barrier = BarrierConfig(cfg["v0"], cfg["v1"], cfg["width"])
    rec, _ = evaluate_point(float(cfg["energy"]), barrier, units)
    if cfg["format"] == "json":
        text = json.dumps(record_to_dict(rec), indent=2) + "\n"
    else:
        text = records_to_csv([rec])
    _emit(text, cfg["output"])
    if "degenerate" in rec.flags:
        print("tunneltime: degenerate point (flag 'degenerate'): k_II = 0", file=sys.stderr)
        return EXIT_DOMAIN
    return EXIT_OK


def cmd_sweep(cfg) -> int:
    if cfg["start"] is None or cfg["stop"] is None:
        raise UsageError("sweep needs --start and --stop")
    spec = SweepSpec(
        axis=cfg["axis"],
        start=float(cfg["start"]),
        stop=float(cfg["stop"]),
        count=int(cfg["count"]),
        spacing="logarithmic" if cfg["log"] else "linear",
        energy=float(cfg["energy"]),
        v0=float(cfg["v0"]),
        v1=float(cfg["v1"]),
        width=float(cfg["width"]),
        units=UNIT_SYSTEMS[cfg["units"]],
    )
    records = run_sweep(spec)
    text = records_to_json(records) if cfg["format"] == "json" else records_to_csv(records)
    _emit(text, cfg["output"])
    return EXIT_OK


def cmd_hartman(cfg) -> int:
    if cfg["start"] is None or cfg["stop"] is None:
        raise UsageError("hartman needs --start and --stop (width range)")
    report = hartman_analysis(
        float(cfg["energy"]),
        float(cfg["v0"]),
        float(cfg["v1"]),
        (float(cfg["start"]), float(cfg["stop"])),
        UNIT_SYSTEMS[cfg["units"]],
        count=int(cfg["count"]),
    )
    _emit(json.dumps(hartman_to_dict(report), indent=2) + "\n", cfg["output"])
    return EXIT_OK


def cmd_validate(cfg) -> int:
    t0 = time.perf_counter()
    results = run_checks()
    lines = [
        f"{'PASS' if r.passed else 'FAIL'}  {r.name}  ({r.seconds:.2f} s)  {r.detail}"
        for r in results
    ]
    failed = [r.name for r in results if not r.passed]
    lines.append(
        f"{len(results) - len(failed)}/{len(results)} checks passed "
        f"in {time.perf_counter() - t0:.2f} s"
    )
    if failed:
        lines.append("failed: " + "; ".join(failed))
    _emit("\n".join(lines) + "\n", cfg["output"])
    return EXIT_VALIDATION if failed else EXIT_OK


COMMANDS = {
    "compute": cmd_compute,
    "sweep": cmd_sweep,
    "hartman": cmd_hartman,
    "validate": cmd_validate,
}


def main(argv=None) -> int:
    try:
        args = _parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        cfg = resolve(args)
        return COMMANDS[args.command](cfg)
    except UsageError as exc:
        print(f"tunneltime: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"tunneltime: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (TypeError, ValueError) as exc:
        print(f"tunneltime: usage error: bad parameter value: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
