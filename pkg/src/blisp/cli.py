"""Command-line entry point.

Three subcommands: ``curve`` writes cost-over-distance curves,
``run`` executes one experiment setup over repeats, and ``sweep``
crosses backoff windows with seeds. All outputs are CSV, written via a
temporary file and an atomic rename so a failing invocation never
leaves a partial file behind. No environment variables are consulted;
every input is an explicit flag.
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import sys
from dataclasses import replace
from typing import Sequence

from . import report, sim
from .config import ConfigError, preset_names, resolve_scenario
from .link_model import BLE, WISP, RadioModel
from .sim import PeriodRecord, Scenario

LOG_COLUMNS = (
    "repeat", "period", "distance_m", "wisp_tx", "ble_tx",
    "planned_frames", "acked_frames", "wisp_delivered", "ble_delivered",
    "wisp_energy_uJ", "ble_energy_uJ", "wisp_message_ids", "ble_message_ids",
)

_UNIQUE_METRICS = ("unique_messages", "unique_bytes", "goodput_Bps",
                   "energy_per_unique_byte_uJ")


def _write_atomic(path: str, text: str) -> None:
    tmp = f"{path}.tmp"
    try:
        with open(tmp, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _resolve_models(ref: str) -> list[RadioModel]:
    if ref == "default":
        return [WISP, BLE]
    _, scenario = resolve_scenario(ref)
    return [scenario.wisp_model, scenario.ble_model]


def cmd_curve(args: argparse.Namespace) -> int:
    models = _resolve_models(args.models)
    if args.d_min <= 0:
        raise ConfigError("--d-min must be > 0")
    if args.d_max <= args.d_min:
        raise ConfigError("--d-max must exceed --d-min")
    if args.steps < 1:
        raise ConfigError("--steps must be >= 1")
    limit = min(m.max_distance for m in models)
    if args.d_max >= limit:
        raise ConfigError(f"--d-max must stay below the model validity bound {limit}")
    if args.steps == 1:
        grid = [args.d_min]
    else:
        width = (args.d_max - args.d_min) / (args.steps - 1)
        grid = [args.d_min + i * width for i in range(args.steps)]
    _write_atomic(args.out, report.emit_curve(models, grid))
    return 0


def _apply_overrides(name: str, scenario: Scenario,
                     args: argparse.Namespace) -> Scenario:
    updates: dict = {}
    if args.seed is not None:
        if not 0 <= args.seed < 2 ** 64:
            raise ConfigError("--seed must fit in 64 bits")
        updates["seed"] = args.seed
    if args.repeats is not None:
        if args.repeats < 1:
            raise ConfigError("--repeats must be >= 1")
        updates["repeats"] = args.repeats
    if args.max_backoff is not None and args.max_backoff < 0:
        raise ConfigError("--max-backoff must be >= 0")
    if args.policy == "naive":
        if args.max_backoff not in (None, 0):
            raise ConfigError("naive policy means --max-backoff 0")
        updates["policy"] = replace(scenario.policy, max_backoff=0)
    elif args.policy == "random":
        if args.max_backoff is None:
            raise ConfigError("random policy needs --max-backoff")
        updates["policy"] = replace(scenario.policy, max_backoff=args.max_backoff)
    elif args.max_backoff is not None:
        updates["policy"] = replace(scenario.policy, max_backoff=args.max_backoff)
    if getattr(args, "setup", None) is not None:
        updates["mode"] = {"wisp": "wisp_only", "ble": "ble_only",
                           "blisp": "blisp"}[args.setup]
    scenario = replace(scenario, **updates)
    try:
        scenario.validate()
    except ValueError as exc:
        raise ConfigError(f"{name}: {exc}") from exc
    return scenario


def _setup_label(scenario: Scenario) -> str:
    if scenario.mode == "blisp":
        return f"blisp_x{scenario.policy.max_backoff}"
    return scenario.mode


def _filter_stats(stats: dict[str, report.FieldStat],
                  normalize: str) -> dict[str, report.FieldStat]:
    if normalize == "unique":
        return {k: v for k, v in stats.items() if k in _UNIQUE_METRICS}
    return {k: v for k, v in stats.items()
            if k.startswith("raw_messages_") or k.startswith("energy_uJ_")}


def _log_csv(per_repeat: Sequence[Sequence[PeriodRecord]],
             wisp_id: str, ble_id: str) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(LOG_COLUMNS)
    for repeat, records in enumerate(per_repeat):
        for rec in records:
            wisp_ids = rec.message_ids_delivered[wisp_id]
            ble_ids = rec.message_ids_delivered[ble_id]
            writer.writerow([
                repeat, rec.t, repr(rec.distance_m),
                int(rec.decision.wisp_tx), int(rec.decision.ble_tx),
                len(rec.outcomes),
                sum(1 for o in rec.outcomes if o.ack_received),
                len(wisp_ids), len(ble_ids),
                repr(rec.wisp_energy_uJ), repr(rec.ble_energy_uJ),
                ";".join(map(str, wisp_ids)), ";".join(map(str, ble_ids)),
            ])
    return buf.getvalue()


def cmd_run(args: argparse.Namespace) -> int:
    name, scenario = resolve_scenario(args.scenario)
    scenario = _apply_overrides(name, scenario, args)
    per_repeat = [sim.run(scenario, repeat) for repeat in range(scenario.repeats)]
    stats = report.aggregate([metrics for _, metrics in per_repeat])
    rows = report.table_rows(name, _setup_label(scenario),
                             _filter_stats(stats, args.normalize))
    _write_atomic(args.out, report.emit_run_table(rows))
    if args.log:
        _write_atomic(args.log, _log_csv(
            [records for records, _ in per_repeat],
            scenario.wisp_model.id, scenario.ble_model.id))
    return 0


def cmd_sweep(args: argparse.Namespace) -> int:
    name, scenario = resolve_scenario(args.scenario)
    try:
        windows = [int(v) for v in args.max_backoff_list.split(",") if v.strip()]
    except ValueError:
        raise ConfigError("--max-backoff-list must be comma-separated integers")
    if not windows:
        raise ConfigError("--max-backoff-list must not be empty")
    if any(x < 0 for x in windows):
        raise ConfigError("--max-backoff-list values must be >= 0")
    if args.seeds < 1:
        raise ConfigError("--seeds must be >= 1")
    rows = []
    for x in windows:
        variant = replace(scenario, policy=replace(scenario.policy, max_backoff=x),
                          repeats=args.seeds, mode="blisp")
        variant.validate()
        stats = report.aggregate(sim.run_repeats(variant))
        rows.extend(report.table_rows(name, _setup_label(variant),
                                      _filter_stats(stats, args.normalize)))
    rows.sort(key=lambda r: (r.scenario, r.setup, r.metric))
    _write_atomic(args.out, report.emit_run_table(rows))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="blisp",
        description="Hybrid backscatter/active radio link simulator.")
    sub = parser.add_subparsers(dest="command", required=True)

    curve = sub.add_parser("curve", help="write cost-over-distance curves")
    curve.add_argument("--models", default="default",
                       help="'default' or a scenario preset/config file")
    curve.add_argument("--d-min", type=float, required=True)
    curve.add_argument("--d-max", type=float, required=True)
    curve.add_argument("--steps", type=int, required=True)
    curve.add_argument("--out", required=True)
    curve.set_defaults(func=cmd_curve)

    run = sub.add_parser("run", help="run one experiment setup")
    run.add_argument("--scenario", required=True,
                     help=f"preset ({', '.join(preset_names())}) or config file")
    run.add_argument("--policy", choices=("naive", "random"))
    run.add_argument("--max-backoff", type=int)
    run.add_argument("--setup", choices=("blisp", "wisp", "ble"),
                     help="hybrid node or a single-radio baseline")
    run.add_argument("--seed", type=int)
    run.add_argument("--repeats", type=int)
    group = run.add_mutually_exclusive_group()
    group.add_argument("--unique", dest="normalize", action="store_const",
                       const="unique", help="deduplicated-message metrics (default)")
    group.add_argument("--raw", dest="normalize", action="store_const",
                       const="raw", help="per-radio raw counts")
    run.set_defaults(normalize="unique")
    run.add_argument("--out", required=True)
    run.add_argument("--log", help="also write the per-period log CSV")
    run.set_defaults(func=cmd_run)

    sweep = sub.add_parser("sweep", help="cross backoff windows with seeds")
    sweep.add_argument("--scenario", required=True)
    sweep.add_argument("--max-backoff-list", required=True,
                       help="comma-separated windows, e.g. 0,3,10")
    sweep.add_argument("--seeds", type=int, default=5)
    group = sweep.add_mutually_exclusive_group()
    group.add_argument("--unique", dest="normalize", action="store_const",
                       const="unique")
    group.add_argument("--raw", dest="normalize", action="store_const",
                       const="raw")
    sweep.set_defaults(normalize="unique")
    sweep.add_argument("--out", required=True)
    sweep.set_defaults(func=cmd_sweep)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
