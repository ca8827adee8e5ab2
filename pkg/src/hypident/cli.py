"""Command-line front end: load a grid configuration, run the selected
check suites over the parameter cross-product, emit a JSON or CSV report,
and signal the outcome through the exit code.

Exit codes: 0 all records pass, 2 at least one failure, 3 unconverged or
skipped records only, 64 invalid usage/config, 74 report I/O failure.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from io import StringIO

from . import __version__
from .errors import DegenerateConfigurationError, UsageError
from .identity_suite import (ParameterPair, check_barnes_triple,
                             check_main_identity, check_obstruction_integer,
                             check_q_integral, check_spectral_kernel,
                             check_spectral_power, check_spectral_product,
                             check_spectral_resolvent,
                             check_weighted_residual)
from .policy import EvaluationPolicy
from .records import FAIL, PASS, SKIPPED, UNCONVERGED, CheckRecord, record_id, skipped_record
from .special_functions import check_product_formula, check_quadratic_transform

SUITES = (
    "main_identity",
    "quadratic_transform",
    "product_formula",
    "barnes",
    "spectral_power",
    "spectral_resolvent",
    "spectral_product",
    "spectral_kernel",
    "q_integral",
    "obstruction",
    "weighted_residual",
)

DEFAULT_PAIRS = ((0.25, 0.5), (0.1, 0.9), (0.4, 0.45))
DEFAULT_T_VALUES = (complex(0.0), complex(0.5), complex(1.0), complex(2.0),
                    complex(0.0, 0.5), complex(0.3, 0.4))
DEFAULT_R_VALUES = (0.5, 1.0, 10.0, 100.0)

# scalar grids for the shift-parameter suites
SHIFT_A_GRID = (-0.5, 0.25, 3.0)
SHIFT_TAU_GRID = (0.0, 0.8, 2.0)
SHIFT_B_GRID = (0.0, 1.5)
BARNES_TRIPLES = ((0.0, 0.5, 0.5), (0.0, 1.0, 0.5), (0.5, 0.5, 0.5),
                  (1.0, 1.0, 0.5), (0.5, 1.5, 0.75))
KERNEL_Z_FRACTIONS = (0.0, 0.25, 0.5, 0.75, 1.0)
TRANSFORM_W_GRID = (-0.7, 0.0, 0.25, 0.5)
PRODUCT_XY_GRID = ((1.0, 1.0), (0.3, 2.0), (0.8, 0.8))

CSV_COLUMNS = ("id", "suite", "T", "S", "t_re", "t_im", "r",
               "lhs_re", "lhs_im", "rhs_re", "rhs_im",
               "abs_err", "rel_err", "tolerance", "status", "nodes",
               "digits_lost")


@dataclass
class GridConfig:
    suites: list
    pairs: list
    t_values: list
    r_values: list
    policy: EvaluationPolicy
    output_path: str | None
    format: str
    tol_override: float | None = None

    @classmethod
    def from_dict(cls, raw: dict) -> "GridConfig":
        known = {"suites", "pairs", "t_values", "r_values", "policy",
                 "output_path", "format"}
        unknown = set(raw) - known
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")

        suites = raw.get("suites", list(SUITES))
        if not isinstance(suites, list) or not suites:
            raise UsageError("suites: must be a non-empty list of suite names")
        bad = [s for s in suites if s not in SUITES]
        if bad:
            raise UsageError(f"suites: unknown suite names {bad}; "
                             f"known: {list(SUITES)}")

        pairs = []
        for entry in raw.get("pairs", [list(p) for p in DEFAULT_PAIRS]):
            if (not isinstance(entry, (list, tuple)) or len(entry) != 2
                    or not all(isinstance(v, (int, float)) for v in entry)):
                raise UsageError(f"pairs: each entry must be [T, S], got {entry!r}")
            t_v, s_v = float(entry[0]), float(entry[1])
            if not 0.0 < t_v < s_v < 1.0:
                raise UsageError(f"pairs: need 0 < T < S < 1, got [{t_v:g}, {s_v:g}]")
            pairs.append((t_v, s_v))

        t_values = []
        for entry in raw.get("t_values", [[t.real, t.imag] for t in DEFAULT_T_VALUES]):
            if isinstance(entry, (int, float)):
                t_values.append(complex(float(entry)))
            elif (isinstance(entry, (list, tuple)) and len(entry) == 2
                  and all(isinstance(v, (int, float)) for v in entry)):
                t_values.append(complex(float(entry[0]), float(entry[1])))
            else:
                raise UsageError(
                    f"t_values: entries must be numbers or [re, im], got {entry!r}")

        r_values = []
        for entry in raw.get("r_values", list(DEFAULT_R_VALUES)):
            if not isinstance(entry, (int, float)) or not float(entry) > 0.0:
                raise UsageError(f"r_values: entries must be positive numbers, got {entry!r}")
            r_values.append(float(entry))
        if not r_values:
            raise UsageError("r_values: must not be empty")

        pol_raw = raw.get("policy", {})
        if not isinstance(pol_raw, dict):
            raise UsageError("policy: must be an object of EvaluationPolicy fields")
        try:
            policy = EvaluationPolicy(**pol_raw)
        except (TypeError, ValueError) as exc:
            raise UsageError(f"policy: {exc}") from exc

        fmt = raw.get("format", "json")
        if fmt not in ("json", "csv"):
            raise UsageError(f"format: must be 'json' or 'csv', got {fmt!r}")

        output_path = raw.get("output_path")
        if output_path is not None and not isinstance(output_path, str):
            raise UsageError("output_path: must be a string path")

        return cls(suites=list(suites), pairs=pairs, t_values=t_values,
                   r_values=r_values, policy=policy,
                   output_path=output_path, format=fmt)

    def echo(self) -> dict:
        return {
            "suites": list(self.suites),
            "pairs": [[t, s] for (t, s) in self.pairs],
            "t_values": [[t.real, t.imag] for t in self.t_values],
            "r_values": list(self.r_values),
            "policy": {"abs_tol": self.policy.abs_tol,
                       "rel_tol": self.policy.rel_tol,
                       "max_terms": self.policy.max_terms,
                       "max_nodes": self.policy.max_nodes},
            "output_path": self.output_path,
            "format": self.format,
            "tol_override": self.tol_override,
        }


@dataclass
class ReportDocument:
    tool_version: str
    config: dict
    records: list
    summary: dict
    wall_time_seconds: float


def _tol(cfg: GridConfig, default: float) -> float:
    return cfg.tol_override if cfg.tol_override is not None else default


def build_tasks(cfg: GridConfig) -> list:
    """Deterministic task list for the cross-product of suites and grids."""
    pol = cfg.policy
    tasks = []

    def add(fn, *args, **kwargs):
        tasks.append(lambda: fn(*args, **kwargs))

    for suite in cfg.suites:
        if suite == "main_identity":
            for (t_v, s_v) in cfg.pairs:
                pair = ParameterPair(t_v, s_v)
                for t in cfg.t_values:
                    add(check_main_identity, pair, t, pol,
                        tolerance=_tol(cfg, 1e-7))
        elif suite == "quadratic_transform":
            for t in cfg.t_values:
                for w in TRANSFORM_W_GRID:
                    add(check_quadratic_transform, t, w, pol,
                        tolerance=_tol(cfg, pol.abs_tol))
        elif suite == "product_formula":
            for t in cfg.t_values:
                for (x, y) in PRODUCT_XY_GRID:
                    add(check_product_formula, t, x, y, pol,
                        tolerance=_tol(cfg, pol.abs_tol))
        elif suite == "barnes":
            for (a, b, c) in BARNES_TRIPLES:
                add(check_barnes_triple, a, b, c, pol,
                    tolerance=_tol(cfg, 1e-8))
        elif suite == "spectral_power":
            for a in SHIFT_A_GRID:
                for tau in SHIFT_TAU_GRID:
                    add(check_spectral_power, a, tau, pol,
                        tolerance=_tol(cfg, 1e-8))
        elif suite == "spectral_resolvent":
            for a in SHIFT_A_GRID:
                for r in cfg.r_values:
                    add(check_spectral_resolvent, a, r, pol,
                        tolerance=_tol(cfg, 1e-8))
        elif suite == "spectral_product":
            for a in SHIFT_A_GRID:
                for r in cfg.r_values:
                    for b in SHIFT_B_GRID:
                        add(check_spectral_product, a, r, b, pol,
                            tolerance=_tol(cfg, 1e-8))
        elif suite == "spectral_kernel":
            for (t_v, s_v) in cfg.pairs:
                pair = ParameterPair(t_v, s_v)
                for frac in KERNEL_Z_FRACTIONS:
                    z = t_v + frac * (s_v - t_v)
                    for r in cfg.r_values:
                        add(check_spectral_kernel, z, r, pair, pol,
                            tolerance=_tol(cfg, 1e-7))
        elif suite == "q_integral":
            for (t_v, s_v) in cfg.pairs:
                pair = ParameterPair(t_v, s_v)
                for r in cfg.r_values:
                    add(check_q_integral, r, pair, pol,
                        tolerance=_tol(cfg, 1e-7))
        elif suite == "obstruction":
            for (t_v, s_v) in cfg.pairs:
                pair = ParameterPair(t_v, s_v)
                for r in cfg.r_values:
                    def task(r=r, pair=pair, tol=_tol(cfg, 1e-8)):
                        rid = record_id("obstruction", T=pair.T, S=pair.S, r=r)
                        try:
                            return check_obstruction_integer(r, pair, pol,
                                                             tolerance=tol)
                        except DegenerateConfigurationError as exc:
                            return skipped_record(rid, str(exc), tol,
                                                  metadata={"T": pair.T,
                                                            "S": pair.S,
                                                            "r": r})
                    tasks.append(task)
        elif suite == "weighted_residual":
            for (t_v, s_v) in cfg.pairs:
                pair = ParameterPair(t_v, s_v)
                for r in cfg.r_values:
                    add(check_weighted_residual, r, pair,
                        tolerance=_tol(cfg, 1e-6))
    return tasks


def run(cfg: GridConfig, jobs: int = 1) -> ReportDocument:
    """Execute the configured grid and assemble the report.

    Records are computed independently (optionally on a thread pool) and
    sorted by id, so the report is independent of scheduling.
    """
    start = time.perf_counter()
    tasks = build_tasks(cfg)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(lambda task: task(), tasks))
    else:
        records = [task() for task in tasks]
    records.sort(key=lambda rec: rec.id)
    summary = {status: 0 for status in (PASS, FAIL, UNCONVERGED, SKIPPED)}
    for rec in records:
        summary[rec.status] += 1
    summary["total"] = len(records)
    wall = time.perf_counter() - start
    return ReportDocument(tool_version=__version__, config=cfg.echo(),
                          records=records, summary=summary,
                          wall_time_seconds=wall)


def _json_safe(value):
    if isinstance(value, complex):
        return [value.real, value.imag]
    if isinstance(value, float):
        return value if value == value and abs(value) != float("inf") else None
    return value


def _record_dict(rec: CheckRecord) -> dict:
    return {
        "id": rec.id,
        "suite": rec.suite,
        "lhs": None if rec.lhs is None else [rec.lhs.real, rec.lhs.imag],
        "rhs": None if rec.rhs is None else [rec.rhs.real, rec.rhs.imag],
        "abs_err": _json_safe(rec.abs_err),
        "rel_err": _json_safe(rec.rel_err),
        "tolerance": rec.tolerance,
        "status": rec.status,
        "metadata": {k: _json_safe(v) for k, v in sorted(rec.metadata.items())},
    }


def render_json(doc: ReportDocument) -> str:
    payload = {
        "tool_version": doc.tool_version,
        "config": doc.config,
        "summary": doc.summary,
        "wall_time_seconds": doc.wall_time_seconds,
        "records": [_record_dict(rec) for rec in doc.records],
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def render_csv(doc: ReportDocument) -> str:
    def cell(value) -> str:
        if value is None:
            return ""
        if isinstance(value, float):
            return repr(value)
        return str(value)

    out = StringIO()
    out.write(",".join(CSV_COLUMNS) + "\n")
    for rec in doc.records:
        md = rec.metadata
        t = md.get("t")
        row = [
            rec.id,
            rec.suite,
            cell(md.get("T")),
            cell(md.get("S")),
            cell(None if t is None else complex(t).real),
            cell(None if t is None else complex(t).imag),
            cell(md.get("r")),
            cell(None if rec.lhs is None else rec.lhs.real),
            cell(None if rec.lhs is None else rec.lhs.imag),
            cell(None if rec.rhs is None else rec.rhs.real),
            cell(None if rec.rhs is None else rec.rhs.imag),
            cell(rec.abs_err),
            cell(rec.rel_err if rec.rel_err != float("inf") else None),
            cell(rec.tolerance),
            rec.status,
            cell(md.get("nodes")),
            cell(md.get("digits_lost")),
        ]
        out.write(",".join(row) + "\n")
    return out.getvalue()


def exit_code(doc: ReportDocument) -> int:
    if doc.summary.get(FAIL, 0) > 0:
        return 2
    if doc.summary.get(UNCONVERGED, 0) > 0 or doc.summary.get(SKIPPED, 0) > 0:
        return 3
    return 0


def main(argv: list | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="hypident",
        description="Run hypergeometric integral identity check suites "
                    "over parameter grids and report pass/fail per record.")
    parser.add_argument("--config", metavar="PATH",
                        help="JSON grid configuration (defaults embedded)")
    parser.add_argument("--suite", action="append", metavar="NAME",
                        help=f"suite to run (repeatable, overrides config); "
                             f"known: {', '.join(SUITES)}")
    parser.add_argument("--output", metavar="PATH",
                        help="report destination (default: config output_path or stdout)")
    parser.add_argument("--format", choices=("json", "csv"),
                        help="report format (default: config format or json)")
    parser.add_argument("--tol", type=float, metavar="X",
                        help="override every record's pass tolerance")
    parser.add_argument("--jobs", type=int, default=1, metavar="N",
                        help="evaluate up to N records concurrently")
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad flags; remap to the usage exit code
        return 64 if exc.code not in (0, None) else 0

    raw = {}
    if args.config is not None:
        try:
            with open(args.config, "r", encoding="utf-8") as fh:
                raw = json.load(fh)
        except OSError as exc:
            print(f"error: cannot read config: {exc}", file=sys.stderr)
            return 64
        except json.JSONDecodeError as exc:
            print(f"error: config is not valid JSON: {exc}", file=sys.stderr)
            return 64
        if not isinstance(raw, dict):
            print("error: config must be a JSON object", file=sys.stderr)
            return 64

    if args.suite:
        raw["suites"] = args.suite
    if args.output is not None:
        raw["output_path"] = args.output
    if args.format is not None:
        raw["format"] = args.format

    try:
        cfg = GridConfig.from_dict(raw)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 64
    if args.tol is not None:
        if not args.tol > 0.0:
            print("error: --tol must be positive", file=sys.stderr)
            return 64
        cfg.tol_override = args.tol
    if args.jobs < 1:
        print("error: --jobs must be at least 1", file=sys.stderr)
        return 64

    doc = run(cfg, jobs=args.jobs)
    text = render_csv(doc) if cfg.format == "csv" else render_json(doc)
    if cfg.output_path:
        try:
            with open(cfg.output_path, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"error: cannot write report: {exc}", file=sys.stderr)
            return 74
    else:
        sys.stdout.write(text)

    counts = doc.summary
    print(f"{counts['total']} records: {counts[PASS]} pass, {counts[FAIL]} fail, "
          f"{counts[UNCONVERGED]} unconverged, {counts[SKIPPED]} skipped "
          f"({doc.wall_time_seconds:.2f}s)", file=sys.stderr)
    return exit_code(doc)


def entry() -> None:
    sys.exit(main())
