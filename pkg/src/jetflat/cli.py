"""Batch command line: parse JSON specs, dispatch computations, emit reports.

Reports go to stdout (canonical JSON by default, CSV on request); logs go
to stderr.  Exit codes: 0 when every property the command asserts holds,
1 on a failed assertion or cross-check, 2 on unreadable/invalid input
documents, 3 on domain mismatches and malformed geometry.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from typing import Any

import numpy as np

from .config import RunConfig
from .contact import contact_qa_check, shelukhin_norm_upper, spectral_norm, translated_points
from .errors import (
    CrossCheckMismatch,
    DimensionMismatch,
    EquivalenceViolation,
    MalformedPath,
    NotADiffeomorphism,
    SpecParseError,
    ViolationReport,
)
from .geodesics import (
    integral_criterion,
    local_quasi_autonomy_check,
    minimizing_geodesic_check,
    monotone_check,
    optimize_path,
)
from .jets import JetLegendrian, chord_spectrum
from .sampling import random_legendrian
from .selectors import (
    SELECTOR_CSV_COLUMNS,
    axiom_suite,
    metric_length,
    sch_length,
    selectors,
)
from .serialization import (
    canonical_json,
    dump_path,
    parse_contact_path,
    parse_contactomorphism,
    parse_function,
    parse_path,
)

log = logging.getLogger("jetflat")

CSV_HELP = (
    "CSV columns: 'dist' emits (%s); 'spectrum' emits (index, length); "
    "other commands emit flattened (key, value) rows." % ", ".join(SELECTOR_CSV_COLUMNS)
)


def _load_json(path: str) -> Any:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _flat_rows(obj: Any, prefix: str = "") -> list[tuple[str, Any]]:
    rows: list[tuple[str, Any]] = []
    if isinstance(obj, dict):
        for k in sorted(obj):
            rows.extend(_flat_rows(obj[k], f"{prefix}{k}." if prefix else f"{k}."))
    elif isinstance(obj, (list, tuple)):
        for i, v in enumerate(obj):
            rows.extend(_flat_rows(v, f"{prefix}{i}."))
    else:
        rows.append((prefix[:-1], obj))
    return rows


def _emit(report: dict, fmt: str, csv_rows: list[list] | None = None) -> None:
    if fmt == "json":
        sys.stdout.write(canonical_json(report))
        return
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if csv_rows is not None:
        writer.writerows(csv_rows)
    else:
        writer.writerow(("key", "value"))
        for key, value in _flat_rows(report):
            writer.writerow((key, value if not isinstance(value, float) else repr(value)))
    sys.stdout.write(buf.getvalue())


def _cmd_dist(args, cfg: RunConfig) -> tuple[dict, bool, list[list] | None]:
    f = parse_function(_load_json(args.f_spec))
    g = parse_function(_load_json(args.g_spec))
    r = selectors(JetLegendrian(f), JetLegendrian(g), membership_tol=cfg.tolerance)
    report = {
        "ell_plus": r.ell_plus,
        "ell_minus": r.ell_minus,
        "d_spec": r.d_spec,
        "plus_in_spectrum": r.plus_in_spectrum,
        "minus_in_spectrum": r.minus_in_spectrum,
    }
    ok = r.in_spectrum and r.ell_minus <= r.ell_plus + cfg.tolerance and r.d_spec >= -cfg.tolerance
    rows = [
        list(SELECTOR_CSV_COLUMNS),
        ["pair", repr(r.ell_plus), repr(r.ell_minus), repr(r.d_spec), r.in_spectrum],
    ]
    return report, ok, rows


def _cmd_spectrum(args, cfg: RunConfig) -> tuple[dict, bool, list[list] | None]:
    f = parse_function(_load_json(args.f_spec))
    g = parse_function(_load_json(args.g_spec))
    spec = chord_spectrum(JetLegendrian(f), JetLegendrian(g), tol=cfg.tolerance)
    report = {"lengths": list(spec.lengths), "plateau": spec.plateau, "tolerance": cfg.tolerance}
    rows = [["index", "length"]] + [[i, repr(v)] for i, v in enumerate(spec.lengths)]
    return report, True, rows


def _cmd_geodesic(args, cfg: RunConfig) -> tuple[dict, bool, list[list] | None]:
    path = parse_path(_load_json(args.path_spec))
    if args.mode == "check":
        rep = minimizing_geodesic_check(path, tol=cfg.tolerance)
        report = rep.to_json_dict()
        report["segmentation"] = local_quasi_autonomy_check(path).to_json_dict()
        return report, not rep.cross_check_mismatch, None
    result = optimize_path(
        path.knots[0], path.knots[-1], knots=args.knots, restarts=args.restarts, seed=cfg.seed
    )
    report = {
        "best_length": result.length,
        "d_spec": result.certified_lower,
        "gap": result.gap,
        "knots": args.knots,
        "restarts": args.restarts,
        "seed": cfg.seed,
        "path": dump_path(result.path),
    }
    return report, result.gap >= -1e-9, None


def _cmd_props(args, cfg: RunConfig) -> tuple[dict, bool, list[list] | None]:
    if args.count < 2:
        raise SpecParseError("props needs count >= 2")
    rng = np.random.default_rng(cfg.seed)
    sample = [
        random_legendrian(rng, degree=min(8, cfg.truncation_degree)) for _ in range(args.count)
    ]
    report = axiom_suite(sample, tol=cfg.tolerance, membership_tol=cfg.tolerance)
    return report.to_json_dict(), report.all_pass, None


def _cmd_monotone(args, cfg: RunConfig) -> tuple[dict, bool, list[list] | None]:
    path = parse_path(_load_json(args.path_spec))
    verdict = monotone_check(path)
    report = {"monotone": verdict, "segments": path.n_segments}
    return report, True, None


def _cmd_length(args, cfg: RunConfig) -> tuple[dict, bool, list[list] | None]:
    path = parse_path(_load_json(args.path_spec))
    total = sch_length(path)
    spec_len = metric_length(path, "spec", tol=cfg.tolerance)
    sch_len = metric_length(path, "sch", tol=cfg.tolerance)
    report = {
        "sch_length": total,
        "metric_length_spec": spec_len.value,
        "metric_length_sch": sch_len.value,
        "refinement_depth": spec_len.depth,
        "converged": spec_len.converged and sch_len.converged,
    }
    ok = (
        spec_len.converged
        and sch_len.converged
        and spec_len.value <= sch_len.value + cfg.tolerance
        and abs(spec_len.value - total) <= max(cfg.tolerance, 1e-9 * (1.0 + abs(total)))
    )
    return report, ok, None


def _cmd_integral(args, cfg: RunConfig) -> tuple[dict, bool, list[list] | None]:
    family = parse_path(_load_json(args.family_spec))
    rep = integral_criterion(family, tol=cfg.tolerance)
    return rep.to_json_dict(), True, None


def _cmd_contact(args, cfg: RunConfig) -> tuple[dict, bool, list[list] | None]:
    if args.sub == "qa":
        maps, times = parse_contact_path(_load_json(args.spec))
        witness = contact_qa_check(maps, times)
        return {"qa_witness": None if witness is None else witness.to_json_dict()}, True, None
    if args.sub == "upper":
        phi = parse_contactomorphism(_load_json(args.spec))
        upper = shelukhin_norm_upper(phi, knots=args.knots, restarts=args.restarts, seed=cfg.seed)
        norm = spectral_norm(phi)
        gap = upper - norm.norm
        report = {"upper": upper, "spectral_norm": norm.norm, "gap": gap}
        return report, gap <= 1e-4, None
    phi = parse_contactomorphism(_load_json(args.spec))
    if args.sub == "norm":
        r = spectral_norm(phi, tol=cfg.tolerance)
        report = {
            "c_plus": r.c_plus,
            "c_minus": r.c_minus,
            "norm": r.norm,
            "c1_advisory": r.c1_advisory,
        }
        return report, True, None
    spec = translated_points(phi, tol=cfg.tolerance)
    return {"translations": list(spec.lengths), "plateau": spec.plateau}, True, None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jetflat",
        description="Spectral selectors, chord spectra, sup-norm geodesics and "
        "circle-contactomorphism norms for truncated-Fourier data.",
        epilog=CSV_HELP,
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--grid", type=int, default=RunConfig.grid_size, help="scan grid size (power of two >= 64)")
    common.add_argument("--tol", type=float, default=RunConfig.tolerance, help="equality/membership tolerance")
    common.add_argument("--degree", type=int, default=RunConfig.truncation_degree, help="truncation degree for generated data")
    common.add_argument("--seed", type=int, default=RunConfig.seed, help="seed for randomized suites")
    common.add_argument("--format", choices=("json", "csv"), default=RunConfig.output_format, help="output format")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dist", parents=[common], help="selectors and spectral distance of two function specs")
    p.add_argument("f_spec")
    p.add_argument("g_spec")

    p = sub.add_parser("spectrum", parents=[common], help="Reeb-chord spectrum of two function specs")
    p.add_argument("f_spec")
    p.add_argument("g_spec")

    p = sub.add_parser("geodesic", parents=[common], help="geodesic check or path optimization")
    p.add_argument("path_spec")
    p.add_argument("--mode", choices=("check", "optimize"), default="check")
    p.add_argument("--knots", type=int, default=6)
    p.add_argument("--restarts", type=int, default=16)

    p = sub.add_parser("props", parents=[common], help="selector axiom suite on random Legendrians")
    p.add_argument("--count", type=int, default=20)

    p = sub.add_parser("monotone", parents=[common], help="monotonicity check of a path spec")
    p.add_argument("path_spec")

    p = sub.add_parser("length", parents=[common], help="sup-norm and partition-refinement lengths of a path")
    p.add_argument("path_spec")

    p = sub.add_parser("integral-criterion", parents=[common], help="integrated sup-norm equality test for a sampled family")
    p.add_argument("family_spec")

    p = sub.add_parser("contact", parents=[common], help="circle contactomorphism computations")
    p.add_argument("sub", choices=("norm", "translated", "qa", "upper"))
    p.add_argument("spec")
    p.add_argument("--knots", type=int, default=6)
    p.add_argument("--restarts", type=int, default=16)

    return parser


_DISPATCH = {
    "dist": _cmd_dist,
    "spectrum": _cmd_spectrum,
    "geodesic": _cmd_geodesic,
    "props": _cmd_props,
    "monotone": _cmd_monotone,
    "length": _cmd_length,
    "integral-criterion": _cmd_integral,
    "contact": _cmd_contact,
}


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(stream=sys.stderr, level=logging.INFO, format="%(name)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig(
            grid_size=args.grid,
            tolerance=args.tol,
            truncation_degree=args.degree,
            seed=args.seed,
            output_format=args.format,
        )
    except ValueError as exc:
        log.error("bad configuration: %s", exc)
        return 2
    try:
        report, ok, rows = _DISPATCH[args.command](args, cfg)
    except (DimensionMismatch, MalformedPath, NotADiffeomorphism) as exc:
        log.error("geometry error: %s", exc)
        return 3
    except (SpecParseError, json.JSONDecodeError, OSError, ValueError) as exc:
        log.error("input error: %s", exc)
        return 2
    except (EquivalenceViolation, CrossCheckMismatch, ViolationReport) as exc:
        log.error("check failed: %s", exc)
        return 1
    _emit(report, cfg.output_format, rows if cfg.output_format == "csv" else None)
    if not ok:
        log.error("asserted properties failed in command %r", args.command)
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
