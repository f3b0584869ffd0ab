"""Command-line front end.

Every command prints JSON on stdout; ``--csv PATH`` additionally writes a
table.  Exit codes: 0 success, 2 usage or input error, 3 a counterexample to
an uncertainty bound was found, 4 numerical failure.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .dqft import dqft, idqft
from .exceptions import EmptyBand, MalformedFile, SearchBudgetExceeded, TooLarge, TooSmall
from .experiments import image_experiment, run_examples
from .io import ExperimentConfig, load_ppm, load_qsignal, parse_band_spec, save_ppm
from .qsignal import distance
from .recovery import RecoveryProblem, noisy_recovery_experiment, observe, random_sparse_signal, recover
from .uncertainty import audit, exhaustive_verify

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_COUNTEREXAMPLE = 3
EXIT_NUMERIC = 4


def _emit(obj) -> None:
    json.dump(obj, sys.stdout, default=_json_default)
    sys.stdout.write("\n")


def _json_default(o):
    if isinstance(o, (np.integer,)):
        return int(o)
    if isinstance(o, (np.floating,)):
        return float(o)
    if isinstance(o, np.bool_):
        return bool(o)
    raise TypeError(f"cannot serialize {type(o).__name__}")


def _write_csv(path, header, rows) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def _report_row(d: dict):
    return list(d.keys()), [list(d.values())]


def cmd_transform(args) -> int:
    f = load_qsignal(args.input)
    out = idqft(f) if args.inverse else dqft(f)
    _emit(out.to_json_dict())
    if args.csv:
        Path(args.csv).write_text(out.to_csv())
    return EXIT_OK


def cmd_audit(args) -> int:
    report = audit(load_qsignal(args.input), args.tol)
    d = report.to_json_dict()
    _emit(d)
    if args.csv:
        _write_csv(args.csv, *_report_row(d))
    return EXIT_OK if report.product_bound_holds else EXIT_COUNTEREXAMPLE


def cmd_verify(args) -> int:
    res = exhaustive_verify(args.rows, args.cols, args.trials, args.seed)
    d = {
        "rows": args.rows,
        "cols": args.cols,
        "trials_per_support": args.trials,
        "seed": args.seed,
        "passed": res.passed,
        "supports_checked": res.supports_checked,
        "signals_checked": res.signals_checked,
        "counterexample": None,
    }
    if not res.passed:
        d["counterexample"] = {
            "report": res.counterexample.to_json_dict(),
            "support": [list(e) for e in res.counterexample_support],
            "signal": res.counterexample_signal.to_json_dict(),
        }
    _emit(d)
    if args.csv:
        _write_csv(args.csv, ["rows", "cols", "passed", "supports_checked", "signals_checked"],
                   [[args.rows, args.cols, res.passed, res.supports_checked, res.signals_checked]])
    return EXIT_OK if res.passed else EXIT_COUNTEREXAMPLE


def cmd_examples(args) -> int:
    checks = run_examples(args.k, args.l, args.trials, args.seed)
    rows = [c.to_json_dict() for c in checks]
    for r in rows:
        line = f"{r['status']}  {r['name']}  (expected {r['expected']}, observed {r['observed']})"
        if r["note"]:
            line += f"  [{r['note']}]"
        print(line, file=sys.stderr)
    _emit({"checks": rows, "all_passed": all(c.passed for c in checks)})
    if args.csv:
        _write_csv(args.csv, list(rows[0].keys()), [list(r.values()) for r in rows])
    return EXIT_OK if all(c.passed for c in checks) else EXIT_COUNTEREXAMPLE


def cmd_recover(args) -> int:
    cfg = ExperimentConfig.load(args.config)
    truth = None
    if cfg.observed is not None:
        observed = cfg.observed
    else:
        truth = random_sparse_signal(cfg.M, cfg.N, cfg.sparsity, np.random.default_rng(cfg.seed))
        observed = observe(truth, cfg.band)
    result = recover(RecoveryProblem(cfg.M, cfg.N, cfg.band, observed, cfg.sparsity, cfg.eps))
    d = result.to_json_dict()
    if truth is not None:
        d["planted"] = truth.to_json_dict()
        d["error"] = distance(truth, result.signal)
    _emit(d)
    if args.csv:
        Path(args.csv).write_text(result.signal.to_csv())
    return EXIT_OK


def cmd_experiment(args) -> int:
    cfg = ExperimentConfig.load(args.config)
    rec = noisy_recovery_experiment(cfg.M, cfg.N, cfg.sparsity, cfg.band, cfg.eps, cfg.trials, cfg.seed)
    d = rec.to_json_dict()
    if math.isinf(d["max_ratio"]):
        d["max_ratio"] = "inf"
    for t in d["trials"]:
        if math.isinf(t["ratio"]):
            t["ratio"] = "inf"
    _emit(d)
    if args.csv:
        Path(args.csv).write_text(rec.to_csv())
    return EXIT_OK if rec.violations == 0 else EXIT_NUMERIC


def cmd_image_experiment(args) -> int:
    img = load_ppm(args.input)
    band = parse_band_spec(args.band, img.height, img.width)
    res = image_experiment(img, band)
    d = res.to_json_dict()
    _emit(d)
    if args.output:
        save_ppm(args.output, res.reconstruction)
    if args.csv:
        _write_csv(args.csv, *_report_row(d))
    return EXIT_OK if res.bound_holds else EXIT_COUNTEREXAMPLE


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qdft-uncertainty", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--csv", metavar="PATH", help="also write a CSV table to PATH")
        sp.set_defaults(func=func)
        return sp

    sp = add("transform", cmd_transform, "forward or inverse transform of a serialized signal")
    sp.add_argument("--input", required=True, metavar="FILE")
    sp.add_argument("--inverse", action="store_true")

    sp = add("audit", cmd_audit, "support counts of a signal and its spectrum")
    sp.add_argument("--input", required=True, metavar="FILE")
    sp.add_argument("--tol", type=float, default=None, metavar="T")

    sp = add("verify", cmd_verify, "exhaustive check of the support-product bound on a small grid")
    sp.add_argument("--rows", type=int, required=True, metavar="M")
    sp.add_argument("--cols", type=int, required=True, metavar="N")
    sp.add_argument("--trials", type=int, default=100, metavar="K")
    sp.add_argument("--seed", type=int, default=0, metavar="S")

    sp = add("examples", cmd_examples, "recompute the worked examples and case tables")
    sp.add_argument("--k", type=int, default=2)
    sp.add_argument("--l", type=int, default=2)
    sp.add_argument("--trials", type=int, default=20)
    sp.add_argument("--seed", type=int, default=0)

    sp = add("recover", cmd_recover, "sparse recovery from a band-limited spectrum")
    sp.add_argument("--config", required=True, metavar="FILE")

    sp = add("experiment", cmd_experiment, "noisy recovery trials against the stability bound")
    sp.add_argument("--config", required=True, metavar="FILE")

    sp = add("image-experiment", cmd_image_experiment, "band-limit a PPM image and report counts, PSNR, SSIM")
    sp.add_argument("--input", required=True, metavar="IMG.ppm")
    sp.add_argument("--band", required=True, metavar="SPEC",
                    help="full | lowpass:R | random:SIZE[:SEED] | indices:u,v;u,v;...")
    sp.add_argument("--output", metavar="OUT.ppm", help="write the reconstruction")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (OSError, KeyError, ValueError, MalformedFile, TooLarge, TooSmall, EmptyBand,
            SearchBudgetExceeded) as exc:
        # json.JSONDecodeError and the package's ValueError subclasses land here too
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    except (ArithmeticError, np.linalg.LinAlgError) as exc:
        print(f"{parser.prog} {args.command}: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
