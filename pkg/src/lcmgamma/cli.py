"""Command-line front end: ``check``, ``scan`` and ``ineq``.

Exit codes: 0 success, 1 the checked property failed (or, for ``ineq``,
the outcome contradicts what the regime predicts), 2 usage error.
Reports are JSON (UTF-8, sorted keys) or CSV, written to stdout or --out.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time

import numpy as np

from .family import FamilyParams
from .inequalities import CASE_IDS, RegimeError, sweep
from .report import ReportDocument
from .special import DomainError, EvalPrecision
from .verifier import LcmCheckConfig, RegionCell, RegionScan, check_lcm, scan_region

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _sign(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"sign must be +1 or -1, got {text!r}")
    if v not in (1, -1):
        raise argparse.ArgumentTypeError(f"sign must be +1 or -1, got {text!r}")
    return v


def _floats(text: str) -> list[float]:
    try:
        return [float(t) for t in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of numbers, got {text!r}")


def _add_grid_args(p):
    p.add_argument("--max-order", type=int, default=8, help="highest derivative order checked")
    p.add_argument("--xmin", type=float, default=1e-3)
    p.add_argument("--xmax", type=float, default=1e4)
    p.add_argument("--grid", type=int, default=400, help="number of log-spaced x points")
    p.add_argument("--no-refine", action="store_true", help="skip local refinement of violations")


def _add_output_args(p):
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--format", choices=("json", "csv"), default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lcmgamma",
        description="Verify log-complete monotonicity of gamma-function families and related inequalities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="check one (alpha, beta, sign) on an x grid")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--sign", type=_sign, default=-1, help="+1 or -1")
    _add_grid_args(p)
    _add_output_args(p)

    p = sub.add_parser("scan", help="classify a grid of (alpha, beta) cells")
    p.add_argument("--alpha-range", type=float, nargs=2, default=(0.0, 1.5), metavar=("LO", "HI"))
    p.add_argument("--beta-range", type=float, nargs=2, default=(0.0, 1.5), metavar=("LO", "HI"))
    p.add_argument("--resolution", type=int, default=31, help="cells per axis")
    p.add_argument("--sign", type=_sign, default=-1, help="+1 or -1")
    p.add_argument(
        "--empirical",
        choices=("undecided", "all", "none"),
        default="undecided",
        help="which cells also get a grid check (default: those no theorem decides)",
    )
    p.add_argument("--checkpoint", help="append finished cells to this JSON-lines file")
    p.add_argument("--resume", action="store_true", help="reuse cells already in --checkpoint")
    p.add_argument("--limit", type=int, help="stop after computing this many new cells")
    _add_grid_args(p)
    _add_output_args(p)

    p = sub.add_parser("ineq", help="sample an inequality inside its hypotheses")
    p.add_argument("--case", choices=CASE_IDS, required=True)
    p.add_argument("--n", type=int, default=1000, help="number of samples")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--alpha", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--k", type=int, help="fixed polygamma order")
    for name in ("x", "y", "a", "b", "c"):
        p.add_argument(f"--{name}", type=float, help=f"fix {name}")
    p.add_argument("--xs", type=_floats, help="fixed points for n_gurland, e.g. 0.5,1,4")
    p.add_argument("--ps", type=_floats, help="weights for --xs (default uniform)")
    p.add_argument("--xmin", type=float, default=1e-3)
    p.add_argument("--xmax", type=float, default=1e4)
    p.add_argument("--printed", action="store_true", help="evaluate the typeset reading (ratio_beta, note_li_chen)")
    p.add_argument("--keep", type=int, default=1000, help="per-sample records kept, smallest slack first")
    p.add_argument("--tol", type=float, default=1e-10, help="relative tolerance on slack/scale")
    _add_output_args(p)
    return parser


def _check_config(args) -> LcmCheckConfig:
    try:
        prec = EvalPrecision.from_env()
    except ValueError as e:
        raise UsageError(f"GLL_PRECISION: {e}")
    return LcmCheckConfig(
        max_order=args.max_order,
        x_min=args.xmin,
        x_max=args.xmax,
        n_points=args.grid,
        refine=not args.no_refine,
        prec=prec,
    )


def _csv(rows) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def cmd_check(args):
    cfg = _check_config(args)
    params = FamilyParams(args.alpha, args.beta, args.sign)
    report = check_lcm(params, cfg)
    code = EXIT_FAIL if report.verdict == "fail" else EXIT_OK
    if args.format == "csv":
        rows = [["kind", "order", "x", "value", "rel"]]
        rows += [["worst", w.order, repr(w.x), repr(w.value), repr(w.rel)] for w in report.worst]
        rows += [[v.kind, v.order, repr(v.x), repr(v.value), repr(v.rel)] for v in report.violations]
        return code, _csv(rows), report.to_dict(), cfg.to_dict()
    return code, None, report.to_dict(), cfg.to_dict()


def _load_checkpoint(path):
    done = {}
    if path and os.path.exists(path):
        with open(path, encoding="utf-8") as fh:
            header = None
            for line in fh:
                if not line.strip():
                    continue
                rec = json.loads(line)
                if header is None:
                    header = rec
                    continue
                c = RegionCell.from_dict(rec)
                done[(c.i, c.j)] = c
        return header, done
    return None, done


class _Stop(Exception):
    pass


def scan_csv(scan: RegionScan) -> str:
    """Rows are β values, columns α values; cells read ``<P|F|U>:<provenance>``."""
    rows = [["beta\\alpha"] + [f"{a:.6g}" for a in scan.alphas]]
    for j, row in enumerate(scan.code_matrix()):
        rows.append([f"{scan.betas[j]:.6g}"] + row)
    return _csv(rows)


def _scan_mismatches(scan: RegionScan) -> int:
    bad = 0
    for c in scan.cells:
        if c.verdict is None or c.theorem == "undecided":
            continue
        if (c.theorem == "lcm") != (c.verdict != "fail"):
            bad += 1
    return bad


def cmd_scan(args):
    cfg = _check_config(args)
    if args.resume and not args.checkpoint:
        raise UsageError("--resume needs --checkpoint")
    header = {
        "alpha_range": list(args.alpha_range),
        "beta_range": list(args.beta_range),
        "resolution": args.resolution,
        "sign": args.sign,
        "empirical": args.empirical,
        "check": cfg.to_dict(),
    }
    done = {}
    if args.checkpoint:
        if args.resume:
            old, done = _load_checkpoint(args.checkpoint)
            if old is not None and old != header:
                raise UsageError("checkpoint was written with different scan settings")
            if old is None:
                done = {}
        if not args.resume or not os.path.exists(args.checkpoint):
            with open(args.checkpoint, "w", encoding="utf-8") as fh:
                fh.write(json.dumps(header, sort_keys=True) + "\n")

    fresh = [0]

    def on_cell(cell):
        if args.checkpoint:
            with open(args.checkpoint, "a", encoding="utf-8") as fh:
                fh.write(json.dumps(cell.to_dict(), sort_keys=True) + "\n")
        fresh[0] += 1
        if args.limit is not None and fresh[0] >= args.limit:
            raise _Stop

    try:
        scan = scan_region(
            args.alpha_range, args.beta_range, args.resolution, args.sign, cfg, args.empirical, done, on_cell
        )
    except _Stop:
        total = args.resolution**2
        n = len(done) + fresh[0]
        print(f"stopped after {fresh[0]} new cells ({n}/{total}); rerun with --resume", file=sys.stderr)
        return EXIT_OK, "", None, header
    code = EXIT_FAIL if _scan_mismatches(scan) else EXIT_OK
    text = scan_csv(scan) if args.format == "csv" else None
    return code, text, scan.to_dict(), header


def _ineq_fixed(args) -> dict:
    keys = ("alpha", "beta", "k", "x", "y", "a", "b", "c", "xs", "ps")
    return {k: getattr(args, k) for k in keys if getattr(args, k) is not None}


def cmd_ineq(args):
    if args.n < 1:
        raise UsageError("--n must be >= 1")
    fixed = _ineq_fixed(args)
    if "ps" in fixed and "xs" not in fixed:
        raise UsageError("--ps needs --xs")
    if "xs" in fixed and "ps" in fixed and len(fixed["xs"]) != len(fixed["ps"]):
        raise UsageError("--xs and --ps differ in length")
    res = sweep(args.case, args.n, args.seed, (args.xmin, args.xmax), fixed, args.printed)
    summary = res.summary(args.tol)
    order = np.argsort(res.normalized, kind="stable")[: max(args.keep, 0)]
    cases = [res.case(int(i)).to_dict() for i in order]
    expect_hold = res.regime == "sufficient"
    code = EXIT_OK if summary["holds"] == expect_hold else EXIT_FAIL
    results = {"kind": "inequality_sweep", "summary": summary, "cases": cases}
    config = {"case": args.case, "n": args.n, "seed": args.seed, "fixed": fixed,
              "x_range": [args.xmin, args.xmax], "printed": args.printed, "tol": args.tol}
    if args.format == "csv":
        pkeys = sorted({k for c in cases for k in c["params"]})
        xkeys = sorted({k for c in cases for k in c["point"]})
        rows = [["rank", "slack", "scale", "normalized"] + pkeys + xkeys]
        for r, c in enumerate(cases):
            pt = [" ".join(map(repr, v)) if isinstance(v, list) else repr(v) for v in (c["point"].get(k, "") for k in xkeys)]
            rows.append([r, repr(c["slack"]), repr(c["scale"]), repr(c["slack"] / c["scale"])]
                        + [repr(c["params"].get(k, "")) for k in pkeys] + pt)
        return code, _csv(rows), results, config
    return code, None, results, config


_COMMANDS = {"check": cmd_check, "scan": cmd_scan, "ineq": cmd_ineq}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code is not None else EXIT_OK
    t0 = time.perf_counter()
    try:
        code, text, results, config = _COMMANDS[args.command](args)
    except (UsageError, RegimeError, DomainError, ValueError, KeyError) as e:
        print(f"lcmgamma {args.command}: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    if results is None:  # partial scan, checkpoint holds the progress
        return code
    if text is None:
        doc = ReportDocument(args.command, config, results, round(time.perf_counter() - t0, 6))
        text = doc.to_json()
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
