"""``hyperchron`` command line.

Exit codes: 0 success / suite passed, 1 suite failed, 2 usage or malformed
input, 3 data validation (e.g. a non-Hermitian event).
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from collections import Counter
from pathlib import Path

import numpy as np

from . import chronometry as chrono, jsonio, projection as proj, symmetry as sym, verify
from .chronometry import Label, Tolerance
from .errors import HyperchronError, NonHermitianInput, NotTimelike, WrongDimension
from .jsonio import MalformedInput
from .sampling import random_hermitian, rng_from

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DATA = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _env_float(name):
    raw = os.environ.get(name)
    if raw is None:
        return None
    try:
        return float(raw)
    except ValueError as exc:
        raise UsageError(f"{name}={raw!r} is not a number") from exc


def _env_int(name):
    raw = os.environ.get(name)
    if raw is None:
        return None
    try:
        return int(raw)
    except ValueError as exc:
        raise UsageError(f"{name}={raw!r} is not an integer") from exc


def _tolerance(args) -> Tolerance:
    # flags > HYPERCHRON_TOL > default; the value sets the relative threshold
    rel = args.tol if getattr(args, "tol", None) is not None else _env_float("HYPERCHRON_TOL")
    return Tolerance(rel_eps=rel) if rel is not None else chrono.DEFAULT_TOL


def _seed(args) -> int:
    if getattr(args, "seed", None) is not None:
        return args.seed
    env = _env_int("HYPERCHRON_SEED")
    return 0 if env is None else env


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise MalformedInput(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"{path} is not valid JSON: {exc}") from exc


def _emit(obj) -> None:
    sys.stdout.write(jsonio.dumps(obj) + "\n")


def _matrix_columns(r: int) -> list[str]:
    cells = [f"{a}_{b}" for a in range(r) for b in range(r)]
    return [f"re_{c}" for c in cells] + [f"im_{c}" for c in cells]


def _matrix_row(M) -> list[str]:
    M = np.asarray(M, dtype=complex)
    return [jsonio.format_float(v) for v in M.real.ravel()] + [jsonio.format_float(v) for v in M.imag.ravel()]


def _open_out(path):
    if path in (None, "-"):
        return sys.stdout, False
    return open(path, "w", newline=""), True


def cmd_classify(args) -> int:
    tol = _tolerance(args)
    v = jsonio.event_from_json(_load_json(args.input), tol)
    cls = chrono.causal_classify(v, tol)
    _emit({**cls.to_dict(), "delta": chrono.chronometric_form(v, tol)})
    return EXIT_OK


def cmd_propertime(args) -> int:
    tol = _tolerance(args)
    x = jsonio.event_from_json(_load_json(args.x), tol)
    y = jsonio.event_from_json(_load_json(args.y), tol)
    if x.shape != y.shape:
        raise WrongDimension(f"events have different r: {x.shape[0]} and {y.shape[0]}")
    d = x - y
    cls = chrono.causal_classify(d, tol)
    _emit({"label": cls.label.value, "delta": chrono.chronometric_form(d, tol),
           "proper_time": chrono.proper_time(x, y, tol)})
    return EXIT_OK


def cmd_geodesic(args) -> int:
    tol = _tolerance(args)
    z = jsonio.event_from_json(_load_json(args.source), tol)
    y = jsonio.event_from_json(_load_json(args.target), tol)
    if args.samples < 2:
        raise UsageError("--samples must be >= 2")
    curve = sym.geodesic_between(y, z, tol)
    r = z.shape[0]
    out, close = _open_out(args.out)
    try:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["s"] + _matrix_columns(r))
        for s in np.linspace(curve.a, curve.b, args.samples):
            writer.writerow([jsonio.format_float(s)] + _matrix_row(curve(s)))
    finally:
        if close:
            out.close()
    return EXIT_OK


def cmd_project(args) -> int:
    rho = proj.CandidateMap(jsonio.density_from_json(_load_json(args.rho)))
    X = jsonio.broken_event_from_json(_load_json(args.event))
    _emit(jsonio.event_to_json(proj.project(rho, X)))
    return EXIT_OK


def cmd_sample_cone(args) -> int:
    """Classify random Hermitian intervals.

    Per-sample rows go to the ``--out`` CSV (``-`` for stdout); otherwise the
    stratum histogram is printed as JSON.
    """
    tol = _tolerance(args)
    rng = rng_from(_seed(args))
    counts = Counter({label.value: 0 for label in Label})
    rows = []
    for k in range(args.trials):
        v = random_hermitian(args.r, rng)
        cls = chrono.causal_classify(v, tol)
        counts[cls.label.value] += 1
        rows.append([k, cls.rank, cls.plus, cls.minus, cls.label.value,
                     jsonio.format_float(chrono.chronometric_form(v, tol))])
    if args.out is not None:
        out, close = _open_out(args.out)
        try:
            writer = csv.writer(out, lineterminator="\n")
            writer.writerow(["trial", "rank", "p", "q", "label", "delta"])
            writer.writerows(rows)
        finally:
            if close:
                out.close()
    if args.out != "-":
        _emit({"r": args.r, "trials": args.trials, "seed": _seed(args),
               "strata": {label.value: counts[label.value] for label in Label}})
    return EXIT_OK


def cmd_verify(args) -> int:
    seed = _seed(args)
    if args.suite == "projection":
        dim = args.n
        if args.rho is not None:
            rho = jsonio.density_from_json(_load_json(args.rho))
            dim = rho.shape[0]
        else:
            rho = None
            if dim is None:
                raise UsageError("suite 'projection' needs --n or --rho")
    else:
        rho = None
        dim = args.r
        if dim is None:
            raise UsageError(f"suite {args.suite!r} needs --r")
        if dim < 2 and args.suite != "cone":
            raise UsageError("--r must be >= 2")
    if dim < 1 or args.trials < 1:
        raise UsageError("dimensions and --trials must be positive")
    report = verify.run_suite(args.suite, dim, args.trials, seed, rho)
    cx = report.extra.pop("counterexample", None)
    if cx is not None:
        path = Path(args.counterexample_out) if args.counterexample_out else Path(args.rho).with_suffix(".counterexample.json")
        path.write_text(jsonio.dumps(jsonio.counterexample_to_json(cx)) + "\n")
        report.extra["counterexample"] = str(path)
    _emit(report.to_dict(timing=args.timing))
    return EXIT_OK if report.passed else EXIT_FAIL


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hyperchron", description="Causal geometry of hyperspin quantum space-times.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("classify", help="causal class and chronometric form of an interval")
    p.add_argument("--in", dest="input", required=True, help="Event JSON")
    p.add_argument("--tol", type=float, help="relative tolerance (default 1e-9)")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify", help="run a seeded verification suite")
    p.add_argument("--suite", required=True, choices=verify.SUITES)
    p.add_argument("--r", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int)
    p.add_argument("--rho", help="density matrix JSON (projection suite)")
    p.add_argument("--counterexample-out", help="where to write a falsifier counterexample")
    p.add_argument("--timing", action="store_true", help="include wall_time (breaks byte-identity)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("geodesic", help="sample the geodesic from --from to --to as CSV")
    p.add_argument("--from", dest="source", required=True)
    p.add_argument("--to", dest="target", required=True)
    p.add_argument("--samples", type=int, default=11)
    p.add_argument("--out", default="-")
    p.add_argument("--tol", type=float)
    p.set_defaults(func=cmd_geodesic)

    p = sub.add_parser("propertime", help="proper time between two events")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--tol", type=float)
    p.set_defaults(func=cmd_propertime)

    p = sub.add_parser("project", help="project a broken event with a density matrix")
    p.add_argument("--rho", required=True)
    p.add_argument("--event", required=True)
    p.set_defaults(func=cmd_project)

    p = sub.add_parser("sample-cone", help="stratum counts of random intervals")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int)
    p.add_argument("--out", help="per-sample CSV path, or - for stdout")
    p.add_argument("--tol", type=float)
    p.set_defaults(func=cmd_sample_cone)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"hyperchron: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MalformedInput as exc:
        print(f"hyperchron: malformed input: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NonHermitianInput as exc:
        print(f"hyperchron: {exc}", file=sys.stderr)
        return EXIT_DATA
    except NotTimelike as exc:
        print(f"hyperchron: {exc}", file=sys.stderr)
        return EXIT_DATA
    except HyperchronError as exc:
        print(f"hyperchron: invalid data: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
