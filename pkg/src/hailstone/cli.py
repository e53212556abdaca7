"""Command line front end.

Exit status: 0 on success, 1 on a domain error (overflow, exhausted budget,
failed check), 2 on a usage error.
"""
from __future__ import annotations

import argparse
import contextlib
import csv
import io
import json
import os
import sys

from . import families as fam
from .cache import ConventionMismatch, FormatError, build_memo, load_memo, save_memo
from .core import (
    CONVENTIONS,
    DEFAULT_BUDGET,
    CollatzError,
    stopping_count,
    syracuse_decompose,
    trajectory,
)
from .verify import (
    DESK_SCALE,
    InvalidConfig,
    VerifyConfig,
    check_partition,
    check_step_identities,
    decomposition_consistency,
    verify_range,
)


class DomainFailure(Exception):
    """A command ran but its result is a failure (e.g. an identity check failed)."""


def positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def nonnegative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return value


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--convention", choices=CONVENTIONS, default="paper")
    p.add_argument("--budget", type=positive, default=DEFAULT_BUDGET)
    p.add_argument("--cache", metavar="PATH")
    p.add_argument("--workers", type=positive, default=os.cpu_count() or 1)
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="hailstone", description="Collatz family and step-count toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("steps", parents=[common], help="stopping count of n")
    p.add_argument("n", type=positive)
    p = sub.add_parser("traj", parents=[common], help="full trajectory of n")
    p.add_argument("n", type=positive)
    p = sub.add_parser("decompose", parents=[common], help="odd-step decomposition of odd n")
    p.add_argument("n", type=positive)

    p = sub.add_parser("family", parents=[common], help="terms of a named family a..g")
    p.add_argument("name", choices=sorted(fam.REGISTRY))
    which = p.add_mutually_exclusive_group()
    which.add_argument("--count", type=positive, default=5)
    which.add_argument("--index", type=nonnegative)

    p = sub.add_parser("parametric", parents=[common], help="terms of D/J/M/K/S for one k")
    p.add_argument("name", choices=sorted(fam.PARAMETRIC))
    p.add_argument("--k", type=positive, required=True)
    p.add_argument("--count", type=positive, default=5)

    p = sub.add_parser("general", parents=[common], help="orbit of odd n under x -> 4x+1")
    p.add_argument("n", type=positive)
    p.add_argument("--count", type=positive, default=5)

    p = sub.add_parser("seedsearch", parents=[common], help="least beta leading to a new family")
    p.add_argument("name", choices=sorted(fam.REGISTRY))
    p.add_argument("--depth", type=positive, default=5)
    p.add_argument("--exclude", type=positive, nargs="*", default=[])

    p = sub.add_parser("roots", parents=[common], help="family root of odd numbers")
    p.add_argument("values", type=positive, nargs="+")

    p = sub.add_parser("verify", parents=[common], help="scan a seed range [start, end)")
    p.add_argument("--start", type=positive, default=1)
    p.add_argument("--end", type=positive, default=DESK_SCALE)

    p = sub.add_parser("identities", parents=[common], help="sweep the step identities")
    p.add_argument("--max-k", type=positive, default=10**5)

    p = sub.add_parser("partition", parents=[common], help="check the family-root partition")
    p.add_argument("--max-odd", type=positive, default=10**6)

    p = sub.add_parser("decomposition", parents=[common], help="check decompositions against step counts")
    p.add_argument("--max-odd", type=positive, default=10**6)

    p = sub.add_parser("memo-build", parents=[common], help="build a memo table and write it to --cache")
    p.add_argument("--limit", type=positive, required=True)
    return parser


def _emit(out, fmt: str, payload: dict, rows: list[dict] | None = None, text: str | None = None) -> None:
    if fmt == "json":
        out.write(json.dumps(payload) + "\n")
    elif fmt == "csv":
        rows = rows if rows is not None else [payload]
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]) if rows else [], lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v for k, v in row.items()})
        out.write(buf.getvalue())
    else:
        out.write((text if text is not None else json.dumps(payload, indent=2)) + "\n")


def _memo(args):
    if not args.cache:
        return None
    return load_memo(args.cache, args.convention)


def _steps_fn(args):
    table = _memo(args)

    def steps(n: int) -> int:
        if table is not None:
            hit = table.lookup(n)
            if hit is not None:
                return hit
        return stopping_count(n, args.budget, args.convention)

    return steps


def _report(out, args, report) -> None:
    payload = report.to_dict()
    lines = [f"{report.name}: [{report.start}, {report.end}) convention={report.convention}"]
    lines.append(f"seeds checked: {report.seeds_checked}")
    lines.append(f"all converged: {report.all_converged}")
    if report.max_steps:
        lines.append(f"max steps: {report.max_steps[1]} at {report.max_steps[0]}")
    if report.max_excursion:
        lines.append(f"max excursion: {report.max_excursion[1]} at {report.max_excursion[0]}")
    for k, v in report.details.items():
        lines.append(f"{k}: {v}")
    lines.append(f"identity failures: {len(report.identity_failures)}")
    for name, witness in report.identity_failures:
        lines.append(f"  {name}: {witness}")
    for seed, why in report.nonconverged[:20]:
        lines.append(f"  not converged: {seed} ({why})")
    lines.append(f"duration: {report.duration_ms:.1f} ms")
    _emit(out, args.format, payload, text="\n".join(lines))
    if not report.ok:
        raise DomainFailure(f"{report.name} check reported failures")


def _run(args, out) -> None:
    cmd = args.command
    if cmd == "steps":
        count = _steps_fn(args)(args.n)
        _emit(out, args.format, {"n": args.n, "steps": count, "convention": args.convention}, text=str(count))

    elif cmd == "traj":
        t = trajectory(args.n, args.budget)
        payload = {"n": t.seed, "steps": t.steps, "values": list(t.values), "peak": t.peak, "converged": t.converged}
        _emit(out, args.format, payload, text=" ".join(map(str, (t.seed, *t.values))))
        if not t.converged:
            raise DomainFailure(f"{args.n} did not reach 1 within {args.budget} steps")

    elif cmd == "decompose":
        d = syracuse_decompose(args.n, args.budget)
        rows = [{"i": i, "s": s, "b": b} for i, (s, b) in enumerate(d.pairs, 1)]
        payload = {"n": d.n, "pairs": [list(p) for p in d.pairs], "k": d.k, "steps": d.total_steps}
        text = " ".join(f"({s},{b})" for s, b in d.pairs) + f"\nsteps: {d.total_steps}"
        _emit(out, args.format, payload, rows, text)

    elif cmd == "family":
        spec = fam.family(args.name)
        steps = _steps_fn(args)
        indices = [args.index] if args.index is not None else range(args.count)
        rows = []
        for n in indices:
            term = fam.family_term(spec, n)
            rows.append({"index": n, "term": term, "predicted": fam.predicted_steps(spec, n), "oracle": steps(term)})
        payload = {"family": spec.name, "coefficient": spec.coefficient, "parity": spec.parity,
                   "seed": spec.seed, "terms": rows}
        text = "\n".join(f"{r['index']}\t{r['term']}\t{r['predicted']}\t{r['oracle']}" for r in rows)
        _emit(out, args.format, payload, rows, "index\tterm\tpredicted\toracle\n" + text)

    elif cmd == "parametric":
        pf = fam.PARAMETRIC[args.name]
        steps = _steps_fn(args)
        rows = []
        for n in range(args.count):
            term = fam.parametric_term(pf, args.k, n)
            rows.append({"index": n, "term": term, "steps": steps(term)})
        payload = {"family": pf.name, "k": args.k, "coefficient": pf.coefficient(args.k),
                   "seed": pf.seed_form(args.k), "terms": rows}
        text = "\n".join(f"{r['index']}\t{r['term']}\t{r['steps']}" for r in rows)
        _emit(out, args.format, payload, rows, text)

    elif cmd == "general":
        steps = _steps_fn(args)
        rows = [{"m": m, "term": (t := fam.general_term(args.n, m)), "steps": steps(t)} for m in range(args.count)]
        _emit(out, args.format, {"n": args.n, "terms": rows}, rows,
              "\n".join(f"{r['m']}\t{r['term']}\t{r['steps']}" for r in rows))

    elif cmd == "seedsearch":
        c = fam.seed_search(fam.family(args.name), args.depth, args.exclude)
        payload = {"family": args.name, "beta": c.beta, "next_seed": c.next_seed,
                   "source_term": c.source_term, "exponent": c.exponent}
        _emit(out, args.format, payload,
              text=f"beta={c.beta} = {c.source_term}*2^{c.exponent}, next seed {c.next_seed}")

    elif cmd == "roots":
        rows = []
        for o in args.values:
            r = fam.family_root(o)
            rows.append({"value": r.value, "root": r.root, "index": r.index})
        _emit(out, args.format, {"roots": rows}, rows,
              "\n".join(f"{r['value']}\t{r['root']}\t{r['index']}" for r in rows))

    elif cmd == "memo-build":
        if not args.cache:
            raise InvalidConfig("memo-build needs --cache PATH")
        table = build_memo(args.limit, args.convention, args.budget)
        save_memo(table, args.cache)
        _emit(out, args.format, {"limit": table.limit, "convention": table.convention, "path": args.cache},
              text=f"wrote {table.limit} counts to {args.cache}")

    else:
        cfg = VerifyConfig(start=getattr(args, "start", 1), end=getattr(args, "end", 1),
                           step_budget=args.budget, workers=args.workers,
                           convention=args.convention, cache=_memo(args))
        if cmd == "verify":
            report = verify_range(cfg)
        elif cmd == "identities":
            report = check_step_identities(args.max_k, cfg)
        elif cmd == "partition":
            report = check_partition(args.max_odd)
        else:
            report = decomposition_consistency(args.max_odd, cfg)
        _report(out, args, report)


def main(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "verify" and args.end < args.start:
        parser.print_usage(err)
        err.write("hailstone: error: --end must be >= --start\n")
        return 2
    try:
        _run(args, out)
    except (CollatzError, DomainFailure, FormatError, ConventionMismatch,
            InvalidConfig, fam.SeedNotFound, ValueError, OSError) as exc:
        err.write(f"hailstone: {exc}\n")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
