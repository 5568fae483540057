"""Command line interface: ``fatlines {dim,scan,cremona,triple,waldschmidt,verify,cache-audit}``.

Exit codes: 0 success, 1 internal failure, 2 usage error, 3 ``dim`` found a
special system.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from . import __version__
from .cache import ResultCache
from .divisors import (
    apply_map,
    cubo_cubic,
    drop_auxiliary,
    model_by_name,
    parse_class,
    todd,
    triple_product,
)
from .field import DEFAULT_PRIME, PrimeModulus
from .interpolation import (
    DEFAULT_BUDGET_COLS,
    DEFAULT_SEEDS,
    BudgetExceeded,
    FatFlatSystem,
    analyze,
    parse_mults,
)
from .verify import resolve, run_checks
from .waldschmidt import bound_report

SCHEMA_VERSION = 1
EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_SPECIAL = 0, 1, 2, 3
ENV_PRIME = "FATLINES_PRIME"
ENV_SEEDS = "FATLINES_SEEDS"
SCAN_COLUMNS = ["degree", "mults", "virtual", "expected", "actual_min", "actual_max", "special", "seeds", "prime"]


class UsageError(Exception):
    pass


def _parse_seeds(text: str) -> list[int]:
    try:
        seeds = [int(s) for s in text.replace(" ", "").split(",") if s]
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed seed list {text!r}") from None
    if not seeds:
        raise argparse.ArgumentTypeError("at least one seed is required")
    return seeds


def _parse_prime(text: str) -> int:
    try:
        return PrimeModulus(int(text)).p
    except (TypeError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _global_options(parser: argparse.ArgumentParser, suppress: bool) -> None:
    def default(value):
        return argparse.SUPPRESS if suppress else value

    parser.add_argument("--prime", type=_parse_prime, default=default(None), help="field characteristic (default 32003)")
    parser.add_argument("--seeds", type=_parse_seeds, default=default(None), help="comma-separated seeds (default 1,2,3)")
    parser.add_argument("--format", choices=["text", "json", "csv"], default=default("text"))
    parser.add_argument("--cache-dir", default=default(None), help="cache per-seed dimensions here")
    parser.add_argument("--budget-cols", type=int, default=default(DEFAULT_BUDGET_COLS),
                        help="largest number of monomials a conditions matrix may have")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fatlines", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _global_options(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, **kw):
        p = sub.add_parser(name, **kw)
        _global_options(p, suppress=True)
        return p

    p = add("dim", help="virtual, expected and actual dimension of L_d(m_1,...,m_s)")
    p.add_argument("--degree", "-d", type=int, required=True)
    p.add_argument("--mults", "-m", required=True, help='e.g. "3,3,2" or "3^6,2"')

    p = add("scan", help="analyze a range of degrees for one multiplicity pattern")
    p.add_argument("--max-degree", type=int, required=True)
    p.add_argument("--min-degree", type=int, default=None)
    p.add_argument("--mults", default=None, help='explicit pattern such as "3^6,2"')
    p.add_argument("--lines", "-s", type=int, default=None)
    p.add_argument("--mult", type=int, default=None)

    p = add("cremona", help="apply the cubo-cubic or Todd lattice map to a class")
    p.add_argument("--map", choices=["cubo", "todd"], required=True)
    p.add_argument("--class", dest="cls", required=True,
                   help='"d;m1,...,mn[;t1,t2]" for dH - sum m_i E_i - sum t_j T_j; "-" reads stdin')
    p.add_argument("--drop-auxiliary", action="store_true", help="also print the class with T terms removed")

    p = add("triple", help="triple intersection product of three classes")
    p.add_argument("--model", required=True, help="cubo, todd or linesN")
    p.add_argument("classes", nargs=3, metavar="CLASS")

    p = add("waldschmidt", help="initial degree samples and Waldschmidt constant bounds")
    p.add_argument("--lines", "-s", type=int, required=True)
    p.add_argument("--m-max", type=int, default=3)

    p = add("verify", help="run named checks (shell patterns allowed)")
    p.add_argument("checks", nargs="*", metavar="CHECK")
    p.add_argument("--list", action="store_true", help="list check names and exit")

    p = add("cache-audit", help="recompute random cache entries and compare")
    p.add_argument("-n", type=int, default=10)
    return parser


def _config(args) -> argparse.Namespace:
    prime = args.prime
    if prime is None:
        env = os.environ.get(ENV_PRIME)
        try:
            prime = _parse_prime(env) if env else DEFAULT_PRIME
        except argparse.ArgumentTypeError as exc:
            raise UsageError(f"{ENV_PRIME}: {exc}") from None
    seeds = args.seeds
    if seeds is None:
        env = os.environ.get(ENV_SEEDS)
        try:
            seeds = _parse_seeds(env) if env else list(DEFAULT_SEEDS)
        except argparse.ArgumentTypeError as exc:
            raise UsageError(f"{ENV_SEEDS}: {exc}") from None
    args.prime, args.seeds = prime, seeds
    args.cache = ResultCache(args.cache_dir) if args.cache_dir else None
    return args


def envelope(command: str, args, result) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "tool_version": __version__,
        "command": command,
        "prime": args.prime,
        "seeds": list(args.seeds),
        "result": result,
    }


def render_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, default=_json_default)


def _json_default(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _csv(rows: list[dict], columns: list[str]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


def _scan_row(rep) -> dict:
    return {
        "degree": rep.system.degree,
        "mults": rep.system.mults_label(),
        "virtual": rep.virtual,
        "expected": rep.expected,
        "actual_min": min(rep.actual_per_seed),
        "actual_max": max(rep.actual_per_seed),
        "special": rep.special,
        "seeds": " ".join(str(s) for s in rep.seeds),
        "prime": rep.prime,
    }


def _system(degree: int, mults_text: str) -> FatFlatSystem:
    try:
        return FatFlatSystem(degree, parse_mults(mults_text))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_dim(args, out) -> int:
    system = _system(args.degree, args.mults)
    rep = analyze(system, args.prime, args.seeds, args.budget_cols, args.cache)
    if args.format == "json":
        out.write(render_json(envelope("dim", args, rep.to_dict())) + "\n")
    elif args.format == "csv":
        out.write(_csv([_scan_row(rep)], SCAN_COLUMNS))
    else:
        out.write(
            f"{rep.system}\n"
            f"  virtual dimension  {rep.virtual}\n"
            f"  expected dimension {rep.expected}\n"
            f"  actual per seed    {', '.join(f'{s}: {a}' for s, a in zip(rep.seeds, rep.actual_per_seed))}\n"
            f"  actual (consensus) {rep.consensus_actual}\n"
            f"  verdict            {'SPECIAL' if rep.special else 'non-special'}\n"
            f"  prime {rep.prime}; {rep.caveat}\n"
        )
    return EXIT_SPECIAL if rep.special else EXIT_OK


def cmd_scan(args, out) -> int:
    if args.mults is not None:
        pattern = parse_mults(args.mults)
    elif args.lines is not None and args.mult is not None:
        pattern = (args.mult,) * args.lines
    else:
        raise UsageError("scan needs --mults or both --lines and --mult")
    if not pattern or min(pattern) < 1:
        raise UsageError("multiplicities must be positive")
    lo = max(pattern) if args.min_degree is None else max(args.min_degree, max(pattern))
    reports, notes = [], []
    for d in range(lo, args.max_degree + 1):
        try:
            reports.append(analyze(FatFlatSystem(d, pattern), args.prime, args.seeds, args.budget_cols, args.cache))
        except BudgetExceeded as exc:
            notes.append(str(exc))
    specials = [r for r in reports if r.special]
    summary = [str(r.system) for r in specials] + [str(r.system) for r in reports if not r.special]
    if args.format == "json":
        result = {
            "reports": [r.to_dict() for r in reports],
            "summary": {"special": [str(r.system) for r in specials], "order": summary},
            "notes": notes,
        }
        out.write(render_json(envelope("scan", args, result)) + "\n")
    elif args.format == "csv":
        out.write(_csv([_scan_row(r) for r in reports], SCAN_COLUMNS))
        for note in notes:
            print(f"note: {note}", file=sys.stderr)
    else:
        for r in specials + [r for r in reports if not r.special]:
            flag = "SPECIAL" if r.special else "       "
            out.write(f"{flag} {str(r.system):<22} virtual {r.virtual:>6}  expected {r.expected:>5}  actual {r.consensus_actual:>5}\n")
        for note in notes:
            out.write(f"note: {note}\n")
    return EXIT_OK


def _read_class_arg(text: str) -> str:
    if text == "-":
        line = sys.stdin.readline()
        return line.strip()
    return text


def cmd_cremona(args, out) -> int:
    model = cubo_cubic() if args.map == "cubo" else todd()
    try:
        cls = parse_class(_read_class_arg(args.cls), model)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    image = apply_map(args.map, cls)
    proj = drop_auxiliary(image) if args.drop_auxiliary else None
    if args.format == "json":
        result = {"map": args.map, "input": cls.to_system_string(), "image": image.to_system_string(), "image_pretty": str(image)}
        if proj is not None:
            result["projection"] = proj.cls.to_system_string()
            result["warning"] = proj.warning
        out.write(render_json(envelope("cremona", args, result)) + "\n")
    elif args.format == "csv":
        rows = [{"map": args.map, "input": cls.to_system_string(), "image": image.to_system_string()}]
        out.write(_csv(rows, ["map", "input", "image"]))
    else:
        # first line is a class string that can be fed back in
        out.write(image.to_system_string() + "\n")
        out.write(f"# {image}\n")
        if proj is not None:
            out.write(f"# without transversals: {proj.cls}\n")
            if proj.warning:
                out.write(f"# warning: {proj.warning}\n")
    return EXIT_OK


def cmd_triple(args, out) -> int:
    try:
        model = model_by_name(args.model)
        classes = [parse_class(c, model) for c in args.classes]
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    value = triple_product(*classes)
    if args.format == "json":
        result = {"model": model.name, "classes": [c.to_system_string() for c in classes], "value": value}
        out.write(render_json(envelope("triple", args, result)) + "\n")
    elif args.format == "csv":
        out.write(_csv([{"model": model.name, "value": value}], ["model", "value"]))
    else:
        out.write(f"{value}\n")
    return EXIT_OK


def cmd_waldschmidt(args, out) -> int:
    if args.lines < 1:
        raise UsageError("--lines must be at least 1")
    rep = bound_report(args.lines, args.m_max, args.prime, args.seeds, args.budget_cols)
    if args.format == "json":
        out.write(render_json(envelope("waldschmidt", args, rep.to_dict())) + "\n")
    elif args.format == "csv":
        rows = [{"m": m, "alpha": a, "ratio": str(r)} for m, a, r in rep.samples]
        out.write(_csv(rows, ["m", "alpha", "ratio"]))
    else:
        out.write(f"s = {rep.s} general lines\n")
        for m, a, r in rep.samples:
            out.write(f"  alpha(I^({m})) = {a}   ratio {r} = {float(r):.6f}\n")
        if rep.exact is not None:
            out.write(f"  exact       {rep.exact}\n")
        if rep.conjectured is not None:
            c = rep.conjectured
            out.write(f"  conjectured {c if isinstance(c, Fraction) else f'{c:.12f}'}\n")
        if rep.upper_bound is not None:
            out.write(f"  upper bound {rep.upper_bound}: {rep.upper_bound_source}\n")
        if rep.lower_bound is not None:
            out.write(f"  lower bound {rep.lower_bound}: {rep.lower_bound_source}\n")
        for note in rep.notes:
            out.write(f"  note: {note}\n")
        for caveat in rep.caveats:
            out.write(f"  caveat: {caveat}\n")
    return EXIT_OK


def cmd_verify(args, out) -> int:
    if args.list:
        out.write("\n".join(resolve(["*"])) + "\n")
        return EXIT_OK
    try:
        resolve(args.checks)
    except KeyError as exc:
        raise UsageError(f"unknown check {exc.args[0]!r}") from None
    results = run_checks(args.checks, args.prime, args.seeds)
    ok = all(r.passed for r in results)
    if args.format == "json":
        result = {
            "passed": ok,
            "total": len(results),
            "failed": [r.name for r in results if not r.passed],
            "checks": [r.to_dict() for r in results],
        }
        out.write(render_json(envelope("verify", args, result)) + "\n")
    elif args.format == "csv":
        rows = [{"name": r.name, "passed": r.passed, "runtime": f"{r.runtime:.3f}"} for r in results]
        out.write(_csv(rows, ["name", "passed", "runtime"]))
    else:
        for r in results:
            out.write(f"{'PASS' if r.passed else 'FAIL'}  {r.name:<24} {r.runtime:7.2f}s  {r.claim}\n")
        out.write(f"{sum(r.passed for r in results)}/{len(results)} checks passed\n")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_cache_audit(args, out) -> int:
    if args.cache is None:
        raise UsageError("cache-audit needs --cache-dir")
    results = args.cache.audit(args.n)
    ok = all(r["match"] for r in results)
    if args.format == "json":
        out.write(render_json(envelope("cache-audit", args, {"entries": results, "passed": ok})) + "\n")
    else:
        out.write(f"audited {len(results)} entries: {'all match' if ok else 'MISMATCH'}\n")
    return EXIT_OK if ok else EXIT_FAIL


COMMANDS = {
    "dim": cmd_dim,
    "scan": cmd_scan,
    "cremona": cmd_cremona,
    "triple": cmd_triple,
    "waldschmidt": cmd_waldschmidt,
    "verify": cmd_verify,
    "cache-audit": cmd_cache_audit,
}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args = _config(args)
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"fatlines {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"fatlines {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # noqa: BLE001
        print(f"fatlines {args.command}: internal error: {exc!r}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
