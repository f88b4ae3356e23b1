"""Command-line interface.

Exit codes: 0 success (``axioms``: all five pass), 1 ``axioms`` verdict
failed, 2 bad input or usage, 3 zero-mass weights or a bound exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from contextlib import contextmanager
from fractions import Fraction

from . import axioms as ax
from .additive import DEFAULT_BOUND, erdos_diagnostic, parse_additive, values
from .core import as_weights, extend, hat_entropy, u
from .exceptions import BoundError, DomainError
from .mercer import delta_mercer_scan
from .potential import PotentialRecovery
from .rationals import format_rational, parse_rational
from .tree import flatten, loads_tree, node_entropies, node_mass, tree_entropy

SEED_ENV = "COCYCLE_ENTROPY_SEED"
TREE_TOL = 1e-9
SEED_MAX = 2**64 - 1


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def fmt(x) -> str:
    """12 significant digits, '.' decimal point; integers print without one."""
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        return format_rational(x)
    s = f"{float(x):.12g}"
    return "0" if s == "-0" else s


def tsv(rows) -> str:
    return "".join("\t".join(fmt(v) if not isinstance(v, str) else v for v in r) + "\n" for r in rows)


def _seed(text: str) -> int:
    try:
        s = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an unsigned 64-bit integer, got {text!r}")
    if not 0 <= s <= SEED_MAX:
        raise argparse.ArgumentTypeError(f"seed out of range: {s}")
    return s


def _tol(text: str) -> tuple[str, float]:
    name, sep, val = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected NAME=VALUE, got {text!r}")
    try:
        v = float(val)
    except ValueError:
        raise argparse.ArgumentTypeError(f"tolerance must be a number, got {val!r}")
    if not v > 0:
        raise argparse.ArgumentTypeError(f"tolerance must be positive, got {v}")
    return name.strip(), v


def _global_options(parser: argparse.ArgumentParser, suppress: bool) -> None:
    default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--seed", type=_seed, default=default(None),
                        help=f"RNG seed (default ${SEED_ENV} or {ax.DEFAULT_SEED})")
    parser.add_argument("--tol", type=_tol, action="append", default=default([]), metavar="NAME=VAL",
                        help="override a named tolerance; repeatable")
    parser.add_argument("--format", choices=("json", "tsv"), default=default(None))
    parser.add_argument("--out", default=default(None), help="write output here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cocycle-entropy",
        description="Shannon entropy as the homogeneous solution of the 2-cocycle equation.",
    )
    _global_options(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("entropy", help="homogeneous entropy of a weight vector, in bits")
    p.add_argument("weights", nargs="+", help="rationals p/q or integers")

    p = sub.add_parser("tree", help="stage-by-stage entropy of a partition tree JSON file")
    p.add_argument("file")

    p = sub.add_parser("axioms", help="test a candidate against the five conditions")
    p.add_argument("candidate", choices=("shannon", "renyi", "tsallis", "scaled-shannon"))
    p.add_argument("--alpha", type=float, default=2.0, help="Renyi order")
    p.add_argument("--q", type=float, default=2.0, help="Tsallis index")
    p.add_argument("--factor", type=float, default=2.0, help="scaled-shannon factor")
    p.add_argument("--samples", type=int, default=500)

    p = sub.add_parser("potential", help="recover the potential g on p/q grid")
    p.add_argument("candidate", choices=("shannon", "renyi", "tsallis", "scaled-shannon"))
    p.add_argument("--qmax", type=int, default=5)
    p.add_argument("--alpha", type=float, default=2.0)
    p.add_argument("--q", type=float, default=2.0)
    p.add_argument("--factor", type=float, default=2.0)

    p = sub.add_parser("additive", help="scan a completely additive function")
    p.add_argument("spec", help="log2, zero, nu2, or a JSON prime map like '{\"2\": 1}'")
    p.add_argument("N", type=int)

    p = sub.add_parser("mercer", help="Mercer transform of l(n+1) - l(n)")
    p.add_argument("spec")
    p.add_argument("N", type=int)

    for name, sp in sub.choices.items():
        _global_options(sp, suppress=True)
    return parser


def resolve_seed(arg_seed, environ=os.environ) -> int:
    if arg_seed is not None:
        return arg_seed
    env = environ.get(SEED_ENV)
    if env:
        try:
            return _seed(env)
        except argparse.ArgumentTypeError as exc:
            raise CliError(f"{SEED_ENV}: {exc}", 2)
    return ax.DEFAULT_SEED


def _candidate(args) -> ax.Candidate:
    if args.candidate == "shannon":
        return ax.shannon()
    if args.candidate == "renyi":
        if args.alpha <= 0 or args.alpha == 1:
            raise CliError(f"renyi needs alpha > 0, alpha != 1; got {args.alpha}", 2)
        return ax.renyi(args.alpha)
    if args.candidate == "tsallis":
        if args.q == 1:
            raise CliError("tsallis needs q != 1", 2)
        return ax.tsallis(args.q)
    return ax.scaled_shannon(args.factor)


def _parse_weights(texts) -> tuple:
    try:
        ws = [parse_rational(t) for t in texts]
    except ValueError as exc:
        raise CliError(str(exc), 2)
    if any(w < 0 for w in ws):
        raise CliError("weights must be nonnegative", 2)
    if sum(ws) == 0:
        raise CliError("weights sum to zero; entropy needs a positive total", 3)
    return as_weights(ws)


def _bound_check(N: int, extra: int = 0) -> None:
    if N < 1:
        raise CliError(f"N must be positive, got {N}", 2)
    if N + extra > DEFAULT_BOUND:
        raise CliError(f"N = {N} exceeds the factorization bound {DEFAULT_BOUND}", 3)


def cmd_entropy(args, fmt_name: str) -> tuple[str, int]:
    w = _parse_weights(args.weights)
    value = hat_entropy(w)
    if fmt_name == "json":
        return json.dumps({"weights": [format_rational(x) for x in w], "entropy_bits": value}) + "\n", 0
    return fmt(value) + "\n", 0


def cmd_tree(args, fmt_name: str, tols: dict) -> tuple[str, int]:
    try:
        with open(args.file, encoding="utf-8") as fh:
            t = loads_tree(fh.read())
    except (OSError, ValueError, TypeError, DomainError) as exc:
        raise CliError(f"{args.file}: {exc}", 2)
    if node_mass(t) == 0:
        raise CliError("tree has zero total mass", 3)
    stages = node_entropies(t)
    total = tree_entropy(t)
    flat = hat_entropy(flatten(t))
    residual = total - flat
    tol = tols.get("tree", TREE_TOL)
    if fmt_name == "json":
        doc = {
            "nodes": [{"path": list(p), "masses": [format_rational(m) for m in ms], "entropy": v}
                      for p, ms, v in stages],
            "tree_entropy": total,
            "flat_entropy": flat,
            "residual": residual,
            "within_tolerance": abs(residual) <= tol,
        }
        return json.dumps(doc, indent=2) + "\n", 0
    rows = [("path", "masses", "entropy")]
    rows += [("/" + "/".join(map(str, p)), ",".join(format_rational(m) for m in ms), v) for p, ms, v in stages]
    rows += [("tree_entropy", "", total), ("flat_entropy", "", flat), ("residual", "", residual)]
    return tsv(rows), 0


def cmd_axioms(args, fmt_name: str, seed: int, tols: dict) -> tuple[str, int]:
    tolerances = dict(ax.DEFAULT_TOLERANCES)
    for k, v in tols.items():
        if k in tolerances:
            tolerances[k] = v
    if args.samples < 1:
        raise CliError("--samples must be positive", 2)
    cfg = ax.SuiteConfig(seed=seed, samples=args.samples, tolerances=tolerances)
    report = ax.run_suite(_candidate(args), cfg)
    code = 0 if report.all_pass else 1
    if fmt_name == "tsv":
        rows = [("axiom", "pass", "max_residual", "tolerance")]
        rows += [(r.name, "true" if r.passed else "false",
                  fmt(r.max_residual) if r.max_residual != float("inf") else "inf", r.tolerance)
                 for r in report.axioms]
        rows.append(("conclusion_distance", "", report.conclusion_distance, ""))
        return tsv(rows), code
    return report.to_json() + "\n", code


def potential_rows(hat, qmax: int):
    rec = PotentialRecovery(hat)
    seen = set()
    rows = []
    for d in range(1, qmax + 1):
        for n in range(1, qmax + 1):
            q = Fraction(n, d)
            if q in seen:
                continue
            seen.add(q)
            g = rec(q)
            rows.append((q, g, u(q), g - u(q)))
    return rows


def cmd_potential(args, fmt_name: str) -> tuple[str, int]:
    if args.qmax < 1:
        raise CliError("--qmax must be >= 1", 2)
    hat = extend(_candidate(args).h)
    rows = potential_rows(hat, args.qmax)
    if fmt_name == "json":
        doc = [{"q": format_rational(q), "g": g, "u": uq, "difference": diff} for q, g, uq, diff in rows]
        return json.dumps(doc, indent=2) + "\n", 0
    return tsv([("q", "g", "u", "difference")] + rows), 0


def _diagnostic_block(record: dict) -> str:
    return "".join(f"# {k}\t{fmt(v) if not isinstance(v, str) else v}\n" for k, v in record.items())


def cmd_additive(args, fmt_name: str) -> tuple[str, int]:
    try:
        l = parse_additive(args.spec)
    except ValueError as exc:
        raise CliError(str(exc), 2)
    if args.N < 16:
        raise CliError("additive scan needs N >= 16", 2)
    _bound_check(args.N)
    v = values(l, args.N)
    rows = [(n, v[n], v[n + 1] - v[n] if n < args.N else float("nan")) for n in range(1, args.N + 1)]
    diag = erdos_diagnostic(l, args.N).to_dict()
    diag = {"function": l.name, **diag}
    if fmt_name == "json":
        doc = {"rows": [{"n": n, "l": ln, "delta": d if n < args.N else None} for n, ln, d in rows],
               "diagnostic": diag}
        return json.dumps(doc) + "\n", 0
    rows = [r if r[0] < args.N else (r[0], r[1], "") for r in rows]
    return tsv([("n", "l", "delta")] + rows) + _diagnostic_block(diag), 0


def cmd_mercer(args, fmt_name: str) -> tuple[str, int]:
    try:
        l = parse_additive(args.spec)
    except ValueError as exc:
        raise CliError(str(exc), 2)
    if args.N < 20:
        raise CliError("mercer scan needs N >= 20", 2)
    _bound_check(args.N, extra=1)
    scan = delta_mercer_scan(l, args.N)
    probe = {"function": l.name, **scan.probe.to_dict()}
    if fmt_name == "json":
        doc = {"rows": [{"n": n, "a": a, "s_over_n": s, "transformed": t} for n, a, s, t in scan.rows],
               "probe": probe}
        return json.dumps(doc) + "\n", 0
    return tsv([("n", "a", "s_over_n", "transformed")] + scan.rows) + _diagnostic_block(probe), 0


DEFAULT_FORMATS = {"axioms": "json"}


@contextmanager
def _sink(path):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            yield fh


def run(argv=None, environ=os.environ) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    fmt_name = args.format or DEFAULT_FORMATS.get(args.command, "tsv")
    tols = dict(args.tol)
    try:
        seed = resolve_seed(args.seed, environ)
        if args.command == "entropy":
            text, code = cmd_entropy(args, fmt_name)
        elif args.command == "tree":
            text, code = cmd_tree(args, fmt_name, tols)
        elif args.command == "axioms":
            text, code = cmd_axioms(args, fmt_name, seed, tols)
        elif args.command == "potential":
            text, code = cmd_potential(args, fmt_name)
        elif args.command == "additive":
            text, code = cmd_additive(args, fmt_name)
        else:
            text, code = cmd_mercer(args, fmt_name)
    except CliError as exc:
        print(f"cocycle-entropy: error: {exc}", file=sys.stderr)
        return exc.code
    except BoundError as exc:
        print(f"cocycle-entropy: error: {exc}", file=sys.stderr)
        return 3
    try:
        with _sink(args.out) as out:
            out.write(text)
    except OSError as exc:
        print(f"cocycle-entropy: error: {exc}", file=sys.stderr)
        return 2
    return code


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
