"""Command-line front end: classify, coeffs, eval, verify.

Exit codes: 0 success, 1 a verification suite failed (the report is still
printed), 2 malformed flags or input.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .ambient import apply_bidifferential_ambient
from .coeffs import (
    ClassificationError,
    PropagationError,
    WeightConfig,
    basis_tables,
    classify,
    tables_to_csv,
    tables_to_json,
)
from .rational import parse_rational
from .sphere import SphereFunction, evaluate_or_operator
from . import verify as V

DEGREE_WARNING = 16
RATIONAL_FLAGS = ("--w1", "--w2", "--ell", "--constant")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _rational(text):
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="or-lab", description="Exact Ovsienko-Redou operator toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    def weights(p, need_w=True):
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--k", type=int, required=True)
        p.add_argument("--w1", type=_rational, required=need_w)
        p.add_argument("--w2", type=_rational, required=need_w)

    p = sub.add_parser("classify", help="dimension and case of the operator space")
    weights(p)

    p = sub.add_parser("coeffs", help="basis coefficient tables")
    weights(p)
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("eval", help="apply a basis operator to two sphere functions")
    weights(p)
    p.add_argument("u", type=Path, help="SphereFunction JSON file")
    p.add_argument("v", type=Path, help="SphereFunction JSON file")
    p.add_argument("--basis", type=int, default=1)
    p.add_argument("--path", choices=("sphere", "ambient"), default="sphere")

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", choices=V.SUITES, required=True)
    weights(p, need_w=False)
    p.add_argument("--ell", type=_rational)
    p.add_argument("--degree", type=int, default=2)
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--constant", type=_rational, help="override the commutator constant")
    p.add_argument("--path", choices=("sphere", "ambient"), default="sphere")
    p.add_argument("--explore", action="store_true", help="allow k >= 4 self-adjointness runs")
    return parser


def _glue_negative_rationals(argv):
    """Rewrite ``--w1 -1/2`` as ``--w1=-1/2`` so argparse keeps the value."""
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in RATIONAL_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def _config(args) -> WeightConfig:
    return WeightConfig(args.n, args.k, args.w1, args.w2)


def _need(args, *names):
    missing = [f"--{name}" for name in names if getattr(args, name) is None]
    if missing:
        raise UsageError(f"suite {args.suite} needs {', '.join(missing)}")


def _read_sphere_function(path: Path, n: int) -> SphereFunction:
    try:
        u = SphereFunction.from_json(path.read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"malformed sphere function in {path}: {exc}") from None
    if u.n != n:
        raise UsageError(f"{path} has n={u.n}, expected {n}")
    return u


def cmd_classify(args, out) -> int:
    config = _config(args)
    doc = dict(config.to_dict())
    doc.update(classify(config).to_dict())
    out.write(json.dumps(doc, indent=2) + "\n")
    return 0


def cmd_coeffs(args, out) -> int:
    config = _config(args)
    tables = basis_tables(config)
    if args.format == "csv":
        out.write(tables_to_csv(tables))
    else:
        out.write(tables_to_json(config, tables) + "\n")
    return 0


def cmd_eval(args, out, err) -> int:
    config = _config(args)
    u = _read_sphere_function(args.u, config.n)
    v = _read_sphere_function(args.v, config.n)
    if u.max_degree + v.max_degree > DEGREE_WARNING:
        err.write(f"warning: combined input degree exceeds {DEGREE_WARNING}; this may be slow\n")
    tables = basis_tables(config)
    if not 1 <= args.basis <= len(tables):
        raise UsageError(f"--basis must be between 1 and {len(tables)}")
    table = tables[args.basis - 1]
    apply = evaluate_or_operator if args.path == "sphere" else apply_bidifferential_ambient
    out.write(apply(table, u, v).to_json() + "\n")
    return 0


def cmd_verify(args, out, err) -> int:
    suite = args.suite
    if args.degree < 0 or args.trials < 0:
        raise UsageError("--degree and --trials must be non-negative")
    if 2 * args.degree > DEGREE_WARNING:
        err.write(f"warning: combined input degree exceeds {DEGREE_WARNING}; this may be slow\n")
    if suite in ("tangentiality", "cross", "fsa"):
        _need(args, "w1", "w2")
        config = _config(args)
        if suite == "tangentiality":
            report = V.verify_tangentiality(config, args.degree)
        elif suite == "cross":
            report = V.verify_cross_agreement(config, args.degree)
        else:
            report = V.verify_formal_self_adjointness(
                config, args.trials, args.degree, args.seed, explore=args.explore
            )
    elif suite == "commutator":
        report = V.verify_commutator_identity(
            args.n, args.k, args.degree, constant=args.constant, path=args.path
        )
    elif suite == "linear-fsa":
        _need(args, "ell")
        report = V.verify_linear_fsa(args.n, args.k, args.ell, args.trials, args.degree, args.seed)
    else:
        report = V.verify_gjms_reduction(args.n, args.k, args.degree)
    out.write(report.to_json() + "\n")
    return 0 if report.all_passed else 1


def main(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = build_parser().parse_args(_glue_negative_rationals(argv))
        if args.command == "classify":
            return cmd_classify(args, out)
        if args.command == "coeffs":
            return cmd_coeffs(args, out)
        if args.command == "eval":
            return cmd_eval(args, out, err)
        return cmd_verify(args, out, err)
    except (UsageError, ClassificationError, PropagationError, ValueError) as exc:
        err.write(f"or-lab: error: {' '.join(str(exc).split())}\n")
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
