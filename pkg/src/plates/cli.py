"""``plates`` command-line interface.

Exit codes: 0 success, 1 domain or parse error (and failed verification),
2 usage error, 3 resource or sampling error.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence, TextIO

from . import combinatorics as comb
from .analytic_oracle import GenericityPolicy, Oracle, RationalPoint, parse_side, verify_identity
from .analytic_oracle.laplace import EVALUATORS
from .analytic_oracle.points import Mode
from .errors import DomainError, PlatesError, ResourceError, SamplingError
from .grammar import format_csp, format_osp, format_rational, parse_csp, parse_osp, parse_point, require_full
from .plate_algebra import (
    Basis,
    DirectedTree,
    PlateVector,
    Space,
    change_of_basis,
    convolution_expand,
    straighten,
    straighten_theorem_form,
    tree_expand,
)

SPACES = [s.value for s in Space]


def _json_flag(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="emit JSON")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="plates", description="Exact calculus of permutohedral plates.")
    parser.add_argument("--json", action="store_true", help="emit JSON for every command")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("dims", help="dimension tables for n")
    p.add_argument("n", type=int)
    _json_flag(p)

    p = sub.add_parser("enumerate", help="list plates (or standard composites) of {1..n} in lex order")
    p.add_argument("n", type=int)
    p.add_argument("--standard-composites", action="store_true")
    p.add_argument("--k", type=int, default=None, help="exact number of factors")
    p.add_argument("--force", action="store_true", help="allow n above the enumeration cap")
    _json_flag(p)

    p = sub.add_parser("expand", help="plate expansion of a convolution product")
    p.add_argument("--csp", required=True, help='factors joined by "*", e.g. "1*2|3"')
    p.add_argument("--space", choices=SPACES, default="hatP")
    _json_flag(p)

    p = sub.add_parser("tree-expand", help="plate expansion of a tree cone")
    p.add_argument("--edges", required=True, help='edges "i>j" joined by ","')
    p.add_argument("--space", choices=SPACES, default="hatP")
    _json_flag(p)

    p = sub.add_parser("straighten", help="canonical-basis coordinates of a plate")
    p.add_argument("--osp", required=True)
    p.add_argument("--space", choices=SPACES, required=True)
    p.add_argument("--theorem-form", action="store_true", help="use the pivot expansion instead of back-substitution")
    p.add_argument("--pivot", type=int, default=None, help="1-based index of the pivot block")
    _json_flag(p)

    p = sub.add_parser("matrix", help="change-of-basis matrix in lex order")
    p.add_argument("n", type=int)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--inverse", action="store_true")
    p.add_argument("--force", action="store_true", help="allow n above the enumeration cap")
    _json_flag(p)

    p = sub.add_parser("eval", help="functional representation of a label at a point")
    p.add_argument("--rep", choices=["P", "hatP1", "P1"], required=True)
    p.add_argument("--label", required=True, help='plate "2|1|3" or composite "1*2|3"')
    p.add_argument("--point", required=True, help='comma-separated rationals, e.g. "2,1/2"')
    _json_flag(p)

    p = sub.add_parser("verify", help="test an identity at random rational points")
    p.add_argument("--lhs", required=True)
    p.add_argument("--rhs", required=True)
    p.add_argument("--oracle", choices=[o.value for o in Oracle], default="indicator")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n", type=int, default=None, help="ground set size (default: largest label)")
    p.add_argument("--lattice-fraction", type=float, default=0.0,
                   help="share of indicator trials at small integer (non-generic) points")
    _json_flag(p)
    return parser


# ---------------------------------------------------------------------------
# commands


def _emit_vector(v: PlateVector, as_json: bool, out: TextIO) -> None:
    if as_json:
        print(v.to_json(), file=out)
    else:
        for line in v.lines():
            print(line, file=out)


def cmd_dims(args, out) -> int:
    table = comb.dims(args.n)
    if args.json:
        print(json.dumps(table.as_dict()), file=out)
        return 0
    row = lambda xs: " ".join(map(str, xs))
    print(f"n\t{table.n}", file=out)
    print(f"ordered_bell\t{table.ordered_bell}", file=out)
    print(f"composite_row\t{row(table.composite_row)}", file=out)
    print(f"stirling1_row\t{row(table.stirling1_row)}", file=out)
    print(f"stirling2_row\t{row(table.stirling2_row)}", file=out)
    print(f"cyclic_bell\t{table.cyclic_bell}", file=out)
    print(f"hatP1_total\t{table.hatP1_total}", file=out)
    print(f"P1_dim\t{table.P1_dim}", file=out)
    return 0


def cmd_enumerate(args, out) -> int:
    if args.standard_composites:
        labels = [format_csp(c) for c in comb.enumerate_standard_csps(args.n, args.k, force=args.force)]
    else:
        if args.k is not None:
            raise DomainError("--k applies only with --standard-composites")
        labels = [format_osp(o) for o in comb.enumerate_osps(args.n, force=args.force)]
    if args.json:
        print(json.dumps({"n": args.n, "count": len(labels), "labels": labels}), file=out)
    else:
        for label in labels:
            print(label, file=out)
    return 0


def cmd_expand(args, out) -> int:
    csp = parse_csp(args.csp)
    n = len(csp.ground)
    if not csp.is_full(n):
        csp = csp.with_singletons(max(csp.ground))
    v = convolution_expand(csp)
    if args.space in ("hatP1", "P1"):
        v = PlateVector(v.n, Basis.plate, {k: c for k, c in v.terms.items() if k.is_permutation})
    _emit_vector(v, args.json, out)
    return 0


def cmd_tree_expand(args, out) -> int:
    _emit_vector(tree_expand(DirectedTree.parse(args.edges), args.space), args.json, out)
    return 0


def cmd_straighten(args, out) -> int:
    osp = parse_osp(args.osp)
    n = require_full(osp, args.osp)
    if args.theorem_form:
        v = straighten_theorem_form(osp, args.pivot).restrict(args.space)
    else:
        if args.pivot is not None:
            raise DomainError("--pivot requires --theorem-form")
        v = straighten(PlateVector(n, Basis.plate, {osp: 1}), args.space)
    _emit_vector(v, args.json, out)
    return 0


def cmd_matrix(args, out) -> int:
    cb = change_of_basis(args.n, force=args.force)
    rows = cb.inverse_dense() if args.inverse else cb.dense()
    if args.json or args.format == "json":
        payload = {
            "n": args.n,
            "inverse": args.inverse,
            "labels": [format_osp(o) for o in cb.labels],
            "matrix": [[format_rational(x) if args.inverse else int(x) for x in r] for r in rows],
        }
        print(json.dumps(payload), file=out)
    else:
        for r in rows:
            print(",".join(format_rational(x) for x in r), file=out)
    return 0


def cmd_eval(args, out) -> int:
    rep = Oracle(args.rep)
    label = parse_csp(args.label) if "*" in args.label else parse_osp(args.label)
    coords = parse_point(args.point)
    mode = Mode.multiplicative if rep is Oracle.P else Mode.free
    point = RationalPoint(coords, mode)
    if "*" in args.label:
        label = label.with_singletons(len(coords))
    value = EVALUATORS[rep](label, point)
    if args.json:
        print(json.dumps({"rep": rep.value, "label": args.label, "point": str(point), "value": format_rational(value)}), file=out)
    else:
        print(format_rational(value), file=out)
    return 0


def cmd_verify(args, out) -> int:
    lhs = parse_side(args.lhs)
    rhs = parse_side(args.rhs)
    policy = GenericityPolicy(seed=args.seed, lattice_fraction=args.lattice_fraction)
    report = verify_identity(lhs, rhs, args.oracle, policy, trials=args.trials, n=args.n)
    print(report.to_json() if args.json else str(report), file=out)
    return 0 if report.ok else 1


COMMANDS = {
    "dims": cmd_dims,
    "enumerate": cmd_enumerate,
    "expand": cmd_expand,
    "tree-expand": cmd_tree_expand,
    "straighten": cmd_straighten,
    "matrix": cmd_matrix,
    "eval": cmd_eval,
    "verify": cmd_verify,
}


def main(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, out)
    except (ResourceError, SamplingError) as exc:
        print(f"plates: {exc}", file=err)
        return 3
    except PlatesError as exc:
        print(f"plates: {exc}", file=err)
        return 1


if __name__ == "__main__":
    sys.exit(main())
