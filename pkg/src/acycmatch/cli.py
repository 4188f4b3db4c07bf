"""Command-line entry point: ``acycmatch <area> <command> [options]``."""

from __future__ import annotations

import argparse
import json
import sys

from .errors import AcycMatchError, ArgumentError, PreconditionError
from .ffield import FieldSpec
from .groups import GroupSpec, Subset
from .harness import FORMATS, RunConfig, emit_report, exit_code, reproduce_table, run_search
from .linear import (OrderedBasis, construct_matched_basis, dimension_criterion, is_subspace_matched,
                     linear_acyclic_tiny, matched_sufficient, primitive_dimension_search, strong_matching_exists,
                     stabiliser_bound_check, weak_local_match)
from .matching import (MatchingFn, acyclic_matchings, has_matching, hall_bound, multiplicity_function,
                       polyadic_matching_check)
from .poly import build_group_matrix, determinant
from .props import SUITES, run_suite
from .subspace import Subspace, subfield_fixed


class _Parser(argparse.ArgumentParser):
    # usage errors exit with 1; 2 is reserved for "counterexample found"
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    if not sep:
        lo, sep, hi = text.partition("-")
    try:
        return int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"range must look like 2..12, got {text!r}")


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=FORMATS, default=None)
    p.add_argument("--config", help="key=value file; command-line flags override it")


def _search_args(p: argparse.ArgumentParser) -> None:
    _common(p)
    p.add_argument("--modulus", type=int)
    p.add_argument("--range", type=_range)
    p.add_argument("--max-size", type=int)
    p.add_argument("--threads", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--compare-bijections", action="store_true", default=None)
    p.add_argument("--symmetry-pruning", action="store_true", default=None)
    p.add_argument("--verify-table", action="store_true", default=None,
                   help="check the reference pair for --modulus instead of searching")
    p.add_argument("--no-timing", dest="timing", action="store_false", default=None,
                   help="report 0 seconds so output is byte-stable")


def _pair_args(p: argparse.ArgumentParser) -> None:
    _common(p)
    p.add_argument("--modulus", type=int, required=True)
    p.add_argument("-A", required=True, help='subset such as "{0,4,6}"')
    p.add_argument("-B", required=True)


def _field_args(p: argparse.ArgumentParser, spaces: bool = True) -> None:
    _common(p)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--poly", help="modulus coefficients low to high, e.g. 1,1,0,1")
    if spaces:
        p.add_argument("-A", required=True, help="basis as JSON, e.g. [[0,1,0,0]]")
        p.add_argument("-B", required=True)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="acycmatch", description="Acyclic matchings in groups and field extensions.")
    areas = parser.add_subparsers(dest="area", required=True, parser_class=_Parser)

    group = areas.add_parser("group").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    gm = group.add_parser("matching", help="matchings, multiplicities and acyclicity of one pair")
    _pair_args(gm)
    gm.add_argument("--compare-bijections", action="store_true")
    _search_args(group.add_parser("acyclic-search", help="search pairs with 0 not in B"))
    _search_args(group.add_parser("weak-acyclic-search", help="search pairs with A ∩ (A+B) empty"))
    _pair_args(group.add_parser("matrix-det", help="matching matrix and its determinant"))
    t = group.add_parser("table", help="reproduce the reference table")
    _common(t)
    t.add_argument("--full-search", action="store_true")
    t.add_argument("--threads", type=int, default=None)

    linear = areas.add_parser("linear").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    m = linear.add_parser("matched", help="dimension criterion and a matched basis")
    _field_args(m)
    m.add_argument("--basis-a", help="ordered basis of A as JSON (default: echelon basis)")
    _field_args(linear.add_parser("strong", help="strong matching existence"))
    _field_args(linear.add_parser("acyclic-tiny", help="acyclic strong matchings, tiny scale"))
    _field_args(linear.add_parser("primitive-dim", help="largest primitive subspace dimension"), spaces=False)
    w = linear.add_parser("weak-local", help="weakly local matching for a subfield H")
    _field_args(w)
    w.add_argument("--h-degree", type=int, required=True, help="H = F_{p^d}")

    ngroup = areas.add_parser("ngroup").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    n = ngroup.add_parser("check", help="polyadic matching test")
    _pair_args(n)
    n.add_argument("--phi", required=True, help='images of A in order, e.g. "{3,5,6}" or "3,5,6"')
    n.add_argument("--arity", type=int, default=2)

    props = areas.add_parser("props").add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    r = props.add_parser("run", help="seeded property suites")
    _common(r)
    r.add_argument("--suite", choices=sorted(SUITES) + ["all"], default="all")
    r.add_argument("--seed", type=int)
    return parser


def _config(args) -> RunConfig:
    lo, hi = args.range if getattr(args, "range", None) else (None, None)
    overrides = dict(command=args.cmd, modulus=getattr(args, "modulus", None), range_lo=lo, range_hi=hi,
                     max_size=getattr(args, "max_size", None), threads=getattr(args, "threads", None),
                     format=args.format, seed=getattr(args, "seed", None),
                     compare_bijections=getattr(args, "compare_bijections", None),
                     symmetry_pruning=getattr(args, "symmetry_pruning", None),
                     full_search=getattr(args, "full_search", None),
                     verify_table=getattr(args, "verify_table", None), timing=getattr(args, "timing", None))
    if args.config:
        return RunConfig.from_file(args.config, **overrides)
    return RunConfig(**{k: v for k, v in overrides.items() if v is not None})


def _field(args) -> FieldSpec:
    if args.poly:
        return FieldSpec(args.p, args.m, tuple(int(c) for c in args.poly.split(",")))
    return FieldSpec.default(args.p, args.m)


def _space(field: FieldSpec, text: str) -> Subspace:
    try:
        rows = json.loads(text)
    except json.JSONDecodeError as e:
        raise ArgumentError(f"bad basis JSON {text!r}: {e}")
    return Subspace.span(field, rows)


def _emit_dict(payload: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload)
    if fmt == "tsv":
        return "\n".join(f"{k}\t{json.dumps(v)}" for k, v in payload.items())
    return "\n".join(f"{k}: {json.dumps(v)}" for k, v in payload.items())


def _group_pair(args):
    spec = GroupSpec.cyclic(args.modulus)
    return spec, Subset.parse(spec, args.A), Subset.parse(spec, args.B)


def _cmd_group(args) -> tuple[str, int]:
    fmt = args.format or "human"
    if args.cmd in ("acyclic-search", "weak-acyclic-search"):
        config = _config(args)
        reports = run_search(config)
        return emit_report(reports, config.format), exit_code(reports)
    if args.cmd == "table":
        rows = reproduce_table(full_search=args.full_search, threads=args.threads or 1)
        code = 0 if all(r.verified for r in rows) else 1
        if fmt == "json":
            return json.dumps([r.to_dict() for r in rows]), code
        lines = ["p\tverdict\tA\tB\tmethod\tverified"] if fmt == "tsv" else []
        for r in rows:
            cells = (r.p, r.verdict, r.A or "-", r.B or "-", r.method, r.verified)
            lines.append("\t".join(map(str, cells)) if fmt == "tsv" else
                         f"{r.p:>3}  {r.verdict:<3}  A={r.A or '-'}  B={r.B or '-'}  [{r.method}, "
                         f"{'verified' if r.verified else 'NOT verified'}]")
        return "\n".join(lines), code
    spec, A, B = _group_pair(args)
    if args.cmd == "matching":
        acyc = acyclic_matchings(spec, A, B, compare_bijections=args.compare_bijections)
        ok, J = hall_bound(spec, A, B)
        payload = {"modulus": args.modulus, "A": str(A), "B": str(B), "has_matching": has_matching(spec, A, B),
                   "hall_bound": ok, "violating_J": list(J) if J else None,
                   "acyclic": [{"phi": str(phi), "multiplicity": str(multiplicity_function(spec, phi))}
                               for phi in acyc]}
        return _emit_dict(payload, fmt), 0
    if args.cmd == "matrix-det":
        M = build_group_matrix(spec, A, B)
        det, inv = determinant(M)
        return _emit_dict({"matrix": M.to_json(), "determinant": str(det), "invertible": inv}, fmt), 0
    raise ArgumentError(f"unknown command {args.cmd}")


def _cmd_linear(args) -> tuple[str, int]:
    fmt = args.format or "human"
    field = _field(args)
    out: dict = {"field": field.to_dict()}
    if args.cmd == "primitive-dim":
        out.update(primitive_dimension_search(field))
        return _emit_dict(out, fmt), 0
    A, B = _space(field, args.A), _space(field, args.B)
    if args.cmd == "matched":
        basis_a = (OrderedBasis.of(field, json.loads(args.basis_a)) if args.basis_a
                   else OrderedBasis.canonical(A))
        ok, J = dimension_criterion(field, basis_a, A, B)
        out.update({"basis_a": basis_a.to_list(), "matchable": ok, "violating_J": list(J) if J else None,
                    "sufficient_condition": matched_sufficient(field, A, B).value})
        if ok:
            basis_b = construct_matched_basis(field, basis_a, A, B)
            out["basis_b"] = basis_b.to_list()
            out["ab_bound"] = stabiliser_bound_check(field, A, B, basis_b).holds
        try:
            out["A_matched_to_B_exhaustive"] = is_subspace_matched(field, A, B)
        except AcycMatchError:
            out["A_matched_to_B_exhaustive"] = None
    elif args.cmd == "strong":
        out["strong_matching_exists"] = strong_matching_exists(field, A, B)
    elif args.cmd == "acyclic-tiny":
        res = linear_acyclic_tiny(field, A, B)
        out.update({"isomorphisms": len(res["isos"]),
                    "acyclic": [[list(r) for r in iso.matrix] for iso in res["acyclic"]],
                    "matrix_invertible_for_each": res["matrix_invertible_for_each"],
                    "asymmetric_pairs": res["asymmetric_pairs"], "experimental": True})
    elif args.cmd == "weak-local":
        basis_a, basis_b = weak_local_match(field, A, B, subfield_fixed(field, args.h_degree))
        out.update({"basis_a": basis_a.to_list(), "basis_hb": basis_b.to_list()})
    return _emit_dict(out, fmt), 0


def _cmd_ngroup(args) -> tuple[str, int]:
    spec, A, B = _group_pair(args)
    targets = [spec.element(int(x)) for x in args.phi.strip("{} ").split(",")]
    phi = MatchingFn.from_pairs(A, B, list(zip(A, targets)))
    ok = polyadic_matching_check(spec, A, B, phi, args.arity)
    return _emit_dict({"modulus": args.modulus, "arity": args.arity, "matching": ok}, args.format or "human"), 0


def _cmd_props(args) -> tuple[str, int]:
    names = sorted(SUITES) if args.suite == "all" else [args.suite]
    results = [run_suite(name, args.seed) for name in names]
    code = 0 if all(r.passed for r in results) else 2
    fmt = args.format or "human"
    if fmt == "json":
        return json.dumps([r.to_dict() for r in results]), code
    if fmt == "tsv":
        lines = ["suite\tseed\tinstances\tviolations\texperimental"]
        lines += [f"{r.name}\t{r.seed}\t{r.instances}\t{r.violations}\t{r.experimental}" for r in results]
        return "\n".join(lines), code
    lines = [f"{'PASS' if r.passed else 'FAIL'}  {r.name:<14} instances={r.instances} violations={r.violations}"
             + ("  (experimental)" if r.experimental else "") for r in results]
    return "\n".join(lines), code


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = {"group": _cmd_group, "linear": _cmd_linear, "ngroup": _cmd_ngroup, "props": _cmd_props}[args.area]
    try:
        text, code = handler(args)
    except PreconditionError as e:
        print(f"precondition failed [{e.reason}]: {e}", file=sys.stderr)
        return 1
    except (AcycMatchError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    print(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
