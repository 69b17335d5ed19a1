"""Command-line front end.

Exit codes: 0 affirmative, 1 negative verdict, 2 usage or input error.
Structured output is JSON Lines, one record per line, keys in a fixed order.
"""
from __future__ import annotations

import argparse
import json
import sys
import warnings
from fractions import Fraction
from typing import Sequence

from .classify import classify
from .cycle import NotNegativeDefiniteError, anticanonical_cycle, arithmetic_genus
from .enumeration import (
    DuValSolution,
    EnumerationConfig,
    Solution,
    SolutionFamily,
    StabilityWarning,
    enumerate_weights,
    stability_check,
)
from .graph import DecoratedGraph, GraphError, parse_graph, to_dot
from .linalg import intersection_matrix, is_negative_definite
from .oracle import OracleBoxTooLarge, brute_force_oracle

EXIT_YES, EXIT_NO, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def fmt_rational(x: Fraction | int) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def fmt_cycle(vertices: Sequence[str], coeffs: Sequence[Fraction | int]) -> str:
    terms = []
    for v, c in zip(vertices, coeffs):
        if c == 0:
            continue
        coef = "" if c == 1 else fmt_rational(c)
        terms.append(f"{coef}E_{v}")
    return " + ".join(terms) if terms else "0"


def fmt_tuple(values) -> str:
    return "(" + ", ".join(fmt_rational(v) for v in values) + ")"


def parse_assignment(spec: str, vertices: Sequence[str], what: str) -> dict[str, int]:
    """``a=1,b=2`` or positional ``1,2`` (canonical vertex order)."""
    parts = [s.strip() for s in spec.split(",") if s.strip()]
    try:
        if parts and all("=" in s for s in parts):
            out = {}
            for s in parts:
                k, v = s.split("=", 1)
                if k not in vertices:
                    raise UsageError(f"{what}: unknown vertex {k!r}")
                out[k] = int(v)
            missing = [v for v in vertices if v not in out]
            if missing and what == "--with-e":
                raise UsageError(f"{what}: no value for {', '.join(missing)}")
            return out
        values = [int(s) for s in parts]
    except ValueError:
        raise UsageError(f"{what}: cannot parse {spec!r}") from None
    if len(values) != len(vertices):
        raise UsageError(f"{what}: expected {len(vertices)} values, got {len(values)}")
    return dict(zip(vertices, values))


def _load(path: str) -> DecoratedGraph:
    try:
        with open(path, "rb") as fh:
            return parse_graph(fh.read())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _emit(record: dict) -> None:
    print(json.dumps(record))


def _by_vertex(vertices, values, render=int):
    return {v: (None if x is None else render(x)) for v, x in zip(vertices, values)}


def _classification_record(g: DecoratedGraph) -> dict:
    c = classify(g)
    return {"du_val": c.du_val, "cusp": c.cusp, "minimal": c.minimal, "shape": c.shape}


def cmd_check(args) -> int:
    g = _load(args.file)
    if args.with_e:
        g = g.with_e(parse_assignment(args.with_e, g.vertices, "--with-e"))
    if g.e is None:
        raise UsageError("check needs e on every vertex (add e=<e> or use --with-e)")
    if args.format == "dot":
        sys.stdout.write(to_dot(g))
        m = intersection_matrix(g)
        return EXIT_YES if is_negative_definite(m) and anticanonical_cycle(g).integral else EXIT_NO
    cls = _classification_record(g)
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            report = anticanonical_cycle(g, check_lemmas=True)
    except NotNegativeDefiniteError:
        if args.format == "structured":
            _emit({"kind": "check", "negative_definite": False, "n_gorenstein": None,
                   "z": None, "integral": None, "effective": None, "n": None, "classification": cls})
        else:
            print("negative definite: no")
            print("n-Gorenstein: undefined (Z_K needs a negative definite form)")
        return EXIT_NO
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    if args.format == "structured":
        _emit({
            "kind": "check",
            "negative_definite": True,
            "n_gorenstein": report.integral,
            "z": _by_vertex(g.vertices, report.z, fmt_rational),
            "integral": report.integral,
            "effective": report.effective,
            "n": None if report.n is None else _by_vertex(g.vertices, report.n),
            "classification": cls,
        })
    else:
        if report.integral:
            verdict = f"n-Gorenstein: yes, Z_K = {fmt_cycle(g.vertices, report.z)}"
        elif len(g) == 1:
            verdict = f"n-Gorenstein: no (z = {fmt_rational(report.z[0])})"
        else:
            verdict = f"n-Gorenstein: no (z = {fmt_tuple(report.z)})"
        if not args.quiet:
            print("negative definite: yes")
            print("z: " + " ".join(f"{v}={fmt_rational(x)}" for v, x in zip(g.vertices, report.z)))
            print(f"integral: {'yes' if report.integral else 'no'}")
            print(f"effective: {'yes' if report.effective else 'no'}")
            print(_classification_text(cls))
        print(verdict)
    return EXIT_YES if report.integral else EXIT_NO


def _classification_text(cls: dict) -> str:
    yn = {True: "yes", False: "no", None: "n/a"}
    return (f"classification: Du Val: {cls['du_val'] or 'none'}, cusp: {yn[cls['cusp']]}, "
            f"minimal: {yn[cls['minimal']]}")


def cmd_classify(args) -> int:
    g = _load(args.file)
    cls = _classification_record(g)
    if args.format == "structured":
        _emit({"kind": "classification", **cls})
    elif args.format == "dot":
        sys.stdout.write(to_dot(g))
    else:
        print(f"Du Val: {cls['du_val'] or 'none'}")
        print(f"cusp: {'yes' if cls['cusp'] else 'no'}")
        print(f"minimal: {'n/a' if cls['minimal'] is None else ('yes' if cls['minimal'] else 'no')}")
        print(f"ADE shape: {cls['shape'] or 'none'}")
    return EXIT_YES


def _solution_record(vertices, s: Solution) -> dict:
    return {"kind": "solution", "n": _by_vertex(vertices, s.n), "e": _by_vertex(vertices, s.e),
            "free": [], "minimal_elements": [], "z": _by_vertex(vertices, s.z)}


def _family_record(vertices, f: SolutionFamily) -> dict:
    return {
        "kind": "family",
        "n": _by_vertex(vertices, f.n),
        "e": {v: fe for v, fe in zip(vertices, f.fixed_e) if fe is not None},
        "free": list(f.free),
        "minimal_elements": [dict(zip(f.free, m)) for m in f.minimal_elements],
        "z": _by_vertex(vertices, f.z),
        "truncated": f.truncated,
    }


def _du_val_record(vertices, d: DuValSolution) -> dict:
    return {"kind": "du_val", "n": None, "e": _by_vertex(vertices, d.e), "free": [],
            "minimal_elements": [], "z": _by_vertex(vertices, d.z), "type": d.tag}


def _dot_for(g: DecoratedGraph, e_labels: dict[str, str], name: str) -> str:
    out = [f"graph {name} {{"]
    for v in g.vertices:
        out.append(f'  "{v}" [label="{v}\\np={g.p[v]}\\ne={e_labels[v]}"];')
    order = g.index()
    for (a, b), m in sorted(g.edges.items(), key=lambda kv: (order[kv[0][0]], order[kv[0][1]])):
        out.append(f'  "{a}" -- "{b}" [label="{m}"];')
    out.append("}")
    return "\n".join(out) + "\n"


def cmd_enumerate(args) -> int:
    g = _load(args.file)
    if g.e is not None:
        print("warning: ignoring self-intersection weights in the input", file=sys.stderr)
        g = g.without_e()
    cfg = EnumerationConfig(
        max_n=args.max_n,
        max_e_probe=args.max_e_probe,
        require_minimal=not args.allow_non_minimal,
        include_du_val=not args.no_du_val,
        jobs=args.jobs,
    )
    result = enumerate_weights(g, cfg)
    vs = g.vertices
    if args.format == "structured":
        for s in result.solutions:
            _emit(_solution_record(vs, s))
        for f in result.families:
            _emit(_family_record(vs, f))
        for d in result.du_val:
            _emit(_du_val_record(vs, d))
        _emit({"kind": "bound", "max_n": result.max_n,
               "exhaustive_up_to_bound": result.exhaustive_up_to_bound, "caveat": result.caveat})
    elif args.format == "dot":
        k = 0
        for s in result.solutions:
            sys.stdout.write(_dot_for(g, {v: str(x) for v, x in zip(vs, s.e)}, f"S{k}"))
            k += 1
        for f in result.families:
            free = set(f.free)
            labels = {v: ("free" if v in free else str(x)) for v, x in zip(vs, f.fixed_e)}
            sys.stdout.write(_dot_for(g, labels, f"S{k}"))
            k += 1
        for d in result.du_val:
            sys.stdout.write(_dot_for(g, {v: "2" for v in vs}, f"S{k}"))
            k += 1
    else:
        if not args.quiet:
            print("vertices: " + " ".join(vs))
            print(f"solutions ({len(result.solutions)}):")
        for s in result.solutions:
            print(f"  n={fmt_tuple(s.n)} e={fmt_tuple(s.e)}")
        if not args.quiet:
            print(f"families ({len(result.families)}):")
        for f in result.families:
            fixed = ", ".join(f"{v}={x}" for v, x in zip(vs, f.fixed_e) if x is not None) or "none"
            mins = "; ".join(fmt_tuple(m) for m in f.minimal_elements) or "none found"
            line = (f"  n={fmt_tuple(f.n)} fixed e: {fixed}; free: {', '.join(f.free)}; "
                    f"minimal elements: {mins}; all coordinate-wise larger values admissible")
            if f.truncated:
                line += f" (truncated at e <= {cfg.max_e_probe})"
            print(line)
        for d in result.du_val:
            print(f"Du Val {d.tag}: e={fmt_tuple(d.e)} z=0")
        if not args.quiet:
            print(f"note: {result.caveat} (max_n = {result.max_n})")
    if args.check_stability:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", StabilityWarning)
            new = stability_check(g, cfg)
        for w in caught:
            print(f"warning: {w.message}", file=sys.stderr)
        for n in new[:10]:
            print(f"warning: new n = {fmt_tuple(n)}", file=sys.stderr)
    found = result.solutions or result.families or result.du_val
    return EXIT_YES if found else EXIT_NO


def cmd_oracle(args) -> int:
    g = _load(args.file)
    if g.e is not None:
        g = g.without_e()
    sols = brute_force_oracle(g, args.max_n, args.max_e, require_minimal=not args.allow_non_minimal,
                              backend=args.backend)
    vs = g.vertices
    for s in sols:
        if args.format == "structured":
            _emit(_solution_record(vs, s))
        else:
            print(f"n={fmt_tuple(s.n)} e={fmt_tuple(s.e)}")
    if args.format != "structured" and not args.quiet:
        print(f"{len(sols)} solution(s) with n <= {args.max_n}, e <= {args.max_e}")
    return EXIT_YES if sols else EXIT_NO


def cmd_genus(args) -> int:
    g = _load(args.file)
    if args.with_e:
        g = g.with_e(parse_assignment(args.with_e, g.vertices, "--with-e"))
    if g.e is None:
        raise UsageError("genus needs e on every vertex (add e=<e> or use --with-e)")
    d = parse_assignment(args.cycle, g.vertices, "--cycle")
    try:
        value = arithmetic_genus(g, d)
    except NotNegativeDefiniteError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO
    if args.format == "structured":
        _emit({"kind": "genus", "cycle": {v: d.get(v, 0) for v in g.vertices}, "p_a": fmt_rational(value)})
    else:
        print(fmt_rational(value))
    return EXIT_YES


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ngorenstein",
        description="Numerically Gorenstein resolution graphs: check, classify, enumerate.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, formats=("text", "structured", "dot")):
        p.add_argument("file", help="graph file")
        p.add_argument("--format", choices=formats, default="text")
        p.add_argument("--quiet", action="store_true")

    p = sub.add_parser("check", help="anti-canonical cycle and n-Gorenstein verdict")
    common(p)
    p.add_argument("--with-e", metavar="SPEC", help="weights as a=1,b=2 or 1,2 (overrides the file)")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("classify", help="Du Val / cusp / minimality recognition")
    common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("enumerate", help="all weightings making the graph n-Gorenstein")
    common(p)
    p.add_argument("--max-n", type=int, default=64)
    p.add_argument("--max-e-probe", type=int, default=16)
    p.add_argument("--allow-non-minimal", action="store_true")
    p.add_argument("--no-du-val", action="store_true")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--check-stability", action="store_true",
                   help="re-run with doubled max-n and warn about new n vectors")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("oracle", help="brute-force box search (reference)")
    common(p, formats=("text", "structured"))
    p.add_argument("--max-n", type=int, default=8)
    p.add_argument("--max-e", type=int, default=6)
    p.add_argument("--allow-non-minimal", action="store_true")
    p.add_argument("--backend", choices=("numba", "numpy"), default=None)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("genus", help="arithmetic genus of a cycle")
    common(p, formats=("text", "structured"))
    p.add_argument("--cycle", required=True, metavar="SPEC", help="coefficients as a=1,b=1 or 1,1")
    p.add_argument("--with-e", metavar="SPEC")
    p.set_defaults(func=cmd_genus)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (GraphError, UsageError, OracleBoxTooLarge, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
