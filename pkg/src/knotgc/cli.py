"""Command-line entry points ``gc`` (graph complexes) and ``ci`` (integrals)."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from typing import Optional, Sequence

from . import confint, qlinalg
from .canon import canonicalize
from .coboundary import GraphVector, delta_vec
from .enumeration import enumerate_graphs
from .grammar import GraphSyntaxError, format_graph, parse_graph
from .graph import DecoratedGraph, ParityRegime, grading, is_admissible, validate
from .knots import knot_by_name
from .named import H_REGIMES, NAMED, h_terms

log = logging.getLogger("knotgc")


class DomainError(Exception):
    """Input that parses but cannot be processed; exit status 1."""


def _setup_logging() -> None:
    level = os.environ.get("GC_LOG", "warning").upper()
    logging.basicConfig(
        stream=sys.stderr,
        level=getattr(logging, level, logging.WARNING),
        format="%(levelname)s %(name)s: %(message)s",
    )


def _regime(text: str) -> ParityRegime:
    try:
        return ParityRegime.from_string(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _graph(text: str, regime: ParityRegime) -> DecoratedGraph:
    if text in NAMED:
        return NAMED[text](regime)
    try:
        return parse_graph(text)
    except GraphSyntaxError as exc:
        raise DomainError(f"cannot parse graph: {exc}") from None


def _vector(text: str, regime: ParityRegime) -> GraphVector:
    if text == "H":
        return GraphVector.from_terms(h_terms(regime))
    graph = _checked(_graph(text, regime))
    return GraphVector.from_graph(graph)


def _checked(graph: DecoratedGraph) -> DecoratedGraph:
    report = validate(graph)
    if not report.ok:
        raise DomainError("invalid graph: " + "; ".join(report.violations))
    if not is_admissible(graph):
        raise DomainError(f"graph is not admissible: {format_graph(graph)}")
    return graph


def _emit_vector(v: GraphVector, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(v.to_json_obj())
    if not v:
        return "0"
    return "\n".join(f"{c}\t{form}" for form, c in v.items())


# --- gc commands -------------------------------------------------------------------


def cmd_validate(args) -> tuple[str, int]:
    graph = _graph(args.graph, args.regime)
    report = validate(graph)
    if args.format == "json":
        return json.dumps({"ok": report.ok, "violations": list(report.violations)}), 0 if report.ok else 1
    if report.ok:
        return "ok", 0
    return "\n".join(report.violations), 1


def cmd_grade(args) -> tuple[str, int]:
    g = grading(_checked(_graph(args.graph, args.regime)))
    if args.format == "json":
        return json.dumps({"k": g.k, "l": g.l, "g": g.g}), 0
    return f"k={g.k} l={g.l} g={g.g}", 0


def cmd_canon(args) -> tuple[str, int]:
    c = canonicalize(_checked(_graph(args.graph, args.regime)))
    if args.format == "json":
        if c is None:
            return json.dumps({"zero": True}), 0
        return json.dumps({"zero": False, "sign": c.sign, "graph": format_graph(c.form)}), 0
    if c is None:
        return "zero", 0
    return f"{c.sign:+d}\t{format_graph(c.form)}", 0


def cmd_delta(args) -> tuple[str, int]:
    v = _vector(args.graph, args.regime)
    return _emit_vector(delta_vec(v), args.format), 0


def _need_grading(args, *names):
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise DomainError(f"{args.command} needs {' '.join(missing)}")


def cmd_enum(args) -> tuple[str, int]:
    _need_grading(args, "k", "l")
    if args.k < 1 or args.l < 0 or 2 * args.k - args.l < 1:
        forms = []
    else:
        forms = enumerate_graphs(args.regime, args.k, args.l, args.g)
    lines = [format_graph(f) for f in forms]
    if args.format == "json":
        return json.dumps(lines), 0
    return "\n".join(lines), 0


def cmd_cohom(args) -> tuple[str, int]:
    _need_grading(args, "k", "g")
    degrees = [args.l] if args.l is not None else list(range(0, 2 * args.k))
    dims = {l: qlinalg.cohomology_dim(args.regime, args.k, l, args.g) for l in degrees}
    if args.format == "json":
        return json.dumps(
            [{"k": args.k, "l": l, "g": args.g, "dim": d} for l, d in dims.items()]
        ), 0
    return "\n".join(f"k={args.k} l={l} g={args.g} dim={d}" for l, d in dims.items()), 0


def cmd_cocycles(args) -> tuple[str, int]:
    _need_grading(args, "k", "l", "g")
    basis = qlinalg.cocycle_basis(args.regime, args.k, args.l, args.g)
    if args.format == "json":
        return json.dumps([v.to_json_obj() for v in basis]), 0
    blocks = [f"# cocycle {i + 1}\n{_emit_vector(v, 'text')}" for i, v in enumerate(basis)]
    return "\n".join(blocks), 0


def cmd_check_h(args) -> tuple[str, int]:
    results = []
    for regime in H_REGIMES:
        d = delta_vec(GraphVector.from_terms(h_terms(regime)))
        results.append((regime, d))
    ok = all(not d for _, d in results)
    if args.format == "json":
        out = [{"regime": str(r), "delta_zero": not d, "delta": d.to_json_obj()} for r, d in results]
        return json.dumps(out), 0 if ok else 1
    lines = []
    for regime, d in results:
        status = "OK" if not d else "FAILED"
        lines.append(f"{regime}: delta(H) = 0: {status}")
        if d:
            lines.append(_emit_vector(d, "text"))
    return "\n".join(lines), 0 if ok else 1


def cmd_integrate(args) -> tuple[str, int]:
    regime = ParityRegime.from_dims(args.n, args.j)
    graph = _checked(_graph(args.graph, regime))
    if graph.regime != regime:
        log.info("graph regime %s differs from the parities of n=%d, j=%d", graph.regime, args.n, args.j)
    try:
        knot = knot_by_name(args.knot, args.n, args.j)
        est = confint.mc_estimate(
            graph, knot, args.samples, args.seed, threads=args.threads, proposal=args.proposal
        )
    except ValueError as exc:
        raise DomainError(str(exc)) from None
    record = {
        "graph": format_graph(graph),
        "knot": args.knot,
        "n": args.n,
        "j": args.j,
        "samples": args.samples,
        "seed": args.seed,
        "value": est.value,
        "std_error": est.std_error,
        "rejected_samples": est.rejected_samples,
    }
    if args.proposal != "cauchy":
        record["proposal"] = args.proposal
    if args.format == "text":
        return "\n".join(f"{k}: {v}" for k, v in record.items()), 0
    return json.dumps(record), 0


# --- parsers -----------------------------------------------------------------------


def _common(p: argparse.ArgumentParser, default_format: str = "text") -> None:
    p.add_argument("--format", choices=("text", "json"), default=default_format)


def _integrate_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--graph", required=True, help="H1, H2 or a graph string")
    p.add_argument("--knot", default="trivial", help="trivial, bump or twisted")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--samples", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--proposal", choices=confint.PROPOSALS, default="cauchy")


def build_gc_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gc", description="Graph complexes of long knots.")
    sub = parser.add_subparsers(dest="command", required=True)

    def graph_cmd(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("graph", help="graph string, or a named graph (H1, H2, H)")
        p.add_argument("--regime", type=_regime, default=ParityRegime.from_string("n=even,j=odd"))
        _common(p)
        p.set_defaults(func=func)

    graph_cmd("validate", cmd_validate, "check structural invariants")
    graph_cmd("grade", cmd_grade, "print (k, l, g)")
    graph_cmd("canon", cmd_canon, "canonical form and sign")
    graph_cmd("delta", cmd_delta, "coboundary")

    def grading_cmd(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--regime", type=_regime, required=True)
        p.add_argument("--k", type=int)
        p.add_argument("--l", type=int)
        p.add_argument("--g", type=int)
        _common(p)
        p.set_defaults(func=func)

    grading_cmd("enum", cmd_enum, "enumerate canonical graphs")
    grading_cmd("cohom", cmd_cohom, "cohomology dimensions")
    grading_cmd("cocycles", cmd_cocycles, "basis of cocycles")

    p = sub.add_parser("check-h", help="verify that H = H1/2 + H2/6 is a cocycle")
    _common(p)
    p.set_defaults(func=cmd_check_h)

    p = sub.add_parser("integrate", help="Monte Carlo integral of a graph form")
    _integrate_args(p)
    _common(p, "json")
    p.set_defaults(func=cmd_integrate)
    return parser


def build_ci_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ci", description="Configuration-space integrals.")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("integrate", help="Monte Carlo integral of a graph form")
    _integrate_args(p)
    _common(p, "json")
    p.set_defaults(func=cmd_integrate)
    return parser


def _run(parser: argparse.ArgumentParser, argv: Optional[Sequence[str]]) -> int:
    _setup_logging()
    args = parser.parse_args(argv)
    try:
        text, code = args.func(args)
    except DomainError as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 1
    if text:
        sys.stdout.write(text + "\n")
    return code


def main_gc(argv: Optional[Sequence[str]] = None) -> int:
    return _run(build_gc_parser(), argv)


def main_ci(argv: Optional[Sequence[str]] = None) -> int:
    return _run(build_ci_parser(), argv)


if __name__ == "__main__":
    sys.exit(main_gc())
