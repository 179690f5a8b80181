"""Command-line entry point: ``edgering <command> [graph selection] [options]``.

Exit codes: 0 success, 2 invariant violation, 3 input error, 4 resource guard.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
import time
from typing import Optional

from edgering.cone_canonical import canonical_generators, verdicts
from edgering.errors import EdgeRingError, InputError, InvariantViolation
from edgering.graph_core import (
    FAMILIES,
    Graph,
    build_family,
    family_name,
    is_bipartite,
    satisfies_odd_cycle_condition,
)
from edgering.groebner import MonomialOrder, buchberger, is_groebner_basis
from edgering.hilbert_semigroup import (
    closed_form_h,
    default_order,
    h_polynomial_pipeline,
    hilbert_function_value,
    semigroup_count,
)
from edgering.toric_ideal import default_walk_bound, render_monomial, toric_generators

log = logging.getLogger("edgering")

COMMANDS = ("analyze", "hvector", "groebner", "complex", "canonical", "verdicts", "families")


def _common_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    src = p.add_argument_group("graph selection")
    src.add_argument("--input", help="graph JSON file")
    src.add_argument("--family", help="gn, kmn or km")
    src.add_argument("--n", type=int, help="n for gn; second part size for kmn")
    src.add_argument("--m", type=int, help="m for km; first part size for kmn")
    tune = p.add_argument_group("tuning")
    tune.add_argument("--max-walk-len", type=int, help="even closed walk length bound")
    tune.add_argument("--max-degree", type=int, help="degree bound for canonical generators")
    tune.add_argument("--order", help="comma-separated edge variables, smallest to largest")
    tune.add_argument("--suppress-cone-points", action="store_true",
                      help="omit vertices lying in every facet when printing complexes")
    p.add_argument("--check-degrees", type=int, default=2,
                   help="compare the Hilbert function with semigroup counts up to this degree")
    p.add_argument("--format", choices=("json", "csv", "pretty"), default="json")
    p.add_argument("--threads", type=int, default=int(os.environ.get("EDGERING_THREADS", "1")),
                   help="worker threads for lattice-point enumeration (default $EDGERING_THREADS or 1)")
    p.add_argument("--timings", action="store_true", help="print per-stage timings to stderr")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="edgering", description="Edge ring invariants of graphs.")
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common_parser()
    helps = {
        "analyze": "full pipeline report",
        "hvector": "h-vector with cross-checks",
        "groebner": "toric generators and reduced Gröbner basis",
        "complex": "initial complex, f-vector and lex shelling",
        "canonical": "canonical module generators",
        "verdicts": "Gorenstein and almost Gorenstein verdicts",
        "families": "list built-in graph families",
    }
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=helps[name])
    return parser


def load_graph(args) -> Graph:
    if args.input and args.family:
        raise InputError("give either --input or --family, not both")
    if args.input:
        return Graph.load(args.input)
    if not args.family:
        raise InputError("a graph is required: --input FILE or --family NAME")
    fam = family_name(args.family)
    if fam == "Gn":
        params = [args.n]
    elif fam == "CompleteBipartite":
        params = [args.m, args.n]
    elif fam == "Complete":
        params = [args.m if args.m is not None else args.n]
    else:
        raise InputError(f"unknown family {args.family!r}")
    if any(p is None for p in params):
        raise InputError(f"missing size parameter for family {fam}")
    return build_family(fam, params)


def _labels(g: Graph) -> list[str]:
    return [g.edge_label(k) for k in range(g.num_edges)]


def _order(g: Graph, args) -> MonomialOrder:
    if not args.order:
        return default_order(g)
    names = [s.strip() for s in args.order.split(",") if s.strip()]
    if len(names) != g.num_edges:
        raise InputError(f"--order lists {len(names)} variables, graph has {g.num_edges} edges")
    return MonomialOrder.from_names(names, _labels(g))


def _family_params(g: Graph):
    if g.gn_labels is not None:
        return "Gn", [g.gn_labels.n]
    if g.name.startswith("K_{"):
        m, n = g.name[3:-1].split(",")
        return "CompleteBipartite", [int(m), int(n)]
    if g.name.startswith("K_"):
        return "Complete", [int(g.name[2:])]
    return None, None


def graph_summary(g: Graph) -> dict:
    occ = satisfies_odd_cycle_condition(g)
    return {
        "name": g.name or "input",
        "num_vertices": g.num_vertices,
        "num_edges": g.num_edges,
        "bipartite": is_bipartite(g).is_bipartite,
        "odd_cycle_condition": occ.satisfied,
    }


def hvector_section(g: Graph, args, pipe) -> dict:
    labels = _labels(g)
    sources = {"f-vector": list(pipe.by_f_vector.h.trimmed())}
    if pipe.by_shelling is not None:
        sources["shelling"] = list(pipe.by_shelling.h.trimmed())
    fam, params = _family_params(g)
    if fam is not None:
        sources["closed-form"] = list(closed_form_h(fam, params).trimmed())
    agree = len({tuple(v) for v in sources.values()}) == 1
    checks = []
    for deg in range(args.check_degrees + 1):
        hf = hilbert_function_value(pipe.hilbert, deg)
        sc = semigroup_count(g, deg)
        checks.append({"degree": deg, "hilbert_function": hf, "semigroup_count": sc, "agree": hf == sc})
    out = {
        "h": list(pipe.h.trimmed()),
        "dim": pipe.dim,
        "sources": sources,
        "sources_agree": agree,
        "hilbert_checks": checks,
        "walk_bound": pipe.walk_bound,
        "order": [labels[k] for k in pipe.order.priority],
        "warnings": list(pipe.warnings),
    }
    if not agree:
        raise InvariantViolation(f"h-vector sources disagree: {sources}")
    bad = [c for c in checks if not c["agree"]]
    if bad:
        raise InvariantViolation(f"Hilbert function disagrees with semigroup count: {bad}")
    return out


def groebner_section(g: Graph, pipe) -> dict:
    labels = _labels(g)
    return {
        "order": [labels[k] for k in pipe.order.priority],
        "walk_bound": pipe.walk_bound,
        "generators": [b.render(labels) for b in pipe.generators],
        "groebner_basis": [b.render(labels) for b in pipe.groebner_basis],
        "groebner_basis_exponents": [b.to_json() for b in pipe.groebner_basis],
        "initial_ideal": [render_monomial(m, labels) for m in pipe.initial.generators],
        "initial_ideal_squarefree": pipe.initial.is_squarefree,
    }


def complex_section(g: Graph, args, pipe) -> dict:
    labels = _labels(g)
    cx = pipe.complex
    out = cx.to_json(labels, args.suppress_cone_points)
    out["num_facets"] = cx.num_facets
    out["f_vector"] = list(pipe.f)
    if pipe.shelling is not None:
        out["lex_shelling"] = {
            "valid": pipe.shelling.valid,
            "failure_step": pipe.shelling.failure_step,
            "r_values": list(pipe.shelling.r_values),
        }
    return out


def canonical_section(g: Graph, args, pipe):
    report = canonical_generators(g, args.max_degree, h=pipe.h, threads=args.threads)
    return report, verdicts(g, report, pipe.h)


def run_command(args) -> dict:
    if args.command == "families":
        return {
            "families": [
                {"id": "Gn", "cli": "gn", "params": ["n"], "min": {"n": 2}, "walk_bound": 6},
                {"id": "CompleteBipartite", "cli": "kmn", "params": ["m", "n"], "min": {"m": 1, "n": 1},
                 "walk_bound": 4},
                {"id": "Complete", "cli": "km", "params": ["m"], "min": {"m": 3}, "walk_bound": 4},
            ]
        }
    g = load_graph(args)
    timings = {}
    t0 = time.perf_counter()

    if args.command in ("canonical", "verdicts") and is_bipartite(g).is_bipartite:
        raise InputError("canonical module computations are unsupported for bipartite graphs")
    pipe = h_polynomial_pipeline(g, _order(g, args), args.max_walk_len)
    timings.update(pipe.timings)

    if args.command == "groebner":
        out = groebner_section(g, pipe)
        check = is_groebner_basis(pipe.groebner_basis, pipe.order)
        out["is_groebner_basis"] = check.is_groebner_basis
    elif args.command == "complex":
        out = complex_section(g, args, pipe)
    elif args.command == "hvector":
        out = hvector_section(g, args, pipe)
    elif args.command == "canonical":
        t1 = time.perf_counter()
        report, _ = canonical_section(g, args, pipe)
        timings["canonical"] = time.perf_counter() - t1
        out = report.to_json()
    elif args.command == "verdicts":
        _, v = canonical_section(g, args, pipe)
        out = v.to_json()
    else:
        out = {"graph": graph_summary(g)}
        out.update(groebner_section(g, pipe))
        out["generator_count"] = len(pipe.generators)
        out["groebner_basis_size"] = len(pipe.groebner_basis)
        out["complex"] = complex_section(g, args, pipe)
        out["facet_count"] = pipe.complex.num_facets
        out["hvector"] = hvector_section(g, args, pipe)
        out["h"] = out["hvector"]["h"]
        out["sources_agree"] = out["hvector"]["sources_agree"]
        if not out["graph"]["bipartite"] and out["graph"]["odd_cycle_condition"]:
            t1 = time.perf_counter()
            report, v = canonical_section(g, args, pipe)
            timings["canonical"] = time.perf_counter() - t1
            out["canonical"] = report.to_json()
            out["verdicts"] = v.to_json()
            out["gorenstein"] = v.gorenstein
            out["almost_gorenstein"] = v.almost_gorenstein
        else:
            out["canonical"] = None
            out["verdicts"] = None
    timings["total"] = time.perf_counter() - t0
    if args.timings:
        for stage, secs in timings.items():
            print(f"{stage}: {secs:.3f}s", file=sys.stderr)
    return out


def _flatten(prefix: str, value, rows: list):
    if isinstance(value, dict):
        for k in sorted(value):
            _flatten(f"{prefix}.{k}" if prefix else str(k), value[k], rows)
    elif isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
        for i, v in enumerate(value):
            _flatten(f"{prefix}[{i}]", v, rows)
    elif isinstance(value, list):
        rows.append((prefix, ";".join(json.dumps(v) if isinstance(v, list) else str(v) for v in value)))
    else:
        rows.append((prefix, json.dumps(value) if value is None or isinstance(value, bool) else str(value)))


def format_output(out: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(out, sort_keys=True, indent=2, ensure_ascii=False)
    rows: list = []
    _flatten("", out, rows)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["key", "value"])
        writer.writerows(rows)
        return buf.getvalue().rstrip("\n")
    width = max((len(k) for k, _ in rows), default=0)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)


def main(argv: Optional[list[str]] = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        out = run_command(args)
    except EdgeRingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    print(format_output(out, args.format))
    return 0


if __name__ == "__main__":
    sys.exit(main())
