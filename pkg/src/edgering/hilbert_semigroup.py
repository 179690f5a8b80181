"""h-vectors of edge rings: the Gröbner pipeline, Hilbert function values,
brute-force semigroup counting, and closed forms for the built-in families."""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from math import comb
from typing import Optional

from edgering.errors import InputError, InvariantViolation, ResourceGuardError
from edgering.graph_core import Graph, family_name, krull_dimension
from edgering.groebner import MonomialIdeal, MonomialOrder, buchberger, initial_ideal, is_groebner_basis
from edgering.stanley_reisner import (
    HVector,
    ShellingReport,
    SimplicialComplex,
    complex_from_squarefree_ideal,
    f_vector,
    h_from_f,
    h_from_shelling,
    lex_facet_order,
    verify_shelling,
)
from edgering.toric_ideal import Binomial, default_walk_bound, incidence_vector, toric_generators

log = logging.getLogger(__name__)

SOURCES = ("shelling", "f-vector", "closed-form")


@dataclass(frozen=True)
class HilbertData:
    h: HVector
    dim: int
    source: str

    def __post_init__(self):
        if self.source not in SOURCES:
            raise ValueError(f"unknown source {self.source!r}")


def default_order(g: Graph) -> MonomialOrder:
    if g.gn_labels is not None:
        return MonomialOrder(tuple(g.gn_labels.triangle_priority()))
    return MonomialOrder.natural(g.num_edges)


@dataclass
class PipelineResult:
    graph: Graph
    order: MonomialOrder
    walk_bound: int
    generators: list[Binomial]
    groebner_basis: list[Binomial]
    initial: MonomialIdeal
    complex: SimplicialComplex
    f: list[int]
    by_f_vector: HilbertData
    shelling: Optional[ShellingReport]
    by_shelling: Optional[HilbertData]
    warnings: list[str] = field(default_factory=list)
    timings: dict[str, float] = field(default_factory=dict)

    @property
    def h(self) -> HVector:
        return self.by_f_vector.h

    @property
    def dim(self) -> int:
        return self.by_f_vector.dim

    @property
    def sources_agree(self) -> bool:
        return self.by_shelling is None or self.by_shelling.h == self.by_f_vector.h

    @property
    def hilbert(self) -> HilbertData:
        return self.by_f_vector


def h_polynomial_pipeline(
    g: Graph,
    order: Optional[MonomialOrder] = None,
    max_walk_length: Optional[int] = None,
) -> PipelineResult:
    """Toric generators, Gröbner basis, initial complex, then h by face counting
    and (when the lex facet order is a shelling) by r-values.

    Raises ``InvariantViolation`` if the two routes disagree or the complex
    dimension contradicts the Krull dimension of the edge ring.
    """
    order = order or default_order(g)
    if order.num_vars != g.num_edges:
        raise InputError(f"order has {order.num_vars} variables, graph has {g.num_edges} edges")
    bound = max_walk_length or default_walk_bound(g)
    timings = {}
    warnings = []

    t0 = time.perf_counter()
    gens = toric_generators(g, bound)
    timings["toric_generators"] = time.perf_counter() - t0
    if bound < default_walk_bound(g):
        warnings.append(f"walk bound {bound} is below the completeness bound {default_walk_bound(g)}")

    t0 = time.perf_counter()
    gb = buchberger(gens, order) if gens else []
    if gb and not is_groebner_basis(gb, order):
        raise InvariantViolation("Buchberger output fails Buchberger's criterion")
    timings["buchberger"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    ini = initial_ideal(gb, order, check=False)
    if not ini.is_squarefree:
        raise InputError("initial ideal is not squarefree; try another --order")
    cx = complex_from_squarefree_ideal(ini, g.num_edges)
    timings["complex"] = time.perf_counter() - t0

    d = krull_dimension(g)
    if cx.dimension + 1 != d:
        raise InvariantViolation(
            f"initial complex has dimension {cx.dimension}, expected Krull dimension {d} minus one"
            " (generators may be incomplete at this walk bound)")

    t0 = time.perf_counter()
    f = f_vector(cx)
    by_f = HilbertData(h_from_f(f, d), d, "f-vector")
    timings["f_vector"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    report = None
    by_shell = None
    if cx.is_pure:
        report = verify_shelling(cx, lex_facet_order(cx, order))
        if report.valid:
            by_shell = HilbertData(h_from_shelling(report, d), d, "shelling")
        else:
            warnings.append(f"lex facet order is not a shelling (fails at step {report.failure_step})")
    else:
        warnings.append("initial complex is not pure")
    timings["shelling"] = time.perf_counter() - t0

    result = PipelineResult(g, order, bound, gens, gb, ini, cx, f, by_f, report, by_shell, warnings, timings)
    if not result.sources_agree:
        raise InvariantViolation(
            f"h-vector by shelling {by_shell.h.trimmed()} differs from f-vector route {by_f.h.trimmed()}")
    for w in warnings:
        log.warning(w)
    return result


def hilbert_function_value(hd: HilbertData, deg: int) -> int:
    """dim_k R_deg = sum_i h_i * C(deg - i + d - 1, d - 1)."""
    if deg < 0:
        raise InputError("degree must be non-negative")
    d = hd.dim
    if d == 0:
        return hd.h.coefficients[deg] if deg < len(hd.h.coefficients) else 0
    return sum(hi * comb(deg - i + d - 1, d - 1) for i, hi in enumerate(hd.h.coefficients) if deg >= i)


def semigroup_count(g: Graph, deg: int, cap: int = 2_000_000) -> int:
    """Number of distinct sums of ``deg`` edge vectors (with repetition)."""
    if deg < 0:
        raise InputError("degree must be non-negative")
    vectors = [incidence_vector(g, e) for e in range(g.num_edges)]
    level = {tuple([0] * g.num_vertices)}
    for _ in range(deg):
        nxt = set()
        for p in level:
            for v in vectors:
                nxt.add(tuple(a + b for a, b in zip(p, v)))
        if len(nxt) > cap:
            raise ResourceGuardError(f"more than {cap} semigroup elements in one degree")
        level = nxt
    return len(level)


def closed_form_h(family: str, params) -> HVector:
    """Known h-polynomials: K_{m,n}, K_m, and (1 + t)^n - t for the windmill graph."""
    name = family_name(family)
    params = [int(p) for p in params]
    if name == "CompleteBipartite":
        if len(params) != 2 or min(params) < 1:
            raise InputError(f"CompleteBipartite needs m, n >= 1, got {params}")
        m, n = params
        h = [comb(m - 1, i) * comb(n - 1, i) for i in range(min(m, n) + 1)]
        return HVector(tuple(h), m + n - 1)
    if name == "Complete":
        if len(params) != 1 or params[0] < 3:
            raise InputError(f"Complete needs m >= 3, got {params}")
        m = params[0]
        h = [1, m * (m - 3) // 2] + [comb(m, 2 * i) for i in range(2, m // 2 + 1)]
        return HVector(tuple(h), m)
    if name == "Gn":
        if len(params) != 1 or params[0] < 2:
            raise InputError(f"Gn needs n >= 2, got {params}")
        n = params[0]
        h = [comb(n, i) for i in range(n + 1)]
        h[1] -= 1
        return HVector(tuple(h), 2 * n + 1)
    raise InputError(f"no closed form for family {family!r}")
