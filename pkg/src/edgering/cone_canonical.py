"""The edge cone by inequalities, its interior lattice points, and the canonical module.

For a normal edge ring the canonical module is the ideal spanned by the
interior lattice points of the cone; its minimal generators are the interior
points p such that p - rho(e) is not interior for any edge e. The
Cohen-Macaulay type is their number.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from itertools import product
from math import comb
from typing import NamedTuple, Optional, Sequence

import numpy as np

from edgering.errors import InputError, ResourceGuardError
from edgering.graph_core import (
    Graph,
    build_family,
    fundamental_sets,
    is_bipartite,
    krull_dimension,
    neighborhood,
    regular_vertices,
    satisfies_odd_cycle_condition,
)
from edgering.stanley_reisner import HVector
from edgering.toric_ideal import incidence_vector


@dataclass(frozen=True)
class ConeDescription:
    """Inequalities ``a . x >= 0``; ``tags[k]`` is ("regular", (v,)) or ("fundamental", T)."""

    num_vertices: int
    inequalities: tuple[tuple[int, ...], ...]
    tags: tuple[tuple[str, tuple[int, ...]], ...]

    def matrix(self) -> np.ndarray:
        return np.array(self.inequalities, dtype=np.int64).reshape(-1, self.num_vertices)


class Membership(str, Enum):
    OUTSIDE = "outside"
    BOUNDARY = "boundary"
    INTERIOR = "interior"


@dataclass(frozen=True)
class LatticePoint:
    coords: tuple[int, ...]

    @property
    def degree(self) -> int:
        return sum(self.coords) // 2

    def to_json(self) -> dict:
        return {"coords": list(self.coords), "degree": self.degree}


def cone_inequalities(g: Graph) -> ConeDescription:
    """x_u >= 0 per regular vertex u; sum over N(T) >= sum over T per fundamental set T."""
    d = g.num_vertices
    rows, tags = [], []
    for u in sorted(regular_vertices(g)):
        a = [0] * d
        a[u] = 1
        rows.append(tuple(a))
        tags.append(("regular", (u,)))
    for t in fundamental_sets(g):
        a = [0] * d
        for v in neighborhood(g, t):
            a[v] += 1
        for u in t:
            a[u] -= 1
        rows.append(tuple(a))
        tags.append(("fundamental", tuple(sorted(t))))
    return ConeDescription(d, tuple(rows), tuple(tags))


def membership(c: ConeDescription, p: Sequence[int]) -> Membership:
    if len(p) != c.num_vertices:
        raise InputError("point has the wrong dimension")
    vals = [sum(a * x for a, x in zip(row, p)) for row in c.inequalities]
    if any(v < 0 for v in vals):
        return Membership.OUTSIDE
    if all(v > 0 for v in vals):
        return Membership.INTERIOR
    return Membership.BOUNDARY


def _require_nonbipartite(g: Graph, what: str):
    if is_bipartite(g).is_bipartite:
        raise InputError(f"{what} is unsupported for bipartite graphs (cone is not full-dimensional)")


def lattice_member(g: Graph, p: Sequence[int]) -> bool:
    """Membership in the lattice spanned by the edge vectors: even coordinate sum."""
    _require_nonbipartite(g, "lattice membership")
    return sum(p) % 2 == 0


def check_even_sum_lattice(g: Graph, coeff_bound: int = 2, box: int = 1) -> tuple[set, set]:
    """Brute-force test of the even-sum description of the edge lattice.

    Forms every combination sum(l_e * rho(e)) with |l_e| <= coeff_bound and
    compares those landing in [-box, box]^V with the even-sum vectors of the
    box. Returns (even vectors never produced, produced vectors with odd sum);
    both empty means the description held on the sample.
    """
    _require_nonbipartite(g, "lattice check")
    if (2 * coeff_bound + 1) ** g.num_edges > 5_000_000:
        raise ResourceGuardError("too many coefficient vectors for the brute-force lattice check")
    rho = np.array([incidence_vector(g, e) for e in range(g.num_edges)], dtype=np.int64)
    coeffs = np.array(list(product(range(-coeff_bound, coeff_bound + 1), repeat=g.num_edges)), dtype=np.int64)
    pts = coeffs @ rho
    pts = pts[np.all(np.abs(pts) <= box, axis=1)]
    produced = {tuple(int(x) for x in row) for row in np.unique(pts, axis=0)}
    expected = {p for p in product(range(-box, box + 1), repeat=g.num_vertices) if sum(p) % 2 == 0}
    return expected - produced, {p for p in produced if sum(p) % 2}


def compositions(total: int, lower: Sequence[int], max_rows: int = 20_000_000) -> np.ndarray:
    """All integer vectors x >= lower with sum(x) == total, in lexicographic order."""
    lower = np.asarray(lower, dtype=np.int64)
    k = len(lower)
    free = total - int(lower.sum())
    if free < 0:
        return np.zeros((0, k), dtype=np.int64)
    rows = np.zeros((1, 0), dtype=np.int64)
    used = np.zeros(1, dtype=np.int64)
    for _ in range(k - 1):
        counts = free - used + 1
        n_new = int(counts.sum())
        if n_new > max_rows:
            raise ResourceGuardError(f"lattice-point enumeration would exceed {max_rows} rows")
        rows = np.repeat(rows, counts, axis=0)
        base = np.repeat(np.cumsum(counts) - counts, counts)
        vals = np.arange(n_new) - base
        used = np.repeat(used, counts) + vals
        rows = np.column_stack([rows, vals])
    rows = np.column_stack([rows, free - used])
    return rows + lower


def _regular_lower_bounds(g: Graph, cone: ConeDescription) -> list[int]:
    # strict x_u > 0 at a regular vertex forces x_u >= 1
    lower = [0] * g.num_vertices
    for kind, verts in cone.tags:
        if kind == "regular":
            lower[verts[0]] = 1
    return lower


def composition_count(total: int, lower: Sequence[int]) -> int:
    free = total - sum(lower)
    return comb(free + len(lower) - 1, len(lower) - 1) if free >= 0 else 0


def composition_blocks(total: int, lower: Sequence[int], block_rows: int = 200_000):
    """``compositions`` split into blocks of at most ``block_rows`` rows, in the same order.

    Blocks are formed by fixing leading coordinates, so memory stays bounded
    whatever the total count.
    """
    lower = list(lower)
    if composition_count(total, lower) <= block_rows or len(lower) == 1:
        yield compositions(total, lower, max(block_rows, 1))
        return
    for first in range(lower[0], total - sum(lower[1:]) + 1):
        for block in composition_blocks(total - first, lower[1:], block_rows):
            yield np.column_stack([np.full(len(block), first, dtype=np.int64), block])


def _check_candidates(max_degree: int, lower, max_rows: int):
    # the top degree has the most candidates, so fail before enumerating anything
    count = composition_count(2 * max_degree, lower)
    if count > max_rows:
        raise ResourceGuardError(
            f"degree {max_degree} has {count} candidate points, above the limit {max_rows}; lower --max-degree")


def _interior_at_degree(deg: int, A: np.ndarray, lower):
    """Yield (interior points, their inequality values) block by block for one degree."""
    for pts in composition_blocks(2 * deg, lower):
        vals = pts @ A.T
        keep = np.all(vals > 0, axis=1)
        yield pts[keep], vals[keep]


def interior_lattice_points(g: Graph, max_degree: int, max_rows: int = 50_000_000) -> list[LatticePoint]:
    """Interior lattice points of degree <= max_degree, sorted by (degree, coords)."""
    _require_nonbipartite(g, "interior enumeration")
    if max_degree < 1:
        raise InputError("max_degree must be >= 1")
    cone = cone_inequalities(g)
    A = cone.matrix()
    lower = _regular_lower_bounds(g, cone)
    _check_candidates(max_degree, lower, max_rows)
    out = []
    for deg in range(1, max_degree + 1):
        for pts, _ in _interior_at_degree(deg, A, lower):
            out += [LatticePoint(tuple(int(x) for x in row)) for row in pts]
    return out


def e_tilde(h: HVector | Sequence[int]) -> int:
    """sum_{j=0}^{s-1} ((h_s + ... + h_{s-j}) - (h_0 + ... + h_j))."""
    h = list(h.trimmed() if isinstance(h, HVector) else h)
    while len(h) > 1 and h[-1] == 0:
        h.pop()
    s = len(h) - 1
    total = 0
    for j in range(s):
        total += sum(h[s - j:]) - sum(h[: j + 1])
    return total


@dataclass
class CanonicalReport:
    generators: list[LatticePoint]
    cm_type: int
    e_tilde: Optional[int]
    gorenstein: Optional[bool]
    almost_gorenstein: Optional[bool]
    degree_bound_used: int
    certified: bool
    interior_points_scanned: int = 0

    @property
    def generator_degrees(self) -> list[int]:
        return [p.degree for p in self.generators]

    def to_json(self) -> dict:
        return {
            "generators": [p.to_json() for p in self.generators],
            "generator_degrees": self.generator_degrees,
            "cm_type": self.cm_type,
            "e_tilde": self.e_tilde,
            "verdicts": {"gorenstein": self.gorenstein, "almost_gorenstein": self.almost_gorenstein},
            "degree_bound_used": self.degree_bound_used,
            "certified": self.certified,
        }


def _generator_mask(vals: np.ndarray, edge_vals: np.ndarray) -> np.ndarray:
    """Rows whose point stays interior after subtracting no edge vector."""
    reducible = np.zeros(len(vals), dtype=bool)
    for ev in edge_vals:
        reducible |= np.all(vals - ev > 0, axis=1)
    return ~reducible


def canonical_generators(
    g: Graph,
    max_degree: Optional[int] = None,
    h: Optional[HVector] = None,
    max_rows: int = 50_000_000,
    threads: int = 1,
) -> CanonicalReport:
    """Minimal generators of the canonical module up to ``max_degree``.

    The search is complete once ``max_degree`` reaches the Krull dimension:
    modulo a linear system of parameters the canonical module has Hilbert
    series sum h_i t^(d-i), so no generator lives above degree d.
    ``h`` defaults to the pipeline h-vector and feeds e_tilde and the verdicts.
    """
    _require_nonbipartite(g, "canonical module")
    occ = satisfies_odd_cycle_condition(g)
    if not occ:
        raise InputError(f"graph violates the odd cycle condition (cycles {occ.violation}); edge ring not normal")
    d = krull_dimension(g)
    if max_degree is None:
        max_degree = g.num_vertices
    if max_degree < 1:
        raise InputError("max_degree must be >= 1")
    if h is None:
        from edgering.hilbert_semigroup import h_polynomial_pipeline  # noqa: PLC0415

        h = h_polynomial_pipeline(g).h
    cone = cone_inequalities(g)
    A = cone.matrix()
    edge_vals = np.array([A @ np.array(incidence_vector(g, e)) for e in range(g.num_edges)])
    lower = _regular_lower_bounds(g, cone)
    _check_candidates(max_degree, lower, max_rows)

    def scan(deg):
        count, found = 0, []
        for pts, vals in _interior_at_degree(deg, A, lower):
            count += len(pts)
            found.append(pts[_generator_mask(vals, edge_vals)])
        return count, np.concatenate(found) if found else np.zeros((0, g.num_vertices), dtype=np.int64)

    degrees = range(1, max_degree + 1)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(scan, degrees))
    else:
        results = [scan(deg) for deg in degrees]
    gens: list[LatticePoint] = []
    scanned = 0
    for count, pts in results:
        scanned += count
        gens += [LatticePoint(tuple(int(x) for x in row)) for row in pts]
    r = len(gens)
    et = e_tilde(h)
    certified = max_degree >= d and r - 1 <= et
    return CanonicalReport(
        generators=gens,
        cm_type=r,
        e_tilde=et,
        gorenstein=h.is_symmetric,
        almost_gorenstein=(r - 1 == et),
        degree_bound_used=max_degree,
        certified=certified,
        interior_points_scanned=scanned,
    )


class Verdicts(NamedTuple):
    gorenstein: bool
    almost_gorenstein: bool
    cm_type: int
    e_tilde: int
    provisional: bool

    def to_json(self) -> dict:
        return {
            "gorenstein": self.gorenstein,
            "almost_gorenstein": self.almost_gorenstein,
            "cm_type": self.cm_type,
            "e_tilde": self.e_tilde,
            "provisional": self.provisional,
        }


def verdicts(g: Graph, report: CanonicalReport, h: HVector) -> Verdicts:
    """Gorenstein iff h is symmetric; almost Gorenstein iff r - 1 == e_tilde."""
    if not satisfies_odd_cycle_condition(g):
        raise InputError("verdicts need a normal edge ring (odd cycle condition)")
    et = e_tilde(h)
    return Verdicts(
        gorenstein=h.is_symmetric,
        almost_gorenstein=report.cm_type - 1 == et,
        cm_type=report.cm_type,
        e_tilde=et,
        provisional=not report.certified,
    )


def gn_facet_inequalities(n: int) -> list[tuple[int, ...]]:
    """The windmill cone written directly in u1/u2/w coordinates.

    Rows: c1_i >= 0, c2_i >= 0, sum(c1 + c2) >= c', and for every U subset of
    [n]: sum_U c1 + sum_notU c2 + c' >= sum_notU c1 + sum_U c2.
    Coordinates follow the vertex layout of ``build_family("Gn", [n])``.
    """
    dim = 2 * n + 1
    rows = []
    for v in range(2 * n):
        a = [0] * dim
        a[v] = 1
        rows.append(tuple(a))
    rows.append(tuple([1] * (2 * n) + [-1]))
    for mask in range(1 << n):
        a = [0] * dim
        for i in range(n):
            in_u = mask >> i & 1
            a[i] = 1 if in_u else -1
            a[n + i] = -1 if in_u else 1
        a[2 * n] = 1
        rows.append(tuple(a))
    return rows


def alpha_vector(n: int, j: int) -> tuple[int, ...]:
    """All u-coordinates 1, w-coordinate 2j."""
    return tuple([1] * (2 * n) + [2 * j])


class AlphaCheck(NamedTuple):
    n: int
    j: int
    alpha: tuple[int, ...]
    interior: bool
    irreducible: bool

    @property
    def passed(self) -> bool:
        return self.interior and self.irreducible


def alpha_witness_checks(n: int, j: int) -> AlphaCheck:
    """Strict membership in the explicit windmill cone, then the edge-subtraction test."""
    if n < 2:
        raise InputError("n must be >= 2")
    if not 1 <= j <= n - 1:
        raise InputError(f"j must satisfy 1 <= j <= n - 1 = {n - 1}, got {j}")
    alpha = alpha_vector(n, j)
    rows = gn_facet_inequalities(n)
    interior = all(sum(a * x for a, x in zip(row, alpha)) > 0 for row in rows)
    g = build_family("Gn", [n])
    irreducible = True
    for e in range(g.num_edges):
        q = tuple(a - r for a, r in zip(alpha, incidence_vector(g, e)))
        if all(sum(a * x for a, x in zip(row, q)) > 0 for row in rows):
            irreducible = False
            break
    return AlphaCheck(n, j, alpha, interior, irreducible)
