"""Stanley-Reisner complexes of squarefree monomial ideals, shellings and h-vectors.

Faces and facets are bitmasks over the vertex set (one vertex per edge
variable). Two independent routes give the h-vector: face counting
(``f_vector`` then ``h_from_f``) and the r-values of a verified shelling.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import permutations
from math import comb
from typing import NamedTuple, Optional, Sequence

from edgering.errors import InputError, ResourceGuardError
from edgering.graph_core import GnLabels
from edgering.groebner import MonomialIdeal, MonomialOrder


def bits(mask: int) -> list[int]:
    out = []
    k = 0
    while mask:
        if mask & 1:
            out.append(k)
        mask >>= 1
        k += 1
    return out


def to_mask(vertices) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class SimplicialComplex:
    num_vertices: int
    facets: tuple[int, ...]

    def __post_init__(self):
        facets = sorted(set(int(f) for f in self.facets), key=lambda f: bits(f))
        if not facets:
            raise InputError("a complex needs at least one facet")
        if any(f >> self.num_vertices for f in facets):
            raise InputError("facet uses a vertex outside the vertex set")
        for a in facets:
            for b in facets:
                if a != b and a & b == a:
                    raise InputError(f"facet {bits(a)} is contained in {bits(b)}")
        object.__setattr__(self, "facets", tuple(facets))

    @classmethod
    def from_facets(cls, num_vertices: int, facets) -> "SimplicialComplex":
        return cls(num_vertices, tuple(to_mask(f) for f in facets))

    @property
    def num_facets(self) -> int:
        return len(self.facets)

    @property
    def is_pure(self) -> bool:
        return len({f.bit_count() for f in self.facets}) == 1

    @property
    def dimension(self) -> int:
        return max(f.bit_count() for f in self.facets) - 1

    def facet_lists(self) -> list[list[int]]:
        return [bits(f) for f in self.facets]

    def cone_points(self) -> list[int]:
        common = self.facets[0]
        for f in self.facets[1:]:
            common &= f
        return bits(common)

    def suppressed_facets(self) -> list[list[int]]:
        """Facets with the vertices common to every facet removed."""
        common = to_mask(self.cone_points())
        return [bits(f & ~common) for f in self.facets]

    def to_json(self, labels: Optional[Sequence[str]] = None, suppress_cone_points: bool = False) -> dict:
        facets = self.suppressed_facets() if suppress_cone_points else self.facet_lists()
        name = (lambda v: labels[v]) if labels else (lambda v: v)
        out = {"num_vertices": self.num_vertices, "facets": [[name(v) for v in f] for f in facets]}
        if suppress_cone_points:
            out["cone_points"] = [name(v) for v in self.cone_points()]
        return out


def minimal_transversals(edges: Sequence[int]) -> list[int]:
    """Minimal hitting sets of a hypergraph (Berge's incremental algorithm)."""
    trans = [0]
    for e in edges:
        nxt = set()
        for t in trans:
            if t & e:
                nxt.add(t)
            else:
                for v in bits(e):
                    nxt.add(t | (1 << v))
        trans = _minimal_sets(nxt)
    return trans


def _minimal_sets(masks) -> list[int]:
    ordered = sorted(masks, key=lambda m: (m.bit_count(), m))
    out: list[int] = []
    for m in ordered:
        if not any(o & m == o for o in out):
            out.append(m)
    return out


def complex_from_squarefree_ideal(gens: MonomialIdeal, num_vars: int) -> SimplicialComplex:
    """Complex whose faces are the sets containing no generator's support."""
    if not gens.is_squarefree:
        raise InputError("monomial ideal is not squarefree")
    for m in gens.generators:
        if len(m) != num_vars:
            raise InputError("generator length differs from num_vars")
    full = (1 << num_vars) - 1
    supports = [to_mask(s) for s in gens.supports()]
    return SimplicialComplex(num_vars, tuple(full & ~t for t in minimal_transversals(supports)))


def gn_facets(n: int, labels: GnLabels) -> SimplicialComplex:
    """Closed-form facets of the windmill initial complex, cone points x_n, y_n, z_1 included."""
    if n < 2:
        raise InputError(f"n must be >= 2, got {n}")
    x, y, z = labels.x, labels.y, labels.z
    cone = (1 << x[n - 1]) | (1 << y[n - 1]) | (1 << z[0])
    facets = []
    # 0-based i here is triangle i+1; j runs 1..n as in the 1-based description
    for j in range(1, n + 1):
        fixed = cone
        for i in range(j - 1, n - 1):
            fixed |= (1 << x[i]) | (1 << y[i])
        for k in range(1, j):
            fixed |= 1 << z[k]
        for choice in range(1 << (j - 1)):
            f = fixed
            for i in range(j - 1):
                f |= 1 << (y[i] if choice >> i & 1 else x[i])
            facets.append(f)
    return SimplicialComplex(3 * n, tuple(facets))


def f_vector(c: SimplicialComplex, max_vertices: int = 25) -> list[int]:
    """(f_-1, f_0, ..., f_dim) by depth-first enumeration of faces."""
    if c.num_vertices > max_vertices:
        raise ResourceGuardError(f"{c.num_vertices} vertices exceeds the exhaustive limit {max_vertices}")
    counts = [0] * (c.dimension + 2)
    all_facets = (1 << c.num_facets) - 1
    # containing[v] = bitmask of facets containing vertex v
    containing = [0] * c.num_vertices
    for k, f in enumerate(c.facets):
        for v in bits(f):
            containing[v] |= 1 << k

    def walk(start, size, live):
        counts[size] += 1
        for v in range(start, c.num_vertices):
            nxt = live & containing[v]
            if nxt:
                walk(v + 1, size + 1, nxt)

    walk(0, 0, all_facets)
    return counts


@dataclass(frozen=True)
class HVector:
    """h_0..h_d, stored padded to length d + 1."""

    coefficients: tuple[int, ...]
    dim: int

    def __post_init__(self):
        coeffs = list(self.coefficients)
        while len(coeffs) > self.dim + 1 and coeffs[-1] == 0:
            coeffs.pop()
        if len(coeffs) > self.dim + 1:
            raise InputError(f"h-vector {self.coefficients} longer than dim + 1 = {self.dim + 1}")
        coeffs += [0] * (self.dim + 1 - len(coeffs))
        object.__setattr__(self, "coefficients", tuple(coeffs))

    def trimmed(self) -> tuple[int, ...]:
        coeffs = list(self.coefficients)
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        return tuple(coeffs)

    @property
    def is_symmetric(self) -> bool:
        h = self.trimmed()
        return h == h[::-1]

    def __iter__(self):
        return iter(self.trimmed())

    def __len__(self):
        return len(self.trimmed())

    def __getitem__(self, i):
        return self.trimmed()[i]


def h_from_f(f: Sequence[int], d: int) -> HVector:
    """Coefficients of sum_i f_{i-1} t^i (1 - t)^(d - i)."""
    if d != len(f) - 1:
        raise InputError(f"dimension mismatch: d={d} but f-vector has length {len(f)}")
    h = [0] * (d + 1)
    for i, fi in enumerate(f):
        for k in range(d - i + 1):
            h[i + k] += fi * comb(d - i, k) * (-1) ** k
    return HVector(tuple(h), d)


class ShellingReport(NamedTuple):
    order: tuple[int, ...]
    r_values: tuple[int, ...]
    valid: bool
    failure_step: Optional[int]

    def delta(self) -> Counter:
        """Multiset of r-values from the second facet on."""
        return Counter(self.r_values[1:])


def verify_shelling(c: SimplicialComplex, order: Sequence[int]) -> ShellingReport:
    """Check a facet order (indices into ``c.facets``) step by step.

    At step i, the covered vertices are those v with F_i minus v inside an
    earlier facet. The step is valid when some vertex is covered and every
    earlier facet misses at least one covered vertex; r_i counts the covered
    vertices. ``failure_step`` is 1-based.
    """
    if not c.is_pure:
        raise InputError("shelling verification needs a pure complex")
    order = tuple(order)
    if sorted(order) != list(range(c.num_facets)):
        raise InputError("order is not a permutation of the facets")
    facets = [c.facets[k] for k in order]
    r = [0]
    for i in range(1, len(facets)):
        fi = facets[i]
        covered = 0
        for v in bits(fi):
            ridge = fi & ~(1 << v)
            if any(ridge & fk == ridge for fk in facets[:i]):
                covered |= 1 << v
        if not covered or any(not (covered & ~fj) for fj in facets[:i]):
            return ShellingReport(order, tuple(r), False, i + 1)
        r.append(covered.bit_count())
    return ShellingReport(order, tuple(r), True, None)


def lex_facet_order(c: SimplicialComplex, order: Optional[MonomialOrder] = None) -> list[int]:
    """Facet indices sorted by their vertex tuples, read in increasing variable priority."""
    rank = order.rank() if order else list(range(c.num_vertices))
    if len(rank) != c.num_vertices:
        raise InputError("order and complex have different vertex counts")
    keys = [tuple(sorted(rank[v] for v in bits(f))) for f in c.facets]
    return sorted(range(c.num_facets), key=lambda k: keys[k])


def h_from_shelling(report: ShellingReport, d: int) -> HVector:
    if not report.valid:
        raise InputError(f"not a shelling (fails at step {report.failure_step})")
    h = [0] * (d + 1)
    for r in report.r_values:
        if r > d:
            raise InputError(f"r-value {r} exceeds d={d}")
        h[r] += 1
    return HVector(tuple(h), d)


def find_shelling(c: SimplicialComplex, max_facets: int = 8) -> Optional[ShellingReport]:
    """Exhaustive search over facet orders; small complexes only."""
    if c.num_facets > max_facets:
        raise ResourceGuardError(f"{c.num_facets} facets exceeds the search limit {max_facets}")
    for perm in permutations(range(c.num_facets)):
        report = verify_shelling(c, perm)
        if report.valid:
            return report
    return None
