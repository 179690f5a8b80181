"""Binomials of the toric ideal of a graph.

A walk-derived binomial is a relation among edge vectors; generators are
produced by enumerating even closed walks up to a length bound and keeping
the primitive ones, or in closed form for the windmill family.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from edgering.errors import InputError, ResourceGuardError
from edgering.graph_core import Graph, GnLabels, is_bipartite

Monomial = tuple[int, ...]


def monomial_degree(m: Monomial) -> int:
    return sum(m)


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def render_monomial(m: Monomial, labels: Optional[Sequence[str]] = None) -> str:
    parts = []
    for k, e in enumerate(m):
        if e:
            name = labels[k] if labels else f"e{k}"
            parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts) if parts else "1"


@dataclass(frozen=True)
class Binomial:
    """The pure difference ``plus - minus`` of two monomials."""

    plus: Monomial
    minus: Monomial

    def __post_init__(self):
        if len(self.plus) != len(self.minus):
            raise ValueError("binomial sides have different lengths")
        if self.plus == self.minus:
            raise ValueError("binomial with equal sides is zero")

    @property
    def num_vars(self) -> int:
        return len(self.plus)

    @property
    def is_homogeneous(self) -> bool:
        return sum(self.plus) == sum(self.minus)

    def normalized(self) -> "Binomial":
        """Divide out the gcd of the two sides."""
        common = [min(a, b) for a, b in zip(self.plus, self.minus)]
        if not any(common):
            return self
        return Binomial(
            tuple(a - c for a, c in zip(self.plus, common)),
            tuple(b - c for b, c in zip(self.minus, common)),
        )

    def negated(self) -> "Binomial":
        return Binomial(self.minus, self.plus)

    def canonical(self) -> "Binomial":
        """Orientation with the lexicographically larger exponent vector first."""
        return self if self.plus > self.minus else self.negated()

    def sides(self) -> frozenset[Monomial]:
        return frozenset((self.plus, self.minus))

    def is_relation(self, g: Graph) -> bool:
        """True when sum over edges of (plus_e - minus_e) * rho(e) vanishes."""
        total = [0] * g.num_vertices
        for k, (u, v) in enumerate(g.edges):
            c = self.plus[k] - self.minus[k]
            total[u] += c
            total[v] += c
        return not any(total)

    def render(self, labels: Optional[Sequence[str]] = None) -> str:
        return f"{render_monomial(self.plus, labels)} - {render_monomial(self.minus, labels)}"

    def to_json(self) -> dict:
        return {"plus": list(self.plus), "minus": list(self.minus)}

    @classmethod
    def from_json(cls, data: dict) -> "Binomial":
        return cls(tuple(int(a) for a in data["plus"]), tuple(int(b) for b in data["minus"]))


def binomial_sort_key(b: Binomial):
    """Descending lexicographic on (plus, minus); puts x1y1z2 - ... first."""
    return tuple(-a for a in b.plus) + tuple(-a for a in b.minus)


def incidence_vector(g: Graph, e: int) -> tuple[int, ...]:
    if not 0 <= e < g.num_edges:
        raise InputError(f"edge index {e} out of range 0..{g.num_edges - 1}")
    u, v = g.edges[e]
    vec = [0] * g.num_vertices
    vec[u] = vec[v] = 1
    return tuple(vec)


def walk_vertices(g: Graph, walk: Sequence[int]) -> tuple[int, ...]:
    """Vertices shared by consecutive edges of a closed edge walk.

    Raises ``InputError`` unless consecutive edges (cyclically) meet in exactly
    one vertex and the shared vertices actually trace a closed walk.
    """
    r = len(walk)
    if r < 2:
        raise InputError("walk needs at least two edges")
    for e in walk:
        if not 0 <= e < g.num_edges:
            raise InputError(f"edge index {e} out of range")
    shared = []
    for j in range(r):
        a, b = set(g.edges[walk[j]]), set(g.edges[walk[(j + 1) % r]])
        common = a & b
        if len(common) != 1:
            raise InputError(f"edges {walk[j]} and {walk[(j + 1) % r]} do not meet in exactly one vertex")
        shared.append(next(iter(common)))
    # edge j must join the vertex shared with its predecessor to the one shared with its successor
    for j in range(r):
        if shared[j - 1] == shared[j]:
            raise InputError(f"edge {walk[j]} is entered and left through the same vertex")
    return tuple(shared)


def walk_binomial(g: Graph, walk: Sequence[int]) -> Optional[Binomial]:
    """Binomial of an even closed walk, gcd-normalized; None if it cancels to zero."""
    if len(walk) % 2:
        raise InputError("walk length must be even")
    walk_vertices(g, walk)
    plus = [0] * g.num_edges
    minus = [0] * g.num_edges
    for j, e in enumerate(walk):
        (plus if j % 2 == 0 else minus)[e] += 1
    if plus == minus:
        return None
    return Binomial(tuple(plus), tuple(minus)).normalized()


def default_walk_bound(g: Graph) -> int:
    """Length bound for walk enumeration.

    Built-in families use known bounds: 6 for the windmill graph, 4 for
    complete and complete bipartite graphs (their toric ideals are generated
    by quadrics). Otherwise the bound covers every primitive walk: even
    cycles have length at most |V|, and two odd cycles joined through a vertex
    or a path give length at most 2|V| - 4.
    """
    if g.gn_labels is not None:
        return 6
    if g.name.startswith("K_"):
        return 4
    if is_bipartite(g).is_bipartite:
        bound = g.num_vertices
    else:
        bound = 2 * g.num_vertices - 4
    bound = min(bound, 2 * g.num_edges)
    return max(4, bound - bound % 2)


def closed_walks(g: Graph, max_walk_length: int, max_walks: Optional[int] = None):
    """Yield even closed walks (as edge tuples) of length at most the bound.

    Each walk starts at its smallest vertex; rotations that start elsewhere
    give the same binomial up to sign and are not produced. Consecutive edges
    are always distinct, including the wraparound pair.
    """
    adj = g.adjacency
    eidx = g.edge_index
    count = 0
    for s in range(g.num_vertices):
        allowed = [v >= s for v in range(g.num_vertices)]
        dist = _distances(adj, s, allowed)
        path_edges: list[int] = []

        def dfs(u):
            nonlocal count
            depth = len(path_edges)
            for v in sorted(adj[u]):
                if not allowed[v]:
                    continue
                e = eidx[(u, v)]
                if path_edges and e == path_edges[-1]:
                    continue
                remaining = max_walk_length - depth - 1
                if dist[v] > remaining:
                    continue
                path_edges.append(e)
                if v == s and (depth + 1) % 2 == 0 and e != path_edges[0]:
                    count += 1
                    if max_walks is not None and count > max_walks:
                        raise ResourceGuardError(
                            f"more than {max_walks} closed walks of length <= {max_walk_length}")
                    yield tuple(path_edges)
                if remaining > 0:
                    yield from dfs(v)
                path_edges.pop()

        yield from dfs(s)


def _distances(adj, s, allowed) -> list[float]:
    dist = [float("inf")] * len(adj)
    dist[s] = 0
    frontier = [s]
    while frontier:
        nxt = []
        for u in frontier:
            for v in adj[u]:
                if allowed[v] and dist[v] == float("inf"):
                    dist[v] = dist[u] + 1
                    nxt.append(v)
        frontier = nxt
    return dist


def primitive_filter(binomials: Iterable[Binomial]) -> list[Binomial]:
    """Drop every binomial whose sides are divided side-by-side by another one's."""
    pool = sorted({b.canonical() for b in binomials}, key=binomial_sort_key)
    keep = []
    for b in pool:
        dominated = False
        for c in pool:
            if c == b:
                continue
            if (divides(c.plus, b.plus) and divides(c.minus, b.minus)) or (
                divides(c.minus, b.plus) and divides(c.plus, b.minus)
            ):
                dominated = True
                break
        if not dominated:
            keep.append(b)
    return keep


def toric_generators(
    g: Graph, max_walk_length: Optional[int] = None, max_walks: Optional[int] = 5_000_000
) -> list[Binomial]:
    """Primitive binomials among the walks of length at most ``max_walk_length``.

    The result generates the toric ideal when the bound covers every
    primitive walk of ``g`` (see ``default_walk_bound``).
    """
    if max_walk_length is None:
        max_walk_length = default_walk_bound(g)
    if max_walk_length < 4 or max_walk_length % 2:
        raise InputError(f"max_walk_length must be even and >= 4, got {max_walk_length}")
    produced = set()
    for walk in closed_walks(g, max_walk_length, max_walks):
        plus = [0] * g.num_edges
        minus = [0] * g.num_edges
        for j, e in enumerate(walk):
            (plus if j % 2 == 0 else minus)[e] += 1
        if plus != minus:
            produced.add(Binomial(tuple(plus), tuple(minus)).normalized().canonical())
    return primitive_filter(produced)


def gn_generators(n: int, labels: GnLabels) -> list[Binomial]:
    """x_i y_i z_j - z_i x_j y_j for 1 <= i < j <= n, in (i, j) order."""
    if n < 2:
        raise InputError(f"n must be >= 2, got {n}")
    if labels.n != n:
        raise InputError(f"labels are for n={labels.n}, not n={n}")
    m = 3 * n
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            plus = [0] * m
            minus = [0] * m
            for k in (labels.x[i], labels.y[i], labels.z[j]):
                plus[k] = 1
            for k in (labels.z[i], labels.x[j], labels.y[j]):
                minus[k] = 1
            out.append(Binomial(tuple(plus), tuple(minus)))
    return out
