"""Graphs, the built-in families, and the predicates feeding the cone description.

Vertices are ``0..num_vertices-1``; edge ``k`` is always the ``k``-th pair of
``Graph.edges``. Graphs are immutable and must be connected, loopless and
simple.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from pathlib import Path
from typing import NamedTuple, Optional, Sequence

from edgering.errors import InputError

FAMILIES = ("Gn", "CompleteBipartite", "Complete")

_FAMILY_ALIASES = {
    "gn": "Gn",
    "g": "Gn",
    "completebipartite": "CompleteBipartite",
    "kmn": "CompleteBipartite",
    "complete": "Complete",
    "km": "Complete",
}


@dataclass(frozen=True)
class GnLabels:
    """Vertex and edge indices of the n-triangle windmill graph.

    ``x[i] = {w, u1[i]}``, ``y[i] = {w, u2[i]}``, ``z[i] = {u1[i], u2[i]}``,
    with ``i`` running over ``0..n-1`` (triangle ``i+1`` in 1-based naming).
    """

    n: int
    w: int
    u1: tuple[int, ...]
    u2: tuple[int, ...]
    x: tuple[int, ...]
    y: tuple[int, ...]
    z: tuple[int, ...]

    def triangle_priority(self) -> list[int]:
        """Edge variables smallest to largest: x1 < y1 < z1 < ... < zn."""
        order = []
        for i in range(self.n):
            order += [self.x[i], self.y[i], self.z[i]]
        return order


@dataclass(frozen=True)
class Graph:
    num_vertices: int
    edges: tuple[tuple[int, int], ...]
    vertex_labels: Optional[tuple[str, ...]] = None
    edge_labels: Optional[tuple[str, ...]] = None
    name: str = ""
    gn_labels: Optional[GnLabels] = field(default=None, compare=False)

    def __post_init__(self):
        d = self.num_vertices
        if not isinstance(d, int) or d < 2:
            raise InputError(f"num_vertices must be an integer >= 2, got {d!r}")
        norm = []
        seen = set()
        for e in self.edges:
            if len(e) != 2:
                raise InputError(f"edge {e!r} is not a vertex pair")
            u, v = int(e[0]), int(e[1])
            if not (0 <= u < d and 0 <= v < d):
                raise InputError(f"edge {e!r} has a vertex outside 0..{d - 1}")
            if u == v:
                raise InputError(f"loop at vertex {u}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise InputError(f"multi-edge {key}")
            seen.add(key)
            norm.append(key)
        if not norm:
            raise InputError("graph has no edges")
        object.__setattr__(self, "edges", tuple(norm))
        for attr, size in (("vertex_labels", d), ("edge_labels", len(norm))):
            labels = getattr(self, attr)
            if labels is not None:
                labels = tuple(str(s) for s in labels)
                if len(labels) != size:
                    raise InputError(f"{attr} has {len(labels)} entries, expected {size}")
                object.__setattr__(self, attr, labels)
        if len(_components(self.adjacency, range(d))) != 1:
            raise InputError("graph is disconnected")

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        adj = [set() for _ in range(self.num_vertices)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return tuple(frozenset(a) for a in adj)

    @cached_property
    def edge_index(self) -> dict[tuple[int, int], int]:
        out = {}
        for k, (u, v) in enumerate(self.edges):
            out[(u, v)] = k
            out[(v, u)] = k
        return out

    def vertex_label(self, v: int) -> str:
        return self.vertex_labels[v] if self.vertex_labels else str(v)

    def edge_label(self, k: int) -> str:
        return self.edge_labels[k] if self.edge_labels else f"e{k}"

    def to_json(self) -> dict:
        out = {"num_vertices": self.num_vertices, "edges": [list(e) for e in self.edges]}
        if self.vertex_labels:
            out["vertex_labels"] = list(self.vertex_labels)
        if self.edge_labels:
            out["edge_labels"] = list(self.edge_labels)
        return out

    @classmethod
    def from_json(cls, data: dict) -> "Graph":
        if not isinstance(data, dict) or "num_vertices" not in data or "edges" not in data:
            raise InputError("graph JSON needs 'num_vertices' and 'edges'")
        try:
            edges = tuple(tuple(e) for e in data["edges"])
        except TypeError as exc:
            raise InputError(f"bad edge list: {exc}") from None
        return cls(
            num_vertices=data["num_vertices"],
            edges=edges,
            vertex_labels=data.get("vertex_labels"),
            edge_labels=data.get("edge_labels"),
        )

    @classmethod
    def load(cls, path: str | Path) -> "Graph":
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise InputError(f"cannot read {path}: {exc.strerror}") from None
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"{path} is not valid JSON: {exc}") from None
        return cls.from_json(data)


def _components(adj: Sequence[frozenset[int]], vertices) -> list[list[int]]:
    """Connected components of the subgraph induced on ``vertices``."""
    allowed = set(vertices)
    comps = []
    seen = set()
    for s in sorted(allowed):
        if s in seen:
            continue
        comp = [s]
        seen.add(s)
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                if v in allowed and v not in seen:
                    seen.add(v)
                    comp.append(v)
                    queue.append(v)
        comps.append(sorted(comp))
    return comps


def family_name(name: str) -> str:
    """Canonical family id; accepts the CLI spellings gn, kmn, km."""
    return _FAMILY_ALIASES.get(name.lower().replace("_", "").replace("-", ""), name)


def build_family(name: str, params: Sequence[int]) -> Graph:
    """Build ``Gn`` (params ``[n]``), ``CompleteBipartite`` (``[m, n]``) or ``Complete`` (``[m]``)."""
    family = family_name(name)
    params = [int(p) for p in params]
    if family == "Gn":
        if len(params) != 1 or params[0] < 2:
            raise InputError(f"Gn needs a single parameter n >= 2, got {params}")
        return _windmill(params[0])
    if family == "CompleteBipartite":
        if len(params) != 2 or min(params) < 1:
            raise InputError(f"CompleteBipartite needs m, n >= 1, got {params}")
        m, n = params
        edges = [(i, m + j) for i in range(m) for j in range(n)]
        vlab = [f"a{i + 1}" for i in range(m)] + [f"b{j + 1}" for j in range(n)]
        elab = [f"a{i + 1}b{j + 1}" for i in range(m) for j in range(n)]
        return Graph(m + n, tuple(edges), tuple(vlab), tuple(elab), name=f"K_{{{m},{n}}}")
    if family == "Complete":
        if len(params) != 1 or params[0] < 3:
            raise InputError(f"Complete needs a single parameter m >= 3, got {params}")
        m = params[0]
        edges = list(combinations(range(m), 2))
        elab = [f"e{u + 1}_{v + 1}" for u, v in edges]
        vlab = [f"v{i + 1}" for i in range(m)]
        return Graph(m, tuple(edges), tuple(vlab), tuple(elab), name=f"K_{m}")
    raise InputError(f"unknown family {name!r}; expected one of {', '.join(FAMILIES)}")


def _windmill(n: int) -> Graph:
    # vertex layout: u1_1..u1_n, u2_1..u2_n, w
    u1 = tuple(range(n))
    u2 = tuple(range(n, 2 * n))
    w = 2 * n
    edges, elab = [], []
    x, y, z = [], [], []
    for i in range(n):
        x.append(len(edges))
        edges.append((w, u1[i]))
        y.append(len(edges))
        edges.append((w, u2[i]))
        z.append(len(edges))
        edges.append((u1[i], u2[i]))
        elab += [f"x{i + 1}", f"y{i + 1}", f"z{i + 1}"]
    vlab = [f"u{i + 1}_1" for i in range(n)] + [f"u{i + 1}_2" for i in range(n)] + ["w"]
    labels = GnLabels(n, w, u1, u2, tuple(x), tuple(y), tuple(z))
    return Graph(2 * n + 1, tuple(edges), tuple(vlab), tuple(elab), name=f"G_{n}", gn_labels=labels)


class BipartiteResult(NamedTuple):
    is_bipartite: bool
    coloring: Optional[tuple[int, ...]]
    odd_cycle: Optional[tuple[int, ...]]

    def __bool__(self):
        return self.is_bipartite


def is_bipartite(g: Graph) -> BipartiteResult:
    """2-color by BFS; on failure return an odd cycle through the clashing edge."""
    color = [-1] * g.num_vertices
    parent = [-1] * g.num_vertices
    color[0] = 0
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for v in sorted(g.adjacency[u]):
            if color[v] < 0:
                color[v] = 1 - color[u]
                parent[v] = u
                queue.append(v)
            elif color[v] == color[u]:
                return BipartiteResult(False, None, _tree_cycle(parent, u, v))
    return BipartiteResult(True, tuple(color), None)


def _tree_cycle(parent: list[int], u: int, v: int) -> tuple[int, ...]:
    def root_path(a):
        path = [a]
        while parent[path[-1]] >= 0:
            path.append(parent[path[-1]])
        return path

    pu, pv = root_path(u), root_path(v)
    on_pv = set(pv)
    lca = next(a for a in pu if a in on_pv)
    left = pu[: pu.index(lca) + 1]
    right = pv[: pv.index(lca)]
    return tuple(left + right[::-1])


def _has_odd_cycle(adj: Sequence[frozenset[int]], comp: Sequence[int]) -> bool:
    allowed = set(comp)
    color = {comp[0]: 0}
    queue = deque([comp[0]])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if v not in allowed:
                continue
            if v not in color:
                color[v] = 1 - color[u]
                queue.append(v)
            elif color[v] == color[u]:
                return True
    return False


def regular_vertices(g: Graph) -> frozenset[int]:
    """Vertices v such that every component of G minus v contains an odd cycle."""
    out = set()
    for v in range(g.num_vertices):
        rest = [u for u in range(g.num_vertices) if u != v]
        comps = _components(g.adjacency, rest)
        if all(_has_odd_cycle(g.adjacency, c) for c in comps):
            out.add(v)
    return frozenset(out)


def _independent_sets(g: Graph):
    d = g.num_vertices

    def extend(start, current, blocked):
        for v in range(start, d):
            if v in blocked:
                continue
            nxt = current + [v]
            yield nxt
            yield from extend(v + 1, nxt, blocked | g.adjacency[v])

    yield from extend(0, [], frozenset())


def neighborhood(g: Graph, vertices) -> frozenset[int]:
    out = set()
    for v in vertices:
        out |= g.adjacency[v]
    return frozenset(out)


def is_fundamental_set(g: Graph, t) -> bool:
    t = frozenset(t)
    if not t or any(g.adjacency[u] & t for u in t):
        return False
    nt = neighborhood(g, t)
    # bipartite graph between T and N(T) must be connected
    cross = [frozenset((g.adjacency[v] & nt) if v in t else (g.adjacency[v] & t))
             for v in range(g.num_vertices)]
    if len(_components(cross, t | nt)) != 1:
        return False
    rest = [v for v in range(g.num_vertices) if v not in t and v not in nt]
    return all(_has_odd_cycle(g.adjacency, c) for c in _components(g.adjacency, rest))


def fundamental_sets(g: Graph) -> list[frozenset[int]]:
    """All fundamental sets, sorted by their sorted vertex tuples."""
    if g.num_vertices > 24:
        raise InputError("fundamental_sets enumerates independent sets; graph too large")
    found = [frozenset(t) for t in _independent_sets(g) if is_fundamental_set(g, t)]
    return sorted(found, key=lambda s: tuple(sorted(s)))


def chordless_cycles(g: Graph, parity: Optional[int] = None) -> list[tuple[int, ...]]:
    """Induced cycles, each reported once, starting at its smallest vertex.

    ``parity=1`` keeps only odd cycles, ``parity=0`` only even ones.
    """
    adj = g.adjacency
    cycles = []

    def grow(path, on_path):
        s, last = path[0], path[-1]
        for v in sorted(adj[last]):
            if v <= s or v in on_path:
                continue
            if any(v in adj[p] for p in path[1:-1]):
                continue
            if len(path) >= 2 and s in adj[v]:
                if path[1] < v:
                    cycles.append(tuple(path) + (v,))
                continue
            path.append(v)
            on_path.add(v)
            grow(path, on_path)
            path.pop()
            on_path.discard(v)

    for s in range(g.num_vertices):
        grow([s], {s})
    if parity is not None:
        cycles = [c for c in cycles if len(c) % 2 == parity]
    return sorted(cycles, key=lambda c: (len(c), c))


class OddCycleResult(NamedTuple):
    satisfied: bool
    violation: Optional[tuple[tuple[int, ...], tuple[int, ...]]]

    def __bool__(self):
        return self.satisfied


def satisfies_odd_cycle_condition(g: Graph) -> OddCycleResult:
    """Every two vertex-disjoint odd cycles must be joined by an edge.

    Checking induced odd cycles suffices: a chord of an odd cycle splits off a
    shorter odd cycle on a subset of its vertices.
    """
    odd = chordless_cycles(g, parity=1)
    for c1, c2 in combinations(odd, 2):
        s1, s2 = set(c1), set(c2)
        if s1 & s2:
            continue
        if not any(g.adjacency[v] & s2 for v in s1):
            return OddCycleResult(False, (c1, c2))
    return OddCycleResult(True, None)


def krull_dimension(g: Graph) -> int:
    return g.num_vertices - 1 if is_bipartite(g).is_bipartite else g.num_vertices
