import sys

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from edgering import Graph

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def connected_graphs(draw, min_vertices=3, max_vertices=7, max_extra=6):
    """Random spanning tree plus extra edges."""
    n = draw(st.integers(min_vertices, max_vertices))
    edges = set()
    for v in range(1, n):
        u = draw(st.integers(0, v - 1))
        edges.add((u, v))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in edges]
    if pairs:
        extra = draw(st.lists(st.sampled_from(pairs), max_size=max_extra, unique=True))
        edges |= set(extra)
    return Graph(n, tuple(sorted(edges)))


def two_triangles_on_a_path() -> Graph:
    """Triangles 0-1-2 and 4-5-6 joined through vertex 3; no edge between the triangles."""
    return Graph(7, ((0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 6)))


def four_cycle() -> Graph:
    return Graph(4, ((0, 1), (1, 2), (2, 3), (0, 3)))


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    if acceptance is not None and acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in acceptance.RESULTS:
            terminalreporter.write_line(line)
