import random
from math import comb

import pytest
from hypothesis import given

import oracles
from conftest import connected_graphs, four_cycle
from edgering import Binomial, InputError, build_family, gn_generators, toric_generators
from edgering.toric_ideal import (
    closed_walks,
    default_walk_bound,
    incidence_vector,
    primitive_filter,
    walk_binomial,
)


def windmill(n):
    g = build_family("Gn", [n])
    return g, g.gn_labels


class TestIncidenceVector:
    def test_triangle_edge(self):
        g = build_family("Complete", [3])
        k = g.edges.index((0, 1))
        assert incidence_vector(g, k) == (1, 1, 0)

    def test_windmill_z_edge(self):
        g, lab = windmill(2)
        vec = incidence_vector(g, lab.z[0])
        assert vec[lab.u1[0]] == vec[lab.u2[0]] == 1 and vec[lab.w] == 0 and sum(vec) == 2

    def test_triangle_degree_sum(self):
        g = build_family("Complete", [3])
        total = [sum(col) for col in zip(*(incidence_vector(g, e) for e in range(3)))]
        assert total == [2, 2, 2]

    def test_out_of_range(self):
        with pytest.raises(InputError):
            incidence_vector(four_cycle(), 4)


class TestWalkBinomial:
    def test_four_cycle(self):
        g = four_cycle()
        b = walk_binomial(g, [0, 1, 2, 3])
        assert b == oracles.binomial((1, 0, 1, 0), (0, 1, 0, 1))

    def test_back_and_forth_is_degenerate(self):
        g = four_cycle()
        with pytest.raises(InputError):
            walk_binomial(g, [0, 1, 0, 1])
        g = build_family("Complete", [3])
        assert walk_binomial(g, [0, 1, 2, 0, 1, 2]) is None

    def test_two_triangles(self):
        g, lab = windmill(3)
        i, j = 0, 2
        b = walk_binomial(g, [lab.x[i], lab.z[i], lab.y[i], lab.x[j], lab.z[j], lab.y[j]])
        plus = {lab.x[i], lab.y[i], lab.z[j]}
        minus = {lab.z[i], lab.x[j], lab.y[j]}
        assert b.sides() == {tuple(int(k in plus) for k in range(9)), tuple(int(k in minus) for k in range(9))}

    @pytest.mark.parametrize("walk", [[0, 2], [0, 1, 2], [0, 1, 2, 4]])
    def test_invalid_walks(self, walk):
        with pytest.raises(InputError):
            walk_binomial(build_family("Gn", [2]), walk)


class TestToricGenerators:
    def test_windmill_two(self):
        g, lab = windmill(2)
        assert toric_generators(g, 6) == gn_generators(2, lab)

    def test_triangle_zero_ideal(self):
        assert toric_generators(build_family("Complete", [3]), 6) == []

    def test_four_cycle(self):
        assert toric_generators(four_cycle(), 4) == [oracles.binomial((1, 0, 1, 0), (0, 1, 0, 1))]

    @pytest.mark.parametrize("n", range(2, 6))
    def test_matches_closed_form(self, n):
        g, lab = windmill(n)
        assert set(toric_generators(g, 6)) == set(gn_generators(n, lab))

    @pytest.mark.parametrize("bound", [3, 5, 2])
    def test_bad_bound(self, bound):
        with pytest.raises(InputError):
            toric_generators(four_cycle(), bound)

    @given(connected_graphs(max_vertices=6, max_extra=4))
    def test_relations_and_homogeneity(self, g):
        for b in toric_generators(g):
            assert b.is_relation(g)
            assert b.is_homogeneous
            assert not any(p and q for p, q in zip(b.plus, b.minus))

    @given(connected_graphs(max_vertices=6, max_extra=4))
    def test_walk_binomials_are_homogeneous_relations(self, g):
        for walk in closed_walks(g, 6, max_walks=2000):
            assert len(walk) % 2 == 0
            b = walk_binomial(g, walk)
            assert b is None or (b.is_relation(g) and b.is_homogeneous)

    @given(connected_graphs(max_vertices=6, max_extra=4))
    def test_primitive_filter_order_independent(self, g):
        produced = []
        for walk in closed_walks(g, 6, max_walks=2000):
            b = walk_binomial(g, walk)
            if b is not None:
                produced.append(b)
        shuffled = list(produced)
        random.Random(len(produced)).shuffle(shuffled)
        flipped = [b.negated() for b in shuffled]
        assert primitive_filter(produced) == primitive_filter(shuffled) == primitive_filter(flipped)


class TestClosedForm:
    def test_n3(self):
        g, lab = windmill(3)
        names = [g.edge_label(k) for k in range(g.num_edges)]
        rendered = [b.render(names) for b in gn_generators(3, lab)]
        assert rendered == ["x1*y1*z2 - z1*x2*y2", "x1*y1*z3 - z1*x3*y3", "x2*y2*z3 - z2*x3*y3"]

    @pytest.mark.parametrize("n", range(2, 7))
    def test_count(self, n):
        assert len(gn_generators(n, windmill(n)[1])) == comb(n, 2)

    def test_rejects_small_n(self):
        with pytest.raises(InputError):
            gn_generators(1, windmill(2)[1])


class TestBinomial:
    def test_equal_sides_rejected(self):
        with pytest.raises(ValueError):
            Binomial((1, 0), (1, 0))

    def test_json_roundtrip(self):
        b = oracles.binomial((1, 0, 2), (0, 3, 0))
        assert Binomial.from_json(b.to_json()) == b

    def test_normalized(self):
        b = oracles.binomial((2, 1, 0), (1, 0, 2)).normalized()
        assert b == oracles.binomial((1, 1, 0), (0, 0, 2))


@pytest.mark.parametrize("name, params, bound", [
    ("Gn", [4], 6), ("Complete", [5], 4), ("CompleteBipartite", [3, 3], 4),
])
def test_family_bounds(name, params, bound):
    assert default_walk_bound(build_family(name, params)) == bound
