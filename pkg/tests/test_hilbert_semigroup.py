from math import comb

import pytest
from hypothesis import given, settings

from conftest import connected_graphs, four_cycle
from edgering import Graph, InputError, InvariantViolation, MonomialOrder, build_family, closed_form_h, h_polynomial_pipeline
from edgering.graph_core import krull_dimension
from edgering.hilbert_semigroup import HilbertData, hilbert_function_value, semigroup_count
from edgering.stanley_reisner import HVector

FAMILIES = (
    [("Gn", [n]) for n in range(2, 7)]
    + [("CompleteBipartite", [m, n]) for m in range(1, 5) for n in range(m, 5)]
    + [("Complete", [m]) for m in range(3, 7)]
)


def family_id(case):
    name, params = case
    return f"{name}-{'-'.join(map(str, params))}"


class TestPipeline:
    def test_windmill_three(self):
        pipe = h_polynomial_pipeline(build_family("Gn", [3]))
        assert pipe.h.trimmed() == (1, 2, 3, 1) and pipe.sources_agree and pipe.by_shelling is not None

    def test_square(self):
        pipe = h_polynomial_pipeline(build_family("CompleteBipartite", [2, 2]))
        assert pipe.h.trimmed() == (1, 1) and pipe.dim == 3

    def test_k4(self):
        pipe = h_polynomial_pipeline(build_family("Complete", [4]))
        assert pipe.h.trimmed() == (1, 2, 1) and pipe.dim == 4

    @pytest.mark.parametrize("case", FAMILIES, ids=family_id)
    def test_matches_closed_form(self, case):
        name, params = case
        pipe = h_polynomial_pipeline(build_family(name, params))
        assert pipe.h == closed_form_h(name, params)
        assert pipe.h.coefficients[0] == 1 and min(pipe.h.coefficients) >= 0
        assert sum(pipe.h.coefficients) == pipe.complex.num_facets

    def test_short_walk_bound_warns(self):
        # K4 with a pendant vertex: quadrics suffice, but the generic bound is 6
        g = Graph(5, ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4)))
        pipe = h_polynomial_pipeline(g, max_walk_length=4)
        assert any("below the completeness bound" in w for w in pipe.warnings)
        assert pipe.h == h_polynomial_pipeline(g).h

    def test_incomplete_generators_detected(self):
        # length-4 walks miss the only relation, so the complex has the wrong dimension
        with pytest.raises(InvariantViolation):
            h_polynomial_pipeline(build_family("Gn", [2]), max_walk_length=4)

    def test_order_size_mismatch(self):
        with pytest.raises(InputError):
            h_polynomial_pipeline(four_cycle(), MonomialOrder.natural(3))

    @settings(max_examples=30)
    @given(connected_graphs(max_vertices=7, max_extra=4))
    def test_random_graphs_semigroup_oracle(self, g):
        try:
            pipe = h_polynomial_pipeline(g)
        except InputError:
            return  # non-squarefree initial ideal under the natural order
        assert pipe.dim == krull_dimension(g)
        for deg in range(3):
            assert hilbert_function_value(pipe.hilbert, deg) == semigroup_count(g, deg)


class TestHilbertFunction:
    @pytest.mark.parametrize("deg, value", [(0, 1), (1, 6), (2, 21)])
    def test_windmill_two(self, deg, value):
        hd = HilbertData(HVector((1, 1, 1), 5), 5, "closed-form")
        assert hilbert_function_value(hd, deg) == value

    def test_negative_degree(self):
        with pytest.raises(InputError):
            hilbert_function_value(HilbertData(HVector((1,), 3), 3, "f-vector"), -1)

    def test_unknown_source(self):
        with pytest.raises(ValueError):
            HilbertData(HVector((1,), 3), 3, "guess")

    @pytest.mark.parametrize("case", FAMILIES, ids=family_id)
    def test_semigroup_agreement(self, case):
        name, params = case
        g = build_family(name, params)
        hd = h_polynomial_pipeline(g).hilbert
        for deg in range(4):
            assert hilbert_function_value(hd, deg) == semigroup_count(g, deg)


class TestSemigroupCount:
    def test_windmill_two(self):
        g = build_family("Gn", [2])
        assert semigroup_count(g, 1) == 6 and semigroup_count(g, 2) == 21

    def test_triangle(self):
        assert semigroup_count(build_family("Complete", [3]), 2) == comb(4, 2)

    def test_cap(self):
        with pytest.raises(Exception, match="more than"):
            semigroup_count(build_family("Complete", [5]), 3, cap=10)


class TestClosedForm:
    def test_kmn(self):
        assert closed_form_h("kmn", [2, 3]).trimmed() == (1, 2)

    def test_km(self):
        assert closed_form_h("Complete", [5]).trimmed() == (1, 5, 5)

    def test_windmill(self):
        assert closed_form_h("Gn", [4]).trimmed() == (1, 3, 6, 4, 1)

    @pytest.mark.parametrize("name, params", [("Gn", [1]), ("Complete", [2]), ("kmn", [0, 1]), ("cube", [3])])
    def test_rejects(self, name, params):
        with pytest.raises(InputError):
            closed_form_h(name, params)
