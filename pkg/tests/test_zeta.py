import time

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from covers.constructions import edge_adjacency_matrix
from covers.errors import DegreeBoundExceeded, InvalidParameter, SearchTimeout
from covers.graph_core import generate, predicates
from covers.report import FAIL, PASS
from covers.spectral import IntPoly
from covers.zeta import (BASS, HASHIMOTO, bareiss_det, closed_nb_walks, cover_zetas, factorization_parts, g_poly,
                         nb_walk_trace, poly_det, quadratic_pencil, verify_factorizations, zeta_cross_check,
                         zeta_reciprocal_bass, zeta_reciprocal_hashimoto)
from tests.oracles import cofactor_det
from tests.strategies import small_graphs


def cycle_zeta(n):
    return IntPoly([1] + [0] * (n - 1) + [-1]) ** 2


@pytest.mark.parametrize("n", range(3, 9))
def test_cycle_zeta(n):
    g = generate("cycle", n)
    # Bass pencil for a 2-regular graph: det(I - Au + Iu^2), prefactor exponent 0
    symbolic = cofactor_det(quadratic_pencil(g.adjacency_matrix(), np.eye(n, dtype=np.int64)))
    assert symbolic == cycle_zeta(n)
    assert zeta_reciprocal_hashimoto(g).poly == symbolic
    assert zeta_reciprocal_bass(g).poly == symbolic


@pytest.mark.parametrize("n", [3, 4, 5])
def test_cycle_zeta_against_symbolic_hashimoto(n):
    g = generate("cycle", n)
    entries = edge_adjacency_matrix(g).entries
    pencil = [[IntPoly([1 if i == j else 0, -int(entries[i, j])]) for j in range(2 * n)] for i in range(2 * n)]
    assert cofactor_det(pencil) == zeta_reciprocal_hashimoto(g).poly


def test_triangle_zeta_text():
    assert str(zeta_reciprocal_hashimoto(generate("cycle", 3)).poly) == "1 - 2u^3 + u^6"


@pytest.mark.parametrize("g", [generate("path", 4), generate("star", 3), generate("empty", 1)])
def test_forest_zeta_is_one(g):
    hashimoto = zeta_reciprocal_hashimoto(g)
    bass = zeta_reciprocal_bass(g)
    assert hashimoto.poly == IntPoly([1])
    assert bass.poly == IntPoly([1])
    assert bass.rational_form
    assert hashimoto.method == HASHIMOTO and bass.method == BASS


def test_k4_zeta():
    g = generate("complete", 4)
    expected = (IntPoly([1, 0, -1]) ** 2 * IntPoly([1, -1]) * IntPoly([1, -2]) * IntPoly([1, 1, 2]) ** 3)
    assert zeta_reciprocal_hashimoto(g).poly == expected
    bass = zeta_reciprocal_bass(g)
    assert bass.poly == expected
    assert bass.r_minus_1 == 2 and not bass.rational_form


def test_zeta_json():
    record = zeta_reciprocal_bass(generate("cycle", 3)).to_json()
    assert record == {"method": "bass", "r_minus_1": 0, "rational_form": False,
                      "coefficients": [1, 0, 0, -2, 0, 0, 1]}


def test_bareiss_det():
    assert bareiss_det([]) == 1
    assert bareiss_det([[2, 1], [1, 2]]) == 3
    assert bareiss_det([[0, 1], [1, 0]]) == -1
    assert bareiss_det([[1, 2], [2, 4]]) == 0
    a = np.array([[3, 1, 4], [1, 5, 9], [2, 6, 5]])
    assert bareiss_det(a.tolist()) == int(round(np.linalg.det(a)))


def test_poly_det_of_pencil():
    # det(I - A u + Q u^2) of a single edge: (1 - 0u + 0u^2)^2 - u^2
    pencil = quadratic_pencil([[0, 1], [1, 0]], [[0, 0], [0, 0]])
    assert poly_det(pencil, 4) == IntPoly([1, 0, -1])
    assert poly_det([], 0) == IntPoly([1])
    with pytest.raises(DegreeBoundExceeded):
        poly_det(quadratic_pencil(np.eye(3, dtype=int), 2 * np.eye(3, dtype=int)), 2)
    with pytest.raises(InvalidParameter):
        poly_det(pencil, -1)


@st.composite
def pencils(draw):
    size = draw(st.integers(min_value=1, max_value=4))
    square = st.lists(st.lists(st.integers(min_value=-3, max_value=3), min_size=size, max_size=size),
                      min_size=size, max_size=size)
    return draw(square), draw(square)


@settings(max_examples=60, deadline=None)
@given(pencils())
def test_poly_det_matches_cofactor_expansion(pair):
    A, Q = pair
    pencil = quadratic_pencil(A, Q)
    assert poly_det(pencil, 2 * len(A)) == cofactor_det(pencil)


def test_pencil_determinants_past_deadline():
    past = time.monotonic() - 1.0
    with pytest.raises(SearchTimeout):
        poly_det(quadratic_pencil([[0, 1], [1, 0]], [[0, 0], [0, 0]]), 4, deadline=past)
    with pytest.raises(SearchTimeout):
        zeta_reciprocal_bass(generate("complete", 4), deadline=past)
    with pytest.raises(SearchTimeout):
        cover_zetas(generate("cycle", 4), deadline=past)


@settings(max_examples=40, deadline=None)
@given(small_graphs(max_vertices=6))
def test_hashimoto_and_bass_agree(g):
    assert zeta_cross_check(g)
    hashimoto = zeta_reciprocal_hashimoto(g).poly
    assert hashimoto == zeta_reciprocal_bass(g).poly
    assert hashimoto.coefficient(0) == 1
    assert hashimoto.degree <= 2 * g.m


@settings(max_examples=25, deadline=None)
@given(small_graphs(max_vertices=6))
def test_walk_traces_match_brute_force(g):
    for k in range(1, 6):
        assert nb_walk_trace(g, k) == closed_nb_walks(g, k)


def test_walk_trace_bounds():
    with pytest.raises(InvalidParameter):
        nb_walk_trace(generate("cycle", 3), 0)
    with pytest.raises(InvalidParameter):
        nb_walk_trace(generate("cycle", 3), 13)
    assert nb_walk_trace(generate("cycle", 3), 3) == 6
    assert nb_walk_trace(generate("complete", 4), 3) == 24


def test_factorizations_on_triangle_with_pendants(triangle_with_pendants):
    results = verify_factorizations(triangle_with_pendants)
    assert [r.name for r in results] == ["factorization_gamma", "factorization_line_of_cover",
                                         "factorization_cover_of_line"]
    assert all(r.status == PASS for r in results)


def test_bipartite_factorization_included():
    results = verify_factorizations(generate("complete_bipartite", 2, 3))
    assert results[-1].name == "factorization_bipartite"
    assert all(r.status == PASS for r in results)


def test_factorizations_report_witness_on_wrong_input():
    zetas = cover_zetas(generate("complete", 4))
    zetas["gamma"] = zetas["gamma"] * IntPoly([1, 1])
    results = {r.name: r for r in verify_factorizations(generate("complete", 4), zetas)}
    assert results["factorization_gamma"].status == FAIL
    assert set(results["factorization_gamma"].witness) == {"left", "right"}


@settings(max_examples=25, deadline=None)
@given(small_graphs(min_vertices=2, max_vertices=6, connected=True))
def test_factorizations_hold_on_connected_graphs(g):
    assert all(r.status == PASS for r in verify_factorizations(g))


def test_g_poly_quotients():
    g = generate("complete", 4)
    parts = factorization_parts(g)
    assert parts["g"] == g_poly(g)
    assert parts["g_negated"] == g_poly(g).negate_argument()
    assert parts["zeta_gamma_over_zeta_line"] == parts["g"]
    assert parts["zeta_line_of_cover_over_zeta_line"] == parts["g_negated"]
    assert parts["zeta_cover_of_line_over_zeta_line"] == parts["zeta_line"].negate_argument()


def test_bipartite_cover_zetas():
    zetas = cover_zetas(generate("cycle", 4))
    assert predicates(generate("cycle", 4)).is_bipartite
    assert zetas["gamma"] == zetas["cover_of_line"]
    assert zetas["line_of_cover"] == zetas["line"] * zetas["line"]
