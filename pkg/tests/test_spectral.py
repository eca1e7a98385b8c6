import time

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from covers.constructions import (cover_blocks, edge_adjacency_matrix, gamma_blocks, kronecker_double_cover,
                                  line_graph, line_of_cover, symmetric_edge_graph)
from covers.errors import InexactDivision, InvalidParameter, NotSymmetric, SearchTimeout, SizeLimitExceeded
from covers.graph_core import Graph, generate, random_relabeling
from covers.spectral import (IntPoly, Spectrum, block_split_spectrum, char_poly, eigenvalues, energy,
                             is_cospectral, spectrum_of_graph)
from tests.oracles import char_poly_by_expansion
from tests.strategies import small_graphs

coefficient_lists = st.lists(st.integers(min_value=-20, max_value=20), max_size=7)


def test_int_poly_basics():
    p = IntPoly([1, 0, -2, 0, 0, 0, 0])
    assert p.coefficients == (1, 0, -2)
    assert p.degree == 2
    assert IntPoly().degree == -1 and IntPoly().is_zero()
    assert IntPoly.monomial(3, 2) == IntPoly([0, 0, 3])
    assert IntPoly.one_minus_u_squared_power(2) == IntPoly([1, 0, -2, 0, 1])
    assert IntPoly([1, 0, -1]) == 1 - IntPoly.monomial(1, 2)


@pytest.mark.parametrize("coefficients, text", [
    ([1, 0, 0, -2, 0, 0, 1], "1 - 2u^3 + u^6"),
    ([0, -1], "-u"),
    ([-4, 3], "-4 + 3u"),
    ([], "0"),
])
def test_int_poly_str(coefficients, text):
    assert str(IntPoly(coefficients)) == text


def test_int_poly_transforms():
    p = IntPoly([1, 2, 3])
    assert p.negate_argument() == IntPoly([1, -2, 3])
    assert p.reversed() == IntPoly([3, 2, 1])
    assert p.reversed(4) == IntPoly([0, 0, 3, 2, 1])
    assert p.evaluate(2) == 17
    with pytest.raises(InvalidParameter):
        p.reversed(1)
    with pytest.raises(InvalidParameter):
        p ** -1


def test_int_poly_division():
    assert IntPoly([1, 0, -1]).exact_div(IntPoly([1, 1])) == IntPoly([1, -1])
    with pytest.raises(InexactDivision):
        IntPoly([1, 0, 1]).exact_div(IntPoly([1, 1]))
    with pytest.raises(InexactDivision):
        IntPoly([1, 1]).exact_div(IntPoly([1, 2]))
    assert IntPoly([1, 1]).divides(IntPoly([1, 0, -1]))
    assert not IntPoly([2]).divides(IntPoly([1, 1]))
    with pytest.raises(ZeroDivisionError):
        IntPoly([1]).exact_div(IntPoly())


@settings(max_examples=100, deadline=None)
@given(coefficient_lists, coefficient_lists, coefficient_lists)
def test_int_poly_ring_laws(a, b, c):
    p, q, r = IntPoly(a), IntPoly(b), IntPoly(c)
    assert p * (q + r) == p * q + p * r
    assert (p + q) - q == p
    assert p.negate_argument().negate_argument() == p
    assert (p * q).negate_argument() == p.negate_argument() * q.negate_argument()
    if not q.is_zero():
        assert (p * q).exact_div(q) == p


@pytest.mark.parametrize("g, expected", [
    (generate("complete", 3), [-2, -3, 0, 1]),
    (generate("cycle", 6), [-4, 0, 9, 0, -6, 0, 1]),
    (generate("path", 2), [-1, 0, 1]),
    (generate("empty", 2), [0, 0, 1]),
])
def test_char_poly_golden(g, expected):
    assert char_poly(g.adjacency_matrix()) == IntPoly(expected)


def test_char_poly_of_empty_matrix():
    assert char_poly(np.zeros((0, 0), dtype=np.int64)) == IntPoly([1])


def test_char_poly_rejects_bad_input():
    with pytest.raises(InvalidParameter):
        char_poly(np.zeros((2, 3), dtype=np.int64))
    with pytest.raises(InvalidParameter):
        char_poly(np.eye(2, dtype=np.int64), method="qr")


@settings(max_examples=30, deadline=None)
@given(small_graphs(max_vertices=7))
def test_char_poly_engines_agree(g):
    matrix = edge_adjacency_matrix(g).entries
    assert char_poly(matrix, method="berkowitz") == char_poly(matrix, method="modular")


def test_char_poly_engines_agree_above_the_switch():
    a = symmetric_edge_graph(generate("complete", 5)).adjacency_matrix()
    assert a.shape == (20, 20)
    big = line_of_cover(generate("complete", 6)).adjacency_matrix()
    assert big.shape == (30, 30)
    assert char_poly(big) == char_poly(big, method="berkowitz")
    assert char_poly(a, method="modular") == char_poly(a, method="berkowitz")


@settings(max_examples=40, deadline=None)
@given(small_graphs(max_vertices=6))
def test_char_poly_matches_cofactor_expansion(g):
    adjacency = g.adjacency_matrix()
    assert char_poly(adjacency) == char_poly_by_expansion(adjacency.tolist())
    if g.m <= 3:
        # non-symmetric, dimension 2m <= 6
        entries = edge_adjacency_matrix(g).entries
        assert char_poly(entries) == char_poly_by_expansion(entries.tolist())


@settings(max_examples=40, deadline=None)
@given(small_graphs(max_vertices=7))
def test_char_poly_matches_eigenvalue_product(g):
    matrices = [g.adjacency_matrix()]
    if 0 < 2 * g.m <= 12:
        matrices.append(symmetric_edge_graph(g).adjacency_matrix())
    for matrix in matrices:
        expected = np.poly(eigenvalues(matrix).eigenvalues)[::-1]
        assert np.allclose(char_poly(matrix).coefficients, expected, atol=1e-6)


def test_char_poly_past_deadline():
    past = time.monotonic() - 1.0
    small = generate("cycle", 5).adjacency_matrix()
    large = line_of_cover(generate("complete", 6)).adjacency_matrix()
    with pytest.raises(SearchTimeout):
        char_poly(small, deadline=past)
    with pytest.raises(SearchTimeout):
        char_poly(large, deadline=past)
    assert char_poly(small, deadline=time.monotonic() + 60) == char_poly(small)


def test_eigenvalues_of_six_cycle():
    spectrum = spectrum_of_graph(generate("cycle", 6))
    assert np.allclose(spectrum.eigenvalues, [2, 1, 1, -1, -1, -2])
    assert spectrum.close_to(spectrum_of_graph(generate("crown", 3)))
    assert spectrum.to_json()["dimension"] == 6


def test_eigenvalues_errors():
    with pytest.raises(NotSymmetric):
        eigenvalues(np.array([[0, 1], [0, 0]]))
    with pytest.raises(SizeLimitExceeded):
        eigenvalues(np.zeros((300, 300)))
    assert eigenvalues(np.zeros((0, 0))).eigenvalues == ()


@pytest.mark.parametrize("g, expected", [
    (generate("complete", 4), 6.0),
    (generate("cycle", 6), 8.0),
    (generate("star", 4), 4.0),
    (generate("empty", 3), 0.0),
])
def test_energy(g, expected):
    assert energy(g) == pytest.approx(expected, abs=1e-9)


@pytest.mark.parametrize("g", [generate("complete_bipartite", 2, 3), generate("prism", 4),
                               symmetric_edge_graph(generate("complete", 4)), generate("path", 6)])
def test_energy_is_labeling_invariant(g):
    expected = energy(g)
    for seed in range(10):
        assert energy(random_relabeling(g, seed)) == pytest.approx(expected, abs=1e-9)


def test_cospectral_pair():
    # K_{1,4} and C_4 plus an isolated vertex
    star = generate("star", 4)
    square = generate("cycle", 4)
    assert is_cospectral(star, Graph(5, square.edges))
    assert not is_cospectral(star, generate("path", 5))


def test_spectrum_union_and_negation():
    s = Spectrum([1.0, -2.0], 2)
    assert s.union(Spectrum([0.5], 1)).eigenvalues == (1.0, 0.5, -2.0)
    assert s.negated().eigenvalues == (2.0, -1.0)
    assert s.energy() == pytest.approx(3.0)


@settings(max_examples=30, deadline=None)
@given(small_graphs(min_vertices=2, max_vertices=6))
def test_block_split_spectrum_recombines(g):
    line_spectrum = spectrum_of_graph(line_graph(g))
    for blocks, cover in ((gamma_blocks(edge_adjacency_matrix(g)), symmetric_edge_graph(g)),
                          (cover_blocks(g, kronecker_double_cover(g)[1]), line_of_cover(g))):
        total, difference = block_split_spectrum(blocks)
        assert total.close_to(line_spectrum)
        assert total.union(difference).close_to(spectrum_of_graph(cover))
