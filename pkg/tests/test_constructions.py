import time

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings

from covers.constructions import (Orientation, bipartite_orientation, cover_blocks, cover_of_line, crown_recover,
                                  default_orientation, edge_adjacency_matrix, fiber_map, gamma_blocks,
                                  gamma_iterate, is_double_cover, kronecker_double_cover, kronecker_product,
                                  line_graph, line_of_cover, orientation_from_pairs, reorientation_permutation,
                                  symmetric_edge_graph)
from covers.errors import (InvalidParameter, LabelingMismatch, OrientationMismatch, SearchTimeout,
                           SizeLimitExceeded)
from covers.graph_core import (are_isomorphic, count_triangles, degrees, disjoint_union, generate, predicates,
                               relabel)
from tests.strategies import small_graphs

P_TRIANGLE_WITH_PENDANTS = [[0, 1, 1, 0, 0, 0],
                            [1, 0, 1, 1, 0, 0],
                            [1, 1, 0, 0, 0, 0],
                            [0, 1, 0, 0, 1, 0],
                            [0, 0, 0, 1, 0, 0],
                            [0, 0, 0, 0, 0, 0]]
Q_TRIANGLE_WITH_PENDANTS = [[0, 0, 0, 1, 1, 0],
                            [0, 0, 0, 0, 0, 1],
                            [0, 0, 0, 0, 0, 0],
                            [1, 0, 0, 0, 0, 1],
                            [1, 0, 0, 0, 0, 0],
                            [0, 1, 0, 1, 0, 0]]


def test_orientation_validation():
    g = generate("path", 3)
    with pytest.raises(OrientationMismatch):
        Orientation(g, [(0, 1)])
    with pytest.raises(OrientationMismatch):
        Orientation(g, [(0, 1), (1, 0)])
    with pytest.raises(OrientationMismatch):
        orientation_from_pairs(g, [(0, 1), (0, 2)])
    assert Orientation(g, [(1, 0), (2, 1)]).arcs() == [(1, 0), (2, 1), (0, 1), (1, 2)]


def test_bipartite_orientation():
    g = generate("cycle", 4)
    assert bipartite_orientation(g).directed_edges == ((0, 1), (0, 3), (2, 1), (2, 3))
    with pytest.raises(InvalidParameter):
        bipartite_orientation(generate("cycle", 5))


def test_edge_adjacency_matrix_of_cyclic_triangle():
    g = generate("cycle", 3)
    mtx = edge_adjacency_matrix(g, orientation_from_pairs(g, [(0, 1), (1, 2), (2, 0)]))
    cyclic = [[0, 1, 0],
              [0, 0, 1],
              [1, 0, 0]]
    assert mtx.A.tolist() == cyclic
    assert not mtx.B.any() and not mtx.C.any()
    assert mtx.D.tolist() == np.array(cyclic).T.tolist()


def test_gamma_matrix_of_claw():
    star = generate("star", 3)
    mtx = edge_adjacency_matrix(star, orientation_from_pairs(star, [(1, 0), (0, 2), (3, 0)]))
    # a hexagon on the arcs in label order
    assert mtx.symmetrized().tolist() == [[0, 1, 0, 0, 0, 1],
                                          [1, 0, 1, 0, 0, 0],
                                          [0, 1, 0, 1, 0, 0],
                                          [0, 0, 1, 0, 1, 0],
                                          [0, 0, 0, 1, 0, 1],
                                          [1, 0, 0, 0, 1, 0]]


def test_edge_adjacency_matrix_rejects_foreign_orientation():
    with pytest.raises(OrientationMismatch):
        edge_adjacency_matrix(generate("path", 3), default_orientation(generate("star", 2)))


@settings(max_examples=60, deadline=None)
@given(small_graphs())
def test_edge_adjacency_matrix_structure(g):
    mtx = edge_adjacency_matrix(g)
    assert np.array_equal(mtx.entries.T, mtx.J @ mtx.entries @ mtx.J)
    assert np.array_equal(mtx.D, mtx.A.T)
    assert np.array_equal(mtx.B, mtx.B.T) and np.array_equal(mtx.C, mtx.C.T)
    assert np.array_equal(mtx.A + mtx.B + mtx.C + mtx.D, line_graph(g).adjacency_matrix())
    deg = degrees(g)
    assert mtx.entries.sum(axis=1).tolist() == [deg[t] - 1 for _, t in mtx.orientation.arcs()]


@settings(max_examples=60, deadline=None)
@given(small_graphs())
def test_gamma_edge_count(g):
    gamma = symmetric_edge_graph(g)
    assert gamma.n == 2 * g.m
    assert gamma.m == sum(d * d for d in degrees(g)) - 2 * g.m
    assert np.array_equal(gamma.adjacency_matrix(), gamma_blocks(edge_adjacency_matrix(g)).full_matrix())


@settings(max_examples=40, deadline=None)
@given(small_graphs(min_vertices=2))
def test_gamma_does_not_depend_on_orientation(g):
    base = default_orientation(g)
    flipped = Orientation(g, [(v, u) for u, v in g.edges])
    moved = relabel(symmetric_edge_graph(g), reorientation_permutation(base, flipped))
    assert moved == symmetric_edge_graph(g, flipped)


@pytest.mark.parametrize("base, expected", [
    (generate("star", 3), generate("cycle", 6)),
    (generate("cycle", 5), disjoint_union(generate("cycle", 5), generate("cycle", 5))),
    (generate("complete_bipartite", 2, 3), generate("prism", 6)),
    (generate("path", 4), disjoint_union(generate("path", 3), generate("path", 3))),
    (generate("star", 4), generate("crown", 4)),
    (generate("star", 4), generate("hypercube", 3)),
])
def test_gamma_known_graphs(base, expected):
    assert are_isomorphic(symmetric_edge_graph(base), expected)


def test_gamma_iterates_on_paths():
    for n in range(2, 6):
        for k in range(n):
            halves = gamma_iterate(generate("path", n), k)
            assert halves.n == 2 ** k * (n - k)
            assert halves.m == 2 ** k * (n - k - 1)
        assert gamma_iterate(generate("path", n), n - 1).m == 0


def test_gamma_iterate_bounds():
    with pytest.raises(InvalidParameter):
        gamma_iterate(generate("cycle", 3), -1)
    with pytest.raises(SizeLimitExceeded):
        gamma_iterate(generate("complete", 5), 3, vertex_bound=100)
    assert gamma_iterate(generate("cycle", 3), 0) == generate("cycle", 3)


@settings(max_examples=60, deadline=None)
@given(small_graphs())
def test_line_graph_matches_networkx(g):
    expected = nx.line_graph(g.to_networkx())
    assert nx.is_isomorphic(line_graph(g).to_networkx(), expected)


def test_kronecker_double_cover_of_k4_is_crown():
    cover, labeling = kronecker_double_cover(generate("complete", 4))
    assert are_isomorphic(cover, generate("crown", 4))
    assert labeling.label(0) == "e_1" and labeling.label(6) == "e_1^-1"
    assert labeling.to_json()[0] == {"label": "e_1", "source": 0, "target": 5}


@settings(max_examples=40, deadline=None)
@given(small_graphs(min_vertices=2))
def test_kronecker_double_cover_properties(g):
    cover, labeling = kronecker_double_cover(g)
    assert predicates(cover).is_bipartite
    assert is_double_cover(cover, g, fiber_map(g.n))
    assert are_isomorphic(cover, kronecker_product(g, generate("complete", 2)), vertex_bound=cover.n)
    connected = predicates(g).is_connected and g.m > 0
    if connected:
        assert predicates(cover).is_connected == (not predicates(g).is_bipartite)


def test_cover_blocks_of_triangle_with_pendants(triangle_with_pendants):
    g = triangle_with_pendants
    _, labeling = kronecker_double_cover(g)
    blocks = cover_blocks(g, labeling)
    assert blocks.P.tolist() == P_TRIANGLE_WITH_PENDANTS
    assert blocks.Q.tolist() == Q_TRIANGLE_WITH_PENDANTS
    assert np.array_equal(blocks.R, blocks.P)
    gamma = gamma_blocks(edge_adjacency_matrix(g))
    assert np.array_equal(gamma.A0 - gamma.B0, -(blocks.P - blocks.Q))
    assert np.array_equal(blocks.full_matrix(), line_of_cover(g).adjacency_matrix())


def test_triangle_counts_of_the_covers(triangle_with_pendants):
    g = triangle_with_pendants
    assert count_triangles(line_graph(g)) == 4
    assert count_triangles(symmetric_edge_graph(g)) == 2
    assert count_triangles(line_of_cover(g)) == 6


def test_cover_blocks_reject_foreign_labeling():
    _, labeling = kronecker_double_cover(generate("cycle", 4))
    with pytest.raises(LabelingMismatch):
        cover_blocks(generate("path", 4), labeling)


def test_bipartite_orientation_gives_empty_a0():
    g = generate("complete_bipartite", 2, 3)
    blocks = gamma_blocks(edge_adjacency_matrix(g, bipartite_orientation(g)))
    assert not blocks.A0.any()
    assert np.array_equal(blocks.B0, line_graph(g).adjacency_matrix())


def test_three_covers_project_onto_the_line_graph(triangle_with_pendants):
    g = triangle_with_pendants
    line = line_graph(g)
    fiber = fiber_map(g.m)
    for cover in (symmetric_edge_graph(g), line_of_cover(g), cover_of_line(g)):
        assert is_double_cover(cover, line, fiber)
    assert not is_double_cover(symmetric_edge_graph(g), line, [0] * (2 * g.m))


def test_gamma_blocks_split_pair(triangle_with_pendants):
    blocks = gamma_blocks(edge_adjacency_matrix(triangle_with_pendants))
    total, difference = blocks.split_pair()
    assert np.array_equal(total, line_graph(triangle_with_pendants).adjacency_matrix())
    assert np.array_equal(difference, difference.T)
    assert not np.diag(difference).any()


def test_crown_recover_star():
    found = crown_recover(generate("cycle", 6))
    assert found is not None
    rebuilt, partition = found
    assert are_isomorphic(rebuilt, generate("star", 3))
    assert len(partition.parts) == 1


def test_crown_recover_fails_on_odd_cycle():
    assert crown_recover(generate("cycle", 5)) is None


@pytest.mark.parametrize("base", [
    generate("complete", 4),
    generate("complete_bipartite", 2, 3),
    generate("star", 4),
])
def test_crown_recover_rebuilds_base(base):
    rebuilt, _ = crown_recover(symmetric_edge_graph(base))
    assert are_isomorphic(rebuilt, base)


def test_crown_recover_limits():
    with pytest.raises(SizeLimitExceeded):
        crown_recover(generate("cycle", 26))
    with pytest.raises(SearchTimeout):
        crown_recover(symmetric_edge_graph(generate("complete", 4)), deadline=time.monotonic() - 1.0)
