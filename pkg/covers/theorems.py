"""Exhaustive small-graph enumeration and the per-graph verification harness.

``check_suite`` turns every structural, spectral and zeta identity about the
three double covers of L(X) into a named pass/fail/skipped record.
"""
import logging
import time
from functools import cached_property
from itertools import combinations
from multiprocessing import Pool

import numpy as np
import pandas as pd
from tqdm import tqdm

from covers.constructions import (CROWN_SEARCH_BOUND, bipartite_orientation, cover_blocks, cover_of_line,
                                  crown_recover, default_orientation, edge_adjacency_matrix, fiber_map,
                                  gamma_blocks, gamma_iterate, is_double_cover, kronecker_double_cover,
                                  kronecker_product, line_graph, line_graph_of_edges, orientation_from_pairs,
                                  reorientation_permutation, symmetric_edge_graph)
from covers.errors import InvalidParameter, PreconditionViolated, SearchTimeout, SizeLimitExceeded
from covers.graph_core import (CanonicalForm, Graph, are_isomorphic, canonical_form, components, count_triangles,
                               degrees, disjoint_union, find_bridges, generate, is_claw_free, predicates,
                               relabel, walk_invariants)
from covers.report import FAIL, PASS, SKIPPED, CheckResult, VerificationReport
from covers.spectral import ENERGY_TOLERANCE, block_split_spectrum, char_poly, eigenvalues, energy, is_cospectral
from covers.zeta import (cover_zetas, g_poly, nb_walk_trace, closed_nb_walks, verify_factorizations,
                         zeta_cross_check, zeta_reciprocal_bass, zeta_reciprocal_hashimoto)

logger = logging.getLogger(__name__)

COVER_VERTEX_BOUND = 64
GRAPH_TIME_BUDGET = 10.0
ENUMERATION_MAX_VERTICES = 7

# walk lengths compared against brute-force enumeration
_WALK_ORACLE_MAX_LENGTH = 6


def enumerate_connected(n_max: int, progress: bool = False):
    """One canonically labeled representative per connected graph on 1..n_max vertices.

    Graphs on k + 1 vertices are grown from those on k vertices by adding a
    vertex joined to a nonempty vertex subset; every connected graph has a
    vertex whose removal leaves it connected, so nothing is missed.
    """
    if n_max > ENUMERATION_MAX_VERTICES:
        raise SizeLimitExceeded("enumeration limited to {} vertices, got {}".format(ENUMERATION_MAX_VERTICES, n_max))
    if n_max < 1:
        return []
    level = [Graph(1, [])]
    result = list(level)
    for n in tqdm(range(2, n_max + 1), desc="enumerating", disable=not progress):
        found = {}
        for g in level:
            for mask in range(1, 1 << g.n):
                extra = [(v, g.n) for v in range(g.n) if mask >> v & 1]
                grown = Graph(n, list(g.edges) + extra)
                form = canonical_form(grown)
                if form.certificate not in found:
                    found[form.certificate] = relabel(grown, form.labeling)
        level = [found[c] for c in sorted(found)]
        logger.info("{} connected graphs on {} vertices".format(len(level), n))
        result.extend(level)
    return result


class CoverTriple(object):
    """gamma(X), L(X''), L(X)'' and the common base L(X)."""

    def __init__(self, gamma, line_of_cover, cover_of_line, base_line):
        self.gamma = gamma
        self.line_of_cover = line_of_cover
        self.cover_of_line = cover_of_line
        self.base_line = base_line

    def members(self):
        return [("gamma", self.gamma), ("line_of_cover", self.line_of_cover), ("cover_of_line", self.cover_of_line)]

    def fiber_map(self):
        return fiber_map(self.base_line.n)

    def __repr__(self):
        return "CoverTriple(base_line={})".format(self.base_line)


def cover_triple(g: Graph) -> CoverTriple:
    if g.m < 1:
        raise PreconditionViolated("cover triple needs at least one edge")
    _, labeling = kronecker_double_cover(g)
    return CoverTriple(gamma=symmetric_edge_graph(g),
                       line_of_cover=line_graph_of_edges(labeling.cover_edges),
                       cover_of_line=cover_of_line(g),
                       base_line=line_graph(g))


class CoverCoincidences(object):

    def __init__(self, gamma_eq_line_cover, gamma_eq_cover_line, line_cover_eq_cover_line):
        self.gamma_eq_line_cover = gamma_eq_line_cover
        self.gamma_eq_cover_line = gamma_eq_cover_line
        self.line_cover_eq_cover_line = line_cover_eq_cover_line

    def as_tuple(self):
        return self.gamma_eq_line_cover, self.gamma_eq_cover_line, self.line_cover_eq_cover_line

    def __eq__(self, other):
        return isinstance(other, CoverCoincidences) and self.as_tuple() == other.as_tuple()

    def __hash__(self):
        return hash(self.as_tuple())

    def to_json(self):
        return dict(vars(self))

    def __repr__(self):
        return "CoverCoincidences({})".format(self.to_json())


def _require_connected_with_edges(g, what):
    if g.m < 1 or not predicates(g).is_connected:
        raise PreconditionViolated("{} needs a connected graph with at least one edge".format(what))


def classify_cover_coincidences(g: Graph, vertex_bound: int = COVER_VERTEX_BOUND,
                                deadline=None) -> CoverCoincidences:
    _require_connected_with_edges(g, "cover classification")
    triple = cover_triple(g)
    return CoverCoincidences(
        gamma_eq_line_cover=are_isomorphic(triple.gamma, triple.line_of_cover, vertex_bound, deadline),
        gamma_eq_cover_line=are_isomorphic(triple.gamma, triple.cover_of_line, vertex_bound, deadline),
        line_cover_eq_cover_line=are_isomorphic(triple.line_of_cover, triple.cover_of_line, vertex_bound, deadline))


def is_exceptional_for_gamma_line_cover(g: Graph) -> bool:
    """Paths, even cycles, K_4, K_4 - e and the triangle with a pendant vertex."""
    flags = predicates(g)
    if not flags.is_connected:
        return False
    if flags.is_path or (flags.is_cycle and g.n % 2 == 0):
        return True
    if g.n != 4:
        return False
    return g.m in (5, 6) or (g.m == 4 and sorted(degrees(g)) == [1, 2, 2, 3])


def predicted_cover_coincidences(g: Graph) -> CoverCoincidences:
    flags = predicates(g)
    return CoverCoincidences(
        gamma_eq_line_cover=is_exceptional_for_gamma_line_cover(g),
        gamma_eq_cover_line=flags.is_bipartite,
        line_cover_eq_cover_line=flags.is_cycle or flags.is_path)


class EquienergeticReport(object):

    def __init__(self, order, energy_gamma, energy_line_cover, energies_equal, cospectral):
        self.order = order
        self.energy_gamma = energy_gamma
        self.energy_line_cover = energy_line_cover
        self.energies_equal = energies_equal
        self.cospectral = cospectral

    def to_json(self):
        return dict(vars(self))

    def __repr__(self):
        return "EquienergeticReport({})".format(self.to_json())


def equienergetic_report(g: Graph, tolerance: float = ENERGY_TOLERANCE, deadline=None) -> EquienergeticReport:
    """Compare gamma(X) with L(X''): expected equal energy, different spectrum."""
    _require_connected_with_edges(g, "equienergetic report")
    if g.m < 5:
        raise PreconditionViolated("equienergetic report needs at least 5 edges, got {}".format(g.m))
    if is_exceptional_for_gamma_line_cover(g):
        raise PreconditionViolated("gamma(X) and L(X'') are isomorphic for this graph")
    triple = cover_triple(g)
    energy_gamma = energy(triple.gamma)
    energy_line_cover = energy(triple.line_of_cover)
    cospectral = is_cospectral(triple.gamma, triple.line_of_cover, deadline)
    return EquienergeticReport(order=2 * g.m, energy_gamma=energy_gamma, energy_line_cover=energy_line_cover,
                               energies_equal=abs(energy_gamma - energy_line_cover) <= tolerance,
                               cospectral=cospectral)


class CheckContext(object):
    """Lazily built objects shared by the checks of one graph."""

    def __init__(self, graph: Graph, tolerance, vertex_bound, deadline):
        self.graph = graph
        self.tolerance = tolerance
        self.vertex_bound = vertex_bound
        self.deadline = deadline

    @cached_property
    def degrees(self):
        return degrees(self.graph)

    @cached_property
    def flags(self):
        return predicates(self.graph)

    @cached_property
    def connected_with_edges(self):
        return self.flags.is_connected and self.graph.m >= 1

    @cached_property
    def min_degree_two(self):
        return self.connected_with_edges and min(self.degrees) >= 2

    @cached_property
    def mtx(self):
        return edge_adjacency_matrix(self.graph)

    @cached_property
    def gamma(self):
        return symmetric_edge_graph(self.graph)

    @cached_property
    def gamma_flags(self):
        return predicates(self.gamma)

    @cached_property
    def line(self):
        return line_graph(self.graph)

    @cached_property
    def cover(self):
        return kronecker_double_cover(self.graph)

    @cached_property
    def line_of_cover(self):
        return line_graph_of_edges(self.cover[1].cover_edges)

    @cached_property
    def cover_of_line(self):
        return cover_of_line(self.graph)

    @cached_property
    def gamma_blocks(self):
        return gamma_blocks(self.mtx)

    @cached_property
    def cover_blocks(self):
        return cover_blocks(self.graph, self.cover[1])

    @cached_property
    def line_poly(self):
        return char_poly(self.line.adjacency_matrix(), deadline=self.deadline)

    @cached_property
    def gamma_poly(self):
        return char_poly(self.gamma.adjacency_matrix(), deadline=self.deadline)

    @cached_property
    def zetas(self):
        return cover_zetas(self.graph, self.deadline)

    def isomorphic(self, g, h):
        return are_isomorphic(g, h, max(self.vertex_bound, g.n, h.n), self.deadline)


_CHECKS = []


def _check(name):
    def register(func):
        _CHECKS.append((name, func))
        return func
    return register


def check_names():
    return [name for name, _ in _CHECKS]


def _verdict(holds, witness=None):
    if holds:
        return PASS, None
    return FAIL, witness if witness is not None else "identity does not hold"


def _skip(reason):
    return SKIPPED, reason


def _symmetric(x):
    return np.array_equal(x, x.T)


def _zero_diagonal(x):
    return not np.diag(x).any()


def _disjoint(x, y):
    return not (x * y).any()


@_check("degree_sum")
def _degree_sum(ctx):
    return _verdict(sum(ctx.degrees) == 2 * ctx.graph.m, {"degrees": ctx.degrees})


@_check("triangle_trace")
def _triangle_trace(ctx):
    g = ctx.graph
    a = g.adjacency_matrix()
    by_trace = int(np.trace(a @ a @ a)) // 6
    brute = sum(1 for x, y, z in combinations(range(g.n), 3)
                if g.has_edge(x, y) and g.has_edge(y, z) and g.has_edge(x, z))
    counted = count_triangles(g)
    return _verdict(counted == by_trace == brute, {"count": counted, "trace": by_trace, "brute_force": brute})


@_check("bridges_oracle")
def _bridges_oracle(ctx):
    g = ctx.graph
    base = len(components(g))
    removal = {e for e in g.edges
               if len(components(Graph(g.n, [f for f in g.edges if f != e]))) > base}
    found = find_bridges(g)
    return _verdict(found == removal, {"bridges": sorted(found), "oracle": sorted(removal)})


@_check("claw_free_line_graph")
def _claw_free_line_graph(ctx):
    return _verdict(is_claw_free(ctx.line), "line graph contains an induced claw")


@_check("m_block_structure")
def _m_block_structure(ctx):
    mtx = ctx.mtx
    blocks = (mtx.A, mtx.B, mtx.C, mtx.D)
    holds = (set(np.unique(mtx.entries).tolist()) <= {0, 1}
             and _symmetric(mtx.B) and _symmetric(mtx.C) and np.array_equal(mtx.D, mtx.A.T)
             and all(_zero_diagonal(b) for b in blocks))
    return _verdict(holds, {"M": mtx.entries.tolist()})


@_check("m_transpose_j")
def _m_transpose_j(ctx):
    mtx = ctx.mtx
    return _verdict(np.array_equal(mtx.entries.T, mtx.J @ mtx.entries @ mtx.J), {"M": mtx.entries.tolist()})


@_check("m_row_sums")
def _m_row_sums(ctx):
    arcs = ctx.mtx.orientation.arcs()
    expected = [ctx.degrees[t] - 1 for _, t in arcs]
    found = ctx.mtx.entries.sum(axis=1).tolist()
    return _verdict(found == expected, {"row_sums": found, "expected": expected})


@_check("m_blocks_line_graph")
def _m_blocks_line_graph(ctx):
    mtx = ctx.mtx
    blocks = (mtx.A, mtx.B, mtx.C, mtx.D)
    holds = (np.array_equal(sum(blocks), ctx.line.adjacency_matrix())
             and all(_disjoint(x, y) for x, y in combinations(blocks, 2)))
    return _verdict(holds, {"block_sum": sum(blocks).tolist()})


@_check("nb_walk_trace")
def _nb_walk_trace(ctx):
    g = ctx.graph
    traces = [nb_walk_trace(g, k) for k in range(1, _WALK_ORACLE_MAX_LENGTH + 1)]
    brute = [closed_nb_walks(g, k) for k in range(1, _WALK_ORACLE_MAX_LENGTH + 1)]
    triangles = count_triangles(g)
    return _verdict(traces == brute and traces[2] == 6 * triangles,
                    {"traces": traces, "brute_force": brute, "triangles": triangles})


@_check("gamma_edge_count")
def _gamma_edge_count(ctx):
    expected = sum(d * d for d in ctx.degrees) - 2 * ctx.graph.m
    return _verdict(ctx.gamma.m == expected, {"edges": ctx.gamma.m, "expected": expected})


@_check("gamma_trace_identity")
def _gamma_trace_identity(ctx):
    s = ctx.mtx.symmetrized()
    trace = int(np.trace(s @ s))
    ones = int(ctx.mtx.entries.sum())
    return _verdict(trace == 2 * ctx.gamma.m == 2 * ones,
                    {"trace": trace, "edges": ctx.gamma.m, "eMe": ones})


@_check("gamma_j_commutes")
def _gamma_j_commutes(ctx):
    s, j = ctx.mtx.symmetrized(), ctx.mtx.J
    return _verdict(np.array_equal(j @ s, s @ j), "J does not commute with M + M^T")


@_check("gamma_orientation_invariance")
def _gamma_orientation_invariance(ctx):
    g = ctx.graph
    base = default_orientation(g)
    others = [orientation_from_pairs(g, [(v, u) if i % 2 else (u, v) for i, (u, v) in enumerate(g.edges)])]
    if ctx.flags.is_bipartite:
        others.append(bipartite_orientation(g))
    for other in others:
        moved = relabel(ctx.gamma, reorientation_permutation(base, other))
        if moved != symmetric_edge_graph(g, other):
            return _verdict(False, {"orientation": [list(a) for a in other.directed_edges]})
    return _verdict(True)


@_check("gamma_blocks")
def _gamma_blocks(ctx):
    blocks = ctx.gamma_blocks
    holds = (_symmetric(blocks.A0) and _symmetric(blocks.B0)
             and _zero_diagonal(blocks.A0) and _zero_diagonal(blocks.B0)
             and np.array_equal(blocks.A0 + blocks.B0, ctx.line.adjacency_matrix())
             and _disjoint(blocks.A0, blocks.B0)
             and np.array_equal(ctx.mtx.symmetrized(), blocks.full_matrix())
             and np.array_equal(ctx.gamma.adjacency_matrix(), blocks.full_matrix()))
    return _verdict(holds, {"A0": blocks.A0.tolist(), "B0": blocks.B0.tolist()})


def _is_star(g):
    deg = sorted(degrees(g))
    return g.n >= 3 and g.m == g.n - 1 and deg[-1] == g.n - 1


@_check("gamma_known_families")
def _gamma_known_families(ctx):
    g, flags = ctx.graph, ctx.flags
    if flags.is_cycle:
        return _verdict(ctx.isomorphic(ctx.gamma, disjoint_union(g, g)), "gamma(C_n) is not 2C_n")
    if flags.is_path and g.n >= 2:
        halves = generate("path", g.n - 1)
        holds = ctx.isomorphic(ctx.gamma, disjoint_union(halves, halves))
        last = gamma_iterate(g, g.n - 1)
        holds = holds and last.m == 0 and last.n == 2 ** (g.n - 1)
        return _verdict(holds, {"iterated_vertices": last.n, "iterated_edges": last.m})
    if _is_star(g):
        return _verdict(ctx.isomorphic(ctx.gamma, generate("crown", g.n - 1)), "gamma(K_1,k) is not crown k")
    if g.n == 5 and g.m == 6 and ctx.isomorphic(g, generate("complete_bipartite", 2, 3)):
        return _verdict(ctx.isomorphic(ctx.gamma, generate("prism", 6)), "gamma(K_2,3) is not the 6-prism")
    if g.n == 4 and g.m == 6:
        # the other double cover of L(K_4) is K_4'' = crown 4
        holds = (ctx.isomorphic(ctx.cover[0], generate("crown", 4))
                 and not ctx.isomorphic(ctx.gamma, ctx.cover_of_line))
        return _verdict(holds, "K_4 covers differ from the known drawings")
    return _skip("no known family")


def _double_cover_check(ctx, cover):
    if ctx.graph.m < 1:
        return _skip("no edges")
    return _verdict(is_double_cover(cover, ctx.line, fiber_map(ctx.graph.m)), "projection is not a double cover")


@_check("double_cover_gamma")
def _double_cover_gamma(ctx):
    return _double_cover_check(ctx, ctx.gamma)


@_check("double_cover_line_of_cover")
def _double_cover_line_of_cover(ctx):
    return _double_cover_check(ctx, ctx.line_of_cover)


@_check("double_cover_cover_of_line")
def _double_cover_cover_of_line(ctx):
    return _double_cover_check(ctx, ctx.cover_of_line)


@_check("kronecker_consistency")
def _kronecker_consistency(ctx):
    g = ctx.graph
    cover, labeling = ctx.cover
    m, n = g.m, g.n
    edges = labeling.cover_edges
    paired = all(edges[m + k] == (edges[k][1] - n, edges[k][0] + n) for k in range(m))
    same_edges = sorted((min(s, t), max(s, t)) for s, t in edges) == list(cover.edges)
    product = ctx.isomorphic(cover, kronecker_product(g, generate("complete", 2)))
    return _verdict(paired and same_edges and product,
                    {"paired": paired, "same_edges": same_edges, "matches_product": product})


@_check("gamma_connectivity")
def _gamma_connectivity(ctx):
    if not ctx.connected_with_edges:
        return _skip("needs a connected graph with edges")
    expected = not (ctx.flags.is_cycle or ctx.flags.is_path)
    return _verdict(ctx.gamma_flags.is_connected == expected,
                    {"gamma_connected": ctx.gamma_flags.is_connected, "predicted": expected})


@_check("gamma_cut_edge")
def _gamma_cut_edge(ctx):
    if not ctx.connected_with_edges or not ctx.gamma_flags.is_connected:
        return _skip("needs gamma(X) connected")
    deg = ctx.degrees
    g = ctx.graph
    predicted = any(deg[v] == 1 and deg[g.neighbors(v)[0]] == 2 for v in range(g.n))
    found = bool(find_bridges(ctx.gamma))
    return _verdict(found == predicted, {"gamma_has_bridge": found, "predicted": predicted})


@_check("gamma_bipartite")
def _gamma_bipartite(ctx):
    if not ctx.connected_with_edges:
        return _skip("needs a connected graph with edges")
    return _verdict(ctx.gamma_flags.is_bipartite == ctx.flags.is_bipartite,
                    {"gamma_bipartite": ctx.gamma_flags.is_bipartite, "bipartite": ctx.flags.is_bipartite})


@_check("gamma_unicyclic")
def _gamma_unicyclic(ctx):
    if not ctx.connected_with_edges:
        return _skip("needs a connected graph with edges")
    deg = ctx.degrees
    predicted = ctx.flags.is_tree and max(deg) == 3 and deg.count(3) == 1
    return _verdict(ctx.gamma_flags.is_unicyclic == predicted,
                    {"gamma_unicyclic": ctx.gamma_flags.is_unicyclic, "predicted": predicted})


@_check("gamma_regular")
def _gamma_regular(ctx):
    if not ctx.connected_with_edges:
        return _skip("needs a connected graph with edges")
    flags, gamma_flags = ctx.flags, ctx.gamma_flags
    forward = not flags.is_regular or gamma_flags.is_regular
    backward = not gamma_flags.is_regular or flags.is_regular or flags.is_semiregular_bipartite
    return _verdict(forward and backward, {"regular": flags.is_regular, "gamma_regular": gamma_flags.is_regular,
                                           "semiregular_bipartite": flags.is_semiregular_bipartite})


@_check("gamma_eulerian")
def _gamma_eulerian(ctx):
    if not (ctx.flags.is_eulerian and ctx.gamma_flags.is_connected):
        return _skip("needs X Eulerian and gamma(X) connected")
    return _verdict(ctx.gamma_flags.is_eulerian, "gamma(X) is not Eulerian")


@_check("gamma_disjoint_union")
def _gamma_disjoint_union(ctx):
    other = generate("star", 3)
    union = symmetric_edge_graph(disjoint_union(ctx.graph, other))
    return _verdict(ctx.isomorphic(union, disjoint_union(ctx.gamma, symmetric_edge_graph(other))),
                    "gamma does not commute with disjoint union")


@_check("bipartite_orientation_blocks")
def _bipartite_orientation_blocks(ctx):
    if not ctx.flags.is_bipartite or ctx.graph.m < 1:
        return _skip("needs a bipartite graph with edges")
    blocks = gamma_blocks(edge_adjacency_matrix(ctx.graph, bipartite_orientation(ctx.graph)))
    return _verdict(not blocks.A0.any() and np.array_equal(blocks.B0, ctx.line.adjacency_matrix()),
                    {"A0": blocks.A0.tolist()})


@_check("triangle_doubling")
def _triangle_doubling(ctx):
    t1 = count_triangles(ctx.graph)
    t2 = count_triangles(ctx.gamma)
    t3 = count_triangles(symmetric_edge_graph(ctx.gamma))
    return _verdict(t2 == 2 * t1 and t3 == 4 * t1, {"t1": t1, "t2": t2, "t3": t3})


@_check("cover_triangles")
def _cover_triangles(ctx):
    claws = sum(d * (d - 1) * (d - 2) // 6 for d in ctx.degrees)
    t1 = count_triangles(ctx.graph)
    t_line = count_triangles(ctx.line)
    t_gamma = count_triangles(ctx.gamma)
    t_cover = count_triangles(ctx.line_of_cover)
    holds = t_line == t1 + claws and t_cover == 2 * claws and 2 * t_line == t_gamma + t_cover
    return _verdict(holds, {"line": t_line, "gamma": t_gamma, "line_of_cover": t_cover, "base": t1})


@_check("line_cover_connectivity")
def _line_cover_connectivity(ctx):
    if not ctx.connected_with_edges:
        return _skip("needs a connected graph with edges")
    connected = predicates(ctx.line_of_cover).is_connected
    return _verdict(connected == (not ctx.flags.is_bipartite),
                    {"line_of_cover_connected": connected, "bipartite": ctx.flags.is_bipartite})


@_check("cover_blocks")
def _cover_blocks(ctx):
    blocks = ctx.cover_blocks
    holds = (np.array_equal(blocks.P + blocks.Q, ctx.line.adjacency_matrix())
             and _disjoint(blocks.P, blocks.Q)
             and np.array_equal(blocks.full_matrix(), ctx.line_of_cover.adjacency_matrix()))
    return _verdict(holds, {"P": blocks.P.tolist(), "Q": blocks.Q.tolist()})


@_check("signed_blocks_identity")
def _signed_blocks_identity(ctx):
    gamma, cover = ctx.gamma_blocks, ctx.cover_blocks
    return _verdict(np.array_equal(gamma.A0 - gamma.B0, -(cover.P - cover.Q)),
                    {"A0-B0": (gamma.A0 - gamma.B0).tolist(), "P-Q": (cover.P - cover.Q).tolist()})


@_check("spectrum_split")
def _spectrum_split(ctx):
    line_spectrum = eigenvalues(ctx.line.adjacency_matrix())
    holds = True
    for blocks, full in ((ctx.gamma_blocks, ctx.gamma), (ctx.cover_blocks, ctx.line_of_cover)):
        total, difference = block_split_spectrum(blocks)
        full_spectrum = eigenvalues(full.adjacency_matrix())
        holds = holds and total.union(difference).close_to(full_spectrum) and total.close_to(line_spectrum)
    return _verdict(holds, "block spectra do not recombine into the cover spectrum")


@_check("spectrum_containment")
def _spectrum_containment(ctx):
    targets = {"gamma": ctx.gamma_poly,
               "line_of_cover": char_poly(ctx.line_of_cover.adjacency_matrix(), deadline=ctx.deadline),
               "cover_of_line": char_poly(ctx.cover_of_line.adjacency_matrix(), deadline=ctx.deadline)}
    failing = sorted(name for name, poly in targets.items() if not ctx.line_poly.divides(poly))
    return _verdict(not failing, {"not_divisible": failing, "line_char_poly": str(ctx.line_poly)})


@_check("bipartite_spectrum_symmetry")
def _bipartite_spectrum_symmetry(ctx):
    if not ctx.flags.is_bipartite:
        return _skip("needs a bipartite graph")
    sign = -1 if ctx.graph.m % 2 else 1
    expected = ctx.line_poly * ctx.line_poly.negate_argument() * sign
    return _verdict(ctx.gamma_poly == expected, {"gamma": str(ctx.gamma_poly), "expected": str(expected)})


@_check("zeta_cross_formula")
def _zeta_cross_formula(ctx):
    return _verdict(zeta_cross_check(ctx.graph, ctx.deadline), "Hashimoto and Bass determinants disagree")


@_check("zeta_constant_term")
def _zeta_constant_term(ctx):
    hashimoto = zeta_reciprocal_hashimoto(ctx.graph, ctx.deadline).poly
    bass = zeta_reciprocal_bass(ctx.graph, ctx.deadline).poly
    holds = (hashimoto.coefficient(0) == 1 and bass.coefficient(0) == 1
             and hashimoto.degree <= 2 * ctx.graph.m and hashimoto == bass)
    return _verdict(holds, {"hashimoto": str(hashimoto), "bass": str(bass)})


@_check("zeta_factorizations")
def _zeta_factorizations(ctx):
    if not ctx.connected_with_edges:
        return _skip("needs a connected graph with edges")
    results = verify_factorizations(ctx.graph, ctx.zetas, ctx.deadline)
    failed = {r.name: r.witness for r in results if r.status == FAIL}
    return _verdict(not failed, failed)


@_check("zeta_divisibility")
def _zeta_divisibility(ctx):
    if not ctx.min_degree_two:
        return _skip("needs a connected graph with minimum degree 2")
    line = ctx.zetas["line"]
    failing = sorted(name for name in ("gamma", "line_of_cover", "cover_of_line")
                     if not line.divides(ctx.zetas[name]))
    return _verdict(not failing, {"not_divisible": failing})


@_check("g_poly_quotient")
def _g_poly_quotient(ctx):
    if not ctx.min_degree_two:
        return _skip("needs a connected graph with minimum degree 2")
    quotient = ctx.zetas["gamma"].exact_div(ctx.zetas["line"])
    computed = g_poly(ctx.graph, ctx.deadline)
    return _verdict(quotient == computed, {"quotient": str(quotient), "g": str(computed)})


@_check("cover_coincidences")
def _cover_coincidences(ctx):
    if not ctx.connected_with_edges:
        return _skip("needs a connected graph with edges")
    found = classify_cover_coincidences(ctx.graph, ctx.vertex_bound, ctx.deadline)
    predicted = predicted_cover_coincidences(ctx.graph)
    return _verdict(found == predicted, {"found": found.to_json(), "predicted": predicted.to_json()})


@_check("equienergetic")
def _equienergetic(ctx):
    g = ctx.graph
    if not ctx.connected_with_edges or g.m < 5 or is_exceptional_for_gamma_line_cover(g):
        return _skip("needs a connected non-exceptional graph with at least 5 edges")
    report = equienergetic_report(g, ctx.tolerance, ctx.deadline)
    return _verdict(report.energies_equal and not report.cospectral, report.to_json())


@_check("crown_recovery")
def _crown_recovery(ctx):
    g = ctx.graph
    if not ctx.connected_with_edges or 2 * g.m > CROWN_SEARCH_BOUND:
        return _skip("needs a connected graph with edges and gamma(X) within the crown search bound")
    found = crown_recover(ctx.gamma, deadline=ctx.deadline)
    if found is None:
        return _verdict(False, "no crown partition reconstructs gamma(X)")
    rebuilt, partition = found
    if ctx.flags.is_cycle or ctx.flags.is_path:
        holds = ctx.isomorphic(symmetric_edge_graph(rebuilt), ctx.gamma)
    else:
        holds = ctx.isomorphic(rebuilt, g)
    return _verdict(holds, {"rebuilt": rebuilt.to_json(), "partition": partition.to_json()})


def check_suite(g: Graph, time_budget: float = GRAPH_TIME_BUDGET, tolerance: float = ENERGY_TOLERANCE,
                vertex_bound: int = COVER_VERTEX_BOUND) -> VerificationReport:
    """Run every registered check on the canonical relabeling of ``g``.

    Failures are data; checks are skipped when their hypotheses fail, when a
    size bound is hit or once ``time_budget`` seconds have elapsed. A graph
    whose canonical form does not finish within the budget is reported under
    its input labeling with every check skipped.
    """
    started = time.monotonic()
    deadline = None if time_budget is None else started + time_budget
    try:
        form = canonical_form(g, max(vertex_bound, g.n), deadline)
    except SearchTimeout:
        logger.warning("canonical form of {} ran past the time budget".format(g))
        form = CanonicalForm(g.n, g.edges, range(g.n))
    graph = relabel(g, form.labeling)
    ctx = CheckContext(graph, tolerance, vertex_bound, deadline)
    report = VerificationReport(form.certificate)
    for name, check in _CHECKS:
        if deadline is not None and time.monotonic() > deadline:
            report.add(CheckResult(name, SKIPPED, "time budget of {} s exhausted".format(time_budget)))
            continue
        began = time.perf_counter()
        try:
            status, witness = check(ctx)
        except (SearchTimeout, SizeLimitExceeded) as e:
            status, witness = SKIPPED, str(e)
        except Exception as e:
            logger.exception("check {} raised on {}".format(name, form.certificate))
            status, witness = FAIL, "{}: {}".format(type(e).__name__, e)
        report.add(CheckResult(name, status, witness, timing=round((time.perf_counter() - began) * 1000, 3)))
    logger.debug(repr(report))
    return report


def check_gamma_injectivity(graphs, vertex_bound: int = COVER_VERTEX_BOUND):
    """Pairs of non-isomorphic connected graphs with isomorphic gamma(X).

    Graphs are bucketed by cheap invariants of gamma(X); canonical forms are
    only compared inside a bucket.
    """
    buckets = {}
    for g in graphs:
        if not predicates(g).is_connected:
            continue
        gamma = symmetric_edge_graph(g)
        buckets.setdefault(walk_invariants(gamma), []).append((g, gamma))
    collisions = []
    for members in buckets.values():
        if len(members) < 2:
            continue
        forms = [(canonical_form(g, max(vertex_bound, g.n)), canonical_form(gamma, max(vertex_bound, gamma.n)))
                 for g, gamma in members]
        for (form_x, form_gx), (form_y, form_gy) in combinations(forms, 2):
            if form_gx == form_gy and form_x != form_y:
                collisions.append((form_x.certificate, form_y.certificate))
    return sorted(collisions)


def _report_worker(payload):
    g, time_budget, tolerance = payload
    return check_suite(g, time_budget=time_budget, tolerance=tolerance)


def run_corpus(graphs, jobs: int = 1, time_budget: float = GRAPH_TIME_BUDGET,
               tolerance: float = ENERGY_TOLERANCE, progress: bool = False):
    """check_suite over ``graphs``, merged in certificate order."""
    if jobs < 1:
        raise InvalidParameter("jobs must be positive, got {}".format(jobs))
    payloads = [(g, time_budget, tolerance) for g in graphs]
    if jobs == 1:
        reports = [_report_worker(p) for p in tqdm(payloads, desc="verifying", disable=not progress)]
    else:
        with Pool(jobs) as pool:
            reports = list(tqdm(pool.imap_unordered(_report_worker, payloads), total=len(payloads),
                                desc="verifying", disable=not progress))
    return sorted(reports, key=lambda r: r.graph_id)


def summarize(reports) -> pd.DataFrame:
    """Checks x status counts."""
    rows = [{"check": c.name, "status": c.status} for r in reports for c in r.checks]
    if not rows:
        return pd.DataFrame(columns=[PASS, FAIL, SKIPPED])
    frame = pd.DataFrame(rows)
    table = pd.crosstab(frame["check"], frame["status"])
    table = table.reindex(index=check_names(), columns=[PASS, FAIL, SKIPPED], fill_value=0)
    return table.fillna(0).astype(int)
