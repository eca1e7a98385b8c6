"""Graph transformations: orientations, the non-backtracking edge adjacency
matrix M, the symmetric edge graph, line graphs, the Kronecker double cover
with its edge labeling, block extraction and crown-partition recovery.

Directed edges ("arcs") of an oriented graph with m edges are indexed
``0..2m-1``: arc ``i < m`` is the i-th oriented edge, arc ``m + i`` its
reverse.
"""
import logging
import time
from collections import defaultdict

import numpy as np

from covers.errors import (InvalidParameter, LabelingMismatch, OrientationMismatch, SearchTimeout,
                           SizeLimitExceeded)
from covers.graph_core import DEFAULT_VERTEX_BOUND, Graph, are_isomorphic, bipartition

logger = logging.getLogger(__name__)

GAMMA_VERTEX_BOUND = 2048
CROWN_SEARCH_BOUND = 24


class Orientation(object):
    """One direction per edge of ``graph``; ``directed_edges[i]`` is arc ``i``."""

    def __init__(self, graph: Graph, directed_edges):
        directed_edges = [(int(s), int(t)) for s, t in directed_edges]
        if len(directed_edges) != graph.m:
            raise OrientationMismatch("expected {} directed edges, got {}".format(graph.m, len(directed_edges)))
        covered = set()
        for s, t in directed_edges:
            if s == t or not graph.has_edge(s, t):
                raise OrientationMismatch("({}, {}) is not an edge of the graph".format(s, t))
            covered.add((min(s, t), max(s, t)))
        if len(covered) != graph.m:
            raise OrientationMismatch("an edge is oriented twice")
        self.graph = graph
        self.directed_edges = tuple(directed_edges)

    @property
    def m(self):
        return len(self.directed_edges)

    def arcs(self):
        """All 2m arcs: the oriented edges followed by their reverses."""
        return list(self.directed_edges) + [(t, s) for s, t in self.directed_edges]

    def undirected_edges(self):
        return [(min(s, t), max(s, t)) for s, t in self.directed_edges]

    def __repr__(self):
        return "Orientation({})".format(list(self.directed_edges))


def default_orientation(g: Graph) -> Orientation:
    return orientation_from_pairs(g, g.edges)


def bipartite_orientation(g: Graph) -> Orientation:
    """Direct every edge from colour class 0 to colour class 1."""
    colour = bipartition(g)
    if colour is None:
        raise InvalidParameter("graph is not bipartite")
    return orientation_from_pairs(g, [(u, v) if colour[u] == 0 else (v, u) for u, v in g.edges])


def orientation_from_pairs(g: Graph, pairs) -> Orientation:
    """Orientation with arc ``i`` = ``pairs[i]``; every edge of ``g`` exactly once."""
    return Orientation(g, pairs)


def reorientation_permutation(first: Orientation, second: Orientation):
    """Arc permutation taking labels under ``first`` to labels under ``second``.

    Both orientations must list the same edges in the same order.
    """
    if first.undirected_edges() != second.undirected_edges():
        raise OrientationMismatch("orientations list different edge sequences")
    m = first.m
    permutation = list(range(2 * m))
    for i, (a, b) in enumerate(zip(first.directed_edges, second.directed_edges)):
        if a != b:
            permutation[i], permutation[m + i] = m + i, i
    return permutation


class EdgeAdjacencyMatrix(object):
    """The 2m x 2m non-backtracking matrix with quadrants A, B, C, D."""

    def __init__(self, orientation: Orientation, entries):
        self.orientation = orientation
        self.m = orientation.m
        self.entries = entries

    @property
    def A(self):
        return self.entries[:self.m, :self.m]

    @property
    def B(self):
        return self.entries[:self.m, self.m:]

    @property
    def C(self):
        return self.entries[self.m:, :self.m]

    @property
    def D(self):
        return self.entries[self.m:, self.m:]

    @property
    def J(self):
        m = self.m
        j = np.zeros((2 * m, 2 * m), dtype=np.int64)
        j[:m, m:] = np.eye(m, dtype=np.int64)
        j[m:, :m] = np.eye(m, dtype=np.int64)
        return j

    def symmetrized(self):
        return self.entries + self.entries.T

    def __repr__(self):
        return "EdgeAdjacencyMatrix(m={})".format(self.m)


def edge_adjacency_matrix(g: Graph, orientation: Orientation = None) -> EdgeAdjacencyMatrix:
    orientation = orientation or default_orientation(g)
    if orientation.graph != g:
        raise OrientationMismatch("orientation belongs to a different graph")
    arcs = orientation.arcs()
    leaving = defaultdict(list)
    for j, (s, _) in enumerate(arcs):
        leaving[s].append(j)
    entries = np.zeros((len(arcs), len(arcs)), dtype=np.int64)
    for i, (s, t) in enumerate(arcs):
        for j in leaving[t]:
            if arcs[j][1] != s:
                entries[i, j] = 1
    return EdgeAdjacencyMatrix(orientation, entries)


class _SplitBlocks(object):
    """Symmetric 2x2 block matrix [[X, Y], [Y, X]]; its spectrum splits into
    the spectra of X + Y and X - Y."""

    def split_pair(self):
        raise NotImplementedError()

    def full_matrix(self):
        raise NotImplementedError()


class GammaBlocks(_SplitBlocks):

    def __init__(self, A0, B0):
        self.A0 = A0
        self.B0 = B0

    def split_pair(self):
        return self.A0 + self.B0, self.A0 - self.B0

    def full_matrix(self):
        return np.block([[self.A0, self.B0], [self.B0, self.A0]])


class CoverBlocks(_SplitBlocks):

    def __init__(self, P, Q):
        self.P = P
        self.Q = Q

    @property
    def R(self):
        return self.P

    def split_pair(self):
        return self.P + self.Q, self.P - self.Q

    def full_matrix(self):
        return np.block([[self.P, self.Q], [self.Q.T, self.P]])


def gamma_blocks(mtx: EdgeAdjacencyMatrix) -> GammaBlocks:
    return GammaBlocks(mtx.A + mtx.D, mtx.B + mtx.C)


def _graph_from_matrix(matrix) -> Graph:
    rows, cols = np.nonzero(np.triu(matrix, k=1))
    return Graph(matrix.shape[0], sorted(zip(rows.tolist(), cols.tolist())))


def symmetric_edge_graph(g: Graph, orientation: Orientation = None) -> Graph:
    """Graph with adjacency matrix M + M^T, vertices ordered e_1..e_m, e_1^-1..e_m^-1."""
    return _graph_from_matrix(edge_adjacency_matrix(g, orientation).symmetrized())


def gamma_iterate(g: Graph, k: int, vertex_bound: int = GAMMA_VERTEX_BOUND) -> Graph:
    if k < 0:
        raise InvalidParameter("iteration count must be nonnegative, got {}".format(k))
    current = g
    for step in range(k):
        if 2 * current.m > vertex_bound:
            raise SizeLimitExceeded("gamma step {} would produce {} vertices (bound {})".format(
                step + 1, 2 * current.m, vertex_bound))
        current = symmetric_edge_graph(current)
    return current


def line_graph_of_edges(edges) -> Graph:
    """Line graph over an explicit edge sequence; vertex i is ``edges[i]``."""
    edges = [tuple(e) for e in edges]
    incident = defaultdict(list)
    for i, (u, v) in enumerate(edges):
        incident[u].append(i)
        incident[v].append(i)
    adjacent = set()
    for members in incident.values():
        for x in range(len(members)):
            for y in range(x + 1, len(members)):
                i, j = members[x], members[y]
                adjacent.add((min(i, j), max(i, j)))
    return Graph(len(edges), sorted(adjacent))


def line_graph(g: Graph) -> Graph:
    return line_graph_of_edges(g.edges)


class CoverLabeling(object):
    """Labeled edges of the Kronecker double cover.

    Cover vertex ``i`` is v'_{i+1} and ``n + i`` is v'_{n+i+1}. ``cover_edges[k]``
    is e_{k+1} and ``cover_edges[m + k]`` is e_{k+1}^-1, each as (source, target).
    """

    def __init__(self, vertex_count, base_edge_count, cover_edges):
        self.vertex_count = vertex_count
        self.base_edge_count = base_edge_count
        self.cover_edges = tuple(cover_edges)

    def label(self, k):
        m = self.base_edge_count
        return "e_{}".format(k + 1) if k < m else "e_{}^-1".format(k - m + 1)

    def to_json(self):
        return [{"label": self.label(k), "source": s, "target": t} for k, (s, t) in enumerate(self.cover_edges)]

    def __repr__(self):
        return "CoverLabeling(n={}, m={})".format(self.vertex_count, self.base_edge_count)


def kronecker_double_cover(g: Graph, orientation: Orientation = None):
    """Return (X x K_2, labeling induced by ``orientation``).

    Base arc v_i -> v_j gives e_k = (v'_i, v'_{n+j}) and e_{m+k} = (v'_j, v'_{n+i}).
    """
    orientation = orientation or default_orientation(g)
    n = g.n
    forward = [(s, n + t) for s, t in orientation.directed_edges]
    backward = [(t, n + s) for s, t in orientation.directed_edges]
    cover = Graph(2 * n, sorted(forward + backward))
    return cover, CoverLabeling(n, orientation.m, forward + backward)


def kronecker_product(g: Graph, h: Graph) -> Graph:
    """Tensor product; vertex (x, a) is ``x * h.n + a``."""
    edges = set()
    for x, y in g.edges:
        for a, b in h.edges:
            for p, q in ((x * h.n + a, y * h.n + b), (x * h.n + b, y * h.n + a)):
                edges.add((min(p, q), max(p, q)))
    return Graph(g.n * h.n, sorted(edges))


def line_of_cover(g: Graph) -> Graph:
    """L(X''), vertices in CoverLabeling order."""
    _, labeling = kronecker_double_cover(g)
    return line_graph_of_edges(labeling.cover_edges)


def cover_of_line(g: Graph) -> Graph:
    """L(X)''."""
    return kronecker_double_cover(line_graph(g))[0]


def cover_blocks(g: Graph, labeling: CoverLabeling) -> CoverBlocks:
    m = g.m
    cover, _ = kronecker_double_cover(g)
    normalized = sorted((min(s, t), max(s, t)) for s, t in labeling.cover_edges)
    if labeling.base_edge_count != m or labeling.vertex_count != g.n or normalized != list(cover.edges):
        raise LabelingMismatch("labeling does not enumerate the edges of the double cover")
    a = line_graph_of_edges(labeling.cover_edges).adjacency_matrix()
    P, Q = a[:m, :m], a[:m, m:]
    if not np.array_equal(a[m:, m:], P):
        raise LabelingMismatch("bottom-right block differs from top-left block")
    if not np.array_equal(Q, Q.T) or not np.array_equal(a[m:, :m], Q.T):
        raise LabelingMismatch("off-diagonal block is not symmetric")
    return CoverBlocks(P, Q)


def fiber_map(base_size: int):
    """Projection ``v -> v mod base_size`` shared by all three double covers."""
    return [v % base_size for v in range(2 * base_size)]


def is_double_cover(y: Graph, x: Graph, fiber) -> bool:
    fiber = list(fiber)
    if len(fiber) != y.n or any(not (0 <= f < x.n) for f in fiber):
        return False
    sizes = [0] * x.n
    for f in fiber:
        sizes[f] += 1
    if any(size != 2 for size in sizes):
        return False
    for v in range(y.n):
        image = [fiber[w] for w in y.neighbors(v)]
        if len(set(image)) != len(image) or set(image) != set(x.neighbors(fiber[v])):
            return False
    return True


class CrownPartition(object):
    """Crown parts as (left, right) vertex sets, plus the vertices lying in fewer than two parts."""

    def __init__(self, parts, uncovered):
        self.parts = [(tuple(sorted(left)), tuple(sorted(right))) for left, right in parts]
        self.uncovered = frozenset(uncovered)

    def to_json(self):
        return {"parts": [[list(l), list(r)] for l, r in self.parts], "uncovered": sorted(self.uncovered)}

    def __repr__(self):
        return "CrownPartition(parts={}, uncovered={})".format(self.parts, sorted(self.uncovered))


class _CrownSearch(object):
    """Backtracking search for an edge partition of ``y`` into induced crowns
    with every vertex in at most two parts."""

    def __init__(self, y: Graph, deadline=None):
        self.y = y
        self.deadline = deadline
        self.adjacent = [set(y.neighbors(v)) for v in range(y.n)]
        self._candidates = {}
        self.nodes = 0

    def crowns_through(self, a, b):
        """Every induced crown (k >= 2) containing edge (a, b), largest first."""
        if (a, b) in self._candidates:
            return self._candidates[(a, b)]
        adjacent = self.adjacent
        found = {}

        def extend(left, right, start):
            key = frozenset(left) | frozenset(right)
            if key not in found:
                found[key] = (frozenset(left), frozenset(right))
            for l in range(start, self.y.n):
                if l in key or not all(r in adjacent[l] for r in right) or any(x in adjacent[l] for x in left):
                    continue
                for r in range(self.y.n):
                    if r in key or r == l or r in adjacent[l]:
                        continue
                    if all(x in adjacent[r] for x in left) and not any(x in adjacent[r] for x in right):
                        extend(left + [l], right + [r], l + 1)

        # pairs (a, ra) and (lb, b) are the non-adjacent mates
        for ra in range(self.y.n):
            if ra in (a, b) or ra in adjacent[a] or ra in adjacent[b]:
                continue
            for lb in adjacent[ra]:
                if lb in (a, b) or lb in adjacent[b] or lb in adjacent[a]:
                    continue
                extend([a, lb], [ra, b], 0)

        ordered = sorted(found.values(), key=lambda lr: (-len(lr[0]), sorted(lr[0] | lr[1])))
        self._candidates[(a, b)] = ordered
        return ordered

    def partitions(self):
        """Yield complete partitions as lists of (left, right) pairs."""
        covered = set()
        count = [0] * self.y.n
        chosen = []
        yield from self._search(covered, count, chosen)

    def _edges_of(self, left, right):
        return [(min(l, r), max(l, r)) for l in left for r in right if r in self.adjacent[l]]

    def _search(self, covered, count, chosen):
        self.nodes += 1
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise SearchTimeout("crown search exceeded its deadline after {} nodes".format(self.nodes))
        edge = next((e for e in self.y.edges if e not in covered), None)
        if edge is None:
            yield list(chosen)
            return
        for left, right in self.crowns_through(*edge):
            members = left | right
            if any(count[v] >= 2 for v in members):
                continue
            edges = self._edges_of(left, right)
            if any(e in covered for e in edges):
                continue
            covered.update(edges)
            for v in members:
                count[v] += 1
            if all(count[v] < 2 or all((min(v, w), max(v, w)) in covered for w in self.adjacent[v])
                   for v in members):
                chosen.append((left, right))
                yield from self._search(covered, count, chosen)
                chosen.pop()
            for v in members:
                count[v] -= 1
            covered.difference_update(edges)


def _reconstruct(y: Graph, parts):
    """Base graph of a crown partition, or None when the partition has the wrong parity."""
    count = [0] * y.n
    for left, right in parts:
        for v in left | right:
            count[v] += 1
    isolated = [v for v in range(y.n) if count[v] == 0]
    if len(isolated) % 2:
        return None
    edges = []
    k = len(parts)
    for i in range(k):
        for j in range(i + 1, k):
            if (parts[i][0] | parts[i][1]) & (parts[j][0] | parts[j][1]):
                edges.append((i, j))
    next_vertex = k
    for i, (left, right) in enumerate(parts):
        single = sum(1 for v in left | right if count[v] == 1)
        if single % 2:
            return None
        for _ in range(single // 2):
            edges.append((i, next_vertex))
            next_vertex += 1
    for _ in range(len(isolated) // 2):
        edges.append((next_vertex, next_vertex + 1))
        next_vertex += 2
    return Graph(next_vertex, sorted(edges)), [v for v in range(y.n) if count[v] < 2]


def crown_recover(y: Graph, vertex_bound: int = CROWN_SEARCH_BOUND, deadline: float = None):
    """Find X with gamma(X) isomorphic to ``y`` through a crown partition.

    Returns (X, CrownPartition) or None. ``deadline`` is a ``time.monotonic``
    timestamp.
    """
    if y.n > vertex_bound:
        raise SizeLimitExceeded("crown search limited to {} vertices, got {}".format(vertex_bound, y.n))
    search = _CrownSearch(y, deadline)
    tried = 0
    for parts in search.partitions():
        tried += 1
        rebuilt = _reconstruct(y, parts)
        if rebuilt is None:
            continue
        x, uncovered = rebuilt
        if 2 * x.m == y.n and are_isomorphic(symmetric_edge_graph(x), y,
                                             vertex_bound=max(y.n, DEFAULT_VERTEX_BOUND)):
            logger.debug("crown recovery: {} partitions tried, {} search nodes".format(tried, search.nodes))
            return x, CrownPartition(parts, uncovered)
    logger.debug("crown recovery failed: {} partitions tried, {} search nodes".format(tried, search.nodes))
    return None
