"""Simple undirected graphs, named families, structural predicates and
canonical labeling.

Vertices are ``0..n-1``. Edges are stored as sorted ``(min, max)`` pairs in
lexicographic order; that order fixes the default edge labels used by every
construction downstream.
"""
import logging
from collections import Counter, defaultdict
from itertools import combinations

import networkx as nx
import numpy as np

from covers.errors import (CoversError, DuplicateEdge, EdgeListFormatError, InvalidParameter,
                           LoopEdge, SizeLimitExceeded, VertexOutOfRange, check_deadline)

logger = logging.getLogger(__name__)

DEFAULT_VERTEX_BOUND = 20

# closed-walk counts used to reject non-isomorphic pairs early
_WALK_INVARIANT_MAX_POWER = 8


class Graph(object):
    """Immutable simple graph. Build it with ``from_edge_list`` or ``generate``."""

    def __init__(self, vertex_count: int, edges):
        self.vertex_count = vertex_count
        self.edges = tuple(edges)
        adjacency = [[] for _ in range(vertex_count)]
        for u, v in self.edges:
            adjacency[u].append(v)
            adjacency[v].append(u)
        self._adjacency = tuple(tuple(sorted(a)) for a in adjacency)
        self._edge_set = frozenset(self.edges)

    @property
    def n(self):
        return self.vertex_count

    @property
    def m(self):
        return len(self.edges)

    def neighbors(self, v):
        return self._adjacency[v]

    def has_edge(self, u, v):
        return (min(u, v), max(u, v)) in self._edge_set

    def adjacency_matrix(self):
        a = np.zeros((self.n, self.n), dtype=np.int64)
        for u, v in self.edges:
            a[u, v] = 1
            a[v, u] = 1
        return a

    def to_networkx(self):
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g

    def to_json(self):
        return {"n": self.n, "edges": [list(e) for e in self.edges]}

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.vertex_count == other.vertex_count and self.edges == other.edges

    def __hash__(self):
        return hash((self.vertex_count, self.edges))

    def __str__(self):
        return self.__repr__()

    def __repr__(self):
        return "Graph(n={}, edges={})".format(self.n, list(self.edges))


class CanonicalForm(object):
    """Isomorphism-class certificate of a graph.

    ``labeling[v]`` is the canonical position of vertex ``v``;
    ``canonical_edge_list`` is the edge list after that relabeling and
    ``certificate`` its graph6 string. Equality is certificate equality.
    """

    def __init__(self, vertex_count, canonical_edge_list, labeling):
        self.vertex_count = vertex_count
        self.canonical_edge_list = tuple(canonical_edge_list)
        self.labeling = tuple(labeling)
        self.certificate = _graph6(vertex_count, self.canonical_edge_list)

    def __eq__(self, other):
        if not isinstance(other, CanonicalForm):
            return NotImplemented
        return self.certificate == other.certificate

    def __hash__(self):
        return hash(self.certificate)

    def __repr__(self):
        return "CanonicalForm({})".format(self.certificate)

    def to_json(self):
        return {"certificate": self.certificate,
                "canonical_edge_list": [list(e) for e in self.canonical_edge_list]}


class GraphPredicates(object):

    def __init__(self, **flags):
        self.is_connected = flags["is_connected"]
        self.is_bipartite = flags["is_bipartite"]
        self.is_eulerian = flags["is_eulerian"]
        self.is_claw_free = flags["is_claw_free"]
        self.is_regular = flags["is_regular"]
        self.is_semiregular_bipartite = flags["is_semiregular_bipartite"]
        self.is_tree = flags["is_tree"]
        self.is_unicyclic = flags["is_unicyclic"]
        self.is_cycle = flags["is_cycle"]
        self.is_path = flags["is_path"]

    def to_json(self):
        return dict(vars(self))

    def __repr__(self):
        return "GraphPredicates({})".format(self.to_json())


def _graph6(vertex_count, edges):
    g = nx.Graph()
    g.add_nodes_from(range(vertex_count))
    g.add_edges_from(edges)
    return nx.to_graph6_bytes(g, header=False).decode("ascii").strip()


def from_edge_list(n: int, pairs, strict: bool = True) -> Graph:
    """Validate ``pairs`` and build a graph on ``n`` vertices.

    With ``strict=False`` repeated pairs are merged instead of rejected.
    """
    if not isinstance(n, (int, np.integer)) or n < 0:
        raise InvalidParameter("vertex count must be a nonnegative integer, got {!r}".format(n))
    seen = set()
    for pair in pairs:
        u, v = (int(x) for x in pair)
        if u == v:
            raise LoopEdge("loop at vertex {}".format(u))
        if not (0 <= u < n and 0 <= v < n):
            raise VertexOutOfRange("edge ({}, {}) outside [0, {})".format(u, v, n))
        edge = (min(u, v), max(u, v))
        if edge in seen and strict:
            raise DuplicateEdge("edge {} listed twice".format(edge))
        seen.add(edge)
    return Graph(int(n), sorted(seen))


def parse_edge_list(text: str, strict: bool = True) -> Graph:
    """Read the ``n m`` header plus ``m`` lines of ``u v``. ``#`` lines are comments."""
    rows = []
    for line_num, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) != 2:
            raise EdgeListFormatError("line {}: expected two integers, got {!r}".format(line_num, line))
        try:
            rows.append((int(fields[0]), int(fields[1])))
        except ValueError:
            raise EdgeListFormatError("line {}: non-integer token in {!r}".format(line_num, line))
    if not rows:
        raise EdgeListFormatError("missing 'n m' header")
    (n, m), pairs = rows[0], rows[1:]
    if m != len(pairs):
        raise EdgeListFormatError("header announces {} edges, found {}".format(m, len(pairs)))
    return from_edge_list(n, pairs, strict=strict)


def format_edge_list(g: Graph) -> str:
    lines = ["{} {}".format(g.n, g.m)]
    lines.extend("{} {}".format(u, v) for u, v in g.edges)
    return "\n".join(lines) + "\n"


def _require(condition, message):
    if not condition:
        raise InvalidParameter(message)


def generate(family: str, *params) -> Graph:
    """Named families: cycle, path, complete, star, complete_bipartite, crown,
    prism, empty, hypercube."""
    params = [int(p) for p in params]
    arity = {"cycle": 1, "path": 1, "complete": 1, "star": 1, "complete_bipartite": 2,
             "crown": 1, "prism": 1, "empty": 1, "hypercube": 1}
    if family not in arity:
        raise InvalidParameter("unknown family {!r}".format(family))
    if len(params) != arity[family]:
        raise InvalidParameter("{} takes {} parameter(s), got {}".format(family, arity[family], len(params)))

    if family == "cycle":
        k = params[0]
        _require(k >= 3, "cycle needs k >= 3")
        return from_edge_list(k, [(i, (i + 1) % k) for i in range(k)])
    if family == "path":
        k = params[0]
        _require(k >= 1, "path needs k >= 1")
        return from_edge_list(k, [(i, i + 1) for i in range(k - 1)])
    if family == "complete":
        k = params[0]
        _require(k >= 1, "complete needs k >= 1")
        return from_edge_list(k, combinations(range(k), 2))
    if family == "star":
        k = params[0]
        _require(k >= 1, "star needs k >= 1")
        return from_edge_list(k + 1, [(0, i) for i in range(1, k + 1)])
    if family == "complete_bipartite":
        a, b = params
        _require(a >= 1 and b >= 1, "complete_bipartite needs a, b >= 1")
        return from_edge_list(a + b, [(i, a + j) for i in range(a) for j in range(b)])
    if family == "crown":
        k = params[0]
        _require(k >= 1, "crown needs k >= 1")
        return from_edge_list(2 * k, [(i, k + j) for i in range(k) for j in range(k) if i != j])
    if family == "prism":
        k = params[0]
        _require(k >= 3, "prism needs k >= 3")
        outer = [(i, (i + 1) % k) for i in range(k)]
        inner = [(k + i, k + (i + 1) % k) for i in range(k)]
        spokes = [(i, k + i) for i in range(k)]
        return from_edge_list(2 * k, outer + inner + spokes)
    if family == "empty":
        k = params[0]
        _require(k >= 0, "empty needs n >= 0")
        return Graph(k, [])
    # hypercube
    d = params[0]
    _require(1 <= d <= 10, "hypercube needs 1 <= d <= 10")
    size = 1 << d
    return from_edge_list(size, [(v, v ^ (1 << b)) for v in range(size) for b in range(d) if v < v ^ (1 << b)])


def degrees(g: Graph):
    return [len(g.neighbors(v)) for v in range(g.n)]


def components(g: Graph):
    """Vertex lists of the connected components, ordered by smallest vertex."""
    return sorted((sorted(c) for c in nx.connected_components(g.to_networkx())), key=lambda c: c[0])


def is_connected(g: Graph) -> bool:
    return len(components(g)) == 1


def bipartition(g: Graph):
    """A 0/1 colouring with colour 0 on the smallest vertex of each component,
    or None for non-bipartite graphs."""
    colour = [None] * g.n
    for component in components(g):
        colour[component[0]] = 0
        queue = [component[0]]
        for v in queue:
            for w in g.neighbors(v):
                if colour[w] is None:
                    colour[w] = 1 - colour[v]
                    queue.append(w)
                elif colour[w] == colour[v]:
                    return None
    return colour


def _is_semiregular_bipartite(g, colour):
    if colour is None:
        return False
    deg = degrees(g)
    sides = []
    for component in components(g):
        sides.append(tuple(frozenset(deg[v] for v in component if colour[v] == c) for c in (0, 1)))
    candidates = set()
    for left, right in sides:
        for d1 in left | {None}:
            for d2 in right | {None}:
                candidates.add((d1, d2))
                candidates.add((d2, d1))

    def fits(side, d):
        return not side or side == {d}

    for d1, d2 in candidates:
        if all((fits(a, d1) and fits(b, d2)) or (fits(a, d2) and fits(b, d1)) for a, b in sides):
            return True
    return False


def is_claw_free(g: Graph) -> bool:
    for v in range(g.n):
        for a, b, c in combinations(g.neighbors(v), 3):
            if not (g.has_edge(a, b) or g.has_edge(a, c) or g.has_edge(b, c)):
                return False
    return True


def predicates(g: Graph) -> GraphPredicates:
    deg = degrees(g)
    connected = is_connected(g)
    colour = bipartition(g)
    return GraphPredicates(
        is_connected=connected,
        is_bipartite=colour is not None,
        is_eulerian=connected and all(d % 2 == 0 for d in deg),
        is_claw_free=is_claw_free(g),
        is_regular=len(set(deg)) <= 1,
        is_semiregular_bipartite=_is_semiregular_bipartite(g, colour),
        is_tree=connected and g.m == g.n - 1,
        is_unicyclic=connected and g.m == g.n,
        is_cycle=connected and g.n >= 3 and all(d == 2 for d in deg),
        is_path=connected and g.m == g.n - 1 and max(deg, default=0) <= 2,
    )


def count_triangles(g: Graph) -> int:
    count = 0
    for u, v in g.edges:
        count += sum(1 for w in g.neighbors(v) if w > v and g.has_edge(u, w))
    return count


def find_bridges(g: Graph):
    return {(min(u, v), max(u, v)) for u, v in nx.bridges(g.to_networkx())}


def disjoint_union(g: Graph, h: Graph) -> Graph:
    shifted = [(u + g.n, v + g.n) for u, v in h.edges]
    return Graph(g.n + h.n, list(g.edges) + shifted)


def relabel(g: Graph, permutation) -> Graph:
    """Vertex ``v`` of ``g`` becomes ``permutation[v]``."""
    permutation = [int(p) for p in permutation]
    if sorted(permutation) != list(range(g.n)):
        raise InvalidParameter("not a permutation of range({})".format(g.n))
    return from_edge_list(g.n, [(permutation[u], permutation[v]) for u, v in g.edges])


def random_relabeling(g: Graph, seed: int) -> Graph:
    return relabel(g, np.random.RandomState(seed).permutation(g.n))


def _rank(keys):
    index = {key: i for i, key in enumerate(sorted(set(keys)))}
    return [index[key] for key in keys]


def _refine(adjacency, colours):
    """Refine ``colours`` to the coarsest equitable colouring below it.

    Cells keep their relative order, so the result and the returned trace
    only depend on the isomorphism type of the coloured graph.
    """
    trace = []
    cell_count = len(set(colours))
    while True:
        keys = [(colours[v], tuple(sorted(colours[w] for w in adjacency[v]))) for v in range(len(adjacency))]
        trace.append(tuple(sorted(Counter(keys).items())))
        colours = _rank(keys)
        new_count = len(set(colours))
        if new_count == cell_count:
            return colours, tuple(trace)
        cell_count = new_count


def _individualize(colours, vertex):
    return _rank([(c, 0 if v == vertex else 1) for v, c in enumerate(colours)])


class _CanonicalSearch(object):
    """Individualization-refinement search tree with trace and automorphism pruning."""

    def __init__(self, g: Graph, deadline=None):
        self.deadline = deadline
        self.graph = g
        self.adjacency = [g.neighbors(v) for v in range(g.n)]
        self.best = None
        self.first = None
        self.automorphisms = []
        self.leaves = 0

    def run(self):
        colours, trace = _refine(self.adjacency, [0] * self.graph.n)
        self._visit(colours, [trace], [])
        logger.debug("canonical search on n={}: {} leaves, {} automorphisms".format(
            self.graph.n, self.leaves, len(self.automorphisms)))
        traces, edges, labeling = self.best
        return labeling, edges

    def _visit(self, colours, traces, fixed):
        check_deadline(self.deadline, "canonical search on {} vertices".format(self.graph.n))
        if self.best is not None and traces > self.best[0][:len(traces)]:
            return
        cells = defaultdict(list)
        for v, c in enumerate(colours):
            cells[c].append(v)
        target = next((cells[c] for c in sorted(cells) if len(cells[c]) > 1), None)
        if target is None:
            self._leaf(colours, traces)
            return
        explored = []
        for v in target:
            if explored and self._same_orbit(v, explored, fixed):
                continue
            explored.append(v)
            child, trace = _refine(self.adjacency, _individualize(colours, v))
            self._visit(child, traces + [trace], fixed + [v])

    def _leaf(self, labeling, traces):
        self.leaves += 1
        edges = tuple(sorted((min(labeling[u], labeling[v]), max(labeling[u], labeling[v]))
                             for u, v in self.graph.edges))
        leaf = (traces, edges, tuple(labeling))
        if self.first is None:
            self.first = self.best = leaf
            return
        for known in (self.first, self.best):
            if known[0] == traces and known[1] == edges:
                self._record_automorphism(known[2], labeling)
        if (traces, edges) < (self.best[0], self.best[1]):
            self.best = leaf

    def _record_automorphism(self, known_labeling, labeling):
        inverse = [0] * len(labeling)
        for v, position in enumerate(known_labeling):
            inverse[position] = v
        automorphism = tuple(inverse[labeling[v]] for v in range(len(labeling)))
        if automorphism != tuple(range(len(labeling))) and automorphism not in self.automorphisms:
            self.automorphisms.append(automorphism)

    def _same_orbit(self, v, explored, fixed):
        parent = list(range(self.graph.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for automorphism in self.automorphisms:
            if any(automorphism[x] != x for x in fixed):
                continue
            for x, y in enumerate(automorphism):
                rx, ry = find(x), find(y)
                if rx != ry:
                    parent[rx] = ry
        root = find(v)
        return any(find(w) == root for w in explored)


def canonical_form(g: Graph, vertex_bound: int = DEFAULT_VERTEX_BOUND, deadline=None) -> CanonicalForm:
    if g.n > vertex_bound:
        raise SizeLimitExceeded("canonical form limited to {} vertices, got {}".format(vertex_bound, g.n))
    labeling, edges = _CanonicalSearch(g, deadline).run()
    return CanonicalForm(g.n, edges, labeling)


def canonical_relabeling(g: Graph, vertex_bound: int = DEFAULT_VERTEX_BOUND) -> Graph:
    return relabel(g, canonical_form(g, vertex_bound).labeling)


def walk_invariants(g: Graph):
    """Order, size, degree sequence and closed-walk counts tr(A^k)."""
    a = g.adjacency_matrix()
    power = np.eye(g.n, dtype=np.int64)
    traces = []
    for _ in range(min(g.n, _WALK_INVARIANT_MAX_POWER)):
        power = power @ a
        traces.append(int(np.trace(power)))
    return g.n, g.m, tuple(sorted(degrees(g))), tuple(traces)


def find_isomorphism(g: Graph, h: Graph, vertex_bound: int = DEFAULT_VERTEX_BOUND, deadline=None):
    """Return ``phi`` with ``phi[v]`` the image in ``h`` of vertex ``v`` of ``g``,
    or None when the graphs are not isomorphic."""
    for graph in (g, h):
        if graph.n > vertex_bound:
            raise SizeLimitExceeded("isomorphism limited to {} vertices, got {}".format(vertex_bound, graph.n))
    if walk_invariants(g) != walk_invariants(h):
        return None
    form_g = canonical_form(g, vertex_bound, deadline)
    form_h = canonical_form(h, vertex_bound, deadline)
    if form_g != form_h:
        return None
    inverse_h = [0] * h.n
    for v, position in enumerate(form_h.labeling):
        inverse_h[position] = v
    witness = [inverse_h[form_g.labeling[v]] for v in range(g.n)]
    if not all(h.has_edge(witness[u], witness[v]) for u, v in g.edges):
        raise CoversError("isomorphism witness failed to verify for {} and {}".format(g, h))
    return witness


def are_isomorphic(g: Graph, h: Graph, vertex_bound: int = DEFAULT_VERTEX_BOUND, deadline=None) -> bool:
    return find_isomorphism(g, h, vertex_bound, deadline) is not None
