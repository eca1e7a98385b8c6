from hypothesis import strategies as st

from covers.graph_core import Graph


@st.composite
def small_graphs(draw, min_vertices=1, max_vertices=7, connected=False):
    """Arbitrary simple graphs; ``connected`` adds a spanning path first."""
    n = draw(st.integers(min_value=min_vertices, max_value=max_vertices))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    edges = {p for p, keep in zip(pairs, chosen) if keep}
    if connected:
        edges.update((v, v + 1) for v in range(n - 1))
    return Graph(n, sorted(edges))
