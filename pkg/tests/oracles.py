from functools import lru_cache
from itertools import permutations

from covers.spectral import IntPoly


def cofactor_det(entries):
    """Determinant of a square matrix of IntPoly by Laplace expansion along
    rows, memoized on the set of columns still unused."""
    size = len(entries)

    @lru_cache(maxsize=None)
    def minor(row, columns):
        if row == size:
            return IntPoly([1])
        total = IntPoly()
        position = 0
        for col in range(size):
            if not columns >> col & 1:
                continue
            entry = entries[row][col]
            if not entry.is_zero():
                term = entry * minor(row + 1, columns & ~(1 << col))
                total = total + term if position % 2 == 0 else total - term
            position += 1
        return total

    return minor(0, (1 << size) - 1)


def char_poly_by_expansion(matrix):
    """det(uI - matrix), ascending coefficients in u."""
    size = len(matrix)
    return cofactor_det([[IntPoly([-int(matrix[i][j]), 1 if i == j else 0]) for j in range(size)]
                         for i in range(size)])


def least_relabeling(g):
    """Lexicographically least sorted edge list over all n! relabelings."""
    best = None
    for perm in permutations(range(g.n)):
        edges = tuple(sorted((min(perm[u], perm[v]), max(perm[u], perm[v])) for u, v in g.edges))
        if best is None or edges < best:
            best = edges
    return g.n, best
