"""Ihara zeta reciprocals by the Hashimoto and Bass determinant formulas,
determinants of quadratic matrix pencils, and the factorizations of the
cover zetas over the zeta of the line graph."""
import logging
from fractions import Fraction

import numpy as np

from covers.constructions import (cover_of_line, default_orientation, edge_adjacency_matrix, gamma_blocks,
                                  line_graph, line_of_cover, symmetric_edge_graph)
from covers.errors import (DegreeBoundExceeded, InexactDivision, InvalidParameter, NonIntegerInterpolation,
                           check_deadline)
from covers.graph_core import Graph, bipartition, degrees
from covers.report import CheckResult
from covers.spectral import IntPoly, char_poly

logger = logging.getLogger(__name__)

NB_WALK_MAX_LENGTH = 12

HASHIMOTO = "hashimoto"
BASS = "bass"


class ZetaReciprocal(object):
    """The polynomial 1/zeta(u) together with how it was obtained.

    ``rational_form`` marks a Bass computation with negative prefactor exponent,
    where the pencil determinant was divided by (1 - u^2)^(n - m).
    """

    def __init__(self, poly: IntPoly, method: str, r_minus_1: int, pencil_det: IntPoly = None,
                 rational_form: bool = False):
        self.poly = poly
        self.method = method
        self.r_minus_1 = r_minus_1
        self.pencil_det = pencil_det
        self.rational_form = rational_form

    def to_json(self):
        record = {"method": self.method, "r_minus_1": self.r_minus_1, "rational_form": self.rational_form}
        record.update(self.poly.to_json())
        return record

    def __repr__(self):
        return "ZetaReciprocal({}, {})".format(self.method, self.poly)


def zeta_reciprocal_hashimoto(g: Graph, deadline=None) -> ZetaReciprocal:
    """det(I - Mu), read off char_poly(M) by coefficient reversal."""
    if g.m == 0:
        return ZetaReciprocal(IntPoly([1]), HASHIMOTO, g.m - g.n)
    mtx = edge_adjacency_matrix(g)
    poly = char_poly(mtx.entries, deadline=deadline).reversed(2 * g.m)
    return ZetaReciprocal(poly, HASHIMOTO, g.m - g.n)


def bareiss_det(matrix) -> int:
    """Fraction-free Gaussian elimination over the integers."""
    a = [[int(x) for x in row] for row in matrix]
    size = len(a)
    if size == 0:
        return 1
    sign, previous = 1, 1
    for k in range(size - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, size) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // previous
        previous = a[k][k]
    return sign * a[size - 1][size - 1]


def quadratic_pencil(A, Q):
    """Entries of I - A u + Q u^2 as IntPoly."""
    A = np.asarray(A, dtype=np.int64)
    Q = np.asarray(Q, dtype=np.int64)
    size = A.shape[0]
    return [[IntPoly([1 if i == j else 0, -int(A[i, j]), int(Q[i, j])]) for j in range(size)]
            for i in range(size)]


def _evaluation_points(count):
    """0, 1, -1, 2, -2, ..."""
    points = [0]
    k = 1
    while len(points) < count:
        points.append(k)
        if len(points) < count:
            points.append(-k)
        k += 1
    return points


def _newton_interpolate(xs, ys):
    """Coefficients (ascending, Fractions) of the interpolating polynomial."""
    divided = [Fraction(y) for y in ys]
    for level in range(1, len(xs)):
        for i in range(len(xs) - 1, level - 1, -1):
            divided[i] = (divided[i] - divided[i - 1]) / (xs[i] - xs[i - level])
    poly = [Fraction(0)]
    for i in range(len(divided) - 1, -1, -1):
        shifted = [Fraction(0)] + poly
        for k in range(len(poly)):
            shifted[k] -= xs[i] * poly[k]
        shifted[0] += divided[i]
        poly = shifted
    return poly


def poly_det(pencil, degree_bound: int, deadline=None) -> IntPoly:
    """Determinant of a matrix of IntPoly entries by evaluation at integer points
    and exact interpolation. One extra point checks ``degree_bound``."""
    if degree_bound < 0:
        raise InvalidParameter("degree bound must be nonnegative")
    if not pencil:
        return IntPoly([1])
    points = _evaluation_points(degree_bound + 2)
    values = []
    for x in points:
        check_deadline(deadline, "pencil determinant")
        values.append(bareiss_det([[entry.evaluate(x) for entry in row] for row in pencil]))
    coefficients = _newton_interpolate(points[:-1], values[:-1])
    sentinel = sum(c * points[-1] ** k for k, c in enumerate(coefficients))
    if sentinel != values[-1]:
        raise DegreeBoundExceeded("pencil determinant has degree above {}".format(degree_bound))
    if any(c.denominator != 1 for c in coefficients):
        raise NonIntegerInterpolation("interpolated determinant has non-integer coefficients")
    return IntPoly([c.numerator for c in coefficients])


def _prefactor(pencil_det, exponent):
    """(1 - u^2)^exponent * pencil_det, by exact division when exponent < 0."""
    if exponent >= 0:
        return IntPoly.one_minus_u_squared_power(exponent) * pencil_det, False
    return pencil_det.exact_div(IntPoly.one_minus_u_squared_power(-exponent)), True


def bass_pencil_det(g: Graph, deadline=None) -> IntPoly:
    """det(I - Au + Qu^2) with Q = diag(d_j - 1)."""
    Q = np.diag([d - 1 for d in degrees(g)]).astype(np.int64)
    return poly_det(quadratic_pencil(g.adjacency_matrix(), Q), 2 * g.n, deadline)


def zeta_reciprocal_bass(g: Graph, deadline=None) -> ZetaReciprocal:
    pencil_det = bass_pencil_det(g, deadline)
    poly, rational_form = _prefactor(pencil_det, g.m - g.n)
    return ZetaReciprocal(poly, BASS, g.m - g.n, pencil_det=pencil_det, rational_form=rational_form)


def zeta_cross_check(g: Graph, deadline=None) -> bool:
    """det(I - Mu)(1-u^2)^max(0, n-m) == (1-u^2)^max(0, m-n) det(I - Au + Qu^2)."""
    hashimoto = zeta_reciprocal_hashimoto(g, deadline).poly
    pencil_det = bass_pencil_det(g, deadline)
    left = hashimoto * IntPoly.one_minus_u_squared_power(max(0, g.n - g.m))
    right = IntPoly.one_minus_u_squared_power(max(0, g.m - g.n)) * pencil_det
    return left == right


def nb_walk_trace(g: Graph, k: int) -> int:
    """tr(M^k), the number of closed non-backtracking tailless walks of length k."""
    if not 1 <= k <= NB_WALK_MAX_LENGTH:
        raise InvalidParameter("walk length must lie in [1, {}], got {}".format(NB_WALK_MAX_LENGTH, k))
    if g.m == 0:
        return 0
    entries = edge_adjacency_matrix(g).entries
    return int(np.trace(np.linalg.matrix_power(entries, k)))


def closed_nb_walks(g: Graph, k: int) -> int:
    """Brute-force count of closed non-backtracking tailless walks of length k
    (with a distinguished starting arc)."""
    arcs = list(g.edges) + [(v, u) for u, v in g.edges]
    leaving = {v: [a for a in arcs if a[0] == v] for v in range(g.n)}
    count = 0

    def walk(first, last, length):
        nonlocal count
        if length == k:
            if last[1] == first[0] and first[1] != last[0]:
                count += 1
            return
        for arc in leaving[last[1]]:
            if arc[1] != last[0]:
                walk(first, arc, length + 1)

    for arc in arcs:
        walk(arc, arc, 1)
    return count


def _signed_pencil(g: Graph, deadline=None):
    """det(I - (A0 - B0)u + Q(L(X))u^2) and its prefactor exponent |E(L)| - |V(L)|."""
    line = line_graph(g)
    blocks = gamma_blocks(edge_adjacency_matrix(g, default_orientation(g)))
    Q = np.diag([d - 1 for d in degrees(line)]).astype(np.int64)
    pencil_det = poly_det(quadratic_pencil(blocks.A0 - blocks.B0, Q), 2 * g.m, deadline)
    return pencil_det, line.m - line.n


def g_poly(g: Graph, deadline=None) -> IntPoly:
    pencil_det, exponent = _signed_pencil(g, deadline)
    return _prefactor(pencil_det, exponent)[0]


def _cross_equal(left, left_exponent, right):
    """left * (1-u^2)^left_exponent == right, with negative exponents moved across."""
    if left_exponent >= 0:
        return left * IntPoly.one_minus_u_squared_power(left_exponent) == right
    return left == right * IntPoly.one_minus_u_squared_power(-left_exponent)


def _witness(left, right):
    return {"left": str(left), "right": str(right)}


def cover_zetas(g: Graph, deadline=None):
    """Hashimoto reciprocals of L(X) and of the three double covers, keyed by graph name."""
    return {
        "line": zeta_reciprocal_hashimoto(line_graph(g), deadline).poly,
        "gamma": zeta_reciprocal_hashimoto(symmetric_edge_graph(g), deadline).poly,
        "line_of_cover": zeta_reciprocal_hashimoto(line_of_cover(g), deadline).poly,
        "cover_of_line": zeta_reciprocal_hashimoto(cover_of_line(g), deadline).poly,
    }


def verify_factorizations(g: Graph, zetas=None, deadline=None):
    """Check the three factorizations over zeta of L(X) as exact identities.

    Left sides are Hashimoto reciprocals of the constructed cover graphs;
    ``zetas`` may carry them precomputed as returned by ``cover_zetas``.
    """
    zetas = zetas or cover_zetas(g, deadline)
    line_zeta = zetas["line"]
    pencil_det, exponent = _signed_pencil(g, deadline)
    gamma_right = line_zeta * pencil_det
    line_cover_right = line_zeta * pencil_det.negate_argument()
    cover_line_right = line_zeta * line_zeta.negate_argument()

    results = [
        # zeta_gamma * (1-u^2)^-e == zeta_L * det_-
        CheckResult.from_bool("factorization_gamma",
                              _cross_equal(zetas["gamma"], -exponent, gamma_right),
                              _witness(zetas["gamma"], gamma_right)),
        CheckResult.from_bool("factorization_line_of_cover",
                              _cross_equal(zetas["line_of_cover"], -exponent, line_cover_right),
                              _witness(zetas["line_of_cover"], line_cover_right)),
        CheckResult.from_bool("factorization_cover_of_line",
                              zetas["cover_of_line"] == cover_line_right,
                              _witness(zetas["cover_of_line"], cover_line_right)),
    ]
    if bipartition(g) is not None:
        results.append(CheckResult.from_bool(
            "factorization_bipartite",
            zetas["gamma"] == zetas["cover_of_line"] and zetas["line_of_cover"] == line_zeta * line_zeta,
            _witness(zetas["gamma"], zetas["cover_of_line"])))
    return results


def factorization_parts(g: Graph):
    """Named polynomials behind the factorizations, with exact quotients where they exist."""
    parts = {"zeta_{}".format(name): poly for name, poly in cover_zetas(g).items()}
    try:
        parts["g"] = g_poly(g)
        parts["g_negated"] = parts["g"].negate_argument()
    except InexactDivision:
        logger.warning("g(u) is not a polynomial for {}".format(g))
    for name in ("zeta_gamma", "zeta_line_of_cover", "zeta_cover_of_line"):
        try:
            parts["{}_over_zeta_line".format(name)] = parts[name].exact_div(parts["zeta_line"])
        except InexactDivision:
            logger.info("{} is not divisible by zeta_line".format(name))
    return parts
