"""Exact characteristic polynomials, eigenvalues, energy and block spectra."""
import logging
import math
from functools import lru_cache

import numpy as np
import scipy.linalg

from covers.errors import InexactDivision, InvalidParameter, NotSymmetric, SizeLimitExceeded, check_deadline

logger = logging.getLogger(__name__)

EIGEN_DIMENSION_CAP = 256
ENERGY_TOLERANCE = 1e-8
BERKOWITZ_MAX_DIMENSION = 24

# p**2 * dimension must stay below 2**63 in the modular kernels
_MODULAR_PRIME_BITS = 25


class IntPoly(object):
    """Polynomial in u with integer coefficients, ``coefficients[k]`` the coefficient of u^k."""

    def __init__(self, coefficients=()):
        coefficients = [int(c) for c in coefficients]
        while coefficients and coefficients[-1] == 0:
            coefficients.pop()
        self.coefficients = tuple(coefficients)

    @classmethod
    def monomial(cls, coefficient, power):
        return cls([0] * power + [coefficient])

    @classmethod
    def one_minus_u_squared_power(cls, k):
        return cls([1, 0, -1]) ** k

    @property
    def degree(self):
        return len(self.coefficients) - 1

    def is_zero(self):
        return not self.coefficients

    def coefficient(self, k):
        return self.coefficients[k] if 0 <= k < len(self.coefficients) else 0

    def _coerce(self, other):
        if isinstance(other, IntPoly):
            return other
        if isinstance(other, (int, np.integer)):
            return IntPoly([other])
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        size = max(len(self.coefficients), len(other.coefficients))
        return IntPoly([self.coefficient(k) + other.coefficient(k) for k in range(size)])

    __radd__ = __add__

    def __neg__(self):
        return IntPoly([-c for c in self.coefficients])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return IntPoly()
        product = [0] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            if a:
                for j, b in enumerate(other.coefficients):
                    product[i + j] += a * b
        return IntPoly(product)

    __rmul__ = __mul__

    def __pow__(self, exponent):
        if exponent < 0:
            raise InvalidParameter("negative polynomial power {}".format(exponent))
        result, base = IntPoly([1]), self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def negate_argument(self):
        """p(-u)."""
        return IntPoly([c if k % 2 == 0 else -c for k, c in enumerate(self.coefficients)])

    def reversed(self, degree=None):
        """u^degree * p(1/u)."""
        degree = self.degree if degree is None else degree
        if degree < self.degree:
            raise InvalidParameter("cannot reverse a degree {} polynomial within degree {}".format(
                self.degree, degree))
        return IntPoly([self.coefficient(degree - k) for k in range(degree + 1)])

    def divmod_exact(self, divisor):
        """Long division over the integers. Raises InexactDivision when a
        quotient coefficient is not an integer."""
        divisor = self._coerce(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        remainder = list(self.coefficients)
        lead = divisor.coefficients[-1]
        shift_max = len(remainder) - len(divisor.coefficients)
        quotient = [0] * max(shift_max + 1, 0)
        for shift in range(shift_max, -1, -1):
            top = remainder[shift + divisor.degree]
            if top == 0:
                continue
            if top % lead:
                raise InexactDivision("{} is not divisible by {}".format(self, divisor))
            q = top // lead
            quotient[shift] = q
            for k, c in enumerate(divisor.coefficients):
                remainder[shift + k] -= q * c
        return IntPoly(quotient), IntPoly(remainder)

    def exact_div(self, divisor):
        quotient, remainder = self.divmod_exact(divisor)
        if not remainder.is_zero():
            raise InexactDivision("{} leaves remainder {} against {}".format(self, remainder, divisor))
        return quotient

    def divides(self, other):
        """True iff ``self`` divides ``other`` in Z[u]."""
        try:
            other.exact_div(self)
        except InexactDivision:
            return False
        return True

    def evaluate(self, x):
        value = 0
        for c in reversed(self.coefficients):
            value = value * x + c
        return value

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.coefficients == other.coefficients

    def __hash__(self):
        return hash(self.coefficients)

    def __str__(self):
        terms = []
        for k, c in enumerate(self.coefficients):
            if c == 0:
                continue
            magnitude = abs(c)
            if k == 0:
                body = str(magnitude)
            else:
                power = "u" if k == 1 else "u^{}".format(k)
                body = power if magnitude == 1 else "{}{}".format(magnitude, power)
            if not terms:
                terms.append(body if c > 0 else "-" + body)
            else:
                terms.append(("+ " if c > 0 else "- ") + body)
        return " ".join(terms) if terms else "0"

    def __repr__(self):
        return "IntPoly({})".format(list(self.coefficients))

    def to_json(self):
        return {"coefficients": list(self.coefficients)}


class Spectrum(object):

    def __init__(self, eigenvalues, source_dimension):
        self.eigenvalues = tuple(sorted((float(x) for x in eigenvalues), reverse=True))
        self.source_dimension = source_dimension

    def union(self, other):
        return Spectrum(self.eigenvalues + other.eigenvalues, self.source_dimension + other.source_dimension)

    def negated(self):
        return Spectrum([-x for x in self.eigenvalues], self.source_dimension)

    def energy(self):
        return float(np.sum(np.abs(self.eigenvalues))) if self.eigenvalues else 0.0

    def close_to(self, other, tolerance=1e-7):
        if len(self.eigenvalues) != len(other.eigenvalues):
            return False
        return bool(np.allclose(self.eigenvalues, other.eigenvalues, rtol=0.0, atol=tolerance))

    def to_json(self):
        return {"dimension": self.source_dimension, "eigenvalues": list(self.eigenvalues)}

    def __repr__(self):
        return "Spectrum({})".format([round(x, 6) for x in self.eigenvalues])


def _berkowitz(rows, deadline=None):
    """Division-free characteristic polynomial, coefficients in descending powers."""
    poly = [1]
    for k in range(len(rows)):
        check_deadline(deadline, "Berkowitz char poly")
        column = [1, -rows[k][k]]
        vec = [rows[i][k] for i in range(k)]
        for _ in range(k):
            column.append(-sum(rows[k][i] * vec[i] for i in range(k)))
            vec = [sum(rows[i][j] * vec[j] for j in range(k)) for i in range(k)]
        poly = [sum(column[i - j] * poly[j] for j in range(len(poly)) if 0 <= i - j < len(column))
                for i in range(k + 2)]
    return poly


@lru_cache(maxsize=None)
def _primes(count):
    """The ``count`` largest primes below 2**_MODULAR_PRIME_BITS."""
    found = []
    candidate = (1 << _MODULAR_PRIME_BITS) - 1
    while len(found) < count:
        if all(candidate % d for d in range(3, int(math.isqrt(candidate)) + 1, 2)):
            found.append(candidate)
        candidate -= 2
    return tuple(found)


def _coefficient_bits(matrix):
    """Bit bound on |c_k| via C(N, k) times the product of the k largest row norms."""
    size = matrix.shape[0]
    norms = sorted((max(1.0, math.sqrt(float(np.dot(row, row)))) for row in matrix.astype(float)), reverse=True)
    best, log_norms = 0.0, 0.0
    for k in range(1, size + 1):
        log_norms += math.log2(norms[k - 1])
        log_binomial = (math.lgamma(size + 1) - math.lgamma(k + 1) - math.lgamma(size - k + 1)) / math.log(2)
        best = max(best, log_binomial + log_norms)
    return int(math.ceil(best)) + 2


def _charpoly_mod(matrix, p):
    """Characteristic polynomial mod p by Hessenberg reduction; ascending coefficients."""
    h = np.asarray(matrix, dtype=np.int64) % p
    size = h.shape[0]
    for j in range(size - 2):
        nonzero = np.nonzero(h[j + 1:, j])[0]
        if nonzero.size == 0:
            continue
        pivot = j + 1 + int(nonzero[0])
        if pivot != j + 1:
            h[[pivot, j + 1], :] = h[[j + 1, pivot], :]
            h[:, [pivot, j + 1]] = h[:, [j + 1, pivot]]
        inverse = pow(int(h[j + 1, j]), p - 2, p)
        factors = (h[j + 2:, j] * inverse) % p
        if not factors.any():
            continue
        h[j + 2:, :] = (h[j + 2:, :] - np.outer(factors, h[j + 1, :]) % p) % p
        h[:, j + 1] = (h[:, j + 1] + (h[:, j + 2:] @ factors) % p) % p

    polys = [np.zeros(size + 1, dtype=np.int64)]
    polys[0][0] = 1
    for k in range(size):
        current = np.zeros(size + 1, dtype=np.int64)
        current[1:] = polys[k][:-1]
        current = (current - int(h[k, k]) * polys[k]) % p
        t = 1
        for i in range(k - 1, -1, -1):
            t = t * int(h[i + 1, i]) % p
            if t == 0:
                break
            c = int(h[i, k]) * t % p
            if c:
                current = (current - c * polys[i]) % p
        polys.append(current)
    return polys[size]


def _charpoly_multimodular(matrix, deadline=None):
    bits = _coefficient_bits(matrix)
    primes = []
    for p in _primes(bits // (_MODULAR_PRIME_BITS - 1) + 2):
        primes.append(p)
        if sum(math.log2(q) for q in primes) > bits + 1:
            break
    logger.debug("multi-modular char poly: dimension {}, {} bits, {} primes".format(
        matrix.shape[0], bits, len(primes)))
    coefficients, modulus = None, 1
    for p in primes:
        check_deadline(deadline, "multi-modular char poly")
        residues = [int(r) for r in _charpoly_mod(matrix, p)]
        if coefficients is None:
            coefficients = residues
        else:
            inverse = pow(modulus % p, p - 2, p)
            coefficients = [x + modulus * (((r - x) * inverse) % p) for x, r in zip(coefficients, residues)]
        modulus *= p
    half = modulus // 2
    return [x - modulus if x > half else x for x in coefficients]


def char_poly(mtx, method: str = "auto", deadline=None) -> IntPoly:
    """det(uI - mtx) with exact integer coefficients.

    ``method`` is ``berkowitz``, ``modular`` or ``auto`` (Berkowitz up to
    BERKOWITZ_MAX_DIMENSION, multi-modular above). Both engines give up with
    SearchTimeout once ``deadline`` (a ``time.monotonic`` value) has passed.
    """
    matrix = np.asarray(mtx, dtype=np.int64)
    if matrix.size == 0:
        return IntPoly([1])
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise InvalidParameter("characteristic polynomial needs a square matrix, got shape {}".format(matrix.shape))
    if method == "auto":
        method = "berkowitz" if matrix.shape[0] <= BERKOWITZ_MAX_DIMENSION else "modular"
    if method == "berkowitz":
        return IntPoly(list(reversed(_berkowitz(matrix.tolist(), deadline))))
    if method == "modular":
        return IntPoly(_charpoly_multimodular(matrix, deadline))
    raise InvalidParameter("unknown char poly method {!r}".format(method))


def eigenvalues(mtx) -> Spectrum:
    matrix = np.asarray(mtx)
    if matrix.size == 0:
        return Spectrum([], 0)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1] or not np.array_equal(matrix, matrix.T):
        raise NotSymmetric("eigenvalues need a symmetric matrix")
    if matrix.shape[0] > EIGEN_DIMENSION_CAP:
        raise SizeLimitExceeded("eigensolver capped at dimension {}".format(EIGEN_DIMENSION_CAP))
    values = scipy.linalg.eigh(matrix.astype(float), eigvals_only=True)
    return Spectrum(values, matrix.shape[0])


def spectrum_of_graph(g) -> Spectrum:
    return eigenvalues(g.adjacency_matrix())


def energy(g) -> float:
    return spectrum_of_graph(g).energy()


def is_cospectral(g, h, deadline=None) -> bool:
    if g.n != h.n:
        return False
    return char_poly(g.adjacency_matrix(), deadline=deadline) == char_poly(h.adjacency_matrix(), deadline=deadline)


def block_split_spectrum(blocks):
    """(spectrum of X + Y, spectrum of X - Y) for block matrices [[X, Y], [Y, X]]."""
    total, difference = blocks.split_pair()
    return eigenvalues(total), eigenvalues(difference)
