"""Exact linear algebra over GF(p) and over the integers.

Two matrix types are provided:

==========  ==========================================================================
Type        Description
==========  ==========================================================================
FpMatrix    Matrix over GF(p), stored sparsely as ``{(row, col): residue}`` with no
            stored zeros.  Row reduction, rank, determinants and inverses run on
            sympy's ``DomainMatrix`` over ``GF(p)``, in its sparse representation
            once a side reaches ``DENSE_THRESHOLD``.

IntMatrix   Dense matrix of Python integers (arbitrary precision).  Used for integer
            incidence coefficients and for unimodular lifts.  Determinants, ranks
            and inverses run on ``DomainMatrix`` over ``ZZ`` and ``QQ``.
==========  ==========================================================================

Vectors over GF(p) are plain tuples of residues.  All values are immutable once built, so every function
in this module can be called concurrently.

.. code-block:: python

    from cellposet.exactlin import FpMatrix, lift_sl

    m = FpMatrix.from_rows([[1, 1], [0, 1]], 3)
    t = lift_sl(m)          # IntMatrix [[1, 1], [0, 1]]
    assert t.reduce(3) == m
"""

import logging
from collections import namedtuple

import six
from sympy import GF, QQ, ZZ
from sympy.polys.matrices import DomainMatrix

from .exceptions import DimensionMismatch, NotSL, NotUnimodular, SingularMatrix

log = logging.getLogger(__name__)

DENSE_THRESHOLD = 64

#: The elementary matrix ``E_ij(a)``: the identity plus ``a`` in row ``i``, column ``j`` (``i != j``)
Transvection = namedtuple("Transvection", ["i", "j", "a"])

_PRIMES = {}


def is_prime(p):
    """Return True if ``p`` is a prime number"""
    try:
        return _PRIMES[p]
    except KeyError:
        pass
    result = isinstance(p, six.integer_types) and p > 1
    d = 2
    while result and d * d <= p:
        if p % d == 0:
            result = False
        d += 1
    _PRIMES[p] = result
    return result


def inverse_mod(a, p):
    """Return the inverse of the residue ``a`` in GF(p)"""
    a %= p
    if not a:
        raise ZeroDivisionError("0 has no inverse modulo {0}".format(p))
    return pow(a, p - 2, p)


class FpMatrix(object):
    """A matrix over GF(p)

    :param int rows: Number of rows
    :param int cols: Number of columns
    :param int p: The prime modulus
    :param dict entries: ``{(row, col): value}``; values are reduced modulo ``p`` and zeros are dropped
    """

    __slots__ = ("rows", "cols", "p", "_entries")

    def __init__(self, rows, cols, p, entries=None):
        if not is_prime(p):
            raise ValueError("The modulus {0} is not prime".format(p))
        self.rows = rows
        self.cols = cols
        self.p = p

        clean = {}
        for (r, c), v in six.iteritems(entries or {}):
            if not (0 <= r < rows and 0 <= c < cols):
                raise DimensionMismatch(
                    "Entry ({0}, {1}) is outside a {2}x{3} matrix".format(
                        r, c, rows, cols
                    )
                )
            v %= p
            if v:
                clean[(r, c)] = v
        self._entries = clean

    @classmethod
    def zero(cls, rows, cols, p):
        return cls(rows, cols, p)

    @classmethod
    def identity(cls, n, p):
        return cls(n, n, p, dict(((i, i), 1) for i in range(n)))

    @classmethod
    def from_rows(cls, rows, p, cols=None):
        """Build a matrix from a list of dense rows

        ``cols`` is only needed when ``rows`` is empty.
        """
        if rows:
            cols = len(rows[0])
        entries = {}
        for r, row in enumerate(rows):
            if len(row) != cols:
                raise DimensionMismatch("Ragged rows in matrix literal")
            for c, v in enumerate(row):
                if v % p:
                    entries[(r, c)] = v
        return cls(len(rows), cols or 0, p, entries)

    @classmethod
    def from_columns(cls, columns, p, rows=None):
        """Build a matrix whose columns are the given vectors"""
        if columns:
            rows = len(columns[0])
        entries = {}
        for c, column in enumerate(columns):
            if len(column) != rows:
                raise DimensionMismatch("Ragged columns in matrix literal")
            for r, v in enumerate(column):
                if v % p:
                    entries[(r, c)] = v
        return cls(rows or 0, len(columns), p, entries)

    @property
    def shape(self):
        return self.rows, self.cols

    @property
    def nnz(self):
        return len(self._entries)

    def __getitem__(self, key):
        return self._entries.get(key, 0)

    def items(self):
        """Return the nonzero entries as sorted ``(row, col, value)`` triples"""
        return [(r, c, v) for (r, c), v in sorted(six.iteritems(self._entries))]

    def row(self, r):
        return dict((c, v) for (rr, c), v in six.iteritems(self._entries) if rr == r)

    def column(self, c):
        return tuple(self._entries.get((r, c), 0) for r in range(self.rows))

    def to_rows(self):
        dense = [[0] * self.cols for _ in range(self.rows)]
        for (r, c), v in six.iteritems(self._entries):
            dense[r][c] = v
        return dense

    def is_zero(self):
        return not self._entries

    def is_square(self):
        return self.rows == self.cols

    def transpose(self):
        return FpMatrix(
            self.cols,
            self.rows,
            self.p,
            dict(((c, r), v) for (r, c), v in six.iteritems(self._entries)),
        )

    def submatrix(self, row_indices, col_indices):
        """Return the submatrix on the given rows and columns, in the given order"""
        row_pos = dict((r, i) for i, r in enumerate(row_indices))
        col_pos = dict((c, j) for j, c in enumerate(col_indices))
        entries = {}
        for (r, c), v in six.iteritems(self._entries):
            if r in row_pos and c in col_pos:
                entries[(row_pos[r], col_pos[c])] = v
        return FpMatrix(len(row_indices), len(col_indices), self.p, entries)

    def apply(self, vector):
        """Multiply this matrix by a column vector given as a tuple"""
        if len(vector) != self.cols:
            raise DimensionMismatch(
                "Cannot apply a {0}x{1} matrix to a vector of length {2}".format(
                    self.rows, self.cols, len(vector)
                )
            )
        out = [0] * self.rows
        for (r, c), v in six.iteritems(self._entries):
            if vector[c]:
                out[r] = (out[r] + v * vector[c]) % self.p
        return tuple(out)

    def scale(self, k):
        return FpMatrix(
            self.rows,
            self.cols,
            self.p,
            dict((key, v * k) for key, v in six.iteritems(self._entries)),
        )

    def _check_compatible(self, other):
        if not isinstance(other, FpMatrix) or other.p != self.p:
            raise DimensionMismatch("Matrices over different fields cannot be combined")

    def __mul__(self, other):
        self._check_compatible(other)
        if self.cols != other.rows:
            raise DimensionMismatch(
                "Cannot multiply {0}x{1} by {2}x{3}".format(
                    self.rows, self.cols, other.rows, other.cols
                )
            )
        by_row = {}
        for (k, c), w in six.iteritems(other._entries):
            by_row.setdefault(k, []).append((c, w))

        entries = {}
        for (r, k), v in six.iteritems(self._entries):
            for c, w in by_row.get(k, ()):
                entries[(r, c)] = (entries.get((r, c), 0) + v * w) % self.p
        return FpMatrix(self.rows, other.cols, self.p, entries)

    def __add__(self, other):
        self._check_compatible(other)
        if self.shape != other.shape:
            raise DimensionMismatch("Cannot add matrices of different shapes")
        entries = dict(self._entries)
        for key, v in six.iteritems(other._entries):
            entries[key] = entries.get(key, 0) + v
        return FpMatrix(self.rows, self.cols, self.p, entries)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, FpMatrix):
            return NotImplemented
        return (
            self.shape == other.shape
            and self.p == other.p
            and self._entries == other._entries
        )

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash((self.rows, self.cols, self.p, frozenset(self._entries.items())))

    def __repr__(self):
        return "FpMatrix({0}, p={1})".format(self.to_rows(), self.p)


class IntMatrix(object):
    """A dense matrix of arbitrary precision integers

    :param list data: The rows of the matrix
    :param int cols: Number of columns, only needed when ``data`` is empty
    """

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, data, cols=None):
        data = [list(row) for row in data]
        if data:
            cols = len(data[0])
        for row in data:
            if len(row) != cols:
                raise DimensionMismatch("Ragged rows in matrix literal")
        self.rows = len(data)
        self.cols = cols or 0
        self._data = data

    @classmethod
    def zero(cls, rows, cols):
        return cls([[0] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def identity(cls, n):
        return cls([[int(i == j) for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def from_items(cls, rows, cols, items):
        """Build a matrix from ``(row, col, value)`` triples"""
        data = [[0] * cols for _ in range(rows)]
        for r, c, v in items:
            if not (0 <= r < rows and 0 <= c < cols):
                raise DimensionMismatch(
                    "Entry ({0}, {1}) is outside a {2}x{3} matrix".format(
                        r, c, rows, cols
                    )
                )
            data[r][c] = v
        return cls(data, cols=cols)

    @property
    def shape(self):
        return self.rows, self.cols

    def __getitem__(self, key):
        r, c = key
        return self._data[r][c]

    def items(self):
        """Return the nonzero entries as sorted ``(row, col, value)`` triples"""
        return [
            (r, c, v)
            for r, row in enumerate(self._data)
            for c, v in enumerate(row)
            if v
        ]

    def to_rows(self):
        return [list(row) for row in self._data]

    def column(self, c):
        return tuple(row[c] for row in self._data)

    def is_zero(self):
        return not any(any(row) for row in self._data)

    def is_identity(self):
        return self.rows == self.cols and self == IntMatrix.identity(self.rows)

    def transpose(self):
        return IntMatrix(
            [[self._data[r][c] for r in range(self.rows)] for c in range(self.cols)],
            cols=self.rows,
        )

    def reduce(self, p):
        """Reduce every entry modulo ``p``"""
        return FpMatrix(
            self.rows,
            self.cols,
            p,
            dict(((r, c), v) for r, c, v in self.items()),
        )

    def __mul__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise DimensionMismatch(
                "Cannot multiply {0}x{1} by {2}x{3}".format(
                    self.rows, self.cols, other.rows, other.cols
                )
            )
        columns = [other.column(c) for c in range(other.cols)]
        return IntMatrix(
            [[sum(a * b for a, b in zip(row, col)) for col in columns] for row in self._data],
            cols=other.cols,
        )

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(tuple(row) for row in self._data)))

    def __repr__(self):
        return "IntMatrix({0})".format(self._data)


# --- sympy bridge ---


def to_domain_matrix(m, domain=None, sparse=None):
    """Return ``m`` as a sympy ``DomainMatrix``

    FpMatrix values land in ``GF(p)`` and IntMatrix values in ``ZZ`` unless ``domain`` says otherwise.  The
    sparse representation is used when ``sparse`` is true, or by default for matrices of at least
    ``DENSE_THRESHOLD`` rows or columns.
    """
    if domain is None:
        domain = GF(m.p) if isinstance(m, FpMatrix) else ZZ
    if sparse is None:
        sparse = m.rows >= DENSE_THRESHOLD or m.cols >= DENSE_THRESHOLD

    if sparse:
        rows = {}
        for r, c, v in m.items():
            rows.setdefault(r, {})[c] = domain(v)
        return DomainMatrix(rows, m.shape, domain)
    return DomainMatrix([[domain(v) for v in row] for row in m.to_rows()], m.shape, domain)


def _to_rows(dm):
    return dm.to_Matrix().tolist()


def from_domain_matrix(dm, p):
    """Return the FpMatrix of a ``DomainMatrix`` over ``GF(p)``"""
    _, cols = dm.shape
    # GF(p) renders residues symmetrically, so reduce again
    return FpMatrix.from_rows([[int(v) % p for v in row] for row in _to_rows(dm)], p, cols=cols)


def _is_empty(m):
    return not (m.rows and m.cols)


# --- GF(p) row reduction ---


def rref(m, sparse=None):
    """Return ``(rank, pivots, reduced)`` where ``reduced`` is the reduced row-echelon form of ``m``

    :param FpMatrix m: The matrix to reduce
    :param bool sparse: Force the sparse (True) or dense (False) sympy representation
    """
    if _is_empty(m):
        return 0, [], FpMatrix.zero(m.rows, m.cols, m.p)
    reduced, pivots = to_domain_matrix(m, sparse=sparse).rref()
    pivots = list(pivots)
    return len(pivots), pivots, from_domain_matrix(reduced, m.p)


def rank(m):
    if _is_empty(m):
        return 0
    return to_domain_matrix(m).rank()


def kernel_basis(m):
    """Return a basis of the right kernel of ``m`` as a list of tuples

    There is one vector per non-pivot column, in column order, with a 1 in that column.
    """
    _, pivots, reduced = rref(m)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        vector = [0] * m.cols
        vector[free] = 1
        for k, c in enumerate(pivots):
            vector[c] = (-reduced[k, free]) % m.p
        basis.append(tuple(vector))
    return basis


def solve(m, b):
    """Return one solution ``x`` of ``m x = b`` as a tuple, or None when ``b`` is not in the image of ``m``"""
    if len(b) != m.rows:
        raise DimensionMismatch(
            "Right hand side of length {0} for a matrix with {1} rows".format(
                len(b), m.rows
            )
        )
    entries = dict(((r, c), v) for r, c, v in m.items())
    for r, v in enumerate(b):
        if v % m.p:
            entries[(r, m.cols)] = v
    augmented = FpMatrix(m.rows, m.cols + 1, m.p, entries)
    _, pivots, reduced = rref(augmented)
    if pivots and pivots[-1] == m.cols:
        return None
    x = [0] * m.cols
    for k, c in enumerate(pivots):
        x[c] = reduced[k, m.cols]
    return tuple(x)


def _require_square(m):
    if not m.is_square():
        raise DimensionMismatch(
            "Expected a square matrix, got {0}x{1}".format(m.rows, m.cols)
        )


def determinant(m):
    """Return the determinant of a square FpMatrix as a residue"""
    _require_square(m)
    if not m.rows:
        return 1
    return int(to_domain_matrix(m).det()) % m.p


def inverse(m):
    """Return the inverse of a square FpMatrix

    :raises SingularMatrix: if the rank of ``m`` is smaller than its size
    """
    _require_square(m)
    if not m.rows:
        return m
    if not determinant(m):
        raise SingularMatrix("Matrix of size {0} is singular over GF({1})".format(m.rows, m.p))
    return from_domain_matrix(to_domain_matrix(m).inv(), m.p)


def transvection_matrix(n, t, p):
    """Return the FpMatrix of the transvection ``t`` in size ``n``"""
    entries = dict(((i, i), 1) for i in range(n))
    entries[(t.i, t.j)] = t.a
    return FpMatrix(n, n, p, entries)


def factor_sl_transvections(m):
    """Write a matrix of determinant 1 as an ordered product of transvections

    The matrix is reduced to the identity with row operations ``row_i += a * row_j``, and the inverses of
    those operations are returned in the order they were applied, so that multiplying the elementary
    matrices from left to right reproduces ``m``.

    :raises SingularMatrix: if ``det(m) == 0``
    :raises NotSL: if ``det(m)`` is a unit other than 1
    """
    _require_square(m)
    det = determinant(m)
    if det == 0:
        raise SingularMatrix("Cannot factor a singular matrix")
    if det != 1:
        raise NotSL("Matrix has determinant {0} over GF({1})".format(det, m.p))

    p, n = m.p, m.rows
    a = m.to_rows()
    ops = []

    def add_row(i, j, factor):
        factor %= p
        if not factor:
            return
        a[i] = [(x + factor * y) % p for x, y in zip(a[i], a[j])]
        ops.append(Transvection(i, j, factor))

    for c in range(n):
        if not a[c][c]:
            # rows below c vanish left of column c, so invertibility puts a nonzero below the pivot
            below = next(r for r in range(c + 1, n) if a[r][c])
            add_row(c, below, 1)
        if a[c][c] != 1 and c + 1 < n:
            if not a[c + 1][c]:
                add_row(c + 1, c, 1)
            add_row(c, c + 1, (1 - a[c][c]) * inverse_mod(a[c + 1][c], p))
        for r in range(n):
            if r != c:
                add_row(r, c, -a[r][c])

    log.debug("Factored %dx%d matrix into %d transvections", n, n, len(ops))
    return [Transvection(t.i, t.j, (-t.a) % p) for t in ops]


def lift_sl(m):
    """Lift a matrix of determinant 1 over GF(p) to an integer matrix of determinant exactly 1

    Each transvection factor is lifted to the integer transvection whose entry is the representative of
    the factor's scalar in ``0 .. p - 1``.

    :raises NotSL: if ``det(m) != 1``
    """
    factors = factor_sl_transvections(m)
    data = IntMatrix.identity(m.rows).to_rows()
    for t in factors:
        # right multiplication by E_ij(a) adds a times column i to column j
        for row in data:
            row[t.j] += t.a * row[t.i]
    return IntMatrix(data, cols=m.cols)




# --- Integer matrices ---


def int_determinant(m):
    """Return the exact determinant of a square IntMatrix"""
    if m.rows != m.cols:
        raise DimensionMismatch("Expected a square matrix")
    if not m.rows:
        return 1
    return int(to_domain_matrix(m).det())


def int_rank(m):
    """Return the rank of an IntMatrix over the rationals"""
    if _is_empty(m):
        return 0
    return to_domain_matrix(m, domain=QQ).rank()


def int_inverse_unimodular(m):
    """Return the exact integer inverse of a matrix of determinant +1 or -1

    :raises NotUnimodular: if the determinant is anything else
    """
    det = int_determinant(m)
    if det not in (1, -1):
        raise NotUnimodular("Matrix has determinant {0}".format(det))
    if not m.rows:
        return m
    rows = _to_rows(to_domain_matrix(m, domain=QQ).inv())
    assert all(v.is_integer for row in rows for v in row), "unimodular inverse must be integral"
    return IntMatrix([[int(v) for v in row] for row in rows], cols=m.cols)



# --- Sampling ---


def random_sl(n, p, rng, steps=None):
    """Return a pseudo-random matrix of SL_n(GF(p)) as a product of random transvections

    :param rng: A ``random.Random`` instance, so that samples are reproducible
    :param int steps: Number of transvections to multiply, defaults to ``4 * n * n``
    """
    m = FpMatrix.identity(n, p)
    if n < 2:
        return m
    for _ in range(steps or 4 * n * n):
        i, j = rng.sample(range(n), 2)
        m = m * transvection_matrix(n, Transvection(i, j, rng.randrange(1, p)), p)
    return m


def random_invertible(n, p, rng):
    """Return a uniformly random invertible matrix over GF(p), by rejection sampling"""
    while True:
        m = FpMatrix.from_rows(
            [[rng.randrange(p) for _ in range(n)] for _ in range(n)], p, cols=n
        )
        if determinant(m):
            return m
