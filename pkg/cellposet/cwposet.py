"""CW-complexes as chain data, their face posets and bases with minimal support.

A :class:`CWChainData` lists the cells of each dimension (``Cell(id, mdeg)``, ``mdeg`` optional) and an
integer boundary matrix ``B_d`` per dimension ``d >= 1`` with rows indexed by the ``(d - 1)``-cells and
columns by the ``d``-cells.  Reducing the boundaries modulo ``p`` gives the cellular chain complex, a
:class:`BasedComplex`; attaching the cell multidegrees instead gives a
:class:`~cellposet.rescomplex.GradedFreeComplex` (:func:`homogenize`).

Posets are :class:`LabeledPoset` objects with the cover relation stored as ``(lower, upper)`` id pairs:

==============================================  ==============================================================
Function                                        Covers
==============================================  ==============================================================
:func:`face_poset`                              ``tau < sigma`` whenever ``[sigma : tau]`` is nonzero mod p
:func:`incidence_poset_of_based_complex`        ``b < a`` whenever ``b`` has a nonzero coefficient in the
                                                boundary of ``a`` written in the basis
==============================================  ==============================================================

Bases are :class:`BasedBasis` objects: per homological degree a list of vectors in standard coordinates.
The ``support`` of a vector is the set of basis ids with a nonzero coefficient, and a boundary has minimal
support when it is a boundary and no nonzero cycle has strictly smaller support.
"""

import itertools
import logging
from collections import namedtuple

import networkx as nx
import six

from .exactlin import FpMatrix, IntMatrix, inverse, rank, solve
from .exceptions import (
    DimensionMismatch,
    GradingViolation,
    InvalidPoset,
    NotMinimalResolution,
    SearchExhausted,
)
from .monoid import Multidegree, lcm_of, scarf_faces
from .rescomplex import (
    GradedFreeComplex,
    Generator,
    is_acyclic,
    is_complex,
    is_minimal,
    restrict_at_degree,
)
from .signals import basis_element_chosen

log = logging.getLogger(__name__)

DEFAULT_SEARCH_BOUND = 5000

Cell = namedtuple("Cell", ["id", "mdeg"])
Failure = namedtuple("Failure", ["check", "location", "detail"])
PosetElement = namedtuple("PosetElement", ["id", "rank", "mdeg"])
BasisElement = namedtuple("BasisElement", ["id", "vector", "mdeg", "stage"])


class CWChainData(object):
    """Cells by dimension and integer incidence coefficients

    :param list cells: ``cells[d]`` is the list of ``Cell`` of dimension ``d``
    :param list boundaries: ``boundaries[d - 1]`` is the IntMatrix ``B_d``
    """

    def __init__(self, cells, boundaries):
        self.cells = [
            [Cell(c.id, Multidegree(c.mdeg) if c.mdeg is not None else None) for c in level]
            for level in cells
        ]
        self.boundaries = list(boundaries)
        if len(self.boundaries) != max(len(self.cells) - 1, 0):
            raise DimensionMismatch(
                "{0} cell dimensions need {1} boundary matrices, got {2}".format(
                    len(self.cells), max(len(self.cells) - 1, 0), len(self.boundaries)
                )
            )
        for d, b in enumerate(self.boundaries, 1):
            if b.shape != (len(self.cells[d - 1]), len(self.cells[d])):
                raise DimensionMismatch(
                    "B_{0} has shape {1}, cells need {2}".format(
                        d, b.shape, (len(self.cells[d - 1]), len(self.cells[d]))
                    )
                )
        ids = [c.id for level in self.cells for c in level]
        if len(ids) != len(set(ids)):
            raise ValueError("Cell ids must be unique")

    @property
    def dimension(self):
        return len(self.cells) - 1

    @property
    def graded(self):
        return all(c.mdeg is not None for level in self.cells for c in level)

    def ids(self, d):
        if 0 <= d < len(self.cells):
            return [c.id for c in self.cells[d]]
        return []

    def boundary(self, d):
        """Return ``B_d``, or a zero matrix outside ``1 .. dimension``"""
        if 1 <= d <= self.dimension:
            return self.boundaries[d - 1]
        return IntMatrix.zero(len(self.ids(d - 1)), len(self.ids(d)))

    def __eq__(self, other):
        if not isinstance(other, CWChainData):
            return NotImplemented
        return self.cells == other.cells and self.boundaries == other.boundaries

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __repr__(self):
        return "CWChainData(counts={0})".format([len(level) for level in self.cells])


class ValidationReport(object):
    """The outcome of :func:`validate_cw`: every check by name with the failures it found"""

    CHECKS = ("boundary_squared", "edge_sum", "grading")

    def __init__(self, failures):
        self.failures = list(failures)

    @property
    def valid(self):
        return not self.failures

    def checks(self):
        return dict(
            (name, not any(f.check == name for f in self.failures)) for name in self.CHECKS
        )

    def __bool__(self):
        return self.valid

    __nonzero__ = __bool__

    def __repr__(self):
        return "ValidationReport(valid={0}, failures={1})".format(self.valid, self.failures)


def validate_cw(data):
    """Check the chain data invariants and report every violation with its location

    * ``B_(d-1) B_d = 0`` over the integers, failures located at ``(d, row, col)`` of the product
    * every column of ``B_1`` sums to zero, located at ``(1, col)``
    * either no cell or every cell carries a multidegree, all of the same length
    """
    failures = []
    for d in range(2, data.dimension + 1):
        product = data.boundary(d - 1) * data.boundary(d)
        for r, c, v in product.items():
            failures.append(Failure("boundary_squared", (d, r, c), v))

    b1 = data.boundary(1)
    for c in range(b1.cols):
        total = sum(b1.column(c))
        if total:
            failures.append(Failure("edge_sum", (1, c), total))

    graded = [c for level in data.cells for c in level if c.mdeg is not None]
    if graded:
        lengths = set(len(c.mdeg) for c in graded)
        for d, level in enumerate(data.cells):
            for k, c in enumerate(level):
                if c.mdeg is None:
                    failures.append(Failure("grading", (d, k), "missing multidegree"))
        if len(lengths) > 1:
            failures.append(Failure("grading", (), "multidegree lengths {0}".format(sorted(lengths))))

    if failures:
        log.debug("CW data has %d invariant failures", len(failures))
    return ValidationReport(failures)


def regularity_failures(data):
    """Return the reasons the 1- and 2-cells fail the regular 2-skeleton test

    Every edge must have two distinct endpoints with coefficients ``+1`` and ``-1``.  Every 2-cell must have
    unit coefficients along a single closed edge cycle in which each vertex meets exactly two edges.
    """
    failures = []
    endpoints = {}
    b1 = data.boundary(1)
    for c in range(b1.cols):
        column = b1.column(c)
        support = [r for r, v in enumerate(column) if v]
        if sorted(column[r] for r in support) != [-1, 1]:
            failures.append(Failure("edge", (1, c), "boundary {0}".format(list(column))))
        else:
            endpoints[c] = tuple(support)

    b2 = data.boundary(2)
    for c in range(b2.cols):
        column = b2.column(c)
        support = [e for e, v in enumerate(column) if v]
        if any(v not in (-1, 0, 1) for v in column):
            failures.append(Failure("face", (2, c), "non-unit coefficient"))
            continue
        if not support:
            failures.append(Failure("face", (2, c), "empty boundary"))
            continue
        if any(e not in endpoints for e in support):
            failures.append(Failure("face", (2, c), "boundary uses an irregular edge"))
            continue
        cycle = nx.MultiGraph()
        cycle.add_edges_from(endpoints[e] for e in support)
        if not nx.is_connected(cycle) or any(deg != 2 for _, deg in cycle.degree()):
            failures.append(Failure("face", (2, c), "boundary is not a simple closed cycle"))
    return failures


def check_regular_two_skeleton(data):
    failures = regularity_failures(data)
    for failure in failures:
        log.debug("Regularity failure: %s", failure)
    return not failures


class BasedComplex(object):
    """An ungraded chain complex of based GF(p) vector spaces

    ``mdegs`` optionally maps element ids to multidegrees; it is carried along but never used for
    computation.
    """

    def __init__(self, p, ids, differentials, mdegs=None):
        self.p = p
        self.frames = [list(level) for level in ids]
        self.differentials = list(differentials)
        self.mdegs = dict(mdegs or {})
        for i, d in enumerate(self.differentials, 1):
            if d.shape != (len(self.frames[i - 1]), len(self.frames[i])):
                raise DimensionMismatch("D_{0} has shape {1}".format(i, d.shape))

    @property
    def length(self):
        return len(self.frames) - 1

    def ids(self, i):
        if 0 <= i < len(self.frames):
            return self.frames[i]
        return []

    def differential(self, i):
        if 1 <= i <= self.length:
            return self.differentials[i - 1]
        return FpMatrix.zero(len(self.ids(i - 1)), len(self.ids(i)), self.p)

    def __eq__(self, other):
        if not isinstance(other, BasedComplex):
            return NotImplemented
        return (
            self.p == other.p
            and self.frames == other.frames
            and self.differentials == other.differentials
            and self.mdegs == other.mdegs
        )

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result


def cellular_chain_complex(data, p):
    """Reduce the boundaries modulo ``p``, keeping the standard cell basis and any cell multidegrees"""
    mdegs = dict((c.id, c.mdeg) for level in data.cells for c in level if c.mdeg is not None)
    return BasedComplex(
        p,
        [data.ids(d) for d in range(len(data.cells))],
        [data.boundary(d).reduce(p) for d in range(1, data.dimension + 1)],
        mdegs,
    )


def homogenize(data, p):
    """Read graded chain data as a frame-form complex over GF(p)

    :raises GradingViolation: if a cell has no multidegree or a nonzero incidence is not order preserving
    """
    if not data.graded:
        raise GradingViolation("Only graded chain data can be homogenized")
    n = len(data.cells[0][0].mdeg) if data.cells and data.cells[0] else 0
    return GradedFreeComplex(
        p,
        n,
        [[Generator(c.id, c.mdeg) for c in level] for level in data.cells],
        [data.boundary(d).reduce(p) for d in range(1, data.dimension + 1)],
    )


def dehomogenize(res):
    """Forget the grading of a frame-form complex; the scalars are kept as they are"""
    return BasedComplex(
        res.p,
        [res.ids(i) for i in range(len(res.frames))],
        [res.differential(i) for i in range(1, res.length + 1)],
        dict((g.id, g.mdeg) for frame in res.frames for g in frame),
    )


def _frame_mdegs(complex, i):
    if isinstance(complex, GradedFreeComplex):
        return [g.mdeg for g in complex.frame(i)]
    return [complex.mdegs.get(gid) for gid in complex.ids(i)]


# --- Posets ---


class LabeledPoset(object):
    """A ranked poset given by its cover relation, with optional multidegree labels

    :param elements: ``PosetElement(id, rank, mdeg)`` items
    :param covers: ``(lower id, upper id)`` pairs between consecutive ranks
    :raises InvalidPoset: if a cover skips a rank or names an unknown element
    """

    def __init__(self, elements, covers):
        self.elements = sorted(
            (
                PosetElement(e.id, e.rank, Multidegree(e.mdeg) if e.mdeg is not None else None)
                for e in elements
            ),
            key=lambda e: (e.rank, e.id),
        )
        self._by_id = dict((e.id, e) for e in self.elements)
        if len(self._by_id) != len(self.elements):
            raise InvalidPoset("Element ids must be unique")
        self.covers = frozenset((lower, upper) for lower, upper in covers)
        for lower, upper in self.covers:
            if lower not in self._by_id or upper not in self._by_id:
                raise InvalidPoset("Cover ({0}, {1}) names an unknown element".format(lower, upper))
            if self._by_id[upper].rank != self._by_id[lower].rank + 1:
                raise InvalidPoset(
                    "Cover ({0}, {1}) does not join consecutive ranks".format(lower, upper)
                )
        self._closure = None

    def element(self, eid):
        return self._by_id[eid]

    def graph(self):
        g = nx.DiGraph()
        g.add_nodes_from(e.id for e in self.elements)
        g.add_edges_from(self.covers)
        return g

    def is_acyclic(self):
        return nx.is_directed_acyclic_graph(self.graph())

    def less_than(self, a, b):
        """True if ``a < b`` in the transitive closure of the covers"""
        if self._closure is None:
            self._closure = nx.transitive_closure(self.graph(), reflexive=False)
        return a != b and self._closure.has_edge(a, b)

    def degree_morphism(self):
        """True if the multidegree weakly increases along every cover"""
        for lower, upper in self.covers:
            low, up = self._by_id[lower].mdeg, self._by_id[upper].mdeg
            if low is None or up is None or not low.divides(up):
                return False
        return True

    def sorted_covers(self):
        return sorted(self.covers)

    def differences(self, other):
        """Describe how this poset differs from ``other`` as labeled posets with the same ids"""
        differences = []
        mine, theirs = set(self.elements), set(other.elements)
        for e in sorted(mine - theirs, key=lambda e: (e.rank, e.id)):
            differences.append("element {0} only on the left".format(_describe(e)))
        for e in sorted(theirs - mine, key=lambda e: (e.rank, e.id)):
            differences.append("element {0} only on the right".format(_describe(e)))
        for cover in sorted(self.covers - other.covers):
            differences.append("cover {0} < {1} only on the left".format(*cover))
        for cover in sorted(other.covers - self.covers):
            differences.append("cover {0} < {1} only on the right".format(*cover))
        return differences

    def __eq__(self, other):
        if not isinstance(other, LabeledPoset):
            return NotImplemented
        return self.elements == other.elements and self.covers == other.covers

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __repr__(self):
        return "LabeledPoset(elements={0}, covers={1})".format(
            len(self.elements), len(self.covers)
        )


def _describe(e):
    if e.mdeg is None:
        return "{0} (rank {1})".format(e.id, e.rank)
    return "{0} (rank {1}, mdeg {2})".format(e.id, e.rank, list(e.mdeg))


def face_poset(data, p):
    """The face poset over GF(p): ``tau`` is covered by ``sigma`` when ``[sigma : tau]`` is nonzero mod p"""
    elements = [PosetElement(c.id, d, c.mdeg) for d, level in enumerate(data.cells) for c in level]
    covers = []
    for d in range(1, data.dimension + 1):
        lower, upper = data.ids(d - 1), data.ids(d)
        for r, c, v in data.boundary(d).items():
            if v % p:
                covers.append((lower[r], upper[c]))
    return LabeledPoset(elements, covers)


# --- Bases and supports ---


class BasedBasis(object):
    """A basis of every chain group, as vectors in the standard coordinates

    :param int p: The prime characteristic
    :param list elements: ``elements[i]`` is the list of ``BasisElement`` of degree ``i``
    :raises SingularMatrix: if the vectors of some degree do not form a basis
    """

    def __init__(self, p, elements):
        self.p = p
        self.elements = [list(level) for level in elements]
        self._inverses = {}
        for i, level in enumerate(self.elements):
            for e in level:
                if len(e.vector) != len(level):
                    raise DimensionMismatch(
                        "Basis element {0!r} of degree {1} has {2} coordinates, expected {3}".format(
                            e.id, i, len(e.vector), len(level)
                        )
                    )
            self._inverses[i] = inverse(self.matrix(i))

    @classmethod
    def standard(cls, complex):
        """The standard basis of a based or graded complex"""
        elements = []
        for i in range(complex.length + 1):
            ids = complex.ids(i)
            mdegs = _frame_mdegs(complex, i)
            elements.append(
                [
                    BasisElement(gid, tuple(int(j == k) for j in range(len(ids))), mdegs[k], "standard")
                    for k, gid in enumerate(ids)
                ]
            )
        return cls(complex.p, elements)

    @property
    def degrees(self):
        return len(self.elements)

    def level(self, i):
        if 0 <= i < len(self.elements):
            return self.elements[i]
        return []

    def ids(self, i):
        return [e.id for e in self.level(i)]

    def vectors(self, i):
        return [e.vector for e in self.level(i)]

    def matrix(self, i):
        """The square matrix whose columns are the basis vectors of degree ``i``"""
        level = self.level(i)
        return FpMatrix.from_columns([e.vector for e in level], self.p, rows=len(level))

    def coordinates(self, i, z):
        """Express the standard-coordinate vector ``z`` of degree ``i`` in this basis"""
        return self._inverses[i].apply(z)

    def is_standard(self, i):
        return self.matrix(i) == FpMatrix.identity(len(self.level(i)), self.p)

    def provenance(self):
        """Return the sorted distinct ``(degree, mdeg, stage)`` triples of the basis"""
        seen = set()
        for i, level in enumerate(self.elements):
            for e in level:
                seen.add((i, tuple(e.mdeg) if e.mdeg is not None else None, e.stage))
        return sorted(seen, key=lambda t: (t[0], t[1] or (), t[2]))

    def __eq__(self, other):
        if not isinstance(other, BasedBasis):
            return NotImplemented
        return self.p == other.p and self.elements == other.elements

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __repr__(self):
        return "BasedBasis(p={0}, ranks={1})".format(self.p, [len(level) for level in self.elements])


def support(z, basis, i):
    """The ids of the basis elements of degree ``i`` with a nonzero coefficient in ``z``"""
    if not any(z):
        return set()
    coords = basis.coordinates(i, z)
    ids = basis.ids(i)
    return set(ids[k] for k, c in enumerate(coords) if c)


def boundary_map(complex, i):
    """``D_i`` in standard coordinates; in degree 0 the augmentation sending every generator to 1"""
    if i == 0:
        size = len(complex.ids(0))
        return FpMatrix(1, size, complex.p, dict(((0, k), 1) for k in range(size)))
    return complex.differential(i)


def is_minimal_support(z, complex, i, basis, degree=None):
    """True if ``z`` is a boundary and no nonzero cycle has support strictly inside the support of ``z``

    :param tuple z: A vector of degree ``i`` in standard coordinates
    :param complex: A :class:`GradedFreeComplex` or a :class:`BasedComplex`
    :param basis: The basis that supports are taken in; only degree ``i`` is used
    :param degree: When given, image membership is decided in the strand at this multidegree
    """
    if not any(z):
        return False

    if degree is not None and isinstance(complex, GradedFreeComplex):
        strand = restrict_at_degree(complex, degree)
        rows = strand.index(i)
        inside = set(rows)
        if any(v for k, v in enumerate(z) if v and k not in inside):
            return False
        image = strand.matrix(i + 1)
        rhs = tuple(z[k] for k in rows)
    else:
        image = complex.differential(i + 1)
        rhs = tuple(z)
    if solve(image, rhs) is None:
        return False

    coords = basis.coordinates(i, z)
    supp = [k for k, c in enumerate(coords) if c]
    in_basis = boundary_map(complex, i) * basis.matrix(i)
    all_rows = list(range(in_basis.rows))
    for e in supp:
        rest = [k for k in supp if k != e]
        if rank(in_basis.submatrix(all_rows, rest)) != len(rest):
            return False
    return True


def incidence_poset_of_based_complex(complex, basis, p=None):
    """The poset on basis elements with ``b`` covered by ``a`` when ``b`` occurs in the boundary of ``a``"""
    if p is not None and p != complex.p:
        raise DimensionMismatch("Complex is over GF({0}), not GF({1})".format(complex.p, p))
    elements = [
        PosetElement(e.id, i, e.mdeg) for i, level in enumerate(basis.elements) for e in level
    ]
    covers = []
    for i in range(1, basis.degrees):
        d = complex.differential(i)
        lower = basis.ids(i - 1)
        for e in basis.level(i):
            coords = basis.coordinates(i - 1, d.apply(e.vector))
            covers.extend((lower[k], e.id) for k, c in enumerate(coords) if c)
    return LabeledPoset(elements, covers)


# --- Minimal-support basis search ---


def _independent(vectors, block, p):
    columns = [[v[k] for k in block] for v in vectors]
    return rank(FpMatrix.from_columns(columns, p, rows=len(block))) == len(vectors)


def _candidates(size, coords, p, admissible):
    for support_positions in itertools.combinations(coords, size):
        if not admissible(support_positions):
            continue
        for tail in itertools.product(range(1, p), repeat=size - 1):
            yield support_positions, (1,) + tail


def _search_degree(complex, i, alpha, block, lower, below, stage2, bound):
    p = complex.p
    width = len(complex.frame(i))
    d = complex.differential(i)
    block_set, lower_set = set(block), set(lower)

    stages = [("stage1", block, lambda s: True)]
    if stage2 and lower:
        stages.append(
            (
                "stage2",
                sorted(block + lower),
                lambda s: any(k in lower_set for k in s) and any(k in block_set for k in s),
            )
        )

    accepted = []
    count = 0
    for stage, coords, admissible in stages:
        if stage == "stage2":
            log.warning(
                "Degree %d at %s needs lower-degree coordinates, %d of %d found so far",
                i, list(alpha), len(accepted), len(block),
            )
        for size in range(1, len(coords) + 1):
            for positions, values in _candidates(size, coords, p, admissible):
                count += 1
                if count > bound:
                    raise SearchExhausted(i, alpha, bound)
                vector = [0] * width
                for k, v in zip(positions, values):
                    vector[k] = v
                vector = tuple(vector)
                if not _independent([v for v, _ in accepted] + [vector], block, p):
                    continue
                if is_minimal_support(d.apply(vector), complex, i - 1, below, degree=alpha):
                    log.debug("Accepted %s in degree %d at %s", vector, i, list(alpha))
                    accepted.append((vector, stage))
                    if len(accepted) == len(block):
                        log.debug("Degree %d at %s done after %d candidates", i, list(alpha), count)
                        return accepted
    raise SearchExhausted(i, alpha, bound)


def _assign_positions(block, accepted):
    """Pair each block generator with an accepted vector, lexicographically first with nonzero diagonal"""
    used = [False] * len(accepted)
    chosen = [None] * len(block)

    def search(j):
        if j == len(block):
            return True
        for idx, (vector, _) in enumerate(accepted):
            if not used[idx] and vector[block[j]]:
                used[idx] = True
                chosen[j] = idx
                if search(j + 1):
                    return True
                used[idx] = False
        return False

    if not search(0):
        raise NotMinimalResolution("Accepted vectors do not form a basis of their degree block")
    return [(block[j], accepted[chosen[j]]) for j in range(len(block))]


def find_minimal_support_basis(complex, stage2=False, bound=DEFAULT_SEARCH_BOUND):
    """Find a homogeneous basis whose boundaries all have minimal support

    Degrees 0, 1 and 2 keep the standard basis.  From degree 3 on every multidegree ``alpha`` of the frame
    is handled on its own, in sorted order: candidate vectors are enumerated by support size, then by
    support, then by coefficients (leading coefficient 1), and a candidate is kept when its boundary has
    minimal support in the basis chosen one degree lower and it is independent of the vectors kept so far.
    Stage 1 only combines generators of degree exactly ``alpha``; stage 2 (``stage2=True``) also adds
    generators of strictly smaller degree.  Each kept vector takes the id of a generator of the block, so
    the change of basis has a nonzero diagonal.

    :param complex: A :class:`GradedFreeComplex`
    :param bool stage2: Allow lower-degree coordinates when same-degree combinations are not enough
    :param int bound: Maximum number of candidates examined per ``(degree, alpha)``
    :raises SearchExhausted: if a block cannot be filled within the bound
    """
    standard = BasedBasis.standard(complex)
    levels = [standard.level(i) for i in range(min(3, len(complex.frames)))]

    for i in range(3, len(complex.frames)):
        below = BasedBasis(complex.p, levels)
        frame = complex.frame(i)
        chosen = [None] * len(frame)
        for alpha in sorted(set(g.mdeg for g in frame)):
            block = [k for k, g in enumerate(frame) if g.mdeg == alpha]
            lower = [k for k, g in enumerate(frame) if g.mdeg != alpha and g.mdeg.divides(alpha)]
            accepted = _search_degree(complex, i, alpha, block, lower, below, stage2, bound)
            for k, (vector, stage) in _assign_positions(block, accepted):
                chosen[k] = BasisElement(frame[k].id, vector, alpha, stage)
        levels.append(chosen)

    basis = BasedBasis(complex.p, levels)
    for i in range(3, basis.degrees):
        for e in basis.level(i):
            basis_element_chosen.send(basis, degree=i, mdeg=e.mdeg, vector=e.vector, stage=e.stage)
    return basis


# --- Supports ---


class SupportReport(object):
    """The outcome of :func:`check_supports_cw`

    ``eta[i]`` maps the ids of resolution generators of degree ``i`` to cell ids.  When the data does not
    support the resolution ``reason`` is one of ``"ungraded"``, ``"cardinality"``, ``"degree"`` or
    ``"incidence"`` and ``detail`` says where.
    """

    def __init__(self, eta=None, reason=None, detail=None):
        self.eta = [dict(level) for level in eta or []]
        self.reason = reason
        self.detail = detail

    @property
    def supported(self):
        return self.reason is None

    def cell_of(self, i, gid):
        return self.eta[i][gid]

    def generator_of(self, i, cid):
        for gid, cell in six.iteritems(self.eta[i]):
            if cell == cid:
                return gid
        raise KeyError(cid)

    def __bool__(self):
        return self.supported

    __nonzero__ = __bool__

    def __repr__(self):
        if self.supported:
            return "SupportReport(supported, eta={0})".format(self.eta)
        return "SupportReport(reason={0!r}, detail={1!r})".format(self.reason, self.detail)


def _trimmed(counts):
    counts = list(counts)
    while counts and not counts[-1]:
        counts.pop()
    return counts


def check_supports_cw(data, res):
    """Look for bijections between generators and cells that match degrees and incidence scalars

    The search goes degree by degree and position by position, trying cells of the right multidegree in
    cell order, so the reported bijection is the lexicographically first one.  Scalars must agree exactly
    modulo ``p``.
    """
    if not data.graded:
        return SupportReport(reason="ungraded", detail="cells without multidegrees")

    cell_counts = _trimmed(len(level) for level in data.cells)
    gen_counts = _trimmed(res.ranks())
    if cell_counts != gen_counts:
        return SupportReport(
            reason="cardinality",
            detail="cells per dimension {0}, generators per degree {1}".format(cell_counts, gen_counts),
        )

    top = len(cell_counts)
    for i in range(top):
        cells = sorted(tuple(c.mdeg) for c in data.cells[i])
        gens = sorted(tuple(g.mdeg) for g in res.frame(i))
        if cells != gens:
            return SupportReport(reason="degree", detail="multidegrees differ in degree {0}".format(i))

    p = res.p
    boundaries = [None] + [data.boundary(d).reduce(p) for d in range(1, top)]
    # eta as positions: eta[i][generator position] = cell position
    eta = [[None] * len(res.frame(i)) for i in range(top)]
    used = [[False] * len(data.cells[i]) for i in range(top)]

    def consistent(i, g, c):
        if i == 0:
            return True
        d, b = res.differential(i), boundaries[i]
        for r in range(len(res.frame(i - 1))):
            if d[r, g] != b[eta[i - 1][r], c]:
                return False
        return True

    steps = [(i, g) for i in range(top) for g in range(len(res.frame(i)))]

    def search(step):
        if step == len(steps):
            return True
        i, g = steps[step]
        mdeg = res.frame(i)[g].mdeg
        for c, cell in enumerate(data.cells[i]):
            if used[i][c] or cell.mdeg != mdeg or not consistent(i, g, c):
                continue
            used[i][c] = True
            eta[i][g] = c
            if search(step + 1):
                return True
            used[i][c] = False
            eta[i][g] = None
        return False

    if not search(0):
        return SupportReport(reason="incidence", detail="no bijection matches the incidence scalars")

    mapping = [
        dict((res.frame(i)[g].id, data.cells[i][eta[i][g]].id) for g in range(len(res.frame(i))))
        for i in range(top)
    ]
    return SupportReport(eta=mapping)


def transport_basis(basis, report, res):
    """Move a basis of the cellular complex to the generators of ``res`` along the report's bijection

    The basis must come from :func:`find_minimal_support_basis` (or be standard) on the homogenized cells,
    so that element ids are cell ids in cell order.  Element ids, multidegrees and provenance stay as they
    are; only the coordinates are permuted.
    """
    elements = []
    for i in range(len(res.frames)):
        # element k of the basis is named after the cell in position k
        cell_pos = dict((e.id, k) for k, e in enumerate(basis.level(i)))
        if len(cell_pos) != len(res.frame(i)):
            raise DimensionMismatch("Basis of degree {0} does not match the resolution".format(i))
        order = [cell_pos[report.cell_of(i, g.id)] for g in res.frame(i)]
        elements.append(
            [
                BasisElement(e.id, tuple(e.vector[k] for k in order), e.mdeg, e.stage)
                for e in basis.level(i)
            ]
        )
    return BasedBasis(basis.p, elements)


def rebase(res, basis):
    """Write the differentials of ``res`` in a homogeneous basis: ``D'_i = P_(i-1)^-1 D_i P_i``

    The basis element ids and multidegrees become the generators of the returned complex.
    """
    frames = [[Generator(e.id, e.mdeg) for e in basis.level(i)] for i in range(len(res.frames))]
    differentials = []
    for i in range(1, len(res.frames)):
        p_lower = basis.matrix(i - 1)
        differentials.append(inverse(p_lower) * res.differential(i) * basis.matrix(i))
    return GradedFreeComplex(res.p, res.n, frames, differentials, res.variables)


class PosetSupportVerdict(object):
    """The outcome of :func:`check_poset_support`"""

    def __init__(self, poset, deg_morphism, minimal_support):
        self.poset = poset
        self.deg_morphism = deg_morphism
        self.minimal_support = minimal_support

    @property
    def poset_supports(self):
        return self.deg_morphism and self.minimal_support

    def __repr__(self):
        return "PosetSupportVerdict(poset_supports={0}, deg_morphism={1}, minimal_support={2})".format(
            self.poset_supports, self.deg_morphism, self.minimal_support
        )


def check_poset_support(res, basis):
    """Check the hypotheses under which the incidence poset of a homogeneous basis supports ``res``

    :raises NotMinimalResolution: if ``res`` is not an exact minimal complex
    """
    if not (is_complex(res) and is_acyclic(res) and is_minimal(res)):
        raise NotMinimalResolution("The poset test needs an exact minimal complex")

    minimal_support = True
    for i in range(1, basis.degrees):
        d = res.differential(i)
        for e in basis.level(i):
            if not is_minimal_support(d.apply(e.vector), res, i - 1, basis, degree=e.mdeg):
                log.debug("Boundary of %s does not have minimal support", e.id)
                minimal_support = False

    poset = incidence_poset_of_based_complex(res, basis, res.p)
    return PosetSupportVerdict(poset, poset.degree_morphism(), minimal_support)


# --- Builders ---


def simplicial_cw(faces, labels=None):
    """Build the chain data of a simplicial complex

    :param faces: Vertex tuples; every nonempty subset of a listed face is included
    :param labels: Optional per-vertex multidegrees; a face is labeled with the lcm of its vertices
    """
    closed = set()
    for face in faces:
        face = tuple(sorted(face))
        for size in range(1, len(face) + 1):
            closed.update(itertools.combinations(face, size))
    top = max([len(f) for f in closed] or [0])
    levels = [sorted(f for f in closed if len(f) == k + 1) for k in range(top)]

    def cell(face):
        mdeg = lcm_of(labels[v] for v in face) if labels is not None else None
        return Cell(",".join(str(v) for v in face), mdeg)

    cells = [[cell(face) for face in level] for level in levels]
    boundaries = []
    for d in range(1, top):
        position = dict((f, r) for r, f in enumerate(levels[d - 1]))
        items = []
        for col, face in enumerate(levels[d]):
            for k in range(len(face)):
                items.append((position[face[:k] + face[k + 1 :]], col, (-1) ** k))
        boundaries.append(IntMatrix.from_items(len(levels[d - 1]), len(levels[d]), items))
    return CWChainData(cells, boundaries)


def taylor_cw(ideal):
    """The full simplex on the generators, labeled by lcms"""
    return simplicial_cw([tuple(range(len(ideal)))], ideal.generators)


def scarf_cw(ideal):
    """The Scarf complex of the ideal, labeled by lcms"""
    return simplicial_cw(scarf_faces(ideal), ideal.generators)
