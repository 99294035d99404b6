"""Multigraded free complexes in frame form.

A :class:`GradedFreeComplex` stores, for every homological degree ``i``, a list of generators (``Generator(id,
mdeg)``) and, for ``i >= 1``, a scalar matrix ``D_i`` over GF(p) with rows indexed by frame ``i - 1`` and
columns by frame ``i``.  The polynomial entry of the differential is ``D_i[tau, sigma] * x^(mdeg(sigma) -
mdeg(tau))``, so a nonzero scalar requires ``mdeg(tau) <= mdeg(sigma)``.

Restricting a complex to a multidegree ``alpha`` keeps the generators whose degree divides ``alpha`` and gives
a complex of GF(p) vector spaces, the :class:`Strand` at ``alpha``.  Exactness is a strand-wise property and
is checked at the degrees of the lcm lattice, between which strands do not change.
"""

import logging
from collections import namedtuple

import six

from .exactlin import FpMatrix, inverse_mod, rank
from .exceptions import DimensionMismatch, GradingViolation, NotExact, NotMinimalResolution
from .monoid import MonomialIdeal, Multidegree, default_variables, lcm_lattice, subsets
from .signals import unit_cancelled

log = logging.getLogger(__name__)

Generator = namedtuple("Generator", ["id", "mdeg"])


class GradedFreeComplex(object):
    """A chain complex of multigraded free modules in frame form

    :param int p: The prime characteristic
    :param int n: Number of variables
    :param list frames: ``frames[i]`` is the list of generators of degree ``i``
    :param list differentials: ``differentials[i - 1]`` is the FpMatrix ``D_i``
    :param variables: Variable names, defaults to ``x1 .. xn``
    :raises GradingViolation: if a nonzero scalar joins generators whose degrees do not divide
    """

    def __init__(self, p, n, frames, differentials, variables=None):
        self.p = p
        self.n = n
        self.variables = tuple(variables or default_variables(n))
        self.frames = [
            [Generator(g.id, Multidegree(g.mdeg)) for g in frame] for frame in frames
        ]
        self.differentials = list(differentials)

        if len(self.differentials) != max(len(self.frames) - 1, 0):
            raise DimensionMismatch(
                "{0} frames need {1} differentials, got {2}".format(
                    len(self.frames), max(len(self.frames) - 1, 0), len(self.differentials)
                )
            )

        seen = set()
        for frame in self.frames:
            for g in frame:
                if g.id in seen:
                    raise ValueError("Duplicate generator id {0!r}".format(g.id))
                if len(g.mdeg) != n:
                    raise DimensionMismatch(
                        "Generator {0!r} has a multidegree of length {1}".format(g.id, len(g.mdeg))
                    )
                seen.add(g.id)

        for i, d in enumerate(self.differentials, 1):
            if d.p != p or d.shape != (len(self.frames[i - 1]), len(self.frames[i])):
                raise DimensionMismatch(
                    "D_{0} has shape {1}, frames need {2}".format(
                        i, d.shape, (len(self.frames[i - 1]), len(self.frames[i]))
                    )
                )
            for r, c, _ in d.items():
                tau, sigma = self.frames[i - 1][r], self.frames[i][c]
                if not tau.mdeg.divides(sigma.mdeg):
                    raise GradingViolation(
                        "D_{0}[{1}, {2}] is nonzero but {3} does not divide {4}".format(
                            i, tau.id, sigma.id, list(tau.mdeg), list(sigma.mdeg)
                        )
                    )

    @property
    def length(self):
        return len(self.frames) - 1

    def ranks(self):
        return [len(frame) for frame in self.frames]

    def frame(self, i):
        if 0 <= i < len(self.frames):
            return self.frames[i]
        return []

    def ids(self, i):
        return [g.id for g in self.frame(i)]

    def generator(self, gid):
        for frame in self.frames:
            for g in frame:
                if g.id == gid:
                    return g
        raise KeyError(gid)

    def differential(self, i):
        """Return ``D_i``, or a zero matrix of the right shape outside ``1 .. length``"""
        if 1 <= i <= self.length:
            return self.differentials[i - 1]
        return FpMatrix.zero(len(self.frame(i - 1)), len(self.frame(i)), self.p)

    def degrees(self):
        """Return the set of all generator multidegrees"""
        return set(g.mdeg for frame in self.frames for g in frame)

    def __eq__(self, other):
        if not isinstance(other, GradedFreeComplex):
            return NotImplemented
        return (
            self.p == other.p
            and self.n == other.n
            and self.frames == other.frames
            and self.differentials == other.differentials
        )

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __repr__(self):
        return "GradedFreeComplex(p={0}, ranks={1})".format(self.p, self.ranks())


class Strand(object):
    """The complex of GF(p) vector spaces obtained by restricting a complex to one multidegree

    ``indices[i]`` holds the positions (in frame ``i``) of the generators whose degree divides the strand
    degree and ``matrix(i)`` is the matching submatrix of ``D_i``.
    """

    def __init__(self, complex, degree):
        self.complex = complex
        self.degree = Multidegree(degree)
        self.indices = [
            [k for k, g in enumerate(frame) if g.mdeg.divides(self.degree)]
            for frame in complex.frames
        ]

    def dims(self):
        return [len(idx) for idx in self.indices]

    def index(self, i):
        if 0 <= i < len(self.indices):
            return self.indices[i]
        return []

    def matrix(self, i):
        return self.complex.differential(i).submatrix(self.index(i - 1), self.index(i))

    def ranks(self):
        """Return ``[rank(D_1), .., rank(D_L)]`` on this strand"""
        return [rank(self.matrix(i)) for i in range(1, len(self.indices))]

    def homology(self):
        """Return the dimension of homology at every position"""
        dims = self.dims()
        ranks = [0] + self.ranks() + [0]
        return [dims[i] - ranks[i] - ranks[i + 1] for i in range(len(dims))]

    def boundaries_vanish(self):
        return all(
            (self.matrix(i - 1) * self.matrix(i)).is_zero()
            for i in range(2, len(self.indices))
        )


def restrict_at_degree(c, alpha):
    """Return the :class:`Strand` of ``c`` at the multidegree ``alpha``"""
    return Strand(c, alpha)


def taylor_complex(ideal, p):
    """Build the Taylor complex of a monomial ideal over GF(p)

    Frame ``i`` holds one generator per ``(i + 1)``-subset of the ideal's generators, with id the comma
    joined subset indices and degree the lcm of the subset.  Dropping the ``k``-th element of a subset
    contributes ``(-1)^k`` to the differential.
    """
    q = len(ideal)
    by_size = [[] for _ in range(q)]
    for subset in subsets(q):
        by_size[len(subset) - 1].append(subset)

    frames = [
        [Generator(",".join(str(k) for k in s), ideal.subset_lcm(s)) for s in level]
        for level in by_size
    ]
    differentials = []
    for i in range(1, q):
        position = dict((s, r) for r, s in enumerate(by_size[i - 1]))
        entries = {}
        for col, s in enumerate(by_size[i]):
            for k in range(len(s)):
                face = s[:k] + s[k + 1 :]
                entries[(position[face], col)] = (-1) ** k
        differentials.append(FpMatrix(len(by_size[i - 1]), len(by_size[i]), p, entries))

    log.debug("Taylor complex of %d generators has ranks %s", q, [len(f) for f in frames])
    return GradedFreeComplex(p, ideal.n, frames, differentials, ideal.variables)


def ideal_of(c):
    """Return the ideal generated by the degree-0 generators of ``c``"""
    return MonomialIdeal([g.mdeg for g in c.frame(0)], c.variables)


def is_complex(c):
    """True if ``D_(i-1) D_i`` vanishes in every strand"""
    for alpha in sorted(c.degrees()):
        if not restrict_at_degree(c, alpha).boundaries_vanish():
            log.debug("Boundary of a boundary is nonzero at %s", list(alpha))
            return False
    return True


def is_exact(c, ideal, extra_degrees=()):
    """True if ``c`` resolves ``ideal``

    Every strand at a degree of the lcm lattice (and at each of ``extra_degrees``) must have no homology in
    positions ``>= 1``, and homology of dimension 1 at position 0 exactly when ``x^alpha`` is in the ideal.
    """
    degrees = set(lcm_lattice(ideal)) | set(Multidegree(d) for d in extra_degrees)
    for alpha in sorted(degrees):
        homology = restrict_at_degree(c, alpha).homology()
        expected = [1 if ideal.contains(alpha) else 0] + [0] * (len(homology) - 1)
        if homology != expected:
            log.debug("Strand at %s has homology %s", list(alpha), homology)
            return False
    return True


def is_acyclic(c):
    """Exactness against the ideal generated by the degree-0 generators, for complexes that carry no ideal"""
    if not c.frame(0):
        return not any(c.frames)
    return is_exact(c, ideal_of(c))


def unit_entries(c):
    """Yield ``(i, row, col)`` for every nonzero scalar joining generators of equal degree"""
    for i in range(1, c.length + 1):
        for r, col, _ in c.differential(i).items():
            if c.frames[i - 1][r].mdeg == c.frames[i][col].mdeg:
                yield i, r, col


def is_minimal(c):
    for _ in unit_entries(c):
        return False
    return True


def minimize(c, ideal=None):
    """Cancel unit entries until the complex is minimal

    Each step removes a pair ``(tau, sigma)`` with ``D_i[tau, sigma]`` a unit and replaces ``D_i`` by
    ``D_i - D_i[:, sigma] D_i[tau, sigma]^-1 D_i[tau, :]`` on the remaining generators.  The unit with the
    smallest ``(i, row, col)`` frame positions goes first.  Generator ids are kept, so the result records
    which generators survived.

    :param ideal: The ideal resolved by ``c``; when omitted exactness is checked against the degree-0 frame
    :raises NotExact: if ``c`` is not an exact complex
    """
    exact = is_exact(c, ideal) if ideal is not None else is_acyclic(c)
    if not is_complex(c) or not exact:
        raise NotExact("Only exact complexes can be minimized")

    p = c.p
    frames = [list(frame) for frame in c.frames]
    position = [dict((g.id, k) for k, g in enumerate(frame)) for frame in frames]
    mdeg = dict((g.id, g.mdeg) for frame in frames for g in frame)
    # D_i as {(tau id, sigma id): scalar}
    mats = dict(
        (i, dict(((frames[i - 1][r].id, frames[i][col].id), v) for r, col, v in c.differential(i).items()))
        for i in range(1, c.length + 1)
    )

    cancelled = 0
    while True:
        best = None
        for i in sorted(mats):
            for (tau, sigma) in mats[i]:
                if mdeg[tau] != mdeg[sigma]:
                    continue
                key = (position[i - 1][tau], position[i][sigma])
                if best is None or key < best[0]:
                    best = (key, tau, sigma)
            if best is not None:
                break
        if best is None:
            break
        _, tau, sigma = best

        d = mats[i]
        a_inv = inverse_mod(d[(tau, sigma)], p)
        column = [(r, v) for (r, s), v in six.iteritems(d) if s == sigma and r != tau]
        row = [(s, v) for (r, s), v in six.iteritems(d) if r == tau and s != sigma]
        for r, u in column:
            for s, w in row:
                value = (d.get((r, s), 0) - u * a_inv * w) % p
                if value:
                    d[(r, s)] = value
                else:
                    d.pop((r, s), None)
        mats[i] = dict((key, v) for key, v in six.iteritems(d) if key[0] != tau and key[1] != sigma)
        if i + 1 in mats:
            mats[i + 1] = dict((key, v) for key, v in six.iteritems(mats[i + 1]) if key[0] != sigma)
        if i - 1 in mats:
            mats[i - 1] = dict((key, v) for key, v in six.iteritems(mats[i - 1]) if key[1] != tau)

        frames[i] = [g for g in frames[i] if g.id != sigma]
        frames[i - 1] = [g for g in frames[i - 1] if g.id != tau]
        cancelled += 1
        log.debug("Cancelled unit D_%d[%s, %s]", i, tau, sigma)
        unit_cancelled.send(GradedFreeComplex, degree=i, row=tau, col=sigma)

    differentials = []
    for i in range(1, len(frames)):
        row_pos = dict((g.id, k) for k, g in enumerate(frames[i - 1]))
        col_pos = dict((g.id, k) for k, g in enumerate(frames[i]))
        differentials.append(
            FpMatrix(
                len(frames[i - 1]),
                len(frames[i]),
                p,
                dict(((row_pos[r], col_pos[s]), v) for (r, s), v in six.iteritems(mats[i])),
            )
        )

    log.debug("Minimized after %d cancellations, ranks %s", cancelled, [len(f) for f in frames])
    return GradedFreeComplex(p, c.n, frames, differentials, c.variables)


def minimal_resolution(ideal, p):
    """Return the minimal free resolution of ``ideal`` over GF(p), minimized from the Taylor complex"""
    return minimize(taylor_complex(ideal, p), ideal)


class BettiTable(object):
    """Graded Betti numbers ``beta[(i, alpha)]``; absent keys are zero"""

    def __init__(self, values=None):
        self._values = {}
        for (i, alpha), beta in six.iteritems(values or {}):
            if beta < 0:
                raise ValueError("Betti numbers are non-negative")
            if beta:
                self._values[(i, Multidegree(alpha))] = beta

    def __getitem__(self, key):
        i, alpha = key
        return self._values.get((i, Multidegree(alpha)), 0)

    def items(self):
        """Return ``((i, alpha), beta)`` pairs sorted by ``(i, lex alpha)``"""
        return sorted(six.iteritems(self._values))

    def totals(self):
        """Return the total Betti number of every homological degree"""
        if not self._values:
            return []
        totals = [0] * (max(i for i, _ in self._values) + 1)
        for (i, _), beta in six.iteritems(self._values):
            totals[i] += beta
        return totals

    def __eq__(self, other):
        if not isinstance(other, BettiTable):
            return NotImplemented
        return self._values == other._values

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __repr__(self):
        return "BettiTable({0})".format(self.items())

    def render(self):
        """Render the table as text, one line per nonzero entry"""
        lines = ["{0:>3}  {1:<20}  {2}".format("i", "mdeg", "beta")]
        for (i, alpha), beta in self.items():
            lines.append(
                "{0:>3}  {1:<20}  {2}".format(i, "(" + ", ".join(str(e) for e in alpha) + ")", beta)
            )
        return "\n".join(lines)


def betti_table(c):
    """Read the Betti numbers off a minimal complex

    :raises NotMinimalResolution: if ``c`` still has unit entries
    """
    if not is_minimal(c):
        raise NotMinimalResolution("Betti numbers are only read off minimal complexes")
    values = {}
    for i, frame in enumerate(c.frames):
        for g in frame:
            values[(i, g.mdeg)] = values.get((i, g.mdeg), 0) + 1
    return BettiTable(values)


def _reduced_homology(faces, p):
    """Dimensions of reduced homology ``[H_-1, H_0, ..]`` of a complex given by its nonempty faces"""
    top = max([len(f) for f in faces] or [0])
    # level k holds faces of dimension k - 1, with the empty face at level 0
    levels = [[()]] + [sorted(f for f in faces if len(f) == k) for k in range(1, top + 1)]
    ranks = [0]
    for k in range(1, len(levels)):
        position = dict((f, r) for r, f in enumerate(levels[k - 1]))
        entries = {}
        for col, face in enumerate(levels[k]):
            for j in range(len(face)):
                entries[(position[face[:j] + face[j + 1 :]], col)] = (-1) ** j
        ranks.append(rank(FpMatrix(len(levels[k - 1]), len(levels[k]), p, entries)))
    ranks.append(0)
    return [len(levels[k]) - ranks[k] - ranks[k + 1] for k in range(len(levels))]


def betti_oracle(ideal, p):
    """Compute graded Betti numbers by simplicial homology, independently of any resolution

    ``beta[(i, alpha)]`` is the dimension of the reduced homology in degree ``i - 1`` of the complex of
    generator subsets that divide ``x^alpha`` and whose lcm is strictly below ``alpha``.
    """
    values = {}
    q = len(ideal)
    for alpha in sorted(lcm_lattice(ideal)):
        below = [
            s
            for s in subsets(q)
            if all(ideal.generators[k].divides(alpha) for k in s) and ideal.subset_lcm(s) != alpha
        ]
        for i, beta in enumerate(_reduced_homology(below, p)):
            if beta:
                values[(i, alpha)] = beta
    return BettiTable(values)
