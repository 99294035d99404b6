"""Monomials, monomial ideals and the lcm lattice.

A monomial ``x^alpha`` is identified with its exponent vector ``alpha``, a :class:`Multidegree`.  Ideals keep
a minimal generating set in a fixed graded-lex order so that every later construction is reproducible.

Ideals can be written as text:

.. code-block:: python

    from cellposet.monoid import parse_ideal

    ideal = parse_ideal("(x*y, y*z, x^2 z)", ["x", "y", "z"])
    ideal.generators   # [(1, 1, 0), (0, 1, 1), (2, 0, 1)]

The grammar is a comma separated list of products of ``name`` or ``name^exponent`` factors.  The ``*``
between factors is optional, whitespace is insignificant and the whole list may be wrapped in parentheses.
A factor ``name^0`` is the unit and contributes nothing to its monomial.
"""

import itertools
import logging
import re

import six

from .exceptions import DimensionMismatch, ParseError, UnknownVariable

log = logging.getLogger(__name__)

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_INT = re.compile(r"[0-9]+")


class Multidegree(tuple):
    """An exponent vector in N^n"""

    def __new__(cls, exponents):
        exponents = tuple(exponents)
        for e in exponents:
            if not isinstance(e, six.integer_types) or isinstance(e, bool) or e < 0:
                raise ValueError("Exponents must be non-negative integers, got {0!r}".format(e))
        return super(Multidegree, cls).__new__(cls, exponents)

    @property
    def n(self):
        return len(self)

    @property
    def total(self):
        return sum(self)

    def divides(self, other):
        """True if ``x^self`` divides ``x^other``, i.e. ``self <= other`` componentwise"""
        _check_lengths(self, other)
        return all(a <= b for a, b in zip(self, other))

    def __sub__(self, other):
        _check_lengths(self, other)
        return Multidegree(a - b for a, b in zip(self, other))

    def __repr__(self):
        return "Multidegree({0})".format(list(self))


def _check_lengths(a, b):
    if len(a) != len(b):
        raise DimensionMismatch(
            "Multidegrees of length {0} and {1} cannot be compared".format(len(a), len(b))
        )


def divides(a, b):
    return Multidegree(a).divides(b)


def lcm(a, b):
    """Return the componentwise maximum of two multidegrees"""
    _check_lengths(a, b)
    return Multidegree(max(x, y) for x, y in zip(a, b))


def lcm_of(degrees):
    """Return the lcm of a nonempty iterable of multidegrees"""
    degrees = iter(degrees)
    result = Multidegree(next(degrees))
    for d in degrees:
        result = lcm(result, d)
    return result


def graded_lex_key(alpha):
    """Sort key that orders by total degree, then lexicographically with larger leading exponents first"""
    return sum(alpha), tuple(-e for e in alpha)


def minimalize(generators):
    """Drop duplicate generators and every generator that is divisible by another one"""
    unique = sorted(set(Multidegree(g) for g in generators), key=graded_lex_key)
    kept = []
    for g in unique:
        if not any(k.divides(g) for k in kept):
            kept.append(g)
    return kept


def default_variables(n):
    return tuple("x{0}".format(i + 1) for i in range(n))


class MonomialIdeal(object):
    """A monomial ideal given by its minimal generators

    :param generators: Exponent vectors; duplicates and redundant generators are removed
    :param variables: Variable names, defaults to ``x1 .. xn``
    """

    def __init__(self, generators, variables=None):
        generators = [Multidegree(g) for g in generators]
        if not generators:
            raise ValueError("A monomial ideal needs at least one generator")
        n = len(generators[0])
        for g in generators:
            if len(g) != n:
                raise DimensionMismatch("Generators have different variable counts")
        if variables is None:
            variables = default_variables(n)
        variables = tuple(variables)
        if len(variables) != n:
            raise DimensionMismatch(
                "{0} variable names for {1} exponents".format(len(variables), n)
            )

        self.n = n
        self.variables = variables
        self.generators = minimalize(generators)
        if len(self.generators) != len(generators):
            log.debug(
                "Dropped %d redundant generators", len(generators) - len(self.generators)
            )

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __eq__(self, other):
        if not isinstance(other, MonomialIdeal):
            return NotImplemented
        return self.n == other.n and self.generators == other.generators

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash((self.n, tuple(self.generators)))

    def __repr__(self):
        return "MonomialIdeal({0!r})".format(render_ideal(self))

    def contains(self, alpha):
        """True if ``x^alpha`` lies in the ideal"""
        return any(g.divides(alpha) for g in self.generators)

    def subset_lcm(self, indices):
        return lcm_of(self.generators[i] for i in indices)


# --- Text grammar ---


class _Scanner(object):
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else None

    def take(self, char):
        if self.peek() == char:
            self.pos += 1
            return True
        return False

    def match(self, pattern, expected):
        self.skip()
        found = pattern.match(self.text, self.pos)
        if not found:
            got = "end of input" if self.pos >= len(self.text) else repr(self.text[self.pos])
            raise ParseError("Unexpected {0}".format(got), self.pos, expected)
        self.pos = found.end()
        return found.group(0), found.start()


def _parse_terms(text):
    scanner = _Scanner(text)
    wrapped = scanner.take("(")
    terms = []
    while True:
        factors = []
        while True:
            name, offset = scanner.match(_NAME, "variable name")
            exponent = 1
            if scanner.take("^"):
                digits, _ = scanner.match(_INT, "exponent")
                exponent = int(digits)
            factors.append((name, exponent, offset))
            if scanner.take("*"):
                continue
            char = scanner.peek()
            if char is None or char in ",)":
                break
        terms.append(factors)
        if not scanner.take(","):
            break
    if wrapped and not scanner.take(")"):
        raise ParseError("Unclosed parenthesis", scanner.pos, "')'")
    if scanner.peek() is not None:
        raise ParseError(
            "Unexpected {0!r}".format(scanner.text[scanner.pos]), scanner.pos, "',' or end of input"
        )
    return terms


def parse_ideal(text, variables=None):
    """Parse the text form of a monomial ideal

    :param str text: The ideal, e.g. ``"x*y, y*z"`` or ``"(x^2 y, z)"``
    :param variables: Ordered variable names; when omitted the sorted distinct names of the text are used
    :raises ParseError: on malformed text, with the offset of the problem
    :raises UnknownVariable: when a name is not in ``variables``
    """
    terms = _parse_terms(text)
    if variables is None:
        variables = sorted(set(name for factors in terms for name, _, _ in factors))
    variables = tuple(variables)
    index = dict((name, i) for i, name in enumerate(variables))

    generators = []
    for factors in terms:
        exponents = [0] * len(variables)
        for name, exponent, offset in factors:
            if name not in index:
                raise UnknownVariable(
                    "Unknown variable {0!r}".format(name), offset, ", ".join(variables)
                )
            exponents[index[name]] += exponent
        generators.append(exponents)
    return MonomialIdeal(generators, variables)


def render_monomial(alpha, variables):
    factors = []
    for name, e in zip(variables, alpha):
        if e == 1:
            factors.append(name)
        elif e > 1:
            factors.append("{0}^{1}".format(name, e))
    return "*".join(factors) or "1"


def render_ideal(ideal):
    """Render an ideal in the text grammar accepted by :func:`parse_ideal`"""
    return ", ".join(render_monomial(g, ideal.variables) for g in ideal.generators)


# --- lcm lattice and Scarf faces ---


def lcm_lattice(ideal):
    """Return the set of lcms of all nonempty subsets of the generators"""
    lattice = set()
    for g in ideal.generators:
        lattice |= set([g]) | set(lcm(g, alpha) for alpha in lattice)
    return frozenset(lattice)


def subsets(q):
    """Yield the nonempty subsets of ``range(q)`` by size, then lexicographically"""
    for size in range(1, q + 1):
        for subset in itertools.combinations(range(q), size):
            yield subset


def scarf_faces(ideal):
    """Return the generator subsets whose lcm is attained by no other subset

    The result is closed under taking nonempty subsets and is sorted by size, then lexicographically.
    """
    by_lcm = {}
    for subset in subsets(len(ideal)):
        by_lcm.setdefault(ideal.subset_lcm(subset), []).append(subset)
    faces = [found[0] for found in six.itervalues(by_lcm) if len(found) == 1]
    return sorted(faces, key=lambda s: (len(s), s))


def is_generic(ideal):
    """True if no variable occurs with the same positive exponent in two different generators"""
    for k in range(ideal.n):
        positive = [g[k] for g in ideal.generators if g[k] > 0]
        if len(positive) != len(set(positive)):
            return False
    return True
