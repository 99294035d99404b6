import pytest

from cellposet.exceptions import DimensionMismatch, ParseError, UnknownVariable
from cellposet.monoid import (
    MonomialIdeal,
    Multidegree,
    is_generic,
    lcm,
    lcm_lattice,
    parse_ideal,
    render_ideal,
    scarf_faces,
    subsets,
)


def test_multidegree():
    alpha = Multidegree([1, 0, 2])
    assert alpha.n == 3
    assert alpha.total == 3
    assert alpha.divides((1, 1, 2))
    assert not alpha.divides((0, 1, 2))
    assert alpha - (1, 0, 1) == (0, 0, 1)

    with pytest.raises(ValueError):
        Multidegree([1, -1])
    with pytest.raises(DimensionMismatch):
        alpha.divides((1, 0))


def test_lcm():
    assert lcm((1, 0, 2), (0, 3, 1)) == (1, 3, 2)
    with pytest.raises(DimensionMismatch):
        lcm((1, 0), (1, 0, 0))


def test_lcm_laws(rng):
    for _ in range(100):
        a, b, c = [Multidegree(rng.randrange(4) for _ in range(3)) for _ in range(3)]
        assert lcm(a, lcm(b, c)) == lcm(lcm(a, b), c)
        assert lcm(a, b) == lcm(b, a)
        assert lcm(a, a) == a
        assert a.divides(lcm(a, b))


def test_parse_orders_generators():
    ideal = parse_ideal("(x*y, y*z, x^2 z)", ["x", "y", "z"])
    assert ideal.generators == [(1, 1, 0), (0, 1, 1), (2, 0, 1)]
    assert ideal.variables == ("x", "y", "z")


def test_parse_default_variables():
    ideal = parse_ideal("y, x")
    assert ideal.variables == ("x", "y")
    assert ideal.generators == [(1, 0), (0, 1)]


def test_parse_drops_redundant_generators():
    ideal = parse_ideal("x, x*y, x^2, x", ["x", "y"])
    assert ideal.generators == [(1, 0)]
    assert len(ideal) == 1


def test_parse_errors():
    with pytest.raises(ParseError) as exc:
        parse_ideal("x**y")
    assert exc.value.offset == 2

    with pytest.raises(ParseError):
        parse_ideal("(x, y")
    with pytest.raises(ParseError):
        parse_ideal("x, ")
    with pytest.raises(ParseError):
        parse_ideal("")


def test_zero_exponent_is_the_unit():
    assert parse_ideal("x^0*y, x*z", ["x", "y", "z"]).generators == [(0, 1, 0), (1, 0, 1)]
    assert parse_ideal("x^0").generators == [(0,)]

    with pytest.raises(ParseError) as exc:
        parse_ideal("x^")
    assert exc.value.offset == 2


def test_unknown_variable():
    with pytest.raises(UnknownVariable) as exc:
        parse_ideal("x*q", ["x", "y"])
    assert exc.value.offset == 2
    assert isinstance(exc.value, ParseError)


def test_render_round_trip():
    ideal = parse_ideal("x^2*y, y*z", ["x", "y", "z"])
    assert render_ideal(ideal) == "y*z, x^2*y"
    assert parse_ideal(render_ideal(ideal), ideal.variables) == ideal


def test_ideal_needs_generators():
    with pytest.raises(ValueError):
        MonomialIdeal([])
    with pytest.raises(DimensionMismatch):
        MonomialIdeal([(1, 0)], ["x", "y", "z"])


def test_contains(edges):
    assert edges.contains((1, 1, 0))
    assert edges.contains((2, 1, 5))
    assert not edges.contains((1, 0, 0))


def test_lcm_lattice(koszul2):
    assert lcm_lattice(koszul2) == frozenset([(1, 0), (0, 1), (1, 1)])


def test_lcm_lattice_properties(rng):
    for _ in range(30):
        generators = [[rng.randrange(3) for _ in range(3)] for _ in range(rng.randint(1, 5))]
        ideal = MonomialIdeal(generators, ["x", "y", "z"])
        lattice = lcm_lattice(ideal)

        assert len(lattice) <= 2 ** len(ideal) - 1
        assert set(ideal.generators) <= lattice
        for alpha in lattice:
            assert any(g.divides(alpha) for g in ideal.generators)
            for beta in lattice:
                assert lcm(alpha, beta) in lattice


def test_subsets_order():
    assert list(subsets(3)) == [(0,), (1,), (2,), (0, 1), (0, 2), (1, 2), (0, 1, 2)]


def test_scarf_faces(edges, scarf_ideal):
    assert scarf_faces(edges) == [(0,), (1,), (2,)]
    assert not is_generic(edges)

    # every subset has its own lcm, so the Scarf complex is the full simplex
    assert len(lcm_lattice(scarf_ideal)) == 15
    assert scarf_faces(scarf_ideal) == list(subsets(4))
    assert is_generic(scarf_ideal)
