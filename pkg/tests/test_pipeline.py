import pytest

from cellposet.corpus import doubled_edge_cw, loop_edge_cw
from cellposet.cwposet import (
    BasedBasis,
    BasisElement,
    Cell,
    CWChainData,
    find_minimal_support_basis,
    homogenize,
    scarf_cw,
    simplicial_cw,
    taylor_cw,
    validate_cw,
)
from cellposet.exactlin import (
    FpMatrix,
    IntMatrix,
    determinant,
    int_inverse_unimodular,
    int_rank,
    inverse,
    lift_sl,
    random_sl,
)
from cellposet.exceptions import (
    LowDegreeChange,
    NotRegular,
    NotSupported,
    PipelineException,
    SearchExhausted,
    SizeMismatch,
)
from cellposet.monoid import parse_ideal
from cellposet.pipeline import (
    STAGES,
    BasisChange,
    conjugate_boundaries,
    inputs_digest,
    normalize_det,
    run_main_theorem,
)


def test_triangle_run(koszul3, triangle):
    certificate = run_main_theorem(koszul3, triangle, 2)
    assert certificate.succeeded
    assert certificate.exit_code == 0
    assert certificate.stage_reached == "verify"
    assert [s.name for s in certificate.stages] == list(STAGES)
    assert certificate.checks["y_equals_x"]
    assert certificate.y == triangle
    assert certificate.poset_equal
    assert certificate.differences == []
    assert certificate.verdict.poset_supports
    assert len(certificate.notes) == 3
    certificate.raise_for_status()


@pytest.mark.parametrize("p", [2, 3])
def test_scarf_example(scarf_ideal, p):
    data = scarf_cw(scarf_ideal)
    assert [len(level) for level in data.cells] == [4, 6, 4, 1]

    certificate = run_main_theorem(scarf_ideal, data, p)
    assert certificate.succeeded, certificate.error
    assert certificate.regular
    assert certificate.support.supported
    assert certificate.poset_equal
    assert all(certificate.checks.values())
    assert certificate.provenance[-1] == (3, (2, 2, 2, 2), "stage1")


def test_doubled_edge_is_not_regular(koszul2):
    certificate = run_main_theorem(koszul2, doubled_edge_cw(koszul2), 3)
    assert not certificate.succeeded
    assert certificate.exit_code == 5
    assert isinstance(certificate.error, NotRegular)
    assert certificate.stage_reached == "resolve"
    assert [s.passed for s in certificate.stages] == [True, False]
    assert certificate.regular is False
    assert [f.check for f in certificate.regularity_failures] == ["edge"]

    with pytest.raises(NotRegular):
        certificate.raise_for_status()


def test_loop_edge_is_not_regular():
    ideal = parse_ideal("x", ["x"])
    certificate = run_main_theorem(ideal, loop_edge_cw(ideal), 2)
    assert certificate.exit_code == 5
    assert [s.passed for s in certificate.stages] == [True, False]
    failures = certificate.regularity_failures
    assert [f.check for f in failures] == ["edge"]
    assert failures[0].location == (1, 0)


def test_unsupported_run(edges):
    certificate = run_main_theorem(edges, taylor_cw(edges), 2)
    assert certificate.exit_code == 4
    assert isinstance(certificate.error, NotSupported)
    assert certificate.support.reason == "cardinality"
    assert certificate.stage_reached == "regularity"


def test_basis_search_failure_ends_the_run(mocker, koszul3, triangle):
    mocker.patch(
        "cellposet.pipeline.find_minimal_support_basis", side_effect=SearchExhausted(3, (1, 1, 1), 5)
    )
    certificate = run_main_theorem(koszul3, triangle, 2)
    assert certificate.exit_code == 6
    assert certificate.stage_reached == "support"
    assert certificate.stages[-1].name == "basis"
    assert certificate.y is None


def test_inputs_digest(koszul3, triangle):
    assert inputs_digest(koszul3, triangle, 2) == inputs_digest(koszul3, triangle, 2)
    assert inputs_digest(koszul3, triangle, 2) != inputs_digest(koszul3, triangle, 3)
    assert len(inputs_digest(koszul3, triangle, 2)) == 64


def _two_balls():
    """A hollow tetrahedron filled by two 3-cells with the same boundary"""
    ball = simplicial_cw([(0, 1, 2, 3)])
    column = ball.boundary(3).column(0)
    return CWChainData(
        ball.cells[:3] + [[Cell("A", None), Cell("B", None)]],
        ball.boundaries[:2] + [IntMatrix([[v, v] for v in column])],
    )


def _change(data, t3, m):
    sizes = [len(level) for level in data.cells]
    identity = BasisChange.identity(sizes[:3], m.p)
    return BasisChange(identity.fp + [m], identity.integral + [t3])


def _homology_ranks(data):
    ranks = [int_rank(data.boundary(d)) for d in range(1, data.dimension + 1)] + [0]
    return [len(level) - (ranks[d - 1] if d else 0) - ranks[d] for d, level in enumerate(data.cells)]


def test_random_conjugations(rng):
    data = _two_balls()
    assert validate_cw(data).valid

    for _ in range(50):
        p = rng.choice([2, 3, 5])
        m = random_sl(2, p, rng)
        t3 = lift_sl(m)
        change = _change(data, t3, m)
        assert change.check() == []

        y = conjugate_boundaries(data, change)
        assert validate_cw(y).valid
        assert y.cells == data.cells
        for d in (1, 2):
            assert y.boundary(d) == data.boundary(d)
        assert y.boundary(3) == data.boundary(3) * int_inverse_unimodular(t3)
        assert y.boundary(3).reduce(p) == data.boundary(3).reduce(p) * inverse(m)
        assert _homology_ranks(y) == _homology_ranks(data)


def test_scaled_basis_gives_a_nontrivial_lift(mocker):
    ideal = parse_ideal("x, y, z, w, v", ["x", "y", "z", "w", "v"])
    x = taylor_cw(ideal)
    assert [len(level) for level in x.cells] == [5, 10, 10, 5, 1]

    basis = find_minimal_support_basis(homogenize(x, 3))
    levels = [list(level) for level in basis.elements]
    first = levels[3][0]
    levels[3][0] = first._replace(vector=tuple(2 * v % 3 for v in first.vector))
    scaled = BasedBasis(3, levels)
    assert determinant(scaled.matrix(3)) == 2
    mocker.patch("cellposet.pipeline.find_minimal_support_basis", return_value=scaled)

    certificate = run_main_theorem(ideal, x, 3)
    assert certificate.succeeded
    assert certificate.poset_equal
    assert certificate.checks["normalize_keeps_poset"]
    assert certificate.checks["lift_consistent"]
    assert certificate.checks["y_supports_f"]
    # the first and last degree 3 elements end up doubled, so both boundaries touching degree 3 move
    conjugate = [s for s in certificate.stages if s.name == "conjugate"][0]
    assert conjugate.details["changed_degrees"] == [3, 4]

    y = certificate.y
    assert y.boundary(3) != x.boundary(3)
    doubled = FpMatrix(5, 5, 3, dict(((k, k), 2 if k in (0, 4) else 1) for k in range(5)))
    assert y.boundary(4).reduce(3) == doubled * x.boundary(4).reduce(3)
    assert y.boundary(3).reduce(3) == x.boundary(3).reduce(3) * doubled


def test_conjugation_rejects_bad_changes(triangle):
    sizes = [len(level) for level in triangle.cells]
    with pytest.raises(SizeMismatch):
        conjugate_boundaries(triangle, BasisChange.identity(sizes[:2], 2))
    with pytest.raises(SizeMismatch):
        conjugate_boundaries(triangle, BasisChange.identity([3, 3, 2], 2))

    shear = BasisChange.identity(sizes, 2)
    shear.integral[1] = IntMatrix([[1, 1, 0], [0, 1, 0], [0, 0, 1]])
    with pytest.raises(LowDegreeChange):
        conjugate_boundaries(triangle, shear)

    with pytest.raises(SizeMismatch):
        BasisChange([FpMatrix.identity(1, 2)], [])


def test_basis_change_must_be_standard_below_three():
    basis = BasedBasis(
        2,
        [
            [BasisElement("0", (1, 0), None, "standard"), BasisElement("1", (1, 1), None, "stage1")],
        ],
    )
    with pytest.raises(LowDegreeChange):
        BasisChange.from_basis(basis)


def test_normalize_det():
    basis = BasedBasis(
        3,
        [
            [],
            [],
            [],
            [BasisElement("a", (1, 0), None, "stage1"), BasisElement("b", (1, 2), None, "stage1")],
        ],
    )
    assert determinant(basis.matrix(3)) == 2

    normalized = normalize_det(basis)
    assert determinant(normalized.matrix(3)) == 1
    assert normalized.level(3)[0] == basis.level(3)[0]
    assert normalized.level(3)[1].vector == (2, 1)

    change = BasisChange.from_basis(normalized)
    assert change.check() == []
    assert change.integral[3].reduce(3) == inverse(normalized.matrix(3))


def test_raise_for_status_without_error(koszul3, triangle):
    certificate = run_main_theorem(koszul3, triangle, 2)
    certificate.checks["y_valid"] = False
    assert certificate.exit_code == 3
    with pytest.raises(PipelineException):
        certificate.raise_for_status()
