import itertools

import pytest

from cellposet.exactlin import (
    FpMatrix,
    IntMatrix,
    determinant,
    factor_sl_transvections,
    from_domain_matrix,
    int_determinant,
    int_inverse_unimodular,
    int_rank,
    inverse,
    inverse_mod,
    is_prime,
    kernel_basis,
    lift_sl,
    random_invertible,
    random_sl,
    rank,
    rref,
    solve,
    to_domain_matrix,
    transvection_matrix,
)
from cellposet.exceptions import DimensionMismatch, NotSL, NotUnimodular, SingularMatrix


def test_entries_are_reduced():
    m = FpMatrix(2, 2, 3, {(0, 0): 4, (1, 1): 3, (0, 1): -1})
    assert m[0, 0] == 1
    assert m[0, 1] == 2
    assert m[1, 1] == 0
    assert m.nnz == 2


def test_modulus_must_be_prime():
    with pytest.raises(ValueError):
        FpMatrix(1, 1, 4)
    assert is_prime(5)
    assert not is_prime(1)
    assert not is_prime(9)


def test_shapes_are_checked():
    with pytest.raises(DimensionMismatch):
        FpMatrix(1, 1, 2, {(1, 0): 1})
    with pytest.raises(DimensionMismatch):
        FpMatrix.identity(2, 3) * FpMatrix.identity(3, 3)
    with pytest.raises(DimensionMismatch):
        FpMatrix.identity(2, 3) * FpMatrix.identity(2, 5)


def test_inverse_mod():
    assert inverse_mod(2, 5) == 3
    assert inverse_mod(-1, 7) == 6
    with pytest.raises(ZeroDivisionError):
        inverse_mod(5, 5)


def test_determinant():
    assert determinant(FpMatrix.from_rows([[1, 2], [3, 4]], 5)) == 3
    assert determinant(FpMatrix.from_rows([[1, 1], [1, 1]], 2)) == 0
    assert determinant(FpMatrix.identity(0, 3)) == 1


def test_rref_representations_agree(rng):
    for p in (2, 3, 5):
        m = FpMatrix.from_rows([[rng.randrange(p) for _ in range(12)] for _ in range(10)], p)
        dense = rref(m, sparse=False)
        assert dense == rref(m, sparse=True)

        r, pivots, reduced = dense
        assert r == rank(m) == len(pivots)
        assert all(reduced[k, c] == 1 for k, c in enumerate(pivots))


def test_domain_matrix_bridge():
    m = FpMatrix.from_rows([[4, 1], [0, 3]], 5)
    dm = to_domain_matrix(m)
    assert dm.shape == (2, 2)
    assert from_domain_matrix(dm, 5) == m
    assert int_determinant(IntMatrix([[3, 1], [5, 2]])) == 1


def test_kernel_basis():
    m = FpMatrix.from_rows([[1, 1, 0], [0, 0, 1]], 3)
    assert kernel_basis(m) == [(2, 1, 0)]
    assert m.apply((2, 1, 0)) == (0, 0)
    assert rank(m) == 2


def test_solve():
    m = FpMatrix.from_rows([[1, 0], [0, 0]], 2)
    assert solve(m, (1, 0)) == (1, 0)
    assert solve(m, (0, 1)) is None
    with pytest.raises(DimensionMismatch):
        solve(m, (1,))


def test_inverse(rng):
    for p in (2, 3, 5):
        for n in range(1, 6):
            m = random_invertible(n, p, rng)
            assert m * inverse(m) == FpMatrix.identity(n, p)
            assert inverse(m) * m == FpMatrix.identity(n, p)

    with pytest.raises(SingularMatrix):
        inverse(FpMatrix.from_rows([[1, 2], [2, 4]], 5))


def test_factor_every_matrix_of_sl2_over_gf2():
    found = 0
    for entries in itertools.product(range(2), repeat=4):
        m = FpMatrix.from_rows([entries[:2], entries[2:]], 2)
        if determinant(m) != 1:
            continue
        found += 1
        product = FpMatrix.identity(2, 2)
        for t in factor_sl_transvections(m):
            assert t.i != t.j
            product = product * transvection_matrix(2, t, 2)
        assert product == m
    assert found == 6


def test_factor_rejects_other_determinants():
    with pytest.raises(SingularMatrix):
        factor_sl_transvections(FpMatrix.from_rows([[1, 1], [1, 1]], 3))
    with pytest.raises(NotSL):
        factor_sl_transvections(FpMatrix.from_rows([[2, 0], [0, 1]], 3))
    with pytest.raises(NotSL):
        lift_sl(FpMatrix.from_rows([[2, 0], [0, 1]], 3))


def test_lift_sl_random(rng):
    for _ in range(200):
        n = rng.randint(1, 6)
        p = rng.choice([2, 3, 5])
        m = random_sl(n, p, rng)
        assert determinant(m) == 1

        t = lift_sl(m)
        assert t.shape == (n, n)
        assert t.reduce(p) == m
        assert int_determinant(t) == 1


def test_lift_keeps_small_representatives():
    m = FpMatrix.from_rows([[1, 1], [0, 1]], 3)
    assert lift_sl(m) == IntMatrix([[1, 1], [0, 1]])


def test_int_determinant():
    assert int_determinant(IntMatrix([[2, 1], [1, 1]])) == 1
    assert int_determinant(IntMatrix([[0, 1], [1, 0]])) == -1
    assert int_determinant(IntMatrix([[1, 2, 3], [4, 5, 6], [7, 8, 10]])) == -3
    assert int_determinant(IntMatrix([], cols=0)) == 1


def test_int_inverse_unimodular():
    m = IntMatrix([[2, 1], [1, 1]])
    inverse_m = int_inverse_unimodular(m)
    assert inverse_m == IntMatrix([[1, -1], [-1, 2]])
    assert m * inverse_m == IntMatrix.identity(2)

    with pytest.raises(NotUnimodular):
        int_inverse_unimodular(IntMatrix([[2, 0], [0, 1]]))


def test_int_rank():
    assert int_rank(IntMatrix([[1, 2], [2, 4]])) == 1
    assert int_rank(IntMatrix([[2], [-2]])) == 1
    assert IntMatrix([[2], [-2]]).reduce(2).is_zero()
