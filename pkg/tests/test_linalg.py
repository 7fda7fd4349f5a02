"""Elimination kernels: echelon form, kernels, solving, determinism."""

import random
from itertools import product

import pytest

from monres.linalg import Field, Matrix, column_space_basis


QQ = Field(0)
GF5 = Field(5)


def M(rows, field=QQ):
    return Matrix(field, [[field.of(x) for x in r] for r in rows])


def test_field_validation():
    Field(0)
    Field(2)
    Field(2147483647)
    with pytest.raises(ValueError):
        Field(4)
    with pytest.raises(ValueError):
        Field(2**31 + 11)


def test_rref_identity():
    R, pivots, rank = Matrix.identity(QQ, 3).rref()
    assert R == Matrix.identity(QQ, 3)
    assert pivots == [0, 1, 2]
    assert rank == 3


def test_rref_zero():
    R, pivots, rank = Matrix.zero(QQ, 2, 3).rref()
    assert R.is_zero()
    assert pivots == []
    assert rank == 0


def test_rref_single_row():
    R, pivots, rank = M([[1, 1, 1]]).rref()
    assert R == M([[1, 1, 1]])
    assert rank == 1


def test_kernel_rank_one():
    K = M([[1, 1, 1]]).kernel_basis()
    assert K.columns() == [[QQ.of(-1), QQ.of(1), QQ.of(0)],
                           [QQ.of(-1), QQ.of(0), QQ.of(1)]]


def test_kernel_invertible():
    assert M([[1, 2], [3, 4]]).kernel_basis().ncols == 0


def test_kernel_triangle_boundary_matches_bruteforce():
    # augmented boundary of the hollow triangle's edges, columns 12 13 23
    bd = M([[-1, -1, 0], [1, 0, -1], [0, 1, 1]])
    K = bd.kernel_basis()
    # oracle: enumerate small integer vectors and keep the kernel members
    found = []
    for v in product(range(-2, 3), repeat=3):
        vec = [QQ.of(x) for x in v]
        if all(x == 0 for x in bd.mul_vector(vec)) and any(v):
            found.append(v)
    assert K.ncols == 1
    assert (1, -1, 1) in found
    # every enumerated kernel vector is a multiple of the computed basis
    col = K.column(0)
    for v in found:
        stacked = Matrix.from_columns(QQ, 3, [col, [QQ.of(x) for x in v]])
        assert stacked.rank() == 1


def test_solve_identity():
    b = [QQ.of(3), QQ.of(-2)]
    assert Matrix.identity(QQ, 2).solve(b) == b


def test_solve_free_variable_canonical():
    assert M([[1, 1]]).solve([QQ.of(1)]) == [QQ.of(1), QQ.of(0)]


def test_solve_inconsistent():
    assert M([[0]]).solve([QQ.of(1)]) is None


def test_solve_dimension_mismatch():
    with pytest.raises(ValueError):
        M([[1, 0]]).solve([QQ.of(1), QQ.of(2)])


@pytest.mark.parametrize("field", [QQ, GF5])
def test_random_matrix_invariants(field):
    rng = random.Random(11)
    for _ in range(40):
        n, m = rng.randint(1, 6), rng.randint(1, 6)
        a = Matrix(field, [[field.of(rng.randint(-3, 3)) for _ in range(m)] for _ in range(n)])
        K = a.kernel_basis()
        # M * kernel = 0 and rank-nullity
        if K.ncols:
            assert a.mul(K).is_zero()
        assert a.rank() + K.ncols == a.ncols
        # rref idempotent
        R, _, _ = a.rref()
        R2, _, _ = R.rref()
        assert R == R2
        # solve returns actual solutions
        x = [field.of(rng.randint(-2, 2)) for _ in range(m)]
        b = a.mul_vector(x)
        sol = a.solve(b)
        assert sol is not None
        assert a.mul_vector(sol) == b


def test_inverse():
    a = M([[1, 2], [3, 5]])
    assert a.mul(a.inverse()) == Matrix.identity(QQ, 2)
    with pytest.raises(ValueError):
        M([[1, 2], [2, 4]]).inverse()


def test_column_space_basis_greedy():
    a = M([[1, 2, 1], [2, 4, 0]])
    assert column_space_basis(a) == [0, 2]


def test_gf_arithmetic():
    f = Field(7)
    assert f.of("3/2") == 3 * 4 % 7
    assert f.inv(f.of(3)) == 5
    a = Matrix(f, [[f.of(2), f.of(1)], [f.of(1), f.of(4)]])
    assert a.rank() == 1  # det = 7 = 0 in GF(7)
    b = Matrix(f, [[f.of(2), f.of(1)], [f.of(1), f.of(5)]])
    assert b.rank() == 2
