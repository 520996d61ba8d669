import random

import pytest

from quiverhh.errors import FieldMismatch, ShapeError
from quiverhh.linalg import (
    GF,
    QQ,
    RowSpace,
    Scalar,
    SparseMatrix,
    bareiss_rank,
    compose,
    kernel_basis,
    kernel_dim,
    naive_rank,
    rank,
)


def test_rank_empty_matrix():
    assert rank(SparseMatrix(0, 0)) == 0


def test_rank_identity():
    assert rank(SparseMatrix.identity(2)) == 2


def test_rank_all_ones_3x3():
    # hand elimination: all rows equal, rank 1
    m = SparseMatrix.from_dense([[1, 1, 1]] * 3)
    assert rank(m) == 1


def test_kernel_dim_identity():
    assert kernel_dim(SparseMatrix.identity(2)) == 0


def test_kernel_dim_zero_map():
    assert kernel_dim(SparseMatrix.zero(3, 5)) == 5


def test_kernel_dim_all_ones_over_f2():
    # brute force over F_2^3: x+y+z=0 has 4 solutions, dimension 2
    f2 = GF(2)
    m = SparseMatrix.from_dense([[1, 1, 1]] * 3, field=f2)
    count = 0
    for x in range(2):
        for y in range(2):
            for z in range(2):
                if (x + y + z) % 2 == 0:
                    count += 1
    assert count == 2 ** kernel_dim(m)
    assert kernel_dim(m) == 2


def test_compose_identity():
    m = SparseMatrix.from_dense([[1, 2], [3, 4]])
    assert compose(SparseMatrix.identity(2), m) == m


def test_compose_hand_product():
    a = SparseMatrix.from_dense([[1, 2], [0, 1]])
    b = SparseMatrix.from_dense([[1, 0], [3, 1]])
    assert compose(a, b) == SparseMatrix.from_dense([[7, 2], [3, 1]])


def test_compose_shape_error():
    a = SparseMatrix.zero(2, 3)
    b = SparseMatrix.zero(2, 3)
    with pytest.raises(ShapeError):
        compose(a, b)


def test_compose_field_mismatch():
    a = SparseMatrix.identity(2, field=QQ)
    b = SparseMatrix.identity(2, field=GF(5))
    with pytest.raises(FieldMismatch):
        compose(a, b)


def test_scalar_field_mismatch():
    with pytest.raises(FieldMismatch):
        Scalar(QQ, 1) + Scalar(GF(5), 1)
    with pytest.raises(FieldMismatch):
        SparseMatrix(1, 1, [(0, 0, Scalar(GF(5), 1))], field=QQ)


def test_duplicate_entry_rejected():
    with pytest.raises(ShapeError):
        SparseMatrix(2, 2, [(0, 0, 1), (0, 0, 2)])


def _random_int_matrix(rng, rows, cols, lo=-5, hi=5):
    return [[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)]


def test_rank_equals_rank_of_transpose():
    rng = random.Random(7)
    for _ in range(30):
        rows, cols = rng.randint(1, 8), rng.randint(1, 8)
        dense = _random_int_matrix(rng, rows, cols)
        m = SparseMatrix.from_dense(dense)
        assert rank(m) == rank(m.transpose())


def test_rank_over_q_bounds_rank_mod_p():
    rng = random.Random(11)
    for p in (2, 3, 5, 7):
        fp = GF(p)
        for _ in range(15):
            rows, cols = rng.randint(1, 7), rng.randint(1, 7)
            dense = _random_int_matrix(rng, rows, cols)
            rq = rank(SparseMatrix.from_dense(dense))
            rp = rank(SparseMatrix.from_dense(dense, field=fp))
            assert rq >= rp


def test_rank_plus_kernel_is_cols():
    rng = random.Random(13)
    for _ in range(25):
        rows, cols = rng.randint(1, 9), rng.randint(1, 9)
        m = SparseMatrix.from_dense(_random_int_matrix(rng, rows, cols))
        assert rank(m) + kernel_dim(m) == cols


def test_bareiss_agrees_with_naive_on_random_10x10():
    rng = random.Random(17)
    for _ in range(20):
        dense = _random_int_matrix(rng, 10, 10)
        assert bareiss_rank(dense) == naive_rank(dense)


def test_sparse_path_agrees_with_dense():
    # force the sparse elimination by building a wide matrix
    rng = random.Random(19)
    rows, cols = 5, 300
    entries = []
    seen = set()
    for _ in range(200):
        i, j = rng.randrange(rows), rng.randrange(cols)
        if (i, j) in seen:
            continue
        seen.add((i, j))
        entries.append((i, j, rng.randint(-3, 3)))
    m = SparseMatrix(rows, cols, entries)
    dense_rank = naive_rank(m.to_dense())
    assert rank(m) == dense_rank
    mp = SparseMatrix(rows, cols, entries, field=GF(5))
    assert rank(mp) <= dense_rank


def test_kernel_basis_is_exact_kernel():
    rng = random.Random(23)
    for _ in range(20):
        rows, cols = rng.randint(1, 6), rng.randint(1, 6)
        m = SparseMatrix.from_dense(_random_int_matrix(rng, rows, cols))
        basis = kernel_basis(m)
        assert len(basis) == kernel_dim(m)
        for vec in basis:
            col = SparseMatrix.from_columns(m.cols, [vec])
            assert m.compose(col).is_zero()


def test_rowspace_reduce_is_canonical():
    space = RowSpace(QQ)
    space.add({0: QQ.coerce(1), 1: QQ.coerce(1)})
    space.add({1: QQ.coerce(1), 2: QQ.coerce(1)})
    # x0 ~ -x1 ~ x2, canonical representative lives on free coords
    r = space.reduce({0: QQ.coerce(1)})
    assert set(r) == {2}
    # reducing a vector already in the span gives zero
    assert space.reduce({0: QQ.coerce(1), 1: QQ.coerce(1)}) == {}


def test_prime_field_rejects_composites_and_large_primes():
    with pytest.raises(ValueError):
        GF(4)
    with pytest.raises(ValueError):
        GF(2**31 + 11)
