from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from jzseq.exactlin import (QQ, GF, Matrix, QuotientSpace, rank, kernel_basis,
                            make_quotient, induced_on_quotient,
                            WellDefinednessViolation, kron)


def M(rows):
    return Matrix.from_dense(QQ, rows)


def test_rank_empty_and_identity():
    assert rank(Matrix.zero(QQ, 0, 0)) == 0
    assert rank(Matrix.identity(QQ, 3)) == 3


def test_rank_dependent_rows():
    assert rank(M([[1, 2], [2, 4]])) == 1


def test_rank_over_prime_field():
    F5 = GF(5)
    m = Matrix.from_dense(F5, [[F5.from_int(1), F5.from_int(2)],
                               [F5.from_int(2), F5.from_int(4)]])
    assert rank(m) == 1
    # 2*3 = 6 = 1 mod 5, so this matrix is invertible mod 5 but not rank 1
    m2 = Matrix.from_dense(F5, [[F5.from_int(2), F5.from_int(0)],
                                [F5.from_int(0), F5.from_int(3)]])
    assert rank(m2) == 2


def test_kernel_injective_map():
    assert kernel_basis(Matrix.identity(QQ, 2)).rows == 0


def test_kernel_zero_map():
    k = kernel_basis(Matrix.zero(QQ, 2, 3))
    assert k.rows == 3
    assert k == Matrix.identity(QQ, 3)


def test_kernel_single_equation():
    k = kernel_basis(M([[1, 1]]))
    assert k.rows == 1
    (row,) = k.row_dicts()
    # (1, -1) up to scaling
    assert row[0] == -row[1]


def test_matmul_and_transpose():
    a = M([[1, 2], [0, 1]])
    b = M([[1, 0], [3, 1]])
    assert (a @ b).to_dense() == M([[7, 2], [3, 1]]).to_dense()
    assert a.transpose().to_dense() == M([[1, 0], [2, 1]]).to_dense()


def test_make_quotient_no_relations():
    q = make_quotient(3, Matrix.zero(QQ, 0, 3))
    assert q.quotient_dim == 3
    assert q.projection == Matrix.identity(QQ, 3)


def test_make_quotient_one_relation():
    q = make_quotient(2, M([[1, -1]]))
    assert q.quotient_dim == 1
    q.verify()


def test_make_quotient_full_relations():
    q = make_quotient(2, M([[1, 0], [0, 1], [1, 1]]))
    assert q.quotient_dim == 0


def test_make_quotient_dimension_mismatch():
    with pytest.raises(ValueError):
        make_quotient(3, M([[1, -1]]))


def test_induced_identity():
    q = make_quotient(2, M([[1, -1]]))
    assert induced_on_quotient(Matrix.identity(QQ, 2), q, q) == Matrix.identity(QQ, 1)


def test_induced_rejects_relation_breaking_map():
    src = make_quotient(2, M([[1, -1]]))
    dst = make_quotient(2, M([[1, 0]]))
    bad = M([[0, 0], [1, 0]])  # sends the relation (1,-1) to (0,1), outside span{(1,0)}
    with pytest.raises(WellDefinednessViolation):
        induced_on_quotient(bad, src, dst)


def test_induced_swap_on_quotient():
    q = make_quotient(2, M([[1, -1]]))
    swap = M([[0, 1], [1, 0]])
    assert induced_on_quotient(swap, q, q) == Matrix.identity(QQ, 1)


def test_induced_independent_of_section():
    rel = M([[1, -1, 0]])
    q1 = make_quotient(3, rel)
    # another valid section: add relation-span columns
    twist = Matrix.from_entries(QQ, 3, 2, {(0, 0): QQ.from_int(2),
                                           (1, 0): QQ.from_int(-2)})
    q2 = QuotientSpace(QQ, 3, rel, q1.quotient_dim, q1.projection,
                       q1.section + twist)
    f = M([[2, 0, 0], [0, 2, 0], [1, 1, 0]])  # preserves span{(1,-1,0)}
    assert induced_on_quotient(f, q1, q1) == induced_on_quotient(f, q2, q2)


def test_kron_matches_tensor_of_maps():
    a = M([[1, 2]])
    b = M([[0, 1], [1, 0]])
    k = kron(a, b)
    assert (k.rows, k.cols) == (2, 4)
    # (a x b)(e1 x e0) = a e1 x b e0 = 2 x (0,1)
    col = k.col(2)
    assert col == {1: QQ.from_int(2)}


small_ints = st.integers(min_value=-4, max_value=4)


@st.composite
def rational_matrices(draw, max_dim=4):
    rows = draw(st.integers(min_value=0, max_value=max_dim))
    cols = draw(st.integers(min_value=0, max_value=max_dim))
    dense = draw(st.lists(st.lists(small_ints, min_size=cols, max_size=cols),
                          min_size=rows, max_size=rows))
    entries = {}
    for i, row in enumerate(dense):
        for j, v in enumerate(row):
            if v:
                entries[(i, j)] = Fraction(v)
    entries = {k: QQ.from_int(v) for k, v in
               {(i, j): v for (i, j), v in entries.items()}.items()}
    return Matrix.from_entries(QQ, rows, cols, entries)


@given(rational_matrices())
@settings(max_examples=60, deadline=None)
def test_rank_nullity(m):
    assert rank(m) + kernel_basis(m).rows == m.cols


@given(rational_matrices())
@settings(max_examples=60, deadline=None)
def test_kernel_rows_annihilated(m):
    for row in kernel_basis(m).row_dicts():
        assert not m.apply(row)


@given(rational_matrices(max_dim=3))
@settings(max_examples=40, deadline=None)
def test_quotient_invariants(m):
    q = make_quotient(m.cols, m)
    q.verify()
    assert q.quotient_dim == m.cols - rank(m)
