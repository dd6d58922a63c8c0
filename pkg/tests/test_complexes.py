import pytest

from jzseq.exactlin import QQ, Matrix
from jzseq.algebra import make_algebra, regular_bimodule
from jzseq.complexes import (ChainComplex, ChainMap, DegreeOutOfRange,
                             NotSubcomplex, induced_map, truncate,
                             subquotient_complex)
from jzseq.relbar import hochschild_complex

from oracle_bar import hochschild_dims


def M(rows, cols, entries):
    return Matrix.from_entries(QQ, rows, cols, {k: QQ.from_int(v) for k, v in entries.items()})


def zero_complex(dims):
    diffs = [Matrix.zero(QQ, dims[n - 1], dims[n]) for n in range(1, len(dims))]
    return ChainComplex(QQ, dims, diffs)


def test_zero_complex_homology():
    c = zero_complex([2, 3, 1])
    assert [c.homology_dim(n) for n in range(2)] == [2, 3]


def test_identity_complex_homology():
    # 0 -> k -> k with the identity: homology zero everywhere reportable
    c = ChainComplex(QQ, [1, 1, 0],
                     [Matrix.identity(QQ, 1), Matrix.zero(QQ, 1, 0)])
    assert c.homology_dim(0) == 0
    assert c.homology_dim(1) == 0


def test_homology_out_of_range():
    c = zero_complex([1, 1])
    with pytest.raises(DegreeOutOfRange):
        c.homology(1)


def test_dd_nonzero_rejected():
    d1 = Matrix.identity(QQ, 1)
    d2 = Matrix.identity(QQ, 1)
    with pytest.raises(ValueError):
        ChainComplex(QQ, [1, 1, 1], [d1, d2])


def test_bar_complex_dual_numbers_matches_oracle():
    dual_mult = [[[1, 0], [0, 1]], [[0, 1], [0, 0]]]
    expected = hochschild_dims(dual_mult, [1, 0], 5)
    A = make_algebra(2, ["1", "x"],
                     {(0, 0): [1, 0], (0, 1): [0, 1], (1, 0): [0, 1]}, [1, 0])
    c = hochschild_complex(A, regular_bimodule(A), 6)
    assert [c.homology_dim(n) for n in range(5)] == expected == [2, 1, 1, 1, 1]


def test_truncate_zero_d1():
    c = zero_complex([2, 3, 1])
    t = truncate(c)
    assert t.dims == [0, 3, 1]
    assert all(t.homology_dim(n) == c.homology_dim(n) for n in range(1, 2))


def test_truncate_identity_complex():
    c = ChainComplex(QQ, [1, 1, 0],
                     [Matrix.identity(QQ, 1), Matrix.zero(QQ, 1, 0)])
    t = truncate(c)
    assert t.dims[0] == 0 and t.dims[1] == 0


def test_truncate_preserves_homology_dual_numbers():
    A = make_algebra(2, ["1", "x"],
                     {(0, 0): [1, 0], (0, 1): [0, 1], (1, 0): [0, 1]}, [1, 0])
    c = hochschild_complex(A, regular_bimodule(A), 5)
    t = truncate(c)
    for n in range(1, 4):
        assert t.homology_dim(n) == c.homology_dim(n)
    assert t.homology_dim(0) == 0


def test_induced_map_identity_and_zero():
    c = zero_complex([2, 2, 2])
    ident = ChainMap(c, c, [Matrix.identity(QQ, 2)] * 3)
    assert induced_map(ident, 1) == Matrix.identity(QQ, 2)
    zero = ChainMap(c, c, [Matrix.zero(QQ, 2, 2)] * 3)
    assert induced_map(zero, 1).is_zero()


def test_induced_map_composition():
    c = zero_complex([2, 2, 2])
    f = ChainMap(c, c, [M(2, 2, {(0, 0): 1, (1, 0): 1, (1, 1): 2})] * 3)
    g = ChainMap(c, c, [M(2, 2, {(0, 1): 1, (1, 0): 1})] * 3)
    gf = g.compose(f)
    assert induced_map(gf, 1) == induced_map(g, 1) @ induced_map(f, 1)


def test_chain_map_square_validated():
    c = ChainComplex(QQ, [1, 1], [Matrix.identity(QQ, 1)])
    d = zero_complex([1, 1])
    with pytest.raises(ValueError):
        ChainMap(c, d, [Matrix.identity(QQ, 1)] * 2)


def test_subquotient_whole_by_zero():
    A = make_algebra(2, ["1", "x"],
                     {(0, 0): [1, 0], (0, 1): [0, 1], (1, 0): [0, 1]}, [1, 0])
    c = hochschild_complex(A, regular_bimodule(A), 3)
    big = [Matrix.identity(QQ, d) for d in c.dims]
    small = [Matrix.zero(QQ, 0, d) for d in c.dims]
    sub = subquotient_complex(c, big, small)
    assert sub.dims == c.dims
    for n in range(c.top_degree):
        assert sub.homology_dim(n) == c.homology_dim(n)


def test_subquotient_equal_spans_gives_zero():
    c = zero_complex([2, 2])
    big = [Matrix.identity(QQ, 2)] * 2
    sub = subquotient_complex(c, big, big)
    assert sub.dims == [0, 0]


def test_subquotient_rejects_nonclosed_subspace():
    c = ChainComplex(QQ, [2, 1], [M(2, 1, {(0, 0): 1})])
    # span{e1} in degree 0 does not contain the image of d_1
    big = [Matrix.from_rows(QQ, [{1: QQ.one}], 2), Matrix.identity(QQ, 1)]
    small = [Matrix.zero(QQ, 0, 2), Matrix.zero(QQ, 0, 1)]
    with pytest.raises(NotSubcomplex):
        subquotient_complex(c, big, small)


def test_subquotient_rejects_small_outside_big():
    c = zero_complex([2, 1])
    big = [Matrix.from_rows(QQ, [{0: QQ.one}], 2), Matrix.identity(QQ, 1)]
    small = [Matrix.from_rows(QQ, [{1: QQ.one}], 2), Matrix.zero(QQ, 0, 1)]
    with pytest.raises(NotSubcomplex):
        subquotient_complex(c, big, small)
