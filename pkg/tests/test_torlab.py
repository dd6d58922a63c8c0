import pytest

from jzseq.exactlin import QQ, GF, Matrix, rank
from jzseq.algebra import (make_algebra, from_quiver, make_subalgebra,
                           regular_bimodule, restrict_bimodule, transported_S,
                           whole_algebra_embedding, enveloping, Bimodule)
from jzseq.tensorb import power_over_B
from jzseq.torlab import (TorRequest, tor, check_hypothesis, nilpotency_index,
                          pd_upper, radical_basis, radical_is_ideal,
                          semisimple_quotient, LeftModule, RightModule,
                          bimodule_as_left_module, bimodule_as_right_module,
                          UnsupportedField)


def dual_numbers(field=QQ):
    one, zero = field.one, field.zero
    return make_algebra(2, ["1", "x"],
                        {(0, 0): [one, zero], (0, 1): [zero, one],
                         (1, 0): [zero, one]},
                        [one, zero], field=field)


def trivial_modules_over(B):
    zero = Matrix.zero(B.field, 1, 1)
    one = Matrix.identity(B.field, 1)
    left = LeftModule(B, 1, [one, zero])
    right = RightModule(B, 1, [one, zero])
    return right, left


def test_tor_over_ground_field():
    k = make_algebra(1, ["1"], {(0, 0): [1]}, [1])
    X = RightModule(k, 2, [Matrix.identity(QQ, 2)])
    M = LeftModule(k, 3, [Matrix.identity(QQ, 3)])
    dims = tor(TorRequest(k, X, M, 4))
    assert dims == [6, 0, 0, 0]


def test_tor_dual_numbers_periodic():
    B = dual_numbers()
    right, left = trivial_modules_over(B)
    dims = tor(TorRequest(B, right, left, 6))
    assert dims == [1, 1, 1, 1, 1, 1]  # classical minimal resolution is periodic


def test_tor_semisimple_enveloping():
    # B^e of the diagonal 2x2 algebra is semisimple: Tor vanishes
    diag = make_algebra(2, ["e", "f"], {(0, 0): [1, 0], (1, 1): [0, 1]}, [1, 1])
    env = enveloping(diag)
    breg = regular_bimodule(diag)
    right = bimodule_as_right_module(breg, env)
    left = bimodule_as_left_module(breg, env)
    dims = tor(TorRequest(env, right, left, 4))
    assert dims[0] > 0
    assert dims[1:] == [0, 0, 0]


def test_tor_degree_zero_is_coinvariants():
    from jzseq.tensorb import coinvariants
    A = from_quiver(2, [("a", 0, 1)])
    emb = make_subalgebra(A, Matrix.from_dense(QQ, [[1, 0], [0, 1], [0, 0]]))
    env = enveloping(emb.algebra)
    XB = restrict_bimodule(regular_bimodule(A), emb)
    S = transported_S(emb).bimodule
    dims = tor(TorRequest(env, bimodule_as_right_module(XB, env),
                          bimodule_as_left_module(S, env), 2))
    cv = coinvariants(XB, power_over_B(emb, 1))
    assert dims[0] == cv.dim


def test_check_hypothesis_ground_field():
    A = dual_numbers()
    emb = make_subalgebra(A, Matrix.from_dense(QQ, [[1], [0]]))
    assert check_hypothesis(emb, 4, 4).ok


def test_check_hypothesis_separable_base():
    A = from_quiver(2, [("a", 0, 1)])
    emb = make_subalgebra(A, Matrix.from_dense(QQ, [[1, 0], [0, 1], [0, 0]]))
    assert check_hypothesis(emb, 4, 4).ok


def test_check_hypothesis_square_zero_witness():
    sq = make_algebra(3, ["1", "x", "w"],
                      {(0, 0): [1, 0, 0], (0, 1): [0, 1, 0], (0, 2): [0, 0, 1],
                       (1, 0): [0, 1, 0], (2, 0): [0, 0, 1]},
                      [1, 0, 0])
    emb = make_subalgebra(sq, Matrix.from_dense(QQ, [[1, 0], [0, 1], [0, 0]]))
    rep = check_hypothesis(emb, 4, 4)
    assert not rep.ok
    assert rep.witness == (1, 1)
    assert "bounded" in rep.note


def test_nilpotency_whole_algebra():
    A = dual_numbers()
    emb = whole_algebra_embedding(A)
    rep = nilpotency_index(emb, 4)
    assert rep.index == 1


def test_nilpotency_upper_triangular():
    A = from_quiver(2, [("a", 0, 1)])
    emb = make_subalgebra(A, Matrix.from_dense(QQ, [[1, 0], [0, 1], [0, 0]]))
    rep = nilpotency_index(emb, 4)
    assert rep.index == 2
    assert rep.dims == [1, 0, 0, 0]


def test_nilpotency_exceeds_cap_over_k():
    A = dual_numbers()
    emb = make_subalgebra(A, Matrix.from_dense(QQ, [[1], [0]]))
    rep = nilpotency_index(emb, 5)
    assert rep.index is None
    assert rep.exceeds_cap


def test_radical_of_dual_numbers():
    B = dual_numbers()
    rad = radical_basis(B)
    assert rad.rows == 1
    assert radical_is_ideal(B, rad)
    top, q, _ = semisimple_quotient(B)
    assert top.dim == 1


def test_radical_semisimple_is_zero():
    diag = make_algebra(2, ["e", "f"], {(0, 0): [1, 0], (1, 1): [0, 1]}, [1, 1])
    assert radical_basis(diag).rows == 0


def test_pd_semisimple_module():
    diag = make_algebra(2, ["e", "f"], {(0, 0): [1, 0], (1, 1): [0, 1]}, [1, 1])
    M = LeftModule(diag, 1, [Matrix.identity(QQ, 1), Matrix.zero(QQ, 1, 1)])
    assert pd_upper(diag, M, 6) == 0


def test_pd_dual_numbers_trivial_module_exceeds_cap():
    B = dual_numbers()
    _right, left = trivial_modules_over(B)
    assert pd_upper(B, left, 6) is None


def test_pd_over_semisimple_enveloping():
    diag = make_algebra(2, ["e", "f"], {(0, 0): [1, 0], (1, 1): [0, 1]}, [1, 1])
    A = from_quiver(2, [("a", 0, 1)])
    emb = make_subalgebra(A, Matrix.from_dense(QQ, [[1, 0], [0, 1], [0, 0]]))
    env = enveloping(emb.algebra)
    S = transported_S(emb).bimodule
    assert pd_upper(env, bimodule_as_left_module(S, env), 6) == 0


def test_pd_hereditary_simple_modules():
    # over the path algebra of 0 -> 1 one simple is projective, the other has pd 1
    A = from_quiver(2, [("a", 0, 1)])
    s0 = LeftModule(A, 1, [Matrix.identity(QQ, 1), Matrix.zero(QQ, 1, 1),
                           Matrix.zero(QQ, 1, 1)])
    s1 = LeftModule(A, 1, [Matrix.zero(QQ, 1, 1), Matrix.identity(QQ, 1),
                           Matrix.zero(QQ, 1, 1)])
    assert pd_upper(A, s0, 6) == 0
    assert pd_upper(A, s1, 6) == 1


def test_pd_zero_module_convention():
    B = dual_numbers()
    M = LeftModule(B, 0, [Matrix.zero(QQ, 0, 0)] * 2)
    assert pd_upper(B, M, 4) == 0


def test_pd_unsupported_in_positive_characteristic():
    F5 = GF(5)
    B = dual_numbers(field=F5)
    M = LeftModule(B, 1, [Matrix.identity(F5, 1), Matrix.zero(F5, 1, 1)])
    with pytest.raises(UnsupportedField):
        pd_upper(B, M, 4)


def test_tor_matches_relative_homology_over_enveloping():
    # sanity: Tor_0 over B^e of (X, B) is X_B, the relative degree-0 space
    A = from_quiver(2, [("a", 0, 1)])
    emb = make_subalgebra(A, Matrix.from_dense(QQ, [[1, 0], [0, 1], [0, 0]]))
    env = enveloping(emb.algebra)
    XB = restrict_bimodule(regular_bimodule(A), emb)
    breg = regular_bimodule(emb.algebra)
    dims = tor(TorRequest(env, bimodule_as_right_module(XB, env),
                          bimodule_as_left_module(breg, env), 2))
    assert dims[0] == 2
