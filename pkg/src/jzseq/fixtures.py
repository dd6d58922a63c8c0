"""The shipped fixture corpus and a generator of random small extensions.

The corpus covers the regimes the theorems distinguish: a ground-field
base, a separable base, a product of fields, a non-flat square-zero
extension, a bound quiver algebra over its vertex span, and the
degenerate B = A.  Random extensions draw a validated algebra of
dimension <= 4 from known associative families, optionally conjugate it
by a random basis change, and search for a dimension <= 2 subalgebra.
"""

from __future__ import annotations

import json
from importlib import resources

from .exactlin import Matrix, QQ
from .algebra import (make_algebra, from_quiver, make_subalgebra,
                      regular_bimodule, whole_algebra_embedding,
                      NotClosed, UnitNotContained)
from .cli import parse_input_document


def corpus_documents():
    docs = []
    root = resources.files("jzseq") / "corpus"
    for entry in sorted(root.iterdir(), key=lambda e: e.name):
        if entry.name.endswith(".json"):
            docs.append(json.loads(entry.read_text()))
    return docs


def load_corpus():
    """The six corpus fixtures as ResolvedInput objects, in shipped order."""
    return [parse_input_document(doc) for doc in corpus_documents()]


def corpus_fixture(name):
    for resolved in load_corpus():
        if resolved.name == name:
            return resolved
    raise KeyError(name)


def trivial_subalgebra(A):
    """The copy of the ground field spanned by the unit of A."""
    return make_subalgebra(A, Matrix.from_cols(A.field, [dict(A.unit)], A.dim))


# -- random extensions -------------------------------------------------------


def _dual_numbers():
    return make_algebra(2, ["1", "x"],
                        {(0, 0): [1, 0], (0, 1): [0, 1], (1, 0): [0, 1]},
                        [1, 0])


def _product_kk():
    return make_algebra(2, ["u", "v"], {(0, 0): [1, 0], (1, 1): [0, 1]}, [1, 1])


def _truncated_poly(k):
    # k[x]/(x^k), dimension k
    mult = {}
    for i in range(k):
        for j in range(k):
            if i + j < k:
                mult[(i, j)] = {i + j: QQ.one}
    return make_algebra(k, ["x%d" % i for i in range(k)], mult, [1] + [0] * (k - 1))


def _square_zero_dim3():
    return make_algebra(3, ["1", "x", "w"],
                        {(0, 0): [1, 0, 0], (0, 1): [0, 1, 0], (0, 2): [0, 0, 1],
                         (1, 0): [0, 1, 0], (2, 0): [0, 0, 1]},
                        [1, 0, 0])


def _two_variable_nilpotent():
    # k[x,y]/(x,y)^2 + one extra socle element xy = yx
    labels = ["1", "x", "y", "xy"]
    mult = {(0, 0): [1, 0, 0, 0], (0, 1): [0, 1, 0, 0], (0, 2): [0, 0, 1, 0],
            (0, 3): [0, 0, 0, 1], (1, 0): [0, 1, 0, 0], (2, 0): [0, 0, 1, 0],
            (3, 0): [0, 0, 0, 1], (1, 2): [0, 0, 0, 1], (2, 1): [0, 0, 0, 1]}
    return make_algebra(4, labels, mult, [1, 0, 0, 0])


def _matrix_algebra_2x2():
    # full 2x2 matrices, basis e11, e12, e21, e22
    def unit_at(k):
        return {k: QQ.one}
    mult = {(0, 0): unit_at(0), (0, 1): unit_at(1),
            (1, 2): unit_at(0), (1, 3): unit_at(1),
            (2, 0): unit_at(2), (2, 1): unit_at(3),
            (3, 2): unit_at(2), (3, 3): unit_at(3)}
    return make_algebra(4, ["e11", "e12", "e21", "e22"], mult, [1, 0, 0, 1])


_FAMILIES = [
    _dual_numbers,
    _product_kk,
    lambda: _truncated_poly(3),
    lambda: from_quiver(2, [("a", 0, 1)]),
    _square_zero_dim3,
    lambda: from_quiver(2, [("a", 0, 1), ("b", 0, 1)]),  # Kronecker, dim 4
    _two_variable_nilpotent,
    _matrix_algebra_2x2,
    lambda: from_quiver(3, [("a", 0, 1)]),  # UT2 x k, dim 4
]


def _random_basis_change(rng, A):
    """Conjugate the structure constants by a random unimodular matrix."""
    dim = A.dim
    P = [[QQ.one if i == j else QQ.zero for j in range(dim)] for i in range(dim)]
    for _ in range(rng.randrange(1, 2 * dim)):
        i = rng.randrange(dim)
        j = rng.randrange(dim)
        if i == j:
            continue
        c = QQ.from_int(rng.choice([-2, -1, 1, 2]))
        for k in range(dim):
            P[k][j] = P[k][j] + c * P[k][i]
    Pm = Matrix.from_dense(QQ, P)
    from .algebra import invert
    Pinv = invert(Pm)
    mult = {}
    for i in range(dim):
        for j in range(dim):
            vec = Pinv.apply(A.mult_vec(Pm.col(i), Pm.col(j)))
            if vec:
                mult[(i, j)] = vec
    return make_algebra(dim, ["c%d" % i for i in range(dim)], mult,
                        Pinv.apply(A.unit))


def _random_subalgebra(rng, A):
    """B = span{1, v} for a random v when closed, else the ground field."""
    unit_col = dict(A.unit)
    for _ in range(30):
        v = {i: QQ.from_int(rng.randrange(-2, 3)) for i in range(A.dim)}
        v = {i: c for i, c in v.items() if c}
        if not v:
            continue
        cols = Matrix.from_cols(A.field, [unit_col, v], A.dim)
        try:
            return make_subalgebra(A, cols)
        except (NotClosed, UnitNotContained, ValueError):
            continue
    return make_subalgebra(A, Matrix.from_cols(A.field, [unit_col], A.dim))


def random_extension(rng):
    """A validated random extension with dim A <= 4 and dim B <= 2."""
    A = rng.choice(_FAMILIES)()
    if rng.random() < 0.5:
        A = _random_basis_change(rng, A)
    emb = _random_subalgebra(rng, A)
    return emb, regular_bimodule(A)


def random_extensions(seed, count):
    import random
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        out.append(random_extension(rng))
    return out
