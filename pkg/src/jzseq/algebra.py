"""Finite-dimensional associative algebras, subalgebra extensions, bimodules.

An algebra is its multiplication tensor on a fixed ordered basis; every
axiom (associativity, unit, module laws) is verified exhaustively on basis
tuples at construction time, never deferred.
"""

from __future__ import annotations

from .exactlin import Matrix, QQ, SpanSolver, make_quotient


class NotAssociative(Exception):
    def __init__(self, triple):
        self.triple = triple
        super().__init__("associativity fails on basis triple %r" % (triple,))


class NotUnital(Exception):
    def __init__(self, index, side):
        self.index = index
        self.side = side
        super().__init__("declared unit fails on basis element %d (%s side)" % (index, side))


class NotClosed(Exception):
    def __init__(self, pair):
        self.pair = pair
        super().__init__("subspace not closed under multiplication at column pair %r" % (pair,))


class UnitNotContained(Exception):
    def __init__(self):
        super().__init__("the ambient unit does not lie in the subspace")


class InfiniteDimensional(Exception):
    def __init__(self, cap):
        self.cap = cap
        super().__init__("admissible path of length %d exists; algebra may be infinite dimensional" % cap)


class FiniteDimAlgebra:
    """Structure constants on an ordered basis, with a two-sided unit.

    ``mult[i][j]`` is the sparse vector of e_i * e_j, ``unit`` the sparse
    vector of 1.  Basis order is part of the data: all deterministic
    choices downstream (pivots, complements) derive from it.
    """

    __slots__ = ("field", "dim", "basis_labels", "mult", "unit",
                 "_left_mats", "_right_mats")

    def __init__(self, field, dim, basis_labels, mult, unit):
        self.field = field
        self.dim = dim
        self.basis_labels = list(basis_labels)
        self.mult = mult
        self.unit = unit
        self._left_mats = None
        self._right_mats = None

    def mult_vec(self, x, y):
        """Product of two sparse coefficient vectors."""
        acc = {}
        mult = self.mult
        for i, a in x.items():
            row = mult[i]
            for j, b in y.items():
                ab = a * b
                for k, c in row[j].items():
                    w = acc.get(k)
                    w = ab * c if w is None else w + ab * c
                    if w:
                        acc[k] = w
                    elif k in acc:
                        del acc[k]
        return acc

    def left_mult_matrix(self, i):
        """Matrix of x -> e_i * x."""
        if self._left_mats is None:
            self._left_mats = [
                Matrix.from_cols(self.field, [dict(self.mult[i][j]) for j in range(self.dim)], self.dim)
                for i in range(self.dim)]
        return self._left_mats[i]

    def right_mult_matrix(self, i):
        """Matrix of x -> x * e_i."""
        if self._right_mats is None:
            self._right_mats = [
                Matrix.from_cols(self.field, [dict(self.mult[j][i]) for j in range(self.dim)], self.dim)
                for i in range(self.dim)]
        return self._right_mats[i]

    def left_mult_by(self, vec):
        """Matrix of x -> a*x for a given coefficient vector a."""
        out = Matrix.zero(self.field, self.dim, self.dim)
        for i, c in vec.items():
            out = out + self.left_mult_matrix(i).scaled(c)
        return out

    def right_mult_by(self, vec):
        out = Matrix.zero(self.field, self.dim, self.dim)
        for i, c in vec.items():
            out = out + self.right_mult_matrix(i).scaled(c)
        return out

    def unit_matrix_check(self):
        for j in range(self.dim):
            ej = {j: self.field.one}
            if self.mult_vec(self.unit, ej) != ej:
                raise NotUnital(j, "left")
            if self.mult_vec(ej, self.unit) != ej:
                raise NotUnital(j, "right")

    def associativity_check(self):
        dim = self.dim
        mult = self.mult
        one = self.field.one
        for i in range(dim):
            for j in range(dim):
                ij = mult[i][j]
                for k in range(dim):
                    lhs = self.mult_vec(ij, {k: one})
                    rhs = self.mult_vec({i: one}, mult[j][k])
                    if lhs != rhs:
                        raise NotAssociative((i, j, k))

    def verify(self):
        self.associativity_check()
        self.unit_matrix_check()

    def __repr__(self):
        return "FiniteDimAlgebra(dim=%d, basis=%r)" % (self.dim, self.basis_labels)


def _normalise_vector(field, vec, dim, what):
    if isinstance(vec, dict):
        out = {}
        for k, v in vec.items():
            if not 0 <= k < dim:
                raise ValueError("%s: index %r out of range" % (what, k))
            if isinstance(v, int):
                v = field.from_int(v)
            if v:
                out[k] = v
        return out
    if len(vec) != dim:
        raise ValueError("%s: expected length %d, got %d" % (what, dim, len(vec)))
    out = {}
    for k, v in enumerate(vec):
        if isinstance(v, int):
            v = field.from_int(v)
        if v:
            out[k] = v
    return out


def make_algebra(dim, basis_labels, mult, unit, field=QQ):
    """Validated algebra from structure constants.

    ``mult`` maps (i, j) to the coefficient vector of e_i * e_j (dense list
    or sparse dict); missing pairs multiply to zero.  Raises NotAssociative
    or NotUnital with a witness.
    """
    if len(basis_labels) != dim:
        raise ValueError("expected %d basis labels, got %d" % (dim, len(basis_labels)))
    table = [[{} for _ in range(dim)] for _ in range(dim)]
    for (i, j), vec in mult.items():
        if not (0 <= i < dim and 0 <= j < dim):
            raise ValueError("mult key (%r, %r) out of range" % (i, j))
        table[i][j] = _normalise_vector(field, vec, dim, "mult[%d,%d]" % (i, j))
    unit_vec = _normalise_vector(field, unit, dim, "unit")
    alg = FiniteDimAlgebra(field, dim, basis_labels, table, unit_vec)
    alg.verify()
    return alg


# -- quiver ingestion ------------------------------------------------------


def from_quiver(vertices, arrows, forbidden_paths=(), path_cap=12, field=QQ):
    """Path algebra of a quiver modulo monomial relations, truncated check.

    vertices: a count or list of names; arrows: (name, source, target)
    triples; forbidden_paths: sequences of arrow names of length >= 2
    (a path is dropped when it contains a forbidden one as a contiguous
    subpath).  Products compose diagrammatically: p * q is "p then q".
    Raises InfiniteDimensional if an admissible path of length path_cap
    exists.
    """
    if isinstance(vertices, int):
        vnames = ["v%d" % i for i in range(vertices)]
    else:
        vnames = list(vertices)
    vindex = {name: i for i, name in enumerate(vnames)}
    if len(vindex) != len(vnames):
        raise ValueError("duplicate vertex names")

    arrow_list = []
    for name, src, tgt in arrows:
        if isinstance(src, str):
            src = vindex[src]
        if isinstance(tgt, str):
            tgt = vindex[tgt]
        if not (0 <= src < len(vnames) and 0 <= tgt < len(vnames)):
            raise ValueError("arrow %r endpoints out of range" % name)
        arrow_list.append((name, src, tgt))
    anames = {name for name, _, _ in arrow_list}
    if len(anames) != len(arrow_list):
        raise ValueError("duplicate arrow names")

    forbidden = []
    for rel in forbidden_paths:
        rel = tuple(rel)
        if len(rel) < 2:
            raise ValueError("relations must be paths of length >= 2: %r" % (rel,))
        for a in rel:
            if a not in anames:
                raise ValueError("relation uses unknown arrow %r" % a)
        forbidden.append(rel)

    by_source = {}
    for name, src, tgt in arrow_list:
        by_source.setdefault(src, []).append((name, tgt))

    def admissible(path_arrows):
        for rel in forbidden:
            k = len(rel)
            if k > len(path_arrows):
                continue
            for off in range(len(path_arrows) - k + 1):
                if tuple(path_arrows[off:off + k]) == rel:
                    return False
        return True

    # paths as (source_vertex, arrow-name tuple); enumerate by length
    paths = [(v, ()) for v in range(len(vnames))]
    ends = {(v, ()): v for v in range(len(vnames))}
    frontier = list(paths)
    length = 0
    while frontier:
        length += 1
        if length > path_cap:
            break
        new = []
        for p in frontier:
            v_end = ends[p]
            for name, tgt in by_source.get(v_end, ()):
                cand = (p[0], p[1] + (name,))
                if admissible(cand[1]):
                    if length >= path_cap:
                        raise InfiniteDimensional(path_cap)
                    new.append(cand)
                    ends[cand] = tgt
        paths.extend(new)
        frontier = new

    index = {p: i for i, p in enumerate(paths)}
    labels = []
    for v, arrs in paths:
        labels.append("e_%s" % vnames[v] if not arrs else "*".join(arrs))

    one = field.one
    mult = {}
    for p in paths:
        for q in paths:
            if ends[p] != q[0]:
                continue
            concat = (p[0], p[1] + q[1])
            if concat in index:
                mult[(index[p], index[q])] = {index[concat]: one}
            # inadmissible concatenation is zero
    unit = {index[(v, ())]: one for v in range(len(vnames))}
    return make_algebra(len(paths), labels, mult, unit, field=field)


# -- subalgebra extensions -------------------------------------------------


class SubalgebraEmbedding:
    """A validated inclusion B in A with a chosen complement.

    The complement columns complete the inclusion to a basis of A by pivot
    completion; the quotient A/B carries pi (projection) and sigma
    (section), with sigma's image spanned by the complement.
    """

    __slots__ = ("ambient", "algebra", "inclusion", "complement", "quotient",
                 "_cache")

    def __init__(self, ambient, algebra, inclusion, complement, quotient):
        self.ambient = ambient
        self.algebra = algebra
        self.inclusion = inclusion
        self.complement = complement
        self.quotient = quotient
        self._cache = {}

    @property
    def dim_b(self):
        return self.algebra.dim

    @property
    def dim_s(self):
        return self.quotient.quotient_dim

    @property
    def pi(self):
        return self.quotient.projection

    @property
    def sigma(self):
        return self.quotient.section

    def include(self, vec):
        """Coefficient vector over B-basis -> ambient coefficient vector."""
        return self.inclusion.apply(vec)

    def quotient_bimodule(self):
        """A/B as a B-bimodule (actions descend since B*B stays in B)."""
        if "aob" in self._cache:
            return self._cache["aob"]
        A, B = self.ambient, self.algebra
        left = []
        right = []
        for i in range(B.dim):
            vec = self.inclusion.col(i)
            left.append(self.pi @ A.left_mult_by(vec) @ self.sigma)
            right.append(self.pi @ A.right_mult_by(vec) @ self.sigma)
        bim = Bimodule(B, self.dim_s, left, right)
        self._cache["aob"] = bim
        return bim

    def is_adapted(self):
        """True when the inclusion and complement columns are the unit basis in order."""
        one = self.ambient.field.one
        for j in range(self.dim_b):
            if self.inclusion.col(j) != {j: one}:
                return False
        for j in range(self.dim_s):
            if self.complement.col(j) != {self.dim_b + j: one}:
                return False
        return True

    def __repr__(self):
        return "SubalgebraEmbedding(dim B=%d, dim A=%d)" % (self.dim_b, self.ambient.dim)


def make_subalgebra(A, columns):
    """Validated subalgebra embedding from independent spanning columns.

    Checks closure under multiplication (NotClosed with a witness pair)
    and that the ambient unit lies in the span (UnitNotContained).  The
    complement comes from pivot completion of the column span, so sigma is
    the complement-coordinate section.
    """
    if columns.rows != A.dim:
        raise ValueError("columns live in dimension %d, ambient is %d" % (columns.rows, A.dim))
    nb = columns.cols
    solver = SpanSolver(A.field, columns.cols_data)
    if len(solver.rows) != nb:
        raise ValueError("subalgebra columns are linearly dependent")

    products = {}
    for i in range(nb):
        for j in range(nb):
            prod = A.mult_vec(columns.col(i), columns.col(j))
            coeffs = solver.express(prod)
            if coeffs is None:
                raise NotClosed((i, j))
            products[(i, j)] = coeffs
    unit_coeffs = solver.express(A.unit)
    if unit_coeffs is None:
        raise UnitNotContained()

    B = make_algebra(nb, ["b%d" % i for i in range(nb)], products, unit_coeffs,
                     field=A.field)
    quotient = make_quotient(A.dim, columns.transpose())
    complement = Matrix(A.field, A.dim, quotient.quotient_dim,
                        [dict(c) for c in quotient.section.cols_data])
    return SubalgebraEmbedding(A, B, columns, complement, quotient)


def whole_algebra_embedding(A):
    """The degenerate extension B = A."""
    return make_subalgebra(A, Matrix.identity(A.field, A.dim))


def enveloping(A):
    """A tensor A^op, basis pairs (i, j) at index i*dim + j.

    (a x a')(c x c') = ac x c'a'.
    """
    dim = A.dim
    field = A.field
    labels = ["%s|%s" % (li, lj) for li in A.basis_labels for lj in A.basis_labels]
    mult = {}
    for i in range(dim):
        for j in range(dim):
            for k in range(dim):
                ik = A.mult[i][k]
                for l in range(dim):
                    lj = A.mult[l][j]
                    vec = {}
                    for p, a in ik.items():
                        for q, b in lj.items():
                            v = a * b
                            if v:
                                vec[p * dim + q] = v
                    if vec:
                        mult[(i * dim + j, k * dim + l)] = vec
    unit = {}
    for p, a in A.unit.items():
        for q, b in A.unit.items():
            unit[p * dim + q] = a * b
    return make_algebra(dim * dim, labels, mult, unit, field=field)


# -- bimodules -------------------------------------------------------------


class Bimodule:
    """A space with commuting validated left/right actions of an algebra."""

    __slots__ = ("algebra", "dim", "left", "right")

    def __init__(self, algebra, dim, left, right, check=True):
        self.algebra = algebra
        self.dim = dim
        self.left = list(left)
        self.right = list(right)
        if check:
            self.verify()

    def verify(self):
        alg = self.algebra
        field = alg.field
        ident = Matrix.identity(field, self.dim)
        lu = Matrix.zero(field, self.dim, self.dim)
        ru = Matrix.zero(field, self.dim, self.dim)
        for i, c in alg.unit.items():
            lu = lu + self.left[i].scaled(c)
            ru = ru + self.right[i].scaled(c)
        assert lu == ident, "left action is not unital"
        assert ru == ident, "right action is not unital"
        for i in range(alg.dim):
            li = self.left[i]
            ri = self.right[i]
            for j in range(alg.dim):
                prod_vec = alg.mult[i][j]
                lsum = Matrix.zero(field, self.dim, self.dim)
                rsum = Matrix.zero(field, self.dim, self.dim)
                for k, c in prod_vec.items():
                    lsum = lsum + self.left[k].scaled(c)
                    rsum = rsum + self.right[k].scaled(c)
                assert lsum == li @ self.left[j], \
                    "left action not a representation at (%d, %d)" % (i, j)
                assert rsum == self.right[j] @ ri, \
                    "right action not an anti-representation at (%d, %d)" % (i, j)
                assert li @ self.right[j] == self.right[j] @ li, \
                    "left and right actions do not commute at (%d, %d)" % (i, j)

    def left_by(self, vec):
        out = Matrix.zero(self.algebra.field, self.dim, self.dim)
        for i, c in vec.items():
            out = out + self.left[i].scaled(c)
        return out

    def right_by(self, vec):
        out = Matrix.zero(self.algebra.field, self.dim, self.dim)
        for i, c in vec.items():
            out = out + self.right[i].scaled(c)
        return out

    def __repr__(self):
        return "Bimodule(dim=%d over %r)" % (self.dim, self.algebra.basis_labels)


def regular_bimodule(A):
    """A acting on itself by multiplication."""
    left = [A.left_mult_matrix(i) for i in range(A.dim)]
    right = [A.right_mult_matrix(i) for i in range(A.dim)]
    return Bimodule(A, A.dim, left, right)


def restrict_bimodule(X, emb):
    """An A-bimodule as a B-bimodule along the inclusion."""
    if X.algebra is not emb.ambient:
        raise ValueError("bimodule is not over the ambient algebra")
    left = [X.left_by(emb.inclusion.col(i)) for i in range(emb.dim_b)]
    right = [X.right_by(emb.inclusion.col(i)) for i in range(emb.dim_b)]
    return Bimodule(emb.algebra, X.dim, left, right)


class TransportedBimodule:
    """The complement S made into a B-bimodule through A/B.

    b.s = sigma(b pi(s)) and s.b = sigma(pi(s) b); pi restricted to S is
    then a B-bimodule isomorphism onto A/B.
    """

    __slots__ = ("base", "bimodule")

    def __init__(self, base, bimodule):
        self.base = base
        self.bimodule = bimodule

    @property
    def dim(self):
        return self.bimodule.dim


def transported_S(emb):
    A = emb.ambient
    B = emb.algebra
    pi, sigma = emb.pi, emb.sigma
    left = []
    right = []
    for i in range(B.dim):
        vec = emb.inclusion.col(i)
        # in complement coordinates: s_k = sigma(unit_k), so the matrices
        # are pi . (mult by inc(b)) . sigma, same shape as on A/B
        left.append(pi @ A.left_mult_by(vec) @ sigma)
        right.append(pi @ A.right_mult_by(vec) @ sigma)
    bim = Bimodule(B, emb.dim_s, left, right)
    tb = TransportedBimodule(emb, bim)
    # pi restricted to S must match the A/B actions through the identification
    aob = emb.quotient_bimodule()
    for i in range(B.dim):
        assert bim.left[i] == aob.left[i] and bim.right[i] == aob.right[i], \
            "transport does not match the A/B bimodule structure"
    return tb


# -- adapted bases ---------------------------------------------------------


def invert(m):
    """Inverse of a square matrix (raises if singular)."""
    if m.rows != m.cols:
        raise ValueError("only square matrices invert")
    solver = SpanSolver(m.field, m.cols_data)
    one = m.field.one
    cols = []
    for i in range(m.rows):
        coeffs = solver.express({i: one})
        if coeffs is None:
            raise ValueError("matrix is singular")
        cols.append(coeffs)
    return Matrix.from_cols(m.field, cols, m.rows)


def adapted(emb, X):
    """Rewrite the extension in a basis of A listing B's basis then S's.

    Returns (emb', X') over a conjugated copy of A in which the inclusion
    and complement are unit columns, so that tensor coordinates split
    along A = B (+) S.  A no-op when the embedding is already adapted.
    """
    if emb.is_adapted():
        return emb, X
    A = emb.ambient
    field = A.field
    cols = [dict(c) for c in emb.inclusion.cols_data]
    cols += [dict(c) for c in emb.complement.cols_data]
    P = Matrix.from_cols(field, cols, A.dim)
    Pinv = invert(P)
    dim = A.dim
    mult = {}
    for i in range(dim):
        for j in range(dim):
            prod = A.mult_vec(P.col(i), P.col(j))
            vec = Pinv.apply(prod)
            if vec:
                mult[(i, j)] = vec
    labels = ["b%d" % i for i in range(emb.dim_b)] + ["s%d" % i for i in range(emb.dim_s)]
    A2 = make_algebra(dim, labels, mult, Pinv.apply(A.unit), field=field)
    left = [X.left_by(P.col(i)) for i in range(dim)]
    right = [X.right_by(P.col(i)) for i in range(dim)]
    X2 = Bimodule(A2, X.dim, left, right)
    inc_cols = [{i: field.one} for i in range(emb.dim_b)]
    emb2 = make_subalgebra(A2, Matrix.from_cols(field, inc_cols, dim))
    return emb2, X2
