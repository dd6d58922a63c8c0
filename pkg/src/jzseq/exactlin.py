"""Exact sparse linear algebra over Q and prime fields.

Everything downstream (bar differentials, tensor-product quotients,
homology) reduces to rank / kernel / quotient computations done here.
Arithmetic is exact: Q is gmpy2.mpq (unbounded), F_p is a thin wrapper
around ints mod p.  There is no floating point anywhere.
"""

from __future__ import annotations

from functools import lru_cache

from gmpy2 import mpq


class WellDefinednessViolation(Exception):
    """A map failed to preserve relation subspaces when descending to a quotient."""


class RationalField:
    """The field Q, with gmpy2.mpq elements."""

    characteristic = 0
    name = "Q"

    zero = mpq(0)
    one = mpq(1)

    def from_int(self, n):
        return mpq(n)

    def from_str(self, s):
        return mpq(s)

    def to_str(self, x):
        return str(x)

    def __repr__(self):
        return "QQ"


QQ = RationalField()


def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class FpElement:
    __slots__ = ("val",)
    p = None  # set on the subclass

    def __init__(self, val):
        self.val = val % self.p

    def __add__(self, other):
        return type(self)(self.val + other.val)

    def __sub__(self, other):
        return type(self)(self.val - other.val)

    def __mul__(self, other):
        return type(self)(self.val * other.val)

    def __truediv__(self, other):
        return type(self)(self.val * pow(other.val, -1, self.p))

    def __neg__(self):
        return type(self)(-self.val)

    def __eq__(self, other):
        return isinstance(other, FpElement) and self.p == other.p and self.val == other.val

    def __hash__(self):
        return hash((self.p, self.val))

    def __bool__(self):
        return self.val != 0

    def __repr__(self):
        return "%d (mod %d)" % (self.val, self.p)


class PrimeField:
    characteristic = None

    def __init__(self, p):
        if not _is_prime(p):
            raise ValueError("modulus %r is not prime" % (p,))
        self.characteristic = p
        self.name = "F%d" % p
        self.element_class = type("F%dElement" % p, (FpElement,), {"p": p})
        self.zero = self.element_class(0)
        self.one = self.element_class(1)

    def from_int(self, n):
        return self.element_class(n)

    def from_str(self, s):
        if "/" in s:
            num, den = s.split("/")
            return self.from_int(int(num)) / self.from_int(int(den))
        return self.from_int(int(s))

    def to_str(self, x):
        return str(x.val)

    def __repr__(self):
        return "GF(%d)" % self.characteristic


@lru_cache(maxsize=None)
def GF(p):
    return PrimeField(p)


class Matrix:
    """Sparse matrix over a field, stored column-major.

    ``cols_data[j]`` maps row index -> nonzero scalar.  A matrix is a
    linear map k^cols -> k^rows acting on column vectors (sparse dicts).
    Treat instances as immutable once built.
    """

    __slots__ = ("field", "rows", "cols", "cols_data")

    def __init__(self, field, rows, cols, cols_data):
        self.field = field
        self.rows = rows
        self.cols = cols
        self.cols_data = cols_data

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, field, rows, cols):
        return cls(field, rows, cols, [{} for _ in range(cols)])

    @classmethod
    def identity(cls, field, n):
        one = field.one
        return cls(field, n, n, [{i: one} for i in range(n)])

    @classmethod
    def from_entries(cls, field, rows, cols, entries):
        """entries: mapping (row, col) -> scalar (zeros allowed, dropped)."""
        data = [{} for _ in range(cols)]
        for (r, c), v in entries.items():
            if not (0 <= r < rows and 0 <= c < cols):
                raise ValueError("entry (%d, %d) out of range" % (r, c))
            if v:
                data[c][r] = v
        return cls(field, rows, cols, data)

    @classmethod
    def from_rows(cls, field, row_dicts, cols):
        data = [{} for _ in range(cols)]
        for r, row in enumerate(row_dicts):
            for c, v in row.items():
                if v:
                    data[c][r] = v
        return cls(field, len(row_dicts), cols, data)

    @classmethod
    def from_cols(cls, field, col_dicts, rows):
        return cls(field, rows, len(col_dicts), [dict(c) for c in col_dicts])

    @classmethod
    def from_dense(cls, field, lists):
        rows = len(lists)
        cols = len(lists[0]) if rows else 0
        conv = field.from_int
        data = [{} for _ in range(cols)]
        for r, row in enumerate(lists):
            if len(row) != cols:
                raise ValueError("ragged rows")
            for c, v in enumerate(row):
                v = conv(v) if isinstance(v, int) else v
                if v:
                    data[c][r] = v
        return cls(field, rows, cols, data)

    # -- views ---------------------------------------------------------

    def col(self, j):
        return self.cols_data[j]

    def row_dicts(self):
        out = [{} for _ in range(self.rows)]
        for j, col in enumerate(self.cols_data):
            for i, v in col.items():
                out[i][j] = v
        return out

    def nnz(self):
        return sum(len(c) for c in self.cols_data)

    def entries(self):
        for j, col in enumerate(self.cols_data):
            for i, v in col.items():
                yield i, j, v

    def to_dense(self):
        out = [[self.field.zero] * self.cols for _ in range(self.rows)]
        for i, j, v in self.entries():
            out[i][j] = v
        return out

    # -- algebra -------------------------------------------------------

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError("shape mismatch %dx%d @ %dx%d"
                             % (self.rows, self.cols, other.rows, other.cols))
        mycols = self.cols_data
        data = []
        for bc in other.cols_data:
            acc = {}
            for k, b in bc.items():
                for i, a in mycols[k].items():
                    w = acc.get(i)
                    w = a * b if w is None else w + a * b
                    if w:
                        acc[i] = w
                    elif i in acc:
                        del acc[i]
            data.append(acc)
        return Matrix(self.field, self.rows, other.cols, data)

    def apply(self, vec):
        """Matrix-vector product; vec is a sparse dict col -> scalar."""
        acc = {}
        cols = self.cols_data
        for k, b in vec.items():
            for i, a in cols[k].items():
                w = acc.get(i)
                w = a * b if w is None else w + a * b
                if w:
                    acc[i] = w
                elif i in acc:
                    del acc[i]
        return acc

    def __add__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in +")
        data = []
        for c1, c2 in zip(self.cols_data, other.cols_data):
            acc = dict(c1)
            for i, v in c2.items():
                w = acc.get(i)
                w = v if w is None else w + v
                if w:
                    acc[i] = w
                elif i in acc:
                    del acc[i]
            data.append(acc)
        return Matrix(self.field, self.rows, self.cols, data)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Matrix(self.field, self.rows, self.cols,
                      [{i: -v for i, v in c.items()} for c in self.cols_data])

    def scaled(self, a):
        if not a:
            return Matrix.zero(self.field, self.rows, self.cols)
        return Matrix(self.field, self.rows, self.cols,
                      [{i: a * v for i, v in c.items()} for c in self.cols_data])

    def transpose(self):
        data = [{} for _ in range(self.rows)]
        for j, col in enumerate(self.cols_data):
            for i, v in col.items():
                data[i][j] = v
        return Matrix(self.field, self.cols, self.rows, data)

    def is_zero(self):
        return all(not c for c in self.cols_data)

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.rows == other.rows
                and self.cols == other.cols and self.cols_data == other.cols_data)

    def __repr__(self):
        return "Matrix(%s, %dx%d, nnz=%d)" % (self.field.name, self.rows, self.cols, self.nnz())


# -- elimination cores ----------------------------------------------------


class Echelon:
    """Incremental row echelon over a field.

    Rows are sparse dicts with unit leading coefficient, keyed by their
    pivot (= smallest) column.  Insertion order is the only source of
    choice, so results are deterministic for a fixed input order.
    """

    __slots__ = ("field", "rows")

    def __init__(self, field):
        self.field = field
        self.rows = {}

    def __len__(self):
        return len(self.rows)

    def insert(self, vec):
        """Reduce vec (a dict, consumed) and add it; returns pivot or None."""
        rows = self.rows
        while vec:
            p = min(vec)
            row = rows.get(p)
            if row is None:
                lead = vec[p]
                if lead != self.field.one:
                    inv = self.field.one / lead
                    vec = {c: v * inv for c, v in vec.items()}
                rows[p] = vec
                return p
            coeff = vec.pop(p)
            for c, v in row.items():
                if c == p:
                    continue
                w = vec.get(c)
                w = -coeff * v if w is None else w - coeff * v
                if w:
                    vec[c] = w
                elif c in vec:
                    del vec[c]
        return None

    def reduce(self, vec):
        """Residual of vec modulo the current row span (vec not consumed)."""
        vec = dict(vec)
        rows = self.rows
        while vec:
            hits = [c for c in vec if c in rows]
            if not hits:
                break
            p = min(hits)
            coeff = vec.pop(p)
            for c, v in rows[p].items():
                if c == p:
                    continue
                w = vec.get(c)
                w = -coeff * v if w is None else w - coeff * v
                if w:
                    vec[c] = w
                elif c in vec:
                    del vec[c]
        return vec

    def contains(self, vec):
        return not self.reduce(vec)

    def back_reduce(self):
        """Turn the echelon into full RREF (each row zero at other pivots)."""
        rows = self.rows
        for p in sorted(rows, reverse=True):
            row = rows[p]
            while True:
                hits = [c for c in row if c != p and c in rows]
                if not hits:
                    break
                c0 = min(hits)
                coeff = row.pop(c0)
                for c, v in rows[c0].items():
                    if c == c0:
                        continue
                    w = row.get(c)
                    w = -coeff * v if w is None else w - coeff * v
                    if w:
                        row[c] = w
                    elif c in row:
                        del row[c]

    def pivots(self):
        return sorted(self.rows)


class SpanSolver:
    """Expresses vectors as combinations of a fixed list of spanning rows.

    Insertion tracks coefficients, so ``express`` recovers coordinates
    with respect to the original rows (first spanning subset wins when
    the rows are dependent).
    """

    __slots__ = ("field", "rows", "n_inserted")

    def __init__(self, field, row_dicts=()):
        self.field = field
        self.rows = {}  # pivot -> (vec, coeffs)
        self.n_inserted = 0
        for row in row_dicts:
            self.insert(row)

    def insert(self, vec):
        idx = self.n_inserted
        self.n_inserted += 1
        vec, coeffs = self._reduce(dict(vec), {idx: self.field.one})
        if not vec:
            return None
        p = min(vec)
        lead = vec[p]
        if lead != self.field.one:
            inv = self.field.one / lead
            vec = {c: v * inv for c, v in vec.items()}
            coeffs = {c: v * inv for c, v in coeffs.items()}
        self.rows[p] = (vec, coeffs)
        return p

    def _reduce(self, vec, coeffs):
        rows = self.rows
        while vec:
            p = min(vec)
            entry = rows.get(p)
            if entry is None:
                break
            row, rcoeffs = entry
            coeff = vec.pop(p)
            for c, v in row.items():
                if c == p:
                    continue
                w = vec.get(c)
                w = -coeff * v if w is None else w - coeff * v
                if w:
                    vec[c] = w
                elif c in vec:
                    del vec[c]
            for c, v in rcoeffs.items():
                w = coeffs.get(c)
                w = -coeff * v if w is None else w - coeff * v
                if w:
                    coeffs[c] = w
                elif c in coeffs:
                    del coeffs[c]
        return vec, coeffs

    def express(self, vec):
        """Coefficient dict over the inserted row indices, or None if outside."""
        residual, coeffs = self._reduce(dict(vec), {})
        if residual:
            return None
        return {c: -v for c, v in coeffs.items()}


def _int_rows_over_Q(matrix, by_columns):
    """Yield the rows (or columns) of a Q-matrix cleared to integer dicts."""
    vecs = matrix.cols_data if by_columns else matrix.row_dicts()
    for vec in vecs:
        if not vec:
            continue
        den = 1
        for v in vec.values():
            d = v.denominator
            if d != 1:
                den = den * d // _gcd(den, d)
        yield {c: int(v * den) for c, v in vec.items()}


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def rank_of_int_vectors(vecs):
    """Fraction-free rank of a stream of integer sparse vectors.

    Gaussian forward elimination with cross-multiplication only; rows are
    gcd-normalised when stored, so entries stay small and no rational
    arithmetic happens.
    """
    ech = {}
    rank = 0
    for vec in vecs:
        vec = dict(vec)
        while vec:
            p = min(vec)
            row = ech.get(p)
            if row is None:
                g = 0
                for v in vec.values():
                    g = _gcd(g, v)
                g = abs(g)
                if g > 1:
                    vec = {c: v // g for c, v in vec.items()}
                if vec[p] < 0:
                    vec = {c: -v for c, v in vec.items()}
                ech[p] = vec
                rank += 1
                break
            a = vec.pop(p)
            b = row[p]
            new = {c: v * b for c, v in vec.items()}
            for c, v in row.items():
                if c == p:
                    continue
                w = new.get(c, 0) - a * v
                if w:
                    new[c] = w
                elif c in new:
                    del new[c]
            vec = new
    return rank


def rank(m):
    """Exact rank.

    Over Q this runs fraction-free forward elimination on integer-cleared
    vectors; over F_p it uses the generic echelon.  Eliminates whichever
    of rows/columns there are fewer of.
    """
    by_columns = m.cols <= m.rows
    if m.field is QQ:
        return rank_of_int_vectors(_int_rows_over_Q(m, by_columns))
    ech = Echelon(m.field)
    vecs = m.cols_data if by_columns else m.row_dicts()
    n = 0
    for vec in vecs:
        if vec and ech.insert(dict(vec)) is not None:
            n += 1
    return n


def rref(m):
    """Reduced row echelon form of m's rows.

    Returns (pivots, rows) where pivots is the sorted pivot-column list
    and rows maps each pivot to its (unit-pivot, fully reduced) row dict.
    The output is canonical for the row space.
    """
    ech = Echelon(m.field)
    for row in m.row_dicts():
        if row:
            ech.insert(dict(row))
    ech.back_reduce()
    return ech.pivots(), ech.rows


def _column_buckets(rows):
    """column -> [(pivot, value)] over the non-pivot support of RREF rows."""
    buckets = {}
    for p, row in rows.items():
        for c, v in row.items():
            if c != p:
                buckets.setdefault(c, []).append((p, v))
    return buckets


def kernel_basis(m):
    """Basis of the right kernel {v : m v = 0}, one row per basis vector.

    Rows are indexed by the free columns of the RREF in increasing order,
    each with a 1 in its free column; deterministic and canonical.
    """
    pivots, rows = rref(m)
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    one = m.field.one
    buckets = _column_buckets(rows)
    basis = []
    for f in free:
        vec = {f: one}
        for p, v in buckets.get(f, ()):
            vec[p] = -v
        basis.append(vec)
    return Matrix.from_rows(m.field, basis, m.cols)


# -- quotient spaces -------------------------------------------------------


class QuotientSpace:
    """An ambient space modulo the row span of ``relations``.

    projection: ambient -> quotient coordinates, section: quotient ->
    ambient with projection @ section = 1.  The kernel of projection is
    exactly the relation span, which is what makes induced maps checkable.
    """

    __slots__ = ("field", "ambient_dim", "relations", "quotient_dim",
                 "projection", "section")

    def __init__(self, field, ambient_dim, relations, quotient_dim,
                 projection, section, check=True):
        self.field = field
        self.ambient_dim = ambient_dim
        self.relations = relations
        self.quotient_dim = quotient_dim
        self.projection = projection
        self.section = section
        if check:
            if projection.rows != quotient_dim or projection.cols != ambient_dim:
                raise ValueError("projection has wrong shape")
            if section.rows != ambient_dim or section.cols != quotient_dim:
                raise ValueError("section has wrong shape")
            if projection @ section != Matrix.identity(field, quotient_dim):
                raise ValueError("projection @ section is not the identity")
            if not (projection @ relations.transpose()).is_zero():
                raise ValueError("projection does not annihilate the relations")

    def verify(self):
        """Recheck all invariants from scratch (used by the check suite)."""
        assert self.projection @ self.section == Matrix.identity(self.field, self.quotient_dim)
        assert (self.projection @ self.relations.transpose()).is_zero()
        assert self.quotient_dim == self.ambient_dim - rank(self.relations)

    def __repr__(self):
        return "QuotientSpace(%d -> %d)" % (self.ambient_dim, self.quotient_dim)


def make_quotient(ambient_dim, relations):
    """Quotient of k^ambient_dim by the row span of ``relations``.

    The section completes the relation pivots with the free unit vectors,
    in increasing column order, so the construction is deterministic.
    """
    if relations.cols != ambient_dim:
        raise ValueError("relations have %d columns, ambient dimension is %d"
                         % (relations.cols, ambient_dim))
    field = relations.field
    pivots, rows = rref(relations)
    pivot_set = set(pivots)
    free = [c for c in range(ambient_dim) if c not in pivot_set]
    one = field.one
    buckets = _column_buckets(rows)
    proj_rows = []
    for f in free:
        pr = {f: one}
        for p, v in buckets.get(f, ()):
            pr[p] = -v
        proj_rows.append(pr)
    projection = Matrix.from_rows(field, proj_rows, ambient_dim)
    section = Matrix.from_cols(field, [{f: one} for f in free], ambient_dim)
    return QuotientSpace(field, ambient_dim, relations, len(free),
                         projection, section, check=False)


def induced_on_quotient(f, src, dst):
    """Descend f: src.ambient -> dst.ambient to the quotients.

    Verifies first that f maps the src relation span into the dst relation
    span; only then is dst.projection @ f @ src.section independent of the
    chosen sections.
    """
    if f.cols != src.ambient_dim or f.rows != dst.ambient_dim:
        raise ValueError("f has shape %dx%d, expected %dx%d"
                         % (f.rows, f.cols, dst.ambient_dim, src.ambient_dim))
    moved = dst.projection @ (f @ src.relations.transpose())
    if not moved.is_zero():
        bad = next(j for j, col in enumerate(moved.cols_data) if col)
        raise WellDefinednessViolation(
            "map sends relation row %d outside the target relation span" % bad)
    return dst.projection @ f @ src.section


def subquotient_coordinates(small, big, ambient_dim):
    """Coordinates on span(big)/span(small) inside k^ambient_dim.

    Returns (projection, section, small_rref, complement_rref) where the
    section columns are a canonical complement basis (big reduced modulo
    small, RREF'd) and projection extracts complement coordinates after
    reducing modulo small.  projection @ section = 1 and projection kills
    span(small).
    """
    field = big.field
    ech_s = Echelon(field)
    for row in small.row_dicts():
        if row:
            ech_s.insert(dict(row))
    ech_s.back_reduce()
    ech_c = Echelon(field)
    for row in big.row_dicts():
        res = ech_s.reduce(row)
        if res:
            ech_c.insert(res)
    ech_c.back_reduce()
    one = field.one
    c_pivots = ech_c.pivots()
    buckets = _column_buckets(ech_s.rows)
    proj_rows = []
    for f in c_pivots:
        pr = {f: one}
        for p, v in buckets.get(f, ()):
            pr[p] = -v
        proj_rows.append(pr)
    projection = Matrix.from_rows(field, proj_rows, ambient_dim)
    section = Matrix.from_cols(field, [dict(ech_c.rows[f]) for f in c_pivots],
                               ambient_dim)
    return projection, section, ech_s, ech_c


def kron(a, b):
    """Kronecker product on sparse matrices: (a x b)(u x v) = a u x b v.

    Index convention: row i of a and row k of b give row i*b.rows + k.
    """
    data = []
    brows = b.rows
    for ca in a.cols_data:
        for cb in b.cols_data:
            col = {}
            for i, va in ca.items():
                base = i * brows
                for k, vb in cb.items():
                    col[base + k] = va * vb
            data.append(col)
    return Matrix(a.field, a.rows * brows, a.cols * b.cols, data)
