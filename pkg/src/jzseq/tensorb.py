"""Tensor products over B and over B^e realized as explicit quotients.

Every ``(x)_B`` is a quotient of a plain tensor product by relations
generated on basis tuples (they span the full relation space by
bilinearity).  Iterated powers are left-associated and memoized, and each
carries a composed projection/section from the full tensor-power ambient,
which is what the bar differentials descend through.
"""

from __future__ import annotations

from .exactlin import Matrix, make_quotient, induced_on_quotient, kron, QuotientSpace
from .algebra import Bimodule


def trivial_quotient(field, dim):
    return make_quotient(dim, Matrix.zero(field, 0, dim))


def vstack(field, mats, cols):
    rows = []
    for m in mats:
        if m.cols != cols:
            raise ValueError("vstack width mismatch")
        rows.extend(m.row_dicts())
    return Matrix.from_rows(field, rows, cols)


def compose_quotients(inner, outer):
    """Quotient-of-a-quotient as one QuotientSpace over the inner ambient.

    inner: ambient -> mid, outer: mid -> final (outer.ambient_dim must be
    inner.quotient_dim).  Relations are inner's plus sections of outer's.
    """
    if outer.ambient_dim != inner.quotient_dim:
        raise ValueError("quotients do not compose")
    field = inner.field
    lifted = outer.relations @ inner.section.transpose()
    relations = vstack(field, [inner.relations, lifted], inner.ambient_dim)
    return QuotientSpace(field, inner.ambient_dim, relations,
                         outer.quotient_dim,
                         outer.projection @ inner.projection,
                         inner.section @ outer.section)


def kron_quotient(q1, q2):
    """Tensor product of two quotient spaces over the tensored ambients."""
    field = q1.field
    a1, a2 = q1.ambient_dim, q2.ambient_dim
    i1 = Matrix.identity(field, a1)
    i2 = Matrix.identity(field, a2)
    relations = vstack(field, [kron(q1.relations, i2), kron(i1, q2.relations)],
                       a1 * a2)
    return QuotientSpace(field, a1 * a2, relations,
                         q1.quotient_dim * q2.quotient_dim,
                         kron(q1.projection, q2.projection),
                         kron(q1.section, q2.section))


class BModBimodule:
    """A B-bimodule arising as a quotient of an ambient tensor space.

    ``bimodule`` carries the actions on quotient coordinates; ``space``
    is the quotient of the full tensor ambient (so its projection maps
    plain tensor coordinates onto the (x)_B coordinates).
    """

    __slots__ = ("bimodule", "space")

    def __init__(self, bimodule, space):
        self.bimodule = bimodule
        self.space = space

    @property
    def dim(self):
        return self.bimodule.dim

    @property
    def algebra(self):
        return self.bimodule.algebra

    def __repr__(self):
        return "BModBimodule(dim=%d, ambient=%d)" % (self.dim, self.space.ambient_dim)


def _as_parts(M):
    """(bimodule-on-quotient-coords, full QuotientSpace) for either kind."""
    if isinstance(M, BModBimodule):
        return M.bimodule, M.space
    return M, trivial_quotient(M.algebra.field, M.dim)


def tensor_over_B(M, N):
    """M (x)_B N as a quotient of M (x) N, with descended outer actions.

    Relations: m.b (x) n - m (x) b.n over basis triples.  The left action
    of B through M and the right action through N descend; descent is
    checked (a failure would signal a construction bug upstream).
    """
    Mb, Mfull = _as_parts(M)
    Nb, Nfull = _as_parts(N)
    B = Mb.algebra
    if Nb.algebra is not B:
        raise ValueError("tensor factors live over different algebras")
    field = B.field
    dm, dn = Mb.dim, Nb.dim
    ambient = dm * dn
    one = field.one

    rows = []
    for b in range(B.dim):
        right_b = Mb.right[b]
        left_b = Nb.left[b]
        for i in range(dm):
            mcol = right_b.col(i)
            for j in range(dn):
                row = {}
                for m2, c in mcol.items():
                    row[m2 * dn + j] = c
                for n2, c in left_b.col(j).items():
                    k = i * dn + n2
                    w = row.get(k)
                    w = -c if w is None else w - c
                    if w:
                        row[k] = w
                    elif k in row:
                        del row[k]
                if row:
                    rows.append(row)
    step = make_quotient(ambient, Matrix.from_rows(field, rows, ambient))

    eye_m = Matrix.identity(field, dm)
    eye_n = Matrix.identity(field, dn)
    left = [induced_on_quotient(kron(Mb.left[b], eye_n), step, step)
            for b in range(B.dim)]
    right = [induced_on_quotient(kron(eye_m, Nb.right[b]), step, step)
             for b in range(B.dim)]
    bim = Bimodule(B, step.quotient_dim, left, right)
    full = compose_quotients(kron_quotient(Mfull, Nfull), step)
    return BModBimodule(bim, full)


def tensor_power(M, p):
    """Left-associated p-th tensor power of a B-bimodule over B (p >= 1)."""
    if p < 1:
        raise ValueError("tensor_power needs p >= 1")
    Mb, Mfull = _as_parts(M)
    out = BModBimodule(Mb, Mfull)
    for _ in range(p - 1):
        out = tensor_over_B(out, M)
    return out


def power_over_B(emb, n):
    """(A/B)^{(x)_B n}; n = 0 gives B as a bimodule over itself.

    Memoized on the embedding: the filtration and the Tor oracle revisit
    every power, and one fixed association keeps results canonical.
    """
    if n < 0:
        raise ValueError("power needs n >= 0")
    cache = emb._cache.setdefault("powers", {})
    if n in cache:
        return cache[n]
    B = emb.algebra
    field = B.field
    if n == 0:
        left = [B.left_mult_matrix(i) for i in range(B.dim)]
        right = [B.right_mult_matrix(i) for i in range(B.dim)]
        out = BModBimodule(Bimodule(B, B.dim, left, right),
                           trivial_quotient(field, B.dim))
    elif n == 1:
        out = BModBimodule(emb.quotient_bimodule(),
                           trivial_quotient(field, emb.dim_s))
    else:
        out = tensor_over_B(power_over_B(emb, n - 1), power_over_B(emb, 1))
    cache[n] = out
    return out


class CoinvariantSpace:
    """X (x)_{B^e} M for a B-bimodule X and quotient-realized M.

    ``space`` is the quotient of X (x) M (quotient coordinates of M);
    ``total`` composes with M's own quotient, so its ambient is
    X (x) (full tensor ambient of M).
    """

    __slots__ = ("space", "total", "x_dim", "m_dim")

    def __init__(self, space, total, x_dim, m_dim):
        self.space = space
        self.total = total
        self.x_dim = x_dim
        self.m_dim = m_dim

    @property
    def dim(self):
        return self.space.quotient_dim

    def __repr__(self):
        return "CoinvariantSpace(dim=%d)" % self.dim


def coinvariants(X, M):
    """Quotient of X (x) M by x.b (x) m - x (x) b.m and b.x (x) m - x (x) m.b."""
    Mb, Mfull = _as_parts(M)
    B = X.algebra
    if Mb.algebra is not B:
        raise ValueError("coinvariants need a bimodule over the same algebra")
    field = B.field
    dx, dm = X.dim, Mb.dim
    ambient = dx * dm
    rows = []
    for b in range(B.dim):
        xr = X.right[b]
        xl = X.left[b]
        ml = Mb.left[b]
        mr = Mb.right[b]
        for i in range(dx):
            xr_col = xr.col(i)
            xl_col = xl.col(i)
            for j in range(dm):
                row = {}
                for x2, c in xr_col.items():
                    row[x2 * dm + j] = c
                for m2, c in ml.col(j).items():
                    k = i * dm + m2
                    w = row.get(k)
                    w = -c if w is None else w - c
                    if w:
                        row[k] = w
                    elif k in row:
                        del row[k]
                if row:
                    rows.append(row)
                row = {}
                for x2, c in xl_col.items():
                    row[x2 * dm + j] = c
                for m2, c in mr.col(j).items():
                    k = i * dm + m2
                    w = row.get(k)
                    w = -c if w is None else w - c
                    if w:
                        row[k] = w
                    elif k in row:
                        del row[k]
                if row:
                    rows.append(row)
    step = make_quotient(ambient, Matrix.from_rows(field, rows, ambient))
    eye_x = trivial_quotient(field, dx)
    total = compose_quotients(kron_quotient(eye_x, Mfull), step)
    return CoinvariantSpace(step, total, dx, dm)
