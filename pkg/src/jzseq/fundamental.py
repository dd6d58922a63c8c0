"""The fundamental short nearly exact sequence, its gap complex, and the
S-count filtration.

Everything here works in a basis of A adapted to A = B (+) S (conjugating
first if needed), so that kernels of kappa, the image of iota, and the
"number of S-tensorands" grading are all coordinate subspaces; the gap
complex and its filtration then stay sparse.

Degree conventions: the truncated complexes have degree 1 = cycles and
degree 0 = 0.  The gap complex uses the untruncated kappa/iota in degree
1, where Ker kappa / Im iota is exactly the kernel of kappa restricted to
X (x) S, and is declared to have zero differential out of degree 1; this
changes nothing in degrees >= 2 and gives the filtration quotients their
expected bottom terms.
"""

from __future__ import annotations

from math import comb

from .exactlin import Matrix, kernel_basis, rank
from .algebra import adapted, restrict_bimodule, transported_S
from .complexes import (ChainComplex, ChainMap, NotSubcomplex,
                        truncation_data, subquotient_with_coords)
from .relbar import hochschild_complex, relative_chain_complex
from .tensorb import tensor_power
from .torlab import (TorRequest, tor, check_hypothesis, enveloping,
                     bimodule_as_left_module, bimodule_as_right_module)
from .exactlin import SpanSolver


class FundamentalSequence:
    """Truncated complexes of B, A and A|B with the maps iota and kappa.

    iota is injective everywhere and kappa surjective in degrees >= 2;
    exactness can only fail in the middle, and in degree 1 kappa need not
    be surjective.  ``kappa_amb[n]``/``iota_amb[n]`` are the untruncated
    degree-n components on X (x) A^{(x)n}, used by the gap complex.
    """

    __slots__ = ("emb0", "X0", "emb", "X", "N", "cB", "cA", "cR",
                 "iota", "kappa", "CB", "CA", "rel",
                 "iota_amb", "kappa_amb", "ker_b_B", "ker_b_A", "ker_b_R")

    def __init__(self, **kw):
        for k, v in kw.items():
            setattr(self, k, v)

    def s_count(self, n, ambient_index):
        """Number of S-tensorands of an adapted basis index of X (x) A^(x)n."""
        da = self.emb.ambient.dim
        db = self.emb.dim_b
        count = 0
        for _ in range(n):
            ambient_index, digit = divmod(ambient_index, da)
            if digit >= db:
                count += 1
        return count

    def __repr__(self):
        return "FundamentalSequence(N=%d, dims A=%r)" % (self.N, self.cA.dims)


def build_fundamental(emb, X, N):
    """Construct and validate the fundamental sequence at degree bound N."""
    if N < 2:
        raise ValueError("need N >= 2")
    emb0, X0 = emb, X
    emb, X = adapted(emb, X)
    A = emb.ambient
    B = emb.algebra
    field = A.field
    da, db, ds, dx = A.dim, emb.dim_b, emb.dim_s, X.dim

    XB = restrict_bimodule(X, emb)
    CB = hochschild_complex(B, XB, N)
    CA = hochschild_complex(A, X, N)
    rel = relative_chain_complex(emb, X, N)

    cB, ker_b_B = truncation_data(CB)
    cA, ker_b_A = truncation_data(CA)
    cR, ker_b_R = truncation_data(rel.complex)

    # untruncated components on the plain tensor spaces
    iota_amb = [None]
    kappa_amb = [None]
    for n in range(1, N + 1):
        icols = []
        for x in range(dx):
            for word_idx in range(db ** n):
                digits = []
                w = word_idx
                for _ in range(n):
                    w, d = divmod(w, db)
                    digits.append(d)
                digits.reverse()
                tgt = x
                for d in digits:
                    tgt = tgt * da + d
                icols.append({tgt: field.one})
        iota_amb.append(Matrix(field, dx * da ** n, dx * db ** n, icols))

        proj = rel.spaces[n].projection
        kcols = []
        for x in range(dx):
            for word_idx in range(da ** n):
                digits = []
                w = word_idx
                ok = True
                for _ in range(n):
                    w, d = divmod(w, da)
                    if d < db:
                        ok = False
                        break
                    digits.append(d - db)
                if not ok:
                    kcols.append({})
                    continue
                digits.reverse()
                src = x
                for d in digits:
                    src = src * ds + d
                kcols.append(dict(proj.col(src)))
        kappa_amb.append(Matrix(field, rel.complex.dims[n], dx * da ** n, kcols))

    # truncated components: degree 0 is zero, degree 1 lives on the cycles
    iota_comps = [Matrix.zero(field, 0, 0)]
    kappa_comps = [Matrix.zero(field, 0, 0)]
    solver_A = SpanSolver(field, ker_b_A.row_dicts())
    solver_R = SpanSolver(field, ker_b_R.row_dicts())
    icols = []
    for row in ker_b_B.row_dicts():
        img = iota_amb[1].apply(row)
        coeffs = solver_A.express(img)
        assert coeffs is not None, "iota does not preserve degree-1 cycles"
        icols.append(coeffs)
    iota_comps.append(Matrix.from_cols(field, icols, ker_b_A.rows))
    kcols = []
    for row in ker_b_A.row_dicts():
        img = kappa_amb[1].apply(row)
        coeffs = solver_R.express(img)
        assert coeffs is not None, "kappa does not preserve degree-1 cycles"
        kcols.append(coeffs)
    kappa_comps.append(Matrix.from_cols(field, kcols, ker_b_R.rows))
    iota_comps.extend(iota_amb[2:])
    kappa_comps.extend(kappa_amb[2:])

    iota = ChainMap(cB, cA, iota_comps)
    kappa = ChainMap(cA, cR, kappa_comps)

    for n in range(N + 1):
        assert rank(iota.components[n]) == cB.dims[n], \
            "iota is not injective at degree %d" % n
        assert (kappa.components[n] @ iota.components[n]).is_zero(), \
            "kappa . iota is nonzero at degree %d" % n
    for n in range(2, N + 1):
        assert rank(kappa.components[n]) == cR.dims[n], \
            "kappa is not surjective at degree %d" % n

    return FundamentalSequence(
        emb0=emb0, X0=X0, emb=emb, X=X, N=N, cB=cB, cA=cA, cR=cR,
        iota=iota, kappa=kappa, CB=CB, CA=CA, rel=rel,
        iota_amb=iota_amb, kappa_amb=kappa_amb,
        ker_b_B=ker_b_B, ker_b_A=ker_b_A, ker_b_R=ker_b_R)


def spb_dims(n, p, dim_s, dim_b):
    """Dimension of the sum of summands of A^(x)n with p tensorands in S."""
    q = n - p
    if q < 0:
        raise ValueError("p cannot exceed n")
    return comb(n, p) * dim_s ** p * dim_b ** q


def L_n0(emb, X, n):
    """Basis rows of Ker(kappa restricted to X (x) S^(x)n).

    Under the sigma identification of X (x) S^(x)n with the plain tensor
    ambient of degree n, the restricted kappa is exactly the quotient
    projection, so this is its kernel.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    emb, X = adapted(emb, X)
    rel = relative_chain_complex(emb, X, n)
    return kernel_basis(rel.spaces[n].projection)


class GapComplex:
    """(Ker kappa / Im iota)_* with its S-count bookkeeping.

    ``counts[n][k]`` is the number of S-tensorands of the k-th gap
    coordinate at degree n; ``L_dims[n]`` the dimension of the kernel of
    kappa restricted to X (x) S^(x)n.  Coordinates are pivot completions
    inside the adapted basis, so each one has a well-defined S-count.
    """

    __slots__ = ("fs", "complex", "projections", "sections", "counts", "L_dims")

    def __init__(self, fs, complex_, projections, sections, counts, L_dims):
        self.fs = fs
        self.complex = complex_
        self.projections = projections
        self.sections = sections
        self.counts = counts
        self.L_dims = L_dims

    @property
    def dims(self):
        return self.complex.dims

    def __repr__(self):
        return "GapComplex(dims=%r)" % (self.complex.dims,)


def gap_complex(fs):
    """Build (Ker kappa / Im iota)_* and verify its dimension decomposition.

    In every degree n >= 1 the dimension must equal
    dim L_{n,0} + sum over p,q>0, p+q=n of dim X * C(n,p) dimS^p dimB^q.
    """
    field = fs.cA.field
    N = fs.N
    dx = fs.X.dim
    ds, db = fs.emb.dim_s, fs.emb.dim_b

    amb_dims = [0] + fs.CA.dims[1:]
    amb_diffs = [Matrix.zero(field, 0, amb_dims[1])]
    amb_diffs.extend(fs.CA.diff[2:])
    # shares the validated differentials of C(A,X); degree 1 maps to 0
    ambient = ChainComplex(field, amb_dims, amb_diffs, check=False)

    big = [Matrix.zero(field, 0, 0)]
    small = [Matrix.zero(field, 0, 0)]
    for n in range(1, N + 1):
        big.append(kernel_basis(fs.kappa_amb[n]))
        small.append(fs.iota_amb[n].transpose())

    cx, projs, sects = subquotient_with_coords(ambient, big, small)

    counts = [[]]
    for n in range(1, N + 1):
        cn = []
        for col in sects[n].cols_data:
            seen = {fs.s_count(n, i) for i in col}
            assert len(seen) == 1, "gap coordinate mixes S-counts at degree %d" % n
            cn.append(seen.pop())
        counts.append(cn)

    L_dims = [0]
    for n in range(1, N + 1):
        L_dims.append(dx * ds ** n - fs.rel.complex.dims[n])

    for n in range(1, N + 1):
        expected = L_dims[n] + sum(dx * spb_dims(n, p, ds, db)
                                   for p in range(1, n))
        assert cx.dims[n] == expected, \
            "gap dimension %d at degree %d differs from the decomposition %d" \
            % (cx.dims[n], n, expected)

    return GapComplex(fs, cx, projs, sects, counts, L_dims)


class GapFiltration:
    """Nested subcomplexes G_p of the gap complex, graded by S-count.

    G_p is spanned by the gap coordinates with at most p S-tensorands;
    closure under the differential is verified entrywise (the differential
    never raises the S-count).  Quotients G_p/G_{p-1} select the countwise
    p coordinates.
    """

    __slots__ = ("gap", "_quotients")

    def __init__(self, gap):
        self.gap = gap
        self._quotients = {}
        cx = gap.complex
        counts = gap.counts
        for n in range(1, cx.top_degree + 1):
            tgt = counts[n - 1]
            for j, col in enumerate(cx.diff[n].cols_data):
                cj = counts[n][j]
                for i in col:
                    if tgt[i] > cj:
                        raise NotSubcomplex(n, "G_%d" % cj, i)

    def member_indices(self, p, n):
        """Gap coordinates of degree n that lie in G_p."""
        return [k for k, c in enumerate(self.gap.counts[n]) if c <= p]

    def subspace_rows(self, p):
        """Unit-row matrices spanning G_p, one per degree."""
        field = self.gap.complex.field
        out = [Matrix.zero(field, 0, 0)]
        one = field.one
        for n in range(1, self.gap.complex.top_degree + 1):
            rows = [{k: one} for k in self.member_indices(p, n)]
            out.append(Matrix.from_rows(field, rows, self.gap.complex.dims[n]))
        return out

    def quotient(self, p):
        """G_p/G_{p-1} as a chain complex, with its dimension bookkeeping."""
        if p < 1:
            raise ValueError("filtration starts at p = 1")
        if p in self._quotients:
            return self._quotients[p]
        gap = self.gap
        cx, _projs, _sects = subquotient_with_coords(
            gap.complex, self.subspace_rows(p), self.subspace_rows(p - 1))
        fs = gap.fs
        dx, ds, db = fs.X.dim, fs.emb.dim_s, fs.emb.dim_b
        for n in range(1, cx.top_degree + 1):
            if n < p:
                expected = 0
            elif n == p:
                expected = gap.L_dims[p] if p >= 2 else gap.dims[1]
            else:
                expected = dx * spb_dims(n, p, ds, db)
            assert cx.dims[n] == expected, \
                "quotient G_%d/G_%d has dim %d at degree %d, expected %d" \
                % (p, p - 1, cx.dims[n], n, expected)
        self._quotients[p] = cx
        return cx


def filtration(gap):
    return GapFiltration(gap)


class TorComparison:
    """One filtration-quotient column against the Tor oracle."""

    __slots__ = ("p", "rows", "h0", "hypothesis", "asserted")

    def __init__(self, p, rows, h0, hypothesis):
        self.p = p
        self.rows = rows  # (q, homology dim, tor dim, equal)
        self.h0 = h0
        self.hypothesis = hypothesis
        self.asserted = hypothesis.ok

    def all_equal(self):
        return all(eq for (_q, _h, _t, eq) in self.rows)

    def __repr__(self):
        status = "asserted" if self.asserted else "hypothesis not satisfied - comparison not asserted"
        return "TorComparison(p=%d, rows=%r, H0=%d, %s)" % (self.p, self.rows, self.h0, status)


def quotient_homology_vs_tor(emb, X, p, qmax, filt=None, hypothesis=None,
                             nmax=4, starmax=4, tor_dims=None):
    """H_q(G_p/G_{p-1}) against Tor^{B^e}_{p+q}(X, S^{(x)_B p}), q = 1..qmax.

    The left column comes from the filtration of the actual gap complex;
    the right column from the independent bar-complex oracle over B^e on
    the original (unadapted) data.  Equality is asserted only under the
    bounded Tor-vanishing hypothesis; H_0 of the quotient is reported and
    must vanish under the hypothesis.
    """
    if hypothesis is None:
        hypothesis = check_hypothesis(emb, nmax, starmax)
    need = p + qmax + 1
    if filt is None:
        fs = build_fundamental(emb, X, need)
        filt = GapFiltration(gap_complex(fs))
    if filt.gap.complex.top_degree < need:
        raise ValueError("filtration top degree %d too small, need %d"
                         % (filt.gap.complex.top_degree, need))
    sub = filt.quotient(p)

    if tor_dims is None:
        env = emb._cache.get("envB")
        if env is None:
            env = enveloping(emb.algebra)
            emb._cache["envB"] = env
        XB = restrict_bimodule(X, emb)
        right = bimodule_as_right_module(XB, env)
        S = transported_S(emb).bimodule
        Sp = tensor_power(S, p)
        if Sp.dim == 0:
            tor_dims = [0] * (p + qmax + 1)
        else:
            left = bimodule_as_left_module(Sp.bimodule, env)
            tor_dims = tor(TorRequest(env, right, left, p + qmax + 1))

    rows = []
    for q in range(1, qmax + 1):
        h = sub.homology_dim(p + q)
        t = tor_dims[p + q]
        rows.append((q, h, t, h == t))
    h0 = sub.homology_dim(p)
    return TorComparison(p, rows, h0, hypothesis)
