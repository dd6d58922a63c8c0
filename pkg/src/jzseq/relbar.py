"""Bar complexes: the standard Hochschild complex, the normalised relative
chain complex C_*(A|B,X), and the normalised relative bar resolution.

Relative differentials are assembled on the plain tensor ambients
X (x) (A/B)^{(x) n} using a section sigma, then descended through the
(x)_B quotients.  Individual summands of the differential are not well
defined over B -- only the alternating sum is -- so the descent check in
induced_on_quotient runs unconditionally: a violation means a bug, not an
input error.
"""

from __future__ import annotations

from itertools import product

from .exactlin import Matrix, induced_on_quotient
from .algebra import restrict_bimodule, regular_bimodule
from .complexes import ChainComplex
from .tensorb import power_over_B, coinvariants, trivial_quotient


class NotASection(Exception):
    def __init__(self):
        super().__init__("pi . sigma is not the identity on A/B")


def hochschild_complex(A, X, N):
    """The usual complex X (x) A^{(x)n} with the bar differential, degrees 0..N.

    b(x (x) a_1 ... a_n) = x a_1 (x) a_2 ... + sum_i (-1)^i x (x) ... a_i a_{i+1} ...
    + (-1)^n a_n x (x) a_1 ... a_{n-1}.
    """
    if X.algebra is not A:
        raise ValueError("bimodule is not over the given algebra")
    field = A.field
    da, dx = A.dim, X.dim
    right_cols = [[X.right[a].col(x) for x in range(dx)] for a in range(da)]
    left_cols = [[X.left[a].col(x) for x in range(dx)] for a in range(da)]
    mult = A.mult
    one = field.one
    neg_one = -one

    dims = [dx * da ** n for n in range(N + 1)]
    diffs = []
    for n in range(1, N + 1):
        xstride = da ** (n - 1)
        cols = []
        for x in range(dx):
            for word in product(range(da), repeat=n):
                col = {}
                # suffix[i] = sum_{t >= i} word[t] * da^(n-1-t) for target placement
                suffix = [0] * (n + 1)
                for t in range(n - 1, -1, -1):
                    suffix[t] = suffix[t + 1] + word[t] * (da ** (n - 1 - t))
                # x a_1 (x) a_2 ... a_n
                base = suffix[1]
                for x2, c in right_cols[word[0]][x].items():
                    k = x2 * xstride + base
                    w = col.get(k)
                    w = c if w is None else w + c
                    if w:
                        col[k] = w
                    elif k in col:
                        del col[k]
                # inner merges
                prefix = 0
                sign_neg = True
                for i in range(n - 1):
                    # digits: word[0..i-1], merge(word[i], word[i+1]), word[i+2..]
                    place = da ** (n - 2 - i)
                    rest = x * xstride + prefix + suffix[i + 2]
                    for m, c in mult[word[i]][word[i + 1]].items():
                        k = rest + m * place
                        v = -c if sign_neg else c
                        w = col.get(k)
                        w = v if w is None else w + v
                        if w:
                            col[k] = w
                        elif k in col:
                            del col[k]
                    prefix += word[i] * place
                    sign_neg = not sign_neg
                # (-1)^n a_n x (x) a_1 ... a_{n-1}
                base = (suffix[0] - word[n - 1]) // da
                for x2, c in left_cols[word[n - 1]][x].items():
                    k = x2 * xstride + base
                    v = c if n % 2 == 0 else -c
                    w = col.get(k)
                    w = v if w is None else w + v
                    if w:
                        col[k] = w
                    elif k in col:
                        del col[k]
                cols.append(col)
        diffs.append(Matrix(field, dims[n - 1], dims[n], cols))
    return ChainComplex(field, dims, diffs)


class RelativeChainComplex:
    """C_*(A|B,X) with each degree a quotient of X (x) (A/B)^{(x)n}.

    ``spaces[n]`` maps the plain tensor ambient onto degree n; the
    descended matrices are independent of the section used to build them.
    """

    __slots__ = ("emb", "X", "complex", "spaces", "sigma")

    def __init__(self, emb, X, complex_, spaces, sigma):
        self.emb = emb
        self.X = X
        self.complex = complex_
        self.spaces = spaces
        self.sigma = sigma

    @property
    def dims(self):
        return self.complex.dims

    def __repr__(self):
        return "RelativeChainComplex(dims=%r)" % (self.complex.dims,)


def _sigma_tables(emb, X, sigma):
    """Per-basis data for assembling relative differentials with a section."""
    A = emb.ambient
    ds = emb.dim_s
    pi = emb.pi
    right_sig = [X.right_by(sigma.col(a)) for a in range(ds)]
    left_sig = [X.left_by(sigma.col(a)) for a in range(ds)]
    pprod = [[pi.apply(A.mult_vec(sigma.col(a), sigma.col(b)))
              for b in range(ds)] for a in range(ds)]
    return right_sig, left_sig, pprod


def _relative_lift(field, dx, ds, n, right_sig, left_sig, pprod):
    """Matrix of the degree-n relative bar differential on plain tensors."""
    xstride_t = ds ** (n - 1)
    cols = []
    for x in range(dx):
        rcols = [right_sig[a].col(x) for a in range(ds)]
        lcols = [left_sig[a].col(x) for a in range(ds)]
        for word in product(range(ds), repeat=n):
            col = {}
            suffix = [0] * (n + 1)
            for t in range(n - 1, -1, -1):
                suffix[t] = suffix[t + 1] + word[t] * (ds ** (n - 1 - t))
            base = suffix[1]
            for x2, c in rcols[word[0]].items():
                k = x2 * xstride_t + base
                w = col.get(k)
                w = c if w is None else w + c
                if w:
                    col[k] = w
                elif k in col:
                    del col[k]
            prefix = 0
            sign_neg = True
            for i in range(n - 1):
                place = ds ** (n - 2 - i)
                rest = x * xstride_t + prefix + suffix[i + 2]
                for m, c in pprod[word[i]][word[i + 1]].items():
                    k = rest + m * place
                    v = -c if sign_neg else c
                    w = col.get(k)
                    w = v if w is None else w + v
                    if w:
                        col[k] = w
                    elif k in col:
                        del col[k]
                prefix += word[i] * place
                sign_neg = not sign_neg
            base = (suffix[0] - word[n - 1]) // ds if n >= 2 else 0
            for x2, c in lcols[word[n - 1]].items():
                k = x2 * xstride_t + base
                v = c if n % 2 == 0 else -c
                w = col.get(k)
                w = v if w is None else w + v
                if w:
                    col[k] = w
                elif k in col:
                    del col[k]
            cols.append(col)
    return Matrix(field, dx * ds ** (n - 1), dx * ds ** n, cols)


def _relative_spaces(emb, X, N):
    XB = restrict_bimodule(X, emb)
    spaces = []
    for n in range(N + 1):
        spaces.append(coinvariants(XB, power_over_B(emb, n)).total)
    return spaces


def _descended_differentials(emb, X, N, spaces, sigma):
    field = emb.ambient.field
    dx, ds = X.dim, emb.dim_s
    right_sig, left_sig, pprod = _sigma_tables(emb, X, sigma)
    diffs = []
    for n in range(1, N + 1):
        if n == 1:
            # x sigma(a) (x) 1_B - sigma(a) x (x) 1_B inside X (x) B
            db = emb.dim_b
            unit = emb.algebra.unit
            cols = []
            for x in range(dx):
                for a in range(ds):
                    col = {}
                    for x2, c in right_sig[a].col(x).items():
                        for k, u in unit.items():
                            key = x2 * db + k
                            w = col.get(key)
                            w = c * u if w is None else w + c * u
                            if w:
                                col[key] = w
                            elif key in col:
                                del col[key]
                    for x2, c in left_sig[a].col(x).items():
                        for k, u in unit.items():
                            key = x2 * db + k
                            w = col.get(key)
                            w = -c * u if w is None else w - c * u
                            if w:
                                col[key] = w
                            elif key in col:
                                del col[key]
                    cols.append(col)
            lift = Matrix(field, dx * db, dx * ds, cols)
        else:
            lift = _relative_lift(field, dx, ds, n, right_sig, left_sig, pprod)
        diffs.append(induced_on_quotient(lift, spaces[n], spaces[n - 1]))
    return diffs


def relative_chain_complex(emb, X, N):
    """C_*(A|B,X): degree n is X (x)_{B^e} (A/B)^{(x)_B n}, degree 0 is X_B."""
    if X.algebra is not emb.ambient:
        raise ValueError("bimodule is not over the ambient algebra")
    spaces = _relative_spaces(emb, X, N)
    diffs = _descended_differentials(emb, X, N, spaces, emb.sigma)
    dims = [sp.quotient_dim for sp in spaces]
    cx = ChainComplex(emb.ambient.field, dims, diffs)
    return RelativeChainComplex(emb, X, cx, spaces, emb.sigma)


def section_independence(emb, X, sigma2, N):
    """True iff the descended differentials built with sigma2 equal the
    canonical ones entrywise in every degree <= N."""
    pi = emb.pi
    if sigma2.rows != emb.ambient.dim or sigma2.cols != emb.dim_s:
        raise NotASection()
    if pi @ sigma2 != Matrix.identity(emb.ambient.field, emb.dim_s):
        raise NotASection()
    base = relative_chain_complex(emb, X, N)
    other = _descended_differentials(emb, X, N, base.spaces, sigma2)
    return all(base.complex.diff[n] == other[n - 1] for n in range(1, N + 1))


class RelativeResolution:
    """The normalised relative bar resolution with its contracting homotopy.

    Degree 0 is A itself (the augmentation target); degree m >= 1 is
    A (x)_B (A/B)^{(x)_B (m-1)} (x)_B A.  Validated: d d = 0 and
    s d + d s = 1 in degrees 0..N-1.
    """

    __slots__ = ("emb", "complex", "homotopies", "spaces")

    def __init__(self, emb, complex_, homotopies, spaces):
        self.emb = emb
        self.complex = complex_
        self.homotopies = homotopies
        self.spaces = spaces

    @property
    def dims(self):
        return self.complex.dims

    def verify_homotopy(self):
        cx = self.complex
        s = self.homotopies
        field = cx.field
        top = cx.top_degree
        assert cx.diff[1] @ s[0] == Matrix.identity(field, cx.dims[0]), \
            "d_1 s_0 is not the identity"
        for m in range(1, top):
            lhs = s[m - 1] @ cx.diff[m] + cx.diff[m + 1] @ s[m]
            assert lhs == Matrix.identity(field, cx.dims[m]), \
                "homotopy identity fails at degree %d" % m


def relative_resolution(emb, N):
    """Build the resolution up to degree N and validate its identities."""
    from .tensorb import tensor_over_B  # local: avoids import cycle noise

    A = emb.ambient
    field = A.field
    da, ds, db = A.dim, emb.dim_s, emb.dim_b
    X = regular_bimodule(A)
    AB = restrict_bimodule(X, emb)
    pi, sigma = emb.pi, emb.sigma

    spaces = [trivial_quotient(field, da)]
    for m in range(1, N + 1):
        if m == 1:
            t = tensor_over_B(AB, AB)
        else:
            t = tensor_over_B(tensor_over_B(AB, power_over_B(emb, m - 1)), AB)
        spaces.append(t.space)

    right_sig = [A.right_mult_by(sigma.col(a)) for a in range(ds)]
    left_sig = [A.left_mult_by(sigma.col(a)) for a in range(ds)]
    pprod = [[pi.apply(A.mult_vec(sigma.col(a), sigma.col(b)))
              for b in range(ds)] for a in range(ds)]

    diffs = []
    for m in range(1, N + 1):
        mid = m - 1
        cols = []
        if mid == 0:
            for a0 in range(da):
                for a1 in range(da):
                    cols.append(dict(A.mult[a0][a1]))
            lift = Matrix(field, da, da * da, cols)
        else:
            # ambient A (x) S^(x)mid (x) A; target has mid-1 middle slots
            for a0 in range(da):
                for word in product(range(ds), repeat=mid):
                    for a1 in range(da):
                        col = {}
                        suffix = [0] * (mid + 1)
                        for t in range(mid - 1, -1, -1):
                            suffix[t] = suffix[t + 1] + word[t] * (ds ** (mid - 1 - t))
                        tgt_mid = ds ** (mid - 1)
                        # a0 sigma(alpha_1) (x) alpha_2 ...
                        rest = suffix[1] * da + a1
                        for a2, c in right_sig[word[0]].col(a0).items():
                            k = a2 * tgt_mid * da + rest
                            w = col.get(k)
                            w = c if w is None else w + c
                            if w:
                                col[k] = w
                            elif k in col:
                                del col[k]
                        prefix = 0
                        sign_neg = True
                        for i in range(mid - 1):
                            place = ds ** (mid - 2 - i)
                            rest = (a0 * tgt_mid + prefix + suffix[i + 2]) * da + a1
                            for mm, c in pprod[word[i]][word[i + 1]].items():
                                k = rest + mm * place * da
                                v = -c if sign_neg else c
                                w = col.get(k)
                                w = v if w is None else w + v
                                if w:
                                    col[k] = w
                                elif k in col:
                                    del col[k]
                            prefix += word[i] * place
                            sign_neg = not sign_neg
                        # (-1)^mid ... sigma(alpha_mid) a_last
                        base = (suffix[0] - word[mid - 1]) // ds if mid >= 2 else 0
                        for a2, c in left_sig[word[mid - 1]].col(a1).items():
                            k = (a0 * tgt_mid + base) * da + a2
                            v = c if mid % 2 == 0 else -c
                            w = col.get(k)
                            w = v if w is None else w + v
                            if w:
                                col[k] = w
                            elif k in col:
                                del col[k]
                        cols.append(col)
            lift = Matrix(field, da * ds ** (mid - 1) * da, da * ds ** mid * da, cols)
        diffs.append(induced_on_quotient(lift, spaces[m], spaces[m - 1]))

    homotopies = []
    unit = A.unit
    for m in range(N):
        mid = m - 1  # middle slots at degree m (for m >= 1)
        cols = []
        if m == 0:
            # a -> 1 (x) a
            for a in range(da):
                col = {}
                for i, u in unit.items():
                    col[i * da + a] = u
                cols.append(col)
            lift = Matrix(field, da * da, da, cols)
        else:
            src_mid = ds ** mid
            tgt_mid = ds ** (mid + 1)
            for a0 in range(da):
                pia0 = pi.col(a0)
                for word_idx in range(src_mid):
                    for a1 in range(da):
                        col = {}
                        for i, u in unit.items():
                            for beta, c in pia0.items():
                                k = (i * tgt_mid + beta * src_mid + word_idx) * da + a1
                                col[k] = u * c
                        cols.append(col)
            lift = Matrix(field, da * tgt_mid * da, da * src_mid * da, cols)
        homotopies.append(induced_on_quotient(lift, spaces[m], spaces[m + 1]))

    dims = [sp.quotient_dim for sp in spaces]
    cx = ChainComplex(field, dims, diffs)
    res = RelativeResolution(emb, cx, homotopies, spaces)
    res.verify_homotopy()
    return res
