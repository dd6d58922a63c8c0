"""One-shot invariant suite: re-verifies every module's invariants on a fixture.

Each check recomputes its claim from raw ranks and products rather than
trusting construction-time validation, so a corrupted intermediate is
caught here (see the corrupt hook, used by the self-test).
"""

from __future__ import annotations

from .exactlin import (Matrix, QuotientSpace, kernel_basis, rank,
                       make_quotient, induced_on_quotient)
from .algebra import restrict_bimodule, transported_S
from .complexes import induced_map, truncate, ChainMap
from .relbar import relative_chain_complex, relative_resolution, section_independence
from .fundamental import (build_fundamental, gap_complex, filtration,
                          spb_dims, quotient_homology_vs_tor)
from .tensorb import tensor_over_B, power_over_B, coinvariants
from .torlab import (check_hypothesis, nilpotency_index, radical_basis,
                     radical_is_ideal, UnsupportedField)


class CheckResult:
    __slots__ = ("name", "ok", "detail")

    def __init__(self, name, ok, detail=""):
        self.name = name
        self.ok = bool(ok)
        self.detail = detail

    def __repr__(self):
        return "[%s] %s" % ("PASS" if self.ok else "FAIL", self.name)


def _dd_zero(cx):
    for n in range(1, cx.top_degree):
        prod = cx.diff[n] @ cx.diff[n + 1]
        if not prod.is_zero():
            witness = next((i, j) for j, col in enumerate(prod.cols_data)
                           for i in col)
            return False, "d_%d . d_%d nonzero at %r" % (n, n + 1, witness)
    return True, ""


def run_suite(resolved, corrupt=False):
    emb, X, N = resolved.emb, resolved.bimodule, resolved.degree
    bounds = resolved.bounds
    field = emb.ambient.field
    out = []

    def check(name, ok, detail=""):
        out.append(CheckResult(name, ok, detail))

    # algebra axioms, rerun from scratch
    try:
        emb.ambient.verify()
        emb.algebra.verify()
        X.verify()
        check("algebra axioms (A, B, X)", True)
    except Exception as exc:
        check("algebra axioms (A, B, X)", False, str(exc))

    ident = Matrix.identity(field, emb.dim_s)
    check("pi . sigma = 1 on A/B", emb.pi @ emb.sigma == ident)
    check("pi . inclusion = 0", (emb.pi @ emb.inclusion).is_zero())

    # transported structure differs from ambient products by elements of B
    try:
        ts = transported_S(emb)
        ok = True
        A = emb.ambient
        for b in range(emb.dim_b):
            binc = emb.inclusion.col(b)
            for s in range(emb.dim_s):
                scol = emb.complement.col(s)
                dot = emb.complement.apply(ts.bimodule.left[b].col(s))
                amb = A.mult_vec(binc, scol)
                diff = dict(dot)
                for k, v in amb.items():
                    w = diff.get(k)
                    w = -v if w is None else w - v
                    if w:
                        diff[k] = w
                    elif k in diff:
                        del diff[k]
                if emb.pi.apply(diff):
                    ok = False
        check("transported action differs from ambient product inside B", ok)
    except Exception as exc:
        check("transported action differs from ambient product inside B", False, str(exc))

    # tensor unit laws and associativity at the dimension level
    aob = emb.quotient_bimodule()
    from .algebra import regular_bimodule as _reg
    breg = _reg(emb.algebra)
    if aob.dim:
        check("unit law dim(M (x)_B B) = dim M",
              tensor_over_B(aob, breg).dim == aob.dim)
        check("unit law dim(B (x)_B M) = dim M",
              tensor_over_B(breg, aob).dim == aob.dim)
        mm = tensor_over_B(aob, aob)
        check("tensor associativity at the dimension level",
              tensor_over_B(mm, aob).dim == tensor_over_B(aob, mm).dim)
    XB = restrict_bimodule(X, emb)
    cv = coinvariants(XB, power_over_B(emb, 0))
    rel = relative_chain_complex(emb, X, N)
    check("degree-0 coinvariants match the relative complex",
          cv.dim == rel.complex.dims[0])

    # quotient spaces: projection/section identities, rank-nullity
    ok = True
    for sp in rel.spaces:
        try:
            sp.verify()
        except AssertionError:
            ok = False
    check("quotient space invariants (projection, section, rank)", ok)
    ok = True
    for n in range(1, N + 1):
        d = rel.complex.diff[n]
        if rank(d) + kernel_basis(d).rows != d.cols:
            ok = False
    check("rank-nullity on relative differentials", ok)

    # section independence of induced maps on a rebuilt quotient
    if emb.dim_s:
        q1 = emb.quotient
        twist = Matrix.zero(field, emb.dim_b, emb.dim_s)
        if emb.dim_b and emb.dim_s:
            twist = Matrix.from_entries(field, emb.dim_b, emb.dim_s,
                                        {(0, 0): field.one})
        sigma2 = q1.section + emb.inclusion @ twist
        q2 = QuotientSpace(field, q1.ambient_dim, q1.relations,
                           q1.quotient_dim, q1.projection, sigma2)
        f = emb.ambient.left_mult_by(emb.ambient.unit)
        check("induced map independent of the quotient section",
              induced_on_quotient(f, q1, q1) == induced_on_quotient(f, q2, q2))

    # complexes: d d = 0 recomputed, truncation and homology agreement
    ok, detail = _dd_zero(rel.complex)
    check("d . d = 0 on the relative complex", ok, detail)
    fs = build_fundamental(emb, X, N)
    ok, detail = _dd_zero(fs.CA if not corrupt else _corrupted(fs.CA))
    check("d . d = 0 on the Hochschild complex", ok, detail)
    trunc = truncate(fs.CA)
    check("truncation preserves homology in degrees >= 1",
          all(trunc.homology_dim(n) == fs.CA.homology_dim(n)
              for n in range(1, N)))

    ident_map = ChainMap(fs.cA, fs.cA,
                         [Matrix.identity(field, d) for d in fs.cA.dims])
    check("identity chain map induces the identity on homology",
          all(induced_map(ident_map, n) == Matrix.identity(field, fs.cA.homology(n).dim)
              for n in range(1, N)))
    composed = fs.kappa.compose(fs.iota)
    check("H(kappa . iota) = H(kappa) H(iota) (= 0)",
          all((induced_map(fs.kappa, n) @ induced_map(fs.iota, n)
               == induced_map(composed, n))
              and induced_map(composed, n).is_zero()
              for n in range(1, N - 1)))

    # relative resolution identities
    try:
        res = relative_resolution(emb, N)
        ok, detail = _dd_zero(res.complex)
        check("resolution d . d = 0", ok, detail)
        try:
            res.verify_homotopy()
            check("resolution homotopy s d + d s = 1", True)
        except AssertionError as exc:
            check("resolution homotopy s d + d s = 1", False, str(exc))
        check("augmentation is surjective", rank(res.complex.diff[1]) == emb.ambient.dim)
    except Exception as exc:
        check("resolution identities", False, str(exc))

    # sigma independence with perturbed sections
    import random
    rng = random.Random(20240 + emb.ambient.dim)
    ok = True
    for _ in range(3):
        twist_entries = {(i, j): field.from_int(rng.randrange(-2, 3))
                         for i in range(emb.dim_b) for j in range(emb.dim_s)}
        twist = Matrix.from_entries(field, emb.dim_b, emb.dim_s, twist_entries)
        sigma2 = emb.sigma + emb.inclusion @ twist
        if not section_independence(emb, X, sigma2, min(N, 4)):
            ok = False
    check("descended differential independent of the section", ok)

    # fundamental sequence invariants, rerun from ranks
    ok = all(rank(fs.iota.components[n]) == fs.cB.dims[n] for n in range(N + 1))
    check("iota injective in all degrees", ok)
    ok = all((fs.kappa.components[n] @ fs.iota.components[n]).is_zero()
             for n in range(N + 1))
    check("kappa . iota = 0 in all degrees", ok)
    ok = all(rank(fs.kappa.components[n]) == fs.cR.dims[n] for n in range(2, N + 1))
    check("kappa surjective in degrees >= 2", ok)

    gap = gap_complex(fs)
    dx, ds, db = X.dim, emb.dim_s, emb.dim_b
    ok = all(gap.dims[n] == gap.L_dims[n] + sum(dx * spb_dims(n, p, ds, db)
                                                for p in range(1, n))
             for n in range(2, N + 1))
    check("gap dimensions match the S/B block decomposition", ok)

    try:
        filt = filtration(gap)
        check("filtration levels closed under the differential", True)
        ok = True
        for p in range(1, min(3, N) + 1):
            sub = filt.quotient(p)
            for n in range(1, N + 1):
                if n < p:
                    expected = 0
                elif n == p:
                    expected = gap.L_dims[p] if p >= 2 else gap.dims[1]
                else:
                    expected = dx * spb_dims(n, p, ds, db)
                if sub.dims[n] != expected:
                    ok = False
        check("filtration quotient dimensions", ok)
    except Exception as exc:
        check("filtration levels closed under the differential", False, str(exc))

    # Tor side
    hyp = check_hypothesis(emb, bounds["nmax"], bounds["starmax"])
    if hyp.ok and N >= 4:
        qc = min(bounds["qmax"], N - 2)
        cmp1 = quotient_homology_vs_tor(emb, X, 1, qc, filt=filt, hypothesis=hyp)
        check("filtration homology matches the Tor oracle at p=1",
              cmp1.all_equal() and cmp1.h0 == 0)
    nil = nilpotency_index(emb, bounds["cap"])
    ok = True
    if nil.index is not None:
        ok = all(d == 0 for d in nil.dims[nil.index - 1:])
    check("power dimensions stay zero past the nilpotency index", ok)
    if field.characteristic == 0:
        rad = radical_basis(emb.ambient)
        check("radical is a nilpotent two-sided ideal",
              radical_is_ideal(emb.ambient, rad))

    # degeneration: B = k agreement of the two pipelines
    if emb.dim_b == 1:
        ok = all(rel.complex.homology_dim(m) == fs.CA.homology_dim(m)
                 for m in range(1, N))
        check("relative pipeline agrees with the bar pipeline over the ground field", ok)
    if emb.dim_s == 0:
        ok = all(rel.complex.dims[n] == 0 for n in range(1, N + 1))
        check("B = A degeneration: relative complex vanishes in positive degrees", ok)

    return out


def _corrupted(cx):
    """Copy of a complex with one differential entry bumped (self-test).

    The entry (i, 0) of d_n is chosen so that column i of d_{n-1} is
    nonzero; the composite then changes by exactly that column, so the
    d d = 0 check is guaranteed to catch the tampering.
    """
    from .complexes import ChainComplex
    for n in range(2, cx.top_degree + 1):
        prev = cx.diff[n - 1]
        for i in range(prev.cols):
            if prev.col(i):
                d = cx.diff[n]
                cols = [dict(c) for c in d.cols_data]
                cols[0][i] = cols[0].get(i, cx.field.zero) + cx.field.one
                if not cols[0][i]:
                    del cols[0][i]
                    cols[0][i] = cx.field.one + cx.field.one
                tampered = Matrix(cx.field, d.rows, d.cols, cols)
                diffs = list(cx.diff[1:])
                diffs[n - 1] = tampered
                return ChainComplex(cx.field, cx.dims, diffs, check=False)
    raise RuntimeError("no nonzero differential to corrupt against")
