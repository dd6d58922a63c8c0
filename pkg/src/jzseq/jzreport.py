"""Assembly of the Jacobi-Zariski long nearly exact sequence report.

The connecting map is never constructed: exactness at the H(B) and H(A|B)
spots is certified by the dimension identity
dim H_m(A|B,X) = rank K_m + dim Ker I_{m-1}, which carries the same
content given that the gap sits only at the middle spot.  All flags are
recomputed from ranks on every call.
"""

from __future__ import annotations

from .exactlin import Matrix, rank
from .algebra import restrict_bimodule, transported_S
from .complexes import induced_map
from .fundamental import (build_fundamental, gap_complex, filtration,
                          quotient_homology_vs_tor)
from .tensorb import tensor_power
from .torlab import (TorRequest, tor, check_hypothesis, nilpotency_index,
                     pd_upper, enveloping, bimodule_as_left_module,
                     bimodule_as_right_module, UnsupportedField, BOUNDED_NOTE)


class DegreeBoundTooSmall(Exception):
    def __init__(self, N):
        super().__init__("degree bound %d too small, need N >= 3" % N)


class Verdict:
    """Outcome of a gated theorem check: premises, conclusions, caveats."""

    __slots__ = ("name", "applicable", "premises", "conclusions", "note")

    def __init__(self, name, applicable, premises, conclusions, note):
        self.name = name
        self.applicable = applicable
        self.premises = premises
        self.conclusions = conclusions
        self.note = note

    @property
    def ok(self):
        return (not self.applicable) or all(self.conclusions.values())

    def to_dict(self):
        return {"name": self.name, "applicable": self.applicable,
                "premises": self.premises, "conclusions": self.conclusions,
                "note": self.note, "ok": self.ok}

    def __repr__(self):
        if not self.applicable:
            return "%s: not applicable (%r)" % (self.name, self.premises)
        return "%s: %s" % (self.name, "holds" if self.ok else "FAILS %r" % (self.conclusions,))


class E1Page:
    """Tor^{B^e}_{p+q}(X, S^{(x)_B p}) for 1 <= p <= pmax, 1 <= q <= qmax."""

    __slots__ = ("pmax", "qmax", "cells")

    def __init__(self, pmax, qmax, cells):
        self.pmax = pmax
        self.qmax = qmax
        self.cells = cells  # dict (p, q) -> dim

    def all_zero(self):
        return all(v == 0 for v in self.cells.values())

    def to_dict(self):
        return {"pmax": self.pmax, "qmax": self.qmax,
                "cells": {"%d,%d" % pq: v for pq, v in sorted(self.cells.items())}}

    def __repr__(self):
        return "E1Page(%r)" % (self.cells,)


def _enveloping_of_base(emb):
    env = emb._cache.get("envB")
    if env is None:
        env = enveloping(emb.algebra)
        emb._cache["envB"] = env
    return env


def _tor_columns(emb, X, pmax, qmax):
    """Tor^{B^e}_* (X, S^{(x)_B p}) dims for degrees 0..p+qmax, per p."""
    env = _enveloping_of_base(emb)
    XB = restrict_bimodule(X, emb)
    right = bimodule_as_right_module(XB, env)
    S = transported_S(emb).bimodule
    out = {}
    for p in range(1, pmax + 1):
        Sp = tensor_power(S, p) if S.dim else None
        if Sp is None or Sp.dim == 0:
            out[p] = [0] * (p + qmax + 1)
            continue
        left = bimodule_as_left_module(Sp.bimodule, env)
        out[p] = tor(TorRequest(env, right, left, p + qmax + 1))
    return out


def e1_page(emb, X, pmax, qmax, hypothesis=None):
    """Tor grid from the independent oracle over B^e, on the raw data."""
    columns = _tor_columns(emb, X, pmax, qmax)
    cells = {}
    for p in range(1, pmax + 1):
        for q in range(1, qmax + 1):
            cells[(p, q)] = columns[p][p + q]
    return E1Page(pmax, qmax, cells)


class JZReport:
    """Everything Theorems 4.2/4.3/5.1/6.2/6.5-style checks need, by degree.

    Homology dims are reported for 1 <= m <= N-1; induced maps, gap dims
    and identity flags for the window where both sides are reliable.
    """

    __slots__ = ("N", "dim_a", "dim_b", "dim_x", "field_name",
                 "h_B", "h_A", "h_R", "rank_I", "rank_K", "I_mats", "K_mats",
                 "g", "h_gap", "gap_identity", "connecting_identity",
                 "hypothesis", "e1", "e1_cross", "flat", "bounded", "degree_one",
                 "nilpotency", "pd")

    def __init__(self, **kw):
        for k, v in kw.items():
            setattr(self, k, v)

    def degrees(self):
        return list(range(1, self.N))

    def window(self):
        return list(range(2, self.N - 1))

    def all_identities_hold(self):
        return (all(self.gap_identity.values())
                and all(self.connecting_identity.values()))

    def to_dict(self):
        return {
            "degree_bound": self.N,
            "dims": {"A": self.dim_a, "B": self.dim_b, "X": self.dim_x},
            "field": self.field_name,
            "homology": {
                "B": {str(m): self.h_B[m] for m in self.degrees()},
                "A": {str(m): self.h_A[m] for m in self.degrees()},
                "relative": {str(m): self.h_R[m] for m in self.degrees()},
            },
            "rank_I": {str(m): v for m, v in sorted(self.rank_I.items())},
            "rank_K": {str(m): v for m, v in sorted(self.rank_K.items())},
            "gap": {str(m): v for m, v in sorted(self.g.items())},
            "gap_complex_homology": {str(m): v for m, v in sorted(self.h_gap.items())},
            "gap_identity": {str(m): v for m, v in sorted(self.gap_identity.items())},
            "connecting_identity": {str(m): v for m, v in sorted(self.connecting_identity.items())},
            "hypothesis": {"holds": self.hypothesis.ok,
                           "witness": list(self.hypothesis.witness) if self.hypothesis.witness else None,
                           "bounds": [self.hypothesis.nmax, self.hypothesis.starmax],
                           "note": self.hypothesis.note},
            "e1_page": self.e1.to_dict(),
            "e1_cross_check": ({"%d,%d" % pq: v for pq, v in sorted(self.e1_cross.items())}
                               if self.e1_cross is not None else None),
            "nilpotency": {"dims": self.nilpotency.dims, "index": self.nilpotency.index,
                           "cap": self.nilpotency.cap},
            "projective_dimension_bound": self.pd,
            "flat_case": self.flat.to_dict(),
            "bounded_case": self.bounded.to_dict(),
            "degree_one": self.degree_one.to_dict(),
        }


def _degree_one_verdict(rank_K1, rank_I1, hA1, hR1):
    return Verdict(
        "degree-1 exactness", True, {"finite_dimensional": True},
        {"K1_surjective": rank_K1 == hR1,
         "ker_K1_equals_im_I1": hA1 - rank_K1 == rank_I1},
        "holds for all finite-dimensional inputs")


def degree_one_check(emb, X):
    """K_1 surjective and Ker K_1 = Im I_1, by ranks (N = 3 suffices)."""
    fs = build_fundamental(emb, X, 3)
    K1 = induced_map(fs.kappa, 1)
    I1 = induced_map(fs.iota, 1)
    return _degree_one_verdict(rank(K1), rank(I1),
                               fs.cA.homology_dim(1), fs.cR.homology_dim(1))


def _flat_verdict(hypothesis, e1, g, degree_one, window):
    premises = {"tor_hypothesis": hypothesis.ok, "e1_page_zero": e1.all_zero()}
    applicable = all(premises.values())
    conclusions = {}
    if applicable:
        for m in window:
            conclusions["gap_zero_at_%d" % m] = g[m] == 0
        conclusions["degree_one_exact"] = all(degree_one.conclusions.values())
    return Verdict("flat case (long exact sequence)", applicable, premises,
                   conclusions, BOUNDED_NOTE)


def _bounded_verdict(nil, pd, g, degree_one, window):
    premises = {"tensor_nilpotent": not nil.exceeds_cap,
                "finite_pd_bound": isinstance(pd, int)}
    applicable = all(premises.values())
    conclusions = {}
    if applicable:
        nu = nil.index * pd
        for m in window:
            if m >= nu:
                conclusions["gap_zero_at_%d" % m] = g[m] == 0
        if nu <= 1:
            conclusions["degree_one_exact"] = all(degree_one.conclusions.values())
    return Verdict("bounded case (exactness from degree n*u)", applicable,
                   premises, conclusions, BOUNDED_NOTE)


def flat_case(emb, X, N, bound=3):
    """Self-contained check of the flat-case specialisation."""
    report = jz(emb, X, N, nmax=bound, starmax=bound, pmax=bound, qmax=bound)
    return report.flat


def bounded_case(emb, X, N, cap=8):
    report = jz(emb, X, N, cap=cap)
    return report.bounded


def jz(emb, X, N, nmax=4, starmax=4, pmax=3, qmax=3, cap=8):
    """Compute the full report for an extension and coefficient bimodule."""
    if N < 3:
        raise DegreeBoundTooSmall(N)
    fs = build_fundamental(emb, X, N)
    gap = gap_complex(fs)

    h_B = {m: fs.cB.homology_dim(m) for m in range(1, N)}
    h_A = {m: fs.cA.homology_dim(m) for m in range(1, N)}
    h_R = {m: fs.cR.homology_dim(m) for m in range(1, N)}

    I_mats, K_mats, rank_I, rank_K, g = {}, {}, {}, {}, {}
    for m in range(1, N - 1):
        I_mats[m] = induced_map(fs.iota, m)
        K_mats[m] = induced_map(fs.kappa, m)
        assert (K_mats[m] @ I_mats[m]).is_zero(), \
            "K . I nonzero on homology at degree %d" % m
        rank_I[m] = rank(I_mats[m])
        rank_K[m] = rank(K_mats[m])
        g[m] = (h_A[m] - rank_K[m]) - rank_I[m]

    h_gap = {m: gap.complex.homology_dim(m) for m in range(1, N - 1)}

    gap_identity = {m: g[m] == h_gap[m] for m in range(2, N - 1)}
    connecting_identity = {
        m: h_R[m] == rank_K[m] + (h_B[m - 1] - rank_I[m - 1])
        for m in range(2, N - 1)}

    hypothesis = check_hypothesis(emb, nmax, starmax)
    tor_cols = _tor_columns(emb, X, pmax, qmax)
    cells = {(p, q): tor_cols[p][p + q]
             for p in range(1, pmax + 1) for q in range(1, qmax + 1)}
    e1 = E1Page(pmax, qmax, cells)

    e1_cross = None
    if hypothesis.ok:
        filt = filtration(gap)
        e1_cross = {}
        for p in range(1, pmax + 1):
            if p + qmax + 1 > N:
                continue
            cmp = quotient_homology_vs_tor(emb, X, p, qmax, filt=filt,
                                           hypothesis=hypothesis,
                                           tor_dims=tor_cols[p])
            for (q, h, t, eq) in cmp.rows:
                e1_cross[(p, q)] = bool(eq and e1.cells[(p, q)] == t)
            e1_cross[(p, 0)] = cmp.h0 == 0

    d1 = _degree_one_verdict(rank_K[1], rank_I[1], h_A[1], h_R[1])
    nil = nilpotency_index(emb, cap)
    aob = emb.quotient_bimodule()
    if aob.dim == 0:
        pd = 0
    else:
        try:
            env = _enveloping_of_base(emb)
            pd_val = pd_upper(env, bimodule_as_left_module(aob, env), cap)
            pd = pd_val if pd_val is not None else "exceeds cap"
        except UnsupportedField:
            pd = "unsupported field"

    window = list(range(2, N - 1))
    flat = _flat_verdict(hypothesis, e1, g, d1, window)
    bounded = _bounded_verdict(nil, pd, g, d1, window)

    return JZReport(
        N=N, dim_a=emb.ambient.dim, dim_b=emb.dim_b, dim_x=X.dim,
        field_name=emb.ambient.field.name,
        h_B=h_B, h_A=h_A, h_R=h_R,
        rank_I=rank_I, rank_K=rank_K, I_mats=I_mats, K_mats=K_mats,
        g=g, h_gap=h_gap, gap_identity=gap_identity,
        connecting_identity=connecting_identity,
        hypothesis=hypothesis, e1=e1, e1_cross=e1_cross,
        flat=flat, bounded=bounded, degree_one=d1,
        nilpotency=nil, pd=pd)
