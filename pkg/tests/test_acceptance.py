"""Acceptance suite: one test per criterion, exact (zero-tolerance) checks.

Pipelines at N = 6 are built once and shared: criterion 3 pays for the
construction, criteria 4/5/8/9 reuse it, matching their shared budgets.
Each test prints one pass line with its measured time and budget.
"""

import random
import time

import pytest

from jzseq.exactlin import QQ, Matrix, rank
from jzseq.algebra import regular_bimodule
from jzseq.complexes import induced_map
from jzseq.relbar import (hochschild_complex, relative_chain_complex,
                          relative_resolution, section_independence)
from jzseq.fundamental import build_fundamental, gap_complex, filtration, \
    quotient_homology_vs_tor
from jzseq.torlab import (check_hypothesis, nilpotency_index, pd_upper,
                          enveloping, bimodule_as_left_module)
from jzseq.jzreport import flat_case, degree_one_check
from jzseq.fixtures import load_corpus, random_extensions, trivial_subalgebra

N = 6
RANDOM_SEED = 20260810
RANDOM_COUNT = 20

_corpus = None
_random_set = None
_pipelines = {}
_stats = {}
_build_seconds = {"total": 0.0}
_timings = {}


def corpus():
    global _corpus
    if _corpus is None:
        _corpus = load_corpus()
    return _corpus


def random_set():
    global _random_set
    if _random_set is None:
        _random_set = random_extensions(RANDOM_SEED, RANDOM_COUNT)
    return _random_set


def all_extensions():
    out = [(r.name, r.emb, r.bimodule) for r in corpus()]
    out += [("random-%02d" % i, emb, X)
            for i, (emb, X) in enumerate(random_set())]
    return out


def pipeline(name, emb, X):
    if name not in _pipelines:
        t0 = time.monotonic()
        fs = build_fundamental(emb, X, N)
        gap = gap_complex(fs)
        _build_seconds["total"] += time.monotonic() - t0
        _pipelines[name] = (fs, gap)
    return _pipelines[name]


def stats(name, emb, X):
    """Homology dims, induced ranks and gap numbers for degrees <= 4."""
    if name not in _stats:
        fs, gap = pipeline(name, emb, X)
        hB = {m: fs.cB.homology_dim(m) for m in range(1, N - 1)}
        hA = {m: fs.cA.homology_dim(m) for m in range(1, N - 1)}
        hR = {m: fs.cR.homology_dim(m) for m in range(1, N - 1)}
        rI, rK, g = {}, {}, {}
        for m in range(1, N - 1):
            Im = induced_map(fs.iota, m)
            Km = induced_map(fs.kappa, m)
            assert (Km @ Im).is_zero()
            rI[m] = rank(Im)
            rK[m] = rank(Km)
            g[m] = (hA[m] - rK[m]) - rI[m]
        h_gap = {m: gap.complex.homology_dim(m) for m in range(2, N - 1)}
        _stats[name] = dict(hB=hB, hA=hA, hR=hR, rI=rI, rK=rK, g=g, h_gap=h_gap)
    return _stats[name]


def report(criterion, label, elapsed, budget):
    _timings[criterion] = elapsed
    print("ACCEPTANCE %2d %-38s PASS in %6.1fs (budget %ds)"
          % (criterion, label, elapsed, budget))


def test_criterion_01_resolution_identities():
    budget = 10  # per fixture
    worst = 0.0
    for resolved in corpus():
        t0 = time.monotonic()
        res = relative_resolution(resolved.emb, N)
        cx = res.complex
        for n in range(1, N):
            assert (cx.diff[n] @ cx.diff[n + 1]).is_zero()
        assert cx.diff[1] @ res.homotopies[0] == Matrix.identity(cx.field, cx.dims[0])
        for m in range(1, N):
            lhs = res.homotopies[m - 1] @ cx.diff[m] + cx.diff[m + 1] @ res.homotopies[m]
            assert lhs == Matrix.identity(cx.field, cx.dims[m])
        worst = max(worst, time.monotonic() - t0)
        assert worst < budget, "fixture %s exceeded the budget" % resolved.name
    report(1, "resolution d.d=0 and sd+ds=1", worst, budget)


def test_criterion_02_section_independence():
    budget = 10  # per fixture
    rng = random.Random(RANDOM_SEED + 2)
    worst = 0.0
    for resolved in corpus():
        emb, X = resolved.emb, resolved.bimodule
        t0 = time.monotonic()
        for _ in range(3):
            entries = {(i, j): QQ.from_int(rng.randrange(-3, 4))
                       for i in range(emb.dim_b) for j in range(emb.dim_s)}
            twist = Matrix.from_entries(QQ, emb.dim_b, emb.dim_s, entries)
            sigma2 = emb.sigma + emb.inclusion @ twist
            assert section_independence(emb, X, sigma2, N), resolved.name
        worst = max(worst, time.monotonic() - t0)
        assert worst < budget, "fixture %s exceeded the budget" % resolved.name
    report(2, "sigma-independence of b_{A|B}", worst, budget)


def test_criterion_03_fundamental_sequence():
    budget = 60
    t0 = time.monotonic()
    for name, emb, X in all_extensions():
        assert emb.ambient.dim <= 5 and emb.dim_b <= 3
        fs, _gap = pipeline(name, emb, X)
        for n in range(N + 1):
            assert rank(fs.iota.components[n]) == fs.cB.dims[n], name
            assert (fs.kappa.components[n] @ fs.iota.components[n]).is_zero(), name
        for n in range(2, N):
            assert rank(fs.kappa.components[n]) == fs.cR.dims[n], name
    elapsed = time.monotonic() - t0
    assert elapsed < budget
    report(3, "iota/kappa nearly exact (Thm 3.3)", elapsed, budget)


def test_criterion_04_gap_identity():
    budget = 120  # shared with criterion 5
    t0 = time.monotonic()
    square_zero_g = None
    for name, emb, X in all_extensions():
        st = stats(name, emb, X)
        for m in (2, 3, 4):
            assert st["g"][m] == st["h_gap"][m], (name, m)
        if name == "square-zero-extension":
            square_zero_g = [st["g"][m] for m in (2, 3, 4)]
    # the non-flat showcase: nonzero gap, frozen at first build
    assert square_zero_g == [2, 5, 9]
    assert any(v != 0 for v in square_zero_g)
    elapsed = time.monotonic() - t0
    assert elapsed < budget
    report(4, "gap identity g_m = h_m (Thm 4.2)", elapsed, budget)


def test_criterion_05_connecting_identity():
    budget = 120  # shared with criterion 4
    t0 = time.monotonic()
    for name, emb, X in all_extensions():
        st = stats(name, emb, X)
        for m in (2, 3, 4):
            ker_I_prev = st["hB"][m - 1] - st["rI"][m - 1]
            assert st["hR"][m] == st["rK"][m] + ker_I_prev, (name, m)
    elapsed = time.monotonic() - t0
    combined = elapsed + _timings.get(4, 0.0)
    assert combined < budget
    report(5, "connecting identity (proof of 4.2)", combined, budget)


def test_criterion_06_e1_identification():
    budget = 120  # per fixture
    worst = 0.0
    checked = 0
    for resolved in corpus():
        emb, X = resolved.emb, resolved.bimodule
        hyp = check_hypothesis(emb, 4, 4)
        if not hyp.ok:
            continue
        t0 = time.monotonic()
        fs = build_fundamental(emb, X, 7)
        filt = filtration(gap_complex(fs))
        for p in (1, 2, 3):
            cmp = quotient_homology_vs_tor(emb, X, p, 3, filt=filt, hypothesis=hyp)
            assert cmp.asserted and cmp.all_equal(), (resolved.name, p, cmp.rows)
            assert cmp.h0 == 0, (resolved.name, p)
            checked += 1
        elapsed = time.monotonic() - t0
        assert elapsed < budget, "fixture %s exceeded the budget" % resolved.name
        worst = max(worst, elapsed)
    assert checked >= 12  # at least four fixtures satisfy the hypothesis
    report(6, "E1 page = Tor (Thm 5.1)", worst, budget)


def test_criterion_07_flat_case():
    budget = 60
    t0 = time.monotonic()
    for name in ("upper-triangular-over-diagonal", "product-of-fields-over-diagonal"):
        resolved = next(r for r in corpus() if r.name == name)
        verdict = flat_case(resolved.emb, resolved.bimodule, N, bound=3)
        assert verdict.applicable, name
        assert all(verdict.conclusions.values()), (name, verdict.conclusions)
    elapsed = time.monotonic() - t0
    assert elapsed < budget
    report(7, "flat case exactness (Thm 6.2)", elapsed, budget)


def test_criterion_08_degree_one():
    budget = 30
    t0 = time.monotonic()
    for name, emb, X in all_extensions():
        st = stats(name, emb, X)
        assert st["rK"][1] == st["hR"][1], name            # K_1 surjective
        assert st["hA"][1] - st["rK"][1] == st["rI"][1], name  # Ker K_1 = Im I_1
    elapsed = time.monotonic() - t0
    assert elapsed < budget
    report(8, "degree-1 exactness (Thm 5.1)", elapsed, budget)


def test_criterion_09_bounded_case():
    budget = 60
    t0 = time.monotonic()
    for name, expected_n, expected_u in (
            ("upper-triangular-over-diagonal", 2, 0),
            ("three-vertex-quiver", 3, 0)):
        resolved = next(r for r in corpus() if r.name == name)
        emb, X = resolved.emb, resolved.bimodule
        nil = nilpotency_index(emb, 8)
        assert nil.index == expected_n, name
        env = enveloping(emb.algebra)
        aob = emb.quotient_bimodule()
        u = pd_upper(env, bimodule_as_left_module(aob, env), 8)
        assert u == expected_u, name
        nu = nil.index * u
        st = stats(name, emb, X)
        for m in range(max(nu, 1), 5):
            assert st["g"][m] == 0, (name, m)
    elapsed = time.monotonic() - t0
    assert elapsed < budget
    report(9, "bounded case exactness (Thm 6.5)", elapsed, budget)


def test_criterion_10_cross_pipeline_over_k():
    budget = 30
    t0 = time.monotonic()
    # fixture (1) already has B = k; fixture (5) gets the span of its unit
    duals = next(r for r in corpus() if r.name == "dual-numbers-over-ground-field")
    assert duals.emb.dim_b == 1
    rel = relative_chain_complex(duals.emb, duals.bimodule, 5)
    absolute = hochschild_complex(duals.algebra, duals.bimodule, 5)
    for m in range(1, 5):
        assert rel.complex.homology_dim(m) == absolute.homology_dim(m)

    quiver = next(r for r in corpus() if r.name == "three-vertex-quiver")
    emb_k = trivial_subalgebra(quiver.algebra)
    rel = relative_chain_complex(emb_k, quiver.bimodule, 5)
    absolute = hochschild_complex(quiver.algebra, quiver.bimodule, 5)
    for m in range(1, 5):
        assert rel.complex.homology_dim(m) == absolute.homology_dim(m)
    elapsed = time.monotonic() - t0
    assert elapsed < budget
    report(10, "relative vs bar pipeline at B = k", elapsed, budget)
