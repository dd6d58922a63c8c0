"""Independent Tor oracle over finite-dimensional algebras.

Tor is computed from the truncated two-sided bar complex
X (x) Lambda^{(x)n} (x) M, streamed column by column so that only the
rank echelons are ever held in memory.  Every vanishing statement made
here is a bounded verification up to an explicit degree, never a proof
for all degrees; reports say so.
"""

from __future__ import annotations

from itertools import product

from .exactlin import Matrix, Echelon, kernel_basis, rank, rank_of_int_vectors, QQ
from .algebra import Bimodule, enveloping, restrict_bimodule, make_algebra, transported_S
from .tensorb import power_over_B, tensor_power


BOUNDED_NOTE = "bounded verification up to the stated degree, not a proof for all degrees"


class UnsupportedField(Exception):
    def __init__(self, what):
        super().__init__("%s requires characteristic zero" % what)


class LeftModule:
    """Left module over an algebra: action matrices per basis element."""

    __slots__ = ("algebra", "dim", "act")

    def __init__(self, algebra, dim, act, check=True):
        self.algebra = algebra
        self.dim = dim
        self.act = list(act)
        if check:
            self.verify()

    def verify(self):
        alg = self.algebra
        field = alg.field
        ident = Matrix.identity(field, self.dim)
        u = Matrix.zero(field, self.dim, self.dim)
        for i, c in alg.unit.items():
            u = u + self.act[i].scaled(c)
        assert u == ident, "left action not unital"
        for i in range(alg.dim):
            for j in range(alg.dim):
                s = Matrix.zero(field, self.dim, self.dim)
                for k, c in alg.mult[i][j].items():
                    s = s + self.act[k].scaled(c)
                assert s == self.act[i] @ self.act[j], \
                    "left module law fails at (%d, %d)" % (i, j)


class RightModule:
    __slots__ = ("algebra", "dim", "act")

    def __init__(self, algebra, dim, act, check=True):
        self.algebra = algebra
        self.dim = dim
        self.act = list(act)
        if check:
            self.verify()

    def verify(self):
        alg = self.algebra
        field = alg.field
        ident = Matrix.identity(field, self.dim)
        u = Matrix.zero(field, self.dim, self.dim)
        for i, c in alg.unit.items():
            u = u + self.act[i].scaled(c)
        assert u == ident, "right action not unital"
        for i in range(alg.dim):
            for j in range(alg.dim):
                s = Matrix.zero(field, self.dim, self.dim)
                for k, c in alg.mult[i][j].items():
                    s = s + self.act[k].scaled(c)
                assert s == self.act[j] @ self.act[i], \
                    "right module law fails at (%d, %d)" % (i, j)


def bimodule_as_left_module(M, env):
    """A B-bimodule as a left module over B (x) B^op: (b (x) b').m = b m b'."""
    B = M.algebra
    act = []
    for i in range(B.dim):
        for j in range(B.dim):
            act.append(M.left[i] @ M.right[j])
    return LeftModule(env, M.dim, act)


def bimodule_as_right_module(M, env):
    """A B-bimodule as a right module over B (x) B^op: m.(b (x) b') = b' m b."""
    B = M.algebra
    act = []
    for i in range(B.dim):
        for j in range(B.dim):
            act.append(M.left[j] @ M.right[i])
    return RightModule(env, M.dim, act)


class TorRequest:
    __slots__ = ("ring", "right_module", "left_module", "max_degree")

    def __init__(self, ring, right_module, left_module, max_degree):
        if right_module.algebra is not ring or left_module.algebra is not ring:
            raise ValueError("modules must live over the given ring")
        self.ring = ring
        self.right_module = right_module
        self.left_module = left_module
        self.max_degree = max_degree


def _bar_columns(ring, right, left, n):
    """Columns of the degree-n bar differential, generated lazily.

    Basis order: (x, lambda_1..lambda_n, m) with x slowest, m fastest.
    """
    L = ring.dim
    dm = left.dim
    dx = right.dim
    mult = ring.mult
    rcols = [[right.act[l].col(x) for x in range(dx)] for l in range(L)]
    lcols = [[left.act[l].col(m) for m in range(dm)] for l in range(L)]
    tgt_mid = L ** (n - 1)
    xstride = tgt_mid * dm
    for x in range(dx):
        for word in product(range(L), repeat=n):
            suffix = [0] * (n + 1)
            for t in range(n - 1, -1, -1):
                suffix[t] = suffix[t + 1] + word[t] * (L ** (n - 1 - t))
            prefix_parts = []
            acc = 0
            for t in range(n - 1):
                prefix_parts.append(acc)
                acc += word[t] * (L ** (n - 2 - t))
            last_base = (suffix[0] - word[n - 1]) // L
            for m in range(dm):
                col = {}
                base = suffix[1] * dm + m
                for x2, c in rcols[word[0]][x].items():
                    k = x2 * xstride + base
                    w = col.get(k)
                    w = c if w is None else w + c
                    if w:
                        col[k] = w
                    elif k in col:
                        del col[k]
                sign_neg = True
                for i in range(n - 1):
                    place = L ** (n - 2 - i)
                    rest = (x * tgt_mid + prefix_parts[i] + suffix[i + 2]) * dm + m
                    for mm, c in mult[word[i]][word[i + 1]].items():
                        k = rest + mm * place * dm
                        v = -c if sign_neg else c
                        w = col.get(k)
                        w = v if w is None else w + v
                        if w:
                            col[k] = w
                        elif k in col:
                            del col[k]
                    sign_neg = not sign_neg
                base = (x * tgt_mid + last_base) * dm
                flip = n % 2 == 1
                for m2, c in lcols[word[n - 1]][m].items():
                    k = base + m2
                    v = -c if flip else c
                    w = col.get(k)
                    w = v if w is None else w + v
                    if w:
                        col[k] = w
                    elif k in col:
                        del col[k]
                if col:
                    yield col


def _stream_rank(field, columns):
    if field is QQ:
        def cleared():
            for col in columns:
                den = 1
                for v in col.values():
                    d = v.denominator
                    if d != 1:
                        den = den * d // _gcd(den, d)
                yield {k: int(v * den) for k, v in col.items()}
        return rank_of_int_vectors(cleared())
    ech = Echelon(field)
    n = 0
    for col in columns:
        if ech.insert(dict(col)) is not None:
            n += 1
    return n


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def tor(req):
    """dims of Tor_n over the ring for 0 <= n < max_degree.

    Homology of the truncated bar complex; degree max_degree itself is not
    reported since its boundary from above is unknown.
    """
    ring, right, left = req.ring, req.right_module, req.left_module
    field = ring.field
    md = req.max_degree
    dims = [right.dim * ring.dim ** n * left.dim for n in range(md + 1)]
    ranks = [0] * (md + 2)
    for n in range(1, md + 1):
        if dims[n] == 0 or dims[n - 1] == 0:
            continue
        ranks[n] = _stream_rank(field, _bar_columns(ring, right, left, n))
    return [dims[n] - ranks[n] - ranks[n + 1] for n in range(md)]


def _prefix_tor(ring, right, left, upto):
    """Yield Tor_n dims for n = 0, 1, ... < upto, computing ranks lazily."""
    field = ring.field
    dims = [right.dim * ring.dim ** n * left.dim for n in range(upto + 1)]
    prev_rank = 0
    for n in range(upto):
        if dims[n] == 0:
            yield 0
            prev_rank = 0
            continue
        if dims[n + 1] == 0:
            nxt = 0
        else:
            nxt = _stream_rank(field, _bar_columns(ring, right, left, n + 1))
        yield dims[n] - prev_rank - nxt
        prev_rank = nxt


class HypothesisReport:
    """Outcome of the bounded Tor-vanishing hypothesis check."""

    __slots__ = ("ok", "witness", "nmax", "starmax", "note")

    def __init__(self, ok, witness, nmax, starmax):
        self.ok = ok
        self.witness = witness
        self.nmax = nmax
        self.starmax = starmax
        self.note = BOUNDED_NOTE

    def __repr__(self):
        if self.ok:
            return "hypothesis holds (n <= %d, degrees <= %d; %s)" % (
                self.nmax, self.starmax, self.note)
        return "hypothesis fails at (n=%d, degree=%d)" % self.witness


def check_hypothesis(emb, nmax, starmax):
    """Bounded check of Tor_*^B(A/B, (A/B)^{(x)_B n}) = 0 for * > 0."""
    B = emb.algebra
    aob = emb.quotient_bimodule()
    if aob.dim == 0:
        return HypothesisReport(True, None, nmax, starmax)
    right = RightModule(B, aob.dim, aob.right)
    for n in range(1, nmax + 1):
        Mn = power_over_B(emb, n)
        if Mn.dim == 0:
            continue
        left = LeftModule(B, Mn.dim, Mn.bimodule.left)
        req = TorRequest(B, right, left, starmax + 1)
        dims = tor(req)
        for star in range(1, starmax + 1):
            if dims[star] != 0:
                return HypothesisReport(False, (n, star), nmax, starmax)
    return HypothesisReport(True, None, nmax, starmax)


class NilpotencyReport:
    __slots__ = ("dims", "index", "cap")

    def __init__(self, dims, index, cap):
        self.dims = dims
        self.index = index
        self.cap = cap

    @property
    def exceeds_cap(self):
        return self.index is None

    def __repr__(self):
        if self.index is None:
            return "not tensor nilpotent within cap %d (dims %r)" % (self.cap, self.dims)
        return "tensor nilpotent of index %d (dims %r)" % (self.index, self.dims)


def nilpotency_index(emb, cap):
    """dims of the powers (A/B)^{(x)_B n} for n = 1..cap and the first zero."""
    if cap < 1:
        raise ValueError("cap must be >= 1")
    dims = []
    index = None
    for n in range(1, cap + 1):
        d = power_over_B(emb, n).dim
        dims.append(d)
        if d == 0 and index is None:
            index = n
    for n in range(len(dims)):
        if index is not None and n + 1 > index:
            assert dims[n] == 0, "power dimensions must stay zero past the index"
    return NilpotencyReport(dims, index, cap)


def radical_basis(lam):
    """Basis rows of the radical, via the trace form x -> trace of left mult.

    Valid in characteristic zero (Dickson's criterion); the returned rows
    span a two-sided nilpotent ideal, rechecked by radical_is_ideal.
    """
    if lam.field.characteristic != 0:
        raise UnsupportedField("radical via trace form")
    dim = lam.dim
    field = lam.field
    traces = []
    for k in range(dim):
        mat = lam.left_mult_matrix(k)
        t = field.zero
        for i in range(dim):
            v = mat.col(i).get(i)
            if v:
                t = t + v
        traces.append(t)
    gram = {}
    for i in range(dim):
        for j in range(dim):
            t = field.zero
            for k, c in lam.mult[i][j].items():
                t = t + c * traces[k]
            if t:
                gram[(i, j)] = t
    return kernel_basis(Matrix.from_entries(field, dim, dim, gram))


def radical_is_ideal(lam, rad):
    """Closure under both multiplications plus nilpotency within dim steps."""
    field = lam.field
    ech = Echelon(field)
    for row in rad.row_dicts():
        ech.insert(dict(row))
    one = field.one
    for row in rad.row_dicts():
        for i in range(lam.dim):
            if ech.reduce(lam.mult_vec({i: one}, row)):
                return False
            if ech.reduce(lam.mult_vec(row, {i: one})):
                return False
    span = rad.row_dicts()
    for _ in range(lam.dim):
        if not span:
            return True
        nxt_ech = Echelon(field)
        nxt = []
        for r in span:
            for s in rad.row_dicts():
                p = lam.mult_vec(r, s)
                if p and nxt_ech.insert(dict(p)) is not None:
                    nxt.append(p)
        span = nxt
    return not span


def semisimple_quotient(lam):
    """(lam/rad as an algebra, the quotient space, rad basis rows)."""
    rad = radical_basis(lam)
    from .exactlin import make_quotient
    q = make_quotient(lam.dim, rad)
    mult = {}
    for i in range(q.quotient_dim):
        for j in range(q.quotient_dim):
            vec = q.projection.apply(lam.mult_vec(q.section.col(i), q.section.col(j)))
            if vec:
                mult[(i, j)] = vec
    top = make_algebra(q.quotient_dim,
                       ["t%d" % i for i in range(q.quotient_dim)],
                       mult, q.projection.apply(lam.unit), field=lam.field)
    return top, q, rad


def pd_upper(lam, M, cap):
    """Projective-dimension estimate of a left module via Tor against lam/rad.

    Returns the largest n < cap with Tor_n(lam/rad, M) != 0, or None when
    Tor has not vanished by cap ("exceeds cap", a bound, not a certificate).
    A single vanishing degree is conclusive: Tor_n(lam/rad, M) counts the
    n-th term of the minimal projective resolution, so one zero forces all
    later ones.
    """
    if lam.field.characteristic != 0:
        raise UnsupportedField("pd_upper")
    if cap < 1:
        raise ValueError("cap must be >= 1")
    if M.dim == 0:
        return 0  # convention: the zero module is projective
    _top, q, rad = semisimple_quotient(lam)
    act = [q.projection @ lam.right_mult_matrix(j) @ q.section for j in range(lam.dim)]
    top_right = RightModule(lam, q.quotient_dim, act)
    last_nonzero = None
    for n, t in enumerate(_prefix_tor(lam, top_right, M, cap)):
        if t == 0:
            return last_nonzero if last_nonzero is not None else 0
        last_nonzero = n
    return None
