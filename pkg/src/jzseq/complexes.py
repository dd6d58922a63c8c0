"""Chain complexes of finite-dimensional spaces and their homology.

Complexes carry an explicit top degree N chosen by the caller: bar
complexes are infinite, and degrees >= N simply do not exist here, so
degree-N homology is never reported (the boundary from above is unknown).
"""

from __future__ import annotations

from .exactlin import (Matrix, Echelon, SpanSolver, kernel_basis, rank,
                       subquotient_coordinates)


class DegreeOutOfRange(Exception):
    def __init__(self, n, top):
        super().__init__("degree %d not reportable for a complex truncated at %d" % (n, top))


class NotSubcomplex(Exception):
    def __init__(self, degree, which, witness):
        self.degree = degree
        self.witness = witness
        super().__init__("%s is not differential-closed at degree %d (witness residual %r)"
                         % (which, degree, witness))


class HomologyEntry:
    """dim H_n plus a deterministic representative basis."""

    __slots__ = ("degree", "dim", "representatives", "cycle_dim", "boundary_rank")

    def __init__(self, degree, dim, representatives, cycle_dim, boundary_rank):
        self.degree = degree
        self.dim = dim
        self.representatives = representatives
        self.cycle_dim = cycle_dim
        self.boundary_rank = boundary_rank

    def __repr__(self):
        return "H_%d (dim %d)" % (self.degree, self.dim)


class ChainComplex:
    """Degrees 0..top_degree with d_n : degree n -> degree n-1 and d d = 0."""

    __slots__ = ("field", "top_degree", "dims", "diff", "_homology",
                 "_boundary_ech", "_cycles")

    def __init__(self, field, dims, diffs, check=True):
        self.field = field
        self.top_degree = len(dims) - 1
        self.dims = list(dims)
        self.diff = [None] + list(diffs)
        if len(self.diff) != len(dims):
            raise ValueError("expected %d differentials for %d degrees"
                             % (len(dims) - 1, len(dims)))
        self._homology = {}
        self._boundary_ech = {}
        self._cycles = {}
        if check:
            for n in range(1, self.top_degree + 1):
                d = self.diff[n]
                if d.cols != dims[n] or d.rows != dims[n - 1]:
                    raise ValueError("d_%d has shape %dx%d, expected %dx%d"
                                     % (n, d.rows, d.cols, dims[n - 1], dims[n]))
            for n in range(1, self.top_degree):
                if not (self.diff[n] @ self.diff[n + 1]).is_zero():
                    raise ValueError("d_%d . d_%d is nonzero" % (n, n + 1))

    def d(self, n):
        return self.diff[n]

    def cycle_basis(self, n):
        if n not in self._cycles:
            if n == 0:
                self._cycles[0] = Matrix.identity(self.field, self.dims[0])
            else:
                self._cycles[n] = kernel_basis(self.diff[n])
        return self._cycles[n]

    def boundary_echelon(self, n):
        """Echelon of the image of d_{n+1} inside degree n."""
        if n not in self._boundary_ech:
            ech = Echelon(self.field)
            if n < self.top_degree:
                for col in self.diff[n + 1].cols_data:
                    if col:
                        ech.insert(dict(col))
            self._boundary_ech[n] = ech
        return self._boundary_ech[n]

    def homology(self, n):
        """Exact H_n with representatives; n must be < top_degree."""
        if not 0 <= n <= self.top_degree - 1:
            raise DegreeOutOfRange(n, self.top_degree)
        if n in self._homology:
            return self._homology[n]
        cycles = self.cycle_basis(n)
        bech = self.boundary_echelon(n)
        keep = Echelon(self.field)
        reps = []
        for row in cycles.row_dicts():
            res = bech.reduce(row)
            if res and keep.insert(dict(res)) is not None:
                reps.append(res)
        entry = HomologyEntry(n, len(reps),
                              Matrix.from_rows(self.field, reps, self.dims[n]),
                              cycles.rows, len(bech))
        assert entry.dim == entry.cycle_dim - entry.boundary_rank
        self._homology[n] = entry
        return entry

    def homology_dim(self, n):
        return self.homology(n).dim

    def __repr__(self):
        return "ChainComplex(dims=%r)" % (self.dims,)


class ChainMap:
    """Degreewise matrices commuting with the differentials."""

    __slots__ = ("source", "target", "components")

    def __init__(self, source, target, components, check=True):
        self.source = source
        self.target = target
        self.components = list(components)
        if check:
            if len(self.components) != source.top_degree + 1:
                raise ValueError("one component per degree, 0..top")
            for n, f in enumerate(self.components):
                if f.cols != source.dims[n] or f.rows != target.dims[n]:
                    raise ValueError("component %d has wrong shape" % n)
            for n in range(1, source.top_degree + 1):
                lhs = self.components[n - 1] @ source.diff[n]
                rhs = target.diff[n] @ self.components[n]
                if lhs != rhs:
                    raise ValueError("square at degree %d does not commute" % n)

    def compose(self, other):
        """self . other (other first)."""
        comps = [f @ g for f, g in zip(self.components, other.components)]
        return ChainMap(other.source, self.target, comps, check=False)

    def __repr__(self):
        return "ChainMap(%r -> %r)" % (self.source.dims, self.target.dims)


def induced_map(f, n):
    """Matrix of H_n(f) in the chosen homology bases of source and target."""
    src = f.source.homology(n)
    tgt = f.target.homology(n)
    solver = SpanSolver(f.target.field)
    for col in (f.target.diff[n + 1].cols_data if n < f.target.top_degree else ()):
        if col:
            solver.insert(col)
    n_boundary = solver.n_inserted
    for row in tgt.representatives.row_dicts():
        solver.insert(row)
    cols = []
    for row in src.representatives.row_dicts():
        img = f.components[n].apply(row)
        coeffs = solver.express(img)
        assert coeffs is not None, "image of a cycle is not a cycle"
        cols.append({k - n_boundary: v for k, v in coeffs.items() if k >= n_boundary})
    return Matrix.from_cols(f.target.field, cols, tgt.dim)


def truncation_data(c):
    """The degree-0/1 modification: degree 1 becomes Ker d_1, degree 0 dies.

    Returns (truncated complex, kernel basis at degree 1).  Homology is
    unchanged in degrees >= 1; degree 0 becomes zero.
    """
    if c.top_degree < 1:
        raise ValueError("need top degree >= 1 to truncate")
    k1 = c.cycle_basis(1)
    field = c.field
    dims = [0, k1.rows] + c.dims[2:]
    solver = SpanSolver(field, k1.row_dicts())
    diffs = [Matrix.zero(field, 0, k1.rows)]
    if c.top_degree >= 2:
        cols = []
        for col in c.diff[2].cols_data:
            coeffs = solver.express(col)
            assert coeffs is not None, "Im d_2 not inside Ker d_1"
            cols.append(coeffs)
        diffs.append(Matrix.from_cols(field, cols, k1.rows))
        diffs.extend(c.diff[3:])
    return ChainComplex(field, dims, diffs), k1


def truncate(c):
    return truncation_data(c)[0]


def subquotient_with_coords(ambient, sub_big, sub_small):
    """Complex of span(big)/span(small) plus its per-degree coordinates.

    Verifies small <= big and that the ambient differential preserves both
    spans (NotSubcomplex otherwise).  Returns (complex, projections,
    sections) with projection/section per degree over the ambient spaces.
    """
    field = ambient.field
    top = ambient.top_degree
    if len(sub_big) != top + 1 or len(sub_small) != top + 1:
        raise ValueError("need one subspace matrix per degree")
    projs, sects, dims = [], [], []
    small_echs, big_echs = [], []
    for n in range(top + 1):
        proj, sect, ech_s, ech_c = subquotient_coordinates(
            sub_small[n], sub_big[n], ambient.dims[n])
        big_ech = Echelon(field)
        for row in sub_big[n].row_dicts():
            if row:
                big_ech.insert(dict(row))
        for row in sub_small[n].row_dicts():
            res = big_ech.reduce(row)
            if res:
                raise NotSubcomplex(n, "sub_small not inside sub_big", min(res))
        projs.append(proj)
        sects.append(sect)
        dims.append(proj.rows)
        small_echs.append(ech_s)
        big_echs.append(big_ech)
    for n in range(1, top + 1):
        d = ambient.diff[n]
        for row in sub_big[n].row_dicts():
            res = big_echs[n - 1].reduce(d.apply(row))
            if res:
                raise NotSubcomplex(n, "sub_big", min(res))
        for row in sub_small[n].row_dicts():
            res = small_echs[n - 1].reduce(d.apply(row))
            if res:
                raise NotSubcomplex(n, "sub_small", min(res))
    diffs = [projs[n - 1] @ ambient.diff[n] @ sects[n] for n in range(1, top + 1)]
    return ChainComplex(field, dims, diffs), projs, sects


def subquotient_complex(ambient, sub_big, sub_small):
    return subquotient_with_coords(ambient, sub_big, sub_small)[0]
