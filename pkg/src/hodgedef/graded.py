"""Graded spaces, graded maps, filtrations and filtered complexes.

Conventions: differentials have degree +1; W is an increasing filtration,
F a decreasing one; shifting a complex by i flips the differential sign
by (-1)^i and relabels basis elements with a shift tag.
"""

from .linalg import (Subspace, SubQuotient, apply_mat, identity, zeros,
                     adapted_basis, common_adapted_basis)


class GradedSpace:
    """Finite-dimensional graded vector space with labelled bases."""

    def __init__(self, field, dims, labels=None):
        self.field = field
        self.dims = {n: d for n, d in dims.items() if d > 0}
        if labels is None:
            labels = {}
        self.labels = {}
        for n, d in self.dims.items():
            lab = tuple(labels.get(n, tuple("e%d_%d" % (n, i) for i in range(d))))
            if len(lab) != d or len(set(lab)) != d:
                raise ValueError("labels in degree %d must be %d distinct names" % (n, d))
            self.labels[n] = lab

    def dim(self, n):
        return self.dims.get(n, 0)

    def degrees(self):
        return sorted(self.dims)

    def total_dim(self):
        return sum(self.dims.values())

    def zero_vector(self, n):
        return [self.field.zero()] * self.dim(n)

    def basis_vector(self, n, i):
        v = self.zero_vector(n)
        v[i] = self.field.one()
        return v

    def shift(self, i):
        """V[i]^n = V^{n+i}, labels tagged."""
        dims = {n - i: d for n, d in self.dims.items()}
        labels = {n - i: tuple("%s[%d]" % (l, i) for l in self.labels[n])
                  for n in self.dims}
        return GradedSpace(self.field, dims, labels)

    def same_shape(self, other):
        return self.dims == other.dims

    def __repr__(self):
        return "GradedSpace(%s)" % {n: self.dim(n) for n in self.degrees()}


class GradedMap:
    """Degree-d linear map; per-degree matrix blocks act on column vectors."""

    def __init__(self, source, target, degree, blocks=None):
        self.source = source
        self.target = target
        self.degree = degree
        self.blocks = {}
        blocks = blocks or {}
        for n, m in blocks.items():
            rows, cols = target.dim(n + degree), source.dim(n)
            if rows == 0 or cols == 0:
                continue
            if len(m) != rows or any(len(r) != cols for r in m):
                raise ValueError("block in degree %d has wrong shape" % n)
            self.blocks[n] = [[source.field.of(x) for x in r] for r in m]

    def block(self, n):
        rows = self.target.dim(n + self.degree)
        cols = self.source.dim(n)
        if n in self.blocks:
            return self.blocks[n]
        return zeros(self.source.field, rows, cols)

    def apply(self, n, v):
        return apply_mat(self.source.field, self.block(n), v)

    @classmethod
    def identity_map(cls, space):
        return cls(space, space, 0,
                   {n: identity(space.field, space.dim(n)) for n in space.degrees()})

    @classmethod
    def zero_map(cls, source, target, degree=0):
        return cls(source, target, degree, {})

    def compose(self, other):
        """self after other."""
        assert other.target.same_shape(self.source)
        f = self.source.field
        out = {}
        for n in other.source.degrees():
            mid = n + other.degree
            a = self.block(mid)
            b = other.block(n)
            rows = self.target.dim(mid + self.degree)
            cols = other.source.dim(n)
            if rows == 0 or cols == 0:
                continue
            prod = [[f.zero() for _ in range(cols)] for _ in range(rows)]
            for i in range(rows):
                for t in range(self.source.dim(mid)):
                    x = a[i][t]
                    if x:
                        bt = b[t]
                        pi = prod[i]
                        for j in range(cols):
                            if bt[j]:
                                pi[j] = pi[j] + x * bt[j]
            out[n] = prod
        return GradedMap(other.source, self.target, self.degree + other.degree, out)

    def add(self, other):
        assert self.degree == other.degree
        out = {}
        for n in set(self.blocks) | set(other.blocks):
            a, b = self.block(n), other.block(n)
            out[n] = [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]
        return GradedMap(self.source, self.target, self.degree, out)

    def scale(self, c):
        out = {n: [[c * x for x in r] for r in m] for n, m in self.blocks.items()}
        return GradedMap(self.source, self.target, self.degree, out)

    def is_zero(self):
        return all(not x for m in self.blocks.values() for r in m for x in r)

    def shift(self, i):
        """Same blocks viewed between shifted spaces, with the (-1)^i sign."""
        src, tgt = self.source.shift(i), self.target.shift(i)
        sign = self.source.field.of(1 if i % 2 == 0 else -1)
        out = {}
        for n, m in self.blocks.items():
            out[n - i] = [[sign * x for x in r] for r in m]
        return GradedMap(src, tgt, self.degree, out)


class Filtration:
    """Biregular filtration by per-degree subspaces.

    direction +1: increasing (W_k <= W_{k+1}); -1: decreasing (F^p >= F^{p+1}).
    Outside the declared index range the filtration is clamped to 0 / full.
    """

    def __init__(self, space, direction, levels):
        self.space = space
        self.direction = direction
        self.levels = {}
        for k, per_degree in levels.items():
            deg = {}
            for n, sub in per_degree.items():
                if not isinstance(sub, Subspace):
                    sub = Subspace(space.field, space.dim(n), sub)
                assert sub.ambient == space.dim(n)
                deg[n] = sub
            self.levels[k] = deg
        if not self.levels:
            raise ValueError("a filtration needs at least one level")
        self.indices = sorted(self.levels)
        # complete sparse levels: a degree missing at an index inherits the
        # previous level (zero before the first declared one)
        order = self.indices if direction > 0 else self.indices[::-1]
        for n in space.degrees():
            prev = Subspace.zero(space.field, space.dim(n))
            for k in order:
                if n not in self.levels[k]:
                    self.levels[k][n] = prev
                prev = self.levels[k][n]
        self._check_nested()

    def _check_nested(self):
        for n in self.space.degrees():
            prev = None
            order = self.indices if self.direction > 0 else self.indices[::-1]
            for k in order:
                cur = self.levels[k][n]
                if prev is not None and not cur.contains(prev):
                    raise ValueError(
                        "filtration not nested at index %d, degree %d" % (k, n))
                prev = cur

    def at(self, k, n):
        """Subspace at filtration index k in degree n (clamped outside range)."""
        amb = self.space.dim(n)
        f = self.space.field
        if self.direction > 0:
            if k < self.indices[0]:
                return Subspace.zero(f, amb)
            idx = max(i for i in self.indices if i <= k)
        else:
            if k > self.indices[-1]:
                return Subspace.zero(f, amb)
            idx = min(i for i in self.indices if i >= k)
        per = self.levels[idx]
        if n in per:
            return per[n]
        return Subspace.zero(f, amb)

    def is_exhaustive_and_separated(self):
        for n in self.space.degrees():
            if self.direction > 0:
                if not self.at(self.indices[-1], n).is_full():
                    return False
                if not self.at(self.indices[0] - 1, n).is_zero():
                    return False
            else:
                if not self.at(self.indices[0], n).is_full():
                    return False
                if not self.at(self.indices[-1] + 1, n).is_zero():
                    return False
        return True

    def jump_range(self):
        return self.indices[0], self.indices[-1]

    def chain(self, n):
        """Increasing chain of subspaces in degree n, ending at full."""
        f = self.space.field
        amb = self.space.dim(n)
        ks = list(self.indices)
        if self.direction < 0:
            ks = ks[::-1]
        out = [self.at(k, n) for k in ks]
        if not out or not out[-1].is_full():
            out.append(Subspace.full(f, amb))
        return out

    def shift_index(self, r):
        """W[r]_k := W_{k-r} (same spaces, reindexed)."""
        return Filtration(self.space, self.direction,
                          {k + r: per for k, per in self.levels.items()})

    def tensor_with_extension(self, space_ext):
        levels = {k: {n: sub.tensor_with_extension(space_ext.field)
                      for n, sub in per.items()}
                  for k, per in self.levels.items()}
        return Filtration(space_ext, self.direction, levels)

    def weight_of_vector(self, n, v):
        """Least index k (direction +1) resp. greatest p (direction -1) containing v."""
        ks = self.indices if self.direction > 0 else self.indices[::-1]
        result = None
        for k in ks:
            if self.at(k, n).contains_vector(v):
                result = k
                if self.direction > 0:
                    return k
            elif self.direction < 0:
                return result
        return result


def trivial_weight_filtration(space, weight=0):
    full = {n: Subspace.full(space.field, space.dim(n)) for n in space.degrees()}
    zero = {n: Subspace.zero(space.field, space.dim(n)) for n in space.degrees()}
    return Filtration(space, +1, {weight - 1: zero, weight: full})


def trivial_hodge_filtration(space, level=0):
    full = {n: Subspace.full(space.field, space.dim(n)) for n in space.degrees()}
    zero = {n: Subspace.zero(space.field, space.dim(n)) for n in space.degrees()}
    return Filtration(space, -1, {level: full, level + 1: zero})


class FilteredComplex:
    """Bounded complex with differential of degree +1 and named filtrations."""

    def __init__(self, space, differential, filtrations=None, check=True):
        self.space = space
        self.d = differential
        self.filtrations = dict(filtrations or {})
        if check:
            self._validate()

    def _validate(self):
        dd = self.d.compose(self.d)
        if not dd.is_zero():
            raise ValueError("differential does not square to zero")
        for name, filt in self.filtrations.items():
            lo, hi = filt.jump_range()
            for k in range(lo, hi + 1):
                for n in self.space.degrees():
                    sub = filt.at(k, n)
                    img = sub.map_by(self.d.block(n), self.space.dim(n + 1))
                    if not filt.at(k, n + 1).contains(img):
                        raise ValueError(
                            "differential does not preserve filtration %r "
                            "at level %d, degree %d" % (name, k, n))

    def field(self):
        return self.space.field

    def shift(self, i):
        """K[i] with d -> (-1)^i d; W gets reindexed by i, F does not."""
        space = self.space.shift(i)
        d = self.d.shift(i)
        filts = {}
        for name, filt in self.filtrations.items():
            levels = {}
            for k, per in filt.levels.items():
                kk = k + i if filt.direction > 0 else k
                levels[kk] = {n - i: sub for n, sub in per.items()}
            filts[name] = Filtration(space, filt.direction, levels)
        return FilteredComplex(space, d, filts, check=False)

    def cohomology_quotient(self, n):
        """SubQuotient ker d^n / im d^{n-1} inside degree n."""
        f = self.field()
        amb = self.space.dim(n)
        from .linalg import kernel_subspace, image_subspace
        z = kernel_subspace(f, self.d.block(n), amb)
        b = image_subspace(f, self.d.block(n - 1), amb)
        return SubQuotient(b, z)


class CohomologySpace:
    """H^n with its basis of representative cocycles and induced filtrations."""

    def __init__(self, complex_, n):
        self.complex = complex_
        self.n = n
        self.quot = complex_.cohomology_quotient(n)
        self.dim = self.quot.dim
        self.filtrations = {}
        for name, filt in complex_.filtrations.items():
            lo, hi = filt.jump_range()
            levels = {}
            for k in range(lo - 1, hi + 2):
                levels[k] = {0: self.quot.project_subspace(filt.at(k, n))}
            self.filtrations[name] = (filt.direction, levels)

    def filtration_subspace(self, name, k):
        direction, levels = self.filtrations[name]
        if k in levels:
            return levels[k][0]
        ks = sorted(levels)
        f = self.complex.field()
        if direction > 0:
            if k < ks[0]:
                return Subspace.zero(f, self.dim)
            return levels[max(i for i in ks if i <= k)][0]
        if k > ks[-1]:
            return Subspace.zero(f, self.dim)
        return levels[min(i for i in ks if i >= k)][0]


def cohomology(complex_, n):
    """H^n(K) with the filtrations induced by every declared filtration."""
    return CohomologySpace(complex_, n)


def graded_piece(complex_, name, k):
    """Gr_k of the named filtration, as a complex with the other filtrations."""
    filt = complex_.filtrations[name]
    f = complex_.field()
    quots = {}
    dims = {}
    for n in complex_.space.degrees():
        top = filt.at(k, n)
        below = filt.at(k - 1, n) if filt.direction > 0 else filt.at(k + 1, n)
        sq = SubQuotient(below, top)
        quots[n] = sq
        if sq.dim:
            dims[n] = sq.dim
    space = GradedSpace(f, dims)
    blocks = {}
    for n in space.degrees():
        m = n + 1
        tq = quots.get(m)
        if tq is None or tq.dim == 0:
            continue
        blocks[n] = quots[n].induced_matrix(complex_.d.block(n), tq)
    d = GradedMap(space, space, 1, blocks)
    filts = {}
    for other, of in complex_.filtrations.items():
        if other == name:
            continue
        levels = {}
        lo, hi = of.jump_range()
        for j in range(lo, hi + 1):
            levels[j] = {n: quots[n].project_subspace(of.at(j, n))
                         for n in space.degrees()}
        filts[other] = Filtration(space, of.direction, levels)
    return FilteredComplex(space, d, filts, check=False), quots


class QisVerdict:
    def __init__(self, ok, failure=None, detail=""):
        self.ok = ok
        self.failure = failure
        self.detail = detail

    def __bool__(self):
        return self.ok

    def __repr__(self):
        return "QisVerdict(ok=%s%s)" % (self.ok,
                                        "" if self.ok else ", failure=%r %s" % (self.failure, self.detail))


def _map_preserves_filtration(fmap, filt_s, filt_t):
    lo, hi = filt_s.jump_range()
    for k in range(lo, hi + 1):
        for n in fmap.source.degrees():
            img = filt_s.at(k, n).map_by(fmap.block(n), fmap.target.dim(n))
            if not filt_t.at(k, n).contains(img):
                return (k, n)
    return None


def _is_quasi_isomorphism(fmap, src, tgt):
    """fmap: chain map of complexes src -> tgt; checks iso on all H^n."""
    degs = sorted(set(src.space.degrees()) | set(tgt.space.degrees()))
    for n in degs:
        hs = src.cohomology_quotient(n)
        ht = tgt.cohomology_quotient(n)
        if hs.dim != ht.dim:
            return False
        m = hs.induced_matrix(fmap.block(n), ht)
        from .linalg import rank
        if rank(src.field(), m) != hs.dim:
            return False
    return True


def filtered_qis_check(fmap, source, target, names=("W",), bifiltered=None):
    """True iff fmap induces isos on H of every graded piece.

    names: the filtrations to grade by.  With bifiltered=(wname, fname) the
    check runs on Gr^W_k Gr_F^p for all (k, p) instead.
    """
    f = source.field()
    dc = target.d.compose(fmap)
    cd = fmap.compose(source.d)
    diff = dc.add(cd.scale(f.of(-1)))
    if not diff.is_zero():
        raise ValueError("map does not commute with the differentials")
    for name in (names if bifiltered is None else bifiltered):
        bad = _map_preserves_filtration(fmap, source.filtrations[name],
                                        target.filtrations[name])
        if bad is not None:
            raise ValueError("map does not preserve filtration %r at %r" % (name, bad))
    if bifiltered is not None:
        wname, fname = bifiltered
        wlo_s, whi_s = source.filtrations[wname].jump_range()
        wlo_t, whi_t = target.filtrations[wname].jump_range()
        for k in range(min(wlo_s, wlo_t), max(whi_s, whi_t) + 1):
            gs, qs = graded_piece(source, wname, k)
            gt, qt = graded_piece(target, wname, k)
            gmap = _induced_map_on_graded(fmap, qs, qt, gs, gt)
            plo1, phi1 = gs.filtrations[fname].jump_range() if gs.space.total_dim() else (0, -1)
            plo2, phi2 = gt.filtrations[fname].jump_range() if gt.space.total_dim() else (0, -1)
            for p in range(min(plo1, plo2, 0), max(phi1, phi2) + 1):
                ggs, qqs = graded_piece(gs, fname, p) if gs.space.total_dim() else (gs, {})
                ggt, qqt = graded_piece(gt, fname, p) if gt.space.total_dim() else (gt, {})
                ggmap = _induced_map_on_graded(gmap, qqs, qqt, ggs, ggt)
                if not _is_quasi_isomorphism(ggmap, ggs, ggt):
                    return QisVerdict(False, (k, p),
                                      "Gr^W_%d Gr_F^%d is not a quasi-isomorphism" % (k, p))
        return QisVerdict(True)
    for name in names:
        lo_s, hi_s = source.filtrations[name].jump_range()
        lo_t, hi_t = target.filtrations[name].jump_range()
        for k in range(min(lo_s, lo_t), max(hi_s, hi_t) + 1):
            gs, qs = graded_piece(source, name, k)
            gt, qt = graded_piece(target, name, k)
            gmap = _induced_map_on_graded(fmap, qs, qt, gs, gt)
            if not _is_quasi_isomorphism(gmap, gs, gt):
                return QisVerdict(False, (k,),
                                  "Gr_%d(%s) is not a quasi-isomorphism" % (k, name))
    return QisVerdict(True)


def _induced_map_on_graded(fmap, qs, qt, gs, gt):
    blocks = {}
    for n in gs.space.degrees():
        tq = qt.get(n)
        if tq is None or tq.dim == 0:
            continue
        blocks[n] = qs[n].induced_matrix(fmap.block(n), tq)
    return GradedMap(gs.space, gt.space, 0, blocks)


class SpectralPages:
    """E_0 and E_1 of the spectral sequence of an increasing filtration.

    Indexing follows the decreasing -k convention: entry (k, q) holds
    E^{-k,q} located in total degree -k+q, i.e. Gr_k K^{-k+q} on page 0.
    """

    def __init__(self, e0, e1, d0_rank, f_dims0, f_dims1):
        self.e0 = e0
        self.e1 = e1
        self.d0_rank = d0_rank
        self.f_dims0 = f_dims0
        self.f_dims1 = f_dims1

    def e0_dim(self, k, q):
        return self.e0.get((k, q), 0)

    def e1_dim(self, k, q):
        return self.e1.get((k, q), 0)


def spectral_pages(complex_, wname="W", fname=None):
    """E_0/E_1 tables of the increasing filtration wname, with induced F dims."""
    filt = complex_.filtrations[wname]
    assert filt.direction > 0, "spectral_pages expects an increasing filtration"
    lo, hi = filt.jump_range()
    e0, e1, d0rk = {}, {}, {}
    fdims0, fdims1 = {}, {}
    for k in range(lo, hi + 1):
        g, _ = graded_piece(complex_, wname, k)
        for n in g.space.degrees():
            e0[(k, n + k)] = g.space.dim(n)
            if fname and fname in g.filtrations:
                gf = g.filtrations[fname]
                plo, phi = gf.jump_range()
                for p in range(plo, phi + 1):
                    d = gf.at(p, n).dim
                    if d:
                        fdims0[(k, n + k, p)] = d
        from .linalg import rank
        for n in g.space.degrees():
            d0rk[(k, n + k)] = rank(g.space.field, g.d.block(n))
        degs = sorted(set(g.space.degrees()) | set(n + 1 for n in g.space.degrees())
                      | set(n - 1 for n in g.space.degrees()))
        for n in degs:
            h = CohomologySpace(g, n)
            if h.dim:
                e1[(k, n + k)] = h.dim
                if fname and fname in h.filtrations:
                    direction, levels = h.filtrations[fname]
                    for p in sorted(levels):
                        d = levels[p][0].dim
                        if d:
                            fdims1[(k, n + k, p)] = d
    return SpectralPages(e0, e1, d0rk, fdims0, fdims1)
