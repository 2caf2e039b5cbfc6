"""Pure and mixed Hodge structures, their validators and the Deligne
splitting; mixed Hodge diagrams (zigzags of filtered complexes) with the
three standard constructions: cohomology, shift, cone.

The complex numbers are modelled by the quadratic extension k0(i); the
Galois conjugation is the complex conjugation of the theory.
"""

from .scalars import QQ, QQ_I
from .graded import (CohomologySpace, FilteredComplex, Filtration, GradedMap,
                     GradedSpace, cohomology, filtered_qis_check, graded_piece)
from .linalg import Subspace, SubQuotient, apply_mat, inverse, rank


def _clamp(levels, direction, k, dim):
    ks = sorted(levels)
    if direction > 0:
        if k < ks[0]:
            return Subspace.zero(levels[ks[0]].field, dim)
        return levels[max(i for i in ks if i <= k)]
    if k > ks[-1]:
        return Subspace.zero(levels[ks[0]].field, dim)
    return levels[min(i for i in ks if i >= k)]


class MixedHodgeStructure:
    """W over k0 on a vector space K; F over k0(i) on K (x) k0(i)."""

    def __init__(self, dim, weight_levels, hodge_levels, labels=None):
        self.dim = dim
        self.labels = tuple(labels) if labels else tuple("v%d" % i for i in range(dim))
        self.W = {}
        for k, sub in weight_levels.items():
            if not isinstance(sub, Subspace):
                sub = Subspace(QQ, dim, sub)
            assert sub.field is QQ and sub.ambient == dim
            self.W[k] = sub
        self.F = {}
        for p, sub in hodge_levels.items():
            if not isinstance(sub, Subspace):
                sub = Subspace(QQ_I, dim, sub)
            assert sub.ambient == dim
            self.F[p] = sub
        if not self.W or not self.F:
            raise ValueError("a mixed Hodge structure needs W and F levels")
        for d, direction in ((self.W, +1), (self.F, -1)):
            ks = sorted(d)
            prev = None
            for k in (ks if direction > 0 else ks[::-1]):
                if prev is not None and not d[k].contains(prev):
                    raise ValueError("filtration levels not nested at %d" % k)
                prev = d[k]

    def w_at(self, k):
        return _clamp(self.W, +1, k, self.dim)

    def f_at(self, p):
        return _clamp(self.F, -1, p, self.dim)

    def w_range(self):
        ks = sorted(self.W)
        return ks[0], ks[-1]

    def f_range(self):
        ks = sorted(self.F)
        return ks[0], ks[-1]

    def weights_with_dims(self):
        lo, hi = self.w_range()
        out = {}
        for k in range(lo, hi + 1):
            d = self.w_at(k).dim - self.w_at(k - 1).dim
            if d:
                out[k] = d
        return out

    def dual(self):
        """Dual MHS: W_k(K*) = ann W_{-k-1}, F^p(K*) = ann F^{1-p}."""
        wlo, whi = self.w_range()
        w = {}
        for k in range(-whi - 1, -wlo + 1):
            w[k] = annihilator(self.w_at(-k - 1), QQ)
        flo, fhi = self.f_range()
        f = {}
        for p in range(-fhi, -flo + 2):
            f[p] = annihilator(self.f_at(1 - p), QQ_I)
        return MixedHodgeStructure(self.dim, w, f)

    def restrict(self, sub_qq):
        """MHS induced on a W- and F-compatible subspace given over k0."""
        q = SubQuotient(Subspace.zero(QQ, self.dim), sub_qq)
        w = {k: q.project_subspace(self.w_at(k).intersect(sub_qq))
             for k in range(self.w_range()[0] - 1, self.w_range()[1] + 1)}
        sub_ext = sub_qq.tensor_with_extension(QQ_I)
        q_ext = SubQuotient(Subspace.zero(QQ_I, self.dim), sub_ext)
        f = {p: q_ext.project_subspace(self.f_at(p).intersect(sub_ext))
             for p in range(self.f_range()[0], self.f_range()[1] + 2)}
        return MixedHodgeStructure(sub_qq.dim, w, f)


def annihilator(sub, field):
    """Annihilator of a subspace in the dual, in dual coordinates."""
    from .linalg import kernel_basis
    if sub.dim == 0:
        return Subspace.full(field, sub.ambient)
    m = [list(r) for r in sub.rows]
    return Subspace(field, sub.ambient, kernel_basis(field, m, sub.ambient))


class PureHodgeStructure:
    """Weight-k structure given by its bigrading K^{p,q} over the extension."""

    def __init__(self, dim, weight, bigrading):
        self.dim = dim
        self.weight = weight
        self.pieces = {}
        for (p, q), sub in bigrading.items():
            if not isinstance(sub, Subspace):
                sub = Subspace(QQ_I, dim, sub)
            if sub.dim:
                self.pieces[(p, q)] = sub
        total = Subspace.zero(QQ_I, dim)
        count = 0
        for (p, q), sub in self.pieces.items():
            if p + q != weight:
                raise ValueError("bigrading piece (%d,%d) off weight %d" % (p, q, weight))
            total = total.add(sub)
            count += sub.dim
        if count != dim or total.dim != dim:
            raise ValueError("bigrading does not decompose the space")
        for (p, q), sub in self.pieces.items():
            if sub.conjugate() != self.pieces.get((q, p), Subspace.zero(QQ_I, dim)):
                raise ValueError("conjugation does not exchange (%d,%d) and (%d,%d)"
                                 % (p, q, q, p))

    def hodge_filtration(self):
        ps = sorted({p for (p, q) in self.pieces})
        out = {}
        for p in range(min(ps), max(ps) + 2):
            acc = Subspace.zero(QQ_I, self.dim)
            for (pp, qq), sub in self.pieces.items():
                if pp >= p:
                    acc = acc.add(sub)
            out[p] = acc
        return out

    def to_mhs(self):
        w = {self.weight - 1: Subspace.zero(QQ, self.dim),
             self.weight: Subspace.full(QQ, self.dim)}
        return MixedHodgeStructure(self.dim, w, self.hodge_filtration())


class MHSVerdict:
    def __init__(self, ok, failure=None, detail=""):
        self.ok = ok
        self.failure = failure
        self.detail = detail

    def __bool__(self):
        return self.ok

    def __repr__(self):
        return "MHSVerdict(ok=%s%s)" % (self.ok, "" if self.ok else ", %s" % self.detail)


def _graded_conj(quot):
    """Semilinear conjugation matrix on subquotient coordinates."""
    cols = []
    for r in quot.reps:
        rc = [x.conjugate() for x in r]
        cols.append(quot.coords(rc))
    return [[cols[j][i] for j in range(quot.dim)] for i in range(quot.dim)]


def _conj_subspace(sub, conj_matrix):
    """sigma(S) for the semilinear sigma(v) = C . conj(v)."""
    rows = []
    for r in sub.rows:
        rc = [x.conjugate() for x in r]
        rows.append(apply_mat(QQ_I, conj_matrix, rc))
    return Subspace(QQ_I, sub.ambient, rows)


def _purity_pieces(dim, weight, f_levels, conj_matrix):
    """Try to decompose a space as (+) F^p cap conj(F^{w-p}); None if impure."""
    def f_at(p):
        return _clamp(f_levels, -1, p, dim)
    ps = sorted(f_levels)
    pieces = {}
    total = Subspace.zero(QQ_I, dim)
    count = 0
    for p in range(ps[0] - 1, ps[-1] + 1):
        q = weight - p
        piece = f_at(p).intersect(_conj_subspace(f_at(q), conj_matrix))
        if piece.dim:
            pieces[(p, q)] = piece
            total = total.add(piece)
            count += piece.dim
    if count != dim or total.dim != dim:
        return None
    # F must be recovered from the pieces: F^p = (+)_{p' >= p} K^{p',q'}
    for p in range(ps[0], ps[-1] + 1):
        acc = Subspace.zero(QQ_I, dim)
        for (pp, qq), sub in pieces.items():
            if pp >= p:
                acc = acc.add(sub)
        if acc != f_at(p):
            return None
    return pieces


def validate_mhs(m):
    """Check that each Gr^W_k with the induced F is pure of weight k."""
    lo, hi = m.w_range()
    for k in range(lo, hi + 1):
        wk = m.w_at(k).tensor_with_extension(QQ_I)
        wk1 = m.w_at(k - 1).tensor_with_extension(QQ_I)
        quot = SubQuotient(wk1, wk)
        if quot.dim == 0:
            continue
        flo, fhi = m.f_range()
        f_levels = {p: quot.project_subspace(m.f_at(p).intersect(wk))
                    for p in range(flo, fhi + 2)}
        conj = _graded_conj(quot)
        pieces = _purity_pieces(quot.dim, k, f_levels, conj)
        if pieces is None:
            return MHSVerdict(False, k,
                              "Gr^W_%d with the induced F is not pure of weight %d" % (k, k))
    return MHSVerdict(True)


def hodge_numbers(m):
    """dim Gr_F^p Gr^W_k over all (p, k) present."""
    out = {}
    lo, hi = m.w_range()
    for k in range(lo, hi + 1):
        wk = m.w_at(k).tensor_with_extension(QQ_I)
        wk1 = m.w_at(k - 1).tensor_with_extension(QQ_I)
        quot = SubQuotient(wk1, wk)
        if quot.dim == 0:
            continue
        flo, fhi = m.f_range()
        prev = None
        for p in range(fhi + 1, flo - 1, -1):
            cur = quot.project_subspace(m.f_at(p).intersect(wk))
            d = cur.dim - (prev.dim if prev is not None else 0)
            if d:
                out[(p, k - p)] = d
            prev = cur
    return out


def deligne_splitting(m):
    """The Deligne bigrading I^{p,q} of a mixed Hodge structure.

    Uses the classical formula
        I^{p,q} = F^p cap W_{p+q} cap (conj F^q cap W_{p+q}
                   + sum_{j>=2} conj F^{q-j+1} cap W_{p+q-j})
    and fails loudly if the computed pieces do not sum directly.
    """
    v = validate_mhs(m)
    if not v.ok:
        raise ValueError("not a mixed Hodge structure: %s" % v.detail)
    dim = m.dim
    wlo, whi = m.w_range()
    flo, fhi = m.f_range()
    qlo, qhi = -fhi + wlo - 1, -flo + whi + 1

    def w_ext(k):
        return m.w_at(k).tensor_with_extension(QQ_I)

    def fbar(q):
        return m.f_at(q).conjugate()

    pieces = {}
    for p in range(flo - 1, fhi + 1):
        for q in range(qlo, qhi + 1):
            k = p + q
            if k < wlo - 1 or k > whi:
                continue
            inner = fbar(q).intersect(w_ext(k))
            j = 2
            while k - j >= wlo - 1:
                inner = inner.add(fbar(q - j + 1).intersect(w_ext(k - j)))
                j += 1
            piece = m.f_at(p).intersect(w_ext(k)).intersect(inner)
            if piece.dim:
                pieces[(p, q)] = piece
    total = Subspace.zero(QQ_I, dim)
    count = 0
    for sub in pieces.values():
        total = total.add(sub)
        count += sub.dim
    if count != dim or total.dim != dim:
        raise ArithmeticError(
            "Deligne splitting failed: pieces of total dimension %d in a %d-dim space"
            % (count, dim))
    # projection I^{p,q} -> K^{p,q} inside Gr^W_{p+q} must be an isomorphism
    for (p, q), sub in pieces.items():
        k = p + q
        quot = SubQuotient(w_ext(k - 1), w_ext(k))
        img = Subspace(QQ_I, quot.dim, [quot.coords(r) for r in sub.rows])
        if img.dim != sub.dim:
            raise ArithmeticError("I^{%d,%d} does not inject into Gr^W_%d" % (p, q, k))
        flo2, fhi2 = m.f_range()
        f_levels = {pp: quot.project_subspace(m.f_at(pp).intersect(w_ext(k)))
                    for pp in range(flo2, fhi2 + 2)}
        conj = _graded_conj(quot)
        kpq = _clamp(f_levels, -1, p, quot.dim).intersect(
            _conj_subspace(_clamp(f_levels, -1, q, quot.dim), conj))
        if img != kpq:
            raise ArithmeticError(
                "I^{%d,%d} does not project onto K^{%d,%d}" % (p, q, p, q))
    return pieces


def splitting_weight_grading(pieces, dim):
    out = {}
    for (p, q), sub in pieces.items():
        k = p + q
        out[k] = out.get(k, Subspace.zero(QQ_I, dim)).add(sub)
    return out


class MHSMorphism:
    """Morphism of MHS: a k0-matrix preserving W; its extension preserves F."""

    def __init__(self, source, target, matrix):
        self.source = source
        self.target = target
        self.matrix = [[QQ.of(x) for x in row] for row in matrix]
        if len(self.matrix) != target.dim or any(len(r) != source.dim for r in self.matrix):
            raise ValueError("morphism matrix has the wrong shape")
        wlo, whi = source.w_range()
        for k in range(wlo, whi + 1):
            img = source.w_at(k).map_by(self.matrix, target.dim)
            if not target.w_at(k).contains(img):
                raise ValueError("morphism does not preserve W at %d" % k)
        ext = self.ext_matrix()
        flo, fhi = source.f_range()
        for p in range(flo, fhi + 1):
            img = source.f_at(p).map_by(ext, target.dim)
            if not target.f_at(p).contains(img):
                raise ValueError("morphism does not preserve F at %d" % p)

    def ext_matrix(self):
        return [[QQ_I.of(x) for x in row] for row in self.matrix]

    def is_strict(self):
        """f(W_k source) = f(source) cap W_k(target), same for F."""
        full_img = Subspace.full(QQ, self.source.dim).map_by(self.matrix, self.target.dim)
        wlo, whi = self.source.w_range()
        tlo, thi = self.target.w_range()
        for k in range(min(wlo, tlo) - 1, max(whi, thi) + 1):
            lhs = self.source.w_at(k).map_by(self.matrix, self.target.dim)
            rhs = full_img.intersect(self.target.w_at(k))
            if lhs != rhs:
                return False
        ext = self.ext_matrix()
        full_ext = Subspace.full(QQ_I, self.source.dim).map_by(ext, self.target.dim)
        flo, fhi = self.source.f_range()
        glo, ghi = self.target.f_range()
        for p in range(min(flo, glo), max(fhi, ghi) + 2):
            lhs = self.source.f_at(p).map_by(ext, self.target.dim)
            rhs = full_ext.intersect(self.target.f_at(p))
            if lhs != rhs:
                return False
        return True


def ext_filtered_complex(k):
    """A filtered complex over k0 viewed over the extension field."""
    space = GradedSpace(QQ_I, dict(k.space.dims), dict(k.space.labels))
    blocks = {n: [[QQ_I.of(x) for x in row] for row in m]
              for n, m in k.d.blocks.items()}
    d = GradedMap(space, space, 1, blocks)
    filts = {name: f.tensor_with_extension(space) for name, f in k.filtrations.items()}
    return FilteredComplex(space, d, filts, check=False)


class MixedHodgeDiagram:
    """Zigzag: base component over k0 with W, intermediates over the extension
    with W, a final component with (W, F); comparison maps along edges.

    components[0] is the base; components[-1] carries F.  Comparisons are
    (i, j, GradedMap) acting over the extension field (the base component is
    promoted via the extension of scalars).
    """

    def __init__(self, components, comparisons, check_shapes=True):
        if not components:
            raise ValueError("empty diagram")
        self.components = list(components)
        self.base = components[0]
        self.last = components[-1]
        if "W" not in self.base.filtrations:
            raise ValueError("base component must carry W")
        if "F" not in self.last.filtrations and len(components) > 1:
            raise ValueError("final component must carry F")
        self._ext = [ext_filtered_complex(self.base)] + list(self.components[1:])
        self.comparisons = list(comparisons)
        if check_shapes:
            for (i, j, f) in self.comparisons:
                if not (0 <= i < len(components) and 0 <= j < len(components)):
                    raise ValueError("comparison endpoints out of range")

    @classmethod
    def identity_diagram(cls, base, hodge_filtration):
        """Two-component diagram base -> base(x)ext with an identity comparison."""
        ext = ext_filtered_complex(base)
        filts = dict(ext.filtrations)
        filts["F"] = hodge_filtration
        last = FilteredComplex(ext.space, ext.d, filts, check=True)
        comp = GradedMap.identity_map(last.space)
        return cls([base, last], [(0, 1, comp)])

    def ext_component(self, i):
        return self._ext[i]

    def n_components(self):
        return len(self.components)

    def zigzag_path(self):
        """Edges (edge_index, forward?) forming a path 0 -> last component."""
        adj = {}
        for e, (i, j, f) in enumerate(self.comparisons):
            adj.setdefault(i, []).append((j, e, True))
            adj.setdefault(j, []).append((i, e, False))
        target = len(self.components) - 1
        seen = {0: None}
        queue = [0]
        while queue:
            cur = queue.pop(0)
            if cur == target:
                break
            for (nxt, e, fwd) in adj.get(cur, []):
                if nxt not in seen:
                    seen[nxt] = (cur, e, fwd)
                    queue.append(nxt)
        if target not in seen:
            raise ValueError("comparison zigzag does not connect base to the final component")
        path = []
        cur = target
        while cur != 0:
            prev, e, fwd = seen[cur]
            path.append((e, fwd))
            cur = prev
        return path[::-1]


def _induced_h_matrix(fmap, hs, ht, n):
    return hs.quot.induced_matrix(fmap.block(n), ht.quot)


def _compose_path_matrix(diagram, n, comps_h, path):
    """Iso H^n(ext base) -> H^n(last) composed along the zigzag path."""
    mat = None
    cur = 0
    for (e, fwd) in path:
        i, j, f = diagram.comparisons[e]
        hs, ht = comps_h[i], comps_h[j]
        m = _induced_h_matrix(f, hs, ht, n)
        if not fwd:
            m = inverse(QQ_I, m)
            if m is None:
                raise ArithmeticError("comparison is not invertible on cohomology")
        mat = m if mat is None else mat_mul_ext(m, mat)
        cur = j if fwd else i
    if mat is None:
        h = comps_h[0]
        mat = [[QQ_I.one() if a == b else QQ_I.zero() for b in range(h.dim)]
               for a in range(h.dim)]
    return mat


def mat_mul_ext(a, b):
    from .linalg import mat_mul
    return mat_mul(QQ_I, a, b)


class MHCVerdict:
    def __init__(self, ok, axiom=None, where=None, detail=""):
        self.ok = ok
        self.axiom = axiom
        self.where = where
        self.detail = detail

    def __bool__(self):
        return self.ok

    def __repr__(self):
        if self.ok:
            return "MHCVerdict(ok=True)"
        return "MHCVerdict(ok=False, axiom=%r, where=%r, %s)" % (
            self.axiom, self.where, self.detail)


def validate_mhc(diagram):
    """Axioms of a mixed Hodge complex, first failure reported.

    axiom "comparisons": every comparison is a filtered quasi-isomorphism;
    axiom 1: finite-dimensional cohomology (automatic here, still computed);
    axiom 2: d strictly compatible with F on each Gr^W_k of the F-component;
    axiom 3: H^n(Gr^W_k) pure of weight k+n.
    """
    path = diagram.zigzag_path()
    # axiom 1 family: bounded complexes with biregular filtrations and
    # finite-dimensional cohomology; at finite dimension the live check is
    # that every filtration is exhaustive and separated
    for idx, comp in enumerate(diagram.components):
        for name, filt in comp.filtrations.items():
            if not filt.is_exhaustive_and_separated():
                return MHCVerdict(False, 1, (idx, name),
                                  "filtration %s of component %d is not biregular"
                                  % (name, idx))
    # comparisons: chain maps preserving W and filtered quasi-isomorphisms
    for e, (i, j, fmap) in enumerate(diagram.comparisons):
        src = diagram.ext_component(i)
        tgt = diagram.ext_component(j)
        try:
            v = filtered_qis_check(fmap, src, tgt, names=("W",))
        except ValueError as exc:
            return MHCVerdict(False, "comparisons", (i, j), str(exc))
        if not v.ok:
            return MHCVerdict(False, "comparisons", (i, j),
                              "comparison %d->%d fails at Gr_%s" % (i, j, v.failure))
    last = diagram.last
    wlo, whi = last.filtrations["W"].jump_range()
    # axiom 2: strictness of d on Gr^W_k with respect to F
    for k in range(wlo, whi + 1):
        g, _ = graded_piece(last, "W", k)
        if "F" not in g.filtrations:
            continue
        ff = g.filtrations["F"]
        plo, phi = ff.jump_range()
        for n in g.space.degrees():
            dmat = g.d.block(n)
            img = Subspace.full(QQ_I, g.space.dim(n)).map_by(dmat, g.space.dim(n + 1))
            for p in range(plo, phi + 1):
                lhs = ff.at(p, n).map_by(dmat, g.space.dim(n + 1))
                rhs = img.intersect(ff.at(p, n + 1))
                if lhs != rhs:
                    return MHCVerdict(False, 2, (k, n, p),
                                      "d F^%d != F^%d cap im d on Gr^W_%d degree %d"
                                      % (p, p, k, n))
    # axiom 3: purity of H^n(Gr^W_k) of weight k + n
    base_w = diagram.base.filtrations["W"]
    blo, bhi = base_w.jump_range()
    for k in range(min(wlo, blo), max(whi, bhi) + 1):
        graded_comps = []
        quots = []
        for idx in range(diagram.n_components()):
            g, q = graded_piece(diagram.ext_component(idx), "W", k)
            graded_comps.append(g)
            quots.append(q)
        degrees = sorted({n for g in graded_comps for n in g.space.degrees()})
        for n in degrees:
            comps_h = [CohomologySpace(g, n) for g in graded_comps]
            dims = {h.dim for h in comps_h}
            if len(dims) > 1:
                return MHCVerdict(False, "comparisons", (k, n),
                                  "graded cohomology dimensions disagree")
            h0 = comps_h[0]
            if h0.dim == 0:
                continue
            # comparisons on graded pieces: rebuild edge maps on Gr
            gr_edges = []
            for (i, j, fmap) in diagram.comparisons:
                blocks = {}
                for m in graded_comps[i].space.degrees():
                    tq = quots[j].get(m)
                    if tq is None or tq.dim == 0:
                        continue
                    blocks[m] = quots[i][m].induced_matrix(fmap.block(m), tq)
                gr_edges.append(GradedMap(graded_comps[i].space, graded_comps[j].space, 0, blocks))
            gr_diagram_comparisons = [(i, j, g) for ((i, j, _), g)
                                      in zip(diagram.comparisons, gr_edges)]
            shadow = _PathShadow(gr_diagram_comparisons)
            mat = _compose_path_matrix(shadow, n, comps_h, path)
            hlast = comps_h[-1]
            direction, levels = hlast.filtrations.get("F", (None, None))
            if levels is None:
                return MHCVerdict(False, 3, (k, n), "final component carries no F")
            minv = inverse(QQ_I, mat)
            if minv is None:
                return MHCVerdict(False, "comparisons", (k, n),
                                  "zigzag not invertible on graded cohomology")
            f_levels = {}
            for p in sorted(levels):
                rows = [apply_mat(QQ_I, minv, r) for r in levels[p][0].rows]
                f_levels[p] = Subspace(QQ_I, h0.dim, rows)
            conj = _graded_conj_h(h0)
            pieces = _purity_pieces(h0.dim, k + n, f_levels, conj)
            if pieces is None:
                return MHCVerdict(False, 3, (k, n),
                                  "H^%d(Gr^W_%d) is not pure of weight %d" % (n, k, k + n))
    return MHCVerdict(True)


class _PathShadow:
    def __init__(self, comparisons):
        self.comparisons = comparisons


def _graded_conj_h(h):
    cols = []
    for r in h.quot.reps:
        rc = [x.conjugate() for x in r]
        cols.append(h.quot.coords(rc))
    return [[cols[j][i] for j in range(h.dim)] for i in range(h.dim)]


def mhc_cohomology(diagram, n):
    """The mixed Hodge structure on H^n: induced W[n] and transported F."""
    h_base = cohomology(diagram.base, n)
    if h_base.dim == 0:
        return MixedHodgeStructure(0, {0: Subspace.zero(QQ, 0)},
                                   {0: Subspace.full(QQ_I, 0), 1: Subspace.zero(QQ_I, 0)})
    comps_h = [cohomology(diagram.ext_component(i), n)
               for i in range(diagram.n_components())]
    path = diagram.zigzag_path()
    mat = _compose_path_matrix(diagram, n, comps_h, path)
    minv = inverse(QQ_I, mat)
    if minv is None:
        raise ArithmeticError("zigzag does not invert on H^%d" % n)
    # align H(base (x) ext) with H(base) (x) ext
    h0_ext = comps_h[0]
    change = [h0_ext.quot.coords([QQ_I.of(x) for x in rep]) for rep in h_base.quot.reps]
    change = [[change[j][i] for j in range(len(change))] for i in range(h0_ext.dim)]
    change_inv = inverse(QQ_I, change)
    hlast = comps_h[-1]
    direction, levels = hlast.filtrations.get("F", (None, None))
    if levels is None:
        raise ValueError("final component carries no F")
    f_levels = {}
    for p in sorted(levels):
        rows = [apply_mat(QQ_I, change_inv, apply_mat(QQ_I, minv, r))
                for r in levels[p][0].rows]
        f_levels[p] = Subspace(QQ_I, h_base.dim, rows)
    wdir, wlevels = h_base.filtrations["W"]
    w_levels = {k + n: wlevels[k][0] for k in sorted(wlevels)}
    return MixedHodgeStructure(h_base.dim, w_levels, f_levels)


def _cone_space(src_space, tgt_space, desuspended):
    degs = set()
    for n in src_space.degrees():
        degs.add(n if desuspended else n - 1)
    for n in tgt_space.degrees():
        degs.add(n + 1 if desuspended else n)
    out_dims = {}
    out_labels = {}
    parts = {}
    for n in sorted(degs):
        ks = n if desuspended else n + 1          # source degree appearing in C^n
        ms = n - 1 if desuspended else n          # target degree appearing in C^n
        a, b = src_space.dim(ks), tgt_space.dim(ms)
        if a + b == 0:
            continue
        out_dims[n] = a + b
        la = ["L:%s" % s for s in (src_space.labels.get(ks) or ())]
        lb = ["M:%s" % s for s in (tgt_space.labels.get(ms) or ())]
        out_labels[n] = tuple(la + lb)
        parts[n] = (ks, a, ms, b)
    return GradedSpace(src_space.field, out_dims, out_labels), parts


def cone_complex(fmap, src, tgt, desuspended=True):
    """(Desuspended) mapping cone with the Deligne filtration formulas.

    Desuspended: C^n = K^n (+) L^{n-1}, d(x,y) = (d x, f(x) - d y),
    W_k C^n = W_k K^n (+) W_{k+1} L^{n-1}, F^p C^n = F^p K^n (+) F^p L^{n-1}.
    Plain cone: C^n = K^{n+1} (+) L^n, d(x,y) = (-d x, d y - f(x)),
    W_k C^n = W_{k-1} K^{n+1} (+) W_k L^n.
    """
    f = src.field()
    space, parts = _cone_space(src.space, tgt.space, desuspended)
    blocks = {}
    for n, (ks, a, ms, b) in parts.items():
        if (n + 1) not in parts:
            continue
        ks2, a2, ms2, b2 = parts[n + 1]
        rows = [[f.zero()] * (a + b) for _ in range(a2 + b2)]
        dk = src.d.block(ks)
        dl = tgt.d.block(ms)
        fm = fmap.block(ks)
        for jcol in range(a):
            col = [dk[i][jcol] for i in range(a2)] if a2 else []
            for i, c in enumerate(col):
                rows[i][jcol] = c if desuspended else -c
            img = [fm[i][jcol] for i in range(len(fm))] if fm else []
            for i, c in enumerate(img):
                rows[a2 + i][jcol] = c if desuspended else -c
        for jcol in range(b):
            col = [dl[i][jcol] for i in range(b2)] if b2 else []
            for i, c in enumerate(col):
                rows[a2 + i][a + jcol] = -c if desuspended else c
        blocks[n] = rows
    d = GradedMap(space, space, 1, blocks)
    filts = {}
    names = set(src.filtrations) & set(tgt.filtrations)
    for name in names:
        fs, ft = src.filtrations[name], tgt.filtrations[name]
        assert fs.direction == ft.direction
        if fs.direction > 0:
            kshift_src = 0 if desuspended else -1
            kshift_tgt = +1 if desuspended else 0
        else:
            kshift_src = 0
            kshift_tgt = 0
        klo = min(fs.jump_range()[0] + (0 if fs.direction < 0 else -kshift_src),
                  ft.jump_range()[0] - kshift_tgt)
        khi = max(fs.jump_range()[1] - kshift_src, ft.jump_range()[1] - kshift_tgt)
        levels = {}
        for k in range(klo - 1, khi + 2):
            per = {}
            for n, (ks, a, ms, b) in parts.items():
                rows = []
                for r in fs.at(k + kshift_src, ks).rows:
                    rows.append(list(r) + [f.zero()] * b)
                for r in ft.at(k + kshift_tgt, ms).rows:
                    rows.append([f.zero()] * a + list(r))
                per[n] = Subspace(f, a + b, rows)
            levels[k] = per
        filts[name] = Filtration(space, fs.direction, levels)
    return FilteredComplex(space, d, filts, check=True), parts


class DiagramMorphism:
    """Componentwise maps between two diagrams of identical shape."""

    def __init__(self, source, target, maps):
        if source.n_components() != target.n_components():
            raise ValueError("diagrams have different lengths")
        if len(maps) != source.n_components():
            raise ValueError("need one map per component")
        self.source = source
        self.target = target
        self.maps = list(maps)
        if [e[:2] for e in source.comparisons] != [e[:2] for e in target.comparisons]:
            raise ValueError("diagrams have different comparison shapes")
        # commuting squares with the comparisons, over the extension
        for (i, j, fs), (_, _, ft) in zip(source.comparisons, target.comparisons):
            left = _ext_map(self.maps[j]).compose(fs)
            right = ft.compose(_ext_map(self.maps[i]))
            diff = left.add(right.scale(QQ_I.of(-1)))
            if not diff.is_zero():
                raise ValueError("morphism does not commute with comparison %d->%d" % (i, j))


def _ext_map(gmap):
    if gmap.source.field is QQ_I:
        return gmap
    src = GradedSpace(QQ_I, dict(gmap.source.dims), dict(gmap.source.labels))
    tgt = GradedSpace(QQ_I, dict(gmap.target.dims), dict(gmap.target.labels))
    blocks = {n: [[QQ_I.of(x) for x in row] for row in m] for n, m in gmap.blocks.items()}
    return GradedMap(src, tgt, gmap.degree, blocks)


def mhc_cone(morphism, desuspended=False):
    """Cone of a morphism of diagrams, with the shifted W and unshifted F."""
    src, tgt = morphism.source, morphism.target
    comps = []
    all_parts = []
    for idx in range(src.n_components()):
        a = src.components[idx]
        b = tgt.components[idx]
        c, parts = cone_complex(morphism.maps[idx], a, b, desuspended)
        comps.append(c)
        all_parts.append(parts)
    comparisons = []
    for (i, j, fs), (_, _, ft) in zip(src.comparisons, tgt.comparisons):
        ca, cb = comps[i], comps[j]
        ca_ext = ext_filtered_complex(ca) if ca.field() is QQ else ca
        cb_ext = ext_filtered_complex(cb) if cb.field() is QQ else cb
        blocks = {}
        pa, pb = all_parts[i], all_parts[j]
        for n, (ks, a, ms, b) in pa.items():
            if n not in pb:
                continue
            ks2, a2, ms2, b2 = pb[n]
            rows = [[QQ_I.zero()] * (a + b) for _ in range(a2 + b2)]
            fblock = fs.block(ks)
            for col in range(a):
                for r in range(a2):
                    rows[r][col] = fblock[r][col]
            gblock = ft.block(ms)
            for col in range(b):
                for r in range(b2):
                    rows[a2 + r][a + col] = gblock[r][col]
            blocks[n] = rows
        comparisons.append((i, j, GradedMap(ca_ext.space, cb_ext.space, 0, blocks)))
    return MixedHodgeDiagram(comps, comparisons)
