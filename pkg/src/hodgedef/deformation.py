"""The pro-representing tower R_n = k (+) (Ker Delta^n in H^0(C_s(C)))^*,
its mixed Hodge structure, the cotangent exact sequence and the
weight-zero / orbit-ring identification.

H^0 of the bar construction is computed through a chain projection: with
H^{<0} = 0 the reduced coproduct descends to classes via the degree-0
projection applied to both tensor legs.  When the cone carries a
multigrading, all linear algebra decomposes into multidegree blocks.
"""

from fractions import Fraction

from .scalars import QQ, QQ_I
from .artin import ArtinAlgebra, ENUM_CAP, change_algebra_field
from .graded import FilteredComplex, GradedMap, GradedSpace, cohomology
from .hodge import MixedHodgeStructure, mhc_cohomology, validate_mhs
from .linalg import (Subspace, SubQuotient, adapted_basis, apply_mat,
                     image_subspace, inverse, kernel_basis, kernel_subspace,
                     rank, solve)
from .linfinity import bar_construct, fm_cone, LinfMorphism
from .powers import WEDGE


def _monomial_block(algebra, mono, use_blocks=True):
    if algebra.multigrading is None or not use_blocks:
        return ()
    total = None
    for (sd, i) in mono:
        mg = algebra.multigrading[(sd + 1, i)]
        total = mg if total is None else tuple(a + b for a, b in zip(total, mg))
    return total


class BarH0:
    """H^0(C_s(C)) with its coproduct, per multidegree block.

    Exposes: a basis of cohomology classes with representative cocycles,
    class_of for arbitrary degree-0 chains (the chain projection p_0), and
    the induced coalgebra structure on classes.
    """

    def __init__(self, bar, use_blocks=True):
        self.bar = bar
        self.algebra = bar.algebra
        self.field = bar.field
        self.use_blocks = use_blocks
        f = self.field
        blocks = {}
        for n in (-1, 0, 1):
            for mono in bar.basis.get(n, ()):
                key = _monomial_block(self.algebra, mono, use_blocks)
                blocks.setdefault(key, {}).setdefault(n, []).append(mono)
        self.block_data = {}
        self.basis = []          # list of (block_key, local_index)
        self.index = {}
        for key in sorted(blocks):
            per = blocks[key]
            deg0 = sorted(per.get(0, []), key=lambda m: (len(m), m))
            if not deg0:
                continue
            degm1 = sorted(per.get(-1, []), key=lambda m: (len(m), m))
            deg1 = sorted(per.get(1, []), key=lambda m: (len(m), m))
            idx0 = {m: i for i, m in enumerate(deg0)}
            idx1 = {m: i for i, m in enumerate(deg1)}
            amb = len(deg0)
            # d0: deg0 -> deg1 and d_{-1}: deg-1 -> deg0 inside the block
            d0 = [[f.zero()] * amb for _ in range(len(deg1))]
            for j, mono in enumerate(deg0):
                for m2, c in bar.q_apply(mono).items():
                    if m2 not in idx1:
                        raise ArithmeticError("codifferential leaves the block")
                    d0[idx1[m2]][j] = c
            dm1 = [[f.zero()] * len(degm1) for _ in range(amb)]
            for j, mono in enumerate(degm1):
                for m2, c in bar.q_apply(mono).items():
                    dm1[idx0[m2]][j] = c
            z = kernel_subspace(f, d0, amb)
            b = image_subspace(f, dm1, amb)
            quot = SubQuotient(b, z)
            # extend [B | reps] to a full basis for the chain projection p_0
            cols = [list(r) for r in b.rows] + [list(r) for r in quot.reps]
            span = Subspace(f, amb, cols)
            comp = []
            for i in range(amb):
                e = [f.zero()] * amb
                e[i] = f.one()
                if not span.contains_vector(e):
                    comp.append(e)
                    span = Subspace(f, amb, span.rows + [e])
            mat = [[(cols + comp)[j][i] for j in range(amb)] for i in range(amb)]
            minv = inverse(f, mat)
            if minv is None:
                raise ArithmeticError("chain splitting is singular")
            self.block_data[key] = {
                "deg0": deg0, "idx0": idx0, "quot": quot,
                "b_dim": b.dim, "minv": minv,
            }
            for i in range(quot.dim):
                self.index[(key, i)] = len(self.basis)
                self.basis.append((key, i))
        self.dim = len(self.basis)
        self._delta_h = None

    # -- coordinates -------------------------------------------------------

    def rep_dict(self, idx):
        key, i = self.basis[idx]
        data = self.block_data[key]
        rep = data["quot"].reps[i]
        return {m: c for m, c in zip(data["deg0"], rep) if c}

    def class_of_dict(self, coeffs):
        """p_0 of a degree-0 chain given as {monomial: coeff}."""
        f = self.field
        out = [f.zero()] * self.dim
        per_block = {}
        for mono, c in coeffs.items():
            key = _monomial_block(self.algebra, mono, self.use_blocks)
            per_block.setdefault(key, {})[mono] = c
        for key, part in per_block.items():
            data = self.block_data.get(key)
            if data is None:
                raise ArithmeticError("degree-0 chain hits an empty block")
            amb = len(data["deg0"])
            v = [f.zero()] * amb
            for mono, c in part.items():
                v[data["idx0"][mono]] = c
            coords = apply_mat(f, data["minv"], v)
            bd = data["b_dim"]
            for i in range(data["quot"].dim):
                c = coords[bd + i]
                if c:
                    out[self.index[(key, i)]] = c
        return out

    def is_cocycle(self, coeffs):
        return all(not c for c in self.bar_diff(coeffs).values())

    def bar_diff(self, coeffs):
        out = {}
        for mono, c in coeffs.items():
            for m2, c2 in self.bar.q_apply(mono).items():
                cur = out.get(m2, self.field.zero()) + c * c2
                if cur:
                    out[m2] = cur
                elif m2 in out:
                    del out[m2]
        return out

    # -- coalgebra structure on H^0 ----------------------------------------

    def block_of_index(self, idx):
        return self.basis[idx][0]

    def block_indices(self):
        out = {}
        for gi, (key, i) in enumerate(self.basis):
            out.setdefault(key, []).append(gi)
        return out

    def delta_h(self):
        """Reduced coproduct on classes: idx -> {(i, j): coeff}."""
        if self._delta_h is not None:
            return self._delta_h
        f = self.field
        out = {}
        for idx in range(self.dim):
            rep = self.rep_dict(idx)
            acc = {}
            for (a, b), c in self.bar.delta_vector(rep).items():
                if sum(g[0] for g in a) != 0:
                    continue
                ca = self.class_of_dict({a: f.one()})
                cb = self.class_of_dict({b: f.one()})
                for i, x in enumerate(ca):
                    if not x:
                        continue
                    for j, y in enumerate(cb):
                        if not y:
                            continue
                        key = (i, j)
                        cur = acc.get(key, f.zero()) + c * x * y
                        if cur:
                            acc[key] = cur
                        elif key in acc:
                            del acc[key]
            out[idx] = acc
        self._delta_h = out
        return out

    def kernel_chain(self, up_to):
        """X_m = Ker Delta_H^m for m = 1..up_to, per block.

        Returns (chain, tagged) where chain[m-1] is the global Subspace and
        tagged is the nested basis [(vector, level m, block)] ordered by
        (level, block); the first dim X_m vectors span X_m.
        """
        f = self.field
        dh = self.delta_h()
        blocks = self.block_indices()
        self._block_pos = {key: {gi: t for t, gi in enumerate(idxs)}
                           for key, idxs in blocks.items()}
        # per-block local chains
        local_chain = {key: [] for key in blocks}
        # projection matrices pi_{m-1} per block, None = identity on block
        prev_quot = {key: None for key in blocks}
        for m in range(1, up_to + 1):
            for key, idxs in blocks.items():
                pos = {gi: t for t, gi in enumerate(idxs)}
                rows = {}
                for local_t, gi in enumerate(idxs):
                    for (i, j), c in dh.get(gi, {}).items():
                        bi = self.block_of_index(i)
                        if m == 1:
                            rkey = (i, j)
                            row = rows.setdefault(rkey, [f.zero()] * len(idxs))
                            row[local_t] = row[local_t] + c
                        else:
                            q = prev_quot[bi]
                            if q is None or q.dim == 0:
                                continue
                            e = [f.zero()] * q.ambient
                            e[self._local_pos(bi, i)] = f.one()
                            for t2, pc in enumerate(q.coords(e)):
                                if pc:
                                    rkey = (bi, t2, j)
                                    row = rows.setdefault(rkey, [f.zero()] * len(idxs))
                                    row[local_t] = row[local_t] + pc * c
                mat = [rows[k] for k in sorted(rows)]
                if mat:
                    ker = Subspace(f, len(idxs), kernel_basis(f, mat, len(idxs)))
                else:
                    ker = Subspace.full(f, len(idxs))
                if local_chain[key] and not ker.contains(local_chain[key][-1]):
                    raise ArithmeticError("canonical filtration is not nested")
                local_chain[key].append(ker)
            # quotients by the new level, for the next iteration
            for key, idxs in blocks.items():
                prev_quot[key] = SubQuotient(local_chain[key][-1],
                                             Subspace.full(f, len(idxs)))
        chain = []
        for m in range(1, up_to + 1):
            rows = []
            for key, idxs in blocks.items():
                for r in local_chain[key][m - 1].rows:
                    v = [f.zero()] * self.dim
                    for t, gi in enumerate(idxs):
                        v[gi] = r[t]
                    rows.append(v)
            chain.append(Subspace(f, self.dim, rows))
        tagged = []
        for key in sorted(blocks):
            idxs = blocks[key]
            tags = adapted_basis(f, local_chain[key])
            for v, lev in tags:
                glob = [f.zero()] * self.dim
                for t, gi in enumerate(idxs):
                    glob[gi] = v[t]
                tagged.append((glob, lev + 1, key, list(v)))
        tagged.sort(key=lambda t: (t[1], t[2]))
        return chain, tagged

    def _local_pos(self, key, global_idx):
        return self._block_pos[key][global_idx]


class ProArtinTruncation:
    """Tower R_m = k (+) X_m^*, m = 1..n, with Hilbert function and the
    multiplication tables dual to the coproduct; optional MHS per level."""

    def __init__(self, field, order, x_dims, basis_vectors, mult, hilbert,
                 mhs_levels=None, h0=None, x_chain=None):
        self.field = field
        self.order = order
        self.x_dims = x_dims              # dim X_m for m = 1..order
        self.basis_vectors = basis_vectors  # adapted basis of X_order in H^0
        self.mult = mult                  # dict (i, j) -> dict k -> scalar
        self.hilbert = hilbert            # tuple h(0), ..., h(order)
        self.mhs_levels = mhs_levels      # list of MixedHodgeStructure or None
        self.h0 = h0
        self.x_chain = x_chain

    def artin_level(self, m):
        """R_m as an ArtinAlgebra (basis: the first dim X_m basis vectors)."""
        d = self.x_dims[m - 1]
        mult = {}
        for (i, j), out in self.mult.items():
            if i < d and j < d:
                val = {k: c for k, c in out.items() if k < d}
                if val:
                    mult[(i, j)] = val
        return ArtinAlgebra(self.field, d, mult, "R_%d" % m)

    def cotangent_dim(self):
        return self.x_dims[0]

    def level_generator_count(self):
        return self.hilbert[1] if len(self.hilbert) > 1 else 0


def prorep(cone_algebra, s, n, verify_stabilization=False, use_blocks=True):
    """The tower R_m = k (+) (Ker Delta^m)^*, m <= n, from H^0(C_s).

    Requires H^i(cone) = 0 for i <= 0 and n <= s.
    """
    if n > s:
        raise ValueError("truncation order n must satisfy n <= s")
    comp = FilteredComplex(cone_algebra.space, cone_algebra.differential(), {},
                           check=False)
    for i in sorted(cone_algebra.space.degrees()):
        if i > 0:
            break
        h = cohomology(comp, i)
        if h.dim:
            raise ValueError("pro-representability needs H^%d = 0, got dim %d"
                             % (i, h.dim))
    tower = _prorep_tower(cone_algebra, s, n, use_blocks)
    if verify_stabilization:
        again = _prorep_tower(cone_algebra, s + 1, n, use_blocks)
        if again.hilbert != tower.hilbert or again.x_dims != tower.x_dims:
            raise ArithmeticError(
                "stabilization failure: S=%d gives %r, S=%d gives %r"
                % (s, tower.hilbert, s + 1, again.hilbert))
    return tower


def _prorep_tower(cone_algebra, s, n, use_blocks=True):
    f = cone_algebra.field
    bar = bar_construct(cone_algebra, s)
    h0 = BarH0(bar, use_blocks=use_blocks)
    chain, tagged = h0.kernel_chain(n)
    x_dims = [c.dim for c in chain]
    hilbert = [1] + [x_dims[0]]
    for m in range(2, n + 1):
        hilbert.append(x_dims[m - 1] - x_dims[m - 2])
    basis = [v for (v, lev, key, loc) in tagged]
    basis_blocks = [key for (v, lev, key, loc) in tagged]
    blocks = h0.block_indices()
    local_coords = {key: {} for key in blocks}
    for t, (v, lev, key, loc) in enumerate(tagged):
        local_coords[key][t] = loc
    dh = h0.delta_h()
    d = len(basis)
    mult = {}
    for t, v in enumerate(basis):
        acc = {}
        for idx, c in enumerate(v):
            if not c:
                continue
            for (i, j), c2 in dh.get(idx, {}).items():
                key = (i, j)
                cur = acc.get(key, f.zero()) + c * c2
                if cur:
                    acc[key] = cur
                elif key in acc:
                    del acc[key]
        if not acc:
            continue
        # group the pair coordinates by (block(i), block(j)) and solve small
        groups = {}
        for (i, j), c in acc.items():
            groups.setdefault((h0.block_of_index(i), h0.block_of_index(j)),
                              {})[(i, j)] = c
        for (b1, b2), part in groups.items():
            unk = [(a, b) for a in range(d) for b in range(d)
                   if basis_blocks[a] == b1 and basis_blocks[b] == b2]
            pair_rows = [(i, j) for i in blocks[b1] for j in blocks[b2]]
            rows = []
            rhs = []
            for (i, j) in pair_rows:
                rows.append([basis[a][i] * basis[b][j] for (a, b) in unk])
                rhs.append(part.get((i, j), f.zero()))
            sol = solve(f, rows, rhs)
            if sol is None:
                raise ArithmeticError("coproduct does not restrict to the X basis")
            for (a, b), c in zip(unk, sol):
                if c:
                    mult.setdefault((a, b), {})[t] = c
    return ProArtinTruncation(f, n, x_dims, basis, mult, tuple(hilbert),
                              h0=h0, x_chain=chain)


def count_local_homs(tower, artin, p, cap=ENUM_CAP):
    """Number of local-algebra maps R_n -> A over F_p.

    Enumerates the images of a generating set (a lift of m/m^2) and checks
    multiplicativity on the full basis; with m_A^2 = 0 the count is the
    closed form p^{h(1) dim m_A}.
    """
    from .scalars import GF
    f = GF(p)
    N = artin.nilpotency_index()
    if N - 1 > tower.order:
        raise ValueError("R_%d cannot see A with m^%d != 0" % (tower.order, N - 1))
    R = tower.artin_level(tower.order)
    Rp = R.change_field(f)
    Ap = artin.change_field(f)
    h1 = tower.cotangent_dim()
    if all(not out for out in Ap.mult.values()) or not Ap.mult:
        return p ** (h1 * Ap.dim)
    from math import comb
    if all(tower.hilbert[i] == comb(h1 + i - 1, i)
           for i in range(len(tower.hilbert))):
        # R_n is the truncated polynomial ring: every generator assignment
        # extends (m_A^{N} = 0 with N <= n+1 guarantees well-definedness)
        return p ** (h1 * Ap.dim)
    # express every basis vector of m_R as a polynomial in the generators
    exprs = _generator_expressions(Rp, h1)
    total = h1 * Ap.dim
    if p ** total > cap:
        raise ValueError("hom enumeration space exceeds the cap")
    from itertools import product as iproduct
    vals = [f.of(v) for v in range(p)]
    count = 0
    basis_pairs = [(i, j) for i in range(Rp.dim) for j in range(Rp.dim)]
    for assign in iproduct(vals, repeat=total):
        gen_imgs = [list(assign[i * Ap.dim:(i + 1) * Ap.dim]) for i in range(h1)]
        imgs = [_eval_expr(Ap, exprs[b], gen_imgs) for b in range(Rp.dim)]
        ok = True
        for (i, j) in basis_pairs:
            prod_in_r = Rp.mult.get((i, j), {})
            lhs = [f.zero()] * Ap.dim
            for k, c in prod_in_r.items():
                lhs = [a + c * b for a, b in zip(lhs, imgs[k])]
            rhs = Ap.product(imgs[i], imgs[j])
            if lhs != rhs:
                ok = False
                break
        if ok:
            count += 1
    return count


def _generator_expressions(R, h1):
    """Each m_R basis vector as a polynomial in the first h1 basis vectors."""
    f = R.field
    exprs = {}
    for i in range(h1):
        exprs[i] = {(i,): f.one()}
    known = dict(exprs)
    frontier = dict(exprs)
    covered = Subspace(f, R.dim, [R.basis(i) for i in range(h1)])
    vectors = {i: R.basis(i) for i in range(h1)}
    # generate monomial values until the span stops growing
    monos = {(i,): R.basis(i) for i in range(h1)}
    degree = 1
    while covered.dim < R.dim and degree < R.dim + 2:
        new_monos = {}
        for mono, vec in monos.items():
            if len(mono) != degree:
                continue
            for g in range(h1):
                nm = tuple(sorted(mono + (g,)))
                if nm in monos or nm in new_monos:
                    continue
                new_monos[nm] = R.product(vec, R.basis(g))
        monos.update(new_monos)
        degree += 1
        rows = list(monos.values())
        covered = Subspace(f, R.dim, rows)
    # solve for each basis vector in terms of monomial values
    keys = sorted(monos)
    cols = [monos[k] for k in keys]
    for b in range(R.dim):
        target = R.basis(b)
        mat = [[cols[j][i] for j in range(len(cols))] for i in range(R.dim)]
        sol = solve(f, mat, target)
        if sol is None:
            raise ArithmeticError("basis vector %d is not generated by m/m^2" % b)
        exprs[b] = {keys[j]: c for j, c in enumerate(sol) if c}
    return exprs


def _eval_expr(A, expr, gen_imgs):
    f = A.field
    out = [f.zero()] * A.dim
    for mono, c in expr.items():
        cur = None
        for g in mono:
            cur = gen_imgs[g] if cur is None else A.product(cur, gen_imgs[g])
        out = [a + c * b for a, b in zip(out, cur)]
    return out


def prorep_vs_points(tower, algebra, eps, g, artin, p, kind="cone", cap=ENUM_CAP):
    """Hom_{ProArt}(R_n, A) counted over F_p against the functor points."""
    from .artin import functor_points
    homs = count_local_homs(tower, artin, p, cap=cap)
    pts = functor_points(kind, algebra, artin, p, eps=eps, g=g, cap=cap)
    return {"homs": homs, "points": pts.orbit_count,
            "equal": homs == pts.orbit_count}


# -- mixed Hodge structure on the tower --------------------------------------

def mhs_on_ring(cone_diagram, s, n, bar_diagram=None, verify_stabilization=False):
    """R_n with the mixed Hodge structure dual to the one on H^0(C_s)."""
    from .diagrams import bar_mhd
    if bar_diagram is None:
        bar_diagram = bar_mhd(cone_diagram, s, check_pages=False)
    base_cone = cone_diagram.base_cone()
    # blocks off: the H^0 basis must match the diagram cohomology coordinates
    tower = prorep(base_cone, s, n, verify_stabilization=verify_stabilization,
                   use_blocks=False)
    mh = mhc_cohomology(bar_diagram.mhd(), 0)
    if mh.dim != tower.h0.dim:
        raise ArithmeticError("H^0 dimensions disagree between prorep and the diagram")
    # the MHS on each X_m, then dualized, with W negated and F reflected
    mhs_levels = []
    for m in range(1, n + 1):
        x = tower.x_chain[m - 1]
        sub = Subspace(QQ, mh.dim, [[QQ.of(c) for c in row] for row in x.rows])
        restricted = mh.restrict(sub)
        v = validate_mhs(restricted)
        if not v.ok:
            raise ArithmeticError("X_%d does not inherit a mixed Hodge structure: %r"
                                  % (m, v))
        dual = restricted.dual()
        mhs_levels.append(dual)
    tower.mhs_levels = mhs_levels
    return tower


def cotangent_sequence(cone_diagram):
    """0 -> g/eps(H^0 L) -> H^1(C) -> H^1(L) -> 0 with its Hodge data."""
    src = cone_diagram.source
    L0 = src.algebras[0]
    g0 = src.g
    eps0 = src.augmentations[0]
    gdim = g0.space.dim(0)
    # eps(H^0 L): with L non-negatively graded, H^0 L = Z^0(L)
    z0 = kernel_subspace(QQ, L0.differential().block(0), L0.space.dim(0))
    eps_img = z0.map_by(eps0.block(0), gdim)
    quot = SubQuotient(eps_img, Subspace.full(QQ, gdim))
    gbar_dim = quot.dim
    # MHS on g/eps(H^0 L): pure weight zero with the induced F
    if gbar_dim:
        fh = src.g_hodge.hodge_filtration()
        eps_img_ext = eps_img.tensor_with_extension(QQ_I)
        quot_ext = SubQuotient(eps_img_ext, Subspace.full(QQ_I, gdim))
        f_levels = {p: quot_ext.project_subspace(sub)
                    for p, sub in fh.items()}
        m_gbar = MixedHodgeStructure(
            gbar_dim,
            {-1: Subspace.zero(QQ, gbar_dim), 0: Subspace.full(QQ, gbar_dim)},
            f_levels)
    else:
        m_gbar = MixedHodgeStructure(0, {0: Subspace.zero(QQ, 0)},
                                     {0: Subspace.full(QQ_I, 0),
                                      1: Subspace.zero(QQ_I, 0)})
    cone_cx_diag = cone_diagram.complex_diagram()
    m_h1c = mhc_cohomology(cone_cx_diag, 1)
    l_diag = src.complex_diagram()
    m_h1l = mhc_cohomology(l_diag, 1)
    # the three maps on the base components
    cone = cone_diagram.base_cone()
    h1c = cohomology(cone_cx_diag.base, 1)
    h1l = cohomology(l_diag.base, 1)
    a1, b1 = cone.parts.get(1, (0, 0))
    # inclusion gbar -> H^1(C): u -> class of (0, u)
    inc_cols = []
    for r in quot.reps:
        vec = [QQ.zero()] * (a1 + b1)
        for t, c in enumerate(r):
            vec[a1 + t] = c
        inc_cols.append(h1c.quot.coords(vec))
    inc = [[inc_cols[j][i] for j in range(gbar_dim)] for i in range(h1c.dim)]
    # projection H^1(C) -> H^1(L): (x, u) -> x
    proj_cols = []
    for rep in h1c.quot.reps:
        x_part = rep[:a1]
        proj_cols.append(h1l.quot.coords(x_part))
    proj = [[proj_cols[j][i] for j in range(h1c.dim)] for i in range(h1l.dim)]
    # exactness
    ok = True
    reasons = []
    if rank(QQ, inc) != gbar_dim:
        ok = False
        reasons.append("left map not injective")
    img = image_subspace(QQ, inc, h1c.dim)
    ker = kernel_subspace(QQ, proj, h1c.dim)
    if img != ker:
        ok = False
        reasons.append("middle exactness fails")
    if rank(QQ, proj) != h1l.dim:
        ok = False
        reasons.append("right map not surjective")
    from .hodge import MHSMorphism
    strict = None
    if ok:
        left = MHSMorphism(m_gbar, m_h1c, inc)
        right = MHSMorphism(m_h1c, m_h1l, proj)
        strict = left.is_strict() and right.is_strict()
    return {"g_quotient": m_gbar, "h1_cone": m_h1c, "h1_l": m_h1l,
            "exact": ok, "reasons": reasons, "strict": strict,
            "inclusion": inc, "projection": proj}


def orbit_weight_zero(cone_diagram, s, n):
    """Cones D and E of §-style orbit comparison, the projection onto the
    orbit ring and the weight-zero identification of the tower."""
    src = cone_diagram.source
    L0 = src.algebras[0]
    g_alg = src.g
    eps0 = src.augmentations[0]
    f = QQ
    gdim = g_alg.space.dim(0)
    # H^0(L) = Z^0(L) as a Lie subalgebra of L^0
    z0 = kernel_subspace(f, L0.differential().block(0), L0.space.dim(0))
    h0_basis = z0.basis_vectors()
    h0_dim = len(h0_basis)
    from .linfinity import dg_lie_algebra
    sp_h0 = GradedSpace(f, {0: h0_dim} if h0_dim else {})
    bracket = {}
    for a in range(h0_dim):
        for b in range(a, h0_dim):
            if a == b:
                continue
            _, val = L0.ell_vectors(2, [(0, h0_basis[a]), (0, h0_basis[b])])
            if any(val):
                coords = _coords_in_rows(f, z0, val)
                if coords is None:
                    raise ArithmeticError("H^0(L) is not closed under the bracket")
                bracket[((0, a), (0, b))] = coords
    h0_lie = dg_lie_algebra(sp_h0, None, bracket if bracket else None)
    eps_blocks = {}
    if h0_dim:
        cols = [eps0.apply(0, v) for v in h0_basis]
        eps_blocks[0] = [[cols[j][i] for j in range(h0_dim)] for i in range(gdim)]
    eps_bar = GradedMap(sp_h0, g_alg.space, 0, eps_blocks)
    D = fm_cone(h0_lie, g_alg, eps_bar, arity_bound=max(4, s + 1))
    # E: abelian algebra on g/eps(H^0 L) in degree 1
    img = z0.map_by(eps0.block(0), gdim) if h0_dim else Subspace.zero(f, gdim)
    quot = SubQuotient(img, Subspace.full(f, gdim))
    gbar = quot.dim
    sp_e = GradedSpace(f, {1: gbar} if gbar else {})
    E = dg_lie_algebra(sp_e, None, None)
    # canonical projection D -> E: degree-1 part g -> gbar, degree 0 -> 0
    de_blocks = {}
    if gbar and D.space.dim(1):
        aD, bD = D.parts.get(1, (0, 0))
        cols = []
        for i in range(D.space.dim(1)):
            if i < aD:
                cols.append([f.zero()] * gbar)
            else:
                cols.append(quot.coords(g_alg.space.basis_vector(0, i - aD)))
        de_blocks[1] = [[cols[j][i] for j in range(len(cols))] for i in range(gbar)]
    de_map = GradedMap(D.space, sp_e, 0, de_blocks)
    d_cx = FilteredComplex(D.space, D.differential(), {}, check=False)
    e_cx = FilteredComplex(sp_e, GradedMap.zero_map(sp_e, sp_e, 1), {}, check=False)
    qis_ok = True
    for deg in (0, 1, 2):
        hd = cohomology(d_cx, deg)
        he = cohomology(e_cx, deg)
        if hd.dim != he.dim:
            qis_ok = False
            break
        if hd.dim:
            m = hd.quot.induced_matrix(de_map.block(deg), he.quot)
            if rank(f, m) != hd.dim:
                qis_ok = False
                break
    # towers
    tower_d = prorep(D, s, n)
    tower_e = prorep(E, s, n)
    # prorep(E) is the power-series ring on gbar
    from math import comb
    e_expected = tuple([1] + [comb(gbar + m - 1, m) for m in range(1, n + 1)])
    e_is_power_series = tower_e.hilbert == e_expected
    # natural strong morphism D -> C and the ring projection p
    cone = cone_diagram.base_cone()
    dc_blocks = {}
    for deg in D.space.degrees():
        aD, bD = D.parts.get(deg, (0, 0))
        aC, bC = cone.parts.get(deg, (0, 0))
        cols = []
        for i in range(D.space.dim(deg)):
            vec = [f.zero()] * (aC + bC)
            if i < aD:
                lift = h0_basis[i]
                for t, c in enumerate(lift):
                    vec[t] = c
            else:
                vec[aC + (i - aD)] = f.one()
            cols.append(vec)
        if cols and (aC + bC):
            dc_blocks[deg] = [[cols[j][i] for j in range(len(cols))]
                              for i in range(aC + bC)]
    dc_map = GradedMap(D.space, cone.space, 0, dc_blocks)
    morphism = LinfMorphism(D, cone, dc_map)  # strong by functoriality
    src_bar, tgt_bar, blocks = morphism.bar_map(s)
    h_d = BarH0(src_bar)
    # induced map on H^0 and its injectivity (dual surjectivity of p)
    h_cone = BarH0(tgt_bar, use_blocks=False)
    mat = [[f.zero()] * h_d.dim for _ in range(h_cone.dim)]
    for idx in range(h_d.dim):
        rep = h_d.rep_dict(idx)
        img_chain = {}
        for mono, c in rep.items():
            n0 = sum(g[0] for g in mono)
            col = blocks.get(n0)
            srcix = src_bar.index[n0][mono]
            for r_, row in enumerate(col):
                if row[srcix]:
                    m2 = tgt_bar.basis[n0][r_]
                    img_chain[m2] = img_chain.get(m2, f.zero()) + c * row[srcix]
        img_chain = {m: c for m, c in img_chain.items() if c}
        cls = h_cone.class_of_dict(img_chain)
        for r_ in range(h_cone.dim):
            mat[r_][idx] = cls[r_]
    injective = rank(f, mat) == h_d.dim
    return {"D": D, "E": E, "tower_D": tower_d, "tower_E": tower_e,
            "d_to_e_qis": qis_ok, "e_power_series": e_is_power_series,
            "h0_map_injective": injective, "orbit_hilbert": tower_d.hilbert,
            "gbar_dim": gbar}


def _coords_in_rows(field, subspace, vec):
    n = len(subspace.rows)
    mat = [[subspace.rows[j][i] for j in range(n)] for i in range(subspace.ambient)]
    return solve(field, mat, vec)
