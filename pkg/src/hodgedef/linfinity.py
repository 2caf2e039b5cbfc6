"""L-infinity algebras by structure constants, the bar construction
(cofree conilpotent coalgebra with deconcatenation coproduct and
codifferential) and the Fiorenza-Manetti mapping-cone structure.

Sign conventions, pinned once:
  * decalage:  q_r(x_1[1] (.) ... (.) x_r[1])
                 = (-1)^{sum_i (r-i) |x_i|} (l_r(x_1 ^ ... ^ x_r))[1].
    Under this convention Q.Q = 0 on the bar construction is equivalent,
    for a DG Lie algebra, to d.d = 0 + Leibniz + Jacobi (enforced by the
    test suite).
  * the cone's l_2 is the naive bracket; the Bernoulli-number formula is
    used only for the components with one L-factor and r >= 2 M-factors.
"""

from itertools import combinations, permutations

from .scalars import bernoulli, factorial
from .graded import FilteredComplex, Filtration, GradedMap, GradedSpace
from .linalg import Subspace, adapted_basis, common_adapted_basis
from .powers import SYM, WEDGE, expand_product, monomials_of_length, normalize


class LInfinityAlgebra:
    """Graded space with operations l_r: L^{^r} -> L of degree 2 - r.

    brackets[r] maps a canonical wedge monomial (tuple of (degree, index)
    generators) to a dense vector in the target degree.  Multilinear
    evaluation goes through the shared Koszul machinery.  An optional
    multigrading assigns an integer vector to every generator; when present
    every bracket must be additive for it (checked) and bar-construction
    linear algebra decomposes into multidegree blocks.
    """

    def __init__(self, space, brackets, multigrading=None, check_grading=True):
        self.space = space
        self.field = space.field
        self.brackets = {}
        for r, table in brackets.items():
            clean = {}
            for mono, vec in table.items():
                nf = normalize(WEDGE, mono, self.field)
                if nf is None:
                    raise ValueError("bracket indexed by a vanishing monomial %r" % (mono,))
                sgn, canon = nf
                if canon != tuple(mono):
                    raise ValueError("bracket monomial %r is not canonical" % (mono,))
                deg = sum(g[0] for g in mono) + 2 - r
                if any(vec):
                    if len(vec) != space.dim(deg):
                        raise ValueError("bracket value in degree %d has wrong length" % deg)
                    clean[canon] = [self.field.of(x) for x in vec]
            if clean:
                self.brackets[r] = clean
        self.multigrading = None
        if multigrading is not None:
            self.multigrading = {g: tuple(v) for g, v in multigrading.items()}
            if check_grading:
                self._check_multigrading()

    def arities(self):
        return sorted(self.brackets)

    def max_arity(self):
        return max(self.brackets) if self.brackets else 1

    def ell(self, r, mono):
        """l_r on a monomial of generators, any order; returns (deg, vector)."""
        deg = sum(g[0] for g in mono) + 2 - r
        nf = normalize(WEDGE, mono, self.field)
        if nf is None:
            return deg, self.space.zero_vector(deg)
        sgn, canon = nf
        vec = self.brackets.get(r, {}).get(canon)
        if vec is None:
            return deg, self.space.zero_vector(deg)
        return deg, [sgn * c for c in vec]

    def ell_vectors(self, r, factors):
        """l_r extended multilinearly; factors are (degree, dense vector)."""
        deg = sum(n for n, _ in factors) + 2 - r
        out = self.space.zero_vector(deg)
        for mono, coeff in expand_product(self.space, WEDGE, factors).items():
            _, val = self.ell(r, mono)
            out = [a + coeff * b for a, b in zip(out, val)]
        return deg, out

    def differential(self):
        blocks = {}
        for n in self.space.degrees():
            cols = []
            for i in range(self.space.dim(n)):
                _, v = self.ell(1, ((n, i),))
                cols.append(v)
            m = self.space.dim(n + 1)
            if m:
                blocks[n] = [[cols[j][i] for j in range(len(cols))] for i in range(m)]
        return GradedMap(self.space, self.space, 1, blocks)

    def complex(self, filtrations=None):
        return FilteredComplex(self.space, self.differential(), filtrations or {},
                               check=True)

    def is_dg_lie(self):
        return all(r <= 2 for r in self.brackets)

    def multidegree(self, gen):
        if self.multigrading is None:
            return ()
        return self.multigrading[gen]

    def _check_multigrading(self):
        for r, table in self.brackets.items():
            for mono, vec in table.items():
                total = None
                for g in mono:
                    mg = self.multidegree(g)
                    total = mg if total is None else tuple(a + b for a, b in zip(total, mg))
                deg = sum(g[0] for g in mono) + 2 - r
                for i, c in enumerate(vec):
                    if c and self.multidegree((deg, i)) != total:
                        raise ValueError(
                            "bracket l_%d not additive for the multigrading at %r"
                            % (r, mono))


def dg_lie_algebra(space, differential_blocks=None, bracket=None, multigrading=None):
    """DG Lie algebra from a degree-1 differential and pairwise brackets.

    bracket: dict canonical-pair-monomial -> dense vector.  Validation of
    d^2, Leibniz and Jacobi is validate_linf (Q.Q = 0 on the bar side).
    """
    brackets = {}
    if differential_blocks:
        table = {}
        for n, m in differential_blocks.items():
            for i in range(space.dim(n)):
                col = [space.field.of(m[r_][i]) for r_ in range(space.dim(n + 1))]
                if any(col):
                    table[((n, i),)] = col
        if table:
            brackets[1] = table
    if bracket:
        brackets[2] = bracket
    return LInfinityAlgebra(space, brackets, multigrading=multigrading)


def _decalage_sign(field, mono_c_degrees):
    """(-1)^{sum (r-i)|x_i|} for the pinned decalage, 1-indexed i."""
    r = len(mono_c_degrees)
    e = sum((r - i) * d for i, d in enumerate(mono_c_degrees, start=1))
    return field.of(-1) if e % 2 else field.one()


def _select_sign(field, degrees, subset):
    """Koszul sign moving the chosen positions (order kept) to the front."""
    sgn = field.one()
    sub = set(subset)
    for i in subset:
        for j in range(i):
            if j not in sub:
                if degrees[i] % 2 and degrees[j] % 2:
                    sgn = -sgn
    return sgn


class BarCoalgebra:
    """C_s(L): monomials of length <= s in L[1], deconcatenation coproduct,
    codifferential assembled from the decalage of the brackets."""

    def __init__(self, algebra, s):
        if s < 1:
            raise ValueError("bar truncation needs s >= 1")
        self.algebra = algebra
        self.s = s
        self.field = algebra.field
        self.shift_space = algebra.space.shift(1)
        monos = []
        for r in range(1, s + 1):
            monos.extend(monomials_of_length(self.shift_space, SYM, r))
        by_deg = {}
        for m in monos:
            by_deg.setdefault(sum(g[0] for g in m), []).append(m)
        self.basis = {n: sorted(ms, key=lambda m: (len(m), m)) for n, ms in by_deg.items()}
        self.index = {n: {m: i for i, m in enumerate(ms)} for n, ms in self.basis.items()}
        self.q_components = self._build_q_components()

    # -- structure maps ---------------------------------------------------

    def _build_q_components(self):
        out = {}
        algebra = self.algebra
        for r in algebra.arities():
            if r > self.s:
                continue
            table = {}
            for mono in monomials_of_length(self.shift_space, SYM, r):
                cdegs = [g[0] + 1 for g in mono]
                lmono = tuple((g[0] + 1, g[1]) for g in mono)
                deg, vec = algebra.ell(r, lmono)
                if not any(vec):
                    continue
                sgn = _decalage_sign(self.field, cdegs)
                table[mono] = {(deg - 1, i): sgn * c for i, c in enumerate(vec) if c}
            if table:
                out[r] = table
        return out

    def q_apply(self, mono):
        """Q on a basis monomial, as a sparse dict monomial -> scalar."""
        out = {}
        degrees = [g[0] for g in mono]
        r = len(mono)
        for k, table in self.q_components.items():
            if k > r:
                continue
            for subset in combinations(range(r), k):
                sub_mono = tuple(mono[i] for i in subset)
                val = table.get(sub_mono)
                if not val:
                    continue
                sgn = _select_sign(self.field, degrees, subset)
                rest = tuple(mono[i] for i in range(r) if i not in set(subset))
                for gen, c in val.items():
                    nf = normalize(SYM, (gen,) + rest, self.field)
                    if nf is None:
                        continue
                    s2, canon = nf
                    coeff = sgn * s2 * c
                    cur = out.get(canon, self.field.zero()) + coeff
                    if cur:
                        out[canon] = cur
                    elif canon in out:
                        del out[canon]
        return out

    def q_square_defect(self):
        """First monomial where Q.Q != 0, with the defect; None when flat."""
        for n in sorted(self.basis):
            for mono in self.basis[n]:
                acc = {}
                for m1, c1 in self.q_apply(mono).items():
                    for m2, c2 in self.q_apply(m1).items():
                        cur = acc.get(m2, self.field.zero()) + c1 * c2
                        if cur:
                            acc[m2] = cur
                        elif m2 in acc:
                            del acc[m2]
                if acc:
                    return mono, acc
        return None

    def delta(self, mono):
        """Reduced deconcatenation: sum over (p, r-p)-shuffles, p = 1..r-1."""
        r = len(mono)
        degrees = [g[0] for g in mono]
        out = {}
        for p in range(1, r):
            for subset in combinations(range(r), p):
                sgn = _select_sign(self.field, degrees, subset)
                left = tuple(mono[i] for i in subset)
                right = tuple(mono[i] for i in range(r) if i not in set(subset))
                key = (left, right)
                cur = out.get(key, self.field.zero()) + sgn
                if cur:
                    out[key] = cur
                elif key in out:
                    del out[key]
        return out

    def delta_vector(self, coeffs):
        """Reduced coproduct of a sparse vector {mono: c}."""
        out = {}
        for mono, c in coeffs.items():
            for (a, b), s in self.delta(mono).items():
                key = (a, b)
                cur = out.get(key, self.field.zero()) + c * s
                if cur:
                    out[key] = cur
                elif key in out:
                    del out[key]
        return out

    # -- as a filtered complex --------------------------------------------

    def degrees(self):
        return sorted(self.basis)

    def dim(self, n):
        return len(self.basis.get(n, ()))

    def labels(self):
        sp = self.shift_space
        return {n: tuple("*".join(sp.labels[g[0]][g[1]] for g in m) for m in ms)
                for n, ms in self.basis.items()}

    def space(self):
        return GradedSpace(self.field, {n: self.dim(n) for n in self.degrees()},
                           self.labels())

    def q_blocks(self):
        blocks = {}
        for n in self.degrees():
            tgt = self.basis.get(n + 1, [])
            src = self.basis[n]
            if not tgt or not src:
                continue
            m = [[self.field.zero()] * len(src) for _ in range(len(tgt))]
            for j, mono in enumerate(src):
                for mono2, c in self.q_apply(mono).items():
                    m[self.index[n + 1][mono2]][j] = c
            blocks[n] = m
        return blocks

    def to_filtered_complex(self, filtrations=None):
        sp = self.space()
        d = GradedMap(sp, sp, 1, self.q_blocks())
        return FilteredComplex(sp, d, filtrations or {}, check=True)

    def vector_from_dict(self, n, coeffs):
        v = [self.field.zero()] * self.dim(n)
        for m, c in coeffs.items():
            v[self.index[n][m]] = c
        return v

    def dict_from_vector(self, n, vec):
        return {m: c for m, c in zip(self.basis[n], vec) if c}

    def bar_filtration_subspace(self, n, length):
        """C_length cap degree n, inside the degree-n coordinates."""
        rows = []
        for i, m in enumerate(self.basis.get(n, ())):
            if len(m) <= length:
                v = [self.field.zero()] * self.dim(n)
                v[i] = self.field.one()
                rows.append(v)
        return Subspace(self.field, self.dim(n), rows)

    def iterated_delta_kernel_dims(self, n, up_to):
        """dim Ker Delta^m in degree n for m = 1..up_to (matrix computation)."""
        dims = []
        src = self.basis.get(n, [])
        if not src:
            return [0] * up_to
        cur = {m: {((m,),): self.field.one()} for m in src}
        # represent iterated coproduct values as dicts keyed by tuples of monomials
        vecs = {m: {(m,): self.field.one()} for m in src}
        for it in range(1, up_to + 1):
            nxt = {}
            for m0, terms in vecs.items():
                acc = {}
                for key, c in terms.items():
                    first, rest = key[0], key[1:]
                    for (a, b), s in self.delta(first).items():
                        k2 = (a, b) + rest
                        cur2 = acc.get(k2, self.field.zero()) + c * s
                        if cur2:
                            acc[k2] = cur2
                        elif k2 in acc:
                            del acc[k2]
                nxt[m0] = acc
            all_keys = sorted({k for t in nxt.values() for k in t})
            kidx = {k: i for i, k in enumerate(all_keys)}
            mat = [[self.field.zero()] * len(src) for _ in all_keys]
            for j, m0 in enumerate(src):
                for k, c in nxt[m0].items():
                    mat[kidx[k]][j] = c
            from .linalg import kernel_basis
            ker = kernel_basis(self.field, mat, len(src))
            dims.append(len(ker))
            vecs = nxt
        return dims


def bar_construct(algebra, s):
    """The bar coalgebra C_s(L)."""
    return BarCoalgebra(algebra, s)


class LinfVerdict:
    def __init__(self, ok, monomial=None, detail=""):
        self.ok = ok
        self.monomial = monomial
        self.detail = detail

    def __bool__(self):
        return self.ok

    def __repr__(self):
        return "LinfVerdict(ok=%s%s)" % (self.ok, "" if self.ok
                                         else ", monomial=%r %s" % (self.monomial, self.detail))


def validate_linf(algebra, s_bound):
    """Q.Q = 0 on C_{s_bound}; for DG Lie input this is d^2 + Leibniz + Jacobi."""
    bar = bar_construct(algebra, s_bound)
    defect = bar.q_square_defect()
    if defect is None:
        return LinfVerdict(True)
    mono, acc = defect
    return LinfVerdict(False, mono, "Q^2 has %d nonzero terms" % len(acc))


# -- Fiorenza-Manetti cone ------------------------------------------------


class ConeAlgebra(LInfinityAlgebra):
    """The desuspended mapping cone C^n = L^n (+) M^{n-1} with its brackets.

    Keeps the part decomposition: parts[n] = (dim L^n, dim M^{n-1}).
    """

    def __init__(self, space, brackets, source, target, eps, parts, multigrading=None):
        LInfinityAlgebra.__init__(self, space, brackets, multigrading=multigrading)
        self.source = source
        self.target = target
        self.eps = eps
        self.parts = parts

    def l_part_gen(self, n, i):
        return (n, i)

    def include_l(self, n, vec):
        a, b = self.parts.get(n, (0, 0))
        return list(vec) + [self.field.zero()] * b

    def include_m(self, n, vec):
        """M^{n-1} into C^n coordinates."""
        a, b = self.parts.get(n, (0, 0))
        return [self.field.zero()] * a + list(vec)

    def project_l(self, n, vec):
        a, b = self.parts.get(n, (0, 0))
        return list(vec[:a])

    def project_m(self, n, vec):
        a, b = self.parts.get(n, (0, 0))
        return list(vec[a:])


def _check_dg_lie_morphism(eps, source, target):
    """eps: GradedMap of degree 0 commuting with d and the brackets."""
    f = source.field
    dc = target.differential().compose(eps)
    cd = eps.compose(source.differential())
    if not dc.add(cd.scale(f.of(-1))).is_zero():
        raise ValueError("augmentation does not commute with the differentials")
    for mono, vec in source.brackets.get(2, {}).items():
        (n1, i1), (n2, i2) = mono
        img1 = eps.apply(n1, source.space.basis_vector(n1, i1))
        img2 = eps.apply(n2, source.space.basis_vector(n2, i2))
        _, lhs = target.ell_vectors(2, [(n1, img1), (n2, img2)])
        rhs = eps.apply(n1 + n2, vec)
        if lhs != rhs:
            raise ValueError("augmentation is not a morphism of brackets at %r" % (mono,))
    # bracket monomials absent from the table are zero; eps of zero is zero,
    # but the target bracket of images must vanish too
    from .powers import monomials_of_length as _mol
    for mono in _mol(source.space, WEDGE, 2):
        if mono in source.brackets.get(2, {}):
            continue
        (n1, i1), (n2, i2) = mono
        img1 = eps.apply(n1, source.space.basis_vector(n1, i1))
        img2 = eps.apply(n2, source.space.basis_vector(n2, i2))
        _, lhs = target.ell_vectors(2, [(n1, img1), (n2, img2)])
        if any(lhs):
            raise ValueError("augmentation is not a morphism of brackets at %r" % (mono,))
    return True


def fm_cone(source, target, eps, arity_bound=6, multigrading=None):
    """The Fiorenza-Manetti L-infinity structure on Cone(eps)[-1].

    source, target: DG Lie algebras; eps: GradedMap source -> target of
    degree 0.  l_1 is the cone differential d(x, y) = (dx, eps(x) - dy);
    l_2 the naive bracket; the higher components follow the
    Bernoulli-number formula for one L-factor and r >= 2 M-factors.
    """
    if not source.is_dg_lie() or not target.is_dg_lie():
        raise ValueError("the mapping-cone construction expects DG Lie inputs")
    _check_dg_lie_morphism(eps, source, target)
    f = source.field
    degs = set(source.space.degrees()) | set(n + 1 for n in target.space.degrees())
    parts = {}
    dims = {}
    labels = {}
    for n in sorted(degs):
        a = source.space.dim(n)
        b = target.space.dim(n - 1)
        if a + b == 0:
            continue
        parts[n] = (a, b)
        dims[n] = a + b
        la = ["L:%s" % s for s in (source.space.labels.get(n) or ())]
        lb = ["M:%s" % s for s in (target.space.labels.get(n - 1) or ())]
        labels[n] = tuple(la + lb)
    space = GradedSpace(f, dims, labels)

    def is_l(gen):
        n, i = gen
        return i < parts[n][0]

    def as_l(gen):
        return gen

    def as_m(gen):
        n, i = gen
        return (n - 1, i - parts[n][0])

    def cone_vec_from_l(n, vec):
        a, b = parts.get(n, (0, 0))
        return list(vec) + [f.zero()] * b

    def cone_vec_from_m(nm, vec):
        n = nm + 1
        a, b = parts.get(n, (0, 0))
        return [f.zero()] * a + list(vec)

    brackets = {}

    # l_1: d(x, y) = (dx, eps(x) - dy)
    table1 = {}
    for n in sorted(parts):
        a, b = parts[n]
        tdim = dims.get(n + 1, 0)
        for i in range(a + b):
            if is_l((n, i)):
                x = source.space.basis_vector(n, i)
                dx = source.differential().apply(n, x)
                ex = eps.apply(n, x)
                val = None
                if dims.get(n + 1, 0):
                    val = [f.zero()] * dims[n + 1]
                    a2, b2 = parts.get(n + 1, (0, 0))
                    for r_, c in enumerate(dx):
                        val[r_] = c
                    for r_, c in enumerate(ex):
                        val[a2 + r_] = val[a2 + r_] + c
            else:
                mdeg, mi = as_m((n, i))
                y = target.space.basis_vector(mdeg, mi)
                dy = target.differential().apply(mdeg, y)
                val = None
                if dims.get(n + 1, 0):
                    a2, b2 = parts.get(n + 1, (0, 0))
                    val = [f.zero()] * dims[n + 1]
                    for r_, c in enumerate(dy):
                        val[a2 + r_] = -c
            if val and any(val):
                table1[((n, i),)] = val
    if table1:
        brackets[1] = table1

    # l_2: naive bracket
    table2 = {}
    gens = [(n, i) for n in sorted(parts) for i in range(dims[n])]
    for g1, g2 in combinations_with_repeats(gens):
        nf = normalize(WEDGE, (g1, g2), f)
        if nf is None or nf[1] != (g1, g2):
            continue
        n1, n2 = g1[0], g2[0]
        deg = n1 + n2
        if deg not in dims:
            continue
        a2, b2 = parts[deg]
        val = [f.zero()] * dims[deg]
        if is_l(g1) and is_l(g2):
            x = source.space.basis_vector(n1, g1[1])
            y = source.space.basis_vector(n2, g2[1])
            _, v = source.ell_vectors(2, [(n1, x), (n2, y)])
            for r_, c in enumerate(v):
                val[r_] = c
        elif is_l(g1) and not is_l(g2):
            # (x, 0) ^ (0, v) -> (0, (-1)^{|x|}/2 [eps(x), v])
            x = source.space.basis_vector(n1, g1[1])
            ex = eps.apply(n1, x)
            md, mi = as_m(g2)
            v = target.space.basis_vector(md, mi)
            _, w = target.ell_vectors(2, [(n1, ex), (md, v)])
            half = f.of(1) / f.of(2)
            sgn = f.of(-1) if n1 % 2 else f.one()
            for r_, c in enumerate(w):
                val[a2 + r_] = sgn * half * c
        elif not is_l(g1) and is_l(g2):
            # (0, u) ^ (y, 0) -> (0, 1/2 [u, eps(y)])
            md, mi = as_m(g1)
            u = target.space.basis_vector(md, mi)
            y = source.space.basis_vector(n2, g2[1])
            ey = eps.apply(n2, y)
            _, w = target.ell_vectors(2, [(md, u), (n2, ey)])
            half = f.of(1) / f.of(2)
            for r_, c in enumerate(w):
                val[a2 + r_] = half * c
        if any(val):
            table2[(g1, g2)] = val
    if table2:
        brackets[2] = table2

    # higher components: one L-factor, r >= 2 M-factors.  The series does not
    # terminate on its own; arity_bound is the documented truncation and must
    # be at least the largest bar truncation / nilpotency order used later.
    # Relative to the pinned decalage, Q.Q = 0 forces the sign
    #   q_{r+1}(u_1 (.) ... (.) u_r (x) x)
    #     = (-1)^{sum |u_i|} (B_r/r!) sum_tau eps(tau) [u_.., [..., eps(x)]..];
    # B_r = 0 for odd r >= 3, so this differs from flipping every higher
    # bracket at once, which no deformation-functor output can see.
    for arity in range(3, arity_bound + 1):
        r = arity - 1
        br = bernoulli(r)
        if br == 0:
            continue
        coeff_base = br / factorial(r)
        table = {}
        for mono in monomials_of_length(space, WEDGE, arity):
            lpos = [i for i, g in enumerate(mono) if is_l(g)]
            if len(lpos) != 1:
                continue
            # reorder in C[1]: move the L-factor to the end (sym parities)
            shifted_degs = [g[0] - 1 for g in mono]
            li = lpos[0]
            reorder_sign = f.one()
            for j in range(li + 1, len(mono)):
                if shifted_degs[li] % 2 and shifted_degs[j] % 2:
                    reorder_sign = -reorder_sign
            x_gen = mono[li]
            us = [g for i, g in enumerate(mono) if i != li]
            ex = eps.apply(x_gen[0], source.space.basis_vector(x_gen[0], x_gen[1]))
            if not any(ex):
                continue
            u_degs = [g[0] - 1 for g in us]  # degree in M = degree in C[1]
            acc_deg = None
            acc = None
            for perm in permutations(range(r)):
                sgn = _perm_koszul_sign(f, u_degs, perm)
                cur_deg, cur = x_gen[0], list(ex)
                for t in reversed(perm):
                    md, mi = as_m(us[t])
                    u = target.space.basis_vector(md, mi)
                    cur_deg, cur = target.ell_vectors(2, [(md, u), (cur_deg, cur)])
                if acc is None:
                    acc_deg, acc = cur_deg, [sgn * c for c in cur]
                else:
                    acc = [a + sgn * c for a, c in zip(acc, cur)]
            if acc is None or not any(acc):
                continue
            sign_u = f.of(-1) if sum(u_degs) % 2 else f.one()
            qval = [reorder_sign * sign_u * coeff_base * c for c in acc]
            # decalage back to l on the cone: q and l differ by the pinned sign
            dec = _decalage_sign(f, [g[0] for g in mono])
            out_deg = sum(g[0] for g in mono) + 2 - arity
            if out_deg not in dims:
                continue
            a2, b2 = parts[out_deg]
            val = [f.zero()] * dims[out_deg]
            for r_, c in enumerate(qval):
                val[a2 + r_] = dec * c
            if any(val):
                table[mono] = val
        if table:
            brackets[arity] = table

    return ConeAlgebra(space, brackets, source, target, eps, parts,
                       multigrading=multigrading)


def combinations_with_repeats(gens):
    for i in range(len(gens)):
        for j in range(i, len(gens)):
            yield gens[i], gens[j]


def _perm_koszul_sign(field, degrees, perm):
    """Symmetric Koszul sign of the permutation on elements of the degrees."""
    sgn = field.one()
    n = len(perm)
    for a in range(n):
        for b in range(a + 1, n):
            if perm[a] > perm[b] and degrees[perm[a]] % 2 and degrees[perm[b]] % 2:
                sgn = -sgn
    return sgn


# -- morphisms and transport ----------------------------------------------


class LinfMorphism:
    """Strong morphism: a degree-0 map commuting with every operation."""

    def __init__(self, source, target, gmap, check=True):
        self.source = source
        self.target = target
        self.map = gmap
        if check:
            self._validate()

    def _validate(self):
        f = self.source.field
        arities = set(self.source.arities()) | set(self.target.arities())
        for r in sorted(arities):
            for mono in monomials_of_length(self.source.space, WEDGE, r):
                deg, lhs_vec = self.source.ell(r, mono)
                lhs = self.map.apply(deg, lhs_vec)
                factors = []
                for (n, i) in mono:
                    factors.append((n, self.map.apply(n, self.source.space.basis_vector(n, i))))
                deg2, rhs = self.target.ell_vectors(r, factors)
                if lhs != rhs:
                    raise ValueError("map does not commute with l_%d at %r" % (r, mono))

    def bar_map(self, s):
        """C_s(phi): coalgebra morphism on the bar constructions."""
        src_bar = bar_construct(self.source, s)
        tgt_bar = bar_construct(self.target, s)
        f = self.source.field
        blocks = {}
        for n in src_bar.degrees():
            tgt_dim = tgt_bar.dim(n)
            src_ms = src_bar.basis[n]
            if not tgt_dim or not src_ms:
                continue
            m = [[f.zero()] * len(src_ms) for _ in range(tgt_dim)]
            for j, mono in enumerate(src_ms):
                factors = []
                for (d, i) in mono:
                    img = self.map.apply(d + 1, self.source.space.basis_vector(d + 1, i))
                    factors.append((d, img))
                for mono2, c in expand_product(tgt_bar.shift_space, SYM, factors).items():
                    m[tgt_bar.index[n][mono2]][j] = c
            blocks[n] = m
        return src_bar, tgt_bar, blocks
