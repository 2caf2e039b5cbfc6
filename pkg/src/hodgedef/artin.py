"""Local Artin algebras, Baker-Campbell-Hausdorff calculus, Maurer-Cartan
elements and the three deformation functors evaluated by finite-field
point counts.

Enumeration scale: deformation-functor point counts materialize solution
sets, so the corpora must keep |L^1 (x) m_A| and friends below the cap;
the guard raises instead of silently truncating.
"""

from fractions import Fraction
from itertools import product as iproduct

from .scalars import GF, QQ, factorial
from .graded import GradedMap, GradedSpace
from .linfinity import LInfinityAlgebra
from .powers import WEDGE, expand_product

ENUM_CAP = 3_000_000


class ArtinAlgebra:
    """Local Artin algebra by structure constants on a basis of its maximal
    ideal; the unit is adjoined implicitly."""

    def __init__(self, field, dim, mult, name="A"):
        self.field = field
        self.dim = dim
        self.name = name
        self.mult = {}
        for (i, j), out in mult.items():
            val = {k: field.of(c) for k, c in out.items() if field.of(c)}
            if val:
                self.mult[(i, j)] = val
        # symmetrize
        for (i, j) in list(self.mult):
            if (j, i) not in self.mult:
                self.mult[(j, i)] = self.mult[(i, j)]
        self._check()

    def _check(self):
        for (i, j), out in self.mult.items():
            if self.mult.get((j, i)) != out:
                raise ValueError("multiplication is not commutative")
        # associativity on basis triples
        for i in range(self.dim):
            for j in range(self.dim):
                for k in range(self.dim):
                    lhs = self.product(self.product(self.basis(i), self.basis(j)),
                                       self.basis(k))
                    rhs = self.product(self.basis(i),
                                       self.product(self.basis(j), self.basis(k)))
                    if lhs != rhs:
                        raise ValueError("multiplication not associative at (%d,%d,%d)"
                                         % (i, j, k))
        if self.nilpotency_index() is None:
            raise ValueError("maximal ideal is not nilpotent")

    def basis(self, i):
        v = [self.field.zero()] * self.dim
        v[i] = self.field.one()
        return v

    def zero(self):
        return [self.field.zero()] * self.dim

    def product(self, u, v):
        out = [self.field.zero()] * self.dim
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if not b:
                    continue
                for k, c in self.mult.get((i, j), {}).items():
                    out[k] = out[k] + a * b * c
        return out

    def power_spans(self):
        """Bases of m^1 >= m^2 >= ... as row lists; stops at zero."""
        from .linalg import Subspace
        spans = []
        cur = Subspace.full(self.field, self.dim)
        spans.append(cur)
        while cur.dim:
            rows = []
            for r in cur.rows:
                for i in range(self.dim):
                    rows.append(self.product(r, self.basis(i)))
            nxt = Subspace(self.field, self.dim, rows)
            if nxt.dim == cur.dim:
                return None
            cur = nxt
            if cur.dim:
                spans.append(cur)
        return spans

    def nilpotency_index(self):
        spans = self.power_spans()
        if spans is None:
            return None
        return len(spans) + 1

    def change_field(self, field):
        mult = {k: {i: field.of(_lift(c)) for i, c in out.items()}
                for k, out in self.mult.items()}
        return ArtinAlgebra(field, self.dim, mult, self.name)


def _lift(c):
    if isinstance(c, Fraction):
        return c
    return c


def artin_truncated_polynomial(m, field=QQ):
    """k[t]/t^m with basis t, t^2, ..., t^{m-1}."""
    mult = {}
    for i in range(1, m):
        for j in range(1, m):
            if i + j < m:
                mult[(i - 1, j - 1)] = {i + j - 1: 1}
    return ArtinAlgebra(field, m - 1, mult, "k[t]/t^%d" % m)


def artin_square_zero_plane(field=QQ):
    """k[x,y]/(x,y)^2."""
    return ArtinAlgebra(field, 2, {}, "k[x,y]/(x,y)^2")


def artin_plane_order(m, field=QQ):
    """k[x,y]/(x,y)^m, basis the monomials x^a y^b with 1 <= a+b < m."""
    monos = [(a, b) for total in range(1, m) for a in range(total, -1, -1)
             for b in [total - a]]
    idx = {mn: i for i, mn in enumerate(monos)}
    mult = {}
    for m1 in monos:
        for m2 in monos:
            s = (m1[0] + m2[0], m1[1] + m2[1])
            if s[0] + s[1] < m:
                mult[(idx[m1], idx[m2])] = {idx[s]: 1}
    return ArtinAlgebra(field, len(monos), mult, "k[x,y]/(x,y)^%d" % m)


def artin_mixed_example(field=QQ):
    """k[x,y]/(x^2, xy, y^3), basis x, y, y^2."""
    mult = {(1, 1): {2: 1}}
    return ArtinAlgebra(field, 3, mult, "k[x,y]/(x^2,xy,y^3)")


CANONICAL_ARTIN = {
    "t2": lambda: artin_truncated_polynomial(2),
    "t3": lambda: artin_truncated_polynomial(3),
    "t4": lambda: artin_truncated_polynomial(4),
    "xy2": artin_square_zero_plane,
    "xy3": lambda: artin_plane_order(3),
    "mixed": artin_mixed_example,
}


# -- elements of L (x) m_A ---------------------------------------------------

class TensorElement:
    """Element of L^degree (x) m_A: coefficient matrix basis x artin-basis."""

    __slots__ = ("algebra", "artin", "degree", "coeffs")

    def __init__(self, algebra, artin, degree, coeffs=None):
        self.algebra = algebra
        self.artin = artin
        self.degree = degree
        d = algebra.space.dim(degree)
        if coeffs is None:
            z = artin.field.zero()
            coeffs = [[z] * artin.dim for _ in range(d)]
        self.coeffs = coeffs

    def copy(self):
        return TensorElement(self.algebra, self.artin, self.degree,
                             [list(r) for r in self.coeffs])

    def is_zero(self):
        return all(not c for row in self.coeffs for c in row)

    def add(self, other):
        assert other.degree == self.degree
        return TensorElement(self.algebra, self.artin, self.degree,
                             [[a + b for a, b in zip(ra, rb)]
                              for ra, rb in zip(self.coeffs, other.coeffs)])

    def sub(self, other):
        return TensorElement(self.algebra, self.artin, self.degree,
                             [[a - b for a, b in zip(ra, rb)]
                              for ra, rb in zip(self.coeffs, other.coeffs)])

    def scale(self, c):
        return TensorElement(self.algebra, self.artin, self.degree,
                             [[c * a for a in r] for r in self.coeffs])

    def freeze(self):
        return tuple(tuple(r) for r in self.coeffs)

    @classmethod
    def thaw(cls, algebra, artin, degree, frozen):
        return cls(algebra, artin, degree, [list(r) for r in frozen])

    def support(self):
        return [(i, j) for i, row in enumerate(self.coeffs)
                for j, c in enumerate(row) if c]


def ell_tensor(algebra, artin, r, elements):
    """l_r on elements of L (x) m_A (multilinear, m_A product on the side)."""
    f = artin.field
    out_deg = sum(e.degree for e in elements) + 2 - r
    out = TensorElement(algebra, artin, out_deg)
    supports = [e.support() for e in elements]
    if any(not s for s in supports):
        return out
    for choice in iproduct(*supports):
        mono = tuple((elements[t].degree, choice[t][0]) for t in range(r))
        _, vec = algebra.ell(r, mono)
        if not any(vec):
            continue
        coeff = f.one()
        acoef = None
        for t, (bi, aj) in enumerate(choice):
            coeff = coeff * elements[t].coeffs[bi][aj]
            unit = artin.basis(aj)
            acoef = unit if acoef is None else artin.product(acoef, unit)
        if not coeff or not any(acoef):
            continue
        for i, c in enumerate(vec):
            if c:
                for j, a in enumerate(acoef):
                    if a:
                        out.coeffs[i][j] = out.coeffs[i][j] + c * coeff * a
    return out


def d_tensor(element):
    return ell_tensor(element.algebra, element.artin, 1, [element])


def bracket_tensor(a, b):
    assert a.algebra is b.algebra
    return ell_tensor(a.algebra, a.artin, 2, [a, b])


def mc_residual(algebra, artin, x, max_arity=None):
    """Curvature sum_r (1/r!) l_r(x ^ ... ^ x); zero iff x is Maurer-Cartan."""
    f = artin.field
    nilp = artin.nilpotency_index()
    arities = [r for r in algebra.arities() if r >= 1]
    if max_arity is not None:
        arities = [r for r in arities if r <= max_arity]
    out = TensorElement(algebra, artin, x.degree + 1)
    for r in arities:
        if r >= nilp:
            continue
        term = ell_tensor(algebra, artin, r, [x] * r)
        inv = f.of(Fraction(1)) / f.of(factorial(r))
        out = out.add(term.scale(inv))
    return out


def bch(algebra, artin, alpha, beta, degree=0):
    """Dynkin series for log(e^alpha e^beta), truncated by nilpotency."""
    f = artin.field
    nilp = artin.nilpotency_index()
    max_len = nilp - 1

    def word_bracket(word):
        # [w1,[w2,...,[w_{m-1}, w_m]...]
        cur = word[-1]
        for w in reversed(word[:-1]):
            cur = bracket_tensor(w, cur)
            if cur.is_zero():
                return cur
        return cur

    total = TensorElement(algebra, artin, degree)

    def blocks(remaining, n_blocks_left, acc):
        # yield tuples of (r_i, s_i) != (0,0)
        if n_blocks_left == 0:
            if acc:
                yield tuple(acc)
            return
        for r in range(0, remaining + 1):
            for s in range(0, remaining - r + 1):
                if r == 0 and s == 0:
                    continue
                yield from blocks(remaining - r - s, n_blocks_left - 1, acc + [(r, s)])

    for n in range(1, max_len + 1):
        outer = f.of(Fraction((-1) ** (n - 1), n))
        for shape in blocks(max_len, n, []):
            if len(shape) != n:
                continue
            m = sum(r + s for (r, s) in shape)
            if m < 1 or m > max_len:
                continue
            denom = m
            word = []
            for (r, s) in shape:
                word.extend([alpha] * r)
                word.extend([beta] * s)
                denom_factor = factorial(r) * factorial(s)
                denom = denom * denom_factor
            if len(word) == 1:
                val = word[0]
            else:
                val = word_bracket(word)
            if val.is_zero():
                continue
            total = total.add(val.scale(outer * (f.of(Fraction(1)) / f.of(denom))))
    return total


def gauge_action(algebra, artin, lam, x):
    """e^lam . x = x + sum_j ad_lam^j([lam, x] - d lam)/(j+1)!.

    lam in L^0 (x) m_A, x in L^1 (x) m_A; truncated by nilpotency.
    """
    f = artin.field
    nilp = artin.nilpotency_index()
    base = bracket_tensor(lam, x).sub(d_tensor(lam))
    out = x
    cur = base
    j = 0
    while not cur.is_zero():
        if j + 1 >= nilp + 2:
            raise ArithmeticError("gauge series failed to terminate")
        inv = f.of(Fraction(1)) / f.of(factorial(j + 1))
        out = out.add(cur.scale(inv))
        cur = bracket_tensor(lam, cur)
        j += 1
    return out


# -- the deformation functors over a prime field ----------------------------

def change_algebra_field(algebra, field):
    space = GradedSpace(field, dict(algebra.space.dims), dict(algebra.space.labels))
    brackets = {}
    for r, table in algebra.brackets.items():
        brackets[r] = {m: [field.of(x) for x in v] for m, v in table.items()}
    return LInfinityAlgebra(space, brackets, multigrading=algebra.multigrading,
                            check_grading=False)


def change_map_field(gmap, src, tgt):
    blocks = {n: [[src.field.of(x) for x in row] for row in m]
              for n, m in gmap.blocks.items()}
    return GradedMap(src.space, tgt.space, gmap.degree, blocks)


def denominator_bound(artin):
    """Truncation bound: factorials and BCH denominators up to this must invert."""
    return artin.nilpotency_index()


def _iter_elements(algebra, artin, degree, cap=ENUM_CAP):
    f = artin.field
    d = algebra.space.dim(degree)
    total = d * artin.dim
    count = f.p ** total if hasattr(f, "p") else None
    if count is None or count > cap:
        raise ValueError("enumeration space of size %s exceeds the cap" % count)
    vals = [f.of(v) for v in range(f.p)]
    for tup in iproduct(vals, repeat=total):
        coeffs = [list(tup[i * artin.dim:(i + 1) * artin.dim]) for i in range(d)]
        yield TensorElement(algebra, artin, degree, coeffs)


def mc_set(algebra, artin, cap=ENUM_CAP):
    """All Maurer-Cartan elements of L^1 (x) m_A over a prime field."""
    out = []
    for x in _iter_elements(algebra, artin, 1, cap):
        if mc_residual(algebra, artin, x).is_zero():
            out.append(x)
    return out


class FunctorPoints:
    def __init__(self, kind, orbit_count, orbits, total_objects, method="enumerate"):
        self.kind = kind
        self.orbit_count = orbit_count
        self.orbits = orbits
        self.total_objects = total_objects
        self.method = method

    def representatives(self):
        if self.orbits is None:
            return None
        return sorted(min(o) for o in self.orbits)


def _orbit_closure(points, moves):
    """Partition a finite point set by closure under the given moves."""
    index = {pt: i for i, pt in enumerate(points)}
    parent = list(range(len(points)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    for pt in points:
        for mv in moves:
            q = mv(pt)
            if q not in index:
                raise ArithmeticError("a move left the solution set")
            union(index[pt], index[q])
    orbits = {}
    for pt in points:
        orbits.setdefault(find(index[pt]), []).append(pt)
    return list(orbits.values())


def functor_points(kind, algebra, artin, p, eps=None, g=None, cap=ENUM_CAP,
                   method="auto"):
    """Point count of the plain / augmented / cone deformation functor.

    algebra: the DG Lie algebra L over k0; artin: over k0 (both get reduced
    mod p).  For augmented and cone kinds, eps: L -> g is the augmentation
    (g a DG Lie algebra; for the cone kind g may sit in several degrees).

    method: "enumerate" materializes the object set (cap-guarded) and closes
    under the relation moves; "reduced" counts orbits without materializing
    the group direction, via orbit-stabilizer and Burnside (valid for the
    augmented functor, and for the cone functor when the target is
    concentrated in degree zero, where the extra mu-moves and the
    e^alpha.eps(x) = 0 condition are structurally vacuous); "auto" picks.
    """
    f = GF(p)
    f.require_exceeds(denominator_bound(artin))
    A = artin.change_field(f)
    L = change_algebra_field(algebra, f)
    G = change_algebra_field(g, f) if g is not None else None
    E = change_map_field(eps, L, G) if eps is not None else None

    if kind in ("augmented", "cone") and method in ("auto", "reduced"):
        g_dim_total = sum(G.space.dim(m) for m in G.space.degrees())
        alpha_size = p ** (G.space.dim(0) * A.dim)
        mc_size = p ** (L.space.dim(1) * A.dim)
        if method == "reduced" or mc_size * alpha_size > cap:
            return _reduced_count(kind, L, A, f, E, G, p, cap)

    def eps_apply(elt):
        out = TensorElement(G, A, elt.degree)
        for (i, j) in elt.support():
            img = E.apply(elt.degree, L.space.basis_vector(elt.degree, i))
            for t, c in enumerate(img):
                if c:
                    out.coeffs[t][j] = out.coeffs[t][j] + c * elt.coeffs[i][j]
        return out

    mc = mc_set(L, A, cap)
    lam_gens = [(i, j) for i in range(L.space.dim(0)) for j in range(A.dim)]

    def lam_elt(i, j):
        lam = TensorElement(L, A, 0)
        lam.coeffs[i][j] = f.one()
        return lam

    if kind == "plain":
        points = [x.freeze() for x in mc]
        moves = []
        for (i, j) in lam_gens:
            lam = lam_elt(i, j)
            moves.append(lambda pt, lam=lam:
                         gauge_action(L, A, lam, TensorElement.thaw(L, A, 1, pt)).freeze())
        orbits = _orbit_closure(points, moves)
        return FunctorPoints(kind, len(orbits), orbits, len(points))

    if E is None or G is None:
        raise ValueError("augmented and cone functors need an augmentation")

    if kind == "augmented":
        if G.space.degrees() not in ([0], []):
            raise ValueError("augmented functor expects g in degree zero")
        g_dim = G.space.dim(0)
        total = (g_dim * A.dim)
        if len(mc) * (p ** total) > cap:
            raise ValueError("object space exceeds the cap")
        points = []
        alphas = list(_iter_elements(G, A, 0, cap))
        for x in mc:
            for al in alphas:
                points.append((x.freeze(), al.freeze()))
        moves = []
        for (i, j) in lam_gens:
            lam = lam_elt(i, j)
            eps_lam = eps_apply(lam)

            def mv(pt, lam=lam, eps_lam=eps_lam):
                xf, af = pt
                x = TensorElement.thaw(L, A, 1, xf)
                al = TensorElement.thaw(G, A, 0, af)
                x2 = gauge_action(L, A, lam, x)
                al2 = bch(G, A, al, eps_lam.scale(f.of(-1)))
                return (x2.freeze(), al2.freeze())

            moves.append(mv)
        orbits = _orbit_closure(points, moves)
        return FunctorPoints(kind, len(orbits), orbits, len(points))

    if kind == "cone":
        # objects: (x, e^alpha) with x in MC(L), alpha in M^0 (x) m_A and
        # e^alpha . eps(x) = 0 (gauge action on M^1); relation generated by
        # lambda in L^0 and mu in M^{-1}
        m0_dim = G.space.dim(0)
        total = m0_dim * A.dim
        if len(mc) * (p ** total) > cap:
            raise ValueError("object space exceeds the cap")
        points = []
        alphas = list(_iter_elements(G, A, 0, cap))
        for x in mc:
            ex = eps_apply(x)
            for al in alphas:
                if gauge_action(G, A, al, ex).is_zero():
                    points.append((x.freeze(), al.freeze()))
        moves = []
        for (i, j) in lam_gens:
            lam = lam_elt(i, j)
            eps_lam = eps_apply(lam)

            def mv(pt, lam=lam, eps_lam=eps_lam):
                xf, af = pt
                x = TensorElement.thaw(L, A, 1, xf)
                al = TensorElement.thaw(G, A, 0, af)
                x2 = gauge_action(L, A, lam, x)
                al2 = bch(G, A, al, eps_lam.scale(f.of(-1)))
                return (x2.freeze(), al2.freeze())

            moves.append(mv)
        for i in range(G.space.dim(-1)):
            for j in range(A.dim):
                mu = TensorElement(G, A, -1)
                mu.coeffs[i][j] = f.one()
                dmu = d_tensor(mu)

                def mv(pt, dmu=dmu):
                    xf, af = pt
                    al = TensorElement.thaw(G, A, 0, af)
                    al2 = bch(G, A, dmu, al)
                    return (xf, al2.freeze())

                moves.append(mv)
        orbits = _orbit_closure(points, moves)
        return FunctorPoints(kind, len(orbits), orbits, len(points))

    raise ValueError("unknown functor kind %r" % kind)


def _reduced_count(kind, L, A, f, E, G, p, cap):
    """Orbit count without materializing the exp(g (x) m_A) direction.

    Derivation (augmented functor): objects are MC x G_g with the gauge
    group acting by (e^lam.x, alpha * (-eps lam)).  Fibering over the
    x-orbits, the fiber orbit count is |G_g| / |eps(Stab(x))|; writing
    |eps(Stab)| = |Stab| / |Stab cap Ker| for the normal subgroup
    Ker = exp(ker(eps|L^0) (x) m_A) and applying orbit-stabilizer plus
    Burnside to the Ker-action on MC gives

        count = |G_g| . |Ker| / |Gauge| . #( MC / Ker-gauge ).

    For the cone functor with the target concentrated in degree zero, the
    membership condition e^alpha.eps(x) = 0 lives in M^1 (x) m_A = 0 and
    the mu-moves live in M^{-1} (x) m_A = 0, so the same count applies;
    both vanishing facts are asserted structurally below.
    """
    if kind == "cone":
        if G.space.dim(1) != 0 or G.space.dim(-1) != 0:
            raise ValueError("reduced cone count needs the target in degree zero")
    else:
        if G.space.degrees() not in ([0], []):
            raise ValueError("augmented functor expects g in degree zero")
    mc = mc_set(L, A, cap)
    # kernel of eps restricted to L^0
    from .linalg import kernel_basis
    l0 = L.space.dim(0)
    eps0 = E.block(0)
    ker0 = kernel_basis(f, eps0, l0) if l0 else []
    moves = []
    for kv in ker0:
        for j in range(A.dim):
            lam = TensorElement(L, A, 0)
            for i, c in enumerate(kv):
                lam.coeffs[i][j] = c
            moves.append(lambda pt, lam=lam:
                         gauge_action(L, A, lam, TensorElement.thaw(L, A, 1, pt)).freeze())
    points = [x.freeze() for x in mc]
    orbits = _orbit_closure(points, moves)
    g_size = p ** (G.space.dim(0) * A.dim)
    ker_size = p ** (len(ker0) * A.dim)
    gauge_size = p ** (l0 * A.dim)
    count_times_gauge = g_size * ker_size * len(orbits)
    if count_times_gauge % gauge_size:
        raise ArithmeticError("reduced orbit count is not integral")
    return FunctorPoints(kind, count_times_gauge // gauge_size, None,
                         len(points) * g_size, method="reduced")
