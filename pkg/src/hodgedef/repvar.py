"""Representation-variety oracle: finite presentations, matrix
representations, truncated formal local rings at a representation, lift
counts over finite fields, and the formal augmented-diagram templates the
pipeline is cross-checked against.

Everything is exact: relator words are expanded by interval multiplication
over truncated polynomial rings, never by symbolic group rewriting.
"""

from fractions import Fraction
from itertools import product as iproduct

from .scalars import GF, QQ, QQ_I, factorial
from .graded import Filtration, GradedMap, GradedSpace
from .hodge import PureHodgeStructure
from .linalg import Subspace, inverse, rank, rref
from .powers import SYM, expand_product

ENUM_CAP = 2_000_000


class GroupPresentation:
    """Generators 1..k; relators are words of nonzero integers, sign = inverse."""

    def __init__(self, generators, relators):
        self.generators = generators
        self.relators = []
        for w in relators:
            w = list(w)
            if any(x == 0 or abs(x) > generators for x in w):
                raise ValueError("relator letters must be nonzero and within range")
            self.relators.append(self._reduce(w))

    @staticmethod
    def _reduce(w):
        out = []
        for x in w:
            if out and out[-1] == -x:
                out.pop()
            else:
                out.append(x)
        return out

    @classmethod
    def free(cls, k):
        return cls(k, [])

    @classmethod
    def Z(cls):
        return cls(1, [])

    @classmethod
    def Z2(cls):
        return cls(2, [[1, 2, -1, -2]])


def gl_basis(n):
    """Matrix basis E_ij of gl_n, row-major."""
    out = []
    for i in range(n):
        for j in range(n):
            m = [[Fraction(0)] * n for _ in range(n)]
            m[i][j] = Fraction(1)
            out.append(m)
    return out


def sl_basis(n):
    """E_ij (i != j) then H_i = E_ii - E_{i+1,i+1}."""
    out = []
    for i in range(n):
        for j in range(n):
            if i != j:
                m = [[Fraction(0)] * n for _ in range(n)]
                m[i][j] = Fraction(1)
                out.append(m)
    for i in range(n - 1):
        m = [[Fraction(0)] * n for _ in range(n)]
        m[i][i] = Fraction(1)
        m[i + 1][i + 1] = Fraction(-1)
        out.append(m)
    return out


class MatrixRep:
    """Images of the generators in GL_n or SL_n; relators must map to 1."""

    def __init__(self, presentation, group, n, images, field=QQ):
        self.presentation = presentation
        self.group = group
        self.n = n
        self.field = field
        if group not in ("GL", "SL"):
            raise ValueError("target group must be GL or SL")
        self.images = [[[field.of(x) for x in row] for row in m] for m in images]
        if len(self.images) != presentation.generators:
            raise ValueError("need one matrix per generator")
        self._inverses = []
        for m in self.images:
            inv = inverse(field, m)
            if inv is None:
                raise ValueError("generator image is not invertible")
            self._inverses.append(inv)
        for w in presentation.relators:
            if not _is_identity(field, self.evaluate_word(w), n):
                raise ValueError("relator %r does not evaluate to the identity" % (w,))

    @classmethod
    def trivial(cls, presentation, group, n):
        eye = [[Fraction(1) if i == j else Fraction(0) for j in range(n)]
               for i in range(n)]
        return cls(presentation, group, n, [eye] * presentation.generators)

    def lie_algebra_basis(self):
        return gl_basis(self.n) if self.group == "GL" else sl_basis(self.n)

    def evaluate_word(self, w):
        from .linalg import mat_mul, identity
        out = identity(self.field, self.n)
        for x in w:
            m = self.images[x - 1] if x > 0 else self._inverses[-x - 1]
            out = mat_mul(self.field, out, m)
        return out


def _is_identity(field, m, n):
    for i in range(n):
        for j in range(n):
            want = field.one() if i == j else field.zero()
            if m[i][j] != want:
                return False
    return True


# -- truncated polynomial arithmetic ----------------------------------------

class PolyRing:
    """k[x_1..x_v] truncated above total degree `order` (monomial dicts)."""

    def __init__(self, field, nvars, order):
        self.field = field
        self.nvars = nvars
        self.order = order

    def zero(self):
        return {}

    def one(self):
        return {(0,) * self.nvars: self.field.one()}

    def var(self, i):
        e = [0] * self.nvars
        e[i] = 1
        return {tuple(e): self.field.one()}

    def scal(self, c):
        c = self.field.of(c)
        return {(0,) * self.nvars: c} if c else {}

    def add(self, a, b):
        out = dict(a)
        for k, c in b.items():
            cur = out.get(k, self.field.zero()) + c
            if cur:
                out[k] = cur
            elif k in out:
                del out[k]
        return out

    def neg(self, a):
        return {k: -c for k, c in a.items()}

    def mul(self, a, b):
        out = {}
        for k1, c1 in a.items():
            d1 = sum(k1)
            for k2, c2 in b.items():
                if d1 + sum(k2) > self.order:
                    continue
                k = tuple(x + y for x, y in zip(k1, k2))
                cur = out.get(k, self.field.zero()) + c1 * c2
                if cur:
                    out[k] = cur
                elif k in out:
                    del out[k]
        return out

    def scale(self, c, a):
        return {k: c * v for k, v in a.items() if c * v}

    def monomials_upto(self, d):
        def rec(rem, pos):
            if pos == self.nvars:
                yield ()
                return
            for e in range(rem + 1):
                for rest in rec(rem - e, pos + 1):
                    yield (e,) + rest
        return [m for m in rec(d, 0)]


def _pm_identity(ring, n):
    return [[ring.one() if i == j else ring.zero() for j in range(n)] for i in range(n)]


def _pm_mul(ring, a, b):
    n = len(a)
    out = [[ring.zero() for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for t in range(n):
            if not a[i][t]:
                continue
            for j in range(n):
                if b[t][j]:
                    out[i][j] = ring.add(out[i][j], ring.mul(a[i][t], b[t][j]))
    return out


def _pm_add(ring, a, b):
    return [[ring.add(x, y) for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _pm_scale(ring, c, a):
    return [[ring.scale(c, x) for x in a] for a in [row for row in a]]


def _pm_exp(ring, xi, order):
    """exp of a matrix with entries of positive polynomial degree."""
    n = len(xi)
    out = _pm_identity(ring, n)
    term = _pm_identity(ring, n)
    for m in range(1, order + 1):
        term = _pm_mul(ring, term, xi)
        if all(not e for row in term for e in row):
            break
        inv = ring.field.of(Fraction(1)) / ring.field.of(factorial(m))
        out = _pm_add(ring, out, [[ring.scale(inv, e) for e in row] for row in term])
    return out


class TruncatedLocalRing:
    """Quotient of a truncated polynomial ring by relator-ideal spans."""

    def __init__(self, nvars, order, hilbert, quotient_monomials, ideal_rows):
        self.nvars = nvars
        self.order = order
        self.hilbert = hilbert
        self.quotient_monomials = quotient_monomials
        self.ideal_rows = ideal_rows

    def cotangent_dim(self):
        return self.hilbert[1] if len(self.hilbert) > 1 else 0


def ohat_truncate(presentation, rep, order):
    """Formal local ring of the representation variety at rep, to the given
    order: substitute rho(g) exp(xi), expand relators, eliminate linearly."""
    field = rep.field
    basis = rep.lie_algebra_basis()
    gdim = len(basis)
    nvars = presentation.generators * gdim
    ring = PolyRing(field, nvars, order)
    n = rep.n

    def lift_matrix(gen_index):
        xi = [[ring.zero() for _ in range(n)] for _ in range(n)]
        for b, mat in enumerate(basis):
            v = gen_index * gdim + b
            pv = ring.var(v)
            for i in range(n):
                for j in range(n):
                    if mat[i][j]:
                        xi[i][j] = ring.add(xi[i][j], ring.scale(field.of(mat[i][j]), pv))
        e = _pm_exp(ring, xi, order)
        const = [[ring.scal(x) for x in row] for row in rep.images[gen_index]]
        return _pm_mul(ring, const, e), xi

    lifts = []
    lift_invs = []
    for g in range(presentation.generators):
        m, xi = lift_matrix(g)
        lifts.append(m)
        nxi = [[ring.neg(e) for e in row] for row in xi]
        einv = _pm_exp(ring, nxi, order)
        const_inv = [[ring.scal(x) for x in row] for row in rep._inverses[g]]
        lift_invs.append(_pm_mul(ring, einv, const_inv))

    gens = []
    for w in presentation.relators:
        out = _pm_identity(ring, n)
        for x in w:
            m = lifts[x - 1] if x > 0 else lift_invs[-x - 1]
            out = _pm_mul(ring, out, m)
        for i in range(n):
            for j in range(n):
                e = dict(out[i][j])
                if i == j:
                    unit = (0,) * nvars
                    cur = e.get(unit, field.zero()) - field.one()
                    if cur:
                        e[unit] = cur
                    elif unit in e:
                        del e[unit]
                if any(c for c in e.values()):
                    if e.get((0,) * nvars):
                        raise ArithmeticError("relator has a constant term; "
                                              "the representation is invalid")
                    gens.append(e)

    sparse_rows = []
    for g in gens:
        low = min(sum(k) for k in g)
        for mult in ring.monomials_upto(order - low):
            prod = ring.mul({mult: field.one()}, g)
            prod = {k: c for k, c in prod.items() if sum(k) >= 1}
            if prod:
                sparse_rows.append(prod)
    base_tags = _diagonal_weight_tags(rep)
    var_tags = None
    if base_tags is not None:
        var_tags = [base_tags[v % gdim] for v in range(nvars)]
    hilbert, quotient_monomials = _hilbert_from_ideal_rows(
        field, ring, sparse_rows, order, var_tags)
    return TruncatedLocalRing(nvars, order, tuple(hilbert), quotient_monomials,
                              sparse_rows)


def _diagonal_weight_tags(rep):
    """Torus weights of the coordinates, usable when every generator image is
    diagonal (then the relator ideal is weight-homogeneous)."""
    for m in rep.images:
        for i in range(rep.n):
            for j in range(rep.n):
                if i != j and m[i][j]:
                    return None
    basis = rep.lie_algebra_basis()
    tags = []
    for mat in basis:
        w = None
        for i in range(rep.n):
            for j in range(rep.n):
                if mat[i][j]:
                    this = tuple((1 if t == i else 0) - (1 if t == j else 0)
                                 for t in range(rep.n))
                    if w is None:
                        w = this
                    elif w != this:
                        return None
        tags.append(w or (0,) * rep.n)
    return tags


def _hilbert_from_ideal_rows(field, ring, sparse_rows, order, var_tags):
    """h(i) = dim (m^i + J)/(m^{i+1} + J), split by weight classes when the
    rows are weight-homogeneous for the given variable tags."""
    monos = [m for m in ring.monomials_upto(order) if sum(m) >= 1]
    classes = {}
    for m in monos:
        classes.setdefault(_mono_weight(m, var_tags), []).append(m)
    rows_by_class = {}
    for row in sparse_rows:
        ws = {_mono_weight(k, var_tags) for k in row}
        if len(ws) != 1:
            # not weight-homogeneous: fall back to a single class
            classes = {(): monos}
            rows_by_class = {(): sparse_rows}
            break
        rows_by_class.setdefault(ws.pop(), []).append(row)
    hilbert = [1] + [0] * order
    quotient_monomials = {i: [] for i in range(1, order + 1)}
    for key in sorted(classes):
        cmonos = sorted(classes[key], key=lambda m: (sum(m), m))
        cidx = {m: t for t, m in enumerate(cmonos)}
        dense = []
        for row in rows_by_class.get(key, ()):
            v = [field.zero()] * len(cmonos)
            for k, c in row.items():
                v[cidx[k]] = c
            dense.append(v)
        j_ech = Subspace(field, len(cmonos), dense)
        for i in range(1, order + 1):
            base_rows = []
            for m in cmonos:
                if sum(m) >= i + 1:
                    v = [field.zero()] * len(cmonos)
                    v[cidx[m]] = field.one()
                    base_rows.append(v)
            span = Subspace(field, len(cmonos), base_rows + j_ech.rows)
            for m in cmonos:
                if sum(m) != i:
                    continue
                v = [field.zero()] * len(cmonos)
                v[cidx[m]] = field.one()
                if not span.contains_vector(v):
                    hilbert[i] += 1
                    quotient_monomials[i].append(m)
                    span = Subspace(field, len(cmonos), span.rows + [v])
    for i in quotient_monomials:
        quotient_monomials[i].sort()
    return hilbert, quotient_monomials


def _mono_weight(m, var_tags):
    if var_tags is None:
        return ()
    acc = None
    for v, e in enumerate(m):
        if e:
            t = var_tags[v]
            if acc is None:
                acc = tuple(x * e for x in t)
            else:
                acc = tuple(a + x * e for a, x in zip(acc, t))
    if acc is None:
        return (0,) * len(var_tags[0]) if var_tags else ()
    return acc


# -- lift counting over finite fields ----------------------------------------

def def_counts(presentation, rep, artin, p, quotient=None, cap=ENUM_CAP):
    """Number of lifts of rep to A = k (+) m_A over F_p, optionally modulo
    the conjugation action of exp(g (x) m_A).

    The relator equations are expanded symbolically in the unknown
    g-coordinates; the count is closed-form for identically-zero or
    affine-linear systems and falls back to capped enumeration.
    """
    f = GF(p)
    A = artin.change_field(f)
    f.require_exceeds(A.nilpotency_index())
    basis = rep.lie_algebra_basis()
    gdim = len(basis)
    nunk = presentation.generators * gdim * A.dim
    n = rep.n
    # polynomial ring in the unknowns; coefficients carry an m_A leg via
    # vectors over the m_A basis (index -1 = the unit component)
    ring = PolyRing(f, nunk, A.nilpotency_index())

    def unit_entry(c):
        return {-1: ring.scal(c)}

    def a_mul(e1, e2):
        out = {}
        for i1, p1 in e1.items():
            for i2, p2 in e2.items():
                prod = ring.mul(p1, p2)
                if not prod:
                    continue
                if i1 == -1 and i2 == -1:
                    targets = {-1: f.one()}
                elif i1 == -1:
                    targets = {i2: f.one()}
                elif i2 == -1:
                    targets = {i1: f.one()}
                else:
                    targets = A.mult.get((i1, i2), {})
                for t, c in targets.items():
                    cur = out.get(t, {})
                    out[t] = ring.add(cur, ring.scale(c, prod))
        return {k: v for k, v in out.items() if v}

    def a_add(e1, e2):
        out = dict(e1)
        for i, q in e2.items():
            out[i] = ring.add(out.get(i, {}), q)
        return {k: v for k, v in out.items() if v}

    def m_mul(m1, m2):
        out = [[{} for _ in range(n)] for _ in range(n)]
        for i in range(n):
            for t in range(n):
                if not m1[i][t]:
                    continue
                for j in range(n):
                    if m2[t][j]:
                        out[i][j] = a_add(out[i][j], a_mul(m1[i][t], m2[t][j]))
        return out

    def m_exp(xi):
        out = [[unit_entry(f.one()) if i == j else {} for j in range(n)]
               for i in range(n)]
        term = [[unit_entry(f.one()) if i == j else {} for j in range(n)]
                for i in range(n)]
        for m in range(1, A.nilpotency_index() + 1):
            term = m_mul(term, xi)
            if all(not e for row in term for e in row):
                break
            inv = f.of(Fraction(1)) / f.of(factorial(m))
            add = [[{k: ring.scale(inv, q) for k, q in e.items()} for e in row]
                   for row in term]
            out = [[a_add(x, y) for x, y in zip(r1, r2)] for r1, r2 in zip(out, add)]
        return out

    lifts = []
    lift_invs = []
    for g in range(presentation.generators):
        xi = [[{} for _ in range(n)] for _ in range(n)]
        for b, mat in enumerate(basis):
            for j_m in range(A.dim):
                v = (g * gdim + b) * A.dim + j_m
                pv = ring.var(v)
                for i in range(n):
                    for j in range(n):
                        if mat[i][j]:
                            entry = xi[i][j]
                            cur = entry.get(j_m, {})
                            entry[j_m] = ring.add(cur, ring.scale(f.of(mat[i][j]), pv))
        exp_xi = m_exp(xi)
        nxi = [[{k: ring.neg(q) for k, q in e.items()} for e in row] for row in xi]
        exp_nxi = m_exp(nxi)
        const = [[unit_entry(f.of(x)) if f.of(x) else {} for x in row]
                 for row in rep.images[g]]
        const_inv = [[unit_entry(f.of(x)) if f.of(x) else {} for x in row]
                     for row in rep._inverses[g]]
        lifts.append(m_mul(const, exp_xi))
        lift_invs.append(m_mul(exp_nxi, const_inv))

    equations = []
    for w in presentation.relators:
        out = [[unit_entry(f.one()) if i == j else {} for j in range(n)]
               for i in range(n)]
        for x in w:
            m = lifts[x - 1] if x > 0 else lift_invs[-x - 1]
            out = m_mul(out, m)
        for i in range(n):
            for j in range(n):
                e = out[i][j]
                unitp = e.get(-1, {})
                expected = ring.one() if i == j else {}
                if unitp != expected:
                    raise ArithmeticError("unit component of a relator is off")
                for k, q in e.items():
                    if k != -1 and q:
                        equations.append(q)

    count = _count_solutions(ring, equations, p, cap)
    result = {"lifts": count, "unknowns": nunk}
    if quotient == "G0":
        result["orbits"] = _conjugation_orbits(presentation, rep, A, f, p,
                                               equations, ring, cap)
    return result


def _count_solutions(ring, equations, p, cap):
    equations = [q for q in equations if q]
    if not equations:
        return p ** ring.nvars
    maxdeg = max(sum(k) for q in equations for k in q)
    if maxdeg <= 1:
        # affine-linear system
        rows = []
        rhs = []
        for q in equations:
            row = [ring.field.zero()] * ring.nvars
            c0 = ring.field.zero()
            for k, c in q.items():
                if sum(k) == 0:
                    c0 = c
                else:
                    row[k.index(1)] = c
            rows.append(row)
            rhs.append(-c0)
        from .linalg import solve, rank
        sol = solve(ring.field, rows, rhs)
        if sol is None:
            return 0
        return p ** (ring.nvars - rank(ring.field, rows))
    if p ** ring.nvars > cap:
        raise NotImplementedError(
            "nonlinear lift counting beyond the enumeration cap "
            "(%d unknowns over F_%d)" % (ring.nvars, p))
    count = 0
    f = ring.field
    vals = [f.of(v) for v in range(p)]
    for assign in iproduct(vals, repeat=ring.nvars):
        ok = True
        for q in equations:
            acc = f.zero()
            for k, c in q.items():
                term = c
                for vi, e in enumerate(k):
                    for _ in range(e):
                        term = term * assign[vi]
                acc = acc + term
            if acc:
                ok = False
                break
        if ok:
            count += 1
    return count


def _conjugation_orbits(presentation, rep, A, f, p, equations, ring, cap):
    """Orbits of exp(g (x) m_A) acting by conjugation on the lift set."""
    basis = rep.lie_algebra_basis()
    gdim = len(basis)
    if not A.mult and all(_matrix_is_central(m, rep) for m in basis):
        # abelian g: conjugation is trivial
        return _count_solutions(ring, equations, p, cap)
    if p ** ring.nvars > cap:
        raise NotImplementedError("orbit counting needs an enumerable lift set")
    raise NotImplementedError("conjugation orbits implemented only for abelian g")


def _matrix_is_central(m, rep):
    from .linalg import mat_mul
    for other in gl_basis(rep.n):
        ab = mat_mul(QQ, m, other)
        ba = mat_mul(QQ, other, m)
        if ab != ba:
            return False
    return True


# -- formal augmented-diagram templates --------------------------------------

def lie_gln(n):
    idx = {}
    t = 0
    for i in range(n):
        for j in range(n):
            idx[(i, j)] = t
            t += 1
    pairs = {}
    for a in range(n * n):
        for b in range(a + 1, n * n):
            (i, j) = divmod(a, n)
            (k, l) = divmod(b, n)
            out = {}
            if j == k:
                out[idx[(i, l)]] = out.get(idx[(i, l)], 0) + 1
            if l == i:
                out[idx[(k, j)]] = out.get(idx[(k, j)], 0) - 1
            out = {kk: v for kk, v in out.items() if v}
            if out:
                pairs[(a, b)] = out
    return {"dim": n * n, "name": "gl%d" % n, "pairs": pairs}


def gl_cartan_weights(n):
    """Multigrading tags: weight of E_ij is e_i - e_j in Z^n."""
    out = {}
    t = 0
    for i in range(n):
        for j in range(n):
            w = [0] * n
            w[i] += 1
            w[j] -= 1
            out[t] = tuple(w)
            t += 1
    return out


def formal_model(template, param, lie=None, lie_name=None, multigrading=True):
    """Formal DG Lie model H(template) (x) g with its weight/Hodge data.

    template: "free" (wedge of param circles; H^1 pure of weight 2, type
    (1,1)) or "torus" (Z^{2 param} as compact Kaehler: trivial W, H^n pure
    of weight n via the Hodge filtration).  Returns an AugmentedDiagram.
    """
    from .corpus import LIE_LIBRARY, evaluation_augmentation, tensor_dg_lie
    from .diagrams import AugmentedDiagram
    if lie is None:
        if lie_name is None:
            raise ValueError("a Lie algebra is required")
        if lie_name.startswith("gl") and lie_name[2:].isdigit():
            lie = lie_gln(int(lie_name[2:]))
        elif lie_name in LIE_LIBRARY:
            lie = LIE_LIBRARY[lie_name]()
        else:
            raise ValueError("unknown Lie algebra %r" % lie_name)
    if template == "free":
        A = _cdga_circles(param)
    elif template == "torus":
        A = _cdga_torus_power(param)
    else:
        raise ValueError("unsupported template %r (free | torus)" % (template,))
    L = tensor_dg_lie(A, lie, top_degree=2)
    g_alg, eps = evaluation_augmentation(L, lie)
    gdim = lie["dim"]
    g_hodge = PureHodgeStructure(gdim, 0, {(0, 0): Subspace.full(QQ_I, gdim)})
    w_filt, f_filt = _template_filtrations(template, A, L, gdim)
    mg = None
    if multigrading:
        cart = _cartan_tags(lie)
        if cart is not None:
            l_tags = {}
            width = len(next(iter(cart.values()))) + len(_ext_tag(A, (0, 0)))
            for n in L.space.degrees():
                d_a = A["dims"].get(n, 0)
                for i in range(d_a):
                    ext = _ext_tag(A, (n, i))
                    for j in range(gdim):
                        l_tags[(n, i * gdim + j)] = ext + cart[j]
            g_tags = {(0, j): _ext_tag(A, (0, 0)) + cart[j] for j in range(gdim)}
            mg = {"L": l_tags, "g": g_tags}
    return AugmentedDiagram.from_pair(L, g_alg, eps, w_filt=w_filt,
                                      f_filt=f_filt, multigrading=mg)


def _cdga_circles(k):
    return {"dims": {0: 1, 1: k}, "d": {}, "products": {},
            "name": "circles%d" % k, "ext_tags": {(0, 0): ()},
            "kind": "free"}


def _cdga_torus_power(g):
    """Lambda(e_1..e_{2g}) truncated above degree 2."""
    k = 2 * g
    deg2 = [(a, b) for a in range(k) for b in range(a + 1, k)]
    idx2 = {ab: t for t, ab in enumerate(deg2)}
    products = {}
    for (a, b) in deg2:
        products[((1, a), (1, b))] = {(2, idx2[(a, b)]): 1}
    return {"dims": {0: 1, 1: k, 2: len(deg2)}, "d": {}, "products": products,
            "name": "torus%d" % g, "deg2": deg2, "kind": "torus"}


def _ext_tag(A, gen):
    """Exterior multidegree of a CDGA basis element, used for block splitting."""
    k = A["dims"].get(1, 0)
    n, i = gen
    tag = [0] * k
    if n == 1:
        tag[i] = 1
    elif n == 2:
        a, b = A["deg2"][i]
        tag[a] = 1
        tag[b] = 1
    return tuple(tag)


def _cartan_tags(lie):
    if lie["name"].startswith("gl"):
        n2 = lie["dim"]
        from math import isqrt
        n = isqrt(n2)
        if n * n == n2:
            return gl_cartan_weights(n)
    if lie["name"] == "gl1":
        return {0: (0,)}
    return {j: () for j in range(lie["dim"])}


def _template_filtrations(template, A, L, gdim):
    sp = L.space
    sp_ext = GradedSpace(QQ_I, dict(sp.dims), dict(sp.labels))
    i = QQ_I.i()
    if template == "free":
        w_levels = {
            -1: {n: Subspace.zero(QQ, sp.dim(n)) for n in sp.degrees()},
            0: {0: Subspace.full(QQ, sp.dim(0)),
                1: Subspace.zero(QQ, sp.dim(1))},
            1: {n: Subspace.full(QQ, sp.dim(n)) for n in sp.degrees()},
        }
        w = Filtration(sp, +1, w_levels)
        f_levels = {
            0: {n: Subspace.full(QQ_I, sp_ext.dim(n)) for n in sp_ext.degrees()},
            1: {0: Subspace.zero(QQ_I, sp_ext.dim(0)),
                1: Subspace.full(QQ_I, sp_ext.dim(1))},
            2: {n: Subspace.zero(QQ_I, sp_ext.dim(n)) for n in sp_ext.degrees()},
        }
        f = Filtration(sp_ext, -1, f_levels)
        return w, f
    # torus: trivial W; F from H^{1,0} = <e_{2j-1} + i e_{2j}> and products
    from .graded import trivial_weight_filtration
    w = trivial_weight_filtration(sp)
    k = A["dims"][1]
    g = k // 2
    # F^1 on degree 1: dz_j = e_{2j} + i e_{2j+1} (0-based pairs), per g-leg
    f1_deg1 = []
    for j in range(g):
        vec_a = 2 * j
        vec_b = 2 * j + 1
        for t in range(gdim):
            v = [QQ_I.zero()] * sp_ext.dim(1)
            v[vec_a * gdim + t] = QQ_I.one()
            v[vec_b * gdim + t] = i
            f1_deg1.append(v)
    f1_1 = Subspace(QQ_I, sp_ext.dim(1), f1_deg1)
    levels = {
        0: {n: Subspace.full(QQ_I, sp_ext.dim(n)) for n in sp_ext.degrees()},
        1: {0: Subspace.zero(QQ_I, sp_ext.dim(0)), 1: f1_1},
        2: {n: Subspace.zero(QQ_I, sp_ext.dim(n)) for n in sp_ext.degrees()},
    }
    if 2 in sp.dims:
        # F^1(deg 2) = F^1 . F^0 = everything reached by one dz leg;
        # F^2(deg 2) = F^1 . F^1
        deg2 = A["deg2"]
        e2 = len(deg2)
        idx2 = {ab: t for t, ab in enumerate(deg2)}
        f1_rows = []
        f2_rows = []

        def wedge_vec(va, vb):
            # va, vb: coefficients over degree-1 exterior generators
            out = [QQ_I.zero()] * e2
            for (a, ca) in va:
                for (b, cb) in vb:
                    if a == b:
                        continue
                    (lo, hi), sgn = ((a, b), 1) if a < b else ((b, a), -1)
                    out[idx2[(lo, hi)]] = out[idx2[(lo, hi)]] + QQ_I.of(sgn) * ca * cb
            return out

        for t in range(gdim):
            for j in range(g):
                dz = [(2 * j, QQ_I.one()), (2 * j + 1, i)]
                for e0 in range(k):
                    v = wedge_vec(dz, [(e0, QQ_I.one())])
                    if any(v):
                        f1_rows.append(_leg(v, t, gdim, e2))
                for j2 in range(g):
                    dz2 = [(2 * j2, QQ_I.one()), (2 * j2 + 1, i)]
                    v = wedge_vec(dz, dz2)
                    if any(v):
                        f2_rows.append(_leg(v, t, gdim, e2))
        levels[1][2] = Subspace(QQ_I, e2 * gdim, f1_rows)
        levels[2][2] = Subspace(QQ_I, e2 * gdim, f2_rows)
        levels[3] = {n: Subspace.zero(QQ_I, sp_ext.dim(n)) for n in sp_ext.degrees()}
    f = Filtration(sp_ext, -1, levels)
    return w, f


def _leg(v, t, gdim, e2):
    out = [QQ_I.zero()] * (e2 * gdim)
    for a, c in enumerate(v):
        out[a * gdim + t] = c
    return out
