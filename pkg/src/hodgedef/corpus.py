"""Deterministic corpora of small DG Lie algebras and augmented pairs.

Validity by construction: a graded-commutative algebra tensored with a Lie
algebra is DG Lie, direct sums and acyclic summands preserve the axioms,
and degreewise base changes conjugate the structure constants without
breaking them.  Randomness is always driven by a caller-supplied seed.
"""

from fractions import Fraction

from .scalars import QQ
from .graded import GradedMap, GradedSpace
from .linalg import inverse
from .linfinity import LInfinityAlgebra, dg_lie_algebra
from .powers import WEDGE, normalize


# -- Lie algebras by structure constants ----------------------------------

def lie_abelian(n):
    return {"dim": n, "table": {}, "name": "abelian%d" % n}


def lie_sl2():
    # basis e, h, f
    return {"dim": 3, "name": "sl2", "pairs": {
        (0, 1): {0: -2},          # [e,h] = -2e
        (0, 2): {1: 1},           # [e,f] = h
        (1, 2): {2: -2},          # [h,f] = -2f
    }}


def lie_gl2():
    # basis E11, E12, E21, E22
    def mul(a, b):
        # E_{ij} E_{kl} = delta_{jk} E_{il}
        (i, j), (k, l) = a, b
        return (i, l) if j == k else None
    idx = {(1, 1): 0, (1, 2): 1, (2, 1): 2, (2, 2): 3}
    pairs = {}
    names = list(idx)
    for a in range(4):
        for b in range(a + 1, 4):
            out = {}
            p = mul(names[a], names[b])
            if p is not None:
                out[idx[p]] = out.get(idx[p], 0) + 1
            q = mul(names[b], names[a])
            if q is not None:
                out[idx[q]] = out.get(idx[q], 0) - 1
            out = {k: v for k, v in out.items() if v}
            if out:
                pairs[(a, b)] = out
    return {"dim": 4, "name": "gl2", "pairs": pairs}


def lie_heisenberg():
    # [x, y] = z
    return {"dim": 3, "name": "heis3", "pairs": {(0, 1): {2: 1}}}


def lie_borel2():
    # [h, e] = 2e
    return {"dim": 2, "name": "borel2", "pairs": {(0, 1): {1: 2}}}


def lie_gl1():
    return {"dim": 1, "name": "gl1", "pairs": {}}


LIE_LIBRARY = {
    "gl1": lie_gl1,
    "abelian2": lambda: lie_abelian(2),
    "sl2": lie_sl2,
    "gl2": lie_gl2,
    "heis3": lie_heisenberg,
    "borel2": lie_borel2,
}


def lie_bracket_eval(lie, u, v):
    """Bracket of coefficient vectors in the structure-constant presentation."""
    n = lie["dim"]
    out = [Fraction(0)] * n
    pairs = lie.get("pairs", {})
    for a in range(n):
        if not u[a]:
            continue
        for b in range(n):
            if not v[b]:
                continue
            if a == b:
                continue
            key, sgn = ((a, b), 1) if a < b else ((b, a), -1)
            for k, c in pairs.get(key, {}).items():
                out[k] += sgn * c * u[a] * v[b]
    return out


# -- graded-commutative coefficient algebras ------------------------------

def cdga_circles(k):
    """H of a wedge of k circles: degree-1 classes with zero products."""
    return {"dims": {0: 1, 1: k}, "d": {}, "products": {}, "name": "circles%d" % k}


def cdga_torus():
    """H of the 2-torus: exterior algebra on two degree-1 classes."""
    return {"dims": {0: 1, 1: 2, 2: 1}, "d": {},
            "products": {((1, 0), (1, 1)): {(2, 0): 1}},
            "name": "torus"}


def cdga_sphere2():
    return {"dims": {0: 1, 2: 1}, "d": {}, "products": {}, "name": "sphere2"}


def cdga_interval():
    """Contractible piece: generators t (degree 0), s = dt (degree 1), with
    t.t = t, t.s = s (the algebra k (+) k, collapsed)."""
    return {"dims": {0: 2, 1: 1},
            "d": {(0, 1): {(1, 0): 1}},
            "products": {((0, 1), (0, 1)): {(0, 1): 1},
                         ((0, 1), (1, 0)): {(1, 0): 1}},
            "name": "interval"}


CDGA_LIBRARY = {
    "point": lambda: cdga_circles(0),
    "circle": lambda: cdga_circles(1),
    "circles2": lambda: cdga_circles(2),
    "circles3": lambda: cdga_circles(3),
    "torus": cdga_torus,
    "sphere2": cdga_sphere2,
}


def cdga_product(A, x, y):
    """Product of homogeneous basis elements (deg, idx); unit is (0, 0)."""
    if x == (0, 0):
        return {y: Fraction(1)}
    if y == (0, 0):
        return {x: Fraction(1)}
    prods = A["products"]
    if (x, y) in prods:
        return {k: Fraction(v) for k, v in prods[(x, y)].items()}
    if (y, x) in prods:
        sgn = -1 if (x[0] % 2 and y[0] % 2) else 1
        return {k: sgn * Fraction(v) for k, v in prods[(y, x)].items()}
    return {}


def tensor_dg_lie(A, lie, top_degree=2):
    """The DG Lie algebra A (x) g for a CDGA A and a Lie algebra g.

    Basis of degree n: pairs (a, u) with a a degree-n monomial of A and u a
    basis vector of g.  The unit of A must be the basis vector (0, 0).
    """
    g = lie["dim"]
    dims = {n: d * g for n, d in A["dims"].items() if n <= top_degree and d > 0}
    labels = {}
    for n, d in A["dims"].items():
        if n > top_degree or d == 0:
            continue
        labels[n] = tuple("a%d_%d|u%d" % (n, i, j) for i in range(d) for j in range(g))
    space = GradedSpace(QQ, dims, labels)

    def enc(n, i, j):
        return i * g + j

    # differential: d(a (x) u) = (dA a) (x) u
    dblocks = {}
    for n in sorted(A["dims"]):
        if n > top_degree or space.dim(n + 1) == 0:
            continue
        rows = [[QQ.zero() for _ in range(space.dim(n))] for _ in range(space.dim(n + 1))]
        nonzero = False
        for i in range(A["dims"].get(n, 0)):
            dval = A.get("d", {}).get((n, i))
            if not dval:
                continue
            for (m, i2), c in dval.items():
                assert m == n + 1
                for j in range(g):
                    rows[enc(m, i2, j)][enc(n, i, j)] = QQ.of(c)
                    nonzero = True
        if nonzero:
            dblocks[n] = rows

    bracket = {}
    gens = [(n, enc(n, i, j))
            for n in space.degrees()
            for i in range(A["dims"].get(n, 0)) for j in range(g)]
    for x in gens:
        for y in gens:
            nf = normalize(WEDGE, (x, y), QQ)
            if nf is None or nf[1] != (x, y):
                continue
            n1, k1 = x
            n2, k2 = y
            i1, j1 = divmod(k1, g)
            i2, j2 = divmod(k2, g)
            prod = cdga_product(A, (n1, i1), (n2, i2))
            if not prod:
                continue
            u = [Fraction(1) if t == j1 else Fraction(0) for t in range(g)]
            v = [Fraction(1) if t == j2 else Fraction(0) for t in range(g)]
            w = lie_bracket_eval(lie, u, v)
            if not any(w):
                continue
            deg = n1 + n2
            if space.dim(deg) == 0:
                continue
            val = [QQ.zero()] * space.dim(deg)
            for (m, i3), c in prod.items():
                for j3, wc in enumerate(w):
                    if wc:
                        val[enc(m, i3, j3)] = val[enc(m, i3, j3)] + QQ.of(c) * QQ.of(wc)
            if any(val):
                bracket[(x, y)] = val
    return dg_lie_algebra(space, dblocks if dblocks else None, bracket if bracket else None)


def evaluation_augmentation(L, lie):
    """eps(a (x) u) = unit-coefficient of a times u, killing positive degrees."""
    g = lie["dim"]
    gspace = GradedSpace(QQ, {0: g}, {0: tuple("u%d" % j for j in range(g))})
    blocks = {}
    if L.space.dim(0):
        rows = [[QQ.zero()] * L.space.dim(0) for _ in range(g)]
        for j in range(g):
            rows[j][j] = QQ.one()  # unit monomial is the first block
        blocks[0] = rows
    gl = lie_to_dg(lie)
    return gl, GradedMap(L.space, gl.space, 0, blocks)


def lie_to_dg(lie):
    g = lie["dim"]
    space = GradedSpace(QQ, {0: g}, {0: tuple("u%d" % j for j in range(g))})
    bracket = {}
    for (a, b), out in lie.get("pairs", {}).items():
        val = [QQ.zero()] * g
        for k, c in out.items():
            val[k] = QQ.of(c)
        bracket[((0, a), (0, b))] = val
    return dg_lie_algebra(space, None, bracket)


# -- randomized corpora ----------------------------------------------------

def random_base_change(rng, algebra, eps=None):
    """Conjugate a DG Lie algebra by a random degreewise base change."""
    space = algebra.space
    f = space.field
    mats = {}
    invs = {}
    for n in space.degrees():
        d = space.dim(n)
        while True:
            m = [[f.of(rng.randint(-2, 2)) for _ in range(d)] for _ in range(d)]
            for i in range(d):
                m[i][i] = m[i][i] + f.one()
            inv = inverse(f, m)
            if inv is not None:
                mats[n] = m
                invs[n] = inv
                break
    def fwd(n, vec):
        from .linalg import apply_mat
        return apply_mat(f, mats[n], vec)

    def back(n, vec):
        from .linalg import apply_mat
        return apply_mat(f, invs[n], vec)

    brackets = {}
    for r, table in algebra.brackets.items():
        out = {}
        from .powers import monomials_of_length, expand_product
        for mono in monomials_of_length(space, WEDGE, r):
            factors = [(n, back(n, space.basis_vector(n, i))) for (n, i) in mono]
            deg, val = algebra.ell_vectors(r, factors)
            if space.dim(deg) == 0 or not any(val):
                continue
            out[mono] = fwd(deg, val)
        if out:
            brackets[r] = out
    new_alg = LInfinityAlgebra(space, brackets)
    if eps is None:
        return new_alg
    blocks = {}
    for n in eps.source.degrees():
        if eps.target.dim(n) == 0 or space.dim(n) == 0:
            continue
        cols = []
        for i in range(space.dim(n)):
            cols.append(eps.apply(n, back(n, space.basis_vector(n, i))))
        blocks[n] = [[cols[j][i] for j in range(len(cols))] for i in range(eps.target.dim(n))]
    return new_alg, GradedMap(space, eps.target, 0, blocks)


def random_augmented_pair(rng, max_dim=4, base_change=True):
    """A random valid augmented DG Lie pair (L, g, eps), degrees 0..2."""
    a_name = rng.choice(list(CDGA_LIBRARY))
    g_name = rng.choice(list(LIE_LIBRARY))
    A = CDGA_LIBRARY[a_name]()
    lie = LIE_LIBRARY[g_name]()
    # keep per-degree dims <= max_dim
    while max(d * lie["dim"] for d in A["dims"].values()) > max_dim:
        if lie["dim"] > 2:
            lie = LIE_LIBRARY[rng.choice(["gl1", "abelian2", "borel2"])]()
        else:
            A = CDGA_LIBRARY[rng.choice(["point", "circle", "circles2", "torus"])]()
    L = tensor_dg_lie(A, lie)
    gl, eps = evaluation_augmentation(L, lie)
    if base_change:
        L, eps = random_base_change(rng, L, eps=eps)
    return L, gl, eps, "%s(x)%s" % (A["name"], lie["name"])


def acyclic_summand(width=1, degree=0):
    """Abelian DG ideal 0 -> k^w -> k^w -> 0 (identity differential)."""
    sp = GradedSpace(QQ, {degree: width, degree + 1: width})
    from .linalg import identity
    d = {degree: identity(QQ, width)}
    return dg_lie_algebra(sp, d, None)


def direct_sum_dg_lie(a, b):
    """Direct sum of DG Lie algebras with zero cross brackets."""
    f = a.field
    dims = {}
    offs_a, offs_b = {}, {}
    for n in set(a.space.degrees()) | set(b.space.degrees()):
        da, db = a.space.dim(n), b.space.dim(n)
        dims[n] = da + db
        offs_a[n] = 0
        offs_b[n] = da
    labels = {}
    for n in dims:
        la = ["A:%s" % s for s in (a.space.labels.get(n) or ())]
        lb = ["B:%s" % s for s in (b.space.labels.get(n) or ())]
        labels[n] = tuple(la + lb)
    space = GradedSpace(f, dims, labels)

    def embed(which, n, vec):
        out = [f.zero()] * space.dim(n)
        off = offs_a[n] if which == 0 else offs_b[n]
        for i, c in enumerate(vec):
            out[off + i] = c
        return out

    brackets = {}
    for which, alg in ((0, a), (1, b)):
        for r, table in alg.brackets.items():
            out = brackets.setdefault(r, {})
            for mono, vec in table.items():
                off = offs_a if which == 0 else offs_b
                mono2 = tuple((n, i + off[n]) for (n, i) in mono)
                nf = normalize(WEDGE, mono2, f)
                sgn, canon = nf
                deg = sum(g[0] for g in mono) + 2 - r
                out[canon] = [sgn * c for c in embed(which, deg, vec)]
    return space, brackets, embed, LInfinityAlgebra(space, brackets)
