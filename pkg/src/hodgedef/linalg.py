"""Exact dense linear algebra over the scalar tower.

Matrices are lists of row lists.  Subspaces are stored in reduced row
echelon form, which is canonical: two subspaces are equal iff their
stored bases are equal lists.  Everything here is plumbing for the
graded/filtered layers above.
"""


def mat(rows):
    return [list(r) for r in rows]


def zeros(field, m, n):
    z = field.zero()
    return [[z for _ in range(n)] for _ in range(m)]


def identity(field, n):
    z, o = field.zero(), field.one()
    return [[o if i == j else z for j in range(n)] for i in range(n)]


def mat_mul(field, a, b):
    if not a or not b:
        return []
    n, m, k = len(a), len(b), len(b[0]) if b else 0
    assert all(len(r) == m for r in a), "shape mismatch"
    z = field.zero()
    out = []
    for i in range(n):
        row = []
        ai = a[i]
        for j in range(k):
            acc = z
            for t in range(m):
                x = ai[t]
                if x:
                    acc = acc + x * b[t][j]
            row.append(acc)
        out.append(row)
    return out

def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(c, a):
    return [[c * x for x in r] for r in a]


def mat_eq(a, b):
    if len(a) != len(b):
        return False
    return all(ra == rb for ra, rb in zip(a, b))


def is_zero_matrix(a):
    return all(not x for r in a for x in r)


def transpose(a, ncols=None):
    if not a:
        return [[] for _ in range(ncols)] if ncols else []
    return [list(col) for col in zip(*a)]


def apply_mat(field, a, v):
    """a: (m x n) matrix, v: length-n vector -> length-m vector."""
    z = field.zero()
    out = []
    for row in a:
        acc = z
        for x, y in zip(row, v):
            if x and y:
                acc = acc + x * y
        out.append(acc)
    return out


def rref(field, rows):
    """Reduced row echelon form.  Returns (rows, pivot_columns)."""
    rows = [list(r) for r in rows]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    rows = [row for row in rows if any(x for x in row)]
    return rows, pivots


def kernel_basis(field, a, ncols):
    """Basis (list of vectors) of the right kernel of the m x ncols matrix a."""
    rows, pivots = rref(field, a)
    z, o = field.zero(), field.one()
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [z] * ncols
        v[fc] = o
        for r, pc in zip(rows, pivots):
            v[pc] = -r[fc]
        basis.append(v)
    return basis


def solve(field, a, b):
    """One solution x of a x = b, or None.  a is m x n, b length m."""
    if not a:
        return [] if all(not x for x in b) else None
    n = len(a[0])
    aug = [list(r) + [bv] for r, bv in zip(a, b)]
    rows, pivots = rref(field, aug)
    z = field.zero()
    x = [z] * n
    for r, pc in zip(rows, pivots):
        if pc == n:
            return None
        x[pc] = r[n]
    return x


def rank(field, a):
    return len(rref(field, a)[0])


def inverse(field, a):
    """Inverse of a square matrix, or None if singular."""
    n = len(a)
    if n == 0:
        return []
    aug = [list(r) + list(e) for r, e in zip(a, identity(field, n))]
    rows, pivots = rref(field, aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        return None
    return [r[n:] for r in rows[:n]]


class Subspace:
    """Subspace of field^n, canonical reduced-row-echelon basis rows."""

    def __init__(self, field, ambient, rows=()):
        self.field = field
        self.ambient = ambient
        r, p = rref(field, [[field.of(x) for x in v] for v in rows])
        self.rows = r
        self.pivots = p

    @classmethod
    def zero(cls, field, ambient):
        return cls(field, ambient, [])

    @classmethod
    def full(cls, field, ambient):
        return cls(field, ambient, identity(field, ambient))

    @property
    def dim(self):
        return len(self.rows)

    def is_zero(self):
        return not self.rows

    def is_full(self):
        return self.dim == self.ambient

    def reduce_vector(self, v):
        """Residue of v after reduction against the echelon basis."""
        v = list(v)
        for row, pc in zip(self.rows, self.pivots):
            if v[pc]:
                f = v[pc]
                v = [x - f * y for x, y in zip(v, row)]
        return v

    def contains_vector(self, v):
        return all(not x for x in self.reduce_vector(v))

    def contains(self, other):
        return all(self.contains_vector(r) for r in other.rows)

    def __eq__(self, other):
        return (self.ambient == other.ambient and self.dim == other.dim
                and all(ra == rb for ra, rb in zip(self.rows, other.rows)))

    def __le__(self, other):
        return other.contains(self)

    def add(self, other):
        assert self.ambient == other.ambient
        return Subspace(self.field, self.ambient, self.rows + other.rows)

    def intersect(self, other):
        assert self.ambient == other.ambient
        if self.is_zero() or other.is_zero():
            return Subspace.zero(self.field, self.ambient)
        if self.is_full():
            return other
        if other.is_full():
            return self
        # v = x . A = y . B  <=>  (x, y) in ker [A^T | -B^T]
        cols = len(self.rows) + len(other.rows)
        m = []
        for c in range(self.ambient):
            m.append([r[c] for r in self.rows] + [-r[c] for r in other.rows])
        vecs = []
        for k in kernel_basis(self.field, m, cols):
            v = [self.field.zero()] * self.ambient
            for coef, row in zip(k[:len(self.rows)], self.rows):
                if coef:
                    v = [a + coef * b for a, b in zip(v, row)]
            vecs.append(v)
        return Subspace(self.field, self.ambient, vecs)

    def map_by(self, matrix, target_ambient):
        """Image of this subspace under the linear map given by matrix."""
        f = self.field
        imgs = [apply_mat(f, matrix, r) for r in self.rows]
        return Subspace(f, target_ambient, imgs)

    def basis_vectors(self):
        return [list(r) for r in self.rows]

    def tensor_with_extension(self, ext_field):
        """Same span viewed over the extension field."""
        rows = [[ext_field.of(x) for x in r] for r in self.rows]
        return Subspace(ext_field, self.ambient, rows)

    def conjugate(self):
        rows = [[self.field.conj(x) for x in r] for r in self.rows]
        return Subspace(self.field, self.ambient, rows)

    def __repr__(self):
        return "Subspace(dim %d of %d)" % (self.dim, self.ambient)


def image_subspace(field, a, nrows=None):
    """Column space of a as a Subspace of field^nrows."""
    if nrows is None:
        nrows = len(a)
    cols = transpose(a) if a else []
    return Subspace(field, nrows, cols)


def kernel_subspace(field, a, ncols):
    return Subspace(field, ncols, kernel_basis(field, a, ncols))


class SubQuotient:
    """A subquotient sub/whole-complement: whole >= sub, classes of whole mod sub.

    Stores explicit representative vectors; coords() writes a vector of
    `whole` in terms of the representatives modulo `sub`.
    """

    def __init__(self, sub, whole):
        if not whole.contains(sub):
            raise ValueError("subquotient needs sub <= whole")
        self.field = sub.field
        self.ambient = sub.ambient
        self.sub = sub
        self.whole = whole
        reps = []
        span = Subspace(self.field, self.ambient, sub.rows)
        for r in whole.rows:
            if not span.contains_vector(r):
                reps.append(list(r))
                span = Subspace(self.field, self.ambient, span.rows + [r])
        self.reps = reps
        # echelon of [sub; reps] with bookkeeping of rep coefficients
        self._solve_rows = sub.basis_vectors() + reps
        self.dim = len(reps)

    def coords(self, v):
        """Coordinates of [v] in the representative basis; v must lie in whole."""
        f = self.field
        n = len(self._solve_rows)
        if n == 0:
            if any(x for x in v):
                raise ValueError("vector not in the subquotient domain")
            return []
        cols = [[self._solve_rows[j][c] for j in range(n)] for c in range(self.ambient)]
        sol = solve(f, cols, list(v))
        if sol is None:
            raise ValueError("vector not in the subquotient domain")
        return sol[len(self.sub.rows):]

    def lift(self, coords):
        f = self.field
        v = [f.zero()] * self.ambient
        for c, r in zip(coords, self.reps):
            if c:
                v = [a + c * b for a, b in zip(v, r)]
        return v

    def project_subspace(self, s):
        """Image of the subspace s cap whole in the quotient coordinates."""
        inter = s.intersect(self.whole)
        vecs = [self.coords(r) for r in inter.rows]
        return Subspace(self.field, self.dim, vecs)

    def induced_matrix(self, matrix, target):
        """Matrix of the map induced on subquotients by `matrix` (columns act)."""
        f = self.field
        cols = []
        for r in self.reps:
            w = apply_mat(f, matrix, r)
            cols.append(target.coords(w))
        # cols[j] is the image of rep j; assemble row-major
        return [[cols[j][i] for j in range(self.dim)] for i in range(target.dim)]


def adapted_basis(field, chain):
    """Adapted basis for a nested chain 0 <= S_1 <= ... <= S_m.

    chain: list of Subspace, increasing.  Returns list of (vector, level)
    with level = index of the first chain member containing the vector.
    """
    out = []
    prev = Subspace.zero(field, chain[0].ambient) if chain else None
    span = prev
    for lev, s in enumerate(chain):
        assert s.contains(span), "chain is not nested"
        for r in s.rows:
            if not span.contains_vector(r):
                out.append((list(r), lev))
                span = Subspace(field, s.ambient, span.rows + [r])
    return out


def common_adapted_basis(field, chain_a, chain_b):
    """Basis adapted to two filtrations simultaneously.

    chain_a, chain_b: increasing chains of subspaces of the same ambient,
    both ending at the full space.  Returns list of (vector, i, j) where
    the vector sits in chain_a[i] and chain_b[j] and the tagged vectors
    span every chain member by tag truncation.  Two filtrations of a
    finite-dimensional space always split simultaneously.
    """
    ambient = chain_a[-1].ambient
    assert chain_a[-1].is_full() and chain_b[-1].is_full()
    out = []
    chosen = Subspace.zero(field, ambient)
    for i, sa in enumerate(chain_a):
        for j, sb in enumerate(chain_b):
            u = sa.intersect(sb)
            lower = Subspace.zero(field, ambient)
            if i > 0:
                lower = lower.add(chain_a[i - 1].intersect(sb))
            if j > 0:
                lower = lower.add(sa.intersect(chain_b[j - 1]))
            lower = lower.add(chosen.intersect(u))
            for r in u.rows:
                if not lower.contains_vector(r):
                    out.append((list(r), i, j))
                    lower = Subspace(field, ambient, lower.rows + [r])
                    chosen = Subspace(field, ambient, chosen.rows + [r])
    # defensive check: tags must recover both chains
    for i, sa in enumerate(chain_a):
        vecs = [v for (v, a, b) in out if a <= i]
        if Subspace(field, ambient, vecs).dim != sa.dim:
            raise ArithmeticError("two-filtration splitting failed")
    for j, sb in enumerate(chain_b):
        vecs = [v for (v, a, b) in out if b <= j]
        if Subspace(field, ambient, vecs).dim != sb.dim:
            raise ArithmeticError("two-filtration splitting failed")
    return out
