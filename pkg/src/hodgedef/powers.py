"""Koszul-signed monomial machinery: graded symmetric / exterior / tensor
powers of complexes, with filtrations extended by convolution.

A generator is a pair (degree, index) into the basis of a GradedSpace.
Monomials are tuples of generators in canonical sorted order; the single
sorting routine here is the one source of truth for Koszul signs.

Sign rules: in the graded symmetric product u (.) v = (-1)^{|u||v|} v (.) u,
so odd generators square to zero; in the graded exterior product
u ^ v = -(-1)^{|u||v|} v ^ u, so even generators square to zero.
"""

from itertools import product as iproduct

from .graded import FilteredComplex, Filtration, GradedMap, GradedSpace
from .linalg import Subspace, adapted_basis, common_adapted_basis

SYM = "sym"
WEDGE = "wedge"
TENSOR = "tensor"
_SYMBOL = {SYM: "*", WEDGE: "^", TENSOR: "@"}


def swap_sign(kind, da, db, field):
    if kind == SYM:
        return field.of(-1) if (da % 2) and (db % 2) else field.of(1)
    if kind == WEDGE:
        return field.of(1) if (da % 2) and (db % 2) else field.of(-1)
    raise ValueError("tensor factors do not commute")


def normalize(kind, gens, field):
    """Canonical form of a generator word.

    Returns (sign, sorted_tuple) or None when the word vanishes
    (odd repeat under sym, even repeat under wedge).
    """
    gens = list(gens)
    if kind == TENSOR:
        return field.one(), tuple(gens)
    sign = field.one()
    # insertion sort, multiplying the Koszul swap sign per adjacent swap
    for i in range(1, len(gens)):
        j = i
        while j > 0 and gens[j - 1] > gens[j]:
            sign = sign * swap_sign(kind, gens[j - 1][0], gens[j][0], field)
            gens[j - 1], gens[j] = gens[j], gens[j - 1]
            j -= 1
    for a, b in zip(gens, gens[1:]):
        if a == b:
            if kind == SYM and a[0] % 2:
                return None
            if kind == WEDGE and a[0] % 2 == 0:
                return None
    return sign, tuple(gens)


def monomial_degree(m):
    return sum(g[0] for g in m)


def monomials_of_length(space, kind, r):
    """All canonical monomials of exactly r generators."""
    gens = [(n, i) for n in space.degrees() for i in range(space.dim(n))]
    out = []

    def rec(start, chosen):
        if len(chosen) == r:
            nf = normalize(kind, chosen, space.field)
            if nf is not None and nf[1] == tuple(chosen):
                out.append(tuple(chosen))
            return
        for gi in range(start, len(gens)):
            g = gens[gi]
            if chosen and g < chosen[-1]:
                continue
            if chosen and g == chosen[-1]:
                if kind == SYM and g[0] % 2:
                    continue
                if kind == WEDGE and g[0] % 2 == 0:
                    continue
                if kind == TENSOR:
                    pass
            rec(gi if kind != TENSOR else 0, chosen + [g])

    if kind == TENSOR:
        for tup in iproduct(gens, repeat=r):
            out.append(tuple(tup))
    else:
        rec(0, [])
    return out


def monomial_label(space, kind, m):
    sym = _SYMBOL[kind]
    return sym.join(space.labels[n][i] for (n, i) in m)


def expand_product(space, kind, factors):
    """Expand a product of homogeneous vectors into monomial coordinates.

    factors: list of (degree, dense coefficient vector in that degree).
    Returns dict canonical_monomial -> scalar.
    """
    f = space.field
    out = {}
    supports = []
    for n, vec in factors:
        sup = [((n, i), c) for i, c in enumerate(vec) if c]
        if not sup:
            return {}
        supports.append(sup)
    for choice in iproduct(*supports):
        coeff = f.one()
        gens = []
        for g, c in choice:
            coeff = coeff * c
            gens.append(g)
        nf = normalize(kind, gens, f)
        if nf is None:
            continue
        sgn, mono = nf
        val = out.get(mono, f.zero()) + sgn * coeff
        if val:
            out[mono] = val
        elif mono in out:
            del out[mono]
    return out


class PowerComplex:
    """r-th power of a filtered complex, with convolution filtrations."""

    def __init__(self, base, kind, r):
        self.base = base
        self.kind = kind
        self.r = r
        f = base.field()
        monos = monomials_of_length(base.space, kind, r)
        by_degree = {}
        for m in monos:
            by_degree.setdefault(monomial_degree(m), []).append(m)
        self.basis = {n: sorted(ms) for n, ms in by_degree.items()}
        self.index = {n: {m: i for i, m in enumerate(ms)}
                      for n, ms in self.basis.items()}
        dims = {n: len(ms) for n, ms in self.basis.items()}
        labels = {n: tuple(monomial_label(base.space, kind, m) for m in ms)
                  for n, ms in self.basis.items()}
        self.space = GradedSpace(f, dims, labels)
        d = self._differential()
        filts = self._convolved_filtrations()
        self.complex = FilteredComplex(self.space, d, filts, check=True)

    def vector_from_dict(self, n, coeffs):
        v = self.space.zero_vector(n)
        for m, c in coeffs.items():
            v[self.index[n][m]] = c
        return v

    def _differential(self):
        base, kind, f = self.base, self.kind, self.base.field()
        blocks = {}
        for n, ms in self.basis.items():
            tgt = self.basis.get(n + 1, [])
            if not tgt or not ms:
                continue
            cols = []
            for m in ms:
                acc = {}
                sign = f.one()
                for i, g in enumerate(m):
                    gd, gi = g
                    dvec = base.d.apply(gd, base.space.basis_vector(gd, gi))
                    if any(x for x in dvec):
                        factors = []
                        for j, h in enumerate(m):
                            if j == i:
                                factors.append((gd + 1, dvec))
                            else:
                                factors.append((h[0], base.space.basis_vector(h[0], h[1])))
                        for mono, c in expand_product(base.space, kind, factors).items():
                            val = acc.get(mono, f.zero()) + sign * c
                            if val:
                                acc[mono] = val
                            elif mono in acc:
                                del acc[mono]
                    sign = sign * (f.of(-1) if gd % 2 else f.one())
                cols.append(self.vector_from_dict(n + 1, acc))
            blocks[n] = [[cols[j][i] for j in range(len(ms))] for i in range(len(tgt))]
        return GradedMap(self.space, self.space, 1, blocks)

    def _adapted_generators(self):
        """Adapted basis of the base, tagged with filtration jump levels."""
        base = self.base
        f = base.field()
        wf = base.filtrations.get("W")
        ff = base.filtrations.get("F")
        tagged = {}
        for n in base.space.degrees():
            if wf is not None and ff is not None:
                ca = wf.chain(n)
                cb = ff.chain(n)
                wk = [k for k in wf.indices]
                out = common_adapted_basis(f, ca, cb)
                res = []
                for v, i, j in out:
                    res.append((v, self._chain_level(wf, n, i), self._chain_level_f(ff, n, j)))
                tagged[n] = res
            elif wf is not None:
                out = adapted_basis(f, wf.chain(n))
                tagged[n] = [(v, self._chain_level(wf, n, i), None) for v, i in out]
            elif ff is not None:
                out = adapted_basis(f, ff.chain(n))
                tagged[n] = [(v, None, self._chain_level_f(ff, n, i)) for v, i in out]
            else:
                tagged[n] = [(base.space.basis_vector(n, i), None, None)
                             for i in range(base.space.dim(n))]
        return tagged

    def _chain_level(self, filt, n, chain_pos):
        """Translate a position in filt.chain(n) back to a W index."""
        ks = list(filt.indices)
        if chain_pos < len(ks):
            return ks[chain_pos]
        return ks[-1] + 1 if not filt.at(ks[-1], n).is_full() else ks[-1]

    def _chain_level_f(self, filt, n, chain_pos):
        """Position in the increasing chain of a decreasing F -> F index."""
        ks = list(filt.indices)[::-1]
        if chain_pos < len(ks):
            return ks[chain_pos]
        return ks[-1] - 1

    def _convolved_filtrations(self):
        base = self.base
        f = base.field()
        if not base.filtrations:
            return {}
        tagged = self._adapted_generators()
        filts = {}
        wf = base.filtrations.get("W")
        ff = base.filtrations.get("F")
        # enumerate all monomials of adapted generators, with expansions
        expanded = []  # (power_degree, wsum, fsum, coeff dict)
        gen_list = []
        for n in sorted(tagged):
            for v, w, p in tagged[n]:
                gen_list.append((n, v, w, p))

        def rec(start, chosen):
            if len(chosen) == self.r:
                factors = [(n, v) for (n, v, _, _) in chosen]
                coeffs = expand_product(base.space, self.kind, factors)
                if coeffs:
                    deg = sum(n for (n, _, _, _) in chosen)
                    wsum = sum(w for (_, _, w, _) in chosen) if wf else None
                    fsum = sum(p for (_, _, _, p) in chosen) if ff else None
                    expanded.append((deg, wsum, fsum, coeffs))
                return
            for gi in range(start, len(gen_list)):
                nxt = 0 if self.kind == TENSOR else gi
                rec(nxt, chosen + [gen_list[gi]])

        rec(0, [])
        if wf is not None:
            lo = min(w for (_, w, _, _) in expanded) if expanded else 0
            hi = max(w for (_, w, _, _) in expanded) if expanded else 0
            levels = {}
            for k in range(lo - 1, hi + 1):
                per = {}
                for n in self.space.degrees():
                    vecs = [self.vector_from_dict(n, coeffs)
                            for (deg, w, _, coeffs) in expanded
                            if deg == n and w <= k]
                    per[n] = Subspace(f, self.space.dim(n), vecs)
                levels[k] = per
            filts["W"] = Filtration(self.space, +1, levels)
        if ff is not None:
            lo = min(p for (_, _, p, _) in expanded) if expanded else 0
            hi = max(p for (_, _, p, _) in expanded) if expanded else 0
            levels = {}
            for k in range(lo, hi + 2):
                per = {}
                for n in self.space.degrees():
                    vecs = [self.vector_from_dict(n, coeffs)
                            for (deg, _, p, coeffs) in expanded
                            if deg == n and p >= k]
                    per[n] = Subspace(f, self.space.dim(n), vecs)
                levels[k] = per
            filts["F"] = Filtration(self.space, -1, levels)
        return filts


def power_with_convolution(complex_, kind, r):
    """K^{(x)r} / K^{^r} / K^{(.)r} with W and F extended by convolution."""
    if r < 1:
        raise ValueError("power needs r >= 1")
    return PowerComplex(complex_, kind, r).complex


def tensor_complexes(a, b):
    """Binary tensor product of filtered complexes with convolved filtrations."""
    f = a.field()
    basis = {}
    for n in a.space.degrees():
        for m in b.space.degrees():
            basis.setdefault(n + m, []).extend(
                ((n, i), (m, j))
                for i in range(a.space.dim(n)) for j in range(b.space.dim(m)))
    basis = {n: sorted(ms) for n, ms in basis.items()}
    index = {n: {mm: i for i, mm in enumerate(ms)} for n, ms in basis.items()}
    dims = {n: len(ms) for n, ms in basis.items()}
    labels = {n: tuple("%s@%s" % (a.space.labels[g[0]][g[1]], b.space.labels[h[0]][h[1]])
                       for (g, h) in ms) for n, ms in basis.items()}
    space = GradedSpace(f, dims, labels)

    blocks = {}
    for n, ms in basis.items():
        tgt = basis.get(n + 1, [])
        if not tgt or not ms:
            continue
        rows = [[f.zero() for _ in ms] for _ in tgt]
        for col, (g, h) in enumerate(ms):
            da = a.d.apply(g[0], a.space.basis_vector(g[0], g[1]))
            for i2, c in enumerate(da):
                if c:
                    rows[index[n + 1][((g[0] + 1, i2), h)]][col] = c
            db = b.d.apply(h[0], b.space.basis_vector(h[0], h[1]))
            sgn = f.of(-1) if g[0] % 2 else f.one()
            for j2, c in enumerate(db):
                if c:
                    rows[index[n + 1][(g, (h[0] + 1, j2))]][col] = sgn * c
        blocks[n] = rows
    d = GradedMap(space, space, 1, blocks)

    filts = {}
    for name in set(a.filtrations) & set(b.filtrations):
        fa, fb = a.filtrations[name], b.filtrations[name]
        assert fa.direction == fb.direction
        ta = _tagged_one(a, name)
        tb = _tagged_one(b, name)
        pairs = []
        for n, va, wia in ta:
            for m, vb, wib in tb:
                coeffs = {}
                for i, ca in enumerate(va):
                    for j, cb in enumerate(vb):
                        c = ca * cb
                        if c:
                            coeffs[((n, i), (m, j))] = c
                if coeffs:
                    pairs.append((n + m, wia + wib, coeffs))
        if fa.direction > 0:
            ks = sorted(set(w for (_, w, _) in pairs))
            levels = {}
            for k in range(ks[0] - 1, ks[-1] + 1):
                per = {}
                for n in space.degrees():
                    vecs = []
                    for deg, w, coeffs in pairs:
                        if deg == n and w <= k:
                            v = space.zero_vector(n)
                            for mm, c in coeffs.items():
                                v[index[n][mm]] = c
                            vecs.append(v)
                    per[n] = Subspace(f, space.dim(n), vecs)
                levels[k] = per
            filts[name] = Filtration(space, +1, levels)
        else:
            ks = sorted(set(w for (_, w, _) in pairs))
            levels = {}
            for k in range(ks[0], ks[-1] + 2):
                per = {}
                for n in space.degrees():
                    vecs = []
                    for deg, w, coeffs in pairs:
                        if deg == n and w >= k:
                            v = space.zero_vector(n)
                            for mm, c in coeffs.items():
                                v[index[n][mm]] = c
                            vecs.append(v)
                    per[n] = Subspace(f, space.dim(n), vecs)
                levels[k] = per
            filts[name] = Filtration(space, -1, levels)
    return FilteredComplex(space, d, filts, check=True)


def _tagged_one(complex_, name):
    f = complex_.field()
    filt = complex_.filtrations[name]
    out = []
    for n in complex_.space.degrees():
        chain = filt.chain(n)
        tags = adapted_basis(f, chain)
        ks = list(filt.indices) if filt.direction > 0 else list(filt.indices)[::-1]
        for v, pos in tags:
            if pos < len(ks):
                idx = ks[pos]
            else:
                idx = ks[-1] + filt.direction
            out.append((n, v, idx))
    return out
