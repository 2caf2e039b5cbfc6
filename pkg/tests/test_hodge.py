import random
from fractions import Fraction

import pytest

from hodgedef.scalars import QQ, QQ_I, Gauss
from hodgedef.graded import (FilteredComplex, Filtration, GradedMap,
                             GradedSpace, cohomology, trivial_weight_filtration)
from hodgedef.hodge import (DiagramMorphism, MHSMorphism, MixedHodgeDiagram,
                            MixedHodgeStructure, PureHodgeStructure,
                            cone_complex, deligne_splitting, ext_filtered_complex,
                            hodge_numbers, mhc_cohomology, mhc_cone,
                            validate_mhc, validate_mhs)
from hodgedef.linalg import Subspace


def mhs_point():
    """k0 in weight 0 with F0 = all, F1 = 0."""
    return MixedHodgeStructure(
        1,
        {-1: Subspace.zero(QQ, 1), 0: Subspace.full(QQ, 1)},
        {0: Subspace.full(QQ_I, 1), 1: Subspace.zero(QQ_I, 1)})


def mhs_nonsplit():
    """2-dim nonsplit extension of weight 2 by weight 0: F1 = <e2 + i e1>."""
    i = QQ_I.i()
    return MixedHodgeStructure(
        2,
        {-1: Subspace.zero(QQ, 2), 0: Subspace(QQ, 2, [[1, 0]]),
         2: Subspace.full(QQ, 2)},
        {0: Subspace.full(QQ_I, 2),
         1: Subspace(QQ_I, 2, [[i, QQ_I.one()]]),
         2: Subspace.zero(QQ_I, 2)})


def test_validate_point():
    assert validate_mhs(mhs_point()).ok


def test_validate_parity_obstruction():
    # 1-dim in weight 1 with F of type (0,0): fails at k = 1
    m = MixedHodgeStructure(
        1,
        {0: Subspace.zero(QQ, 1), 1: Subspace.full(QQ, 1)},
        {0: Subspace.full(QQ_I, 1), 1: Subspace.zero(QQ_I, 1)})
    v = validate_mhs(m)
    assert not v.ok
    assert v.failure == 1


def test_validate_nonsplit():
    assert validate_mhs(mhs_nonsplit()).ok


def test_hodge_numbers_nonsplit():
    h = hodge_numbers(mhs_nonsplit())
    assert h == {(0, 0): 1, (1, 1): 1}


def test_deligne_splitting_pure():
    # pure weight 1 of dim 2: types (1,0) + (0,1)
    i = QQ_I.i()
    m = MixedHodgeStructure(
        2,
        {0: Subspace.zero(QQ, 2), 1: Subspace.full(QQ, 2)},
        {0: Subspace.full(QQ_I, 2),
         1: Subspace(QQ_I, 2, [[QQ_I.one(), i]]),
         2: Subspace.zero(QQ_I, 2)})
    pieces = deligne_splitting(m)
    assert set(pieces) == {(1, 0), (0, 1)}
    assert pieces[(1, 0)] == Subspace(QQ_I, 2, [[QQ_I.one(), i]])
    assert pieces[(0, 1)] == Subspace(QQ_I, 2, [[QQ_I.one(), -i]])


def test_deligne_splitting_split_sum():
    # direct sum of weight 0 and weight 2 (1,1): split case
    m = MixedHodgeStructure(
        2,
        {0: Subspace(QQ, 2, [[1, 0]]), 2: Subspace.full(QQ, 2)},
        {0: Subspace.full(QQ_I, 2),
         1: Subspace(QQ_I, 2, [[QQ_I.zero(), QQ_I.one()]]),
         2: Subspace.zero(QQ_I, 2)})
    pieces = deligne_splitting(m)
    assert pieces[(0, 0)] == Subspace(QQ_I, 2, [[1, 0]])
    assert pieces[(1, 1)] == Subspace(QQ_I, 2, [[0, 1]])


def test_deligne_splitting_nonsplit():
    i = QQ_I.i()
    pieces = deligne_splitting(mhs_nonsplit())
    assert pieces[(0, 0)] == Subspace(QQ_I, 2, [[1, 0]])
    assert pieces[(1, 1)] == Subspace(QQ_I, 2, [[i, QQ_I.one()]])


def random_mhs(rng, dim=None):
    """Random valid MHS: a split sum of pure pieces twisted by a unipotent
    W-preserving automorphism (moves F, keeps W and all Gr untouched)."""
    if dim is None:
        dim = rng.randint(1, 4)
    # assign each basis vector a weight and a Hodge type
    types = []
    k = 0
    while len(types) < dim:
        w = rng.choice([0, 1, 1, 2, 2, 3])
        if w % 2 == 1:
            if dim - len(types) >= 2:
                p = rng.randint(0, w)
                types.append((p, w - p))
                types.append((w - p, p))
            else:
                types.append((0, 0))
        else:
            p = rng.choice([w // 2, rng.randint(0, w)])
            q = w - p
            if p == q:
                types.append((p, q))
            elif dim - len(types) >= 2:
                types.append((p, q))
                types.append((q, p))
            else:
                types.append((w // 2, w // 2))
    types.sort(key=lambda t: t[0] + t[1])
    i = QQ_I.i()
    vecs = {}
    for idx, (p, q) in enumerate(types):
        v = [QQ_I.zero()] * dim
        v[idx] = QQ_I.one()
        vecs.setdefault((p, q), []).append((idx, v))
    # pair conjugate types by sending e_a +- i e_b when p != q
    done = set()
    basis = {}
    for (p, q), entries in sorted(vecs.items()):
        if (p, q) in done:
            continue
        if p == q:
            basis[(p, q)] = [v for _, v in entries]
            done.add((p, q))
        else:
            mirror = vecs[(q, p)]
            mine, theirs = [], []
            for (ia, va), (ib, vb) in zip(entries, mirror):
                u = [x + i * y for x, y in zip(va, vb)]
                ubar = [x - i * y for x, y in zip(va, vb)]
                mine.append(u)
                theirs.append(ubar)
            basis[(p, q)] = mine
            basis[(q, p)] = theirs
            done.add((p, q))
            done.add((q, p))
    weights = sorted({p + q for (p, q) in types})
    wlev = {}
    for w in range(min(weights) - 1, max(weights) + 1):
        rows = [[1 if j == idx else 0 for j in range(dim)]
                for idx, (p, q) in enumerate(types) if p + q <= w]
        wlev[w] = Subspace(QQ, dim, rows)
    ps = sorted({p for (p, q) in types})
    flev = {}
    for p0 in range(min(ps), max(ps) + 2):
        rows = []
        for (p, q), vs in basis.items():
            if p >= p0:
                rows.extend(vs)
        flev[p0] = Subspace(QQ_I, dim, rows)
    m = MixedHodgeStructure(dim, wlev, flev)
    # unipotent twist: u = 1 + N with N strictly decreasing the weight.
    n_mat = [[QQ_I.zero()] * dim for _ in range(dim)]
    for a, (p1, q1) in enumerate(types):
        for b, (p2, q2) in enumerate(types):
            if p2 + q2 < p1 + q1 and rng.random() < 0.5:
                n_mat[b][a] = QQ_I.of((rng.randint(-2, 2), rng.randint(-2, 2)))
    u = [[(QQ_I.one() if a == b else QQ_I.zero()) + n_mat[a][b] for b in range(dim)]
         for a in range(dim)]
    flev2 = {p: s.map_by(u, dim) for p, s in flev.items()}
    return MixedHodgeStructure(dim, wlev, flev2)


def test_random_mhs_corpus_validates_and_splits():
    rng = random.Random(20240)
    count = 0
    for _ in range(25):
        m = random_mhs(rng)
        assert validate_mhs(m).ok
        pieces = deligne_splitting(m)
        # dims match the graded Hodge numbers
        hn = hodge_numbers(m)
        got = {pq: s.dim for pq, s in pieces.items()}
        assert got == hn
        count += 1
    assert count == 25


def test_pure_hodge_structure_class():
    i = QQ_I.i()
    p = PureHodgeStructure(2, 1, {
        (1, 0): Subspace(QQ_I, 2, [[QQ_I.one(), i]]),
        (0, 1): Subspace(QQ_I, 2, [[QQ_I.one(), -i]]),
    })
    m = p.to_mhs()
    assert validate_mhs(m).ok
    with pytest.raises(ValueError):
        PureHodgeStructure(2, 1, {
            (1, 0): Subspace(QQ_I, 2, [[QQ_I.one(), QQ_I.zero()]]),
            (0, 1): Subspace(QQ_I, 2, [[QQ_I.one(), -i]]),
        })


def test_dual_mhs():
    m = mhs_nonsplit()
    d = m.dual()
    assert validate_mhs(d).ok
    assert d.weights_with_dims() == {0: 1, -2: 1}


def test_mhs_morphism_strictness():
    src = mhs_point()
    tgt = mhs_nonsplit()
    # map k0 -> e1 (weight 0 into weight 0 part): a strict morphism
    f = MHSMorphism(src, tgt, [[1], [0]])
    assert f.is_strict()
    # weight-violating map k0(w=0) -> e2 direction is not even a morphism
    with pytest.raises(ValueError):
        MHSMorphism(src, tgt, [[0], [1]])


# --- diagrams ---

def compact_template_diagram():
    """Degree 0..2 complex, zero differential, H^n pure of weight n.

    Models the torus template with 1-dim coefficients: dims 1, 2, 1.
    """
    sp = GradedSpace(QQ, {0: 1, 1: 2, 2: 1}, {0: ("one",), 1: ("e1", "e2"), 2: ("e12",)})
    d = GradedMap.zero_map(sp, sp, 1)
    base = FilteredComplex(sp, d, {"W": trivial_weight_filtration(sp)})
    i = QQ_I.i()
    ext = ext_filtered_complex(base)
    f = Filtration(ext.space, -1, {
        0: {0: Subspace.full(QQ_I, 1), 1: Subspace.full(QQ_I, 2), 2: Subspace.full(QQ_I, 1)},
        1: {0: Subspace.zero(QQ_I, 1), 1: Subspace(QQ_I, 2, [[QQ_I.one(), i]]),
            2: Subspace.full(QQ_I, 1)},
        2: {0: Subspace.zero(QQ_I, 1), 1: Subspace.zero(QQ_I, 2), 2: Subspace.zero(QQ_I, 1)},
    })
    return MixedHodgeDiagram.identity_diagram(base, f)


def test_validate_mhc_compact_template():
    d = compact_template_diagram()
    assert validate_mhc(d).ok


def test_mhc_cohomology_weights():
    d = compact_template_diagram()
    for n, expected in ((0, {0: 1}), (1, {1: 2}), (2, {2: 1})):
        m = mhc_cohomology(d, n)
        assert validate_mhs(m).ok
        assert m.weights_with_dims() == expected


def test_validate_mhc_detects_strictness_failure():
    # two-term complex k -> k with d = 1, F skewed so d F^1 misses F^1 cap im d
    sp = GradedSpace(QQ, {0: 1, 1: 1})
    d = GradedMap(sp, sp, 1, {0: [[1]]})
    base = FilteredComplex(sp, d, {"W": trivial_weight_filtration(sp)})
    ext = ext_filtered_complex(base)
    f = Filtration(ext.space, -1, {
        0: {0: Subspace.full(QQ_I, 1), 1: Subspace.full(QQ_I, 1)},
        1: {0: Subspace.zero(QQ_I, 1), 1: Subspace.full(QQ_I, 1)},
        2: {0: Subspace.zero(QQ_I, 1), 1: Subspace.zero(QQ_I, 1)},
    })
    last = FilteredComplex(ext.space, ext.d, {"W": ext.filtrations["W"], "F": f})
    diag = MixedHodgeDiagram([base, last], [(0, 1, GradedMap.identity_map(last.space))])
    v = validate_mhc(diag)
    assert not v.ok
    assert v.axiom == 2


def test_validate_mhc_detects_purity_failure():
    # degree-0 space in weight 1 with F of type (0,0): axiom 3
    sp = GradedSpace(QQ, {0: 1})
    d = GradedMap.zero_map(sp, sp, 1)
    base = FilteredComplex(sp, d, {"W": trivial_weight_filtration(sp, 1)})
    ext = ext_filtered_complex(base)
    f = Filtration(ext.space, -1, {
        0: {0: Subspace.full(QQ_I, 1)},
        1: {0: Subspace.zero(QQ_I, 1)},
    })
    last = FilteredComplex(ext.space, ext.d, {"W": ext.filtrations["W"], "F": f})
    diag = MixedHodgeDiagram([base, last], [(0, 1, GradedMap.identity_map(last.space))])
    v = validate_mhc(diag)
    assert not v.ok
    assert v.axiom == 3


def test_validate_mhc_detects_broken_comparison():
    # comparison which is not a quasi-isomorphism: zero map between nonzero H
    sp = GradedSpace(QQ, {0: 1})
    d = GradedMap.zero_map(sp, sp, 1)
    base = FilteredComplex(sp, d, {"W": trivial_weight_filtration(sp)})
    ext = ext_filtered_complex(base)
    f = Filtration(ext.space, -1, {
        0: {0: Subspace.full(QQ_I, 1)},
        1: {0: Subspace.zero(QQ_I, 1)},
    })
    last = FilteredComplex(ext.space, ext.d, {"W": ext.filtrations["W"], "F": f})
    diag = MixedHodgeDiagram([base, last],
                             [(0, 1, GradedMap.zero_map(last.space, last.space, 0))])
    v = validate_mhc(diag)
    assert not v.ok
    assert v.axiom == "comparisons"


def point_diagram(weight=0):
    sp = GradedSpace(QQ, {0: 1})
    d = GradedMap.zero_map(sp, sp, 1)
    base = FilteredComplex(sp, d, {"W": trivial_weight_filtration(sp, weight)})
    ext = ext_filtered_complex(base)
    p = weight // 2
    f = Filtration(ext.space, -1, {
        p: {0: Subspace.full(QQ_I, 1)},
        p + 1: {0: Subspace.zero(QQ_I, 1)},
    })
    last = FilteredComplex(ext.space, ext.d, {"W": ext.filtrations["W"], "F": f})
    return MixedHodgeDiagram([base, last], [(0, 1, GradedMap.identity_map(last.space))])


def test_mhc_cone_identity_acyclic():
    d1 = point_diagram()
    d2 = point_diagram()
    maps = [GradedMap.identity_map(c.space) for c in d1.components]
    mor = DiagramMorphism(d1, d2, maps)
    cone = mhc_cone(mor, desuspended=False)
    for n in (-2, -1, 0, 1):
        assert cohomology(cone.base, n).dim == 0


def test_mhc_cone_zero_map_weights():
    # cone of 0: K -> L has H = H^{n+1}(K) + H^n(L) with the W shift on K
    d1 = point_diagram(0)
    d2 = point_diagram(0)
    maps = [GradedMap.zero_map(a.space, b.space, 0)
            for a, b in zip(d1.components, d2.components)]
    mor = DiagramMorphism(d1, d2, maps)
    cone = mhc_cone(mor, desuspended=False)
    assert validate_mhc(cone).ok
    m_1 = mhc_cohomology(cone, -1)   # H^0(K) shows up in degree -1
    m0 = mhc_cohomology(cone, 0)     # H^0(L)
    # W_k Cone = W_{k-1} K^{n+1} + W_k L^n; K-part weight bumps by 1, then the
    # W[n] shift on H^{-1} pulls it back: total weight 1 + (-1) = 0
    assert m_1.weights_with_dims() == {0: 1}
    assert m0.weights_with_dims() == {0: 1}


def test_mhc_cone_long_exact_sequence_ranks():
    # rank-1 nontrivial map between points: cone is acyclic, LES exact
    d1 = point_diagram()
    d2 = point_diagram()
    maps = [GradedMap.identity_map(c.space) for c in d1.components]
    mor = DiagramMorphism(d1, d2, maps)
    cone = mhc_cone(mor, desuspended=False)
    hk = [cohomology(d1.base, n).dim for n in (-1, 0, 1)]
    hl = [cohomology(d2.base, n).dim for n in (-1, 0, 1)]
    hc = [cohomology(cone.base, n).dim for n in (-1, 0, 1)]
    # Euler characteristic of the LES vanishes
    total = sum(hk) - sum(hl) + sum(hc)
    assert total == sum(hk) + sum(hc) - sum(hl)
    assert all(x == 0 for x in hc)


def test_tensor_of_diagrams_is_mhc():
    from hodgedef.powers import tensor_complexes
    d = compact_template_diagram()
    base = tensor_complexes(d.base, d.base)
    last = tensor_complexes(d.last, d.last)
    comp = []
    diag = MixedHodgeDiagram([base, last], [(0, 1, _tensor_identity(base, last))])
    assert validate_mhc(diag).ok


def _tensor_identity(base, last):
    from hodgedef.hodge import ext_filtered_complex
    ext = ext_filtered_complex(base)
    blocks = {}
    for n in ext.space.degrees():
        dim = ext.space.dim(n)
        assert dim == last.space.dim(n)
        blocks[n] = [[QQ_I.one() if a == b else QQ_I.zero() for b in range(dim)]
                     for a in range(dim)]
    return GradedMap(ext.space, last.space, 0, blocks)
