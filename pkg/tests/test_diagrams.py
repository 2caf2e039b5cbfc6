import random

import pytest

from hodgedef.scalars import QQ, QQ_I
from hodgedef.corpus import (CDGA_LIBRARY, evaluation_augmentation, lie_gl2,
                             lie_gl1, lie_sl2, lie_to_dg, tensor_dg_lie)
from hodgedef.diagrams import (AugmentedDiagram, bar_mhd, bar_page_identities,
                               bar_weight, cone_mhd,
                               graded_bar_differential_is_q1, qis_transport)
from hodgedef.graded import (Filtration, GradedMap, GradedSpace, cohomology,
                             trivial_weight_filtration)
from hodgedef.hodge import validate_mhc, mhc_cohomology, validate_mhs
from hodgedef.linalg import Subspace
from hodgedef.linfinity import bar_construct, validate_linf
from hodgedef.powers import WEDGE


def torus_gl1_template():
    """The compact template: H(T^2) (x) gl1 with H^n pure of weight n."""
    lie = lie_gl1()
    L = tensor_dg_lie(CDGA_LIBRARY["torus"](), lie)
    g, eps = evaluation_augmentation(L, lie)
    i = QQ_I.i()
    sp_ext = GradedSpace(QQ_I, dict(L.space.dims), dict(L.space.labels))
    f_filt = Filtration(sp_ext, -1, {
        0: {0: Subspace.full(QQ_I, 1), 1: Subspace.full(QQ_I, 2), 2: Subspace.full(QQ_I, 1)},
        1: {0: Subspace.zero(QQ_I, 1), 1: Subspace(QQ_I, 2, [[QQ_I.one(), i]]),
            2: Subspace.full(QQ_I, 1)},
        2: {0: Subspace.zero(QQ_I, 1), 1: Subspace.zero(QQ_I, 2),
            2: Subspace.zero(QQ_I, 1)},
    })
    return AugmentedDiagram.from_pair(L, g, eps, f_filt=f_filt)


def free_gl1_template(k):
    """Wedge of k circles (x) gl1: H^1 pure of weight 2, type (1,1)."""
    lie = lie_gl1()
    name = {1: "circle", 2: "circles2", 3: "circles3"}[k]
    L = tensor_dg_lie(CDGA_LIBRARY[name](), lie)
    g, eps = evaluation_augmentation(L, lie)
    w = Filtration(L.space, +1, {
        -1: {0: Subspace.zero(QQ, 1), 1: Subspace.zero(QQ, k)},
        0: {0: Subspace.full(QQ, 1), 1: Subspace.zero(QQ, k)},
        1: {0: Subspace.full(QQ, 1), 1: Subspace.full(QQ, k)},
    })
    sp_ext = GradedSpace(QQ_I, dict(L.space.dims), dict(L.space.labels))
    f_filt = Filtration(sp_ext, -1, {
        0: {0: Subspace.full(QQ_I, 1), 1: Subspace.full(QQ_I, k)},
        1: {0: Subspace.zero(QQ_I, 1), 1: Subspace.full(QQ_I, k)},
        2: {0: Subspace.zero(QQ_I, 1), 1: Subspace.zero(QQ_I, k)},
    })
    return AugmentedDiagram.from_pair(L, g, eps, w_filt=w, f_filt=f_filt)


def free2_gl1_template():
    return free_gl1_template(2)


def test_torus_template_is_valid_augmented_diagram():
    d = torus_gl1_template()
    assert validate_mhc(d.complex_diagram()).ok


def test_free2_template_is_valid():
    d = free2_gl1_template()
    m = mhc_cohomology(d.complex_diagram(), 1)
    assert m.weights_with_dims() == {2: 2}


def test_cone_mhd_compact_template():
    d = torus_gl1_template()
    cd = cone_mhd(d, arity_bound=4)
    assert cd.validate()
    # cone cohomology carries the expected weights: H^1 = g/eps(H^0 L) (+) H^1(L)
    mh1 = mhc_cohomology(cd.complex_diagram(), 1)
    assert validate_mhs(mh1).ok
    # eps is onto here, so H^1(C) = H^1(L): pure weight 1, dim 2
    assert mh1.weights_with_dims() == {1: 2}


def test_cone_mhd_rejects_impure_target():
    d = torus_gl1_template()
    from hodgedef.hodge import PureHodgeStructure
    d.g_hodge = PureHodgeStructure(1, 2, {(1, 1): Subspace.full(QQ_I, 1)})
    with pytest.raises(ValueError, match="pure of weight zero"):
        cone_mhd(d)


def test_cone_mhd_rejects_negative_weights():
    lie = lie_gl1()
    L = tensor_dg_lie(CDGA_LIBRARY["circle"](), lie)
    g, eps = evaluation_augmentation(L, lie)
    w = Filtration(L.space, +1, {
        -1: {0: Subspace.full(QQ, 1), 1: Subspace.zero(QQ, 1)},
        0: {0: Subspace.full(QQ, 1), 1: Subspace.full(QQ, 1)},
    })
    d = AugmentedDiagram.from_pair(L, g, eps, w_filt=w, validate=False)
    with pytest.raises(ValueError, match="negative weights"):
        cone_mhd(d)


def test_bar_weight_trivial_w_jumps_at_word_length():
    # torus template: W trivial on L, so every L-generator has weight 0 and
    # CW-weight 1 after the shift; g-part generators get weight -1, thus 0.
    d = torus_gl1_template()
    cd = cone_mhd(d, arity_bound=4)
    cone = cd.base_cone()
    bar = bar_construct(cone, 3)
    cw, _ = bar_weight(bar, cd.w_filts[0])
    for n in bar.degrees():
        for i, mono in enumerate(bar.basis[n]):
            v = [QQ.zero()] * bar.dim(n)
            v[i] = QQ.one()
            w = cw.weight_of_vector(n, v)
            expected = 0
            for (sd, gi) in mono:
                cn = sd + 1
                a, b = cone.parts.get(cn, (0, 0))
                expected += 1 if gi < a else 0
            assert w == expected


def test_bar_weight_q_graded_is_q1():
    d = torus_gl1_template()
    cd = cone_mhd(d, arity_bound=4)
    cone = cd.base_cone()
    bar = bar_construct(cone, 3)
    cw, _ = bar_weight(bar, cd.w_filts[0])
    assert graded_bar_differential_is_q1(bar, cw)


def test_bar_mhd_compact_template_validates_and_pages_match():
    d = torus_gl1_template()
    cd = cone_mhd(d, arity_bound=4)
    for s in (1, 2, 3):
        bd = bar_mhd(cd, s, check_pages=True)
        rep = bar_page_identities(bd, component=0)
        assert rep["ok"]
        rep_last = bar_page_identities(bd, component=bd.cone_diagram.n_components() - 1)
        assert rep_last["ok"]


def test_bar_mhd_s1_recovers_h1_of_cone():
    # C_1(C) = C[1]: the MHS on H^0(C_1) is H^1(C) with the weight shift
    d = torus_gl1_template()
    cd = cone_mhd(d, arity_bound=4)
    bd = bar_mhd(cd, 1, check_pages=False)
    m_bar = mhc_cohomology(bd.mhd(), 0)
    m_cone = mhc_cohomology(cd.complex_diagram(), 1)
    assert m_bar.dim == m_cone.dim
    # CW_k(C_1) = W[1]_k = W_{k-1}, which is exactly Deligne's W[1] on H^1:
    # the two mixed Hodge structures agree on the nose
    assert m_bar.weights_with_dims() == m_cone.weights_with_dims()
    assert validate_mhs(m_bar).ok


def test_bar_mhd_rejects_nonzero_h0():
    # eps = 0 leaves H^0(C) = H^0(L) != 0; the bar diagram must refuse it
    d = free_gl1_template(1)
    L, g = d.algebras[0], d.g
    zero_eps = GradedMap.zero_map(L.space, g.space, 0)
    d0 = AugmentedDiagram.from_pair(L, g, zero_eps,
                                    w_filt=d.w_filts[0], f_filt=d.f_filt)
    cd = cone_mhd(d0, arity_bound=4)
    with pytest.raises(ValueError, match="H\\^0"):
        bar_mhd(cd, 2)


def test_qis_transport_identity():
    d = torus_gl1_template()
    cd = cone_mhd(d, arity_bound=4)
    maps = [GradedMap.identity_map(c.space) for c in cd.cones]
    verdicts, h0 = qis_transport(maps, cd, cd, 3)
    assert all(v.ok for v in verdicts)
    n = len(h0)
    assert h0 == [[QQ.one() if a == b else QQ.zero() for b in range(n)] for a in range(n)]


def test_qis_transport_detects_non_qis():
    d = torus_gl1_template()
    cd = cone_mhd(d, arity_bound=4)
    maps = [GradedMap.zero_map(c.space, c.space, 0) for c in cd.cones]
    verdicts, h0 = qis_transport(maps, cd, cd, 2)
    assert not all(v.ok for v in verdicts)
