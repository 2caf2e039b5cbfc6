import random
from fractions import Fraction
from math import comb

import pytest

from hodgedef.scalars import GF, QQ
from hodgedef.artin import (CANONICAL_ARTIN, ArtinAlgebra, TensorElement,
                            artin_truncated_polynomial, bch,
                            change_algebra_field, functor_points,
                            gauge_action, mc_residual)
from hodgedef.corpus import (CDGA_LIBRARY, acyclic_summand, direct_sum_dg_lie,
                             evaluation_augmentation, lie_borel2, lie_gl1,
                             lie_heisenberg, lie_sl2, lie_to_dg, tensor_dg_lie)
from hodgedef.deformation import (BarH0, count_local_homs, prorep,
                                  prorep_vs_points)
from hodgedef.graded import GradedMap, GradedSpace
from hodgedef.linfinity import bar_construct, dg_lie_algebra, fm_cone


def heis_dg():
    return lie_to_dg(lie_heisenberg())


def test_artin_canonical_examples():
    for name, mk in CANONICAL_ARTIN.items():
        A = mk()
        assert A.nilpotency_index() is not None
    assert artin_truncated_polynomial(3).nilpotency_index() == 3
    assert CANONICAL_ARTIN["xy2"]().nilpotency_index() == 2
    assert CANONICAL_ARTIN["mixed"]().nilpotency_index() == 3


def test_bch_abelian_is_addition():
    L = lie_to_dg(lie_gl1())
    A = artin_truncated_polynomial(4)
    a = TensorElement(L, A, 0, [[Fraction(1), Fraction(2), Fraction(0)]])
    b = TensorElement(L, A, 0, [[Fraction(3), Fraction(0), Fraction(1)]])
    c = bch(L, A, a, b)
    assert c.coeffs == a.add(b).coeffs


def test_bch_length_two_head():
    # in k[t]/t^3 with heisenberg: bch(x t, y t) = x t + y t + (1/2) z t^2
    L = heis_dg()
    A = artin_truncated_polynomial(3)
    a = TensorElement(L, A, 0, [[Fraction(1), Fraction(0)],
                                [Fraction(0), Fraction(0)],
                                [Fraction(0), Fraction(0)]])
    b = TensorElement(L, A, 0, [[Fraction(0), Fraction(0)],
                                [Fraction(1), Fraction(0)],
                                [Fraction(0), Fraction(0)]])
    c = bch(L, A, a, b)
    assert c.coeffs[0] == [Fraction(1), Fraction(0)]
    assert c.coeffs[1] == [Fraction(1), Fraction(0)]
    assert c.coeffs[2] == [Fraction(0), Fraction(1, 2)]


def test_bch_group_axioms_random():
    rng = random.Random(99)
    L = lie_to_dg(lie_sl2())
    A = artin_truncated_polynomial(4)
    zero = TensorElement(L, A, 0)
    for _ in range(6):
        def rnd():
            return TensorElement(L, A, 0,
                                 [[Fraction(rng.randint(-2, 2)) for _ in range(A.dim)]
                                  for _ in range(3)])
        a, b, c = rnd(), rnd(), rnd()
        inv = bch(L, A, a, a.scale(QQ.of(-1)))
        assert inv.is_zero()
        lhs = bch(L, A, bch(L, A, a, b), c)
        rhs = bch(L, A, a, bch(L, A, b, c))
        assert lhs.coeffs == rhs.coeffs


def test_mc_residual_zero_and_abelian():
    L = heis_dg()
    A = artin_truncated_polynomial(3)
    x = TensorElement(L, A, 1)
    assert mc_residual(L, A, x).is_zero()
    # abelian L concentrated in degrees 0..2 with a differential
    sp = GradedSpace(QQ, {0: 1, 1: 1, 2: 1})
    Lab = dg_lie_algebra(sp, {1: [[1]]}, None)
    y = TensorElement(Lab, A, 1, [[Fraction(1), Fraction(0)]])
    res = mc_residual(Lab, A, y)
    dy = TensorElement(Lab, A, 1, [[Fraction(1), Fraction(0)]])
    from hodgedef.artin import d_tensor
    assert res.coeffs == d_tensor(dy).coeffs


def test_gauge_preserves_mc_over_prime_field():
    # graded DG Lie with nonzero d and brackets: torus (x) borel
    L = tensor_dg_lie(CDGA_LIBRARY["torus"](), lie_borel2())
    p = 101
    f = GF(p)
    A = artin_truncated_polynomial(3).change_field(f)
    Lp = change_algebra_field(L, f)
    rng = random.Random(4)
    sols = []
    # sample a few MC elements rather than enumerating p^each
    for _ in range(200):
        x = TensorElement(Lp, A, 1,
                          [[f.of(rng.randint(0, p - 1)) for _ in range(A.dim)]
                           for _ in range(Lp.space.dim(1))])
        if mc_residual(Lp, A, x).is_zero():
            sols.append(x)
    lam = TensorElement(Lp, A, 0,
                        [[f.of(rng.randint(0, p - 1)) for _ in range(A.dim)]
                         for _ in range(Lp.space.dim(0))])
    moved = 0
    for x in sols:
        y = gauge_action(Lp, A, lam, x)
        assert mc_residual(Lp, A, y).is_zero()
        if y.freeze() != x.freeze():
            moved += 1
    assert sols, "expected to sample at least one Maurer-Cartan element"


def small_pair(seed=0):
    """Tiny augmented pair suitable for exhaustive F_p enumeration."""
    # L = H(circle) (x) gl1: L^0 = k, L^1 = k, all brackets zero, eps = id
    lie = lie_gl1()
    L = tensor_dg_lie(CDGA_LIBRARY["circle"](), lie)
    g, eps = evaluation_augmentation(L, lie)
    return L, g, eps


def borel_pair():
    """Nonabelian small pair: L = H(circle) (x) borel2."""
    lie = lie_borel2()
    L = tensor_dg_lie(CDGA_LIBRARY["circle"](), lie)
    g, eps = evaluation_augmentation(L, lie)
    return L, g, eps


def test_functor_points_trivial_l1():
    # L with L^1 = 0: a single point for every A
    lie = lie_gl1()
    L = tensor_dg_lie(CDGA_LIBRARY["point"](), lie)
    g, eps = evaluation_augmentation(L, lie)
    for A in (CANONICAL_ARTIN["t2"](), CANONICAL_ARTIN["xy2"]()):
        pts = functor_points("plain", L, A, 11)
        assert pts.orbit_count == 1
        pts = functor_points("augmented", L, A, 11, eps=eps, g=g)
        # all of exp(g (x) m_A) modulo eps(L^0 (x) m_A) = everything: one orbit
        assert pts.orbit_count == 1


def test_functor_points_augmented_equals_cone_small():
    cases = [
        (small_pair(), "t2", 11), (small_pair(), "t3", 11),
        (small_pair(), "xy2", 11),
        (borel_pair(), "t2", 5), (borel_pair(), "t2", 7),
    ]
    for (L, g, eps), artname, p in cases:
        A = CANONICAL_ARTIN[artname]()
        a = functor_points("augmented", L, A, p, eps=eps, g=g, method="enumerate")
        c = functor_points("cone", L, A, p, eps=eps, g=g, method="enumerate")
        assert a.orbit_count == c.orbit_count, (artname, p)


def test_reduced_count_matches_enumeration():
    cases = [
        (small_pair(), "t2", 11), (small_pair(), "t3", 11),
        (borel_pair(), "t2", 7),
    ]
    for (L, g, eps), artname, p in cases:
        A = CANONICAL_ARTIN[artname]()
        for kind in ("augmented", "cone"):
            e = functor_points(kind, L, A, p, eps=eps, g=g, method="enumerate")
            r = functor_points(kind, L, A, p, eps=eps, g=g, method="reduced")
            assert e.orbit_count == r.orbit_count, (kind, artname, p)


def test_functor_points_gl1_counts():
    # L = circle (x) gl1, A = k[t]/t^2, p: MC = L^1 (x) m = p points; gauge
    # trivial (abelian, d = 0): p orbits; augmented adds alpha in g (x) m
    # modulo eps-translation: p orbits again
    L, g, eps = small_pair()
    p = 11
    A = CANONICAL_ARTIN["t2"]()
    plain = functor_points("plain", L, A, p)
    assert plain.orbit_count == p
    aug = functor_points("augmented", L, A, p, eps=eps, g=g)
    assert aug.orbit_count == p


def test_prorep_acyclic_gives_k():
    # acyclic cone: R_n = k for all n
    g = lie_to_dg(lie_sl2())
    eps = GradedMap.identity_map(g.space)
    C = fm_cone(g, g, eps, arity_bound=5)
    tower = prorep(C, 4, 4)
    assert tower.hilbert == (1, 0, 0, 0, 0)


def test_prorep_abelian_power_series():
    # abelian C with H^1 = k^2, H^2 = 0: power series in two variables
    sp = GradedSpace(QQ, {1: 2})
    C = dg_lie_algebra(sp, None, None)
    tower = prorep(C, 4, 4, verify_stabilization=True)
    assert tower.hilbert == (1, 2, 3, 4, 5)
    assert tower.x_dims == [2, 5, 9, 14]
    R2 = tower.artin_level(2)
    assert R2.dim == 5


def test_prorep_rejects_nonzero_h0():
    sp = GradedSpace(QQ, {0: 1, 1: 2})
    C = dg_lie_algebra(sp, None, None)
    with pytest.raises(ValueError, match="H\\^0"):
        prorep(C, 3, 3)


def test_prorep_cotangent_is_h1():
    L, g, eps = borel_pair()
    C = fm_cone(L, g, eps, arity_bound=5)
    tower = prorep(C, 3, 3)
    # dim m/m^2 = dim H^1(C); here eps is onto, H^0(L) -> g iso, so
    # H^1(C) = H^1(L) = borel2 in degree 1
    assert tower.cotangent_dim() == 2


def test_count_local_homs_square_zero():
    sp = GradedSpace(QQ, {1: 2})
    C = dg_lie_algebra(sp, None, None)
    tower = prorep(C, 2, 2)
    A = CANONICAL_ARTIN["xy2"]()
    # maps R -> k[x,y]/(x,y)^2: linear maps on 2 generators: p^4
    assert count_local_homs(tower, A, 11) == 11 ** 4


def test_prorep_vs_points_abelian_and_borel():
    for L, g, eps in (small_pair(), borel_pair()):
        C = fm_cone(L, g, eps, arity_bound=5)
        tower = prorep(C, 3, 3)
        for artname in ("t2", "t3"):
            A = CANONICAL_ARTIN[artname]()
            for p in (11, 13):
                rep = prorep_vs_points(tower, L, eps, g, A, p, kind="cone")
                assert rep["equal"], (artname, p, rep)


def test_prorep_vs_points_detects_wrong_multiplication():
    sp = GradedSpace(QQ, {1: 1})
    # C abelian with H^1 = k: R = k[[t]]; mutate the multiplication table
    C = dg_lie_algebra(sp, None, None)
    tower = prorep(C, 3, 3)
    A = CANONICAL_ARTIN["t3"]()
    lie = lie_gl1()
    L = tensor_dg_lie(CDGA_LIBRARY["circle"](), lie)
    g, eps = evaluation_augmentation(L, lie)
    rep = prorep_vs_points(tower, L, eps, g, A, 11, kind="cone")
    assert rep["equal"]
    # break x1 * x1: claim it equals x2 + x1 (not nilpotent-compatible ->
    # the hom count changes)
    bad = dict(tower.mult)
    bad[(0, 0)] = {0: QQ.one()}
    tower.mult = bad
    with pytest.raises(Exception):
        # either the mutated table fails to be an Artin algebra, or the
        # count disagrees; both are detections
        rep2 = prorep_vs_points(tower, L, eps, g, A, 11, kind="cone")
        assert rep2["equal"]


def test_quasi_isomorphism_invariance_of_hilbert():
    rng = random.Random(6)
    L, g, eps = borel_pair()
    A = acyclic_summand()
    Lsum = direct_sum_dg_lie(L, A)[3]
    blocks = {}
    for n in L.space.degrees():
        rows = [[QQ.zero()] * Lsum.space.dim(n) for _ in range(L.space.dim(n))]
        for i in range(L.space.dim(n)):
            rows[i][i] = QQ.one()
        blocks[n] = rows
    proj = GradedMap(Lsum.space, L.space, 0, blocks)
    eps_sum = eps.compose(proj)
    C1 = fm_cone(Lsum, g, eps_sum, arity_bound=5)
    C2 = fm_cone(L, g, eps, arity_bound=5)
    t1 = prorep(C1, 3, 3)
    t2 = prorep(C2, 3, 3)
    assert t1.hilbert == t2.hilbert
