import pytest

from hodgedef.artin import CANONICAL_ARTIN
from hodgedef.repvar import (GroupPresentation, MatrixRep, def_counts,
                             formal_model, lie_gln, ohat_truncate)
from hodgedef.diagrams import cone_mhd
from hodgedef.hodge import validate_mhc


def test_presentation_reduce():
    P = GroupPresentation(2, [[1, 2, -2, -1]])
    assert P.relators == [[]]
    P2 = GroupPresentation.Z2()
    assert P2.relators == [[1, 2, -1, -2]]


def test_matrix_rep_validates_relators():
    P = GroupPresentation(1, [[1, 1]])   # Z/2-like relator g^2 = 1
    with pytest.raises(ValueError):
        MatrixRep(P, "GL", 1, [[[2]]])
    MatrixRep(P, "GL", 1, [[[-1]]])


def test_ohat_Z_gl1_smooth_line():
    # Hom(Z, GL_1) = GL_1: formal ring k[[t]]: Hilbert 1,1,1,1
    P = GroupPresentation.Z()
    rep = MatrixRep.trivial(P, "GL", 1)
    ring = ohat_truncate(P, rep, 4)
    assert ring.hilbert == (1, 1, 1, 1, 1)


def test_ohat_F2_gl1_smooth_plane():
    P = GroupPresentation.free(2)
    rep = MatrixRep.trivial(P, "GL", 1)
    ring = ohat_truncate(P, rep, 4)
    assert ring.hilbert == (1, 2, 3, 4, 5)


def test_ohat_Z2_gl1():
    # relator is trivial in the abelian target: two free variables
    P = GroupPresentation.Z2()
    rep = MatrixRep.trivial(P, "GL", 1)
    ring = ohat_truncate(P, rep, 4)
    assert ring.hilbert == (1, 2, 3, 4, 5)


def test_ohat_Z2_gl2_commuting_variety():
    # [X, Y] = 0 in gl_2: tangent space 8-dim, three independent quadrics
    P = GroupPresentation.Z2()
    rep = MatrixRep.trivial(P, "GL", 2)
    ring = ohat_truncate(P, rep, 2)
    assert ring.hilbert[0] == 1
    assert ring.hilbert[1] == 8
    # dim Sym^2(k^8) = 36 minus the three independent commutator quadrics
    assert ring.hilbert[2] == 33


def test_ohat_nontrivial_rep():
    # Z with rho(g) = diag(1, -1): still a smooth point of GL_2-reps:
    # the centralizer direction count = Z^1(Z, ad rho) = dim gl_2 = 4
    P = GroupPresentation.Z()
    rep = MatrixRep(P, "GL", 2, [[[1, 0], [0, -1]]])
    ring = ohat_truncate(P, rep, 2)
    assert ring.hilbert[1] == 4


def test_def_counts_Z_gl1():
    P = GroupPresentation.Z()
    rep = MatrixRep.trivial(P, "GL", 1)
    A = CANONICAL_ARTIN["t2"]()
    out = def_counts(P, rep, A, 101)
    assert out["lifts"] == 101
    out = def_counts(P, rep, A, 101, quotient="G0")
    assert out["orbits"] == 101


def test_def_counts_F2_gl1_t3():
    P = GroupPresentation.free(2)
    rep = MatrixRep.trivial(P, "GL", 1)
    A = CANONICAL_ARTIN["t3"]()
    out = def_counts(P, rep, A, 101)
    assert out["lifts"] == 101 ** 4


def test_def_counts_Z2_gl2_square_zero():
    # commutators vanish mod m^2: all p^8 lifts
    P = GroupPresentation.Z2()
    rep = MatrixRep.trivial(P, "GL", 2)
    A = CANONICAL_ARTIN["t2"]()
    out = def_counts(P, rep, A, 101)
    assert out["lifts"] == 101 ** 8


def test_def_counts_nonabelian_small_prime_enumeration():
    # Z^2 into GL_2 over k[t]/t^3 is genuinely quadratic; only tiny fields
    # are enumerable and gl_2 x 2 generators x 2 steps is already too big
    P = GroupPresentation.Z2()
    rep = MatrixRep.trivial(P, "GL", 2)
    A = CANONICAL_ARTIN["t3"]()
    with pytest.raises(NotImplementedError):
        def_counts(P, rep, A, 101)


def test_formal_model_free_matches_spec_shape():
    d = formal_model("free", 2, lie_name="gl1")
    L = d.algebras[0]
    assert L.space.dim(0) == 1 and L.space.dim(1) == 2
    assert validate_mhc(d.complex_diagram()).ok


def test_formal_model_torus_validates():
    d = formal_model("torus", 1, lie_name="gl1")
    assert validate_mhc(d.complex_diagram()).ok
    cd = cone_mhd(d, arity_bound=4)
    assert cd.validate()


def test_formal_model_torus_gl2_multigraded():
    d = formal_model("torus", 1, lie_name="gl2")
    assert d.multigrading is not None
    L = d.algebras[0]
    assert L.space.dim(0) == 4 and L.space.dim(1) == 8 and L.space.dim(2) == 4
    assert validate_mhc(d.complex_diagram()).ok


def test_formal_model_abelian_g_kills_h1_brackets():
    d = formal_model("torus", 1, lie_name="gl1")
    L = d.algebras[0]
    # brackets with two degree-1 inputs vanish for abelian g
    for mono, val in L.brackets.get(2, {}).items():
        if mono[0][0] == 1 and mono[1][0] == 1:
            assert not any(val)


def test_formal_model_rejects_unknown_template():
    with pytest.raises(ValueError):
        formal_model("sphere", 1, lie_name="gl1")
