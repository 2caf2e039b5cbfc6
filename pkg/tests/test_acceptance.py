"""Acceptance suite: one test per exit criterion, each printing a PASS line.

The randomized corpora are seeded and deterministic.  Counting corpora keep
every enumeration space under the documented caps; the large (Z^2, GL_2)
cross-check runs the multigraded block path.
"""

import glob
import io as _io
import json
import os
import random
import subprocess
import sys
import tokenize
from fractions import Fraction
from math import comb

import pytest

from hodgedef.scalars import QQ, QQ_I
from hodgedef.artin import (CANONICAL_ARTIN, artin_truncated_polynomial,
                            functor_points)
from hodgedef.corpus import (CDGA_LIBRARY, acyclic_summand, direct_sum_dg_lie,
                             evaluation_augmentation, lie_gl1,
                             random_augmented_pair, tensor_dg_lie)
from hodgedef.deformation import (cotangent_sequence, count_local_homs,
                                  mhs_on_ring, orbit_weight_zero, prorep,
                                  prorep_vs_points)
from hodgedef.diagrams import (AugmentedDiagram, bar_mhd, bar_page_identities,
                               cone_map_from_l_map, cone_mhd, qis_transport)
from hodgedef.graded import Filtration, GradedMap, GradedSpace
from hodgedef.hodge import (deligne_splitting, hodge_numbers, validate_mhc,
                            validate_mhs)
from hodgedef.io import load_augmented_diagram, read_json
from hodgedef.linalg import Subspace, inverse
from hodgedef.linfinity import dg_lie_algebra, fm_cone, validate_linf
from hodgedef.repvar import (GroupPresentation, MatrixRep, def_counts,
                             formal_model, ohat_truncate)

HERE = os.path.dirname(__file__)
DATA = os.path.join(HERE, "..", "demos", "data")
SRC = os.path.join(HERE, "..", "src", "hodgedef")


def note(msg):
    print("[acceptance] %s" % msg)


# -- tiny augmented pairs for the counting corpora ---------------------------

def tiny_pairs():
    """Valid augmented DG Lie pairs with dim L^1 = 1 and g = gl1, so that
    every F_p enumeration space stays under the cap at p = 101, 103."""
    out = []
    lie = lie_gl1()
    L = tensor_dg_lie(CDGA_LIBRARY["circle"](), lie)
    g, eps = evaluation_augmentation(L, lie)
    out.append(("circle_gl1", L, g, eps))

    sp = GradedSpace(QQ, {0: 1, 1: 1}, {0: ("h",), 1: ("e",)})
    borel = dg_lie_algebra(sp, None, {((0, 0), (1, 0)): [QQ.of(2)]})
    eps_b = GradedMap(sp, g.space, 0, {0: [[1]]})
    out.append(("borel_line", borel, g, eps_b))

    sp2 = GradedSpace(QQ, {0: 1, 1: 1}, {0: ("a",), 1: ("b",)})
    diff = dg_lie_algebra(sp2, {0: [[1]]}, None)
    eps_d = GradedMap(sp2, g.space, 0, {0: [[1]]})
    out.append(("differential_line", diff, g, eps_d))

    sp3 = GradedSpace(QQ, {0: 2, 1: 1}, {0: ("x", "y"), 1: ("z",)})
    heis = dg_lie_algebra(sp3, None, {((0, 0), (1, 0)): [QQ.one()]})
    eps_h = GradedMap(sp3, g.space, 0, {0: [[1, 0]]})
    out.append(("action_line", heis, g, eps_h))
    return out


# -- criterion 1 -------------------------------------------------------------

def test_criterion_1_fm_cone_well_defined():
    """>= 50 randomized augmented DG Lie algebras: Q^2 = 0 at s = 4 on the
    cone; single structure-constant mutations are detected.

    A handful of mutation directions are absorbable: the mutated table is
    itself another valid L-infinity structure (e.g. an l_1 shift realizing
    the cone of a different valid pair).  Those are not detection failures;
    each one is cross-verified (still flat at bar bound s+1, and confirmed
    by the independent DG Lie axiom oracle whenever the mutated table has
    no higher brackets) and their global rate must stay under 5%.
    """
    sys.path.insert(0, HERE)
    from test_linfinity import direct_dg_lie_axioms
    from hodgedef.linfinity import LInfinityAlgebra
    rng = random.Random(20260810)
    cones = 0
    detected = 0
    absorbable = 0
    per_cone_detected = []
    while cones < 50 or detected < 50:
        L, g, eps, name = random_augmented_pair(rng, max_dim=4)
        C = fm_cone(L, g, eps, arity_bound=4)
        v = validate_linf(C, 4)
        assert v.ok, "cone of %s fails Q^2 = 0: %r" % (name, v)
        cones += 1
        if 2 not in C.brackets:
            # (nearly) abelian cone: most tables are valid structures, so
            # mutations carry no information; it still counts for the
            # validation half above
            per_cone_detected.append(0)
            continue
        # mutate the differential and the naive bracket: the identities they
        # enter are all visible at word length <= 4 (mutations of l_4 would
        # need s = 5 to meet their pairing identities)
        entries = [(r, mono, slot)
                   for r in sorted(C.brackets) if r <= 2
                   for mono in sorted(C.brackets[r])
                   for slot in range(len(C.brackets[r][mono]))]
        rng.shuffle(entries)
        hits = 0
        deep = 0
        for (r, mono, slot) in entries[:20]:
            mutated = {a: dict(t) for a, t in C.brackets.items()}
            vec = list(mutated[r][mono])
            vec[slot] = vec[slot] + QQ.one()
            mutated[r][mono] = vec
            C_bad = LInfinityAlgebra(C.space, mutated)
            if not validate_linf(C_bad, 4).ok:
                detected += 1
                hits += 1
                continue
            if not validate_linf(C_bad, 5).ok:
                # the breakage only meets l_4 at word length 5
                detected += 1
                deep += 1
                hits += 1
                continue
            # genuinely valid neighbour: confirm with the independent oracle
            absorbable += 1
            if C_bad.max_arity() <= 2:
                assert direct_dg_lie_axioms(C_bad), \
                    "independent oracle rejects an undetected mutation of %s" % name
        per_cone_detected.append(hits)
        assert hits > 0 or absorbable, name
    total = detected + absorbable
    assert detected >= 50
    assert absorbable <= total * 5 // 100, (detected, absorbable)
    note("criterion 1 PASS: 50 cones flat at s = 4; %d/%d mutations detected, "
         "%d cross-verified absorbable" % (detected, total, absorbable))


# -- criterion 2 -------------------------------------------------------------

def test_criterion_2_functor_coincidence():
    """functor_points(augmented) = functor_points(cone) for every corpus
    triple with A in {k[t]/t^2, k[t]/t^3, k[x,y]/(x,y)^2} over p in {101, 103}."""
    arts = [("t2", CANONICAL_ARTIN["t2"]()), ("t3", CANONICAL_ARTIN["t3"]()),
            ("xy2", CANONICAL_ARTIN["xy2"]())]
    rows = 0
    for name, L, g, eps in tiny_pairs():
        for aname, A in arts:
            for p in (101, 103):
                a = functor_points("augmented", L, A, p, eps=eps, g=g)
                c = functor_points("cone", L, A, p, eps=eps, g=g)
                assert a.orbit_count == c.orbit_count, \
                    (name, aname, p, a.orbit_count, c.orbit_count)
                rows += 1
    note("criterion 2 PASS: augmented = cone on %d triples" % rows)


# -- criterion 3 -------------------------------------------------------------

def test_criterion_3_prorepresentability():
    """prorep_vs_points true on the corpus with N(A) <= 4, and
    dim m/m^2 = dim H^1(C) exactly."""
    arts_small_p = [("t4", CANONICAL_ARTIN["t4"](), 11),
                    ("mixed", CANONICAL_ARTIN["mixed"](), 13)]
    arts_big_p = [("t2", CANONICAL_ARTIN["t2"](), 101),
                  ("t3", CANONICAL_ARTIN["t3"](), 101),
                  ("xy2", CANONICAL_ARTIN["xy2"](), 103)]
    rows = 0
    for name, L, g, eps in tiny_pairs():
        C = fm_cone(L, g, eps, arity_bound=5)
        tower = prorep(C, 4, 4)
        # cotangent dimension against H^1(C) through the complex
        from hodgedef.graded import FilteredComplex, cohomology
        cx = FilteredComplex(C.space, C.differential(), {}, check=False)
        assert tower.cotangent_dim() == cohomology(cx, 1).dim, name
        for aname, A, p in arts_small_p + arts_big_p:
            rep = prorep_vs_points(tower, L, eps, g, A, p, kind="cone")
            assert rep["equal"], (name, aname, p, rep)
            rep2 = prorep_vs_points(tower, L, eps, g, A, p, kind="augmented")
            assert rep2["equal"], (name, aname, p, rep2)
            rows += 2
    note("criterion 3 PASS: Hom(R_n, A) counts match functor points "
         "on %d corpus rows" % rows)


# -- criterion 4 -------------------------------------------------------------

def _free_style_diagram(L, g, eps, acyclic_width=0, acyclic_flavor=0):
    """Augmented diagram with the weight-2 convention on degree 1; an
    optional acyclic summand sits in weight 0."""
    if acyclic_width:
        A = acyclic_summand(acyclic_width)
        Lsum = direct_sum_dg_lie(L, A)[3]
        proj_blocks = {}
        for n in L.space.degrees():
            rows = [[QQ.zero()] * Lsum.space.dim(n) for _ in range(L.space.dim(n))]
            for i in range(L.space.dim(n)):
                rows[i][i] = QQ.one()
            proj_blocks[n] = rows
        proj = GradedMap(Lsum.space, L.space, 0, proj_blocks)
        eps_full = eps.compose(proj)
        Lfull = Lsum
    else:
        proj = GradedMap.identity_map(L.space)
        eps_full = eps
        Lfull = L
    sp = Lfull.space
    d0a = L.space.dim(0)
    d1a = L.space.dim(1)
    w = Filtration(sp, +1, {
        -1: {n: Subspace.zero(QQ, sp.dim(n)) for n in sp.degrees()},
        0: {0: Subspace.full(QQ, sp.dim(0)),
            1: Subspace(QQ, sp.dim(1),
                        [[QQ.one() if t == d1a + j else QQ.zero()
                          for t in range(sp.dim(1))]
                         for j in range(sp.dim(1) - d1a)])},
        1: {n: Subspace.full(QQ, sp.dim(n)) for n in sp.degrees()},
    })
    sp_ext = GradedSpace(QQ_I, dict(sp.dims), dict(sp.labels))
    f = Filtration(sp_ext, -1, {
        0: {n: Subspace.full(QQ_I, sp_ext.dim(n)) for n in sp_ext.degrees()},
        1: {0: Subspace.zero(QQ_I, sp_ext.dim(0)),
            1: Subspace(QQ_I, sp_ext.dim(1),
                        [[QQ_I.one() if t == j else QQ_I.zero()
                          for t in range(sp_ext.dim(1))]
                         for j in range(d1a)])},
        2: {n: Subspace.zero(QQ_I, sp_ext.dim(n)) for n in sp_ext.degrees()},
    })
    return AugmentedDiagram.from_pair(Lfull, g, eps_full, w_filt=w, f_filt=f), proj


def test_criterion_4_quasi_isomorphism_invariance():
    """10 homotopy-split pairs (L + acyclic vs L): equal Hilbert functions
    for n <= 4 and qis_transport an isomorphism on H^0(C_4)."""
    pairs = tiny_pairs()
    cases = 0
    trial = 0
    rng = random.Random(44)
    while cases < 10:
        name, L, g, eps = pairs[trial % len(pairs)]
        width = 1 + (trial % 2)
        trial += 1
        big, proj = _free_style_diagram(L, g, eps, acyclic_width=width)
        small, _ = _free_style_diagram(L, g, eps, acyclic_width=0)
        cd_big = cone_mhd(big, arity_bound=5)
        cd_small = cone_mhd(small, arity_bound=5)
        t_big = prorep(cd_big.base_cone(), 4, 4)
        t_small = prorep(cd_small.base_cone(), 4, 4)
        assert t_big.hilbert == t_small.hilbert, (name, width)
        maps = []
        for i in range(cd_big.n_components()):
            phi_l = proj if i == 0 else _ext_map(proj)
            maps.append(cone_map_from_l_map(cd_big.cones[i], cd_small.cones[i],
                                            phi_l))
        verdicts, h0 = qis_transport(maps, cd_big, cd_small, 4)
        assert all(v.ok for v in verdicts), (name, width, verdicts)
        assert inverse(QQ, h0) is not None, "H^0(C_4) map is not an isomorphism"
        cases += 1
    note("criterion 4 PASS: 10 homotopy-split pairs, Hilbert equal, "
         "H^0(C_4) transported isomorphically")


def _ext_map(gmap):
    from hodgedef.diagrams import map_over_ext
    return map_over_ext(gmap)


# -- criterion 5 -------------------------------------------------------------

def test_criterion_5_goldman_millson_match():
    """Pipeline Hilbert = oracle Hilbert for n <= 4 on (Z, GL1), (F2, GL1),
    (Z^2, GL1), (Z^2, GL2); point counts at p = 101 agree exactly."""
    cases = [
        ("Z_gl1", GroupPresentation.Z(), 1, ("free", 1), (1, 1, 1, 1, 1)),
        ("F2_gl1", GroupPresentation.free(2), 1, ("free", 2), (1, 2, 3, 4, 5)),
        ("Z2_gl1", GroupPresentation.Z2(), 1, ("torus", 1), (1, 2, 3, 4, 5)),
        ("Z2_gl2", GroupPresentation.Z2(), 2, ("torus", 1), None),
    ]
    for name, pres, n, (kind, param), expected in cases:
        rep = MatrixRep.trivial(pres, "GL", n)
        ring = ohat_truncate(pres, rep, 4)
        diagram = formal_model(kind, param, lie_name="gl%d" % n)
        cd = cone_mhd(diagram, arity_bound=5)
        tower = prorep(cd.base_cone(), 4, 4)
        assert tower.hilbert == ring.hilbert, (name, tower.hilbert, ring.hilbert)
        if expected is not None:
            assert tower.hilbert == expected, name
        # point counts over p = 101
        arts = [artin_truncated_polynomial(2)]
        if n == 1:
            arts.append(artin_truncated_polynomial(3))
        for A in arts:
            oracle = def_counts(pres, rep, A, 101)
            homs = count_local_homs(tower, A, 101)
            assert oracle["lifts"] == homs, (name, A.name)
        note("criterion 5: %s Hilbert %r matches the oracle; p=101 counts equal"
             % (name, tower.hilbert))
    note("criterion 5 PASS")


# -- criterion 6 -------------------------------------------------------------

def test_criterion_6_mhc_machinery():
    """Compact-template fixtures accepted; all 6 shipped mutations rejected;
    Deligne splitting on >= 20 MHS fixtures including non-split ones."""
    for fname in ("torus_gl1.json", "free2_gl1.json", "mutation_base.json"):
        d = load_augmented_diagram(read_json(os.path.join(DATA, fname)))
        d.validate()
        assert validate_mhc(d.complex_diagram()).ok, fname
    mutations = sorted(glob.glob(os.path.join(DATA, "mutations", "*.json")))
    assert len(mutations) == 6
    axioms_seen = []
    for path in mutations:
        d = load_augmented_diagram(read_json(path))
        v = validate_mhc(d.complex_diagram())
        assert not v.ok, path
        axioms_seen.append(v.axiom)
    assert set(axioms_seen) == {"comparisons", 1, 2, 3}
    # Deligne splitting corpus
    sys.path.insert(0, HERE)
    from test_hodge import random_mhs, mhs_nonsplit
    rng = random.Random(606)
    count = 0
    for _ in range(19):
        m = random_mhs(rng)
        assert validate_mhs(m).ok
        pieces = deligne_splitting(m)
        assert {pq: s.dim for pq, s in pieces.items()} == hodge_numbers(m)
        count += 1
    m = mhs_nonsplit()
    pieces = deligne_splitting(m)
    assert pieces[(1, 1)] == Subspace(QQ_I, 2, [[QQ_I.i(), QQ_I.one()]])
    count += 1
    note("criterion 6 PASS: fixtures accepted, 6 mutations rejected "
         "(axioms %r), %d splittings verified" % (sorted(set(map(str, axioms_seen))), count))


# -- criterion 7 -------------------------------------------------------------

def test_criterion_7_bar_hodge_pages():
    """bar_mhd passes validate_mhc and the E_0/E_1 tables equal the
    (+)_{r<=s} wedge-power decompositions entrywise, s <= 3."""
    diagram = formal_model("torus", 1, lie_name="gl1")
    cd = cone_mhd(diagram, arity_bound=4)
    for s in (1, 2, 3):
        bd = bar_mhd(cd, s, check_pages=False)
        assert validate_mhc(bd.mhd()).ok
        for component in (0, cd.n_components() - 1):
            repi = bar_page_identities(bd, component=component)
            assert repi["ok"], (s, component, repi)
    note("criterion 7 PASS: bar diagrams are mixed Hodge complexes and the "
         "E_0/E_1 identities hold entrywise for s <= 3")


# -- criterion 8 -------------------------------------------------------------

def test_criterion_8_weight_structure():
    """All weights on m_{R_n} <= 0; Gr^W_0(R_n) is the orbit ring
    (= k for the trivial-rho abelian cases)."""
    cases = [("torus_gl1", formal_model("torus", 1, lie_name="gl1"), True),
             ("free2_gl1", formal_model("free", 2, lie_name="gl1"), True)]
    # a non-surjective augmentation: gl1 inside abelian2
    lie = lie_gl1()
    L = tensor_dg_lie(CDGA_LIBRARY["circle"](), lie)
    _, eps1 = evaluation_augmentation(L, lie)
    from hodgedef.corpus import lie_abelian, lie_to_dg
    g2 = lie_to_dg(lie_abelian(2))
    eps2 = GradedMap(L.space, g2.space, 0, {0: [[1], [0]]})
    partial, _ = _free_style_diagram(L, g2, eps2)
    cases.append(("partial_orbit", partial, False))
    for name, diagram, orbit_trivial in cases:
        cd = cone_mhd(diagram, arity_bound=5)
        tower = mhs_on_ring(cd, 3, 3)
        gr0 = []
        for mhs in tower.mhs_levels:
            ws = mhs.weights_with_dims()
            assert all(k <= 0 for k in ws), (name, ws)
            gr0.append(ws.get(0, 0))
        orb = orbit_weight_zero(cd, 3, 3)
        assert orb["d_to_e_qis"], name
        assert orb["e_power_series"], name
        assert orb["h0_map_injective"], name
        m_dims = []
        acc = 0
        for h in orb["orbit_hilbert"][1:]:
            acc += h
            m_dims.append(acc)
        assert gr0 == m_dims[:len(gr0)], (name, gr0, m_dims)
        if orbit_trivial:
            assert all(x == 0 for x in gr0), name
        else:
            assert gr0 == [1, 2, 3], name
        note("criterion 8: %s Gr^W_0(m_R) dims %r match the orbit ring" % (name, gr0))
    note("criterion 8 PASS")


# -- criterion 9 -------------------------------------------------------------

def test_criterion_9_determinism_and_exactness():
    """Byte-identical reports across reruns; no floating point anywhere."""
    path = os.path.join(DATA, "free2_gl1.json")
    env = dict(os.environ)
    outs = []
    for _ in range(2):
        r = subprocess.run([sys.executable, "-m", "hodgedef.cli", "pipeline",
                            path, "--bar", "3", "--order", "3"],
                           capture_output=True, text=True, env=env)
        assert r.returncode == 0, r.stderr
        outs.append(r.stdout)
    assert outs[0] == outs[1]
    # static audit: no float literals, float() calls or numpy in the package
    offenders = []
    for src in sorted(glob.glob(os.path.join(SRC, "*.py"))):
        with open(src, "r", encoding="utf-8") as fh:
            text = fh.read()
        if "numpy" in text or "float(" in text:
            offenders.append((src, "float()/numpy"))
        for tok in tokenize.generate_tokens(_io.StringIO(text).readline):
            if tok.type == tokenize.NUMBER and \
                    ("." in tok.string or "e" in tok.string.lower()) and \
                    not tok.string.lower().startswith("0x"):
                offenders.append((src, tok.string))
    assert not offenders, offenders
    # runtime assertion: the scalar tower rejects floats
    with pytest.raises(TypeError):
        QQ.of(0.25)
    note("criterion 9 PASS: byte-identical reruns, float-free source, "
         "runtime float rejection")
