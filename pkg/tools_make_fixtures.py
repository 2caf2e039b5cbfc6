"""Regenerate the shipped JSON fixtures in demos/data (templates, the
mutation corpus for the mixed-Hodge-complex axioms, and an MHS example).

Run from the repository root:  python3 tools_make_fixtures.py
"""

import copy
import json
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "src"))

from hodgedef.scalars import QQ, QQ_I
from hodgedef.corpus import (CDGA_LIBRARY, acyclic_summand, direct_sum_dg_lie,
                             evaluation_augmentation, lie_gl1, tensor_dg_lie)
from hodgedef.diagrams import AugmentedDiagram
from hodgedef.graded import Filtration, GradedMap, GradedSpace
from hodgedef.io import dump_augmented_diagram
from hodgedef.linalg import Subspace
from hodgedef.repvar import formal_model

DATA = os.path.join(os.path.dirname(__file__), "demos", "data")


def write(name, data):
    path = os.path.join(DATA, name)
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(data, fh, sort_keys=True, indent=1)
        fh.write("\n")
    print("wrote", path)


def mutation_base():
    """free2 template (x) gl1 plus an acyclic summand with d != 0, so that
    every mixed-Hodge-complex axiom has something to break."""
    lie = lie_gl1()
    L0 = tensor_dg_lie(CDGA_LIBRARY["circles2"](), lie)
    A = acyclic_summand()
    Lsum = direct_sum_dg_lie(L0, A)[3]
    g, _ = evaluation_augmentation(L0, lie)
    f = QQ
    blocks = {0: [[f.one(), f.zero()]]}   # evaluate the L0-unit leg, kill a
    eps = GradedMap(Lsum.space, g.space, 0, blocks)
    sp = Lsum.space
    # W: unit and the acyclic pair in weight 0, the circle classes in weight 1
    w = Filtration(sp, +1, {
        -1: {0: Subspace.zero(QQ, sp.dim(0)), 1: Subspace.zero(QQ, sp.dim(1))},
        0: {0: Subspace.full(QQ, sp.dim(0)),
            1: Subspace(QQ, sp.dim(1), [[0, 0, 1]])},
        1: {0: Subspace.full(QQ, sp.dim(0)), 1: Subspace.full(QQ, sp.dim(1))},
    })
    sp_ext = GradedSpace(QQ_I, dict(sp.dims), dict(sp.labels))
    ff = Filtration(sp_ext, -1, {
        0: {0: Subspace.full(QQ_I, sp_ext.dim(0)),
            1: Subspace.full(QQ_I, sp_ext.dim(1))},
        1: {0: Subspace.zero(QQ_I, sp_ext.dim(0)),
            1: Subspace(QQ_I, sp_ext.dim(1), [[1, 0, 0], [0, 1, 0]])},
        2: {0: Subspace.zero(QQ_I, sp_ext.dim(0)),
            1: Subspace.zero(QQ_I, sp_ext.dim(1))},
    })
    return AugmentedDiagram.from_pair(Lsum, g, eps, w_filt=w, f_filt=ff)


def main():
    for name, t, param, lie in [("torus_gl1", "torus", 1, "gl1"),
                                ("free2_gl1", "free", 2, "gl1"),
                                ("torus_gl2", "torus", 1, "gl2")]:
        write(name + ".json", dump_augmented_diagram(
            formal_model(t, param, lie_name=lie)))
    write("presentation_z.json", {"generators": 1, "relators": []})
    write("presentation_f2.json", {"generators": 2, "relators": []})
    write("presentation_z2.json", {"generators": 2, "relators": [[1, 2, -1, -2]]})
    write("rep_gl1_trivial.json", {"schema_version": "1", "group": "GL", "n": 1})
    write("rep_gl2_trivial.json", {"schema_version": "1", "group": "GL", "n": 2})
    write("mhs_nonsplit.json", {
        "schema_version": "1", "kind": "mhs", "dim": 2,
        "W": {"-1": [], "0": [["1", "0"]], "2": [["1", "0"], ["0", "1"]]},
        "F": {"0": [[["1", "0"], ["0", "0"]], [["0", "0"], ["1", "0"]]],
              "1": [[["0", "1"], ["1", "0"]]],
              "2": []},
    })
    base = mutation_base()
    data = dump_augmented_diagram(base)
    write("mutation_base.json", data)

    # 1. comparison fails as a filtered quasi-isomorphism (map data):
    m = copy.deepcopy(data)
    m["comparisons"][0]["blocks"]["1"] = [["0", "0", "0"]] * 3
    write("mutations/comparison_not_qis.json", m)

    # 2. comparison breaks W-preservation (weight data over k0 vs ext):
    m = copy.deepcopy(data)
    m["components"][1]["W"]["levels"]["0"]["1"] = [0, 1, 2]
    write("mutations/comparison_weight_mismatch.json", m)

    # 3. strictness of d against F fails on Gr^W_0 (axiom 2, F side):
    m = copy.deepcopy(data)
    m["components"][1]["F"]["levels"]["1"]["1"] = [0, 1, 2]
    write("mutations/strictness_gr0.json", m)

    # 4. W stops being exhaustive (axiom-1 family: biregularity, k0 data):
    m = copy.deepcopy(data)
    m["components"][0]["W"]["levels"]["1"]["1"] = [0, 2]
    m["components"][1]["W"]["levels"]["1"]["1"] = [0, 2]
    write("mutations/weight_not_exhaustive.json", m)

    # 5. purity broken by a W-shift (axiom 3, weight data over k0):
    m = copy.deepcopy(data)
    m["components"][0]["W"]["levels"]["0"]["1"] = [0, 1, 2]
    m["components"][1]["W"]["levels"]["0"]["1"] = [0, 1, 2]
    write("mutations/purity_weight_shift.json", m)

    # 6. purity broken by skewing F (axiom 3, Hodge data over the extension):
    m = copy.deepcopy(data)
    m["components"][1]["F"]["levels"]["1"]["1"] = []
    write("mutations/purity_hodge_skew.json", m)


if __name__ == "__main__":
    main()
