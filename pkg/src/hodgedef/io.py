"""File formats: versioned JSON schemas for diagrams, Hodge structures,
presentations and representations, plus deterministic report rendering.

Exactness survives serialization: rationals are strings "a/b", extension
scalars are pairs ["a/b", "c/d"], matrices are row-major lists.
"""

import json
from fractions import Fraction

from .scalars import QQ, QQ_I, Gauss
from .graded import Filtration, GradedMap, GradedSpace
from .hodge import MixedHodgeStructure, PureHodgeStructure
from .linalg import Subspace
from .linfinity import LInfinityAlgebra
from .powers import WEDGE, normalize

SCHEMA_VERSION = "1"


def scalar_to_json(x):
    if isinstance(x, Gauss):
        return [str(x.re), str(x.im)]
    return str(x)


def scalar_from_json(field, v):
    if isinstance(v, (list, tuple)):
        if field is not QQ_I:
            raise ValueError("extension scalar in a rational slot: %r" % (v,))
        return QQ_I.of((Fraction(v[0]), Fraction(v[1])))
    if isinstance(v, str):
        return field.of(Fraction(v))
    if isinstance(v, int):
        return field.of(v)
    raise ValueError("bad scalar %r" % (v,))


def matrix_to_json(m):
    return [[scalar_to_json(x) for x in row] for row in m]


def matrix_from_json(field, m):
    return [[scalar_from_json(field, x) for x in row] for row in m]


def _span_from_json(field, dim, data):
    """A subspace given either by basis indices or explicit vectors."""
    rows = []
    for item in data:
        if isinstance(item, int):
            v = [field.zero()] * dim
            v[item] = field.one()
            rows.append(v)
        else:
            rows.append([scalar_from_json(field, x) for x in item])
    return Subspace(field, dim, rows)


def _span_to_json(sub):
    return [[scalar_to_json(x) for x in row] for row in sub.rows]


def filtration_to_json(filt):
    out = {"direction": "W" if filt.direction > 0 else "F", "levels": {}}
    for k, per in sorted(filt.levels.items()):
        out["levels"][str(k)] = {str(n): _span_to_json(sub)
                                 for n, sub in sorted(per.items())}
    return out


def filtration_from_json(space, data):
    direction = +1 if data["direction"] == "W" else -1
    levels = {}
    for k, per in data["levels"].items():
        levels[int(k)] = {int(n): _span_from_json(space.field, space.dim(int(n)), rows)
                          for n, rows in per.items()}
    return Filtration(space, direction, levels)


def algebra_to_json(algebra):
    sp = algebra.space
    out = {
        "degrees": {str(n): {"dim": sp.dim(n), "basis": list(sp.labels[n])}
                    for n in sp.degrees()},
        "differential": {},
        "brackets": [],
    }
    d = algebra.differential()
    for n, block in sorted(d.blocks.items()):
        out["differential"][str(n)] = matrix_to_json(block)
    for mono, vec in sorted(algebra.brackets.get(2, {}).items()):
        (n1, i1), (n2, i2) = mono
        out["brackets"].append([n1, i1, n2, i2,
                                [scalar_to_json(x) for x in vec]])
    return out


def algebra_from_json(field, data):
    dims = {}
    labels = {}
    for n, spec in data["degrees"].items():
        n = int(n)
        dims[n] = spec["dim"]
        if "basis" in spec:
            labels[n] = tuple(spec["basis"])
    space = GradedSpace(field, dims, labels if labels else None)
    brackets = {}
    table1 = {}
    for n, block in data.get("differential", {}).items():
        n = int(n)
        m = matrix_from_json(field, block)
        for i in range(space.dim(n)):
            col = [m[r][i] for r in range(space.dim(n + 1))]
            if any(col):
                table1[((n, i),)] = col
    if table1:
        brackets[1] = table1
    table2 = {}
    for n1, i1, n2, i2, vec in data.get("brackets", []):
        mono = ((n1, i1), (n2, i2))
        nf = normalize(WEDGE, mono, field)
        if nf is None or nf[1] != mono:
            raise ValueError("bracket monomial %r is not canonical" % (mono,))
        table2[mono] = [scalar_from_json(field, x) for x in vec]
    if table2:
        brackets[2] = table2
    return LInfinityAlgebra(space, brackets)


def dump_augmented_diagram(diagram):
    comps = []
    for i, alg in enumerate(diagram.algebras):
        entry = algebra_to_json(alg)
        entry["field"] = "rational" if i == 0 else "extension"
        entry["W"] = filtration_to_json(diagram.w_filts[i])
        if i == len(diagram.algebras) - 1:
            entry["F"] = filtration_to_json(diagram.f_filt)
        comps.append(entry)
    comparisons = []
    for (i, j, f) in diagram.comparisons:
        comparisons.append({"from": i, "to": j,
                            "blocks": {str(n): matrix_to_json(b)
                                       for n, b in sorted(f.blocks.items())}})
    g_entry = algebra_to_json(diagram.g)
    g_entry["bigrading"] = {"%d,%d" % pq: _span_to_json(sub)
                            for pq, sub in sorted(diagram.g_hodge.pieces.items())}
    augs = []
    for i, eps in enumerate(diagram.augmentations):
        augs.append({"component": i,
                     "blocks": {str(n): matrix_to_json(b)
                                for n, b in sorted(eps.blocks.items())}})
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "augmented-diagram",
        "field": {"kind": "rational"},
        "components": comps,
        "comparisons": comparisons,
        "g": g_entry,
        "augmentations": augs,
    }


def load_augmented_diagram(data, validate=False):
    from .diagrams import AugmentedDiagram
    if data.get("schema_version") != SCHEMA_VERSION:
        raise ValueError("unsupported schema_version %r" % data.get("schema_version"))
    if data.get("kind") != "augmented-diagram":
        raise ValueError("not an augmented-diagram file")
    comps = data["components"]
    if not comps:
        raise ValueError("empty diagram")
    algebras = []
    w_filts = []
    f_filt = None
    for i, entry in enumerate(comps):
        field = QQ if i == 0 else QQ_I
        alg = algebra_from_json(field, entry)
        algebras.append(alg)
        w_filts.append(filtration_from_json(alg.space, entry["W"]))
        if i == len(comps) - 1:
            if "F" not in entry:
                raise ValueError("final component must carry F")
            f_filt = filtration_from_json(alg.space, entry["F"])
    comparisons = []
    for c in data.get("comparisons", []):
        i, j = c["from"], c["to"]
        src = algebras[i].space if i > 0 else GradedSpace(
            QQ_I, dict(algebras[0].space.dims), dict(algebras[0].space.labels))
        tgt = algebras[j].space
        blocks = {int(n): matrix_from_json(QQ_I, b) for n, b in c["blocks"].items()}
        comparisons.append((i, j, GradedMap(src, tgt, 0, blocks)))
    g_alg = algebra_from_json(QQ, data["g"])
    gdim = g_alg.space.dim(0)
    pieces = {}
    for key, rows in data["g"].get("bigrading", {}).items():
        p, q = key.split(",")
        pieces[(int(p), int(q))] = _span_from_json(QQ_I, gdim, rows)
    if not pieces:
        pieces[(0, 0)] = Subspace.full(QQ_I, gdim)
    g_hodge = PureHodgeStructure(gdim, 0, pieces)
    augmentations = [None] * len(algebras)
    for a in data["augmentations"]:
        i = a["component"]
        field = QQ if i == 0 else QQ_I
        gspace = g_alg.space if i == 0 else GradedSpace(
            QQ_I, dict(g_alg.space.dims), dict(g_alg.space.labels))
        blocks = {int(n): matrix_from_json(field, b) for n, b in a["blocks"].items()}
        augmentations[i] = GradedMap(algebras[i].space, gspace, 0, blocks)
    if any(a is None for a in augmentations):
        raise ValueError("every component needs an augmentation")
    return AugmentedDiagram(algebras, w_filts, f_filt, comparisons, g_alg,
                            g_hodge, augmentations, validate=validate)


def dump_mhs(m):
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "mhs",
        "dim": m.dim,
        "W": {str(k): _span_to_json(sub) for k, sub in sorted(m.W.items())},
        "F": {str(p): _span_to_json(sub) for p, sub in sorted(m.F.items())},
    }


def load_mhs(data):
    if data.get("schema_version") != SCHEMA_VERSION:
        raise ValueError("unsupported schema_version %r" % data.get("schema_version"))
    if data.get("kind") != "mhs":
        raise ValueError("not an mhs file")
    dim = data["dim"]
    w = {int(k): _span_from_json(QQ, dim, rows) for k, rows in data["W"].items()}
    f = {int(p): _span_from_json(QQ_I, dim, rows) for p, rows in data["F"].items()}
    return MixedHodgeStructure(dim, w, f)


def load_presentation(data):
    from .repvar import GroupPresentation
    if "generators" not in data or "relators" not in data:
        raise ValueError("a presentation file needs generators and relators")
    return GroupPresentation(data["generators"], data["relators"])


def load_representation(data, presentation):
    from .repvar import MatrixRep
    group = data.get("group", "GL")
    n = data["n"]
    if "images" in data:
        images = [matrix_from_json(QQ, m) for m in data["images"]]
    else:
        images = [[[Fraction(1) if a == b else Fraction(0) for b in range(n)]
                   for a in range(n)]] * presentation.generators
    return MatrixRep(presentation, group, n, images)


def read_json(path):
    with open(path, "r", encoding="utf-8") as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError("invalid JSON in %s: %s" % (path, exc))


def render_report(report, fmt="json"):
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    lines = []
    _render_text(report, lines, 0)
    return "\n".join(lines) + "\n"


def _render_text(obj, lines, indent):
    pad = "  " * indent
    if isinstance(obj, dict):
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)):
                lines.append("%s%s:" % (pad, k))
                _render_text(v, lines, indent + 1)
            else:
                lines.append("%s%s: %s" % (pad, k, v))
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)):
                lines.append("%s-" % pad)
                _render_text(v, lines, indent + 1)
            else:
                lines.append("%s- %s" % (pad, v))
    else:
        lines.append("%s%s" % (pad, obj))
