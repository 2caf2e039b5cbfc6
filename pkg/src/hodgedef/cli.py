"""The hodgedef command line driver.

Exit codes: 0 = every mathematical verdict passed, 1 = a verdict failed,
2 = input error.  Reports are deterministic: identical inputs produce
byte-identical output.
"""

import argparse
import sys

from .scalars import QQ, QQ_I
from .diagrams import (bar_mhd, bar_page_identities, cone_mhd)
from .graded import cohomology
from .hodge import (deligne_splitting, hodge_numbers, mhc_cohomology,
                    validate_mhc, validate_mhs)
from .io import (dump_mhs, load_augmented_diagram, load_mhs,
                 load_presentation, load_representation, read_json,
                 render_report, scalar_to_json)
from .linfinity import validate_linf


def _hodge_table(m):
    return {"%d,%d" % pq: d for pq, d in sorted(hodge_numbers(m).items())}


def _weight_table(m):
    return {str(k): d for k, d in sorted(m.weights_with_dims().items())}


def cmd_validate(args):
    data = read_json(args.path)
    report = {"schema_version": "1", "command": "validate", "what": args.what,
              "input": args.path, "verdicts": {}}
    ok = True
    if args.what == "mhs":
        m = load_mhs(data)
        v = validate_mhs(m)
        report["verdicts"]["mhs"] = bool(v.ok)
        if v.ok:
            try:
                pieces = deligne_splitting(m)
                report["splitting"] = {"%d,%d" % pq: s.dim
                                       for pq, s in sorted(pieces.items())}
                report["verdicts"]["deligne_splitting"] = True
            except ArithmeticError as exc:
                report["verdicts"]["deligne_splitting"] = False
                report["failure"] = str(exc)
        else:
            report["failure"] = v.detail
        ok = all(report["verdicts"].values())
    else:
        diagram = load_augmented_diagram(data)
        if sum(a.space.total_dim() for a in diagram.algebras) == 0:
            report["verdicts"]["vacuous"] = True
            report["warning"] = "empty diagram validates vacuously"
            _emit(report, args)
            return 0
        if args.what in ("dglie", "linf"):
            for i, alg in enumerate(diagram.algebras):
                v = validate_linf(alg, args.bar)
                report["verdicts"]["component_%d_q_squared" % i] = bool(v.ok)
                if not v.ok:
                    report["failure"] = "component %d: %s" % (i, v.detail)
            ok = all(report["verdicts"].values())
        elif args.what == "mhc":
            try:
                diagram.validate()
                report["verdicts"]["augmented_diagram"] = True
            except ValueError as exc:
                report["verdicts"]["augmented_diagram"] = False
                report["failure"] = str(exc)
            v = validate_mhc(diagram.complex_diagram())
            report["verdicts"]["mhc_axioms"] = bool(v.ok)
            if not v.ok:
                report["failure"] = "axiom %r at %r: %s" % (v.axiom, v.where, v.detail)
            ok = all(report["verdicts"].values())
        elif args.what == "mhd-linf":
            try:
                diagram.validate()
                cd = cone_mhd(diagram, arity_bound=max(4, args.bar + 1))
                report["verdicts"]["cone_mhd"] = True
                v = validate_linf(cd.base_cone(), args.bar)
                report["verdicts"]["cone_q_squared"] = bool(v.ok)
            except (ValueError, ArithmeticError) as exc:
                report["verdicts"]["cone_mhd"] = False
                report["failure"] = str(exc)
            ok = all(report["verdicts"].values())
        else:
            raise ValueError("unknown validation target %r" % args.what)
    _emit(report, args)
    return 0 if ok else 1


def cmd_pipeline(args):
    from .deformation import cotangent_sequence, mhs_on_ring, orbit_weight_zero
    data = read_json(args.path)
    diagram = load_augmented_diagram(data)
    if args.order > args.bar:
        raise ValueError("--order must not exceed --bar")
    report = {"schema_version": "1", "command": "pipeline", "input": args.path,
              "bar": args.bar, "order": args.order, "verdicts": {}}
    diagram.validate()
    cd = cone_mhd(diagram, arity_bound=max(4, args.bar + 1))
    report["verdicts"]["cone_mhd"] = True
    bd = bar_mhd(cd, args.bar, check_pages=args.check_pages)
    report["verdicts"]["bar_mhd"] = True
    tower = mhs_on_ring(cd, args.bar, args.order, bar_diagram=bd)
    report["hilbert"] = list(tower.hilbert)
    report["graded_pieces"] = []
    for mth, mhs in enumerate(tower.mhs_levels, start=1):
        v = validate_mhs(mhs)
        report["verdicts"]["mhs_R_%d" % mth] = bool(v.ok)
        report["graded_pieces"].append({
            "level": mth,
            "weights": _weight_table(mhs),
            "hodge": _hodge_table(mhs),
        })
    max_weight = max((k for mhs in tower.mhs_levels
                      for k in mhs.weights_with_dims()), default=0)
    report["verdicts"]["weights_nonpositive"] = max_weight <= 0
    cot = cotangent_sequence(cd)
    report["verdicts"]["cotangent_exact"] = bool(cot["exact"])
    report["verdicts"]["cotangent_strict"] = bool(cot["strict"])
    report["cotangent"] = {
        "dim": cot["h1_cone"].dim,
        "weights": _weight_table(cot["h1_cone"]),
        "hodge": _hodge_table(cot["h1_cone"]),
        "g_quotient_dim": cot["g_quotient"].dim,
        "h1_l_dim": cot["h1_l"].dim,
    }
    orb = orbit_weight_zero(cd, args.bar, args.order)
    report["verdicts"]["orbit_d_to_e_qis"] = bool(orb["d_to_e_qis"])
    report["verdicts"]["orbit_ring_power_series"] = bool(orb["e_power_series"])
    report["verdicts"]["orbit_map_injective"] = bool(orb["h0_map_injective"])
    report["orbit"] = {"hilbert": list(orb["orbit_hilbert"]),
                       "gbar_dim": orb["gbar_dim"]}
    gr0 = [mhs.weights_with_dims().get(0, 0) for mhs in tower.mhs_levels]
    report["verdicts"]["weight_zero_is_orbit_ring"] = \
        _cumulative_match(gr0, orb["orbit_hilbert"])
    report["gr_w0_dims"] = gr0
    ok = all(report["verdicts"].values())
    _emit(report, args)
    return 0 if ok else 1


def _cumulative_match(gr0_dims, orbit_hilbert):
    """Gr^W_0 of m_{R_m} against the orbit ring's maximal ideal, levelwise."""
    m_dims = []
    acc = 0
    for h in orbit_hilbert[1:]:
        acc += h
        m_dims.append(acc)
    return gr0_dims == m_dims[:len(gr0_dims)]


def cmd_crosscheck(args):
    from .deformation import count_local_homs, prorep
    from .repvar import def_counts, formal_model, ohat_truncate
    pres = load_presentation(read_json(args.presentation))
    rep = load_representation(read_json(args.rep), pres)
    report = {"schema_version": "1", "command": "crosscheck",
              "presentation": args.presentation, "rep": args.rep,
              "order": args.order, "primes": list(args.primes), "verdicts": {}}
    template = _recognize_template(pres)
    if template is None:
        raise ValueError("unsupported presentation template: need a free group "
                         "or Z^2")
    if rep.group != "GL":
        raise ValueError("crosscheck templates support GL targets only")
    if any(not _is_eye(m) for m in rep.images):
        raise ValueError("crosscheck templates need the trivial representation")
    kind, param = template
    diagram = formal_model(kind, param, lie_name="gl%d" % rep.n)
    cd = cone_mhd(diagram, arity_bound=max(4, args.order + 1))
    tower = prorep(cd.base_cone(), args.order, args.order)
    ring = ohat_truncate(pres, rep, args.order)
    report["pipeline_hilbert"] = list(tower.hilbert)
    report["oracle_hilbert"] = list(ring.hilbert)
    report["verdicts"]["hilbert_match"] = tower.hilbert == ring.hilbert
    counts = []
    from .artin import artin_truncated_polynomial
    arts = [("t2", artin_truncated_polynomial(2))]
    if rep.n == 1:
        arts.append(("t3", artin_truncated_polynomial(3)))
    for p in args.primes:
        for name, A in arts:
            if A.nilpotency_index() - 1 > args.order:
                continue
            oracle = def_counts(pres, rep, A, p)
            homs = count_local_homs(tower, A, p)
            counts.append({"prime": p, "artin": name,
                           "oracle_lifts": oracle["lifts"],
                           "pipeline_homs": homs,
                           "equal": oracle["lifts"] == homs})
    report["point_counts"] = counts
    report["verdicts"]["point_counts_match"] = all(c["equal"] for c in counts)
    ok = all(report["verdicts"].values())
    _emit(report, args)
    return 0 if ok else 1


def _recognize_template(pres):
    if not pres.relators or all(not w for w in pres.relators):
        return ("free", pres.generators)
    if pres.generators == 2 and pres.relators == [[1, 2, -1, -2]]:
        return ("torus", 1)
    return None


def _is_eye(m):
    for i, row in enumerate(m):
        for j, x in enumerate(row):
            if x != (1 if i == j else 0):
                return False
    return True


def cmd_splitting(args):
    m = load_mhs(read_json(args.path))
    report = {"schema_version": "1", "command": "splitting", "input": args.path,
              "verdicts": {}}
    v = validate_mhs(m)
    report["verdicts"]["mhs"] = bool(v.ok)
    if v.ok:
        pieces = deligne_splitting(m)
        report["splitting"] = {"%d,%d" % pq: sub.dim
                               for pq, sub in sorted(pieces.items())}
        report["weights"] = _weight_table(m)
        report["verdicts"]["direct_sum"] = True
    else:
        report["failure"] = v.detail
    ok = all(report["verdicts"].values())
    _emit(report, args)
    return 0 if ok else 1


def cmd_bar(args):
    from .linfinity import bar_construct
    data = read_json(args.path)
    diagram = load_augmented_diagram(data)
    diagram.validate()
    cd = cone_mhd(diagram, arity_bound=max(4, args.bar + 1))
    bd = bar_mhd(cd, args.bar, check_pages=False)
    report = {"schema_version": "1", "command": "bar", "input": args.path,
              "bar": args.bar, "verdicts": {}}
    pages = bar_page_identities(bd, component=0)
    report["verdicts"]["e0_e1_decomposition"] = bool(pages["ok"])
    report["e0"] = {"%d,%d" % k: v for k, v in sorted(pages["e0"].items())}
    report["e1"] = {"%d,%d" % k: v for k, v in sorted(pages["e1"].items())}
    v = validate_mhc(bd.mhd())
    report["verdicts"]["bar_mhc"] = bool(v.ok)
    bar = bd.bars[0]
    report["dimensions"] = {str(n): bar.dim(n) for n in bar.degrees()}
    h0 = mhc_cohomology(bd.mhd(), 0)
    report["h0"] = {"dim": h0.dim, "weights": _weight_table(h0),
                    "hodge": _hodge_table(h0)}
    ok = all(report["verdicts"].values())
    _emit(report, args)
    return 0 if ok else 1


def cmd_cone(args):
    data = read_json(args.path)
    diagram = load_augmented_diagram(data)
    report = {"schema_version": "1", "command": "cone", "input": args.path,
              "verdicts": {}}
    diagram.validate()
    cd = cone_mhd(diagram, arity_bound=max(4, args.bar + 1))
    report["verdicts"]["cone_mhd"] = True
    v = validate_linf(cd.base_cone(), args.bar)
    report["verdicts"]["q_squared_zero"] = bool(v.ok)
    vd = validate_mhc(cd.complex_diagram())
    report["verdicts"]["cone_mhc"] = bool(vd.ok)
    cone = cd.base_cone()
    report["cone_dimensions"] = {str(n): cone.space.dim(n)
                                 for n in cone.space.degrees()}
    report["bracket_arities"] = cone.arities()
    h1 = mhc_cohomology(cd.complex_diagram(), 1)
    report["h1"] = {"dim": h1.dim, "weights": _weight_table(h1),
                    "hodge": _hodge_table(h1)}
    ok = all(report["verdicts"].values())
    _emit(report, args)
    return 0 if ok else 1


def _emit(report, args):
    sys.stdout.write(render_report(report, args.format))


def build_parser():
    p = argparse.ArgumentParser(
        prog="hodgedef",
        description="mixed Hodge structures on pro-representing rings of "
                    "deformation functors, with a representation-variety oracle")
    p.add_argument("--format", choices=("json", "text"), default="json")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", help="run the validators on a file")
    v.add_argument("what", choices=("mhs", "mhc", "dglie", "linf", "mhd-linf"))
    v.add_argument("path")
    v.add_argument("--bar", type=int, default=3)
    v.set_defaults(func=cmd_validate)

    pl = sub.add_parser("pipeline", help="diagram -> cone -> bar -> ring with MHS")
    pl.add_argument("path")
    pl.add_argument("--bar", type=int, default=3)
    pl.add_argument("--order", type=int, default=3)
    pl.add_argument("--check-pages", action="store_true")
    pl.add_argument("--seed", type=int, default=0)
    pl.set_defaults(func=cmd_pipeline)

    cc = sub.add_parser("crosscheck", help="pipeline vs representation variety")
    cc.add_argument("presentation")
    cc.add_argument("rep")
    cc.add_argument("--order", type=int, default=3)
    cc.add_argument("--primes", type=int, nargs="+", default=[101])
    cc.add_argument("--seed", type=int, default=0)
    cc.set_defaults(func=cmd_crosscheck)

    spl = sub.add_parser("splitting", help="Deligne splitting of an MHS file")
    spl.add_argument("path")
    spl.set_defaults(func=cmd_splitting)

    br = sub.add_parser("bar", help="bar construction of the cone of a diagram")
    br.add_argument("path")
    br.add_argument("--bar", type=int, default=3)
    br.set_defaults(func=cmd_bar)

    cn = sub.add_parser("cone", help="Fiorenza-Manetti cone of a diagram")
    cn.add_argument("path")
    cn.add_argument("--bar", type=int, default=4)
    cn.set_defaults(func=cmd_cone)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, FileNotFoundError, KeyError) as exc:
        sys.stderr.write("input error: %s\n" % exc)
        return 2
    except ArithmeticError as exc:
        sys.stderr.write("verdict failure: %s\n" % exc)
        return 1


if __name__ == "__main__":
    sys.exit(main())
