"""Command-line front end.

Exit codes: 0 success, 2 invalid input, 3 verification failure, 4 budget
exhausted.  Reports go to standard output, diagnostics to standard error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import dynkin, equivcoh, groebner, hitchin, liealg, linalg, singularity
from .groebner import BudgetExceeded
from .liealg import VerificationError
from .poly import MPoly, PolyError


_BAD_INPUT = (PolyError, dynkin.DynkinError, singularity.SingularityError,
              hitchin.HitchinError, equivcoh.EquivCohError, liealg.LieAlgError,
              ValueError, OSError, json.JSONDecodeError, KeyError)


def _emit(payload: dict, text_lines, fmt: str, tex_lines=None) -> None:
    if fmt == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    elif fmt == "tex":
        print("\n".join(tex_lines if tex_lines is not None else
                        [r"\begin{verbatim}"] + list(text_lines) + [r"\end{verbatim}"]))
    else:
        print("\n".join(text_lines))


def _tex_matrix(rows) -> str:
    body = r" \\ ".join(" & ".join(str(e) for e in row) for row in rows)
    return r"\begin{pmatrix} " + body + r" \end{pmatrix}"


# -- fold ---------------------------------------------------------------------


def _group_from_tag(h: dynkin.DynkinType, tag: str):
    autos = dynkin.diagram_automorphisms(h)
    if tag in ("1", "trivial"):
        return [dynkin.DiagramAutomorphism(tuple(range(h.rank)))]
    if tag in ("Z/2", "Z2"):
        order2 = sorted((g for g in autos if g.order() == 2), key=lambda g: g.perm)
        if not order2:
            raise dynkin.DynkinError(f"{h} has no diagram involution")
        return [order2[0]]
    if tag == "S3":
        if len(autos) != 6:
            raise dynkin.DynkinError(f"Aut of {h} is not S3")
        return autos
    raise dynkin.DynkinError(f"unknown group tag {tag!r}")


def cmd_fold(args) -> int:
    if args.homogeneous:
        h = dynkin.DynkinType.parse(args.homogeneous)
        rec = dynkin.fold(h, _group_from_tag(h, args.group or "Z/2"))
    else:
        if not args.type:
            raise dynkin.DynkinError("fold needs a type or --homogeneous")
        rec = dynkin.associated_pair(dynkin.DynkinType.parse(args.type))
    lines = [f"({rec.homogeneous}, {rec.group})" if rec.group != "1"
             else f"({rec.homogeneous}, trivial)",
             f"folded: {rec.folded}",
             "orbit map: " + " ".join(f"{i}->{o}" for i, o in enumerate(rec.orbit_map))]
    _emit(rec.to_json(), lines, args.format)
    return 0


# -- slice ---------------------------------------------------------------------


def _parse_matrix(rows):
    return linalg.mat([[Fraction(str(x)) for x in row] for row in rows])


def cmd_slice(args) -> int:
    if args.builtin:
        alg, triple = liealg.builtin_triple(args.builtin)
    else:
        if not (args.algebra and args.triple):
            raise liealg.LieAlgError("provide --builtin or both --algebra and --triple")
        alg = liealg.build_algebra(args.algebra)
        with open(args.triple) as fh:
            data = json.load(fh)
        triple = liealg.Sl2Triple(_parse_matrix(data["x"]), _parse_matrix(data["y"]),
                                  _parse_matrix(data["h"]))
    s = liealg.slodowy_slice(alg, triple)
    q = liealg.adjoint_quotient(s, dynkin.invariant_degrees(alg.dynkin_type))
    cf = liealg.central_fiber(s, q)
    verdict = singularity.classify_ade(cf.equation)
    fam_rows = [[str(e) for e in row] for row in s.family]
    payload = {
        "algebra": str(alg.descriptor), "parameters": list(s.params),
        "weights": {p: w for p, w in zip(s.params, s.param_weights)},
        "family": fam_rows,
        "sigma": [str(c) for c in q.components],
        "central_fiber": str(cf.equation),
        "type": str(verdict),
    }
    lines = ["slice family x + sum s_i K_i:"]
    widths = [max(len(r[j]) for r in fam_rows) for j in range(len(fam_rows[0]))]
    for row in fam_rows:
        lines.append("  [ " + "  ".join(e.rjust(w) for e, w in zip(row, widths)) + " ]")
    lines.append("sigma = (" + ", ".join(str(c) for c in q.components) + ")")
    lines.append(f"central fiber: {cf.equation} = 0; type: {verdict}")
    tex = [_tex_matrix(fam_rows),
           r"\sigma = (" + ", ".join(str(c) for c in q.components) + ")",
           f"central fiber: ${cf.equation} = 0$; type: {verdict}"]
    _emit(payload, lines, args.format, tex)
    return 0


# -- family / restrict ------------------------------------------------------------


def cmd_family(args) -> int:
    d = dynkin.DynkinType.parse(args.type)
    spec = hitchin.family_spec(d)
    lines = [spec.family.display(), spec.display()]
    tex = [f"${spec.family.equation} = 0$", spec.display()]
    _emit(spec.to_json(), lines, args.format, tex)
    return 0


def cmd_restrict(args) -> int:
    d = dynkin.DynkinType.parse(args.type)
    rep = hitchin.restriction_check(d)
    payload = {
        "type": str(rep.type), "homogeneous": str(rep.homogeneous),
        "family_match": rep.family_match,
        "invariant_directions": [str(g) for g in rep.invariant_directions],
        "dropped_directions": [str(g) for g in rep.dropped_directions],
        "wall_orbits_checked": rep.wall_orbits_checked,
        "wall_containment": rep.wall_containment,
        "passed": rep.passed,
    }
    lines = [f"{rep.type} inside {rep.homogeneous}: "
             f"{'passed' if rep.passed else 'FAILED'}",
             "invariant directions: " +
             (", ".join(str(g) for g in rep.invariant_directions) or "none"),
             "dropped directions: " +
             (", ".join(str(g) for g in rep.dropped_directions) or "none"),
             f"wall orbits checked: {rep.wall_orbits_checked} "
             f"(containment {'holds' if rep.wall_containment else 'fails'})"]
    _emit(payload, lines, args.format)
    return 0 if rep.passed else 3


# -- sections / cameral / smooth / discriminant ---------------------------------------


def _section(args, d: dynkin.DynkinType) -> hitchin.LocalSection:
    if not args.section:
        raise hitchin.HitchinError("provide one --section per invariant component")
    return hitchin.LocalSection.build(d, list(args.section), chart=args.chart)


def cmd_cameral(args) -> int:
    d = dynkin.DynkinType.parse(args.type)
    curve = hitchin.local_cameral(d, _section(args, d))
    lines = [f"cameral curve for {d}:"]
    lines += [f"  {g} = 0" for g in curve.generators]
    if curve.non_reduced:
        lines.append("warning: zero section, the curve is non-reduced")
    _emit(curve.to_json(), lines, args.format)
    return 0


def cmd_smooth(args) -> int:
    d = dynkin.DynkinType.parse(args.type)
    sec = _section(args, d)
    obj = hitchin.local_threefold(d, sec, model=args.model) if args.object == "threefold" \
        else hitchin.local_cameral(d, sec)
    rep = hitchin.smoothness_report(obj, section=sec)
    lines = [f"{args.object} for {d}: {rep.verdict()}"]
    for f in rep.fibers:
        lines.append(f"fiber over {f.point}: {f.fiber_type}"
                     + (" (total space singular here)" if f.total_space_singular else ""))
    _emit(rep.to_json(), lines, args.format)
    return 0


def cmd_discriminant(args) -> int:
    d = dynkin.DynkinType.parse(args.type)
    rep = hitchin.discriminant(d, _section(args, d))
    payload = {
        "in_invariants": str(rep.in_invariants),
        "polynomial": str(rep.polynomial),
        "zeros": [[str(f), m] for f, m in rep.zeros],
        "rational_zeros": [[str(r), m] for r, m in rep.rational_zeros],
        "all_simple": rep.all_simple,
    }
    lines = [f"discriminant of {d} in invariants: {rep.in_invariants}",
             f"along the section: {rep.polynomial}",
             "zeros: " + (", ".join(f"({f})^{m}" for f, m in rep.zeros) or "none"),
             f"all simple: {rep.all_simple}"]
    _emit(payload, lines, args.format)
    return 0


# -- cohomology --------------------------------------------------------------------


def _render_groups(groups):
    return [f"H^{p} = {g}" for p, g in enumerate(groups)]


def cmd_cohomology(args) -> int:
    if args.lattice:
        act = equivcoh.lattice_involution(args.lattice,
                                          swap=args.involution != "trivial")
    elif args.matrix:
        matrix = json.loads(args.matrix)
        relations = tuple(tuple(c) for c in json.loads(args.relations)) \
            if args.relations else ()
        act = equivcoh.CyclicAction(args.order, matrix, relations)
    else:
        raise equivcoh.EquivCohError("provide --lattice or --matrix")
    groups = equivcoh.group_cohomology_cyclic(act, args.p_max)
    payload = {"order": act.order,
               "groups": [g.to_json() for g in groups]}
    lines = _render_groups(groups)
    tex = ["$H^{%d} = %s$" % (p, str(g).replace("Z", r"\mathbf{Z}"))
           for p, g in enumerate(groups)]
    _emit(payload, lines, args.format, tex)
    return 0


# -- dispatch -----------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sliceforge",
        description="Exact computations with Slodowy slices, folded Dynkin "
                    "diagrams, ADE deformations, and cyclic group cohomology.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("text", "json", "tex"), default="text")

    p = sub.add_parser("fold", help="associated homogeneous pair or explicit folding")
    p.add_argument("type", nargs="?", help="type to unfold, e.g. B3")
    p.add_argument("--homogeneous", help="ADE type to fold, e.g. D4")
    p.add_argument("--group", help="1, Z/2 or S3")
    common(p)

    p = sub.add_parser("slice", help="Slodowy slice, adjoint quotient, central fiber")
    p.add_argument("--builtin", choices=("sl2", "sl4", "so5"))
    p.add_argument("--algebra", help="algebra descriptor, e.g. sl4")
    p.add_argument("--triple", help="JSON file with matrices x, y, h")
    common(p)

    p = sub.add_parser("family", help="semi-universal deformation with bundle ledger")
    p.add_argument("type")
    common(p)

    p = sub.add_parser("restrict", help="folded family inside the homogeneous one")
    p.add_argument("type")
    common(p)

    for name, desc in (("cameral", "local cameral curve"),
                       ("discriminant", "discriminant along a section")):
        p = sub.add_parser(name, help=desc)
        p.add_argument("type")
        p.add_argument("--section", action="append",
                       help="one univariate polynomial per invariant component")
        p.add_argument("--chart", default="x")
        common(p)

    p = sub.add_parser("smooth", help="smoothness report with fiber classification")
    p.add_argument("type")
    p.add_argument("--section", action="append")
    p.add_argument("--chart", default="x")
    p.add_argument("--object", choices=("threefold", "cameral"), default="threefold")
    p.add_argument("--model", choices=("hypersurface", "slice"), default="hypersurface")
    common(p)

    p = sub.add_parser("cohomology", help="integral cohomology of a cyclic action")
    p.add_argument("--lattice", help="ADE type whose root lattice carries the action")
    p.add_argument("--involution", choices=("swap", "trivial"), default="swap")
    p.add_argument("--order", type=int, default=2)
    p.add_argument("--matrix", help="JSON integer matrix for the generator")
    p.add_argument("--relations", help="JSON list of relation columns")
    p.add_argument("--p-max", dest="p_max", type=int, default=4)
    common(p)

    return parser


_DISPATCH = {
    "fold": cmd_fold,
    "slice": cmd_slice,
    "family": cmd_family,
    "restrict": cmd_restrict,
    "cameral": cmd_cameral,
    "smooth": cmd_smooth,
    "discriminant": cmd_discriminant,
    "cohomology": cmd_cohomology,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return _DISPATCH[args.command](args)
    except BudgetExceeded as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return 4
    except VerificationError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 3
    except _BAD_INPUT as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
