"""Batch front end.

JSON in, JSON or aligned text out, deterministic bytes for a fixed input.
Exit codes: 0 when everything asked for was computed and every performed
check came back Verified or VerifiedByClassification, 1 when a check
failed, 2 for invalid input. No interactive mode; randomized testing lives
in the test suite, with only the seeded ``proptest`` battery exposed here.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .complexes import (CertificateFailure, CoefficientComplex, FreeComplex,
                        uct_certificates)
from .groups import (GroupParseError, IllFormedMap, PresentedGroup,
                     ext_group, hom_group, parse_group)
from .kolmogoroff import (ConditionViolated, FiniteModel, KolmogoroffChain,
                          NerveComplex, NotACover, NotARefinement, Partition,
                          PipelineMismatch, kolmogoroff_homology,
                          kolmogoroff_uct_check, model_preset, random_chain)
from .limits import (DEFAULT_KMAX, MalformedTower, Telescope, Tower, colim,
                     hom_into_colim_check, lim, lim1, lim_higher,
                     six_term_check)
from .matrices import IntMatrix, smith_normal_form
from .randomgen import (random_finite_telescope, random_finite_tower,
                        random_free_cochain_complex, random_matrix, seeded)
from .tautness import (FAILED, InconsistentData, LimNotExact,
                       NeighborhoodTower, four_term_sequence, milnor_sequence,
                       reports_consistent, tautness_preset, tautness_sequence)

PROG = "tauthom"

_INPUT_ERRORS = (GroupParseError, IllFormedMap, MalformedTower, NotACover,
                 NotARefinement, json.JSONDecodeError, OSError, KeyError,
                 TypeError, ValueError)
_CHECK_ERRORS = (CertificateFailure, PipelineMismatch, ConditionViolated,
                 InconsistentData, LimNotExact)


class CheckFailed(Exception):
    """A requested verification did not come back clean."""


def build_parser():
    p = argparse.ArgumentParser(
        prog=PROG,
        description="exact homological algebra for towers, set functions "
                    "and tautness checks")
    p.add_argument("verb", choices=["snf", "group", "homology", "uct", "lim",
                                    "colim", "sixterm", "kolmogoroff", "nerve",
                                    "tautness", "milnor", "proptest"])
    p.add_argument("--input", help="path to the JSON input")
    p.add_argument("--preset", help="named built-in input")
    p.add_argument("--coefficients", default=None,
                   help="coefficient group, e.g. Z, Z/2, Z+Z/4 (default Z)")
    p.add_argument("--degree", type=int, default=None)
    p.add_argument("--format", choices=["json", "text"], default="text")
    p.add_argument("--kmax", type=int, default=None,
                   help="stabilization bound for tail computations "
                        "(default: TAUT_HOMOLOGY_KMAX or %d)" % DEFAULT_KMAX)
    p.add_argument("--reduced", action="store_true",
                   help="use reduced degree-zero data in presets")
    p.add_argument("--seed", type=int, default=0,
                   help="seed for the proptest battery")
    return p


def _load(args):
    if args.input is None:
        raise ValueError("this verb needs --input")
    with open(args.input, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _kmax(args):
    if args.kmax is not None:
        return args.kmax
    return int(os.environ.get("TAUT_HOMOLOGY_KMAX", DEFAULT_KMAX))


def _need_degree(args):
    if args.degree is None:
        raise ValueError("this verb needs --degree")
    return args.degree


def _emit(args, obj, text_lines):
    if args.format == "json":
        return json.dumps(obj, indent=2, sort_keys=True)
    return "\n".join(text_lines)


def _outcome_lines(label, outcome, indent="  "):
    return ["%s%s: %s" % (indent, label, outcome.describe()),
            "%s  certificate: %s" % (indent, outcome.certificate)]


# -- verbs ---------------------------------------------------------------------


def _cmd_snf(args):
    mat = IntMatrix.from_json(_load(args))
    s = smith_normal_form(mat)
    nonzero = [x for x in s.diagonal if x != 0]
    obj = {"d": s.d.to_json(), "u": s.u.to_json(), "v": s.v.to_json(),
           "divisors": nonzero}
    lines = ["smith normal form of a %d x %d matrix" % (mat.rows, mat.cols),
             "  divisors: %s" % (nonzero,),
             "  d: %s" % (s.d.data,),
             "  u: %s" % (s.u.data,),
             "  v: %s" % (s.v.data,)]
    return 0, _emit(args, obj, lines)


def _cmd_group(args):
    if args.input is not None:
        g = PresentedGroup.from_json(_load(args))
    elif args.coefficients is not None:
        g = parse_group(args.coefficients)
    else:
        raise ValueError("group needs --input or --coefficients")
    obj = {"group": g.to_json(), "name": g.describe(),
           "free_rank": g.free_rank, "torsion": list(g.torsion)}
    lines = ["group: %s" % g.describe(),
             "  free rank: %d" % g.free_rank,
             "  invariant factors: %s" % (list(g.torsion),)]
    return 0, _emit(args, obj, lines)


def _complex_from_args(args):
    if args.preset is not None:
        model = model_preset(args.preset)
        nerve = NerveComplex(model, Partition.singletons(model.atoms))
        return nerve.cochain_complex()
    return FreeComplex.from_json(_load(args))


def _cmd_homology(args):
    cx = _complex_from_args(args)
    if args.coefficients is not None:
        if cx.direction != "cochain":
            raise ValueError("coefficient homology is computed from cochain "
                             "complexes; this input is a chain complex")
        coeffs = parse_group(args.coefficients or "Z")
        hom = CoefficientComplex(cx, coeffs).homology_all()
        title = "homology of Hom(C, %s)" % coeffs.describe()
    else:
        hom = cx.homology_all()
        title = "integral %s groups" % (
            "homology" if cx.direction == "chain" else "cohomology")
    degrees = [args.degree] if args.degree is not None else sorted(hom)
    obj = {"degrees": {str(n): hom[n].describe() for n in degrees}}
    lines = [title]
    lines += ["  H_%d: %s" % (n, hom[n].describe()) for n in degrees]
    return 0, _emit(args, obj, lines)


def _cmd_uct(args):
    cx = _complex_from_args(args)
    coeffs = parse_group(args.coefficients or "Z")
    certs = uct_certificates(cx, coeffs)
    degrees = [args.degree] if args.degree is not None else sorted(certs)
    obj = {"coefficients": coeffs.describe(),
           "degrees": {str(n): certs[n].to_json() for n in degrees}}
    lines = ["universal-coefficient certificates over %s" % coeffs.describe()]
    for n in degrees:
        c = certs[n]
        lines += ["degree %d" % n,
                  "  Ext-term: %s" % c.ext_term.describe(),
                  "  Hom-term: %s" % c.hom_term.describe(),
                  "  middle: %s" % c.middle.describe(),
                  "  split: verified"]
    return 0, _emit(args, obj, lines)


def _cmd_lim(args):
    tower = Tower.from_json(_load(args))
    k = _kmax(args)
    l0 = lim(tower, k)
    l1 = lim1(tower, k)
    l2 = lim_higher(tower, 2, k)
    obj = {"lim": l0.to_json(), "lim1": l1.to_json(), "lim2": l2.to_json()}
    lines = ["derived limits of a tower (%d prefix stages%s)"
             % (len(tower.stages), ", periodic tail" if tower.tail else "")]
    lines += _outcome_lines("lim", l0)
    lines += _outcome_lines("lim1", l1)
    lines += _outcome_lines("lim2", l2)
    return 0, _emit(args, obj, lines)


def _cmd_colim(args):
    telescope = Telescope.from_json(_load(args))
    out = colim(telescope, _kmax(args))
    obj = {"colim": out.to_json()}
    lines = ["colimit of a telescope (%d prefix stages%s)"
             % (len(telescope.stages), ", periodic tail" if telescope.tail else "")]
    lines += ["  colim: %s" % out.description,
              "    certificate: %s" % out.certificate]
    return 0, _emit(args, obj, lines)


def _cmd_sixterm(args):
    telescope = Telescope.from_json(_load(args))
    coeffs = parse_group(args.coefficients or "Z")
    rep = six_term_check(telescope, coeffs, _kmax(args))
    obj = rep.to_json()
    lines = ["six-term limit sequence over %s" % coeffs.describe()]
    lines += _outcome_lines("lim1 Hom", rep.lim1_hom)
    lines += _outcome_lines("Ext(colim)", rep.ext_colim)
    lines += _outcome_lines("lim Ext", rep.lim_ext)
    lines += _outcome_lines("lim2 Hom", rep.lim2_hom)
    code = 0
    if rep.iso is not None:
        lines.append("  middle comparison: %s"
                     % ("isomorphism" if rep.iso.verified else "FAILED"))
        lines.append("    %s" % rep.iso.detail)
        if not rep.iso.verified:
            code = 1
    for note in rep.notes:
        lines.append("  note: %s" % note)
    return code, _emit(args, obj, lines)


def _model_and_partition(args):
    if args.preset is not None:
        model = model_preset(args.preset)
        return model, Partition.singletons(model.atoms)
    obj = _load(args)
    model = FiniteModel.from_json(obj["model"] if "model" in obj else obj)
    if "partition" in obj:
        part = Partition.from_json(obj["partition"])
    else:
        part = Partition.singletons(model.atoms)
    return model, part


def _cmd_kolmogoroff(args):
    model, part = _model_and_partition(args)
    coeffs = parse_group(args.coefficients or "Z")
    hom = kolmogoroff_homology(model, part, coeffs)
    degrees = [args.degree] if args.degree is not None else sorted(hom)
    obj = {"coefficients": coeffs.describe(),
           "degrees": {str(n): hom[n].describe() for n in degrees},
           "pipelines": "agree"}
    lines = ["set-function homology over %s (%d atoms, %d blocks)"
             % (coeffs.describe(), model.atoms, len(part))]
    lines += ["  H_%d: %s" % (n, hom[n].describe()) for n in degrees]
    lines.append("  boundary-evaluation and nerve pipelines agree")
    return 0, _emit(args, obj, lines)


def _cmd_nerve(args):
    model, part = _model_and_partition(args)
    nerve = NerveComplex(model, part)
    counts = [nerve.count(n) for n in range(nerve.dimension + 1)]
    obj = {"dimension": nerve.dimension, "counts": counts,
           "simplices": {str(n): [list(s) for s in nerve.simplices[n]]
                         for n in range(nerve.dimension + 1)},
           "boundaries": {str(n): nerve.boundary_matrix(n).to_json()
                          for n in range(1, nerve.dimension + 1)}}
    lines = ["nerve on %d blocks, dimension %d" % (len(part), nerve.dimension),
             "  simplex counts: %s" % (counts,)]
    for n in range(nerve.dimension + 1):
        lines.append("  dim %d: %s" % (n, " ".join(
            "".join(str(v) for v in s) if max(s) < 10 else str(s)
            for s in nerve.simplices[n])))
    return 0, _emit(args, obj, lines)


def _ntower_from_args(args):
    if args.preset is not None:
        return tautness_preset(args.preset, args.reduced)
    return NeighborhoodTower.from_json(_load(args))


def _report_lines(rep):
    lines = rep.text().split("\n")
    lines.append("lim1: %s" % rep.terms[0].outcome.describe())
    lines.append("middle: %s" % rep.terms[1].outcome.describe())
    lines.append("lim: %s" % rep.terms[2].outcome.describe())
    return lines


def _cmd_tautness(args):
    data = _ntower_from_args(args)
    n = _need_degree(args)
    coeffs = parse_group(args.coefficients or "Z")
    k = _kmax(args)
    taut = tautness_sequence(data, n, coeffs, k)
    four = four_term_sequence(data, n, coeffs, k)
    agree = reports_consistent(taut, four)
    obj = {"tautness": taut.to_json(), "four_term": four.to_json(),
           "junction_agreement": agree}
    lines = ["tautness sequence at degree %d over %s" % (n, coeffs.describe())]
    lines += _report_lines(taut)
    lines.append("")
    lines.append("four-term comparison")
    lines += _report_lines(four)
    lines.append("junction agreement: %s" % ("yes" if agree else "NO"))
    code = 1 if (taut.failed or four.failed or not agree) else 0
    return code, _emit(args, obj, lines)


def _cmd_milnor(args):
    data = _ntower_from_args(args)
    n = _need_degree(args)
    rep = milnor_sequence(data, n, "Milnor", _kmax(args))
    obj = rep.to_json()
    lines = ["milnor sequence at degree %d" % n]
    lines += _report_lines(rep)
    return (1 if rep.failed else 0), _emit(args, obj, lines)


def _cmd_proptest(args):
    rng = seeded(args.seed)
    counts = {}

    for _ in range(200):
        m = random_matrix(rng, rng.randrange(0, 5), rng.randrange(0, 5), 9)
        chain = [x for x in smith_normal_form(m).diagonal if x != 0]
        for i in range(len(chain) - 1):
            assert chain[i + 1] % chain[i] == 0
    counts["snf"] = 200

    zz12 = PresentedGroup(0, (12,))
    for _ in range(30):
        cx, known = random_free_cochain_complex(rng)
        for n, g in known.items():
            assert cx.homology(n) == g
        for g in (PresentedGroup(1, ()), zz12):
            uct_certificates(cx, g)
    counts["uct"] = 30

    for name in ("arc-circle:5", "octahedron"):
        model = model_preset(name)
        part = Partition.singletons(model.atoms)
        nerve = NerveComplex(model, part)
        for _ in range(20):
            deg = rng.randrange(0, nerve.dimension + 1)
            f = random_chain(rng, nerve, deg, zz12)
            assert KolmogoroffChain.from_nerve_chain(f.to_nerve_chain()) == f
            if deg >= 1:
                assert f.boundary().boundary().is_zero()
                assert f.boundary().to_nerve_chain().coords == \
                    f.to_nerve_chain().boundary().coords
            else:
                assert f.boundary().is_zero()
    counts["kolmogoroff"] = 40

    for _ in range(50):
        t = random_finite_telescope(rng)
        rep = six_term_check(t, zz12)
        assert rep.iso is not None and rep.iso.verified
        h = hom_into_colim_check(t, zz12)
        assert h.verified
    counts["sixterm"] = 50

    for _ in range(50):
        t = random_finite_tower(rng)
        assert lim1(t).kind == "zero"
        assert lim(t).is_exact
    counts["towers"] = 50

    obj = {"seed": args.seed, "passed": counts}
    lines = ["property battery, seed %d" % args.seed]
    lines += ["  %s: %d ok" % (k, v) for k, v in sorted(counts.items())]
    lines.append("all invariants held")
    return 0, _emit(args, obj, lines)


_DISPATCH = {"snf": _cmd_snf, "group": _cmd_group, "homology": _cmd_homology,
             "uct": _cmd_uct, "lim": _cmd_lim, "colim": _cmd_colim,
             "sixterm": _cmd_sixterm, "kolmogoroff": _cmd_kolmogoroff,
             "nerve": _cmd_nerve, "tautness": _cmd_tautness,
             "milnor": _cmd_milnor, "proptest": _cmd_proptest}


def run(args):
    return _DISPATCH[args.verb](args)


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        code, report = run(args)
    except _CHECK_ERRORS as exc:
        print("check failed: %s" % exc, file=sys.stderr)
        return 1
    except AssertionError as exc:
        print("check failed: %s" % exc, file=sys.stderr)
        return 1
    except _INPUT_ERRORS as exc:
        print("invalid input: %s" % exc, file=sys.stderr)
        return 2
    print(report)
    return code


if __name__ == "__main__":
    sys.exit(main())
