"""Command-line front end.

Verbs: build, induce, filtration, realize-x, char-twist, support, orbit,
stabilizer, hom, iso, decompose, ext1, omega, verify.  Modules travel as
JSON files; group elements are written "a,b;c,d" over the active prime
field.  Exit status: 0 = success / all checks passed, 1 = a verification
check failed, 2 = usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .field import GF
from .reps import SL2Element, baby_verma, premet_w, simple, twist, weyl
from .graded import (GradedRep, char_twist, induce, realize_x, restrict,
                     voigt_filtration, verify_nonsplit_steps,
                     weyl_graded, premet_w_graded)
from .homalg import (DEFAULT_SEED, decompose, ext1_dim, hom_basis,
                     isomorphism_witness, omega)
from .serialize import load, save, to_json
from .support import (FiniteSubgroup, ProjPoint, module_stabilizer,
                      orbit_stabilizer, is_cyclic, support)
from .suites import SUITE_NAMES, run_suite


def _parse_g(text: str, field) -> SL2Element:
    try:
        rows = text.split(";")
        a, b = (int(x) for x in rows[0].split(","))
        c, d = (int(x) for x in rows[1].split(","))
    except (IndexError, ValueError):
        raise SystemExit(2)
    return SL2Element.from_ints(field, a, b, c, d)


def _emit(args, payload: dict):
    if getattr(args, "json", False):
        print(json.dumps(payload, indent=None, sort_keys=True))
    else:
        for k, v in payload.items():
            print(f"{k}: {v}")


def _field(args):
    return GF(args.p, getattr(args, "m", 1) or 1)


def _cmd_build(args):
    F = _field(args)
    kind = args.type
    if kind == "weyl":
        M = weyl(args.d, F)
    elif kind == "simple":
        M = simple(args.d, F)
    elif kind == "baby-verma":
        M = baby_verma(args.a if args.a is not None else args.d, F)
    elif kind == "premet-w":
        M = premet_w(args.d, F)
    elif kind == "weyl-graded":
        M = weyl_graded(args.d, args.r or 1, F)
    elif kind == "premet-w-graded":
        M = premet_w_graded(args.d, args.r or 1, F)
    else:
        raise SystemExit(2)
    if args.g and not kind.endswith("graded"):
        M = twist(M, _parse_g(args.g, F))
    if args.out:
        save(M, args.out)
    _emit(args, {"built": kind, "dim": M.dim, "out": args.out or "-"})
    return 0


def _cmd_induce(args):
    Z = load(args.infile)
    M = induce(Z, args.r)
    if args.out:
        save(M, args.out)
    _emit(args, {"dim": M.dim, "level": M.r, "out": args.out or "-"})
    return 0


def _cmd_filtration(args):
    if args.infile:
        M = load(args.infile)
        if not isinstance(M, GradedRep) or M.shift_perm is None:
            print("input must be an induced graded module", file=sys.stderr)
            return 2
    else:
        F = _field(args)
        g = _parse_g(args.g, F) if args.g else SL2Element.identity(F)
        M = induce(twist(baby_verma(args.a or 0, F), g), args.r or 2)
    filt = voigt_filtration(M)
    reports = verify_nonsplit_steps(filt, seed=args.seed)
    payload = {
        "ambient_dim": M.dim,
        "steps": [int(b.cols) for b in filt.steps],
        "splits": [bool(r.split) for r in reports],
    }
    _emit(args, payload)
    return 0


def _cmd_realize_x(args):
    F = _field(args)
    g = _parse_g(args.g, F)
    X = realize_x(args.a or 0, g, args.l or 1, args.r or 1)
    if args.out:
        save(X, args.out)
    _emit(args, {"dim": X.dim, "level": X.r, "out": args.out or "-"})
    return 0


def _cmd_char_twist(args):
    M = load(args.infile)
    out = char_twist(M, args.lam)
    if args.out:
        save(out, args.out)
    _emit(args, {"dim": out.dim, "shift": args.lam, "out": args.out or "-"})
    return 0


def _cmd_support(args):
    M = load(args.infile)
    if isinstance(M, GradedRep):
        M = restrict(M)
    res = support(M, m=args.m or 2)
    _emit(args, {
        "field": repr(res.field),
        "points": [repr(pt) for pt in res.points],
        "complexity": res.complexity,
    })
    return 0


def _cmd_orbit(args):
    F = _field(args)
    gen = _parse_g(args.gamma, F)
    G = FiniteSubgroup.generated_by(F, [gen])
    s, t = (int(x) for x in args.point.split(":"))
    pt = ProjPoint.of(F, s, t)
    orbit, stab = orbit_stabilizer(G, pt)
    _emit(args, {
        "group_order": G.order,
        "orbit": [repr(q) for q in orbit],
        "stabilizer_order": stab.order,
        "stabilizer_cyclic": is_cyclic(stab),
    })
    return 0


def _cmd_stabilizer(args):
    M = load(args.infile)
    if isinstance(M, GradedRep):
        M = restrict(M)
    F = M.field
    gen = _parse_g(args.gamma, F)
    G = FiniteSubgroup.generated_by(F, [gen])
    stab = module_stabilizer(G, M, seed=args.seed)
    _emit(args, {
        "group_order": G.order,
        "stabilizer_order": stab.order,
        "stabilizer_cyclic": is_cyclic(stab),
    })
    return 0


def _cmd_hom(args):
    A, B = load(args.infile), load(args.infile2)
    H = hom_basis(A, B)
    payload = {"dim": H.dim}
    if args.witness and H.dim:
        payload["basis"] = [to_json(T) for T in H.basis]
    _emit(args, payload)
    return 0


def _cmd_iso(args):
    A, B = load(args.infile), load(args.infile2)
    T = isomorphism_witness(A, B, seed=args.seed)
    if T is not None and args.out:
        save(T, args.out)
    _emit(args, {"isomorphic": T is not None,
                 "witness": args.out if (T is not None and args.out) else "-"})
    return 0


def _cmd_decompose(args):
    M = load(args.infile)
    parts = decompose(M, seed=args.seed)
    payload = {"summands": [{"dim": S.dim, "multiplicity": m} for S, m in parts]}
    if args.out:
        for k, (S, _) in enumerate(parts):
            base = S.rep if hasattr(S, "rep") else S
            save(base, f"{args.out}.{k}.json")
        payload["out"] = f"{args.out}.*.json"
    _emit(args, payload)
    return 0


def _cmd_ext1(args):
    A, B = load(args.infile), load(args.infile2)
    _emit(args, {"ext1_dim": ext1_dim(A, B)})
    return 0


def _cmd_omega(args):
    M = load(args.infile)
    Om = omega(M)
    if args.out:
        save(Om, args.out)
    _emit(args, {"dim": Om.dim, "out": args.out or "-"})
    return 0


def _cmd_verify(args):
    if args.suite not in SUITE_NAMES:
        print(f"unknown suite {args.suite!r}; choose from {SUITE_NAMES}",
              file=sys.stderr)
        return 2
    params = {}
    for key in ("p", "m", "r", "a", "l", "d", "n", "s"):
        val = getattr(args, key, None)
        if val is not None:
            params[key] = val
    if args.g:
        field = GF(params.get("p", 3), params.get("m", 1))
        params["g"] = _parse_g(args.g, field)
    try:
        report = run_suite(args.suite, params, seed=args.seed)
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    if args.json:
        print(json.dumps(report.to_json(), sort_keys=True))
    else:
        for c in report.checks:
            print(f"[{'PASS' if c.passed else 'FAIL'}] {c.check_id}: {c.claim}"
                  + (f" ({c.details})" if c.details and not c.passed else ""))
        print(f"suite {report.suite}: "
              f"{'all passed' if report.passed else 'FAILURES'} "
              f"in {report.elapsed:.1f}s")
    return 0 if report.passed else 1


def _add_common(sp, io_in=False, io_in2=False):
    sp.add_argument("--p", type=int, default=3)
    sp.add_argument("--m", type=int, default=None)
    sp.add_argument("--r", type=int, default=None)
    sp.add_argument("--a", type=int, default=None)
    sp.add_argument("--l", type=int, default=None)
    sp.add_argument("--d", type=int, default=None)
    sp.add_argument("--n", type=int, default=None)
    sp.add_argument("--s", type=int, default=None)
    sp.add_argument("--g", type=str, default=None)
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--out", type=str, default=None)
    if io_in:
        sp.add_argument("--in", dest="infile", type=str,
                        default=None, required=io_in == "required")
    if io_in2:
        sp.add_argument("--in2", dest="infile2", type=str, required=True)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="sl2rep",
        description="exact workbench for restricted sl2 module families")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("build", help="construct a named module")
    sp.add_argument("type", choices=["weyl", "simple", "baby-verma", "premet-w",
                                     "weyl-graded", "premet-w-graded"])
    _add_common(sp)
    sp.set_defaults(func=_cmd_build)

    sp = sub.add_parser("induce", help="induce a module to a graded level")
    _add_common(sp, io_in="required")
    sp.set_defaults(func=_cmd_induce)
    sp.set_defaults(r=2)

    sp = sub.add_parser("filtration", help="shift filtration of an induced module")
    _add_common(sp, io_in=True)
    sp.set_defaults(func=_cmd_filtration)

    sp = sub.add_parser("realize-x", help="graded lift of a twisted W-family module")
    _add_common(sp)
    sp.set_defaults(func=_cmd_realize_x)

    sp = sub.add_parser("char-twist", help="tensor with a degree character")
    _add_common(sp, io_in="required")
    sp.add_argument("--lam", type=int, required=True)
    sp.set_defaults(func=_cmd_char_twist)

    sp = sub.add_parser("support", help="rank variety points of a module")
    _add_common(sp, io_in="required")
    sp.set_defaults(func=_cmd_support)

    sp = sub.add_parser("orbit", help="orbit and stabiliser of a point")
    _add_common(sp)
    sp.add_argument("--gamma", type=str, required=True,
                    help="generator of the cyclic subgroup, 'a,b;c,d'")
    sp.add_argument("--point", type=str, default="1:0")
    sp.set_defaults(func=_cmd_orbit)

    sp = sub.add_parser("stabilizer", help="module stabiliser inside a cyclic group")
    _add_common(sp, io_in="required")
    sp.add_argument("--gamma", type=str, required=True)
    sp.set_defaults(func=_cmd_stabilizer)

    sp = sub.add_parser("hom", help="dimension (and basis) of the Hom space")
    _add_common(sp, io_in="required", io_in2=True)
    sp.add_argument("--witness", action="store_true")
    sp.set_defaults(func=_cmd_hom)

    sp = sub.add_parser("iso", help="test two modules for isomorphism")
    _add_common(sp, io_in="required", io_in2=True)
    sp.set_defaults(func=_cmd_iso)

    sp = sub.add_parser("decompose", help="indecomposable summands")
    _add_common(sp, io_in="required")
    sp.set_defaults(func=_cmd_decompose)

    sp = sub.add_parser("ext1", help="dimension of Ext^1 between two modules")
    _add_common(sp, io_in="required", io_in2=True)
    sp.set_defaults(func=_cmd_ext1)

    sp = sub.add_parser("omega", help="Heller shift of a module")
    _add_common(sp, io_in="required")
    sp.set_defaults(func=_cmd_omega)

    sp = sub.add_parser("verify", help="run a verification suite")
    sp.add_argument("suite", type=str)
    _add_common(sp)
    sp.set_defaults(func=_cmd_verify)
    sp.set_defaults(p=None)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"cannot read {exc.filename}", file=sys.stderr)
        return 2
    except (ValueError, KeyError) as exc:
        print(str(exc), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
