"""Command-line surface.

Every command prints one JSON document on stdout (or a plain-text rendering
with --format text).  Exit codes: 0 = computed / holds, 1 = mathematical
negative (a verification failed, something is not extensible or not
trivializable), 2 = malformed input or usage.  Negative results always carry
the certificate the verdict rests on (the violation list, the non-exact
cocycle, ...), re-checked before printing.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import io as fmt
from .cochains import lieder_partial
from .cohomology import ce_cohomology, is_coboundary, lieder_cohomology
from .core import adjoint_representation, verify_representation
from .deformation import (
    apply_iso,
    check_deformation,
    extend_deformation,
    infinitesimal,
    obstruction,
    trivialize_report,
)
from .extension import (
    CocycleConditionError,
    derivation_pair_obstruction,
    extend_derivation_pair,
    section_to_cocycle,
    theta_map,
)
from .lie2 import pair_to_triple, triple_to_pair, verify_equivalence_witness, verify_lie2der
from .linalg import Matrix
from .report import render_report

MAX_DEGREE_ENV = "LIEDERPAIR_MAX_DEGREE"

OK, NEGATIVE, INPUT_ERROR = 0, 1, 2


class _Usage(Exception):
    pass


def _read_json(path: str):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as err:
        raise fmt.ParseError(path, str(err)) from None
    return fmt.loads(text)


def _emit(doc, args) -> None:
    if getattr(args, "format", "json") == "text":
        _emit_text(doc)
    else:
        sys.stdout.write(fmt.dumps(doc))


def _emit_text(doc, indent: str = "") -> None:
    if isinstance(doc, dict):
        for k, v in doc.items():
            if isinstance(v, (dict, list)):
                sys.stdout.write(f"{indent}{k}:\n")
                _emit_text(v, indent + "  ")
            else:
                sys.stdout.write(f"{indent}{k}: {v}\n")
    elif isinstance(doc, list):
        for v in doc:
            if isinstance(v, (dict, list)):
                _emit_text(v, indent + "  ")
            else:
                sys.stdout.write(f"{indent}- {v}\n")
    else:
        sys.stdout.write(f"{indent}{doc}\n")


def _load_pair(path: str, need_rep: bool = False):
    pair, rep = fmt.parse_pair_file(_read_json(path))
    if need_rep and rep is None:
        raise fmt.ParseError(f"{path}:representation", "this command needs a representation block")
    return pair, rep


def _degree_guard(pair, degree: int):
    guard = os.environ.get(MAX_DEGREE_ENV)
    limit = int(guard) if guard else pair.dim + 1
    if degree > limit:
        raise fmt.ParseError("--degree", f"degree {degree} exceeds the guard {limit} (set {MAX_DEGREE_ENV})")


def _rep_or_adjoint(pair, rep):
    return rep if rep is not None else adjoint_representation(pair)


# -- command handlers ---------------------------------------------------------


def cmd_check(args) -> int:
    obj = _read_json(args.file)
    pair, rep = fmt.parse_pair_file(obj, verify=False)
    from .core import verify_derivation, verify_lie

    if args.what == "lie":
        report = verify_lie(pair.algebra)
    elif args.what == "lieder":
        report = verify_lie(pair.algebra)
        report.violations.extend(verify_derivation(pair.algebra, pair.derivation).violations)
    else:
        if rep is None:
            raise fmt.ParseError(f"{args.file}:representation", "check rep needs a representation block")
        report = verify_lie(pair.algebra)
        report.violations.extend(verify_derivation(pair.algebra, pair.derivation).violations)
        if report.ok:
            report.violations.extend(verify_representation(pair, rep).violations)
    _emit(report.to_json(), args)
    return OK if report.ok else NEGATIVE


def cmd_cohomology(args) -> int:
    pair, rep = _load_pair(args.file)
    rep = _rep_or_adjoint(pair, rep)
    _degree_guard(pair, args.degree)
    if args.ce:
        report = ce_cohomology(pair.algebra, rep, args.degree, representatives=args.representatives)
    else:
        report = lieder_cohomology(pair, rep, args.degree, representatives=args.representatives)
    _emit(report.to_json(include_representatives=args.representatives), args)
    return OK


def cmd_deform(args) -> int:
    pair, _ = _load_pair(args.file)
    d = fmt.parse_deformation(_read_json(args.deformation), pair)
    if args.action == "check":
        report = check_deformation(pair, d)
        _emit(report.to_json(), args)
        return OK if report.ok else NEGATIVE
    if args.action == "infinitesimal":
        out = infinitesimal(d)
        _emit(fmt.cochain_pair_to_json(out), args)
        return OK
    if args.action == "obstruction":
        ob = obstruction(pair, d)
        _emit(fmt.cochain_pair_to_json(ob), args)
        return OK
    if args.action == "extend":
        result = extend_deformation(pair, d)
        if result is None:
            ob = obstruction(pair, d)
            rep = adjoint_representation(pair)
            assert lieder_partial(ob, pair, rep).is_zero() and is_coboundary(ob, pair, rep) is None
            _emit(
                {
                    "extensible": False,
                    "obstruction_is_cocycle": True,
                    "obstruction_class_nonzero": True,
                    "obstruction": fmt.cochain_pair_to_json(ob),
                },
                args,
            )
            return NEGATIVE
        terms, extended = result
        _emit(
            {
                "extensible": True,
                "new_terms": fmt.cochain_pair_to_json(terms),
                "deformation": fmt.deformation_to_json(extended),
            },
            args,
        )
        return OK
    iso, blocker = trivialize_report(pair, d, args.max_order)
    if iso is None:
        order, term = blocker
        _emit(
            {
                "trivializable": False,
                "blocking_order": order,
                "blocking_cocycle": fmt.cochain_pair_to_json(term),
            },
            args,
        )
        return NEGATIVE
    check = check_deformation(pair, apply_iso(pair, d, iso.truncate(max(d.order, 1))))
    assert check.ok
    _emit({"trivializable": True, "iso": fmt.formal_iso_to_json(iso)}, args)
    return OK


def cmd_centext(args) -> int:
    if args.action == "build":
        try:
            ext = fmt.parse_extension(_read_json(args.file))
        except CocycleConditionError as err:
            _emit({"built": False, "violations": err.report.to_json()["violations"]}, args)
            return NEGATIVE
        _emit(fmt.extension_to_json(ext), args)
        return OK
    if args.action == "from-section":
        ext = fmt.parse_extension(_read_json(args.file))
        if args.section:
            s = fmt.parse_matrix(_read_json(args.section), args.section, ext.total.dim, ext.base.dim)
        else:
            s = ext.canonical_section()
        c = section_to_cocycle(ext, s)
        _emit(fmt.cocycle_to_json(c), args)
        return OK
    pair, _ = _load_pair(args.file)
    phi_h = (
        fmt.parse_matrix(_read_json(args.fiber_phi), args.fiber_phi, args.fiber_dim, args.fiber_dim)
        if args.fiber_phi
        else Matrix.zeros(args.fiber_dim, args.fiber_dim)
    )
    from .extension import classify_central_extensions

    report = classify_central_extensions(pair, args.fiber_dim, phi_h)
    _emit(report.to_json(include_representatives=True), args)
    return OK


def _load_derivation_pair_args(args, ext):
    obj = _read_json(args.derivations)
    if not isinstance(obj, dict) or "phi_g" not in obj or "phi_h" not in obj:
        raise fmt.ParseError(args.derivations, "expected {phi_g, phi_h, section?}")
    n, m = ext.base.dim, ext.dim_h
    phi_g = fmt.parse_matrix(obj["phi_g"], "phi_g", n, n)
    phi_h = fmt.parse_matrix(obj["phi_h"], "phi_h", m, m)
    section = fmt.parse_matrix(obj["section"], "section", ext.total.dim, n) if "section" in obj else None
    return phi_g, phi_h, section


def cmd_derpair(args) -> int:
    if args.action == "theta":
        pair, _ = _load_pair(args.file)
        obj = _read_json(args.derivations)
        if not isinstance(obj, dict) or "phi_g" not in obj or "phi_h" not in obj:
            raise fmt.ParseError(args.derivations, "expected {phi_g, phi_h}")
        dim_h = args.fiber_dim
        phi_g = fmt.parse_matrix(obj["phi_g"], "phi_g", pair.dim, pair.dim)
        phi_h = fmt.parse_matrix(obj["phi_h"], "phi_h", dim_h, dim_h)
        theta = theta_map(pair.algebra, dim_h, phi_h, phi_g)
        _emit(
            {
                "dim_H2": theta.h2.dim_h,
                "matrix": fmt.matrix_to_json(theta.matrix),
                "zero": theta.is_zero(),
                "extensible_in_every_central_extension": theta.is_zero(),
            },
            args,
        )
        return OK
    ext = fmt.parse_extension(_read_json(args.file))
    phi_g, phi_h, section = _load_derivation_pair_args(args, ext)
    if args.action == "obstruction":
        ob = derivation_pair_obstruction(ext, phi_h, phi_g, section)
        _emit({"obstruction": fmt.cochain_to_json(ob)}, args)
        return OK
    lift = extend_derivation_pair(ext, phi_h, phi_g)
    if lift is None:
        ob = derivation_pair_obstruction(ext, phi_h, phi_g)
        _emit(
            {
                "extensible": False,
                "obstruction_class_nonzero": True,
                "obstruction": fmt.cochain_to_json(ob),
            },
            args,
        )
        return NEGATIVE
    _emit({"extensible": True, "derivation": fmt.matrix_to_json(lift)}, args)
    return OK


def cmd_lie2(args) -> int:
    if args.action == "check":
        s, d = fmt.parse_lie2(_read_json(args.file))
        if d is None:
            raise fmt.ParseError(f"{args.file}:derivation", "lie2 check needs a derivation block")
        report = verify_lie2der(s, d)
        _emit(report.to_json(), args)
        return OK if report.ok else NEGATIVE
    if args.action == "to-triple":
        s, d = fmt.parse_lie2(_read_json(args.file))
        if d is None:
            raise fmt.ParseError(f"{args.file}:derivation", "to-triple needs a derivation block")
        report = verify_lie2der(s, d)
        if not report.ok:
            _emit(report.to_json(), args)
            return NEGATIVE
        triple = pair_to_triple(s, d)
        _emit(fmt.triple_to_json(triple), args)
        return OK
    if args.action == "from-triple":
        try:
            triple = fmt.parse_triple(_read_json(args.file))
            s, d = triple_to_pair(triple)
        except fmt.AxiomError as err:
            _emit({"ok": False, "label": err.label, "violations": err.report.to_json()["violations"]}, args)
            return NEGATIVE
        except ValueError as err:
            _emit({"ok": False, "reason": str(err)}, args)
            return NEGATIVE
        _emit(fmt.lie2_to_json(s, d), args)
        return OK
    t1 = fmt.parse_triple(_read_json(args.file))
    t2 = fmt.parse_triple(_read_json(args.other))
    witness = fmt.parse_witness(_read_json(args.witness), t1, t2)
    report = verify_equivalence_witness(t1, t2, witness)
    out = report.to_json()
    out["induces_lie2der_isomorphism"] = report.ok
    _emit(out, args)
    return OK if report.ok else NEGATIVE


def cmd_report(args) -> int:
    pair, rep = _load_pair(args.file)
    rep = _rep_or_adjoint(pair, rep)
    if args.max_degree is not None:
        _degree_guard(pair, args.max_degree)
    result = render_report(pair, rep, args.out, args.max_degree, title=args.title)
    _emit({"csv": result["csv"], "figure": result["figure"], "rows": result["rows"]}, args)
    return OK


def cmd_semidirect(args) -> int:
    pair, rep = _load_pair(args.file, need_rep=True)
    from .core import semidirect_product

    product = semidirect_product(pair, rep)
    _emit(fmt.algebra_to_json(product), args)
    return OK


# -- argument plumbing --------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="liederpair",
        description="exact cohomology, deformations, and extensions of Lie algebras with a derivation",
    )
    parser.add_argument("--format", choices=("json", "text"), default="json")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="verify axioms of a structure file")
    p.add_argument("what", choices=("lie", "lieder", "rep"))
    p.add_argument("file")
    p.set_defaults(handler=cmd_check)

    p = sub.add_parser("cohomology", help="dimensions and representatives in one degree")
    p.add_argument("file")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--representatives", action="store_true")
    p.add_argument("--ce", action="store_true", help="plain Chevalley-Eilenberg instead of the pair complex")
    p.set_defaults(handler=cmd_cohomology)

    p = sub.add_parser("deform", help="truncated formal deformations")
    p.add_argument("action", choices=("check", "infinitesimal", "obstruction", "extend", "trivialize"))
    p.add_argument("file")
    p.add_argument("deformation")
    p.add_argument("--max-order", type=int, default=None)
    p.set_defaults(handler=cmd_deform)

    p = sub.add_parser("centext", help="central extensions of a pair")
    p.add_argument("action", choices=("build", "from-section", "classify"))
    p.add_argument("file")
    p.add_argument("--section", default=None)
    p.add_argument("--fiber-dim", type=int, default=1)
    p.add_argument("--fiber-phi", default=None)
    p.set_defaults(handler=cmd_centext)

    p = sub.add_parser("derpair", help="lifting a pair of derivations over a central extension")
    p.add_argument("action", choices=("obstruction", "extend", "theta"))
    p.add_argument("file")
    p.add_argument("derivations")
    p.add_argument("--fiber-dim", type=int, default=1)
    p.set_defaults(handler=cmd_derpair)

    p = sub.add_parser("lie2", help="skeletal 2-term structures and triples")
    p.add_argument("action", choices=("check", "to-triple", "from-triple", "equiv-check"))
    p.add_argument("file")
    p.add_argument("other", nargs="?")
    p.add_argument("witness", nargs="?")
    p.set_defaults(handler=cmd_lie2)

    p = sub.add_parser("semidirect", help="semidirect product of a pair with a representation")
    p.add_argument("file")
    p.set_defaults(handler=cmd_semidirect)

    p = sub.add_parser("report", help="degree sweep: CSV table plus bar-chart figure")
    p.add_argument("file")
    p.add_argument("--out", required=True)
    p.add_argument("--max-degree", type=int, default=None)
    p.add_argument("--title", default="cohomology dimensions")
    p.set_defaults(handler=cmd_report)

    return parser


def run(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return INPUT_ERROR if err.code else OK
    if args.command == "lie2" and args.action == "equiv-check" and (not args.other or not args.witness):
        sys.stderr.write("usage: liederpair lie2 equiv-check TRIPLE1 TRIPLE2 WITNESS\n")
        return INPUT_ERROR
    try:
        return args.handler(args)
    except (fmt.ParseError, fmt.AxiomError, ValueError) as err:
        sys.stderr.write(f"error: {err}\n")
        return INPUT_ERROR


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
