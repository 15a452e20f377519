"""Command line entry point: ``bsroots <command> ...``.

Exit codes: 0 success, 1 a verification reported a failure, 2 bad input,
3 a computation did not stabilize.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import List, Optional

from . import __version__
from .oracle import oracle_residues, two_variable_catalog
from .parsing import (InputError, fmt, ideal_to_json, parse_bpoly,
                      parse_ideal)
from .polyhedron import build_polyhedron, enumerate_faces, face_functional, facet_m
from .semigroup import (StabilizationError, classes_of, default_box, product_roots,
                        residue_set, roots, roots_mod_z)

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_UNSTABLE = 0, 1, 2, 3


def _digest(obj) -> str:
    blob = json.dumps(obj, sort_keys=True, separators=(",", ":")).encode()
    return "sha256:" + hashlib.sha256(blob).hexdigest()


def _rat(text: str) -> Fraction:
    try:
        q = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")
    if q <= 0:
        raise argparse.ArgumentTypeError("cap must be positive")
    return q


def _sorted_roots(values) -> List[str]:
    return [fmt(v) for v in sorted(values, reverse=True)]


def _face_record(poly, face):
    rec = {
        "face": face.index,
        "dim": face.dim,
        "points": [list(p) for p in face.points],
        "rays": list(face.rays),
        "in_coordinate_hyperplane": face.in_coordinate_hyperplane,
        "whole": face.is_whole,
    }
    if not face.is_whole and not face.in_coordinate_hyperplane:
        rec["L"] = [fmt(c) for c in face_functional(face)]
    if len(face.facets) == 1 and face.dim == poly.n - 1:
        f = poly.facets[next(iter(face.facets))]
        rec["facet"] = {"normal": list(f.normal), "constant": f.constant}
        if not f.is_coordinate:
            rec["m"] = facet_m(f)
    return rec


# ---------------------------------------------------------------------------
# commands


def cmd_roots(args) -> dict:
    names, ideal = parse_ideal(args.ideal)
    poly = build_polyhedron(ideal)
    rs = roots(poly, cap=args.cap, box=args.box, jobs=args.jobs)
    faces = {f.index: f for f in enumerate_faces(poly)}
    per = []
    for idx, res in rs.per_face:
        rec = _face_record(poly, faces[idx])
        rec["roots"] = _sorted_roots(res.values)
        rec["certificate"] = res.certificate.as_dict() if res.certificate else None
        per.append(rec)
    return {
        "command": "roots",
        "ideal": ideal_to_json(names, ideal),
        "digest": _digest(ideal_to_json(names, ideal)),
        "cap": fmt(rs.cap),
        "box": args.box or default_box(ideal),
        "roots": _sorted_roots(rs.values),
        "cap_hit": rs.cap_hit,
        "faces": per,
    }


def cmd_modz(args) -> dict:
    names, ideal = parse_ideal(args.ideal)
    mz = roots_mod_z(ideal)
    return {
        "command": "modz",
        "ideal": ideal_to_json(names, ideal),
        "digest": _digest(ideal_to_json(names, ideal)),
        "moduli": list(mz.moduli),
        "subgroup_generators": [fmt(g) for g in sorted(mz.generators)],
        "classes": [fmt(c) for c in sorted(mz.classes)],
    }


def cmd_faces(args) -> dict:
    names, ideal = parse_ideal(args.ideal)
    poly = build_polyhedron(ideal)
    return {
        "command": "faces",
        "ideal": ideal_to_json(names, ideal),
        "digest": _digest(ideal_to_json(names, ideal)),
        "vertices": [list(v) for v in poly.vertices],
        "facets": [{"normal": list(f.normal), "constant": f.constant,
                    "coordinate": f.is_coordinate} for f in poly.facets],
        "faces": [_face_record(poly, f) for f in enumerate_faces(poly)],
    }


def cmd_check_ts(args) -> dict:
    na, a = parse_ideal(args.ideal_a)
    nb, b = parse_ideal(args.ideal_b)
    clash = sorted(set(na) & set(nb))
    if clash:
        raise InputError(f"variables shared by both ideals: {', '.join(clash)}")
    pa, pb = build_polyhedron(a), build_polyhedron(b)
    cap = args.cap
    wa = roots(pa, cap=cap, box=args.box, jobs=args.jobs)
    wb = roots(pb, cap=cap, box=args.box, jobs=args.jobs)
    pr = product_roots(pa, pb, cap=cap, box=args.box)
    wab = pr.roots.values
    union = wa.values | wb.values
    extra = wab - union
    mz_ab = roots_mod_z(pr.product.poly)
    mz_union = roots_mod_z(pa).classes | roots_mod_z(pb).classes
    per = []
    for (i, j), res in pr.roots.per_face:
        if res.values:
            per.append({"left_face": i, "right_face": j, "roots": _sorted_roots(res.values)})
    ab_names = list(na) + list(nb)
    return {
        "command": "check-ts",
        "ideal_a": ideal_to_json(na, a),
        "ideal_b": ideal_to_json(nb, b),
        "product": ideal_to_json(ab_names, pr.product.poly.ideal),
        "digest": _digest([ideal_to_json(na, a), ideal_to_json(nb, b)]),
        "W_a": _sorted_roots(wa.values),
        "W_b": _sorted_roots(wb.values),
        "W_ab": _sorted_roots(wab),
        "inclusion_holds": union <= wab,
        "extra_roots": _sorted_roots(extra),
        "modz_W_ab": [fmt(c) for c in sorted(classes_of(wab))],
        "modz_union": [fmt(c) for c in sorted(classes_of(union))],
        "modz_equal": classes_of(wab) == classes_of(union),
        "modz_facets_equal": mz_ab.classes == mz_union == classes_of(wab),
        "product_faces": per,
    }


def cmd_bpoly(args) -> dict:
    b = parse_bpoly(args.expression)
    return {
        "command": "bpoly",
        "expression": args.expression,
        "factored": b.factored(),
        "degree": b.degree,
        "roots": b.to_records(),
    }


def _verify_ideal(ideal, B_extra=4):
    poly = build_polyhedron(ideal)
    B = 4 * ideal.max_exponent()
    recs = []
    for f in enumerate_faces(poly):
        if f.in_coordinate_hyperplane:
            continue
        smart = residue_set(poly, f)
        o1 = oracle_residues(poly, f, B)
        o2 = oracle_residues(poly, f, B + B_extra)
        recs.append({
            "generators": [list(g) for g in ideal.generators],
            "face": f.index,
            "smart": _sorted_roots(smart.values),
            "oracle": _sorted_roots(o1),
            "oracle_stable": o1 == o2,
            "certificate": smart.certificate.as_dict(),
            "pass": o1 == o2 == smart.values and smart.certificate.exact,
        })
    return recs


def cmd_oracle_verify(args) -> dict:
    catalog = two_variable_catalog(args.max_exp)
    if args.limit:
        catalog = catalog[:args.limit]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as ex:
            chunks = list(ex.map(_verify_ideal, catalog, chunksize=8))
    else:
        chunks = [_verify_ideal(i) for i in catalog]
    recs = [r for c in chunks for r in c]
    failed = [r for r in recs if not r["pass"]]
    return {
        "command": "oracle-verify",
        "max_exp": args.max_exp,
        "ideals": len(catalog),
        "faces_checked": len(recs),
        "failures": len(failed),
        "pass": not failed,
        "records": recs if args.all_records else failed,
    }


# ---------------------------------------------------------------------------
# output


def _table(report: dict) -> str:
    lines = []
    for k, v in report.items():
        if isinstance(v, list) and v and isinstance(v[0], dict):
            lines.append(f"{k}:")
            keys = list(v[0].keys())
            for rec in v:
                lines.append("  " + "  ".join(f"{kk}={_short(rec.get(kk))}" for kk in keys))
        else:
            lines.append(f"{k}: {_short(v)}")
    return "\n".join(lines)


def _short(v) -> str:
    if isinstance(v, list):
        return "{" + ", ".join(_short(x) for x in v) + "}"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_short(x)}" for k, x in v.items()) + "}"
    return str(v)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap", type=_rat, default=None,
                        help="largest |root| searched (default: number of variables)")
    common.add_argument("--box", type=int, default=None,
                        help="initial search box for semigroup enumeration")
    common.add_argument("--table", action="store_true", help="human-readable output")
    common.add_argument("--jobs", type=int, default=1, help="worker processes")
    common.add_argument("--timing", action="store_true",
                        help="add wall-clock timing to the report")
    common.add_argument("-o", "--output", help="also write the report to this file")

    p = argparse.ArgumentParser(prog="bsroots", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("roots", parents=[common], help="roots of b_a for a monomial ideal")
    s.add_argument("ideal")
    s.set_defaults(func=cmd_roots)

    s = sub.add_parser("modz", parents=[common], help="root classes mod Z from facets")
    s.add_argument("ideal")
    s.set_defaults(func=cmd_modz)

    s = sub.add_parser("faces", parents=[common], help="face lattice of the Newton polyhedron")
    s.add_argument("ideal")
    s.set_defaults(func=cmd_faces)

    s = sub.add_parser("check-ts", parents=[common],
                       help="compare W_a, W_b and W_ab for ideals in disjoint variables")
    s.add_argument("ideal_a")
    s.add_argument("ideal_b")
    s.set_defaults(func=cmd_check_ts)

    s = sub.add_parser("bpoly", parents=[common], help="evaluate a b-polynomial expression")
    s.add_argument("expression")
    s.set_defaults(func=cmd_bpoly)

    s = sub.add_parser("oracle-verify", parents=[common],
                       help="compare residue sets with the brute-force oracle")
    s.add_argument("--max-exp", type=int, default=8)
    s.add_argument("--limit", type=int, default=0, help="check only the first N ideals")
    s.add_argument("--all-records", action="store_true")
    s.set_defaults(func=cmd_oracle_verify)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    t0 = time.perf_counter()
    code = EXIT_OK
    try:
        report = args.func(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except StabilizationError as e:
        report = {"command": args.command, "error": str(e), "partial": True,
                  "partial_roots": _sorted_roots(e.partial or ())}
        code = EXIT_UNSTABLE
    if report.get("pass") is False:
        code = EXIT_FAIL
    if args.timing:
        report["timing_seconds"] = round(time.perf_counter() - t0, 3)
    text = _table(report) if args.table else json.dumps(report, indent=2)
    print(text)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
