"""Command line front-end.

Commands take an ideal file (``vars a b c; gens a^2 a*b ...``) or a
lattice JSON dump; ``--char`` (or MONRES_FIELD) picks the coefficient
field, ``--json`` switches the output format.  Exit codes: 0 success,
2 verification failure, 3 parse error, 4 precondition violation.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys

from monres.chains import Chain, format_chain, parse_chain
from monres.classify import classify
from monres.lattice import LcmLattice
from monres.linalg import Field
from monres.monomials import IdealParseError, parse_ideal_text, random_minimal_ideal
from monres.posetres import HomologyBasis, poset_construction, rlm_construction
from monres.resolutions import (MultigradedComplex, atomic_lattice_resolution,
                                maximal_approximation, minimize_resolution,
                                projdim_bound, scarf_complex, taylor_resolution,
                                verify_resolution)

EXIT_OK = 0
EXIT_VERIFY = 2
EXIT_PARSE = 3
EXIT_PRECONDITION = 4


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _load_lattice(path: str, minimize_gens: bool):
    text = _read_input(path)
    if text.lstrip().startswith("{"):
        return LcmLattice.from_json(text)
    ideal, char = parse_ideal_text(text, minimize=minimize_gens)
    lat = LcmLattice.from_ideal(ideal)
    lat.file_char = char
    return lat


def _field(args, lat=None) -> Field:
    if args.char is not None:
        return Field(args.char)
    file_char = getattr(lat, "file_char", None)
    if file_char is not None:
        return Field(file_char)
    env = os.environ.get("MONRES_FIELD")
    if env:
        return Field(int(env))
    return Field(0)


def _print(text):
    sys.stdout.write(text + ("\n" if not text.endswith("\n") else ""))


def _facet_key(f):
    return (len(f), f)


def cmd_lattice(args):
    lat = _load_lattice(args.input, args.minimize_gens)
    if args.json:
        _print(lat.to_json())
    else:
        names = lat.ideal.names
        for e in lat.elements:
            cov = ",".join(str(c) for c in sorted(e.covers))
            _print(f"{e.id}: mdeg={e.mdeg.to_str(names)} A={{{','.join(map(str, sorted(e.A)))}}} "
                   f"rank={e.rank} covers=[{cov}]")
    return EXIT_OK


def cmd_betti(args):
    lat = _load_lattice(args.input, args.minimize_gens)
    field = _field(args, lat)
    if args.jobs > 1:
        lat.compute_homologies(field, jobs=args.jobs)
    table = lat.betti_numbers(field)
    names = lat.ideal.names
    totals: dict = {}
    for (i, m), n in table.items():
        totals[i] = totals.get(i, 0) + n
    if args.json:
        doc = {
            "entries": [
                {"i": i, "mdeg": lat.element(m).mdeg.to_str(names), "betti": n}
                for (i, m), n in sorted(table.items())
            ],
            "totals": [totals.get(i, 0) for i in range(max(totals) + 1)],
        }
        _print(json.dumps(doc, indent=2))
    else:
        for (i, m), n in sorted(table.items()):
            _print(f"b_{i},{lat.element(m).mdeg.to_str(names)} = {n}")
        _print("totals: " + " ".join(str(totals.get(i, 0)) for i in range(max(totals) + 1)))
    return EXIT_OK


def _emit_resolution(args, C, extra_text=""):
    if args.json:
        _print(C.to_json())
    else:
        _print(C.render_text())
        if extra_text:
            _print(extra_text)
    return EXIT_OK


def cmd_taylor(args):
    lat = _load_lattice(args.input, args.minimize_gens)
    field = _field(args, lat)
    return _emit_resolution(args, taylor_resolution(lat.ideal, field))


def cmd_minimize(args):
    lat = _load_lattice(args.input, args.minimize_gens)
    field = _field(args, lat)
    C, basis = minimize_resolution(taylor_resolution(lat.ideal, field), lat)
    return _emit_resolution(args, C, "taylor basis:\n" + basis.to_text())


def cmd_resolve(args):
    lat = _load_lattice(args.input, args.minimize_gens)
    field = _field(args, lat)
    basis, C = atomic_lattice_resolution(lat, field)
    return _emit_resolution(args, C, "taylor basis:\n" + basis.to_text())


def cmd_approx(args):
    lat = _load_lattice(args.input, args.minimize_gens)
    field = _field(args, lat)
    _, C = atomic_lattice_resolution(lat, field)
    A = maximal_approximation(C)
    code = _emit_resolution(args, A)
    if not args.json:
        _print(f"complex: {'yes' if A.is_complex() else 'no'}")
    return code


def _load_choices(lat, field, path):
    """Explicit homology bases / preimages from a JSON file."""
    doc = json.loads(_read_input(path))
    hb = HomologyBasis.canonical(lat, field)
    given = {}
    for entry in doc.get("bases", []):
        m = lat.id_of_label(entry["A"])
        given[(m, entry["dim"])] = [parse_chain(field, t) for t in entry["chains"]]
    if given:
        hb = hb.with_chains(given)
    preimages = {}
    for entry in doc.get("preimages", []):
        m = lat.id_of_label(entry["A"])
        preimages[(m, entry["dim"], entry.get("j", 0))] = parse_chain(field, entry["chain"])
    return hb, preimages


def _emit_construction(args, lat, out):
    verdict = {
        "complex": out.is_complex,
        "resolution": out.report.is_resolution,
        "minimal": out.report.is_resolution and out.report.is_minimal,
    }
    if args.json:
        doc = json.loads(out.homogenized.to_json())
        doc["scalar_matrices"] = [
            [[out.homogenized.field.to_str(out.matrices[i][r, c])
              for c in range(out.matrices[i].ncols)]
             for r in range(out.matrices[i].nrows)]
            for i in range(1, len(out.labels))
        ]
        doc["verdicts"] = verdict
        _print(json.dumps(doc, indent=2))
    else:
        names = lat.ideal.names
        for i in range(len(out.labels) - 1, 0, -1):
            mat = out.matrices[i]
            rows = "; ".join(" ".join(str(mat[r, c]) for c in range(mat.ncols))
                             for r in range(mat.nrows))
            _print(f"scalar map {i}: [{rows}]")
        _print(out.homogenized.render_text())
        _print("verdicts: " + " ".join(f"{k}={'yes' if v else 'no'}" for k, v in verdict.items()))
    return EXIT_OK if verdict["resolution"] else EXIT_VERIFY


def cmd_poset(args):
    lat = _load_lattice(args.input, args.minimize_gens)
    field = _field(args, lat)
    hb, _ = _load_choices(lat, field, args.choices) if args.choices else (None, {})
    return _emit_construction(args, lat, poset_construction(lat, field, hb))


def cmd_rlm(args):
    lat = _load_lattice(args.input, args.minimize_gens)
    field = _field(args, lat)
    hb, preimages = _load_choices(lat, field, args.choices) if args.choices else (None, {})
    return _emit_construction(args, lat, rlm_construction(lat, field, hb, preimages=preimages))


def cmd_classify(args):
    lat = _load_lattice(args.input, args.minimize_gens)
    field = _field(args, lat)
    if args.jobs > 1:
        lat.compute_homologies(field, jobs=args.jobs)
    report = classify(lat, field)
    if args.json:
        doc = {name: {"verdict": v, "witness": w} for name, v, w in report.rows()}
        _print(json.dumps(doc, indent=2))
    else:
        _print(report.to_text())
    return EXIT_OK


def cmd_verify(args):
    C = MultigradedComplex.from_json(_read_input(args.input))
    lat = LcmLattice.from_ideal(C.ideal)
    report = verify_resolution(C, lat)
    if args.json:
        _print(json.dumps({
            "homogeneous": report.homogeneous,
            "complex": report.complex,
            "h0_ok": report.h0_ok,
            "restriction_failure": report.restriction_failure,
            "resolution": report.is_resolution,
            "minimal": report.is_minimal,
        }, indent=2))
    else:
        _print(report.summary())
    return EXIT_OK if report.is_resolution else EXIT_VERIFY


def cmd_scarf(args):
    lat = _load_lattice(args.input, args.minimize_gens)
    faces = scarf_complex(lat)
    if args.json:
        _print(json.dumps({"faces": [list(f) for f in faces]}))
    else:
        _print(" ".join("{}" if not f else format_chain(Chain.from_face(Field(0), f))
                        for f in sorted(faces, key=_facet_key)))
    return EXIT_OK


def cmd_random(args):
    rng = random.Random(args.seed)
    out = []
    for _ in range(args.count):
        ideal = random_minimal_ideal(args.r, args.n, args.maxdeg, rng)
        out.append(ideal.to_text())
    _print("\n".join(out))
    return EXIT_OK


def cmd_bound(args):
    lat = _load_lattice(args.input, args.minimize_gens)
    _print(str(projdim_bound(lat)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="monres",
        description="Minimal free resolutions of monomial ideals from their lcm-lattices.",
    )
    parser.add_argument("--char", type=int, default=None,
                        help="field characteristic (0 = rationals; default from MONRES_FIELD or 0)")
    parser.add_argument("--json", action="store_true", help="emit JSON instead of text")
    parser.add_argument("--jobs", type=int, default=1,
                        help="parallel workers for per-element homology")
    parser.add_argument("--minimize-gens", action="store_true",
                        help="drop redundant generators instead of rejecting them")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text, with_input=True):
        p = sub.add_parser(name, help=help_text)
        if with_input:
            p.add_argument("input", help="ideal file or lattice JSON ('-' for stdin)")
        p.set_defaults(fn=fn)
        return p

    add("lattice", cmd_lattice, "print the lcm-lattice")
    add("betti", cmd_betti, "multigraded Betti numbers (homology formula)")
    add("taylor", cmd_taylor, "the Taylor resolution")
    add("minimize", cmd_minimize, "minimize the Taylor resolution by consecutive cancellations")
    add("resolve", cmd_resolve, "the atomic lattice resolution (minimal)")
    add("approx", cmd_approx, "maximal approximation of the atomic resolution")
    p = add("poset", cmd_poset, "the poset construction D/F")
    p.add_argument("--choices", help="JSON file with explicit homology bases")
    p = add("rlm", cmd_rlm, "the homology-approximation construction R/G")
    p.add_argument("--choices", help="JSON file with explicit homology bases and preimages")
    add("classify", cmd_classify, "ideal class membership table")
    add("verify", cmd_verify, "verify a resolution JSON dump")
    add("scarf", cmd_scarf, "the Scarf complex")
    add("bound", cmd_bound, "projective dimension bound (lattice rank)")
    p = add("random", cmd_random, "emit reproducible random ideals", with_input=False)
    p.add_argument("--r", type=int, required=True, help="number of generators")
    p.add_argument("--n", type=int, required=True, help="number of variables")
    p.add_argument("--maxdeg", type=int, default=3, help="maximum exponent")
    p.add_argument("--seed", type=int, default=0, help="RNG seed")
    p.add_argument("--count", type=int, default=1, help="how many ideals")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except IdealParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except json.JSONDecodeError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except (ValueError, KeyError, RuntimeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
