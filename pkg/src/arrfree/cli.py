"""Command-line interface.

Every subcommand prints one JSON document on stdout and exits 0 on
success, 1 on a negative verdict (not accurate, no certificate, no flag),
2 on errors, and 3 when a resource cap was hit (with a partial report).
Output is canonical (sorted keys), so identical inputs give identical
bytes.
"""

from __future__ import annotations

import argparse
import json
import sys

from .accuracy import (NOT_ACCURATE, check_accuracy, scan_unique_witnesses)
from .arrangement import (CapExceededError, build_lattice,
                          characteristic_polynomial, flat_from_hyperplanes,
                          localization, restriction)
from .deformations import (build_catalan, build_ideal_shi, build_shi,
                           build_shi_minus, shi_accuracy_witnesses,
                           shi_pipeline_certificate)
from .fields import QQ
from .graphic import (chromatic_polynomial, fixture_graph, graphic_accuracy,
                      graphic_arrangement, perfect_elimination_order,
                      exponents_from_elimination)
from .intermediate import (IntermediateLabel, bruteforce_cross_check,
                           build_intermediate, intermediate_exponents,
                           localization_fixture_check, symbolic_accuracy)
from .matfree import (MATCertificate, MATViolation, certify_partition,
                      search_mat_partition, accuracy_witnesses)
from .parsing import (arrangement_from_json, arrangement_to_json,
                      flat_to_json, graph_from_json, graph_to_json,
                      parse_linear_forms)
from .rootsys import (build_root_system, enumerate_ideals, full_ideal,
                      ideal_closure, ideal_from_indices, ideal_arrangement,
                      parse_type, root_height_partition, weyl_arrangement)


def _emit(payload, code=0):
    sys.stdout.write(json.dumps(payload, sort_keys=True,
                                separators=(",", ":")) + "\n")
    return code


def _load_arrangement(args):
    if getattr(args, "file", None):
        with open(args.file) as fh:
            return arrangement_from_json(json.load(fh))
    if getattr(args, "forms", None):
        return parse_linear_forms(args.forms, dim=getattr(args, "dim", None))
    raise ValueError("need --file or --forms")


def _load_graph(args):
    if getattr(args, "fixture", None):
        return fixture_graph(args.fixture)
    with open(args.file) as fh:
        return graph_from_json(json.load(fh))


def _flat_arg(arr, args):
    indices = [int(x) for x in args.hyperplanes.split(",") if x.strip()]
    return flat_from_hyperplanes(arr, indices)


def _ideal_arg(rs, args):
    if args.ideal:
        with open(args.ideal) as fh:
            data = json.load(fh)
        if "roots" in data:
            coeff_index = {r.simple_coeffs: i
                           for i, r in enumerate(rs.positive_roots)}
            idx = [coeff_index[tuple(v)] for v in data["roots"]]
            return ideal_from_indices(rs, idx)
        coeff_index = {r.simple_coeffs: i
                       for i, r in enumerate(rs.positive_roots)}
        gens = [coeff_index[tuple(v)] for v in data["generators"]]
        return ideal_closure(rs, gens)
    return full_ideal(rs)


def _violation_json(v: MATViolation):
    return {"violation": {"step": v.step, "condition": v.condition,
                          "detail": v.detail, "offender": v.offender}}


def _cert_payload(cert: MATCertificate):
    return {"certificate": cert.to_json(),
            "arrangement": arrangement_to_json(cert.target)}


# ---------------------------------------------------------------------------
# handlers

def cmd_arr(args):
    arr = _load_arrangement(args)
    if args.action == "charpoly":
        chi = characteristic_polynomial(arr, max_flats=args.max_flats)
        return _emit({"dim": arr.dim, "hyperplanes": len(arr),
                      "charpoly": list(chi)})
    if args.action == "lattice":
        lat = build_lattice(arr, max_rank=args.max_rank,
                            max_flats=args.max_flats)
        top = lat.built_rank + 1
        levels = [[flat_to_json(arr, f) for f in lat.flats(r)]
                  for r in range(top)]
        return _emit({"arrangement": arrangement_to_json(arr),
                      "level_sizes": [len(level) for level in levels],
                      "flats": levels})
    flat = _flat_arg(arr, args)
    if args.action == "restrict":
        out = restriction(arr, flat)
    else:
        out = localization(arr, flat)
    return _emit({"flat": flat_to_json(arr, flat),
                  "arrangement": arrangement_to_json(out)})


def cmd_weyl(args):
    arr = weyl_arrangement(parse_type(args.type))
    return _emit(arrangement_to_json(arr))


def cmd_ideal(args):
    rstype = parse_type(args.type)
    rs = build_root_system(rstype)
    if args.action == "enumerate":
        ideals = enumerate_ideals(rstype, max_positive_roots=args.max_roots)
        return _emit({"type": str(rstype), "count": len(ideals),
                      "ideals": [[list(rs.positive_roots[i].simple_coeffs)
                                  for i in ideal.roots]
                                 for ideal in ideals]})
    ideal = _ideal_arg(rs, args)
    arr = ideal_arrangement(rstype, ideal)
    return _emit({"type": str(rstype),
                  "roots": [list(rs.positive_roots[i].simple_coeffs)
                            for i in ideal.roots],
                  "arrangement": arrangement_to_json(arr)})


def _certificate_for(args):
    if args.type:
        rstype = parse_type(args.type)
        rs = build_root_system(rstype)
        ideal = _ideal_arg(rs, args)
        arr = ideal_arrangement(rstype, ideal)
        blocks = root_height_partition(rstype, ideal)
        return arr, certify_partition(arr, blocks)
    arr = _load_arrangement(args)
    blocks = [tuple(b) for b in json.loads(args.partition)]
    return arr, certify_partition(arr, blocks)


def cmd_mat(args):
    if args.action == "certify":
        arr, cert = _certificate_for(args)
        if isinstance(cert, MATViolation):
            return _emit(_violation_json(cert), 1)
        return _emit(_cert_payload(cert))
    if args.action == "search":
        arr = _load_arrangement(args)
        cert = search_mat_partition(arr, strategy="exhaustive",
                                    max_hyperplanes=args.max_hyperplanes)
        if cert is None:
            return _emit({"partition": None}, 1)
        return _emit(_cert_payload(cert))
    arr, cert = _certificate_for(args)
    if isinstance(cert, MATViolation):
        return _emit(_violation_json(cert), 1)
    wmap = accuracy_witnesses(cert, arr, max_flats=args.max_flats)
    wit = {str(q): {"block": k, "flat": flat_to_json(arr, flat),
                    "exponents": list(exps)}
           for q, (k, flat, exps) in sorted(wmap.items())}
    return _emit({"certificate": cert.to_json(), "witnesses": wit})


def cmd_accuracy(args):
    arr = _load_arrangement(args)
    exponents = tuple(int(x) for x in args.exponents.split(","))
    if args.action == "check":
        report = check_accuracy(arr, exponents, mode=args.mode,
                                strategy=args.strategy,
                                max_flats=args.max_flats)
        code = 0 if report.verdict == "accurate" else 1
        if report.verdict == "inconclusive":
            code = 3
        return _emit(report.to_json(arr.field), code)
    flats = scan_unique_witnesses(arr, exponents, args.d,
                                  max_flats=args.max_flats)
    return _emit({"d": args.d,
                  "witnesses": [flat_to_json(arr, f) for f in flats]})


def cmd_deform(args):
    rstype = parse_type(args.type)
    rs = build_root_system(rstype)
    if args.catalan:
        ideal = full_ideal(rs)
    elif args.ideal:
        ideal = _ideal_arg(rs, args)
    else:
        ideal = None
    if args.action == "build":
        if args.minus_simples:
            deform = build_shi_minus(rstype, args.k,
                                     tuple(range(rs.rank)))
        elif ideal is None:
            deform = build_shi(rstype, args.k)
        else:
            deform = build_ideal_shi(rstype, args.k, ideal)
        payload = {"arrangement": arrangement_to_json(deform.arrangement)}
        if args.certify:
            if args.minus_simples:
                raise ValueError("--minus-simples has no certified pipeline")
            _, cert = shi_pipeline_certificate(rstype, args.k, ideal)
            payload["certificate"] = cert.to_json()
        return _emit(payload)
    if args.action == "certify":
        deform, cert = shi_pipeline_certificate(rstype, args.k, ideal)
        return _emit(_cert_payload(cert))
    report = shi_accuracy_witnesses(rstype, args.k, ideal)
    field = QQ
    return _emit(report.to_json(field))


def cmd_graph(args):
    g = _load_graph(args)
    if args.action == "build":
        return _emit({"graph": graph_to_json(g),
                      "arrangement": arrangement_to_json(
                          graphic_arrangement(g))})
    if args.action == "fixture":
        return _emit(graph_to_json(g))
    if args.action == "chromatic":
        return _emit({"graph": graph_to_json(g),
                      "chromatic": list(chromatic_polynomial(g))})
    report = graphic_accuracy(g, mode=args.mode)
    order = perfect_elimination_order(g)
    payload = report.to_json(QQ)
    payload["chordal"] = order is not None
    if order is not None:
        payload["elimination_order"] = list(order)
        payload["exponents"] = list(exponents_from_elimination(g, order))
    return _emit(payload, 0 if report.verdict == "accurate" else 1)


def cmd_inter(args):
    if args.action == "localization-fixture":
        return _emit(localization_fixture_check(args.l, args.r))
    label = IntermediateLabel(args.l, args.r, args.k)
    payload = {"label": str(label), "hyperplanes":
               len(build_intermediate(label)) if args.with_arrangement else
               label.k + label.r * label.l * (label.l - 1) // 2,
               "exponents": list(intermediate_exponents(label))}
    verdicts = {}
    if args.check in ("symbolic", "both"):
        verdicts["symbolic"] = symbolic_accuracy(label)
    if args.check in ("bruteforce", "both"):
        verdicts["bruteforce"] = bruteforce_cross_check(
            label, max_flats=args.max_flats)
    payload["verdicts"] = verdicts
    negative = any(v == NOT_ACCURATE for v in verdicts.values())
    return _emit(payload, 1 if negative else 0)


# ---------------------------------------------------------------------------

def _common(parser):
    parser.add_argument("--max-flats", type=int, default=2_000_000)
    parser.add_argument("--max-rank", type=int, default=None)
    parser.add_argument("--threads", type=int, default=1,
                        help="accepted for compatibility; execution is "
                             "sequential and output is identical regardless")


def _arrangement_source(parser):
    parser.add_argument("--file", help="arrangement JSON file")
    parser.add_argument("--forms", help="semicolon-separated linear forms")
    parser.add_argument("--dim", type=int, default=None)


def build_parser():
    top = argparse.ArgumentParser(prog="arrfree")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("arr")
    p.add_argument("action",
                   choices=["charpoly", "lattice", "restrict", "localize"])
    _arrangement_source(p)
    p.add_argument("--hyperplanes", default="",
                   help="comma-separated hyperplane indices defining a flat")
    _common(p)
    p.set_defaults(func=cmd_arr)

    p = sub.add_parser("weyl")
    p.add_argument("action", choices=["build"])
    p.add_argument("--type", required=True)
    _common(p)
    p.set_defaults(func=cmd_weyl)

    p = sub.add_parser("ideal")
    p.add_argument("action", choices=["enumerate", "arrangement"])
    p.add_argument("--type", required=True)
    p.add_argument("--ideal", help="ideal JSON file")
    p.add_argument("--max-roots", type=int, default=30)
    _common(p)
    p.set_defaults(func=cmd_ideal)

    p = sub.add_parser("mat")
    p.add_argument("action", choices=["certify", "search", "witnesses"])
    _arrangement_source(p)
    p.add_argument("--type", help="root system type (uses the root-height "
                                  "partition of the ideal/Weyl arrangement)")
    p.add_argument("--ideal", help="ideal JSON file")
    p.add_argument("--partition", help="JSON list of index blocks")
    p.add_argument("--max-hyperplanes", type=int, default=16)
    _common(p)
    p.set_defaults(func=cmd_mat)

    p = sub.add_parser("accuracy")
    p.add_argument("action", choices=["check", "scan"])
    _arrangement_source(p)
    p.add_argument("--exponents", required=True)
    p.add_argument("--mode", choices=["exact", "almost"], default="exact")
    p.add_argument("--strategy", choices=["witness_first", "exhaustive"],
                   default="witness_first")
    p.add_argument("--d", type=int, default=None)
    _common(p)
    p.set_defaults(func=cmd_accuracy)

    p = sub.add_parser("deform")
    p.add_argument("action", choices=["build", "certify", "witnesses"])
    p.add_argument("--type", required=True)
    p.add_argument("-k", type=int, default=1)
    p.add_argument("--ideal", help="ideal JSON file")
    p.add_argument("--catalan", action="store_true")
    p.add_argument("--minus-simples", action="store_true")
    p.add_argument("--certify", action="store_true")
    _common(p)
    p.set_defaults(func=cmd_deform)

    p = sub.add_parser("graph")
    p.add_argument("action",
                   choices=["build", "accuracy", "chromatic", "fixture"])
    p.add_argument("--file", help="graph JSON file")
    p.add_argument("--fixture", choices=["G", "G_prime"], dest="fixture")
    p.add_argument("--which", choices=["G", "G_prime"], dest="fixture")
    p.add_argument("--mode", choices=["exact", "almost"], default="exact")
    _common(p)
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("inter")
    p.add_argument("action", choices=["check", "localization-fixture"])
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--symbolic", dest="check", action="store_const",
                   const="symbolic")
    p.add_argument("--bruteforce", dest="check", action="store_const",
                   const="bruteforce")
    p.add_argument("--both", dest="check", action="store_const", const="both")
    p.add_argument("--with-arrangement", action="store_true")
    _common(p)
    p.set_defaults(func=cmd_inter, check="symbolic")

    return top


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CapExceededError as exc:
        return _emit({"error": "cap-exceeded", "detail": str(exc),
                      "partial_level_sizes": list(exc.level_sizes)}, 3)
    except (ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        return _emit({"error": exc.__class__.__name__, "detail": str(exc)}, 2)


if __name__ == "__main__":
    sys.exit(main())
