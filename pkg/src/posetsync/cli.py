"""Command-line front end.

JSON in, JSON out.  Inputs are file paths or "-" for stdin; output goes
to --out or stdout.  Rationals travel as "p/q" strings.  Exit codes:
0 success or pass, 1 the decided property fails (a valid answer, for
example a poset that is not synchronizable), 2 malformed input, 3 an
enumeration cap was exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .classw import classify
from .corpus import corpus_doc
from .counterexample import DEFAULT_FENCE_CAP, build_counterexample, bundle_doc
from .errors import (CapExceeded, HypothesisError, InputError,
                     InternalCheckError)
from .oracle import check_verdict, realizably_monotone, verdict_doc
from .poset import parse_poset
from .rationals import format_rational
from .realize import (check_monotone, parse_realization, parse_system,
                      realization_doc, realize, verify_realization)
from .sync import MAXIMALS, MINIMALS, is_synchronizable, sync_reports

DIRECTIONS = (MINIMALS, MAXIMALS, "both")


def _read_doc(path):
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, "r", encoding="utf-8") as handle:
                text = handle.read()
    except OSError as err:
        raise InputError(f"cannot read {path!r}: {err}")
    try:
        return json.loads(text)
    except ValueError as err:
        raise InputError(f"invalid JSON in {path!r}: {err}")


def _jsonable(value):
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def _emit(doc, out):
    text = json.dumps(_jsonable(doc), indent=2, sort_keys=True) + "\n"
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)


def cmd_classify(args):
    poset = parse_poset(_read_doc(args.poset))
    _emit(classify(poset).doc(), args.out)
    return 0


def cmd_sync(args):
    poset = parse_poset(_read_doc(args.poset))
    if args.direction == "both":
        reports = sync_reports(poset)
        doc = {MINIMALS: reports[MINIMALS].doc(),
               MAXIMALS: reports[MAXIMALS].doc(),
               "synchronizable": reports["synchronizable"]}
        ok = reports["synchronizable"]
    else:
        report = is_synchronizable(poset, args.direction)
        doc, ok = report.doc(), report.synchronizable
    _emit(doc, args.out)
    return 0 if ok else 1


def cmd_realize(args):
    system = parse_system(_read_doc(args.system))
    try:
        check_monotone_or_refuse(system, args.cap_upsets)
        built = realize(system)
    except HypothesisError as err:
        _emit({"realized": False, "refusal": err.as_doc()}, args.out)
        return 1
    report = verify_realization(system, built)
    if not report["ok"]:
        raise InternalCheckError(
            f"a built realization failed its own verification: {report}")
    _emit({"realized": True, "realization": realization_doc(built)}, args.out)
    return 0


def check_monotone_or_refuse(system, cap_upsets):
    ok, detail = check_monotone(system, witness=True, cap_upsets=cap_upsets)
    if not ok:
        raise HypothesisError("system is not stochastically monotone",
                              **detail)


def cmd_counterexample(args):
    poset = parse_poset(_read_doc(args.poset))
    try:
        bundle = build_counterexample(poset, cap_fences=args.cap_fences,
                                      cap_maps=args.cap_maps)
    except HypothesisError as err:
        _emit({"built": False, "refusal": err.as_doc()}, args.out)
        return 1
    _emit(bundle_doc(bundle), args.out)
    return 0


def cmd_verify(args):
    system = parse_system(_read_doc(args.system))
    doc = _read_doc(args.check)
    if isinstance(doc, dict) and "realization" in doc:
        doc = doc["realization"]
    if not isinstance(doc, dict):
        raise InputError("the check document must be an object")
    if set(doc) == set(system.index_poset.elements):
        built = parse_realization(doc, system)
        report = verify_realization(system, built)
    elif "feasible" in doc:
        report = check_verdict(system.index_poset, system.target_poset,
                               system.measure_map(), doc,
                               cap_maps=args.cap_maps)
    else:
        raise InputError("the check document must be a realization (one "
                         'step map per index element) or a verdict (with '
                         '"feasible")')
    _emit(report, args.out)
    return 0 if report["ok"] else 1


def cmd_oracle(args):
    system = parse_system(_read_doc(args.system))
    feasible, payload = realizably_monotone(
        system.index_poset, system.target_poset, system.measure_map(),
        cap_maps=args.cap_maps)
    _emit(verdict_doc(system.index_poset, feasible, payload), args.out)
    return 0 if feasible else 1


def cmd_corpus(args):
    _emit(corpus_doc(args.seed), args.out)
    return 0


def _positive(text):
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("caps must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="posetsync",
        description="Monotonicity equivalence on tree-shaped posets: "
                    "classify, synchronize, realize, refute.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", default=None,
                       help="output path ('-' or omitted for stdout)")

    p = sub.add_parser("classify", help="branching-structure class of a poset")
    p.add_argument("poset", help="poset document path or '-'")
    common(p)
    p.set_defaults(run=cmd_classify)

    p = sub.add_parser("sync", help="locally connected spanning tree search")
    p.add_argument("poset", help="poset document path or '-'")
    p.add_argument("--direction", choices=DIRECTIONS, default="both")
    common(p)
    p.set_defaults(run=cmd_sync)

    p = sub.add_parser("realize",
                       help="monotone single-source realization of a system")
    p.add_argument("system", help="system document path or '-'")
    p.add_argument("--cap-upsets", type=_positive, default=20,
                   help="largest target for brute-force up-set comparison")
    common(p)
    p.set_defaults(run=cmd_realize)

    p = sub.add_parser("counterexample",
                       help="certified non-realizable system over a "
                            "non-synchronizable poset")
    p.add_argument("poset", help="poset document path or '-'")
    p.add_argument("--cap-fences", type=_positive, default=DEFAULT_FENCE_CAP)
    p.add_argument("--cap-maps", type=_positive, default=None)
    common(p)
    p.set_defaults(run=cmd_counterexample)

    p = sub.add_parser("verify",
                       help="re-check a realization or feasibility verdict")
    p.add_argument("system", help="system document path or '-'")
    p.add_argument("check", help="realization or verdict document path or '-'")
    p.add_argument("--cap-maps", type=_positive, default=None)
    common(p)
    p.set_defaults(run=cmd_verify)

    p = sub.add_parser("oracle",
                       help="brute-force feasibility decision for a system")
    p.add_argument("system", help="system document path or '-'")
    p.add_argument("--cap-maps", type=_positive, default=None)
    common(p)
    p.set_defaults(run=cmd_oracle)

    p = sub.add_parser("corpus", help="deterministic randomized test corpus")
    p.add_argument("--seed", type=int, default=0)
    common(p)
    p.set_defaults(run=cmd_corpus)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except InputError as err:
        _emit({"error": err.as_doc()}, getattr(args, "out", None))
        return 2
    except CapExceeded as err:
        _emit({"error": err.as_doc()}, getattr(args, "out", None))
        return 3


if __name__ == "__main__":
    sys.exit(main())
