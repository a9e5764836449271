"""Command line front end.

Every command prints one JSON document on stdout.  Exit codes: 0 success,
1 parse or usage error, 2 invariant violation, 3 suite failure, 4 suite
starved of non-vacuous trials.
"""
from __future__ import annotations

import argparse
import sys

from .errors import KrelError, ParseError, UnknownSuite
from .generators import GeneratorConfig
from .green import GreensBoundaryRelation, classify_boundary, weyl_family
from .harness import FAIL, STARVED, SUITE_IDS, replay, run_suite
from .relations import LinearRelation, adjoint, classify_relation, finite_eigenvalues
from .scalars import default_arithmetic, parse_scalar
from .serialize import (
    decode_document,
    dumps,
    encode_relation,
    instance,
    load_document,
)
from .spaces import classify_subspace

EXIT_OK, EXIT_PARSE, EXIT_INVARIANT, EXIT_FAIL, EXIT_STARVED = 0, 1, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def _load(path: str):
    return decode_document(load_document(path), default_arithmetic())


def _emit(doc) -> None:
    sys.stdout.write(dumps(doc) + "\n")


def cmd_classify(args) -> int:
    kind, value = _load(args.file)
    if kind == "gbr":
        out = classify_boundary(value).as_dict()
    elif kind == "relation":
        out = classify_relation(value).as_dict()
        if value.source is value.target:
            out["eigenvalues"] = finite_eigenvalues(value).as_dict()
    elif kind == "subspace":
        out = classify_subspace(value.ambient, value).as_dict()
    else:
        pos, neg = value.signature
        out = {"dim": value.dim, "positiveIndex": pos, "negativeIndex": neg, "hilbert": neg == 0}
    _emit({"kind": kind, **out})
    return EXIT_OK


def cmd_adjoint(args) -> int:
    kind, value = _load(args.file)
    if isinstance(value, GreensBoundaryRelation):
        value = value.gamma
    if not isinstance(value, LinearRelation):
        raise ParseError("adjoint needs a relation or gbr document", kind=kind)
    _emit(instance("relation", encode_relation(adjoint(value))))
    return EXIT_OK


def cmd_weyl(args) -> int:
    kind, value = _load(args.file)
    if not isinstance(value, GreensBoundaryRelation):
        raise ParseError("weyl needs a gbr document", kind=kind)
    zs = [parse_scalar(z) for z in args.z]
    _emit([weyl_family(value, z).as_dict() for z in zs])
    return EXIT_OK


def _report_exit(status: str) -> int:
    return {FAIL: EXIT_FAIL, STARVED: EXIT_STARVED}.get(status, EXIT_OK)


def cmd_suite(args) -> int:
    if args.suite not in SUITE_IDS:
        raise UnknownSuite(f"unknown suite {args.suite!r}", known=list(SUITE_IDS))
    try:
        cfg = GeneratorConfig(seed=args.seed, maxDim=args.max_dim, kappa=args.kappa,
                              entryBound=args.entry_bound, trials=args.trials)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    rep = run_suite(args.suite, cfg, workers=args.workers, float_eps=args.float_eps)
    if args.counterexample and rep.firstCounterexample is not None:
        with open(args.counterexample, "w", encoding="utf-8") as fh:
            fh.write(dumps(rep.firstCounterexample) + "\n")
    _emit(rep.as_dict(timing=args.timing))
    return _report_exit(rep.status)


def cmd_replay(args) -> int:
    rep = replay(load_document(args.file))
    _emit(rep.as_dict(timing=args.timing))
    return _report_exit(rep.status)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="krel", description="Linear relations between Krein spaces and boundary relations.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("classify", help="flags of a space, subspace, relation or boundary relation")
    c.add_argument("file")
    c.set_defaults(func=cmd_classify)

    a = sub.add_parser("adjoint", help="adjoint relation as a relation document")
    a.add_argument("file")
    a.set_defaults(func=cmd_adjoint)

    w = sub.add_parser("weyl", help="Weyl family values of a boundary relation")
    w.add_argument("file")
    w.add_argument("--z", nargs="+", required=True, help='points such as "0+1*i"')
    w.set_defaults(func=cmd_weyl)

    s = sub.add_parser("suite", help="run a property suite")
    s.add_argument("--suite", required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--trials", type=int, default=500)
    s.add_argument("--max-dim", type=int, default=6)
    s.add_argument("--kappa", type=int, default=None)
    s.add_argument("--entry-bound", type=int, default=8)
    s.add_argument("--float-eps", type=float, default=None, help="run in float mode with this tolerance")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--counterexample", help="write the first counterexample to this file")
    s.add_argument("--timing", action="store_true", help="include elapsed seconds")
    s.set_defaults(func=cmd_suite)

    r = sub.add_parser("replay", help="re-check a stored counterexample")
    r.add_argument("file")
    r.add_argument("--timing", action="store_true")
    r.set_defaults(func=cmd_replay)
    return p


def _error_code(exc: KrelError) -> int:
    if isinstance(exc, (ParseError, UnknownSuite)):
        return EXIT_PARSE
    return EXIT_INVARIANT


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except KrelError as exc:
        _emit(exc.to_json())
        return _error_code(exc)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        # malformed numbers slipping past the document decoder
        _emit({"error": "ParseError", "message": str(exc)})
        return EXIT_PARSE


def main_exit() -> None:
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    main_exit()
