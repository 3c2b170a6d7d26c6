"""``modalagg`` command line.

JSON goes to stdout, diagnostics to stderr. Exit codes: 0 completed, 1 negative
verification result under ``--strict`` (or a failed self-check), 2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Any, Optional, Sequence

from .aggregation import (
    STRATEGIES,
    IssueOrder,
    Profile,
    horn_aggregate,
    majority_outcome,
    paradox_witness,
    run_seq_majority,
)
from .bench import run_bench
from .covering import (
    JudgmentPair,
    complete_judgment,
    is_consistent,
    is_minimally_inconsistent,
    verify_impossibility_frame,
)
from .errors import ModalAggError
from .kripke import KripkeModel, evaluate, indexed_truth, parse, reduce_agenda_formula
from .oracle import (
    brute_consistent,
    brute_min_inconsistent,
    check_axioms,
    dictator_rule,
    enumerate_rational_sets,
    lt0_context,
    majority_rule,
    seq_majority_rule,
)
from .residue import FRAME1, X_WORLD, FrameSpec, check_theorem_params
from .sampling import random_profile, rng_from

EXIT_OK, EXIT_NEGATIVE, EXIT_INVALID = 0, 1, 2
SEED_ENV = "MODALAGG_SEED"


class InputError(Exception):
    pass


def _int_list(text: Optional[str]) -> list[int]:
    if text is None or text.strip() == "":
        return []
    try:
        return [int(t) for t in text.split(",") if t.strip() != ""]
    except ValueError:
        raise InputError(f"expected a comma-separated integer list, got {text!r}") from None


def _load_json(path: str) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from None


def _spec(args) -> FrameSpec:
    if getattr(args, "frame", None):
        return FrameSpec.from_dict(_load_json(args.frame))
    if args.r is None or args.k is None or args.A is None:
        raise InputError("frame needs --r, --k and --A (or --frame FILE)")
    return FrameSpec(args.kind, args.r, args.k, _int_list(args.A))


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get(SEED_ENV)
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise InputError(f"{SEED_ENV} must be an integer, got {env!r}") from None


# --------------------------------------------------------------------------- #
# Table rendering: the JSON document flattened into path/value lines.


def flatten(doc: Any, prefix: str = "") -> list[tuple[str, Any]]:
    rows = []
    if isinstance(doc, dict) and doc:
        for key, val in doc.items():
            rows.extend(flatten(val, f"{prefix}.{key}" if prefix else str(key)))
    elif isinstance(doc, list) and doc and any(isinstance(v, (dict, list)) for v in doc):
        for i, val in enumerate(doc):
            rows.extend(flatten(val, f"{prefix}[{i}]"))
    else:
        rows.append((prefix, doc))
    return rows


def render_table(doc: Any) -> str:
    rows = flatten(doc)
    width = max((len(p) for p, _ in rows), default=0)
    return "\n".join(f"{p.ljust(width)}\t{json.dumps(v, ensure_ascii=False)}" for p, v in rows)


def parse_table(text: str) -> list[tuple[str, Any]]:
    out = []
    for line in text.splitlines():
        path, _, val = line.partition("\t")
        out.append((path.rstrip(), json.loads(val)))
    return out


def _emit(doc: dict, args) -> None:
    if args.format == "table":
        sys.stdout.write(render_table(doc) + "\n")
    else:
        sys.stdout.write(json.dumps(doc, ensure_ascii=False) + "\n")


def _pair_doc(jp: JudgmentPair, spec: FrameSpec) -> dict:
    return {**jp.to_dict(), "consistent": is_consistent(jp, spec)}


# --------------------------------------------------------------------------- #
# Commands


def cmd_check_frame(args) -> int:
    spec = _spec(args)
    report = verify_impossibility_frame(spec)
    _emit(report.to_dict(witnesses=args.witnesses), args)
    return EXIT_NEGATIVE if args.strict and not report.impossibility_frame else EXIT_OK


def cmd_consistent(args) -> int:
    spec = _spec(args)
    jp = JudgmentPair.of(spec.r, _int_list(args.accept), _int_list(args.reject))
    ok = is_consistent(jp, spec)
    doc = {"frame": spec.to_dict(), **jp.to_dict(), "consistent": ok}
    if args.complete:
        doc["completion"] = complete_judgment(jp, spec).to_dict() if ok else None
    _emit(doc, args)
    return EXIT_NEGATIVE if args.strict and not ok else EXIT_OK


def cmd_reduce(args) -> int:
    spec = _spec(args)
    phi = parse(args.formula)
    prop = reduce_agenda_formula(spec, phi)
    doc = {
        "frame": spec.to_dict(),
        "formula": phi.render(unicode=False),
        "proposition": {"index": prop.index, "negated": prop.negated, "text": str(prop)},
    }
    if args.V is not None:
        items = [t.strip() for t in args.V.split(",") if t.strip()]
        V = [X_WORLD if t == X_WORLD else int(t) for t in items] if items else []
        if spec.kind != FRAME1 and X_WORLD in V:
            raise InputError("world 'x' only exists on Frame 1")
        model = KripkeModel(spec, frozenset(v if v == X_WORLD else v % spec.r for v in V))
        direct = evaluate(model, spec.designated_world, phi)
        reduced = indexed_truth(spec, [v for v in V if v != X_WORLD], prop)
        doc["valuation"] = sorted((v for v in model.valuation), key=str)
        doc["evaluation"] = {"direct": direct, "reduced": reduced, "agree": direct == reduced}
    _emit(doc, args)
    return EXIT_OK


def _profile(args, spec: FrameSpec) -> tuple[Profile, Optional[int]]:
    sources = [args.counts is not None, args.profile is not None, args.random]
    if sum(sources) != 1:
        raise InputError("give exactly one of --counts, --profile FILE or --random")
    if args.counts is not None:
        if args.n is None:
            raise InputError("--counts needs --n")
        prof = Profile(args.n, _int_list(args.counts))
        prof.validate(spec)
        return prof, None
    if args.profile is not None:
        return Profile.from_dict(_load_json(args.profile), spec), None
    seed = _seed(args)
    return random_profile(spec, args.n or 3, rng_from(seed)), seed


def cmd_aggregate(args) -> int:
    spec = _spec(args)
    profile, seed = _profile(args, spec)
    doc: dict[str, Any] = {"frame": spec.to_dict(), "method": args.method, "n": profile.n}
    if seed is not None:
        doc["seed"] = seed
        doc["counts"] = list(profile.counts)
    if args.method == "horn":
        if args.order is not None or args.trace:
            raise InputError("--order and --trace only apply to --method seqmaj")
        V, outcome = horn_aggregate(profile, spec)
        doc["valuation"] = V.to_list()
    else:
        order = IssueOrder(tuple(_int_list(args.order))) if args.order is not None else None
        res = run_seq_majority(profile, spec, order, args.strategy, trace=args.trace)
        outcome = res.outcome
        doc["strategy"] = args.strategy
        doc["ops"] = res.ops
        if args.trace:
            doc["trace"] = [{"issue": s.issue, "rule": s.rule, "accepted": s.accepted} for s in res.trace]
    ok = outcome.is_complete() and is_consistent(outcome, spec)
    doc.update(outcome.to_dict())
    doc["consistent"] = ok
    _emit(doc, args)
    if not ok:
        print("error: aggregate output failed its consistency self-check", file=sys.stderr)
        return EXIT_NEGATIVE
    return EXIT_OK


def cmd_oracle(args) -> int:
    spec = _spec(args)
    doc: dict[str, Any] = {"frame": spec.to_dict(), "check": args.check}
    negative = False
    if args.check in ("consistent", "min-inconsistent"):
        jp = JudgmentPair.of(spec.r, _int_list(args.accept), _int_list(args.reject))
        doc.update(jp.to_dict())
        if args.check == "consistent":
            brute, fast = brute_consistent(jp, spec), is_consistent(jp, spec)
        else:
            brute, fast = brute_min_inconsistent(jp, spec), is_minimally_inconsistent(jp, spec)
        doc.update({"brute": brute, "fast": fast, "agree": brute == fast})
        negative = brute != fast
    elif args.check == "lt0":
        if args.u is None or args.v is None:
            raise InputError("lt0 needs --u and --v")
        ctx = lt0_context(args.u, args.v, spec)
        doc.update({
            "u": args.u % spec.r,
            "v": args.v % spec.r,
            "holds": ctx is not None,
            "context": None if ctx is None else [{"index": w, "positive": s} for w, s in ctx],
        })
        negative = ctx is None
    elif args.check == "rational-sets":
        sets = enumerate_rational_sets(spec)
        doc.update({"count": len(sets), "sets": [jp.plus.to_list() for jp in sets]})
    elif args.check == "axioms":
        n = args.n or 2
        if args.rule == "dictator":
            rule = dictator_rule(args.i0)
        elif args.rule == "majority":
            rule = majority_rule
        else:
            order = _int_list(args.order) if args.order is not None else None
            rule = seq_majority_rule(order, args.strategy)
        doc.update({"rule": args.rule, "n": n, "report": check_axioms(rule, spec, n).to_dict()})
    elif args.check == "paradox":
        if not check_theorem_params(spec).passed:
            raise InputError("paradox witness needs a frame in the theorem regime")
        wit = paradox_witness(spec, args.n or 3)
        doc.update({
            "profile": wit.profile.to_dict(),
            "core": wit.core.to_dict(),
            "majority": _pair_doc(wit.majority, spec),
        })
    _emit(doc, args)
    return EXIT_NEGATIVE if args.strict and negative else EXIT_OK


def cmd_bench(args) -> int:
    rs = _int_list(args.r_values)
    ks = _int_list(args.k_values)
    strategies = [s.strip() for s in args.strategies.split(",") if s.strip()]
    if not rs or not ks:
        raise InputError("bench needs nonempty --r-values and --k-values")
    bad = [s for s in strategies if s not in STRATEGIES]
    if bad:
        raise InputError(f"unknown strategies {bad}")
    report = run_bench(rs, ks, strategies, args.trials, args.n, _seed(args))
    doc = report.to_dict()
    if args.no_timing:
        for p in doc["points"]:
            p.pop("seconds_mean")
    _emit(doc, args)
    return EXIT_OK


# --------------------------------------------------------------------------- #


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default="json")

    frame = argparse.ArgumentParser(add_help=False)
    frame.add_argument("--kind", type=int, default=2, help="1 or 2 (default 2)")
    frame.add_argument("--r", type=int)
    frame.add_argument("--k", type=int)
    frame.add_argument("--A", help="comma-separated residues, e.g. 0,1,3")
    frame.add_argument("--frame", metavar="FILE", help="frame JSON instead of --kind/--r/--k/--A")

    parser = argparse.ArgumentParser(prog="modalagg", description="Modal judgment aggregation on cyclic frames.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-frame", parents=[common, frame], help="verify the impossibility-frame hypotheses")
    p.add_argument("--witnesses", action="store_true")
    p.add_argument("--strict", action="store_true")
    p.set_defaults(func=cmd_check_frame)

    p = sub.add_parser("consistent", parents=[common, frame], help="covering test for a judgment pair")
    p.add_argument("--accept", default="")
    p.add_argument("--reject", default="")
    p.add_argument("--complete", action="store_true", help="also print the canonical completion")
    p.add_argument("--strict", action="store_true")
    p.set_defaults(func=cmd_consistent)

    p = sub.add_parser("reduce", parents=[common, frame], help="reduce an agenda formula to ±P_w")
    p.add_argument("formula", help="e.g. BDBp or '!BBp'")
    p.add_argument("--V", help="valuation to evaluate both sides under, e.g. x,0,1")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("aggregate", parents=[common, frame], help="run horn or sequential majority")
    p.add_argument("--method", choices=("horn", "seqmaj"), default="seqmaj")
    p.add_argument("--strategy", choices=STRATEGIES, default="general")
    p.add_argument("--n", type=int)
    p.add_argument("--counts")
    p.add_argument("--profile", metavar="FILE")
    p.add_argument("--random", action="store_true", help="seeded random rational profile")
    p.add_argument("--seed", type=int)
    p.add_argument("--order", help="issue order permutation, e.g. 0,2,4,1,3,5")
    p.add_argument("--trace", action="store_true")
    p.set_defaults(func=cmd_aggregate)

    p = sub.add_parser("oracle", parents=[common, frame], help="brute-force cross-checks")
    p.add_argument("check", choices=("consistent", "min-inconsistent", "lt0", "rational-sets", "axioms", "paradox"))
    p.add_argument("--accept", default="")
    p.add_argument("--reject", default="")
    p.add_argument("--u", type=int)
    p.add_argument("--v", type=int)
    p.add_argument("--rule", choices=("dictator", "majority", "seqmaj"), default="majority")
    p.add_argument("--i0", type=int, default=1)
    p.add_argument("--n", type=int)
    p.add_argument("--order")
    p.add_argument("--strategy", choices=STRATEGIES, default="general")
    p.add_argument("--strict", action="store_true")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("bench", parents=[common], help="operation-count scaling of sequential majority")
    p.add_argument("--r-values", default="10000,100000")
    p.add_argument("--k-values", default="8")
    p.add_argument("--strategies", default="general,interval")
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--seed", type=int)
    p.add_argument("--no-timing", action="store_true", help="drop wall-clock fields (byte-stable output)")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, ModalAggError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
