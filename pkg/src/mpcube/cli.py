"""Command-line entry point.

JSON goes to stdout, log messages to stderr.  Exit status: 0 on success or
all checks passing, 1 on a failed check or broken model invariant, 2 on
usage and parse errors.
"""
from __future__ import annotations

import argparse
import json
import logging
import random
import sys
from typing import Optional, Sequence

from . import epistemics, measurement
from .core import CATALOG, all_joint_states, evaluate_observable, parse_joint
from .epistemics import point_state
from .measurement import NONLOCAL_TABLE, mutated_table, parse_setting
from .quantum import quantum_signature, verify_quantum_square
from .scenario import ScenarioError, load
from .sequences import Context, ContextError, RepeatabilityError, assign_values, orders_covering, run_exact, run_sampled
from .verifier import (
    CONTEXT_ORDER,
    NONCONTEXTUAL_BOUND,
    NONCONTEXTUAL_BOUND_PROVENANCE,
    classical_signature,
    exhaustive_verify,
    square_products,
    verification_document,
    witness,
)

log = logging.getLogger("mpcube")

FIG7_STATE = "(+,-,+)x(+,+,-)"
FIG7_ORDERS = (("XX&YY", "ZZ&YY"), ("ZZ&YY", "XX&YY"))


class UsageError(Exception):
    pass


def _emit(doc, args) -> None:
    indent = args.json_indent if args.json_indent > 0 else None
    sys.stdout.write(json.dumps(doc, indent=indent, ensure_ascii=False) + "\n")


def cmd_run(args) -> int:
    try:
        scenarios = load(args.scenario)
    except ScenarioError as exc:
        raise UsageError(str(exc)) from None
    out = {"mode": args.mode}
    if args.mode == "sample":
        seed = 0 if args.seed is None else args.seed
        if args.seed is None:
            log.info("no --seed given, using 0")
        out["seed"] = seed
        rng = random.Random(seed)
    results = []
    for sc in scenarios:
        entry = sc.to_json()
        if args.mode == "exact":
            traces = run_exact(sc.initial, sc.settings)
            entry["traces"] = [t.to_json() for t in traces]
        else:
            entry["trace"] = run_sampled(sc.initial, sc.settings, rng).to_json()
        results.append(entry)
    out["scenarios"] = results
    _emit(out, args)
    return 0


def cmd_fig7(args) -> int:
    w = parse_joint(FIG7_STATE)
    runs = []
    for order in FIG7_ORDERS:
        settings = [parse_setting(s) for s in order]
        (trace,) = run_exact(point_state(w), settings)
        values = assign_values(Context.C3, trace)
        runs.append({
            "order": list(order),
            "outcomes": [str(o) for o in trace.outcomes],
            "post_states": [s.post.name for s in trace.steps],
            "values": {o.name: v for o, v in values.values.items()},
        })
    faithful = {o.name: evaluate_observable(o, w) for o in Context.C3.observables}
    _emit({"initial": FIG7_STATE, "runs": runs, "faithful_values": faithful}, args)
    return 0


def _table(args):
    return mutated_table() if getattr(args, "mutate_table", False) else NONLOCAL_TABLE


def cmd_verify(args) -> int:
    if args.max_len < 2:
        raise UsageError("--max-len must be at least 2")
    if args.workers < 1:
        raise UsageError("--workers must be at least 1")
    table = _table(args)
    reports = exhaustive_verify(max_len=args.max_len, workers=args.workers, table=table, timing=args.timing)
    doc = verification_document(reports)
    doc["constants"] = {
        "noncontextual_bound": NONCONTEXTUAL_BOUND,
        "noncontextual_bound_provenance": NONCONTEXTUAL_BOUND_PROVENANCE,
    }
    for r in reports:
        log.info("%s: %s (%d cases)", r.check, "pass" if r.passed else "FAIL", r.universe_size)
    _emit(doc, args)
    return 0 if doc["pass"] else 1


def _order_arg(text: Optional[str], context: Context):
    if text is None:
        return None
    try:
        order = tuple(parse_setting(s) for s in text.split(",") if s.strip())
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if not order or not all(s in context.family for s in order):
        raise UsageError(f"{text!r} is not a valid order for {context.value}")
    return order


def cmd_square(args) -> int:
    orders = {}
    for ctx, text in ((Context.C3, args.c3_order), (Context.R3, args.r3_order)):
        order = _order_arg(text, ctx)
        if order is not None:
            orders[ctx] = order
    if args.state is None:
        states = all_joint_states()
    else:
        try:
            states = [parse_joint(args.state)]
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    results = []
    for w in states:
        res = square_products(w, orders)
        results.append({"initial": str(w), **res.to_json()})
    _emit({"orders": {c.value: [s.label for s in o] for c, o in orders.items()}, "results": results}, args)
    return 0


def cmd_witness(args) -> int:
    per_state = []
    values = set()
    for w in all_joint_states():
        chis = set()
        for c3 in orders_covering(Context.C3):
            for r3 in orders_covering(Context.R3):
                chis.add(square_products(w, {Context.C3: c3, Context.R3: r3}).witness_value)
        per_state.append({"initial": str(w), "witness": sorted(chis)})
        values |= chis
    doc = {
        "witness_values": sorted(values),
        "noncontextual_bound": NONCONTEXTUAL_BOUND,
        "noncontextual_bound_provenance": NONCONTEXTUAL_BOUND_PROVENANCE,
        "violates_bound": min(values) > NONCONTEXTUAL_BOUND,
        "per_initial_state": per_state,
    }
    _emit(doc, args)
    return 0


def cmd_quantum(args) -> int:
    report = verify_quantum_square()
    quantum = quantum_signature()
    classical = classical_signature()
    doc = {
        "report": report.to_json(),
        "signatures": {
            c.value: {"quantum": quantum[c], "classical": classical[c]} for c in CONTEXT_ORDER
        },
        "signatures_match": quantum == classical,
        "witness": {"quantum": witness(quantum), "classical": witness(classical)},
    }
    _emit(doc, args)
    return 0 if report.passed and doc["signatures_match"] else 1


def cmd_enumerate(args) -> int:
    states = {}
    for name in epistemics.JOINT_NAMES:
        states[name] = [str(s) for s in epistemics.canonical_state(name).support_states()]
    for name in epistemics.ELEMENTARY_NAMES:
        states[name] = [str(s) for s in epistemics.canonical_state(name).support_states()]
    doc = {
        "observables": [o.name for o in CATALOG],
        "settings": {
            "elementary": [s.label for s in measurement.ELEMENTARY_SETTINGS],
            "local": [s.label for s in measurement.LOCAL_SETTINGS],
            "nonlocal": [s.label for s in measurement.NONLOCAL_SETTINGS],
        },
        "post_state_tables": {
            sid: {f"({'+' if a > 0 else '-'},{'+' if b > 0 else '-'})": name for (a, b), name in row.items()}
            for sid, row in NONLOCAL_TABLE.items()
        },
        "canonical_states": states,
        "contexts": {
            c.value: {"observables": [o.name for o in c.observables], "family": [s.label for s in c.family]}
            for c in CONTEXT_ORDER
        },
    }
    _emit(doc, args)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json-indent", type=int, default=2, help="JSON indent; 0 for compact output")
    common.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")

    parser = argparse.ArgumentParser(prog="mpcube", description="Two-cube contextual toy model and magic-square verifier.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", parents=[common], help="execute a scenario file")
    p.add_argument("scenario")
    p.add_argument("--mode", choices=("exact", "sample"), default="exact")
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("fig7", parents=[common], help="order dependence of sequential values")
    p.set_defaults(func=cmd_fig7)

    p = sub.add_parser("verify", parents=[common], help="run the exhaustive verification suite")
    p.add_argument("--max-len", type=int, default=4)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--timing", action="store_true", help="fill runtime_ms (makes output run-dependent)")
    p.add_argument("--mutate-table", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("square", parents=[common], help="context products for one or all initial states")
    p.add_argument("--state", default=None, help="joint ontic literal, e.g. '(+,-,+)x(+,+,-)'")
    p.add_argument("--c3-order", default=None, help="two of XX&YY,XX&ZZ,ZZ&YY, comma-separated")
    p.add_argument("--r3-order", default=None, help="two of XY&YX,YX&ZZ,XY&ZZ, comma-separated")
    p.set_defaults(func=cmd_square)

    p = sub.add_parser("witness", parents=[common], help="witness value over all initial states and orders")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("quantum", parents=[common], help="Pauli-operator square and signature comparison")
    p.set_defaults(func=cmd_quantum)

    p = sub.add_parser("enumerate", parents=[common], help="list observables, settings, states and contexts")
    p.set_defaults(func=cmd_enumerate)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except (UsageError, ContextError) as exc:
        log.error("%s", exc)
        return 2
    except (RepeatabilityError, AssertionError) as exc:
        log.error("model invariant violated: %s", exc)
        return 1


if __name__ == "__main__":
    sys.exit(main())
