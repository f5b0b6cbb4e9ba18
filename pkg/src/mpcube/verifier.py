"""Exhaustive checks that the two-cube model reproduces the magic-square structure.

Every sweep enumerates its whole universe (64 initial ontic states times
the relevant setting sequences) with exact arithmetic, so a passing report
is a proof by enumeration rather than a statistical estimate.

Repeatability sweeps default to sequences of length up to 4.  Length 2
already suffices: each post-state of a table family is an eigenstate of
every setting in that family, so after the first step the state never
changes again.  The longer cap only guards against implementation bugs.
"""
from __future__ import annotations

import itertools
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Optional, Sequence

from .core import JointOnticState, all_joint_states, all_ontic_states, evaluate_observable, parse_joint
from .epistemics import (
    DIRECT_PATTERNS,
    SWAPPED_PATTERNS,
    canonical_state,
    point_state,
)
from .measurement import (
    ELEMENTARY_SETTINGS,
    JOINT_SETTINGS,
    LOCAL_SETTINGS,
    NONLOCAL_SETTINGS,
    NONLOCAL_TABLE,
    TABLE_1_FAMILY,
    TABLE_2_FAMILY,
    MeasurementSetting,
    PostStateTable,
    measure,
    measure_any,
    outcome_of,
    outcomes_for,
    post_state_for,
)
from .sequences import (
    Context,
    ContextError,
    RepeatabilityError,
    ValueAssignment,
    assign_values,
    context_product,
    orders_covering,
    run_exact,
    trace_values,
)

CONTEXT_ORDER = (Context.R1, Context.R2, Context.R3, Context.C1, Context.C2, Context.C3)

# Product each context must yield: +1 everywhere except column C3.
EXPECTED_PRODUCTS: dict[Context, int] = {c: (-1 if c is Context.C3 else 1) for c in CONTEXT_ORDER}

# Largest value of the witness any noncontextual value assignment can reach.
NONCONTEXTUAL_BOUND = 4
NONCONTEXTUAL_BOUND_PROVENANCE = (
    "external constant: noncontextual bound of the state-independent "
    "magic-square inequality from the contextuality literature; not derived here"
)


@dataclass
class VerificationReport:
    check: str
    universe: str
    universe_size: int
    counterexamples: list = field(default_factory=list)
    runtime_ms: Optional[float] = None
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def to_json(self) -> dict:
        out = {
            "check": self.check,
            "universe": self.universe,
            "universe_size": self.universe_size,
            "pass": self.passed,
            "counterexamples": self.counterexamples,
            "runtime_ms": self.runtime_ms,
        }
        if self.details:
            out["details"] = self.details
        return out


@dataclass
class SquareResult:
    products: dict[Context, int]
    assignments: dict[Context, ValueAssignment]
    witness_value: int

    def to_json(self) -> dict:
        return {
            "products": {c.value: self.products[c] for c in CONTEXT_ORDER},
            "values": {c.value: self.assignments[c].to_json()["values"] for c in CONTEXT_ORDER},
            "witness": self.witness_value,
        }


def witness(products: Mapping[Context, int], expected: Mapping[Context, int] = EXPECTED_PRODUCTS) -> int:
    """Sum of context products, each weighted by the sign it is constrained to.

    With the default constraints this is the five ``+1`` products minus the
    C3 product, so 6 is the maximum.
    """
    return sum(expected[c] * products[c] for c in CONTEXT_ORDER)


def _timed(fn: Callable[..., VerificationReport], timing: bool, *args, **kwargs) -> VerificationReport:
    start = time.perf_counter()
    report = fn(*args, **kwargs)
    if timing:
        report.runtime_ms = round((time.perf_counter() - start) * 1000, 3)
    return report


def _map(fn, items, workers: int):
    if workers <= 1:
        return [fn(i) for i in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * workers))))


# -- repeatability ---------------------------------------------------------


def _sequences(family: Sequence[MeasurementSetting], max_len: int):
    for n in range(1, max_len + 1):
        yield from itertools.product(family, repeat=n)


def _repeatability_for_initial(args) -> list[dict]:
    index, family, max_len, table = args
    w = JointOnticState.decode(index)
    start = point_state(w)
    found = []
    for seq in _sequences(family, max_len):
        for trace in run_exact(start, seq, table):
            step1 = trace.steps[0]
            faithful = outcome_of(step1.setting, w)
            if step1.outcome != faithful:
                found.append({
                    "initial": str(w),
                    "sequence": [s.label for s in seq],
                    "observable": None,
                    "values": [str(faithful), str(step1.outcome)],
                    "outcomes": [str(o) for o in trace.outcomes],
                    "reason": "first outcome not faithful",
                })
                break
            _, conflicts = trace_values(trace)
            if conflicts:
                obs, first, at, new = conflicts[0]
                found.append({
                    "initial": str(w),
                    "sequence": [s.label for s in seq],
                    "observable": obs.name,
                    "values": [first, new],
                    "step": at,
                    "outcomes": [str(o) for o in trace.outcomes],
                    "probability": str(trace.probability),
                })
                break
    return found


def check_repeatability(
    family: Sequence[MeasurementSetting],
    max_len: int = 4,
    table: PostStateTable = NONLOCAL_TABLE,
    workers: int = 1,
) -> VerificationReport:
    """Enumerate all 64 point states and all sequences over ``family`` up to ``max_len``.

    Fails on any trace in which some observable is revealed twice with
    different values, or whose first outcome is not faithful to the initial
    ontic state.  At most one counterexample (the first offending trace) is
    recorded per (initial state, sequence).
    """
    if max_len < 2:
        raise ValueError(f"max_len must be at least 2, got {max_len}")
    family = tuple(dict.fromkeys(family))
    n_seq = sum(len(family) ** n for n in range(1, max_len + 1))
    labels = ",".join(s.label for s in family)
    found = _map(_repeatability_for_initial, [(i, family, max_len, table) for i in range(64)], workers)
    cex = sorted(itertools.chain.from_iterable(found), key=lambda c: (_index_of(c["initial"]), c["sequence"]))
    return VerificationReport(
        check=f"repeatability[{labels}]",
        universe=f"64 initial states x {n_seq} sequences (length 1..{max_len})",
        universe_size=64 * n_seq,
        counterexamples=cex,
    )


def _index_of(literal: str) -> int:
    return parse_joint(literal).encode()


# -- eigenstates -----------------------------------------------------------


def check_eigenstates(table: PostStateTable = NONLOCAL_TABLE) -> VerificationReport:
    """Re-measure each (setting, outcome) post-state with the same setting."""
    cex = []
    cases = 0
    for s in NONLOCAL_SETTINGS + LOCAL_SETTINGS:
        for o in outcomes_for(s):
            cases += 1
            post = post_state_for(s, o, table)
            branches = measure(s, post, table)
            ok = (
                len(branches) == 1
                and branches[0].outcome == o
                and branches[0].probability == 1
                and branches[0].post == post
            )
            if not ok:
                cex.append({
                    "setting": s.label,
                    "outcome": str(o),
                    "post": post.name,
                    "branches": [{"outcome": str(b.outcome), "probability": str(b.probability)} for b in branches],
                })
    return VerificationReport(
        check="eigenstates",
        universe="6 non-local x 4 outcomes + 9 local x 4 outcomes",
        universe_size=cases,
        counterexamples=cex,
    )


# -- first-step faithfulness -----------------------------------------------


def check_faithfulness(table: PostStateTable = NONLOCAL_TABLE) -> VerificationReport:
    """A point state always yields one branch carrying the ontic state's own values."""
    cex = []
    cases = 0
    for w in all_joint_states():
        e = point_state(w)
        for s in JOINT_SETTINGS:
            cases += 1
            branches = measure(s, e, table)
            expected = tuple(evaluate_observable(obs, w) for obs in s.observables)
            got = [tuple(v for v in b.outcome if v is not None) for b in branches]
            if got != [expected] or branches[0].probability != 1:
                cex.append({"initial": str(w), "setting": s.label, "expected": list(expected), "got": [list(g) for g in got]})
    for sub in (1, 2):
        for v in all_ontic_states():
            e = point_state(v, subsystem=sub)
            for s in ELEMENTARY_SETTINGS:
                if s.subsystem != sub:
                    continue
                cases += 1
                branches = measure_any(s, e, table)
                if [b.outcome.first for b in branches] != [v.coord(s.axis)]:
                    cex.append({"initial": f"{v}@{sub}", "setting": s.label})
    return VerificationReport(
        check="faithfulness",
        universe="64 joint point states x 15 settings + 2 x 8 single-cube point states x 3 axes",
        universe_size=cases,
        counterexamples=cex,
    )


# -- the square --------------------------------------------------------------


def _context_run(context: Context, order, start, table) -> tuple[int, ValueAssignment]:
    traces = run_exact(start, order, table)
    assignments = [assign_values(context, t) for t in traces]
    products = {context_product(a) for a in assignments}
    if len(products) != 1:
        raise RepeatabilityError(f"{context.value}: product depends on the branch taken")
    return products.pop(), assignments[0]


def square_products(
    initial: JointOnticState,
    orders: Optional[Mapping[Context, Sequence[MeasurementSetting]]] = None,
    table: PostStateTable = NONLOCAL_TABLE,
) -> SquareResult:
    """Measure each of the six contexts afresh on ``initial`` and collect the products.

    ``orders`` gives the setting sequence per context; contexts left out use
    their first covering order (for C3 and R3, the table's first two rows).
    """
    orders = dict(orders or {})
    start = point_state(initial)
    products, assignments = {}, {}
    for c in CONTEXT_ORDER:
        order = tuple(orders.get(c) or orders_covering(c)[0])
        products[c], assignments[c] = _context_run(c, order, start, table)
    return SquareResult(products, assignments, witness(products))


def _square_for_initial(args) -> tuple[list[dict], list[int]]:
    index, table = args
    w = JointOnticState.decode(index)
    start = point_state(w)
    per_context: dict[Context, list] = {}
    errors = []
    for c in CONTEXT_ORDER:
        per_context[c] = []
        for order in orders_covering(c):
            try:
                per_context[c].append((order, _context_run(c, order, start, table)[0]))
            except (ContextError, RepeatabilityError) as exc:
                errors.append({"initial": str(w), "context": c.value, "order": [s.label for s in order], "error": str(exc)})
    if errors:
        return errors, []
    cex, witnesses = [], []
    for combo in itertools.product(*(per_context[c] for c in CONTEXT_ORDER)):
        products = {c: p for c, (_, p) in zip(CONTEXT_ORDER, combo)}
        chi = witness(products)
        witnesses.append(chi)
        if products != EXPECTED_PRODUCTS:
            cex.append({
                "initial": str(w),
                "orders": {c.value: [s.label for s in o] for c, (o, _) in zip(CONTEXT_ORDER, combo) if not c.is_local},
                "products": {c.value: products[c] for c in CONTEXT_ORDER},
                "witness": chi,
            })
    return cex, witnesses


def check_square(table: PostStateTable = NONLOCAL_TABLE, workers: int = 1) -> VerificationReport:
    """All 64 initial states x 6 C3 orders x 6 R3 orders: products and witness."""
    n_combos = 1
    for c in CONTEXT_ORDER:
        n_combos *= len(orders_covering(c))
    results = _map(_square_for_initial, [(i, table) for i in range(64)], workers)
    cex = [c for found, _ in results for c in found]
    witnesses = sorted({chi for _, ws in results for chi in ws})
    return VerificationReport(
        check="square_products",
        universe=f"64 initial states x {n_combos} context-order combinations",
        universe_size=64 * n_combos,
        counterexamples=cex,
        details={
            "expected_products": {c.value: EXPECTED_PRODUCTS[c] for c in CONTEXT_ORDER},
            "witness_values": witnesses,
            "noncontextual_bound": NONCONTEXTUAL_BOUND,
            "noncontextual_bound_provenance": NONCONTEXTUAL_BOUND_PROVENANCE,
        },
    )


# -- support partition -----------------------------------------------------


def _inequality_count(w: JointOnticState, swapped: bool) -> int:
    a, b = w.first, w.second
    pairs = [(a.x, b.y), (a.y, b.x), (a.z, b.z)] if swapped else [(a.x, b.x), (a.y, b.y), (a.z, b.z)]
    return sum(p != q for p, q in pairs)


def check_support_partition() -> VerificationReport:
    """Each family of four canonical joint states tiles exactly half of the joint space."""
    cex = []
    for names, swapped, parity, label in (
        (tuple(DIRECT_PATTERNS), False, 1, "odd direct inequality count"),
        (tuple(SWAPPED_PATTERNS), True, 0, "even swapped inequality count"),
    ):
        target = {w.encode() for w in all_joint_states() if _inequality_count(w, swapped) % 2 == parity}
        seen: set[int] = set()
        for name in names:
            e = canonical_state(name)
            support = set(e.support)
            if len(support) != 8 or any(e.weights[i] != Fraction(1, 8) for i in support):
                cex.append({"state": name, "problem": "support is not 8 points of weight 1/8"})
            if support & seen:
                cex.append({"state": name, "problem": "overlaps an earlier state of its family"})
            seen |= support
        if len(target) != 32 or seen != target:
            cex.append({"family": list(names), "problem": f"union differs from the 32 states with {label}"})
    return VerificationReport(
        check="support_partition",
        universe="8 canonical joint states over 64 joint ontic states",
        universe_size=8 * 64,
        counterexamples=cex,
    )


# -- everything --------------------------------------------------------------


def exhaustive_verify(
    max_len: int = 4,
    workers: int = 1,
    table: PostStateTable = NONLOCAL_TABLE,
    timing: bool = False,
) -> list[VerificationReport]:
    """Run every check in a fixed order.

    ``runtime_ms`` stays ``None`` unless ``timing`` is set, so the default
    report is byte-identical between runs and worker counts.
    """
    return [
        _timed(check_eigenstates, timing, table),
        _timed(check_faithfulness, timing, table),
        _timed(check_repeatability, timing, TABLE_1_FAMILY, max_len, table, workers),
        _timed(check_repeatability, timing, TABLE_2_FAMILY, max_len, table, workers),
        _timed(check_square, timing, table, workers),
        _timed(check_support_partition, timing),
    ]


def verification_document(reports: Sequence[VerificationReport]) -> dict:
    return {
        "pass": all(r.passed for r in reports),
        "reports": [r.to_json() for r in reports],
    }


def classical_signature(table: PostStateTable = NONLOCAL_TABLE) -> dict[Context, int]:
    """The product each context takes, checked to be the same for every initial state and order."""
    seen: dict[Context, set[int]] = {c: set() for c in CONTEXT_ORDER}
    for w in all_joint_states():
        start = point_state(w)
        for c in CONTEXT_ORDER:
            for order in orders_covering(c):
                seen[c].add(_context_run(c, order, start, table)[0])
    out = {}
    for c, values in seen.items():
        if len(values) != 1:
            raise RepeatabilityError(f"{c.value}: product varies with initial state or order: {sorted(values)}")
        out[c] = values.pop()
    return out
