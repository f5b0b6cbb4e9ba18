"""Sequential measurements with exact branch bookkeeping, and value assignment per context."""
from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple, Sequence, Union

from .core import X1, X1X2, X1Y2, X2, Y1, Y1X2, Y1Y2, Y2, Z1Z2, Axis, Observable
from .epistemics import EpistemicState, describe
from .measurement import (
    NONLOCAL_TABLE,
    TABLE_1_FAMILY,
    TABLE_2_FAMILY,
    LocalPair,
    MeasurementSetting,
    Outcome,
    PostStateTable,
    choose_branch,
    measure_any,
    revealed_values,
)


class ContextError(ValueError):
    """A trace cannot be read as a measurement of the requested context."""


class RepeatabilityError(RuntimeError):
    """An observable received two different values within one trace."""


class Step(NamedTuple):
    setting: MeasurementSetting
    outcome: Outcome
    post: EpistemicState


@dataclass(frozen=True)
class Trace:
    initial: EpistemicState
    steps: tuple[Step, ...] = ()
    probability: Fraction = Fraction(1)

    @property
    def settings(self) -> tuple[MeasurementSetting, ...]:
        return tuple(s.setting for s in self.steps)

    @property
    def outcomes(self) -> tuple[Outcome, ...]:
        return tuple(s.outcome for s in self.steps)

    @property
    def final(self) -> EpistemicState:
        return self.steps[-1].post if self.steps else self.initial

    def to_json(self) -> dict:
        return {
            "probability": str(self.probability),
            "steps": [
                {"setting": s.setting.label, "outcome": str(s.outcome), "post": describe(s.post)}
                for s in self.steps
            ],
        }


def run_exact(
    initial: EpistemicState,
    settings: Sequence[MeasurementSetting],
    table: PostStateTable = NONLOCAL_TABLE,
) -> list[Trace]:
    """Every outcome path with nonzero probability, in table column order."""
    paths = [Trace(initial)]
    for s in settings:
        grown = []
        for t in paths:
            for b in measure_any(s, t.final, table):
                grown.append(Trace(initial, t.steps + (Step(s, b.outcome, b.post),), t.probability * b.probability))
        paths = grown
    return paths


def run_sampled(
    initial: EpistemicState,
    settings: Sequence[MeasurementSetting],
    rng: Union[random.Random, int],
    table: PostStateTable = NONLOCAL_TABLE,
) -> Trace:
    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    t = Trace(initial)
    for s in settings:
        b = choose_branch(measure_any(s, t.final, table), rng)
        t = Trace(initial, t.steps + (Step(s, b.outcome, b.post),), t.probability * b.probability)
    return t


def trace_values(trace: Trace) -> tuple[dict[Observable, int], list[tuple[Observable, int, int, int]]]:
    """First value seen for each observable, plus every later disagreement.

    Disagreements are ``(observable, first_value, step_index, new_value)``.
    """
    values: dict[Observable, int] = {}
    conflicts = []
    for i, step in enumerate(trace.steps):
        for obs, v in revealed_values(step.setting, step.outcome).items():
            if obs not in values:
                values[obs] = v
            elif values[obs] != v:
                conflicts.append((obs, values[obs], i, v))
    return values, conflicts


class Context(enum.Enum):
    R1 = "R1"
    R2 = "R2"
    R3 = "R3"
    C1 = "C1"
    C2 = "C2"
    C3 = "C3"

    @property
    def observables(self) -> tuple[Observable, Observable, Observable]:
        return _CONTEXT_OBSERVABLES[self]

    @property
    def family(self) -> tuple[MeasurementSetting, ...]:
        return _CONTEXT_FAMILIES[self]

    @property
    def is_local(self) -> bool:
        return len(self.family) == 1


_CONTEXT_OBSERVABLES = {
    Context.R1: (X1, X2, X1X2),
    Context.R2: (Y1, Y2, Y1Y2),
    Context.R3: (X1Y2, Y1X2, Z1Z2),
    Context.C1: (X1, Y2, X1Y2),
    Context.C2: (Y1, X2, Y1X2),
    Context.C3: (X1X2, Y1Y2, Z1Z2),
}
_CONTEXT_FAMILIES = {
    Context.R1: (LocalPair(Axis.X, Axis.X),),
    Context.R2: (LocalPair(Axis.Y, Axis.Y),),
    Context.R3: TABLE_2_FAMILY,
    Context.C1: (LocalPair(Axis.X, Axis.Y),),
    Context.C2: (LocalPair(Axis.Y, Axis.X),),
    Context.C3: TABLE_1_FAMILY,
}

ROWS = (Context.R1, Context.R2, Context.R3)
COLUMNS = (Context.C1, Context.C2, Context.C3)


@dataclass(frozen=True)
class ValueAssignment:
    context: Context
    values: Mapping[Observable, int] = field(default_factory=dict)

    def __getitem__(self, obs: Observable) -> int:
        return self.values[obs]

    def to_json(self) -> dict:
        return {"context": self.context.value, "values": {o.name: v for o, v in self.values.items()}}


def assign_values(context: Context, trace: Trace) -> ValueAssignment:
    """Read the context's three values off a trace.

    Each observable takes the value from the first step that reveals it.
    Later steps revealing the same observable must agree, otherwise
    :class:`RepeatabilityError` is raised.
    """
    if not trace.steps:
        raise ContextError(f"{context.value}: empty trace")
    family = set(context.family)
    for s in trace.settings:
        if s not in family:
            raise ContextError(f"{context.value}: setting {s.label} is outside the context's measurement family")
    values, conflicts = trace_values(trace)
    if conflicts:
        obs, first, i, new = conflicts[0]
        raise RepeatabilityError(f"{context.value}: {obs.name} read {first:+d} then {new:+d} at step {i}")
    missing = [o.name for o in context.observables if o not in values]
    if missing:
        raise ContextError(f"{context.value}: {', '.join(missing)} never measured")
    return ValueAssignment(context, {o: values[o] for o in context.observables})


def context_product(v: ValueAssignment) -> int:
    out = 1
    for obs in v.context.observables:
        out *= v.values[obs]
    return out


def orders_covering(context: Context) -> list[tuple[MeasurementSetting, ...]]:
    """Shortest sanctioned sequences that reveal all three observables of the context.

    A local context needs its single setting; a table context needs any two
    distinct settings of its table, in either order (six orders).
    """
    fam = context.family
    if context.is_local:
        return [fam]
    return [(a, b) for a in fam for b in fam if a != b]


def single_family(settings: Iterable[MeasurementSetting]) -> bool:
    settings = list(settings)
    return all(s in TABLE_1_FAMILY for s in settings) or all(s in TABLE_2_FAMILY for s in settings)
