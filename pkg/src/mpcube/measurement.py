"""Measurement procedures: outcome rules, exact branch probabilities and disturbance.

Every measurement replaces the prior epistemic state wholesale.  The
post-measurement state depends only on which setting was used and which
outcome came up; whatever else the observer knew beforehand is discarded
(no Bayesian conditioning).  That replacement rule is what makes sequential
values order dependent.
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Mapping, NamedTuple, Optional, Union

from .core import (
    X1X2,
    X1Y2,
    Y1X2,
    Y1Y2,
    Z1Z2,
    Axis,
    JointOnticState,
    Observable,
    OnticState,
    evaluate_observable,
    iter_sign_pairs,
    parse_sign,
    product,
    sign_char,
    single,
)
from .epistemics import EpistemicState, Space, SpaceMismatch, canonical_state, tensor

# id -> the two product observables whose values form the outcome pair
NONLOCAL_OBSERVABLES: dict[str, tuple[Observable, Observable]] = {
    "XX&YY": (X1X2, Y1Y2),
    "XX&ZZ": (X1X2, Z1Z2),
    "ZZ&YY": (Z1Z2, Y1Y2),
    "XY&YX": (X1Y2, Y1X2),
    "YX&ZZ": (Y1X2, Z1Z2),
    "XY&ZZ": (X1Y2, Z1Z2),
}

PP, PM, MP, MM = (1, 1), (1, -1), (-1, 1), (-1, -1)

TABLE_1: dict[str, dict[tuple[int, int], str]] = {
    "XX&YY": {PP: "psi+", PM: "phi+", MP: "phi-", MM: "psi-"},
    "XX&ZZ": {PP: "phi+", PM: "psi+", MP: "phi-", MM: "psi-"},
    "ZZ&YY": {PP: "phi-", PM: "phi+", MP: "psi+", MM: "psi-"},
}
TABLE_2: dict[str, dict[tuple[int, int], str]] = {
    "XY&YX": {PP: "phi_i+", PM: "psi_i-", MP: "psi_i+", MM: "phi_i-"},
    "YX&ZZ": {PP: "phi_i+", PM: "psi_i+", MP: "phi_i-", MM: "psi_i-"},
    "XY&ZZ": {PP: "phi_i+", PM: "psi_i-", MP: "phi_i-", MM: "psi_i+"},
}
NONLOCAL_TABLE: dict[str, dict[tuple[int, int], str]] = {**TABLE_1, **TABLE_2}

PostStateTable = Mapping[str, Mapping[tuple[int, int], str]]


@dataclass(frozen=True)
class Elementary:
    """Single-cube measurement of one axis, e.g. ``Z@1``."""

    subsystem: int
    axis: Axis

    def __post_init__(self):
        if self.subsystem not in (1, 2):
            raise ValueError(f"subsystem must be 1 or 2, got {self.subsystem!r}")

    @property
    def label(self) -> str:
        return f"{self.axis.value}@{self.subsystem}"

    @property
    def observables(self) -> tuple[Observable, ...]:
        return (single(self.subsystem, self.axis),)


@dataclass(frozen=True)
class LocalPair:
    """``A1&B2``: axis ``first`` on cube 1 and axis ``second`` on cube 2."""

    first: Axis
    second: Axis

    @property
    def label(self) -> str:
        return f"{self.first.value}1&{self.second.value}2"

    @property
    def observables(self) -> tuple[Observable, ...]:
        return (single(1, self.first), single(2, self.second))


@dataclass(frozen=True)
class NonLocal:
    """One of the six tabulated parity measurements, e.g. ``XX&YY``."""

    id: str

    def __post_init__(self):
        if self.id not in NONLOCAL_OBSERVABLES:
            raise ValueError(
                f"non-local setting {self.id!r} has no post-state table; "
                f"only {', '.join(NONLOCAL_OBSERVABLES)} are defined"
            )

    @property
    def label(self) -> str:
        return self.id

    @property
    def observables(self) -> tuple[Observable, ...]:
        return NONLOCAL_OBSERVABLES[self.id]

    @property
    def table(self) -> int:
        return 1 if self.id in TABLE_1 else 2


MeasurementSetting = Union[Elementary, LocalPair, NonLocal]

AXES = (Axis.X, Axis.Y, Axis.Z)
ELEMENTARY_SETTINGS = tuple(Elementary(sub, a) for sub in (1, 2) for a in AXES)
LOCAL_SETTINGS = tuple(LocalPair(a, b) for a in AXES for b in AXES)
NONLOCAL_SETTINGS = tuple(NonLocal(i) for i in NONLOCAL_OBSERVABLES)
TABLE_1_FAMILY = tuple(NonLocal(i) for i in TABLE_1)
TABLE_2_FAMILY = tuple(NonLocal(i) for i in TABLE_2)
JOINT_SETTINGS = LOCAL_SETTINGS + NONLOCAL_SETTINGS


class Outcome(NamedTuple):
    first: int
    second: Optional[int] = None

    def __str__(self) -> str:
        if self.second is None:
            return sign_char(self.first)
        return f"({sign_char(self.first)},{sign_char(self.second)})"


def parse_outcome(text: str) -> Outcome:
    text = text.strip()
    if text.startswith("(") and text.endswith(")"):
        a, b = text[1:-1].split(",")
        return Outcome(parse_sign(a), parse_sign(b))
    return Outcome(parse_sign(text))


def outcomes_for(s: MeasurementSetting) -> tuple[Outcome, ...]:
    if isinstance(s, Elementary):
        return (Outcome(1), Outcome(-1))
    return tuple(Outcome(a, b) for a, b in iter_sign_pairs())


@dataclass(frozen=True)
class Branch:
    outcome: Outcome
    probability: Fraction
    post: EpistemicState


_ELEM_RE = re.compile(r"^([XYZ])@([12])$")
_LOCAL_RE = re.compile(r"^([XYZ])1&([XYZ])2$")
_LONG_NONLOCAL_RE = re.compile(r"^([XYZ])1([XYZ])2&([XYZ])1([XYZ])2$")
_SHORT_NONLOCAL_RE = re.compile(r"^[XYZ]{2}&[XYZ]{2}$")


def parse_setting(text: str) -> MeasurementSetting:
    """Parse ``Z@1``, ``X1&Y2``, ``XX&YY`` or the long form ``X1X2&Y1Y2``."""
    t = text.strip().replace(" ", "")
    if m := _ELEM_RE.match(t):
        return Elementary(int(m.group(2)), Axis(m.group(1)))
    if m := _LOCAL_RE.match(t):
        return LocalPair(Axis(m.group(1)), Axis(m.group(2)))
    if m := _LONG_NONLOCAL_RE.match(t):
        a, b, c, d = m.groups()
        return NonLocal(f"{a}{b}&{c}{d}")
    if _SHORT_NONLOCAL_RE.match(t):
        return NonLocal(t)
    raise ValueError(f"bad setting literal: {text!r}")


def _ontic_outcome(s: MeasurementSetting, w: JointOnticState) -> Outcome:
    if isinstance(s, Elementary):
        return Outcome(w.subsystem(s.subsystem).coord(s.axis))
    a, b = s.observables
    return Outcome(evaluate_observable(a, w), evaluate_observable(b, w))


def outcome_of(s: MeasurementSetting, w: Union[JointOnticState, OnticState]) -> Outcome:
    """The outcome read off the actual ontic state (first measurements are faithful)."""
    if isinstance(w, OnticState):
        if not isinstance(s, Elementary):
            raise SpaceMismatch(f"{s.label} needs a joint ontic state")
        return Outcome(w.coord(s.axis))
    if isinstance(s, Elementary):
        raise SpaceMismatch(f"{s.label} acts on a single cube, not a joint state")
    return _ontic_outcome(s, w)


def post_state_for(
    s: MeasurementSetting, o: Outcome, table: PostStateTable = NONLOCAL_TABLE
) -> EpistemicState:
    o = Outcome(*o)
    if isinstance(s, Elementary):
        if o.second is not None:
            raise ValueError(f"{s.label} has single-sign outcomes, got {o}")
        return canonical_state(f"{s.axis.value.lower()}{sign_char(o.first)}", s.subsystem)
    if o.second is None:
        raise ValueError(f"{s.label} has paired outcomes, got {o}")
    if isinstance(s, LocalPair):
        return tensor(
            canonical_state(f"{s.first.value.lower()}{sign_char(o.first)}", 1),
            canonical_state(f"{s.second.value.lower()}{sign_char(o.second)}", 2),
        )
    return canonical_state(table[s.id][(o.first, o.second)])


def _branches(s, e: EpistemicState, decode, outcome, table) -> list[Branch]:
    totals: dict[Outcome, Fraction] = {}
    for index in e.support:
        o = outcome(decode(index))
        totals[o] = totals.get(o, Fraction(0)) + e.weights[index]
    return [Branch(o, totals[o], post_state_for(s, o, table)) for o in outcomes_for(s) if o in totals]


def measure(
    s: MeasurementSetting, e: EpistemicState, table: PostStateTable = NONLOCAL_TABLE
) -> list[Branch]:
    """Exact branches of a bipartite measurement, in table column order."""
    if e.space is not Space.JOINT:
        raise SpaceMismatch(f"measure() needs a joint state, got {e.space.value}")
    if isinstance(s, Elementary):
        raise SpaceMismatch(f"{s.label} acts on a single cube; use measure_elementary()")
    return _branches(s, e, JointOnticState.decode, lambda w: _ontic_outcome(s, w), table)


def measure_elementary(axis: Axis, e: EpistemicState) -> list[Branch]:
    if e.space is Space.JOINT:
        raise SpaceMismatch("measure_elementary() needs a single-cube state")
    s = Elementary(1 if e.space is Space.ELEMENTARY1 else 2, Axis(axis))
    return _branches(s, e, OnticState.decode, lambda w: Outcome(w.coord(s.axis)), NONLOCAL_TABLE)


def measure_any(
    s: MeasurementSetting, e: EpistemicState, table: PostStateTable = NONLOCAL_TABLE
) -> list[Branch]:
    """Dispatch to :func:`measure` or :func:`measure_elementary` by setting kind."""
    if isinstance(s, Elementary):
        if e.space is not Space.elementary(s.subsystem):
            raise SpaceMismatch(f"{s.label} needs an {Space.elementary(s.subsystem).value} state, got {e.space.value}")
        return measure_elementary(s.axis, e)
    return measure(s, e, table)


def choose_branch(branches: list[Branch], rng: random.Random) -> Branch:
    """Pick a branch with exactly its rational probability.

    Draws one integer uniformly below the common denominator, so no
    floating-point rounding enters the choice.
    """
    denom = lcm(*(b.probability.denominator for b in branches))
    r = rng.randrange(denom)
    acc = 0
    for b in branches:
        acc += b.probability.numerator * (denom // b.probability.denominator)
        if r < acc:
            return b
    raise AssertionError("branch probabilities do not sum to 1")


def sample(
    s: MeasurementSetting,
    e: EpistemicState,
    rng: Union[random.Random, int],
    table: PostStateTable = NONLOCAL_TABLE,
) -> tuple[Outcome, EpistemicState]:
    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    b = choose_branch(measure_any(s, e, table), rng)
    return b.outcome, b.post


def revealed_values(s: MeasurementSetting, o: Outcome) -> dict[Observable, int]:
    """Values an outcome assigns to observables.

    A local pair also fixes its product observable ``A1B2 = a1*b2``.
    """
    values = dict(zip(s.observables, (o.first, o.second)))
    if isinstance(s, LocalPair):
        values[product(s.first, s.second)] = o.first * o.second
    return values


def mutated_table(swap: tuple[str, str] = ("phi+", "phi-"), setting: str = "XX&YY") -> dict:
    """Copy of the post-state tables with two names swapped in one row (for mutation tests)."""
    table = {k: dict(v) for k, v in NONLOCAL_TABLE.items()}
    a, b = swap
    row = table[setting]
    for o, name in row.items():
        if name == a:
            row[o] = b
        elif name == b:
            row[o] = a
    return table
