"""Exact probability distributions over the elementary and joint ontic spaces.

Weights are :class:`fractions.Fraction` values stored densely (8 entries for
one cube, 64 for the pair), indexed by the integer encoding of
:mod:`mpcube.core`.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Optional, Union

from .core import (
    JointOnticState,
    OnticState,
    all_joint_states,
    all_ontic_states,
    parity_profile,
)


class Space(str, enum.Enum):
    ELEMENTARY1 = "elementary(1)"
    ELEMENTARY2 = "elementary(2)"
    JOINT = "joint"

    @property
    def size(self) -> int:
        return 64 if self is Space.JOINT else 8

    @classmethod
    def elementary(cls, subsystem: int) -> "Space":
        if subsystem == 1:
            return cls.ELEMENTARY1
        if subsystem == 2:
            return cls.ELEMENTARY2
        raise ValueError(f"subsystem must be 1 or 2, got {subsystem!r}")


class SpaceMismatch(ValueError):
    pass


@dataclass(frozen=True)
class EpistemicState:
    space: Space
    weights: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.weights) != self.space.size:
            raise ValueError(f"{self.space.value} needs {self.space.size} weights, got {len(self.weights)}")
        if any(w < 0 for w in self.weights):
            raise ValueError("negative weight")
        if sum(self.weights) != 1:
            raise ValueError(f"weights sum to {sum(self.weights)}, not 1")

    @classmethod
    def from_mapping(cls, space: Space, weights: Mapping[int, Fraction]) -> "EpistemicState":
        dense = [Fraction(0)] * space.size
        for index, w in weights.items():
            if not 0 <= index < space.size:
                raise ValueError(f"index {index} outside {space.value}")
            dense[index] = Fraction(w)
        return cls(space, tuple(dense))

    @classmethod
    def uniform(cls, space: Space, support) -> "EpistemicState":
        support = sorted(set(support))
        w = Fraction(1, len(support))
        return cls.from_mapping(space, {i: w for i in support})

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, w in enumerate(self.weights) if w)

    def support_states(self) -> list[Union[OnticState, JointOnticState]]:
        decode = JointOnticState.decode if self.space is Space.JOINT else OnticState.decode
        return [decode(i) for i in self.support]

    def weight(self, state: Union[OnticState, JointOnticState]) -> Fraction:
        return self.weights[state.encode()]

    def marginal(self, subsystem: int) -> "EpistemicState":
        if self.space is not Space.JOINT:
            raise SpaceMismatch("marginal of a non-joint state")
        out = [Fraction(0)] * 8
        for i, w in enumerate(self.weights):
            out[i >> 3 if subsystem == 1 else i & 7] += w
        return EpistemicState(Space.elementary(subsystem), tuple(out))

    @property
    def name(self) -> Optional[str]:
        return state_name(self)

    def to_json(self) -> dict:
        return {
            "space": self.space.value,
            "weights": {str(i): f"{w.numerator}/{w.denominator}" for i, w in enumerate(self.weights) if w},
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "EpistemicState":
        space = Space(data["space"])
        return cls.from_mapping(space, {int(k): Fraction(v) for k, v in data["weights"].items()})


def point_state(w: Union[OnticState, JointOnticState], subsystem: int = 1) -> EpistemicState:
    """Certainty about one ontic state.  ``subsystem`` picks the space for a single cube."""
    space = Space.JOINT if isinstance(w, JointOnticState) else Space.elementary(subsystem)
    return EpistemicState.from_mapping(space, {w.encode(): Fraction(1)})


def uniform_state(space: Space = Space.JOINT) -> EpistemicState:
    return EpistemicState.uniform(space, range(space.size))


# Sign patterns each canonical joint state imposes: (x1x2, y1y2, z1z2) for the
# first four, (x1y2, y1x2, z1z2) for the "_i" family.
DIRECT_PATTERNS = {
    "psi+": (1, 1, -1),
    "phi+": (1, -1, 1),
    "phi-": (-1, 1, 1),
    "psi-": (-1, -1, -1),
}
SWAPPED_PATTERNS = {
    "phi_i+": (1, 1, 1),
    "psi_i-": (1, -1, -1),
    "psi_i+": (-1, 1, -1),
    "phi_i-": (-1, -1, 1),
}
JOINT_NAMES = tuple(DIRECT_PATTERNS) + tuple(SWAPPED_PATTERNS)
ELEMENTARY_NAMES = tuple(f"{a}{s}" for a in "xyz" for s in "+-")
CANONICAL_NAMES = ELEMENTARY_NAMES + JOINT_NAMES

_ALIASES = {
    "ψ+": "psi+", "ψ-": "psi-", "φ+": "phi+", "φ-": "phi-",
    "ψi+": "psi_i+", "ψi-": "psi_i-", "φi+": "phi_i+", "φi-": "phi_i-",
    "psii+": "psi_i+", "psii-": "psi_i-", "phii+": "phi_i+", "phii-": "phi_i-",
}


def normalize_name(name: str) -> str:
    name = name.strip().replace("−", "-").replace("ᵢ", "i").replace("_{i}", "_i")
    name = _ALIASES.get(name, name)
    if name not in CANONICAL_NAMES:
        raise ValueError(f"unknown canonical state: {name!r}")
    return name


@lru_cache(maxsize=None)
def _canonical(name: str, subsystem: int) -> EpistemicState:
    if name in ELEMENTARY_NAMES:
        axis = "xyz".index(name[0])
        sign = 1 if name[1] == "+" else -1
        support = [s.encode() for s in all_ontic_states() if (s.x, s.y, s.z)[axis] == sign]
        return EpistemicState.uniform(Space.elementary(subsystem), support)
    if name in DIRECT_PATTERNS:
        pattern, pick = DIRECT_PATTERNS[name], 0
    else:
        pattern, pick = SWAPPED_PATTERNS[name], 1
    support = [w.encode() for w in all_joint_states() if parity_profile(w)[pick] == pattern]
    return EpistemicState.uniform(Space.JOINT, support)


def canonical_state(name: str, subsystem: int = 1) -> EpistemicState:
    """The named post-measurement state.

    Elementary names (``x+`` ... ``z-``) give a uniform 1/4 over one face of
    the cube on ``subsystem``; joint names (``psi+``, ``phi_i-``, ...) give a
    uniform 1/8 over the eight joint states meeting the name's three
    (in)equality conditions.
    """
    name = normalize_name(name)
    if name in ELEMENTARY_NAMES and subsystem not in (1, 2):
        raise ValueError(f"subsystem must be 1 or 2, got {subsystem!r}")
    return _canonical(name, subsystem if name in ELEMENTARY_NAMES else 0)


def tensor(e1: EpistemicState, e2: EpistemicState) -> EpistemicState:
    if e1.space is not Space.ELEMENTARY1 or e2.space is not Space.ELEMENTARY2:
        raise SpaceMismatch(f"tensor needs (elementary(1), elementary(2)), got ({e1.space.value}, {e2.space.value})")
    return EpistemicState(Space.JOINT, tuple(a * b for a in e1.weights for b in e2.weights))


def states_equal(a: EpistemicState, b: EpistemicState) -> bool:
    if a.space is not b.space:
        raise SpaceMismatch(f"cannot compare {a.space.value} with {b.space.value}")
    return a.weights == b.weights


@lru_cache(maxsize=None)
def _name_index() -> dict:
    index = {}
    for name in JOINT_NAMES:
        index[canonical_state(name)] = name
    for sub in (1, 2):
        for name in ELEMENTARY_NAMES:
            index[canonical_state(name, sub)] = name
    for n1 in ELEMENTARY_NAMES:
        for n2 in ELEMENTARY_NAMES:
            index.setdefault(tensor(canonical_state(n1, 1), canonical_state(n2, 2)), f"{n1}*{n2}")
    return index


def state_name(e: EpistemicState) -> Optional[str]:
    """Canonical name, ``"x+*y-"`` for products of elementary canonical states, else None."""
    return _name_index().get(e)


def describe(e: EpistemicState) -> dict:
    """JSON-ready summary: the name when there is one, otherwise the support."""
    name = state_name(e)
    if name is not None:
        return {"name": name}
    out = e.to_json()
    out["support"] = [str(s) for s in e.support_states()]
    return out

