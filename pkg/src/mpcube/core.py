"""Ontic states of the two-cube system and the observables of the square.

An elementary ontic state is a vertex ``(x, y, z)`` of the cube with each
coordinate in ``{+1, -1}``.  A joint state is a pair of such vertices.

Integer encoding: ``+1`` maps to bit 0 and ``-1`` to bit 1, with bits read
most-significant first in the order ``x1 y1 z1 x2 y2 z2``.  So
``(+,+,+)x(+,+,+)`` is 0 and ``(-,-,-)x(-,-,-)`` is 63.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterator, NamedTuple, Optional

SIGNS = (1, -1)


class Axis(str, enum.Enum):
    X = "X"
    Y = "Y"
    Z = "Z"

    @property
    def index(self) -> int:
        return "XYZ".index(self.value)


def _check_sign(value: int) -> None:
    if value not in SIGNS:
        raise ValueError(f"sign must be +1 or -1, got {value!r}")


def sign_char(value: int) -> str:
    return "+" if value == 1 else "-"


def parse_sign(text: str) -> int:
    text = text.strip()
    if text in ("+", "+1", "1"):
        return 1
    if text in ("-", "-1"):
        return -1
    raise ValueError(f"not a sign: {text!r}")


@dataclass(frozen=True, order=True)
class OnticState:
    x: int
    y: int
    z: int

    def __post_init__(self):
        for v in (self.x, self.y, self.z):
            _check_sign(v)

    def coord(self, axis: Axis) -> int:
        return (self.x, self.y, self.z)[axis.index]

    def encode(self) -> int:
        return sum(((1 - v) // 2) << (2 - i) for i, v in enumerate((self.x, self.y, self.z)))

    @classmethod
    def decode(cls, index: int) -> "OnticState":
        if not 0 <= index < 8:
            raise ValueError(f"elementary index out of range: {index}")
        return cls(*(1 - 2 * ((index >> (2 - i)) & 1) for i in range(3)))

    def __str__(self) -> str:
        return "(" + ",".join(sign_char(v) for v in (self.x, self.y, self.z)) + ")"


@dataclass(frozen=True, order=True)
class JointOnticState:
    first: OnticState
    second: OnticState

    def subsystem(self, which: int) -> OnticState:
        if which == 1:
            return self.first
        if which == 2:
            return self.second
        raise ValueError(f"subsystem must be 1 or 2, got {which!r}")

    def encode(self) -> int:
        return (self.first.encode() << 3) | self.second.encode()

    @classmethod
    def decode(cls, index: int) -> "JointOnticState":
        if not 0 <= index < 64:
            raise ValueError(f"joint index out of range: {index}")
        return cls(OnticState.decode(index >> 3), OnticState.decode(index & 7))

    def __str__(self) -> str:
        return f"{self.first}x{self.second}"


def all_ontic_states() -> list[OnticState]:
    return [OnticState.decode(i) for i in range(8)]


def all_joint_states() -> list[JointOnticState]:
    return [JointOnticState.decode(i) for i in range(64)]


_TRIPLE = r"\(\s*([+-]1?)\s*,\s*([+-]1?)\s*,\s*([+-]1?)\s*\)"
_JOINT_RE = re.compile(rf"^\s*{_TRIPLE}\s*x\s*{_TRIPLE}\s*$")
_SINGLE_RE = re.compile(rf"^\s*{_TRIPLE}\s*$")


def parse_ontic(text: str) -> OnticState:
    m = _SINGLE_RE.match(text)
    if not m:
        raise ValueError(f"bad ontic state literal: {text!r}")
    return OnticState(*(parse_sign(g) for g in m.groups()))


def parse_joint(text: str) -> JointOnticState:
    """Parse ``(+,-,+)x(+,+,-)``; ``+1``/``-1`` are accepted for each sign."""
    m = _JOINT_RE.match(text)
    if not m:
        raise ValueError(f"bad joint state literal: {text!r}")
    signs = [parse_sign(g) for g in m.groups()]
    return JointOnticState(OnticState(*signs[:3]), OnticState(*signs[3:]))


@dataclass(frozen=True)
class Observable:
    """A dichotomic observable: a coordinate of one cube, or a product across cubes.

    ``first`` names the axis read on cube 1 and ``second`` the axis read on
    cube 2; ``None`` means that cube does not contribute.  ``X1`` is
    ``Observable(Axis.X, None)`` and ``X1Y2`` is ``Observable(Axis.X, Axis.Y)``.
    """

    first: Optional[Axis]
    second: Optional[Axis]

    def __post_init__(self):
        if self.first is None and self.second is None:
            raise ValueError("observable must involve at least one cube")

    @property
    def is_product(self) -> bool:
        return self.first is not None and self.second is not None

    @property
    def name(self) -> str:
        parts = []
        if self.first is not None:
            parts.append(f"{self.first.value}1")
        if self.second is not None:
            parts.append(f"{self.second.value}2")
        return "".join(parts)

    def __str__(self) -> str:
        return self.name


def single(subsystem: int, axis: Axis) -> Observable:
    if subsystem == 1:
        return Observable(axis, None)
    if subsystem == 2:
        return Observable(None, axis)
    raise ValueError(f"subsystem must be 1 or 2, got {subsystem!r}")


def product(axis1: Axis, axis2: Axis) -> Observable:
    return Observable(axis1, axis2)


X, Y, Z = Axis.X, Axis.Y, Axis.Z

X1, Y1, Z1 = single(1, X), single(1, Y), single(1, Z)
X2, Y2, Z2 = single(2, X), single(2, Y), single(2, Z)
X1X2, Y1Y2, Z1Z2 = product(X, X), product(Y, Y), product(Z, Z)
X1Y2, Y1X2 = product(X, Y), product(Y, X)

CATALOG: tuple[Observable, ...] = (X1, Y1, Z1, X2, Y2, Z2, X1X2, Y1Y2, Z1Z2, X1Y2, Y1X2)

_OBS_RE = re.compile(r"^(?:([XYZ])1)?(?:([XYZ])2)?$")


def parse_observable(text: str) -> Observable:
    m = _OBS_RE.match(text.strip())
    if not m or not (m.group(1) or m.group(2)):
        raise ValueError(f"bad observable literal: {text!r}")
    a, b = m.groups()
    return Observable(Axis(a) if a else None, Axis(b) if b else None)


def evaluate_observable(obs: Observable, w: JointOnticState) -> int:
    value = 1
    if obs.first is not None:
        value *= w.first.coord(obs.first)
    if obs.second is not None:
        value *= w.second.coord(obs.second)
    return value


class ParityProfile(NamedTuple):
    direct: tuple[int, int, int]
    swapped: tuple[int, int, int]


def parity_profile(w: JointOnticState) -> ParityProfile:
    """Coordinate products ``(x1x2, y1y2, z1z2)`` and ``(x1y2, y1x2, z1z2)``."""
    a, b = w.first, w.second
    zz = a.z * b.z
    return ParityProfile((a.x * b.x, a.y * b.y, zz), (a.x * b.y, a.y * b.x, zz))


def iter_sign_pairs() -> Iterator[tuple[int, int]]:
    """Outcome pairs in table order: (+,+), (+,-), (-,+), (-,-)."""
    for a in SIGNS:
        for b in SIGNS:
            yield a, b
