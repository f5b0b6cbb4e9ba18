"""Line-oriented scenario files.

Each non-blank line that does not start with ``#`` reads::

    <initial state> | <setting>;<setting>;...

The initial state is a joint literal such as ``(+,-,+)x(+,+,-)``, a single
cube literal with optional cube number ``(+,-,+)@2``, a canonical state
name (``psi-``, ``phi_i+``, ``x+@1``) or ``uniform``.  The setting list may
be empty.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Union

from .core import parse_joint, parse_ontic
from .epistemics import (
    ELEMENTARY_NAMES,
    EpistemicState,
    Space,
    canonical_state,
    normalize_name,
    point_state,
    uniform_state,
)
from .measurement import Elementary, MeasurementSetting, parse_setting


class ScenarioError(ValueError):
    def __init__(self, message: str, line: int = 0):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


@dataclass(frozen=True)
class Scenario:
    line: int
    initial_text: str
    initial: EpistemicState
    settings: tuple[MeasurementSetting, ...]

    def to_json(self) -> dict:
        return {"line": self.line, "initial": self.initial_text, "settings": [s.label for s in self.settings]}


_CUBE_SUFFIX = re.compile(r"^(.*?)\s*@\s*([12])$")


def parse_initial(text: str) -> EpistemicState:
    t = text.strip()
    if "x(" in t.replace(" ", ""):
        return point_state(parse_joint(t))
    subsystem = None
    if m := _CUBE_SUFFIX.match(t):
        t, subsystem = m.group(1), int(m.group(2))
    if t == "uniform":
        return uniform_state(Space.JOINT if subsystem is None else Space.elementary(subsystem))
    if t.startswith("("):
        return point_state(parse_ontic(t), subsystem=subsystem or 1)
    name = normalize_name(t)
    if name in ELEMENTARY_NAMES:
        return canonical_state(name, subsystem or 1)
    if subsystem is not None:
        raise ValueError(f"{name} is a joint state and takes no cube number")
    return canonical_state(name)


def parse_line(text: str, line: int = 0) -> Union[Scenario, None]:
    body = text.split("#", 1)[0].strip()
    if not body:
        return None
    if "|" not in body:
        raise ScenarioError("expected '<state> | <settings>'", line)
    state_text, settings_text = (p.strip() for p in body.split("|", 1))
    try:
        initial = parse_initial(state_text)
        settings = tuple(parse_setting(s) for s in settings_text.split(";") if s.strip())
    except ValueError as exc:
        raise ScenarioError(str(exc), line) from None
    for st in settings:
        needed = Space.elementary(st.subsystem) if isinstance(st, Elementary) else Space.JOINT
        if initial.space is not needed:
            raise ScenarioError(f"{st.label} needs a {needed.value} state, got {initial.space.value}", line)
    return Scenario(line, state_text, initial, settings)


def parse_scenarios(text: str) -> list[Scenario]:
    out = []
    for i, raw in enumerate(text.splitlines(), start=1):
        sc = parse_line(raw, i)
        if sc is not None:
            out.append(sc)
    return out


def load(path: Union[str, Path]) -> list[Scenario]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ScenarioError(f"cannot read {path}: {exc.strerror}") from None
    return parse_scenarios(text)
