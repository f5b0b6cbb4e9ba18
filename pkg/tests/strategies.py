from fractions import Fraction

from hypothesis import strategies as st

from mpcube.epistemics import EpistemicState, Space
from mpcube.measurement import JOINT_SETTINGS


@st.composite
def joint_states(draw, max_support=64):
    """Random joint distributions with dyadic weights, like every state the model produces."""
    support = draw(st.lists(st.integers(0, 63), min_size=1, max_size=max_support, unique=True))
    raw = draw(st.lists(st.integers(1, 8), min_size=len(support), max_size=len(support)))
    total = sum(raw)
    return EpistemicState.from_mapping(Space.JOINT, {i: Fraction(r, total) for i, r in zip(support, raw)})


joint_settings = st.sampled_from(JOINT_SETTINGS)
