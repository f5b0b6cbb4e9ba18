from fractions import Fraction
from itertools import combinations

import pytest

from mpcube.core import JointOnticState, OnticState, all_joint_states, all_ontic_states, parse_joint
from mpcube.epistemics import (
    JOINT_NAMES,
    EpistemicState,
    Space,
    SpaceMismatch,
    canonical_state,
    describe,
    point_state,
    state_name,
    states_equal,
    tensor,
    uniform_state,
)

# Written straight from the (in)equality conditions, independent of the
# sign-pattern lookup used by the package.
CONDITIONS = {
    "psi+": lambda a, b: a.x == b.x and a.y == b.y and a.z != b.z,
    "phi+": lambda a, b: a.x == b.x and a.y != b.y and a.z == b.z,
    "phi-": lambda a, b: a.x != b.x and a.y == b.y and a.z == b.z,
    "psi-": lambda a, b: a.x != b.x and a.y != b.y and a.z != b.z,
    "phi_i+": lambda a, b: a.x == b.y and a.y == b.x and a.z == b.z,
    "psi_i-": lambda a, b: a.x == b.y and a.y != b.x and a.z != b.z,
    "psi_i+": lambda a, b: a.x != b.y and a.y == b.x and a.z != b.z,
    "phi_i-": lambda a, b: a.x != b.y and a.y != b.x and a.z == b.z,
}


def oracle_support(name):
    return {w.encode() for w in all_joint_states() if CONDITIONS[name](w.first, w.second)}


class TestPointState:
    def test_single_support(self):
        w = parse_joint("(+,+,+)x(+,+,+)")
        e = point_state(w)
        assert e.support == (w.encode(),)
        assert e.weights[w.encode()] == 1

    def test_index_is_encoding(self):
        for w in all_joint_states():
            assert point_state(w).support == (w.encode(),)

    def test_single_cube(self):
        v = OnticState(1, -1, 1)
        e = point_state(v, subsystem=2)
        assert e.space is Space.ELEMENTARY2
        assert e.support == (v.encode(),)


class TestCanonical:
    def test_x_plus(self):
        e = canonical_state("x+")
        assert e.space is Space.ELEMENTARY1
        assert {OnticState.decode(i) for i in e.support} == {s for s in all_ontic_states() if s.x == 1}
        assert all(e.weights[i] == Fraction(1, 4) for i in e.support)

    @pytest.mark.parametrize("name", ["x+", "x-", "y+", "y-", "z+", "z-"])
    def test_elementary_faces(self, name):
        axis = "xyz".index(name[0])
        sign = 1 if name[1] == "+" else -1
        for sub in (1, 2):
            e = canonical_state(name, sub)
            expected = {s.encode() for s in all_ontic_states() if (s.x, s.y, s.z)[axis] == sign}
            assert set(e.support) == expected

    @pytest.mark.parametrize("name", JOINT_NAMES)
    def test_joint_matches_conditions(self, name):
        e = canonical_state(name)
        assert set(e.support) == oracle_support(name)
        assert len(e.support) == 8
        assert all(e.weights[i] == Fraction(1, 8) for i in e.support)

    def test_psi_minus_contains_antipodes(self):
        assert parse_joint("(+,+,+)x(-,-,-)").encode() in canonical_state("psi-").support

    def test_phi_i_plus_member(self):
        assert parse_joint("(+,-,+)x(-,+,+)").encode() in canonical_state("phi_i+").support

    def test_unicode_aliases(self):
        assert canonical_state("ψ−") == canonical_state("psi-")
        assert canonical_state("φᵢ+") == canonical_state("phi_i+")

    def test_unknown(self):
        with pytest.raises(ValueError):
            canonical_state("chi+")


class TestPartition:
    def test_direct_family(self):
        names = ["psi+", "phi+", "phi-", "psi-"]
        for a, b in combinations(names, 2):
            assert not set(canonical_state(a).support) & set(canonical_state(b).support)
        union = set().union(*(canonical_state(n).support for n in names))
        odd = set()
        for w in all_joint_states():
            a, b = w.first, w.second
            if ((a.x != b.x) + (a.y != b.y) + (a.z != b.z)) % 2 == 1:
                odd.add(w.encode())
        assert len(odd) == 32
        assert union == odd

    def test_swapped_family(self):
        names = ["phi_i+", "psi_i-", "psi_i+", "phi_i-"]
        for a, b in combinations(names, 2):
            assert not set(canonical_state(a).support) & set(canonical_state(b).support)
        union = set().union(*(canonical_state(n).support for n in names))
        even = set()
        for w in all_joint_states():
            a, b = w.first, w.second
            if ((a.x != b.y) + (a.y != b.x) + (a.z != b.z)) % 2 == 0:
                even.add(w.encode())
        assert len(even) == 32
        assert union == even


class TestTensor:
    def test_product_of_faces(self):
        e = tensor(canonical_state("x+", 1), canonical_state("y-", 2))
        assert len(e.support) == 16
        assert all(e.weights[i] == Fraction(1, 16) for i in e.support)
        for w in e.support_states():
            assert w.first.x == 1 and w.second.y == -1

    def test_point_times_point(self):
        a, b = OnticState(1, -1, 1), OnticState(-1, -1, 1)
        assert tensor(point_state(a, 1), point_state(b, 2)) == point_state(JointOnticState(a, b))

    def test_marginals(self):
        e1, e2 = canonical_state("z-", 1), canonical_state("x+", 2)
        joint = tensor(e1, e2)
        assert joint.marginal(1) == e1
        assert joint.marginal(2) == e2

    def test_space_mismatch(self):
        with pytest.raises(SpaceMismatch):
            tensor(canonical_state("x+", 2), canonical_state("x+", 2))


class TestEquality:
    def test_examples(self):
        assert states_equal(canonical_state("psi+"), canonical_state("psi+"))
        assert not states_equal(canonical_state("psi+"), canonical_state("phi+"))
        assert not states_equal(tensor(canonical_state("x+", 1), canonical_state("x+", 2)), canonical_state("psi+"))

    def test_space_mismatch(self):
        with pytest.raises(SpaceMismatch):
            states_equal(canonical_state("x+", 1), canonical_state("psi+"))


class TestValidation:
    def test_sum_must_be_one(self):
        with pytest.raises(ValueError):
            EpistemicState.from_mapping(Space.JOINT, {0: Fraction(1, 2)})

    def test_negative(self):
        with pytest.raises(ValueError):
            EpistemicState.from_mapping(Space.JOINT, {0: Fraction(3, 2), 1: Fraction(-1, 2)})

    def test_length(self):
        with pytest.raises(ValueError):
            EpistemicState(Space.ELEMENTARY1, (Fraction(1),))


class TestJson:
    def test_schema(self):
        doc = canonical_state("psi-").to_json()
        assert doc["space"] == "joint"
        assert len(doc["weights"]) == 8
        assert set(doc["weights"].values()) == {"1/8"}

    @pytest.mark.parametrize("name", JOINT_NAMES)
    def test_round_trip(self, name):
        e = canonical_state(name)
        assert EpistemicState.from_json(e.to_json()) == e

    def test_names(self):
        assert state_name(canonical_state("phi_i-")) == "phi_i-"
        assert state_name(tensor(canonical_state("x+", 1), canonical_state("y-", 2))) == "x+*y-"
        assert state_name(uniform_state()) is None
        assert describe(uniform_state())["space"] == "joint"
        assert len(describe(uniform_state())["support"]) == 64
