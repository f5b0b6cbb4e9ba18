"""A classical two-cube model with epistemically restricted, disturbing measurements.

Sequential measurements in the model reproduce the sign pattern of the
Mermin-Peres magic square for every initial ontic state.
"""
from .core import JointOnticState, Observable, OnticState, evaluate_observable, parity_profile, parse_joint
from .epistemics import EpistemicState, canonical_state, point_state, states_equal, tensor
from .measurement import Branch, Outcome, measure, measure_elementary, outcome_of, parse_setting, post_state_for, sample
from .sequences import Context, Trace, assign_values, context_product, run_exact, run_sampled
from .verifier import VerificationReport, exhaustive_verify, square_products

__version__ = "0.1.0"

__all__ = [
    "Branch",
    "Context",
    "EpistemicState",
    "JointOnticState",
    "Observable",
    "OnticState",
    "Outcome",
    "Trace",
    "VerificationReport",
    "assign_values",
    "canonical_state",
    "context_product",
    "evaluate_observable",
    "exhaustive_verify",
    "measure",
    "measure_elementary",
    "outcome_of",
    "parity_profile",
    "parse_joint",
    "parse_setting",
    "point_state",
    "post_state_for",
    "run_exact",
    "run_sampled",
    "sample",
    "square_products",
    "states_equal",
    "tensor",
]
