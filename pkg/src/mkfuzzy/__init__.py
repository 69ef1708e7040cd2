"""MK-fuzzy automata over the bimonoid of four-valued truth quadruples."""

from .kvalues import ONE, ZERO, TruthValue, conj, disj, parse_truth
from .mkauto import MkAutomaton, behavior

__all__ = ["ONE", "ZERO", "TruthValue", "conj", "disj", "parse_truth", "MkAutomaton", "behavior"]
__version__ = "0.1.0"
