"""Computational group theory for the amalgam of two copies of AGL_2(3):
presentations, coset enumeration, permutation groups, SL_3(3), the Steiner
system S(5,6,12) and the two edge-transitive graphs."""

from .coset_enum import CosetTable, EnumerationLimits, LimitExceeded, coset_action, enumerate_cosets
from .perm import Perm, PermutationGroup
from .presentation import Presentation, parse_presentation
from .scenarios import VerifyConfig, list_scenarios, run_scenario
from .words import Word, free_reduce

__version__ = "0.1.0"
