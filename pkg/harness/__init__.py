"""
Randomized generators, the theorem-check registry and the worked-example regression.
"""

from harness.generators import GenSpec, gen_patterned_tensor, gen_z_tensor
from harness.models import FailureRecord, TheoremReport
from harness.registry import check_theorem, get_check, list_checks, register
from harness.regression import regression_suite

__all__ = [
    "GenSpec",
    "gen_patterned_tensor",
    "gen_z_tensor",
    "FailureRecord",
    "TheoremReport",
    "check_theorem",
    "get_check",
    "list_checks",
    "register",
    "regression_suite",
]
