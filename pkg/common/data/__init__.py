"""
Shared data package.
Contains the worked example tensors.
"""

from common.data.worked_examples import WORKED_EXAMPLES, WorkedExample

__all__ = ["WORKED_EXAMPLES", "WorkedExample"]
