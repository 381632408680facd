"""
Worked examples with known largest H-eigenvalues.
Used by the regression suite, the demo script and the tests.
"""

from dataclasses import dataclass
from typing import Dict, FrozenSet, Optional

from tensors.core import Tensor, make_tensor
from tensors.zform import compose


@dataclass(frozen=True)
class WorkedExample:
    """A Z-tensor A with its expected lambda(A) = lambda(|A|)."""

    key: str
    title: str
    A: Tensor
    expected_lambda: float
    # A set that must be among the weak odd-bipartitions of C, if any
    expected_witness: Optional[FrozenSet[int]]
    has_weak_odd_bipartition: bool


def _z_tensor(order: int, d, c_entries: Dict[tuple, float]) -> Tensor:
    return compose(d, make_tensor(order, len(d), c_entries.items()))


WORKED_EXAMPLES: Dict[str, WorkedExample] = {
    "EX-1": WorkedExample(
        key="EX-1",
        title="Order 5, d=(1,1,1), c11122=c22233=1",
        A=_z_tensor(5, (1.0, 1.0, 1.0), {(1, 1, 1, 2, 2): 1.0, (2, 2, 2, 3, 3): 1.0}),
        expected_lambda=1.0,
        expected_witness=frozenset({1, 2}),
        has_weak_odd_bipartition=True,
    ),
    "EX-2": WorkedExample(
        key="EX-2",
        title="Order 5, d=(1,1,3), c11333=1, c22333=2",
        A=_z_tensor(5, (1.0, 1.0, 3.0), {(1, 1, 3, 3, 3): 1.0, (2, 2, 3, 3, 3): 2.0}),
        expected_lambda=3.0,
        expected_witness=frozenset({3}),
        has_weak_odd_bipartition=True,
    ),
    "EX-3": WorkedExample(
        key="EX-3",
        title="Order 5, d=(1,2,4), c11122=1, c11333=1, c22233=2",
        A=_z_tensor(
            5, (1.0, 2.0, 4.0),
            {(1, 1, 1, 2, 2): 1.0, (1, 1, 3, 3, 3): 1.0, (2, 2, 2, 3, 3): 2.0},
        ),
        expected_lambda=4.0,
        expected_witness=None,
        has_weak_odd_bipartition=False,
    ),
    "EX-4": WorkedExample(
        key="EX-4",
        title="Order 4, a1111=a2222=1, a1122=-1",
        A=_z_tensor(4, (1.0, 1.0), {(1, 1, 2, 2): 1.0}),
        expected_lambda=1.0,
        expected_witness=None,
        has_weak_odd_bipartition=False,
    ),
}
