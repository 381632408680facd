"""
End-to-end regression over the worked examples.

Each example is decomposed, run through the detector and the solvers, and
compared with its known eigenvalue. Failures land in the report; nothing raises.
"""

import time
from typing import List, Optional

from common.data.worked_examples import WORKED_EXAMPLES, WorkedExample
from common.errors import ZTensorError
from common.logging_config import get_logger
from harness.models import FailureRecord, TheoremReport
from spectra.options import SolverOptions
from spectra.z_eigen import compare_with_absolute, rows_vanish
from structure.bipartite import find_weak_odd_bipartitions

logger = get_logger(__name__)

REGRESSION_TOL = 1e-8


def run_example(example: WorkedExample, opts: Optional[SolverOptions] = None) -> TheoremReport:
    """Run one worked example and report it as a single trial."""
    start = time.perf_counter()
    problems: List[str] = []
    notes: List[str] = []

    try:
        comparison = compare_with_absolute(example.A, opts)
        C = comparison.decomposition.C
        candidates = find_weak_odd_bipartitions(C)

        notes.append(f"lambda(A)={comparison.a_pair.lam:.12g}")
        notes.append(f"lambda(|A|)={comparison.abs_pair.lam:.12g}")
        notes.append(f"route={comparison.route}")
        if comparison.witness is not None:
            notes.append(f"witness={sorted(comparison.witness)}")
        if example.A.order % 2 == 1 and candidates:
            notes.append(
                "vanishing rows on V: "
                + ", ".join(f"{sorted(V)}={rows_vanish(C, V)}" for V in candidates)
            )

        if abs(comparison.a_pair.lam - example.expected_lambda) > REGRESSION_TOL:
            problems.append(
                f"lambda(A)={comparison.a_pair.lam:.12g}, expected {example.expected_lambda}"
            )
        if abs(comparison.abs_pair.lam - example.expected_lambda) > REGRESSION_TOL:
            problems.append(
                f"lambda(|A|)={comparison.abs_pair.lam:.12g}, expected {example.expected_lambda}"
            )
        if example.has_weak_odd_bipartition:
            if example.expected_witness not in candidates:
                problems.append(
                    f"detector missed V={sorted(example.expected_witness)}: "
                    f"{[sorted(v) for v in candidates]}"
                )
        elif candidates:
            problems.append(f"detector found unexpected bipartitions {[sorted(v) for v in candidates]}")
    except ZTensorError as e:
        problems.append(f"{type(e).__name__}: {e}")

    failures = [FailureRecord(seed=0, detail="; ".join(problems))] if problems else []
    report = TheoremReport(
        theorem_id=example.key,
        trials=1,
        passes=0 if problems else 1,
        failures=failures,
        wall_time=time.perf_counter() - start,
        orders=[example.A.order],
        dims=[example.A.dim],
        notes=notes,
    )
    if problems:
        logger.warning(f"{example.key} FAILED: {'; '.join(problems)}")
    else:
        logger.info(f"{example.key} passed ({', '.join(notes)})")
    return report


def regression_suite(opts: Optional[SolverOptions] = None) -> List[TheoremReport]:
    """Reports for every worked example, in key order."""
    return [run_example(WORKED_EXAMPLES[key], opts) for key in sorted(WORKED_EXAMPLES)]
