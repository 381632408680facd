"""
Timing and outcome metrics for theorem checks.
Feeds the wall time and bucket counts of harness reports.
"""

import time
import logging
from collections import deque
from typing import Deque, Dict, Optional
from dataclasses import dataclass, field
from enum import Enum

from common.config import config

logger = logging.getLogger(__name__)


class TrialStatus(Enum):
    """Outcome bucket of a single harness trial."""
    PASS = "pass"
    FAIL = "fail"
    INCONCLUSIVE = "inconclusive"


@dataclass
class CheckMetrics:
    """Metrics for one run of a theorem check."""

    theorem_id: str
    run_id: str
    start_time: float
    end_time: Optional[float] = None
    outcomes: Dict[TrialStatus, int] = field(
        default_factory=lambda: {status: 0 for status in TrialStatus}
    )

    @property
    def wall_time(self) -> float:
        """Elapsed seconds (up to now while the run is active)."""
        end = self.end_time if self.end_time is not None else time.perf_counter()
        return end - self.start_time

    @property
    def trials(self) -> int:
        return sum(self.outcomes.values())

    @property
    def pass_rate(self) -> float:
        """Fraction of trials that passed."""
        if self.trials == 0:
            return 0.0
        return self.outcomes[TrialStatus.PASS] / self.trials

    @property
    def inconclusive_rate(self) -> float:
        if self.trials == 0:
            return 0.0
        return self.outcomes[TrialStatus.INCONCLUSIVE] / self.trials


class MetricsTracker:
    """
    Tracks wall time and trial outcomes for theorem-check runs.

    One run is opened per check_theorem call; trials report into it and the
    finished record is kept for summary tables. Only the most recent
    `history` runs are retained.
    """

    def __init__(self, history: Optional[int] = None):
        self._metrics: Deque[CheckMetrics] = deque(maxlen=history or config.METRICS_HISTORY)
        self._active_runs: Dict[str, CheckMetrics] = {}

    def start_check(self, theorem_id: str, run_id: str) -> CheckMetrics:
        """
        Start tracking a check run.

        Args:
            theorem_id: Registered check id
            run_id: Unique id of this run

        Returns:
            CheckMetrics object for tracking
        """
        metrics = CheckMetrics(
            theorem_id=theorem_id,
            run_id=run_id,
            start_time=time.perf_counter()
        )
        self._active_runs[run_id] = metrics
        logger.debug(f"Started tracking {theorem_id} run {run_id}")
        return metrics

    def record_outcome(self, run_id: str, status: TrialStatus) -> None:
        """Count one trial outcome for an active run."""
        if run_id not in self._active_runs:
            logger.warning(f"No active check run found for {run_id}")
            return
        self._active_runs[run_id].outcomes[status] += 1

    def finish_check(self, run_id: str) -> Optional[CheckMetrics]:
        """
        Complete a run and store its metrics.

        Args:
            run_id: Run to complete

        Returns:
            Completed CheckMetrics object, or None if the run is unknown
        """
        if run_id not in self._active_runs:
            logger.warning(f"No active check run found for {run_id}")
            return None

        metrics = self._active_runs.pop(run_id)
        metrics.end_time = time.perf_counter()
        self._metrics.append(metrics)

        logger.info(
            f"Completed {metrics.theorem_id} - trials: {metrics.trials}, "
            f"pass rate: {metrics.pass_rate:.1%}, time: {metrics.wall_time:.2f}s"
        )
        return metrics

    def get_summary(self) -> Dict[str, Dict[str, float]]:
        """
        Aggregate finished runs per theorem id.

        Returns:
            Dictionary keyed by theorem id
        """
        summary: Dict[str, Dict[str, float]] = {}
        for metrics in self._metrics:
            entry = summary.setdefault(metrics.theorem_id, {
                'runs': 0, 'trials': 0, 'passes': 0, 'inconclusive': 0,
                'failures': 0, 'wall_time': 0.0
            })
            entry['runs'] += 1
            entry['trials'] += metrics.trials
            entry['passes'] += metrics.outcomes[TrialStatus.PASS]
            entry['inconclusive'] += metrics.outcomes[TrialStatus.INCONCLUSIVE]
            entry['failures'] += metrics.outcomes[TrialStatus.FAIL]
            entry['wall_time'] += metrics.wall_time
        return summary

    def format_summary_report(self) -> str:
        """
        Format finished runs as a markdown table.

        Returns:
            Formatted summary
        """
        report = "| Check | Trials | Passes | Inconclusive | Failures | Time (s) |\n"
        report += "|-------|--------|--------|--------------|----------|----------|\n"
        for theorem_id, entry in sorted(self.get_summary().items()):
            report += (
                f"| {theorem_id} | {entry['trials']} | {entry['passes']} | "
                f"{entry['inconclusive']} | {entry['failures']} | {entry['wall_time']:.2f} |\n"
            )
        return report

    def clear_metrics(self) -> None:
        """Clear stored metrics."""
        self._metrics.clear()
        logger.debug("Cleared all check metrics")


# Global metrics tracker instance
metrics_tracker = MetricsTracker()
