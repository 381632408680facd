"""
Shared fixtures: the worked examples, small solver settings and an isolated
reports directory.
"""

import pytest

from common.config import config
from common.data.worked_examples import WORKED_EXAMPLES
from common.metrics import metrics_tracker
from spectra.options import SolverOptions
from tensors.core import make_tensor


@pytest.fixture
def ex1():
    return WORKED_EXAMPLES["EX-1"]


@pytest.fixture
def ex2():
    return WORKED_EXAMPLES["EX-2"]


@pytest.fixture
def ex3():
    return WORKED_EXAMPLES["EX-3"]


@pytest.fixture
def ex4():
    return WORKED_EXAMPLES["EX-4"]


@pytest.fixture(params=sorted(WORKED_EXAMPLES))
def worked_example(request):
    return WORKED_EXAMPLES[request.param]


@pytest.fixture
def opts():
    return SolverOptions(seed=7)


@pytest.fixture
def ones_tensor():
    """All-ones tensor of order 3, dimension 2 (rho = 4)."""
    return make_tensor(3, 2, [((i, j, k), 1.0) for i in (1, 2) for j in (1, 2) for k in (1, 2)])


@pytest.fixture(autouse=True)
def isolated_reports(tmp_path, monkeypatch):
    monkeypatch.setattr(config, "REPORTS_DIR", tmp_path / "reports")
    yield tmp_path / "reports"
    metrics_tracker.clear_metrics()
