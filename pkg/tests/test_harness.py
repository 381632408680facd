"""Tests for the generators, the theorem-check registry and the regression suite."""

import pytest
from pydantic import ValidationError

from common.errors import (
    HarnessError,
    MaxItersExceededError,
    RetriesExhaustedError,
    TensorInputError,
    UnknownTheoremError,
)
from common.config import config
from common.metrics import TrialStatus, metrics_tracker
from harness.generators import GenSpec, gen_patterned_tensor, gen_z_tensor, random_index_set
from harness.models import FailureRecord, TheoremReport
from harness.registry import (
    TrialContext,
    TrialOutcome,
    check_theorem,
    get_check,
    list_checks,
    register,
    run_trial,
)
from harness.regression import regression_suite
from structure.bipartite import is_odd_bipartite, is_weakly_odd_bipartite
from structure.graphs import is_weakly_irreducible
from tensors.core import is_symmetric
from tensors.io import load_tensor
from tensors.zform import is_z_form, z_decompose

import harness.checks as checks_module
import harness.registry as registry_module
import numpy as np

ALL_CHECKS = [
    "L-dual", "T-oddbip-irred", "T-evenbip-red", "C-weakirred", "X-detector",
    "T-eq-odd", "T-eq-weak", "T-iff", "T-odd-suff", "C-odd-even", "X-oracle",
    "P-shift", "T-sign-sim", "C-spec-eq", "T-rho-iff",
]


class TestGenerators:
    def test_deterministic(self):
        spec = GenSpec(4, 3, bipartition=frozenset({1}), seed=12)
        assert gen_z_tensor(spec) == gen_z_tensor(spec)
        assert gen_z_tensor(spec) != gen_z_tensor(GenSpec(4, 3, bipartition=frozenset({1}), seed=13))

    def test_bipartite_support(self):
        V = frozenset({1, 2})
        A = gen_z_tensor(GenSpec(4, 4, bipartition=V, seed=3, density=0.5))
        assert is_z_form(A)
        C = z_decompose(A).C
        assert C.nnz == 0 or is_weakly_odd_bipartite(C, V)

    def test_strict_support(self):
        V = frozenset({3})
        C = z_decompose(gen_z_tensor(GenSpec(4, 3, bipartition=V, strict=True, seed=1))).C
        assert is_odd_bipartite(C, V)

    def test_vanishing_rows(self):
        V = frozenset({1})
        C = z_decompose(gen_z_tensor(GenSpec(3, 3, bipartition=V, vanishing_rows=V, density=0.8, seed=2))).C
        assert all(idx[0] != 1 for idx in C.entries)

    def test_weakly_irreducible_and_symmetric(self):
        A = gen_z_tensor(GenSpec(
            4, 3, bipartition=frozenset({2}), require_weakly_irreducible=True, symmetric=True, seed=6,
        ))
        assert is_weakly_irreducible(z_decompose(A).C)
        assert is_symmetric(A)

    def test_retries_exhausted(self, monkeypatch):
        monkeypatch.setattr(config, "GENERATOR_RETRIES", 2)
        # every row vanishes, so C is empty and never connected
        spec = GenSpec(3, 3, vanishing_rows=frozenset({1, 2, 3}), require_weakly_irreducible=True)
        with pytest.raises(RetriesExhaustedError):
            gen_z_tensor(spec)

    @pytest.mark.parametrize("changes", [
        {"density": 0.0}, {"parity": "both"}, {"diag_range": (-1.0, 1.0)}, {"bipartition": frozenset({1, 2, 3})},
    ])
    def test_spec_validation(self, changes):
        with pytest.raises(TensorInputError):
            GenSpec(3, 3, **changes)

    def test_patterned_tensor_is_signed(self):
        T = gen_patterned_tensor(3, 3, seed=0, density=1.0)
        assert (T.values < 0).any() and (T.values > 0).any()

    def test_random_index_set(self):
        rng = np.random.default_rng(0)
        for _ in range(20):
            V = random_index_set(rng, 4)
            assert 1 <= len(V) <= 3
        with pytest.raises(TensorInputError):
            random_index_set(rng, 1)


class TestReports:
    def test_accounting_is_enforced(self):
        with pytest.raises(ValidationError):
            TheoremReport(theorem_id="x", trials=3, passes=1)
        report = TheoremReport(
            theorem_id="x", trials=3, passes=1, inconclusive=1,
            failures=[FailureRecord(seed=4, detail="boom")],
        )
        assert not report.ok
        assert report.inconclusive_rate == pytest.approx(1 / 3)


class TestRegistry:
    def test_all_checks_registered(self):
        assert sorted(d.theorem_id for d in list_checks()) == sorted(ALL_CHECKS)

    def test_unknown_check(self):
        with pytest.raises(UnknownTheoremError):
            get_check("T-nope")
        with pytest.raises(KeyError):
            check_theorem("T-nope", 1)

    def test_no_admissible_sizes(self):
        with pytest.raises(HarnessError):
            check_theorem("T-eq-odd", 1, orders=[3, 5])

    def test_negative_trials(self):
        with pytest.raises(HarnessError):
            check_theorem("L-dual", -1)

    def test_run_trial_is_picklable_tuple(self):
        seed, status, document, detail = run_trial("L-dual", 5, [3], [3])
        assert seed == 5
        assert status == TrialStatus.PASS.value
        assert document is None
        assert detail.startswith("m=3, n=3")

    def test_oracle_check_is_inconclusive_when_power_iteration_stalls(self, monkeypatch):
        def stalled(*args, **kwargs):
            raise MaxItersExceededError("budget spent")

        monkeypatch.setattr(checks_module, "power_iteration_rho", stalled)
        _, status, document, detail = run_trial("X-oracle", 3, [3], [2])
        assert status == TrialStatus.INCONCLUSIVE.value
        assert "power iteration did not converge" in detail
        assert document is not None

    @pytest.fixture
    def scratch_registry(self, monkeypatch):
        list_checks()
        monkeypatch.setattr(registry_module, "_REGISTRY", dict(registry_module._REGISTRY))

    def test_failures_are_written(self, isolated_reports, scratch_registry):
        @register("X-always-fails", "test-only check", orders=(3,), dims=(2,))
        def always_fails(ctx: TrialContext) -> TrialOutcome:
            T = gen_patterned_tensor(ctx.order, ctx.dim, ctx.seed)
            return TrialOutcome.failed("by construction", T)

        report = check_theorem("X-always-fails", 3, seed=10)
        assert report.passes == 0
        assert [f.seed for f in report.failures] == [10, 11, 12]
        for failure in report.failures:
            assert load_tensor(failure.tensor_path).order == 3
            assert str(isolated_reports) in failure.tensor_path

    def test_exceptions_become_failures_or_inconclusive(self, scratch_registry):
        @register("X-raises", "test-only check", orders=(3,), dims=(2,))
        def raises(ctx: TrialContext) -> TrialOutcome:
            if ctx.seed % 2:
                raise RetriesExhaustedError("no tensor")
            raise ValueError("bug")

        report = check_theorem("X-raises", 4, seed=0)
        assert report.inconclusive == 2
        assert len(report.failures) == 2
        assert report.passes + report.inconclusive + len(report.failures) == report.trials

    def test_metrics_are_tracked(self):
        check_theorem("L-dual", 3, seed=1)
        summary = metrics_tracker.get_summary()
        assert "L-dual" in summary
        assert "L-dual" in metrics_tracker.format_summary_report()

    def test_reports_are_deterministic(self):
        first = check_theorem("X-detector", 6, seed=3)
        second = check_theorem("X-detector", 6, seed=3)
        assert first.model_dump(exclude={"wall_time"}) == second.model_dump(exclude={"wall_time"})


@pytest.mark.parametrize("theorem_id,trials", [
    ("L-dual", 10), ("T-oddbip-irred", 10), ("T-evenbip-red", 10), ("C-weakirred", 10),
    ("X-detector", 10), ("T-eq-odd", 5), ("T-odd-suff", 5), ("C-odd-even", 5),
    ("P-shift", 5), ("T-sign-sim", 5), ("C-spec-eq", 5),
])
def test_checks_have_no_failures(theorem_id, trials):
    report = check_theorem(theorem_id, trials, seed=100)
    assert report.trials == trials
    assert report.ok, [f.detail for f in report.failures]


@pytest.mark.slow
@pytest.mark.parametrize("theorem_id", ALL_CHECKS)
def test_acceptance_scale(theorem_id):
    report = check_theorem(theorem_id, 100, seed=0, workers=2)
    assert report.ok, [f.detail for f in report.failures]
    assert report.inconclusive_rate <= 0.05


class TestRegression:
    def test_all_worked_examples_pass(self):
        reports = regression_suite()
        assert [r.theorem_id for r in reports] == ["EX-1", "EX-2", "EX-3", "EX-4"]
        for report in reports:
            assert report.ok, [f.detail for f in report.failures]
            assert report.wall_time < 1.0, f"{report.theorem_id} took {report.wall_time:.2f}s"

    def test_notes_record_route_and_rows(self):
        notes = {r.theorem_id: r.notes for r in regression_suite()}
        assert "route=sign-flip" in notes["EX-2"]
        assert "witness=[3]" in notes["EX-2"]
        assert "route=direct" in notes["EX-1"]
        assert "lambda(|A|)=1" in notes["EX-1"]
        assert any(n.startswith("vanishing rows on V") for n in notes["EX-1"])


@pytest.mark.slow
def test_non_bipartite_side_shows_a_strict_gap():
    report = check_theorem("T-iff", 100, seed=0, params={"side": "non-bipartite"}, workers=2)
    assert report.ok, [f.detail for f in report.failures]
    assert report.inconclusive_rate <= 0.10


@pytest.mark.slow
def test_weakly_bipartite_equality_at_scale():
    report = check_theorem("T-eq-weak", 200, seed=0, orders=[4], dims=[3, 4, 5], workers=2)
    assert report.trials == 200
    assert report.ok, [f.detail for f in report.failures]
    assert report.dims == [3, 4, 5]
