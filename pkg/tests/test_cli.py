"""Tests for the command-line front end."""

import json

import pytest

from cli.main import EXIT_FALSE, EXIT_INPUT, EXIT_OK, render, run
from common.data.worked_examples import WORKED_EXAMPLES
from tensors.io import save_tensor
from tensors.zform import z_decompose


@pytest.fixture
def example_files(tmp_path):
    return {
        key: str(save_tensor(ex.A, tmp_path / f"{key.lower()}.tensor", plain=(key == "EX-2")))
        for key, ex in WORKED_EXAMPLES.items()
    }


def _structured(capsys, argv):
    code = run(["--format", "structured", *argv])
    return code, json.loads(capsys.readouterr().out)


def test_compare_structured(example_files, capsys):
    code, data = _structured(capsys, ["compare", example_files["EX-2"]])
    assert code == EXIT_OK
    assert data["lambda_a"] == pytest.approx(3.0)
    assert data["lambda_abs"] == pytest.approx(3.0)
    assert data["witness"] == [3]
    assert data["route"] == "sign-flip"
    assert data["verdict"] is True


def test_inspect_table(example_files, capsys):
    assert run(["inspect", example_files["EX-1"]]) == EXIT_OK
    out = capsys.readouterr().out
    assert "order" in out
    assert "z_form" in out


def test_bipartite_false_verdict(example_files, capsys):
    assert run(["bipartite", example_files["EX-4"], "--kind", "odd"]) == EXIT_FALSE
    assert "none" in capsys.readouterr().out


def test_bipartite_finds_witnesses(tmp_path, capsys):
    path = save_tensor(z_decompose(WORKED_EXAMPLES["EX-2"].A).C, tmp_path / "c.tensor")
    code, data = _structured(capsys, ["bipartite", str(path), "--kind", "even", "--limit", "1"])
    assert code == EXIT_OK
    assert len(data["witnesses"]) == 1


def test_charpoly(example_files, capsys):
    code, data = _structured(capsys, ["charpoly", example_files["EX-4"]])
    assert code == EXIT_OK
    assert data["degree"] == 6
    assert data["spectral_radius"] == pytest.approx(1.0)


def test_rho(example_files, capsys):
    code, data = _structured(capsys, ["rho", example_files["EX-4"]])
    assert code == EXIT_OK
    assert data["value"] == pytest.approx(1.0)
    assert data["method"] == "charpoly"
    assert data["lower_bound"] is False


def test_charpoly_rejects_dimension_three(example_files, capsys):
    assert run(["charpoly", example_files["EX-3"]]) == EXIT_INPUT
    assert "error" in capsys.readouterr().err


def test_similar_odd_order_is_false(example_files, capsys):
    assert run(["similar", example_files["EX-1"]]) == EXIT_FALSE


def test_missing_file(tmp_path, capsys):
    assert run(["inspect", str(tmp_path / "nope.tensor")]) == EXIT_INPUT


@pytest.mark.parametrize("argv", [[], ["frobnicate"], ["bipartite"], ["verify"], ["verify", "--theorem", "L-dual", "--orders", "a,b"]])
def test_bad_arguments(argv, capsys):
    assert run(argv) == EXIT_INPUT


def test_help_exits_cleanly(capsys):
    assert run(["--help"]) == EXIT_OK


def test_verify(capsys):
    code, data = _structured(capsys, ["verify", "--theorem", "L-dual", "--trials", "3", "--orders", "3", "--dims", "3"])
    assert code == EXIT_OK
    assert data["report"]["trials"] == 3
    assert data["report"]["passes"] == 3


def test_verify_unknown_theorem(capsys):
    assert run(["verify", "--theorem", "T-nope", "--trials", "1"]) == EXIT_INPUT


def test_render_rounds_floats():
    from analysis.models import RhoResult

    data = json.loads(render(RhoResult(value=1 / 3, method="power", lower_bound=False), "structured"))
    assert data["value"] == float(format(1 / 3, ".12g"))
    assert "lower_bound  False" in render(RhoResult(value=1.0, method="power", lower_bound=False))
