"""Tests for the HTTP backend."""

import pytest
from fastapi.testclient import TestClient

from backend.api import app
from common.config import config
from tensors.io import TensorDocument, dump_plain

client = TestClient(app)


def _doc(example):
    return TensorDocument.from_tensor(example.A).model_dump()


def test_health():
    response = client.get("/health")
    assert response.status_code == 200
    body = response.json()
    assert body["status"] == "healthy"
    assert body["theorems_count"] >= 15


def test_theorems():
    response = client.get("/theorems")
    assert response.status_code == 200
    ids = {item["theorem_id"] for item in response.json()}
    assert {"L-dual", "T-eq-odd", "T-sign-sim"} <= ids


def test_inspect(ex2):
    response = client.post("/inspect", json=_doc(ex2))
    assert response.status_code == 200
    body = response.json()
    assert (body["order"], body["dim"], body["nnz"]) == (5, 3, 5)
    assert body["z_form"] is True


def test_compare(ex2):
    response = client.post("/compare", json=_doc(ex2), params={"seed": 7})
    assert response.status_code == 200
    body = response.json()
    assert body["lambda_a"] == pytest.approx(3.0, abs=1e-8)
    assert body["witness"] == [3]
    assert body["equal"] is True


def test_bipartite_without_witnesses(ex4):
    response = client.post("/bipartite", json=_doc(ex4), params={"kind": "odd"})
    assert response.status_code == 200
    assert response.json()["witnesses"] == []
    assert response.json()["verdict"] is False


def test_bipartite_rejects_unknown_kind(ex4):
    assert client.post("/bipartite", json=_doc(ex4), params={"kind": "both"}).status_code == 422


def test_charpoly_needs_dimension_two(ex3, ex4):
    assert client.post("/charpoly", json=_doc(ex3)).status_code == 400
    response = client.post("/charpoly", json=_doc(ex4))
    assert response.status_code == 200
    assert response.json()["degree"] == 6


def test_irreducible(ones_tensor):
    doc = TensorDocument.from_tensor(ones_tensor).model_dump()
    body = client.post("/irreducible", json=doc).json()
    assert body["irreducible"] is True
    assert body["witness"] is None


def test_eig_power(ones_tensor):
    doc = TensorDocument.from_tensor(ones_tensor).model_dump()
    body = client.post("/eig", json=doc, params={"method": "power"}).json()
    assert body["pairs"][0]["lam"] == pytest.approx(4.0)


def test_malformed_documents():
    assert client.post("/inspect", json={"order": 1, "dim": 2}).status_code == 422
    bad_index = {"order": 2, "dim": 2, "entries": [{"idx": [1, 3], "val": 1.0}]}
    assert client.post("/inspect", json=bad_index).status_code == 400


def test_upload_plain_text(ex2):
    files = {"file": ("ex2.tensor", dump_plain(ex2.A).encode("utf-8"), "text/plain")}
    response = client.post("/tensors/upload", files=files)
    assert response.status_code == 200
    body = response.json()
    assert body["filename"] == "ex2.tensor"
    assert TensorDocument.model_validate(body["document"]).to_tensor() == ex2.A


def test_upload_rejects_binary():
    files = {"file": ("blob.bin", b"\xff\xfe\x00", "application/octet-stream")}
    assert client.post("/tensors/upload", files=files).status_code == 400


def test_verify_unknown_theorem():
    assert client.post("/verify", json={"theorem_id": "T-nope", "trials": 1}).status_code == 404


def test_verify():
    response = client.post("/verify", json={"theorem_id": "L-dual", "trials": 3, "orders": [3], "dims": [3]})
    assert response.status_code == 200
    body = response.json()
    assert body["verdict"] is True
    assert body["report"]["passes"] == 3


def test_regression():
    response = client.get("/regression")
    assert response.status_code == 200
    assert [r["theorem_id"] for r in response.json()["reports"]] == ["EX-1", "EX-2", "EX-3", "EX-4"]


def test_rho_nonnegative(ones_tensor):
    doc = TensorDocument.from_tensor(ones_tensor).model_dump()
    body = client.post("/rho", json=doc).json()
    assert body["value"] == pytest.approx(4.0)
    assert body["method"] == "power"
    assert body["lower_bound"] is False


def test_rho_dimension_two_uses_charpoly(ex4):
    body = client.post("/rho", json=_doc(ex4)).json()
    assert body["value"] == pytest.approx(1.0)
    assert body["method"] == "charpoly"


def test_verify_rejects_oversized_trial_counts():
    request = {"theorem_id": "L-dual", "trials": config.API_MAX_TRIALS + 1}
    assert client.post("/verify", json=request).status_code == 422
