"""Tests for the tensor file formats."""

import json

import pytest

from common.errors import DuplicateEntryError, IndexOutOfRangeError, TensorFormatError
from tensors.io import (
    TensorDocument,
    dump_plain,
    dump_structured,
    load_tensor,
    parse_plain,
    parse_structured,
    parse_tensor,
    save_tensor,
    tensor_to_dict,
)

PLAIN_EX2 = """\
# order: 5
# dim: 3
1 1 1 1 1 1.0
2 2 2 2 2 1.0
3 3 3 3 3 3.0
1 1 3 3 3 -1.0   # c11333
2 2 3 3 3 -2.0
"""


def test_plain_with_headers(ex2):
    assert parse_plain(PLAIN_EX2) == ex2.A


def test_plain_infers_shape():
    T = parse_plain("1 2 0.5\n3 1 -1\n")
    assert (T.order, T.dim) == (2, 3)


def test_plain_header_widens_dimension():
    T = parse_plain("# dim: 4\n1 2 1.0\n")
    assert T.dim == 4


def test_plain_empty_needs_header():
    with pytest.raises(TensorFormatError):
        parse_plain("# just a comment\n")
    T = parse_plain("# order: 3\n# dim: 2\n")
    assert T.nnz == 0


@pytest.mark.parametrize("text", ["1 2\n", "1 a 2.0\n", "1 2 1.0\n1 2 3 1.0\n"])
def test_plain_malformed(text):
    with pytest.raises(TensorFormatError):
        parse_plain(text)


def test_plain_conflicting_duplicate():
    with pytest.raises(DuplicateEntryError):
        parse_plain("1 2 1.0\n1 2 2.0\n")


def test_structured(ex4):
    text = json.dumps({
        "order": 4, "dim": 2,
        "entries": [
            {"idx": [1, 1, 1, 1], "val": 1.0},
            {"idx": [2, 2, 2, 2], "val": 1.0},
            {"idx": [1, 1, 2, 2], "val": -1.0},
        ],
    })
    assert parse_structured(text) == ex4.A
    assert parse_tensor("\n  " + text) == ex4.A


@pytest.mark.parametrize("text", ["{not json", '{"order": 1, "dim": 2}', '{"dim": 2}'])
def test_structured_malformed(text):
    with pytest.raises(TensorFormatError):
        parse_structured(text)


def test_structured_index_out_of_range():
    with pytest.raises(IndexOutOfRangeError):
        parse_structured('{"order": 2, "dim": 2, "entries": [{"idx": [1, 3], "val": 1}]}')


def test_writers_sort_entries(ex3):
    doc = tensor_to_dict(ex3.A)
    indices = [tuple(e["idx"]) for e in doc["entries"]]
    assert indices == sorted(indices)
    lines = [l for l in dump_plain(ex3.A).splitlines() if not l.startswith("#")]
    assert [tuple(int(i) for i in l.split()[:-1]) for l in lines] == indices


@pytest.mark.parametrize("plain", [False, True])
def test_save_and_load(tmp_path, worked_example, plain):
    path = save_tensor(worked_example.A, tmp_path / "nested" / "t.tensor", plain=plain)
    assert load_tensor(path) == worked_example.A


def test_load_missing_file(tmp_path):
    with pytest.raises(OSError):
        load_tensor(tmp_path / "missing.tensor")


def test_document_round_trip(ex1):
    doc = TensorDocument.model_validate_json(dump_structured(ex1.A))
    assert doc.to_tensor() == ex1.A
    assert TensorDocument.from_tensor(ex1.A) == doc
