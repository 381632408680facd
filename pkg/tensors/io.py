"""
Tensor file format.

Structured form (JSON):
    {"order": 5, "dim": 3, "entries": [{"idx": [1, 1, 3, 3, 3], "val": -1.0}, ...]}

Plain-text form: one entry per line, `i1 i2 ... im value`, `#` starts a comment.
A plain-text file may declare its shape with `# order: m` and `# dim: n`
header comments; otherwise order is the tuple length and dim the largest index.
Indices are 1-based in both forms. Writers sort entries lexicographically.
"""

import json
from pathlib import Path
from typing import List, Union

from pydantic import BaseModel, Field, ValidationError

from common.errors import TensorFormatError
from common.logging_config import get_logger
from tensors.core import Tensor, make_tensor

logger = get_logger(__name__)


class EntryDocument(BaseModel):
    """One stored entry."""
    idx: List[int]
    val: float


class TensorDocument(BaseModel):
    """Structured tensor document, shared by files and the HTTP surface."""
    order: int = Field(..., ge=2)
    dim: int = Field(..., ge=1)
    entries: List[EntryDocument] = Field(default_factory=list)

    def to_tensor(self) -> Tensor:
        return make_tensor(self.order, self.dim, ((e.idx, e.val) for e in self.entries))

    @classmethod
    def from_tensor(cls, tensor: Tensor) -> "TensorDocument":
        return cls(
            order=tensor.order,
            dim=tensor.dim,
            entries=[EntryDocument(idx=list(k), val=v) for k, v in sorted(tensor.entries.items())],
        )


def parse_structured(text: str) -> Tensor:
    """
    Parse the JSON form.

    Raises:
        TensorFormatError: On malformed JSON or a document that fails validation
    """
    try:
        document = TensorDocument.model_validate_json(text)
    except ValidationError as e:
        raise TensorFormatError(f"Invalid tensor document: {e}") from e
    return document.to_tensor()


def parse_plain(text: str) -> Tensor:
    """
    Parse the plain-text form.

    Raises:
        TensorFormatError: On malformed lines or an empty file without a header
    """
    header = {}
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line, _, comment = raw.partition("#")
        key, sep, value = comment.partition(":")
        if sep and key.strip() in ("order", "dim"):
            try:
                header[key.strip()] = int(value.strip())
            except ValueError:
                raise TensorFormatError(f"Line {lineno}: bad header value '{value.strip()}'")
        fields = line.split()
        if not fields:
            continue
        if len(fields) < 3:
            raise TensorFormatError(
                f"Line {lineno}: expected at least two indices and a value, got '{raw.strip()}'"
            )
        try:
            idx = [int(f) for f in fields[:-1]]
            val = float(fields[-1])
        except ValueError:
            raise TensorFormatError(f"Line {lineno}: cannot parse '{raw.strip()}'")
        rows.append((idx, val))

    lengths = {len(idx) for idx, _ in rows}
    if len(lengths) > 1:
        raise TensorFormatError(f"Entries have inconsistent tuple lengths {sorted(lengths)}")

    order = header.get("order") or (lengths.pop() if lengths else None)
    dim = header.get("dim") or max((max(idx) for idx, _ in rows), default=None)
    if order is None or dim is None:
        raise TensorFormatError("Empty plain-text tensor needs '# order:' and '# dim:' headers")
    return make_tensor(order, dim, rows)


def parse_tensor(text: str) -> Tensor:
    """Parse either form, choosing by the first non-blank character."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return parse_structured(stripped)
    return parse_plain(text)


def load_tensor(path: Union[str, Path]) -> Tensor:
    """
    Read a tensor file.

    Raises:
        OSError: If the file cannot be read
        TensorFormatError: If its contents do not parse
    """
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    tensor = parse_tensor(text)
    logger.debug(f"Loaded {tensor!r} from {path}")
    return tensor


def dump_structured(tensor: Tensor) -> str:
    return TensorDocument.from_tensor(tensor).model_dump_json(indent=2)


def dump_plain(tensor: Tensor) -> str:
    lines = [f"# order: {tensor.order}", f"# dim: {tensor.dim}"]
    for idx, val in sorted(tensor.entries.items()):
        lines.append(" ".join(str(i) for i in idx) + f" {val!r}")
    return "\n".join(lines) + "\n"


def save_tensor(tensor: Tensor, path: Union[str, Path], plain: bool = False) -> Path:
    """Write a tensor in the structured (default) or plain-text form."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dump_plain(tensor) if plain else dump_structured(tensor), encoding="utf-8")
    logger.debug(f"Wrote {tensor!r} to {path}")
    return path


def tensor_to_dict(tensor: Tensor) -> dict:
    return json.loads(dump_structured(tensor))
