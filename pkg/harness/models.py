"""
Pydantic models for harness reports.
"""

from typing import List, Optional

from pydantic import BaseModel, Field, model_validator


class FailureRecord(BaseModel):
    """One failing trial: its seed and where the counterexample tensor was written."""
    seed: int
    tensor_path: Optional[str] = None
    detail: str = ""


class TheoremReport(BaseModel):
    """Outcome of one theorem check (or one worked example)."""
    theorem_id: str
    trials: int = Field(..., ge=0)
    passes: int = Field(0, ge=0)
    inconclusive: int = Field(0, ge=0)
    failures: List[FailureRecord] = Field(default_factory=list)
    wall_time: float = 0.0
    seed: Optional[int] = None
    orders: List[int] = Field(default_factory=list)
    dims: List[int] = Field(default_factory=list)
    notes: List[str] = Field(default_factory=list)

    @model_validator(mode="after")
    def check_accounting(self) -> "TheoremReport":
        if self.passes + self.inconclusive + len(self.failures) != self.trials:
            raise ValueError(
                f"{self.theorem_id}: passes ({self.passes}) + inconclusive ({self.inconclusive}) "
                f"+ failures ({len(self.failures)}) != trials ({self.trials})"
            )
        return self

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def inconclusive_rate(self) -> float:
        return self.inconclusive / self.trials if self.trials else 0.0
