"""
Pydantic models for API request schemas.
Tensors travel as the structured tensor document (see tensors.io).
"""
from typing import List, Optional

from pydantic import BaseModel, Field

from analysis.models import InspectResult
from common.config import config
from tensors.io import TensorDocument


class VerifyRequest(BaseModel):
    """Request model for the verify endpoint."""
    theorem_id: str
    trials: int = Field(20, ge=1, le=config.API_MAX_TRIALS)
    seed: int = Field(0, ge=0)
    orders: Optional[List[int]] = None
    dims: Optional[List[int]] = None


class UploadResponse(BaseModel):
    """Parsed upload: the normalized document plus its inspection."""
    filename: Optional[str] = None
    document: TensorDocument
    inspect: InspectResult
