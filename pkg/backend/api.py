"""
FastAPI backend over the analysis verbs.
Every endpoint delegates to analysis.handlers; errors map onto HTTP status codes.
"""
from contextlib import contextmanager
from typing import List, Optional

from fastapi import FastAPI, File, HTTPException, Query, UploadFile
from fastapi.middleware.cors import CORSMiddleware

from analysis import handlers
from analysis.models import (
    BipartiteResult,
    CharPolyResult,
    CheckInfo,
    CompareResult,
    EigResult,
    InspectResult,
    IrreducibleResult,
    RegressionResult,
    RhoResult,
    SimilarResult,
    VerifyResult,
)
from backend.models import UploadResponse, VerifyRequest
from common import __version__
from common.config import config
from common.errors import (
    GuardExceededError,
    HarnessError,
    NumericalError,
    StructureError,
    TensorInputError,
    UnknownTheoremError,
    ZFormError,
)
from common.logging_config import get_logger, setup_logging
from spectra.options import SolverOptions
from tensors.core import Tensor
from tensors.io import TensorDocument, parse_tensor

# Setup logging
setup_logging(log_level=config.LOG_LEVEL)
logger = get_logger(__name__)

# Create FastAPI app
app = FastAPI(
    title="Z-Tensor Analysis API",
    description="Bipartiteness, irreducibility, H-eigenvalues and similarity of Z-tensors",
    version=__version__,
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


@contextmanager
def _errors_as_http():
    """Translate library errors into HTTPException."""
    try:
        yield
    except UnknownTheoremError as e:
        raise HTTPException(status_code=404, detail=str(e))
    except (TensorInputError, ZFormError, StructureError, HarnessError) as e:
        raise HTTPException(status_code=400, detail=f"{type(e).__name__}: {e}")
    except GuardExceededError as e:
        raise HTTPException(status_code=422, detail=f"{type(e).__name__}: {e}")
    except NumericalError as e:
        logger.error(f"Numerical failure: {e}")
        raise HTTPException(status_code=500, detail=f"{type(e).__name__}: {e}")


def _to_tensor(document: TensorDocument) -> Tensor:
    with _errors_as_http():
        return document.to_tensor()


def _options(tol: Optional[float], seed: Optional[int]) -> SolverOptions:
    changes = {k: v for k, v in (("tol", tol), ("seed", seed)) if v is not None}
    with _errors_as_http():
        return SolverOptions().with_(**changes) if changes else SolverOptions()


@app.get("/health")
async def health_check():
    """Health check with the active numerical settings."""
    return {
        "status": "healthy",
        "version": __version__,
        "solver_tol": config.SOLVER_TOL,
        "solver_max_iters": config.SOLVER_MAX_ITERS,
        "oracle_starts": config.ORACLE_STARTS,
        "theorems_count": len(handlers.theorems()),
    }


@app.get("/theorems", response_model=List[CheckInfo])
async def list_theorems():
    """List the registered theorem checks."""
    return handlers.theorems()


@app.post("/inspect", response_model=InspectResult)
def inspect(document: TensorDocument):
    tensor = _to_tensor(document)
    with _errors_as_http():
        return handlers.inspect_tensor(tensor)


@app.post("/bipartite", response_model=BipartiteResult)
def bipartite(
    document: TensorDocument,
    kind: str = Query("odd", pattern="^(odd|even)$"),
    strict: bool = Query(False),
    limit: Optional[int] = Query(None, ge=1),
):
    tensor = _to_tensor(document)
    with _errors_as_http():
        return handlers.bipartite(tensor, kind, strict, limit)


@app.post("/irreducible", response_model=IrreducibleResult)
def irreducible(document: TensorDocument):
    tensor = _to_tensor(document)
    with _errors_as_http():
        return handlers.irreducible(tensor)


@app.post("/eig", response_model=EigResult)
def eig(
    document: TensorDocument,
    method: str = Query("auto", pattern="^(auto|power|brute)$"),
    tol: Optional[float] = Query(None, gt=0),
    seed: Optional[int] = Query(None, ge=0),
):
    tensor = _to_tensor(document)
    opts = _options(tol, seed)
    with _errors_as_http():
        return handlers.eig(tensor, method, opts)


@app.post("/compare", response_model=CompareResult)
def compare(
    document: TensorDocument,
    tol: Optional[float] = Query(None, gt=0, description="Equality tolerance"),
    seed: Optional[int] = Query(None, ge=0),
):
    tensor = _to_tensor(document)
    opts = _options(None, seed)
    with _errors_as_http():
        return handlers.compare(tensor, tol, opts)


@app.post("/similar", response_model=SimilarResult)
def similar(document: TensorDocument):
    tensor = _to_tensor(document)
    with _errors_as_http():
        return handlers.similar(tensor)


@app.post("/charpoly", response_model=CharPolyResult)
def charpoly(document: TensorDocument):
    tensor = _to_tensor(document)
    with _errors_as_http():
        return handlers.charpoly(tensor)


@app.post("/rho", response_model=RhoResult)
def rho(
    document: TensorDocument,
    tol: Optional[float] = Query(None, gt=0),
    seed: Optional[int] = Query(None, ge=0),
):
    tensor = _to_tensor(document)
    opts = _options(tol, seed)
    with _errors_as_http():
        return handlers.rho(tensor, opts)


@app.post("/tensors/upload", response_model=UploadResponse)
async def upload_tensor(file: UploadFile = File(...)):
    """Parse an uploaded tensor file in either format."""
    raw = await file.read()
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError:
        raise HTTPException(status_code=400, detail="Tensor file must be UTF-8 text")

    with _errors_as_http():
        tensor = parse_tensor(text)
        logger.info(f"Uploaded {file.filename}: {tensor!r}")
        return UploadResponse(
            filename=file.filename,
            document=TensorDocument.from_tensor(tensor),
            inspect=handlers.inspect_tensor(tensor),
        )


@app.post("/verify", response_model=VerifyResult)
def verify(request: VerifyRequest):
    """Run a theorem check in-process."""
    logger.info(f"Verify request - theorem: {request.theorem_id}, trials: {request.trials}, seed: {request.seed}")
    with _errors_as_http():
        return handlers.verify(
            request.theorem_id,
            request.trials,
            seed=request.seed,
            orders=request.orders,
            dims=request.dims,
            workers=1,
        )


@app.get("/regression", response_model=RegressionResult)
def regression():
    with _errors_as_http():
        return handlers.regression()


if __name__ == "__main__":
    import uvicorn

    uvicorn.run(
        app,
        host=config.BACKEND_HOST,
        port=config.BACKEND_PORT,
        log_level=config.LOG_LEVEL.lower()
    )
