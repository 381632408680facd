"""
Command-line front end.

    python -m cli <verb> [FILE] [options]

Exit codes: 0 success, 1 predicate false, 2 input error, 3 numerical failure.
"""

import argparse
import json
import sys
from typing import Any, Callable, Dict, List, Optional, Sequence

from pydantic import BaseModel

from analysis import handlers
from analysis.models import VerbResult
from common.config import config
from common.errors import (
    GuardExceededError,
    HarnessError,
    NumericalError,
    StructureError,
    TensorInputError,
    ZFormError,
)
from common.logging_config import get_logger, setup_logging
from spectra.options import SolverOptions
from tensors.io import load_tensor

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_INPUT = 2
EXIT_NUMERICAL = 3

FLOAT_FORMAT = ".12g"

INPUT_ERRORS = (
    TensorInputError,
    ZFormError,
    StructureError,
    GuardExceededError,
    HarnessError,
    OSError,
)


def _int_list(raw: str) -> List[int]:
    try:
        return [int(part) for part in raw.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got '{raw}'")


def _round_floats(value: Any) -> Any:
    """Round every float to 12 significant digits for structured output."""
    if isinstance(value, float):
        return float(format(value, FLOAT_FORMAT))
    if isinstance(value, dict):
        return {k: _round_floats(v) for k, v in value.items()}
    if isinstance(value, list):
        return [_round_floats(v) for v in value]
    return value


def _format_scalar(value: Any) -> str:
    if isinstance(value, float):
        return format(value, FLOAT_FORMAT)
    if isinstance(value, list):
        return "[" + ", ".join(_format_scalar(v) for v in value) + "]"
    if isinstance(value, dict):
        return "{" + ", ".join(f"{k}={_format_scalar(v)}" for k, v in value.items()) + "}"
    if value is None:
        return "none"
    return str(value)


def _table_lines(data: Dict[str, Any], indent: int = 0) -> List[str]:
    pad = " " * indent
    width = max((len(k) for k in data), default=0)
    lines = []
    for key, value in data.items():
        if isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
            lines.append(f"{pad}{key}:")
            for i, item in enumerate(value, 1):
                lines.append(f"{pad}  [{i}]")
                lines.extend(_table_lines(item, indent + 4))
        elif isinstance(value, dict) and value and any(isinstance(v, (dict, list)) for v in value.values()):
            lines.append(f"{pad}{key}:")
            lines.extend(_table_lines(value, indent + 2))
        elif isinstance(value, list) and not value:
            lines.append(f"{pad}{key.ljust(width)}  none")
        else:
            lines.append(f"{pad}{key.ljust(width)}  {_format_scalar(value)}")
    return lines


def render(result: BaseModel, fmt: str = "table") -> str:
    """Render a result model as a table or as JSON."""
    data = result.model_dump(mode="json")
    if fmt == "structured":
        return json.dumps(_round_floats(data), indent=2, sort_keys=False)
    return "\n".join(_table_lines(data))


def _solver_options(args: argparse.Namespace) -> SolverOptions:
    changes = {}
    if getattr(args, "solver_tol", None) is not None:
        changes["tol"] = args.solver_tol
    if getattr(args, "seed", None) is not None:
        changes["seed"] = args.seed
    return SolverOptions().with_(**changes) if changes else SolverOptions()


def _cmd_inspect(args):
    return handlers.inspect_tensor(load_tensor(args.file))


def _cmd_bipartite(args):
    return handlers.bipartite(load_tensor(args.file), args.kind, args.strict, args.limit)


def _cmd_irreducible(args):
    return handlers.irreducible(load_tensor(args.file))


def _cmd_eig(args):
    return handlers.eig(load_tensor(args.file), args.method, _solver_options(args))


def _cmd_compare(args):
    return handlers.compare(load_tensor(args.file), args.tol, _solver_options(args))


def _cmd_similar(args):
    return handlers.similar(load_tensor(args.file))


def _cmd_charpoly(args):
    return handlers.charpoly(load_tensor(args.file))


def _cmd_rho(args):
    return handlers.rho(load_tensor(args.file), _solver_options(args))


def _cmd_verify(args):
    return handlers.verify(
        args.theorem,
        args.trials,
        seed=args.seed,
        orders=args.orders,
        dims=args.dims,
        workers=args.workers,
    )


def _cmd_regression(args):
    return handlers.regression()


COMMANDS: Dict[str, Callable[[argparse.Namespace], VerbResult]] = {
    "inspect": _cmd_inspect,
    "bipartite": _cmd_bipartite,
    "irreducible": _cmd_irreducible,
    "eig": _cmd_eig,
    "compare": _cmd_compare,
    "similar": _cmd_similar,
    "charpoly": _cmd_charpoly,
    "rho": _cmd_rho,
    "verify": _cmd_verify,
    "regression": _cmd_regression,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ztensor",
        description="Structural and spectral analysis of Z-tensors and their absolute tensors.",
    )
    parser.add_argument("--format", choices=("table", "structured"), default="table",
                        help="Output format (default: table)")
    parser.add_argument("--log-level", default=config.LOG_LEVEL,
                        help="Logging level for stderr (default: LOG_LEVEL setting)")
    sub = parser.add_subparsers(dest="verb", required=True, metavar="VERB")

    p = sub.add_parser("inspect", help="Order, dimension, entry count, symmetry, Z-form, weak irreducibility")
    p.add_argument("file")

    p = sub.add_parser("bipartite", help="Detect (weak) odd/even bipartitions")
    p.add_argument("file")
    p.add_argument("--kind", choices=("odd", "even"), default="odd")
    p.add_argument("--strict", action="store_true", help="Require the full (non-weak) property")
    p.add_argument("--limit", type=int, default=None, help="Maximum number of witnesses")

    p = sub.add_parser("irreducible", help="Reducibility verdict with a witness set")
    p.add_argument("file")

    p = sub.add_parser("eig", help="H-eigenpair(s) with residuals")
    p.add_argument("file")
    p.add_argument("--method", choices=handlers.EIG_METHODS, default="auto")
    p.add_argument("--tol", dest="solver_tol", type=float, default=None, help="Solver tolerance")
    p.add_argument("--seed", type=int, default=None, help="Seed for oracle starts")

    p = sub.add_parser("compare", help="Compare lambda(A) with lambda(|A|)")
    p.add_argument("file")
    p.add_argument("--tol", type=float, default=None, help="Equality tolerance")
    p.add_argument("--seed", type=int, default=None, help="Seed for oracle starts")

    p = sub.add_parser("similar", help="Sign-similarity witness p, or none")
    p.add_argument("file")

    p = sub.add_parser("charpoly", help="Characteristic polynomial of a dimension-2 tensor")
    p.add_argument("file")

    p = sub.add_parser("rho", help="Spectral radius with the method that produced it")
    p.add_argument("file")
    p.add_argument("--tol", dest="solver_tol", type=float, default=None, help="Solver tolerance")
    p.add_argument("--seed", type=int, default=None, help="Seed for oracle starts")

    p = sub.add_parser("verify", help="Run a registered theorem check on random trials")
    p.add_argument("--theorem", required=True)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=config.DEFAULT_SEED)
    p.add_argument("--orders", type=_int_list, default=None, help="Comma-separated orders")
    p.add_argument("--dims", type=_int_list, default=None, help="Comma-separated dimensions")
    p.add_argument("--workers", type=int, default=None)

    sub.add_parser("regression", help="Run the worked examples end to end")
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse argv, run exactly one verb, print its report and return the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_INPUT

    setup_logging(log_level=args.log_level, stream=sys.stderr)
    logger.debug(f"Running verb '{args.verb}'")

    try:
        result = COMMANDS[args.verb](args)
    except NumericalError as e:
        logger.error(f"{type(e).__name__}: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_NUMERICAL
    except INPUT_ERRORS as e:
        logger.error(f"{type(e).__name__}: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT

    print(render(result, args.format))
    if result.verdict is False:
        return EXIT_FALSE
    return EXIT_OK


def main() -> int:
    return run(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
