"""
Demonstration script: the four worked examples end to end.
Shows decomposition, bipartition detection, the lambda(A) vs lambda(|A|)
comparison, sign similarity and the dimension-2 characteristic polynomial.
"""

import sys
from pathlib import Path

# Add project root to path for imports
sys.path.insert(0, str(Path(__file__).parent))

from analysis import handlers
from common.config import config
from common.data.worked_examples import WORKED_EXAMPLES, WorkedExample
from common.errors import ZTensorError
from common.logging_config import setup_logging
from common.metrics import metrics_tracker
from tensors.zform import z_decompose

# Setup logging
setup_logging(log_level="WARNING")


def print_separator(char="=", length=80):
    """Print a separator line."""
    print("\n" + char * length)


def print_scenario(number: int, description: str):
    """Print scenario header."""
    print_separator("=")
    print(f"  EXAMPLE {number}: {description}")
    print_separator("=")


def run_demo_example(number: int, example: WorkedExample):
    """
    Run a single worked example.

    Args:
        number: Example number
        example: WorkedExample instance
    """
    print_scenario(number, example.title)
    A = example.A
    print(f"\n📐 {A!r}")
    for idx, val in sorted(A.entries.items()):
        print(f"   a{idx} = {val:g}")

    try:
        bip = handlers.bipartite(z_decompose(A).C, "odd", strict=False)
        witnesses = ", ".join(str(w) for w in bip.witnesses) or "none"
        print(f"\n🔎 Weak odd-bipartitions of C: {witnesses}")

        comparison = handlers.compare(A)
        print(f"\n📊 lambda(A)   = {comparison.lambda_a:.12g}")
        print(f"   lambda(|A|) = {comparison.lambda_abs:.12g}")
        print(f"   route: {comparison.route}, equal: {comparison.equal}")
        print(f"   expected: {example.expected_lambda:g}")

        if A.order % 2 == 0:
            sim = handlers.similar(A)
            print(f"\n🔁 Sign similarity: {sim.p if sim.similar else 'none'}")

        if A.dim == 2:
            poly = handlers.charpoly(A)
            print(f"\n🧮 phi(lambda) = {poly.expression}")
            print(f"   spectral radius = {poly.spectral_radius:.12g}")
    except ZTensorError as e:
        print(f"\n❌ Error: {type(e).__name__}: {e}")


def main():
    """Run all worked examples, then the regression summary."""
    print("\n" + "=" * 80)
    print("  Z-TENSOR DEMO: lambda(A) versus lambda(|A|)")
    print("  " + "-" * 76)
    print("  Each example is a Z-tensor A = D - C; |A| = D + C")
    print("=" * 80)
    print(f"\n🔧 Solver tolerance {config.SOLVER_TOL:g}, oracle starts {config.ORACLE_STARTS}")

    for number, key in enumerate(sorted(WORKED_EXAMPLES), 1):
        run_demo_example(number, WORKED_EXAMPLES[key])

    print_separator("=")
    print("  REGRESSION")
    print_separator("-")
    result = handlers.regression()
    for report in result.reports:
        mark = "✅" if report.ok else "❌"
        print(f"  {mark} {report.theorem_id}: {', '.join(report.notes)}")

    print_separator("-")
    print("  RANDOMIZED CHECKS (5 trials each)")
    for theorem_id in ("L-dual", "T-eq-odd", "T-sign-sim"):
        try:
            handlers.verify(theorem_id, trials=5, seed=config.DEFAULT_SEED, workers=1)
        except ZTensorError as e:
            print(f"  ❌ {theorem_id}: {e}")
    print(metrics_tracker.format_summary_report())
    print("=" * 80)
    print("\n🚀 Try the CLI:  python -m cli compare path/to/tensor.json")
    print("   Or the API:   uvicorn backend.api:app --reload\n")


if __name__ == "__main__":
    main()
