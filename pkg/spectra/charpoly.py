"""
Exact characteristic polynomials of dimension-2 tensors.

For n = 2 the eigen-equations are two binary forms of degree d = m - 1 in
(x1, x2) whose coefficients are linear in lam:

    f_i(x1, x2) = sum_k c_{i,k} x1^{d-k} x2^k - lam x_i^d

where c_{i,k} sums the entries t_{i i2...im} with k twos among i2..im. Their
homogeneous resultant, the determinant of the 2d x 2d Sylvester matrix, is a
polynomial in lam of degree 2d whose roots are the whole complex spectrum.
Entries enter as exact rationals (every float is one) and the determinant is
expanded with fraction-free (Bareiss) elimination.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

import numpy as np
import sympy

from common.errors import DegeneratePolynomialError, DimensionMismatchError
from common.logging_config import get_logger
from tensors.core import Tensor

logger = get_logger(__name__)

LAM = sympy.Symbol("lam")


@dataclass(frozen=True)
class CharPoly2:
    """
    Characteristic polynomial of an order-m dimension-2 tensor.

    coefficients run from the highest power of lam down to the constant term;
    there are always 2(m-1) + 1 of them, leading zeros included.
    """

    order: int
    coefficients: Tuple[Fraction, ...]
    exact: bool = True

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def _poly(self) -> sympy.Poly:
        return sympy.Poly(
            [sympy.Rational(c.numerator, c.denominator) for c in self.coefficients], LAM
        )

    def monic(self) -> Tuple[Fraction, ...]:
        """
        Coefficients divided by the leading nonzero coefficient.

        Raises:
            DegeneratePolynomialError: If the polynomial is identically zero
        """
        lead = next((c for c in self.coefficients if c != 0), None)
        if lead is None:
            raise DegeneratePolynomialError(
                f"Characteristic polynomial of an order-{self.order} tensor vanished identically"
            )
        start = self.coefficients.index(lead)
        return tuple(c / lead for c in self.coefficients[start:])

    def roots(self) -> np.ndarray:
        """All complex roots with multiplicity, factor by squarefree factor."""
        _, factors = self._poly().sqf_list()
        roots: List[complex] = []
        for factor, multiplicity in factors:
            coeffs = [float(c) for c in factor.all_coeffs()]
            roots.extend(list(np.roots(coeffs)) * multiplicity)
        return np.array(sorted(roots, key=lambda r: (-r.real, -r.imag)), dtype=complex)

    def evaluate(self, lam: float) -> float:
        return float(np.polyval([float(c) for c in self.coefficients], lam))

    def as_expression(self) -> str:
        return str(self._poly().as_expr())


def _binary_form_coefficients(T: Tensor, row: int) -> List[sympy.Expr]:
    """Coefficients of f_row in x1^{d-k} x2^k, k = 0..d, including the -lam term."""
    d = T.order - 1
    coeffs = [sympy.Integer(0)] * (d + 1)
    for idx, value in T.entries.items():
        if idx[0] != row:
            continue
        k = sum(1 for i in idx[1:] if i == 2)
        exact = Fraction(value)
        coeffs[k] += sympy.Rational(exact.numerator, exact.denominator)
    # x1^d is k = 0, x2^d is k = d
    coeffs[0 if row == 1 else d] -= LAM
    return coeffs


def sylvester_matrix(f: List[sympy.Expr], g: List[sympy.Expr]) -> sympy.Matrix:
    """Sylvester matrix of two degree-d forms given by full coefficient lists."""
    d = len(f) - 1
    size = 2 * d
    rows = []
    for shift in range(d):
        rows.append([0] * shift + list(f) + [0] * (size - shift - d - 1))
    for shift in range(d):
        rows.append([0] * shift + list(g) + [0] * (size - shift - d - 1))
    return sympy.Matrix(rows)


def char_poly_dim2(T: Tensor) -> CharPoly2:
    """
    Resultant characteristic polynomial of a dimension-2 tensor.

    Raises:
        DimensionMismatchError: If T.dim != 2
    """
    if T.dim != 2:
        raise DimensionMismatchError(
            f"Characteristic polynomials are only built for dimension 2, got {T.dim}"
        )
    f1 = _binary_form_coefficients(T, 1)
    f2 = _binary_form_coefficients(T, 2)
    determinant = sylvester_matrix(f1, f2).det(method="bareiss")
    poly = sympy.Poly(sympy.expand(determinant), LAM)

    degree = 2 * (T.order - 1)
    coeffs = [sympy.Rational(c) for c in poly.all_coeffs()]
    coeffs = [sympy.Integer(0)] * (degree + 1 - len(coeffs)) + coeffs
    result = CharPoly2(
        order=T.order,
        coefficients=tuple(Fraction(int(c.p), int(c.q)) for c in coeffs),
    )
    logger.debug(f"Characteristic polynomial of {T!r}: {poly.as_expr()}")
    return result


def spectral_radius_dim2(T: Tensor) -> float:
    """Largest root modulus of the characteristic polynomial."""
    roots = char_poly_dim2(T).roots()
    return float(np.max(np.abs(roots))) if roots.size else 0.0


def spectra_equal_dim2(T1: Tensor, T2: Tensor, tol: float = 0.0) -> bool:
    """
    Compare the spectra of two dimension-2 tensors through their monic polynomials.

    tol = 0 compares the exact rationals.

    Raises:
        DimensionMismatchError: If the tensors are not both dimension 2 of one order
        DegeneratePolynomialError: If either polynomial vanishes identically
    """
    if T1.order != T2.order:
        raise DimensionMismatchError(f"Orders differ: {T1.order} vs {T2.order}")
    p1 = char_poly_dim2(T1).monic()
    p2 = char_poly_dim2(T2).monic()
    if len(p1) != len(p2):
        return False
    if tol == 0:
        return p1 == p2
    return max(abs(float(a - b)) for a, b in zip(p1, p2)) <= tol
