# models/cyclotomic.py

from dataclasses import dataclass
from functools import lru_cache
from typing import Tuple

import sympy as sp

from core.errors import ContextMismatchError, DomainError

ZETA = sp.Symbol("zeta")


class CyclotomicField:
    """Q(zeta) for a primitive e-th root of unity, with exact reduction modulo Phi_e."""

    def __init__(self, e: int):
        if e < 1:
            raise DomainError(f"cyclotomic order must be positive, got {e}")
        self.e = e
        self.modulus = sp.Poly(sp.cyclotomic_poly(e, ZETA), ZETA, domain="QQ")
        self.degree = self.modulus.degree()

    def reduce(self, expr) -> sp.Expr:
        """Reduces a polynomial expression in zeta (negative powers allowed) to degree < phi(e)."""
        expr = sp.expand(sp.sympify(expr))
        # zeta^{-k} = zeta^{e-k}
        expr = expr.replace(lambda t: t.is_Pow and t.base == ZETA and t.exp.is_Integer and t.exp < 0,
                            lambda t: ZETA ** (int(t.exp) % self.e))
        remainder = sp.Poly(sp.expand(expr), ZETA, domain="QQ").rem(self.modulus)
        return remainder.as_expr()

    def element(self, expr) -> "CyclotomicScalar":
        poly = sp.Poly(self.reduce(expr), ZETA, domain="QQ")
        coefficients = [sp.Rational(0)] * self.degree
        for (k,), c in poly.terms():
            coefficients[k] = sp.Rational(c)
        return CyclotomicScalar(self.e, tuple(coefficients))

    def zeta_power(self, k: int) -> "CyclotomicScalar":
        return self.element(ZETA ** (k % self.e))

    def reduce_matrix(self, matrix: sp.Matrix) -> sp.Matrix:
        return matrix.applyfunc(self.reduce)

    def matrices_equal(self, a: sp.Matrix, b: sp.Matrix) -> bool:
        return self.reduce_matrix(sp.expand(a - b)).is_zero_matrix


@lru_cache(maxsize=None)
def cyclotomic_field(e: int) -> CyclotomicField:
    return CyclotomicField(e)


@dataclass(frozen=True)
class CyclotomicScalar:
    """sum_k coefficients[k] zeta^k, reduced modulo the e-th cyclotomic polynomial."""
    e: int
    coefficients: Tuple

    @property
    def field(self) -> CyclotomicField:
        return cyclotomic_field(self.e)

    def as_expr(self) -> sp.Expr:
        return sum((c * ZETA ** k for k, c in enumerate(self.coefficients)), sp.Integer(0))

    def _other(self, other) -> sp.Expr:
        if isinstance(other, CyclotomicScalar):
            if other.e != self.e:
                raise ContextMismatchError(f"cyclotomic scalars of orders {self.e} and {other.e}")
            return other.as_expr()
        return sp.sympify(other)

    def __add__(self, other):
        return self.field.element(self.as_expr() + self._other(other))

    __radd__ = __add__

    def __sub__(self, other):
        return self.field.element(self.as_expr() - self._other(other))

    def __neg__(self):
        return self.field.element(-self.as_expr())

    def __mul__(self, other):
        return self.field.element(self.as_expr() * self._other(other))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coefficients)

    def power_of_zeta(self):
        """The k with self == zeta^k, or None."""
        for k in range(self.e):
            if self == self.field.zeta_power(k):
                return k
        return None

    def __str__(self):
        k = self.power_of_zeta()
        if k is not None:
            return "1" if k == 0 else ("ζ" if k == 1 else f"ζ^{k}")
        return str(self.as_expr()).replace("zeta", "ζ")
