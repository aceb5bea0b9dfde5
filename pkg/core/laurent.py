# core/laurent.py

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Tuple

import sympy as sp


def _normalize(values: Dict) -> Tuple:
    """Drops zero coefficients and sorts by exponent."""
    return tuple(sorted((k, c) for k, c in values.items() if c != 0))


@dataclass(frozen=True)
class LaurentPoly:
    """
    An exact Laurent polynomial with integer coefficients in one variable.

    The coefficients are stored as a sorted tuple of (exponent, coefficient) pairs
    with no zero coefficients, so equality and hashing are structural.
    """
    terms: Tuple[Tuple[int, int], ...] = ()

    # --- Construction ---

    @classmethod
    def from_dict(cls, values: Dict[int, int]) -> "LaurentPoly":
        return cls(_normalize({int(k): int(c) for k, c in values.items()}))

    @classmethod
    def monomial(cls, coefficient: int = 1, exponent: int = 0) -> "LaurentPoly":
        return cls.from_dict({exponent: coefficient})

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls(())

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls.monomial(1, 0)

    @classmethod
    def variable(cls) -> "LaurentPoly":
        return cls.monomial(1, 1)

    @classmethod
    def from_sympy(cls, expr, symbol: sp.Symbol) -> "LaurentPoly":
        """
        Converts a sympy expression that is a Laurent polynomial in `symbol`.

        Raises:
            ValueError: If a coefficient is not an integer.
        """
        expr = sp.expand(expr)
        values = {}
        for term in sp.Add.make_args(expr):
            coefficient, exponent = term.as_coeff_exponent(symbol)
            if not (coefficient.is_Integer and exponent.is_Integer):
                raise ValueError(f"term {term} is not an integral Laurent monomial in {symbol}")
            values[int(exponent)] = values.get(int(exponent), 0) + int(coefficient)
        return cls.from_dict(values)

    @classmethod
    def from_json(cls, data: Iterable) -> "LaurentPoly":
        return cls.from_dict({int(k): int(c) for k, c in data})

    # --- Queries ---

    def as_dict(self) -> Dict[int, int]:
        return dict(self.terms)

    def coefficient(self, exponent: int) -> int:
        return self.as_dict().get(exponent, 0)

    def is_zero(self) -> bool:
        return not self.terms

    def min_exponent(self) -> int:
        return self.terms[0][0] if self.terms else 0

    def max_exponent(self) -> int:
        return self.terms[-1][0] if self.terms else 0

    def in_v_zv(self) -> bool:
        """True iff every exponent is at least 1, i.e. the polynomial lies in v*Z[v]."""
        return all(k >= 1 for k, _ in self.terms)

    def is_constant(self) -> bool:
        return all(k == 0 for k, _ in self.terms)

    def has_nonnegative_coefficients(self) -> bool:
        return all(c >= 0 for _, c in self.terms)

    # --- Arithmetic ---

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly.monomial(other, 0)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        values = self.as_dict()
        for k, c in other.terms:
            values[k] = values.get(k, 0) + c
        return LaurentPoly(_normalize(values))

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(tuple((k, -c) for k, c in self.terms))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        values: Dict[int, int] = {}
        for k1, c1 in self.terms:
            for k2, c2 in other.terms:
                values[k1 + k2] = values.get(k1 + k2, 0) + c1 * c2
        return LaurentPoly(_normalize(values))

    __rmul__ = __mul__

    def shift(self, k: int) -> "LaurentPoly":
        """Multiplies by v^k."""
        return LaurentPoly(tuple((e + k, c) for e, c in self.terms))

    def bar(self) -> "LaurentPoly":
        """The ring involution v -> v^{-1}."""
        return LaurentPoly.from_dict({-k: c for k, c in self.terms})

    def substitute_power(self, power: int) -> "LaurentPoly":
        """Substitutes v -> v^power (e.g. q = v^{-2})."""
        return LaurentPoly.from_dict({k * power: c for k, c in self.terms})

    def evaluate(self, x):
        """Evaluates exactly; negative exponents produce Fractions for integer x."""
        total = 0
        for k, c in self.terms:
            total += c * (Fraction(x) ** k if k < 0 else x ** k)
        return total

    def bar_invariant_part(self) -> "LaurentPoly":
        """
        The unique bar-invariant p with self - p in v*Z[v].

        Only the exponents <= 0 contribute: p = c_0 + sum_{k<0} c_k (v^k + v^{-k}).
        """
        values: Dict[int, int] = {}
        for k, c in self.terms:
            if k > 0:
                continue
            values[k] = values.get(k, 0) + c
            if k < 0:
                values[-k] = values.get(-k, 0) + c
        return LaurentPoly.from_dict(values)

    # --- Presentation ---

    def to_json(self):
        return [[k, c] for k, c in self.terms]

    def format(self, symbol: str = "v") -> str:
        if not self.terms:
            return "0"
        pieces = []
        for k, c in self.terms:
            if k == 0:
                body = f"{abs(c)}"
            else:
                power = symbol if k == 1 else f"{symbol}^{k}"
                body = power if abs(c) == 1 else f"{abs(c)}{power}"
            sign = "-" if c < 0 else "+"
            pieces.append((sign, body))
        first_sign, first_body = pieces[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def __str__(self):
        return self.format("v")


def quantum_integer(n: int) -> LaurentPoly:
    """[n] = v^{n-1} + v^{n-3} + ... + v^{1-n}."""
    if n < 0:
        return -quantum_integer(-n)
    return LaurentPoly.from_dict({n - 1 - 2 * k: 1 for k in range(n)})


@dataclass(frozen=True)
class MultiLaurent:
    """
    An exact Laurent polynomial in `nvars` commuting variables.

    Terms are (exponent vector, integer coefficient) pairs, sorted, zero-free. The
    affine Hecke module uses nvars = n + 1 with the last variable playing q.
    """
    nvars: int
    terms: Tuple[Tuple[Tuple[int, ...], int], ...] = ()

    @classmethod
    def from_dict(cls, nvars: int, values: Dict[Tuple[int, ...], int]) -> "MultiLaurent":
        for exps in values:
            if len(exps) != nvars:
                raise ValueError(f"exponent vector {exps} does not have {nvars} entries")
        return cls(nvars, _normalize(values))

    @classmethod
    def monomial(cls, exps: Tuple[int, ...], coefficient: int = 1) -> "MultiLaurent":
        exps = tuple(int(a) for a in exps)
        return cls.from_dict(len(exps), {exps: coefficient})

    @classmethod
    def constant(cls, nvars: int, coefficient: int = 1) -> "MultiLaurent":
        return cls.from_dict(nvars, {(0,) * nvars: coefficient})

    @classmethod
    def zero(cls, nvars: int) -> "MultiLaurent":
        return cls(nvars, ())

    def as_dict(self) -> Dict[Tuple[int, ...], int]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: "MultiLaurent"):
        if not isinstance(other, MultiLaurent) or other.nvars != self.nvars:
            raise ValueError("MultiLaurent operands must share the number of variables")

    def __add__(self, other):
        self._check(other)
        values = self.as_dict()
        for k, c in other.terms:
            values[k] = values.get(k, 0) + c
        return MultiLaurent(self.nvars, _normalize(values))

    def __neg__(self):
        return MultiLaurent(self.nvars, tuple((k, -c) for k, c in self.terms))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return MultiLaurent(self.nvars, _normalize({k: c * other for k, c in self.terms}))
        self._check(other)
        values: Dict[Tuple[int, ...], int] = {}
        for k1, c1 in self.terms:
            for k2, c2 in other.terms:
                k = tuple(a + b for a, b in zip(k1, k2))
                values[k] = values.get(k, 0) + c1 * c2
        return MultiLaurent(self.nvars, _normalize(values))

    __rmul__ = __mul__

    def shift(self, exps: Tuple[int, ...]) -> "MultiLaurent":
        """Multiplies by the monomial with exponent vector `exps`."""
        return MultiLaurent(self.nvars, tuple(
            (tuple(a + b for a, b in zip(k, exps)), c) for k, c in self.terms))

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{list(k)}" for k, c in self.terms)
