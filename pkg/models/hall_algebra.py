# models/hall_algebra.py

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import sympy as sp

from config import settings
from core.errors import (ContextMismatchError, DomainError, InterpolationError,
                         check_bound)
from core.laurent import LaurentPoly
from core.segments import (DimensionVector, Multisegment, dimension_vector,
                           multisegments_of_dimension, residue_value)
from models.nilreps import (automorphism_count, count_extensions, count_submodules,
                            diagonal_slots, extension_slots, orbit_dimension)

Q = sp.Symbol("q")


def m_form(a: DimensionVector, b: DimensionVector) -> int:
    """m(a, b) = sum_i (a_i b_{i+1} + a_i b_i)."""
    if a.e != b.e:
        raise ContextMismatchError(f"dimension vectors mod {a.e} and mod {b.e}")
    e = a.e
    return sum(a.entries[i] * (b.entries[(i + 1) % e] + b.entries[i]) for i in range(e))


# --- Hall numbers at a prime ---

def hall_numbers_by_extensions(quotient: Multisegment, sub: Multisegment, p: int) -> Dict[Multisegment, int]:
    """
    F^psi_{quotient, sub}(p) for every psi at once, by counting extensions.

    F = #{eta : L_eta = psi} * |Aut psi| / (|Aut quotient| |Aut sub| p^{sum_k a_k b_k}).
    """
    counts = count_extensions(quotient, sub, p)
    denominator = (automorphism_count(quotient, p) * automorphism_count(sub, p)
                   * p ** diagonal_slots(quotient, sub))
    numbers = {}
    for psi, eta_count in counts.items():
        value = Fraction(eta_count * automorphism_count(psi, p), denominator)
        if value.denominator != 1:
            raise InterpolationError(f"non-integral Hall number {value} for {psi} at p={p}")
        numbers[psi] = int(value)
    return numbers


def hall_numbers_by_subspaces(quotient: Multisegment, sub: Multisegment, p: int) -> Dict[Multisegment, int]:
    """F^psi_{quotient, sub}(p) for every psi, by enumerating stable subspaces of each M_psi."""
    total = dimension_vector(quotient) + dimension_vector(sub)
    numbers = {}
    for psi in multisegments_of_dimension(total):
        count = count_submodules(psi, quotient, sub, p)
        if count:
            numbers[psi] = count
    return numbers


def cheaper_method(quotient: Multisegment, sub: Multisegment) -> str:
    return "extensions" if extension_slots(quotient, sub) <= diagonal_slots(quotient, sub) else "subspaces"


# --- Interpolation ---

def _fit(points: Sequence[Tuple[int, int]]) -> Optional[LaurentPoly]:
    """The minimal degree polynomial through the points, or None if not integral."""
    expr = sp.interpolate([(sp.Integer(x), sp.Integer(y)) for x, y in points], Q)
    try:
        return LaurentPoly.from_sympy(expr, Q)
    except ValueError:
        return None


def interpolate_counts(count_at: Callable[[int], Dict[Multisegment, int]],
                       primes: Sequence[int]) -> Tuple[Dict[Multisegment, LaurentPoly], List[int], int]:
    """
    Fits a polynomial in q to counts taken at successive primes.

    Fitting stops once two consecutive fits agree for every key; the result is then
    validated at the next prime.

    Returns:
        The polynomials, the primes fitted and the validation prime.

    Raises:
        InterpolationError: If the fits never stabilize, are not integral, have a negative
            coefficient, or fail validation.
    """
    values: Dict[int, Dict[Multisegment, int]] = {}
    previous: Optional[Dict[Multisegment, LaurentPoly]] = None
    for k, p in enumerate(primes):
        values[p] = count_at(p)
        logging.debug(f"Hall counts at p={p}: {len(values[p])} isomorphism types")
        used = list(primes[:k + 1])
        keys = sorted({psi for p_ in used for psi in values[p_]}, key=Multisegment.sort_key)
        current = {}
        for psi in keys:
            fitted = _fit([(p_, values[p_].get(psi, 0)) for p_ in used])
            if fitted is None:
                current = None
                break
            current[psi] = fitted
        if current is not None and previous is not None and current == previous:
            if k + 1 >= len(primes):
                raise InterpolationError("no prime left to validate the Hall polynomials")
            check = primes[k + 1]
            observed = count_at(check)
            for psi in set(observed) | set(current):
                expected = current.get(psi, LaurentPoly.zero()).evaluate(check)
                if expected != observed.get(psi, 0):
                    raise InterpolationError(f"Hall polynomial for {psi} predicts {expected} at p={check}, "
                                             f"counted {observed.get(psi, 0)}")
            for psi, poly in current.items():
                if not poly.has_nonnegative_coefficients() or poly.min_exponent() < 0:
                    raise InterpolationError(f"Hall polynomial {poly.format('q')} for {psi} is not in N[q]")
            polys = {psi: poly for psi, poly in current.items() if not poly.is_zero()}
            return polys, used, check
        previous = current
    raise InterpolationError(f"Hall polynomial fits did not stabilize over primes {list(primes)}")


@dataclass(frozen=True)
class HallPolynomialTable:
    """All Hall polynomials F^psi_{quotient, sub}(q) for one pair."""
    quotient: Multisegment
    sub: Multisegment
    polynomials: Dict[Multisegment, LaurentPoly]
    primes_used: Tuple[int, ...]
    validated_at: int
    method: str


@lru_cache(maxsize=None)
def hall_polynomials(quotient: Multisegment, sub: Multisegment,
                     primes: Tuple[int, ...] = settings.HALL_PRIMES,
                     method: Optional[str] = None,
                     rank_bound: int = settings.HALL_RANK_BOUND) -> HallPolynomialTable:
    """
    Hall polynomials for every psi with quotient M_quotient and submodule M_sub.

    Raises:
        ResourceBoundError: If the total rank exceeds `rank_bound`.
        InterpolationError: See interpolate_counts.
    """
    if quotient.e != sub.e:
        raise ContextMismatchError(f"multisegments mod {quotient.e} and mod {sub.e}")
    check_bound("total rank", quotient.rank + sub.rank, rank_bound)
    method = method or cheaper_method(quotient, sub)
    if method == "extensions":
        counter = lambda p: hall_numbers_by_extensions(quotient, sub, p)
    elif method == "subspaces":
        counter = lambda p: hall_numbers_by_subspaces(quotient, sub, p)
    else:
        raise DomainError(f"unknown counting method '{method}'")
    polys, used, check = interpolate_counts(counter, primes)
    return HallPolynomialTable(quotient, sub, polys, tuple(used), check, method)


def hall_polynomial(phi1: Multisegment, phi2: Multisegment, psi: Multisegment,
                    method: Optional[str] = None) -> LaurentPoly:
    """
    F^psi_{phi1, phi2}(q): submodules U of M_psi with U = M_phi2 and M_psi/U = M_phi1.

    Raises:
        DomainError: If dim psi != dim phi1 + dim phi2.
    """
    if dimension_vector(psi) != dimension_vector(phi1) + dimension_vector(phi2):
        raise DomainError(f"dim {psi} differs from dim {phi1} + dim {phi2}")
    if phi1.is_empty() or phi2.is_empty():
        return LaurentPoly.one() if psi == (phi2 if phi1.is_empty() else phi1) else LaurentPoly.zero()
    table = hall_polynomials(phi1, phi2, method=method)
    return table.polynomials.get(psi, LaurentPoly.zero())


# --- Elements ---

@dataclass(frozen=True)
class HallElement:
    """
    A finite combination sum_psi c_psi(v) E_psi in PBW coordinates.

    `terms` holds (multisegment, coefficient) pairs sorted canonically with no zero coefficients.
    """
    e: int
    terms: Tuple[Tuple[Multisegment, LaurentPoly], ...] = ()

    @classmethod
    def from_dict(cls, e: int, values: Dict[Multisegment, LaurentPoly]) -> "HallElement":
        for psi in values:
            if psi.e != e:
                raise ContextMismatchError(f"multisegment mod {psi.e} in a Hall element mod {e}")
        items = sorted(((psi, c) for psi, c in values.items() if not c.is_zero()),
                       key=lambda t: t[0].sort_key())
        return cls(e, tuple(items))

    @classmethod
    def basis(cls, psi: Multisegment, coefficient: LaurentPoly = None) -> "HallElement":
        return cls.from_dict(psi.e, {psi: coefficient or LaurentPoly.one()})

    @classmethod
    def unit(cls, e: int) -> "HallElement":
        return cls.basis(Multisegment.empty(e))

    @classmethod
    def zero(cls, e: int) -> "HallElement":
        return cls(e, ())

    def as_dict(self) -> Dict[Multisegment, LaurentPoly]:
        return dict(self.terms)

    def coefficient(self, psi: Multisegment) -> LaurentPoly:
        return self.as_dict().get(psi, LaurentPoly.zero())

    def support(self) -> List[Multisegment]:
        return [psi for psi, _ in self.terms]

    def is_zero(self) -> bool:
        return not self.terms

    def weights(self) -> List[DimensionVector]:
        return sorted({dimension_vector(psi) for psi in self.support()}, key=lambda d: d.entries)

    def _check(self, other: "HallElement"):
        if other.e != self.e:
            raise ContextMismatchError(f"Hall elements mod {self.e} and mod {other.e}")

    def __add__(self, other: "HallElement") -> "HallElement":
        self._check(other)
        values = self.as_dict()
        for psi, c in other.terms:
            values[psi] = values.get(psi, LaurentPoly.zero()) + c
        return HallElement.from_dict(self.e, values)

    def __neg__(self) -> "HallElement":
        return HallElement(self.e, tuple((psi, -c) for psi, c in self.terms))

    def __sub__(self, other: "HallElement") -> "HallElement":
        return self + (-other)

    def scale(self, factor) -> "HallElement":
        factor = factor if isinstance(factor, LaurentPoly) else LaurentPoly.monomial(int(factor))
        return HallElement.from_dict(self.e, {psi: c * factor for psi, c in self.terms})

    def relabel(self, fn: Callable[[Multisegment], Multisegment]) -> "HallElement":
        values: Dict[Multisegment, LaurentPoly] = {}
        for psi, c in self.terms:
            key = fn(psi)
            values[key] = values.get(key, LaurentPoly.zero()) + c
        return HallElement.from_dict(self.e, values)

    def specialize(self, v: int = 1) -> Dict[Multisegment, int]:
        """Coefficients evaluated at v (nonzero results only)."""
        values = {psi: c.evaluate(v) for psi, c in self.terms}
        return {psi: x for psi, x in values.items() if x != 0}

    def to_json(self):
        return [{"multisegment": psi.to_json(), "label": str(psi), "coeff": c.to_json()}
                for psi, c in self.terms]

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for psi, c in self.terms:
            if c == LaurentPoly.one():
                pieces.append(f"E{psi}")
            elif len(c.terms) == 1:
                pieces.append(f"{c}·E{psi}")
            else:
                pieces.append(f"({c})·E{psi}")
        return " + ".join(pieces)


class HallAlgebra:
    """
    The twisted Hall algebra of the cyclic quiver of length e, in the PBW basis E_psi = v^{dim O_psi} u_psi.

    Products of basis elements are cached per instance.
    """

    def __init__(self, e: int, rank_bound: int = settings.HALL_RANK_BOUND,
                 primes: Tuple[int, ...] = settings.HALL_PRIMES):
        self.e = e
        self.rank_bound = rank_bound
        self.primes = tuple(primes)
        self._products: Dict[Tuple[Multisegment, Multisegment], HallElement] = {}

    def generator(self, i) -> HallElement:
        """f_i = E_[i;1)."""
        return HallElement.basis(Multisegment.from_counts(self.e, {(residue_value(i, self.e), 1): 1}))

    def divided_power(self, i, k: int) -> HallElement:
        """f_i^(k) = E_{[i;1)^k}."""
        if k == 0:
            return HallElement.unit(self.e)
        return HallElement.basis(Multisegment.from_counts(self.e, {(residue_value(i, self.e), 1): k}))

    def basis_product(self, phi1: Multisegment, phi2: Multisegment) -> HallElement:
        """E_phi1 * E_phi2 = sum_psi v^{dO1 + dO2 + m(a,b) - dO_psi} F^psi_{phi1,phi2}(v^{-2}) E_psi."""
        key = (phi1, phi2)
        if key in self._products:
            return self._products[key]
        if phi1.is_empty():
            result = HallElement.basis(phi2)
        elif phi2.is_empty():
            result = HallElement.basis(phi1)
        else:
            check_bound("total rank", phi1.rank + phi2.rank, self.rank_bound)
            table = hall_polynomials(phi1, phi2, self.primes, None, self.rank_bound)
            base = orbit_dimension(phi1) + orbit_dimension(phi2) + m_form(dimension_vector(phi1),
                                                                          dimension_vector(phi2))
            values = {}
            for psi, poly in table.polynomials.items():
                values[psi] = poly.substitute_power(-2).shift(base - orbit_dimension(psi))
            result = HallElement.from_dict(self.e, values)
        self._products[key] = result
        return result

    def product(self, x: HallElement, y: HallElement) -> HallElement:
        if x.e != self.e or y.e != self.e:
            raise ContextMismatchError(f"Hall elements used in the algebra for e = {self.e}")
        values: Dict[Multisegment, LaurentPoly] = {}
        for phi1, c1 in x.terms:
            for phi2, c2 in y.terms:
                for psi, c in self.basis_product(phi1, phi2).terms:
                    values[psi] = values.get(psi, LaurentPoly.zero()) + c1 * c2 * c
        return HallElement.from_dict(self.e, values)

    def monomial(self, word: Iterable) -> HallElement:
        """f_{i_1} f_{i_2} ... f_{i_k}, multiplied left to right."""
        word = [residue_value(i, self.e) for i in word]
        check_bound("word length", len(word), self.rank_bound)
        result = HallElement.unit(self.e)
        for i in word:
            result = self.product(result, self.generator(i))
        return result

    def divided_monomial(self, factors: Iterable[Tuple[int, int]]) -> HallElement:
        """f_{i_1}^(k_1) ... f_{i_r}^(k_r) for factors ((i_1, k_1), ...)."""
        result = HallElement.unit(self.e)
        for i, k in factors:
            result = self.product(result, self.divided_power(i, k))
        return result


@lru_cache(maxsize=None)
def algebra_for(e: int) -> HallAlgebra:
    """The shared default algebra for a given e."""
    return HallAlgebra(e)


def product(x: HallElement, y: HallElement) -> HallElement:
    if x.e != y.e:
        raise ContextMismatchError(f"Hall elements mod {x.e} and mod {y.e}")
    return algebra_for(x.e).product(x, y)


def monomial(e: int, word: Iterable) -> HallElement:
    return algebra_for(e).monomial(word)
