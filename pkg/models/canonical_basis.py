# models/canonical_basis.py

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import pandas as pd

from config import settings
from core import multiseg_crystal
from core.errors import CanonicalBasisError, DomainError, check_bound
from core.laurent import LaurentPoly, quantum_integer
from core.multiseg_crystal import Convention
from core.segments import (DimensionVector, Multisegment, dimension_vector,
                           is_aperiodic, multisegments_of_dimension)
from models.hall_algebra import HallAlgebra, HallElement, algebra_for
from models.nilreps import orbit_dimension

MAX_CORRECTIONS = 1000


@dataclass(frozen=True)
class Peel:
    """A_psi = f_i^(m) * A_rest."""
    i: int
    m: int
    rest: Multisegment


def peel_candidates(psi: Multisegment) -> List[Peel]:
    """
    Candidate peels in search order (i ascending, threshold t descending).

    Peeling at (i, t) trims every head-i segment of length >= t: [i;L) becomes [i+1;L-1),
    disappearing when L = 1. The shortest trimmed segment must stay at least as long as every
    head-(i+1) segment already present, and the remainder must be aperiodic.
    """
    e = psi.e
    found = []
    counts = psi.counts()
    for i in range(e):
        lengths = sorted({l for (h, l) in counts if h == i}, reverse=True)
        existing = max((l for (h, l) in counts if h == (i + 1) % e), default=0)
        for t in lengths:
            trimmed = {(h, l): m for (h, l), m in counts.items() if h == i and l >= t}
            if min(l for (_, l) in trimmed) - 1 < existing:
                continue
            rest = dict(counts)
            m = 0
            for (h, l), mult in trimmed.items():
                m += mult
                del rest[(h, l)]
                if l > 1:
                    key = ((i + 1) % e, l - 1)
                    rest[key] = rest.get(key, 0) + mult
            rest_psi = Multisegment.from_counts(e, rest)
            if is_aperiodic(rest_psi):
                found.append(Peel(i, m, rest_psi))
    return found


def orbit_key(psi: Multisegment) -> Tuple:
    return orbit_dimension(psi), psi.sort_key()


class CanonicalBasis:
    """
    Canonical basis elements G(psi) for aperiodic psi, expressed in PBW coordinates.

    For every aperiodic psi a bar-invariant element A_psi = E_psi + (lower terms) is built from
    divided powers by peeling; G(psi) is then obtained by subtracting bar-invariant multiples of
    lower G's until all off-diagonal coefficients lie in v Z[v].
    """

    def __init__(self, algebra: HallAlgebra):
        self.algebra = algebra
        self.e = algebra.e
        self._monomials: Dict[Multisegment, HallElement] = {}
        self._words: Dict[Multisegment, Tuple[Tuple[int, int], ...]] = {}
        self._elements: Dict[Multisegment, HallElement] = {}

    # --- Bar-invariant monomials ---

    def monomial_word(self, psi: Multisegment) -> Tuple[Tuple[int, int], ...]:
        """The divided-power word ((i_1, m_1), ...) with A_psi = f_{i_1}^(m_1) f_{i_2}^(m_2) ..."""
        self.bar_invariant_monomial(psi)
        return self._words[psi]

    def bar_invariant_monomial(self, psi: Multisegment) -> HallElement:
        """
        A_psi for aperiodic psi: bar-invariant, coefficient 1 at E_psi, every other term of
        strictly smaller orbit dimension.

        Raises:
            CanonicalBasisError: If no candidate peel produces such an element.
        """
        if psi in self._monomials:
            return self._monomials[psi]
        if not is_aperiodic(psi):
            raise DomainError(f"{psi} is not aperiodic")
        if psi.is_empty():
            element, word = HallElement.unit(self.e), ()
        else:
            element, word = self._peel(psi)
        self._monomials[psi] = element
        self._words[psi] = word
        return element

    def _peel(self, psi: Multisegment):
        top = orbit_dimension(psi)
        for peel in peel_candidates(psi):
            rest = self.bar_invariant_monomial(peel.rest)
            element = self.algebra.product(self.algebra.divided_power(peel.i, peel.m), rest)
            if element.coefficient(psi) != LaurentPoly.one():
                continue
            if any(orbit_dimension(phi) >= top for phi in element.support() if phi != psi):
                continue
            logging.debug(f"A{psi} = f_{peel.i}^({peel.m}) A{peel.rest}")
            return element, ((peel.i, peel.m),) + self._words[peel.rest]
        raise CanonicalBasisError(f"no admissible peel for {psi}")

    # --- Canonical basis ---

    def element(self, psi: Multisegment) -> HallElement:
        if psi not in self._elements:
            self.compute(dimension_vector(psi))
        return self._elements[psi]

    def compute(self, alpha: DimensionVector) -> Dict[Multisegment, HallElement]:
        """
        G(psi) for every aperiodic psi of dimension alpha.

        Raises:
            ResourceBoundError: If |alpha| exceeds the algebra's rank bound.
            CanonicalBasisError: If the correction loop cannot reach v Z[v].
        """
        check_bound("weight", alpha.rank, self.algebra.rank_bound)
        labels = sorted(multisegments_of_dimension(alpha, aperiodic_only=True), key=orbit_key)
        for psi in labels:
            if psi in self._elements:
                continue
            self._elements[psi] = self._correct(psi)
        return {psi: self._elements[psi] for psi in labels}

    def _correct(self, psi: Multisegment) -> HallElement:
        g = self.bar_invariant_monomial(psi)
        for _ in range(MAX_CORRECTIONS):
            offenders = [(orbit_key(phi), phi, c) for phi, c in g.terms if phi != psi and not c.in_v_zv()]
            if not offenders:
                break
            _, phi, c = max(offenders, key=lambda t: t[0])
            if not is_aperiodic(phi):
                raise CanonicalBasisError(f"periodic term {phi} with coefficient {c} in G{psi}")
            g = g - self.element(phi).scale(c.bar_invariant_part())
        else:
            raise CanonicalBasisError(f"correction of G{psi} did not terminate")
        if g.coefficient(psi) != LaurentPoly.one():
            raise CanonicalBasisError(f"G{psi} has leading coefficient {g.coefficient(psi)}")
        logging.debug(f"G{psi} = {g}")
        return g

    # --- Bar involution and expansions ---

    def monomial_coordinates(self, x: HallElement) -> Dict[Multisegment, LaurentPoly]:
        """
        Writes x as sum_psi c_psi A_psi.

        Raises:
            DomainError: If x is outside the span of the A_psi (the composition algebra).
        """
        coords: Dict[Multisegment, LaurentPoly] = {}
        remainder = x
        while not remainder.is_zero():
            _, psi, c = max(((orbit_key(phi), phi, c) for phi, c in remainder.terms), key=lambda t: t[0])
            if not is_aperiodic(psi):
                raise DomainError(f"element has a periodic leading term {psi}; it is not in the composition algebra")
            coords[psi] = coords.get(psi, LaurentPoly.zero()) + c
            remainder = remainder - self.bar_invariant_monomial(psi).scale(c)
        return coords

    def bar(self, x: HallElement) -> HallElement:
        """The bar involution: fixes every A_psi, inverts v in the coefficients."""
        result = HallElement.zero(self.e)
        for psi, c in self.monomial_coordinates(x).items():
            result = result + self.bar_invariant_monomial(psi).scale(c.bar())
        return result

    def expand(self, x: HallElement) -> Dict[Multisegment, LaurentPoly]:
        """Coefficients of x in the canonical basis."""
        coords: Dict[Multisegment, LaurentPoly] = {}
        remainder = x
        while not remainder.is_zero():
            _, psi, c = max(((orbit_key(phi), phi, c) for phi, c in remainder.terms), key=lambda t: t[0])
            if not is_aperiodic(psi):
                raise DomainError(f"element has a periodic leading term {psi}; it is not in the composition algebra")
            coords[psi] = coords.get(psi, LaurentPoly.zero()) + c
            remainder = remainder - self.element(psi).scale(c)
        return coords


def canonical_basis(alpha: DimensionVector, basis: Optional[CanonicalBasis] = None) -> Dict[Multisegment, HallElement]:
    """Maps each aperiodic psi of dimension alpha to G(psi)."""
    basis = basis or canonical_basis_for(alpha.e)
    logging.info(f"Computing the canonical basis for e={alpha.e}, weight {alpha}...")
    result = basis.compute(alpha)
    logging.info(f"✅ {len(result)} canonical basis elements computed.")
    return result


_BASES: Dict[int, CanonicalBasis] = {}


def canonical_basis_for(e: int) -> CanonicalBasis:
    """The shared CanonicalBasis over the default algebra for e."""
    if e not in _BASES:
        _BASES[e] = CanonicalBasis(algebra_for(e))
    return _BASES[e]


def format_word(word: Tuple[Tuple[int, int], ...]) -> str:
    if not word:
        return "1"
    return "".join(f"f{i}" if m == 1 else f"f{i}^({m})" for i, m in word)


def crystal_from_canonical(alpha: DimensionVector, basis: Optional[CanonicalBasis] = None) -> pd.DataFrame:
    """
    Reads the crystal off the canonical basis and compares it with the head convention crystal.

    For each aperiodic b of weight alpha and each i, f_i G(b) is expanded in the canonical
    basis. The term of smallest epsilon_i must be G(f_tilde_i b) with coefficient
    [epsilon_i(b) + 1], and every other term b' must have epsilon_i(b') > epsilon_i(b) + 1.
    In particular the PBW leading term of f_i G(b) is congruent to f_tilde_i b modulo v.

    Returns:
        pd.DataFrame: One row per (b, i) with the expected and found vertex.
    """
    check_bound("weight", alpha.rank, settings.MAX_CROSSCHECK_RANK)
    basis = basis or canonical_basis_for(alpha.e)
    algebra = basis.algebra
    rows = []
    for b, g in basis.compute(alpha).items():
        for i in range(alpha.e):
            expected = multiseg_crystal.f_tilde(b, i, Convention.HEAD)
            eps = multiseg_crystal.epsilon(b, i, Convention.HEAD)
            coords = basis.expand(algebra.product(algebra.generator(i), g))
            ranked = sorted(coords, key=lambda phi: (multiseg_crystal.epsilon(phi, i, Convention.HEAD),
                                                     phi.sort_key()))
            found = ranked[0] if ranked else None
            coefficient = coords.get(expected, LaurentPoly.zero())
            others_ok = all(multiseg_crystal.epsilon(phi, i, Convention.HEAD) > eps + 1
                            for phi in coords if phi != expected)
            consistent = found == expected and coefficient == quantum_integer(eps + 1) and others_ok
            rows.append({
                "b": str(b),
                "i": i,
                "epsilon": eps,
                "f_tilde": str(expected),
                "leading": str(found) if found is not None else "0",
                "coefficient": str(coefficient),
                "consistent": consistent,
            })
    frame = pd.DataFrame(rows)
    if not frame.empty and not frame["consistent"].all():
        logging.warning(f"⚠️ crystal_from_canonical found {int((~frame['consistent']).sum())} inconsistent edges")
    return frame
