# core/branching.py

import logging
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Tuple

import pandas as pd

from config import settings
from core import fock_crystal, multiseg_crystal
from core.embeddings import b_ap_membership, f_v, gamma, gamma_inverse
from core.errors import ContextMismatchError, DomainError, InvariantError, check_bound
from core.fock_crystal import KleshchevCrystal, enumerate_flotw
from core.multiseg_crystal import Convention
from core.partitions import ChargedMultiPartition, Multicharge
from core.segments import Multisegment, require_aperiodic


class LabelKind(Enum):
    KLESHCHEV = "kleshchev"
    FLOTW = "flotw"
    MULTISEGMENT = "multisegment"

    @classmethod
    def parse(cls, text: str) -> "LabelKind":
        try:
            return cls(text.lower())
        except ValueError:
            raise DomainError(f"unknown label kind '{text}' (expected kleshchev, flotw or multisegment)")


@dataclass(frozen=True)
class LabelTriple:
    """The three labels of one simple module: Kleshchev, FLOTW and aperiodic multisegment."""
    kleshchev: ChargedMultiPartition
    flotw: ChargedMultiPartition
    multisegment: Multisegment

    def to_json(self):
        return {
            "kleshchev": self.kleshchev.to_json(),
            "flotw": self.flotw.to_json(),
            "multisegment": self.multisegment.to_json(),
            "multisegment_head": str(self.multisegment),
            "multisegment_tail": self.multisegment.tail_notation(),
        }


def socle_of_i_restriction(psi: Multisegment, i, conv: Convention) -> Optional[Multisegment]:
    """Predicted label of the socle of the i-restriction of the simple module psi (None: zero)."""
    require_aperiodic(psi)
    return multiseg_crystal.e_tilde(psi, i, conv)


def restriction_ladder(psi: Multisegment, conv: Convention) -> List[Tuple[int, Multisegment]]:
    """
    Restricts step by step down to the trivial module, taking the smallest nonzero i each time.

    Returns:
        The (i, socle label) pairs in order; the last label is the empty multisegment.
    """
    require_aperiodic(psi)
    ladder = []
    current = psi
    while not current.is_empty():
        for i in range(psi.e):
            socle = socle_of_i_restriction(current, i, conv)
            if socle is not None:
                ladder.append((i, socle))
                current = socle
                break
        else:
            raise InvariantError(f"every i-restriction of {current} has zero socle")
    return ladder


def label_correspondence(x, kind: LabelKind, charge: Multicharge) -> LabelTriple:
    """
    Completes a label to the triple (Kleshchev, FLOTW, multisegment).

    Args:
        x: A ChargedMultiPartition (Kleshchev or FLOTW) or an aperiodic Multisegment.
        kind (LabelKind): Which parameterization x belongs to.
        charge (Multicharge): The multicharge v, in the FLOTW range.

    Raises:
        DomainError: If x does not belong to its claimed set.
        ContextMismatchError: If x was built for another multicharge or another e.
    """
    charge.require_flotw_range()
    if kind is LabelKind.MULTISEGMENT:
        if x.e != charge.e:
            raise ContextMismatchError(f"multisegment mod {x.e} given with a charge mod {charge.e}")
    elif x.charge != charge:
        raise ContextMismatchError(f"{x} carries the charge {x.charge}, not {charge}")
    if kind is LabelKind.FLOTW:
        flotw = x
        kleshchev = gamma(flotw)
    elif kind is LabelKind.KLESHCHEV:
        kleshchev = x
        flotw = gamma_inverse(kleshchev)
    else:
        require_aperiodic(x)
        member, flotw = b_ap_membership(x, charge)
        if not member:
            raise DomainError(f"{x} is not in the image of f_v for charge {charge}")
        kleshchev = gamma(flotw)
    return LabelTriple(kleshchev=kleshchev, flotw=flotw, multisegment=f_v(flotw))


def branching_consistency(charge: Multicharge, n: int) -> pd.DataFrame:
    """
    Checks f_v(e_tilde_i lam) = e_tilde_i(f_v(lam)) (tail convention) for every FLOTW lam of rank <= n.

    The Kleshchev label of e_tilde_i lam is reported alongside; it must equal e_tilde_i of the
    Kleshchev label of lam.

    Raises:
        InvariantError: On the first failing square.
    """
    check_bound("rank", n, settings.MAX_FOCK_RANK)
    charge.require_flotw_range()
    logging.info(f"Checking the branching square for v={charge}, e={charge.e}, n <= {n}...")
    rows = []
    for k in range(n + 1):
        kleshchev = KleshchevCrystal.for_rank(charge, k)
        for lam in enumerate_flotw(charge, k).members:
            psi = f_v(lam)
            klam = gamma(lam)
            for i in range(charge.e):
                raised = fock_crystal.e_tilde(lam, i)
                socle = multiseg_crystal.e_tilde(psi, i, Convention.TAIL)
                via_fock = None if raised is None else f_v(raised)
                k_raised = kleshchev.e_tilde(klam, i)
                k_expected = None if raised is None else gamma(raised)
                agree = via_fock == socle and k_raised == k_expected
                rows.append({
                    "rank": k,
                    "lambda": str(lam),
                    "i": i,
                    "f_v(e_i lambda)": str(via_fock) if via_fock is not None else "0",
                    "e_i f_v(lambda)": str(socle) if socle is not None else "0",
                    "kleshchev": str(klam),
                    "agree": agree,
                })
                if not agree:
                    raise InvariantError(f"branching square fails at lambda={lam}, i={i}: "
                                         f"{via_fock} vs {socle}, Kleshchev {k_raised} vs {k_expected}")
    logging.info(f"✅ Branching square holds on {len(rows)} (lambda, i) pairs.")
    return pd.DataFrame(rows)
