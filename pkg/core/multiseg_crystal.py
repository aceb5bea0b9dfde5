# core/multiseg_crystal.py

import logging
from enum import Enum
from typing import List, Optional, Tuple

from config import settings
from core.crystal_graph import Crystal, CrystalGraph, explore
from core.errors import DomainError, InvariantError
from core.segments import (EMPTY_SYMBOL, Multisegment, dimension_vector,
                           require_aperiodic, residue_value)
from core.weights import WeightExpr


class Convention(Enum):
    """Which end of a segment the Kashiwara operators act on."""
    HEAD = "head"
    TAIL = "tail"

    @classmethod
    def parse(cls, text: str) -> "Convention":
        try:
            return cls(text.lower())
        except ValueError:
            raise DomainError(f"unknown convention '{text}' (expected head or tail)")


# A segment (head, length) that f_tilde creates from nothing (L = 1) or by growing the
# segment _shrunk(i, L) of length L - 1.

def _grown(i: int, length: int, conv: Convention, e: int) -> Tuple[int, int]:
    if conv is Convention.HEAD:
        return i, length
    return (i - length + 1) % e, length


def _shrunk(i: int, length: int, conv: Convention, e: int) -> Tuple[int, int]:
    if conv is Convention.HEAD:
        return (i + 1) % e, length - 1
    return (i - length + 1) % e, length - 1


def s_profile(psi: Multisegment, i, conv: Convention) -> List[Tuple[int, int]]:
    """
    Returns [(l, S_{l,i}) for l = 1 .. maxlen + 1].

    Head: S_{l,i} = sum_{k >= l} (m[i+1;k) - m[i;k)).
    Tail: S_{l,i} = sum_{k >= l} (m(k;i-1] - m(k;i]).
    """
    e = psi.e
    i = residue_value(i, e)
    top = psi.max_length
    profile = []
    running = 0
    for l in range(top + 1, 0, -1):
        if l <= top:
            running += psi.multiplicity(*_shrunk(i, l + 1, conv, e)) - psi.multiplicity(*_grown(i, l, conv, e))
        profile.append((l, running))
    profile.reverse()
    return profile


def f_tilde(psi: Multisegment, i, conv: Convention) -> Multisegment:
    """Adds an i-node at the end selected by `conv`; never null on B(infinity)."""
    require_aperiodic(psi)
    e = psi.e
    i = residue_value(i, e)
    profile = s_profile(psi, i, conv)
    lowest = min(s for _, s in profile)
    l0 = min(l for l, s in profile if s == lowest)
    if l0 == 1:
        return psi.add(*_grown(i, 1, conv, e))
    return psi.remove(*_shrunk(i, l0, conv, e)).add(*_grown(i, l0, conv, e))


def e_tilde(psi: Multisegment, i, conv: Convention) -> Optional[Multisegment]:
    """Removes the i-node selected by the maximal l attaining min S, or returns None."""
    require_aperiodic(psi)
    e = psi.e
    i = residue_value(i, e)
    profile = s_profile(psi, i, conv)
    lowest = min(s for _, s in profile)
    if lowest == 0:
        return None
    l0 = max(l for l, s in profile if s == lowest)
    result = psi.remove(*_grown(i, l0, conv, e))
    if l0 > 1:
        result = result.add(*_shrunk(i, l0, conv, e))
    return result


def epsilon(psi: Multisegment, i, conv: Convention) -> int:
    count = 0
    current = e_tilde(psi, i, conv)
    while current is not None:
        count += 1
        current = e_tilde(current, i, conv)
    return count


def wt(psi: Multisegment) -> WeightExpr:
    """-sum_i d_i alpha_i."""
    return WeightExpr.negative_root_lattice(dimension_vector(psi))


def phi(psi: Multisegment, i, conv: Convention) -> int:
    return epsilon(psi, i, conv) + wt(psi).pairing(i)


def string_of(psi: Multisegment, conv: Convention) -> List[int]:
    """
    A word (i_1, ..., i_n) with psi = f_{i_1} ... f_{i_n} applied to the empty multisegment.

    Peels with the smallest color that can be raised.
    """
    word = []
    current = psi
    while not current.is_empty():
        for i in range(psi.e):
            raised = e_tilde(current, i, conv)
            if raised is not None:
                word.append(i)
                current = raised
                break
        else:
            raise InvariantError(f"{current} is a nonempty highest weight vertex of B(infinity)")
    return word


class MultisegmentCrystal(Crystal):
    """B(infinity) on aperiodic multisegments in the given convention."""

    def __init__(self, e: int, conv: Convention = Convention.HEAD):
        self.e = e
        self.conv = conv

    def highest_weight_vertex(self) -> Multisegment:
        return Multisegment.empty(self.e)

    def e_tilde(self, x, i):
        return e_tilde(x, i, self.conv)

    def f_tilde(self, x, i):
        return f_tilde(x, i, self.conv)

    def epsilon(self, x, i) -> int:
        return -min(s for _, s in s_profile(x, i, self.conv))

    def weight(self, x) -> WeightExpr:
        return wt(x)

    def vertex_name(self, x) -> str:
        return x.canonical_name() if not x.is_empty() else EMPTY_SYMBOL

    def sort_key(self, x):
        return x.sort_key()


def crystal_graph_binf(e: int, conv: Convention, max_rank: int) -> CrystalGraph:
    """
    Explores B(infinity) from the empty multisegment down to rank `max_rank`.

    Raises:
        ResourceBoundError: If max_rank exceeds settings.MAX_BINF_RANK.
    """
    logging.info(f"Exploring B(infinity) for e={e}, convention={conv.value}, max_rank={max_rank}...")
    graph, _ = explore(MultisegmentCrystal(e, conv), max_rank, settings.MAX_BINF_RANK,
                       name=f"binf_e{e}_{conv.value}")
    logging.info(f"✅ B(infinity) layers: {graph.layer_sizes()}")
    return graph
