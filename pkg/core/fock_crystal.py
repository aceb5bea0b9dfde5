# core/fock_crystal.py

import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import List, Optional, Tuple

from config import settings
from core.crystal_graph import Crystal, CrystalGraph, explore
from core.errors import DomainError, check_bound
from core.partitions import (ChargedMultiPartition, Multicharge, multipartitions_of,
                             node_content)
from core.segments import residue_value
from core.weights import WeightExpr


class NodeKind(Enum):
    ADDABLE = "A"
    REMOVABLE = "R"


@dataclass(frozen=True)
class INode:
    """An addable or removable node (row, col, comp) with its content."""
    row: int
    col: int
    comp: int
    kind: NodeKind
    content: int

    def order_key(self) -> Tuple[int, int]:
        # equal contents: the larger component comes first
        return self.content, -self.comp


@dataclass(frozen=True)
class FlotwSet:
    charge: Multicharge
    rank: int
    members: Tuple[ChargedMultiPartition, ...]

    def __len__(self):
        return len(self.members)

    def __contains__(self, lam):
        return lam in self.members


def boundary_nodes(lam: ChargedMultiPartition) -> List[INode]:
    """All addable and removable nodes of every residue."""
    nodes = []
    for c, part in enumerate(lam.components):
        rows = part.parts
        for a in range(1, len(rows) + 2):
            here = part.part(a)
            above = part.part(a - 1) if a > 1 else None
            if above is None or above > here:
                b = here + 1
                nodes.append(INode(a, b, c, NodeKind.ADDABLE, node_content((a, b, c), lam.charge)))
            if here > 0 and here > part.part(a + 1):
                nodes.append(INode(a, here, c, NodeKind.REMOVABLE, node_content((a, here, c), lam.charge)))
    return nodes


def i_nodes_sorted(lam: ChargedMultiPartition, i) -> List[INode]:
    """The addable and removable i-nodes of lam, increasing in the order of the charge."""
    i = residue_value(i, lam.e)
    nodes = [node for node in boundary_nodes(lam) if node.content % lam.e == i]
    return sorted(nodes, key=INode.order_key)


def _reduced_word(nodes: List[INode]) -> List[INode]:
    """RA deletion: cancel removable-then-addable neighbours until the word is A...A R...R."""
    survivors: List[INode] = []
    for node in nodes:
        if node.kind is NodeKind.ADDABLE and survivors and survivors[-1].kind is NodeKind.REMOVABLE:
            survivors.pop()
        else:
            survivors.append(node)
    return survivors


def good_node(lam: ChargedMultiPartition, i) -> Optional[INode]:
    """The leftmost removable i-node surviving RA deletion."""
    for node in _reduced_word(i_nodes_sorted(lam, i)):
        if node.kind is NodeKind.REMOVABLE:
            return node
    return None


def good_addable_node(lam: ChargedMultiPartition, i) -> Optional[INode]:
    """The rightmost addable i-node surviving RA deletion."""
    addable = [n for n in _reduced_word(i_nodes_sorted(lam, i)) if n.kind is NodeKind.ADDABLE]
    return addable[-1] if addable else None


def e_tilde(lam: ChargedMultiPartition, i) -> Optional[ChargedMultiPartition]:
    node = good_node(lam, i)
    return None if node is None else lam.remove_node(node.row, node.comp)


def f_tilde(lam: ChargedMultiPartition, i) -> Optional[ChargedMultiPartition]:
    node = good_addable_node(lam, i)
    return None if node is None else lam.add_node(node.row, node.comp)


def epsilon(lam: ChargedMultiPartition, i) -> int:
    return sum(1 for n in _reduced_word(i_nodes_sorted(lam, i)) if n.kind is NodeKind.REMOVABLE)


def phi(lam: ChargedMultiPartition, i) -> int:
    return sum(1 for n in _reduced_word(i_nodes_sorted(lam, i)) if n.kind is NodeKind.ADDABLE)


def weight(lam: ChargedMultiPartition) -> WeightExpr:
    """Lambda - sum_i N_i(lam) alpha_i."""
    counts = lam.residue_counts()
    return lam.charge.highest_weight() + WeightExpr(lam.e, (0,) * lam.e, tuple(-n for n in counts))


class UglovCrystal(Crystal):
    """The Fock space crystal B^v of charged l-partitions, explored from the empty one."""

    def __init__(self, charge: Multicharge):
        self.charge = charge
        self.e = charge.e

    def _check(self, lam: ChargedMultiPartition):
        if lam.charge != self.charge:
            raise DomainError(f"l-partition with charge {lam.charge} used in the crystal of {self.charge}")

    def highest_weight_vertex(self) -> ChargedMultiPartition:
        return ChargedMultiPartition.empty(self.charge)

    def e_tilde(self, x, i):
        self._check(x)
        return e_tilde(x, i)

    def f_tilde(self, x, i):
        self._check(x)
        return f_tilde(x, i)

    def epsilon(self, x, i) -> int:
        return epsilon(x, i)

    def phi(self, x, i) -> int:
        return phi(x, i)

    def weight(self, x) -> WeightExpr:
        return weight(x)

    def vertex_name(self, x) -> str:
        return str(x)

    def sort_key(self, x):
        return x.sort_key()

    def highest_weight_of(self, lam: ChargedMultiPartition) -> ChargedMultiPartition:
        """Peels lam with the smallest raisable color until no e_tilde applies."""
        self._check(lam)
        current = lam
        while True:
            for i in range(self.e):
                raised = e_tilde(current, i)
                if raised is not None:
                    current = raised
                    break
            else:
                return current

    def contains(self, lam: ChargedMultiPartition) -> bool:
        return self.highest_weight_of(lam).is_empty()


def is_uglov(lam: ChargedMultiPartition) -> bool:
    """True iff lam lies in the connected component of the empty l-partition."""
    return UglovCrystal(lam.charge).contains(lam)


def kleshchev_gap(charge: Multicharge, n: int) -> int:
    return n + charge.e + settings.KLESHCHEV_GAP_PADDING


def gap_charge(charge: Multicharge, gap: int) -> Multicharge:
    """
    The charge -u, where u_0 = v_0 and u_{j+1} is the least integer >= u_j + gap congruent to v_{j+1}.

    Transposition negates contents, so the Uglov crystal of -u on transposed components
    carries the Kleshchev crystal of v with colors negated.
    """
    e = charge.e
    u = [charge.values[0]]
    for v in charge.values[1:]:
        target = u[-1] + gap
        u.append(target + (v - target) % e)
    return Multicharge(tuple(-x for x in u), e)


class KleshchevCrystal(Crystal):
    """
    The Kleshchev crystal of level l and multicharge v, realized through a gap multicharge.

    Vertices carry the charge v; internally each is transposed componentwise and handed to
    the Uglov crystal of gap_charge(v, gap) with color -i.
    """

    def __init__(self, charge: Multicharge, gap: int):
        self.charge = charge
        self.e = charge.e
        self.gap = gap
        self.inner = UglovCrystal(gap_charge(charge, gap))

    @classmethod
    def for_rank(cls, charge: Multicharge, n: int) -> "KleshchevCrystal":
        return cls(charge, kleshchev_gap(charge, n))

    def _inside(self, lam: ChargedMultiPartition) -> ChargedMultiPartition:
        if lam.charge != self.charge:
            raise DomainError(f"l-partition with charge {lam.charge} used in the crystal of {self.charge}")
        return lam.transpose(self.inner.charge)

    def _outside(self, mu: Optional[ChargedMultiPartition]) -> Optional[ChargedMultiPartition]:
        return None if mu is None else mu.transpose(self.charge)

    def highest_weight_vertex(self) -> ChargedMultiPartition:
        return ChargedMultiPartition.empty(self.charge)

    def e_tilde(self, x, i):
        return self._outside(e_tilde(self._inside(x), -residue_value(i, self.e)))

    def f_tilde(self, x, i):
        return self._outside(f_tilde(self._inside(x), -residue_value(i, self.e)))

    def epsilon(self, x, i) -> int:
        return epsilon(self._inside(x), -residue_value(i, self.e))

    def phi(self, x, i) -> int:
        return phi(self._inside(x), -residue_value(i, self.e))

    def weight(self, x) -> WeightExpr:
        return weight(x)

    def vertex_name(self, x) -> str:
        return str(x)

    def sort_key(self, x):
        return x.sort_key()

    def contains(self, lam: ChargedMultiPartition) -> bool:
        return self.inner.contains(self._inside(lam))


def is_kleshchev(lam: ChargedMultiPartition, gap: Optional[int] = None) -> bool:
    """Kleshchev membership; the gap defaults to rank + e."""
    gap = kleshchev_gap(lam.charge, lam.rank) if gap is None else gap
    return KleshchevCrystal(lam.charge, gap).contains(lam)


def is_flotw(lam: ChargedMultiPartition) -> bool:
    """
    Checks the two FLOTW conditions exactly.

    (i)  lam^(c)_j >= lam^(c+1)_{j + v_{c+1} - v_c}, and lam^(l-1)_j >= lam^(0)_{j + e + v_0 - v_{l-1}};
    (ii) for every k > 0 the residues of the right ends of rows of length k are not all of Z/eZ.

    Raises:
        DomainError: If the charge does not satisfy v_0 <= ... <= v_{l-1} < v_0 + e.
    """
    charge = lam.charge
    charge.require_flotw_range()
    v, e, l = charge.values, charge.e, charge.level
    comps = lam.components
    for c in range(l):
        if c < l - 1:
            nxt, shift = comps[c + 1], v[c + 1] - v[c]
        else:
            nxt, shift = comps[0], e + v[0] - v[l - 1]
        for j in range(1, len(comps[c]) + len(nxt) + shift + 2):
            if comps[c].part(j) < nxt.part(j + shift):
                return False
    ends = {}
    for c, part in enumerate(comps):
        for j, length in enumerate(part.parts, start=1):
            ends.setdefault(length, set()).add((length - j + v[c]) % e)
    return all(len(residues) < e for residues in ends.values())


def enumerate_flotw(charge: Multicharge, n: int) -> FlotwSet:
    check_bound("rank", n, settings.MAX_FOCK_RANK)
    charge.require_flotw_range()
    members = tuple(lam for lam in multipartitions_of(charge, n) if is_flotw(lam))
    logging.debug(f"FLOTW set for v={charge}, n={n}: {len(members)} members")
    return FlotwSet(charge, n, members)


def enumerate_kleshchev(charge: Multicharge, n: int) -> Tuple[ChargedMultiPartition, ...]:
    """Kleshchev l-partitions of rank n; only the residues of the charge matter."""
    check_bound("rank", n, settings.MAX_FOCK_RANK)
    crystal = KleshchevCrystal.for_rank(charge, n)
    return tuple(lam for lam in multipartitions_of(charge, n) if crystal.contains(lam))


@lru_cache(maxsize=64)
def uglov_layers(charge: Multicharge, n: int) -> Tuple[Tuple[ChargedMultiPartition, ...], ...]:
    """Layers 0..n of the component of the empty l-partition, by breadth-first search."""
    _, layers = explore(UglovCrystal(charge), n, settings.MAX_FOCK_RANK, name="uglov")
    return tuple(tuple(layer) for layer in layers)


def fock_crystal_graph(charge: Multicharge, max_rank: int) -> CrystalGraph:
    logging.info(f"Exploring the Fock crystal for v={charge}, e={charge.e}, max_rank={max_rank}...")
    graph, _ = explore(UglovCrystal(charge), max_rank, settings.MAX_FOCK_RANK,
                       name=f"fock_e{charge.e}_v{charge.label()}")
    logging.info(f"✅ Fock crystal layers: {graph.layer_sizes()}")
    return graph
