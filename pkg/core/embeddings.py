# core/embeddings.py

import logging
from typing import Dict, List, Optional, Set, Tuple

import pandas as pd

from config import settings
from core.crystal_graph import Crystal
from core.errors import DomainError, InvariantError, check_bound
from core.fock_crystal import (KleshchevCrystal, UglovCrystal, enumerate_flotw,
                               is_flotw)
from core import fock_crystal
from core import multiseg_crystal
from core.multiseg_crystal import Convention
from core.partitions import ChargedMultiPartition, Multicharge, Partition
from core.segments import Multisegment, is_aperiodic

PEEL_POLICIES = ("smallest", "largest")


def f_v(lam: ChargedMultiPartition) -> Multisegment:
    """
    Sends a FLOTW l-partition to the multisegment of its rows.

    Row a of component c becomes the segment [1 - a + v_c; lam^(c)_a).

    Raises:
        DomainError: If the charge is outside the FLOTW range or lam is not FLOTW.
    """
    if not is_flotw(lam):
        raise DomainError(f"{lam} is not a FLOTW l-partition for charge {lam.charge}")
    return rows_to_multisegment(lam)


def rows_to_multisegment(lam: ChargedMultiPartition) -> Multisegment:
    counts: Dict[Tuple[int, int], int] = {}
    e = lam.e
    for c, part in enumerate(lam.components):
        for a, length in enumerate(part.parts, start=1):
            key = ((1 - a + lam.charge.values[c]) % e, length)
            counts[key] = counts.get(key, 0) + 1
    return Multisegment.from_counts(e, counts)


def path_to_highest(crystal: Crystal, x, policy: str = "smallest") -> Tuple[List[int], object]:
    """
    Raises x with e_tilde until no color applies.

    Returns:
        The colors used (first raise first) and the vertex reached.
    """
    if policy not in PEEL_POLICIES:
        raise DomainError(f"unknown peel policy '{policy}'")
    order = list(crystal.colors())
    if policy == "largest":
        order.reverse()
    colors: List[int] = []
    current = x
    for _ in range(settings.MAX_PATH_TRANSPORT_STEPS + 1):
        for i in order:
            raised = crystal.e_tilde(current, i)
            if raised is not None:
                colors.append(i)
                current = raised
                break
        else:
            return colors, current
    raise InvariantError(f"peeling {crystal.vertex_name(x)} did not terminate")


def path_transport(src: Crystal, dst: Crystal, x, policy: str = "smallest"):
    """
    Image of x under the crystal isomorphism between the highest weight components of src and dst.

    Raises:
        DomainError: If x is not in the component of src.highest_weight_vertex().
        InvariantError: If replaying the path in dst falls off the crystal.
    """
    if src.e != dst.e:
        raise DomainError(f"crystals for e = {src.e} and e = {dst.e} are not isomorphic")
    colors, top = path_to_highest(src, x, policy)
    if top != src.highest_weight_vertex():
        raise DomainError(f"{src.vertex_name(x)} is not in the highest weight component")
    current = dst.highest_weight_vertex()
    for i in reversed(colors):
        current = dst.f_tilde(current, i)
        if current is None:
            raise InvariantError(f"replaying the path of {src.vertex_name(x)} hits zero at color {i}")
    return current


def gamma(lam: ChargedMultiPartition, policy: str = "smallest") -> ChargedMultiPartition:
    """The crystal isomorphism from FLOTW l-partitions to Kleshchev l-partitions."""
    if not is_flotw(lam):
        raise DomainError(f"{lam} is not a FLOTW l-partition for charge {lam.charge}")
    return path_transport(UglovCrystal(lam.charge), KleshchevCrystal.for_rank(lam.charge, lam.rank), lam, policy)


def gamma_inverse(lam: ChargedMultiPartition, policy: str = "smallest") -> ChargedMultiPartition:
    """Kleshchev l-partition to its FLOTW counterpart (charge must be in the FLOTW range)."""
    lam.charge.require_flotw_range()
    kleshchev = KleshchevCrystal.for_rank(lam.charge, lam.rank)
    if not kleshchev.contains(lam):
        raise DomainError(f"{lam} is not a Kleshchev l-partition for charge {lam.charge}")
    return path_transport(kleshchev, UglovCrystal(lam.charge), lam, policy)


def tau_isomorphism(lam: ChargedMultiPartition, policy: str = "smallest") -> ChargedMultiPartition:
    """B(v) -> B(tau v) by path transport."""
    return path_transport(UglovCrystal(lam.charge), UglovCrystal(lam.charge.tau()), lam, policy)


def sigma_isomorphism(lam: ChargedMultiPartition, j: int, policy: str = "smallest") -> ChargedMultiPartition:
    """B(v) -> B(sigma_j v), sigma_j exchanging v_{j-1} and v_j, by path transport."""
    return path_transport(UglovCrystal(lam.charge), UglovCrystal(lam.charge.swap(j)), lam, policy)


def cyclic_shift(lam: ChargedMultiPartition) -> ChargedMultiPartition:
    return lam.cyclic_shift()


# --- Image of f_v ---

def _row_counts_admissible(rows: Tuple[Tuple[int, ...], ...], charge: Multicharge) -> bool:
    """
    FLOTW condition (i) read at one length threshold k.

    With r_c the number of rows of length >= k in component c, condition (i) holds for every k
    exactly when r_{c+1} <= r_c + v_{c+1} - v_c and r_0 <= r_{l-1} + e + v_0 - v_{l-1}.
    """
    v, e, l = charge.values, charge.e, charge.level
    for c in range(l):
        nxt = (c + 1) % l
        shift = v[nxt] - v[c] if c < l - 1 else e + v[0] - v[l - 1]
        if len(rows[nxt]) > len(rows[c]) + shift:
            return False
    return True


def _rows_by_component(psi: Multisegment, charge: Multicharge) -> List[ChargedMultiPartition]:
    """
    The l-partitions lam with rows_to_multisegment(lam) == psi that satisfy FLOTW condition (i).

    Rows are assigned length by length, longest first. Component c already holding r rows
    receives its length-k rows as rows r+1, r+2, ..., whose heads are 1 - a + v_c. After each
    length the row counts must pass _row_counts_admissible, so the heads and the column
    inequalities together place the rows and the enumeration only branches where both allow it.
    """
    e, level = psi.e, charge.level
    lengths = psi.lengths()
    results: List[ChargedMultiPartition] = []

    def assign(index: int, rows: Tuple[Tuple[int, ...], ...]):
        if index == len(lengths):
            results.append(ChargedMultiPartition(charge, tuple(Partition(r) for r in rows)))
            return
        k = lengths[index]
        demand = {h: m for (h, l), m in psi.counts().items() if l == k}
        total = sum(demand.values())

        def place(c: int, left: int, remaining: Dict[int, int], rows):
            if c == level:
                if left == 0 and _row_counts_admissible(rows, charge):
                    assign(index + 1, rows)
                return
            for take in range(left, -1, -1):
                start = len(rows[c])
                used: Dict[int, int] = {}
                ok = True
                for a in range(start + 1, start + take + 1):
                    head = (1 - a + charge.values[c]) % e
                    used[head] = used.get(head, 0) + 1
                    if used[head] > remaining.get(head, 0):
                        ok = False
                        break
                if not ok:
                    continue
                rest = {h: remaining[h] - used.get(h, 0) for h in remaining}
                new_rows = rows[:c] + (rows[c] + (k,) * take,) + rows[c + 1:]
                place(c + 1, left - take, rest, new_rows)

        place(0, total, demand, rows)

    assign(0, tuple(() for _ in range(level)))
    return results


def b_ap_membership(psi: Multisegment, charge: Multicharge) -> Tuple[bool, Optional[ChargedMultiPartition]]:
    """
    Decides whether psi = f_v(lam) for a FLOTW lam, and returns lam when it does.

    The preimage is rebuilt from the rows of psi: heads fix the row index in each component and
    the column inequalities prune the placement (see _rows_by_component). Only the residue
    condition (ii) is checked on the finished candidates.

    Raises:
        DomainError: If the charge is outside the FLOTW range.
        InvariantError: If two FLOTW l-partitions have the same image.
    """
    charge.require_flotw_range()
    if psi.e != charge.e:
        raise DomainError(f"multisegment mod {psi.e} tested against a charge mod {charge.e}")
    candidates = [lam for lam in _rows_by_component(psi, charge) if is_flotw(lam)]
    if len(candidates) > 1:
        raise InvariantError(f"f_v is not injective: {[str(c) for c in candidates]} all map to {psi}")
    if not candidates:
        return False, None
    return True, candidates[0]


def b_ap_set(charge: Multicharge, n: int) -> Set[Multisegment]:
    """The image f_v(Phi(v)_n)."""
    return {rows_to_multisegment(lam) for lam in enumerate_flotw(charge, n).members}


def verify_embedding(charge: Multicharge, n: int) -> pd.DataFrame:
    """
    Checks that f_v intertwines the Fock crystal on FLOTW l-partitions with the tail crystal.

    For every lam of rank < n and every color i:
      * if f_tilde_i(lam) exists, f_v of it equals the tail f_tilde_i of f_v(lam);
      * otherwise the tail f_tilde_i of f_v(lam) is not in the image of f_v;
      * epsilon_i(lam) = epsilon_i(f_v(lam)) and phi_i(lam) = phi_i(f_v(lam)) + Lambda(alpha_i^vee).

    Raises:
        InvariantError: On the first violated identity.

    Returns:
        pd.DataFrame: One row per (lam, i).
    """
    check_bound("rank", n, settings.MAX_FOCK_RANK)
    charge.require_flotw_range()
    e = charge.e
    highest = charge.highest_weight()
    images = {k: b_ap_set(charge, k) for k in range(n + 1)}
    rows = []
    for k in range(n):
        for lam in enumerate_flotw(charge, k).members:
            psi = f_v(lam)
            for i in range(e):
                lowered = fock_crystal.f_tilde(lam, i)
                tail_lowered = multiseg_crystal.f_tilde(psi, i, Convention.TAIL)
                if lowered is not None:
                    edge_ok = f_v(lowered) == tail_lowered
                else:
                    edge_ok = tail_lowered not in images[k + 1]
                eps_fock = fock_crystal.epsilon(lam, i)
                eps_tail = multiseg_crystal.epsilon(psi, i, Convention.TAIL)
                phi_fock = fock_crystal.phi(lam, i)
                phi_tail = multiseg_crystal.phi(psi, i, Convention.TAIL) + highest.pairing(i)
                row = {
                    "rank": k, "lambda": str(lam), "i": i, "f_v": str(psi),
                    "edge_ok": edge_ok, "epsilon": eps_fock, "epsilon_tail": eps_tail,
                    "phi": phi_fock, "phi_tail_shifted": phi_tail,
                }
                rows.append(row)
                if not edge_ok or eps_fock != eps_tail or phi_fock != phi_tail:
                    raise InvariantError(f"f_v fails to intertwine at lambda={lam}, i={i}: {row}")
    logging.info(f"✅ f_v intertwines the crystals for v={charge}, e={e}, ranks < {n} ({len(rows)} checks)")
    return pd.DataFrame(rows)


def image_is_aperiodic(charge: Multicharge, n: int) -> bool:
    return all(is_aperiodic(psi) for psi in b_ap_set(charge, n))
