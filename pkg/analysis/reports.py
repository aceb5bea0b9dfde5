# analysis/reports.py

import json
import logging
from typing import Dict, Iterable

import pandas as pd

from core.crystal_graph import CrystalGraph
from core.fock_crystal import FlotwSet
from core.partitions import ChargedMultiPartition
from core.segments import Multisegment
from models.canonical_basis import CanonicalBasis, format_word
from models.hall_algebra import HallElement
from models.nilreps import orbit_dimension


def hall_element_table(x: HallElement) -> pd.DataFrame:
    """One row per PBW term: head and tail names, orbit dimension and coefficient."""
    rows = []
    for psi, c in x.terms:
        rows.append({
            "multisegment": str(psi),
            "tail": psi.tail_notation(),
            "dim_orbit": orbit_dimension(psi),
            "coefficient": str(c),
        })
    return pd.DataFrame(rows, columns=["multisegment", "tail", "dim_orbit", "coefficient"])


def hall_element_json(x: HallElement) -> str:
    return dumps(x.to_json())


def canonical_basis_table(elements: Dict[Multisegment, HallElement], basis: CanonicalBasis) -> pd.DataFrame:
    """
    Tabulates canonical basis elements with their monomial words.

    Args:
        elements (Dict): psi -> G(psi), as returned by canonical_basis().
        basis (CanonicalBasis): The basis the elements came from.

    Returns:
        pd.DataFrame: Columns psi, word, dim_orbit, G.
    """
    rows = []
    for psi in sorted(elements, key=lambda phi: (orbit_dimension(phi), phi.sort_key())):
        rows.append({
            "psi": str(psi),
            "word": format_word(basis.monomial_word(psi)),
            "dim_orbit": orbit_dimension(psi),
            "G": str(elements[psi]),
        })
    return pd.DataFrame(rows, columns=["psi", "word", "dim_orbit", "G"])


def canonical_basis_json(elements: Dict[Multisegment, HallElement], basis: CanonicalBasis) -> str:
    data = [{
        "psi": psi.to_json(),
        "label": str(psi),
        "word": format_word(basis.monomial_word(psi)),
        "G": g.to_json(),
    } for psi, g in sorted(elements.items(), key=lambda t: t[0].sort_key())]
    return dumps(data)


def layer_table(graph: CrystalGraph) -> pd.DataFrame:
    rows = [{"depth": depth, "size": len(layer), "vertices": " ".join(layer)}
            for depth, layer in enumerate(graph.layers)]
    return pd.DataFrame(rows, columns=["depth", "size", "vertices"])


def flotw_table(flotw: FlotwSet) -> pd.DataFrame:
    rows = [{"rank": flotw.rank, "multipartition": str(lam), "charge": flotw.charge.label()}
            for lam in flotw.members]
    if not rows:
        logging.warning(f"⚠️ No FLOTW multipartitions of rank {flotw.rank} for v={flotw.charge}")
    return pd.DataFrame(rows, columns=["rank", "multipartition", "charge"])


def membership_table(partitions: Iterable[ChargedMultiPartition], test) -> pd.DataFrame:
    """Applies a membership predicate such as is_kleshchev to each multipartition."""
    rows = [{"multipartition": str(lam), "member": bool(test(lam))} for lam in partitions]
    return pd.DataFrame(rows, columns=["multipartition", "member"])


def dumps(data) -> str:
    """JSON with sorted keys and fixed indentation."""
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False, default=str) + "\n"


def frame_to_json(df: pd.DataFrame) -> str:
    return dumps(df.to_dict(orient="records"))


def frame_to_text(df: pd.DataFrame) -> str:
    if df.empty:
        return "(no rows)\n"
    return df.to_string(index=False) + "\n"
