# tests/test_reports.py

import json

import pandas as pd

from analysis import graphs, reports
from core.crystal_graph import CrystalGraph
from core.fock_crystal import enumerate_flotw, is_flotw
from core.multiseg_crystal import Convention, crystal_graph_binf
from core.partitions import Multicharge
from core.segments import DimensionVector
from models.canonical_basis import CanonicalBasis, canonical_basis


def _small_graph():
    return CrystalGraph(e=2, name="demo", layers=[["∅"], ["{[0;1)}"]], edges=[("∅", "{[0;1)}", 0)])


def test_dot_output():
    assert graphs.to_dot(_small_graph()) == (
        'digraph "demo" {\n'
        "  rankdir=TB;\n"
        '  subgraph layer_0 { rank=same; "∅"; }\n'
        '  subgraph layer_1 { rank=same; "{[0;1)}"; }\n'
        '  "∅" -> "{[0;1)}" [label="0"];\n'
        "}\n"
    )


def test_dot_is_deterministic():
    first = graphs.to_dot(crystal_graph_binf(3, Convention.HEAD, 2))
    second = graphs.to_dot(crystal_graph_binf(3, Convention.HEAD, 2))
    assert first == second
    assert first.count("rank=same") == 3


def test_json_output():
    data = json.loads(graphs.to_json(_small_graph()))
    assert list(data) == ["e", "edges", "layers", "name"]
    assert data["edges"] == [{"color": 0, "source": "∅", "target": "{[0;1)}"}]


def test_layer_table():
    table = reports.layer_table(crystal_graph_binf(3, Convention.TAIL, 2))
    assert table["size"].tolist() == [1, 3, 9]
    assert table["depth"].tolist() == [0, 1, 2]


def test_flotw_and_membership_tables():
    flotw = enumerate_flotw(Multicharge((0,), 2), 3)
    table = reports.flotw_table(flotw)
    assert len(table) == 2
    assert set(table["rank"]) == {3}
    member = reports.membership_table(flotw.members, is_flotw)
    assert member["member"].all()


def test_hall_element_table(hall3):
    table = reports.hall_element_table(hall3.monomial([1, 2]))
    assert sorted(table["coefficient"]) == ["1", "v"]
    assert set(table["tail"]) == {"{(2;2]}", "{(1;1],(1;2]}"}


def test_canonical_basis_table(hall3):
    basis = CanonicalBasis(hall3)
    elements = canonical_basis(DimensionVector(3, (0, 1, 1)), basis)
    table = reports.canonical_basis_table(elements, basis)
    assert set(table["word"]) == {"f1f2", "f2f1"}
    assert table["dim_orbit"].is_monotonic_increasing
    data = json.loads(reports.canonical_basis_json(elements, basis))
    assert {entry["word"] for entry in data} == {"f1f2", "f2f1"}


def test_text_and_json_rendering():
    assert reports.frame_to_text(pd.DataFrame()) == "(no rows)\n"
    frame = pd.DataFrame([{"b": 1, "a": "x"}])
    assert json.loads(reports.frame_to_json(frame))[0]["a"] == "x"
    assert reports.dumps({"b": 1, "a": 2}).startswith('{\n  "a": 2')
