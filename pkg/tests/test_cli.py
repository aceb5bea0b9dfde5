# tests/test_cli.py

import json

import pytest

from main import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_binf_graph_dot(capsys):
    code, out = run(capsys, "binf-graph", "--e", "3", "--rank", "2", "--format", "dot")
    assert code == 0
    assert out.startswith('digraph "binf_e3_head" {')
    assert out.count(" -> ") == 3 + 9
    assert out.count("subgraph layer_") == 3


def test_binf_graph_is_reproducible(capsys):
    _, first = run(capsys, "binf-graph", "--e", "2", "--rank", "3", "--format", "json", "--convention", "tail")
    _, second = run(capsys, "binf-graph", "--e", "2", "--rank", "3", "--format", "json", "--convention", "tail")
    assert first == second
    assert json.loads(first)["e"] == 2


def test_fv_map(capsys):
    code, out = run(capsys, "fv-map", "--e", "4", "--charge", "0,1", "--input", "((2,1),(1))")
    assert code == 0
    assert out == "{[0;2),[1;1),[3;1)}\n"


def test_canonical_basis_json(capsys):
    code, out = run(capsys, "canonical-basis", "--e", "3", "--weight", "1,1,1", "--format", "json")
    assert code == 0
    assert len(json.loads(out)) == 6


def test_flotw_list_table(capsys):
    code, out = run(capsys, "flotw-list", "--e", "2", "--charge", "0", "--rank", "3", "--format", "json")
    assert code == 0
    assert {row["multipartition"] for row in json.loads(out)} == {"((3))", "((2,1))"}


def test_hecke_verify(capsys):
    code, out = run(capsys, "hecke-verify", "--n", "2", "--trials", "5", "--format", "json")
    assert code == 0
    rows = json.loads(out)
    assert all(row["status"] == "pass" for row in rows)
    assert any(row["relation"].startswith("example: ") for row in rows)


def test_domain_errors_exit_with_one(capsys):
    assert run(capsys, "fv-map", "--e", "3", "--charge", "0,0", "--input", "((1),(2))")[0] == 1
    assert run(capsys, "fv-map", "--e", "3")[0] == 1
    assert run(capsys, "flotw-list", "--format", "dot")[0] == 1


@pytest.mark.parametrize("argv", [
    ["hall-product", "--e", "3", "--word", "1,x"],
    ["hall-product", "--e", "3", "--left", "{[1;1),junk}", "--right", "{[2;1)}"],
    ["hall-product", "--e", "3", "--left", "{[1;1) [2;1)}", "--right", "{[2;1)}"],
    ["labels", "--e", "3", "--charge", "0,1", "--from", "multisegment", "--input", "{[1;1)(1;1]}"],
])
def test_malformed_input_exits_with_one(capsys, argv):
    code, out = run(capsys, *argv)
    assert code == 1
    assert out == ""


def test_resource_bound_exits_with_two(capsys):
    code, out = run(capsys, "binf-graph", "--rank", "99")
    assert code == 2
    assert out == ""


def test_unknown_convention_is_a_usage_error(capsys):
    with pytest.raises(SystemExit):
        main(["binf-graph", "--convention", "sideways"])
