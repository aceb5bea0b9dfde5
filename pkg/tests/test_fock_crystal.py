# tests/test_fock_crystal.py

import pytest

from core import fock_crystal as fc
from core.errors import DomainError
from core.fock_crystal import KleshchevCrystal, UglovCrystal
from core.partitions import ChargedMultiPartition, Multicharge, multipartitions_of


def _parts(members):
    return sorted(tuple(c.parts for c in lam.components) for lam in members)


def test_level_one_uglov_component_is_e_regular():
    graph = fc.fock_crystal_graph(Multicharge((0,), 2), 3)
    assert graph.layer_sizes() == [1, 1, 1, 2]
    assert sorted(graph.layers[3]) == ["((2,1))", "((3))"]


def test_level_one_flotw_and_kleshchev():
    charge = Multicharge((0,), 3)
    assert _parts(fc.enumerate_flotw(charge, 3).members) == [((2, 1),), ((3,),)]
    assert _parts(fc.enumerate_kleshchev(charge, 3)) == [((1, 1, 1),), ((2, 1),)]


def test_kleshchev_reference_words():
    # (2) = f_2 f_1 (empty) at v = 1, and (1,1) = f_1 f_2 (empty) at v = 2
    one = Multicharge((1,), 3)
    crystal = KleshchevCrystal.for_rank(one, 2)
    lam = crystal.f_tilde(crystal.f_tilde(crystal.highest_weight_vertex(), 1), 2)
    assert lam == ChargedMultiPartition.of(one, (2,))

    two = Multicharge((2,), 3)
    crystal = KleshchevCrystal.for_rank(two, 2)
    lam = crystal.f_tilde(crystal.f_tilde(crystal.highest_weight_vertex(), 2), 1)
    assert lam == ChargedMultiPartition.of(two, (1, 1))


def test_good_nodes_on_a_small_bipartition():
    charge = Multicharge((0, 1), 3)
    lam = ChargedMultiPartition.of(charge, (1,), ())
    # addable 1-nodes (1,2) in component 0 and (1,1) in component 1 tie on content; the larger component comes first
    assert fc.f_tilde(lam, 1) == ChargedMultiPartition.of(charge, (2,), ())
    assert fc.e_tilde(fc.f_tilde(lam, 1), 1) == lam
    assert fc.epsilon(lam, 0) == 1
    assert fc.e_tilde(lam, 1) is None


def test_flotw_example():
    lam = ChargedMultiPartition.of(Multicharge((0, 1), 4), (2, 1), (1,))
    assert fc.is_flotw(lam)
    assert not fc.is_flotw(ChargedMultiPartition.of(Multicharge((0,), 3), (1, 1, 1)))


def test_flotw_needs_charge_in_range():
    with pytest.raises(DomainError):
        fc.is_flotw(ChargedMultiPartition.empty(Multicharge((2, 0), 3)))


@pytest.mark.parametrize("values", [(0, 1), (1, 2), (0, 0), (0, 1, 2)])
def test_flotw_uglov_and_kleshchev_sets_have_equal_size(values):
    charge = Multicharge(values, 3)
    for n in range(4):
        flotw = fc.enumerate_flotw(charge, n)
        uglov = fc.uglov_layers(charge, n)[n]
        assert _parts(flotw.members) == _parts(uglov)
        assert len(fc.enumerate_kleshchev(charge, n)) == len(flotw)


def test_uglov_membership_matches_exploration(charge_e3_01):
    layer = set(fc.uglov_layers(charge_e3_01, 3)[3])
    for lam in multipartitions_of(charge_e3_01, 3):
        assert fc.is_uglov(lam) == (lam in layer)


def test_kleshchev_crystal_axioms(charge_e3_12):
    crystal = KleshchevCrystal.for_rank(charge_e3_12, 4)
    for n in range(4):
        for lam in fc.enumerate_kleshchev(charge_e3_12, n):
            for i in range(3):
                mu = crystal.f_tilde(lam, i)
                if mu is not None:
                    assert crystal.e_tilde(mu, i) == lam
                    assert crystal.contains(mu)


def test_gap_charge_separates_components():
    charge = Multicharge((1, 2), 3)
    gap = fc.kleshchev_gap(charge, 2)
    assert gap == 5
    u = fc.gap_charge(charge, gap)
    assert u.values == (-1, -8)
    assert [x % 3 for x in (-v for v in u.values)] == [1, 2]


def test_crystal_rejects_foreign_charge(charge_e3_01):
    other = ChargedMultiPartition.empty(Multicharge((0, 2), 3))
    with pytest.raises(DomainError):
        UglovCrystal(charge_e3_01).f_tilde(other, 0)


def _flotw_sweep(max_rank):
    for e, values in ((2, (0, 1)), (3, (0, 1)), (3, (0, 2, 2)), (4, (1, 3))):
        charge = Multicharge(values, e)
        for n in range(max_rank + 1):
            yield from fc.enumerate_flotw(charge, n).members


def _row_length(lam, node):
    return lam.components[node.comp].part(node.row)


@pytest.mark.parametrize("max_rank", [4, pytest.param(7, marks=pytest.mark.slow)])
def test_row_lengths_follow_the_node_order(max_rank):
    for lam in _flotw_sweep(max_rank):
        for i in range(lam.e):
            nodes = fc.i_nodes_sorted(lam, i)
            for first in nodes:
                for second in nodes:
                    if _row_length(lam, first) < _row_length(lam, second):
                        assert first.order_key() < second.order_key(), (str(lam), first, second)


@pytest.mark.parametrize("max_rank", [4, pytest.param(7, marks=pytest.mark.slow)])
def test_removable_precedes_addable_one_column_right(max_rank):
    for lam in _flotw_sweep(max_rank):
        for i in range(lam.e):
            nodes = fc.i_nodes_sorted(lam, i)
            removable = [n for n in nodes if n.kind is fc.NodeKind.REMOVABLE]
            addable = [n for n in nodes if n.kind is fc.NodeKind.ADDABLE]
            for r in removable:
                for a in addable:
                    if a.col == r.col + 1:
                        assert r.order_key() < a.order_key(), (str(lam), r, a)


def test_kleshchev_membership_is_stable_under_a_wider_gap():
    charge = Multicharge((0, 1), 3)
    for lam in multipartitions_of(charge, 4):
        gap = fc.kleshchev_gap(charge, 4)
        assert fc.is_kleshchev(lam, gap) == fc.is_kleshchev(lam, 2 * gap)
