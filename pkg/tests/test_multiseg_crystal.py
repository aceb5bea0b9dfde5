# tests/test_multiseg_crystal.py

import pytest

from core import multiseg_crystal as mc
from core.errors import DomainError, ResourceBoundError
from core.multiseg_crystal import Convention, MultisegmentCrystal, crystal_graph_binf
from core.segments import Multisegment, aperiodic_multisegments


def test_first_steps_in_head_convention(ms3):
    empty = Multisegment.empty(3)
    assert mc.f_tilde(empty, 1, Convention.HEAD) == ms3("{[1;1)}")
    # f_0 grows [1;1) at its head
    assert mc.f_tilde(ms3("{[1;1)}"), 0, Convention.HEAD) == ms3("{[0;2)}")
    # f_2 cannot grow [1;1) at its head, so it adds a new segment
    assert mc.f_tilde(ms3("{[1;1)}"), 2, Convention.HEAD) == ms3("{[1;1),[2;1)}")


def test_tail_convention_grows_at_the_tail(ms3):
    assert mc.f_tilde(ms3("{[1;1)}"), 2, Convention.TAIL) == ms3("{[1;2)}")
    assert mc.f_tilde(ms3("{[1;1)}"), 0, Convention.TAIL) == ms3("{[0;1),[1;1)}")


@pytest.mark.parametrize("conv", [Convention.HEAD, Convention.TAIL])
def test_e_tilde_inverts_f_tilde(conv):
    for psi in aperiodic_multisegments(3, 3):
        for i in range(3):
            lowered = mc.f_tilde(psi, i, conv)
            assert mc.e_tilde(lowered, i, conv) == psi
            assert mc.epsilon(lowered, i, conv) == mc.epsilon(psi, i, conv) + 1


@pytest.mark.parametrize("conv", [Convention.HEAD, Convention.TAIL])
def test_string_rebuilds_the_vertex(conv):
    for psi in aperiodic_multisegments(3, 3):
        current = Multisegment.empty(3)
        for i in reversed(mc.string_of(psi, conv)):
            current = mc.f_tilde(current, i, conv)
        assert current == psi


def test_fast_epsilon_matches_iteration(ms3):
    crystal = MultisegmentCrystal(3, Convention.HEAD)
    for psi in aperiodic_multisegments(3, 3):
        for i in range(3):
            assert crystal.epsilon(psi, i) == mc.epsilon(psi, i, Convention.HEAD)


def test_weight_and_phi(ms3):
    psi = ms3("{[1;2)}")
    # wt = -alpha_1 - alpha_2
    assert mc.wt(psi).pairing(1) == -1
    assert mc.phi(psi, 1, Convention.HEAD) == mc.epsilon(psi, 1, Convention.HEAD) - 1


def test_periodic_input_is_rejected(ms3):
    with pytest.raises(DomainError):
        mc.f_tilde(ms3("{[0;1),[1;1),[2;1)}"), 0, Convention.HEAD)


@pytest.mark.parametrize("conv", [Convention.HEAD, Convention.TAIL])
def test_binf_layers_are_the_aperiodic_multisegments(conv):
    graph = crystal_graph_binf(3, conv, 3)
    assert graph.layer_sizes() == [1, 3, 9, 21]
    for n, layer in enumerate(graph.layers):
        assert sorted(layer) == sorted(psi.canonical_name() for psi in aperiodic_multisegments(3, n))
    # every vertex has exactly one outgoing edge per color
    assert len(graph.edges) == 3 * (1 + 3 + 9)


def test_binf_rank_bound():
    with pytest.raises(ResourceBoundError):
        crystal_graph_binf(3, Convention.HEAD, 99)


def test_convention_parse():
    assert Convention.parse("Tail") is Convention.TAIL
    with pytest.raises(DomainError):
        Convention.parse("middle")
