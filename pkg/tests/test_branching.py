# tests/test_branching.py

import pytest

from core.branching import (LabelKind, branching_consistency, label_correspondence,
                            restriction_ladder, socle_of_i_restriction)
from core.embeddings import f_v, gamma
from core.errors import ContextMismatchError, DomainError
from core.fock_crystal import enumerate_flotw
from core.multiseg_crystal import Convention
from core.segments import parse_multisegment


def test_socle_of_restriction(ms3):
    # removing the head of [1;2) leaves [2;1)
    assert socle_of_i_restriction(ms3("{[1;2)}"), 1, Convention.HEAD) == ms3("{[2;1)}")
    assert socle_of_i_restriction(ms3("{[1;2)}"), 2, Convention.HEAD) is None
    assert socle_of_i_restriction(ms3("{[1;2)}"), 2, Convention.TAIL) == ms3("{[1;1)}")


def test_periodic_labels_are_rejected(ms3):
    with pytest.raises(DomainError):
        socle_of_i_restriction(ms3("{[0;1),[1;1),[2;1)}"), 0, Convention.HEAD)


@pytest.mark.parametrize("conv", [Convention.HEAD, Convention.TAIL])
def test_restriction_ladder_reaches_the_trivial_module(ms3, conv):
    psi = ms3("{[0;2),[2;1),[1;1)}")
    ladder = restriction_ladder(psi, conv)
    assert len(ladder) == psi.rank
    assert ladder[-1][1].is_empty()


def test_label_correspondence_from_each_kind(charge_e3_01):
    for lam in enumerate_flotw(charge_e3_01, 3).members:
        triple = label_correspondence(lam, LabelKind.FLOTW, charge_e3_01)
        assert triple.multisegment == f_v(lam)
        assert triple.kleshchev == gamma(lam)
        assert label_correspondence(triple.kleshchev, LabelKind.KLESHCHEV, charge_e3_01) == triple
        assert label_correspondence(triple.multisegment, LabelKind.MULTISEGMENT, charge_e3_01) == triple


def test_label_triple_json(charge_e3_01):
    lam = enumerate_flotw(charge_e3_01, 2).members[0]
    data = label_correspondence(lam, LabelKind.FLOTW, charge_e3_01).to_json()
    assert set(data) == {"kleshchev", "flotw", "multisegment", "multisegment_head", "multisegment_tail"}


def test_multisegment_outside_the_image(charge_e3_01, ms3):
    with pytest.raises(DomainError):
        label_correspondence(ms3("{[2;1)}"), LabelKind.MULTISEGMENT, charge_e3_01)


@pytest.mark.parametrize("kind", [LabelKind.FLOTW, LabelKind.KLESHCHEV])
def test_label_for_another_charge_is_rejected(charge_e3_01, charge_e3_12, kind):
    lam = enumerate_flotw(charge_e3_12, 2).members[0]
    x = lam if kind is LabelKind.FLOTW else gamma(lam)
    with pytest.raises(ContextMismatchError):
        label_correspondence(x, kind, charge_e3_01)


def test_multisegment_for_another_e_is_rejected(charge_e3_01):
    with pytest.raises(ContextMismatchError):
        label_correspondence(parse_multisegment("{[1;1)}", 4), LabelKind.MULTISEGMENT, charge_e3_01)


def test_label_kind_parse():
    assert LabelKind.parse("FLOTW") is LabelKind.FLOTW
    with pytest.raises(DomainError):
        LabelKind.parse("young")


def test_branching_square(charge_e3_01, charge_e3_12):
    for charge in (charge_e3_01, charge_e3_12):
        report = branching_consistency(charge, 3)
        assert report["agree"].all()
        assert len(report) == 3 * sum(len(enumerate_flotw(charge, k)) for k in range(4))
