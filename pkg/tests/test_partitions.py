# tests/test_partitions.py

import pytest

from core.errors import DomainError
from core.partitions import (ChargedMultiPartition, Multicharge, Partition, compositions,
                             multipartitions_of, node_content, parse_multipartition, partitions_of)


def test_partitions_of_small_n():
    assert [p.parts for p in partitions_of(4)] == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert partitions_of(0) == (Partition(),)


def test_partition_validation_and_transpose():
    with pytest.raises(DomainError):
        Partition((1, 2))
    assert Partition((3, 1)).transpose() == Partition((2, 1, 1))
    assert Partition((2, 1)).part(3) == 0


def test_multicharge_flotw_range():
    assert Multicharge((0, 1), 3).in_flotw_range()
    assert not Multicharge((0, 3), 3).in_flotw_range()
    with pytest.raises(DomainError):
        Multicharge((1, 0), 3).require_flotw_range()
    assert Multicharge((0, 1, 2), 3).tau() == Multicharge((1, 2, 3), 3)


@pytest.mark.parametrize("text, expected", [
    ("((2,1),(1))", ((2, 1), (1,))),
    ("((2),∅)", ((2,), ())),
    ("(∅,∅)", ((), ())),
    ('{"charge": [0, 1], "parts": [[2, 1], [1]]}', ((2, 1), (1,))),
])
def test_parse_multipartition(text, expected):
    lam = parse_multipartition(text, Multicharge((0, 1), 4))
    assert tuple(c.parts for c in lam.components) == expected


def test_parse_multipartition_level_one():
    charge = Multicharge((0,), 3)
    assert parse_multipartition("(2,1)", charge).components == (Partition((2, 1)),)
    assert parse_multipartition("∅", charge).is_empty()


def test_parse_multipartition_rejects_wrong_level():
    with pytest.raises(DomainError):
        parse_multipartition("((2),(1),(1))", Multicharge((0, 1), 3))
    with pytest.raises(DomainError):
        parse_multipartition('{"charge": [0, 2], "parts": [[1], []]}', Multicharge((0, 1), 3))


def test_printing_and_json():
    lam = ChargedMultiPartition.of(Multicharge((1, 2), 3), (2,), ())
    assert str(lam) == "((2),∅)"
    assert lam.to_json() == {"charge": [1, 2], "parts": [[2], []]}
    assert parse_multipartition(str(lam), lam.charge) == lam


def test_contents_and_residue_counts():
    charge = Multicharge((0, 1), 3)
    lam = ChargedMultiPartition.of(charge, (2, 1), (1,))
    assert node_content((1, 2, 0), charge) == 1
    assert node_content((2, 1, 0), charge) == -1
    assert lam.residue_counts() == [1, 2, 1]


def test_multipartition_enumeration():
    charge = Multicharge((0, 1), 3)
    assert list(compositions(2, 2)) == [(0, 2), (1, 1), (2, 0)]
    # sum over compositions of products of partition counts: 2 + 1 + 2
    assert len(multipartitions_of(charge, 2)) == 5
    assert multipartitions_of(charge, 0) == [ChargedMultiPartition.empty(charge)]
