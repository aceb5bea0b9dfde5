# tests/test_embeddings.py

import pytest

from core import embeddings as emb
from core.errors import DomainError
from core.fock_crystal import enumerate_flotw, is_kleshchev, is_uglov
from core.partitions import ChargedMultiPartition, Multicharge


def test_fv_of_the_worked_example():
    lam = ChargedMultiPartition.of(Multicharge((0, 1), 4), (2, 1), (1,))
    assert str(emb.f_v(lam)) == "{[0;2),[1;1),[3;1)}"


def test_fv_rejects_non_flotw():
    with pytest.raises(DomainError):
        emb.f_v(ChargedMultiPartition.of(Multicharge((0,), 3), (1, 1, 1)))


def test_gamma_fixes_the_reference_bipartition(charge_e3_12):
    lam = ChargedMultiPartition.of(charge_e3_12, (2,), ())
    assert emb.gamma(lam) == lam


def test_gamma_is_a_bijection_onto_kleshchev(charge_e3_01):
    for n in range(4):
        for lam in enumerate_flotw(charge_e3_01, n).members:
            image = emb.gamma(lam)
            assert is_kleshchev(image)
            assert emb.gamma_inverse(image) == lam


def test_path_policies_agree(charge_e3_12):
    for lam in enumerate_flotw(charge_e3_12, 3).members:
        assert emb.gamma(lam, "smallest") == emb.gamma(lam, "largest")
    with pytest.raises(DomainError):
        emb.gamma(ChargedMultiPartition.empty(charge_e3_12), "random")


def test_tau_and_sigma_transport(charge_e3_01):
    for lam in enumerate_flotw(charge_e3_01, 3).members:
        shifted = emb.tau_isomorphism(lam)
        assert shifted.charge == charge_e3_01.tau()
        assert is_uglov(shifted)
        swapped = emb.sigma_isomorphism(lam, 1)
        assert swapped.charge == Multicharge((1, 0), 3)
        assert is_uglov(swapped)


def test_bap_membership_recovers_the_preimage(charge_e3_01):
    for lam in enumerate_flotw(charge_e3_01, 3).members:
        member, preimage = emb.b_ap_membership(emb.f_v(lam), charge_e3_01)
        assert member and preimage == lam


def test_bap_membership_rejects_outsiders(charge_e3_01, ms3):
    member, preimage = emb.b_ap_membership(ms3("{[2;1)}"), charge_e3_01)
    assert not member and preimage is None


def test_row_counts_admissible(charge_e3_01):
    assert emb._row_counts_admissible(((2,), (2, 2)), charge_e3_01)
    assert not emb._row_counts_admissible(((), (1, 1)), charge_e3_01)
    # wrapping inequality: r_0 <= r_1 + e + v_0 - v_1
    assert not emb._row_counts_admissible(((1, 1, 1), ()), charge_e3_01)


def test_row_placement_respects_the_column_inequalities(charge_e3_01, charge_e3_12):
    for charge in (charge_e3_01, charge_e3_12):
        for n in range(1, 5):
            for lam in enumerate_flotw(charge, n).members:
                psi = emb.f_v(lam)
                candidates = emb._rows_by_component(psi, charge)
                assert lam in candidates
                for candidate in candidates:
                    assert emb.rows_to_multisegment(candidate) == psi
                    for k in psi.lengths():
                        rows = tuple(tuple(x for x in part.parts if x >= k) for part in candidate.components)
                        assert emb._row_counts_admissible(rows, charge)


def test_verify_embedding(charge_e3_01):
    report = emb.verify_embedding(charge_e3_01, 4)
    assert not report.empty
    assert report["edge_ok"].all()
    assert (report["epsilon"] == report["epsilon_tail"]).all()
    assert emb.image_is_aperiodic(charge_e3_01, 4)


@pytest.mark.slow
@pytest.mark.parametrize("values", [(0, 1, 2), (0, 0, 1), (0, 2)])
def test_verify_embedding_wider(values):
    charge = Multicharge(values, 3)
    assert emb.verify_embedding(charge, 6)["edge_ok"].all()
