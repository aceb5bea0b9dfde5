# tests/test_affine_hecke.py

import numpy as np
import pytest
import sympy as sp

from core.errors import DomainError, HeckeRelationError, ResourceBoundError
from core.laurent import LaurentPoly, MultiLaurent
from core.segments import parse_multisegment
from models import affine_hecke as ah
from models.affine_hecke import HeckeOperator
from models.cyclotomic import ZETA, cyclotomic_field


def test_t_on_constants_is_q():
    assert ah.act_T(1, MultiLaurent.constant(3)) == MultiLaurent.monomial((0, 0, 1))


def test_t_moves_inverse_variable():
    assert ah.act_T(1, MultiLaurent.monomial((-1, 0, 0))) == MultiLaurent.monomial((0, -1, 0))


def test_t_inverse_undoes_t():
    rng = np.random.default_rng(7)
    for _ in range(10):
        f = ah.random_polynomial(3, rng)
        assert ah.act_T_inverse(2, ah.act_T(2, f)) == f
        assert ah.act_T(1, ah.act_T_inverse(1, f)) == f


def test_x_acts_by_inverse_variable():
    f = MultiLaurent.monomial((1, 2, 0))
    assert ah.act_X(2, f, power=2) == MultiLaurent.monomial((1, 0, 0))
    with pytest.raises(DomainError):
        ah.act_X(3, f)


@pytest.mark.parametrize("n, trials", [(2, 20), (3, 10)])
def test_presentation_holds(n, trials):
    report = ah.verify_presentation(n, trials=trials, max_degree=1)
    assert (report["status"] == "pass").all()
    assert len(report) == len(ah.presentation_relations(n))


def test_presentation_size_bound():
    with pytest.raises(ResourceBoundError):
        ah.verify_presentation(6, trials=1)


def test_bernstein_relation():
    report = ah.verify_bernstein(3, trials=20)
    assert len(report) == 20
    with pytest.raises(DomainError):
        ah.verify_bernstein(1, trials=1)


def test_broken_relation_reports_a_witness():
    broken = [("T1 = 1", lambda f: (ah.act_T(1, f), f))]
    with pytest.raises(HeckeRelationError) as info:
        ah._sweep(broken, [MultiLaurent.constant(3)])
    assert info.value.relation == "T1 = 1"
    assert info.value.exit_code == 3


def test_sigma_is_an_involution_on_letters():
    t = HeckeOperator.letter("T", 1)
    assert ah.sigma_twist(ah.sigma_twist([("T", 1, 1)])) == t
    assert t.sigma().sigma() == t
    assert ah.sigma_twist([("X", 2, 3)]) == HeckeOperator.letter("X", 2, -3)


def test_sigma_of_t_is_minus_q_t_inverse():
    f = MultiLaurent.monomial((1, -1, 0))
    minus_q_t_inverse = HeckeOperator.letter("T", 1, -1) * HeckeOperator.scalar(LaurentPoly.monomial(-1, 1))
    assert ah.sigma_twist([("T", 1, 1)]).apply(f) == minus_q_t_inverse.apply(f)


def test_sigma_report():
    report = ah.verify_sigma(2, trials=10)
    assert report.iloc[0]["relation"] == "sigma^2 = id"
    assert (report["status"] == "pass").all()


def test_sigma_report_covers_the_commutation_relations():
    report = ah.verify_sigma(3, trials=5)
    names = set(report["relation"])
    assert {"sigma T1 X3 = X3 T1", "sigma T2 X1 = X1 T2"} <= names
    assert {"sigma X1 X2 = X2 X1", "sigma X1 X3 = X3 X1", "sigma X2 X3 = X3 X2"} <= names
    assert (report["status"] == "pass").all()


def test_bad_letters():
    with pytest.raises(DomainError):
        HeckeOperator.letter("Y", 1)
    with pytest.raises(DomainError):
        HeckeOperator.letter("T", 1, 2)


def test_standard_module_params():
    assert ah.standard_module_params(parse_multisegment("{(2;2]}", 3)).x_exponents == (1, 2)
    assert ah.standard_module_params(parse_multisegment("{(1;1],(1;2]}", 3)).x_exponents == (1, 2)
    params = ah.standard_module_params(parse_multisegment("{(1;1],(2;2]}", 3))
    assert [s.length for s in params.segments] == [2, 1]
    assert [str(ev) for ev in params.eigenvalues()] == ["ζ", "ζ^2", "ζ"]


def test_two_dimensional_example():
    report = ah.verify_h2_example()
    assert len(report.relations) == 3
    assert report.submodule_eigenvalues == {"X1": "ζ^2", "X2": "ζ", "T": "-1"}
    assert report.quotient_eigenvalues == {"X1": "ζ", "X2": "ζ^2", "T": "ζ"}
    assert report.canonical_basis_at_one["{(2;2]}"] == {"{(2;2]}": 1, "{(1;1],(1;2]}": 1}
    assert report.generator_eigenvalues == {"X1": "ζ", "X2": "ζ^2"}


@pytest.mark.parametrize("text", ["{(1;1],(1;2]}", "{(2;1]}", "{(1;1],(1;1]}", "{(2;2]}"])
def test_induced_action_satisfies_the_h2_relations(text):
    fld = cyclotomic_field(3)
    params = ah.standard_module_params(parse_multisegment(text, 3))
    x1, x2, t = ah.induced_rank_two_action(params)
    q = ZETA
    identity = sp.eye(2)
    v = sp.Matrix([1, 0])
    assert fld.matrices_equal((t - q * identity) * (t + identity), sp.zeros(2, 2))
    assert fld.matrices_equal(ZETA ** 2 * t * x1 * t, x2)
    assert fld.matrices_equal(x1 * x2, x2 * x1)
    a, b = (ZETA ** k for k in params.x_exponents)
    assert fld.matrices_equal(x1 * v, a * v)
    assert fld.matrices_equal(x2 * v, b * v)


def test_induced_action_needs_two_eigenvalues():
    with pytest.raises(DomainError):
        ah.induced_rank_two_action(ah.standard_module_params(parse_multisegment("{(1;1],(2;2]}", 3)))


def test_example_follows_the_standard_module_parameters(monkeypatch):
    original = ah.standard_module_params

    def reversed_segments(psi):
        params = original(psi)
        return ah.StandardModuleParams(params.e, tuple(reversed(params.segments)))

    monkeypatch.setattr(ah, "standard_module_params", reversed_segments)
    # X_1 -> zeta^2, X_2 -> zeta on v leaves no submodule spanned by -q v + T v
    with pytest.raises(HeckeRelationError):
        ah.verify_h2_example()
