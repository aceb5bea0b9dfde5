# tests/test_hall_algebra.py

import pytest

from core.errors import ContextMismatchError, DomainError, InterpolationError, ResourceBoundError
from core.laurent import LaurentPoly, quantum_integer
from core.segments import DimensionVector, Multisegment, parse_multisegment
from models import hall_algebra as ha
from models.hall_algebra import HallElement

ONE = LaurentPoly.one()
V = LaurentPoly.variable()


def _expect(e, expected):
    return HallElement.from_dict(e, {parse_multisegment(k, e): c for k, c in expected.items()})


def test_f1_f2(hall3):
    assert hall3.monomial([1, 2]) == _expect(3, {"{[1;2)}": ONE, "{[1;1),[2;1)}": V})


def test_f2_f1(hall3):
    assert hall3.monomial([2, 1]) == _expect(3, {"{[1;1),[2;1)}": ONE})


def test_f0_f1_f2(hall3):
    assert hall3.monomial([0, 1, 2]) == _expect(3, {
        "{[0;3)}": ONE,
        "{[1;2),[0;1)}": V,
        "{[0;2),[2;1)}": V,
        "{[0;1),[1;1),[2;1)}": V * V,
    })


def test_f2_f1_f0(hall3):
    assert hall3.monomial([2, 1, 0]) == _expect(3, {
        "{[2;2),[1;1)}": ONE,
        "{[0;1),[1;1),[2;1)}": V,
    })


def test_f1_f2_f0(hall3):
    assert hall3.monomial([1, 2, 0]) == _expect(3, {
        "{[1;3)}": ONE,
        "{[2;2),[1;1)}": V,
        "{[1;2),[0;1)}": V,
        "{[0;1),[1;1),[2;1)}": V * V,
    })


def test_f2_f0_f1(hall3):
    assert hall3.monomial([2, 0, 1]) == _expect(3, {
        "{[2;3)}": ONE,
        "{[0;2),[2;1)}": V,
        "{[2;2),[1;1)}": V,
        "{[0;1),[1;1),[2;1)}": V * V,
    })


def test_f0_f2_f1(hall3):
    assert hall3.monomial([0, 2, 1]) == _expect(3, {
        "{[0;2),[2;1)}": ONE,
        "{[0;1),[1;1),[2;1)}": V,
    })


def test_f1_f0_f2(hall3):
    assert hall3.monomial([1, 0, 2]) == _expect(3, {
        "{[1;2),[0;1)}": ONE,
        "{[0;1),[1;1),[2;1)}": V,
    })


@pytest.mark.parametrize("i", [0, 1, 2])
def test_square_of_a_generator_is_a_quantum_two(hall3, i):
    assert hall3.monomial([i, i]) == hall3.divided_power(i, 2).scale(quantum_integer(2))


def test_f0_f1_at_e2(hall2):
    assert hall2.monomial([0, 1]) == _expect(2, {"{[0;2)}": ONE, "{[0;1),[1;1)}": V})


def test_product_is_associative(hall3, ms3):
    a, b, c = (HallElement.basis(ms3(t)) for t in ("{[1;1)}", "{[2;2)}", "{[0;1)}"))
    assert hall3.product(hall3.product(a, b), c) == hall3.product(a, hall3.product(b, c))


def test_hall_polynomials(ms3):
    s0 = ms3("{[0;1)}")
    assert ha.hall_polynomial(ms3("{[1;1)}"), ms3("{[2;1)}"), ms3("{[1;2)}")) == ONE
    assert ha.hall_polynomial(ms3("{[2;1)}"), ms3("{[1;1)}"), ms3("{[1;2)}")).is_zero()
    assert ha.hall_polynomial(s0, s0, ms3("{[0;1)^2}")) == LaurentPoly.from_dict({0: 1, 1: 1})
    with pytest.raises(DomainError):
        ha.hall_polynomial(s0, s0, ms3("{[1;1)^2}"))


def test_both_counting_methods_agree(ms3):
    quotient, sub = ms3("{[1;2)}"), ms3("{[0;1)}")
    by_ext = ha.hall_polynomials(quotient, sub, method="extensions")
    by_sub = ha.hall_polynomials(quotient, sub, method="subspaces")
    assert by_ext.polynomials == by_sub.polynomials
    assert by_ext.validated_at not in by_ext.primes_used
    for p in (2, 3):
        assert ha.hall_numbers_by_extensions(quotient, sub, p) == ha.hall_numbers_by_subspaces(quotient, sub, p)


def test_interpolation_of_synthetic_counts():
    key = Multisegment.from_counts(3, {(0, 1): 1})
    polys, used, check = ha.interpolate_counts(lambda p: {key: p * p + 1}, (2, 3, 5, 7, 11, 13))
    assert polys == {key: LaurentPoly.from_dict({2: 1, 0: 1})}
    assert used == [2, 3, 5, 7]
    assert check == 11


def test_interpolation_rejects_negative_coefficients():
    key = Multisegment.from_counts(3, {(0, 1): 1})
    with pytest.raises(InterpolationError):
        ha.interpolate_counts(lambda p: {key: p * p - p}, (2, 3, 5, 7, 11, 13))


def test_interpolation_needs_a_validation_prime():
    key = Multisegment.from_counts(3, {(0, 1): 1})
    with pytest.raises(InterpolationError):
        ha.interpolate_counts(lambda p: {key: p ** 3}, (2, 3, 5, 7))


def test_m_form():
    a, b = DimensionVector(3, (0, 1, 0)), DimensionVector(3, (0, 0, 1))
    assert ha.m_form(a, b) == 1
    assert ha.m_form(b, a) == 0


def test_rank_bound(hall3):
    with pytest.raises(ResourceBoundError):
        hall3.monomial([0, 1, 2, 0, 1, 2])


def test_mixing_e_is_rejected(hall3):
    with pytest.raises(ContextMismatchError):
        hall3.product(HallElement.unit(3), HallElement.unit(2))


def test_element_helpers(ms3):
    x = _expect(3, {"{[1;2)}": ONE, "{[1;1),[2;1)}": V})
    assert x.specialize(1) == {ms3("{[1;2)}"): 1, ms3("{[1;1),[2;1)}"): 1}
    assert (x - x).is_zero()
    assert x.weights() == [DimensionVector(3, (0, 1, 1))]
    assert x.coefficient(ms3("{[0;1)}")).is_zero()
    assert {entry["label"] for entry in x.to_json()} == {"{[1;2)}", "{[1;1),[2;1)}"}
