# tests/test_cyclotomic.py

import pytest
import sympy as sp

from core.errors import ContextMismatchError, DomainError
from models.cyclotomic import ZETA, cyclotomic_field


def test_reduction_modulo_phi3():
    fld = cyclotomic_field(3)
    assert fld.degree == 2
    assert fld.reduce(ZETA ** 3) == 1
    assert fld.reduce(ZETA ** -1) == fld.reduce(ZETA ** 2)
    assert fld.element(1 + ZETA + ZETA ** 2).is_zero()


def test_powers_of_zeta():
    fld = cyclotomic_field(3)
    assert fld.zeta_power(4) == fld.zeta_power(1)
    assert fld.zeta_power(1) * fld.zeta_power(2) == fld.element(1)
    assert fld.element(ZETA ** 5).power_of_zeta() == 2
    assert fld.element(-1).power_of_zeta() is None


def test_printing():
    fld = cyclotomic_field(3)
    assert [str(fld.zeta_power(k)) for k in range(3)] == ["1", "ζ", "ζ^2"]
    assert str(fld.element(-1)) == "-1"


def test_arithmetic_with_integers():
    fld = cyclotomic_field(4)
    i = fld.zeta_power(1)
    assert i * i == fld.element(-1)
    assert (i + 1) - i == fld.element(1)
    assert -i == fld.zeta_power(3)


def test_matrices():
    fld = cyclotomic_field(3)
    a = sp.Matrix([[ZETA ** 3, 0], [0, 1 + ZETA]])
    b = sp.Matrix([[1, 0], [0, -ZETA ** 2]])
    assert fld.matrices_equal(a, b)


def test_mixed_orders_rejected():
    with pytest.raises(ContextMismatchError):
        cyclotomic_field(3).zeta_power(1) + cyclotomic_field(4).zeta_power(1)
    with pytest.raises(DomainError):
        cyclotomic_field(0)
