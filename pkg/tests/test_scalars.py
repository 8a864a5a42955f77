from fractions import Fraction

import pytest

from cherednik.scalars import ParameterField, affine_parts, as_fraction


@pytest.fixture
def field():
    return ParameterField(["k", "q"])


def test_field_ops_are_exact(field):
    k = field.gen("k")
    q = field.gen("q")
    a = (k * k - q * q) / (k - q)
    assert a == k + q
    assert a - a == 0
    assert bool(a - a) is False
    assert (k / k) == 1


def test_fraction_interop(field):
    k = field.gen("k")
    a = Fraction(1, 2) * k + 1
    assert a * 2 == k + 2
    assert 1 / (k + 1) == field.one / (k + 1)
    assert (2 - k) == -(k - 2)


def test_equality_by_cross_multiplication(field):
    k = field.gen("k")
    q = field.gen("q")
    left = (k + 1) / (q + 1)
    right = ((k + 1) * (k + 2)) / ((q + 1) * (k + 2))
    assert left == right
    assert not (left == (k + 2) / (q + 1))


def test_substitution(field):
    k = field.gen("k")
    q = field.gen("q")
    val = (k * k + q) / (k - q)
    assert val.subs({"k": 3, "q": 1}) == Fraction(10, 2)
    with pytest.raises(ValueError):
        val.subs({"k": 3})
    with pytest.raises(ZeroDivisionError):
        val.subs({"k": 1, "q": 1})


def test_affine_parts(field):
    k = field.gen("k")
    q = field.gen("q")
    const, coeffs = affine_parts(2 * k - Fraction(1, 2) * q + 3)
    assert const == 3
    assert coeffs == (2, Fraction(-1, 2))
    assert affine_parts(Fraction(5, 7)) == (Fraction(5, 7), ())
    with pytest.raises(ValueError):
        affine_parts(k * q)
    with pytest.raises(ValueError):
        affine_parts(1 / (k + 1))


def test_as_fraction(field):
    k = field.gen("k")
    assert as_fraction((k + 1) - k) == 1
    assert as_fraction(Fraction(3, 4)) == Fraction(3, 4)
    with pytest.raises(ValueError):
        as_fraction(k)


def test_power_and_negation(field):
    k = field.gen("k")
    assert (k + 1) ** 2 == k * k + 2 * k + 1
    assert (k + 1) ** -1 == field.one / (k + 1)
