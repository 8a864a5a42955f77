from fractions import Fraction

import pytest

from cherednik import MultiplicityParam, build
from cherednik.laurent import LaurentPolynomial
from cherednik.polyring import (constant_term, inner_product_compact,
                                is_invariant, one_poly, symmetrize,
                                weyl_denominator, weyl_density)


def mono(w, c=1):
    return LaurentPolynomial.monomial(w, Fraction(c))


def test_weyl_denominator():
    a1 = build("A1")
    assert weyl_denominator(a1) == mono((1,)) - mono((-1,))
    bc1 = build("BC1")
    assert weyl_denominator(bc1) == mono((1,)) - mono((-1,))
    a2 = build("A2")
    delta = weyl_denominator(a2)
    s = a2.simple_reflection(0)
    assert delta.act_matrix(s.mat) == -delta
    w0 = a2.longest
    assert delta.act_matrix(w0.mat) == delta.scale(Fraction(w0.sign))


def test_weyl_density():
    a1 = build("A1")
    assert weyl_density(a1, MultiplicityParam.of(a1, 1)) == \
        mono((0,), 2) - mono((2,)) - mono((-2,))
    assert weyl_density(a1, MultiplicityParam.of(a1, 0)) == one_poly(a1)
    bc1 = build("BC1")
    d = weyl_density(bc1, MultiplicityParam.of(bc1, 1, 1))
    expected = (mono((0,), 2) - mono((2,)) - mono((-2,))) * \
        (mono((0,), 2) - mono((1,)) - mono((-1,)))
    assert d == expected
    assert is_invariant(bc1, d)
    with pytest.raises(ValueError):
        weyl_density(a1, MultiplicityParam.of(a1, Fraction(1, 2)))


def test_inner_product_values():
    a1 = build("A1")
    one = one_poly(a1)
    x = mono((1,))
    assert inner_product_compact(a1, one, one, MultiplicityParam.of(a1, 1)) == 1
    assert inner_product_compact(a1, one, one, MultiplicityParam.of(a1, 2)) == 3
    assert inner_product_compact(a1, x, one, MultiplicityParam.of(a1, 1)) == 0
    assert inner_product_compact(a1, x, x, MultiplicityParam.of(a1, 1)) == 1


def test_inner_product_w_invariance_and_symmetry():
    a2 = build("A2")
    k = MultiplicityParam.of(a2, 1)
    f = mono((1, 0)) + mono((0, 1), 2)
    g = mono((-1, 1)) - mono((1, -1), 3)
    assert inner_product_compact(a2, f, g, k) == \
        inner_product_compact(a2, g, f, k)
    for idx in range(a2.order):
        wf = f.act_matrix(a2.w_mats[idx])
        wg = g.act_matrix(a2.w_mats[idx])
        assert inner_product_compact(a2, wf, wg, k) == \
            inner_product_compact(a2, f, g, k)


def test_symmetrizers():
    a1 = build("A1")
    x = mono((1,))
    assert symmetrize(a1, x) == (mono((1,)) + mono((-1,))).scale(Fraction(1, 2))
    assert symmetrize(a1, one_poly(a1)) == one_poly(a1)
    assert symmetrize(a1, x, sign=-1) == \
        (mono((1,)) - mono((-1,))).scale(Fraction(1, 2))
    a2 = build("A2")
    f = mono((2, 1)) + mono((0, 1), 5)
    eps_f = symmetrize(a2, f)
    assert symmetrize(a2, eps_f) == eps_f                  # projection
    assert symmetrize(a2, eps_f, sign=-1).is_zero()        # eps+ eps- = 0
    # eps- of (Delta * invariant) recovers Delta * invariant
    delta = weyl_denominator(a2)
    g = delta * eps_f
    assert symmetrize(a2, g, sign=-1) == g


def test_constant_term():
    a1 = build("A1")
    f = mono((0,), 2) - mono((2,)) - mono((-2,))
    assert constant_term(f * f) == 6
    assert constant_term(one_poly(a1)) == 1
