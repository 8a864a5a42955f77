from fractions import Fraction

import pytest

from cherednik import MultiplicityParam, build
from cherednik.laurent import DivisionFailure, LaurentPolynomial
from cherednik.polyring import one_poly, weyl_denominator
from cherednik.shift import (LoweringOperator, RaisingOperator,
                             composition_identities, lowering_adjoint_check,
                             adjoint_shift, nonexistence_probe,
                             nonsymmetric_shift, nonsymmetric_shift_checks,
                             pi_polynomial, rank1_closed_form, shift_partner,
                             transmutation_check)


def mono(w, c=1):
    return LaurentPolynomial.monomial(w, Fraction(c))


@pytest.fixture
def a1():
    rd = build("A1")
    return rd, MultiplicityParam.symbolic(rd)


@pytest.fixture
def bc1():
    rd = build("BC1")
    return rd, MultiplicityParam.symbolic(rd)


def test_pi_polynomial(a1, bc1):
    rd, k = a1
    assert pi_polynomial(rd, +1, k) == {(1,): k.domain_one(), (0,): k[0]}
    assert pi_polynomial(rd, -1, k) == {(1,): k.domain_one(), (0,): -k[0]}
    rdb, kb = bc1
    # pi^+ = alpha^vee + k_alpha + k_{alpha/2}/2
    pi = pi_polynomial(rdb, +1, kb)
    assert pi[(1,)] == kb.domain_one()
    assert pi[(0,)] == kb[1] + kb[0] * Fraction(1, 2)
    a2 = build("A2")
    ka2 = MultiplicityParam.symbolic(a2)
    pi3 = pi_polynomial(a2, +1, ka2)
    assert max(sum(m) for m in pi3) == 3           # degree |R0_+| = 3


def test_raising_examples(a1):
    rd, k = a1
    g = RaisingOperator(rd, k)
    assert g.apply(mono((1,)) + mono((-1,))) == one_poly(rd)
    assert g.apply(one_poly(rd)).is_zero()


def test_raising_division_failure_off_invariants(a1):
    rd, k = a1
    delta = weyl_denominator(rd)
    with pytest.raises(DivisionFailure):
        mono((1,)).exact_div(delta)


def test_lowering_degree_one(a1):
    rd, k = a1
    g = LoweringOperator(rd, k)
    out = g.apply(one_poly(rd))
    kk = k[0]
    # G_-(k) 1 = (2k-1)(X + X^-1)
    assert out == (mono((1,)) + mono((-1,))).scale(2 * kk - 1)


@pytest.mark.parametrize("label", ["A1", "A2", "BC1"])
def test_transmutation(label):
    rd = build(label)
    k = MultiplicityParam.symbolic(rd)
    assert transmutation_check(rd, +1, k, 5).ok
    assert transmutation_check(rd, -1, k, 5).ok


def test_shift_partner_map(bc1):
    rd, _ = bc1
    # S E(mu) is proportional to E(partner); X and 1 are annihilated
    assert shift_partner(rd, (0,)) is None
    assert shift_partner(rd, (1,)) is None
    assert shift_partner(rd, (-1,)) == (0,)
    assert shift_partner(rd, (2,)) == (1,)
    assert shift_partner(rd, (-2,)) == (-1,)


@pytest.mark.parametrize("label", ["A1", "BC1"])
def test_nonsymmetric_shift_matches_closed_form(label):
    rd = build(label)
    k = MultiplicityParam.symbolic(rd)
    solved = nonsymmetric_shift(rd, k, 4)
    closed = rank1_closed_form(rd, "S", k)
    for m in range(-4, 5):
        x = LaurentPolynomial.monomial((m,), k.domain.one)
        assert solved.matrix.apply_poly(x) == closed.apply(x), m


def test_closed_form_values(bc1):
    rd, k = bc1
    one = one_poly(rd)
    s_op = rank1_closed_form(rd, "S", k)
    assert s_op.apply(one).is_zero()
    assert s_op.apply(mono((1,))).is_zero()
    assert s_op.apply(mono((-1,))) == one
    s21 = rank1_closed_form(rd, "S_(2,-1)", k)
    assert s21.apply(one) == one.scale(k[1] - Fraction(1, 2))
    s12 = rank1_closed_form(rd, "S_(-2,1)", k)
    assert s12.apply(one) == one.scale(k[1] + k[0] - Fraction(1, 2))


def test_closed_form_polynomiality(bc1):
    rd, k = bc1
    for which in ("S", "S_(2,-1)", "S_(-2,1)"):
        op = rank1_closed_form(rd, which, k)
        for m in range(-5, 6):
            op.apply(LaurentPolynomial.monomial((m,), k.domain.one))


def test_closed_form_shift_transmutation(bc1):
    """S_(2,-1) intertwines T(xi, k) with T(xi, k + (2,-1)) on BC1."""
    from cherednik.dunkl import dunkl
    rd, k = bc1
    op = rank1_closed_form(rd, "S_(2,-1)", k)
    shifted = MultiplicityParam(rd, (k[0] + 2, k[1] - 1), k.domain)
    t_here = dunkl(rd, (1,), k)
    t_there = dunkl(rd, (1,), shifted)
    for m in range(-3, 4):
        x = LaurentPolynomial.monomial((m,), k.domain.one)
        assert op.apply(t_here.apply(x)) == t_there.apply(op.apply(x)), m


def test_nonsymmetric_shift_uniqueness_report(a1):
    rd, k = a1
    solved = nonsymmetric_shift(rd, k, 5)
    assert solved.report.details["kernel_dim"] == 0
    rep = nonsymmetric_shift_checks(rd, k, 5, solved)
    assert rep.ok


def test_nonsymmetric_shift_a2():
    rd = build("A2")
    k = MultiplicityParam.symbolic(rd)
    rep = nonsymmetric_shift_checks(rd, k, 3)
    assert rep.ok, rep.witness


@pytest.mark.parametrize("label", ["A1", "BC1"])
@pytest.mark.parametrize("kval", [1, 2])
def test_lowering_adjoint(label, kval):
    rd = build(label)
    k = MultiplicityParam.of(rd, *([kval] * rd.num_orbits))
    assert lowering_adjoint_check(rd, k, 3).ok


def test_adjoint_shift_variants():
    rd = build("A1")
    k = MultiplicityParam.of(rd, 2)
    bullet = adjoint_shift(rd, "bullet", k, 2)
    tilde = adjoint_shift(rd, "star-tilde", k, 2)
    sign = Fraction((-1) ** len(rd.r0_positive))
    assert tilde.matrix == bullet.matrix.scale(sign)


@pytest.mark.parametrize("label", ["A1", "BC1"])
def test_nonexistence_probe(label):
    rd = build(label)
    k = MultiplicityParam.symbolic(rd)
    rep = nonexistence_probe(rd, k, 3)
    assert rep.ok
    assert "witness" in rep.details


@pytest.mark.parametrize("label", ["A1", "BC1"])
def test_composition_identities(label):
    rd = build(label)
    k = MultiplicityParam.symbolic(rd)
    rep = composition_identities(rd, k, 3)
    assert rep.ok, (rep.relation, rep.witness)


def test_composition_spectral_example(a1):
    """Both sides on E(-alpha/2, k): eigenvalue (-1-k+k)(-1-k-k-1)."""
    from cherednik.jacobi import nonsymmetric_jacobi
    from cherednik.shift import bullet_composition
    rd, k = a1
    kk = k[0]
    mat, diag = bullet_composition(rd, k, 3)
    e = nonsymmetric_jacobi(rd, (-1,), k)
    lam = e.spectral[0]                      # -1 - k
    expected = (lam + kk) * (lam - kk - 1)
    assert diag[(-1,)] == expected
    assert mat.apply_poly(e.poly) == e.poly.scale(expected)
