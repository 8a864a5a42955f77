from fractions import Fraction

import pytest

from cherednik import MultiplicityParam, build
from cherednik.ghecke import (HeckeElement, InducedModule, e_span_module_check,
                              epsilon_plus, eta_compatibility, generators,
                              invariant_center_check, is_central,
                              principal_series_check, sp_eval)
from cherednik.polyring import gram_matrix


@pytest.fixture
def a1():
    rd = build("A1")
    return rd, MultiplicityParam.symbolic(rd)


def s_and_xi(rd, k):
    return (HeckeElement.weyl(rd, k, rd.simple_reflection(0).index),
            HeckeElement.coroot(rd, k, 0))


def test_cross_relation_a1(a1):
    rd, k = a1
    s, xi = s_and_xi(rd, k)
    kk = k[0]
    # s xi = -xi s - 2k
    expected = HeckeElement(rd, k, {
        0: {(0,): -2 * kk},
        rd.simple_reflection(0).index: {(1,): -k.domain_one()},
    })
    assert s * xi == expected
    # invariant polynomials commute past s
    assert s * (xi * xi) == (xi * xi) * s
    # (xi s)(xi s) = -xi^2 - 2k xi s
    lhs = (xi * s) * (xi * s)
    expected = HeckeElement(rd, k, {
        0: {(2,): -k.domain_one()},
        rd.simple_reflection(0).index: {(1,): -2 * kk},
    })
    assert lhs == expected


def test_pbw_associativity_random():
    import random
    rd = build("BC1")
    k = MultiplicityParam.symbolic(rd)
    s, xi = s_and_xi(rd, k)
    rng = random.Random(11)
    atoms = [s, xi, s * xi, xi * xi, epsilon_plus(rd, k)]
    for _ in range(8):
        a, b, c = (rng.choice(atoms) for _ in range(3))
        assert (a * b) * c == a * (b * c)


def test_centrality(a1):
    rd, k = a1
    s, xi = s_and_xi(rd, k)
    assert is_central(rd, k, xi * xi)
    assert not is_central(rd, k, xi)
    assert is_central(rd, k, HeckeElement.one(rd, k))


@pytest.mark.parametrize("label", ["A1", "A2", "BC1"])
def test_center_check(label):
    rd = build(label)
    k = MultiplicityParam.symbolic(rd)
    assert invariant_center_check(rd, k, 4).ok


def test_stars(a1):
    rd, k = a1
    s, xi = s_and_xi(rd, k)
    kk = k[0]
    assert xi.star_bullet() == xi
    assert s.star_bullet() == s
    # (xi s)^bullet = s xi, normal-ordered
    assert (xi * s).star_bullet() == s * xi
    # xi^* = s xi s = -xi - 2k s
    expected = HeckeElement(rd, k, {
        0: {(1,): -k.domain_one()},
        rd.simple_reflection(0).index: {(0,): -2 * kk},
    })
    assert xi.star_split() == expected
    for star in (HeckeElement.star_bullet, HeckeElement.star_split):
        a = s * xi
        b = xi * xi * s
        assert star(star(a)) == a
        assert star(a * b) == star(b) * star(a)
    assert HeckeElement.one(rd, k).star_bullet() == HeckeElement.one(rd, k)
    assert HeckeElement.one(rd, k).star_split() == HeckeElement.one(rd, k)


def test_epsilon_plus(a1):
    rd, k = a1
    eps = epsilon_plus(rd, k)
    assert eps * eps == eps
    # eps+ Z eps+ = eps+ Z for central elements
    _, xi = s_and_xi(rd, k)
    z = xi * xi
    assert eps * z * eps == eps * z


@pytest.mark.parametrize("label", ["A1", "BC1", "A2"])
def test_eta_compatibility(label):
    rd = build(label)
    k = MultiplicityParam.symbolic(rd)
    rep = eta_compatibility(rd, k, 3, degree_bound=2)
    assert rep.ok, rep.witness


def test_eta_bullet_preunitary():
    """eta(h^bullet) is the <,>_k adjoint of eta(h) at integer k."""
    rd = build("A1")
    k = MultiplicityParam.of(rd, 2)
    basis = rd.truncation(3)
    gram = gram_matrix(rd, k, basis)
    s, xi = s_and_xi(rd, k)
    for h in (s, xi, s * xi, xi * xi * s):
        m = h.eta_matrix(basis)
        mb = h.star_bullet().eta_matrix(basis)
        dim = len(basis)
        for a in range(dim):
            for b in range(dim):
                lhs = sum(gram[i][b] * mb.cols[a].get(i, Fraction(0))
                          for i in mb.cols[a])
                rhs = sum(gram[a][i] * m.cols[b].get(i, Fraction(0))
                          for i in m.cols[b])
                assert lhs == rhs


@pytest.mark.parametrize("label", ["A1", "A2", "BC1"])
def test_principal_series(label):
    rd = build(label)
    k = MultiplicityParam.symbolic(rd)
    rep = principal_series_check(rd, k)
    assert rep.ok, rep.witness


def test_induced_module_dimension_and_action(a1):
    rd, k = a1
    lam = (k.domain.gen("k0") * 0 + 7,)    # numeric-in-field lambda = 7
    mod = InducedModule.principal(rd, k, lam)
    assert mod.dim == 2
    _, xi = s_and_xi(rd, k)
    cols = mod.act(xi)
    # xi (e x 1) = lam(xi) (e x 1)
    assert cols[0] == {0: lam[0]}
    # xi (s x 1) = s(lam)(xi) (s x 1) - 2k (e x 1)
    assert cols[1][1] == -lam[0]
    assert cols[1][0] == -2 * k[0]


def test_e_span_module():
    rd = build("A1")
    k = MultiplicityParam.symbolic(rd)
    assert e_span_module_check(rd, k, (1,)).ok
    assert e_span_module_check(rd, k, (0,)).ok
    a2 = build("A2")
    ka2 = MultiplicityParam.symbolic(a2)
    rep = e_span_module_check(a2, ka2, (1, 0))
    assert rep.ok and rep.details["dim"] == 3


def test_e_span_explicit_span(a1):
    """The stable span for lam = alpha/2 is {X, X^-1 + (k/(1+k)) X}."""
    rd, k = a1
    from cherednik.jacobi import nonsymmetric_jacobi
    kk = k[0]
    e_plus = nonsymmetric_jacobi(rd, (1,), k).poly
    e_minus = nonsymmetric_jacobi(rd, (-1,), k).poly
    s = rd.simple_reflection(0)
    img = e_plus.act_matrix(s.mat)     # s(X) = X^-1
    # expand in the family: X^-1 = E(-1) - k/(1+k) E(1)
    assert img == e_minus - e_plus.scale(kk / (kk + 1))


def test_sp_eval():
    rd = build("A2")
    k = MultiplicityParam.symbolic(rd)
    p = {(1, 0): k.domain_one(), (0, 2): k[0]}
    val = sp_eval(p, (k.domain.from_fraction(2), k.domain.from_fraction(3)))
    assert val == 2 + 9 * k[0]
