from fractions import Fraction

import pytest

from cherednik import MultiplicityParam, build
from cherednik.dunkl import (DunklOperator, check_adjointness_compact,
                             check_commutativity, check_hecke_relations,
                             dunkl, dunkl_poly, radial_laplacian_check,
                             squared_norm_poly, symmetric_restriction)
from cherednik.jacobi import symmetric_jacobi
from cherednik.laurent import LaurentPolynomial
from cherednik.operators import LinearOperator, OpCherednik, OpWeyl
from cherednik.polyring import one_poly


def mono(w, c=1):
    return LaurentPolynomial.monomial(w, Fraction(c))


@pytest.fixture
def a1():
    rd = build("A1")
    return rd, MultiplicityParam.symbolic(rd)


def test_a1_action(a1):
    rd, k = a1
    t = dunkl(rd, (1,), k)
    kk = k[0]
    assert t.apply(one_poly(rd)) == one_poly(rd).scale(-kk)
    assert t.apply(mono((1,))) == mono((1,)).scale(kk + 1)
    assert t.apply(mono((-1,))) == \
        mono((-1,)).scale(-(kk + 1)) + mono((1,)).scale(-2 * kk)


def test_cherednik_atom_resolves_geometrically():
    rd = build("A1")
    atom = OpCherednik(rd.root((2,)))
    # [(1 - X^-2)^{-1}(1 - s)] X = X
    assert atom.apply(mono((1,))) == mono((1,))
    assert atom.apply(one_poly(rd)).is_zero()
    assert atom.apply(mono((-1,))) == -mono((1,))


def test_dunkl_poly(a1):
    rd, k = a1
    ident = dunkl_poly(rd, {(0,): k.domain_one()}, k)
    assert ident.apply(mono((1,))) == mono((1,))
    sq = dunkl_poly(rd, {(2,): k.domain_one()}, k)
    kk = k[0]
    assert sq.apply(one_poly(rd)) == one_poly(rd).scale(kk * kk)
    assert sq.apply(mono((1,))) == mono((1,)).scale((kk + 1) ** 2)


def test_degree_zero_is_derivative():
    rd = build("A2")
    k0 = MultiplicityParam.of(rd, 0)
    t = dunkl(rd, (1, 0), k0)
    f = mono((2, -1)) + mono((0, 1), 3)
    assert t.apply(f) == mono((2, -1), 2) + mono((0, 1), 0)


def test_linearity_in_xi(a1):
    rd, k = a1
    basis = rd.truncation(3)
    t1 = LinearOperator.from_operator(dunkl(rd, (1,), k), basis, basis)
    t2 = LinearOperator.from_operator(dunkl(rd, (Fraction(3),), k),
                                      basis, basis)
    assert t2 == t1.scale(k.coerce(3))


def test_triangularity_and_truncation_stability():
    rd = build("B2")
    k = MultiplicityParam.symbolic(rd)
    ops = [dunkl(rd, tuple(int(i == j) for j in range(2)), k)
           for i in range(2)]
    for mu in rd.truncation(4):
        ideal = rd.order_ideal(mu)
        spect = rd.spectral_vector(mu, k)
        for i, op in enumerate(ops):
            img = op.apply(mono(mu))
            # diagonal coefficient is the spectral pairing
            assert img.coeffs.get(tuple(mu), k.domain_zero()) == spect[i]
            # support stays strictly inside the order ideal below mu
            for w in img.support():
                assert w in ideal


def test_matrix_of_examples(a1):
    rd, k = a1
    basis = [(0,), (1,), (-1,)]
    ident = LinearOperator.identity(basis, k.domain_one())
    assert ident * ident == ident
    s_mat = LinearOperator.from_operator(OpWeyl(rd.simple_reflection(0)),
                                         basis, basis)
    assert s_mat.entry((0,), (0,)) == 1
    assert s_mat.entry((-1,), (1,)) == 1 and s_mat.entry((1,), (-1,)) == 1
    t = LinearOperator.from_operator(dunkl(rd, (1,), k), basis, basis)
    kk = k[0]
    assert t.entry((0,), (0,)) == -kk
    assert t.entry((1,), (1,)) == kk + 1
    assert t.entry((-1,), (-1,)) == -(kk + 1)
    assert t.entry((1,), (-1,)) == -2 * kk


@pytest.mark.parametrize("label,height", [("A2", 4), ("B2", 4), ("BC1", 4)])
def test_commutativity(label, height):
    rd = build(label)
    k = MultiplicityParam.symbolic(rd)
    assert check_commutativity(rd, k, height).ok


@pytest.mark.parametrize("label", ["A1", "A2", "BC1", "B2"])
def test_hecke_relations(label):
    rd = build(label)
    k = MultiplicityParam.symbolic(rd)
    assert check_hecke_relations(rd, k, 3).ok


def test_hecke_relation_a1_values(a1):
    rd, k = a1
    s = rd.simple_reflection(0)
    t = dunkl(rd, (1,), k)
    t_neg = dunkl(rd, (-1,), k)
    x = mono((1,))
    # eta(s) T(xi) - T(s xi) eta(s), applied to X, equals -2k X
    lhs = t.apply(x).act_matrix(s.mat) - t_neg.apply(x.act_matrix(s.mat))
    assert lhs == x.scale(-2 * k[0])


@pytest.mark.parametrize("kval", [0, 1, 2])
def test_adjointness(kval):
    for label in ("A1", "A2"):
        rd = build(label)
        k = MultiplicityParam.of(rd, kval)
        assert check_adjointness_compact(rd, k, 3 if label == "A1" else 2).ok


def test_symmetric_restriction_eigenvalues(a1):
    rd, k = a1
    p2 = squared_norm_poly(rd, k)
    mat = symmetric_restriction(rd, p2, k, 3)
    # D(p2, k) P(lam) = (lam + rho, lam + rho) P(lam)
    for j, lam in enumerate(mat.labels):
        spec = symmetric_jacobi(rd, lam, k).spectral
        expected = sum(spec[a] * rd.gram_wt[a][b] * spec[b]
                       for a in range(rd.rank) for b in range(rd.rank))
        col = mat.cols[j]
        diag = col.get(j, k.domain_zero())
        assert diag == expected


def test_symmetric_restriction_rejects_noninvariant(a1):
    rd, k = a1
    with pytest.raises(ValueError):
        symmetric_restriction(rd, {(1,): k.domain_one()}, k, 3)


@pytest.mark.parametrize("label", ["A1", "A2"])
def test_radial_laplacian(label):
    rd = build(label)
    k = MultiplicityParam.symbolic(rd)
    assert radial_laplacian_check(rd, k, 4).ok


def test_radial_laplacian_flat_case():
    from cherednik.dunkl import radial_laplacian
    rd = build("A1")
    k0 = MultiplicityParam.of(rd, 0)
    lap = radial_laplacian(rd, k0)
    f = mono((2,)) + mono((-2,))
    # flat Laplacian eigenvalue (lam, lam) on t^lam + t^-lam
    lam_sq = rd.inner((2,), (2,))
    assert lap.apply(f) == f.scale(lam_sq)
    assert lap.apply(one_poly(rd)).is_zero()
