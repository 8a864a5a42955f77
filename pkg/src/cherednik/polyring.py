"""Torus-level operations: Weyl denominator and density, compact inner
product via constant terms, and symmetrizers."""

from __future__ import annotations

from fractions import Fraction

from .laurent import LaurentPolynomial


def one_poly(datum):
    return LaurentPolynomial.monomial((0,) * datum.rank, Fraction(1))


def monomial(datum, weight, coeff=Fraction(1)):
    return LaurentPolynomial.monomial(weight, coeff)


def constant_term(f):
    return f.constant_term()


def weyl_denominator(datum):
    """Delta = prod_{alpha in R0_+} (t^{alpha/2} - t^{-alpha/2}), expanded as
    t^{rho0} prod (1 - t^{-alpha}) so all exponents stay in the weight lattice."""
    delta = LaurentPolynomial.monomial(datum.rho0_wt, Fraction(1))
    for r in datum.r0_positive:
        factor = one_poly(datum) - LaurentPolynomial.monomial(
            tuple(-x for x in r.wt), Fraction(1))
        delta = delta * factor
    return delta


def weyl_density(datum, k):
    """delta(k; t) = prod_{alpha>0} (2 - t^alpha - t^{-alpha})^{k_alpha},
    for nonnegative integer multiplicities."""
    if not k.is_integral():
        raise ValueError("Weyl density needs nonnegative integer k")
    out = one_poly(datum)
    for r in datum.positive_roots:
        e = int(k.of_root(r))
        if e == 0:
            continue
        factor = (one_poly(datum).scale(Fraction(2))
                  - LaurentPolynomial.monomial(r.wt, Fraction(1))
                  - LaurentPolynomial.monomial(tuple(-x for x in r.wt), Fraction(1)))
        for _ in range(e):
            out = out * factor
    return out


def inner_product_compact(datum, f, g, k, density=None):
    """<f, g>_k = |W|^{-1} CT(f conj(g) delta(k)), exact for integer k."""
    if density is None:
        density = weyl_density(datum, k)
    prod = f * g.conjugate() * density
    return prod.constant_term() / datum.order


def gram_matrix(datum, k, basis):
    """Gram matrix G[a][b] = <t^{basis_a}, t^{basis_b}>_k."""
    density = weyl_density(datum, k)
    dim = len(basis)
    gram = [[Fraction(0)] * dim for _ in range(dim)]
    for a in range(dim):
        for b in range(dim):
            # <t^mu, t^nu> = |W|^{-1} CT(t^{mu-nu} delta)
            w = tuple(x - y for x, y in zip(basis[a], basis[b]))
            gram[a][b] = density.coeffs.get(tuple(-x for x in w), Fraction(0)) \
                / datum.order
    return gram


def symmetrize(datum, f, sign=1):
    """epsilon_+ f (sign=+1) or epsilon_- f (sign=-1)."""
    total = LaurentPolynomial()
    for idx in range(datum.order):
        g = f.act_matrix(datum.w_mats[idx])
        if sign < 0 and len(datum.w_words[idx]) % 2:
            g = -g
        total = total + g
    return total.scale(Fraction(1, datum.order))


def is_invariant(datum, f):
    return all(f.act_matrix(datum.w_mats[datum.simple_reflection(i).index]) == f
               for i in range(datum.rank))
