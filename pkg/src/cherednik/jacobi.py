"""Nonsymmetric and symmetric Jacobi polynomials, c-function Gamma products,
norm formulas, and orthogonality checks against the constant-term pairing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .dunkl import dunkl_basis
from .laurent import LaurentPolynomial
from .polyring import (inner_product_compact, symmetrize, weyl_density)
from .reports import failed, passed


class EigenvalueCollision(ArithmeticError):
    def __init__(self, mu, nu):
        super().__init__("spectral collision between %s and %s" % (mu, nu))
        self.mu = mu
        self.nu = nu


class NotReducible(ArithmeticError):
    """A Gamma product did not cancel into a rational function."""


@dataclass
class JacobiPolynomial:
    mu: tuple
    poly: LaurentPolynomial
    spectral: tuple      # pairings of mu + w^mu(rho(k)) with simple coroots


def nonsymmetric_jacobi(datum, mu, k):
    """Monic joint eigenfunction E(mu, k) = t^mu + lower terms, solved from
    the triangular system over the order ideal of mu."""
    mu = tuple(mu)
    ideal = datum.order_ideal(mu)
    pos = {w: i for i, w in enumerate(ideal)}
    ops = dunkl_basis(datum, k)
    # rows[i][nu] = {nu': entry of T(xi_i) at (row nu, col nu')}
    rows = [dict() for _ in ops]
    for idx, op in enumerate(ops):
        for nu in ideal:
            image = op.apply(LaurentPolynomial.monomial(nu, Fraction(1)))
            for ww, c in image.coeffs.items():
                assert ww in pos, "Dunkl operator escaped the order ideal"
                rows[idx].setdefault(ww, {})[nu] = c
    lam_mu = datum.spectral_vector(mu, k)
    coeffs = {mu: k.domain_one()}
    for nu in reversed(ideal[:-1]):
        lam_nu = datum.spectral_vector(nu, k)
        solved = False
        numerators = []
        diffs = []
        for i in range(len(ops)):
            num = k.domain_zero()
            for nu2, c in rows[i].get(nu, {}).items():
                if nu2 != nu and nu2 in coeffs:
                    num = num + c * coeffs[nu2]
            numerators.append(num)
            diffs.append(lam_mu[i] - lam_nu[i])
        for i, d in enumerate(diffs):
            if d:
                val = numerators[i] / d
                if hasattr(val, "normalized"):
                    val = val.normalized()
                coeffs[nu] = val
                solved = True
                break
        if not solved:
            if any(numerators):
                raise EigenvalueCollision(mu, nu)
            coeffs[nu] = k.domain_zero()
            continue
        for i, d in enumerate(diffs):
            assert coeffs[nu] * d == numerators[i], \
                "inconsistent joint eigenvalue equations at %s" % (nu,)
    poly = LaurentPolynomial({w: c for w, c in coeffs.items() if c})
    return JacobiPolynomial(mu, poly, lam_mu)


def symmetric_jacobi(datum, lam, k):
    """P(lam, k): the W-invariant eigenfunction, normalized so the coefficient
    of the monomial symmetric function m_lam is 1."""
    lam = tuple(lam)
    if not datum.is_dominant(lam):
        raise ValueError("symmetric Jacobi polynomials take dominant weights")
    w0lam = datum.w_act(datum.longest_index, lam)
    e = nonsymmetric_jacobi(datum, w0lam, k)
    sym = symmetrize(datum, e.poly, sign=1)
    lead = sym.coeffs.get(lam)
    assert lead, "symmetrization lost the leading term"
    poly = sym.scale(1 / lead if not hasattr(lead, "field") else lead.field.one / lead)
    spectral = tuple(lam[i] + datum.rho(k)[i] for i in range(datum.rank))
    return JacobiPolynomial(lam, poly, spectral)


def expand_in_e_basis(datum, f, e_family, order):
    """Expansion coefficients of f over the monic family {E(nu,k)}.

    `e_family` maps weight -> JacobiPolynomial, `order` is a topologically
    sorted weight list covering the support of f.
    """
    residue = f
    out = {}
    for nu in reversed(order):
        c = residue.coeffs.get(nu)
        if c:
            out[nu] = c
            residue = residue - e_family[nu].poly.scale(c)
    assert residue.is_zero(), "vector not in span of the E-basis slice"
    return out


# -- c-functions as Gamma products -------------------------------------------


@dataclass(frozen=True)
class AffineForm:
    """const + sum coeffs[g] * generator_g: one Gamma-token argument,
    written over the generators of the parameter domain (empty coeffs for
    fully specialized parameters)."""
    const: Fraction
    coeffs: tuple

    def __add__(self, other):
        if isinstance(other, AffineForm):
            return AffineForm(self.const + other.const,
                              tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))
        return AffineForm(self.const + Fraction(other), self.coeffs)

    def __neg__(self):
        return AffineForm(-self.const, tuple(-a for a in self.coeffs))

    def to_scalar(self, k):
        if not self.coeffs:
            return k.coerce(self.const)
        total = k.domain.from_fraction(self.const)
        for coeff, name in zip(self.coeffs, k.domain.names):
            if coeff:
                total = total + k.domain.gen(name) * coeff
        return total

    def __str__(self):
        parts = [str(self.const)] if self.const or not any(self.coeffs) else []
        parts += ["%s*g%d" % (c, i) for i, c in enumerate(self.coeffs) if c]
        return " + ".join(parts)


class GammaProduct:
    """Formal product of Gamma(form)^{+-1} tokens with integer-shift reduction."""

    def __init__(self, tokens=()):
        self.tokens = list(tokens)   # (exponent, AffineForm)

    def __mul__(self, other):
        return GammaProduct(self.tokens + other.tokens)

    def inverse(self):
        return GammaProduct([(-e, f) for e, f in self.tokens])

    def reduce(self, k):
        """Cancel Gamma(L+n)/Gamma(L) pairs into products of linear forms.

        Returns an exact scalar; raises NotReducible when tokens survive.
        """
        buckets = {}
        for e, f in self.tokens:
            key = (f.coeffs, f.const - int(f.const))  # class mod integers
            buckets.setdefault(key, {})
            buckets[key][f.const] = buckets[key].get(f.const, 0) + e
        result = k.domain_one()
        for (coeffs, _), exps in buckets.items():
            exps = {c: e for c, e in exps.items() if e}
            if not exps:
                continue
            if sum(exps.values()) != 0:
                raise NotReducible(
                    "unpaired Gamma tokens in class %s: %s" % (coeffs, exps))
            base = min(exps)
            for const, e in exps.items():
                # Gamma(x+const) = Gamma(x+base) * prod_{j=base}^{const-1}(x+j)
                j = base
                while j < const:
                    factor = AffineForm(j, coeffs).to_scalar(k)
                    if e > 0:
                        for _ in range(e):
                            result = result * factor
                    else:
                        for _ in range(-e):
                            result = result / factor
                    j += 1
        if hasattr(result, "normalized"):
            result = result.normalized()
        return result

    def to_json(self):
        return [{"exp": e, "form": str(f)} for e, f in self.tokens]

    def __str__(self):
        return " * ".join("Gamma(%s)^%d" % (f, e) for e, f in self.tokens) or "1"


def _orbit_form(datum, k, const, orbit_coeffs):
    """AffineForm for const + sum_o orbit_coeffs[o] * k_o, decomposed over the
    parameter-domain generators (so shifted parameters keep their integer
    offsets in the constant part, where Gamma cancellation needs them)."""
    from .scalars import affine_parts
    total = Fraction(const)
    if k.domain is None:
        for o, c in orbit_coeffs:
            total += c * k.values[o]
        return AffineForm(total, ())
    coeffs = [Fraction(0)] * len(k.domain.names)
    for o, c in orbit_coeffs:
        c0, cg = affine_parts(k.values[o])
        total += c * c0
        coeffs = [a + c * b for a, b in zip(coeffs, cg)]
    return AffineForm(total, tuple(coeffs))


def _rho_pairing_form(datum, root, k):
    """rho(k)(alpha^vee) as an AffineForm."""
    orbit_coeffs = {}
    for beta in datum.positive_roots:
        c = Fraction(datum.pair(beta.wt, root.coroot), 2)
        if c:
            orbit_coeffs[beta.orbit] = orbit_coeffs.get(beta.orbit, 0) + c
    return _orbit_form(datum, k, 0, list(orbit_coeffs.items()))


def _half_k_form(datum, root, k):
    """(1/2) k_{alpha/2} as an AffineForm (zero when alpha/2 is not a root)."""
    half = datum.half(root)
    if half is None:
        return _orbit_form(datum, k, 0, [])
    return _orbit_form(datum, k, 0, [(half.orbit, Fraction(1, 2))])


def _k_form(datum, root, k):
    return _orbit_form(datum, k, 0, [(root.orbit, Fraction(1))])


def delta_w(datum, w, root):
    """0 if w(alpha) > 0 else 1."""
    img = datum.w_act(w.index, root.wt)
    return 0 if datum._simple_sign(img) > 0 else 1


def c_tilde_w(datum, w, lam_weight, k, rho_shift=True):
    """c~_w(lam + rho(k), k) as a GammaProduct (rho_shift=False drops rho)."""
    tokens = []
    for root in datum.positive_roots:
        base = _orbit_form(datum, k, datum.pair(lam_weight, root.coroot), [])
        if rho_shift:
            base = base + _rho_pairing_form(datum, root, k)
        d = delta_w(datum, w, root)
        halfk = _half_k_form(datum, root, k)
        num = base + halfk + d
        den = base + halfk + _k_form(datum, root, k) + d
        tokens.append((1, num))
        tokens.append((-1, den))
    return GammaProduct(tokens)


def c_star_w(datum, w, lam_weight, k, rho_shift=True, negate=True):
    """c*_w(-(lam + rho(k)), k) when negate=True (the norm-formula argument)."""
    tokens = []
    for root in datum.positive_roots:
        base = _orbit_form(datum, k, datum.pair(lam_weight, root.coroot), [])
        if rho_shift:
            base = base + _rho_pairing_form(datum, root, k)
        if not negate:
            base = -base
        d = delta_w(datum, w, root)
        halfk = _half_k_form(datum, root, k)
        num = base + (-halfk) + (-_k_form(datum, root, k)) + d
        den = base + (-halfk) + d
        tokens.append((1, num))
        tokens.append((-1, den))
    return GammaProduct(tokens)


def c_function(datum, variant, lam_weight, k, w=None):
    """Gamma-product c-function variants evaluated at the weight lam.

    variant: "c_tilde" (= c~_w, default w=e), "c_star" (= c*_w, default w=w0),
    "c" (the normalized c(lam,k) = c~(lam)/c~(rho(k))).
    """
    if variant == "c_tilde":
        w = w if w is not None else datum.weyl(0)
        return c_tilde_w(datum, w, lam_weight, k, rho_shift=False)
    if variant == "c_star":
        w = w if w is not None else datum.longest
        return c_star_w(datum, w, lam_weight, k, rho_shift=False, negate=False)
    if variant == "c":
        w = w if w is not None else datum.weyl(0)
        num = c_tilde_w(datum, w, lam_weight, k, rho_shift=False)
        den = c_tilde_w(datum, w, (0,) * datum.rank, k, rho_shift=True)
        return num * den.inverse()
    raise ValueError("unknown c-function variant %r" % variant)


def norm_gamma(datum, mu, k):
    """||E(mu,k)||^2 as a Gamma product (|W|-normalized pairing):
    |W|^{-1} c*_{w^mu}(-(mu_+ + rho), k) / c~_{w^mu}(mu_+ + rho, k)."""
    mu = tuple(mu)
    mu_plus, _ = datum.dominant_rep(mu)
    w = datum.w_mu(mu)
    num = c_star_w(datum, w, mu_plus, k)
    den = c_tilde_w(datum, w, mu_plus, k)
    return num * den.inverse()


def norm_formula(datum, mu, k):
    """||E(mu,k)||^2 as an exact scalar; NotReducible if the Gamma product
    does not cancel at symbolic k (it always does for specialized integer k)."""
    val = norm_gamma(datum, mu, k).reduce(k)
    return val / datum.order


def norm_ratio(datum, mu, k_mu, nu, k_nu):
    """||E(mu,k_mu)||^2 / ||E(nu,k_nu)||^2, reduced over the common domain.

    Used for generic-k Gram ratios; k_mu and k_nu must share the domain
    (e.g. k and k+1)."""
    g = norm_gamma(datum, mu, k_mu) * norm_gamma(datum, nu, k_nu).inverse()
    return g.reduce(k_mu if k_mu.domain is not None else k_nu)


# -- orthogonality and constant terms -----------------------------------------


def e_family(datum, weights, k):
    return {tuple(mu): nonsymmetric_jacobi(datum, mu, k) for mu in weights}


def orthogonality_check(datum, k, height):
    """Gram matrix of {E(mu,k)} is diagonal with entries equal to the reduced
    norm formula, for nonnegative integer k."""
    if not k.is_integral():
        raise ValueError("orthogonality check needs integer k")
    basis = datum.truncation(height)
    density = weyl_density(datum, k)
    family = e_family(datum, basis, k)
    polys = [family[mu].poly for mu in basis]
    for a in range(len(basis)):
        for b in range(a, len(basis)):
            val = inner_product_compact(datum, polys[a], polys[b], k, density)
            if a != b:
                if val != 0:
                    return failed("jacobi-orthogonality",
                                  {"mu": list(basis[a]), "nu": list(basis[b]),
                                   "inner_product": str(val)},
                                  type=datum.label,
                                  k=[str(v) for v in k.values])
            else:
                expected = norm_formula(datum, basis[a], k)
                if val != expected:
                    return failed("jacobi-norm-formula",
                                  {"mu": list(basis[a]), "ct_value": str(val),
                                   "formula": str(expected)},
                                  type=datum.label,
                                  k=[str(v) for v in k.values])
    return passed("jacobi-orthogonality", type=datum.label,
                  k=[str(v) for v in k.values], height=height,
                  count=len(basis))


def constant_term_value(datum, k):
    """<1, 1>_k, computed by the constant-term oracle."""
    if not k.is_integral():
        raise ValueError("constant term value needs integer k")
    return weyl_density(datum, k).constant_term() / datum.order
