"""The p-adic side at the level of explicit formulas: Poincare polynomials,
Macdonald's c-function, zonal spherical values, the inverse transform of the
spherical Hecke algebra, q -> 1 degeneration, and an independent rank-1
oracle counting horocycle levels on the (q+1)-regular tree.

Computations run on the dual root datum: exponents are coweights of the
original system and the c-function factors are indexed by coroots. Square
roots of the parameters are adjoined as generators v with v^2 = q, since the
half-modulus normalization involves q^{1/2}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .laurent import LaurentPolynomial
from .polyring import is_invariant, one_poly
from .reports import failed, passed
from .rootdata import build
from .scalars import ParameterField

_DUAL = {"A": "A", "B": "C", "C": "B", "D": "D", "BC": "BC", "G": "G", "F": "F"}


def dual_datum(label):
    rd = build(label)
    return build(_DUAL[rd.family], rd.rank)


class PoleCancellationFailure(ArithmeticError):
    pass


class HeckeParam:
    """Per-orbit Hecke parameters on the dual datum (orbits of coroots)."""

    def __init__(self, datum, domain, sqrt_values):
        self.datum = datum
        self.domain = domain
        self.sqrt_values = tuple(sqrt_values)
        self.values = tuple(v * v for v in self.sqrt_values)

    @staticmethod
    def symbolic(datum):
        names = ["v%d" % i for i in range(datum.num_orbits)]
        dom = ParameterField(names)
        return HeckeParam(datum, dom, dom.gens())

    @staticmethod
    def equal(datum):
        """A single symbolic parameter q = v^2 shared by every orbit."""
        dom = ParameterField(["v"])
        v = dom.gen("v")
        return HeckeParam(datum, dom, [v] * datum.num_orbits)

    def one(self):
        return self.domain.one if self.domain else Fraction(1)

    def q_of(self, root):
        return self.values[root.orbit]

    def sqrt_of(self, root):
        return self.sqrt_values[root.orbit]

    def q_half_of(self, root):
        """q_{alpha/2}, which lives on the doubled coroot; 1 when absent."""
        doubled = tuple(2 * x for x in root.wt)
        if doubled in self.datum._root_by_wt:
            return self.values[self.datum.root(doubled).orbit]
        return self.one()

    def at_q_one(self, scalar):
        if isinstance(scalar, (int, Fraction)):
            return Fraction(scalar)
        return scalar.subs({n: Fraction(1) for n in self.domain.names})


def poincare_polynomial(datum, par, inverse=False):
    """P_W(q) = sum_w q(w) with q(w) = prod over inversions; an inversion at
    an unmultipliable alpha contributes q_alpha q_{alpha/2} (the affine-length
    convention, pinned by sum_w c(w t) = P_W(q^{-1}))."""
    total = None
    for idx in range(datum.order):
        term = par.one()
        for r in datum.positive_roots:
            if datum.half(r) is not None:
                continue
            if datum._simple_sign(datum.w_act(idx, r.wt)) < 0:
                q = par.q_of(r)
                doubled = tuple(2 * x for x in r.wt)
                if doubled in datum._root_by_wt:
                    q = q * par.q_of(datum.root(doubled))
                term = term / q if inverse else term * q
        total = term if total is None else total + term
    return total


def _c_factors(datum, par):
    """Factor data for Macdonald's c-function, one entry per unmultipliable
    positive coroot r = alpha^vee:

        (1 - v_{alpha/2}^{-1} q_alpha^{-1} t^{-r}) (1 + v_{alpha/2}^{-1} t^{-r})
        -----------------------------------------------------------------------
        (1 - t^{-r}) (1 + t^{-r})

    with v_{alpha/2} = q_{alpha/2}^{1/2} (equal to 1 on reduced orbits, where
    the second numerator factor cancels a denominator factor and the quotient
    degenerates to (1 - q_alpha^{-1} t^{-r})/(1 - t^{-r})).

    Returns [(weight, [numerator coefficients], [denominator coefficients])]
    for factors of the shape (1 - c t^{-weight}).
    """
    out = []
    for r in datum.positive_roots:
        if datum.half(r) is not None:
            continue   # doubled coroots are absorbed into the base factor
        q_a = par.q_of(r)
        doubled = tuple(2 * x for x in r.wt)
        if doubled in datum._root_by_wt:
            v_half = par.sqrt_of(datum.root(doubled))
        else:
            v_half = par.one()
        num = [1 / (v_half * q_a), -1 / v_half]
        den = [par.one(), -par.one()]
        out.append((r.wt, num, den))
    return out


def c_padic(datum, par):
    """Macdonald's c(t, q) as a (numerator, denominator) Laurent pair."""
    num = one_poly(datum)
    den = one_poly(datum)
    for wt, num_cs, den_cs in _c_factors(datum, par):
        neg = tuple(-x for x in wt)
        for c in num_cs:
            num = num * (one_poly(datum) - LaurentPolynomial.monomial(neg, c))
        for c in den_cs:
            den = den * (one_poly(datum) - LaurentPolynomial.monomial(neg, c))
    return num, den


def _symmetrized_c_sum(datum, par, lam):
    """sum_w w(c(., q) t^lam) as an exact Laurent polynomial.

    Each w-image of the denominator divides the full product over both signs
    of every factor, so each term becomes polynomial after multiplying in the
    complementary factors; the one final division is exact (poles cancel).
    """
    factors = _c_factors(datum, par)
    full = one_poly(datum)
    for wt, _, den_cs in factors:
        neg = tuple(-x for x in wt)
        for c in den_cs:
            full = full * (one_poly(datum)
                           - LaurentPolynomial.monomial(neg, c))
            full = full * (one_poly(datum)
                           - LaurentPolynomial.monomial(wt, c))
    num_c = one_poly(datum)
    for wt, num_cs, _ in factors:
        neg = tuple(-x for x in wt)
        for c in num_cs:
            num_c = num_c * (one_poly(datum)
                             - LaurentPolynomial.monomial(neg, c))
    total = LaurentPolynomial()
    for idx in range(datum.order):
        term = num_c.act_matrix(datum.w_mats[idx]) * LaurentPolynomial.monomial(
            datum.w_act(idx, lam), par.one())
        for wt, _, den_cs in factors:
            img = datum.w_act(idx, wt)
            # each w-image denominator factor (1 - c t^{-img}) is matched by
            # its opposite-exponent complement (1 - c t^{img}) inside `full`
            for c in den_cs:
                term = term * (one_poly(datum)
                               - LaurentPolynomial.monomial(img, c))
        total = total + term
    try:
        return total.exact_div(full)
    except ArithmeticError as exc:
        raise PoleCancellationFailure(str(exc))


def satake_image(datum, par, lam):
    """gamma_S of the lam-th spherical basis element:
    P_W(q^{-1})^{-1} sum_w w(c(., q) t^lam), a W-invariant Laurent polynomial."""
    lam = tuple(lam)
    if not datum.is_dominant(lam):
        raise ValueError("satake_image takes dominant weights")
    total = _symmetrized_c_sum(datum, par, lam)
    pw = poincare_polynomial(datum, par, inverse=True)
    out = total.map_coeffs(lambda c: c / pw)
    if not is_invariant(datum, out):
        raise PoleCancellationFailure("image is not W-invariant")
    return out


def half_modulus(datum, par, lam):
    """delta^{1/2}(pi^lam) = prod_{alpha in Sigma_+} q_alpha^{alpha(lam)/2};
    exact in the adjoined square roots (alpha(lam) pairs the coweight lam
    against the coroot of the dual datum)."""
    out = par.one()
    for r in datum.positive_roots:
        e = datum.pair(lam, r.coroot)
        v = par.sqrt_of(r)
        out = out * v ** e if e >= 0 else out / v ** (-e)
    return out


@dataclass
class SphericalValue:
    lam: tuple
    value: LaurentPolynomial


def spherical_value(datum, par, lam):
    """omega_t(pi^{-lam}) = delta^{-1/2}(pi^lam) P_W(q^{-1})^{-1}
    sum_w c(w t, q)(w t)(lam), simplified to a Laurent polynomial in t."""
    image = satake_image(datum, par, lam)
    d = half_modulus(datum, par, lam)
    return SphericalValue(tuple(lam), image.map_coeffs(lambda c: c / d))


def c_sum_identity(datum, par):
    """sum_w c(w t, q) = P_W(q^{-1}), symbolically."""
    total = _symmetrized_c_sum(datum, par, (0,) * datum.rank)
    pw = poincare_polynomial(datum, par, inverse=True)
    expected = LaurentPolynomial.monomial((0,) * datum.rank, pw)
    if total != expected:
        return failed("satake-c-sum", {"got": str(total),
                                       "expected": str(expected)},
                      type=datum.label)
    return passed("satake-c-sum", type=datum.label)


def q_one_orbit_average(datum, par, lam):
    """At q = 1 the image degenerates to the normalized orbit sum."""
    from collections import Counter
    img = satake_image(datum, par, lam)
    counts = Counter(datum.w_act(idx, lam) for idx in range(datum.order))
    expected = LaurentPolynomial(
        {w: Fraction(c, datum.order) for w, c in counts.items()})
    return img.map_coeffs(par.at_q_one), expected


# -- rank-1 tree oracle ---------------------------------------------------------


@dataclass(frozen=True)
class Qsqrt:
    """Exact element a + b sqrt(q) of a real quadratic extension of Q."""
    a: Fraction
    b: Fraction
    q: int

    def __add__(self, other):
        self._check(other)
        return Qsqrt(self.a + other.a, self.b + other.b, self.q)

    def __sub__(self, other):
        self._check(other)
        return Qsqrt(self.a - other.a, self.b - other.b, self.q)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Qsqrt(self.a * other, self.b * other, self.q)
        self._check(other)
        return Qsqrt(self.a * other.a + self.q * self.b * other.b,
                     self.a * other.b + self.b * other.a, self.q)

    __rmul__ = __mul__

    def __pow__(self, n):
        out = Qsqrt.of(1, self.q)
        for _ in range(n):
            out = out * self
        return out

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return Qsqrt(self.a / other, self.b / other, self.q)
        self._check(other)
        norm = other.a * other.a - self.q * other.b * other.b
        num = self * Qsqrt(other.a, -other.b, self.q)
        return Qsqrt(num.a / norm, num.b / norm, self.q)

    def _check(self, other):
        if self.q != other.q:
            raise ValueError("mixed radicands")

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    @staticmethod
    def of(x, q):
        return Qsqrt(Fraction(x), Fraction(0), q)

    @staticmethod
    def root(q):
        return Qsqrt(Fraction(0), Fraction(1), q)

    def __str__(self):
        return "%s + %s*sqrt(%d)" % (self.a, self.b, self.q)


def rf_to_qsqrt(scalar, q):
    """Evaluate a Q(v)-scalar at v = sqrt(q), exactly."""
    from sympy.polys.domains import QQ
    if isinstance(scalar, (int, Fraction)):
        return Qsqrt.of(scalar, q)
    r = scalar.normalized()
    if len(r.field.names) != 1:
        raise ValueError("expected a single adjoined square root")

    def eval_poly(p):
        total = Qsqrt.of(0, q)
        for monom, coeff in p.terms():
            e = monom[0]
            c = Fraction(int(QQ.numer(coeff)), int(QQ.denom(coeff)))
            term = Qsqrt.of(c * q ** (e // 2), q)
            if e % 2:
                term = term * Qsqrt.root(q)
            total = total + term
        return total

    return eval_poly(r.num) / eval_poly(r.den)


def tree_sphere_levels(n, q):
    """Horosphere-level counts on the (q+1)-regular tree: N[m] = number of
    vertices at distance n from the base with Busemann level m relative to a
    fixed end.

    Vertices are non-backtracking paths from the base (q+1 first choices,
    then q per step); the fixed end follows label 0 forever, and a path of
    length n with j leading zeros sits on level n - 2j.
    """
    if n == 0:
        return {0: 1}
    counts = {}
    stack = [((label,), 1) for label in range(q + 1)]
    while stack:
        path, depth = stack.pop()
        if depth == n:
            lead = 0
            for x in path:
                if x != 0:
                    break
                lead += 1
            m = len(path) - 2 * lead
            counts[m] = counts.get(m, 0) + 1
            continue
        for label in range(q):
            stack.append((path + (label,), depth + 1))
    return counts


def _level_coeff(count, m, q):
    val = Qsqrt.of(count, q)
    if m >= 0:
        return val / (Qsqrt.root(q) ** m)
    return val * (Qsqrt.root(q) ** (-m))


def tree_oracle(n, q):
    """Spherical value by counting: the distance-n sphere average of
    q^{-m/2} z^m, returned as exact Qsqrt coefficients {m: c}."""
    counts = tree_sphere_levels(n, q)
    sphere = sum(counts.values())
    return {m: _level_coeff(c, m, q) / sphere for m, c in counts.items()}


def tree_satake_image(n, q):
    """Unnormalized transform of the distance-n double coset from tree counts:
    sum_m q^{-m/2} N(n, m) z^m."""
    return {m: _level_coeff(c, m, q)
            for m, c in tree_sphere_levels(n, q).items()}


def tree_comparison(n, q):
    """Rank-1 cross-check of the explicit formulas against the tree: the
    spherical value must match the sphere average exactly, and the
    unnormalized images must be proportional by a scalar."""
    datum = dual_datum("A1")
    par = HeckeParam.equal(datum)
    lam = (n,)
    val = spherical_value(datum, par, lam)
    formula = {w[0]: rf_to_qsqrt(c, q) for w, c in val.value.coeffs.items()}
    oracle = tree_oracle(n, q)
    for m in set(formula) | set(oracle):
        a = formula.get(m, Qsqrt.of(0, q))
        b = oracle.get(m, Qsqrt.of(0, q))
        if a - b:
            return failed("satake-tree", {"n": n, "q": q, "level": m,
                                          "formula": str(a), "oracle": str(b)})
    image = satake_image(datum, par, lam)
    img_q = {w[0]: rf_to_qsqrt(c, q) for w, c in image.coeffs.items()}
    tree_img = tree_satake_image(n, q)
    ratio = None
    for m in sorted(set(img_q) | set(tree_img)):
        a, b = img_q.get(m), tree_img.get(m)
        if a is None or b is None or not b:
            return failed("satake-tree", {"n": n, "q": q, "level": m,
                                          "detail": "support mismatch"})
        r = a / b
        if ratio is None:
            ratio = r
        elif r - ratio:
            return failed("satake-tree", {"n": n, "q": q, "level": m,
                                          "detail": "not proportional"})
    return passed("satake-tree", n=n, q=q,
                  sphere=sum(tree_sphere_levels(n, q).values()))
