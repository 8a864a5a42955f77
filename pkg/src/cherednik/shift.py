"""Hypergeometric shift operators: the symmetric raising/lowering pair, the
nonsymmetric shift operator solved from its transmutation + restriction
constraint system, adjoint lowering operators, compositional identities, and
the infeasibility probe for a nonsymmetric lowering operator.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .dunkl import DunklOperator, PolyDunkl, dunkl_basis, invariant_basis
from .jacobi import (expand_in_e_basis, nonsymmetric_jacobi, norm_gamma,
                     symmetric_jacobi)
from .laurent import LaurentPolynomial
from .operators import (LinearOperator, OpCherednik, OpCompose, OpDeriv,
                        OpDivExact, OpMul, OpScalar, OpScale, OpSum, OpWeyl,
                        Operator)
from .polyring import gram_matrix, one_poly, symmetrize, weyl_denominator
from .reports import failed, matrix_identity, passed


class NoSolution(ArithmeticError):
    """The shift constraint system is inconsistent (implementation error)."""


class NonUnique(ArithmeticError):
    def __init__(self, kernel_dim, unpinned):
        super().__init__("shift solution space has dimension %d" % kernel_dim)
        self.kernel_dim = kernel_dim
        self.unpinned = unpinned


# -- pi polynomials and the symmetric shifts ---------------------------------


def pi_polynomial(datum, sign, k):
    """pi^{+-}(k) = prod_{alpha in R0_+} (alpha^vee +- (k_alpha + k_{alpha/2}/2)),
    as an S(a)-polynomial in the simple-coroot variables."""
    poly = {(0,) * datum.rank: k.domain_one()}
    for root in datum.r0_positive:
        const = k.k0(root) if sign > 0 else -k.k0(root)
        factor = {(0,) * datum.rank: const}
        for i, c in enumerate(root.coroot):
            if c:
                key = tuple(int(j == i) for j in range(datum.rank))
                factor[key] = k.coerce(c)
        new = {}
        for m1, c1 in poly.items():
            for m2, c2 in factor.items():
                key = tuple(a + b for a, b in zip(m1, m2))
                val = c1 * c2
                if key in new:
                    new[key] = new[key] + val
                else:
                    new[key] = val
        poly = {m: c for m, c in new.items() if c}
    return poly


class RaisingOperator(Operator):
    """G_+(k) = Delta^{-1} T(pi^+(k), k), a polynomial operator on invariants."""

    def __init__(self, datum, k):
        self.datum = datum
        self.k = k
        self.delta = weyl_denominator(datum)
        self.t_pi = PolyDunkl(datum, pi_polynomial(datum, +1, k), k)

    def apply(self, f):
        return self.t_pi.apply(f).exact_div(self.delta)


class LoweringOperator(Operator):
    """G_-(k) = T(pi^-(k-1), k-1) Delta, a polynomial operator on invariants."""

    def __init__(self, datum, k):
        self.datum = datum
        self.k = k
        km1 = k.shifted(-1)
        self.delta = weyl_denominator(datum)
        self.t_pi = PolyDunkl(datum, pi_polynomial(datum, -1, km1), km1)

    def apply(self, f):
        return self.t_pi.apply(self.delta * f)


def heckman_shift(datum, sign, k):
    return RaisingOperator(datum, k) if sign > 0 else LoweringOperator(datum, k)


def invariant_generator_polys(datum):
    """W-invariant S(a)-polynomials of the fundamental degrees, built as orbit
    sums of powers of a generic linear form."""
    degrees = {"A": {1: [2], 2: [2, 3], 3: [2, 3, 4], 4: [2, 3, 4, 5]},
               "B": {2: [2, 4], 3: [2, 4, 6], 4: [2, 4, 6, 8]},
               "C": {2: [2, 4], 3: [2, 4, 6], 4: [2, 4, 6, 8]},
               "BC": {1: [2], 2: [2, 4], 3: [2, 4, 6], 4: [2, 4, 6, 8]},
               "D": {2: [2, 2], 3: [2, 3, 4], 4: [2, 4, 4, 6]},
               "G": {2: [2, 6]}, "F": {4: [2, 6, 8, 12]}}
    degs = degrees[datum.family][datum.rank]
    # generic weight: pairs differently with every Weyl image
    probe = tuple(i + 1 for i in range(datum.rank))
    out = []
    for d in set(degs):
        poly = {}
        for idx in range(datum.order):
            img = datum.w_act_vector(idx, probe)
            # (sum img_i x_i)^d expanded
            term = {(0,) * datum.rank: Fraction(1)}
            for _ in range(d):
                new = {}
                for m, c in term.items():
                    for i, a in enumerate(img):
                        if a:
                            key = tuple(e + int(j == i) for j, e in enumerate(m))
                            new[key] = new.get(key, Fraction(0)) + c * a
                term = new
            for m, c in term.items():
                poly[m] = poly.get(m, Fraction(0)) + c
        poly = {m: c for m, c in poly.items() if c}
        assert poly, "degenerate invariant generator"
        out.append((d, poly))
    return out


def transmutation_check(datum, sign, k, height):
    """G_{+-}(k) D(p,k) = D(p, k+-1) G_{+-}(k) on invariants, exact matrices."""
    from .dunkl import InvariantMatrix
    shift_op = heckman_shift(datum, sign, k)
    k_shift = k.shifted(1 if sign > 0 else -1)
    # the lowering operator raises degrees by ht(rho0)
    target = height + (0 if sign > 0 else
                       datum.pair(datum.rho0_wt, datum.two_rho_vee))
    for degree, poly in invariant_generator_polys(datum):
        p_here = PolyDunkl(datum, {m: k.coerce(c) for m, c in poly.items()}, k)
        p_there = PolyDunkl(datum, {m: k.coerce(c) for m, c in poly.items()},
                            k_shift)
        lhs = InvariantMatrix.of(
            datum, lambda f: shift_op.apply(p_here.apply(f)), height, target)
        rhs = InvariantMatrix.of(
            datum, lambda f: p_there.apply(shift_op.apply(f)), height, target)
        diff = lhs.first_difference(rhs)
        if diff is not None:
            col, row, a, b = diff
            return failed("shift-transmutation",
                          {"degree": degree, "col": list(col), "row": list(row),
                           "lhs": str(a), "rhs": str(b)},
                          type=datum.label, sign=sign, height=height)
    return passed("shift-transmutation", type=datum.label, sign=sign,
                  height=height)


# -- the nonsymmetric shift operator ------------------------------------------


@dataclass
class ShiftOperator:
    kind: str
    datum: object
    k: object
    matrix: LinearOperator          # monomial-basis matrix on the truncation
    partner: dict = field(default_factory=dict)   # mu -> (nu, coefficient)
    report: object = None


def shift_partner(datum, mu):
    """The unique weight nu with matching spectral data across the k -> k+1
    shift: nu = mu - w^mu(rho0), valid when w^nu = w^mu; else None."""
    w = datum.w_mu(mu)
    shift = datum.w_act(w.index, datum.rho0_wt)
    nu = tuple(a - b for a, b in zip(mu, shift))
    if datum.w_mu(nu).index != w.index:
        return None
    return nu


def nonsymmetric_shift(datum, k, height):
    """Solve the constraint system for S(k) on the height-`height` truncation:

    (ii) S T(xi,k) = T(xi,k+1) S for all xi  (transmutation)
    (iii) S f = G_+(k) f for W-invariant f   (restriction)

    Expressed in the joint eigenbases, (ii) forces S E(mu,k) to be a multiple
    of the unique spectral partner E(nu,k+1) (or zero when no partner exists),
    and (iii) pins each multiple. The solve certifies uniqueness: all
    off-partner eigenvalue differences are nonzero and every partner
    coefficient is determined by a constraint with a nonzero pivot.
    """
    basis = datum.truncation(height)
    kp1 = k.shifted(1)
    e_k = {mu: nonsymmetric_jacobi(datum, mu, k) for mu in basis}
    e_kp1 = {nu: nonsymmetric_jacobi(datum, nu, kp1) for nu in basis}
    lam_k = {mu: e_k[mu].spectral for mu in basis}
    lam_kp1 = {nu: e_kp1[nu].spectral for nu in basis}

    partners = {}
    for mu in basis:
        nu = shift_partner(datum, mu)
        if nu is not None and nu in e_kp1:
            assert lam_kp1[nu] == lam_k[mu], "partner spectral mismatch"
            partners[mu] = nu
    # uniqueness certificate part 1: no accidental spectral matches
    for mu in basis:
        for nu in basis:
            if partners.get(mu) == nu:
                continue
            if lam_kp1[nu] == lam_k[mu]:
                raise NonUnique(1, [(mu, nu)])

    raising = RaisingOperator(datum, k)
    coeff = {}
    pinned = set()
    for lam in datum.dominants_up_to_height(height):
        p_lam = symmetric_jacobi(datum, lam, k)
        a = expand_in_e_basis(datum, p_lam.poly, e_k, basis)
        orbit = set(datum.orbit(lam))
        assert set(a) <= orbit, "P(lam,k) left the span of its orbit family"
        rhs = expand_in_e_basis(datum, raising.apply(p_lam.poly), e_kp1, basis)
        image_of = {}
        for mu, a_mu in a.items():
            nu = partners.get(mu)
            if nu is None:
                continue
            assert nu not in image_of, "partner map collided inside an orbit"
            image_of[nu] = (mu, a_mu)
        for nu, d in rhs.items():
            if nu not in image_of:
                raise NoSolution(
                    "restriction image has component at %s outside the "
                    "partner range" % (nu,))
        for nu, (mu, a_mu) in image_of.items():
            if not a_mu:
                continue
            d = rhs.get(nu, k.domain_zero())
            c = d / a_mu
            if hasattr(c, "normalized"):
                c = c.normalized()
            if mu in coeff:
                assert coeff[mu] == c, "overdetermined and inconsistent"
            coeff[mu] = c
            pinned.add(mu)
        # weights of the orbit without a partner must be annihilated: the
        # restriction equation for them is 0 = 0 automatically since rhs has
        # no component there; nothing to pin.
    unpinned = [mu for mu in partners if mu not in pinned]
    if unpinned:
        raise NonUnique(len(unpinned), unpinned)

    # assemble the monomial-basis matrix
    cols = []
    index = {w: i for i, w in enumerate(basis)}
    for sigma in basis:
        mono = LaurentPolynomial.monomial(sigma, k.domain_one())
        u = expand_in_e_basis(datum, mono, e_k, basis)
        image = LaurentPolynomial()
        for mu, u_mu in u.items():
            nu = partners.get(mu)
            if nu is None:
                continue
            c = coeff.get(mu, k.domain_zero())
            if c:
                image = image + e_kp1[nu].poly.scale(u_mu * c)
        col = {}
        for w, c in image.coeffs.items():
            col[index[w]] = c
        cols.append(col)
    matrix = LinearOperator(basis, basis, cols)
    partner_data = {mu: (partners[mu], coeff.get(mu, k.domain_zero()))
                    for mu in partners}
    report = passed("shift-nonsym-solve", type=datum.label, height=height,
                    dimension=len(basis), kernel_dim=0,
                    partners=len(partners))
    return ShiftOperator("S", datum, k, matrix, partner_data, report)


def nonsymmetric_shift_checks(datum, k, height, shift=None):
    """Re-verify transmutation and restriction of the solved S as matrices."""
    if shift is None:
        shift = nonsymmetric_shift(datum, k, height)
    basis = shift.matrix.source
    kp1 = k.shifted(1)
    for i in range(datum.rank):
        xi = tuple(int(t == i) for t in range(datum.rank))
        t_k = LinearOperator.from_operator(DunklOperator(datum, xi, k),
                                           basis, basis)
        t_kp1 = LinearOperator.from_operator(DunklOperator(datum, xi, kp1),
                                             basis, basis)
        rep = matrix_identity("shift-nonsym-transmutation",
                              shift.matrix * t_k, t_kp1 * shift.matrix,
                              type=datum.label, xi=i, height=height)
        if not rep.ok:
            return rep
    raising = RaisingOperator(datum, k)
    for lam, m in invariant_basis(datum, height):
        lhs = shift.matrix.apply_poly(m)
        rhs = raising.apply(m)
        if lhs != rhs:
            return failed("shift-nonsym-restriction",
                          {"lambda": list(lam), "S_f": str(lhs),
                           "G_f": str(rhs)},
                          type=datum.label, height=height)
    return passed("shift-nonsym", type=datum.label, height=height,
                  dimension=len(basis), kernel_dim=0)


# -- rank-1 closed forms -------------------------------------------------------


def rank1_closed_form(datum, which, k):
    """The closed-form rank-1 shift operators on the BC1 (or reduced A1) torus
    with coordinate X = t^{alpha/2}:

      S        = Delta^{-1} (X d/dX - (1-s)/(1-X^-2))
      S_(2,-1) = ((X+1)/(X-1)) X d/dX - X/(X-1)^2 (1-s) + k_alpha - 1/2
      S_(-2,1) = ((X-1)/(X+1)) X d/dX + X/(X+1)^2 (1-s) + k_alpha + k_{alpha/2} - 1/2
    """
    if datum.rank != 1:
        raise ValueError("closed forms are rank-1 only")
    alpha = datum.r0_positive[0]           # the unmultipliable positive root
    x = LaurentPolynomial.monomial((1,), Fraction(1))
    one = one_poly(datum)
    deriv = OpDeriv(alpha.coroot)          # X d/dX: pairing (alpha/2)(alpha^vee)=1
    s = OpWeyl(datum.simple_reflection(0))
    one_minus_s = OpSum([_identity_op(), OpScale(Fraction(-1), s)])
    if which == "S":
        delta = weyl_denominator(datum)
        return OpCompose([OpDivExact(delta),
                          OpSum([deriv, OpScale(Fraction(-1),
                                                OpCherednik(alpha))])])
    if datum.family != "BC":
        raise ValueError("the (2,-1)-family needs the non-reduced datum")
    half = datum.half(alpha)
    k_a = k.of_root(alpha)
    k_half = k.of_root(half)
    if which == "S_(2,-1)":
        num = OpSum([OpCompose([OpMul(x * x - one), deriv]),
                     OpScale(Fraction(-1), OpCompose([OpMul(x), one_minus_s]))])
        return OpSum([OpCompose([OpDivExact((x - one) * (x - one)), num]),
                      OpScalar(k_a - Fraction(1, 2))])
    if which == "S_(-2,1)":
        num = OpSum([OpCompose([OpMul(x * x - one), deriv]),
                     OpCompose([OpMul(x), one_minus_s])])
        return OpSum([OpCompose([OpDivExact((x + one) * (x + one)), num]),
                      OpScalar(k_a + k_half - Fraction(1, 2))])
    raise ValueError("unknown closed form %r" % which)


def _identity_op():
    from .operators import OpIdentity
    return OpIdentity()


# -- adjoints -------------------------------------------------------------------


def adjoint_matrix(datum, mat, k_source, k_target):
    """Adjoint of `mat` w.r.t. the compact pairings: <A f, g>_{k_source} =
    <f, mat g>_{k_target}, on the matrix's (shared) truncation. Integer k."""
    basis = mat.source
    g_src = gram_matrix(datum, k_source, basis)
    g_tgt = gram_matrix(datum, k_target, basis)
    dim = len(basis)
    # A = G_src^{-1} mat^T G_tgt
    mt_g = [[Fraction(0)] * dim for _ in range(dim)]
    for j, col in enumerate(mat.cols):
        for i, c in col.items():
            for b in range(dim):
                if g_tgt[i][b]:
                    mt_g[j][b] += c * g_tgt[i][b]
    ginv = _invert(g_src)
    cols = []
    for b in range(dim):
        col = {}
        for a in range(dim):
            v = sum(ginv[a][j] * mt_g[j][b] for j in range(dim) if mt_g[j][b])
            if v:
                col[a] = v
        cols.append(col)
    return LinearOperator(basis, basis, cols)


def _invert(g):
    n = len(g)
    a = [[Fraction(g[i][j]) for j in range(n)]
         + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        pv = a[col][col]
        a[col] = [x / pv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def lowering_adjoint(datum, k, height, pad=None):
    """S_-(k) := adjoint of S(k-1): transmutes k -> k-1 and satisfies the left
    restriction eps_+ S_- = eps_+ G_-(k). Integer k; computed on a padded
    truncation so that raised images stay representable."""
    if pad is None:
        pad = datum.pair(datum.rho0_wt, datum.two_rho_vee)
    km1 = k.shifted(-1)
    if not (km1.is_integral() and k.is_integral()):
        raise ValueError("integer multiplicities required for the Gram pairing")
    big = nonsymmetric_shift(datum, km1, height + pad)
    # S(k-1) maps the (k-1)-pairing world into the k-pairing world, so its
    # adjoint satisfies <S_- f, g>_{k-1} = <f, S(k-1) g>_k.
    adj = adjoint_matrix(datum, big.matrix, km1, k)
    return adj, big


def lowering_adjoint_check(datum, k, height):
    """Verify transmutation of S_-(k) and eps_+ S_-(k) = eps_+ G_-(k)."""
    adj, _ = lowering_adjoint(datum, k, height)
    basis = adj.source
    km1 = k.shifted(-1)
    small = datum.truncation(height)
    for i in range(datum.rank):
        xi = tuple(int(t == i) for t in range(datum.rank))
        t_k = LinearOperator.from_operator(DunklOperator(datum, xi, k),
                                           basis, basis)
        t_km1 = LinearOperator.from_operator(DunklOperator(datum, xi, km1),
                                             basis, basis)
        lhs = adj * t_k
        rhs = t_km1 * adj
        # compare only on columns from the unpadded truncation: padding rows
        # of the adjoint are compression artifacts
        for sigma in small:
            j = basis.index(sigma)
            c1, c2 = lhs.cols[j], rhs.cols[j]
            for r in set(c1) | set(c2):
                if c1.get(r, Fraction(0)) != c2.get(r, Fraction(0)):
                    return failed("shift-lowering-transmutation",
                                  {"xi": i, "col": list(sigma),
                                   "row": list(basis[r]),
                                   "lhs": str(c1.get(r, 0)),
                                   "rhs": str(c2.get(r, 0))},
                                  type=datum.label, height=height)
    # Left restriction eps_+ S_-(k) = eps_+ G_-(k): the lowering operator is a
    # differential operator on invariants, so the identity reads
    # eps_+ S_-(k) f = G_-(k)(eps_+ f) for every f.
    lower = LoweringOperator(datum, k)
    sign = Fraction((-1) ** len(datum.r0_positive))
    for sigma in small:
        j = basis.index(sigma)
        col_poly = LaurentPolynomial(
            {basis[r]: c for r, c in adj.cols[j].items()})
        lhs = symmetrize(datum, col_poly)
        rhs = lower.apply(symmetrize(
            datum, LaurentPolynomial.monomial(sigma, Fraction(1))))
        if lhs != rhs:
            return failed("shift-lowering-left-restriction",
                          {"monomial": list(sigma), "eps_S_minus": str(lhs),
                           "eps_G_minus": str(rhs)},
                          type=datum.label, height=height,
                          k=[str(v) for v in k.values])
        # the split-form adjoint coincides up to (-1)^{|R0_+|}, so its left
        # restriction picks up the same sign
        tilde = col_poly.scale(sign)
        if symmetrize(datum, tilde) != rhs.scale(sign):
            return failed("shift-lowering-tilde-sign",
                          {"monomial": list(sigma)},
                          type=datum.label, height=height)
    return passed("shift-lowering-adjoint", type=datum.label, height=height,
                  k=[str(v) for v in k.values])


def adjoint_shift(datum, which, k, height):
    """S_-(k) = S(k-1)^bullet, or its split-form variant
    tilde-S_-(k) = (-1)^{|R0_+|} S_-(k) (the two coincide up to that sign as
    operators on polynomials). Integer k."""
    adj, _ = lowering_adjoint(datum, k, height)
    if which == "bullet":
        return ShiftOperator("S_minus", datum, k, adj)
    if which == "star-tilde":
        sign = Fraction((-1) ** len(datum.r0_positive))
        return ShiftOperator("S_minus_tilde", datum, k, adj.scale(sign))
    raise ValueError("unknown adjoint variant %r" % which)


def nonexistence_probe(datum, k, height):
    """Constraint system for a nonsymmetric lowering operator: transmutation
    with k-1 plus restriction to G_-(k) on invariants. Reports the first
    inconsistent constraint (expected: the system is infeasible)."""
    pad = datum.pair(datum.rho0_wt, datum.two_rho_vee)
    big = datum.truncation(height + pad)
    km1 = k.shifted(-1)
    e_km1 = {nu: nonsymmetric_jacobi(datum, nu, km1) for nu in big}
    lam_km1 = {nu: e_km1[nu].spectral for nu in big}
    lower = LoweringOperator(datum, k)
    # lowering partner: L E(mu,k) must be a multiple of E(mu + w^mu rho0, k-1)
    for lam in datum.dominants_up_to_height(height):
        p_lam = symmetric_jacobi(datum, lam, k)
        lam_k_spec = {mu: datum.spectral_vector(mu, k)
                      for mu in datum.orbit(lam)}
        allowed = set()
        for mu in datum.orbit(lam):
            w = datum.w_mu(mu)
            nu = tuple(a + b for a, b in
                       zip(mu, datum.w_act(w.index, datum.rho0_wt)))
            if nu in e_km1 and lam_km1[nu] == lam_k_spec[mu]:
                allowed.add(nu)
        rhs = expand_in_e_basis(datum, lower.apply(p_lam.poly), e_km1, big)
        for nu, d in rhs.items():
            if d and nu not in allowed:
                return passed(
                    "shift-lowering-nonexistence",
                    type=datum.label, height=height,
                    witness={"lambda": list(lam), "component": list(nu),
                             "coefficient": str(d)},
                    conclusion="infeasible: G_-(k) image leaves the "
                               "transmutation-allowed span")
    return failed("shift-lowering-nonexistence",
                  {"finding": "constraint system is feasible at this "
                              "truncation"},
                  type=datum.label, height=height)


# -- compositional identities ----------------------------------------------------


def dunkl_coroot(datum, root, k):
    return DunklOperator(datum, tuple(Fraction(c) for c in root.coroot), k)


def composition_rhs_operator(datum, k, shift_minus_one=True):
    """prod_{alpha in R0_+} (T_{alpha^vee}+k0) (T_{alpha^vee}-k0-1); with
    shift_minus_one=False the second factor is (T_{alpha^vee}-k0)."""
    ops = []
    for root in datum.r0_positive:
        k0 = k.k0(root)
        t = dunkl_coroot(datum, root, k)
        ops.append(OpSum([t, OpScalar(k0)]))
        drop = k0 + 1 if shift_minus_one else k0
        ops.append(OpSum([t, OpScalar(-drop)]))
    return OpCompose(ops)


def bullet_composition(datum, k, height, shift=None):
    """S(k)^bullet S(k) as a monomial-basis matrix, computed in the joint
    eigenbasis with Gamma-ratio Gram factors (valid for symbolic k)."""
    if shift is None:
        shift = nonsymmetric_shift(datum, k, height)
    basis = shift.matrix.source
    kp1 = k.shifted(1)
    e_k = {mu: nonsymmetric_jacobi(datum, mu, k) for mu in basis}
    diag = {}
    for mu in basis:
        pair = shift.partner.get(mu)
        if pair is None:
            diag[mu] = k.domain_zero()
            continue
        nu, c = pair
        if not c:
            diag[mu] = k.domain_zero()
            continue
        ratio = (norm_gamma(datum, nu, kp1)
                 * norm_gamma(datum, mu, k).inverse()).reduce(k)
        val = c * c * ratio
        if hasattr(val, "normalized"):
            val = val.normalized()
        diag[mu] = val
    cols = []
    index = {w: i for i, w in enumerate(basis)}
    for sigma in basis:
        mono = LaurentPolynomial.monomial(sigma, k.domain_one())
        u = expand_in_e_basis(datum, mono, e_k, basis)
        image = LaurentPolynomial()
        for mu, u_mu in u.items():
            d = diag[mu]
            if d:
                image = image + e_k[mu].poly.scale(u_mu * d)
        cols.append({index[w]: c for w, c in image.coeffs.items()})
    return LinearOperator(basis, basis, cols), diag


def composition_identities(datum, k, height):
    """The compositional identities, verified as exact matrices:

    (a) S(k)^bullet S(k) = prod (T+k0)(T-k0-1)
    (b) the star variant differs by the sign (-1)^{|R0_+|} on both sides
    (c) eps_+ sandwich: G_-(k+1) G_+(k) = prod (T+k0)(T-k0) on invariants
    (d) eps_+ S^bullet S eps_+ = eps_+ [prod (T+k0)(T-k0)] eps_+
                                 + eps_+ T(p,k) T(pi^+(k),k) eps_+
    (e) eps_+ T(q,k) eps_- = 0 for monomials q of degree < |R0_+|
    """
    basis = datum.truncation(height)
    shift = nonsymmetric_shift(datum, k, height)
    lhs, _ = bullet_composition(datum, k, height, shift)
    rhs = LinearOperator.from_operator(composition_rhs_operator(datum, k),
                                       basis, basis)
    rep = matrix_identity("shift-compose-bullet", lhs, rhs,
                          type=datum.label, height=height)
    if not rep.ok:
        return rep
    # (b) star variant via the footnote sign relation
    n0 = len(datum.r0_positive)
    star_rhs_op = OpCompose(
        [OpSum([dunkl_coroot(datum, r, k), OpScalar(k.k0(r))])
         for r in datum.r0_positive]
        + [OpSum([OpScale(Fraction(-1), dunkl_coroot(datum, r, k)),
                  OpScalar(k.k0(r) + 1)]) for r in datum.r0_positive])
    star_rhs = LinearOperator.from_operator(star_rhs_op, basis, basis)
    star_lhs = lhs.scale(k.coerce(Fraction((-1) ** n0)))
    rep = matrix_identity("shift-compose-star", star_lhs, star_rhs,
                          type=datum.label, height=height)
    if not rep.ok:
        return rep
    # (c) symmetric composition on invariants
    from .dunkl import InvariantMatrix
    raising = RaisingOperator(datum, k)
    lowering = LoweringOperator(datum, k.shifted(1))
    sym_lhs = InvariantMatrix.of(
        datum, lambda f: lowering.apply(raising.apply(f)), height)
    rhs_plain_op = composition_rhs_operator(datum, k, shift_minus_one=False)
    sym_rhs = InvariantMatrix.of(datum, rhs_plain_op.apply, height)
    diff = sym_lhs.first_difference(sym_rhs)
    if diff is not None:
        col, row, a, b = diff
        return failed("shift-compose-symmetric",
                      {"col": list(col), "row": list(row),
                       "lhs": str(a), "rhs": str(b)},
                      type=datum.label, height=height)
    # (d) the eps_+ sandwich with the inclusion-exclusion correction
    eps = LinearOperator.from_apply(lambda f: symmetrize(datum, f),
                                    basis, basis)
    corr = _sandwich_correction_operator(datum, k)
    plain = LinearOperator.from_operator(rhs_plain_op, basis, basis)
    corr_mat = LinearOperator.from_operator(corr, basis, basis)
    lhs_d = eps * lhs * eps
    rhs_d = eps * plain * eps + eps * corr_mat * eps
    rep = matrix_identity("shift-compose-sandwich", lhs_d, rhs_d,
                          type=datum.label, height=height)
    if not rep.ok:
        return rep
    # (e) eps_+ T(q,k) eps_- = 0 below degree |R0_+|
    eps_minus = LinearOperator.from_apply(
        lambda f: symmetrize(datum, f, sign=-1), basis, basis)
    for degree in range(n0):
        for mono in _monomials(datum.rank, degree):
            t_q = LinearOperator.from_operator(
                PolyDunkl(datum, {mono: k.domain_one()}, k), basis, basis)
            prod = eps * t_q * eps_minus
            if not prod.is_zero():
                return failed("shift-compose-low-degree-vanishing",
                              {"monomial": list(mono)},
                              type=datum.label, height=height)
    return passed("shift-compose", type=datum.label, height=height,
                  dimension=len(basis))


def _sandwich_correction_operator(datum, k):
    """T(p,k) T(pi^+(k),k) with p the signed sum over proper subsets S of
    R0_+ of prod_{alpha in S} T_{alpha^vee}."""
    roots = datum.r0_positive
    n0 = len(roots)
    terms = []
    for mask in range(2 ** n0 - 1):          # proper subsets only
        size = bin(mask).count("1")
        ops = [dunkl_coroot(datum, roots[i], k)
               for i in range(n0) if mask >> i & 1]
        sign = Fraction((-1) ** (n0 - size))
        inner = OpCompose(ops) if ops else _identity_op()
        terms.append(OpScale(k.coerce(sign), inner))
    pi_op = PolyDunkl(datum, pi_polynomial(datum, +1, k), k)
    return OpCompose([OpSum(terms), pi_op])


def _monomials(rank, degree):
    if degree == 0:
        yield (0,) * rank
        return
    for head in range(degree + 1):
        if rank == 1:
            if head == degree:
                yield (head,)
            continue
        for tail in _monomials(rank - 1, degree - head):
            yield (head,) + tail
