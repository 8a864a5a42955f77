"""Dunkl-Cherednik operators, their polynomial extensions, and consistency
checks: commutativity, Hecke relations, compact adjointness, restriction to
invariants, and the radial-Laplacian cross-check.
"""

from __future__ import annotations

from fractions import Fraction

from .laurent import LaurentPolynomial, lp_sum
from .operators import (LinearOperator, OpCherednik, OpCompose, OpDeriv,
                        OpDivExact, OpGradient, OpIdentity, OpMul, OpScalar,
                        OpScale, OpSum, OpWeyl, Operator, commutator)
from .reports import failed, matrix_identity, passed


class DunklOperator(Operator):
    """T(xi, k) = d(xi) - rho(k)(xi) + sum_{alpha>0} k_alpha alpha(xi)
    (1 - t^{-alpha})^{-1}(1 - s_alpha)."""

    def __init__(self, datum, xi, k):
        self.datum = datum
        self.xi = tuple(xi)
        self.k = k
        rho = datum.rho(k)
        self._rho_xi = sum(r * x for r, x in zip(rho, self.xi))
        terms = []
        for root in datum.positive_roots:
            alpha_xi = datum.pair(root.wt, self.xi)
            if alpha_xi:
                coeff = k.of_root(root) * alpha_xi
                terms.append((coeff, OpCherednik(root)))
        self._terms = terms
        self._deriv = OpDeriv(self.xi)

    def apply(self, f):
        out = self._deriv.apply(f)
        if self._rho_xi:
            out = out - f.scale(self._rho_xi)
        for coeff, atom in self._terms:
            out = out + atom.apply(f).scale(coeff)
        return out


def dunkl(datum, xi, k):
    return DunklOperator(datum, xi, k)


def dunkl_basis(datum, k):
    """T(xi_i, k) for the simple-coroot basis."""
    n = datum.rank
    return [DunklOperator(datum, tuple(int(i == j) for j in range(n)), k)
            for i in range(n)]


class PolyDunkl(Operator):
    """T(p, k) for p in S(a), p given as {exponent tuple: coefficient}."""

    def __init__(self, datum, poly, k):
        self.datum = datum
        self.poly = dict(poly)
        self.k = k
        self._basis = dunkl_basis(datum, k)

    def apply(self, f):
        total = LaurentPolynomial()
        for monom, coeff in self.poly.items():
            g = f
            for i, e in enumerate(monom):
                for _ in range(e):
                    g = self._basis[i].apply(g)
            total = total + g.scale(coeff)
        return total


def dunkl_poly(datum, poly, k):
    return PolyDunkl(datum, poly, k)


def squared_norm_poly(datum, k):
    """p2 in S(a)^W with p2(lambda) = (lambda, lambda), in coordinate monomials."""
    n = datum.rank
    poly = {}
    for i in range(n):
        for j in range(n):
            g = datum.gram_wt[i][j]
            if not g:
                continue
            key = tuple((int(i == t)) + (int(j == t)) for t in range(n))
            poly[key] = poly.get(key, Fraction(0)) + g
    return {m: k.coerce(c) for m, c in poly.items()}


# -- verification ------------------------------------------------------------


def check_commutativity(datum, k, height):
    basis = datum.truncation(height)
    ops = dunkl_basis(datum, k)
    mats = [LinearOperator.from_operator(op, basis, basis) for op in ops]
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            comm = commutator(mats[i], mats[j])
            if not comm.is_zero():
                for col, colmap in enumerate(comm.cols):
                    if colmap:
                        row = next(iter(colmap))
                        return failed(
                            "dunkl-commutativity",
                            {"xi": i, "eta": j,
                             "col_weight": list(comm.source[col]),
                             "row_weight": list(comm.target[row]),
                             "entry": str(colmap[row])},
                            type=datum.label, height=height)
    return passed("dunkl-commutativity", type=datum.label, height=height,
                  dimension=len(basis), pairs=len(mats) * (len(mats) - 1) // 2)


def check_hecke_relations(datum, k, height):
    """eta(s_i) T(xi, k) - T(s_i xi, k) eta(s_i) = -k_i alpha_i(xi) id,
    for xi over the simple-coroot basis and all R0-simple reflections."""
    basis = datum.truncation(height)
    n = datum.rank
    one = k.domain_one()
    for i, alpha in enumerate(datum.simple_roots0):
        s = datum.simple_reflection(i)
        s_mat = LinearOperator.from_operator(OpWeyl(s), basis, basis)
        ki = k.k0(alpha)
        for j in range(n):
            xi = tuple(int(t == j) for t in range(n))
            sxi = datum.w_act_vector(s.index, xi)
            t_xi = LinearOperator.from_operator(DunklOperator(datum, xi, k),
                                                basis, basis)
            t_sxi = LinearOperator.from_operator(DunklOperator(datum, sxi, k),
                                                 basis, basis)
            lhs = s_mat * t_xi - t_sxi * s_mat
            rhs = LinearOperator.identity(basis, one).scale(
                -(ki * datum.pair(alpha.wt, xi)))
            rep = matrix_identity("hecke-relation", lhs, rhs,
                                  type=datum.label, simple=i, xi=j,
                                  height=height)
            if not rep.ok:
                return rep
    return passed("hecke-relation", type=datum.label, height=height,
                  dimension=len(basis))


def check_adjointness_compact(datum, k, height):
    """<T(xi,k) f, g>_k = <f, T(xi,k) g>_k on a monomial truncation basis."""
    from .polyring import gram_matrix
    if not k.is_integral():
        raise ValueError("compact adjointness check needs integer k >= 0")
    basis = datum.truncation(height)
    gram = gram_matrix(datum, k, basis)
    n = datum.rank
    for j in range(n):
        xi = tuple(int(t == j) for t in range(n))
        mat = LinearOperator.from_operator(DunklOperator(datum, xi, k),
                                           basis, basis)
        dim = len(basis)
        for a in range(dim):
            for b in range(dim):
                lhs = sum((gram[i][b] * mat.cols[a].get(i, 0)
                           for i in mat.cols[a]), Fraction(0))
                rhs = sum((gram[a][i] * mat.cols[b].get(i, 0)
                           for i in mat.cols[b]), Fraction(0))
                if lhs != rhs:
                    return failed("dunkl-adjointness",
                                  {"xi": j, "f": list(basis[a]),
                                   "g": list(basis[b]),
                                   "lhs": str(lhs), "rhs": str(rhs)},
                                  type=datum.label, k=[str(v) for v in k.values],
                                  height=height)
    return passed("dunkl-adjointness", type=datum.label,
                  k=[str(v) for v in k.values], height=height,
                  dimension=len(basis))


def invariant_basis(datum, height):
    """Monomial symmetric functions m_lam spanning the W-invariants."""
    out = []
    for lam in datum.dominants_up_to_height(height):
        m = LaurentPolynomial()
        for nu in datum.orbit(lam):
            m.coeffs[nu] = Fraction(1)
        out.append((lam, m))
    return out


def express_invariant(datum, f, labels):
    """Coefficients of f against the m_lam basis; exactness asserted."""
    remaining = f
    coeffs = {}
    for lam in sorted(labels, key=lambda l: (-datum.pair(l, datum.two_rho_vee), l)):
        c = remaining.coeffs.get(lam)
        if c:
            coeffs[lam] = c
            m = LaurentPolynomial()
            for nu in datum.orbit(lam):
                m.coeffs[nu] = Fraction(1)
            remaining = remaining - m.scale(c)
    if not remaining.is_zero():
        raise ValueError("polynomial is not W-invariant on this truncation: "
                         "residue %s" % remaining)
    return coeffs


class InvariantMatrix:
    """Matrix of an operator on the m_lam basis of W-invariants; rows may be
    indexed by a taller truncation than columns (degree-raising operators)."""

    def __init__(self, labels, cols, row_labels=None):
        self.labels = list(labels)
        self.row_labels = list(row_labels) if row_labels is not None else self.labels
        self.cols = cols

    @staticmethod
    def of(datum, apply_fn, height, target_height=None):
        basis = invariant_basis(datum, height)
        labels = [lam for lam, _ in basis]
        row_labels = labels if target_height is None else \
            [lam for lam, _ in invariant_basis(datum, target_height)]
        cols = []
        for _, m in basis:
            img = apply_fn(m)
            coeffs = express_invariant(datum, img, row_labels)
            cols.append({row_labels.index(l): c for l, c in coeffs.items()})
        return InvariantMatrix(labels, cols, row_labels)

    def __eq__(self, other):
        if self.labels != other.labels:
            return False
        for c1, c2 in zip(self.cols, other.cols):
            for i in set(c1) | set(c2):
                a, b = c1.get(i, 0), c2.get(i, 0)
                if isinstance(a, int):
                    a, b = b, a
                if a != b:
                    return False
        return True

    def first_difference(self, other):
        for j, (c1, c2) in enumerate(zip(self.cols, other.cols)):
            for i in sorted(set(c1) | set(c2)):
                a, b = c1.get(i, 0), c2.get(i, 0)
                unequal = (b != a) if isinstance(a, int) else (a != b)
                if unequal:
                    return (self.labels[j], self.row_labels[i], a, b)
        return None


def symmetric_restriction(datum, poly, k, height):
    """Matrix of T(p,k) on the invariant subspace; asserts the subspace is
    preserved (fails for non-invariant p)."""
    op = PolyDunkl(datum, poly, k)
    return InvariantMatrix.of(datum, op.apply, height)


def radial_laplacian(datum, k):
    """L = L_A + sum_{alpha>0} k_alpha coth(alpha/2) d(alpha*), acting on
    W-invariants; coth(alpha/2) = (1 + t^{-alpha})/(1 - t^{-alpha})."""
    from .polyring import one_poly
    terms = [OpGradient(datum)]
    one = one_poly(datum)
    for root in datum.positive_roots:
        neg = LaurentPolynomial.monomial(tuple(-x for x in root.wt), Fraction(1))
        alpha_star = tuple(Fraction(x) for x in _alpha_star(datum, root))
        coth_term = OpCompose([
            OpDivExact(one - neg),
            OpMul(one + neg),
            OpDeriv(alpha_star),
        ])
        terms.append(OpScale(k.of_root(root), coth_term))
    return OpSum(terms)


def _alpha_star(datum, root):
    """alpha* in the simple-coroot basis: beta(alpha*) = (beta, alpha)."""
    # alpha* = (alpha,alpha)/2 * alpha^vee
    return tuple(root.norm / 2 * c for c in root.coroot)


def radial_laplacian_check(datum, k, height):
    """Verifies D(p2, k) = L + (rho(k), rho(k)) id on W-invariants."""
    p2 = squared_norm_poly(datum, k)
    lhs = symmetric_restriction(datum, p2, k, height)
    rho = datum.rho(k)
    rho_sq = sum(rho[i] * datum.gram_wt[i][j] * rho[j]
                 for i in range(datum.rank) for j in range(datum.rank))
    lap = radial_laplacian(datum, k)
    rhs = InvariantMatrix.of(
        datum, lambda f: lap.apply(f) + f.scale(rho_sq), height)
    diff = lhs.first_difference(rhs)
    if diff is None:
        return passed("radial-laplacian", type=datum.label, height=height,
                      invariant_dim=len(lhs.labels))
    col, row, a, b = diff
    return failed("radial-laplacian",
                  {"col": list(col), "row": list(row),
                   "lhs": str(a), "rhs": str(b)},
                  type=datum.label, height=height)
