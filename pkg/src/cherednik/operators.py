"""Differential-reflection operator expressions and their exact matrices.

An operator expression is a tree of atoms acting on Laurent polynomials:
multiplication, exact division, directional derivatives, Weyl reflections,
and the divided-difference atom (1 - t^{-alpha})^{-1}(1 - s_alpha), which maps
monomials to explicit geometric sums and never needs an actual division.
"""

from __future__ import annotations

from fractions import Fraction

from .laurent import DivisionFailure, LaurentPolynomial


class TruncationEscape(ValueError):
    """An operator image left the stated target truncation."""

    def __init__(self, weight):
        super().__init__("image escapes truncation at weight %s" % (weight,))
        self.weight = weight


class Operator:
    def apply(self, f):
        raise NotImplementedError

    def __add__(self, other):
        return OpSum([self, other])

    def __sub__(self, other):
        return OpSum([self, OpScale(-1, other)])

    def __matmul__(self, other):
        return OpCompose([self, other])

    def then(self, other):
        """self applied after other."""
        return OpCompose([self, other])


class OpIdentity(Operator):
    def apply(self, f):
        return f


class OpSum(Operator):
    def __init__(self, ops):
        parts = []
        for op in ops:
            if isinstance(op, OpSum):
                parts.extend(op.ops)
            else:
                parts.append(op)
        self.ops = parts

    def apply(self, f):
        total = LaurentPolynomial()
        for op in self.ops:
            total = total + op.apply(f)
        return total


class OpCompose(Operator):
    """ops[0] applied last (composition in operator order)."""

    def __init__(self, ops):
        parts = []
        for op in ops:
            if isinstance(op, OpCompose):
                parts.extend(op.ops)
            else:
                parts.append(op)
        self.ops = parts

    def apply(self, f):
        for op in reversed(self.ops):
            f = op.apply(f)
        return f


class OpScale(Operator):
    def __init__(self, scalar, op):
        self.scalar = scalar
        self.op = op

    def apply(self, f):
        return self.op.apply(f).scale(self.scalar)


class OpScalar(Operator):
    """Multiplication by a scalar constant."""

    def __init__(self, scalar):
        self.scalar = scalar

    def apply(self, f):
        return f.scale(self.scalar)


class OpMul(Operator):
    def __init__(self, poly):
        self.poly = poly

    def apply(self, f):
        return self.poly * f


class OpDivExact(Operator):
    def __init__(self, poly):
        self.poly = poly

    def apply(self, f):
        return f.exact_div(self.poly)


class OpDeriv(Operator):
    """Directional derivative: t^mu -> mu(xi) t^mu, xi in simple-coroot coords."""

    def __init__(self, xi):
        self.xi = tuple(xi)

    def apply(self, f):
        out = LaurentPolynomial()
        for w, c in f.coeffs.items():
            val = sum(a * b for a, b in zip(w, self.xi))
            if val:
                prev = out.coeffs.get(w)
                coeff = c * val
                out.coeffs[w] = coeff if prev is None else prev + coeff
        out.coeffs = {w: c for w, c in out.coeffs.items() if c}
        return out


class OpWeyl(Operator):
    def __init__(self, weyl):
        self.weyl = weyl

    def apply(self, f):
        return f.act_matrix(self.weyl.mat)


class OpGradient(Operator):
    """The flat Laplacian on the torus: t^mu -> (mu, mu) t^mu."""

    def __init__(self, datum):
        self.datum = datum

    def apply(self, f):
        out = LaurentPolynomial()
        for w, c in f.coeffs.items():
            val = self.datum.inner(w, w)
            if val:
                out.coeffs[w] = c * val
        out.coeffs = {w: c for w, c in out.coeffs.items() if c}
        return out


class OpCherednik(Operator):
    """(1 - t^{-alpha})^{-1} (1 - s_alpha), resolved by geometric sums.

    For m = mu(alpha^vee):
      m > 0: t^mu + t^{mu-alpha} + ... + t^{mu-(m-1)alpha}
      m = 0: 0
      m < 0: -(t^{mu+alpha} + ... + t^{mu+|m|alpha})
    """

    def __init__(self, root):
        self.root = root

    def apply(self, f):
        alpha = self.root.wt
        coroot = self.root.coroot
        out = {}
        for w, c in f.coeffs.items():
            m = sum(a * b for a, b in zip(w, coroot))
            if m == 0:
                continue
            if m > 0:
                rng = range(0, m)
                sign = 1
            else:
                rng = range(-1, m - 1, -1)
                sign = -1
            for j in rng:
                ww = tuple(a - j * b for a, b in zip(w, alpha))
                prev = out.get(ww)
                coeff = c if sign > 0 else -c
                if prev is None:
                    out[ww] = coeff
                else:
                    s = prev + coeff
                    if s:
                        out[ww] = s
                    else:
                        del out[ww]
        p = LaurentPolynomial()
        p.coeffs = {w: c for w, c in out.items() if c}
        return p


class LinearOperator:
    """Exact sparse matrix of an operator between monomial truncations.

    Columns are indexed by source weights, rows by target weights; cols[j]
    maps row index -> scalar.
    """

    def __init__(self, source, target, cols):
        self.source = list(source)
        self.target = list(target)
        self.target_index = {w: i for i, w in enumerate(self.target)}
        self.cols = cols

    @staticmethod
    def from_operator(op, source, target):
        target_index = {tuple(w): i for i, w in enumerate(target)}
        cols = []
        for w in source:
            image = op.apply(LaurentPolynomial.monomial(w, Fraction(1)))
            col = {}
            for ww, c in image.coeffs.items():
                idx = target_index.get(ww)
                if idx is None:
                    raise TruncationEscape(ww)
                col[idx] = c
            cols.append(col)
        return LinearOperator(source, target, cols)

    @staticmethod
    def from_apply(apply_fn, source, target):
        target_index = {tuple(w): i for i, w in enumerate(target)}
        cols = []
        for w in source:
            image = apply_fn(LaurentPolynomial.monomial(w, Fraction(1)))
            col = {}
            for ww, c in image.coeffs.items():
                idx = target_index.get(ww)
                if idx is None:
                    raise TruncationEscape(ww)
                col[idx] = c
            cols.append(col)
        return LinearOperator(source, target, cols)

    @staticmethod
    def identity(basis, one):
        return LinearOperator(basis, basis, [{i: one} for i in range(len(basis))])

    def apply_poly(self, f):
        src_index = {w: j for j, w in enumerate(self.source)}
        out = {}
        for w, c in f.coeffs.items():
            j = src_index.get(w)
            if j is None:
                raise TruncationEscape(w)
            for i, a in self.cols[j].items():
                prev = out.get(i)
                val = a * c
                out[i] = val if prev is None else prev + val
        p = LaurentPolynomial()
        p.coeffs = {self.target[i]: c for i, c in out.items() if c}
        return p

    def __mul__(self, other):
        """Matrix product self . other (apply other first)."""
        if other.target != self.source:
            raise ValueError("incompatible truncations for composition")
        cols = []
        for col in other.cols:
            out = {}
            for mid, c in col.items():
                for i, a in self.cols[mid].items():
                    prev = out.get(i)
                    val = a * c
                    out[i] = val if prev is None else prev + val
            cols.append({i: c for i, c in out.items() if c})
        return LinearOperator(other.source, self.target, cols)

    def __add__(self, other):
        self._check_same_shape(other)
        cols = []
        for c1, c2 in zip(self.cols, other.cols):
            out = dict(c1)
            for i, c in c2.items():
                prev = out.get(i)
                s = c if prev is None else prev + c
                if s:
                    out[i] = s
                elif prev is not None:
                    del out[i]
            cols.append(out)
        return LinearOperator(self.source, self.target, cols)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, scalar):
        return LinearOperator(self.source, self.target,
                              [{i: scalar * c for i, c in col.items()}
                               for col in self.cols])

    def _check_same_shape(self, other):
        if self.source != other.source or self.target != other.target:
            raise ValueError("operators on different truncations")

    def is_zero(self):
        return all(not col for col in self.cols)

    def __eq__(self, other):
        if not isinstance(other, LinearOperator):
            return NotImplemented
        self._check_same_shape(other)
        for c1, c2 in zip(self.cols, other.cols):
            keys = set(c1) | set(c2)
            for i in keys:
                a = c1.get(i, 0)
                b = c2.get(i, 0)
                if isinstance(a, int):
                    a, b = b, a
                if a != b:
                    return False
        return True

    def first_difference(self, other):
        """(col_weight, row_weight, self_entry, other_entry) or None."""
        for j, (c1, c2) in enumerate(zip(self.cols, other.cols)):
            for i in sorted(set(c1) | set(c2)):
                a, b = c1.get(i, 0), c2.get(i, 0)
                unequal = (b != a) if isinstance(a, int) else (a != b)
                if unequal:
                    return (self.source[j], self.target[i], a, b)
        return None

    def entry(self, row_weight, col_weight):
        j = self.source.index(tuple(col_weight))
        i = self.target_index[tuple(row_weight)]
        return self.cols[j].get(i, 0)

    def restrict_rows(self, rows):
        idx = [self.target_index[tuple(r)] for r in rows]
        remap = {old: new for new, old in enumerate(idx)}
        cols = []
        for col in self.cols:
            out = {}
            for i, c in col.items():
                if i in remap:
                    out[remap[i]] = c
                elif c:
                    raise TruncationEscape(self.target[i])
            cols.append(out)
        return LinearOperator(self.source, rows, cols)

    def to_json(self):
        from .scalars import scalar_str
        entries = []
        for j, col in enumerate(self.cols):
            for i in sorted(col):
                entries.append([i, j, scalar_str(col[i])])
        return {"rows": [list(w) for w in self.target],
                "cols": [list(w) for w in self.source],
                "entries": entries}

    def __repr__(self):
        return "LinearOperator(%dx%d, %d entries)" % (
            len(self.target), len(self.source),
            sum(len(c) for c in self.cols))


def commutator(a, b):
    return a * b - b * a
