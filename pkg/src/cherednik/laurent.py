"""Sparse Laurent polynomials on the torus with exact scalar coefficients.

Exponents are integer tuples in the fundamental-weight basis of the underlying
root datum; coefficients are Fractions or parameter-field elements
(:class:`cherednik.scalars.RF`). Zero coefficients are never stored.
"""

from __future__ import annotations

from fractions import Fraction


class DivisionFailure(ArithmeticError):
    """Raised when an exact Laurent-polynomial division leaves a remainder."""


class LaurentPolynomial:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        if coeffs:
            self.coeffs = {w: c for w, c in coeffs.items() if c}
        else:
            self.coeffs = {}

    @staticmethod
    def zero():
        return LaurentPolynomial()

    @staticmethod
    def monomial(weight, coeff):
        p = LaurentPolynomial()
        if coeff:
            p.coeffs[tuple(weight)] = coeff
        return p

    def is_zero(self):
        return not self.coeffs

    def support(self):
        return set(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, weight):
        return self.coeffs.get(tuple(weight), 0)

    def constant_term(self):
        if not self.coeffs:
            return Fraction(0)
        zero = (0,) * len(next(iter(self.coeffs)))
        return self.coeffs.get(zero, Fraction(0))

    def __add__(self, other):
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            s = out.get(w)
            if s is None:
                out[w] = c
            else:
                s = s + c
                if s:
                    out[w] = s
                else:
                    del out[w]
        p = LaurentPolynomial()
        p.coeffs = out
        return p

    def __sub__(self, other):
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            s = out.get(w)
            if s is None:
                out[w] = -c
            else:
                s = s - c
                if s:
                    out[w] = s
                else:
                    del out[w]
        p = LaurentPolynomial()
        p.coeffs = out
        return p

    def __neg__(self):
        p = LaurentPolynomial()
        p.coeffs = {w: -c for w, c in self.coeffs.items()}
        return p

    def __mul__(self, other):
        if isinstance(other, LaurentPolynomial):
            out = {}
            for w1, c1 in self.coeffs.items():
                for w2, c2 in other.coeffs.items():
                    w = tuple(a + b for a, b in zip(w1, w2))
                    c = c1 * c2
                    s = out.get(w)
                    if s is None:
                        out[w] = c
                    else:
                        s = s + c
                        if s:
                            out[w] = s
                        else:
                            del out[w]
            p = LaurentPolynomial()
            p.coeffs = {w: c for w, c in out.items() if c}
            return p
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, scalar):
        if not scalar:
            return LaurentPolynomial()
        p = LaurentPolynomial()
        p.coeffs = {w: scalar * c for w, c in self.coeffs.items()}
        return p

    def shift(self, weight):
        """Multiply by the monomial t^weight."""
        p = LaurentPolynomial()
        p.coeffs = {tuple(a + b for a, b in zip(w, weight)): c
                    for w, c in self.coeffs.items()}
        return p

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a Laurent polynomial")
        result = None
        base = self
        while True:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if not n:
                break
            base = base * base
        if result is None:
            raise ValueError("0th power needs an explicit unit coefficient")
        return result

    def __eq__(self, other):
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        if set(self.coeffs) != set(other.coeffs):
            return False
        return all(other.coeffs[w] == c for w, c in self.coeffs.items())

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def conjugate(self):
        """Conjugation on the compact torus: t^mu -> t^-mu, real coefficients."""
        p = LaurentPolynomial()
        p.coeffs = {tuple(-a for a in w): c for w, c in self.coeffs.items()}
        return p

    def act_matrix(self, mat):
        """Apply an integer matrix to every exponent (Weyl group action)."""
        p = LaurentPolynomial()
        out = {}
        for w, c in self.coeffs.items():
            img = tuple(sum(row[j] * w[j] for j in range(len(w))) for row in mat)
            out[img] = c
        p.coeffs = out
        return p

    def exact_div(self, divisor):
        """Exact division; raises DivisionFailure if a remainder is left.

        Works in the Laurent ring: both operands are shifted to ordinary
        polynomials, divided there with a lex term order, and shifted back.
        """
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return LaurentPolynomial()
        n = len(next(iter(self.coeffs)))
        fmin = [min(w[i] for w in self.coeffs) for i in range(n)]
        dmin = [min(w[i] for w in divisor.coeffs) for i in range(n)]
        fshift = {tuple(a - b for a, b in zip(w, fmin)): c
                  for w, c in self.coeffs.items()}
        dshift = {tuple(a - b for a, b in zip(w, dmin)): c
                  for w, c in divisor.coeffs.items()}
        dlead = max(dshift)
        dlc = dshift[dlead]
        quotient = {}
        rem = fshift
        while rem:
            lead = max(rem)
            if any(l < d for l, d in zip(lead, dlead)):
                raise DivisionFailure(
                    "remainder with leading exponent %s" % (lead,))
            qexp = tuple(l - d for l, d in zip(lead, dlead))
            qc = rem[lead] / dlc
            quotient[qexp] = qc
            new_rem = dict(rem)
            for w, c in dshift.items():
                ww = tuple(a + b for a, b in zip(w, qexp))
                s = new_rem.get(ww)
                prod = qc * c
                if s is None:
                    if prod:
                        new_rem[ww] = -prod
                else:
                    s = s - prod
                    if s:
                        new_rem[ww] = s
                    else:
                        del new_rem[ww]
            rem = new_rem
        back = tuple(f - d for f, d in zip(fmin, dmin))
        p = LaurentPolynomial()
        p.coeffs = {tuple(a + b for a, b in zip(w, back)): c
                    for w, c in quotient.items() if c}
        return p

    def map_coeffs(self, fn):
        p = LaurentPolynomial()
        p.coeffs = {w: v for w, v in ((w, fn(c)) for w, c in self.coeffs.items()) if v}
        return p

    def evaluate(self, point_powers):
        """Numeric evaluation; point_powers[i] is the value of t^{e_i}."""
        total = 0.0
        for w, c in self.coeffs.items():
            val = float(c) if isinstance(c, (int, Fraction)) else float(Fraction(str(c)))
            for x, e in zip(point_powers, w):
                val *= x ** e
            total += val
        return total

    def sorted_terms(self):
        return sorted(self.coeffs.items())

    def to_json(self):
        from .scalars import scalar_str
        return [{"weight": list(w), "coeff": scalar_str(c)}
                for w, c in self.sorted_terms()]

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for w, c in self.sorted_terms():
            mon = "*".join("t%d^%d" % (i, e) for i, e in enumerate(w) if e)
            parts.append("(%s)%s" % (c, "*" + mon if mon else ""))
        return " + ".join(parts)

    __repr__ = __str__


def lp_sum(polys):
    total = LaurentPolynomial()
    for p in polys:
        total = total + p
    return total
