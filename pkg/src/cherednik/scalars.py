"""Exact coefficient arithmetic: rationals and rational functions in named parameters.

Two coefficient modes coexist and are never mixed inside one computation:

* plain ``fractions.Fraction`` for fully specialized parameters,
* :class:`RF`, a lazily reduced quotient of multivariate polynomials over Q
  (backed by sympy's sparse polynomial rings), for symbolic parameters.

``RF`` keeps numerator/denominator unreduced until they grow past a size
threshold; equality is decided by cross-multiplication, so correctness never
depends on gcd extraction.
"""

from __future__ import annotations

from fractions import Fraction

from sympy.polys.domains import QQ
from sympy.polys.rings import ring as _sympy_ring

# Reduce an RF once numerator or denominator exceeds this many terms.
_REDUCE_TERMS = 48


def _to_qq(x):
    if isinstance(x, Fraction):
        return QQ(x.numerator, x.denominator)
    return QQ(int(x), 1)


class ParameterField:
    """Field Q(name_1, ..., name_m), elements represented by :class:`RF`."""

    def __init__(self, names):
        names = tuple(names)
        if not names:
            raise ValueError("ParameterField needs at least one generator; "
                             "use plain Fractions for the rational case")
        self.names = names
        self.ring, *gens = _sympy_ring(list(names), QQ)
        self._gens = {name: g for name, g in zip(names, gens)}
        self.zero = RF(self, self.ring.zero, self.ring.one)
        self.one = RF(self, self.ring.one, self.ring.one)

    def gen(self, name):
        return RF(self, self._gens[name], self.ring.one)

    def gens(self):
        return [self.gen(n) for n in self.names]

    def from_fraction(self, x):
        return RF(self, self.ring.ground_new(_to_qq(x)), self.ring.one)

    def coerce(self, x):
        if isinstance(x, RF):
            if x.field is not self:
                raise ValueError("scalar from a different parameter field")
            return x
        return self.from_fraction(x)

    def linear(self, const, coeffs):
        """Affine-linear element const + sum coeffs[name]*name."""
        p = self.ring.ground_new(_to_qq(const))
        for name, c in coeffs.items():
            p = p + self._gens[name] * _to_qq(c)
        return RF(self, p, self.ring.one)

    def __repr__(self):
        return "ParameterField(%s)" % ", ".join(self.names)


def _poly_eval(poly, ring, values):
    """Evaluate a sympy PolyElement at QQ values for every generator."""
    gens = ring.gens
    total = QQ.zero
    for monom, coeff in poly.terms():
        term = coeff
        for g, e in zip(values, monom):
            if e:
                term = term * g ** e
        total = total + term
    return total


class RF:
    """Rational function with lazy gcd reduction and cross-multiplied equality."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field, num, den):
        if not den:
            raise ZeroDivisionError("zero denominator in rational function")
        self.field = field
        self.num = num
        self.den = den
        if len(num) > _REDUCE_TERMS or len(den) > _REDUCE_TERMS:
            self._reduce()

    def _reduce(self):
        g = self.num.gcd(self.den)
        if g != 1:
            self.num = self.num.quo(g)
            self.den = self.den.quo(g)

    def normalized(self):
        """Fully reduced copy with a sign-normalized denominator."""
        num, den = self.num, self.den
        if num:
            g = num.gcd(den)
            if g != 1:
                num, den = num.quo(g), den.quo(g)
        else:
            den = self.field.ring.one
        lc = den.LC
        if lc != QQ.one:
            inv = QQ.one / lc
            num, den = num.mul_ground(inv), den.mul_ground(inv)
        return RF(self.field, num, den)

    def _coerce(self, other):
        if isinstance(other, RF):
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_fraction(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return RF(self.field, self.num + other.num, self.den)
        return RF(self.field, self.num * other.den + other.num * self.den,
                  self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return RF(self.field, self.num - other.num, self.den)
        return RF(self.field, self.num * other.den - other.num * self.den,
                  self.den * other.den)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other.__sub__(self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RF(self.field, self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RF(self.field, self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other.__truediv__(self)

    def __neg__(self):
        return RF(self.field, -self.num, self.den)

    def __pow__(self, n):
        if n < 0:
            return RF(self.field, self.den ** (-n), self.num ** (-n))
        return RF(self.field, self.num ** n, self.den ** n)

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return not self.num
            other = self.field.from_fraction(other)
        if not isinstance(other, RF):
            return NotImplemented
        if self.den == other.den:
            return self.num == other.num
        return self.num * other.den == other.num * self.den

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        r = self.normalized()
        return hash((tuple(sorted(r.num.terms())), tuple(sorted(r.den.terms()))))

    def __str__(self):
        r = self.normalized()
        if r.den == 1:
            return str(r.num)
        return "(%s)/(%s)" % (r.num, r.den)

    __repr__ = __str__

    def subs(self, assignments):
        """Specialize parameters; full assignment returns a Fraction.

        ``assignments`` maps generator names to Fractions (or ints). All
        generators must be assigned.
        """
        field = self.field
        missing = [n for n in field.names if n not in assignments]
        if missing:
            raise ValueError("unassigned parameters: %s" % ", ".join(missing))
        vals = [_to_qq(Fraction(assignments[n])) for n in field.names]
        num = _poly_eval(self.num, field.ring, vals)
        den = _poly_eval(self.den, field.ring, vals)
        if not den:
            raise ZeroDivisionError("denominator vanishes at specialization")
        q = num / den
        return Fraction(int(QQ.numer(q)), int(QQ.denom(q)))


def affine_parts(x, field=None):
    """Decompose a scalar that is affine-linear in the parameters into
    (constant, coefficient-per-generator). Raises if x is not affine."""
    if isinstance(x, (int, Fraction)):
        return Fraction(x), ()
    r = x.normalized()
    if r.den != 1:
        raise ValueError("scalar is not polynomial: %s" % x)
    names = r.field.names
    const = Fraction(0)
    coeffs = [Fraction(0)] * len(names)
    for monom, coeff in r.num.terms():
        c = Fraction(int(QQ.numer(coeff)), int(QQ.denom(coeff)))
        total = sum(monom)
        if total == 0:
            const = c
        elif total == 1:
            coeffs[monom.index(1)] = c
        else:
            raise ValueError("scalar is not affine-linear: %s" % x)
    return const, tuple(coeffs)


def is_zero(x):
    return not x


def as_fraction(x):
    """Convert a scalar known to be constant to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, RF):
        r = x.normalized()
        if r.den != 1 or (r.num and len(r.num) > 1):
            raise ValueError("scalar is not constant: %s" % x)
        if not r.num:
            return Fraction(0)
        ((monom, coeff),) = r.num.terms()
        if any(monom):
            raise ValueError("scalar is not constant: %s" % x)
        return Fraction(int(QQ.numer(coeff)), int(QQ.denom(coeff)))
    raise TypeError(type(x).__name__)


def scalar_str(x):
    if isinstance(x, Fraction):
        return str(x)
    return str(x)
