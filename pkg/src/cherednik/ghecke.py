"""The graded affine Hecke algebra in PBW normal form: multiplication via the
cross relation, star structures, centrality tests, the faithfulness check for
the polynomial representation, and induced modules.

Elements are stored left-normal: sum_w p_w . w with the polynomial on the
left; polynomials live in S(a) as dicts {exponent tuple over the
simple-coroot variables: scalar}.
"""

from __future__ import annotations

from fractions import Fraction

from .dunkl import PolyDunkl
from .operators import LinearOperator, OpWeyl
from .reports import failed, passed


# -- S(a) polynomial helpers ---------------------------------------------------


def sp_add(p, q):
    out = dict(p)
    for m, c in q.items():
        s = out.get(m)
        s = c if s is None else s + c
        if s:
            out[m] = s
        elif m in out:
            del out[m]
    return out


def sp_scale(p, c):
    if not c:
        return {}
    return {m: c * v for m, v in p.items()}


def sp_mul(p, q):
    out = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            m = tuple(a + b for a, b in zip(m1, m2))
            v = c1 * c2
            s = out.get(m)
            s = v if s is None else s + v
            if s:
                out[m] = s
            elif m in out:
                del out[m]
    return out


def sp_act(datum, widx, p):
    """w(p): substitute each variable by the w-image of its coroot."""
    rank = datum.rank
    images = [datum.w_act_vector(widx, tuple(int(i == j) for j in range(rank)))
              for i in range(rank)]
    out = {}
    for monom, coeff in p.items():
        term = {(0,) * rank: coeff}
        for i, e in enumerate(monom):
            for _ in range(e):
                lin = {}
                for j, c in enumerate(images[i]):
                    if c:
                        lin[tuple(int(t == j) for t in range(rank))] = \
                            coeff * 0 + c if False else c
                term = sp_mul(term, {m: _coerce_like(coeff, c)
                                     for m, c in lin.items()})
        out = sp_add(out, term)
    return out


def _coerce_like(sample, value):
    if hasattr(sample, "field"):
        return sample.field.from_fraction(Fraction(value)) \
            if not hasattr(value, "field") else value
    return Fraction(value)


def sp_demazure(datum, i, p):
    """(p - s_i(p)) / x_i, an exact division in S(a)."""
    diff = sp_add(p, sp_scale(sp_act(datum, datum.simple_reflection(i).index, p),
                              -_one_like(p)))
    out = {}
    for m, c in diff.items():
        assert m[i] >= 1, "Demazure division left a remainder"
        out[tuple(e - int(t == i) for t, e in enumerate(m))] = c
    return out


def _one_like(p):
    for c in p.values():
        if hasattr(c, "field"):
            return c.field.one
        return Fraction(1)
    return Fraction(1)


def sp_eval(p, point):
    """Evaluate at a tuple of scalars."""
    total = None
    for m, c in p.items():
        term = c
        for x, e in zip(point, m):
            for _ in range(e):
                term = term * x
        total = term if total is None else total + term
    return total if total is not None else 0


# -- algebra elements ------------------------------------------------------------


class HeckeElement:
    """Normal form sum_w p_w . w over a shared root datum and multiplicity."""

    __slots__ = ("datum", "k", "terms")

    def __init__(self, datum, k, terms=None):
        self.datum = datum
        self.k = k
        self.terms = {w: p for w, p in (terms or {}).items() if p}

    @staticmethod
    def zero(datum, k):
        return HeckeElement(datum, k)

    @staticmethod
    def one(datum, k):
        return HeckeElement(datum, k,
                            {0: {(0,) * datum.rank: k.domain_one()}})

    @staticmethod
    def weyl(datum, k, widx):
        return HeckeElement(datum, k,
                            {widx: {(0,) * datum.rank: k.domain_one()}})

    @staticmethod
    def coroot(datum, k, i):
        mono = tuple(int(j == i) for j in range(datum.rank))
        return HeckeElement(datum, k, {0: {mono: k.domain_one()}})

    @staticmethod
    def polynomial(datum, k, p):
        return HeckeElement(datum, k, {0: dict(p)})

    def __add__(self, other):
        terms = {w: dict(p) for w, p in self.terms.items()}
        for w, p in other.terms.items():
            terms[w] = sp_add(terms.get(w, {}), p)
        return HeckeElement(self.datum, self.k, terms)

    def __sub__(self, other):
        return self + other.scale(-self.k.domain_one())

    def scale(self, c):
        return HeckeElement(self.datum, self.k,
                            {w: sp_scale(p, c) for w, p in self.terms.items()})

    def _lmul_s(self, i):
        """s_i . self, renormalized by s_i p = s_i(p) s_i - k_i D_i(p)."""
        datum, k = self.datum, self.k
        ki = k.k0(datum.simple_roots0[i])
        s = datum.simple_reflection(i).index
        terms = {}
        for w, p in self.terms.items():
            sw = datum.w_mult(s, w)
            sp = sp_act(datum, s, p)
            terms[sw] = sp_add(terms.get(sw, {}), sp)
            dp = sp_scale(sp_demazure(datum, i, p), -ki)
            if dp:
                terms[w] = sp_add(terms.get(w, {}), dp)
        return HeckeElement(datum, k, terms)

    def lmul_weyl(self, widx):
        out = self
        for letter in reversed(self.datum.w_words[widx]):
            out = out._lmul_s(letter)
        return out

    def lmul_poly(self, p):
        return HeckeElement(self.datum, self.k,
                            {w: sp_mul(p, q) for w, q in self.terms.items()})

    def __mul__(self, other):
        total = HeckeElement.zero(self.datum, self.k)
        for w, p in self.terms.items():
            total = total + other.lmul_weyl(w).lmul_poly(p)
        return total

    def __eq__(self, other):
        if set(self.terms) != set(other.terms):
            return False
        for w, p in self.terms.items():
            q = other.terms[w]
            if set(p) != set(q):
                return False
            for m, c in p.items():
                if q[m] != c:
                    return False
        return True

    def star_bullet(self):
        """The compact star: xi -> xi, w -> w^{-1}, anti-multiplicative."""
        datum, k = self.datum, self.k
        total = HeckeElement.zero(datum, k)
        for w, p in self.terms.items():
            winv = datum.w_inv[w]
            total = total + HeckeElement.polynomial(datum, k, p).lmul_weyl(winv)
        return total

    def star_split(self):
        """The split star: xi -> -w0 w0(xi) w0, w -> w^{-1}."""
        datum, k = self.datum, self.k
        w0 = datum.longest_index
        xi_star = []
        for i in range(datum.rank):
            w0xi = datum.w_act_vector(w0, tuple(int(t == i)
                                                for t in range(datum.rank)))
            mid = HeckeElement.polynomial(datum, k,
                                          _vector_poly(datum, k, w0xi))
            elem = HeckeElement.weyl(datum, k, w0) * mid \
                * HeckeElement.weyl(datum, k, w0)
            xi_star.append(elem.scale(-k.domain_one()))
        total = HeckeElement.zero(datum, k)
        for w, p in self.terms.items():
            for m, c in p.items():
                factor = HeckeElement.weyl(datum, k, datum.w_inv[w]).scale(c)
                for i, e in enumerate(m):
                    for _ in range(e):
                        factor = factor * xi_star[i]
                total = total + factor
        return total

    def right_normal(self):
        """[(w, q_w)] with self = sum_w w . q_w (polynomials on the right)."""
        flipped = self.star_bullet()
        return [(self.datum.w_inv[w], p) for w, p in flipped.terms.items()]

    def eta_matrix(self, basis):
        """Matrix of the polynomial representation on a monomial truncation."""
        datum, k = self.datum, self.k
        total = None
        for w, p in self.terms.items():
            m_w = LinearOperator.from_operator(OpWeyl(datum.weyl(w)),
                                               basis, basis)
            m_p = LinearOperator.from_operator(PolyDunkl(datum, p, k),
                                               basis, basis)
            term = m_p * m_w
            total = term if total is None else total + term
        if total is None:
            total = LinearOperator(basis, basis, [{} for _ in basis])
        return total

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms):
            parts.append("(%s).%s" % (self.terms[w], self.datum.weyl(w)))
        return " + ".join(parts)


def generators(datum, k):
    """Simple reflections and coroot variables as algebra elements."""
    gens = [HeckeElement.weyl(datum, k, datum.simple_reflection(i).index)
            for i in range(datum.rank)]
    gens += [HeckeElement.coroot(datum, k, i) for i in range(datum.rank)]
    return gens


def epsilon_plus(datum, k):
    terms = {}
    one = {(0,) * datum.rank: k.coerce(Fraction(1, datum.order))}
    for w in range(datum.order):
        terms[w] = dict(one)
    return HeckeElement(datum, k, terms)


def is_central(datum, k, elem):
    for g in generators(datum, k):
        if not (elem * g == g * elem):
            return False
    return True


def central_witness(datum, k, elem):
    for idx, g in enumerate(generators(datum, k)):
        lhs, rhs = elem * g, g * elem
        if not (lhs == rhs):
            return {"generator": idx, "difference": repr(lhs - rhs)}
    return None


def invariant_center_check(datum, k, degree_bound):
    """Every W-invariant polynomial up to degree_bound is central, and the
    first coroot variable is not (it has a nonzero Hecke commutator)."""
    from .shift import invariant_generator_polys, _monomials
    for d, poly in invariant_generator_polys(datum):
        if d > degree_bound:
            continue
        elem = HeckeElement.polynomial(
            datum, k, {m: k.coerce(c) for m, c in poly.items()})
        if not is_central(datum, k, elem):
            return failed("hecke-center",
                          {"degree": d, **(central_witness(datum, k, elem) or {})},
                          type=datum.label)
    xi = HeckeElement.coroot(datum, k, 0)
    if is_central(datum, k, xi):
        return failed("hecke-center",
                      {"finding": "coroot variable is central"},
                      type=datum.label)
    return passed("hecke-center", type=datum.label, degree_bound=degree_bound)


def eta_compatibility(datum, k, height, degree_bound=2, rng=None):
    """The map (p, w) -> T(p,k) . w is an algebra homomorphism (checked on
    products of PBW elements up to degree_bound) and is injective on that PBW
    slice (checked at a generic rational specialization of k)."""
    import random
    from .shift import _monomials
    rng = rng or random.Random(20240901)
    basis = datum.truncation(height)
    pbw = []
    for d in range(degree_bound + 1):
        for mono in _monomials(datum.rank, d):
            for w in range(datum.order):
                pbw.append(HeckeElement(
                    datum, k, {w: {mono: k.domain_one()}}))
    sample = rng.sample(pbw, min(len(pbw), 8))
    for a in sample:
        for b in sample:
            lhs = (a * b).eta_matrix(basis)
            rhs = a.eta_matrix(basis) * b.eta_matrix(basis)
            diff = lhs.first_difference(rhs)
            if diff is not None:
                col, row, x, y = diff
                return failed("dunkl-representation",
                              {"a": repr(a), "b": repr(b), "col": list(col),
                               "row": list(row), "lhs": str(x), "rhs": str(y)},
                              type=datum.label)
    # injectivity on the PBW slice at a generic rational point: a positive
    # rank certificate specializes upward to the symbolic parameters. The
    # truncation is grown until the matrices separate (faithfulness is a
    # global statement; small truncations genuinely fail to distinguish).
    if k.domain is not None:
        from .rootdata import MultiplicityParam
        probe = MultiplicityParam.of(
            datum, *[Fraction(7 + 3 * i, 5) for i in range(datum.num_orbits)])
    else:
        probe = k
    expected = sum(1 for d in range(degree_bound + 1)
                   for _ in _monomials(datum.rank, d)) * datum.order
    rank = 0
    inj_height = height
    for inj_height in range(height, height + 8):
        inj_basis = datum.truncation(inj_height)
        flat = []
        for d in range(degree_bound + 1):
            for mono in _monomials(datum.rank, d):
                for w in range(datum.order):
                    elem = HeckeElement(datum, probe, {w: {mono: Fraction(1)}})
                    mat = elem.eta_matrix(inj_basis)
                    vec = {}
                    for j, col in enumerate(mat.cols):
                        for i, c in col.items():
                            vec[(i, j)] = c
                    flat.append(vec)
        rank = _sparse_rank(flat)
        if rank == expected:
            break
    if rank != expected:
        return failed("dunkl-representation",
                      {"finding": "PBW slice is not independent",
                       "rank": rank, "expected": expected,
                       "injectivity_height": inj_height},
                      type=datum.label, degree_bound=degree_bound)
    return passed("dunkl-representation", type=datum.label, height=height,
                  degree_bound=degree_bound, pbw_size=expected,
                  injectivity_height=inj_height)


def _sparse_rank(vectors):
    """Rank of sparse Fraction vectors by elimination."""
    pivots = {}
    rank = 0
    for vec in vectors:
        v = dict(vec)
        while v:
            key = min(v)
            if key in pivots:
                pv = pivots[key]
                factor = v[key] / pv[key]
                for kk, c in pv.items():
                    s = v.get(kk, Fraction(0)) - factor * c
                    if s:
                        v[kk] = s
                    elif kk in v:
                        del v[kk]
            else:
                pivots[key] = v
                rank += 1
                break
    return rank


# -- induced modules ---------------------------------------------------------------


class InducedModule:
    """I_lambda = H tensor_A C_lambda with basis {w (x) 1}, or the parabolic
    V_{lambda-tilde} on minimal coset representatives."""

    def __init__(self, datum, k, point, reps=None, levi=None):
        self.datum = datum
        self.k = k
        self.point = tuple(point)
        if reps is None:
            self.reps = list(range(datum.order))
            self._rep_of = {w: w for w in self.reps}
        else:
            self.reps = list(reps)
            self._rep_of = levi
        self.dim = len(self.reps)
        self.index = {w: i for i, w in enumerate(self.reps)}

    @staticmethod
    def principal(datum, k, point):
        return InducedModule(datum, k, point)

    @staticmethod
    def parabolic(datum, k, lam):
        """V_{lambda-tilde} for dominant lam: induced from the Levi of the
        stabilizer, with eigenvalue lambda-tilde = lam + w_lam(rho(k))."""
        lam = tuple(lam)
        stab = [w for w in range(datum.order) if datum.w_act(w, lam) == lam]
        w_lam = max(stab, key=lambda w: len(datum.w_words[w]))
        rho = datum.rho(k)
        mat = datum.w_mats[w_lam]
        point = tuple(k.coerce(lam[i])
                      + sum(mat[i][j] * rho[j] for j in range(datum.rank))
                      for i in range(datum.rank))
        stab_set = set(stab)
        reps = []
        rep_of = {}
        for w in range(datum.order):
            coset = [datum.w_mult(w, u) for u in stab_set]
            rep = min(coset, key=lambda x: (len(datum.w_words[x]), x))
            rep_of[w] = rep
            if rep == w:
                reps.append(w)
        reps.sort(key=lambda x: (len(datum.w_words[x]), x))
        return InducedModule(datum, k, point, reps, rep_of)

    def act(self, elem):
        """Matrix of a HeckeElement on the basis {w (x) 1}."""
        cols = []
        for w in self.reps:
            prod = elem * HeckeElement.weyl(self.datum, self.k, w)
            col = {}
            for v, q in prod.right_normal():
                val = sp_eval(q, self.point)
                if val:
                    i = self.index[self._rep_of[v]]
                    col[i] = col.get(i, self.k.domain_zero()) + val
            cols.append({i: c for i, c in col.items() if c})
        return cols


def principal_series_check(datum, k, lam_names=("l%d",)):
    """Defining relations hold on I_lambda and the sesquilinear pairing
    (w1 x 1, w2 x 1) = delta is *-invariant for formally imaginary lambda."""
    from .scalars import ParameterField
    names = (["k%d" % i for i in range(datum.num_orbits)]
             + ["l%d" % i for i in range(datum.rank)])
    dom = ParameterField(names)
    from .rootdata import MultiplicityParam
    k_sym = MultiplicityParam(
        datum, [dom.gen("k%d" % i) for i in range(datum.num_orbits)], dom)
    lam = tuple(dom.gen("l%d" % i) for i in range(datum.rank))
    mod = InducedModule.principal(datum, k_sym, lam)
    if mod.dim != datum.order:
        return failed("induced-module", {"dim": mod.dim,
                                         "expected": datum.order},
                      type=datum.label)
    # relation (iv) on the module: s_i xi - s_i(xi) s_i = -k_i alpha_i(xi)
    for i in range(datum.rank):
        s = HeckeElement.weyl(datum, k_sym, datum.simple_reflection(i).index)
        ki = k_sym.k0(datum.simple_roots0[i])
        for j in range(datum.rank):
            xi = HeckeElement.coroot(datum, k_sym, j)
            sxi_vec = datum.w_act_vector(datum.simple_reflection(i).index,
                                         tuple(int(t == j)
                                               for t in range(datum.rank)))
            sxi = HeckeElement.polynomial(
                datum, k_sym,
                _vector_poly(datum, k_sym, sxi_vec))
            lhs = _mat_from_cols(mod.act(s * xi - sxi * s), mod.dim)
            pairing = datum.pair(datum.simple_roots0[i].wt,
                                 tuple(int(t == j) for t in range(datum.rank)))
            want = -ki * pairing
            for a in range(mod.dim):
                for b in range(mod.dim):
                    expect = want if a == b else dom.zero
                    if lhs[a][b] != expect:
                        return failed("induced-module",
                                      {"relation": "cross", "i": i, "xi": j,
                                       "entry": [a, b]},
                                      type=datum.label)
    # *-invariance of the pairing, with conjugation lam -> -lam
    flips = ["l%d" % i for i in range(datum.rank)]
    for g in generators(datum, k_sym):
        act_g = _mat_from_cols(mod.act(g), mod.dim)
        act_gs = _mat_from_cols(mod.act(g.star_split()), mod.dim)
        for a in range(mod.dim):
            for b in range(mod.dim):
                lhs = act_g[a][b]
                rhs = _negate_gens(act_gs[b][a], flips, dom)
                if lhs != rhs:
                    return failed("induced-module",
                                  {"relation": "star-pairing",
                                   "entry": [a, b],
                                   "lhs": str(lhs), "rhs": str(rhs)},
                                  type=datum.label)
    # the spherical vector spans a W-stable line
    for i in range(datum.rank):
        s = HeckeElement.weyl(datum, k_sym, datum.simple_reflection(i).index)
        cols = mod.act(s)
        total = {}
        for col in cols:
            for r, c in col.items():
                total[r] = total.get(r, dom.zero) + c
        if any(total.get(r, dom.zero) != dom.one for r in range(mod.dim)):
            return failed("induced-module", {"relation": "spherical-line"},
                          type=datum.label)
    return passed("induced-module", type=datum.label, dim=mod.dim)


def _vector_poly(datum, k, vec):
    out = {}
    for j, c in enumerate(vec):
        if c:
            out[tuple(int(t == j) for t in range(datum.rank))] = k.coerce(c)
    return out


def _mat_from_cols(cols, dim):
    zero = Fraction(0)
    mat = [[zero] * dim for _ in range(dim)]
    for j, col in enumerate(cols):
        for i, c in col.items():
            mat[i][j] = c
    return mat


def _negate_gens(scalar, names, dom):
    """Substitute gen -> -gen for the named generators (formal conjugation)."""
    if isinstance(scalar, (int, Fraction)):
        return scalar
    flip = set(names)
    idx = [i for i, n in enumerate(dom.names) if n in flip]

    def tweak(poly):
        out = dom.ring.zero
        for monom, coeff in poly.terms():
            sign = (-1) ** sum(monom[i] for i in idx)
            term = dom.ring.from_terms([(monom, coeff * sign)])
            out = out + term
        return out

    from .scalars import RF
    return RF(dom, tweak(scalar.num), tweak(scalar.den))


def e_span_module_check(datum, k, lam, height=None):
    """span{E(w lam, k)} is stable under the polynomial representation and is
    isomorphic, via j(1 x 1) = E(lam,k), to the parabolically induced module."""
    from .jacobi import expand_in_e_basis, nonsymmetric_jacobi
    lam = tuple(lam)
    orbit = datum.orbit(lam)
    if height is None:
        height = datum.pair(lam, datum.two_rho_vee)
    basis = datum.truncation(height)
    e_fam = {mu: nonsymmetric_jacobi(datum, mu, k) for mu in basis}
    mod = InducedModule.parabolic(datum, k, lam)
    if mod.dim != len(orbit):
        return failed("e-span-module", {"dim": mod.dim,
                                        "orbit": len(orbit)},
                      type=datum.label, weight=list(lam))
    # j(w x 1) = eta(w) E(lam, k), expanded over the orbit family
    j_cols = []
    for w in mod.reps:
        img = e_fam[lam].poly.act_matrix(datum.w_mats[w])
        coeffs = expand_in_e_basis(datum, img, e_fam, basis)
        if set(coeffs) - set(orbit):
            return failed("e-span-module",
                          {"relation": "stability", "w": w,
                           "support": sorted(map(list, coeffs))},
                          type=datum.label, weight=list(lam))
        j_cols.append({orbit.index(mu): c for mu, c in coeffs.items()})
    # invertibility of j
    dense = [[j_cols[j].get(i, k.domain_zero()) for j in range(mod.dim)]
             for i in range(len(orbit))]
    if not _invertible(dense, k):
        return failed("e-span-module", {"relation": "j-invertible"},
                      type=datum.label, weight=list(lam))
    # intertwining on generators: j h = eta(h) j
    for g in generators(datum, k):
        hmod = mod.act(g)
        # eta(h) on the E-span, expressed in the orbit basis
        eta_cols = []
        for mu in orbit:
            img = g.eta_matrix(basis).apply_poly(e_fam[mu].poly)
            coeffs = expand_in_e_basis(datum, img, e_fam, basis)
            if set(coeffs) - set(orbit):
                return failed("e-span-module",
                              {"relation": "stability", "mu": list(mu)},
                              type=datum.label, weight=list(lam))
            eta_cols.append({orbit.index(nu): c for nu, c in coeffs.items()})
        # compare j . h with eta(h) . j entrywise
        for b in range(mod.dim):
            lhs = {}
            for mid, c in hmod[b].items():
                for i, a in j_cols[mid].items():
                    lhs[i] = lhs.get(i, k.domain_zero()) + a * c
            rhs = {}
            for mid, c in j_cols[b].items():
                for i, a in eta_cols[mid].items():
                    rhs[i] = rhs.get(i, k.domain_zero()) + a * c
            for i in set(lhs) | set(rhs):
                if lhs.get(i, k.domain_zero()) != rhs.get(i, k.domain_zero()):
                    return failed("e-span-module",
                                  {"relation": "intertwining", "col": b,
                                   "row": i},
                                  type=datum.label, weight=list(lam))
    return passed("e-span-module", type=datum.label, weight=list(lam),
                  dim=mod.dim)


def _invertible(mat, k):
    n = len(mat)
    m = [row[:] for row in mat]
    for col in range(n):
        piv = None
        for r in range(col, n):
            if m[r][col]:
                piv = r
                break
        if piv is None:
            return False
        m[col], m[piv] = m[piv], m[col]
        pv = m[col][col]
        m[col] = [x / pv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return True
