"""Root systems (reduced and non-reduced), Weyl groups, weight lattices, orders.

Weights are integer tuples in the fundamental-weight basis of the
unmultipliable subsystem R0; Cartan-algebra vectors are tuples in the dual
basis of R0-simple coroots, so pairing a weight with a vector is a plain dot
product. The inner product is normalized so that long roots of R0 have
squared length 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .scalars import ParameterField


def _cartan_and_norms(family, rank):
    """Cartan matrix C[i][j] = alpha_i(alpha_j^vee) of the reduced base system
    together with squared root lengths (long = 2)."""
    n = rank
    if family in ("A", "D"):
        c = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
        if family == "A":
            for i in range(n - 1):
                c[i][i + 1] = c[i + 1][i] = -1
        else:
            if n < 2:
                raise ValueError("D requires rank >= 2")
            for i in range(n - 2):
                c[i][i + 1] = c[i + 1][i] = -1
            if n >= 3:
                c[n - 3][n - 1] = c[n - 1][n - 3] = -1
        return c, [Fraction(2)] * n
    if family == "G":
        if n != 2:
            raise ValueError("G2 only")
        return [[2, -1], [-3, 2]], [Fraction(2, 3), Fraction(2)]
    if family == "F":
        if n != 4:
            raise ValueError("F4 only")
        c = [[2, -1, 0, 0], [-1, 2, -2, 0], [0, -1, 2, -1], [0, 0, -1, 2]]
        return c, [Fraction(2), Fraction(2), Fraction(1), Fraction(1)]
    if family == "B":
        if n < 2:
            raise ValueError("B requires rank >= 2")
        norms = [Fraction(2)] * (n - 1) + [Fraction(1)]
    elif family in ("C", "BC"):
        if family == "C" and n < 2:
            raise ValueError("C requires rank >= 2")
        norms = [Fraction(1)] * (n - 1) + [Fraction(2)]
    else:
        raise ValueError("unsupported family %r" % family)
    c = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i in range(n - 1):
        inner = -max(norms[i], norms[i + 1]) / 2
        c[i][i + 1] = int(2 * inner / norms[i + 1])
        c[i + 1][i] = int(2 * inner / norms[i])
    return c, norms


def _mat_inv(m):
    n = len(m)
    a = [[Fraction(m[i][j]) for j in range(n)]
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


def _solve(a, b):
    """Solve a square rational system; None if singular."""
    n = len(b)
    m = [row[:] + [b[i]] for i, row in enumerate(a)]
    for col in range(n):
        piv = None
        for r in range(col, n):
            if m[r][col] != 0:
                piv = r
                break
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        pv = m[col][col]
        m[col] = [x / pv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [m[i][n] for i in range(n)]


@dataclass(frozen=True)
class Root:
    index: int
    wt: tuple            # weight coordinates (integers)
    coroot: tuple        # alpha^vee in the simple-coroot basis (integers)
    norm: Fraction       # (alpha, alpha)
    orbit: int           # W-orbit index for multiplicity bookkeeping
    unmultipliable: bool  # 2*alpha is not a root


class WeylElement:
    __slots__ = ("datum", "index")

    def __init__(self, datum, index):
        self.datum = datum
        self.index = index

    @property
    def word(self):
        return self.datum.w_words[self.index]

    @property
    def mat(self):
        return self.datum.w_mats[self.index]

    @property
    def length(self):
        return len(self.datum.w_words[self.index])

    @property
    def sign(self):
        return -1 if self.length % 2 else 1

    def inverse(self):
        return WeylElement(self.datum, self.datum.w_inv[self.index])

    def __mul__(self, other):
        return WeylElement(self.datum, self.datum.w_mult(self.index, other.index))

    def act(self, weight):
        return self.datum.w_act(self.index, weight)

    def __eq__(self, other):
        return isinstance(other, WeylElement) and self.index == other.index

    def __hash__(self):
        return hash(self.index)

    def __repr__(self):
        if not self.word:
            return "e"
        return "s" + ".s".join(str(i + 1) for i in self.word)


class RootDatum:
    """Immutable after construction; safe to share across threads."""

    def __init__(self, family, rank):
        self.family = family
        self.rank = rank
        self.label = "%s%d" % (family, rank)
        self.non_reduced = family == "BC"
        cartan, norms = _cartan_and_norms(family, rank)
        self.cartan0 = cartan
        gram_s = [[Fraction(cartan[i][j]) * norms[j] / 2 for j in range(rank)]
                  for i in range(rank)]
        for i in range(rank):
            for j in range(rank):
                assert gram_s[i][j] == gram_s[j][i], "Gram must be symmetric"
        # simple coords -> weight coords: (alpha_j)_wt[i] = C[j][i]
        s2w = [[Fraction(cartan[j][i]) for j in range(rank)] for i in range(rank)]
        w2s = _mat_inv(s2w)
        self._w2s = w2s
        w2s_t = [list(col) for col in zip(*w2s)]
        self.gram_wt = [[sum(w2s_t[i][a] * gram_s[a][b] * w2s[b][j]
                             for a in range(rank) for b in range(rank))
                         for j in range(rank)] for i in range(rank)]
        self._build_roots(gram_s, s2w)
        self._build_weyl()
        self._assign_orbits()
        self.two_rho_vee = tuple(
            sum(r.coroot[i] for r in self.r0_positive) for i in range(rank))
        self.rho0_wt = self._rho0()
        self._ideal_cache = {}
        self._wmu_cache = {}
        self._bruhat_cache = {}

    # -- construction ---------------------------------------------------

    def _build_roots(self, gram_s, s2w):
        rank = self.rank

        def pair_s(v, w):
            return sum(v[i] * gram_s[i][j] * w[j]
                       for i in range(rank) for j in range(rank))

        simples = [tuple(Fraction(int(i == j)) for j in range(rank))
                   for i in range(rank)]
        roots = set(simples)
        frontier = list(simples)
        while frontier:
            new = []
            for v in frontier:
                for i in range(rank):
                    coeff = 2 * pair_s(v, simples[i]) / gram_s[i][i]
                    refl = tuple(v[j] - (coeff if j == i else 0)
                                 for j in range(rank))
                    if refl not in roots:
                        roots.add(refl)
                        new.append(refl)
            frontier = new
        base = sorted(roots)
        assert max(pair_s(v, v) for v in base) == 2, "long-root normalization"
        vectors = list(base)
        if self.non_reduced:
            for v in base:
                if pair_s(v, v) == 2:
                    vectors.append(tuple(x / 2 for x in v))
        vec_set = set(vectors)

        def to_wt(v):
            wt = []
            for i in range(rank):
                x = sum(s2w[i][j] * v[j] for j in range(rank))
                assert x.denominator == 1, "non-integral root weight coords"
                wt.append(int(x))
            return tuple(wt)

        self.roots = []
        for v in sorted(vectors):
            nrm = pair_s(v, v)
            wt = to_wt(v)
            cor = []
            for i in range(rank):
                val = 2 * sum(Fraction(self.gram_wt[i][j]) * wt[j]
                              for j in range(rank)) / nrm
                assert val.denominator == 1, "coroot pairs non-integrally"
                cor.append(int(val))
            unmult = tuple(2 * x for x in v) not in vec_set
            self.roots.append(Root(len(self.roots), wt, tuple(cor), nrm, -1, unmult))
        self._root_by_wt = {r.wt: r for r in self.roots}
        self.positive_roots = [r for r in self.roots if self._simple_sign(r.wt) > 0]
        self.r0_positive = [r for r in self.positive_roots if r.unmultipliable]
        self.simple_roots0 = [self._root_by_wt[tuple(self.cartan0[i][j]
                                                     for j in range(rank))]
                              for i in range(rank)]
        self.simple_roots = []
        for r0 in self.simple_roots0:
            half = None
            if all(x % 2 == 0 for x in r0.wt):
                half = self._root_by_wt.get(tuple(x // 2 for x in r0.wt))
            self.simple_roots.append(half if half is not None else r0)

    def _simple_sign(self, wt):
        s = [sum(self._w2s[i][j] * wt[j] for j in range(self.rank))
             for i in range(self.rank)]
        for x in s:
            if x > 0:
                return 1
            if x < 0:
                return -1
        return 0

    def _build_weyl(self):
        rank = self.rank
        gens = []
        for i, alpha in enumerate(self.simple_roots0):
            # s_i(mu) = mu - mu(alpha_i^vee) alpha_i, and mu(alpha_i^vee) = m_i
            mat = tuple(tuple((1 if r == c else 0) - (alpha.wt[r] if c == i else 0)
                              for c in range(rank)) for r in range(rank))
            gens.append(mat)
        self._gen_mats = gens
        ident = tuple(tuple(int(r == c) for c in range(rank)) for r in range(rank))
        self.w_mats = [ident]
        self.w_words = [()]
        index_of = {ident: 0}
        frontier = [0]
        while frontier:
            new = []
            for idx in frontier:
                for i, g in enumerate(gens):
                    m = tuple(tuple(sum(self.w_mats[idx][r][k] * g[k][c]
                                        for k in range(rank))
                                    for c in range(rank)) for r in range(rank))
                    if m not in index_of:
                        index_of[m] = len(self.w_mats)
                        self.w_mats.append(m)
                        self.w_words.append(self.w_words[idx] + (i,))
                        new.append(index_of[m])
            frontier = new
        self._w_index = index_of
        self.order = len(self.w_mats)
        self.w_inv = []
        for m in self.w_mats:
            inv = _mat_inv([list(r) for r in m])
            self.w_inv.append(index_of[tuple(tuple(int(x) for x in row)
                                             for row in inv)])
        self.longest_index = max(range(self.order),
                                 key=lambda i: len(self.w_words[i]))
        self._mult_cache = {}

    def _assign_orbits(self):
        orbit_of = {}
        orbits = []
        for r in self.roots:
            if r.wt in orbit_of:
                continue
            members = set()
            frontier = [r.wt]
            while frontier:
                wt = frontier.pop()
                if wt in members:
                    continue
                members.add(wt)
                for g in self._gen_mats:
                    frontier.append(self._apply(g, wt))
            orbits.append(sorted(members))
            for wt in members:
                orbit_of[wt] = len(orbits) - 1
        order = sorted(range(len(orbits)),
                       key=lambda i: (self._root_by_wt[orbits[i][0]].norm, orbits[i][0]))
        relabel = {old: new for new, old in enumerate(order)}
        self.roots = [Root(r.index, r.wt, r.coroot, r.norm,
                           relabel[orbit_of[r.wt]], r.unmultipliable)
                      for r in self.roots]
        self._root_by_wt = {r.wt: r for r in self.roots}
        self.positive_roots = [self._root_by_wt[r.wt] for r in self.positive_roots]
        self.r0_positive = [self._root_by_wt[r.wt] for r in self.r0_positive]
        self.simple_roots = [self._root_by_wt[r.wt] for r in self.simple_roots]
        self.simple_roots0 = [self._root_by_wt[r.wt] for r in self.simple_roots0]
        self.num_orbits = len(orbits)

    def _rho0(self):
        s = [0] * self.rank
        for r in self.r0_positive:
            for i in range(self.rank):
                s[i] += r.wt[i]
        assert all(x % 2 == 0 for x in s), "rho0 must lie in the weight lattice"
        return tuple(x // 2 for x in s)

    # -- Weyl group -------------------------------------------------------

    @staticmethod
    def _apply(mat, vec):
        return tuple(sum(row[j] * vec[j] for j in range(len(vec))) for row in mat)

    def w_act(self, idx, weight):
        return self._apply(self.w_mats[idx], weight)

    def w_act_vector(self, idx, vec):
        """Action on Cartan vectors (simple-coroot coordinates)."""
        m = self.w_mats[self.w_inv[idx]]
        return tuple(sum(m[j][i] * vec[j] for j in range(self.rank))
                     for i in range(self.rank))

    def w_mult(self, i, j):
        key = (i, j)
        idx = self._mult_cache.get(key)
        if idx is None:
            m = tuple(tuple(sum(self.w_mats[i][r][k] * self.w_mats[j][k][c]
                                for k in range(self.rank))
                            for c in range(self.rank)) for r in range(self.rank))
            idx = self._w_index[m]
            self._mult_cache[key] = idx
        return idx

    def weyl(self, idx):
        return WeylElement(self, idx)

    def weyl_elements(self):
        return [WeylElement(self, i) for i in range(self.order)]

    def simple_reflection(self, i):
        return WeylElement(self, self._w_index[self._gen_mats[i]])

    @property
    def longest(self):
        return WeylElement(self, self.longest_index)

    def length_by_inversions(self, idx):
        """#{alpha in R0_+ : w(alpha) < 0}; equals word length."""
        count = 0
        for r in self.r0_positive:
            if self._simple_sign(self.w_act(idx, r.wt)) < 0:
                count += 1
        return count

    def bruhat_leq(self, u_idx, w_idx):
        reach = self._bruhat_cache.get(w_idx)
        if reach is None:
            reach = {0}
            for letter in self.w_words[w_idx]:
                g = self.simple_reflection(letter).index
                add = set()
                for x in reach:
                    xs = self.w_mult(x, g)
                    if len(self.w_words[xs]) > len(self.w_words[x]):
                        add.add(xs)
                reach |= add
            self._bruhat_cache[w_idx] = reach
        return u_idx in reach

    # -- pairings ----------------------------------------------------------

    def inner(self, wt1, wt2):
        g = self.gram_wt
        return sum(wt1[i] * g[i][j] * wt2[j]
                   for i in range(self.rank) for j in range(self.rank))

    @staticmethod
    def pair(weight, covector):
        return sum(w * c for w, c in zip(weight, covector))

    def root(self, wt):
        return self._root_by_wt[tuple(wt)]

    def half(self, root):
        if all(x % 2 == 0 for x in root.wt):
            return self._root_by_wt.get(tuple(x // 2 for x in root.wt))
        return None

    def height(self, weight):
        dom, _ = self.dominant_rep(weight)
        return self.pair(dom, self.two_rho_vee)

    # -- multiplicities and rho(k) -----------------------------------------

    def rho(self, k):
        """rho(k) = (1/2) sum_{alpha > 0} k_alpha alpha in weight coords."""
        out = [k.domain_zero() for _ in range(self.rank)]
        for r in self.positive_roots:
            ka = k[r.orbit]
            for i in range(self.rank):
                if r.wt[i]:
                    out[i] = out[i] + ka * Fraction(r.wt[i], 2)
        return tuple(out)

    def spectral_vector(self, weight, k):
        """mu + w^mu(rho(k)) paired with each simple coroot of R0."""
        w = self.w_mu(weight)
        rho = self.rho(k)
        mat = self.w_mats[w.index]
        return tuple(weight[i]
                     + sum(mat[i][j] * rho[j] for j in range(self.rank))
                     for i in range(self.rank))

    # -- dominance, w_mu, ideals --------------------------------------------

    def is_dominant(self, weight):
        return all(x >= 0 for x in weight)

    def dominant_rep(self, weight):
        """(mu_plus, w_index) with w(mu_plus) = weight."""
        cur = tuple(weight)
        widx = 0
        while True:
            for i in range(self.rank):
                if cur[i] < 0:
                    cur = self._apply(self._gen_mats[i], cur)
                    widx = self.w_mult(widx, self.simple_reflection(i).index)
                    break
            else:
                return cur, widx

    def w_mu(self, weight):
        """Bruhat-maximal w with w(mu_plus) = mu."""
        key = tuple(weight)
        cached = self._wmu_cache.get(key)
        if cached is None:
            mu_plus, _ = self.dominant_rep(key)
            best = None
            for idx in range(self.order):
                if self.w_act(idx, mu_plus) == key:
                    if best is None or len(self.w_words[idx]) > len(self.w_words[best]):
                        best = idx
            cached = best
            self._wmu_cache[key] = cached
        return WeylElement(self, cached)

    def dominance_leq(self, nu, mu):
        """nu <= mu: mu - nu is a nonnegative rational combination of simples."""
        cols = [self.simple_roots[j].wt for j in range(self.rank)]
        a = [[Fraction(cols[j][i]) for j in range(self.rank)]
             for i in range(self.rank)]
        b = [Fraction(m - n) for n, m in zip(nu, mu)]
        coeffs = _solve(a, b)
        return coeffs is not None and all(c >= 0 for c in coeffs)

    def _fundamental_heights(self):
        return [self.two_rho_vee[i] for i in range(self.rank)]

    def dominants_below(self, lam):
        """Dominant weights <= lam, sorted by (height, coords)."""
        h = self.pair(lam, self.two_rho_vee)
        hts = self._fundamental_heights()
        found = []

        def rec(i, rem, partial):
            if i == self.rank:
                nu = tuple(partial)
                if self.dominance_leq(nu, lam):
                    found.append(nu)
                return
            for c in range(rem // hts[i] + 1):
                rec(i + 1, rem - c * hts[i], partial + [c])

        rec(0, h, [])
        found.sort(key=lambda nu: (self.pair(nu, self.two_rho_vee), nu))
        return found

    def dominants_up_to_height(self, height):
        hts = self._fundamental_heights()
        found = []

        def rec(i, rem, partial):
            if i == self.rank:
                found.append(tuple(partial))
                return
            for c in range(rem // hts[i] + 1):
                rec(i + 1, rem - c * hts[i], partial + [c])

        rec(0, height, [])
        found.sort(key=lambda nu: (self.pair(nu, self.two_rho_vee), nu))
        return found

    def orbit(self, dominant):
        return sorted({self.w_act(idx, dominant) for idx in range(self.order)})

    def _sort_key(self, nu):
        dom, _ = self.dominant_rep(nu)
        return (self.pair(dom, self.two_rho_vee), dom,
                len(self.w_mu(nu).word), nu)

    def order_ideal(self, mu):
        """All nu trianglelefteq mu, topologically sorted with mu last."""
        key = tuple(mu)
        cached = self._ideal_cache.get(key)
        if cached is None:
            mu_plus, _ = self.dominant_rep(key)
            wmu = self.w_mu(key)
            out = []
            for lam in self.dominants_below(mu_plus):
                if lam == mu_plus:
                    out.extend(nu for nu in self.orbit(lam)
                               if self.bruhat_leq(self.w_mu(nu).index, wmu.index))
                else:
                    out.extend(self.orbit(lam))
            out.sort(key=self._sort_key)
            assert out[-1] == key
            cached = tuple(out)
            self._ideal_cache[key] = cached
        return list(cached)

    def truncation(self, height):
        """Basis of the W-saturated span of all V_lam with ht(lam) <= height."""
        out = []
        for lam in self.dominants_up_to_height(height):
            out.extend(self.orbit(lam))
        out.sort(key=self._sort_key)
        return out

    def to_json(self):
        return {
            "label": self.label,
            "rank": self.rank,
            "non_reduced": self.non_reduced,
            "weyl_order": self.order,
            "roots": [{"wt": list(r.wt), "coroot": list(r.coroot),
                       "norm": str(r.norm), "orbit": r.orbit,
                       "unmultipliable": r.unmultipliable} for r in self.roots],
            "positive": [list(r.wt) for r in self.positive_roots],
            "simple": [list(r.wt) for r in self.simple_roots],
            "gram_weight_basis": [[str(x) for x in row] for row in self.gram_wt],
        }

    def __repr__(self):
        return "RootDatum(%s)" % self.label


_SUPPORTED = {"A": (1, 4), "B": (2, 4), "C": (2, 4), "D": (2, 4),
              "BC": (1, 4), "G": (2, 2), "F": (4, 4)}


def build(label, rank=None):
    """Construct a root datum from a Cartan label like "A2", "BC1", "G2"."""
    if rank is None:
        for fam in ("BC", "A", "B", "C", "D", "G", "F"):
            if label.upper().startswith(fam):
                family = fam
                try:
                    rank = int(label[len(fam):])
                except ValueError:
                    raise ValueError("cannot parse type label %r" % label)
                break
        else:
            raise ValueError("cannot parse type label %r" % label)
    else:
        family = label.upper()
    lo, hi = _SUPPORTED.get(family, (0, -1))
    if not lo <= rank <= hi:
        raise ValueError("unsupported type %s rank %d" % (family, rank))
    return RootDatum(family, rank)


class MultiplicityParam:
    """W-invariant root multiplicities: one scalar per root orbit.

    Orbits are numbered by increasing root length (then lexicographically),
    so for BC1 orbit 0 is the halved root and orbit 1 the unmultipliable one.
    """

    def __init__(self, datum, values, domain=None):
        self.datum = datum
        self.values = tuple(values)
        self.domain = domain
        if len(self.values) != datum.num_orbits:
            raise ValueError("expected %d orbit values" % datum.num_orbits)

    @staticmethod
    def symbolic(datum, names=None):
        if names is None:
            names = ["k%d" % i for i in range(datum.num_orbits)]
        dom = ParameterField(names)
        return MultiplicityParam(datum, dom.gens(), dom)

    @staticmethod
    def of(datum, *values):
        return MultiplicityParam(datum, [Fraction(v) for v in values], None)

    def domain_zero(self):
        return self.domain.zero if self.domain else Fraction(0)

    def domain_one(self):
        return self.domain.one if self.domain else Fraction(1)

    def coerce(self, x):
        if self.domain:
            return self.domain.coerce(x)
        return Fraction(x)

    def __getitem__(self, orbit):
        return self.values[orbit]

    def of_root(self, root):
        return self.values[root.orbit]

    def k0(self, root):
        """k_alpha + (1/2) k_{alpha/2} for unmultipliable alpha."""
        if not root.unmultipliable:
            raise ValueError("k0 is defined for unmultipliable roots")
        val = self.values[root.orbit]
        half = self.datum.half(root)
        if half is not None:
            val = val + self.values[half.orbit] * Fraction(1, 2)
        return val

    def shifted(self, amount):
        """The basic translation: adds `amount` on unmultipliable orbits only."""
        unmult = {r.orbit for r in self.datum.roots if r.unmultipliable}
        vals = [v + amount if o in unmult else v
                for o, v in enumerate(self.values)]
        return MultiplicityParam(self.datum, vals, self.domain)

    def is_integral(self):
        return self.domain is None and all(
            v.denominator == 1 and v >= 0 for v in self.values)

    def in_compact_cone(self):
        """k in K^T_+: k_alpha >= 0 and k_alpha + k_{alpha/2} >= 0 over R0."""
        if self.domain is not None:
            raise ValueError("membership needs specialized values")
        for r in self.r0():
            half = self.datum.half(r)
            kh = self.of_root(half) if half else Fraction(0)
            if self.of_root(r) < 0 or self.of_root(r) + kh < 0:
                return False
        return True

    def in_split_cone(self):
        """k in K^A_+: k_alpha + k_{alpha/2} >= 0 over R0."""
        if self.domain is not None:
            raise ValueError("membership needs specialized values")
        for r in self.r0():
            half = self.datum.half(r)
            kh = self.of_root(half) if half else Fraction(0)
            if self.of_root(r) + kh < 0:
                return False
        return True

    def r0(self):
        return [r for r in self.datum.roots if r.unmultipliable]

    def specialize_scalar(self, scalar, values):
        """Evaluate a symbolic scalar of this parameter's domain at numbers."""
        if self.domain is None:
            return Fraction(scalar)
        assignment = {name: Fraction(v)
                      for name, v in zip(self.domain.names, values)}
        return scalar.subs(assignment)

    def __repr__(self):
        return "k(%s)" % ", ".join("orbit%d=%s" % (i, v)
                                   for i, v in enumerate(self.values))
