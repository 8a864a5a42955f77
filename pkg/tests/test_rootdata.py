from fractions import Fraction

import pytest

from cherednik import MultiplicityParam, build


def test_build_a1():
    rd = build("A1")
    assert [r.wt for r in rd.positive_roots] == [(2,)]
    assert rd.roots[0].unmultipliable
    # P = Z alpha/2: the fundamental weight is alpha/2
    assert rd.rho0_wt == (1,)
    assert rd.order == 2


def test_build_bc1():
    rd = build("BC1")
    assert len(rd.roots) == 4
    wts = sorted(r.wt for r in rd.roots)
    assert wts == [(-2,), (-1,), (1,), (2,)]
    half = rd.root((1,))
    full = rd.root((2,))
    assert not half.unmultipliable and full.unmultipliable
    assert rd.half(full) == half
    # coroots: (alpha/2)^vee = 2 alpha^vee
    assert half.coroot == (2,)
    assert full.coroot == (1,)
    assert rd.order == 2


def test_build_a2_weyl():
    rd = build("A2")
    assert rd.order == 6
    assert rd.longest.length == 3
    # length equals inversion count for every element
    for w in rd.weyl_elements():
        assert w.length == rd.length_by_inversions(w.index)


@pytest.mark.parametrize("label,count,order", [
    ("A1", 2, 2), ("A2", 6, 6), ("A3", 12, 24), ("B2", 8, 8),
    ("C3", 18, 48), ("D4", 24, 192), ("G2", 12, 12), ("BC2", 16 - 4, 8),
])
def test_root_counts(label, count, order):
    rd = build(label)
    assert len(rd.roots) == count
    assert rd.order == order


def test_unsupported_types():
    with pytest.raises(ValueError):
        build("E8")
    with pytest.raises(ValueError):
        build("A9")
    with pytest.raises(ValueError):
        build("G3")


def test_reflection_closure_and_integrality():
    for label in ("A2", "B2", "BC1", "G2"):
        rd = build(label)
        for r in rd.roots:
            for i in range(rd.rank):
                img = rd.w_act(rd.simple_reflection(i).index, r.wt)
                assert img in rd._root_by_wt
        # weights pair integrally with coroots by construction (int coords)
        for r in rd.roots:
            assert all(isinstance(c, int) for c in r.coroot)


def test_rho():
    rd = build("A1")
    k = MultiplicityParam.symbolic(rd)
    rho = rd.rho(k)
    # rho(k) = k alpha/2, i.e. (k,) in fundamental-weight coordinates
    assert rho[0] == k[0]
    bc = build("BC1")
    kbc = MultiplicityParam.symbolic(bc)
    rho = bc.rho(kbc)
    # (1/2)(k_{a/2} (a/2) + k_a a) in units of alpha/2
    assert rho[0] == kbc[0] * Fraction(1, 2) + kbc[1]
    a2 = build("A2")
    ka2 = MultiplicityParam.of(a2, 1)
    assert a2.rho(ka2) == (1, 1)   # rho = alpha1 + alpha2 = (1,1) in weights


def test_w_mu():
    rd = build("A2")
    # strictly dominant weights have trivial stabilizer and w_mu = e
    assert rd.w_mu((2, 1)).index == 0
    assert rd.w_mu((0, 0)) == rd.longest
    a1 = build("A1")
    assert a1.w_mu((-1,)).length == 1
    # w_mu(mu)(mu_plus) = mu on a sample of weights
    for mu in rd.truncation(6):
        w = rd.w_mu(mu)
        mu_plus, _ = rd.dominant_rep(mu)
        assert rd.w_act(w.index, mu_plus) == tuple(mu)


def test_order_ideal_examples():
    a1 = build("A1")
    assert a1.order_ideal((1,)) == [(0,), (1,)]
    assert a1.order_ideal((-1,)) == [(0,), (1,), (-1,)]
    assert a1.order_ideal((0,)) == [(0,)]


def test_order_ideal_downward_closed():
    rd = build("A2")
    ideal = rd.order_ideal((-1, -1))
    seen = set(ideal)
    for nu in ideal:
        assert set(rd.order_ideal(nu)) <= seen


def test_truncation_w_saturated():
    rd = build("B2")
    basis = set(rd.truncation(4))
    for nu in basis:
        for idx in range(rd.order):
            assert rd.w_act(idx, nu) in basis


def test_bruhat_subword():
    rd = build("A2")
    e = 0
    w0 = rd.longest_index
    for idx in range(rd.order):
        assert rd.bruhat_leq(e, idx)
        assert rd.bruhat_leq(idx, w0)
    s1 = rd.simple_reflection(0).index
    s2 = rd.simple_reflection(1).index
    assert not rd.bruhat_leq(s1, s2)


def test_multiplicity_params():
    bc = build("BC1")
    k = MultiplicityParam.of(bc, 1, 2)
    full = bc.root((2,))
    assert k.k0(full) == Fraction(5, 2)   # k_a + k_{a/2}/2
    shifted = k.shifted(1)
    assert shifted.values == (Fraction(1), Fraction(3))
    assert k.in_compact_cone() and k.in_split_cone()
    neg = MultiplicityParam.of(bc, -3, 1)
    assert not neg.in_compact_cone()


def test_height_and_json():
    bc = build("BC1")
    assert [bc.height((m,)) for m in (-3, 0, 2)] == [3, 0, 2]
    data = bc.to_json()
    assert data["weyl_order"] == 2 and data["non_reduced"]
