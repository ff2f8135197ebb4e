from fractions import Fraction

import pytest

from radsym.modgroup import (
    Cusp,
    Family,
    GroupElement,
    GroupId,
    I2,
    Motion,
    S,
    T,
    atkin_lehner,
    atkin_lehner_exponents,
    classify,
    cosets,
    cusp_equivalent,
    cusp_stabilizer_generator,
    cusp_width,
    cusps,
    evaluate_word,
    member,
    parabolic_power,
    parse_matrix,
    schreier_generators,
    schreier_rewrite,
    word_decompose,
)

from conftest import random_in_group, random_sl2z


# -- elements ---------------------------------------------------------------


def test_parse_matrix():
    g = parse_matrix("1,2,3,7")
    assert g.entries() == (1, 2, 3, 7)
    w = parse_matrix("0,-1,11,0;11")
    assert w.e == 11
    with pytest.raises(ValueError):
        parse_matrix("1,2,3")


def test_group_law():
    assert T * S == GroupElement(1, -1, 1, 0)
    g = GroupElement(3, 2, 4, 3)
    assert (g * g.inverse()).canonical() == I2
    assert g ** 3 == g * g * g
    assert g ** -2 == (g.inverse()) ** 2
    assert g.conjugate_by(S) == S * g * S.inverse()


def test_projective_canonical():
    g = GroupElement(3, 2, 4, 3)
    assert (-g).canonical() == g.canonical()


def test_determinant_check():
    with pytest.raises(ValueError):
        GroupElement(1, 0, 0, 2)


def test_classify():
    assert classify(I2).tag is Motion.IDENTITY
    assert classify(-I2).tag is Motion.IDENTITY
    assert classify(S).tag is Motion.ELLIPTIC
    assert classify(S).order == 2
    assert classify(S * T).tag is Motion.ELLIPTIC
    assert classify(S * T).order == 3
    assert classify(T).tag is Motion.PARABOLIC
    assert classify(GroupElement(2, 1, 1, 1)).tag is Motion.HYPERBOLIC


def test_word_decompose_roundtrip(rng):
    for _ in range(100):
        g = random_sl2z(rng)
        w = word_decompose(g)
        assert evaluate_word(w).canonical() == g.canonical()


# -- membership -------------------------------------------------------------


def test_member():
    assert member(GroupElement(3, 2, 4, 3), GroupId.gamma(2))
    assert not member(GroupElement(2, 1, 1, 1), GroupId.gamma(2))
    assert member(GroupElement(1, 1, 11, 12), GroupId.gamma0(11))
    assert not member(GroupElement(2, 1, 1, 1), GroupId.gamma0(11))
    assert member(GroupElement(12, 1, 11, 1), GroupId.gamma1(11))
    assert not member(GroupElement(2, 1, 11, 6), GroupId.gamma1(11))
    w = atkin_lehner(11, 11)
    assert member(w, GroupId.gamma0_plus(11))
    assert not member(w, GroupId.gamma0(11))


def test_psl2z_index():
    assert GroupId.sl2z().psl2z_index() == 1
    assert GroupId.gamma(2).psl2z_index() == 6
    assert GroupId.gamma(5).psl2z_index() == 60
    assert GroupId.gamma0(11).psl2z_index() == 12
    assert GroupId.gamma1(5).psl2z_index() == 12
    assert GroupId.gamma0_plus(11).psl2z_index() == 6


# -- cusps ------------------------------------------------------------------


def test_cusp_parsing_and_str():
    assert Cusp.from_str("inf").is_infinity
    assert Cusp.from_str("3/6") == Cusp(1, 2)
    assert Cusp.from_str("0") == Cusp(0, 1)
    assert str(Cusp(1, 0)) == "inf"
    assert str(Cusp(1, 2)) == "1/2"


def test_cusp_base_matrix():
    for cu in [Cusp(0, 1), Cusp(1, 2), Cusp(3, 7), Cusp(1, 0)]:
        b = cu.base_matrix()
        assert b.e == 1
        assert b.apply_cusp(Cusp.infinity()) == cu


def test_cusp_counts():
    assert len(cusps(GroupId.sl2z())) == 1
    assert len(cusps(GroupId.gamma(2))) == 3
    assert len(cusps(GroupId.gamma(4))) == 6
    assert len(cusps(GroupId.gamma0(11))) == 2
    assert len(cusps(GroupId.gamma0(12))) == 6
    assert len(cusps(GroupId.gamma1(5))) == 4
    assert len(cusps(GroupId.gamma0_plus(11))) == 1


def test_cusp_widths_sum_to_index():
    for G in [GroupId.gamma(3), GroupId.gamma0(11), GroupId.gamma0(12),
              GroupId.gamma1(5)]:
        total = sum(w for _c, w, _s in cusps(G))
        assert total == G.psl2z_index()


def test_gamma0_11_cusp_widths():
    G = GroupId.gamma0(11)
    assert cusp_width(G, Cusp.infinity()) == 1
    assert cusp_width(G, Cusp(0, 1)) == 11


def test_cusp_equivalence():
    G = GroupId.gamma0(11)
    assert cusp_equivalent(G, Cusp.infinity(), Cusp(0, 1)) is None
    tau = cusp_equivalent(G, Cusp(1, 11), Cusp.infinity())
    assert tau is not None and member(tau, G)
    assert tau.apply_cusp(Cusp(1, 11)) == Cusp.infinity()
    # under the Fricke involution 0 and infinity merge
    Gp = GroupId.gamma0_plus(11)
    assert cusp_equivalent(Gp, Cusp.infinity(), Cusp(0, 1)) is not None


def test_cusp_stabilizer_generator():
    G = GroupId.gamma0(11)
    assert cusp_stabilizer_generator(G, Cusp.infinity()) == T
    gen = cusp_stabilizer_generator(G, Cusp(0, 1))
    assert classify(gen).tag is Motion.PARABOLIC
    assert member(gen, G)
    cu, k = parabolic_power(G, gen ** 3)
    assert cu == Cusp(0, 1) and k == 3


# -- cosets and generators --------------------------------------------------


def test_coset_counts():
    assert len(cosets(GroupId.gamma(2), GroupId.sl2z())) == 6
    assert len(cosets(GroupId.gamma0(11), GroupId.sl2z())) == 12
    assert len(cosets(GroupId.gamma(4), GroupId.gamma0(4))) == \
        GroupId.gamma(4).psl2z_index() // GroupId.gamma0(4).psl2z_index()
    assert len(cosets(GroupId.gamma0(11), GroupId.gamma0_plus(11))) == 2


def test_cosets_are_distinct():
    G1 = GroupId.gamma(3)
    reps = cosets(G1, GroupId.sl2z())
    for i, r in enumerate(reps):
        for sdx in range(i + 1, len(reps)):
            assert not member(r * reps[sdx].inverse(), G1)


def test_schreier_generators_generate(rng):
    for G in [GroupId.gamma(2), GroupId.gamma0(11), GroupId.gamma1(5)]:
        gens = schreier_generators(G)
        for g in gens:
            assert member(g, G)
        for _ in range(20):
            g = random_in_group(rng, G)
            factors = schreier_rewrite(G, g)
            prod = GroupElement.identity()
            for f in factors:
                prod = prod * f
            assert prod.canonical() == g.canonical()


def test_atkin_lehner():
    for N in [6, 10, 11, 12]:
        for e in atkin_lehner_exponents(N):
            w = atkin_lehner(N, e)
            assert w.e == e
            # normalizes Gamma0(N)
            g = GroupElement(1, 1, 0, 1) * GroupElement(1, 0, N, 1)
            assert member(g.conjugate_by(w), GroupId.gamma0(N))
            # involution modulo Gamma0(N)
            assert member((w * w).reduced(), GroupId.gamma0(N))
