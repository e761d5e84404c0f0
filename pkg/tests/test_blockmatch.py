from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qlcomb.affweyl import affine_weyl_group
from qlcomb.blockmatch import (DualityContext, LevelNotGood, PositiveLevel, appendix_dual_weight,
                               appendix_shift, bruhat_dominance_check, dominance_leq,
                               enumerate_blocks, match_blocks, parahoric_subset_check,
                               weight_of)
from qlcomb.intweyl import AffineCoroot, integral_coroots_for_twist
from qlcomb.levels import Level, parse_level
from qlcomb.rootdata import all_simple_types, build_root_datum


def ctx_for(label, text):
    return DualityContext(parse_level(text), build_root_datum(label))


# ----- weights -------------------------------------------------------------


def test_weight_examples():
    G = affine_weyl_group(build_root_datum("A2"))
    assert weight_of(G.identity) == (-1, -1)
    assert weight_of(G.translation((2, -1))) == (-3, 0)


def test_weight_classifies_left_cosets():
    G = affine_weyl_group(build_root_datum("A2"))
    ball = G.enumerate_ball(5)
    for x in ball:
        coset = {G.mul(x, u) for u in G.finite_elements()}
        for y in ball:
            assert (weight_of(x) == weight_of(y)) == (y in coset)


@pytest.mark.parametrize("label,text", [("A1", "-h-1/3"), ("A2", "-h-1/3"), ("B2", "-h-1/3"),
                                        ("G2", "-h-1/5"), ("A2", "irr")])
def test_weight_intertwines_dual_dot_action(label, text):
    ctx = ctx_for(label, text)
    G, Gd = ctx.G, ctx.Gd
    for x in G.enumerate_ball(5):
        nu = weight_of(x)
        for s, t in zip(ctx.W.simple_reflections, ctx.transported):
            assert weight_of(G.mul(s, x)) == tuple(Gd.dot_action(t, nu, ctx.dual_level))


def test_dominance_leq():
    d = build_root_datum("A2")
    assert dominance_leq((0, 0), (2, -1), d)
    assert not dominance_leq((2, -1), (0, 0), d)
    assert not dominance_leq((0, 0), (1, 0), d)


# ----- blocks --------------------------------------------------------------


@pytest.mark.parametrize("label,text", [("A1", "-h-1/3"), ("A2", "-h-2/5"), ("B2", "-h-1/3"),
                                        ("G2", "-h-1/5"), ("A2", "irr")])
def test_block_properties(label, text):
    d = build_root_datum(label)
    blocks = enumerate_blocks(parse_level(text), d, 7)
    G = affine_weyl_group(d)
    assert blocks[0].y == G.identity
    assert blocks[0].stabilizer == list(range(d.rank))
    seen = set()
    for b in blocks:
        assert b.y in b.window
        for x in b.window:
            assert x not in seen
            seen.add(x)
        if b.certified:
            assert b.unique_minimum and b.positivity and b.parabolic and b.minimum_below_window
    assert seen == set(G.enumerate_ball(7))


def test_a1_third_positivity():
    blocks = enumerate_blocks(parse_level("-h+1/3"), build_root_datum("A1"), 6)
    assert all(b.positivity for b in blocks)


def test_irrational_blocks_have_antidominant_labels():
    d = build_root_datum("A2")
    G = affine_weyl_group(d)
    blocks = enumerate_blocks(parse_level("irr"), d, 6)
    labels = set()
    for b in blocks:
        v = tuple(a + 1 for a in b.weight)  # -w(mu), antidominant
        assert all(a <= 0 for a in v)
        labels.add(v)
        # y = w t^mu is the shortest element of W_f t^{w(mu)} W_f
        t = G.translation(tuple(-a for a in v))
        dc = {G.mul(G.mul(u, t), w) for u in G.finite_elements() for w in G.finite_elements()}
        assert b.y in dc
        assert G.length(b.y) == min(G.length(z) for z in dc)
    assert len(labels) == len(blocks)


def test_frozen_a2_blocks():
    blocks = enumerate_blocks(parse_level("-h-1/3"), build_root_datum("A2"), 6)
    got = [(b.weight, tuple(b.stabilizer), b.certified) for b in blocks]
    assert got == [((-1, -1), (0, 1), True), ((-2, -1), (1,), True), ((-1, -2), (0,), True),
                   ((-2, -2), (), True), ((-1, -3), (0,), True), ((-3, -1), (1,), True),
                   ((-3, -2), (2,), True), ((-2, -3), (2,), True), ((-1, -4), (0, 2), False),
                   ((-4, -1), (1, 2), False)]


# ----- Bruhat / weight / root --------------------------------------------------


def test_bruhat_triple_at_identity():
    ctx = ctx_for("A2", "-h-1/3")
    for c in integral_coroots_for_twist((0, 0), ctx.dual_level, ctx.dual, 3):
        assert bruhat_dominance_check(ctx.G.identity, c, ctx) == (True, True, True)


def test_bruhat_triple_negative_case():
    ctx = ctx_for("A1", "-h-1/3")
    x = ctx.G.parse_element("w=[] t=(-1)")
    assert bruhat_dominance_check(x, AffineCoroot(0, 0), ctx) == (False, False, False)


@pytest.mark.parametrize("text", ["-h-1/3", "-h-3/4", "irr"])
def test_bruhat_triple_a1(text):
    ctx = ctx_for("A1", text)
    cor = integral_coroots_for_twist((0,), ctx.dual_level, ctx.dual, 4)
    seen = set()
    for x in ctx.G.enumerate_ball(8):
        for c in cor:
            r = bruhat_dominance_check(x, c, ctx)
            assert len(set(r)) == 1
            seen.add(r)
    assert seen == {(True, True, True), (False, False, False)}


def test_bruhat_triple_refuses_positive():
    with pytest.raises(PositiveLevel):
        bruhat_dominance_check(affine_weyl_group(build_root_datum("A1")).identity,
                               AffineCoroot(0, 0), ctx_for("A1", "-h+1/3"))


# ----- match -------------------------------------------------------------------


def test_match_a1():
    rep = match_blocks(parse_level("-h-1/3"), build_root_datum("A1"), 8)
    d = rep.to_dict()
    assert d["summary"] == {"verdict": "MATCH", "blocks": 4, "certified": 4, "matched": 4}
    assert [b["weight"] for b in d["blocks"]] == [["-1"], ["-2"], ["-3"], ["-4"]]


def test_match_neutral_block_integral():
    d = build_root_datum("B2")
    rep = match_blocks(Level.from_multiple(-5, d), d, 6)
    first = rep.blocks[0]
    assert first["weight"] == ["-1", "-1"]
    assert first["stabilizer"] == first["dual_stabilizer"] == [0, 1]
    assert rep.verdict == "MATCH"


@pytest.mark.parametrize("label", ["A1", "A2", "G2"])
def test_match_irrational(label):
    rep = match_blocks(parse_level("irr"), build_root_datum(label), 6)
    assert rep.verdict == "MATCH"
    for b in rep.blocks:
        assert all(i < build_root_datum(label).rank for i in b["stabilizer"])


@given(st.sampled_from(["A1", "A2", "B2"]), st.integers(1, 14), st.integers(1, 7))
def test_match_random_good_levels(label, p, q):
    d = build_root_datum(label)
    k = Level.rational(-Fraction(p, q))
    if label == "B2" and k.q % 2 == 0:
        with pytest.raises(LevelNotGood):
            match_blocks(k, d, 4)
        return
    assert match_blocks(k, d, 5).verdict == "MATCH"


def test_match_errors():
    with pytest.raises(PositiveLevel, match="dualize first"):
        match_blocks(parse_level("-h+1/3"), build_root_datum("A1"), 4)
    with pytest.raises(LevelNotGood, match="G2"):
        match_blocks(parse_level("-h-1/2"), build_root_datum("G2"), 4)
    with pytest.raises(ValueError):
        match_blocks(parse_level("-h"), build_root_datum("A1"), 4)


# ----- parahoric ---------------------------------------------------------------


def test_parahoric_iwahori():
    d = build_root_datum("A2")
    G = affine_weyl_group(d)
    rep = parahoric_subset_check([], d, 6)
    assert rep.equal
    core_max = {G.format_element(x) for x in G.enumerate_ball(6)
                if G.max_coset_rep(x) == x and G.length(x) <= 6}
    assert set(rep.A) == core_max


@pytest.mark.parametrize("label,J,L", [("A1", [0], 8), ("A2", [0], 6), ("A2", [1], 6),
                                       ("B2", [0], 6), ("B2", [0, 1], 7)])
def test_parahoric_equal(label, J, L):
    rep = parahoric_subset_check(J, build_root_datum(label), L)
    assert rep.equal
    assert rep.to_dict()["equal"]


def test_parahoric_spherical_a1_frozen():
    rep = parahoric_subset_check([0], build_root_datum("A1"), 8)
    assert rep.C == [f"w=[0] t=({n})" for n in range(1, 8)]


# ----- weight duality ---------------------------------------------------------


def coroot_height_sum(d):
    return sum(sum(c) for c in d.positive_coroots)


@pytest.mark.parametrize("letter,n", all_simple_types(8))
def test_weight_duality(letter, n):
    d = build_root_datum(letter, n)
    assert appendix_shift(d) == coroot_height_sum(d)
    rc = d.rho_check
    assert appendix_dual_weight(tuple(-a for a in rc), d) == tuple(-a for a in rc)
    lam = tuple(range(-n, 0))
    assert appendix_dual_weight(appendix_dual_weight(lam, d), d) == lam


def test_duality_shift_a1():
    assert appendix_shift(build_root_datum("A1")) == 1
