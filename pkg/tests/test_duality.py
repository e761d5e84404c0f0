from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qlcomb.affweyl import affine_weyl_group
from qlcomb.duality import MembershipError, duality_map, lattice_images, verify_coxeter_iso
from qlcomb.intweyl import integral_weyl_group
from qlcomb.levels import DegenerateLevelError, Level, dual_level, parse_level
from qlcomb.rootdata import build_root_datum, langlands_dual

TYPES = ["A1", "A2", "B2", "C2", "G2", "B3", "C3"]


def test_b2_half():
    rep = verify_coxeter_iso(parse_level("-h+1/2"), build_root_datum("B2"), ball=4)
    assert rep.ok and rep.to_dict()["verdict"] == "MATCH"
    assert rep.dual_level == "-h+1"


@pytest.mark.parametrize("label", TYPES)
@pytest.mark.parametrize("text", ["-h+1/3", "-h-2/5", "-h+3/4", "-h-1", "-h+5/6", "irr"])
def test_iso(label, text):
    rep = verify_coxeter_iso(parse_level(text), build_root_datum(label), ball=3)
    assert rep.ok, rep.failures


@pytest.mark.parametrize("label", TYPES)
def test_generators_go_to_generators(label):
    d = build_root_datum(label)
    for text in ["-h-1/3", "-h+2/3", "-h-5/2"]:
        k = parse_level(text)
        W = integral_weyl_group(k, d)
        Wd = integral_weyl_group(dual_level(k, d), langlands_dual(d))
        assert [duality_map(s, k, d) for s in W.simple_reflections] == Wd.simple_reflections


@given(st.sampled_from(["A2", "B2", "G2"]), st.integers(-9, 9).filter(bool), st.integers(1, 6),
       st.lists(st.integers(0, 2), max_size=5), st.lists(st.integers(0, 2), max_size=5))
def test_homomorphism(label, p, q, w1, w2):
    d = build_root_datum(label)
    k = Level.rational(Fraction(p, q))
    W = integral_weyl_group(k, d)
    G = W.ambient
    x, y = G.identity, G.identity
    for i in w1:
        x = G.mul(x, W.simple_reflections[i])
    for i in w2:
        y = G.mul(y, W.simple_reflections[i])
    Gd = affine_weyl_group(langlands_dual(d))
    assert duality_map(G.mul(x, y), k, d) == Gd.mul(duality_map(x, k, d), duality_map(y, k, d))


def test_translation_image_a1():
    d = build_root_datum("A1")
    k = parse_level("-h-1/3")
    G = affine_weyl_group(d)
    t = G.translation((6,))  # 3 coroot
    img = duality_map(t, k, d)
    # eps * offset = 1/3 and kappa_b(3 coroot) = 3 alpha, so the image is the dual coroot
    assert img.t == (2,)
    assert lattice_images(k, d) == [(1,)]


def test_membership_errors():
    d = build_root_datum("A1")
    G = affine_weyl_group(d)
    with pytest.raises(MembershipError):
        duality_map(G.translation((2,)), parse_level("-h+1/3"), d)
    with pytest.raises(MembershipError):
        duality_map(G.translation((2,)), parse_level("irr"), d)
    with pytest.raises(DegenerateLevelError):
        duality_map(G.identity, parse_level("-h"), d)
    assert duality_map(G.simple_reflections[0], parse_level("irr"), d).w == G.simple_reflections[0].w
