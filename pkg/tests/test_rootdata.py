from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qlcomb.rootdata import all_simple_types, build_root_datum, langlands_dual, pairing

ALL = all_simple_types(8)
SMALL = [t for t in ALL if t[1] <= 4]

# Classical values, used only as a cross-check of the trace-form computation.
H_DUAL = {("E", 6): 12, ("E", 7): 18, ("E", 8): 30, ("F", 4): 9, ("G", 2): 4}


def expected_h_dual(letter, n):
    if (letter, n) in H_DUAL:
        return H_DUAL[(letter, n)]
    return {"A": n + 1, "B": 2 * n - 1, "C": n + 1, "D": 2 * n - 2}[letter]


def weyl_group_order(d):
    """Orbit-stabilizer on a regular weight: |W rho| = |W|."""
    seen = {d.rho}
    frontier = [d.rho]
    while frontier:
        nxt = []
        for lam in frontier:
            for i in range(d.ss_rank):
                mu = d.reflect_weight(i, lam)
                if mu not in seen:
                    seen.add(mu)
                    nxt.append(mu)
        frontier = nxt
    return len(seen)


WEYL_ORDERS = {("A", 1): 2, ("A", 2): 6, ("A", 3): 24, ("A", 4): 120, ("B", 2): 8, ("B", 3): 48,
               ("B", 4): 384, ("C", 3): 48, ("D", 4): 192, ("F", 4): 1152, ("G", 2): 12}


@pytest.mark.parametrize("letter,n", ALL)
def test_constants(letter, n):
    d = build_root_datum(letter, n)
    assert d.dual_coxeter_number == expected_h_dual(letter, n)
    assert 2 * d.n_positive == d.coxeter_number * n
    assert d.lacing_number == {"B": 2, "C": 2, "F": 2, "G": 3}.get(letter, 1)


@pytest.mark.parametrize("letter,n", ALL)
def test_cartan_pairing(letter, n):
    d = build_root_datum(letter, n)
    for i in range(n):
        for j in range(n):
            alpha = d.root_to_weight(d.roots[i])
            cor = d.coroot_to_coweight(d.coroots[j])
            assert d.pairing(alpha, cor) == d.cartan[j][i]


@pytest.mark.parametrize("letter,n", ALL)
def test_theta_and_rho(letter, n):
    d = build_root_datum(letter, n)
    ts, tl = d.theta_check
    assert all(x >= 1 for x in ts) and all(x >= 1 for x in tl)
    half = [Fraction(sum(r[i] for r in d.positive_roots), 2) for i in range(n)]
    assert tuple(d.root_to_weight(half)) == d.rho
    half_c = [Fraction(sum(c[i] for c in d.positive_coroots), 2) for i in range(n)]
    assert tuple(d.coroot_to_coweight(half_c)) == d.rho_check
    for i in range(n):
        e = d.coroot_to_coweight(tuple(int(i == j) for j in range(n)))
        assert d.pairing(d.rho, e) == 1


@pytest.mark.parametrize("letter,n", ALL)
def test_forms(letter, n):
    d = build_root_datum(letter, n)
    h = d.dual_coxeter_number
    basic, crit = d.basic_gram(), d.critical_gram()
    assert all(c == -h * b for rb, rc in zip(basic, crit) for b, c in zip(rb, rc))
    assert min(d.coroot_sq_basic(d.coroots[i]) for i in range(n)) == 2
    for c in d.positive_coroots:
        mu = d.coroot_to_coweight(c)
        k = sum(mu[i] * crit[i][j] * mu[j] for i in range(n) for j in range(n))
        assert k / d.coroot_sq_basic(c) == -h


@pytest.mark.parametrize("letter,n", [t for t in SMALL if t in WEYL_ORDERS])
def test_weyl_group_order(letter, n):
    assert weyl_group_order(build_root_datum(letter, n)) == WEYL_ORDERS[(letter, n)]


def test_examples():
    a1 = build_root_datum("A", 1)
    assert a1.n_positive == 1 and a1.dual_coxeter_number == 2 and a1.lacing_number == 1
    assert a1.theta_check == ((1,), (1,))
    g2 = build_root_datum("G", 2)
    assert g2.n_positive == 6 and g2.lacing_number == 3
    # <theta_s, rho_check> = h - 1 for the highest short root
    ts = g2.root_to_weight(g2.theta_roots[0])
    tl = g2.root_to_weight(g2.theta_roots[1])
    assert pairing(g2, tl, g2.rho_check) == g2.coxeter_number - 1
    assert pairing(g2, ts, g2.rho_check) == 3
    with pytest.raises(ValueError):
        build_root_datum("A", 0)
    with pytest.raises(ValueError):
        build_root_datum("E", 5)
    with pytest.raises(ValueError):
        pairing(a1, (1, 2), (1,))


def test_langlands_dual():
    b2 = build_root_datum("B", 2)
    c2 = langlands_dual(b2)
    assert c2.type_label == "C2"
    assert c2.cartan == tuple(zip(*b2.cartan))
    assert langlands_dual(build_root_datum("A", 3)).cartan == build_root_datum("A", 3).cartan
    f4 = build_root_datum("F", 4)
    assert langlands_dual(langlands_dual(f4)) == f4


@pytest.mark.parametrize("letter,n", SMALL)
def test_dual_swaps_roots(letter, n):
    d = build_root_datum(letter, n)
    dd = langlands_dual(d)
    assert sorted(dd.positive_roots) == sorted(d.positive_coroots)
    assert sorted(dd.positive_coroots) == sorted(d.positive_roots)


def test_products():
    d = build_root_datum("A1xB2xT1")
    assert d.rank == 4 and d.ss_rank == 3 and d.n_positive == 5
    assert not d.is_simple


@given(st.sampled_from(SMALL), st.data())
def test_pairing_bilinear(t, data):
    d = build_root_datum(*t)
    n = d.rank
    vec = st.lists(st.integers(-5, 5), min_size=n, max_size=n).map(tuple)
    a, b, mu = data.draw(vec), data.draw(vec), data.draw(vec)
    s = tuple(x + y for x, y in zip(a, b))
    assert d.pairing(s, mu) == d.pairing(a, mu) + d.pairing(b, mu)


@given(st.sampled_from(SMALL), st.data())
def test_reflections_preserve_root_system(t, data):
    d = build_root_datum(*t)
    i = data.draw(st.integers(0, d.rank - 1))
    roots = {d.root_to_weight(r) for r in d.roots}
    assert {d.reflect_weight(i, r) for r in roots} == roots
