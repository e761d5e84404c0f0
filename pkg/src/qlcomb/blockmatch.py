"""Blocks W_{g,kappa} \\ W-tilde / W_f and the stabilizer match across duality.

Weights: ``x = w t^mu`` is sent to ``x . (-rho_check) = -w(mu) - rho_check``
(W_f by the dot action, mu by translation by -mu).  The map is constant on
x W_f and identifies W-tilde / W_f with the coweight lattice.  Left
multiplication by W_{g,kappa} becomes, through the duality map, the dot
action of W_{g-dual,kappa-dual} at the dual level.

Weights are compared in the affine order: the move ``nu -> s . nu`` for a
dual reflection s with positive affine root ``gamma + n delta`` subtracts
``m (gamma + n delta)``, and it goes up iff that difference is a
nonnegative combination of the dual affine simple roots.  Projecting to
the finite part alone reverses the comparison for roots with negative
finite part, such as the affine simple root.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import floor

from .affweyl import affine_weyl_group
from .duality import duality_map
from .goodness import is_good_table
from .intweyl import coroot_pairing, integral_weyl_group
from .levels import classify_sign, dual_level
from .rootdata import langlands_dual


class LevelNotGood(ValueError):
    pass


class PositiveLevel(ValueError):
    pass


def weight_of(x):
    """x . (-rho_check) in fundamental-coweight coordinates."""
    G = x.group
    moved = G.act_coweight(x.w, x.t)
    return tuple(-a - 1 for a in moved)


def dominance_leq(a, b, datum):
    """a <= b in the finite order: b - a is a nonnegative integral
    combination of simple coroots."""
    diff = tuple(y - x for x, y in zip(a, b))
    c = datum.coweight_to_coroot_coords(diff)
    return all(Fraction(v).denominator == 1 and v >= 0 for v in c)


def appendix_dual_weight(lam, datum):
    """-lam - 2 rho_check."""
    return tuple(-a - 2 * r for a, r in zip(lam, datum.rho_check))


def appendix_shift(datum):
    """2 <rho_check, rho> as an integer."""
    val = 2 * datum.pairing(datum.rho, datum.rho_check)
    assert val.denominator == 1
    return int(val)


def _closure(group, gens):
    seen = {group.identity}
    frontier = [group.identity]
    while frontier:
        nxt = []
        for y in frontier:
            for s in gens:
                z = group.mul(y, s)
                if z not in seen:
                    seen.add(z)
                    nxt.append(z)
        frontier = nxt
    return seen


class DualityContext:
    """Both sides at one level: W_{g,kappa} in W-tilde and W_{g-dual,kappa-dual}
    computed independently on the dual datum."""

    def __init__(self, level, datum, lattice="adjoint"):
        self.level = level
        self.datum = datum
        self.W = integral_weyl_group(level, datum, lattice)
        self.G = self.W.ambient
        self.dual = langlands_dual(datum)
        self.dual_level = dual_level(level, datum)
        self.Wd = integral_weyl_group(self.dual_level, self.dual, lattice)
        self.Gd = self.Wd.ambient
        self.transported = [duality_map(s, level, datum) for s in self.W.simple_reflections]
        self._finite = [u.w for u in self.G.finite_elements()]
        self._theta_d = self.dual.theta_roots[1]
        lat = self.W.translation_lattice
        self._mults = None if lat.is_zero else lat.multipliers

    # ----- double cosets ---------------------------------------------------

    def coset_key(self, x):
        """Canonical label of W_{g,kappa} x W_f: the orbit of -w(mu) under W_f
        and translations by Q-check_kappa."""
        G = self.G
        v = tuple(-a for a in G.act_coweight(x.w, x.t))
        best = None
        for u in self._finite:
            uv = G.act_coweight(u, v)
            if self._mults is None:
                key = tuple(uv)
            else:
                c = self.datum.coweight_to_coroot_coords(uv)
                key = tuple(Fraction(a) - m * floor(Fraction(a) / m) for a, m in zip(c, self._mults))
            if best is None or key < best:
                best = key
        return best

    # ----- dual dot action in the affine order ----------------------------

    def dual_step(self, coroot, nu):
        """(s . nu, m, coefficients of -m * root in the dual affine simple roots)."""
        d = self.dual
        rho = d.rho
        shifted = tuple(Fraction(a) + r for a, r in zip(nu, rho))
        m = coroot_pairing(coroot, shifted, self.dual_level, d)
        if not isinstance(m, Fraction):
            raise ValueError("non-integral dual reflection")
        gamma = d.roots[coroot.root]
        gw = d.root_to_weight(gamma)
        new = tuple(a - m * g for a, g in zip(nu, gw))
        n = coroot.n
        finite = tuple(g + n * t for g, t in zip(gamma, self._theta_d))
        coeffs = (-m * n,) + tuple(-m * f for f in finite)
        return new, m, coeffs

    def dual_leq_after(self, coroot, nu):
        """nu <= s . nu in the affine order."""
        _, _, coeffs = self.dual_step(coroot, nu)
        return all(c >= 0 and Fraction(c).denominator == 1 for c in coeffs)



@dataclass
class BlockDescriptor:
    y: object
    window: list
    stabilizer: list
    weight: tuple
    certified: bool
    unique_minimum: bool
    minimum_below_window: bool
    positivity: bool
    parabolic: bool

    def to_dict(self, group):
        return {
            "y": group.format_element(self.y),
            "length": group.length(self.y),
            "weight": [str(a) for a in self.weight],
            "stabilizer": list(self.stabilizer),
            "window_size": len(self.window),
            "certified": self.certified,
            "unique_minimum": self.unique_minimum,
            "positivity": self.positivity,
            "parabolic": self.parabolic,
        }


def _describe(ctx, window, L, full_checks=True):
    G, W = ctx.G, ctx.W
    lmin = min(G.length(x) for x in window)
    minima = sorted((x for x in window if G.length(x) == lmin), key=G.sort_key)
    y = minima[0]
    certified = lmin + G.N <= L
    yi = G.inv(y)
    # stabilizer: y W_f y^{-1} inside the integral Weyl group
    conj = {G.mul(G.mul(y, u), yi) for u in G.finite_elements()}
    conj = {z for z in conj if W.contains(z)}
    stab = [i for i, s in enumerate(W.simple_reflections) if s in conj]
    parabolic = _closure(G, [W.simple_reflections[i] for i in stab]) == conj
    positivity = all(G.is_positive(G.act_on_root(yi, (c.root, c.n))) for c in W.simple_coroots)
    below = all(G.bruhat_leq_descent(y, x) for x in window) if full_checks else None
    return BlockDescriptor(y=y, window=sorted(window, key=G.sort_key), stabilizer=stab,
                           weight=weight_of(y), certified=certified,
                           unique_minimum=len(minima) == 1, minimum_below_window=below,
                           positivity=positivity, parabolic=parabolic)


def enumerate_blocks(level, datum, L, lattice="adjoint", full_checks=True, ctx=None, cap=None):
    """One descriptor per double coset W_{g,kappa} x W_f meeting the ball of
    length L, ordered by the minimal element."""
    ctx = ctx or DualityContext(level, datum, lattice)
    G = ctx.G
    groups = {}
    for x in G.enumerate_ball(L, cap):
        groups.setdefault(ctx.coset_key(x), []).append(x)
    blocks = [_describe(ctx, win, L, full_checks) for win in groups.values()]
    blocks.sort(key=lambda b: G.sort_key(b.y))
    return blocks


def bruhat_dominance_check(x, coroot, ctx):
    """(x W_f <= s x W_f, x.(-rho_check) <= s x.(-rho_check), x^{-1}(alpha) in
    positive or finite coroots) for the dual reflection s of ``coroot`` (an
    integral positive affine coroot of the dual datum)."""
    if classify_sign(ctx.level) == "positive":
        raise PositiveLevel("the transport sign is fixed for negative levels: dualize first")
    G, Gd = ctx.G, ctx.Gd
    s_dual = coroot.reflection(Gd)
    s = duality_map(s_dual, ctx.dual_level, ctx.dual)
    sx = G.mul(s, x)
    a, b = G.min_coset_rep(x), G.min_coset_rep(sx)
    bruhat = G.bruhat_leq_descent(a, b)
    nu = weight_of(x)
    new, _, _ = ctx.dual_step(coroot, nu)
    if tuple(new) != weight_of(sx):
        raise AssertionError("weight map does not intertwine the dual dot action")
    weights = ctx.dual_leq_after(coroot, nu)
    f = G.reflection_root(s)
    j, k = G.act_on_root(G.inv(x), f)
    roots = k > 0 or k == 0
    return bruhat, weights, roots


@dataclass
class MatchReport:
    level: str
    dual_level: str
    bound: int
    blocks: list = field(default_factory=list)

    @property
    def verdict(self):
        certified = [b for b in self.blocks if b["certified"]]
        return "MATCH" if all(b["verdict"] == "MATCH" for b in certified) else "MISMATCH"

    def to_dict(self):
        cert = [b for b in self.blocks if b["certified"]]
        return {
            "level": self.level, "dual_level": self.dual_level, "bound": self.bound,
            "blocks": self.blocks,
            "summary": {"verdict": self.verdict, "blocks": len(self.blocks),
                        "certified": len(cert),
                        "matched": sum(b["verdict"] == "MATCH" for b in cert)},
        }


def check_match_level(level, datum):
    if level.is_critical:
        raise ValueError("critical level")
    if classify_sign(level) == "positive":
        raise PositiveLevel("level is positive: dualize first (negative levels only)")
    if not is_good_table(level, datum):
        raise LevelNotGood(f"level {level.literal()} is not good for {datum.type_label}")


def match_blocks(level, datum, L, lattice="adjoint", cap=None):
    """Per block: the parabolic W_{g,kappa} cap y W_f y^{-1}, pushed through
    the duality map, against the dot stabilizer of weight_of(y) in
    W_{g-dual,kappa-dual}.  W_{g,kappa} and W_{g,-kappa} are the same subgroup."""
    check_match_level(level, datum)
    ctx = DualityContext(level, datum, lattice)
    G, Gd = ctx.G, ctx.Gd
    dual_gens = ctx.Wd.simple_reflections
    report = MatchReport(level=level.literal(), dual_level=ctx.dual_level.literal(), bound=L)
    for b in enumerate_blocks(level, datum, L, lattice, full_checks=False, ctx=ctx, cap=cap):
        nu = b.weight
        j1 = sorted(dual_gens.index(ctx.transported[i]) if ctx.transported[i] in dual_gens
                    else -1 for i in b.stabilizer)
        j2 = [i for i, s in enumerate(dual_gens)
              if tuple(Gd.dot_action(s, nu, ctx.dual_level)) == tuple(nu)]
        antidominant = all(ctx.dual_leq_after(c, nu) for c in ctx.Wd.simple_coroots)
        intertwines = all(
            weight_of(G.mul(s, b.y)) == tuple(Gd.dot_action(t, nu, ctx.dual_level))
            for s, t in zip(ctx.W.simple_reflections, ctx.transported))
        ok = j1 == j2 and antidominant and intertwines and b.positivity and b.parabolic \
            and b.unique_minimum
        report.blocks.append({
            "weight": [str(a) for a in nu],
            "y": G.format_element(b.y),
            "stabilizer": b.stabilizer,
            "dual_stabilizer": j2,
            "antidominant": antidominant,
            "certified": b.certified,
            "verdict": "MATCH" if ok else "MISMATCH",
        })
    return report


# ----- parahoric subsets ----------------------------------------------------


def _strictly_below(G, a, b):
    return a != b and G.bruhat_leq_descent(a, b)


@dataclass
class ParahoricReport:
    J: list
    bound: int
    A: list
    B: list
    C: list
    undecided: int

    @property
    def equal(self):
        return self.A == self.B == self.C

    def to_dict(self):
        return {"J": self.J, "bound": self.bound, "equal": self.equal,
                "A": self.A, "B": self.B, "C": self.C, "undecided": self.undecided}


def double_coset(G, x, J):
    """W_J x W_f as a set."""
    WJ = _closure(G, [G.finite_simple[j] for j in J])
    Wf = [u for u in G.finite_elements()]
    return {G.mul(G.mul(a, x), u) for a in WJ for u in Wf}


def levi_condition(G, x, J):
    """x(finite coroots) meets no coroot of the Levi of J."""
    d = G.datum
    span = set(J)
    for j in range(2 * G.N):
        img, k = G.act_on_root(x, (j, 0))
        if k != 0:
            continue
        root = d.roots[img]
        if all(c == 0 for i, c in enumerate(root) if i not in span):
            return False
    return True


def parahoric_subset_check(J, datum, L, lattice="adjoint", cap=None):
    """The three descriptions of parahoric highest weights on the ball of
    length L, restricted to elements whose double coset W_J x W_f lies in
    the ball."""
    G = affine_weyl_group(datum, lattice)
    J = sorted(J)
    I = range(datum.rank)
    ball = G.enumerate_ball(L, cap)
    ln = G.length
    A, B, C = set(), set(), set()
    core = set()
    undecided = 0
    seen = {}
    for x in ball:
        if x in seen:
            continue
        dc = double_coset(G, x, J)
        top = max(ln(z) for z in dc)
        for z in dc:
            seen[z] = top
        if top > L:
            undecided += 1
            continue
        core |= dc
        maxima = [z for z in dc if ln(z) == top]
        assert len(maxima) == 1
        if levi_condition(G, maxima[0], J):
            C.add(maxima[0])
    for x in core:
        lx = ln(x)
        cond1 = all(ln(G.mul(G.finite_simple[j], x)) < lx for j in J)
        cond2 = all(ln(G.mul(x, G.finite_simple[i])) < lx for i in I)
        if not (cond1 and cond2):
            continue
        mx = G.min_coset_rep(x, "Wfx", J)
        if all(_strictly_below(G, G.min_coset_rep(G.mul(x, G.finite_simple[i]), "Wfx", J), mx)
               for i in I):
            A.add(x)
        mf = G.min_coset_rep(x)
        if all(_strictly_below(G, G.min_coset_rep(G.mul(G.finite_simple[j], x)), mf) for j in J):
            B.add(x)
    fmt = lambda S: sorted(G.format_element(z) for z in S)
    return ParahoricReport(J=J, bound=L, A=fmt(A), B=fmt(B), C=fmt(C), undecided=undecided)


__all__ = [
    "BlockDescriptor", "DualityContext", "LevelNotGood", "PositiveLevel", "MatchReport",
    "ParahoricReport", "appendix_dual_weight", "appendix_shift", "bruhat_dominance_check",
    "dominance_leq", "enumerate_blocks", "match_blocks", "parahoric_subset_check",
    "weight_of", "double_coset", "levi_condition",
]
