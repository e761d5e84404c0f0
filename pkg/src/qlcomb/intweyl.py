"""Integral Weyl groups inside the extended affine Weyl group.

An affine coroot is a pair ``(j, n)``: index j into the datum's coroot list
and an integer n.  Its reflection is ``s_{coroot_j} t^{n coroot_j}``, the
same element the affine-root pair ``(j, n)`` names in :mod:`affweyl`, so
positivity and the W-tilde action are shared with that module.

As a linear functional the coroot ``(j, n)`` is ``coroot_j + n * l_j * 1``
where ``l_j = kappa_b(coroot_j, coroot_j) / 2``; sums of coroots are taken
in these coordinates.  Pairing with a twist lambda at a level uses the
shift ``kappa - kappa_c``, which changes nothing about integrality because
``kappa_c(coroot, coroot) / 2`` is an integer.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .affweyl import affine_weyl_group
from .levels import translation_lattice


@dataclass(frozen=True)
class AffineCoroot:
    root: int
    n: int

    def reflection(self, group):
        return group.reflection(self.root, self.n)

    def classical(self, datum):
        return datum.coroots[self.root]

    def is_positive(self, datum):
        return self.n > 0 or (self.n == 0 and self.root < datum.n_positive)

    def central(self, datum):
        return self.n * datum.coroot_length_ratio(datum.coroots[self.root])

    def linear_coords(self, datum):
        """(simple-coroot coordinates, central coordinate) of the functional."""
        return (tuple(datum.coroots[self.root]), self.central(datum))

    def to_dict(self, datum):
        return {"coroot": list(datum.coroots[self.root]), "n": self.n}


def coroot_pairing(coroot, lam, level, datum):
    """<coroot_n, lam> = <coroot, lam> + n (kappa - kappa_c)(coroot, coroot) / 2."""
    c = datum.coroots[coroot.root]
    base = sum(Fraction(x) * y for x, y in zip(lam, c))
    central = coroot.central(datum)
    if not central:
        return base
    return level.shift_value() * central + base


def is_integral_coroot(coroot, lam, level, datum):
    val = coroot_pairing(coroot, lam, level, datum)
    if isinstance(val, Fraction):
        return val.denominator == 1
    return val.is_integer()


def integral_progression(j, lam, level, datum):
    """The integers n with (j, n) integral at lam, as ``(n0, c)``.

    ``c > 0`` means all n = n0 mod c; ``c == 0`` means n = n0 only; ``None``
    means no n works.
    """
    a = sum(Fraction(x) * y for x, y in zip(lam, datum.coroots[j]))
    ell = datum.coroot_length_ratio(datum.coroots[j])
    if not level.is_rational:
        return (0, 0) if a.denominator == 1 else None
    u = level.offset * ell
    if u == 0:
        return (0, 1) if a.denominator == 1 else None
    P, Q = u.numerator, u.denominator
    if (a * Q).denominator != 1:
        return None
    target = int(-a * Q) % Q
    n0 = (target * pow(P, -1, Q)) % Q if Q > 1 else 0
    return (n0, Q)


def _count_progression(lo, hi, prog):
    if prog is None or hi < lo:
        return 0
    n0, c = prog
    if c == 0:
        return int(lo <= n0 <= hi)
    first = lo + ((n0 - lo) % c)
    return 0 if first > hi else (hi - first) // c + 1


class IntegralWeylGroup:
    """The subgroup of W-tilde generated by reflections in integral affine
    coroots, with its Coxeter generators."""

    def __init__(self, level, datum, twist=None, simple_coroots=None, lattice="adjoint"):
        self.level = level
        self.datum = datum
        self.ambient = affine_weyl_group(datum, lattice)
        self.twist = tuple(twist) if twist is not None else (0,) * datum.rank
        self.is_untwisted = not any(self.twist)
        self.translation_lattice = translation_lattice(level, datum) if self.is_untwisted else None
        self.simple_coroots = list(simple_coroots)
        G = self.ambient
        self.simple_reflections = [c.reflection(G) for c in self.simple_coroots]
        self._progressions = [integral_progression(j, self.twist, level, datum)
                              for j in range(2 * datum.n_positive)]

    @property
    def rank(self):
        return len(self.simple_reflections)

    def is_integral_root_index(self, j, n):
        prog = self._progressions[j]
        if prog is None:
            return False
        n0, c = prog
        return n == n0 if c == 0 else (n - n0) % c == 0

    def contains(self, x):
        """Membership, decided through the translation lattice (untwisted case)."""
        if not self.is_untwisted:
            raise NotImplementedError("membership is implemented for the untwisted group")
        return self.translation_lattice.contains(x.t) if not self.translation_lattice.is_zero \
            else not any(x.t)

    def intrinsic_length(self, x):
        """#{positive integral affine coroots f : x^{-1}(f) < 0}."""
        G = self.ambient
        N = G.N
        xi = G.inv(x)
        total = 0
        roots = G._roots
        for j in range(2 * N):
            a = sum(p * q for p, q in zip(roots[j], xi.t))
            lo = 0 if j < N else 1
            hi = a if xi.w[j] >= N else a - 1
            total += _count_progression(lo, hi, self._progressions[j])
        return total

    def reduced_word(self, x):
        """Word in the group's own simple reflections, lexicographically least."""
        word = []
        lx = self.intrinsic_length(x)
        while lx:
            for i, s in enumerate(self.simple_reflections):
                y = self.ambient.mul(s, x)
                ly = self.intrinsic_length(y)
                if ly < lx:
                    word.append(i)
                    x, lx = y, ly
                    break
            else:
                raise ValueError("element is not in the integral Weyl group")
        if x != self.ambient.identity:
            raise ValueError("element is not in the integral Weyl group")
        return tuple(word)

    def generated_ball(self, L):
        """Elements of word length <= L over the simple reflections, by BFS."""
        G = self.ambient
        layer = [G.identity]
        seen = {G.identity: 0}
        for k in range(1, L + 1):
            nxt = []
            for y in layer:
                for s in self.simple_reflections:
                    z = G.mul(y, s)
                    if z not in seen:
                        seen[z] = k
                        nxt.append(z)
            layer = nxt
        return seen

    def coxeter_matrix(self, power_bound=12):
        """Orders m(s, s').  Infinite orders are certified by parallel walls:
        the product of reflections in distinct parallel affine walls is a
        nonzero translation."""
        G = self.ambient
        S = self.simple_reflections
        n = len(S)
        m = [[1] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                a, b = self.simple_coroots[i], self.simple_coroots[j]
                parallel = G.reflection_perm(a.root) == G.reflection_perm(b.root)
                prod = G.mul(S[i], S[j])
                order = None
                cur = prod
                for k in range(1, power_bound + 1):
                    if cur == G.identity:
                        order = k
                        break
                    cur = G.mul(cur, prod)
                if order is None:
                    if not parallel:
                        raise AssertionError("product of non-parallel reflections of unbounded order")
                    order = 0  # infinity
                elif parallel:
                    raise AssertionError("parallel distinct walls gave a finite order")
                m[i][j] = m[j][i] = order
        return m

    def to_dict(self):
        G = self.ambient
        gens = []
        for c, s in zip(self.simple_coroots, self.simple_reflections):
            d = c.to_dict(self.datum)
            d["element"] = G.format_element(s)
            gens.append(d)
        out = {"level": self.level.to_dict(), "generators": gens}
        if self.translation_lattice is not None:
            out["translation_lattice"] = self.translation_lattice.to_dict()
        return out


def extra_generator(level, datum):
    """The non-finite Coxeter generator at twist 0, as a positive affine coroot.

    (q, r) = 1:  s_{theta_s} t^{-q theta_s}   (theta_s the short dominant coroot)
    (q, r) = r:  s_{theta_l} t^{-(q/r) theta_l} (theta_l the long dominant coroot)
    """
    if not level.is_rational:
        return None
    q, r = level.q, datum.lacing_number
    g = gcd(q, r)
    short, long_ = datum.theta_check
    if g == 1:
        coroot, n = short, q
    elif g == r:
        coroot, n = long_, q // r
    else:
        raise AssertionError(f"gcd(q, r) = {g} is neither 1 nor r = {r}")
    neg = tuple(-x for x in coroot)
    # s_{c} t^{-n c} is the reflection of the positive coroot (-c, n)
    return AffineCoroot(datum.coroot_index[neg], n)


def integral_weyl_group(level, datum, lattice="adjoint"):
    """W_{g,kappa}: the integral Weyl group of the weight 0."""
    if not datum.is_simple:
        raise ValueError("integral Weyl groups are built per simple factor")
    gens = [AffineCoroot(i, 0) for i in range(datum.rank)]
    extra = extra_generator(level, datum)
    if extra is not None:
        gens.append(extra)
    return IntegralWeylGroup(level, datum, simple_coroots=gens, lattice=lattice)


def integral_coroots_for_twist(lam, level, datum, n_bound):
    """Positive integral affine coroots with 0 <= n <= n_bound."""
    if n_bound < 1:
        raise ValueError("n_bound must be at least 1")
    lam = tuple(Fraction(x) for x in lam)
    out = []
    N = datum.n_positive
    for n in range(0, n_bound + 1):
        for j in range(2 * N):
            c = AffineCoroot(j, n)
            if c.is_positive(datum) and is_integral_coroot(c, lam, level, datum):
                out.append(c)
    return out


def simple_integral_coroots(lam, level, datum, n_bound):
    """Those integral positive coroots in the window that are not a sum of two
    positive integral coroots, imaginary ones (pure central part m with
    ``m * (kappa - kappa_c)`` integral) included.  Without the imaginary
    summands every ``alpha + n`` of a rank-one affine component would pass.

    Both summands have central part between 0 and that of the total, at most
    ``r * n_bound``, so listing parts up to that bound makes the test exact
    for the window."""
    window = integral_coroots_for_twist(lam, level, datum, n_bound)
    r = datum.lacing_number
    parts = integral_coroots_for_twist(lam, level, datum, r * n_bound)
    keys = {c.linear_coords(datum) for c in parts}
    if level.is_rational:
        zero = (0,) * datum.ss_rank
        keys |= {(zero, Fraction(m)) for m in range(1, r * n_bound + 1)
                 if (m * level.offset).denominator == 1}
    out = []
    for c in window:
        vec, m = c.linear_coords(datum)
        decomposable = any((tuple(a - b for a, b in zip(vec, v1)), m - m1) in keys
                           for v1, m1 in keys)
        if not decomposable:
            out.append(c)
    return out


def twisted_weyl_group(lam, level, datum, n_bound):
    """W_lambda for a rational twist, with generators found by the window test.
    A window that is too small can miss generators of large central part."""
    gens = simple_integral_coroots(lam, level, datum, n_bound)
    return IntegralWeylGroup(level, datum, twist=lam, simple_coroots=gens)
