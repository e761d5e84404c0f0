"""Extended affine Weyl group W_f x| Lambda-check of a simple root datum.

An element ``(w, t)`` stands for ``w * t^lam``; ``w`` is stored as the
permutation it induces on the datum's root list and ``lam`` in
fundamental-coweight coordinates.  The product is

    (w1, l1)(w2, l2) = (w1 w2, w2^{-1}(l1) + l2).

The closed-form length ``sum_{a>0} |<a, lam> + [w(a) < 0]|`` counts the
affine hyperplanes separating the base alcove from its image under
``v -> w(v + lam)``, and everything else (affine roots, descents, Bruhat
order) is set up to be consistent with that action.

Affine roots are pairs ``(j, k)``: root index j and integer k, meaning the
affine function ``<alpha_j, v> + k`` whose reflection is
``s_{alpha_j} t^{k coroot_j}``.  A pair is positive when ``k > 0`` or
``k == 0`` and ``alpha_j > 0``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache

from .levels import shift_map


class BallCapExceeded(RuntimeError):
    pass


class DatumMismatch(ValueError):
    pass


class ExtAffineWeylElement:
    __slots__ = ("group", "w", "t", "_hash")

    def __init__(self, group, w, t):
        self.group = group
        self.w = w
        self.t = t
        self._hash = hash((w, t))

    def __eq__(self, other):
        return (isinstance(other, ExtAffineWeylElement) and self._hash == other._hash
                and self.w == other.w and self.t == other.t)

    def __hash__(self):
        return self._hash

    def __mul__(self, other):
        return self.group.mul(self, other)

    def inverse(self):
        return self.group.inv(self)

    def length(self):
        return self.group.length(self)

    @property
    def is_finite(self):
        return not any(self.t)

    def __repr__(self):
        return self.group.format_element(self)


class AffineWeylGroup:
    """Extended affine Weyl group for a simple datum.

    ``lattice`` is ``"adjoint"`` (translations by the coweight lattice) or
    ``"sc"`` (translations by the coroot lattice only, i.e. W itself).
    """

    def __init__(self, datum, lattice="adjoint", ball_cap=10**6):
        if not datum.is_simple:
            raise ValueError("affine Weyl groups are built for simple data only")
        if lattice not in ("adjoint", "sc"):
            raise ValueError(f"unknown lattice {lattice!r}")
        self.datum = datum
        self.lattice = lattice
        self.ball_cap = ball_cap
        self.rank = n = datum.rank
        self.N = N = datum.n_positive
        self.nroots = 2 * N
        self._roots = datum.roots
        self._coroot_cw = [datum.coroot_to_coweight(c) for c in datum.coroots]
        self.id_perm = tuple(range(2 * N))
        self._perm_inv = {}
        self._perm_len = {}
        self._word_cache = {}
        self._refl_perms = {}

        self._simple_perms = [self._reflection_perm(i) for i in range(n)]
        zero = (0,) * n
        self.identity = ExtAffineWeylElement(self, self.id_perm, zero)
        self.finite_simple = [ExtAffineWeylElement(self, p, zero) for p in self._simple_perms]
        theta = datum.theta_roots[1]
        jt = datum.root_index[theta]
        self.theta_index = jt
        self.affine_simple = self.reflection(jt, -1)
        self.simple_reflections = self.finite_simple + [self.affine_simple]
        self._omega = None

    # ----- finite Weyl group as root permutations ------------------------

    def _reflection_perm(self, j):
        d = self.datum
        a = d.roots[j]
        av = d.coroots[j]
        perm = []
        for b in d.roots:
            # <b, coroot_j> = sum_i b_i <alpha_i, coroot_j>
            p = sum(b[i] * self._alpha_on_coroot(i, av) for i in range(self.rank))
            img = tuple(x - p * y for x, y in zip(b, a))
            perm.append(d.root_index[img])
        return tuple(perm)

    def _alpha_on_coroot(self, i, c):
        # <alpha_i, coroot> with coroot in simple-coroot coords
        return sum(c[k] * self.datum.cartan[k][i] for k in range(self.rank))

    def perm_mul(self, p1, p2):
        return tuple(p1[j] for j in p2)

    def perm_inv(self, p):
        inv = self._perm_inv.get(p)
        if inv is None:
            lst = [0] * len(p)
            for j, x in enumerate(p):
                lst[x] = j
            inv = tuple(lst)
            self._perm_inv[p] = inv
            self._perm_inv[inv] = p
        return inv

    def finite_length(self, p):
        ln = self._perm_len.get(p)
        if ln is None:
            N = self.N
            ln = sum(1 for j in range(N) if p[j] >= N)
            self._perm_len[p] = ln
        return ln

    def act_coweight(self, p, lam):
        """w(lam) for lam in fundamental-coweight coords."""
        inv = self.perm_inv(p)
        roots = self._roots
        return tuple(sum(x * y for x, y in zip(roots[inv[i]], lam)) for i in range(self.rank))

    def act_weight(self, p, lam):
        """w(lam) for a weight in fundamental-weight coords."""
        inv = self.perm_inv(p)
        cor = self.datum.coroots
        return tuple(sum(x * y for x, y in zip(cor[inv[i]], lam)) for i in range(self.rank))

    def finite_word(self, p):
        """Lexicographically least reduced word of a finite element."""
        word = self._word_cache.get(p)
        if word is not None:
            return word
        out = []
        cur = p
        N = self.N
        while True:
            inv = self.perm_inv(cur)
            i = next((i for i in range(self.rank) if inv[i] >= N), None)
            if i is None:
                break
            out.append(i)
            cur = self.perm_mul(self._simple_perms[i], cur)
        word = tuple(out)
        self._word_cache[p] = word
        return word

    def finite_from_word(self, word):
        p = self.id_perm
        for i in word:
            p = self.perm_mul(p, self._simple_perms[i])
        return p

    @property
    def w_longest(self):
        p = self.id_perm
        N = self.N
        while True:
            i = next((i for i in range(self.rank) if p[i] < N), None)
            if i is None:
                return ExtAffineWeylElement(self, p, (0,) * self.rank)
            p = self.perm_mul(p, self._simple_perms[i])

    def finite_elements(self, cap=200000):
        """All of W_f, by BFS from the identity (guarded by ``cap``)."""
        cached = self.__dict__.get("_finite_cache")
        if cached is not None:
            return list(cached)
        seen = {self.id_perm}
        frontier = [self.id_perm]
        while frontier:
            nxt = []
            for p in frontier:
                for s in self._simple_perms:
                    q = self.perm_mul(p, s)
                    if q not in seen:
                        seen.add(q)
                        nxt.append(q)
                        if len(seen) > cap:
                            raise BallCapExceeded(f"finite Weyl group larger than cap {cap}")
            frontier = nxt
        zero = (0,) * self.rank
        out = sorted((ExtAffineWeylElement(self, p, zero) for p in seen),
                     key=lambda x: (self.finite_length(x.w), self.finite_word(x.w)))
        self._finite_cache = tuple(out)
        return out

    # ----- group law -------------------------------------------------------

    def _check(self, *xs):
        for x in xs:
            if x.group is not self and (x.group.datum != self.datum or x.group.lattice != self.lattice):
                raise DatumMismatch("elements belong to different groups")

    def mul(self, x, y):
        self._check(x, y)
        w = self.perm_mul(x.w, y.w)
        if any(x.t):
            tx = self.act_coweight(self.perm_inv(y.w), x.t)
            t = tuple(a + b for a, b in zip(tx, y.t))
        else:
            t = y.t
        return ExtAffineWeylElement(self, w, t)

    def inv(self, x):
        winv = self.perm_inv(x.w)
        t = tuple(-a for a in self.act_coweight(x.w, x.t))
        return ExtAffineWeylElement(self, winv, t)

    def power(self, x, k):
        out = self.identity
        for _ in range(k):
            out = self.mul(out, x)
        return out

    def translation(self, lam):
        lam = tuple(int(a) for a in lam)
        if self.lattice == "sc" and not self.datum.in_coroot_lattice(lam):
            raise ValueError("translation outside the coroot lattice")
        return ExtAffineWeylElement(self, self.id_perm, lam)

    def finite(self, word):
        return ExtAffineWeylElement(self, self.finite_from_word(word), (0,) * self.rank)

    def element(self, word, lam):
        """The element w * t^lam with w given by a reduced word."""
        return self.mul(self.finite(word), self.translation(lam))

    def reflection(self, j, k=0):
        """Reflection in the affine root (j, k): s_{alpha_j} t^{k coroot_j}."""
        p = self.reflection_perm(j)
        t = tuple(k * x for x in self._coroot_cw[j])
        return ExtAffineWeylElement(self, p, t)

    # ----- length ----------------------------------------------------------

    def length(self, x):
        """Closed-form length."""
        N = self.N
        roots = self._roots
        w, t = x.w, x.t
        total = 0
        for j in range(N):
            v = sum(a * b for a, b in zip(roots[j], t))
            if w[j] >= N:
                v += 1
            total += abs(v)
        return total

    def omega_key(self, x):
        """Class of the translation part in Lambda-check / Q-check."""
        c = self.datum.coweight_to_coroot_coords(x.t)
        return tuple(Fraction(v) - (Fraction(v).numerator // Fraction(v).denominator) for v in c)

    def omega_elements(self):
        """The length-zero elements, one per class of Lambda-check / Q-check."""
        if self._omega is not None:
            return self._omega
        n = self.rank
        reps = [(0,) * n]
        keys = {self.omega_key(self.identity)}
        if self.lattice == "adjoint":
            frontier = list(reps)
            while frontier:
                nxt = []
                for r in frontier:
                    for i in range(n):
                        cand = tuple(a + (1 if k == i else 0) for k, a in enumerate(r))
                        key = self.omega_key(self.translation(cand))
                        if key not in keys:
                            keys.add(key)
                            reps.append(cand)
                            nxt.append(cand)
                frontier = nxt
        out = []
        for r in reps:
            x = self.translation(r)
            while True:
                lx = self.length(x)
                if lx == 0:
                    break
                x = next(y for y in (self.mul(x, s) for s in self.simple_reflections)
                         if self.length(y) < lx)
            out.append(x)
        self._omega = out
        return out

    def omega_part(self, x):
        key = self.omega_key(x)
        for om in self.omega_elements():
            if self.omega_key(om) == key:
                return om
        raise AssertionError("no length-zero element in class")

    def reduced_word(self, x):
        """(omega, word) with x = omega * s_{word[0]} * ... ; word indices
        0..rank-1 are the finite simple reflections and ``rank`` is the
        affine one.  The word is lexicographically least."""
        om = self.omega_part(x)
        u = self.mul(self.inv(om), x)
        word = []
        lu = self.length(u)
        S = self.simple_reflections
        while lu:
            for i, s in enumerate(S):
                v = self.mul(s, u)
                lv = self.length(v)
                if lv < lu:
                    word.append(i)
                    u, lu = v, lv
                    break
        return om, tuple(word)

    def from_word(self, word, omega=None):
        x = omega if omega is not None else self.identity
        for i in word:
            x = self.mul(x, self.simple_reflections[i])
        return x

    def word_length_bfs(self, x, limit=64):
        """Word length over S (plus length-zero elements) by breadth-first search."""
        target = x
        layer = set(self.omega_elements())
        seen = set(layer)
        for k in range(limit + 1):
            if target in layer:
                return k
            nxt = set()
            for y in layer:
                for s in self.simple_reflections:
                    z = self.mul(y, s)
                    if z not in seen:
                        seen.add(z)
                        nxt.add(z)
            layer = nxt
        raise BallCapExceeded(f"word length exceeds {limit}")

    # ----- Bruhat order -----------------------------------------------------

    def lower_interval(self, y):
        """All u <= y, by closing subwords of a reduced word of y."""
        om, word = self.reduced_word(y)
        S = self.simple_reflections
        cur = {self.identity}
        for i in word:
            cur |= {self.mul(z, S[i]) for z in cur}
        return frozenset(self.mul(om, z) for z in cur)

    def bruhat_leq(self, x, y):
        self._check(x, y)
        if x == y:
            return True
        if self.omega_key(x) != self.omega_key(y):
            return False
        if self.length(x) >= self.length(y):
            return False
        return x in self.lower_interval(y)

    def bruhat_leq_descent(self, x, y):
        """Same order as :meth:`bruhat_leq`, by descent recursion: if s y < y
        then x <= y iff min(x, s x) <= s y.  Linear in the length of y."""
        self._check(x, y)
        if self.omega_key(x) != self.omega_key(y):
            return False
        om_inv = self.inv(self.omega_part(y))
        u, v = self.mul(om_inv, x), self.mul(om_inv, y)
        lu, lv = self.length(u), self.length(v)
        S = self.simple_reflections
        while lv:
            if lu > lv:
                return False
            for s in S:
                sv = self.mul(s, v)
                lsv = self.length(sv)
                if lsv < lv:
                    break
            su = self.mul(s, u)
            lsu = self.length(su)
            if lsu < lu:
                u, lu = su, lsu
            v, lv = sv, lsv
        return lu == 0

    # ----- affine roots -------------------------------------------------------

    def neg_root(self, j):
        return j + self.N if j < self.N else j - self.N

    def is_positive(self, root):
        j, k = root
        return k > 0 or (k == 0 and j < self.N)

    def act_on_root(self, x, root):
        """x(root) for an affine root (j, k)."""
        j, k = root
        pair = sum(a * b for a, b in zip(self._roots[j], x.t))
        return (x.w[j], k - pair)

    def positive_form(self, root):
        return root if self.is_positive(root) else (self.neg_root(root[0]), -root[1])

    def reflection_root(self, x):
        """If x is a reflection s_{alpha_j} t^{k coroot_j}, its positive root (j, k)."""
        for j in range(self.N):
            if self.reflection_perm(j) != x.w:
                continue
            cw = self._coroot_cw[j]
            ks = {Fraction(a, b) for a, b in zip(x.t, cw) if b}
            if any(a for a, b in zip(x.t, cw) if not b) or len(ks) != 1:
                continue
            k = ks.pop()
            if k.denominator == 1:
                return self.positive_form((j, int(k)))
        return None

    def reflection_perm(self, j):
        p = self._refl_perms.get(j)
        if p is None:
            p = self._refl_perms[j] = self._reflection_perm(j)
        return p

    # ----- actions on weights ----------------------------------------------

    def dot_action(self, x, lam, level):
        """x . lam, with W_f acting by the dot action and translations through
        kappa - kappa_c."""
        lam = tuple(lam)
        if any(x.t):
            sh = shift_map(level, self.datum, x.t)
            lam = tuple(a + b for a, b in zip(lam, sh))
        rho = self.datum.rho
        shifted = tuple(a + r for a, r in zip(lam, rho))
        moved = self.act_weight(x.w, shifted)
        return tuple(a - r for a, r in zip(moved, rho))

    # ----- cosets -----------------------------------------------------------------

    def min_coset_rep(self, x, side="xWf", parabolic=None):
        """Minimal-length element of x W_f (``side="xWf"``) or W_f x (``"Wfx"``).

        ``parabolic`` restricts W_f to the subgroup generated by the listed
        finite simple reflections."""
        return self._extremal_coset_rep(x, side, parabolic, lambda a, b: a < b)

    def max_coset_rep(self, x, side="xWf", parabolic=None):
        return self._extremal_coset_rep(x, side, parabolic, lambda a, b: a > b)

    def _extremal_coset_rep(self, x, side, parabolic, better):
        if side not in ("xWf", "Wfx"):
            raise ValueError(f"unknown side {side!r}")
        gens = self.finite_simple if parabolic is None else [self.finite_simple[i] for i in parabolic]
        lx = self.length(x)
        while True:
            for s in gens:
                y = self.mul(x, s) if side == "xWf" else self.mul(s, x)
                ly = self.length(y)
                if better(ly, lx):
                    x, lx = y, ly
                    break
            else:
                return x

    def is_in_Wf_minimal(self, x):
        return all(self.length(self.mul(x, s)) > self.length(x) for s in self.finite_simple)

    # ----- enumeration ----------------------------------------------------------

    def enumerate_ball(self, L, cap=None):
        """All elements of length <= L (breadth-first over S from the length-zero
        elements).  Ordered by length, then by reduced word."""
        if L < 0:
            raise ValueError("length bound must be nonnegative")
        cap = self.ball_cap if cap is None else cap
        layer = list(self.omega_elements())
        seen = set(layer)
        layers = [layer]
        for _ in range(L):
            nxt = []
            for y in layer:
                for s in self.simple_reflections:
                    z = self.mul(y, s)
                    if z not in seen:
                        seen.add(z)
                        nxt.append(z)
                        if len(seen) > cap:
                            raise BallCapExceeded(f"ball exceeds cap {cap}")
            layer = nxt
            layers.append(layer)
        out = []
        for lay in layers:
            out.extend(sorted(lay, key=self.sort_key))
        return out

    def sort_key(self, x):
        om, word = self.reduced_word(x)
        return (len(word), self.omega_elements().index(om), word)

    # ----- text form ---------------------------------------------------------------

    def format_element(self, x):
        word = ",".join(str(i) for i in self.finite_word(x.w))
        t = ",".join(str(a) for a in x.t)
        return f"w=[{word}] t=({t})"

    def element_to_dict(self, x):
        return {"w": list(self.finite_word(x.w)), "t": list(x.t), "length": self.length(x)}

    def parse_element(self, text):
        m = re.fullmatch(r"\s*w=\[([\d,\s]*)\]\s*t=\(([-\d,\s]*)\)\s*", text)
        if not m:
            raise ValueError(f"cannot parse element {text!r}")
        word = [int(a) for a in m.group(1).split(",") if a.strip()]
        lam = [int(a) for a in m.group(2).split(",") if a.strip()]
        if len(lam) != self.rank or any(i < 0 or i >= self.rank for i in word):
            raise ValueError(f"element {text!r} does not fit rank {self.rank}")
        return self.element(word, lam)


@lru_cache(maxsize=None)
def affine_weyl_group(datum, lattice="adjoint"):
    return AffineWeylGroup(datum, lattice)


# functional surface


def multiply(x, y):
    return x.group.mul(x, y)


def inverse(x):
    return x.group.inv(x)


def length(x):
    return x.group.length(x)


def bruhat_leq(x, y):
    return x.group.bruhat_leq(x, y)


def dot_action(x, lam, level):
    return x.group.dot_action(x, lam, level)


def min_coset_rep(x, side="xWf"):
    return x.group.min_coset_rep(x, side)


def is_in_Wf_minimal(x):
    return x.group.is_in_Wf_minimal(x)


def enumerate_ball(group, L, cap=None):
    return group.enumerate_ball(L, cap)
