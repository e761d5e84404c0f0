"""Root data for simple types A-G and their finite products.

Coordinates: weights are stored in the basis of fundamental weights and
coweights in the basis of fundamental coweights.  Roots are additionally
kept in simple-root coordinates and coroots in simple-coroot coordinates,
which is what most of the combinatorics actually uses.

Cartan convention: ``cartan[i][j] = <alpha_j, coroot_i>``, so that
``<alpha_i, coroot_j> = cartan[j][i]``.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from functools import lru_cache

VALID_RANKS = {
    "A": lambda n: n >= 1,
    "B": lambda n: n >= 2,
    "C": lambda n: n >= 2,
    "D": lambda n: n >= 3,
    "E": lambda n: n in (6, 7, 8),
    "F": lambda n: n == 4,
    "G": lambda n: n == 2,
}


def _cartan_simple(letter, n):
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i, j, aij=-1, aji=-1):
        a[i][j] = aij
        a[j][i] = aji

    if letter in "ABC":
        for i in range(n - 1):
            link(i, i + 1)
        if letter == "B":
            # alpha_n short
            link(n - 2, n - 1, aij=-1, aji=-2)
        elif letter == "C":
            # alpha_n long
            link(n - 2, n - 1, aij=-2, aji=-1)
    elif letter == "D":
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 3, n - 1)
    elif letter == "E":
        # Bourbaki: 1-3-4-5-6-7-8 with 2 attached to 4
        link(0, 2)
        link(1, 3)
        for i in range(2, n - 1):
            link(i, i + 1)
    elif letter == "F":
        link(0, 1)
        link(1, 2, aij=-2, aji=-1)
        link(2, 3)
    elif letter == "G":
        # alpha_1 short, alpha_2 long
        link(0, 1, aij=-3, aji=-1)
    return a


def parse_type(label):
    """Parse ``"G2"``, ``"A1xB3"``, ``"A2xT1"`` into factors and torus rank."""
    factors = []
    torus = 0
    for part in re.split(r"[xX*]", label.strip().upper()):
        m = re.fullmatch(r"([A-GT])\s*_?(\d+)", part.strip())
        if not m:
            raise ValueError(f"cannot parse Cartan type {label!r}")
        letter, rank = m.group(1), int(m.group(2))
        if letter == "T":
            torus += rank
        else:
            _check_type(letter, rank)
            factors.append((letter, rank))
    return tuple(factors), torus


def _check_type(letter, rank):
    if letter not in VALID_RANKS:
        raise ValueError(f"unknown Cartan type letter {letter!r}")
    if not isinstance(rank, int) or not VALID_RANKS[letter](rank):
        raise ValueError(f"invalid rank {rank!r} for type {letter}")


def _inverse(mat):
    """Exact inverse of a square rational matrix by Gauss-Jordan."""
    n = len(mat)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(mat)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise ValueError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def _matvec(m, v):
    return tuple(sum(a * b for a, b in zip(row, v)) for row in m)


def _transpose(m):
    return tuple(zip(*m)) if m else ()


class RootDatum:
    """Root datum of a product of simple types with an optional torus factor.

    Immutable after construction.  The torus coordinates (if any) are
    appended after the semisimple ones and pair by the identity matrix.
    """

    def __init__(self, factors, torus_rank=0, cartan=None, dual_of=None):
        self.factors = tuple(factors)
        self.torus_rank = torus_rank
        if cartan is None:
            blocks = [_cartan_simple(l, n) for l, n in self.factors]
            ss = sum(n for _, n in self.factors)
            cartan = [[0] * ss for _ in range(ss)]
            off = 0
            for blk in blocks:
                for i, row in enumerate(blk):
                    for j, x in enumerate(row):
                        cartan[off + i][off + j] = x
                off += len(blk)
        self.cartan = tuple(tuple(r) for r in cartan)
        self.is_dual = bool(dual_of)
        self.ss_rank = len(self.cartan)
        self.rank = self.ss_rank + torus_rank
        n = self.ss_rank
        self.factor_slices = []
        off = 0
        for _, r in self.factors:
            self.factor_slices.append(range(off, off + r))
            off += r

        self._cartan_inv = _inverse(self.cartan) if n else ()
        # pairing matrix between fundamental-weight and fundamental-coweight coords
        self._pair = _transpose(self._cartan_inv) if n else ()

        self.roots, self.coroots = self._close_roots()
        npos = len(self.roots) // 2
        self.positive_roots = self.roots[:npos]
        self.positive_coroots = self.coroots[:npos]
        self.root_index = {r: i for i, r in enumerate(self.roots)}
        self.coroot_index = {c: i for i, c in enumerate(self.coroots)}

        self.rho = tuple([1] * n + [0] * torus_rank)
        self.rho_check = tuple([1] * n + [0] * torus_rank)
        self._basic = self._basic_grams()

    # ----- construction helpers -----------------------------------------

    def _close_roots(self):
        """All roots / coroots by closing the simple ones under reflections.

        Returns the lists with positive roots first (sorted by height, ties
        by decreasing coordinates so simple root i sits at index i), followed
        by their negatives in the same order.  Entry i of the coroot list is
        the coroot of root i.
        """
        n = self.ss_rank
        a = self.cartan
        simple = []
        for i in range(n):
            e = tuple(int(i == j) for j in range(n))
            simple.append((e, e))
        seen = set(simple)
        frontier = list(simple)
        while frontier:
            nxt = []
            for root, coroot in frontier:
                for i in range(n):
                    # <root, coroot_i> and <alpha_i, coroot>
                    p = sum(root[j] * a[i][j] for j in range(n))
                    c = sum(coroot[j] * a[j][i] for j in range(n))
                    r2 = tuple(x - (p if k == i else 0) for k, x in enumerate(root))
                    c2 = tuple(x - (c if k == i else 0) for k, x in enumerate(coroot))
                    pair = (r2, c2)
                    if pair not in seen:
                        seen.add(pair)
                        nxt.append(pair)
            frontier = nxt
        pos = sorted((p for p in seen if all(x >= 0 for x in p[0])),
                     key=lambda p: (sum(p[0]), tuple(-x for x in p[0])))
        neg = [(tuple(-x for x in r), tuple(-x for x in c)) for r, c in pos]
        pairs = pos + neg
        return [p[0] for p in pairs], [p[1] for p in pairs]

    def _basic_grams(self):
        """Basic invariant form per simple factor, on simple-coroot coords."""
        out = []
        for sl in self.factor_slices:
            # Killing form restricted to the factor, in simple-coroot coords
            k = [[Fraction(0)] * len(sl) for _ in sl]
            for root in self.positive_roots:
                if not any(root[i] for i in sl):
                    continue
                vals = [sum(root[j] * self.cartan[i][j] for j in range(self.ss_rank)) for i in sl]
                for x, vx in enumerate(vals):
                    for y, vy in enumerate(vals):
                        k[x][y] += 2 * vx * vy
            m = min(k[i][i] for i in range(len(sl)))
            scale = Fraction(2) / m
            out.append((k, tuple(tuple(x * scale for x in row) for row in k), m / 4))
        return out

    # ----- basic queries --------------------------------------------------

    @property
    def is_simple(self):
        return len(self.factors) == 1 and self.torus_rank == 0

    @property
    def type_label(self):
        parts = [f"{l}{n}" for l, n in self.factors]
        if self.torus_rank:
            parts.append(f"T{self.torus_rank}")
        return "x".join(parts)

    @property
    def letter(self):
        self._require_simple()
        return self.factors[0][0]

    def _require_simple(self):
        if not self.is_simple:
            raise ValueError(f"operation needs a simple root datum, got {self.type_label}")

    def __eq__(self, other):
        return (isinstance(other, RootDatum) and self.cartan == other.cartan
                and self.factors == other.factors and self.torus_rank == other.torus_rank)

    def __hash__(self):
        return hash((self.cartan, self.factors, self.torus_rank))

    def __repr__(self):
        return f"RootDatum({self.type_label}{', dual' if self.is_dual else ''})"

    @property
    def n_positive(self):
        return len(self.positive_roots)

    def simple_root(self, i):
        return self.roots[i]

    # ----- coordinate conversions ----------------------------------------

    def root_to_weight(self, d):
        """Simple-root coordinates -> fundamental-weight coordinates."""
        n = self.ss_rank
        return tuple(sum(d[j] * self.cartan[i][j] for j in range(n)) for i in range(n)) \
            + (0,) * self.torus_rank

    def coroot_to_coweight(self, c):
        """Simple-coroot coordinates -> fundamental-coweight coordinates."""
        n = self.ss_rank
        return tuple(sum(c[j] * self.cartan[j][i] for j in range(n)) for i in range(n)) \
            + (0,) * self.torus_rank

    def weight_to_root_coords(self, lam):
        n = self.ss_rank
        return _matvec(self._cartan_inv, lam[:n])

    def coweight_to_coroot_coords(self, mu):
        n = self.ss_rank
        return _matvec(self._pair, mu[:n])

    def pairing(self, lam, mu):
        """Exact pairing <weight, coweight>."""
        if len(lam) != self.rank or len(mu) != self.rank:
            raise ValueError(f"dimension mismatch: {len(lam)}, {len(mu)} vs rank {self.rank}")
        n = self.ss_rank
        c = _matvec(self._pair, mu[:n])
        val = sum(Fraction(x) * y for x, y in zip(lam[:n], c))
        val += sum(Fraction(x) * y for x, y in zip(lam[n:], mu[n:]))
        return val

    def root_coroot_pairing(self, d, b):
        """<root, coweight> for a root in simple-root coords and coweight in fundamental coords."""
        return sum(x * y for x, y in zip(d, b))

    def in_root_lattice(self, lam):
        return all(Fraction(x).denominator == 1 for x in self.weight_to_root_coords(lam))

    def in_coroot_lattice(self, mu):
        return all(Fraction(x).denominator == 1 for x in self.coweight_to_coroot_coords(mu))

    # ----- reflections ----------------------------------------------------

    def reflect_weight(self, i, lam):
        p = lam[i]
        col = [self.cartan[k][i] for k in range(self.ss_rank)]
        return tuple(x - p * col[k] if k < self.ss_rank else x for k, x in enumerate(lam))

    def reflect_coweight(self, i, mu):
        p = mu[i]
        row = self.cartan[i]
        return tuple(x - p * row[k] if k < self.ss_rank else x for k, x in enumerate(mu))

    # ----- invariant forms ------------------------------------------------

    def _factor_of(self, i):
        for f, sl in enumerate(self.factor_slices):
            if i in sl:
                return f
        raise IndexError(i)

    def coroot_sq_basic(self, c):
        """kappa_b(coroot, coroot) for a coroot given in simple-coroot coords."""
        total = Fraction(0)
        for f, sl in enumerate(self.factor_slices):
            g = self._basic[f][1]
            idx = list(sl)
            for x, i in enumerate(idx):
                for y, j in enumerate(idx):
                    total += c[i] * c[j] * g[x][y]
        return total

    def killing_gram(self):
        """Killing form as a Gram matrix on fundamental-coweight coordinates."""
        n = self.ss_rank
        g = [[Fraction(0)] * self.rank for _ in range(self.rank)]
        for d in self.positive_roots:
            for i in range(n):
                for j in range(n):
                    g[i][j] += 2 * d[i] * d[j]
        return tuple(tuple(r) for r in g)

    def critical_gram(self):
        """-1/2 times the Killing form."""
        return tuple(tuple(-x / 2 for x in row) for row in self.killing_gram())

    def basic_gram(self):
        """Basic level on fundamental-coweight coordinates (zero on torus coords)."""
        cached = self.__dict__.get("_basic_gram_cache")
        if cached is not None:
            return cached
        n = self.ss_rank
        g = [[Fraction(0)] * self.rank for _ in range(self.rank)]
        for f, sl in enumerate(self.factor_slices):
            kill = self._basic[f][0]
            scale = Fraction(2) / min(kill[x][x] for x in range(len(sl)))
            for d in self.positive_roots:
                if not any(d[i] for i in sl):
                    continue
                for i in sl:
                    for j in sl:
                        g[i][j] += 2 * d[i] * d[j] * scale
        self._basic_gram_cache = tuple(tuple(r) for r in g)
        return self._basic_gram_cache

    def basic_map(self, mu):
        """kappa_b viewed as a map coweights -> weights (fundamental coords)."""
        mat = self.__dict__.get("_basic_map_cache")
        if mat is None:
            n = self.ss_rank
            g = self.basic_gram()
            # entry (i, j) = kappa_b(omega_j, coroot_i) = sum_k g_jk cartan[i][k]
            mat = tuple(tuple(sum(g[j][k] * self.cartan[i][k] for k in range(n)) for j in range(n))
                        for i in range(n))
            self._basic_map_cache = mat
        out = tuple(sum(row[j] * mu[j] for j in range(len(row)) if mu[j]) for row in mat)
        return tuple(Fraction(v) for v in out) + (Fraction(0),) * self.torus_rank

    def basic_map_on_coroot(self, c):
        """kappa_b(coroot) as a weight, for a coroot in simple-coroot coords."""
        return self.basic_map(self.coroot_to_coweight(c))

    def coroot_length_ratio(self, c):
        """kappa_b(coroot, coroot)/2, which is 1 for short coroots and r for long ones."""
        return self.coroot_sq_basic(c) / 2

    # ----- constants (simple types) --------------------------------------

    @property
    def dual_coxeter_number(self):
        self._require_simple()
        h = self._basic[0][2]
        assert h.denominator == 1
        return int(h)

    @property
    def lacing_number(self):
        self._require_simple()
        lens = {self.coroot_sq_basic(self.coroots[i]) for i in range(self.ss_rank)}
        r = max(lens) / min(lens)
        assert r.denominator == 1
        return int(r)

    @property
    def coxeter_number(self):
        """Coxeter number from root heights: height of the highest root plus one."""
        self._require_simple()
        return max(sum(d) for d in self.positive_roots) + 1

    def _dominant(self, vecs, to_fund):
        return [v for v in vecs if all(x >= 0 for x in to_fund(v)[:self.ss_rank])]

    def _short_long(self, vecs, lengths):
        short = min(lengths(v) for v in vecs)
        long_ = max(lengths(v) for v in vecs)
        s = [v for v in vecs if lengths(v) == short]
        l = [v for v in vecs if lengths(v) == long_]
        return s, l

    @property
    def theta_check(self):
        """(short dominant coroot, long dominant coroot) in simple-coroot coords."""
        self._require_simple()
        dom = self._dominant(self.positive_coroots, self.coroot_to_coweight)
        s, l = self._short_long(dom, self.coroot_sq_basic)
        assert len(s) == 1 and len(l) == 1
        return s[0], l[0]

    @property
    def theta_roots(self):
        """(short dominant root, long dominant root) in simple-root coords."""
        self._require_simple()
        dom = self._dominant(self.positive_roots, self.root_to_weight)
        # root length is inverse to coroot length
        lens = lambda d: -self.coroot_sq_basic(self.coroots[self.root_index[d]])
        s, l = self._short_long(dom, lens)
        assert len(s) == 1 and len(l) == 1
        return s[0], l[0]

    # ----- lattices -------------------------------------------------------

    def lattice_bases(self):
        """Bases of Q, Q-check (fundamental coords), weight and coweight lattices."""
        n = self.ss_rank
        eye = [tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank)]
        return {
            "root_lattice": [self.root_to_weight(self.roots[i]) for i in range(n)],
            "coroot_lattice": [self.coroot_to_coweight(self.coroots[i]) for i in range(n)],
            "weight_lattice": eye,
            "coweight_lattice": eye,
        }

    # ----- serialization --------------------------------------------------

    def to_dict(self):
        d = {
            "type": self.type_label,
            "rank": self.rank,
            "dual": self.is_dual,
            "cartan_matrix": [list(r) for r in self.cartan],
            "roots": [list(r) for r in self.positive_roots],
            "coroots": [list(c) for c in self.positive_coroots],
        }
        consts = {
            "n_positive_roots": self.n_positive,
            "rho": list(self.rho),
            "rho_check": list(self.rho_check),
        }
        if self.is_simple:
            ts, tl = self.theta_check
            rs, rl = self.theta_roots
            consts.update({
                "dual_coxeter_number": self.dual_coxeter_number,
                "coxeter_number": self.coxeter_number,
                "lacing_number": self.lacing_number,
                "theta_check_short": list(ts),
                "theta_check_long": list(tl),
                "theta_short": list(rs),
                "theta_long": list(rl),
            })
        d["constants"] = consts
        return d

    def to_json(self, **kw):
        return json.dumps(self.to_dict(), **kw)


@lru_cache(maxsize=None)
def build_root_datum(type_label, rank=None):
    """Build the root datum of a simple type, e.g. ``build_root_datum("G", 2)``.

    ``type_label`` may also be a full label such as ``"B3"`` or a product
    ``"A1xC2xT1"`` when ``rank`` is omitted.
    """
    if rank is None:
        factors, torus = parse_type(type_label)
        return RootDatum(factors, torus)
    letter = str(type_label).strip().upper()
    if isinstance(rank, bool) or not isinstance(rank, int):
        raise ValueError(f"rank must be an integer, got {rank!r}")
    _check_type(letter, rank)
    return RootDatum(((letter, rank),))


@lru_cache(maxsize=None)
def langlands_dual(datum):
    """Langlands dual datum: roots and coroots exchanged, Cartan matrix transposed.

    Node labels are kept, so weights of the dual are coweights of the
    original in the same coordinates.
    """
    swap = {"B": "C", "C": "B"}
    factors = tuple((swap.get(l, l), n) for l, n in datum.factors)
    cartan = _transpose(datum.cartan)
    return RootDatum(factors, datum.torus_rank, cartan=cartan, dual_of=not datum.is_dual)


def pairing(datum, lam, mu):
    return datum.pairing(lam, mu)


def all_simple_types(max_rank=8):
    out = []
    for letter in "ABCDEFG":
        for n in range(1, max_rank + 1):
            if VALID_RANKS[letter](n):
                out.append((letter, n))
    return out
