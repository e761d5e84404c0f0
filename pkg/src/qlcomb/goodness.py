"""Good levels: the coprimality table and a lattice-point oracle on the alcove.

At a rational level with offset p/q the Coxeter generators of W_{g,kappa}
are the finite simple reflections and one affine reflection whose wall is
``<lam + rho, theta> = p'`` (theta the coroot picked by the case split on
gcd(q, r), p' any representative of p + qZ).  Antidominant weights at a
negative representative p' = -P correspond, via ``mu = -lam - rho``, to
integral points of the alcove

    <mu, coroot_i> >= 0,   <mu, theta> <= P,

with vertices 0 and (P / n_i) omega_i, n_i the coefficients of theta.  A
weight's dot stabilizer is generated by the walls it lies on, so every
proper subset of generators (a finite parabolic) is realized iff the
matching face of the alcove has an integral point in its relative
interior for some admissible P.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd

from .intweyl import coroot_pairing, extra_generator, integral_weyl_group
from .levels import Level
from .rootdata import parse_type

_BAD = {"A": 1, "B": 2, "C": 2, "D": 2, "G": 6, "F": 6, "E6": 6, "E7": 6, "E8": 30}


def bad_prime_product(type_label):
    """n(g): the product of the bad primes of a simple type."""
    factors, torus = parse_type(type_label)
    if len(factors) != 1 or torus:
        raise ValueError(f"bad primes are tabulated for simple types, got {type_label!r}")
    (letter, rank), = factors
    key = f"E{rank}" if letter == "E" else letter
    return _BAD[key]


def is_good_table(level, datum):
    if not level.is_rational:
        return True
    if level.is_critical:
        raise ValueError("goodness is not defined at the critical level")
    return gcd(level.q, bad_prime_product(datum.type_label)) == 1


def theta_coefficients(level, datum):
    """Coefficients of the coroot whose wall bounds the alcove, in simple coroots."""
    gen = extra_generator(level, datum)
    neg = datum.coroots[gen.root]
    return tuple(-x for x in neg)


@dataclass
class AlcoveModel:
    """The alcove in mu-coordinates (fundamental-weight coordinates) for a
    given bound P.  Vertex 0 is the origin, vertex i+1 is (P / n_i) omega_i."""

    coefficients: tuple
    P: int

    @property
    def rank(self):
        return len(self.coefficients)

    @property
    def vertices(self):
        n = self.rank
        out = [tuple(Fraction(0) for _ in range(n))]
        for i, c in enumerate(self.coefficients):
            out.append(tuple(Fraction(self.P, c) if j == i else Fraction(0) for j in range(n)))
        return out

    def barycentric(self, mu):
        """Barycentric coordinates (t_0, t_1, ..., t_n) of mu."""
        ts = [Fraction(a * c, self.P) for a, c in zip(mu, self.coefficients)]
        return [1 - sum(ts)] + ts

    def face_vertices(self, subset):
        """Vertices of the face fixed by a generator subset (finite indices
        0..n-1, affine index n): the affine wall drops vertex 0 and the wall
        of s_i drops vertex i+1."""
        n = self.rank
        keep = [] if n in subset else [0]
        keep += [i + 1 for i in range(n) if i not in subset]
        return keep

    def faces(self):
        n = self.rank
        return [frozenset(s) for k in range(n + 1) for s in combinations(range(n + 1), k)]

    def in_face_interior(self, mu, subset):
        bary = self.barycentric(mu)
        keep = set(self.face_vertices(subset))
        return all((t > 0) if i in keep else (t == 0) for i, t in enumerate(bary))


def _coin_table(coins, limit):
    """reach[v] = index of a coin ending some representation of v (or -1 for
    v == 0, None when v is not a nonnegative combination)."""
    reach = [None] * (limit + 1)
    reach[0] = -1
    for v in range(1, limit + 1):
        for k, c in enumerate(coins):
            if c <= v and reach[v - c] is not None:
                reach[v] = k
                break
    return reach


def _unwind(reach, coins, v):
    out = [0] * len(coins)
    while v:
        k = reach[v]
        out[k] += 1
        v -= coins[k]
    return out


def face_witnesses(coefficients, subset, bounds):
    """For the first P in ``bounds`` admitting one, (P, mu) with mu integral in
    the relative interior of the face; None when no bound works."""
    n = len(coefficients)
    free = [i for i in range(n) if i not in subset]
    base = sum(coefficients[i] for i in free)
    if n not in subset:
        for P in bounds:
            if base < P:
                return P, tuple(int(i in free) for i in range(n))
        return None
    coins = [coefficients[i] for i in free]
    targets = [P - base for P in bounds]
    top = max(targets, default=-1)
    if top < 0:
        return None
    reach = _coin_table(coins, top)
    for P, t in zip(bounds, targets):
        if t >= 0 and reach[t] is not None:
            extra = _unwind(reach, coins, t)
            mu = [0] * n
            for i, b in zip(free, extra):
                mu[i] = 1 + b
            return P, tuple(mu)
    return None


def face_witness(coefficients, subset, P):
    """An integral mu in the relative interior of the face at bound P, or None."""
    found = face_witnesses(coefficients, subset, [P])
    return None if found is None else found[1]


def default_width(level, datum):
    """Number of p-representatives searched by default.

    With N = rank + 2 and L the lcm of the theta coefficients, every face
    has a witness at any P divisible by N * L (convex combinations of the
    vertices with weights in (1/N)Z), and when gcd(q, L) = 1 such a P occurs
    among any N * L consecutive representatives.  The smaller q * (rank + 2)
    falls short at q = 1 for F4 and E6."""
    n = datum.rank
    lcm = 1
    for c in theta_coefficients(level, datum):
        lcm = lcm * c // gcd(lcm, c)
    return max(level.q * (n + 2), (n + 2) * lcm)


def _p_candidates(level, width):
    """Bounds P = -p' for negative representatives p' of p + qZ.  The level's
    own p comes first when it is already negative."""
    p, q = level.p, level.q
    out = []
    if p < 0:
        out.append(-p)
    P = (-p) % q or q
    while len(out) < width:
        if P not in out:
            out.append(P)
        P += q
    return out[:width]


@dataclass
class OracleResult:
    status: str
    certificate: list = field(default_factory=list)

    @property
    def good(self):
        return {"good": True, "not good": False}.get(self.status)

    def to_dict(self):
        return {"status": self.status, "good": self.good, "certificate": self.certificate}


def is_good_alcove_oracle(level, datum, p_search_width=None):
    """Decide goodness by finding, for every proper generator subset, an
    integral point in the relative interior of the matching face."""
    if level.is_critical:
        raise ValueError("goodness is not defined at the critical level")
    n = datum.rank
    if not level.is_rational:
        cert = [{"face": sorted(s), "witness": [0 if i in s else 1 for i in range(n)]}
                for k in range(n + 1) for s in combinations(range(n), k)]
        return OracleResult("good", cert)
    width = p_search_width or default_width(level, datum)
    coeffs = theta_coefficients(level, datum)
    model = AlcoveModel(coeffs, 1)
    cert = []
    status = "good"
    for face in model.faces():
        hit = face_witnesses(coeffs, face, _p_candidates(level, width))
        if hit is not None:
            P, mu = hit
            assert AlcoveModel(coeffs, P).in_face_interior(mu, face)
            cert.append({"face": sorted(face), "P": P, "witness": list(mu)})
            continue
        free = [coeffs[i] for i in range(n) if i not in face]
        g = 0
        for c in free:
            g = gcd(g, c)
        # every admissible P is -p mod q; the face needs g | P
        if n in face and gcd(g, level.q) > 1 and level.p % gcd(g, level.q) != 0:
            cert.append({"face": sorted(face), "exhausted": {"gcd": g, "q": level.q,
                                                             "residue": (-level.p) % level.q}})
            status = "not good"
        else:
            cert.append({"face": sorted(face), "inconclusive": True})
            if status == "good":
                status = "inconclusive"
    return OracleResult(status, cert)


class NoWitnessError(ValueError):
    def __init__(self, face, message):
        super().__init__(message)
        self.face = face


def dot_stabilizer_generators(lam, level, datum):
    """Indices of the Coxeter generators of W_{g,kappa} fixing lam under the dot action."""
    W = integral_weyl_group(level, datum)
    G = W.ambient
    return [i for i, s in enumerate(W.simple_reflections)
            if tuple(G.dot_action(s, lam, level)) == tuple(lam)]


def antidominance_slack(lam, level, datum):
    """-<lam + rho, a> for each Coxeter generator's positive coroot a at the
    given level (all must be >= 0 for antidominance)."""
    W = integral_weyl_group(level, datum)
    rho = datum.rho
    shifted = tuple(Fraction(a) + b for a, b in zip(lam, rho))
    return [-coroot_pairing(c, shifted, level, datum) for c in W.simple_coroots]


def antidominant_weight_with_stabilizer(subset, level, datum, p_search_width=None):
    """An integral weight lam and an integral shift m (kappa' = m kappa_b)
    with lam antidominant at kappa + kappa' and dot stabilizer generated by
    exactly ``subset`` (generator indices; the affine one is ``rank``)."""
    n = datum.rank
    subset = frozenset(subset)
    rho = datum.rho
    if not level.is_rational:
        if n in subset or any(i > n for i in subset):
            raise ValueError("irrational levels only have the finite generators")
        mu = tuple(0 if i in subset else 1 for i in range(n))
        shift = 0
        target = level
    else:
        if len(subset) == n + 1:
            raise ValueError("the full generator set is not a finite parabolic")
        coeffs = theta_coefficients(level, datum)
        width = p_search_width or default_width(level, datum)
        hit = face_witnesses(coeffs, subset, _p_candidates(level, width))
        if hit is None:
            raise NoWitnessError(sorted(subset), f"no antidominant weight with stabilizer {sorted(subset)}")
        P, mu = hit
        pprime = -P
        shift = Fraction(pprime - level.p, level.q)
        assert shift.denominator == 1
        shift = int(shift)
        target = Level.rational(Fraction(pprime, level.q))
    lam = tuple(-a - r for a, r in zip(mu, rho))
    stab = dot_stabilizer_generators(lam, target, datum)
    if set(stab) != set(subset):
        raise AssertionError(f"stabilizer {stab} differs from requested {sorted(subset)}")
    if any(x < 0 for x in antidominance_slack(lam, target, datum)):
        raise AssertionError("witness is not antidominant")
    return lam, shift


__all__ = [
    "AlcoveModel", "OracleResult", "NoWitnessError", "bad_prime_product", "is_good_table",
    "is_good_alcove_oracle", "antidominant_weight_with_stabilizer", "dot_stabilizer_generators",
    "antidominance_slack", "face_witness", "theta_coefficients",
]
