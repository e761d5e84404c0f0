"""Levels, dual levels, sign classification and the lattices Q-check_kappa.

A level on a simple factor is recorded by its offset from critical in
basic-level units: ``kappa - kappa_c = offset * kappa_b``.  Rational levels
carry an exact ``Fraction``; irrational ones carry ``coef * xi**power`` for
a single formal irrational unit ``xi`` (``power`` is -1 after dualizing).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from math import gcd


class DegenerateLevelError(ValueError):
    pass


@dataclass(frozen=True)
class XiValue:
    """Exact number ``rat + irr * xi**power`` with ``xi`` a formal irrational."""

    rat: Fraction = Fraction(0)
    irr: Fraction = Fraction(0)
    power: int = 1

    def _coerce(self, other):
        if isinstance(other, XiValue):
            if other.irr and self.irr and other.power != self.power:
                raise ValueError("mixing xi and 1/xi")
            return other
        return XiValue(Fraction(other), Fraction(0), self.power)

    def __add__(self, other):
        o = self._coerce(other)
        p = self.power if self.irr else o.power
        return XiValue(self.rat + o.rat, self.irr + o.irr, p)

    __radd__ = __add__

    def __neg__(self):
        return XiValue(-self.rat, -self.irr, self.power)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, XiValue):
            if other.irr and self.irr:
                raise ValueError("product of two irrational parts")
            if other.irr:
                return other * self.rat
            other = other.rat
        f = Fraction(other)
        return XiValue(self.rat * f, self.irr * f, self.power)

    __rmul__ = __mul__

    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, XiValue) else other
        if self.irr == 0 and o.irr == 0:
            return self.rat == o.rat
        return (self.rat, self.irr, self.power) == (o.rat, o.irr, o.power)

    def __hash__(self):
        if self.irr == 0:
            return hash(self.rat)
        return hash((self.rat, self.irr, self.power))

    def is_integer(self):
        return self.irr == 0 and self.rat.denominator == 1

    def __repr__(self):
        if not self.irr:
            return str(self.rat)
        unit = "xi" if self.power == 1 else "xi^-1"
        return f"{self.rat}+{self.irr}*{unit}"


@dataclass(frozen=True)
class Level:
    """Level on a simple factor, as an offset from the critical level."""

    offset: Fraction | None = None
    coef: Fraction | None = None
    power: int = 1

    def __post_init__(self):
        if (self.offset is None) == (self.coef is None):
            raise ValueError("a level is either rational or irrational")
        if self.offset is not None:
            object.__setattr__(self, "offset", Fraction(self.offset))
        else:
            c = Fraction(self.coef)
            if c == 0:
                raise ValueError("irrational coefficient must be nonzero")
            object.__setattr__(self, "coef", c)

    @classmethod
    def rational(cls, offset):
        return cls(offset=Fraction(offset))

    @classmethod
    def irrational(cls, coef=1, power=1):
        return cls(coef=Fraction(coef), power=power)

    @classmethod
    def from_multiple(cls, k, datum):
        """The level ``k * kappa_b``."""
        return cls(offset=Fraction(k) + datum.dual_coxeter_number)

    @property
    def is_rational(self):
        return self.offset is not None

    @property
    def is_critical(self):
        return self.is_rational and self.offset == 0

    @property
    def p(self):
        self._need_rational()
        return self.offset.numerator

    @property
    def q(self):
        self._need_rational()
        return self.offset.denominator

    def _need_rational(self):
        if not self.is_rational:
            raise ValueError("irrational level has no p/q")

    def multiple(self, datum):
        """k with kappa = k * kappa_b (rational levels)."""
        self._need_rational()
        return self.offset - datum.dual_coxeter_number

    def shift(self, m):
        """kappa + m * kappa_b for an integer m."""
        if self.is_rational:
            return Level(offset=self.offset + m)
        return self

    def reflected(self):
        """2 kappa_c - kappa, which differs from -kappa by an integral level."""
        if self.is_rational:
            return Level(offset=-self.offset)
        return Level(coef=-self.coef, power=self.power)

    def shift_value(self):
        """kappa - kappa_c in basic-level units, as an exact number."""
        if self.is_rational:
            return self.offset
        return XiValue(Fraction(0), self.coef, self.power)

    def literal(self):
        if self.is_rational:
            o = self.offset
            return "-h" if o == 0 else f"-h{'+' if o > 0 else '-'}{abs(o)}"
        tag = "irr" if self.coef == 1 else f"irr:{self.coef}"
        return tag if self.power == 1 else f"{tag}:inv"

    def to_dict(self):
        if self.is_rational:
            return {"kind": "rational", "literal": self.literal(),
                    "offset": str(self.offset), "p": self.p, "q": self.q}
        return {"kind": "irrational", "literal": self.literal(),
                "coef": str(self.coef), "power": self.power}

    def __str__(self):
        return self.literal()


_LEVEL_RE = re.compile(r"^-h(?:\s*([+-])\s*(\d+)(?:/(\d+))?)?$")


def parse_level(text):
    """Parse ``"-h+3/5"``, ``"-h-1/3"``, ``"-h"`` or ``"irr"`` / ``"irr:2/3"``."""
    s = text.strip().replace(" ", "")
    if s.startswith("irr"):
        parts = s.split(":")
        if parts[0] != "irr" or len(parts) > 3:
            raise ValueError(f"bad level literal {text!r}")
        coef = Fraction(parts[1]) if len(parts) > 1 and parts[1] != "inv" else Fraction(1)
        power = -1 if parts[-1] == "inv" and len(parts) > 1 else 1
        return Level.irrational(coef, power)
    m = _LEVEL_RE.match(s)
    if not m:
        raise ValueError(f"bad level literal {text!r}; expected e.g. '-h+3/5' or 'irr'")
    sign, num, den = m.groups()
    if sign is None:
        return Level.rational(0)
    if den is not None and int(den) == 0:
        raise ValueError("zero denominator")
    val = Fraction(int(num), int(den) if den else 1)
    return Level.rational(val if sign == "+" else -val)


def classify_sign(level):
    if level.is_critical:
        return "critical"
    if level.is_rational and level.offset > 0:
        return "positive"
    return "negative"


def dual_level(level, datum):
    """The dual level on the Langlands dual datum.

    For ``kappa = (-h + p/q) kappa_b`` this is ``(-h_dual + q/(p r)) kappa_b``.
    """
    if level.is_critical:
        raise DegenerateLevelError("degenerate: no dual level at the critical level")
    r = datum.lacing_number
    if level.is_rational:
        return Level(offset=1 / (level.offset * r))
    return Level(coef=1 / (level.coef * r), power=-level.power)


def negate_level(level, datum):
    """-kappa.  For irrational levels the reflected level is returned instead,
    which agrees with -kappa up to the integral level 2 kappa_c."""
    if level.is_rational:
        return Level(offset=2 * datum.dual_coxeter_number - level.offset)
    return level.reflected()


def shift_map(level, datum, mu):
    """(kappa - kappa_c)(mu) as a weight in fundamental coordinates."""
    base = datum.basic_map(mu)
    v = level.shift_value()
    return tuple(v * x for x in base)


def is_integral_level(k, datum):
    """Whether the form ``k * kappa_b`` maps Q-check into Q."""
    for i in range(datum.ss_rank):
        img = datum.basic_map(datum.coroot_to_coweight(datum.coroots[i]))
        if not datum.in_root_lattice(tuple(Fraction(k) * x for x in img)):
            return False
    return True


@dataclass(frozen=True)
class TranslationLattice:
    """Sublattice of Q-check, diagonal in the simple-coroot basis.

    ``multipliers[i]`` is the least positive c with c * coroot_i in the
    lattice; ``None`` entries mean only 0 (irrational levels).
    """

    datum: object
    multipliers: tuple

    @property
    def is_zero(self):
        return any(m is None for m in self.multipliers)

    @property
    def basis(self):
        if self.is_zero:
            return []
        d = self.datum
        out = []
        for i, m in enumerate(self.multipliers):
            c = tuple(m if j == i else 0 for j in range(d.ss_rank))
            out.append(d.coroot_to_coweight(c))
        return out

    @property
    def basis_coroot_coords(self):
        if self.is_zero:
            return []
        n = len(self.multipliers)
        return [tuple(m if j == i else 0 for j in range(n)) for i, m in enumerate(self.multipliers)]

    @property
    def index(self):
        """[Q-check : lattice], or None when infinite."""
        if self.is_zero:
            return None
        out = 1
        for m in self.multipliers:
            out *= m
        return out

    def contains(self, mu):
        d = self.datum
        c = d.coweight_to_coroot_coords(mu)
        if any(Fraction(x).denominator != 1 for x in c):
            return False
        if self.is_zero:
            return all(x == 0 for x in c)
        return all(int(x) % m == 0 for x, m in zip(c, self.multipliers))

    def contains_coroot_coords(self, c):
        if self.is_zero:
            return all(x == 0 for x in c)
        return all(x % m == 0 for x, m in zip(c, self.multipliers))

    def to_dict(self):
        return {"basis": [list(b) for b in self.basis], "index": self.index}


@lru_cache(maxsize=None)
def translation_lattice(level, datum):
    """{mu in Q-check : (kappa - kappa_c)(mu) in Q} for a simple datum."""
    n = datum.ss_rank
    if not level.is_rational:
        return TranslationLattice(datum, tuple([None] * n))
    mults = []
    for i in range(n):
        img = datum.basic_map_on_coroot(datum.coroots[i])
        img = tuple(level.offset * x for x in img)
        rc = datum.weight_to_root_coords(img)
        # invariance forces the image to be a multiple of alpha_i
        assert all(x == 0 for j, x in enumerate(rc) if j != i)
        c = Fraction(rc[i])
        mults.append(c.denominator)
    return TranslationLattice(datum, tuple(mults))


def level_sweep(count, max_q=12, max_p=24):
    """The first ``count`` noncritical rational levels ordered by (q, p)."""
    out = []
    for q in range(1, max_q + 1):
        for p in range(-max_p, max_p + 1):
            if p != 0 and gcd(p, q) == 1:
                out.append(Level.rational(Fraction(p, q)))
                if len(out) == count:
                    return out
    return out
