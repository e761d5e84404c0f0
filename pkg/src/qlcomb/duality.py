"""The Coxeter isomorphism W_{g,kappa} -> W_{g-dual,kappa-dual}.

The map is the identity on W_f (same reduced word in the dual datum, whose
simple reflections carry the same indices) and sends a translation by
mu in Q-check_kappa to the translation by ``eps * (kappa - kappa_c)(mu)``.
The sign ``eps`` is +1 at positive levels and -1 at negative ones; at a
negative level this is the level-kappa map composed with the
identification of W_{g,kappa} with W_{g,2kappa_c - kappa}, and it is what
makes simple reflections go to simple reflections when p < 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .affweyl import affine_weyl_group
from .intweyl import integral_weyl_group
from .levels import DegenerateLevelError, classify_sign, dual_level, translation_lattice
from .rootdata import langlands_dual


class MembershipError(ValueError):
    pass


def _sign(level):
    return 1 if classify_sign(level) == "positive" else -1


def duality_map(x, level, datum=None):
    """Image of x in W_{g-dual, kappa-dual}, an element of the dual datum's
    extended affine Weyl group."""
    G = x.group
    datum = datum or G.datum
    if level.is_critical:
        raise DegenerateLevelError("degenerate: no dual level at the critical level")
    Gd = affine_weyl_group(langlands_dual(datum), G.lattice)
    w = Gd.finite(G.finite_word(x.w))
    if not any(x.t):
        return w
    if not level.is_rational:
        raise MembershipError(f"{G.format_element(x)} is not in W_f (irrational level)")
    lat = translation_lattice(level, datum)
    if not lat.contains(x.t):
        raise MembershipError(f"translation of {G.format_element(x)} is not in Q-check_kappa")
    eps = _sign(level)
    img = datum.basic_map(x.t)
    img = tuple(eps * level.offset * v for v in img)
    assert all(Fraction(v).denominator == 1 for v in img)
    return Gd.mul(w, Gd.translation(tuple(int(v) for v in img)))


def lattice_images(level, datum):
    """Images of the basis of Q-check_kappa in dual simple-coroot coordinates."""
    lat = translation_lattice(level, datum)
    d = langlands_dual(datum)
    eps = _sign(level)
    out = []
    for b in lat.basis:
        img = tuple(eps * level.offset * v for v in datum.basic_map(b))
        out.append(tuple(d.coweight_to_coroot_coords(img)))
    return out


@dataclass
class IsoReport:
    level: str
    dual_level: str
    generators_match: bool
    generator_images: list
    dual_generators: list
    coxeter_matrix: list
    dual_coxeter_matrix: list
    coxeter_match: bool
    lattice_match: bool
    lattice_images: list
    dual_lattice_basis: list
    ball: int
    ball_checked: int
    lengths_match: bool
    homomorphism: bool
    injective: bool
    failures: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.failures

    def to_dict(self):
        return {
            "verdict": "MATCH" if self.ok else "MISMATCH",
            "level": self.level,
            "dual_level": self.dual_level,
            "generators": {"match": self.generators_match, "images": self.generator_images,
                           "dual": self.dual_generators},
            "coxeter": {"match": self.coxeter_match, "matrix": self.coxeter_matrix,
                        "dual_matrix": self.dual_coxeter_matrix},
            "lattice": {"match": self.lattice_match, "images": self.lattice_images,
                        "dual_basis": self.dual_lattice_basis},
            "ball": {"bound": self.ball, "checked": self.ball_checked,
                     "lengths_match": self.lengths_match, "homomorphism": self.homomorphism,
                     "injective": self.injective},
            "failures": self.failures,
        }


def verify_coxeter_iso(level, datum, ball=4):
    """Check generators, Coxeter matrices, lattices and lengths on both sides.

    The dual side is computed on its own by intweyl from the dual datum and
    dual level; the map is then compared against it."""
    dual = langlands_dual(datum)
    kd = dual_level(level, datum)
    W = integral_weyl_group(level, datum)
    Wd = integral_weyl_group(kd, dual)
    G, Gd = W.ambient, Wd.ambient
    failures = []

    images = [duality_map(s, level, datum) for s in W.simple_reflections]
    gens_ok = images == Wd.simple_reflections
    if not gens_ok:
        failures.append("generator images differ from the dual Coxeter generators")

    m, md = W.coxeter_matrix(), Wd.coxeter_matrix()
    cox_ok = m == md
    if not cox_ok:
        failures.append("Coxeter matrices differ")

    if level.is_rational:
        imgs = lattice_images(level, datum)
        dual_lat = translation_lattice(kd, dual)
        dual_basis = [tuple(b) for b in dual_lat.basis_coroot_coords]
        neg = [tuple(abs(v) for v in b) for b in imgs]
        lat_ok = sorted(neg) == sorted(tuple(Fraction(v) for v in b) for b in dual_basis)
    else:
        imgs, dual_basis = [], []
        lat_ok = True
    if not lat_ok:
        failures.append("lattice bases do not correspond")

    gen_ball = W.generated_ball(ball)
    mapped = {}
    lengths_ok = True
    for x, k in gen_ball.items():
        y = duality_map(x, level, datum)
        mapped[x] = y
        if W.intrinsic_length(x) != k or Wd.intrinsic_length(y) != k:
            lengths_ok = False
    injective = len(set(mapped.values())) == len(mapped)
    hom_ok = True
    elems = sorted(gen_ball, key=lambda x: (gen_ball[x], G.sort_key(x)))[:40]
    for a in elems:
        for b in elems:
            if duality_map(G.mul(a, b), level, datum) != Gd.mul(mapped[a], mapped[b]):
                hom_ok = False
    if not lengths_ok:
        failures.append("intrinsic lengths are not preserved on the ball")
    if not injective:
        failures.append("map is not injective on the ball")
    if not hom_ok:
        failures.append("map is not multiplicative on sampled pairs")

    return IsoReport(
        level=level.literal(), dual_level=kd.literal(),
        generators_match=gens_ok,
        generator_images=[Gd.format_element(y) for y in images],
        dual_generators=[Gd.format_element(y) for y in Wd.simple_reflections],
        coxeter_matrix=m, dual_coxeter_matrix=md, coxeter_match=cox_ok,
        lattice_match=lat_ok,
        lattice_images=[[str(v) for v in b] for b in imgs],
        dual_lattice_basis=[[str(v) for v in b] for b in dual_basis],
        ball=ball, ball_checked=len(gen_ball), lengths_match=lengths_ok,
        homomorphism=hom_ok, injective=injective, failures=failures,
    )
