"""Continuous characters of Tate-module components at finite precision.

A character is stored by its generator images (the evaluation isomorphism at
finite level): each component carries a prime, a finite level, a tag linking
it to the torsion tower it came from, and one unit image.  Products,
reduction, the log_* map and Frobenius conjugation act imagewise.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

from .errors import (
    InsufficientDepth,
    NonUnit,
    OrderMismatch,
    OutOfDomain,
    RamifiedAutomorphism,
    RingMismatch,
)
from .localring import (
    LocalRing,
    PrecisionBudget,
    RingElement,
    frobenius,
    padic_exp,
    padic_log,
    teichmuller,
)


@dataclass(frozen=True)
class CharComponent:
    kind: str               # "ell" for an l-adic factor, "p" for the p-part
    prime: int
    level: int              # the finite level the generator image determines
    tag: str
    image: RingElement


@dataclass(frozen=True)
class Character:
    components: tuple
    precision: int
    smooth_level: str | None = None

    # -- group structure ------------------------------------------------------

    def _match(self, other: "Character"):
        if len(self.components) != len(other.components):
            raise RingMismatch("characters have different domain specs")
        for a, b in zip(self.components, other.components):
            if (a.kind, a.prime, a.level, a.tag) != (b.kind, b.prime, b.level, b.tag):
                raise RingMismatch("characters have different domain specs")

    def __mul__(self, other: "Character") -> "Character":
        self._match(other)
        comps = tuple(replace(a, image=a.image * b.image)
                      for a, b in zip(self.components, other.components))
        return Character(comps, min(self.precision, other.precision))

    def inverse(self) -> "Character":
        comps = tuple(replace(a, image=a.image.inverse())
                      for a in self.components)
        return Character(comps, self.precision)

    def __pow__(self, k: int) -> "Character":
        if k < 0:
            return self.inverse() ** (-k)
        comps = tuple(replace(a, image=a.image ** k) for a in self.components)
        return Character(comps, self.precision)

    def __eq__(self, other):
        if not isinstance(other, Character):
            return NotImplemented
        try:
            self._match(other)
        except RingMismatch:
            return False
        return all(a.image == b.image
                   for a, b in zip(self.components, other.components))

    def __hash__(self):
        return hash(tuple((c.tag, c.image) for c in self.components))

    def reduce(self, n: int) -> "Character":
        comps = tuple(replace(a, image=a.image.reduce(n)) for a in self.components)
        return Character(comps, n, self.smooth_level)

    def is_trivial(self) -> bool:
        return all(c.image == c.image.ring.one() for c in self.components)

    def to_dict(self) -> dict:
        return {
            "domain_spec": [
                {"kind": c.kind, "prime": c.prime, "level": c.level, "tag": c.tag,
                 "ring": c.image.ring.to_dict()}
                for c in self.components
            ],
            "images": [c.image.to_lists() for c in self.components],
            "precision": self.precision,
            "smooth_level": self.smooth_level,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Character":
        comps = []
        for spec, img in zip(d["domain_spec"], d["images"]):
            ring = LocalRing.from_dict(spec["ring"])
            comps.append(CharComponent(spec["kind"], int(spec["prime"]),
                                       int(spec["level"]), spec["tag"],
                                       RingElement.from_lists(ring, img)))
        return cls(tuple(comps), int(d["precision"]), d.get("smooth_level"))


def char_from_images(domain_spec, images, m: int) -> Character:
    """Build a character from generator images; continuity is enforced.

    ``domain_spec``: iterable of (kind, prime, level, tag).
    """
    comps = []
    for (kind, prime, level, tag), img in zip(domain_spec, images):
        if not img.is_unit():
            raise NonUnit(f"character image for {tag} is not a unit")
        if kind == "ell":
            if img ** level != img.ring.one():
                raise OrderMismatch(
                    f"l-adic image for {tag} is not level-{level} torsion")
        comps.append(CharComponent(kind, prime, level, tag, img))
    return Character(tuple(comps), m)


def evaluate(chi: Character, args) -> list:
    """Componentwise evaluation at integer arguments (one per generator)."""
    if len(args) != len(chi.components):
        raise InsufficientDepth("one integer argument per generator required")
    out = []
    for comp, arg in zip(chi.components, args):
        if not isinstance(arg, int):
            raise InsufficientDepth("arguments must be integers at finite level")
        out.append(comp.image ** (arg % _image_period(comp)))
    return out


def _image_period(comp: CharComponent) -> int:
    ring = comp.image.ring
    if comp.kind == "ell":
        return comp.level
    # p-adic component: units of o/p^m have exponent dividing (q-1) p^(m-1) e
    return (ring.p ** ring.df - 1) * ring.p ** (ring.m * max(1, ring.e))


def principal_log(u: RingElement, budget: PrecisionBudget | None = None
                  ) -> RingElement:
    """log of the 1-unit part of u; Teichmuller-splits on unramified rings."""
    ring = u.ring
    one = ring.one()
    if u == one:
        return ring.zero()
    v = (u - one).valuation()
    if v > Fraction(1, ring.p - 1):
        return padic_log(u, budget)
    if ring.kind != "eisenstein":
        t = teichmuller(u)
        return padic_log(u * t.inverse(), budget)
    raise OutOfDomain("unit has no computable principal part on this ring")


def log_star(chi: Character, budget: PrecisionBudget | None = None) -> list:
    """Componentwise log of the principal-unit parts of the images."""
    return [principal_log(c.image, budget) for c in chi.components]


def char_with_given_log(domain_spec, targets, m: int,
                        budget: PrecisionBudget | None = None) -> Character:
    """A character whose log_star equals the given targets exactly.

    Targets must lie in the exponential's domain; the zero target yields the
    canonical trivial image.
    """
    images = []
    for t in targets:
        if t.is_zero():
            images.append(t.ring.one())
        else:
            images.append(padic_exp(t, budget))
    return char_from_images(domain_spec, images, m)


def conjugate(chi: Character, sigma_power: int, action_matrix) -> Character:
    """The conjugated character sigma o chi o sigma_*^{-1}.

    ``action_matrix[i][j]`` gives the coefficient of generator i in
    sigma_*^{-1}(generator j); sigma acts on values as a Frobenius power,
    so every image must live on an unramified tower.
    """
    comps = chi.components
    k = len(comps)
    new = []
    for j in range(k):
        acc = None
        for i in range(k):
            e = action_matrix[i][j] % comps[j].level
            if e == 0:
                continue
            term = comps[i].image ** e
            if acc is None:
                acc = term
            elif acc.ring.same_ring(term.ring):
                acc = acc * term
            else:
                raise RingMismatch("conjugation mixes images across rings")
        if acc is None:
            acc = comps[j].image.ring.one()
        if acc.ring.kind == "eisenstein":
            raise RamifiedAutomorphism("Frobenius conjugation needs unramified data")
        new.append(replace(comps[j], image=frobenius(acc, sigma_power)))
    return Character(tuple(new), chi.precision)


def is_smooth_at_level(chi: Character, galois_generators) -> tuple:
    """True iff chi is fixed by all supplied (frobenius power, matrix) pairs."""
    for power, matrix in galois_generators:
        if conjugate(chi, power, matrix) != chi:
            return False, None
    level = "frobenius^" + ",".join(str(p) for p, _ in galois_generators)
    return True, level
