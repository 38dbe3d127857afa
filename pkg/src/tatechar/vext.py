"""The universal vectorial extension as a chord-slope cocycle, and theta.

A point of the extension is a curve point together with a fiber coordinate
(dual to dx/2y).  The group law adds fibers and the chord (or tangent)
slope of the base points; slopes are kept as numerator/denominator pairs so
chains through formal-chart points never divide by a non-unit.  The value
theta(gamma) is the fiber of p^nu (a, 0) + (X, 0), read off through the
identity-fiber translation rule.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import DegenerateConfiguration, PrecisionExhausted, RetriesExhausted
from .curve import LocalPoint, TateVector
from .localring import PrecisionBudget, RingElement


@dataclass
class ExtPoint:
    """Curve point with a fiber coordinate held as a fraction num/den."""

    base: LocalPoint
    fiber_num: RingElement
    fiber_den: RingElement

    @classmethod
    def lift(cls, P: LocalPoint, fiber=None) -> "ExtPoint":
        R = P.curve.ring
        return cls(P, fiber if fiber is not None else R.zero(), R.one())

    @classmethod
    def integral_lift(cls, P: LocalPoint) -> "ExtPoint":
        """An integral lift of P.  The affine-chart trivialization carries a
        pole of shape 1/z at the identity, so formal-chart points must take
        fiber 1/z to land inside the integral model; any integral adjustment
        of that choice moves theta by a multiple of p^nu, which is invisible
        at its stated precision."""
        R = P.curve.ring
        if P.chart == "formal":
            return cls(P, R.one(), P.formal_z())
        return cls(P, R.zero(), R.one())

    def reduce_content(self):
        """Strip matched uniformizer content out of the fiber fraction.

        Returns (reduced point, strip count); each strip is an exact
        uniformizer division, whose top-digit slack the caller accounts for.
        """
        num, den = self.fiber_num, self.fiber_den
        ring = num.ring
        strips = 0
        cap = ring.e * ring.m + 1
        while not den.is_unit() and not num.is_unit():
            if den.is_zero() or num.is_zero():
                break
            num = num.exact_div_uniformizer()
            den = den.exact_div_uniformizer()
            strips += 1
            if strips > cap:
                raise PrecisionExhausted("fiber content strip did not terminate")
        return ExtPoint(self.base, num, den), strips

    def fiber_value(self):
        """The fiber coordinate as a ring element, stripping matched content.

        Returns (value, strip count); integral fibers with a unit denominator
        lose nothing.
        """
        reduced, strips = self.reduce_content()
        num, den = reduced.fiber_num, reduced.fiber_den
        if not den.is_unit():
            raise PrecisionExhausted("fiber coordinate is not integral")
        return num * den.inverse(), strips


def slope_pair(P: LocalPoint, Q: LocalPoint):
    """Chord (tangent) slope of the secant through P and Q as (num, den)."""
    if P == Q:
        a = P.curve.a
        return P.X * P.X * 3 + a * (P.Z * P.Z), P.Y * P.Z * 2
    num = P.Y * Q.Z - Q.Y * P.Z
    den = P.X * Q.Z - Q.X * P.Z
    if num.is_zero() and den.is_zero():
        raise DegenerateConfiguration("slope of a projectively degenerate pair")
    return num, den


def ext_add(A: ExtPoint, B: ExtPoint) -> ExtPoint:
    """(P, z) + (Q, w) = (P + Q, z + w + slope(P, Q)); O-avoiding law.

    Identity-fiber operands translate fibers without a slope term; a sum
    whose base lands on O is refused so callers rearrange their chains.
    """
    if A.base.is_infinity():
        return ExtPoint(B.base,
                        A.fiber_num * B.fiber_den + B.fiber_num * A.fiber_den,
                        A.fiber_den * B.fiber_den)
    if B.base.is_infinity():
        return ext_add(B, A)
    curve = A.base.curve
    S = curve.add(A.base, B.base)
    if S.is_infinity():
        raise DegenerateConfiguration("cocycle law does not evaluate at O")
    ln, ld = slope_pair(A.base, B.base)
    num = (A.fiber_num * B.fiber_den + B.fiber_num * A.fiber_den) * ld \
        + ln * (A.fiber_den * B.fiber_den)
    den = A.fiber_den * B.fiber_den * ld
    return ExtPoint(S, num, den)


@dataclass
class ThetaValue:
    value: RingElement
    level: int
    guaranteed_precision: int

    def to_dict(self):
        return {
            "level": self.level,
            "value": self.value.to_lists(),
            "guaranteed_precision": self.guaranteed_precision,
        }


def _theta_chain(gamma: TateVector, X: LocalPoint):
    """One evaluation of the theta chain against the auxiliary point X."""
    a = gamma.point
    lifted = ExtPoint.integral_lift(a)
    strips = 0
    acc = ext_add(lifted, ExtPoint.lift(X))
    acc, s = acc.reduce_content()
    strips += s
    for _ in range(gamma.level - 1):
        acc = ext_add(acc, lifted)
        acc, s = acc.reduce_content()
        strips += s
    if acc.base != X:
        raise DegenerateConfiguration("chain did not return to the shift")
    val, s = acc.fiber_value()
    return val, strips + s


def theta(gamma: TateVector, n: int | None = None, rng=None,
          budget: PrecisionBudget | None = None, aux: LocalPoint | None = None
          ) -> ThetaValue:
    """The fiber of level * (a, 0) + (X, 0): the image of gamma in the fiber
    over the identity, independent of the auxiliary point X.

    The scalar multiple is evaluated as a flat chain (a,0)+(X,0)+(a,0)+...
    so that no intermediate base point is O; the final base point is X and
    the accumulated fiber is theta.  Unless a fixed auxiliary point is
    forced, the chain runs against two independent X and the agreement
    valuation certifies the guaranteed digits (formal-direction chains pay
    uniformizer divisions whose top-digit slack is hard to bound sharply).
    """
    a = gamma.point
    curve = a.curve
    ring = curve.ring
    nu = _nu_of(gamma.level, ring.p)
    n = ring.m if n is None else min(n, ring.m)
    if a.is_infinity():
        return ThetaValue(ring.zero(), gamma.level, min(n, nu))
    if rng is None:
        rng = random.Random(0x7E7A ^ gamma.level)
    if aux is not None:
        val, strips = _theta_chain(gamma, aux)
        guaranteed = min(n, nu, ring.m - (strips + ring.e - 1) // ring.e)
        if guaranteed < 1:
            raise PrecisionExhausted("theta lost all guaranteed digits")
        return ThetaValue(val.reduce(n) if n < ring.m else val, gamma.level,
                          guaranteed)
    last = None
    best = None
    target = min(n, nu)
    for _ in range(24):
        try:
            v1, s1 = _theta_chain(gamma, curve.random_point(rng))
            v2, s2 = _theta_chain(gamma, curve.random_point(rng))
        except (DegenerateConfiguration, PrecisionExhausted) as exc:
            last = exc
            continue
        diff = v1 - v2
        agree = ring.m if diff.is_zero() else int(diff.valuation())
        guaranteed = min(target, agree)
        if guaranteed < 1:
            last = PrecisionExhausted("theta chains agree on no digits")
            continue
        if best is None or guaranteed > best[1]:
            best = (v1, guaranteed)
        if guaranteed == target:
            break
    if best is None:
        raise RetriesExhausted(f"theta chain kept degenerating: {last}")
    val, guaranteed = best
    if budget is not None:
        budget.absorb(target - guaranteed)
    return ThetaValue(val.reduce(n) if n < ring.m else val, gamma.level,
                      guaranteed)


def _nu_of(level: int, p: int) -> int:
    nu = 0
    while level % p == 0:
        level //= p
        nu += 1
    return nu


def theta_dual_pair(c: RingElement, gamma: TateVector, n: int | None = None,
                    rng=None) -> RingElement:
    """<c, theta(gamma)> in coordinates: the product c * theta(gamma)."""
    th = theta(gamma, n, rng=rng)
    ring = th.value.ring
    if c.ring is not ring and not c.ring.same_ring(ring):
        c = ring.coeff_embed(c)
    return c * th.value
