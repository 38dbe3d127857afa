"""Finite-field oracle layer: enumeration, orders, and the Weil pairing.

Residue curves are LocalCurves over precision-1 unramified rings, so the
whole arithmetic stack is shared; this module adds the brute-force oracles
(full point enumeration, order computation by factored group order) and the
finite-field specialization of the pairing.
"""

from __future__ import annotations

from .errors import CapExceeded, NotTorsion
from .localring import LocalRing
from .curve import LocalCurve, LocalPoint, residue_point_order
from .pairing import weil_pairing


# residue curves and points are ordinary local curves at precision 1
ResidueCurve = LocalCurve
ResiduePoint = LocalPoint


def make_residue_curve(p: int, f: int, a: int, b: int, seed: int = 0) -> LocalCurve:
    """y^2 = x^3 + a x + b over F_{p^f} as a precision-1 local curve."""
    return LocalCurve(LocalRing.unramified(p, f, 1), a, b, seed=seed)


def _field_elements(ring: LocalRing):
    p, f = ring.p, ring.df
    coeffs = [0] * f
    for _ in range(p ** f):
        yield ring.element([list(coeffs)])
        for i in range(f):
            coeffs[i] += 1
            if coeffs[i] < p:
                break
            coeffs[i] = 0


def enumerate_points(E: LocalCurve, cap: int = 10 ** 6):
    """All points of E(F_q) including infinity; q must stay under the cap."""
    ring = E.ring
    if ring.m != 1:
        raise NotTorsion("enumeration is a residue-field oracle")
    q = ring.p ** ring.df
    if q > cap:
        raise CapExceeded(f"enumeration cap {cap} exceeded by q = {q}")
    roots = {}
    for y in _field_elements(ring):
        roots.setdefault((y * y).arr.tobytes(), []).append(y)
    points = [E.infinity()]
    for x in _field_elements(ring):
        c = x ** 3 + E.a * x + E.b
        for y in roots.get(c.arr.tobytes(), []):
            points.append(E.point(x, y))
    return points


def point_order(P: LocalPoint) -> int:
    """Least k >= 1 with k P = O in the residue group."""
    if P.is_infinity():
        return 1
    return residue_point_order(P)


def weil_pairing_ff(S: LocalPoint, T: LocalPoint, N: int, rng=None):
    """The finite-field Weil pairing e_N, N prime to the characteristic.

    No field extension is ever required: whenever both inputs are rational
    the value lies in mu_N(F_q), which is trivial exactly when the inputs
    are forced into a cyclic configuration.
    """
    ring = S.curve.ring
    if ring.m != 1:
        raise NotTorsion("weil_pairing_ff operates on residue curves")
    if N % ring.p == 0:
        raise NotTorsion("finite-field pairing requires gcd(N, p) = 1")
    return weil_pairing(S, T, N, rng=rng)
