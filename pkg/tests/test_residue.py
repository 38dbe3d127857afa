import itertools

import pytest

from tatechar.errors import CapExceeded, NonUnit, NotTorsion
from tatechar.localring import frobenius
from tatechar.residue import (
    enumerate_points,
    make_residue_curve,
    point_order,
    weil_pairing_ff,
)


def test_enumerate_demo_curve():
    E = make_residue_curve(5, 1, 1, 1)
    pts = enumerate_points(E)
    assert len(pts) == 9


def test_enumerate_full_two_torsion():
    E = make_residue_curve(5, 1, -1, 0)     # y^2 = x^3 - x
    pts = enumerate_points(E)
    assert len(pts) % 4 == 0
    two_torsion = [P for P in pts if not P.is_infinity()
                   and P.affine_xy()[1].is_zero()]
    assert len(two_torsion) == 3


def test_singular_rejected():
    with pytest.raises(NonUnit):
        make_residue_curve(5, 1, 0, 0)      # y^2 = x^3 has zero discriminant


def test_enumeration_cap():
    E = make_residue_curve(5, 2, 1, 1)
    with pytest.raises(CapExceeded):
        enumerate_points(E, cap=10)


def test_point_order_examples():
    E = make_residue_curve(5, 1, 1, 1)
    assert point_order(E.point(0, 1)) == 9
    assert point_order(E.infinity()) == 1
    n = len(enumerate_points(E))
    for P in enumerate_points(E):
        assert n % point_order(P) == 0      # Lagrange


def test_weil_pairing_alternating(rng):
    E = make_residue_curve(5, 1, 1, 1)
    P = E.point(0, 1)
    assert weil_pairing_ff(P, P, 9, rng=rng) == E.ring.one()
    for k in range(2, 9):
        Q = E.scalar(k, P)
        assert weil_pairing_ff(P, Q, 9, rng=rng) == E.ring.one()


def test_weil_pairing_bilinear_brute(basis3, rng):
    """Nondegeneracy and bilinearity over every pair of E[3] x E[3]."""
    v1, v2, cf = basis3
    S, T = v1.point.residue(), v2.point.residue()
    curve = S.curve
    zeta = weil_pairing_ff(S, T, 3, rng=rng)
    assert zeta != curve.ring.one() and zeta ** 3 == curve.ring.one()
    table = {}
    for i in range(3):
        for j in range(3):
            table[(i, j)] = curve.add(curve.scalar(i, S), curve.scalar(j, T))
    for (i1, j1), (i2, j2) in itertools.product(table, repeat=2):
        e = weil_pairing_ff(table[(i1, j1)], table[(i2, j2)], 3, rng=rng)
        assert e == zeta ** ((i1 * j2 - i2 * j1) % 3)


def test_weil_pairing_compatibility(basis9, rng):
    v1, v2, cf = basis9
    S, T = v1.point.residue(), v2.point.residue()
    curve = S.curve
    e9 = weil_pairing_ff(S, T, 9, rng=rng)
    e3 = weil_pairing_ff(curve.scalar(3, S), curve.scalar(3, T), 3, rng=rng)
    assert e9 ** 3 == e3
    # level-lowering against an ambient 3-torsion second argument
    T3 = curve.scalar(3, T)
    assert weil_pairing_ff(S, T3, 9, rng=rng) \
        == weil_pairing_ff(curve.scalar(3, S), T3, 3, rng=rng)


def test_weil_pairing_galois_equivariant(basis9, rng):
    v1, v2, _ = basis9
    S, T = v1.point.residue(), v2.point.residue()
    curve = S.curve
    def frob_pt(P):
        x, y = P.affine_xy()
        return curve.point(frobenius(x), frobenius(y))
    lhs = weil_pairing_ff(frob_pt(S), frob_pt(T), 9, rng=rng)
    assert lhs == frobenius(weil_pairing_ff(S, T, 9, rng=rng))


def test_weil_pairing_ff_guards(basis3, rng):
    v1, v2, cf = basis3
    with pytest.raises(NotTorsion):
        weil_pairing_ff(v1.point, v2.point, 3, rng=rng)   # m = 2, not residue
    S = v1.point.residue()
    with pytest.raises(NotTorsion):
        weil_pairing_ff(S, S, 5, rng=rng)                  # N divisible by p
