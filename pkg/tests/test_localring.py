from fractions import Fraction

import pytest

from tatechar.errors import (
    InvalidModulus,
    NonUnit,
    OutOfDomain,
    RamifiedRing,
    UnsupportedPrime,
)
from tatechar.localring import (
    LocalRing,
    PrecisionBudget,
    RingElement,
    frobenius,
    make_ring,
    padic_exp,
    padic_log,
    ring_arith,
    teichmuller,
    unit_decompose,
    valuation,
)


def as_int(x):
    return int(x.arr[0, 0])


def test_make_ring_base():
    R = make_ring(5, "base", [0, 1], 2)
    assert R.mod == 25 and R.e == R.f == 1


def test_make_ring_unramified_size():
    R = make_ring(5, "unramified", [2, 1, 1], 2)   # x^2 + x + 2, irreducible
    assert R.f == 2 and R.mod == 25
    # Galois ring of size 5^4
    assert R.mod ** R.df == 5 ** 4


def test_make_ring_eisenstein():
    R = make_ring(5, "eisenstein", [5, 0, 0, 0, 1], 1)
    assert valuation(R.gen()) == Fraction(1, 4)


def test_make_ring_guards():
    with pytest.raises(UnsupportedPrime):
        make_ring(3, "base", [0, 1], 2)
    with pytest.raises(InvalidModulus):
        make_ring(5, "unramified", [1, 0, 1], 2)     # x^2 + 1 reducible mod 5
    with pytest.raises(InvalidModulus):
        make_ring(5, "eisenstein", [25, 0, 1], 2)    # constant divisible by p^2
    with pytest.raises(InvalidModulus):
        make_ring(5, "eisenstein", [5, 1, 1], 2)     # middle coeff not div by p


def test_ring_arith_examples():
    Z125 = make_ring(5, "base", [0, 1], 3)
    assert as_int(ring_arith(Z125.from_int(2), None, "inv_of_a")) == 63
    a = Z125.from_int(17)
    assert ring_arith(a, Z125.one(), "mul") == a
    Z25 = make_ring(5, "base", [0, 1], 2)
    with pytest.raises(NonUnit):
        ring_arith(Z25.from_int(5), None, "inv_of_a")


def test_teichmuller_examples():
    Z25 = make_ring(5, "base", [0, 1], 2)
    t = teichmuller(Z25.from_int(2))
    assert as_int(t) == 7 and t ** 5 == t
    assert teichmuller(Z25.one()) == Z25.one()
    Z5 = make_ring(5, "base", [0, 1], 1)
    assert as_int(teichmuller(Z5.from_int(2))) == 2
    E = make_ring(5, "eisenstein", [5, 0, 0, 0, 1], 2)
    with pytest.raises(RamifiedRing):
        teichmuller(E.one() + E.gen())


def test_unit_decomposition(rng):
    R = LocalRing.unramified(5, 3, 3)
    for _ in range(10):
        u = R.random_unit(rng)
        t, pr = unit_decompose(u)
        assert t * pr == u
        assert t ** (5 ** 3) == t
        assert valuation(pr - R.one()) >= 1


def test_frobenius_properties(rng):
    R = LocalRing.unramified(5, 2, 3)
    a, b = R.random_element(rng), R.random_element(rng)
    assert frobenius(a + b) == frobenius(a) + frobenius(b)
    assert frobenius(a * b) == frobenius(a) * frobenius(b)
    assert frobenius(frobenius(a)) == a
    assert frobenius(R.from_int(19)) == R.from_int(19)
    t = teichmuller(R.random_unit(rng))
    assert frobenius(t) == t ** 5


def test_padic_log_examples():
    Z125 = make_ring(5, "base", [0, 1], 3)
    assert as_int(padic_log(Z125.from_int(6))) == 55
    assert padic_log(Z125.one()).is_zero()
    assert padic_log(Z125.from_int(36)) == padic_log(Z125.from_int(6)) * 2
    with pytest.raises(OutOfDomain):
        padic_log(Z125.from_int(2))


def test_padic_exp_examples():
    Z125 = make_ring(5, "base", [0, 1], 3)
    assert as_int(padic_exp(Z125.from_int(5))) == 81
    assert padic_exp(Z125.zero()) == Z125.one()
    assert padic_exp(padic_log(Z125.from_int(6))) == Z125.from_int(6)
    with pytest.raises(OutOfDomain):
        padic_exp(Z125.from_int(1))


def test_log_homomorphism_random(rng):
    R = LocalRing.unramified(5, 2, 3)
    for _ in range(20):
        u = R.one() + R.from_int(5) * R.random_element(rng)
        v = R.one() + R.from_int(5) * R.random_element(rng)
        assert padic_log(u * v) == padic_log(u) + padic_log(v)


def test_valuation_examples():
    Z125 = make_ring(5, "base", [0, 1], 3)
    assert valuation(Z125.from_int(25)) == 2
    assert valuation(Z125.zero()) == 3          # reported as >= m
    E = make_ring(5, "eisenstein", [5, 0, 0, 0, 1], 2)
    assert valuation(E.gen()) == Fraction(1, 4)
    assert valuation(E.gen() ** 5) == Fraction(5, 4)


def test_precision_monotonicity(rng):
    R = LocalRing.unramified(5, 4, 3)
    for _ in range(15):
        a, b = R.random_element(rng), R.random_element(rng)
        for n in (1, 2):
            assert (a * b).reduce(n) == a.reduce(n) * b.reduce(n)
            assert (a + b).reduce(n) == a.reduce(n) + b.reduce(n)
            assert (a - b).reduce(n) == a.reduce(n) - b.reduce(n)


def test_inverse_exact(rng):
    for R in (LocalRing.base(5, 3), LocalRing.unramified(5, 6, 2),
              make_ring(5, "eisenstein", [10, 5, 0, 0, 1], 3)):
        for _ in range(8):
            u = R.random_unit(rng)
            assert u * u.inverse() == R.one()


def test_exact_div_uniformizer(rng):
    E = make_ring(5, "eisenstein", [10, 5, 0, 0, 1], 3)
    z = E.gen()
    for _ in range(10):
        c = E.random_element(rng)
        assert (z * c).exact_div_uniformizer() * z == z * c


def test_serialization_roundtrip(rng):
    rings = [
        LocalRing.base(5, 3),
        LocalRing.unramified(5, 6, 2),
        make_ring(5, "eisenstein", [5, 0, 0, 0, 1], 2),
    ]
    W = LocalRing.unramified(5, 2, 2)
    rings.append(LocalRing.eisenstein(
        W, [W.from_int(5).arr[0], W.from_int(10).arr[0], W.one().arr[0]], 2))
    for R in rings:
        R2 = LocalRing.from_dict(R.to_dict())
        assert R2.same_ring(R)
        e = R.random_element(rng)
        assert RingElement.from_lists(R2, e.to_lists()).arr.tolist() \
            == e.arr.tolist()


def test_budget_accounting():
    b = PrecisionBudget(nominal=3)
    b.absorb(1)
    assert b.guaranteed == 2
    with pytest.raises(Exception):
        b.absorb(3)
