import pytest

from tatechar.errors import (
    InsufficientDepth,
    NonUnit,
    OrderMismatch,
)
from tatechar.localring import LocalRing, padic_log, teichmuller
from tatechar.characters import (
    Character,
    char_from_images,
    char_with_given_log,
    conjugate,
    evaluate,
    is_smooth_at_level,
    log_star,
)

M = 3
RING = LocalRing.unramified(5, 2, M)
SPEC_P = [("p", 5, 5 ** M, "g0"), ("p", 5, 5 ** M, "g1")]
SPEC_L = [("ell", 3, 9, "t0")]


def test_trivial_character():
    chi = char_from_images(SPEC_P, [RING.one(), RING.one()], M)
    assert chi.is_trivial()
    assert all(v == RING.one() for v in evaluate(chi, [12, -7]))
    assert all(v.is_zero() for v in log_star(chi))


def test_evaluation_homomorphism(rng):
    b = RING.one() + RING.from_int(5) * RING.random_element(rng)
    chi = char_from_images([SPEC_P[0]], [b], M)
    for k in (0, 1, 2, 9):
        assert evaluate(chi, [k])[0] == b ** k
    for _ in range(10):
        x, y = rng.randrange(200), rng.randrange(200)
        vx, vy = evaluate(chi, [x])[0], evaluate(chi, [y])[0]
        assert evaluate(chi, [x + y])[0] == vx * vy
    with pytest.raises(InsufficientDepth):
        evaluate(chi, [])
    with pytest.raises(InsufficientDepth):
        evaluate(chi, ["half"])


def test_continuity_guards(basis3, rng):
    with pytest.raises(NonUnit):
        char_from_images([SPEC_P[0]], [RING.from_int(5)], M)
    # an l-adic image must be torsion of the stated level
    u = RING.one() + RING.from_int(5)
    with pytest.raises(OrderMismatch):
        char_from_images([("ell", 3, 9, "t")], [u], M)


def test_group_structure(rng):
    imgs1 = [RING.random_unit(rng), RING.random_unit(rng)]
    imgs2 = [RING.random_unit(rng), RING.random_unit(rng)]
    c1 = char_from_images(SPEC_P, imgs1, M)
    c2 = char_from_images(SPEC_P, imgs2, M)
    prod = c1 * c2
    assert prod == c2 * c1                  # pointwise product is abelian
    assert prod.components[0].image == imgs1[0] * imgs2[0]
    assert (c1 * c1.inverse()).is_trivial()
    assert c1 ** 3 == c1 * c1 * c1
    assert prod.reduce(2).components[1].image == (imgs1[1] * imgs2[1]).reduce(2)


def test_log_star_kernel_is_torsion(rng):
    # root-of-unity valued characters are exactly the kernel of log_star
    t = teichmuller(RING.random_unit(rng))
    chi = char_from_images(SPEC_P, [t, RING.one()], M)
    assert all(v.is_zero() for v in log_star(chi))
    u = RING.one() + RING.from_int(5) * RING.random_unit(rng)
    chi2 = char_from_images(SPEC_P, [t * u, RING.one()], M)
    ls = log_star(chi2)
    assert ls[0] == padic_log(u)
    assert not ls[0].is_zero()


def test_log_star_homomorphism(rng):
    for _ in range(5):
        u1 = RING.one() + RING.from_int(5) * RING.random_element(rng)
        u2 = RING.one() + RING.from_int(5) * RING.random_element(rng)
        c1 = char_from_images([SPEC_P[0]], [u1], M)
        c2 = char_from_images([SPEC_P[0]], [u2], M)
        assert log_star(c1 * c2)[0] == log_star(c1)[0] + log_star(c2)[0]


def test_char_with_given_log_roundtrip(rng):
    for _ in range(10):
        t0 = RING.from_int(5) * RING.random_element(rng)
        t1 = RING.from_int(5) * RING.random_element(rng)
        chi = char_with_given_log(SPEC_P, [t0, t1], M)
        got = log_star(chi)
        assert got[0] == t0 and got[1] == t1
    # target 0 gives the canonical trivial image
    chi0 = char_with_given_log(SPEC_P, [RING.zero(), RING.zero()], M)
    assert chi0.is_trivial()
    # consistency with the exponential oracle on the base ring
    Z125 = LocalRing.base(5, 3)
    chi5 = char_with_given_log([("p", 5, 125, "z")], [Z125.from_int(5)], 3)
    assert int(chi5.components[0].image.arr[0, 0]) == 81


def test_conjugate_trivial_and_involution(rng):
    imgs = [RING.random_unit(rng), RING.random_unit(rng)]
    chi = char_from_images(SPEC_P, imgs, M)
    ident = [[1, 0], [0, 1]]
    triv = char_from_images(SPEC_P, [RING.one(), RING.one()], M)
    assert conjugate(triv, 1, ident).is_trivial()
    back = conjugate(conjugate(chi, 1, ident), 1, ident)
    assert back == chi        # f = 2, frobenius is an involution


def test_smoothness_predicate(rng):
    ident = [[1, 0], [0, 1]]
    base_img = RING.from_int(2)     # fixed by frobenius
    chi = char_from_images([SPEC_P[0], SPEC_P[1]],
                           [teichmuller(base_img), RING.one()], M)
    ok, level = is_smooth_at_level(chi, [(1, ident)])
    assert ok and "frobenius" in level
    moved = char_from_images(SPEC_P, [teichmuller(RING.gen()), RING.one()], M)
    ok2, _ = is_smooth_at_level(moved, [(1, ident)])
    assert not ok2


def test_serialization_roundtrip(rng):
    chi = char_from_images(SPEC_P, [RING.random_unit(rng), RING.random_unit(rng)], M)
    d = chi.to_dict()
    chi2 = Character.from_dict(d)
    assert chi2 == chi and chi2.precision == chi.precision
