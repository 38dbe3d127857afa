"""Elliptic curves over truncated local rings.

Points are projective triples over the ring; a single bidegree (2,2)
addition law covers generic pairs, doublings and mixed affine/formal-chart
configurations, and the rare degenerate evaluation falls back to a seeded
random-shift rearrangement.  Near-identity points use the formal parameter
z = -x/y; series for the formal group (multiplication by N, the logarithm)
come from seriestools.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .errors import (
    CapExceeded,
    DegenerateConfiguration,
    HenselFailure,
    IterationCapExceeded,
    NonUnit,
    NotTorsion,
    OutOfDomain,
    RetriesExhausted,
    RingMismatch,
    SupersingularReduction,
)
from .localring import (
    LocalRing,
    PrecisionBudget,
    RingElement,
    _int_val,
    _series_terms_needed,
)
from . import seriestools as st


class LocalCurve:
    """y^2 = x^3 + a x + b over a LocalRing, with good reduction."""

    def __init__(self, ring: LocalRing, a, b, seed: int = 0):
        self.ring = ring
        self.a = a if isinstance(a, RingElement) else ring.from_int(a)
        self.b = b if isinstance(b, RingElement) else ring.from_int(b)
        disc = self.a ** 3 * 4 + self.b ** 2 * 27
        if not disc.is_unit():
            raise NonUnit("discriminant must be a unit (good reduction)")
        self.seed = seed
        self._rng = random.Random(seed)
        self._cache = {}

    # -- basic points ---------------------------------------------------------

    def infinity(self) -> "LocalPoint":
        R = self.ring
        return LocalPoint(self, R.zero(), R.one(), R.zero(), check=False)

    def point(self, x, y) -> "LocalPoint":
        x = x if isinstance(x, RingElement) else self.ring.from_int(x)
        y = y if isinstance(y, RingElement) else self.ring.from_int(y)
        return LocalPoint(self, x, y, self.ring.one())

    def formal_point(self, z: RingElement) -> "LocalPoint":
        """The point with formal parameter z (requires v(z) > 0)."""
        if z.is_unit():
            raise OutOfDomain("formal parameter must be topologically nilpotent")
        w = self._w_at(z)
        return LocalPoint(self, z, -self.ring.one(), w)

    def _w_at(self, z: RingElement) -> RingElement:
        w = z ** 3
        az, b = self.a * z, self.b
        for _ in range(2 * self.ring.m * self.ring.e + 8):
            w2 = z ** 3 + az * w * w + b * w * w * w
            if w2 == w:
                return w
            w = w2
        raise IterationCapExceeded("w(z) iteration failed to stabilize")

    # -- structure ------------------------------------------------------------

    def reduce(self, n: int) -> "LocalCurve":
        if n == self.ring.m:
            return self
        key = ("red", n)
        if key not in self._cache:
            self._cache[key] = LocalCurve(self.ring.reduce_ring(n),
                                          self.a.reduce(n), self.b.reduce(n),
                                          seed=self.seed)
        return self._cache[key]

    def residue_curve(self) -> "LocalCurve":
        key = ("residue",)
        if key not in self._cache:
            rr = self.ring.residue_ring()
            self._cache[key] = LocalCurve(rr, self.a.residue(), self.b.residue(),
                                          seed=self.seed)
        return self._cache[key]

    def change_ring(self, ring: LocalRing) -> "LocalCurve":
        return LocalCurve(ring, ring.coeff_embed(self.a), ring.coeff_embed(self.b),
                          seed=self.seed)

    def ab_ints(self):
        """Integer coefficients, defined when a, b come from the base ring."""
        for c in (self.a, self.b):
            if np.any(c.arr[1:]) or np.any(c.arr[0, 1:]):
                raise RingMismatch("curve coefficients are not base-valued")
        return int(self.a.arr[0, 0]), int(self.b.arr[0, 0])

    def base_trace(self) -> int:
        """Trace of Frobenius a_p, by brute count over the prime field."""
        key = ("trace",)
        if key not in self._cache:
            p = self.ring.p
            a, b = self.ab_ints()
            count = 1
            for x in range(p):
                t = (x * x * x + a * x + b) % p
                if t == 0:
                    count += 1
                elif pow(t, (p - 1) // 2, p) == 1:
                    count += 2
            self._cache[key] = p + 1 - count
        return self._cache[key]

    def group_order(self, f: int) -> int:
        """#E(F_{p^f}) from the Frobenius trace recursion."""
        p = self.ring.p
        ap = self.base_trace()
        s0, s1 = 2, ap
        for _ in range(f - 1):
            s0, s1 = s1, ap * s1 - p * s0
        return p ** f + 1 - s1

    def is_ordinary(self) -> bool:
        return self.base_trace() % self.ring.p != 0

    # -- group law -------------------------------------------------------------

    def add(self, P: "LocalPoint", Q: "LocalPoint", _depth: int = 0) -> "LocalPoint":
        if P.curve is not self or Q.curve is not self:
            P, Q = self._pull(P), self._pull(Q)
        X3, Y3, Z3 = st.bl_formula(P.X, P.Y, P.Z, Q.X, Q.Y, Q.Z, self.a, self.b)
        if X3.is_unit() or Y3.is_unit() or Z3.is_unit():
            return LocalPoint(self, X3, Y3, Z3, check=False)
        if _depth >= 3:
            raise DegenerateConfiguration("addition law degenerate after shifts")
        for _ in range(12):
            S = self.random_point(self._rng)
            try:
                T = self.add(self.add(P, S, _depth + 1), Q, _depth + 1)
                return self.add(T, S.neg(), _depth + 1)
            except DegenerateConfiguration:
                continue
        raise RetriesExhausted("no shift separated the degenerate addition")

    def _pull(self, P: "LocalPoint") -> "LocalPoint":
        if P.curve is self:
            return P
        if P.curve.ring.same_ring(self.ring):
            return LocalPoint(self, P.X, P.Y, P.Z, check=False)
        R = self.ring
        return LocalPoint(self, R.coeff_embed(P.X), R.coeff_embed(P.Y),
                          R.coeff_embed(P.Z), check=False)

    def scalar(self, k: int, P: "LocalPoint") -> "LocalPoint":
        if k < 0:
            return self.scalar(-k, P.neg())
        R = self.infinity()
        Q = P
        while k:
            if k & 1:
                R = self.add(R, Q)
            k >>= 1
            if k:
                Q = self.add(Q, Q)
        return R

    # -- sampling ----------------------------------------------------------------

    def random_point(self, rng) -> "LocalPoint":
        R = self.ring
        rr = R.residue_ring()
        for _ in range(400):
            x = R.random_element(rng)
            c = x ** 3 + self.a * x + self.b
            cres = c.residue()
            if cres.is_zero():
                continue
            y0 = _sqrt_fq(cres)
            if y0 is None:
                continue
            y = R._wrap(st._lift_vec(R, y0.arr))
            inv2 = R.from_int(2).inverse()
            for _ in range(R.m * R.e + 6):
                y = (y + c * y.inverse()) * inv2
                if y * y == c:
                    break
            if y * y == c:
                if rng.randrange(2):
                    y = -y
                return LocalPoint(self, x, y, R.one())
        raise RetriesExhausted("could not sample a smooth random point")

    # -- formal series caches -------------------------------------------------------

    def mult_series(self, N: int, K: int, mod: int | None = None) -> st.Ser:
        a, b = self.ab_ints()
        mod = mod or self.ring.mod
        key = ("mult", N, K, mod)
        if key not in self._cache:
            self._cache[key] = st.mult_series(a, b, N, mod, K)
        return self._cache[key]

    def log_deriv(self, K: int) -> st.Ser:
        a, b = self.ab_ints()
        key = ("logd", K)
        if key not in self._cache:
            self._cache[key] = st.log_deriv_series(a, b, self.ring.mod, K)
        return self._cache[key]

    def __repr__(self):
        return f"LocalCurve(a={self.a!r}, b={self.b!r}, ring={self.ring!r})"


class LocalPoint:
    """Projective point (X : Y : Z); chart is derived, not stored."""

    __slots__ = ("curve", "X", "Y", "Z")

    def __init__(self, curve: LocalCurve, X, Y, Z, check: bool = True):
        self.curve = curve
        self.X, self.Y, self.Z = X, Y, Z
        if not (X.is_unit() or Y.is_unit() or Z.is_unit()):
            raise DegenerateConfiguration("projective triple is not a point")
        if check and not self.on_curve():
            raise NotTorsion("point does not satisfy the curve equation")

    def on_curve(self) -> bool:
        c = self.curve
        lhs = self.Y * self.Y * self.Z
        rhs = self.X ** 3 + c.a * self.X * self.Z * self.Z + c.b * self.Z ** 3
        return lhs == rhs

    @property
    def chart(self) -> str:
        if self.X.is_zero() and self.Z.is_zero():
            return "infinity"
        if not self.Z.is_unit():
            return "formal"
        return "affine"

    def is_infinity(self) -> bool:
        return self.X.is_zero() and self.Z.is_zero()

    def affine_xy(self):
        zi = self.Z.inverse()
        return self.X * zi, self.Y * zi

    def formal_z(self) -> RingElement:
        """The parameter z = -x/y; defined whenever Y is a unit."""
        return -(self.X * self.Y.inverse())

    def neg(self) -> "LocalPoint":
        return LocalPoint(self.curve, self.X, -self.Y, self.Z, check=False)

    def __eq__(self, other):
        if not isinstance(other, LocalPoint):
            return NotImplemented
        a = (self.X * other.Z == other.X * self.Z)
        b = (self.Y * other.Z == other.Y * self.Z)
        c = (self.X * other.Y == other.X * self.Y)
        return a and b and c

    def __ne__(self, other):
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    def __hash__(self):
        if self.Z.is_unit():
            x, y = self.affine_xy()
            return hash(("aff", x, y))
        if self.is_infinity():
            return hash(("inf",))
        return hash(("formal", self.formal_z()))

    def reduce(self, n: int) -> "LocalPoint":
        c = self.curve.reduce(n)
        return LocalPoint(c, self.X.reduce(n), self.Y.reduce(n), self.Z.reduce(n),
                          check=False)

    def residue(self) -> "LocalPoint":
        c = self.curve.residue_curve()
        return LocalPoint(c, self.X.residue(), self.Y.residue(), self.Z.residue(),
                          check=False)

    def to_dict(self) -> dict:
        ch = self.chart
        if ch == "infinity":
            return {"chart": "inf"}
        if ch == "affine":
            x, y = self.affine_xy()
            return {"chart": "affine", "x": x.to_lists(), "y": y.to_lists()}
        return {"chart": "formal", "z": self.formal_z().to_lists()}

    def __repr__(self):
        ch = self.chart
        if ch == "infinity":
            return "O"
        if ch == "affine":
            x, y = self.affine_xy()
            return f"({x!r}, {y!r})"
        return f"formal(z={self.formal_z()!r})"


@dataclass
class TateVector:
    """A level together with an exact-order point and tower bookkeeping."""

    level: int
    point: LocalPoint
    tower_tag: str
    prime: int
    direction: str = "ell"      # "ell", "p_etale" or "p_formal"

    def project(self, new_level: int) -> "TateVector":
        """Image at a divisor level of the same tower."""
        if self.level % new_level:
            raise NotTorsion("projection target must divide the level")
        cache = self.point.curve._cache.setdefault(("proj", id(self)), {})
        if new_level not in cache:
            k = self.level // new_level
            pt = self.point.curve.scalar(k, self.point)
            cache[new_level] = TateVector(new_level, pt, self.tower_tag,
                                          self.prime, self.direction)
        return cache[new_level]

    def reduce(self, n: int) -> "TateVector":
        return TateVector(self.level, self.point.reduce(n), self.tower_tag,
                          self.prime, self.direction)


# ---------------------------------------------------------------------------
# spec operations


def point_add(P: LocalPoint, Q: LocalPoint) -> LocalPoint:
    return P.curve.add(P, Q)


def scalar_mul(k: int, P: LocalPoint) -> LocalPoint:
    return P.curve.scalar(k, P)


def reduce_point(P: LocalPoint, n: int) -> LocalPoint:
    return P.reduce(n)


def _sqrt_fq(c: RingElement):
    """Square root in the residue field (Tonelli-Shanks), or None."""
    ring = c.ring
    q = ring.p ** ring.df
    if c.is_zero():
        return ring.zero()
    if not (c ** ((q - 1) // 2) == ring.one()):
        return None
    s, t = 0, q - 1
    while t % 2 == 0:
        s, t = s + 1, t // 2
    # deterministic scan for a non-residue
    z = None
    for k in range(2, 60):
        cand = ring.from_int(k)
        if not cand.is_zero() and cand ** ((q - 1) // 2) != ring.one():
            z = cand
            break
        if ring.df > 1:
            cand = ring.gen() + ring.from_int(k - 2)
            if not cand.is_zero() and cand ** ((q - 1) // 2) != ring.one():
                z = cand
                break
    if z is None:
        raise RetriesExhausted("no quadratic non-residue found")
    mm = s
    cc = z ** t
    tt = c ** t
    rr = c ** ((t + 1) // 2)
    one = ring.one()
    while tt != one:
        i, t2i = 0, tt
        while t2i != one:
            t2i = t2i * t2i
            i += 1
        bexp = 2 ** (mm - i - 1)
        bb = cc ** bexp
        mm, cc = i, bb * bb
        tt = tt * cc
        rr = rr * bb
    return rr


def residue_point_order(P: LocalPoint) -> int:
    """Order in the residue group, via the factored group order."""
    curve = P.curve
    if curve.ring.m != 1:
        P = P.residue()
        curve = P.curve
    if P.is_infinity():
        return 1
    x, y = P.affine_xy()
    key = ("ord", x.arr.tobytes(), y.arr.tobytes())
    if key in curve._cache:
        return curve._cache[key]
    n = curve.group_order(curve.ring.df)
    order = n
    for q in _factor(n):
        while order % q == 0:
            cand = order // q
            if curve.scalar(cand, P).is_infinity():
                order = cand
            else:
                break
    curve._cache[key] = order
    return order


def _factor(n: int):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def point_order_mod(P: LocalPoint, n: int, cap: int = 64):
    """Least N with N*(P mod p^n) = O, factored as (M, j) with N = M p^j."""
    Pn = P.reduce(n)
    res = Pn.residue()
    p = P.curve.ring.p
    if res.is_infinity():
        M = 1
    else:
        o = residue_point_order(res)
        while o % p == 0:
            o //= p
        M = o
    Q = Pn.curve.scalar(M, Pn)
    j = 0
    while not Q.is_infinity():
        Q = Pn.curve.scalar(p, Q)
        j += 1
        if j > cap:
            raise IterationCapExceeded("p-part of the annihilator too deep")
    return M, j


def division_polynomial(E: LocalCurve, N: int, cap: int = 24):
    """x-only division polynomial: psi_N for odd N, psi_N / y for even N."""
    if N > cap:
        raise CapExceeded(f"division polynomial degree cap {cap} exceeded")
    R = E.ring
    a, b = E.a, E.b
    f = [b, a, R.zero(), R.one()]                      # x^3 + a x + b
    one, zero = [R.one()], [R.zero()]

    def times_int(A, k):
        return st.pscale(A, R.from_int(k))

    # psi[n] = (poly in x, exponent of y); y^2 is folded into f on demand.
    psi = {0: (zero, 0), 1: (one, 0), 2: (times_int(one, 2), 1)}
    psi[3] = ([-(a * a), b * R.from_int(12), a * R.from_int(6),
               R.zero(), R.from_int(3)], 0)
    p4 = [-(a ** 3) - (b * b) * 8, -(a * b) * 4, -(a * a) * 5,
          b * R.from_int(20), a * R.from_int(5), R.zero(), R.one()]
    psi[4] = (times_int(p4, 4), 1)

    def norm(pair):
        poly, e = pair
        while e >= 2:
            poly, e = st.pmul(poly, f), e - 2
        return poly, e

    def mul(p1, p2):
        return norm((st.pmul(p1[0], p2[0]), p1[1] + p2[1]))

    def get(n):
        if n in psi:
            return psi[n]
        m = n // 2
        if n % 2 == 1:
            t1 = mul(get(m + 2), mul(get(m), mul(get(m), get(m))))
            t2 = mul(get(m - 1), mul(get(m + 1), mul(get(m + 1), get(m + 1))))
            poly, e = norm((st.psub(t1[0], t2[0]), t1[1]))
            assert t1[1] == t2[1]
        else:
            t1 = mul(get(m + 2), mul(get(m - 1), get(m - 1)))
            t2 = mul(get(m - 2), mul(get(m + 1), get(m + 1)))
            assert t1[1] == t2[1]
            poly, e = mul(get(m), (st.psub(t1[0], t2[0]), t1[1]))
            # dividing the y-free normal form by 2y trades a factor f for y
            assert e == 0
            q, r = st.pdivmod_monic(poly, f)
            assert all(c.is_zero() for c in r)
            poly, e = st.pscale(q, R.from_int(2).inverse()), 1
        psi[n] = (poly, e)
        return psi[n]

    poly, e = get(N)
    return st.ptrim(poly)


# ---------------------------------------------------------------------------
# torsion construction


def _lift_point_to(curve_big: LocalCurve, res_pt: LocalPoint) -> LocalPoint:
    """Any lift of a residue point (exact curve membership, arbitrary digits)."""
    R = curve_big.ring
    xres, yres = res_pt.affine_xy()
    x = R._wrap(st._lift_vec(R, xres.arr))
    if yres.is_zero():
        # two-torsion residue: Hensel on x against x^3 + a x + b instead
        fpoly = [curve_big.b, curve_big.a, R.zero(), R.one()]
        dpoly = [curve_big.a, R.zero(), R.from_int(3)]
        for _ in range(R.m * R.e + 6):
            fx = st.peval(fpoly, x)
            if fx.is_zero():
                break
            x = x - fx * st.peval(dpoly, x).inverse()
        if not st.peval(fpoly, x).is_zero():
            raise HenselFailure("two-torsion x-lift failed to converge")
        return LocalPoint(curve_big, x, R.zero(), R.one())
    y = R._wrap(st._lift_vec(R, yres.arr))
    c = x ** 3 + curve_big.a * x + curve_big.b
    inv2 = R.from_int(2).inverse()
    for _ in range(R.m * R.e + 6):
        y = (y + c * y.inverse()) * inv2
        if y * y == c:
            return LocalPoint(curve_big, x, y, R.one())
    raise HenselFailure("y-coordinate lift failed to converge")


def _exact_prime_to_p_lift(curve_big: LocalCurve, res_pt: LocalPoint,
                           N: int) -> LocalPoint:
    """Lift a residue N-torsion point to exact N-torsion, gcd(N, p) = 1.

    The sloppy lift P0 misses torsion by a kernel-of-reduction error t;
    since [N] is invertible on the formal group, subtracting [N^{-1}]t
    repairs it exactly at the working precision.
    """
    R = curve_big.ring
    P0 = _lift_point_to(curve_big, res_pt)
    t = curve_big.scalar(N, P0)
    if t.is_infinity():
        return P0
    c = pow(N, -1, R.p ** (R.m + 1))
    delta = curve_big.scalar(c, t)
    P = curve_big.add(P0, delta.neg())
    if not curve_big.scalar(N, P).is_infinity():
        raise HenselFailure("exact torsion correction failed")
    return P


def _residue_basis(curve_res: LocalCurve, ell: int, k: int, rng):
    """Two independent exact order ell^k points of E(F_q), or None."""
    n = curve_res.group_order(curve_res.ring.df)
    N = ell ** k
    if n % (N * N):
        return None
    s = 0
    nn = n
    while nn % ell == 0:
        nn //= ell
        s += 1
    cof = n // ell ** s
    first = None
    for _ in range(300):
        Q = curve_res.scalar(cof, curve_res.random_point(rng))
        if Q.is_infinity():
            continue
        o = 1
        T = Q
        while not T.is_infinity():
            T = curve_res.scalar(ell, T)
            o *= ell
        if o < N:
            continue
        S = curve_res.scalar(o // N, Q)
        if first is None:
            first = S
            continue
        S1 = curve_res.scalar(N // ell, first)
        T1 = curve_res.scalar(N // ell, S)
        span = []
        A = curve_res.infinity()
        for _ in range(ell):
            span.append(A)
            A = curve_res.add(A, S1)
        if all(T1 != B for B in span):
            return first, S
    return None


def torsion_basis(E: LocalCurve, ell: int, k: int, f_cap: int = 30):
    """A basis of E[ell^k] over the minimal unramified extension, lifted.

    Returns (vector1, vector2, extension_curve); the points have exact order
    ell^k at the working precision of E.
    """
    if ell == E.ring.p:
        raise NotTorsion("p-part torsion is handled by p_torsion_level")
    if ell ** k > 1 << 20:
        raise CapExceeded("torsion level too large")
    m = E.ring.m
    p = E.ring.p
    rng = random.Random((E.seed << 8) ^ (ell * 1009 + k))
    for f in range(1, f_cap + 1):
        if E.group_order(f) % ell ** (2 * k):
            continue
        ring_f = LocalRing.unramified(p, f, m)
        curve_f = E.change_ring(ring_f)
        basis = _residue_basis(curve_f.residue_curve(), ell, k, rng)
        if basis is None:
            continue
        N = ell ** k
        tag = f"T{ell}^b{k}.f{f}"
        vecs = []
        for i, res_pt in enumerate(basis):
            P = _exact_prime_to_p_lift(curve_f, res_pt, N)
            vecs.append(TateVector(N, P, f"{tag}.g{i}", ell, "ell"))
        return vecs[0], vecs[1], curve_f
    raise CapExceeded(f"E[{ell}^{k}] not rational within degree cap {f_cap}")


def _slope_factor_ring(coeff_ring: LocalRing, D_poly, degree: int) -> LocalRing:
    G = st.hensel_slope_factor(D_poly, degree, coeff_ring)
    rows = [g.arr.reshape(-1) for g in G]
    return LocalRing.eisenstein(coeff_ring, rows, coeff_ring.m)


def p_torsion_level(E: LocalCurve, nu: int, guard: int = 1):
    """Level p^nu Tate-module data for an ordinary curve.

    Returns (etale_vector, formal_vector).  The formal component is a root
    of the slope factor of [p^nu](z); the etale-direction component lifts a
    residue point of exact order p^nu and repairs it by a root of the slope
    factor of [p^nu](z) - z_t, which generates a wildly ramified Eisenstein
    extension of degree p^nu.
    """
    p = E.ring.p
    if not E.is_ordinary():
        raise SupersingularReduction("p-part needs ordinary reduction")
    if nu > 2:
        raise CapExceeded("p-torsion implemented for levels nu <= 2")
    m = E.ring.m
    mb = m + guard
    modb = p ** mb
    base_b = LocalRing.base(p, mb)
    curve_b = LocalCurve(base_b, *E.ab_ints(), seed=E.seed)

    # formal component: slope factor of [p^nu](z) / [p^(nu-1)](z)
    d_form = p ** nu - p ** (nu - 1)
    Kf = d_form * (mb + 1) + 8
    mul_p = curve_b.mult_series(p, Kf, mod=modb)
    quot = st.Ser(mul_p.arr[1:], modb, Kf)            # [p](u)/u
    if nu == 1:
        B = quot
    else:
        inner = curve_b.mult_series(p ** (nu - 1), Kf, mod=modb)
        B = quot.compose(inner)
    D_form = [base_b.from_int(int(c)) for c in B.arr]
    R_form = _slope_factor_ring(base_b, D_form, d_form)
    curve_form = LocalCurve(R_form, *E.ab_ints(), seed=E.seed)
    P_form = curve_form.formal_point(R_form.gen())
    if not curve_form.scalar(p ** nu, P_form).is_infinity():
        raise HenselFailure("formal torsion point fails its order")
    if curve_form.scalar(p ** (nu - 1), P_form).is_infinity():
        raise HenselFailure("formal torsion point has too small an order")

    # etale-direction component
    rng = random.Random((E.seed << 8) ^ (p * 7919 + nu))
    f = None
    for cand in range(1, 30):
        n_c = E.group_order(cand)
        if n_c % p ** nu == 0:
            f = cand
            break
    if f is None:
        raise CapExceeded("no residue field with enough p-torsion in range")
    W = LocalRing.unramified(p, f, mb)
    curve_W = LocalCurve(W, *E.ab_ints(), seed=E.seed)
    res_curve = curve_W.residue_curve()
    n_f = E.group_order(f)
    s = 0
    nn = n_f
    while nn % p == 0:
        nn //= p
        s += 1
    cof = n_f // p ** s
    res_pt = None
    for _ in range(300):
        Q = res_curve.scalar(cof, res_curve.random_point(rng))
        if Q.is_infinity():
            continue
        o, T = 0, Q
        while not T.is_infinity():
            T = res_curve.scalar(p, T)
            o += 1
        if o >= nu:
            res_pt = res_curve.scalar(p ** (o - nu), Q)
            break
    if res_pt is None:
        raise SupersingularReduction("no residue point of exact order p^nu found")

    P0 = _lift_point_to(curve_W, res_pt)
    t = curve_W.scalar(p ** nu, P0)
    if t.is_infinity():
        P_et = P0
        curve_et = curve_W
    else:
        z_t = t.formal_z()
        d_et = p ** nu
        Ke = d_et * (mb + 1) + 8
        mul_nu = curve_b.mult_series(p ** nu, Ke, mod=modb)
        D_et = [W.from_int(int(c)) for c in mul_nu.arr]
        D_et[0] = D_et[0] - z_t
        R_et = _slope_factor_ring(W, D_et, d_et)
        curve_et = LocalCurve(R_et, *E.ab_ints(), seed=E.seed)
        delta = curve_et.formal_point(R_et.gen())
        P_et = curve_et.add(curve_et._pull(P0), delta.neg())
        if not curve_et.scalar(p ** nu, P_et).is_infinity():
            raise HenselFailure("etale-direction torsion correction failed")
    if curve_et.scalar(p ** (nu - 1), P_et).is_infinity():
        raise HenselFailure("etale-direction point has too small an order")

    tag = f"Tp^b{nu}.f{f}"
    v_et = TateVector(p ** nu, P_et.reduce(m), f"{tag}.et", p, "p_etale")
    v_form = TateVector(p ** nu, P_form.reduce(m), f"{tag}.fm", p, "p_formal")
    return v_et, v_form


def elliptic_log(P: LocalPoint, budget: PrecisionBudget | None = None) -> RingElement:
    """Formal-group logarithm, normalized with linear coefficient 1."""
    curve = P.curve
    ring = curve.ring
    m = ring.m
    if budget is None:
        budget = PrecisionBudget(nominal=m)
    if P.is_infinity():
        return ring.zero()
    z0 = P.formal_z()
    if z0.is_zero():
        return ring.zero()
    v = z0.valuation()
    if v <= 0:
        raise OutOfDomain("elliptic_log needs a formal-chart point")
    K = _series_terms_needed(v, m, ring.p, factorial=False)
    lam = curve.log_deriv(K + 1)
    acc = ring.zero()
    power = ring.one()
    max_loss = 0
    for k in range(1, K + 1):
        power = power * z0
        j = _int_val(k, ring.p)
        if k * v - j >= m:
            continue
        c = int(lam.arr[k - 1])
        term = power * ring.from_int(c)
        if j:
            term = term.exact_div_p(j)
            max_loss = max(max_loss, j)
        term = term * ring.from_int(k // ring.p ** j).inverse()
        acc = acc + term
    budget.absorb(max_loss)
    return acc
