"""Truncated power series, polynomial helpers, and Hensel factor lifting.

Series here are one-variable truncations over Z/p^M with int64 numpy
coefficient vectors; they power the formal-group computations (the w(z)
expansion, multiplication-by-N series, the formal logarithm).  Polynomials
over a LocalRing are plain coefficient lists and feed the quadratic Hensel
lifting used to split off Newton-polygon slope factors.
"""

from __future__ import annotations

import numpy as np

from .errors import HenselFailure, NonUnit
from .localring import LocalRing, RingElement


class Ser:
    """Truncated power series in z over Z/mod, coefficients low to high."""

    __slots__ = ("arr", "mod", "K")

    def __init__(self, arr, mod: int, K: int):
        a = np.zeros(K, dtype=np.int64)
        src = np.asarray(arr, dtype=np.int64)
        n = min(K, src.size)
        a[:n] = src[:n] % mod
        self.arr = a
        self.mod = mod
        self.K = K

    @classmethod
    def const(cls, c: int, mod: int, K: int) -> "Ser":
        return cls([c], mod, K)

    @classmethod
    def zvar(cls, mod: int, K: int) -> "Ser":
        return cls([0, 1], mod, K)

    def _co(self, other):
        if isinstance(other, Ser):
            return other
        if isinstance(other, int):
            return Ser.const(other, self.mod, self.K)
        return NotImplemented

    def __add__(self, other):
        o = self._co(other)
        return Ser(self.arr + o.arr, self.mod, self.K)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._co(other)
        return Ser(self.arr - o.arr, self.mod, self.K)

    def __rsub__(self, other):
        o = self._co(other)
        return Ser(o.arr - self.arr, self.mod, self.K)

    def __neg__(self):
        return Ser(-self.arr, self.mod, self.K)

    def __mul__(self, other):
        o = self._co(other)
        if o is NotImplemented:
            return o
        return Ser(np.convolve(self.arr, o.arr)[: self.K], self.mod, self.K)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not np.any(self.arr)

    def inverse(self) -> "Ser":
        c0 = int(self.arr[0])
        p = _prime_of(self.mod)
        if c0 % p == 0:
            raise NonUnit("series inversion needs a unit constant term")
        x = Ser.const(pow(c0, -1, self.mod), self.mod, self.K)
        two = Ser.const(2, self.mod, self.K)
        k = 1
        while k < self.K + self.mod.bit_length():
            x = x * (two - self * x)
            k *= 2
        return x

    def compose(self, inner: "Ser") -> "Ser":
        """self(inner(z)); inner must have zero constant term."""
        assert inner.arr[0] % self.mod == 0
        acc = Ser.const(0, self.mod, self.K)
        for c in self.arr[::-1]:
            acc = acc * inner + Ser.const(int(c), self.mod, self.K)
        return acc

    def deriv(self) -> "Ser":
        d = (self.arr[1:] * np.arange(1, self.K, dtype=np.int64)) % self.mod
        return Ser(d, self.mod, self.K)

    def shift_down(self, k: int) -> "Ser":
        assert not np.any(self.arr[:k]), "series not divisible by z^%d" % k
        return Ser(self.arr[k:], self.mod, self.K)

    def mul_z(self, k: int = 1) -> "Ser":
        out = np.zeros(self.K, dtype=np.int64)
        out[k:] = self.arr[: self.K - k]
        return Ser(out, self.mod, self.K)

    def coeffs(self):
        return [int(c) for c in self.arr]


def _prime_of(mod: int) -> int:
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47):
        if mod % q == 0:
            return q
    n = mod
    d = 53
    while d * d <= n:
        if n % d == 0:
            return d
        d += 2
    return n


# ---------------------------------------------------------------------------
# the complete projective addition law for y^2 z = x^3 + a x z^2 + b z^3
#
# A single bidegree (2,2) addition law; it is valid exactly where the output
# triple generates the unit ideal, and callers fall back to random shifts
# elsewhere.  Works over any commutative coefficient object with +, -, *.

def bl_formula(X1, Y1, Z1, X2, Y2, Z2, a, b):
    t0 = X1 * X2
    t1 = Y1 * Y2
    t2 = Z1 * Z2
    t3 = (X1 + Y1) * (X2 + Y2) - t0 - t1      # X1 Y2 + X2 Y1
    t4 = (X1 + Z1) * (X2 + Z2) - t0 - t2      # X1 Z2 + X2 Z1
    t5 = (Y1 + Z1) * (Y2 + Z2) - t1 - t2      # Y1 Z2 + Y2 Z1
    ta = a * t4
    tb = 3 * (b * t2)
    u = t1 - ta - tb
    v = t1 + ta + tb
    w = a * t0 + 3 * (b * t4) - a * (a * t2)
    mm = 3 * t0 + a * t2
    X3 = t3 * u - t5 * w
    Y3 = mm * w + v * u
    Z3 = t5 * v + t3 * mm
    return X3, Y3, Z3


# ---------------------------------------------------------------------------
# formal-group series for the curve y^2 = x^3 + a x + b over Z/p^M


def w_series(a: int, b: int, mod: int, K: int) -> Ser:
    """w(z) with  w = z^3 + a z w^2 + b w^3;  the formal point is (z:-1:w)."""
    z3 = Ser([0, 0, 0, 1], mod, K)
    az = Ser([0, a], mod, K)
    bc = Ser.const(b, mod, K)
    w = z3
    for _ in range(K // 2 + 4):
        w2 = az * (w * w) + bc * (w * w * w) + z3
        if np.array_equal(w2.arr, w.arr):
            break
        w = w2
    return w


def mult_series(a: int, b: int, N: int, mod: int, K: int) -> Ser:
    """The z-expansion of multiplication by N on the formal group."""
    w = w_series(a, b, mod, K)
    aS = Ser.const(a, mod, K)
    bS = Ser.const(b, mod, K)
    one = Ser.const(1, mod, K)
    X, Y, Z = Ser.zvar(mod, K), -one, w
    RX, RY, RZ = Ser.const(0, mod, K), one, Ser.const(0, mod, K)
    k = N
    while k:
        if k & 1:
            if RZ.is_zero() and RX.is_zero():
                RX, RY, RZ = X, Y, Z
            else:
                RX, RY, RZ = bl_formula(RX, RY, RZ, X, Y, Z, aS, bS)
        k >>= 1
        if k:
            X, Y, Z = bl_formula(X, Y, Z, X, Y, Z, aS, bS)
    return -(RX * RY.inverse())


def log_deriv_series(a: int, b: int, mod: int, K: int) -> Ser:
    """lambda'(z): the z-expansion of the invariant differential dx/2y."""
    w = w_series(a, b, mod, K + 3)
    num = (w.deriv().mul_z(1) - w).shift_down(3)      # (z w' - w)/z^3
    den = (2 * w).shift_down(3)
    lam = num * den.inverse()
    return Ser(lam.arr[:K], mod, K)


# ---------------------------------------------------------------------------
# polynomials over a LocalRing, coefficient lists low -> high


def ptrim(A):
    while len(A) > 1 and A[-1].is_zero():
        A = A[:-1]
    return A


def padd(A, B):
    n = max(len(A), len(B))
    ring = A[0].ring
    A = A + [ring.zero()] * (n - len(A))
    B = B + [ring.zero()] * (n - len(B))
    return ptrim([x + y for x, y in zip(A, B)])


def psub(A, B):
    n = max(len(A), len(B))
    ring = A[0].ring
    A = A + [ring.zero()] * (n - len(A))
    B = B + [ring.zero()] * (n - len(B))
    return ptrim([x - y for x, y in zip(A, B)])


def pmul(A, B):
    ring = A[0].ring
    out = [ring.zero() for _ in range(len(A) + len(B) - 1)]
    for i, x in enumerate(A):
        if x.is_zero():
            continue
        for j, y in enumerate(B):
            out[i + j] = out[i + j] + x * y
    return ptrim(out)


def pscale(A, c: RingElement):
    return ptrim([x * c for x in A])


def pdivmod_monic(A, G):
    """Divide by a monic polynomial G; exact quotient and remainder."""
    ring = A[0].ring
    A = list(A)
    dG = len(G) - 1
    q = [ring.zero() for _ in range(max(1, len(A) - dG))]
    while len(A) - 1 >= dG and not all(x.is_zero() for x in A):
        if A[-1].is_zero():
            A.pop()
            continue
        k = len(A) - 1 - dG
        c = A[-1]
        q[k] = q[k] + c
        for j in range(dG + 1):
            A[k + j] = A[k + j] - c * G[j]
        A.pop()
    return ptrim(q), ptrim(A)


def peval(A, x: RingElement):
    acc = A[0].ring.zero()
    for c in reversed(A):
        acc = acc * x + c
    return acc


def _residue_poly(A, rr):
    return [c.residue() for c in A]


def _fq_ext_euclid(A, B):
    """Extended gcd in F_q[z]; returns (g, s, t) with s A + t B = g."""
    ring = A[0].ring
    one, zero = ring.one(), ring.zero()
    r0, r1 = ptrim(list(A)), ptrim(list(B))
    s0, s1 = [one], [zero]
    t0, t1 = [zero], [one]
    while not (len(r1) == 1 and r1[0].is_zero()):
        lead = r1[-1]
        inv = lead.inverse()
        monic_r1 = pscale(r1, inv)
        q, r = pdivmod_monic(r0, monic_r1)
        q = pscale(q, inv)
        r0, r1 = r1, r
        s0, s1 = s1, psub(s0, pmul(q, s1))
        t0, t1 = t1, psub(t0, pmul(q, t1))
    return r0, s0, t0


def hensel_slope_factor(D, d: int, ring: LocalRing):
    """Split the monic degree-d factor G with D = G*H, G == z^d (mod p).

    ``D`` is a coefficient list over ``ring`` whose reduction mod p equals
    z^d * (unit series).  Classical quadratic Hensel lifting of the coprime
    factorization; returns the coefficient list of G.
    """
    p, M = ring.p, ring.m
    rr = ring.residue_ring()
    Dres = [c.residue() for c in D]
    if any(not c.is_zero() for c in Dres[:d]):
        raise HenselFailure("reduction of D is not divisible by z^%d" % d)
    if d >= len(Dres) or Dres[d].is_zero():
        raise HenselFailure("z^%d coefficient of D is not a unit" % d)

    # initial factorization and Bezout data over the residue field
    G = [ring.zero() for _ in range(d)] + [ring.one()]
    H = [ring._wrap(_lift_vec(ring, c.arr)) for c in Dres[d:]]
    g0res = [rr.zero()] * d + [rr.one()]
    g, s, t = _fq_ext_euclid(g0res, Dres[d:])
    if len(g) != 1 or not g[0].is_unit():
        raise HenselFailure("slope factor not coprime to its cofactor")
    ginv = g[0].inverse()
    A = [ring._wrap(_lift_vec(ring, (c * ginv).arr)) for c in s]
    B = [ring._wrap(_lift_vec(ring, (c * ginv).arr)) for c in t]

    steps = max(1, (M - 1).bit_length() + 1)
    for _ in range(steps):
        E = psub(list(D), pmul(G, H))
        if all(x.is_zero() for x in E):
            break
        q, r = pdivmod_monic(pmul(B, E), G)
        G = padd(G, r)
        H = padd(H, padd(pmul(A, E), pmul(q, H)))
        err = psub(padd(pmul(A, G), pmul(B, H)), [ring.one()])
        if not all(x.is_zero() for x in err):
            q2, r2 = pdivmod_monic(pmul(B, err), G)
            B = psub(B, r2)
            A = psub(A, padd(pmul(A, err), pmul(q2, H)))
    E = psub(list(D), pmul(G, H))
    if not all(x.is_zero() for x in E):
        raise HenselFailure("factor lifting did not converge")
    return ptrim(G)


def _lift_vec(ring: LocalRing, res_arr) -> np.ndarray:
    a = np.zeros((ring.de, ring.df), dtype=np.int64)
    a[0, : res_arr.shape[1]] = res_arr[0]
    return a
