"""Exact arithmetic in truncated local rings o_L/p^m.

Three kinds of quotient ring are supported:

* ``base``        -- Z/p^m,
* ``unramified``  -- a Galois ring (Z/p^m)[u]/(h(u)) with h irreducible mod p,
* ``eisenstein``  -- W[z]/(G(z)) with G Eisenstein over W, where W is the
  base ring or an unramified ring at the same precision.

Elements are immutable coefficient arrays (numpy int64, shape
``(eisenstein_degree, unramified_degree)``).  All arithmetic is exact in the
quotient; the only operations that can lose p-adic digits are series
evaluations (log, exp) and explicit divisions by p, and those account for
their loss through a PrecisionBudget.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import (
    InvalidModulus,
    NonUnit,
    OutOfDomain,
    PrecisionExhausted,
    RamifiedRing,
    RingMismatch,
    UnsupportedPrime,
)

# Internal coefficient moduli must keep convolution sums inside int64.
_INT64_BUDGET = 2 ** 62


@dataclass
class PrecisionBudget:
    """Tracks guaranteed p-adic digits through a chain of lossy operations.

    ``nominal`` is the requested exponent, ``guard`` counts extra internal
    digits used, ``loss`` the digits forfeited to divisions by p.  Any result
    handed back is valid modulo p^(nominal - loss), and that exponent never
    drops below 1.
    """

    nominal: int
    guard: int = 0
    loss: int = 0

    def absorb(self, digits: int) -> None:
        if digits <= 0:
            return
        self.loss = max(self.loss, digits)
        if self.nominal - self.loss < 1:
            raise PrecisionExhausted(
                f"loss {self.loss} leaves no guaranteed digits of {self.nominal}"
            )

    @property
    def guaranteed(self) -> int:
        return self.nominal - self.loss


# ---------------------------------------------------------------------------
# F_p[x] helpers (used for modulus validation and residue-field setup)

def _fp_trim(a, p):
    a = [c % p for c in a]
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a or [0]


def _fp_sub(a, b, p):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _fp_trim([x - y for x, y in zip(a, b)], p)


def _fp_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _fp_trim(out, p)


def _fp_mod(a, m, p):
    a = [c % p for c in a]
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm and any(a):
        if a[-1] == 0:
            a.pop()
            continue
        shift = len(a) - 1 - dm
        c = a[-1] * inv_lead % p
        for j in range(dm + 1):
            a[shift + j] = (a[shift + j] - c * m[j]) % p
        a.pop()
    return _fp_trim(a, p)


def _fp_gcd(a, b, p):
    a, b = _fp_trim(a, p), _fp_trim(b, p)
    while b != [0]:
        a, b = b, _fp_mod(a, b, p)
    return a


def _fp_powmod(base, exp, m, p):
    result = [1]
    base = _fp_mod(base, m, p)
    while exp:
        if exp & 1:
            result = _fp_mod(_fp_mul(result, base, p), m, p)
        base = _fp_mod(_fp_mul(base, base, p), m, p)
        exp >>= 1
    return result


def _prime_factors(n: int):
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


def _is_irreducible_fp(h, p) -> bool:
    h = _fp_trim(list(h), p)
    f = len(h) - 1
    if f < 1:
        return False
    x = [0, 1]
    xq = _fp_powmod(x, p ** f, h, p)
    if _fp_sub(xq, x, p) != [0]:
        return False
    for q in _prime_factors(f):
        diff = _fp_sub(_fp_powmod(x, p ** (f // q), h, p), x, p)
        if diff == [0] or len(_fp_gcd(diff, h, p)) != 1:
            return False
    return True


def _find_irreducible(p: int, f: int):
    """Smallest monic degree-f polynomial irreducible over F_p, deterministic."""
    if f == 1:
        return [0, 1]
    # enumerate lower coefficient vectors in lexicographic order.
    bound = p ** f
    for code in range(bound):
        coeffs = []
        c = code
        for _ in range(f):
            coeffs.append(c % p)
            c //= p
        h = coeffs + [1]
        if _is_irreducible_fp(h, p):
            return h
    raise InvalidModulus(f"no irreducible polynomial of degree {f} over F_{p}")


# ---------------------------------------------------------------------------


class LocalRing:
    """A truncated local ring o_L/p^m with explicit coefficient arithmetic."""

    __slots__ = (
        "p", "m", "kind", "e", "f", "de", "df", "mod",
        "h_int", "G_rows", "coeff",
        "_ured", "_zredmat", "_frobmat", "_residue", "_reduced",
    )

    def __init__(self):
        raise TypeError("use LocalRing.base/unramified/eisenstein")

    # -- constructors -------------------------------------------------------

    @classmethod
    def _blank(cls):
        obj = object.__new__(cls)
        obj._ured = None
        obj._zredmat = None
        obj._frobmat = None
        obj._residue = None
        obj._reduced = {}
        obj.coeff = None
        obj.G_rows = None
        obj.h_int = None
        return obj

    @classmethod
    def base(cls, p: int, m: int) -> "LocalRing":
        if p < 5:
            raise UnsupportedPrime("p >= 5 required")
        r = cls._blank()
        r.p, r.m, r.kind = p, m, "base"
        r.e = r.f = r.de = r.df = 1
        r.mod = p ** m
        r._check_budget()
        return r

    @classmethod
    def unramified(cls, p: int, f: int, m: int, h=None) -> "LocalRing":
        if p < 5:
            raise UnsupportedPrime("p >= 5 required")
        if h is None:
            h = _find_irreducible(p, f)
        h = [int(c) for c in h]
        if len(h) - 1 != f or h[-1] % p != 1:
            raise InvalidModulus("modulus must be monic of the stated degree")
        if f > 1 and not _is_irreducible_fp(h, p):
            raise InvalidModulus("unramified modulus must be irreducible mod p")
        if f == 1:
            return cls.base(p, m)
        r = cls._blank()
        r.p, r.m, r.kind = p, m, "unramified"
        r.e, r.f = 1, f
        r.de, r.df = 1, f
        r.mod = p ** m
        r.h_int = tuple(c % r.mod for c in h)
        r._check_budget()
        r._build_ured()
        return r

    @classmethod
    def eisenstein(cls, coeff: "LocalRing", G_rows, m: int) -> "LocalRing":
        """W[z]/(G) for W = coeff at precision m; G monic with Eisenstein shape.

        ``G_rows``: sequence of e+1 coefficient arrays (constant term first),
        each an element array of ``coeff``; the leading row must be 1.
        """
        if coeff.kind == "eisenstein":
            raise InvalidModulus("eisenstein towers over eisenstein rings unsupported")
        if coeff.m != m:
            coeff = coeff.reduce_ring(m)
        p = coeff.p
        e = len(G_rows) - 1
        if e < 1:
            raise InvalidModulus("eisenstein degree must be >= 1")
        r = cls._blank()
        r.p, r.m, r.kind = p, m, "eisenstein"
        r.coeff = coeff
        r.e, r.f = e, coeff.f
        r.de, r.df = e, coeff.df
        r.mod = p ** m
        rows = np.array([np.asarray(g, dtype=np.int64).reshape(-1) % r.mod
                         for g in G_rows], dtype=np.int64)
        if rows.shape != (e + 1, r.df):
            raise InvalidModulus("modulus rows do not match coefficient ring degree")
        if not (rows[-1][0] == 1 and np.all(rows[-1][1:] == 0)):
            raise InvalidModulus("eisenstein modulus must be monic")
        low = rows[:-1]
        if np.any(low % p != 0):
            raise InvalidModulus("non-leading coefficients must be divisible by p")
        if m >= 2 and np.all(rows[0] % (p * p) == 0):
            raise InvalidModulus("constant term must not be divisible by p^2")
        r.G_rows = rows
        r.h_int = coeff.h_int
        r._check_budget()
        r._ured = coeff._ured
        r._build_zredmat()
        return r

    # -- internal tables -----------------------------------------------------

    def _check_budget(self):
        flat = self.de * (2 * self.df - 1) + self.df
        if self.mod * self.mod * max(flat, 2) >= _INT64_BUDGET:
            raise PrecisionExhausted(
                f"p^m = {self.mod} too large for int64 coefficient arithmetic"
            )

    def _build_ured(self):
        f, mod = self.df, self.mod
        h = np.array(self.h_int, dtype=np.int64)
        rows = []
        cur = (-h[:-1]) % mod          # u^f
        rows.append(cur.copy())
        for _ in range(f - 2):
            nxt = np.zeros(f, dtype=np.int64)
            nxt[1:] = cur[:-1]
            nxt = (nxt + cur[-1] * ((-h[:-1]) % mod)) % mod
            rows.append(nxt.copy())
            cur = nxt
        self._ured = np.array(rows, dtype=np.int64) if rows else np.zeros((0, f), np.int64)

    def _coeff_mulmat(self, vec):
        """Matrix of multiplication by the coefficient-ring element ``vec``."""
        f, mod = self.df, self.mod
        if f == 1:
            return np.array([[vec[0] % mod]], dtype=np.int64)
        cols = []
        for j in range(f):
            shifted = np.zeros(2 * f - 1, dtype=np.int64)
            shifted[j: j + f] = vec
            low, high = shifted[:f].copy(), shifted[f:]
            if high.size:
                low = (low + high @ self._ured) % mod
            cols.append(low % mod)
        return np.array(cols, dtype=np.int64).T % mod

    def _build_zredmat(self):
        e, f, mod = self.de, self.df, self.mod
        negG = (-self.G_rows[:-1]) % mod            # z^e = negG as (e, f)
        # rows[k][i] = coefficient of z^i in z^(e+k) mod G, as a mult-matrix.
        cur = [negG[i].copy() for i in range(e)]
        tables = [[self._coeff_mulmat(c) for c in cur]]
        for _ in range(e - 2):
            top = cur[-1]
            nxt = [np.zeros(f, dtype=np.int64)] + [c.copy() for c in cur[:-1]]
            topmat = self._coeff_mulmat(top)
            for i in range(e):
                nxt[i] = (nxt[i] + topmat @ negG[i]) % mod
            cur = nxt
            tables.append([self._coeff_mulmat(c) for c in cur])
        if e >= 2:
            self._zredmat = np.array(tables, dtype=np.int64)  # (e-1, e, f, f)
        else:
            self._zredmat = np.zeros((0, 1, f, f), dtype=np.int64)

    # -- ring relations ------------------------------------------------------

    def same_ring(self, other: "LocalRing") -> bool:
        if self is other:
            return True
        if (self.p, self.m, self.kind, self.de, self.df) != \
           (other.p, other.m, other.kind, other.de, other.df):
            return False
        if self.h_int != other.h_int:
            return False
        if self.kind == "eisenstein":
            return bool(np.array_equal(self.G_rows, other.G_rows))
        return True

    def reduce_ring(self, n: int) -> "LocalRing":
        if n == self.m:
            return self
        if n > self.m:
            raise PrecisionExhausted("cannot raise precision of a truncated ring")
        if n in self._reduced:
            return self._reduced[n]
        if self.kind == "base":
            out = LocalRing.base(self.p, n)
        elif self.kind == "unramified":
            out = LocalRing.unramified(self.p, self.f, n, h=list(self.h_int))
        else:
            coeff = self.coeff.reduce_ring(n)
            rows = [row % (self.p ** n) for row in self.G_rows]
            out = LocalRing.eisenstein(coeff, rows, n)
        self._reduced[n] = out
        return out

    def residue_ring(self) -> "LocalRing":
        """The residue field F_{p^f} realized as the precision-1 unramified ring."""
        if self._residue is None:
            if self.m == 1 and self.kind in ("base", "unramified"):
                self._residue = self
            elif self.df == 1:
                self._residue = LocalRing.base(self.p, 1)
            else:
                self._residue = LocalRing.unramified(self.p, self.df, 1,
                                                     h=list(self.h_int))
        return self._residue

    # -- element constructors -------------------------------------------------

    def _wrap(self, arr) -> "RingElement":
        arr = np.asarray(arr, dtype=np.int64).reshape(self.de, self.df) % self.mod
        arr.setflags(write=False)
        return RingElement(self, arr)

    def zero(self) -> "RingElement":
        return self._wrap(np.zeros((self.de, self.df), dtype=np.int64))

    def one(self) -> "RingElement":
        a = np.zeros((self.de, self.df), dtype=np.int64)
        a[0, 0] = 1
        return self._wrap(a)

    def from_int(self, n: int) -> "RingElement":
        a = np.zeros((self.de, self.df), dtype=np.int64)
        a[0, 0] = n % self.mod
        return self._wrap(a)

    def element(self, coeffs) -> "RingElement":
        return self._wrap(np.asarray(coeffs, dtype=np.int64))

    def gen(self) -> "RingElement":
        """Class of the modulus variable: u for unramified, z for eisenstein."""
        a = np.zeros((self.de, self.df), dtype=np.int64)
        if self.kind == "unramified":
            a[0, 1] = 1
        elif self.kind == "eisenstein":
            a[1, 0] = 1
        else:
            raise RamifiedRing("base ring has no generator")
        return self._wrap(a)

    def coeff_embed(self, elem: "RingElement") -> "RingElement":
        """Embed an element of the coefficient ring (or the base) into self."""
        if elem.ring.same_ring(self):
            return elem
        if elem.ring.m > self.m:
            elem = elem.reduce(self.m)
            if elem.ring.same_ring(self):
                return elem
        if elem.ring.m != self.m:
            raise RingMismatch("cannot embed from lower precision")
        a = np.zeros((self.de, self.df), dtype=np.int64)
        if elem.ring.kind == "base":
            a[0, 0] = elem.arr[0, 0] % self.mod
            return self._wrap(a)
        if self.kind == "eisenstein" and self.coeff is not None \
                and elem.ring.same_ring(self.coeff):
            a[0, :] = elem.arr[0, :] % self.mod
            return self._wrap(a)
        if self.kind == "unramified" and elem.ring.kind == "unramified" \
                and [c % self.mod for c in elem.ring.h_int] == \
                    [c % self.mod for c in self.h_int]:
            a[0, :] = elem.arr[0, :] % self.mod
            return self._wrap(a)
        raise RingMismatch("no canonical embedding between these rings")

    def random_element(self, rng) -> "RingElement":
        a = np.array([[rng.randrange(self.mod) for _ in range(self.df)]
                      for _ in range(self.de)], dtype=np.int64)
        return self._wrap(a)

    def random_unit(self, rng) -> "RingElement":
        while True:
            x = self.random_element(rng)
            if x.is_unit():
                return x

    # -- core arithmetic -------------------------------------------------------

    def _mul_arrays(self, a, b):
        mod = self.mod
        de, df = self.de, self.df
        if de == 1 and df == 1:
            return (a * b) % mod
        if de == 1:
            c = np.convolve(a[0], b[0]) % mod
            low, high = c[:df].copy(), c[df:]
            if high.size:
                low = (low + high @ self._ured) % mod
            return low.reshape(1, df)
        W = 2 * df - 1
        fa = np.zeros(de * W, dtype=np.int64)
        fb = np.zeros(de * W, dtype=np.int64)
        for i in range(de):
            fa[i * W: i * W + df] = a[i]
            fb[i * W: i * W + df] = b[i]
        fc = np.convolve(fa, fb) % mod
        full = np.zeros((2 * de - 1) * W, dtype=np.int64)
        n = min(fc.size, full.size)
        full[:n] = fc[:n]        # tail beyond (2de-2)W + 2df-1 is structurally zero
        rows = full.reshape(2 * de - 1, W)
        if df > 1:
            low_u = rows[:, :df].copy()
            high_u = rows[:, df:]
            low_u = (low_u + high_u @ self._ured) % mod
        else:
            low_u = rows
        lowz = low_u[:de].copy()
        highz = low_u[de:]
        if highz.shape[0]:
            lowz = (lowz + np.einsum("kifg,kg->if", self._zredmat[:highz.shape[0]],
                                     highz)) % mod
        return lowz % mod

    # -- maps -------------------------------------------------------------------

    def frobenius_matrix(self) -> np.ndarray:
        if self.kind != "unramified":
            raise RamifiedRing("frobenius only on unramified rings")
        if self._frobmat is None:
            u = self.gen()
            x = u ** self.p
            hprime = [(i * c) % self.mod for i, c in enumerate(self.h_int)][1:]
            for _ in range(self.m + 2):
                hx = self._eval_int_poly(self.h_int, x)
                x = x - hx * self._eval_int_poly(hprime, x).inverse()
            assert self._eval_int_poly(self.h_int, x).is_zero()
            cols = [self.one()]
            for _ in range(self.df - 1):
                cols.append(cols[-1] * x)
            self._frobmat = np.array([c.arr[0] for c in cols], dtype=np.int64).T
        return self._frobmat

    def _eval_int_poly(self, coeffs, x: "RingElement") -> "RingElement":
        acc = self.zero()
        for c in reversed(list(coeffs)):
            acc = acc * x + self.from_int(int(c))
        return acc

    # -- serialization ------------------------------------------------------------

    def to_dict(self) -> dict:
        d = {"p": self.p, "kind": self.kind, "m": self.m}
        if self.kind == "base":
            d["modulus"] = ["0", "1"]
            d["coeff_ring"] = None
        elif self.kind == "unramified":
            d["modulus"] = [str(c) for c in self.h_int]
            d["coeff_ring"] = None
        else:
            d["modulus"] = [[str(int(v)) for v in row] for row in self.G_rows]
            d["coeff_ring"] = (None if self.coeff.kind == "base"
                               else self.coeff.to_dict())
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "LocalRing":
        p, m, kind = int(d["p"]), int(d["m"]), d["kind"]
        if kind == "base":
            return cls.base(p, m)
        if kind == "unramified":
            return cls.unramified(p, len(d["modulus"]) - 1, m,
                                  h=[int(c) for c in d["modulus"]])
        coeff = cls.base(p, m) if d.get("coeff_ring") is None \
            else cls.from_dict(d["coeff_ring"])
        rows = [np.array([int(v) for v in row], dtype=np.int64)
                for row in d["modulus"]]
        return cls.eisenstein(coeff, rows, m)

    def __repr__(self):
        return f"LocalRing({self.kind}, p={self.p}, e={self.e}, f={self.f}, m={self.m})"


class RingElement:
    """Immutable element of a LocalRing; supports +, -, *, **, inverse."""

    __slots__ = ("ring", "arr")

    def __init__(self, ring: LocalRing, arr: np.ndarray):
        self.ring = ring
        self.arr = arr

    # -- helpers ----------------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, RingElement):
            if other.ring is self.ring or other.ring.same_ring(self.ring):
                return other
            raise RingMismatch("operands from different rings")
        if isinstance(other, int):
            return self.ring.from_int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self.ring._wrap(self.arr + o.arr)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self.ring._wrap(self.arr - o.arr)

    def __rsub__(self, other):
        o = self._coerce(other)
        return self.ring._wrap(o.arr - self.arr)

    def __neg__(self):
        return self.ring._wrap(-self.arr)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self.ring._wrap(self.ring._mul_arrays(self.arr, o.arr))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.from_int(other)
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.ring.same_ring(other.ring) and np.array_equal(self.arr, other.arr)

    def __ne__(self, other):
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    def __hash__(self):
        return hash((self.ring.kind, self.ring.mod, self.arr.tobytes()))

    def is_zero(self) -> bool:
        return not np.any(self.arr)

    def residue_vector(self) -> np.ndarray:
        return self.arr[0] % self.ring.p

    def is_unit(self) -> bool:
        return bool(np.any(self.residue_vector()))

    def residue(self) -> "RingElement":
        """Image in the residue field, as an element of the precision-1 ring."""
        return self.ring.residue_ring()._wrap(self.residue_vector().reshape(1, -1))

    def inverse(self) -> "RingElement":
        if not self.is_unit():
            raise NonUnit("inverse of a non-unit requested")
        ring = self.ring
        r0 = self.residue()
        q = ring.p ** ring.df
        x = ring._wrap(_lift_residue(ring, (r0 ** (q - 2)).arr))
        two = ring.from_int(2)
        # Newton doubling: each step squares the ideal of the error.
        steps = max(2, (ring.m * ring.e).bit_length() + 1)
        for _ in range(steps):
            x = x * (two - self * x)
        if not (self * x == ring.one()):
            raise NonUnit("inversion failed to converge; element is not a unit")
        return x

    def reduce(self, n: int) -> "RingElement":
        r = self.ring.reduce_ring(n)
        return r._wrap(self.arr % (self.ring.p ** n))

    def lift_to(self, ring: LocalRing) -> "RingElement":
        """Reinterpret in a higher-precision ring with identical moduli lifts."""
        if ring.kind != self.ring.kind or ring.de != self.ring.de \
                or ring.df != self.ring.df:
            raise RingMismatch("lift target has a different shape")
        return ring._wrap(self.arr)

    def exact_div_p(self, j: int = 1):
        """Divide by p^j exactly; raises unless every digit is divisible."""
        pj = self.ring.p ** j
        if np.any(self.arr % pj):
            raise PrecisionExhausted("element is not divisible by p^%d" % j)
        return self.ring._wrap(self.arr // pj)

    def exact_div_uniformizer(self) -> "RingElement":
        """Divide by the uniformizer (p, or z on an eisenstein ring).

        Requires the element to be a non-unit; the result is well defined up
        to the annihilator of the uniformizer (one pi-digit of slack at the
        top of the expansion).
        """
        ring = self.ring
        if ring.kind != "eisenstein":
            return self.exact_div_p(1)
        p, e = ring.p, ring.de
        W = ring.coeff if ring.coeff is not None else LocalRing.base(p, ring.m)
        g = [W._wrap(row.reshape(1, -1)) for row in ring.G_rows]
        c = [W._wrap(self.arr[i].reshape(1, -1)) for i in range(e)]
        g0u = g[0].exact_div_p(1)
        if not g0u.is_unit():
            raise PrecisionExhausted("modulus constant term is not p * unit")
        dtop = -(c[0].exact_div_p(1) * g0u.inverse())
        rows = [c[i + 1] + dtop * g[i + 1] for i in range(e - 1)] + [dtop]
        out = np.stack([r.arr[0] for r in rows])
        return ring._wrap(out)

    def valuation(self) -> Fraction:
        """Normalized p-adic valuation (v(p) = 1), capped at the precision m."""
        ring = self.ring
        if self.is_zero():
            return Fraction(ring.m)
        best = Fraction(ring.m)
        for i in range(ring.de):
            row = self.arr[i]
            nz = row[row != 0]
            if nz.size == 0:
                continue
            vp = min(_int_val(int(c), ring.p) for c in nz)
            v = Fraction(i, ring.e) + vp if ring.kind == "eisenstein" else Fraction(vp)
            best = min(best, v)
        return min(best, Fraction(ring.m))

    def to_lists(self):
        return [[str(int(v)) for v in row] for row in self.arr]

    @classmethod
    def from_lists(cls, ring: LocalRing, data) -> "RingElement":
        return ring._wrap(np.array([[int(v) for v in row] for row in data],
                                   dtype=np.int64))

    def __repr__(self):
        if self.ring.de == 1 and self.ring.df == 1:
            return f"{int(self.arr[0, 0])} (mod {self.ring.mod})"
        return f"RingElement({self.to_lists()})"


def _int_val(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _lift_residue(ring: LocalRing, res_arr: np.ndarray) -> np.ndarray:
    a = np.zeros((ring.de, ring.df), dtype=np.int64)
    a[0, : res_arr.shape[1]] = res_arr[0]
    return a


# ---------------------------------------------------------------------------
# spec-facing operations


def make_ring(p: int, kind: str, modulus, m: int) -> LocalRing:
    """Build a truncated local ring from integer modulus coefficients."""
    if p < 5:
        raise UnsupportedPrime("p >= 5 required")
    if m < 1:
        raise InvalidModulus("precision exponent must be positive")
    coeffs = [int(c) for c in modulus]
    if kind == "base":
        if len(coeffs) != 2 or coeffs[1] % p == 0:
            raise InvalidModulus("base ring modulus must be x")
        return LocalRing.base(p, m)
    if kind == "unramified":
        return LocalRing.unramified(p, len(coeffs) - 1, m, h=coeffs)
    if kind == "eisenstein":
        e = len(coeffs) - 1
        if coeffs[-1] % p != 1:
            raise InvalidModulus("eisenstein modulus must be monic")
        if any(c % p for c in coeffs[:-1]):
            raise InvalidModulus("non-leading coefficients must be divisible by p")
        if coeffs[0] % (p * p) == 0:
            raise InvalidModulus("constant term must not be divisible by p^2")
        base = LocalRing.base(p, m)
        rows = [np.array([c], dtype=np.int64) for c in coeffs]
        return LocalRing.eisenstein(base, rows, m)
    raise InvalidModulus(f"unknown ring kind {kind!r}")


def ring_arith(a: RingElement, b, op: str) -> RingElement:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "inv_of_a":
        return a.inverse()
    raise ValueError(f"unknown op {op!r}")


def teichmuller(a: RingElement) -> RingElement:
    """The unique root of x^(p^f) = x congruent to a mod p (unramified only)."""
    ring = a.ring
    if ring.kind == "eisenstein":
        raise RamifiedRing("Teichmuller section only on unramified towers")
    if not a.is_unit():
        raise NonUnit("Teichmuller lift of a non-unit")
    q = ring.p ** ring.df
    x = a
    for _ in range(ring.m + 2):
        nxt = x ** q
        if nxt == x:
            return x
        x = nxt
    raise PrecisionExhausted("Teichmuller iteration failed to stabilize")


def frobenius(a: RingElement, power: int = 1) -> RingElement:
    """The arithmetic Frobenius automorphism on an unramified ring."""
    ring = a.ring
    if ring.kind == "base":
        return a
    mat = ring.frobenius_matrix()
    vec = a.arr[0]
    for _ in range(power % ring.df):
        vec = (mat @ vec) % ring.mod
    return ring._wrap(vec.reshape(1, -1))


def valuation(a: RingElement) -> Fraction:
    return a.valuation()


def _digit_sum(n: int, p: int) -> int:
    s = 0
    while n:
        s += n % p
        n //= p
    return s


def _series_terms_needed(v: Fraction, m: int, p: int, factorial: bool) -> int:
    """Largest k whose term t^k / (k or k!) can still matter mod p^m."""
    # k*v - v_p(denominator) grows at least linearly with slope v - 1/(p-1),
    # so a finite scan bounded by that slope is exhaustive.
    slope = v - Fraction(1, p - 1) if factorial else v
    cap = int(Fraction(m + 8) / slope) + 2 * p + 8
    if cap > 100000:
        raise PrecisionExhausted("series would need too many terms at this valuation")
    last = 1
    for k in range(2, cap + 1):
        if factorial:
            den = Fraction(k - _digit_sum(k, p), p - 1)
        else:
            den = Fraction(_int_val(k, p))
        if k * v - den < m:
            last = k
    return last


def padic_log(u: RingElement, budget: PrecisionBudget | None = None) -> RingElement:
    """Truncated p-adic logarithm of a 1-unit, exact at the guaranteed precision."""
    ring = u.ring
    m = ring.m
    if budget is None:
        budget = PrecisionBudget(nominal=m)
    t = u - ring.one()
    if t.is_zero():
        return ring.zero()
    v = t.valuation()
    if v <= Fraction(1, ring.p - 1):
        raise OutOfDomain(f"v(u-1) = {v} <= 1/(p-1)")
    K = _series_terms_needed(v, m, ring.p, factorial=False)
    acc = ring.zero()
    power = ring.one()
    max_loss = 0
    for k in range(1, K + 1):
        power = power * t
        j = _int_val(k, ring.p)
        if k * v - j >= m:
            continue
        term = power
        if j:
            term = term.exact_div_p(j)
            max_loss = max(max_loss, j)
        kunit = ring.from_int(k // ring.p ** j)
        term = term * kunit.inverse()
        if k % 2 == 0:
            term = -term
        acc = acc + term
    budget.absorb(max_loss)
    return acc


def padic_exp(z: RingElement, budget: PrecisionBudget | None = None) -> RingElement:
    """Truncated p-adic exponential, defined for v(z) > 1/(p-1)."""
    ring = z.ring
    m = ring.m
    if budget is None:
        budget = PrecisionBudget(nominal=m)
    if z.is_zero():
        return ring.one()
    v = z.valuation()
    if v <= Fraction(1, ring.p - 1):
        raise OutOfDomain(f"v(z) = {v} <= 1/(p-1)")
    K = _series_terms_needed(v, m, ring.p, factorial=True)
    acc = ring.one()
    power = ring.one()
    fact_p = 0          # v_p(k!)
    fact_unit = 1       # unit part of k! modulo p^m
    max_loss = 0
    for k in range(1, K + 1):
        power = power * z
        fact_p += _int_val(k, ring.p)
        fact_unit = (fact_unit * (k // ring.p ** _int_val(k, ring.p))) % ring.mod
        if k * v - fact_p >= m:
            continue
        term = power
        if fact_p:
            term = term.exact_div_p(fact_p)
            max_loss = max(max_loss, fact_p)
        term = term * ring.from_int(fact_unit).inverse()
        acc = acc + term
    budget.absorb(max_loss)
    return acc


def unit_decompose(a: RingElement):
    """Split a unit of an unramified ring as (teichmuller part, 1-unit part)."""
    t = teichmuller(a)
    return t, a * t.inverse()
