"""Capped-precision scalar arithmetic over the p-adic field Q_p.

A scalar is a coset ``value + p^N * Z_p`` ("ball"): the element is known
only modulo ``p^N``.  Internally the value is kept canonical as
``unit * p^val`` with ``0 < unit < p^(N - val)`` and ``p`` not dividing
``unit``; negative valuations (elements outside Z_p) are allowed.  A ball
whose value vanishes modulo ``p^N`` has no significant digit: its
valuation is unknown, only bounded below by ``N``.

Structural constants (0, 1, plain integers) may carry infinite precision
so that unit vectors and identity matrices never cap the precision of
whatever they multiply.  All values are immutable; operations are pure.

The field layer is written so that a second uniformizer kind (a power
series indeterminate) could be slotted in, but only Q_p is provided.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .errors import InvalidPrime

INF = float("inf")

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin primality test; deterministic for n < 3.3e24."""
    if n < 2:
        return False
    for q in _SMALL_PRIMES:
        if n % q == 0:
            return n == q
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    if n < 3317044064679887385961981:
        bases = _SMALL_PRIMES
    else:
        rng = random.Random(n)
        bases = tuple(rng.randrange(2, n - 1) for _ in range(40))
    for a in bases:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def pval(n: int, p: int) -> int:
    """Exponent of p in a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of zero is undefined")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


class PadicField:
    """The field Q_p with uniformizer p and residue field F_p."""

    __slots__ = ("p",)

    def __init__(self, p: int):
        if not is_probable_prime(p):
            raise InvalidPrime(f"{p} is not prime")
        self.p = p

    def __eq__(self, other):
        return isinstance(other, PadicField) and other.p == self.p

    def __hash__(self):
        return hash(("PadicField", self.p))

    def __repr__(self):
        return f"PadicField({self.p})"

    # -- constructors -------------------------------------------------

    def make(self, m: int, shift: int, prec) -> Ball:
        """Canonical ball for the element ``m * p^shift`` known mod p^prec."""
        p = self.p
        if m == 0:
            return Ball(self, None, 0, prec)
        if prec == INF:
            t = pval(m, p)
            return Ball(self, shift + t, m // p**t, INF)
        t = pval(m, p)
        v = shift + t
        if v >= prec:
            return Ball(self, None, 0, prec)
        u = (m // p**t) % p ** (prec - v)
        return Ball(self, v, u, prec)

    def exact(self, c: int) -> Ball:
        """A structurally exact integer constant (infinite precision)."""
        return self.make(c, 0, INF)

    def zero(self, prec=INF) -> Ball:
        return Ball(self, None, 0, prec)

    def one(self) -> Ball:
        return Ball(self, 0, 1, INF)

    def ball(self, value: int, prec) -> Ball:
        """The integer ``value`` known modulo p^prec."""
        return self.make(value, 0, prec)

    def uniformizer_power(self, k: int) -> Ball:
        """Exact p^k; k may be negative."""
        return Ball(self, k, 1, INF)

    def from_rational(self, num, den=1, prec=INF) -> Ball:
        """Embed num/den.  Exact embedding requires a unit +-1 after
        extracting powers of p, so pass a finite prec for general rationals."""
        if hasattr(num, "denominator") and den == 1:
            num, den = int(num.numerator), int(num.denominator)
        num, den = int(num), int(den)
        if den == 0:
            raise ZeroDivisionError("rational with zero denominator")
        if num == 0:
            return self.zero(prec)
        p = self.p
        vn, vd = pval(num, p), pval(den, p)
        v = vn - vd
        un, ud = num // p**vn, den // p**vd
        if prec == INF:
            if ud in (1, -1):
                return Ball(self, v, un * ud, INF)
            raise ValueError("non-dyadic rational needs a finite precision")
        rel = prec - v
        if rel <= 0:
            return self.zero(prec)
        mod = p**rel
        u = un * pow(ud, -1, mod) % mod
        return self.make(u, v, prec)


class Ball:
    """One scalar of Q_p known modulo p^prec.

    ``val is None`` means no significant digit (the value is 0 mod p^prec);
    ``prec`` may be the float infinity for structural constants.
    """

    __slots__ = ("ring", "val", "unit", "prec")

    def __init__(self, ring: PadicField, val, unit: int, prec):
        self.ring = ring
        self.val = val
        self.unit = unit
        self.prec = prec

    # -- predicates ----------------------------------------------------

    def is_zero(self) -> bool:
        """True iff indistinguishable from zero at this precision."""
        return self.val is None

    def is_exact(self) -> bool:
        return self.prec == INF

    @property
    def val_floor(self):
        """Known valuation, or its lower bound for zero-looking balls."""
        return self.val if self.val is not None else self.prec

    def valuation(self):
        """The valuation, or None when there is no significant digit
        (the caller can fall back on ``val_floor``)."""
        return self.val

    def residue(self) -> int:
        """Image in F_p for integral balls."""
        if self.val is None:
            return 0
        if self.val < 0:
            raise ValueError("negative valuation has no residue")
        return self.unit % self.ring.p if self.val == 0 else 0

    def lift(self):
        """Canonical lift: an int for val >= 0, a Fraction otherwise."""
        if self.val is None:
            return 0
        if self.val >= 0:
            return self.unit * self.ring.p**self.val
        return Fraction(self.unit, self.ring.p**-self.val)

    # -- structure -----------------------------------------------------

    def cap(self, prec) -> Ball:
        """The same coset coarsened to precision <= prec."""
        if prec >= self.prec:
            return self
        if self.val is None:
            return Ball(self.ring, None, 0, prec)
        return self.ring.make(self.unit, self.val, prec)

    def shift(self, k: int) -> Ball:
        """Multiply by the exact p^k (no precision loss)."""
        if k == 0:
            return self
        if self.val is None:
            return Ball(self.ring, None, 0, self.prec + k)
        return Ball(self.ring, self.val + k, self.unit, self.prec + k)

    def __eq__(self, other):
        if not isinstance(other, Ball):
            return NotImplemented
        return (
            self.ring.p == other.ring.p
            and self.val == other.val
            and self.unit == other.unit
            and self.prec == other.prec
        )

    def __hash__(self):
        return hash((self.ring.p, self.val, self.unit, self.prec))

    # -- arithmetic ------------------------------------------------------

    def _check(self, other):
        if self.ring.p != other.ring.p:
            raise ValueError("mixed p-adic rings")

    def __add__(self, other):
        if not isinstance(other, Ball):
            return NotImplemented
        self._check(other)
        prec = min(self.prec, other.prec)
        parts = [x for x in (self, other) if x.val is not None]
        if not parts:
            return Ball(self.ring, None, 0, prec)
        p = self.ring.p
        s = min(x.val for x in parts)
        m = sum(x.unit * p ** (x.val - s) for x in parts)
        return self.ring.make(m, s, prec)

    def __neg__(self):
        if self.val is None:
            return self
        return self.ring.make(-self.unit, self.val, self.prec)

    def __sub__(self, other):
        if not isinstance(other, Ball):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Ball):
            return NotImplemented
        self._check(other)
        prec = min(self.prec + other.val_floor, other.prec + self.val_floor)
        if self.val is None or other.val is None:
            if (self.val is None and self.prec == INF) or (
                other.val is None and other.prec == INF
            ):
                return Ball(self.ring, None, 0, INF)
            return Ball(self.ring, None, 0, prec)
        return self.ring.make(self.unit * other.unit, self.val + other.val, prec)

    def inverse(self) -> Ball:
        """Reciprocal; relative precision is preserved."""
        if self.val is None:
            raise ZeroDivisionError("inverting a ball indistinguishable from zero")
        if self.prec == INF:
            if self.unit in (1, -1):
                return Ball(self.ring, -self.val, self.unit, INF)
            raise ValueError("exact inverse not representable; cap the precision first")
        rel = self.prec - self.val
        u = pow(self.unit, -1, self.ring.p**rel)
        return self.ring.make(u, -self.val, self.prec - 2 * self.val)

    def __truediv__(self, other):
        if not isinstance(other, Ball):
            return NotImplemented
        return self * other.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = self.ring.one()
        for _ in range(k):
            out = out * self
        return out

    # -- display -------------------------------------------------------

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"<{format_scalar(self)}>"


def format_scalar(b: Ball) -> str:
    """Render a ball in the textual scalar form ``c + O(p^N)``; the unit
    part uses the symmetric lift so small negatives read naturally."""
    p = b.ring.p
    if b.val is None:
        if b.prec == INF:
            return "0"
        return f"O({p}^{b.prec})"
    if b.prec == INF:
        c = b.unit
        tail = ""
    else:
        rel = b.prec - b.val
        mod = p**rel
        u = b.unit % mod
        c = u if 2 * u <= mod else u - mod
        tail = f" + O({p}^{b.prec})"
    if b.val >= 0:
        head = str(c * p**b.val)
    else:
        k = -b.val
        pk = f"{p}^{k}" if k > 1 else f"{p}"
        head = f"{c}/{pk}"
    return head + tail
