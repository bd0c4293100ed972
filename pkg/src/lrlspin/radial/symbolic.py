"""Exact radial symbolics: Laurent polynomials in r, radial differential
operators with Laurent coefficients, and the two closed solution families
(polynomial * exponential, polynomial pairs * Bessel K0/K1).

This is what makes the SUSY factorization, intertwining, and closed-form
ODE residual checks *symbolic* (zero rational-function residual) instead
of merely small-at-sample-points.
"""
from __future__ import annotations

import math
from fractions import Fraction

from ..specfun import bessel_k


class LaurentPoly:
    """sum_k c_k r^k with integer k (possibly negative), rational c_k."""

    __slots__ = ("c",)

    def __init__(self, c=None):
        self.c = {}
        if c:
            for k, v in c.items():
                v = Fraction(v)
                if v:
                    self.c[k] = v

    @staticmethod
    def const(v) -> "LaurentPoly":
        return LaurentPoly({0: Fraction(v)})

    @staticmethod
    def term(v, k: int) -> "LaurentPoly":
        return LaurentPoly({k: Fraction(v)})

    def __add__(self, other):
        out = dict(self.c)
        for k, v in other.c.items():
            s = out.get(k, Fraction(0)) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return LaurentPoly(out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __mul__(self, other):
        out = {}
        for k1, v1 in self.c.items():
            for k2, v2 in other.c.items():
                k = k1 + k2
                s = out.get(k, Fraction(0)) + v1 * v2
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return LaurentPoly(out)

    def scale(self, v) -> "LaurentPoly":
        v = Fraction(v)
        return LaurentPoly({k: c * v for k, c in self.c.items()})

    def shift(self, k: int) -> "LaurentPoly":
        return LaurentPoly({kk + k: v for kk, v in self.c.items()})

    def diff(self) -> "LaurentPoly":
        return LaurentPoly({k - 1: v * k for k, v in self.c.items() if k})

    def is_zero(self) -> bool:
        return not self.c

    def __call__(self, r: float) -> float:
        return math.fsum(float(v) * r ** k for k, v in self.c.items())

    def __repr__(self):
        if not self.c:
            return "0"
        return " + ".join(f"({v})r^{k}" for k, v in sorted(self.c.items()))


class RadialOperator:
    """sum_k M_k(r) d^k with nchan x nchan LaurentPoly matrices M_k."""

    __slots__ = ("nchan", "terms")

    def __init__(self, nchan: int, terms=None):
        self.nchan = nchan
        self.terms = terms if terms is not None else {}

    @staticmethod
    def zero(nchan: int) -> "RadialOperator":
        return RadialOperator(nchan)

    @staticmethod
    def from_scalar(poly: LaurentPoly, order: int = 0) -> "RadialOperator":
        return RadialOperator(1, {order: [[poly]]})

    @staticmethod
    def from_matrix(mat, order: int = 0) -> "RadialOperator":
        return RadialOperator(len(mat), {order: [row[:] for row in mat]})

    def _mat(self, order):
        z = LaurentPoly()
        return self.terms.get(order,
                              [[z for _ in range(self.nchan)] for _ in range(self.nchan)])

    def __add__(self, other):
        out = {}
        for k in set(self.terms) | set(other.terms):
            A, B = self._mat(k), other._mat(k)
            out[k] = [[A[i][j] + B[i][j] for j in range(self.nchan)]
                      for i in range(self.nchan)]
        return RadialOperator(self.nchan, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, v) -> "RadialOperator":
        return RadialOperator(self.nchan, {
            k: [[p.scale(v) for p in row] for row in M]
            for k, M in self.terms.items()})

    def __matmul__(self, other: "RadialOperator") -> "RadialOperator":
        """Operator composition self . other (other acts first).

        (c(r) d^j)(b(r) d^k) = sum_i C(j,i) c(r) b^{(i)}(r) d^{j+k-i}.
        """
        out = RadialOperator.zero(self.nchan)
        for j, A in self.terms.items():
            for k, B in other.terms.items():
                for i in range(j + 1):
                    coef = math.comb(j, i)
                    Bi = B
                    for _ in range(i):
                        Bi = [[p.diff() for p in row] for row in Bi]
                    prod = [[LaurentPoly() for _ in range(self.nchan)]
                            for _ in range(self.nchan)]
                    for a in range(self.nchan):
                        for b in range(self.nchan):
                            acc = LaurentPoly()
                            for c in range(self.nchan):
                                acc = acc + A[a][c] * Bi[c][b]
                            prod[a][b] = acc.scale(coef)
                    out = out + RadialOperator(self.nchan, {j + k - i: prod})
        return out

    def is_zero(self) -> bool:
        return all(p.is_zero() for M in self.terms.values() for row in M for p in row)

    def apply(self, state):
        """Apply to an ExpPoly / BesselPair channel vector (list of channel
        functions sharing one structural family)."""
        chans = state.channels()
        out = None
        for k, M in sorted(self.terms.items()):
            dk = [ch for ch in chans]
            for _ in range(k):
                dk = [ch.diff() for ch in dk]
            for i in range(self.nchan):
                acc = None
                for j in range(self.nchan):
                    if M[i][j].is_zero():
                        continue
                    piece = dk[j].mul_laurent(M[i][j])
                    acc = piece if acc is None else acc + piece
                if acc is None:
                    continue
                if out is None:
                    out = [None] * self.nchan
                out[i] = acc if out[i] is None else out[i] + acc
        if out is None:
            return state.zero_like()
        filled = [state.zero_channel() if ch is None else ch for ch in out]
        return state.replace_channels(filled)


class ExpPoly:
    """r^{s0} * p(r) * exp(-c r) with rational c > 0, rational exponent s0."""

    __slots__ = ("c", "s0", "p")

    def __init__(self, c, s0, p: LaurentPoly):
        self.c = Fraction(c)
        self.s0 = Fraction(s0)
        self.p = p

    def _aligned(self, other: "ExpPoly"):
        if self.c != other.c:
            raise ValueError("cannot combine different decay rates")
        dshift = self.s0 - other.s0
        if dshift.denominator != 1:
            raise ValueError("incompatible fractional power offsets")
        return other.p.shift(-int(dshift))

    def __add__(self, other):
        return ExpPoly(self.c, self.s0, self.p + self._aligned(other))

    def __sub__(self, other):
        return ExpPoly(self.c, self.s0, self.p - self._aligned(other))

    def scale(self, v):
        return ExpPoly(self.c, self.s0, self.p.scale(v))

    def mul_laurent(self, q: LaurentPoly):
        return ExpPoly(self.c, self.s0, self.p * q)

    def diff(self):
        # d/dr [r^{s0} p e^{-cr}] = r^{s0}(p' + (s0/r) p - c p) e^{-cr}
        return ExpPoly(self.c, self.s0,
                       self.p.diff() + self.p.shift(-1).scale(self.s0)
                       - self.p.scale(self.c))

    def is_zero(self):
        return self.p.is_zero()

    def __call__(self, r: float) -> float:
        if r == 0.0:
            return 0.0
        return r ** float(self.s0) * self.p(r) * math.exp(-float(self.c) * r)


class BesselComb:
    """r^{s0} * (A(r) K0(c r) + B(r) K1(c r)) with rational coefficients.

    Closed under d/dr via K0' = -K1, K1' = -K0 - K1/y.
    """

    __slots__ = ("c", "s0", "A", "B")

    def __init__(self, c, s0, A: LaurentPoly, B: LaurentPoly):
        self.c = Fraction(c)
        self.s0 = Fraction(s0)
        self.A = A
        self.B = B

    def _aligned(self, other: "BesselComb"):
        if self.c != other.c:
            raise ValueError("cannot combine different Bessel scales")
        dshift = self.s0 - other.s0
        if dshift.denominator != 1:
            raise ValueError("incompatible fractional power offsets")
        return other.A.shift(-int(dshift)), other.B.shift(-int(dshift))

    def __add__(self, other):
        A2, B2 = self._aligned(other)
        return BesselComb(self.c, self.s0, self.A + A2, self.B + B2)

    def __sub__(self, other):
        A2, B2 = self._aligned(other)
        return BesselComb(self.c, self.s0, self.A - A2, self.B - B2)

    def scale(self, v):
        return BesselComb(self.c, self.s0, self.A.scale(v), self.B.scale(v))

    def mul_laurent(self, q: LaurentPoly):
        return BesselComb(self.c, self.s0, self.A * q, self.B * q)

    def diff(self):
        # K0(cr)' = -c K1(cr);  K1(cr)' = -c K0(cr) - K1(cr)/r
        c, s0 = self.c, self.s0
        newA = self.A.diff() + self.A.shift(-1).scale(s0) - self.B.scale(c)
        newB = (self.B.diff() + self.B.shift(-1).scale(s0)
                - self.A.scale(c) - self.B.shift(-1))
        return BesselComb(c, s0, newA, newB)

    def is_zero(self):
        return self.A.is_zero() and self.B.is_zero()

    def __call__(self, r: float) -> float:
        if r == 0.0:
            return 0.0
        y = float(self.c) * r
        return r ** float(self.s0) * (self.A(r) * bessel_k(0, y)
                                      + self.B(r) * bessel_k(1, y))


class ChannelVector:
    """A vector of channel functions from one closed family."""

    __slots__ = ("chans",)

    def __init__(self, chans):
        self.chans = list(chans)

    def channels(self):
        return self.chans

    def replace_channels(self, chans):
        return ChannelVector(chans)

    def zero_channel(self):
        ch = self.chans[0]
        if isinstance(ch, ExpPoly):
            return ExpPoly(ch.c, ch.s0, LaurentPoly())
        return BesselComb(ch.c, ch.s0, LaurentPoly(), LaurentPoly())

    def zero_like(self):
        return ChannelVector([self.zero_channel() for _ in self.chans])

    def __add__(self, other):
        return ChannelVector([a + b for a, b in zip(self.chans, other.chans)])

    def __sub__(self, other):
        return ChannelVector([a - b for a, b in zip(self.chans, other.chans)])

    def scale(self, v):
        return ChannelVector([ch.scale(v) for ch in self.chans])

    def diff(self):
        return ChannelVector([ch.diff() for ch in self.chans])

    def is_zero(self):
        return all(ch.is_zero() for ch in self.chans)

    def __call__(self, r: float):
        return [ch(r) for ch in self.chans]
