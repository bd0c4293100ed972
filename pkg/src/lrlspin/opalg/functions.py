"""The closed function class P(x) * r^k * exp(-beta r), vector-valued.

A WaveFunction stores, per representation component, a finite sum of
terms  coeff * x^mono * r^rpow  with Gaussian-rational coefficients; the
common factor exp(-beta r) is implicit.  The class is closed under the
whole operator algebra, so identity checks reduce to exact evaluation.

Evaluation at a rational point returns a ParityPair (even, odd) meaning
even + odd*r: with r^2 rational and generically irrational r, the value
vanishes iff both parts vanish.  When r^2 happens to be a perfect square
the odd part is folded into the even part first.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from ..exact import GaussRat, ZERO

Term = tuple          # ((mono tuple, rpow int) -> GaussRat) dict keys


def _addterm(comp: dict, mono: tuple, rpow: int, coef: GaussRat):
    key = (mono, rpow)
    cur = comp.get(key)
    if cur is None:
        if coef:
            comp[key] = coef
    else:
        s = cur + coef
        if s:
            comp[key] = s
        else:
            del comp[key]


class WaveFunction:
    """Element of the closed class, ncomp components over R^d."""

    __slots__ = ("d", "ncomp", "beta", "comps")

    def __init__(self, d: int, ncomp: int, beta: Fraction, comps=None):
        self.d = d
        self.ncomp = ncomp
        self.beta = Fraction(beta)
        if self.beta <= 0:
            raise ValueError(f"decay rate beta must be positive, got {beta}")
        self.comps = comps if comps is not None else [dict() for _ in range(ncomp)]

    @classmethod
    def zero(cls, d, ncomp, beta):
        return cls(d, ncomp, beta)

    @classmethod
    def basis(cls, d, ncomp, beta, component: int):
        """The constant unit vector in one component (times exp(-beta r))."""
        f = cls(d, ncomp, beta)
        f.comps[component][((0,) * d, 0)] = GaussRat(1)
        return f

    def copy(self) -> "WaveFunction":
        return WaveFunction(self.d, self.ncomp, self.beta,
                            [dict(c) for c in self.comps])

    def is_structural_zero(self) -> bool:
        return all(not c for c in self.comps)

    def nterms(self) -> int:
        return sum(len(c) for c in self.comps)

    def _check_compatible(self, other: "WaveFunction"):
        if (self.d, self.ncomp, self.beta) != (other.d, other.ncomp, other.beta):
            raise ValueError("wavefunctions differ in d, component count, or beta")

    def __add__(self, other):
        self._check_compatible(other)
        out = self.copy()
        for c, comp in enumerate(other.comps):
            for (mono, rpow), v in comp.items():
                _addterm(out.comps[c], mono, rpow, v)
        return out

    def __sub__(self, other):
        return self + other.scale(GaussRat(-1))

    def scale(self, c) -> "WaveFunction":
        c = c if isinstance(c, GaussRat) else GaussRat(c)
        if not c:
            return WaveFunction.zero(self.d, self.ncomp, self.beta)
        return WaveFunction(self.d, self.ncomp, self.beta,
                            [{k: v * c for k, v in comp.items()} for comp in self.comps])

    def __mul__(self, c):
        return self.scale(c)

    __rmul__ = __mul__

    def __neg__(self):
        return self.scale(GaussRat(-1))

    def degree_bound(self) -> int:
        """Total degree of the cleared polynomial numerator (for sampling)."""
        rmin = 0
        deg = 0
        for comp in self.comps:
            for (mono, rpow), _ in comp.items():
                rmin = min(rmin, rpow)
        for comp in self.comps:
            for (mono, rpow), _ in comp.items():
                deg = max(deg, sum(mono) + (rpow - rmin) + 1)
        return deg


@dataclass(frozen=True)
class ParityPair:
    """Exact value split as even + odd*r at a rational point."""

    even: GaussRat
    odd: GaussRat

    def is_zero(self) -> bool:
        return self.even.is_zero() and self.odd.is_zero()


def _rational_sqrt(q: Fraction):
    """Exact square root of a nonnegative rational, or None."""
    if q < 0:
        return None
    np_, dp = q.numerator, q.denominator
    rn, rd = math.isqrt(np_), math.isqrt(dp)
    if rn * rn == np_ and rd * rd == dp:
        return Fraction(rn, rd)
    return None


def evaluate(f: WaveFunction, point) -> list:
    """Exact parity-split value of each component at a rational point.

    The implicit exp(-beta r) factor is positive and omitted, so the
    returned pairs vanish iff the function value vanishes.
    """
    pt = tuple(Fraction(x) for x in point)
    if len(pt) != f.d:
        raise ValueError(f"point has {len(pt)} coordinates, expected {f.d}")
    r2 = sum(x * x for x in pt)
    if r2 == 0:
        raise ValueError("evaluation at the origin is singular (r > 0 required)")
    sqrt_r2 = _rational_sqrt(r2)
    out = []
    for comp in f.comps:
        even = ZERO
        odd = ZERO
        for (mono, rpow), coef in comp.items():
            v = Fraction(1)
            for k in range(f.d):
                if mono[k]:
                    v *= pt[k] ** mono[k]
            if rpow % 2 == 0:
                even = even + coef * (v * r2 ** (rpow // 2))
            else:
                odd = odd + coef * (v * r2 ** ((rpow - 1) // 2))
        if sqrt_r2 is not None and odd:
            even = even + odd * sqrt_r2
            odd = ZERO
        out.append(ParityPair(even, odd))
    return out


def random_test_function(d: int, ncomp: int, max_degree: int, beta,
                         seed: int) -> WaveFunction:
    """Deterministic pseudo-random polynomial-coefficient test function.

    Every component gets at least one term so spin couplings are
    exercised; coefficients are small Gaussian integers.
    """
    if max_degree < 0:
        raise ValueError("max_degree must be >= 0")
    rng = random.Random(seed)
    f = WaveFunction(d, ncomp, Fraction(beta))
    for c in range(ncomp):
        for _ in range(2):
            mono = [0] * d
            for _ in range(rng.randint(0, max_degree)):
                mono[rng.randrange(d)] += 1
            coef = GaussRat(rng.randint(-4, 4), rng.randint(-4, 4))
            if not coef:
                coef = GaussRat(1)
            _addterm(f.comps[c], tuple(mono), 0, coef)
        if not f.comps[c]:
            f.comps[c][((0,) * d, 0)] = GaussRat(1)
    return f


def _sample_points(d: int, npoints: int, seed: int, pmax: int):
    rng = random.Random(seed)
    pts = []
    while len(pts) < npoints:
        pt = tuple(Fraction(rng.randint(-pmax, pmax), rng.choice((1, 2, 3)))
                   for _ in range(d))
        if any(pt):
            pts.append(pt)
    return pts


def _pmax_for(f: WaveFunction) -> int:
    # Schwartz-Zippel head-room: the per-coordinate sample space has about
    # 2.2*pmax distinct rationals; keep it at least 4x the degree bound.
    deg = f.degree_bound()
    return max(9, math.ceil(4 * deg / 2.2))


def find_nonzero_witness(f: WaveFunction, npoints: int = 20, seed: int = 0):
    """A (point, component, ParityPair) witness that f != 0, or None.

    None means every sampled point vanished exactly; with the degree-aware
    sample-space sizing the false-zero probability is below (1/4)^npoints.
    """
    if npoints < 1:
        raise ValueError("npoints must be >= 1")
    if f.is_structural_zero():
        return None
    for pt in _sample_points(f.d, npoints, seed, _pmax_for(f)):
        vals = evaluate(f, pt)
        for c, pair in enumerate(vals):
            if not pair.is_zero():
                return (pt, c, pair)
    return None


def is_zero_function(f: WaveFunction, npoints: int = 20, seed: int = 0) -> bool:
    """True iff f evaluates to the zero ParityPair at all sampled points."""
    return find_nonzero_witness(f, npoints, seed) is None
