"""Special functions for the closed-form eigenfunctions.

Only what the bound states need: terminating confluent hypergeometric
series, modified Bessel functions K0/K1 (ascending series below x=2,
continued fraction above), I0/I1 as internal oracles, and adaptive
quadrature for normalizations.  No external special-function library.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

_EULER_GAMMA = 0.57721566490153286060651209008240243104215933593992
_BRANCH_X = 2.0


class QuadratureError(RuntimeError):
    """Adaptive refinement failed to reach the target error."""


def kummer_terminating(n: int, b, z: float) -> float:
    """1F1(-n; b; z) as the exact finite sum.

    The first parameter is -n with integer n >= 0, so the series has n+1
    terms.  The sum alternates with huge cancellation at large z, so it is
    accumulated in exact rational arithmetic (the float argument converts
    exactly) and rounded once at the end.  b may be rational; b in
    {0, -1, ..., -(n-1)} hits a pole of the (b)_k factor.
    """
    if n < 0 or int(n) != n:
        raise ValueError(f"terminating order must be a nonnegative integer, got {n}")
    bfrac = Fraction(b)
    if bfrac.denominator == 1 and -n < bfrac <= 0:
        raise ValueError(f"1F1(-{n}; {b}; z) hits a pole of the (b)_k factor")
    zfrac = Fraction(z)
    total = Fraction(1)
    term = Fraction(1)
    for k in range(1, n + 1):
        term *= Fraction(-(n - k + 1)) / (bfrac + k - 1) * zfrac / k
        total += term
    return float(total)


def bessel_i0(x: float) -> float:
    """I0 by ascending series (internal oracle for the Wronskian test)."""
    t = 0.25 * x * x
    term = 1.0
    total = 1.0
    for k in range(1, 300):
        term *= t / (k * k)
        total += term
        if term < 1e-18 * total:
            break
    return total


def bessel_i1(x: float) -> float:
    """I1 by ascending series."""
    t = 0.25 * x * x
    term = 0.5 * x
    total = term
    for k in range(1, 300):
        term *= t / (k * (k + 1))
        total += term
        if abs(term) < 1e-18 * abs(total):
            break
    return total


def _k01_series(x: float) -> tuple:
    """K0, K1 for 0 < x <= 2 from the ascending series."""
    t = 0.25 * x * x
    lg = math.log(0.5 * x)
    # K0 = -(log(x/2)+gamma) I0 + sum_{k>=1} H_k t^k/(k!)^2
    term = 1.0
    harm = 0.0
    acc0 = 0.0
    for k in range(1, 200):
        term *= t / (k * k)
        harm += 1.0 / k
        contrib = term * harm
        acc0 += contrib
        if contrib < 1e-18 * max(acc0, 1.0):
            break
    k0 = -(lg + _EULER_GAMMA) * bessel_i0(x) + acc0
    # K1 = 1/x + log(x/2) I1 - (x/4) sum [psi(k+1)+psi(k+2)] t^k/(k!(k+1)!)
    psi1 = -_EULER_GAMMA          # psi(1)
    psi2 = 1.0 - _EULER_GAMMA     # psi(2)
    term = 1.0                    # t^k/(k!(k+1)!) at k=0
    acc1 = term * (psi1 + psi2)
    for k in range(1, 200):
        term *= t / (k * (k + 1))
        psi1 += 1.0 / k
        psi2 += 1.0 / (k + 1)
        contrib = term * (psi1 + psi2)
        acc1 += contrib
        if abs(contrib) < 1e-18 * max(abs(acc1), 1.0):
            break
    k1 = 1.0 / x + lg * bessel_i1(x) - 0.25 * x * acc1
    return k0, k1


def _k01_cf(x: float) -> tuple:
    """K0, K1 for x > 2 by the Steed continued fraction (CF2)."""
    eps = 1e-16
    b = 2.0 * (1.0 + x)
    d = 1.0 / b
    h = delh = d
    q1, q2 = 0.0, 1.0
    a1 = 0.25
    q = c = a1
    a = -a1
    s = 1.0 + q * delh
    for i in range(2, 8001):
        a -= 2.0 * (i - 1)
        c = -a * c / i
        qnew = (q1 - b * q2) / a
        q1, q2 = q2, qnew
        q += c * qnew
        b += 2.0
        d = 1.0 / (b + a * d)
        delh = (b * d - 1.0) * delh
        h += delh
        dels = q * delh
        s += dels
        if abs(dels / s) < eps:
            break
    else:
        raise QuadratureError(f"Bessel continued fraction failed to converge at x={x}")
    h = a1 * h
    k0 = math.sqrt(math.pi / (2.0 * x)) * math.exp(-x) / s
    k1 = k0 * (x + 0.5 - h) / x
    return k0, k1


def bessel_k(order: int, x: float) -> float:
    """Modified Bessel K0 or K1, relative accuracy ~1e-12 over (0, inf)."""
    if order not in (0, 1):
        raise ValueError(f"only orders 0 and 1 are implemented, got {order}")
    if x <= 0:
        raise ValueError(f"bessel_k needs x > 0, got {x}")
    k0, k1 = _k01_series(x) if x <= _BRANCH_X else _k01_cf(x)
    return k0 if order == 0 else k1


@dataclass
class QuadratureRule:
    """Adaptive rule: refine until successive estimates agree to rel_err."""

    kind: str = "simpson"          # 'simpson' or 'gauss'
    rel_err: float = 1e-10
    max_refinements: int = 24
    min_panels: int = 16


def integrate(f, a: float, b: float, rule: QuadratureRule | None = None) -> float:
    """Integrate a callable on (a, b) adaptively to the rule's target.

    The integrand must be finite on the closed interval as evaluated
    (states vanish at the endpoints by construction).
    """
    rule = rule or QuadratureRule()
    if rule.kind == "gauss":
        return _integrate_gauss(f, a, b, rule)
    return _integrate_simpson(f, a, b, rule)


def _integrate_simpson(f, a, b, rule) -> float:
    n = rule.min_panels
    xs = np.linspace(a, b, n + 1)
    vals = np.array([f(x) for x in xs], dtype=float)
    if not np.all(np.isfinite(vals)):
        raise QuadratureError("integrand not finite on the interval")
    h = (b - a) / n
    trap = h * (0.5 * vals[0] + vals[1:-1].sum() + 0.5 * vals[-1])
    prev_simpson = None
    for _ in range(rule.max_refinements):
        mid = 0.5 * (xs[:-1] + xs[1:])
        mvals = np.array([f(x) for x in mid], dtype=float)
        trap2 = 0.5 * trap + 0.5 * h * mvals.sum()
        simpson = (4.0 * trap2 - trap) / 3.0
        if prev_simpson is not None:
            err = abs(simpson - prev_simpson)
            if err <= rule.rel_err * max(abs(simpson), 1e-300):
                return simpson
        prev_simpson = simpson
        xs = np.sort(np.concatenate([xs, mid]))
        vals = None
        trap = trap2
        h *= 0.5
        n *= 2
    raise QuadratureError(
        f"Simpson refinement did not converge after {rule.max_refinements} doublings "
        f"(last estimate {prev_simpson!r})")


def _integrate_gauss(f, a, b, rule) -> float:
    nodes, weights = np.polynomial.legendre.leggauss(32)
    npanel = 1
    prev = None
    for _ in range(rule.max_refinements):
        edges = np.linspace(a, b, npanel + 1)
        total = 0.0
        for lo, hi in zip(edges[:-1], edges[1:]):
            mid = 0.5 * (lo + hi)
            half = 0.5 * (hi - lo)
            total += half * sum(w * f(mid + half * t) for t, w in zip(nodes, weights))
        if prev is not None and abs(total - prev) <= rule.rel_err * max(abs(total), 1e-300):
            return total
        prev = total
        npanel *= 2
    raise QuadratureError("Gauss-Legendre refinement did not converge")


def integrate_samples(x, y) -> float:
    """Trapezoid on sampled values (normalization checks of exported grids)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    trapezoid = getattr(np, 'trapezoid', np.trapz)
    return float(trapezoid(y, x))
