"""Matrix differential operators on the closed function class.

A TermOperator is a finite sum of primitive terms
    (matrix coefficient) * x^mono * r^rpow * d^deriv
applied right-to-left (differentiate, then multiply).  Sums, scalar
multiples, and compositions are kept as small operator trees and realized
by repeated application; no operator normal form is ever computed.

All the model operators live here: H, J_munu, K_mu, the Dirac-type D,
and the potential gradients, for the four potential kinds.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..cliffalg import SpinRep, build_gamma, build_spin_half, build_spin_one, build_spin_scalar
from ..exact import GaussRat, I, Matrix, ONE
from .functions import WaveFunction, _addterm

MINUS_I = GaussRat(0, -1)


class DiffOperator:
    """Base: a linear operator mapping the function class to itself."""

    d: int
    ncomp: int

    def apply(self, f: WaveFunction) -> WaveFunction:
        raise NotImplementedError

    def _check(self, f: WaveFunction):
        if f.d != self.d or f.ncomp != self.ncomp:
            raise ValueError(
                f"operator on d={self.d}, ncomp={self.ncomp} applied to "
                f"function with d={f.d}, ncomp={f.ncomp}")

    def __add__(self, other):
        return OpSum(self.d, self.ncomp, (self, other))

    def __sub__(self, other):
        return OpSum(self.d, self.ncomp, (self, OpScale(other, GaussRat(-1))))

    def __neg__(self):
        return OpScale(self, GaussRat(-1))

    def __mul__(self, other):
        if isinstance(other, DiffOperator):
            return OpCompose(self, other)
        return OpScale(self, other)

    def __rmul__(self, c):
        return OpScale(self, c)


@dataclass(frozen=True)
class TermOperator(DiffOperator):
    """Finite sum of primitive multiply-after-differentiate terms."""

    d: int
    ncomp: int
    terms: tuple  # of (Matrix, xmono tuple, rpow int, deriv tuple)

    def apply(self, f: WaveFunction) -> WaveFunction:
        self._check(f)
        out = WaveFunction.zero(self.d, self.ncomp, f.beta)
        beta = f.beta
        for (mat, xm, rp, dv) in self.terms:
            cache = {}
            anyxm = any(xm)
            for (i, j), mc in mat.data.items():
                src = cache.get(j)
                if src is None:
                    src = f.comps[j]
                    for nu in range(self.d):
                        for _ in range(dv[nu]):
                            src = _ddx(src, nu, beta)
                    cache[j] = src
                dst = out.comps[i]
                for (mono, rpow), coef in src.items():
                    m2 = tuple(p + q for p, q in zip(mono, xm)) if anyxm else mono
                    _addterm(dst, m2, rpow + rp, coef * mc)
        return out

    def is_multiplication(self) -> bool:
        return all(not any(dv) for (_, _, _, dv) in self.terms)

    def gradient(self, nu: int) -> "TermOperator":
        """d/dx_nu of a multiplication operator, as a multiplication operator."""
        if not self.is_multiplication():
            raise ValueError("gradient is defined for multiplication operators")
        out = []
        for (mat, xm, rp, dv) in self.terms:
            a = xm[nu]
            if a:
                m2 = xm[:nu] + (a - 1,) + xm[nu + 1:]
                out.append((mat.scale(a), m2, rp, dv))
            if rp:
                m2 = xm[:nu] + (a + 1,) + xm[nu + 1:]
                out.append((mat.scale(rp), m2, rp - 2, dv))
        return TermOperator(self.d, self.ncomp, tuple(out))


def _ddx(comp: dict, nu: int, beta: Fraction) -> dict:
    """partial/partial x_nu of one component (dr/dx = x/r, exp factor included)."""
    out: dict = {}
    for (mono, rpow), coef in comp.items():
        a = mono[nu]
        if a:
            m2 = mono[:nu] + (a - 1,) + mono[nu + 1:]
            _addterm(out, m2, rpow, coef * a)
        m2 = mono[:nu] + (a + 1,) + mono[nu + 1:]
        if rpow:
            _addterm(out, m2, rpow - 2, coef * rpow)
        _addterm(out, m2, rpow - 1, coef * (-beta))
    return out


@dataclass(frozen=True)
class OpSum(DiffOperator):
    d: int
    ncomp: int
    ops: tuple

    def apply(self, f):
        out = WaveFunction.zero(self.d, self.ncomp, f.beta)
        for op in self.ops:
            out = out + op.apply(f)
        return out


@dataclass(frozen=True)
class OpCompose(DiffOperator):
    """first apply `inner`, then `outer`."""

    outer: DiffOperator
    inner: DiffOperator

    def __post_init__(self):
        object.__setattr__(self, "d", self.outer.d)
        object.__setattr__(self, "ncomp", self.outer.ncomp)

    def apply(self, f):
        return self.outer.apply(self.inner.apply(f))


@dataclass(frozen=True)
class OpScale(DiffOperator):
    op: DiffOperator
    c: GaussRat

    def __post_init__(self):
        object.__setattr__(self, "d", self.op.d)
        object.__setattr__(self, "ncomp", self.op.ncomp)
        if not isinstance(self.c, GaussRat):
            object.__setattr__(self, "c", GaussRat(self.c))

    def apply(self, f):
        return self.op.apply(f).scale(self.c)


def apply(op: DiffOperator, f: WaveFunction) -> WaveFunction:
    """Apply an operator; exact result in the same closed class."""
    return op.apply(f)


def op_commutator(a: DiffOperator, b: DiffOperator) -> DiffOperator:
    return a * b - b * a


def op_anticommutator(a: DiffOperator, b: DiffOperator) -> DiffOperator:
    return a * b + b * a


POTENTIAL_KINDS = ("coulomb", "spinor", "vector", "vector_extended")


@dataclass(frozen=True)
class ModelSpec:
    """One superintegrable model: dimension, representation, potential, couplings."""

    d: int
    potential_kind: str
    rep: SpinRep
    m: Fraction
    alpha: Fraction
    ncomp: int
    gammas: tuple = field(default=(), repr=False)

    def spin_matrix(self, mu: int, nu: int) -> Matrix:
        """S_munu acting on the model's component space (handles the
        d+1-component embedding of the extended vector model)."""
        s = self.rep.s(mu, nu)
        if self.potential_kind != "vector_extended":
            return s
        emb = {(i + 1, j + 1): v for (i, j), v in s.data.items()}
        return Matrix(self.ncomp, self.ncomp, emb)


def model_spec(d: int, kind: str, m=1, alpha=1) -> ModelSpec:
    """Build a ModelSpec; kind is one of 'scalar'/'coulomb', 'spinor',
    'vector', 'vector_extended'."""
    kind = {"scalar": "coulomb", "half": "spinor", "one": "vector",
            "one-extended": "vector_extended"}.get(kind, kind)
    if kind not in POTENTIAL_KINDS:
        raise ValueError(f"unknown potential kind {kind!r}")
    m = Fraction(m)
    alpha = Fraction(alpha)
    if m <= 0 or alpha <= 0:
        raise ValueError("mass and coupling must be positive rationals")
    gammas = ()
    if kind == "coulomb":
        rep = build_spin_scalar(d)
        ncomp = 1
    elif kind == "spinor":
        if d < 2:
            raise ValueError("spinor models need d >= 2")
        rep = build_spin_half(d)
        ncomp = rep.dim
        gammas = build_gamma(d).matrices
    else:
        if d < 2:
            raise ValueError("vector models need d >= 2")
        rep = build_spin_one(d)
        ncomp = d + 1 if kind == "vector_extended" else d
    return ModelSpec(d=d, potential_kind=kind, rep=rep, m=m, alpha=alpha,
                     ncomp=ncomp, gammas=gammas)


def _zmono(d):
    return (0,) * d


def _emono(d, nu, k=1):
    m = [0] * d
    m[nu] = k
    return tuple(m)


def build_potential(ms: ModelSpec) -> TermOperator:
    """The multiplication operator V for the model's potential kind."""
    d, a = ms.d, ms.alpha
    nc = ms.ncomp
    terms = []
    if ms.potential_kind == "coulomb":
        terms.append((Matrix.identity(1, GaussRat(-a)), _zmono(d), -1, _zmono(d)))
    elif ms.potential_kind == "spinor":
        # (alpha/r) gamma.n realized as (alpha/r^2) gamma_nu x_nu
        for nu in range(d):
            terms.append((ms.gammas[nu].scale(a), _emono(d, nu), -2, _zmono(d)))
    else:
        off = 1 if ms.potential_kind == "vector_extended" else 0
        if off:
            terms.append((Matrix(nc, nc, {(0, 0): GaussRat(Fraction(d - 1) * a / 2)}),
                          _zmono(d), -1, _zmono(d)))
        for c in range(d):
            terms.append((Matrix(nc, nc, {(c + off, c + off): GaussRat(Fraction(d - 3) * a / 2)}),
                          _zmono(d), -1, _zmono(d)))
        for i in range(d):
            for j in range(d):
                mono = [0] * d
                mono[i] += 1
                mono[j] += 1
                terms.append((Matrix(nc, nc, {(i + off, j + off): GaussRat(a)}),
                              tuple(mono), -3, _zmono(d)))
    return TermOperator(d, nc, tuple(terms))


def build_hamiltonian(ms: ModelSpec) -> DiffOperator:
    """H = p^2/2m + V as a single primitive term operator."""
    d, nc = ms.d, ms.ncomp
    kin = [(Matrix.identity(nc, GaussRat(Fraction(-1, 2) / ms.m)),
            _zmono(d), 0, _emono(d, nu, 2)) for nu in range(d)]
    return TermOperator(d, nc, tuple(kin) + build_potential(ms).terms)


def momentum(ms: ModelSpec, nu: int) -> TermOperator:
    return TermOperator(ms.d, ms.ncomp,
                        ((Matrix.identity(ms.ncomp, MINUS_I), _zmono(ms.d), 0,
                          _emono(ms.d, nu)),))


def so_pairs(d: int) -> list:
    return [(mu, nu) for mu in range(d) for nu in range(mu + 1, d)]


def build_angular_momentum(ms: ModelSpec, mu: int, nu: int) -> TermOperator:
    """J_munu = x_mu p_nu - x_nu p_mu + S_munu."""
    d, nc = ms.d, ms.ncomp
    terms = [
        (Matrix.identity(nc, MINUS_I), _emono(d, mu), 0, _emono(d, nu)),
        (Matrix.identity(nc, I), _emono(d, nu), 0, _emono(d, mu)),
    ]
    s = ms.spin_matrix(mu, nu)
    if not s.is_zero():
        terms.append((s, _zmono(d), 0, _zmono(d)))
    return TermOperator(d, nc, tuple(terms))


def build_angular_momenta(ms: ModelSpec) -> list:
    """All J_munu for mu < nu, in so_pairs order."""
    return [build_angular_momentum(ms, mu, nu) for (mu, nu) in so_pairs(ms.d)]


def orbital_momentum(ms: ModelSpec, mu: int, nu: int) -> TermOperator:
    """L_munu = x_mu p_nu - x_nu p_mu (no spin part)."""
    d, nc = ms.d, ms.ncomp
    return TermOperator(d, nc, (
        (Matrix.identity(nc, MINUS_I), _emono(d, mu), 0, _emono(d, nu)),
        (Matrix.identity(nc, I), _emono(d, nu), 0, _emono(d, mu)),
    ))


def build_lrl_component(ms: ModelSpec, mu: int) -> DiffOperator:
    """K_mu = (1/2m)(p_nu J_munu + J_munu p_nu) + x_mu V."""
    half = GaussRat(Fraction(1, 2) / ms.m)
    parts = []
    for nu in range(ms.d):
        if nu == mu:
            continue
        J = build_angular_momentum(ms, mu, nu)
        p = momentum(ms, nu)
        parts.append(OpScale(OpCompose(p, J), half))
        parts.append(OpScale(OpCompose(J, p), half))
    xV = TermOperator(ms.d, ms.ncomp, tuple(
        (mat, tuple(xm[k] + (1 if k == mu else 0) for k in range(ms.d)), rp, dv)
        for (mat, xm, rp, dv) in build_potential(ms).terms))
    parts.append(xV)
    return OpSum(ms.d, ms.ncomp, tuple(parts))


def build_lrl(ms: ModelSpec) -> list:
    """The d components of the Runge-Lenz-type vector."""
    return [build_lrl_component(ms, mu) for mu in range(ms.d)]


def build_dirac_D(ms: ModelSpec) -> TermOperator:
    """D = S_munu L_munu + (d-1)/2 (full index sum), spinor models only.

    Equals -(i/2) gamma_mu gamma_nu L_munu + (d-1)/2 in the Hermitian
    spin normalization used throughout.
    """
    if ms.potential_kind != "spinor":
        raise ValueError("the Dirac-type operator needs the spinor representation")
    d, nc = ms.d, ms.ncomp
    terms = []
    for (mu, nu) in so_pairs(d):
        s2 = ms.spin_matrix(mu, nu).scale(2)
        terms.append((s2.scale(MINUS_I), _emono(d, mu), 0, _emono(d, nu)))
        terms.append((s2.scale(I), _emono(d, nu), 0, _emono(d, mu)))
    terms.append((Matrix.identity(nc, GaussRat(Fraction(d - 1, 2))),
                  _zmono(d), 0, _zmono(d)))
    return TermOperator(d, nc, tuple(terms))


def gamma_dot_p(ms: ModelSpec) -> TermOperator:
    if ms.potential_kind != "spinor":
        raise ValueError("gamma contractions need the spinor representation")
    return TermOperator(ms.d, ms.ncomp, tuple(
        (ms.gammas[nu].scale(MINUS_I), _zmono(ms.d), 0, _emono(ms.d, nu))
        for nu in range(ms.d)))


def gamma_dot_x(ms: ModelSpec) -> TermOperator:
    if ms.potential_kind != "spinor":
        raise ValueError("gamma contractions need the spinor representation")
    return TermOperator(ms.d, ms.ncomp, tuple(
        (ms.gammas[nu], _emono(ms.d, nu), 0, _zmono(ms.d))
        for nu in range(ms.d)))


def radial_derivative(ms: ModelSpec) -> TermOperator:
    """d/dr = (x_nu/r) d_nu on the function class."""
    d, nc = ms.d, ms.ncomp
    return TermOperator(d, nc, tuple(
        (Matrix.identity(nc), _emono(d, nu), -1, _emono(d, nu))
        for nu in range(d)))


def mult_rpow(ms: ModelSpec, k: int) -> TermOperator:
    return TermOperator(ms.d, ms.ncomp,
                        ((Matrix.identity(ms.ncomp), _zmono(ms.d), k, _zmono(ms.d)),))


def gradient_potential(ms: ModelSpec) -> list:
    """The multiplication operators grad_nu V, exact."""
    V = build_potential(ms)
    return [V.gradient(nu) for nu in range(ms.d)]
