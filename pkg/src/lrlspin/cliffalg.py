"""Gamma matrices and so(d) spin representations with exact entries.

Every matrix family here is certified, not assumed: `check_clifford` and
`check_so_commutations` brute-force the defining relations over all index
tuples in exact arithmetic.

Construction scheme (deterministic):
  d=1            gamma_1 = [[1]]
  d=2            {sigma_1, sigma_2}
  d even, d>2    extend d-2 by  g -> g(x)sigma_3, append I(x)sigma_1, I(x)sigma_2
  d odd,  d>1    the (d-1)-set plus its chirality matrix as gamma_d

Spin-half generators are S_munu = -(i/4)[gamma_mu, gamma_nu]: this is the
Hermitian normalization with eigenvalues +-1/2 that satisfies the so(d)
commutation relations together with J = L + S.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact import (GaussRat, I, Matrix, ONE, anticommutator, commutator,
                    kron)
from .report import CheckReport

PAULI_1 = Matrix.from_rows([[0, 1], [1, 0]])
PAULI_2 = Matrix(2, 2, {(0, 1): -I, (1, 0): I})
PAULI_3 = Matrix.from_rows([[1, 0], [0, -1]])


@dataclass(frozen=True)
class GammaSet:
    """Hermitian matrices gamma_1..gamma_d with {g_mu, g_nu} = 2 delta I."""

    d: int
    matrices: tuple
    dim: int


@dataclass(frozen=True)
class SpinRep:
    """Antisymmetric so(d) generator family S_munu, stored for mu < nu.

    kind is one of 'scalar', 'spinor', 'vector'.  Use `s(mu, nu)` for any
    index order; S_numu = -S_munu and S_mumu = 0.
    """

    d: int
    kind: str
    S: dict
    dim: int

    def s(self, mu: int, nu: int) -> Matrix:
        if mu == nu or self.kind == "scalar":
            return Matrix.zeros(self.dim)
        if mu < nu:
            return self.S[(mu, nu)]
        return -self.S[(nu, mu)]


def build_gamma(d: int) -> GammaSet:
    """Clifford generators for R^d, dimension 2^floor(d/2)."""
    if d < 1:
        raise ValueError(f"spatial dimension must be >= 1, got {d}")
    mats = _gamma_matrices(d)
    return GammaSet(d=d, matrices=tuple(mats), dim=mats[0].nrows)


def _gamma_matrices(d: int) -> list:
    if d == 1:
        return [Matrix.identity(1)]
    if d == 2:
        return [PAULI_1, PAULI_2]
    if d % 2 == 0:
        prev = _gamma_matrices(d - 2)
        iden = Matrix.identity(prev[0].nrows)
        out = [kron(g, PAULI_3) for g in prev]
        out.append(kron(iden, PAULI_1))
        out.append(kron(iden, PAULI_2))
        return out
    prev = _gamma_matrices(d - 1)
    return prev + [_chirality(prev)]


def _chirality(gammas: list) -> Matrix:
    prod = Matrix.identity(gammas[0].nrows)
    for g in gammas:
        prod = prod @ g
    # prod^2 = +-I; the anti-Hermitian branch becomes Hermitian after *i
    square = prod @ prod
    if square == Matrix.identity(prod.nrows):
        return prod
    return prod.scale(I)


def build_chirality(g: GammaSet) -> Matrix:
    """gamma_{d+1} for even d: Hermitian, squares to I, anticommutes with all."""
    if g.d % 2 != 0:
        raise ValueError(f"chirality needs even d, got {g.d}")
    return _chirality(list(g.matrices))


def build_spin_half(d: int) -> SpinRep:
    """Spinor generators S_munu = -(i/4)[gamma_mu, gamma_nu]."""
    if d < 2:
        raise ValueError(f"spin representations need d >= 2, got {d}")
    g = build_gamma(d)
    quarter = GaussRat(0, Fraction(-1, 4))
    S = {}
    for mu in range(d):
        for nu in range(mu + 1, d):
            S[(mu, nu)] = commutator(g.matrices[mu], g.matrices[nu]).scale(quarter)
    return SpinRep(d=d, kind="spinor", S=S, dim=g.dim)


def build_spin_one(d: int) -> SpinRep:
    """Vector generators (S_munu)_ab = -i(delta_mua delta_nub - delta_nua delta_mub)."""
    if d < 2:
        raise ValueError(f"spin representations need d >= 2, got {d}")
    S = {}
    for mu in range(d):
        for nu in range(mu + 1, d):
            S[(mu, nu)] = Matrix(d, d, {(mu, nu): -I, (nu, mu): I})
    return SpinRep(d=d, kind="vector", S=S, dim=d)


def build_spin_scalar(d: int) -> SpinRep:
    return SpinRep(d=d, kind="scalar", S={}, dim=1)


def check_clifford(g: GammaSet) -> CheckReport:
    """Exhaustive exact check: anticommutators and Hermiticity."""
    rep = CheckReport()
    iden2 = Matrix.identity(g.dim, GaussRat(2))
    for mu in range(g.d):
        if g.matrices[mu].is_hermitian():
            rep.record_pass(f"gamma_{mu + 1} Hermitian")
        else:
            rep.record_fail("hermiticity", (mu + 1,), "gamma not Hermitian")
        for nu in range(mu, g.d):
            ac = anticommutator(g.matrices[mu], g.matrices[nu])
            target = iden2 if mu == nu else Matrix.zeros(g.dim)
            resid = ac - target
            if resid.is_zero():
                rep.record_pass(f"{{gamma_{mu + 1},gamma_{nu + 1}}}")
            else:
                rep.record_fail("anticommutator", (mu + 1, nu + 1),
                                f"max entry {resid.max_abs()}")
    return rep


def check_so_commutations(s: SpinRep) -> CheckReport:
    """Exhaustive exact check of the so(d) relations over all index quadruples."""
    rep = CheckReport()
    d = s.d
    for mu in range(d):
        for nu in range(mu + 1, d):
            if not s.s(mu, nu).is_hermitian():
                rep.record_fail("hermiticity", (mu + 1, nu + 1), "S not Hermitian")
    pairs = [(mu, nu) for mu in range(d) for nu in range(mu + 1, d)]
    delta = lambda a, b: 1 if a == b else 0
    for (mu, nu) in pairs:
        for (lam, sig) in pairs:
            lhs = commutator(s.s(mu, nu), s.s(lam, sig))
            rhs = (s.s(nu, sig).scale(delta(mu, lam))
                   + s.s(mu, lam).scale(delta(nu, sig))
                   - s.s(nu, lam).scale(delta(mu, sig))
                   - s.s(mu, sig).scale(delta(nu, lam))).scale(I)
            resid = lhs - rhs
            if resid.is_zero():
                rep.record_pass(f"[S_{mu + 1}{nu + 1},S_{lam + 1}{sig + 1}]")
            else:
                rep.record_fail("so(d) commutator",
                                (mu + 1, nu + 1, lam + 1, sig + 1),
                                f"max entry {resid.max_abs()}")
    return rep


def spin_one_trace_identity(s: SpinRep) -> bool:
    """(1/2) S_munu S_munu = (d-1) I, exactly (full index sum)."""
    if s.kind != "vector":
        raise ValueError("trace identity applies to the vector representation")
    acc = Matrix.zeros(s.dim)
    for mu in range(s.d):
        for nu in range(s.d):
            if mu != nu:
                acc = acc + s.s(mu, nu) @ s.s(mu, nu)
    return acc.scale(Fraction(1, 2)) == Matrix.identity(s.dim, GaussRat(s.d - 1))
