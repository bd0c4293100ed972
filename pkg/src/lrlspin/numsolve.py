"""Independent finite-difference eigenvalue oracle for the radial problems.

Discretization: second-order central differences on a log grid
(r = e^u, chi = e^{u/2} g), which turns -chi'' + M(r) chi = eps chi into
the symmetric generalized pencil

    A g = eps B g,   A = -D2 + 1/4 + e^{2u} M(e^u),   B = diag(e^{2u}),

or on a uniform grid (B = I, no 1/4 term; r_min < 0 allowed there, used by
the oscillator self-test).  The weight spans many decades on log grids, so
eigenvalues are found by Sturm bisection on the pencil (LDL^T inertia of
A - sigma B), never by scaling B away; eigenvectors come from banded
inverse iteration.  Everything is deterministic.

Channels whose centrifugal coefficient is exactly -1/4 (limit-circle
endpoint) get a half-cell Neumann left boundary; all other boundaries are
Dirichlet.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import solve_banded

from .report import CheckReport

DEFAULT_NPOINTS = 8000
DEFAULT_RMIN_FACTOR = 1e-8
DEFAULT_RMAX_FACTOR = 40.0


class SolverError(RuntimeError):
    """Eigensolver failure, with diagnostics in the message."""


@dataclass(frozen=True)
class Grid:
    """Radial grid: log (r_i = exp(u_i), uniform u) or uniform in r."""

    kind: str = "log"
    r_min: float = 1e-8
    r_max: float = 40.0
    npoints: int = DEFAULT_NPOINTS

    def __post_init__(self):
        if self.kind not in ("log", "uniform"):
            raise ValueError(f"unknown grid kind {self.kind!r}")
        if self.npoints < 100:
            raise ValueError("npoints must be >= 100")
        if self.r_min >= self.r_max:
            raise ValueError("r_min must be < r_max")
        if self.kind == "log" and self.r_min <= 0:
            raise ValueError("log grids need r_min > 0")

    def nodes(self) -> np.ndarray:
        if self.kind == "log":
            return np.exp(np.linspace(math.log(self.r_min), math.log(self.r_max),
                                      self.npoints))
        return np.linspace(self.r_min, self.r_max, self.npoints)

    def refined(self) -> "Grid":
        return Grid(self.kind, self.r_min, self.r_max, 2 * self.npoints)


def default_grid(problem, npoints: int = DEFAULT_NPOINTS) -> Grid:
    """Log grid sized from the problem's largest relevant decay length."""
    L = problem.decay_scale()
    return Grid("log", DEFAULT_RMIN_FACTOR * L, DEFAULT_RMAX_FACTOR * L, npoints)


@dataclass
class BandedSymmetricSystem:
    """The symmetric pencil (A, B) in banded storage.

    diag/sub1/subn are the diagonal, first (intra-node, nchan=2 only) and
    nchan-th (node-coupling) subdiagonals of A; bweight is the diagonal of
    B.  Exactly symmetric by construction.
    """

    nchan: int
    npoints: int
    diag: np.ndarray
    sub1: np.ndarray
    subn: np.ndarray
    bweight: np.ndarray
    grid: Grid
    r: np.ndarray
    neumann: tuple
    _lists: tuple = field(default=None, repr=False)

    @property
    def size(self) -> int:
        return self.npoints * self.nchan

    @property
    def bandwidth(self) -> int:
        return self.nchan

    def as_lists(self):
        if self._lists is None:
            self._lists = (self.diag.tolist(), self.sub1.tolist(),
                           self.subn.tolist(), self.bweight.tolist())
        return self._lists

    def dense(self) -> tuple:
        """Dense (A, B) for small sanity checks only."""
        n = self.size
        A = np.zeros((n, n))
        A[np.arange(n), np.arange(n)] = self.diag
        for i in range(n - 1):
            A[i, i + 1] = A[i + 1, i] = self.sub1[i]
        for i in range(n - self.nchan):
            A[i, i + self.nchan] = A[i + self.nchan, i] = self.subn[i]
        return A, np.diag(self.bweight)

    def symmetry_defect(self) -> float:
        A, _ = self.dense()
        return float(np.max(np.abs(A - A.T)))


def discretize(problem, grid: Grid) -> BandedSymmetricSystem:
    """Assemble the symmetric pencil for a RadialProblem on a grid."""
    nchan = problem.nchan
    r = grid.nodes()
    npts = grid.npoints
    scal = problem.scaling()
    if grid.kind == "log":
        h = (math.log(grid.r_max) - math.log(grid.r_min)) / (npts - 1)
        w = r**2
        extra = 0.25
    else:
        h = (grid.r_max - grid.r_min) / (npts - 1)
        w = np.ones(npts)
        extra = 0.0
    neumann = problem.neumann_left() if grid.kind == "log" else (False,) * nchan
    n = npts * nchan
    diag = np.zeros(n)
    sub1 = np.zeros(max(n - 1, 1)) if nchan == 2 else np.zeros(0)
    subn = np.zeros(n - nchan)
    kin = 2.0 / h**2
    Dscale = scal
    for i in range(npts):
        M = problem.potential_matrix(r[i])
        Msym = (Dscale[:, None] * M) / Dscale[None, :]
        defect = np.max(np.abs(Msym - Msym.T))
        if defect > 1e-13 * max(1.0, np.max(np.abs(Msym))):
            raise SolverError(f"potential matrix not symmetrizable at r={r[i]}: "
                              f"defect {defect}")
        Msym = 0.5 * (Msym + Msym.T)
        blk = (kin + extra) * np.eye(nchan) + w[i] * Msym
        for c in range(nchan):
            diag[i * nchan + c] = blk[c, c]
        if nchan == 2:
            sub1[i * nchan] = blk[1, 0]
        if i + 1 < npts:
            for c in range(nchan):
                subn[i * nchan + c] = -1.0 / h**2
    bw = np.repeat(w, nchan)
    # half-cell Neumann rows: scale row/weight by 1/2, kinetic diag -> 1/h^2
    for c in range(nchan):
        if neumann[c]:
            diag[c] = 0.5 * (diag[c] - kin) + 1.0 / h**2
            if nchan == 2:
                sub1[0] *= 0.5 if c == 0 else 1.0
            bw[c] *= 0.5
    return BandedSymmetricSystem(nchan=nchan, npoints=npts, diag=diag, sub1=sub1,
                                 subn=subn, bweight=bw, grid=grid, r=r,
                                 neumann=neumann)


def _count_below(system: BandedSymmetricSystem, sigma: float) -> int:
    """Number of pencil eigenvalues below sigma (LDL^T inertia)."""
    diag, sub1, subn, bw = system.as_lists()
    n = system.size
    neg = 0
    if system.nchan == 1:
        piv = diag[0] - sigma * bw[0]
        if piv == 0.0:
            piv = 1e-300
        if piv < 0.0:
            neg = 1
        for i in range(1, n):
            e = subn[i - 1]
            piv = diag[i] - sigma * bw[i] - e * e / piv
            if piv == 0.0:
                piv = 1e-300
            if piv < 0.0:
                neg += 1
        return neg
    a0 = [diag[i] - sigma * bw[i] for i in range(n)]
    a1 = list(sub1) + [0.0]
    a2 = list(subn) + [0.0, 0.0]
    for i in range(n):
        piv = a0[i]
        if piv == 0.0:
            piv = 1e-300
        if piv < 0.0:
            neg += 1
        v1 = a1[i]
        v2 = a2[i]
        if v1 != 0.0 or v2 != 0.0:
            if i + 1 < n:
                l1 = v1 / piv
                a0[i + 1] -= l1 * v1
                if i + 2 < n:
                    a1[i + 1] -= (v2 / piv) * v1
            if i + 2 < n:
                a0[i + 2] -= (v2 / piv) * v2
    return neg


def lowest_eigenvalues(system: BandedSymmetricSystem, k: int,
                       rel_tol: float = 1e-13) -> list:
    """The k smallest pencil eigenvalues (eps = 2mE units), ascending,
    by deterministic Sturm bisection."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if k > system.size:
        raise SolverError(f"requested {k} eigenvalues from a system of size "
                          f"{system.size}")
    diag, sub1, subn, bw = system.as_lists()
    n = system.size
    off = np.zeros(n)
    if len(system.subn):
        off[:-system.nchan] += np.abs(system.subn)
        off[system.nchan:] += np.abs(system.subn)
    if system.nchan == 2 and len(system.sub1):
        off[:-1] += np.abs(system.sub1)
        off[1:] += np.abs(system.sub1)
    glo = float(np.min((system.diag - off) / system.bweight)) - 1.0
    ghi = float(np.max((system.diag + off) / system.bweight)) + 1.0
    vals = []
    lo = glo
    for j in range(k):
        a, b = lo, ghi
        # shrink: eigenvalue j is the unique sigma with count crossing j+1
        steps = 0
        while b - a > rel_tol * max(1.0, abs(a), abs(b)):
            mid = 0.5 * (a + b)
            if _count_below(system, mid) >= j + 1:
                b = mid
            else:
                a = mid
            steps += 1
            if steps > 300:
                raise SolverError(
                    f"bisection stalled for eigenvalue {j}: bracket "
                    f"[{a}, {b}] after {steps} steps")
        vals.append(0.5 * (a + b))
        lo = a  # next eigenvalue cannot be below this one
    return vals


def eigenpairs(system: BandedSymmetricSystem, k: int):
    """(eigenvalues, eigenvectors): vectors are reduced-basis channel
    functions chi_c(r_i), B-orthonormalized, shape (nchan, npoints)."""
    vals = lowest_eigenvalues(system, k)
    n = system.size
    nchan = system.nchan
    if system.grid.kind == "log":
        halfu = np.sqrt(system.r)
    else:
        halfu = np.ones(system.npoints)
    span = max(abs(vals[0]), 1.0)
    vecs = []
    raw = []
    for j, lam in enumerate(vals):
        shift = lam - 1e-9 * span
        ab = np.zeros((2 * nchan + 1, n))
        ab[nchan] = system.diag - shift * system.bweight
        if nchan == 2:
            ab[nchan + 1, :-1] = system.sub1
            ab[nchan - 1, 1:] = system.sub1
        ab[2 * nchan, :-nchan] = system.subn
        ab[0, nchan:] = system.subn
        x = np.ones(n)
        for _ in range(4):
            x = solve_banded((nchan, nchan), ab, system.bweight * x)
            for v in raw:
                x -= v * float(np.dot(v * system.bweight, x))
            nrm = math.sqrt(float(np.dot(x * system.bweight, x)))
            if nrm == 0 or not math.isfinite(nrm):
                raise SolverError(f"inverse iteration broke down at level {j}")
            x /= nrm
        raw.append(x.copy())
        chan = x.reshape(system.npoints, nchan).T * halfu[None, :]
        vecs.append(chan)
    return vals, vecs


def refined_spectrum(problem, grid: Grid, k: int):
    """Richardson-extrapolated energies (E units) with error estimates,
    from the (npoints, 2*npoints) pair assuming O(h^2) convergence."""
    e1 = lowest_eigenvalues(discretize(problem, grid), k)
    e2 = lowest_eigenvalues(discretize(problem, grid.refined()), k)
    two_m = 2.0 * float(problem.m)
    out = []
    errs = []
    for a, b in zip(e1, e2):
        ext = (4.0 * b - a) / 3.0
        out.append(ext / two_m)
        errs.append(abs(b - a) / 3.0 / two_m)
    return out, errs


def node_count(eigvec: np.ndarray) -> int:
    """Strict sign changes of the dominant channel, ignoring entries below
    1e-12 of the channel maximum."""
    v = np.asarray(eigvec)
    if v.ndim == 2:
        v = v[int(np.argmax(np.max(np.abs(v), axis=1)))]
    core = v[np.abs(v) > 1e-12 * np.max(np.abs(v))]
    if core.size < 2:
        return 0
    return int(np.sum(np.sign(core[1:]) != np.sign(core[:-1])))


def compare(analytic, numeric, rel_tol: float = 1e-6) -> CheckReport:
    """Match analytic SpectrumLines against numeric energies in order."""
    report = CheckReport()
    if len(analytic) != len(numeric):
        raise ValueError(f"level count mismatch: {len(analytic)} analytic vs "
                         f"{len(numeric)} numeric")
    for line, e_num in zip(analytic, numeric):
        e_ref = float(line.energy)
        dev = abs(e_num - e_ref) / abs(e_ref)
        label = f"n={line.n} E={e_ref:.12g} dev={dev:.3e}"
        if dev <= rel_tol:
            report.record_pass(label)
        else:
            report.record_fail("spectrum deviation", (line.n,),
                               f"rel dev {dev:.3e} > {rel_tol}")
    return report
