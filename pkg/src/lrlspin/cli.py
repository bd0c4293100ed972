"""Command-line interface.

Subcommands: repcheck (representation certification), verify (operator
identity certification), spectrum (analytic levels, optionally against the
finite-difference oracle), radial (eigenfunction export), forbidden
(transverse-channel emptiness), eval-specfun (debug evaluations).

Exit codes: 0 success, 1 usage error, 2 verification failure, 3 numerical
failure.  Reports are JSON per the schema in lrlspin.report; tables are
plain CSV with '.' decimals and 15 significant digits.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import cliffalg, numsolve, radial
from .exact import parse_rational
from .opalg import (build_hamiltonian, build_lrl_component, model_spec,
                    verify_appendixA, verify_potential_conditions,
                    verify_spin1_identities, verify_symmetry_algebra)
from .opalg.functions import find_nonzero_witness, random_test_function
from .report import CheckReport, report_json
from .specfun import QuadratureError, bessel_k, kummer_terminating

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFY = 2
EXIT_NUMERIC = 3

SPINS = ("scalar", "half", "one", "one-extended")
_SPIN_KIND = {"scalar": "coulomb", "half": "spinor", "one": "vector",
              "one-extended": "vector_extended"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _fmt(x: float) -> str:
    return f"{float(x):.15g}"


def _emit(text: str, path: str | None):
    if path:
        with open(path, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _report_exit(report: CheckReport, config: dict, path: str | None) -> int:
    _emit(report_json(config, report.results()), path)
    return EXIT_OK if report.passed else EXIT_VERIFY


def cmd_repcheck(args) -> int:
    if args.dmax < args.dmin or args.dmin < 1:
        raise UsageError("need 1 <= dmin <= dmax")
    report = CheckReport()
    dims = {}
    for d in range(args.dmin, args.dmax + 1):
        g = cliffalg.build_gamma(d)
        dims[d] = g.dim
        report.merge(cliffalg.check_clifford(g))
        if d % 2 == 0:
            chi = cliffalg.build_chirality(g)
            ok = (chi.is_hermitian()
                  and (chi @ chi) == cliffalg.Matrix.identity(g.dim)
                  and all(cliffalg.anticommutator(chi, gm).is_zero()
                          for gm in g.matrices))
            if ok:
                report.record_pass(f"chirality d={d}")
            else:
                report.record_fail("chirality", (d,), "defining relations broken")
        if d >= 2:
            report.merge(cliffalg.check_so_commutations(cliffalg.build_spin_half(d)))
            rep1 = cliffalg.build_spin_one(d)
            report.merge(cliffalg.check_so_commutations(rep1))
            if cliffalg.spin_one_trace_identity(rep1):
                report.record_pass(f"spin-1 trace identity d={d}")
            else:
                report.record_fail("spin-1 trace identity", (d,), "nonzero residual")
    config = {"subcommand": "repcheck", "dmin": args.dmin, "dmax": args.dmax,
              "spinor_dims": dims}
    return _report_exit(report, config, args.output)


def _model_from_args(args):
    m = parse_rational(args.m)
    alpha = parse_rational(args.alpha)
    return model_spec(args.d, _SPIN_KIND[args.spin], m, alpha)


def cmd_verify(args) -> int:
    ms = _model_from_args(args)
    report = CheckReport()
    report.merge(verify_potential_conditions(ms, args.npoints, args.seed))
    report.merge(verify_symmetry_algebra(ms, args.npoints, args.seed))
    if ms.potential_kind == "spinor":
        report.merge(verify_appendixA(ms, args.npoints, args.seed))
    elif ms.potential_kind == "vector":
        report.merge(verify_spin1_identities(ms, args.npoints, args.seed))
    if args.tamper:
        # deliberate mismatch: K built with a different coupling than H
        bad = model_spec(ms.d, ms.potential_kind, ms.m, ms.alpha + 1)
        H = build_hamiltonian(ms)
        K0 = build_lrl_component(bad, 0)
        f = random_test_function(ms.d, ms.ncomp, 2, Fraction(1, 2), args.seed)
        resid = K0.apply(H.apply(f)) - H.apply(K0.apply(f))
        witness = find_nonzero_witness(resid, args.npoints, args.seed)
        if witness is None:
            report.record_fail("tamper self-test", (), "tampering went undetected")
        else:
            pt, comp, pair = witness
            report.record_fail("tampered [K,H]", (0,),
                               f"component {comp}: {pair.even} + {pair.odd}*r",
                               witness=pt)
    config = {"subcommand": "verify", "d": ms.d, "spin": args.spin,
              "m": str(ms.m), "alpha": str(ms.alpha),
              "npoints": args.npoints, "seed": args.seed}
    return _report_exit(report, config, args.output)


def _quantum_label(args):
    if args.spin == "half":
        if args.j is None:
            raise UsageError("spin half needs --j")
        return parse_rational(args.j)
    if args.l is None:
        raise UsageError(f"spin {args.spin} needs --l")
    return args.l


def _channel_problem(args, q):
    if args.spin == "scalar":
        return radial.scalar_channel(args.d, q, parse_rational(args.m),
                                     parse_rational(args.alpha))
    if args.spin == "half":
        return radial.spinor_channel(args.d, q, parse_rational(args.m),
                                     parse_rational(args.alpha))
    if args.spin == "one":
        return radial.vector_channel(args.d, q, parse_rational(args.m),
                                     parse_rational(args.alpha))
    raise UsageError("spectra are exposed for spins scalar, half, one")


def _analytic_line(args, q, n):
    m = parse_rational(args.m)
    alpha = parse_rational(args.alpha)
    if args.spin == "scalar":
        return radial.analytic_energy_scalar(args.d, q, n, m, alpha)
    if args.spin == "half":
        return radial.analytic_energy_spinor(args.d, q, n, m, alpha)
    return radial.analytic_energy_vector(args.d, q, n, m, alpha)


def cmd_spectrum(args) -> int:
    q = _quantum_label(args)
    if args.nmax < 0:
        raise UsageError("nmax must be >= 0")
    lines = [_analytic_line(args, q, n) for n in range(args.nmax + 1)]
    numeric = [None] * len(lines)
    if args.numeric:
        prob = _channel_problem(args, q)
        grid = numsolve.default_grid(prob, args.grid_points)
        try:
            energies, _ = numsolve.refined_spectrum(prob, grid, len(lines))
        except numsolve.SolverError as exc:
            print(f"eigensolver failure: {exc}", file=sys.stderr)
            return EXIT_NUMERIC
        numeric = energies
    rows = ["d,spin,l_or_j,n,N_or_k,E_analytic,E_numeric,rel_dev"]
    worst = 0.0
    for line, e_num in zip(lines, numeric):
        e_ref = float(line.energy)
        if e_num is None:
            tail = ","
        else:
            dev = abs(e_num - e_ref) / abs(e_ref)
            worst = max(worst, dev)
            tail = f"{_fmt(e_num)},{dev:.3e}"
        rows.append(f"{args.d},{args.spin},{q},{line.n},"
                    f"{line.principal},{_fmt(e_ref)},{tail}")
    if args.format == "json":
        results = []
        for line, e_num in zip(lines, numeric):
            entry = {"status": "pass",
                     "level": {"n": line.n, "principal": str(line.principal)},
                     "values": {"E_analytic": float(line.energy)}}
            if e_num is not None:
                entry["values"]["E_numeric"] = e_num
                entry["values"]["rel_dev"] = abs(e_num - float(line.energy)) \
                    / abs(float(line.energy))
            results.append(entry)
        config = {"subcommand": "spectrum", "d": args.d, "spin": args.spin,
                  "l_or_j": str(q), "nmax": args.nmax, "numeric": args.numeric}
        _emit(report_json(config, results), args.output)
    else:
        _emit("\n".join(rows), args.output)
    return EXIT_OK


def cmd_radial(args) -> int:
    q = _quantum_label(args)
    m = parse_rational(args.m)
    alpha = parse_rational(args.alpha)
    import numpy as np
    try:
        if args.spin == "scalar":
            prob = radial.scalar_channel(args.d, q, m, alpha)
            grid = np.geomspace(args.rmin * prob.decay_scale(),
                                args.rmax * prob.decay_scale(), args.points)
            sample = radial.scalar_eigenfunction(args.d, q, args.n, m, alpha, grid)
            heads = ["r", "psi"]
            extras = None
        elif args.spin == "half":
            prob = radial.spinor_channel(args.d, q, m, alpha)
            grid = np.geomspace(args.rmin * prob.decay_scale(),
                                args.rmax * prob.decay_scale(), args.points)
            if args.n == 0:
                sample = radial.spinor_ground_state(args.d, q, m, alpha, grid)
            else:
                sample = radial.spinor_excited_states(args.d, q, args.n, m, alpha, grid)
            heads = ["r", "phi_up", "phi_down"]
            extras = None
        elif args.spin == "one":
            prob = radial.vector_channel(args.d, q, m, alpha)
            grid = np.geomspace(args.rmin * prob.decay_scale(),
                                args.rmax * prob.decay_scale(), args.points)
            sample = radial.vector_eigenfunctions(args.d, q, args.n, m, alpha, grid)
            heads = ["r", "phi1", "phi2", "constraint_residual"]
            vc = radial.vector_constraint_residual(args.d, q, args.n, m, alpha, grid)
            c1, c2 = radial.vector_constraint_operators(args.d, q, vc["energy"],
                                                        vc["eps_hat"], m, alpha)
            state = radial.vector_state_pair(args.d, q, args.n, m, alpha)
            r1 = c1.apply(state).channels()[0]
            r2 = c2.apply(state).channels()[0]
            extras = [max(abs(r1(x)), abs(r2(x))) * sample.norm_constant for x in grid]
        else:
            raise UsageError("radial export supports spins scalar, half, one")
    except QuadratureError as exc:
        print(f"quadrature failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    rows = [f"# node_count={sample.node_count}",
            f"# norm_constant={_fmt(sample.norm_constant)}",
            ",".join(heads)]
    for i, r in enumerate(sample.r):
        cols = [_fmt(r)] + [_fmt(v[i]) for v in sample.values]
        if extras is not None:
            cols.append(_fmt(extras[i]))
        rows.append(",".join(cols))
    _emit("\n".join(rows), args.output)
    return EXIT_OK


def cmd_forbidden(args) -> int:
    if args.d < 4:
        raise UsageError("the transverse-channel check applies for d >= 4 "
                         "(at d = 3 the channel is free; nothing to test)")
    try:
        report = radial.forbidden_channel_check(args.d, parse_rational(args.m),
                                                parse_rational(args.alpha),
                                                lmax=args.lmax)
    except numsolve.SolverError as exc:
        print(f"eigensolver failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    config = {"subcommand": "forbidden", "d": args.d, "lmax": args.lmax}
    return _report_exit(report, config, args.output)


def cmd_eval_specfun(args) -> int:
    if args.kummer:
        n, b, z = args.kummer
        val = kummer_terminating(int(n), parse_rational(b), float(z))
        print(_fmt(val))
        return EXIT_OK
    if args.bessel_k:
        order, x = args.bessel_k
        print(_fmt(bessel_k(int(order), float(x))))
        return EXIT_OK
    raise UsageError("nothing to evaluate: pass --kummer or --bessel-k")


def _add_model_args(p):
    p.add_argument("--d", type=int, required=True, help="spatial dimension")
    p.add_argument("--spin", choices=SPINS, required=True)
    p.add_argument("--m", default="1", help="mass as a rational p/q")
    p.add_argument("--alpha", default="1", help="coupling as a rational p/q")


def build_parser() -> _Parser:
    top = _Parser(prog="lrlspin",
                  description="superintegrable Coulomb systems with spin: "
                              "exact symmetry certification and spectra")
    sub = top.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("repcheck", help="certify gamma/spin representations")
    p.add_argument("--dmin", type=int, default=2)
    p.add_argument("--dmax", type=int, default=8)
    p.add_argument("--output", "-o", default=None)
    p.set_defaults(func=cmd_repcheck)

    p = sub.add_parser("verify", help="certify the operator identities")
    _add_model_args(p)
    p.add_argument("--npoints", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tamper", action="store_true",
                   help="also run a deliberately broken check (debug)")
    p.add_argument("--output", "-o", default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("spectrum", help="analytic spectrum, optionally vs numeric")
    _add_model_args(p)
    p.add_argument("--l", type=int, default=None)
    p.add_argument("--j", default=None, help="half-integer as p/q, e.g. 1/2")
    p.add_argument("--nmax", type=int, default=2)
    p.add_argument("--numeric", action="store_true")
    p.add_argument("--grid-points", type=int, default=numsolve.DEFAULT_NPOINTS)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--output", "-o", default=None)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("radial", help="export sampled eigenfunctions as CSV")
    _add_model_args(p)
    p.add_argument("--l", type=int, default=None)
    p.add_argument("--j", default=None)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--rmin", type=float, default=1e-4,
                   help="grid start in units of the decay length")
    p.add_argument("--rmax", type=float, default=30.0,
                   help="grid end in units of the decay length")
    p.add_argument("--points", type=int, default=400)
    p.add_argument("--output", "-o", default=None)
    p.set_defaults(func=cmd_radial)

    p = sub.add_parser("forbidden", help="transverse-channel emptiness (d >= 4)")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--m", default="1")
    p.add_argument("--alpha", default="1")
    p.add_argument("--lmax", type=int, default=2)
    p.add_argument("--output", "-o", default=None)
    p.set_defaults(func=cmd_forbidden)

    p = sub.add_parser("eval-specfun", help="evaluate special functions (debug)")
    p.add_argument("--kummer", nargs=3, metavar=("N", "B", "Z"), default=None)
    p.add_argument("--bessel-k", nargs=2, metavar=("ORDER", "X"), default=None)
    p.set_defaults(func=cmd_eval_specfun)
    return top


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except QuadratureError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except numsolve.SolverError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
