from fractions import Fraction

import pytest

from lrlspin.exact import GaussRat, Matrix
from lrlspin.opalg import (WaveFunction, is_zero_function, model_spec,
                           verify_appendixA, verify_potential_conditions,
                           verify_spin1_identities, verify_symmetry_algebra)
from lrlspin.opalg.functions import find_nonzero_witness, random_test_function
from lrlspin.opalg.operators import (TermOperator, _emono, _zmono,
                                     build_angular_momentum, build_potential)
from lrlspin.opalg.verify import scalar_laplacian_identity

BETA = Fraction(1, 2)


@pytest.mark.parametrize("d,kind", [(2, "coulomb"), (3, "spinor"),
                                    (3, "vector"), (2, "vector_extended")])
def test_potential_conditions_pass(d, kind):
    assert verify_potential_conditions(model_spec(d, kind)).passed


def test_potential_conditions_nondefault_couplings():
    ms = model_spec(3, "spinor", m=Fraction(2, 3), alpha=Fraction(5, 7))
    assert verify_potential_conditions(ms).passed


def test_perturbed_coulomb_breaks_euler_condition():
    # V = -a/r + eps r is not degree -1 homogeneous: x.gradV + V != 0
    d = 3
    Vbad = TermOperator(d, 1, (
        (Matrix.identity(1, GaussRat(-1)), _zmono(d), -1, _zmono(d)),
        (Matrix.identity(1, GaussRat(Fraction(1, 10))), _zmono(d), 1, _zmono(d))))
    parts = [Vbad]
    for nu in range(d):
        grad = Vbad.gradient(nu)
        parts.append(TermOperator(d, 1, tuple(
            (mat, tuple(xm[k] + (1 if k == nu else 0) for k in range(d)), rp, dv)
            for (mat, xm, rp, dv) in grad.terms)))
    euler = parts[0]
    for p in parts[1:]:
        euler = euler + p
    f = WaveFunction.basis(d, 1, BETA, 0)
    assert find_nonzero_witness(euler.apply(f)) is not None


def test_anisotropic_spinor_potential_breaks_rotation_invariance():
    # gamma_1 x_1 alone is not a rotational scalar: [V, J] != 0
    ms = model_spec(3, "spinor")
    Vbad = TermOperator(3, ms.ncomp,
                        ((ms.gammas[0], _emono(3, 0), -2, _zmono(3)),))
    J = build_angular_momentum(ms, 0, 1)
    f = random_test_function(3, ms.ncomp, 2, BETA, seed=2)
    resid = Vbad.apply(J.apply(f)) - J.apply(Vbad.apply(f))
    assert not is_zero_function(resid)


@pytest.mark.parametrize("d,kind", [(2, "coulomb"), (2, "spinor"),
                                    (3, "vector"), (3, "vector_extended")])
def test_symmetry_algebra_small_models(d, kind):
    rep = verify_symmetry_algebra(model_spec(d, kind), nfuncs=1)
    assert rep.passed, rep.summary()


def test_symmetry_algebra_detects_tampered_coupling():
    from lrlspin.opalg import build_hamiltonian, build_lrl_component
    ms = model_spec(2, "coulomb")
    bad = model_spec(2, "coulomb", alpha=2)
    H = build_hamiltonian(ms)
    K0 = build_lrl_component(bad, 0)
    f = random_test_function(2, 1, 2, BETA, seed=0)
    resid = K0.apply(H.apply(f)) - H.apply(K0.apply(f))
    assert find_nonzero_witness(resid) is not None


@pytest.mark.parametrize("d", [2, 3])
def test_appendixA_smoke(d):
    assert verify_appendixA(model_spec(d, "spinor")).passed


def test_appendixA_needs_spinor():
    with pytest.raises(ValueError):
        verify_appendixA(model_spec(3, "coulomb"))


def test_scalar_laplacian_split():
    for d in (2, 3, 4):
        assert scalar_laplacian_identity(model_spec(d, "coulomb")).passed


def test_spin1_identities_d3():
    assert verify_spin1_identities(model_spec(3, "vector")).passed


def test_spin1_identities_need_vector():
    with pytest.raises(ValueError):
        verify_spin1_identities(model_spec(3, "vector_extended"))


def test_reports_carry_witness_on_failure():
    ms = model_spec(2, "coulomb")
    V = build_potential(ms)
    f = WaveFunction.basis(2, 1, BETA, 0)
    wit = find_nonzero_witness(V.apply(f))
    assert wit is not None
    pt, comp, pair = wit
    assert len(pt) == 2 and any(pt)
