from fractions import Fraction

import pytest

from lrlspin.cliffalg import (GammaSet, build_chirality, build_gamma,
                              build_spin_half, build_spin_one,
                              check_clifford, check_so_commutations,
                              spin_one_trace_identity)
from lrlspin.exact import GaussRat, I, Matrix, anticommutator


def test_d2_is_a_pauli_pair():
    g = build_gamma(2)
    assert g.dim == 2
    for gm in g.matrices:
        assert gm.is_hermitian()
        assert (gm @ gm) == Matrix.identity(2)
    assert anticommutator(g.matrices[0], g.matrices[1]).is_zero()


def test_dimension_formula():
    assert build_gamma(5).dim == 4
    assert build_gamma(1).dim == 1
    for d in range(1, 11):
        assert build_gamma(d).dim == 2 ** (d // 2)


def test_d8_brute_force_anticommutators():
    # oracle: direct loop over all 28 off-diagonal pairs and 8 squares
    g = build_gamma(8)
    count = 0
    for mu in range(8):
        assert (g.matrices[mu] @ g.matrices[mu]) == Matrix.identity(g.dim)
        for nu in range(mu + 1, 8):
            assert anticommutator(g.matrices[mu], g.matrices[nu]).is_zero()
            count += 1
    assert count == 28


def test_invalid_dimension():
    with pytest.raises(ValueError):
        build_gamma(0)
    with pytest.raises(ValueError):
        build_spin_half(1)
    with pytest.raises(ValueError):
        build_spin_one(1)


def test_chirality_even_d():
    for d in (2, 4, 6):
        g = build_gamma(d)
        chi = build_chirality(g)
        assert chi.is_hermitian()
        assert (chi @ chi) == Matrix.identity(g.dim)
        for gm in g.matrices:
            assert anticommutator(chi, gm).is_zero()


def test_chirality_odd_d_rejected():
    with pytest.raises(ValueError):
        build_chirality(build_gamma(3))


def test_spin_half_generators_are_spin_half():
    # S^2 = I/4 and trace 0, hence eigenvalues exactly +-1/2
    rep = build_spin_half(3)
    assert rep.dim == 2
    for (mu, nu), s in rep.S.items():
        assert s.is_hermitian()
        assert (s @ s) == Matrix.identity(2, GaussRat(Fraction(1, 4)))
        assert (s[(0, 0)] + s[(1, 1)]) == GaussRat(0)


def test_spin_half_d2_single_generator():
    rep = build_spin_half(2)
    assert rep.dim == 2
    assert list(rep.S) == [(0, 1)]


def test_spin_half_so4_exhaustive():
    assert check_so_commutations(build_spin_half(4)).passed


def test_spin_half_so5_exhaustive():
    assert check_so_commutations(build_spin_half(5)).passed


def test_spin_one_entries():
    # sign convention pairs with J = L + S: (S_12)_12 = -i, (S_12)_21 = +i
    rep = build_spin_one(3)
    s12 = rep.S[(0, 1)]
    assert s12[(0, 1)] == -I
    assert s12[(1, 0)] == I
    assert len(s12.data) == 2


def test_spin_one_trace_identity_all_d():
    for d in range(2, 8):
        assert spin_one_trace_identity(build_spin_one(d))


def test_spin_one_so_relations():
    assert check_so_commutations(build_spin_one(4)).passed
    assert check_so_commutations(build_spin_one(5)).passed


def test_clifford_check_passes_and_detects_scaling():
    g = build_gamma(6)
    assert check_clifford(g).passed
    bad = GammaSet(d=6, matrices=(g.matrices[0].scale(2),) + g.matrices[1:],
                   dim=g.dim)
    rep = check_clifford(bad)
    assert not rep.passed
    assert any(v.index == (1, 1) for v in rep.violations)


def test_d1_trivial_clifford():
    assert check_clifford(build_gamma(1)).passed


def test_broken_so_algebra_detected():
    rep = build_spin_one(3)
    broken = dict(rep.S)
    broken[(0, 1)] = Matrix.zeros(3)
    from lrlspin.cliffalg import SpinRep
    bad = SpinRep(d=3, kind="vector", S=broken, dim=3)
    out = check_so_commutations(bad)
    assert not out.passed
    assert out.violations
