"""Exact symbolic algebra of the model operators and their identity suites."""

from .functions import (ParityPair, WaveFunction, evaluate,
                        find_nonzero_witness, is_zero_function,
                        random_test_function)
from .operators import (DiffOperator, ModelSpec, TermOperator, apply,
                        build_angular_momenta, build_angular_momentum,
                        build_dirac_D, build_hamiltonian, build_lrl,
                        build_lrl_component, build_potential,
                        gradient_potential, model_spec, momentum,
                        op_anticommutator, op_commutator, so_pairs)
from .verify import (verify_appendixA, verify_potential_conditions,
                     verify_spin1_identities, verify_symmetry_algebra)

__all__ = [
    "ParityPair", "WaveFunction", "evaluate", "find_nonzero_witness",
    "is_zero_function", "random_test_function",
    "DiffOperator", "ModelSpec", "TermOperator", "apply",
    "build_angular_momenta", "build_angular_momentum", "build_dirac_D",
    "build_hamiltonian", "build_lrl", "build_lrl_component",
    "build_potential", "gradient_potential", "model_spec", "momentum",
    "op_anticommutator", "op_commutator", "so_pairs",
    "verify_appendixA", "verify_potential_conditions",
    "verify_spin1_identities", "verify_symmetry_algebra",
]
