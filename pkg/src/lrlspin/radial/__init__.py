"""Radial reductions: channels, exact spectra, SUSY ladders, bound states."""

from .channels import (LadderOp, RadialFunctionSample, RadialProblem,
                       SpectrumLine, analytic_energy_scalar,
                       analytic_energy_spinor, analytic_energy_vector,
                       casimir_energy_maps, casimir_omega_vector,
                       casimir_relation_spinor, factorization_residual,
                       forbidden_channel_check, hyperspherical_to_cartesian,
                       intertwining_residual, phi3_channel, scalar_channel,
                       scalar_eigenfunction, scalar_mu, scalar_state,
                       scalar_state_by_ladder, spinor_channel,
                       spinor_excited_states, spinor_ground,
                       spinor_ground_state, spinor_ladder, spinor_state,
                       susy_ladder, vector_channel,
                       vector_constraint_operators,
                       vector_constraint_residual, vector_eigenfunctions,
                       vector_native_operator, vector_reduced_channel,
                       vector_separation_constant, vector_state_pair)
from .symbolic import (BesselComb, ChannelVector, ExpPoly, LaurentPoly,
                       RadialOperator)

__all__ = [
    "LadderOp", "RadialFunctionSample", "RadialProblem", "SpectrumLine",
    "analytic_energy_scalar", "analytic_energy_spinor",
    "analytic_energy_vector", "casimir_energy_maps", "casimir_omega_vector",
    "casimir_relation_spinor", "factorization_residual",
    "forbidden_channel_check", "hyperspherical_to_cartesian",
    "intertwining_residual", "phi3_channel", "scalar_channel",
    "scalar_eigenfunction", "scalar_mu", "scalar_state",
    "scalar_state_by_ladder", "spinor_channel", "spinor_excited_states",
    "spinor_ground", "spinor_ground_state", "spinor_ladder", "spinor_state",
    "susy_ladder", "vector_channel", "vector_constraint_operators",
    "vector_constraint_residual", "vector_eigenfunctions",
    "vector_native_operator", "vector_reduced_channel",
    "vector_separation_constant", "vector_state_pair",
    "BesselComb", "ChannelVector", "ExpPoly", "LaurentPoly", "RadialOperator",
]
