"""Dirac time operator T = alpha.r + beta tau0 on momentum-space spinor grids."""
from .algebra import DIRAC, bracket, clifford_exponential, hermitian_eigensystem, unitary_exponential
from .dynamics import ObservableSeries, evolve_free, evolve_uniform_A, record_series
from .errors import ConfigError, LocalizationError, SingularProjectorError, ValidationError
from .hilbert import MomentumGrid, SpinorField, inner_product, make_grid, make_line_grid, normalize
from .operators import ModelParams, apply_K, energy_projector, hamiltonian_at, time_operator_at
from .packets import PacketSpec, branch_purity, build_gaussian

__all__ = [
    "DIRAC", "bracket", "clifford_exponential", "hermitian_eigensystem", "unitary_exponential",
    "ObservableSeries", "evolve_free", "evolve_uniform_A", "record_series",
    "ConfigError", "LocalizationError", "SingularProjectorError", "ValidationError",
    "MomentumGrid", "SpinorField", "inner_product", "make_grid", "make_line_grid", "normalize",
    "ModelParams", "apply_K", "energy_projector", "hamiltonian_at", "time_operator_at",
    "PacketSpec", "branch_purity", "build_gaussian",
]
