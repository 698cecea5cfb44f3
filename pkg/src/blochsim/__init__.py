"""Quantum measurements on the generalized Bloch sphere.

States of an N-dimensional system map to real vectors in the unit ball of
R^(N^2 - 1); a projective measurement becomes an inscribed simplex whose
sub-region measures reproduce the Born probabilities exactly. This package
builds the representation, verifies the measure-ratio identity, and
simulates the collapse by uniformly sampling hidden interaction points.
"""

from .bloch import (
    BlochVector,
    DensityMatrix,
    Ket,
    StateValidity,
    from_bloch,
    is_valid_state,
    ket_to_density,
    purity,
    to_bloch,
)
from .collapse import ProcessStage, ProcessTrace, reduce_state, run_measurement
from .errors import (
    BasisError,
    BlochSimError,
    ConfigError,
    ContractError,
    DimensionError,
    GeometryError,
    NormalizationError,
    OracleInconsistencyError,
)
from .generators import (
    GeneratorSet,
    InvariantCheck,
    ValidationReport,
    build_generators,
    verify_generator_set,
)
from .sampler import (
    HiddenInteraction,
    OracleReport,
    RngSeed,
    TrialReport,
    classify,
    geometric_hit_count_oracle,
    measure_degenerate,
    measure_once,
    merge_reports,
    run_trials,
    sample_lambda,
    validate_partition,
)
from .simplex import (
    Barycentric,
    MeasurementBasis,
    MeasurementSimplex,
    barycentric_of,
    basis_to_simplex,
    born_probabilities,
    project_onto_simplex,
    simplex_measure,
    subregion_measures,
)

__version__ = "0.1.0"

__all__ = [
    "Barycentric",
    "BasisError",
    "BlochSimError",
    "BlochVector",
    "ConfigError",
    "ContractError",
    "DensityMatrix",
    "DimensionError",
    "GeneratorSet",
    "GeometryError",
    "HiddenInteraction",
    "InvariantCheck",
    "Ket",
    "MeasurementBasis",
    "MeasurementSimplex",
    "NormalizationError",
    "OracleInconsistencyError",
    "OracleReport",
    "ProcessStage",
    "ProcessTrace",
    "RngSeed",
    "StateValidity",
    "TrialReport",
    "ValidationReport",
    "barycentric_of",
    "basis_to_simplex",
    "born_probabilities",
    "build_generators",
    "classify",
    "from_bloch",
    "geometric_hit_count_oracle",
    "is_valid_state",
    "ket_to_density",
    "measure_degenerate",
    "measure_once",
    "merge_reports",
    "project_onto_simplex",
    "purity",
    "reduce_state",
    "run_measurement",
    "run_trials",
    "sample_lambda",
    "simplex_measure",
    "subregion_measures",
    "to_bloch",
    "validate_partition",
    "verify_generator_set",
]
