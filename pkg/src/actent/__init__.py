"""Activated bipartite entanglement of pure three-qubit states.

Measures (assisted/formation entanglement and their difference), class
decisions (product / biseparable / W / GHZ), state-family constructors,
Haar sampling, and Jones-matrix simulation of the two preparation circuits.
"""

__version__ = "0.1.0"

from .core import (
    DensityMatrix,
    Ensemble,
    Projector,
    PSDViolationError,
    PureTripartiteState,
    StateValidationError,
    apply_local_unitaries,
    basis_index,
    numerical_rank,
    partial_trace,
    project,
    projective_ensemble,
    tensor,
    von_neumann_entropy,
)
from .families import (
    PRNG_ALGORITHM,
    SchmidtCoefficients,
    acin_state,
    ghz_one_param,
    haar_random,
    w_three_param,
    w_two_param,
)
from .measures import (
    MeasureReport,
    MonogamyViolationError,
    W2Analytic,
    abe,
    assisted_entropy_extremum,
    binary_entropy,
    concurrence,
    delta_s,
    ensemble_average_entropy,
    eof_wootters,
    three_tangle,
    w2_analytic,
)
from .optimize import ExtremumResult, OptimizerSettings
from .classify import (
    ClassLabel,
    Evidence,
    IndeterminateClassError,
    StateClass,
    classify,
    w_bound_scan,
)
from .optics import (
    AbeEstimate,
    CircuitRun,
    ElementKind,
    OpticalCircuit,
    OpticalElement,
    OpticalState,
    PathBasis,
    apply_element,
    build_ghz_circuit,
    build_w_circuit,
    element_unitary,
    estimate_abe_from_circuit,
    input_photon,
    measure_path,
    run,
)

__all__ = [name for name in dir() if not name.startswith("_")]
