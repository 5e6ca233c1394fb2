"""Bell inequalities maximally violated by maximal entanglement, Weyl-Heisenberg
observables and WH-covariant SICs, for prime local dimension."""

from .bounds import (
    CertificateReport,
    DeterministicStrategy,
    bell_operator,
    critical_visibility,
    evaluate_expression,
    lhv_bound,
    lhv_heuristic,
    quantum_bound,
    quantum_value,
    sos_certificate,
)
from .errors import (
    CertificateError,
    ConsistencyError,
    DimensionError,
    FiducialError,
    InfeasibleError,
    NoViolationError,
    ProbabilityError,
    StateError,
    TraceError,
)
from .inequality import CoefficientTensor, GTensor, expand_tensor, functional_form_check, g_tensor, seed_column
from .instance import BellInstance, build_instance
from .sic_states import (
    Fiducial,
    Realization,
    bob_observable,
    bob_reference,
    builtin_fiducial,
    complete_frame,
    max_entangled,
    mub_family,
    optimal_realization,
    sic_orbit,
    validate_sic,
)
from .wh_algebra import alice_observable, basis_row, expand_traceless, weyl_operator

__version__ = "0.1.0"
