"""Two-qubit entanglement dynamics.

Unitary entanglement production under a corner-coupling control
Hamiltonian, dissipative evolution in vectorized (Liouville) form with
rate-based or Lindblad dissipators, and concurrence-based entanglement
measures for pure and mixed states.
"""

from .dynamics import (
    PHYSICALITY_TOL,
    ControlHamiltonian,
    DephasingRealization,
    InvariantReport,
    LindbladSpec,
    RateExtraction,
    RateSet,
    SuperOperator,
    check_dephasing_constraints,
    dephasing_constraint_residuals,
    dephasing_from_amplitudes,
    dissipator_from_rates,
    evolve_pure,
    evolve_state,
    extract_rates,
    flat_index,
    invariant_states,
    lindblad_dissipator,
    liouvillian_hamiltonian,
    propagate,
    realize_dephasing_amplitudes,
)
from .entanglement import (
    SPIN_FLIP_MATRIX,
    ConcurrenceResult,
    concurrence_mixed,
    concurrence_pure,
    entanglement_of_formation,
    spin_flip,
)
from .errors import (
    ConfigError,
    DimensionMismatchError,
    DomainError,
    InvalidRatesError,
    InvalidStateError,
    LindqbitError,
    NoConvergenceError,
    NotHermitianError,
    NotPositiveError,
    NotPSDError,
    RelaxationPresentError,
    TraceNotOneError,
    UnphysicalEvolutionError,
)
from .linalg import det2, expm_general, expm_hermitian_scaled, hermitian_eig, kron, sqrtm_psd
from .states import (
    BELL_KINDS,
    DensityMatrix,
    PureState,
    StateViolations,
    bell_state,
    coeff_matrix,
    density_from_pure,
    devectorize,
    is_separable_pure,
    separable_mixture,
    state_violations,
    validate_state,
    vectorize,
)
from .trajectory import (
    CSV_HEADER,
    TrajectoryRecord,
    dissipative_records,
    read_csv,
    time_grid,
    unitary_records,
    write_csv,
)

__version__ = "0.1.0"
