"""Hamiltonians, Liouville-space generators, dissipators, and propagation.

Operators on the two-qubit state act in vectorized form: a 4x4 matrix rho
becomes a 16-vector r (row-major), any sandwich A rho B becomes the matrix
(A kron B^T) applied to r, and the equation of motion dr/dt = L r is solved
by exponentiating the 16x16 generator L.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import linalg
from .errors import (
    InvalidRatesError,
    NotHermitianError,
    RelaxationPresentError,
    UnphysicalEvolutionError,
)
from .states import (
    DIM,
    DensityMatrix,
    PureState,
    StateViolations,
    devectorize,
    state_violations,
    vectorize,
)

#: Threshold beyond which a propagated state counts as genuinely unphysical
#: (i.e. the generator is not completely positive) rather than noisy.
PHYSICALITY_TOL = 1e-8

# Flat positions of the population components rho_nn in the 16-vector.
_POPULATION = tuple(n * DIM + n for n in range(DIM))


def flat_index(m: int, n: int) -> int:
    """0-based flat position of the 1-based matrix entry (m, n)."""
    return (m - 1) * DIM + (n - 1)


@dataclass(frozen=True)
class ControlHamiltonian:
    """Two-qubit Hamiltonian with level energies (x1, x2, x3, x1) and a
    coupling y between the first and last levels.

    The degenerate corners make the coupled pair a closed two-level block,
    so starting from the first basis state only y drives entanglement; the
    diagonal part contributes phases.
    """

    x1: float
    x2: float
    x3: float
    y: float

    def __post_init__(self):
        for name in ("x1", "x2", "x3", "y"):
            val = float(getattr(self, name))
            if not math.isfinite(val):
                raise ValueError(f"{name} must be finite, got {val!r}")
            object.__setattr__(self, name, val)

    @cached_property
    def matrix(self) -> np.ndarray:
        h = np.zeros((DIM, DIM), dtype=complex)
        h[0, 0] = h[3, 3] = self.x1
        h[1, 1] = self.x2
        h[2, 2] = self.x3
        h[0, 3] = h[3, 0] = self.y
        h.setflags(write=False)
        return h

    @cached_property
    def eigensystem(self):
        """Cached (eigenvalues, eigenvectors) of the realized matrix."""
        return linalg.hermitian_eig(np.array(self.matrix))


def evolve_pure(h: ControlHamiltonian, v0: PureState, t: float, sign: int = +1) -> PureState:
    """Propagate a pure state by the unitary exp(sign * i * t * H).

    The default sign (+1) matches the closed-form trajectory quoted for
    the first basis state; pass sign=-1 for the opposite (Schrodinger)
    convention.  Concurrence is insensitive to the choice.
    """
    if sign not in (+1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign!r}")
    evals, vecs = h.eigensystem
    phases = np.exp((sign * 1j * t) * evals)
    u = (vecs * phases) @ vecs.conj().T
    return PureState(u @ v0.amplitudes)


class SuperOperator:
    """16x16 generator acting on vectorized 4x4 states.

    Construction enforces trace preservation: in every column the four
    rows carrying population components must sum to zero (relative to the
    generator's scale), otherwise propagation would change tr(rho).
    """

    __slots__ = ("matrix",)

    def __init__(self, matrix):
        m = np.array(matrix, dtype=complex)
        if m.shape != (DIM * DIM, DIM * DIM):
            raise ValueError(f"generator must be 16x16, got shape {m.shape}")
        if not np.all(np.isfinite(m)):
            raise ValueError("generator entries must be finite")
        defect = float(np.max(np.abs(m[list(_POPULATION), :].sum(axis=0))))
        allowed = 1e-12 * max(1.0, float(np.linalg.norm(m, 1)))
        if defect > allowed:
            raise ValueError(
                f"generator is not trace preserving: population-row column sums "
                f"reach {defect:.3e} (allowed {allowed:.1e})"
            )
        m.setflags(write=False)
        self.matrix = m

    def __add__(self, other):
        if not isinstance(other, SuperOperator):
            return NotImplemented
        return SuperOperator(self.matrix + other.matrix)

    @property
    def is_diagonal(self) -> bool:
        off = self.matrix.copy()
        np.fill_diagonal(off, 0.0)
        return not np.any(off)


def liouvillian_hamiltonian(h, tol: float = 1e-12) -> SuperOperator:
    """Generator of the unitary part: -i (h kron I - I kron h^T).

    Applying it to the vectorized state reproduces
    d(rho)/dt = -i (h rho - rho h).
    """
    hm = h.matrix if isinstance(h, ControlHamiltonian) else np.asarray(h, dtype=complex)
    if hm.shape != (DIM, DIM):
        raise ValueError(f"hamiltonian must be 4x4, got shape {hm.shape}")
    herm = linalg.hermiticity_error(hm)
    if herm > tol:
        raise NotHermitianError(
            f"hamiltonian is not Hermitian: max |h - h^H| = {herm:.3e} exceeds {tol:.1e}"
        )
    eye = np.eye(DIM)
    return SuperOperator(-1j * (linalg.kron(hm, eye) - linalg.kron(eye, hm.T)))


@dataclass(frozen=True, eq=False)
class RateSet:
    """Dephasing and relaxation rates, both 4x4 with zero diagonals.

    ``dephasing[k, n]`` damps the coherence between levels k and n and must
    be symmetric; ``relaxation[k, n]`` is the population transfer rate for
    the n -> k decay and need not be.  All rates are nonnegative, in units
    of inverse time.
    """

    dephasing: np.ndarray
    relaxation: np.ndarray = None

    def __post_init__(self):
        g = self._checked(self.dephasing, "dephasing")
        asym = float(np.max(np.abs(g - g.T)))
        if asym > 0.0:
            raise InvalidRatesError(
                f"dephasing must be index symmetric; max |G - G^T| = {asym:.3e}"
            )
        r = self.relaxation
        r = np.zeros((DIM, DIM)) if r is None else self._checked(r, "relaxation")
        g.setflags(write=False)
        r.setflags(write=False)
        object.__setattr__(self, "dephasing", g)
        object.__setattr__(self, "relaxation", r)

    @staticmethod
    def _checked(matrix, name: str) -> np.ndarray:
        m = np.array(matrix, dtype=float)
        if m.shape != (DIM, DIM):
            raise InvalidRatesError(f"{name} must be 4x4, got shape {m.shape}")
        if not np.all(np.isfinite(m)):
            raise InvalidRatesError(f"{name} rates must be finite")
        if np.any(m < 0.0):
            raise InvalidRatesError(f"{name} rates must be nonnegative; min is {m.min():.3e}")
        if np.any(np.diag(m) != 0.0):
            raise InvalidRatesError(f"{name} diagonal must be zero")
        return m

    @classmethod
    def pure_dephasing(cls, g12, g13, g14, g23, g24, g34) -> "RateSet":
        """Symmetric dephasing matrix from its six independent rates."""
        g = np.zeros((DIM, DIM))
        for (i, j), val in zip(
            ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)),
            (g12, g13, g14, g23, g24, g34),
        ):
            g[i, j] = g[j, i] = val
        return cls(dephasing=g)


def _rate_form_matrix(dephasing: np.ndarray, relaxation: np.ndarray) -> np.ndarray:
    ld = np.zeros((DIM * DIM, DIM * DIM), dtype=complex)
    for k in range(DIM):
        for n in range(DIM):
            if k != n:
                ld[k * DIM + n, k * DIM + n] = -dephasing[k, n]
    for n in range(DIM):
        for k in range(DIM):
            if k != n:
                ld[_POPULATION[n], _POPULATION[k]] = relaxation[n, k]
        ld[_POPULATION[n], _POPULATION[n]] = -float(np.sum(relaxation[:, n]))
    return ld


def dissipator_from_rates(rates: RateSet) -> SuperOperator:
    """Dissipation generator in rate form.

    Each coherence component decays at its dephasing rate; populations
    exchange via the relaxation rates, with the diagonal loss terms chosen
    so every column preserves the trace.
    """
    return SuperOperator(_rate_form_matrix(rates.dephasing, rates.relaxation))


@dataclass(frozen=True, eq=False)
class LindbladSpec:
    """A finite list of 4x4 collapse operators defining a completely
    positive dissipator."""

    operators: tuple

    def __post_init__(self):
        ops = []
        for i, v in enumerate(self.operators):
            arr = np.array(v, dtype=complex)
            if arr.shape != (DIM, DIM):
                raise ValueError(f"operator {i} must be 4x4, got shape {arr.shape}")
            if not np.all(np.isfinite(arr)):
                raise ValueError(f"operator {i} has non-finite entries")
            arr.setflags(write=False)
            ops.append(arr)
        object.__setattr__(self, "operators", tuple(ops))

    @classmethod
    def from_amplitude_matrix(cls, amplitudes) -> "LindbladSpec":
        """One collapse operator per matrix unit: amplitude a[i, j] sits on
        the matrix with a single 1 at (i, j).  Zero amplitudes are skipped,
        they contribute nothing."""
        a = np.asarray(amplitudes, dtype=complex)
        if a.shape != (DIM, DIM):
            raise ValueError(f"amplitude matrix must be 4x4, got shape {a.shape}")
        ops = []
        for i in range(DIM):
            for j in range(DIM):
                if a[i, j] == 0.0:
                    continue
                e = np.zeros((DIM, DIM), dtype=complex)
                e[i, j] = a[i, j]
                ops.append(e)
        return cls(tuple(ops))

    @classmethod
    def diagonal(cls, amplitudes) -> "LindbladSpec":
        """Pure dephasing: one diagonal collapse operator per nonzero amplitude."""
        amps = np.asarray(amplitudes, dtype=complex)
        if amps.shape != (DIM,):
            raise ValueError(f"need 4 diagonal amplitudes, got shape {amps.shape}")
        a = np.zeros((DIM, DIM), dtype=complex)
        np.fill_diagonal(a, amps)
        return cls.from_amplitude_matrix(a)


def lindblad_dissipator(spec: LindbladSpec) -> SuperOperator:
    """Completely positive dissipator sum_s (V rho V^+ - {V^+ V, rho} / 2),
    assembled as a 16x16 generator through the Kronecker mapping."""
    eye = np.eye(DIM)
    total = np.zeros((DIM * DIM, DIM * DIM), dtype=complex)
    for v in spec.operators:
        vv = v.conj().T @ v
        total += linalg.kron(v, v.conj())
        total -= 0.5 * (linalg.kron(vv, eye) + linalg.kron(eye, vv.T))
    return SuperOperator(total)


def dephasing_from_amplitudes(diagonal_amplitudes) -> RateSet:
    """Rates of the pure-dephasing process generated by diagonal collapse
    amplitudes: the rate between levels i and j is (|a_i|^2 + |a_j|^2) / 2,
    and no population transfer occurs."""
    a = np.asarray(diagonal_amplitudes, dtype=complex)
    if a.shape != (DIM,):
        raise ValueError(f"need 4 diagonal amplitudes, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("amplitudes must be finite")
    mags = (a * a.conj()).real
    g = 0.5 * (mags[:, None] + mags[None, :])
    np.fill_diagonal(g, 0.0)
    return RateSet(dephasing=g)


def dephasing_constraint_residuals(rates) -> tuple[float, float]:
    """Residuals of the two linear relations every pure-dephasing process
    generated by diagonal amplitudes imposes on the six rates.

    Accepts a RateSet or a bare symmetric 4x4 matrix.
    """
    g = rates.dephasing if isinstance(rates, RateSet) else np.asarray(rates, dtype=float)
    r1 = (g[0, 1] + g[2, 3]) - (g[0, 3] + g[1, 2])
    r2 = (g[0, 3] + g[1, 2]) - (g[0, 2] + g[1, 3])
    return abs(float(r1)), abs(float(r2))


def check_dephasing_constraints(rates, tol: float = 1e-12) -> bool:
    """True when both physical-process relations hold within tol."""
    r1, r2 = dephasing_constraint_residuals(rates)
    return r1 <= tol and r2 <= tol


@dataclass(frozen=True, eq=False)
class DephasingRealization:
    """Least-squares diagonal-amplitude solution for a dephasing rate set."""

    squared_magnitudes: np.ndarray
    residual: float
    realizable: bool


def realize_dephasing_amplitudes(rates, tol: float = 1e-12) -> DephasingRealization:
    """Solve for squared diagonal amplitudes |a_i|^2 reproducing the rates.

    Realizable means the least-squares fit reproduces every rate within tol
    and all squared magnitudes are nonnegative (tiny negatives within tol
    are clamped to zero).
    """
    g = rates.dephasing if isinstance(rates, RateSet) else np.asarray(rates, dtype=float)
    pairs = [(i, j) for i in range(DIM) for j in range(i + 1, DIM)]
    m = np.zeros((len(pairs), DIM))
    b = np.zeros(len(pairs))
    for row, (i, j) in enumerate(pairs):
        m[row, i] = m[row, j] = 0.5
        b[row] = g[i, j]
    sol, *_ = np.linalg.lstsq(m, b, rcond=None)
    residual = float(np.max(np.abs(m @ sol - b)))
    realizable = residual <= tol and bool(np.all(sol >= -tol))
    clamped = np.where((sol < 0.0) & (sol >= -tol), 0.0, sol)
    return DephasingRealization(clamped, residual, realizable)


@dataclass(frozen=True, eq=False)
class RateExtraction:
    """Rates read off a generator by pattern matching the rate-form layout."""

    dephasing: np.ndarray
    relaxation: np.ndarray
    residual: float
    is_rate_form: bool


def extract_rates(generator: SuperOperator, tol: float = 1e-12) -> RateExtraction:
    """Diagnostic inverse of dissipator_from_rates.

    Reads coherence-decay and population-transfer entries from their fixed
    positions, rebuilds the rate-form generator, and reports the largest
    leftover entry.  A residual beyond tol means the generator is not of
    rate form; nothing is silently dropped.
    """
    m = generator.matrix
    g = np.zeros((DIM, DIM))
    r = np.zeros((DIM, DIM))
    for k in range(DIM):
        for n in range(DIM):
            if k != n:
                g[k, n] = -m[k * DIM + n, k * DIM + n].real
                r[k, n] = m[_POPULATION[k], _POPULATION[n]].real
    rebuilt = _rate_form_matrix(g, r)
    residual = float(np.max(np.abs(m - rebuilt)))
    return RateExtraction(g, r, residual, residual <= tol)


def _time_array(times) -> np.ndarray:
    t = np.atleast_1d(np.asarray(times, dtype=float))
    if t.size == 0:
        raise ValueError("need at least one time point")
    if not np.all(np.isfinite(t)):
        raise ValueError("time points must be finite")
    if t[0] < 0.0:
        raise ValueError(f"time points must be nonnegative, got t[0] = {t[0]!r}")
    if np.any(np.diff(t) < 0.0):
        raise ValueError("time points must be ascending")
    return t


def propagate(generator: SuperOperator, rho0: DensityMatrix, times) -> list[np.ndarray]:
    """Raw matrices exp(L t) applied to the vectorized initial state.

    No validation happens here.  Diagonal generators (pure dephasing, or a
    diagonal hamiltonian part) take an elementwise-exponential fast path;
    the general case exponentiates the 16x16 generator per time point.
    """
    t = _time_array(times)
    r0 = vectorize(rho0)
    if generator.is_diagonal:
        d = np.diag(generator.matrix)
        return [devectorize(np.exp(d * ti) * r0) for ti in t]
    lm = generator.matrix
    return [devectorize(linalg.expm_general(lm * ti) @ r0) for ti in t]


def ensure_physical(violations: StateViolations, t: float, tol: float = PHYSICALITY_TOL) -> None:
    """Raise UnphysicalEvolutionError when a propagated matrix breaks the
    state invariants beyond tol; such breaks signal rate choices outside
    the completely positive set, not numerical noise."""
    if not violations.within(tol):
        raise UnphysicalEvolutionError(
            f"state at t = {t:g} is unphysical: hermiticity defect "
            f"{violations.hermiticity_error:.3e}, trace defect "
            f"{violations.trace_error:.3e}, min eigenvalue "
            f"{violations.min_eigenvalue:.3e} (threshold {tol:.1e})"
        )


def evolve_state(
    generator: SuperOperator,
    rho0: DensityMatrix,
    times,
    physicality_tol: float = PHYSICALITY_TOL,
) -> list[DensityMatrix]:
    """Propagated states at the requested times, certified physical.

    Raises UnphysicalEvolutionError at the first time point whose matrix
    violates hermiticity, unit trace, or positivity beyond
    ``physicality_tol``.
    """
    t = _time_array(times)
    states = []
    for ti, m in zip(t, propagate(generator, rho0, t)):
        ensure_physical(state_violations(m), float(ti), physicality_tol)
        states.append(
            DensityMatrix(
                m,
                herm_tol=physicality_tol,
                trace_tol=physicality_tol,
                eig_tol=physicality_tol,
            )
        )
    return states


@dataclass(frozen=True)
class InvariantReport:
    """Which coherences survive a pure-dephasing process indefinitely.

    The generator is diagonal, so a state is a fixed point exactly when its
    off-diagonal support sits on level pairs with zero dephasing rate.
    ``undamped_pairs`` lists those pairs 1-based with m < n.
    """

    undamped_pairs: tuple
    phi_bell_preserved: bool
    psi_bell_preserved: bool
    bell_preserved: bool
    all_states_invariant: bool
    only_diagonal_invariant: bool


def invariant_states(rates: RateSet) -> InvariantReport:
    """Fixed-point structure of a pure-dephasing dissipator.

    A maximally entangled state survives exactly when its coherence pair is
    undamped: the corner pair (1, 4) carries the phi-type Bell states, the
    middle pair (2, 3) the psi-type ones.  Requires zero relaxation.
    """
    if np.any(rates.relaxation != 0.0):
        raise RelaxationPresentError(
            "relaxation rates present; invariant analysis covers pure dephasing only"
        )
    g = rates.dephasing
    pairs = tuple(
        (m + 1, n + 1) for m in range(DIM) for n in range(m + 1, DIM) if g[m, n] == 0.0
    )
    phi = bool(g[0, 3] == 0.0)
    psi = bool(g[1, 2] == 0.0)
    return InvariantReport(
        undamped_pairs=pairs,
        phi_bell_preserved=phi,
        psi_bell_preserved=psi,
        bell_preserved=phi or psi,
        all_states_invariant=len(pairs) == 6,
        only_diagonal_invariant=len(pairs) == 0,
    )
