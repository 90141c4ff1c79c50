"""Two-qubit pure states, density matrices, and the flat-vector convention.

The basis order is fixed everywhere as (|00>, |01>, |10>, |11>).  A 4x4
matrix rho maps to a 16-component vector by row-major flattening, so the
component at 1-based position (m-1)*4 + n holds rho_mn.  Messages and
reports use 1-based level indices; array code is 0-based.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import (
    DimensionMismatchError,
    InvalidStateError,
    NotHermitianError,
    NotPositiveError,
    TraceNotOneError,
)

DIM = 4

BELL_KINDS = ("phi_plus", "phi_minus", "psi_plus", "psi_minus", "phi_i")


class PureState:
    """Normalized 4-component state vector in the fixed product basis."""

    __slots__ = ("amplitudes",)

    NORM_TOL = 1e-12

    def __init__(self, amplitudes):
        arr = np.array(amplitudes, dtype=complex)
        if arr.shape != (DIM,):
            raise InvalidStateError(f"expected 4 amplitudes, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise InvalidStateError("amplitudes must be finite")
        norm = float(np.linalg.norm(arr))
        if abs(norm - 1.0) > self.NORM_TOL:
            raise InvalidStateError(
                f"state vector norm is {norm:.17g}, not 1 within {self.NORM_TOL:.1e}; "
                "divide by the norm explicitly if rescaling is intended"
            )
        arr.setflags(write=False)
        self.amplitudes = arr

    @classmethod
    def normalized(cls, amplitudes) -> "PureState":
        """Explicitly rescale nonzero amplitudes to unit norm."""
        arr = np.asarray(amplitudes, dtype=complex)
        if arr.shape != (DIM,):
            raise InvalidStateError(f"expected 4 amplitudes, got shape {arr.shape}")
        norm = float(np.linalg.norm(arr))
        if norm == 0.0 or not math.isfinite(norm):
            raise InvalidStateError("cannot normalize a zero or non-finite vector")
        return cls(arr / norm)

    def equals_up_to_phase(self, other: "PureState", tol: float = 1e-10) -> bool:
        """True when the two vectors differ only by a global phase."""
        overlap = np.vdot(self.amplitudes, other.amplitudes)
        if abs(overlap) == 0.0:
            return False
        phase = overlap / abs(overlap)
        return bool(np.max(np.abs(other.amplitudes - phase * self.amplitudes)) <= tol)

    def __repr__(self):
        return f"PureState({self.amplitudes.tolist()!r})"


def bell_state(kind: str) -> PureState:
    """One of the named maximally entangled states; all have concurrence 1."""
    s = 1.0 / math.sqrt(2.0)
    table = {
        "phi_plus": (s, 0.0, 0.0, s),
        "phi_minus": (s, 0.0, 0.0, -s),
        "psi_plus": (0.0, s, s, 0.0),
        "psi_minus": (0.0, s, -s, 0.0),
        "phi_i": (s, 0.0, 0.0, s * 1j),
    }
    try:
        amps = table[kind]
    except KeyError:
        raise ValueError(f"unknown Bell kind {kind!r}; choose one of {BELL_KINDS}") from None
    return PureState(amps)


def coeff_matrix(v: PureState) -> np.ndarray:
    """2x2 coefficient matrix c with c[i, j] the amplitude of |i j>."""
    return v.amplitudes.reshape(2, 2).copy()


def is_separable_pure(v: PureState, tol: float = 1e-12) -> bool:
    """Product-state test: |det c| at most tol."""
    return abs(linalg.det2(coeff_matrix(v))) <= tol


@dataclass(frozen=True)
class StateViolations:
    """How far a 4x4 matrix sits from the physical state set."""

    hermiticity_error: float
    trace_error: float
    min_eigenvalue: float

    def within(self, tol: float) -> bool:
        return (
            self.hermiticity_error <= tol
            and self.trace_error <= tol
            and self.min_eigenvalue >= -tol
        )


def state_violations(matrix) -> StateViolations:
    """Measure hermiticity, trace, and positivity defects of a 4x4 matrix."""
    m = np.asarray(matrix, dtype=complex)
    if m.shape != (DIM, DIM):
        raise DimensionMismatchError(f"expected a 4x4 matrix, got shape {m.shape}")
    herm = linalg.hermiticity_error(m)
    trace_err = abs(complex(np.trace(m)) - 1.0)
    evals, _ = linalg.hermitian_eig((m + m.conj().T) / 2.0)
    return StateViolations(herm, trace_err, float(evals[0]))


class DensityMatrix:
    """4x4 Hermitian, positive semidefinite, trace-1 matrix.

    Construction validates all three invariants.  Eigenvalues in
    (-eig_tol, 0) count as rounding residue: the matrix is rebuilt with
    them clamped to zero so downstream square roots stay well defined.
    """

    __slots__ = ("matrix",)

    def __init__(self, matrix, *, herm_tol=1e-12, trace_tol=1e-12, eig_tol=1e-10):
        m = np.array(matrix, dtype=complex)
        if m.shape != (DIM, DIM):
            raise InvalidStateError(f"expected a 4x4 matrix, got shape {m.shape}")
        if not np.all(np.isfinite(m)):
            raise InvalidStateError("density matrix entries must be finite")
        herm = linalg.hermiticity_error(m)
        if herm > herm_tol:
            raise NotHermitianError(
                f"density matrix is not Hermitian: max |rho - rho^H| = {herm:.3e} "
                f"exceeds tol {herm_tol:.1e}"
            )
        m = (m + m.conj().T) / 2.0
        trace_err = abs(complex(np.trace(m)) - 1.0)
        if trace_err > trace_tol:
            raise TraceNotOneError(
                f"density matrix trace deviates from 1 by {trace_err:.3e} "
                f"(tol {trace_tol:.1e})"
            )
        evals, vecs = linalg.hermitian_eig(m)
        if evals[0] < -eig_tol:
            raise NotPositiveError(
                f"density matrix eigenvalue {evals[0]:.3e} below -{eig_tol:.1e}"
            )
        if evals[0] < 0.0:
            clamped = np.where(evals < 0.0, 0.0, evals)
            m = (vecs * clamped) @ vecs.conj().T
            m = (m + m.conj().T) / 2.0
        m.setflags(write=False)
        self.matrix = m

    def purity(self) -> float:
        """tr(rho^2); 1 for pure states, 1/4 for the maximally mixed state."""
        return float(np.real(np.trace(self.matrix @ self.matrix)))

    def __repr__(self):
        return f"DensityMatrix({self.matrix.tolist()!r})"


def validate_state(matrix, tol: float = 1e-10) -> DensityMatrix:
    """Certify a 4x4 matrix as a physical state; ``tol`` bounds how negative
    an eigenvalue may be before the matrix is rejected instead of clamped."""
    return DensityMatrix(matrix, eig_tol=tol)


def density_from_pure(v: PureState) -> DensityMatrix:
    """Rank-1 projector of a pure state."""
    p = np.outer(v.amplitudes, v.amplitudes.conj())
    p /= np.trace(p).real
    return DensityMatrix(p)


def vectorize(rho) -> np.ndarray:
    """Row-major flattening of a 4x4 matrix into its 16-component vector."""
    m = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)
    if m.shape != (DIM, DIM):
        raise DimensionMismatchError(f"expected a 4x4 matrix, got shape {m.shape}")
    return m.reshape(DIM * DIM).copy()


def devectorize(r) -> np.ndarray:
    """Inverse of vectorize.  Performs no validation: mid-evolution vectors
    may be inspected before they are certified as states."""
    arr = np.asarray(r, dtype=complex)
    if arr.shape != (DIM * DIM,):
        raise DimensionMismatchError(f"expected 16 components, got shape {arr.shape}")
    return arr.reshape(DIM, DIM).copy()


def separable_mixture(weights, factor_pairs, tol: float = 1e-12) -> DensityMatrix:
    """Convex sum of product states, sum_i w_i * (rho1_i kron rho2_i).

    Each factor must be a valid single-qubit state (2x2, Hermitian, trace 1,
    PSD); weights must be nonnegative and sum to 1.  The result is separable
    by construction; no general separability test exists here.
    """
    w = np.asarray(weights, dtype=float)
    pairs = list(factor_pairs)
    if w.ndim != 1 or len(pairs) != w.shape[0]:
        raise InvalidStateError("need one weight per factor pair")
    if np.any(w < 0.0):
        raise InvalidStateError(f"weights must be nonnegative, got min {w.min():.3e}")
    if abs(w.sum() - 1.0) > tol:
        raise InvalidStateError(f"weights sum to {w.sum():.17g}, not 1 within {tol:.1e}")
    acc = np.zeros((DIM, DIM), dtype=complex)
    for wi, (first, second) in zip(w, pairs):
        acc += wi * linalg.kron(_qubit_state(first), _qubit_state(second))
    return DensityMatrix(acc)


def _qubit_state(matrix) -> np.ndarray:
    m = np.asarray(matrix, dtype=complex)
    if m.shape != (2, 2):
        raise InvalidStateError(f"factor must be 2x2, got shape {m.shape}")
    herm = linalg.hermiticity_error(m)
    if herm > 1e-12:
        raise NotHermitianError(f"factor is not Hermitian (deviation {herm:.3e})")
    if abs(complex(np.trace(m)) - 1.0) > 1e-12:
        raise TraceNotOneError(f"factor trace is {complex(np.trace(m)).real:.17g}, not 1")
    evals, _ = linalg.hermitian_eig(m)
    if evals[0] < -1e-10:
        raise NotPositiveError(f"factor eigenvalue {evals[0]:.3e} is negative")
    return m
