"""Concurrence and entanglement of formation for two-qubit states."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import DomainError, NotPSDError
from .states import DensityMatrix, PureState, coeff_matrix

_SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]])

#: The fixed involution sigma_y kron sigma_y used by the spin-flip map:
#: real entries (-1, 1, 1, -1) down the antidiagonal, zero elsewhere.
SPIN_FLIP_MATRIX = linalg.kron(_SIGMA_Y, _SIGMA_Y)
SPIN_FLIP_MATRIX.setflags(write=False)


def concurrence_pure(v: PureState) -> float:
    """Concurrence 2 |det c| of a pure state's 2x2 coefficient matrix."""
    return 2.0 * abs(linalg.det2(coeff_matrix(v)))


def spin_flip(rho: DensityMatrix) -> np.ndarray:
    """Spin-flipped factor (sy kron sy) rho* (sy kron sy).

    Hermitian and PSD for any valid state: conjugation of the (transposed)
    complex conjugate by a real involution.
    """
    return SPIN_FLIP_MATRIX @ rho.matrix.conj() @ SPIN_FLIP_MATRIX


@dataclass(frozen=True)
class ConcurrenceResult:
    """Wootters concurrence with its descending lambda spectrum."""

    value: float
    lambdas: tuple[float, float, float, float]


def concurrence_mixed(rho: DensityMatrix) -> ConcurrenceResult:
    """Wootters concurrence of a general (mixed or pure) two-qubit state.

    The lambdas are the square roots, in descending order, of the
    eigenvalues of rho * spin_flip(rho); the concurrence is
    max(l1 - l2 - l3 - l4, 0).

    Because rho is PSD that product is similar to the Hermitian matrix
    sqrt(rho) X sqrt(rho) = M M^+ with M = sqrt(rho) K conj(sqrt(rho))
    (K the spin-flip involution), so the lambdas are the singular values
    of M.  They are read off the Hermitian augmented matrix
    [[0, M], [M^+, 0]], whose spectrum is (+-lambda_i): this keeps the
    solver Hermitian-only and, unlike taking square roots of near-zero
    eigenvalues, does not inflate rounding noise for rank-deficient
    states.
    """
    root = linalg.sqrtm_psd(rho.matrix)
    half = root @ SPIN_FLIP_MATRIX @ root.conj()
    aug = np.zeros((8, 8), dtype=complex)
    aug[:4, 4:] = half
    aug[4:, :4] = half.conj().T
    evals, _ = linalg.hermitian_eig(aug)
    lam = evals[4:][::-1]  # the four nonnegative branch values, descending
    if lam[3] < -1e-10:
        raise NotPSDError(
            f"spin-flip singular value {lam[3]:.3e} is negative beyond tolerance"
        )
    lam = np.where(lam < 0.0, 0.0, lam)
    value = max(float(lam[0] - lam[1] - lam[2] - lam[3]), 0.0)
    return ConcurrenceResult(value=value, lambdas=tuple(float(x) for x in lam))


def entanglement_of_formation(c: float) -> float:
    """Binary-entropy monotone of the concurrence.

    E = f((1 + sqrt(1 - c^2)) / 2) with f the base-2 binary entropy,
    extended by continuity so E(0) = 0 and E(1) = 1.
    """
    if not -1e-12 <= c <= 1.0 + 1e-12:
        raise DomainError(f"concurrence {c!r} outside [0, 1]")
    c = min(max(c, 0.0), 1.0)
    x = 0.5 * (1.0 + math.sqrt(1.0 - c * c))
    return _binary_entropy(x)


def _binary_entropy(x: float) -> float:
    if x <= 0.0 or x >= 1.0:
        return 0.0
    return -x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x)
