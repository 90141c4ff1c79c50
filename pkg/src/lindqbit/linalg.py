"""Dense complex linear algebra for small matrices.

Everything here is sized for two-qubit work: 2x2 and 4x4 operators plus
16x16 generators acting on vectorized states.  Robustness wins over
asymptotic speed at these sizes, so the Hermitian eigensolver is a cyclic
Jacobi iteration and the general matrix exponential is plain
scaling-and-squaring with an adaptively truncated series.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import (
    DimensionMismatchError,
    NoConvergenceError,
    NotHermitianError,
    NotPSDError,
)

# Off-diagonal Frobenius norm below this fraction of the input norm counts
# as diagonalized.
_JACOBI_CONVERGENCE = 1e-14
_JACOBI_MAX_SWEEPS = 100

# Series term smaller than this fraction of the accumulated sum stops the
# exponential's Taylor loop.
_EXPM_TERM_CUTOFF = 1e-16


def kron(a, b) -> np.ndarray:
    """Kronecker product; block (i, j) of the result equals a[i, j] * b."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def hermiticity_error(a) -> float:
    """Largest entrywise deviation between a matrix and its adjoint."""
    a = np.asarray(a)
    return float(np.max(np.abs(a - a.conj().T)))


def _require_square(a, who: str) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatchError(f"{who} needs a square matrix, got shape {a.shape}")
    return a


def _jacobi_rotate(w: np.ndarray, v: np.ndarray, p: int, q: int) -> None:
    """Zero w[p, q] by a unitary plane rotation; accumulate it into v."""
    wpq = w[p, q]
    g = abs(wpq)
    if g == 0.0:
        return
    phase = wpq / g
    alpha = w[p, p].real
    beta = w[q, q].real
    tau = (beta - alpha) / (2.0 * g)
    # Smaller root of t^2 + 2*tau*t - 1 = 0 keeps the rotation angle <= pi/4.
    if tau >= 0.0:
        t = 1.0 / (tau + math.hypot(1.0, tau))
    else:
        t = -1.0 / (-tau + math.hypot(1.0, tau))
    c = 1.0 / math.hypot(1.0, t)
    s = (t * c) * phase

    colp = w[:, p].copy()
    colq = w[:, q].copy()
    w[:, p] = c * colp - np.conj(s) * colq
    w[:, q] = s * colp + c * colq
    rowp = w[p, :].copy()
    rowq = w[q, :].copy()
    w[p, :] = c * rowp - s * rowq
    w[q, :] = np.conj(s) * rowp + c * rowq

    # The 2x2 block has a closed form; writing it directly kills the
    # rounding drift that would otherwise accumulate on the diagonal.
    w[p, p] = alpha - t * g
    w[q, q] = beta + t * g
    w[p, q] = 0.0
    w[q, p] = 0.0

    vp = v[:, p].copy()
    vq = v[:, q].copy()
    v[:, p] = c * vp - np.conj(s) * vq
    v[:, q] = s * vp + c * vq


def _offdiag_norm(w: np.ndarray) -> float:
    return float(np.linalg.norm(w - np.diag(np.diag(w))))


def hermitian_eig(a, tol: float = 1e-12, max_sweeps: int = _JACOBI_MAX_SWEEPS):
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Parameters
    ----------
    a : array_like
        Square matrix, Hermitian within ``tol`` (max |a - a^H| entrywise).
    tol : float
        Allowed Hermiticity violation of the input.
    max_sweeps : int
        Full-cycle budget before giving up.

    Returns
    -------
    (eigenvalues, eigenvectors)
        Eigenvalues ascending; eigenvectors are the matching columns of a
        unitary matrix, orthonormal to ~1e-15.  Residuals a v - lambda v
        stay below 1e-12 * ||a|| for the sizes used here (n <= 16).

    Raises
    ------
    NotHermitianError
        If the input fails the Hermiticity check.
    NoConvergenceError
        If the off-diagonal norm does not reach 1e-14 * ||a||_F in budget.
    """
    a = _require_square(a, "hermitian_eig")
    herm = hermiticity_error(a)
    if herm > tol:
        raise NotHermitianError(
            f"matrix is not Hermitian: max |a - a^H| = {herm:.3e} exceeds tol {tol:.3e}"
        )
    n = a.shape[0]
    w = (a + a.conj().T) / 2.0
    v = np.eye(n, dtype=complex)
    threshold = _JACOBI_CONVERGENCE * float(np.linalg.norm(w))

    converged = _offdiag_norm(w) <= threshold
    for _ in range(max_sweeps):
        if converged:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                _jacobi_rotate(w, v, p, q)
        converged = _offdiag_norm(w) <= threshold
    if not converged:
        raise NoConvergenceError(
            f"Jacobi iteration did not converge in {max_sweeps} sweeps "
            f"(off-diagonal norm {_offdiag_norm(w):.3e}, threshold {threshold:.3e})"
        )

    evals = np.real(np.diag(w))
    order = np.argsort(evals, kind="stable")
    return evals[order], v[:, order]


def expm_hermitian_scaled(h, scale: complex, tol: float = 1e-12) -> np.ndarray:
    """exp(scale * h) for Hermitian h, via eigendecomposition.

    With purely imaginary ``scale`` the result is unitary to ~1e-12.
    """
    evals, vecs = hermitian_eig(h, tol=tol)
    return (vecs * np.exp(scale * evals)) @ vecs.conj().T


def expm_general(m) -> np.ndarray:
    """exp(m) for an arbitrary square matrix by scaling-and-squaring.

    The argument is halved until its 1-norm is at most 0.5, the Taylor
    series is summed until the next term drops below 1e-16 of the running
    sum, and the result is squared back up.  exp(0) is the identity exactly.
    """
    m = _require_square(m, "expm_general")
    if not np.all(np.isfinite(m)):
        raise ValueError("expm_general requires finite entries")
    n = m.shape[0]
    norm = float(np.linalg.norm(m, 1))
    squarings = 0
    if norm > 0.5:
        squarings = int(math.ceil(math.log2(norm / 0.5)))
        m = m / (2.0**squarings)

    result = np.eye(n, dtype=complex)
    term = np.eye(n, dtype=complex)
    for k in range(1, 64):
        term = (term @ m) / k
        result = result + term
        if np.linalg.norm(term, 1) <= _EXPM_TERM_CUTOFF * np.linalg.norm(result, 1):
            break
    else:  # pragma: no cover - unreachable once ||m|| <= 0.5
        raise NoConvergenceError("exponential series did not settle in 64 terms")

    for _ in range(squarings):
        result = result @ result
    return result


def sqrtm_psd(a, tol: float = 1e-10) -> np.ndarray:
    """Hermitian PSD square root via eigendecomposition.

    Eigenvalues in (-tol, 0) are treated as rounding residue and clamped
    to zero; anything below -tol raises NotPSDError.
    """
    evals, vecs = hermitian_eig(a)
    if evals[0] < -tol:
        raise NotPSDError(
            f"matrix is not positive semidefinite: eigenvalue {evals[0]:.3e} below -{tol:.1e}"
        )
    clamped = np.where(evals < 0.0, 0.0, evals)
    s = (vecs * np.sqrt(clamped)) @ vecs.conj().T
    return (s + s.conj().T) / 2.0


def det2(c) -> complex:
    """Determinant of a 2x2 matrix."""
    c = np.asarray(c)
    if c.shape != (2, 2):
        raise DimensionMismatchError(f"det2 needs a 2x2 matrix, got shape {c.shape}")
    return complex(c[0, 0] * c[1, 1] - c[0, 1] * c[1, 0])
