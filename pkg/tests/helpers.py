"""Shared random ensembles for the test suite.

Pure states are normalized complex-Gaussian vectors; mixed states are
convex combinations of 1-4 random pure projectors with Dirichlet weights.
All draws come from a generator seeded in conftest so failures reproduce.
"""

import numpy as np

from lindqbit import (
    DensityMatrix,
    PureState,
    expm_hermitian_scaled,
    kron,
    validate_state,
)


def random_pure_amplitudes(rng) -> np.ndarray:
    z = rng.normal(size=4) + 1j * rng.normal(size=4)
    return z / np.linalg.norm(z)


def random_pure_state(rng) -> PureState:
    return PureState(random_pure_amplitudes(rng))


def random_density(rng, max_rank: int = 4) -> DensityMatrix:
    k = int(rng.integers(1, max_rank + 1))
    weights = rng.dirichlet(np.ones(k))
    acc = np.zeros((4, 4), dtype=complex)
    for w in weights:
        v = random_pure_amplitudes(rng)
        acc += w * np.outer(v, v.conj())
    return validate_state(acc)


def random_hermitian(rng, n: int) -> np.ndarray:
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (g + g.conj().T) / 2.0


def random_complex_matrix(rng, n: int, scale: float = 1.0) -> np.ndarray:
    return scale * (rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)))


def random_local_unitary(rng) -> np.ndarray:
    """U1 kron U2 with each factor the exponential of a random 2x2 Hermitian."""
    u1 = expm_hermitian_scaled(random_hermitian(rng, 2), 1j)
    u2 = expm_hermitian_scaled(random_hermitian(rng, 2), 1j)
    return kron(u1, u2)
