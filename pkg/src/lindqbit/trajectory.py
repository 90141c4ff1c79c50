"""Time-series records of entanglement observables and their CSV form."""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .dynamics import (
    PHYSICALITY_TOL,
    ControlHamiltonian,
    SuperOperator,
    ensure_physical,
    evolve_pure,
    propagate,
)
from .entanglement import concurrence_mixed, concurrence_pure, entanglement_of_formation
from .states import DensityMatrix, PureState, density_from_pure, state_violations

CSV_HEADER = ("t", "concurrence", "eof", "purity", "trace_error", "min_eigenvalue")


@dataclass(frozen=True)
class TrajectoryRecord:
    """One sampled point of an evolution: entanglement plus health columns."""

    t: float
    concurrence: float
    eof: float
    purity: float
    trace_error: float
    min_eigenvalue: float


def time_grid(t_max: float, points: int) -> np.ndarray:
    """Uniform grid of ``points`` samples covering [0, t_max]."""
    if not t_max > 0.0:
        raise ValueError(f"t_max must be positive, got {t_max!r}")
    if points < 2:
        raise ValueError(f"points must be at least 2, got {points!r}")
    return np.linspace(0.0, float(t_max), int(points))


def unitary_records(
    h: ControlHamiltonian, v0: PureState, times, sign: int = +1
) -> list[TrajectoryRecord]:
    """Pure-state trajectory under exp(sign * i t H), sampled per grid point."""
    records = []
    for t in np.asarray(times, dtype=float):
        v = evolve_pure(h, v0, float(t), sign=sign)
        c = concurrence_pure(v)
        rho = density_from_pure(v)
        viol = state_violations(rho.matrix)
        records.append(
            TrajectoryRecord(
                t=float(t),
                concurrence=c,
                eof=entanglement_of_formation(min(c, 1.0)),
                purity=rho.purity(),
                trace_error=viol.trace_error,
                min_eigenvalue=viol.min_eigenvalue,
            )
        )
    return records


def dissipative_records(
    generator: SuperOperator,
    rho0: DensityMatrix,
    times,
    physicality_tol: float = PHYSICALITY_TOL,
) -> list[TrajectoryRecord]:
    """Mixed-state trajectory under dr/dt = L r, sampled per grid point.

    The health columns report the raw propagated matrix, before the small
    eigenvalue clamp applied when certifying each state.  Raises
    UnphysicalEvolutionError as soon as a point exceeds ``physicality_tol``.
    """
    tarr = np.asarray(times, dtype=float)
    records = []
    for t, m in zip(tarr, propagate(generator, rho0, tarr)):
        viol = state_violations(m)
        ensure_physical(viol, float(t), physicality_tol)
        state = DensityMatrix(
            m, herm_tol=physicality_tol, trace_tol=physicality_tol, eig_tol=physicality_tol
        )
        c = concurrence_mixed(state).value
        records.append(
            TrajectoryRecord(
                t=float(t),
                concurrence=c,
                eof=entanglement_of_formation(min(c, 1.0)),
                purity=state.purity(),
                trace_error=viol.trace_error,
                min_eigenvalue=viol.min_eigenvalue,
            )
        )
    return records


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def write_csv(records, path) -> None:
    """Write records with 17 significant digits; byte-deterministic for
    identical inputs."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for rec in records:
            writer.writerow(
                [
                    _fmt(rec.t),
                    _fmt(rec.concurrence),
                    _fmt(rec.eof),
                    _fmt(rec.purity),
                    _fmt(rec.trace_error),
                    _fmt(rec.min_eigenvalue),
                ]
            )


def read_csv(path) -> list[TrajectoryRecord]:
    """Parse a CSV produced by write_csv back into records."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = tuple(next(reader))
        if header != CSV_HEADER:
            raise ValueError(f"unexpected header {header!r}")
        return [TrajectoryRecord(*(float(cell) for cell in row)) for row in reader]
