"""JSON simulation configs: parsing, validation, generator assembly.

Complex numbers appear on the wire as two-element arrays [re, im].  Every
validation failure carries the dotted/indexed path of the offending field.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from numbers import Real

import numpy as np

from .dynamics import (
    ControlHamiltonian,
    LindbladSpec,
    RateSet,
    SuperOperator,
    dissipator_from_rates,
    lindblad_dissipator,
    liouvillian_hamiltonian,
)
from .errors import ConfigError, InvalidStateError, LindqbitError
from .states import DIM, BELL_KINDS, DensityMatrix, PureState, bell_state, density_from_pure, validate_state

DISSIPATION_KINDS = ("none", "rates", "lindblad_diagonal", "lindblad_general")


def _real(node, path) -> float:
    if isinstance(node, bool) or not isinstance(node, Real):
        raise ConfigError(path, f"expected a number, got {node!r}")
    val = float(node)
    if not np.isfinite(val):
        raise ConfigError(path, f"must be finite, got {val!r}")
    return val


def _complex_pair(node, path) -> complex:
    if not isinstance(node, (list, tuple)) or len(node) != 2:
        raise ConfigError(path, f"expected a [re, im] pair, got {node!r}")
    return complex(_real(node[0], f"{path}[0]"), _real(node[1], f"{path}[1]"))


def _complex_vector(node, path, length) -> np.ndarray:
    if not isinstance(node, (list, tuple)) or len(node) != length:
        raise ConfigError(path, f"expected {length} [re, im] pairs")
    return np.array(
        [_complex_pair(item, f"{path}[{i}]") for i, item in enumerate(node)], dtype=complex
    )


def _complex_matrix(node, path, rows, cols) -> np.ndarray:
    if not isinstance(node, (list, tuple)) or len(node) != rows:
        raise ConfigError(path, f"expected {rows} rows of {cols} [re, im] pairs")
    return np.array(
        [_complex_vector(row, f"{path}[{i}]", cols) for i, row in enumerate(node)],
        dtype=complex,
    )


def _real_matrix(node, path, rows, cols) -> np.ndarray:
    if not isinstance(node, (list, tuple)) or len(node) != rows:
        raise ConfigError(path, f"expected a {rows}x{cols} matrix")
    out = np.zeros((rows, cols))
    for i, row in enumerate(node):
        if not isinstance(row, (list, tuple)) or len(row) != cols:
            raise ConfigError(f"{path}[{i}]", f"expected {cols} numbers")
        for j, cell in enumerate(row):
            out[i, j] = _real(cell, f"{path}[{i}][{j}]")
    return out


def _require_object(node, path, allowed_keys):
    if not isinstance(node, dict):
        raise ConfigError(path, f"expected an object, got {type(node).__name__}")
    unknown = sorted(set(node) - set(allowed_keys))
    if unknown:
        raise ConfigError(path, f"unknown keys {unknown}; allowed: {sorted(allowed_keys)}")
    return node


@dataclass(frozen=True, eq=False)
class SimulationConfig:
    """A fully validated simulation setup ready to run."""

    hamiltonian_matrix: np.ndarray
    dissipation_kind: str
    rates: RateSet | None
    lindblad: LindbladSpec | None
    initial_state: DensityMatrix
    initial_pure: PureState | None
    t_max: float
    points: int
    csv_path: str | None
    plot_path: str | None

    def generator(self) -> SuperOperator:
        """Assemble the full generator, unitary part plus dissipator."""
        total = liouvillian_hamiltonian(self.hamiltonian_matrix)
        if self.dissipation_kind == "rates":
            total = total + dissipator_from_rates(self.rates)
        elif self.dissipation_kind in ("lindblad_diagonal", "lindblad_general"):
            total = total + lindblad_dissipator(self.lindblad)
        return total


def load_config(path) -> SimulationConfig:
    """Read and validate a JSON config file."""
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ConfigError("", f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError("", f"invalid JSON in {path}: {exc}") from exc
    return parse_config(doc)


def parse_config(doc) -> SimulationConfig:
    """Validate a decoded JSON document against the config schema."""
    _require_object(
        doc, "config", ("hamiltonian", "dissipation", "initial_state", "time_grid", "outputs")
    )
    for key in ("hamiltonian", "dissipation", "initial_state", "time_grid"):
        if key not in doc:
            raise ConfigError(key, "missing required section")

    hmat = _parse_hamiltonian(doc["hamiltonian"])
    kind, rates, lindblad = parse_dissipation(doc["dissipation"])
    initial, initial_pure = parse_state_node(doc["initial_state"], "initial_state")

    grid = _require_object(doc["time_grid"], "time_grid", ("t_max", "points"))
    if "t_max" not in grid:
        raise ConfigError("time_grid.t_max", "missing")
    if "points" not in grid:
        raise ConfigError("time_grid.points", "missing")
    t_max = _real(grid["t_max"], "time_grid.t_max")
    if t_max <= 0.0:
        raise ConfigError("time_grid.t_max", f"must be positive, got {t_max!r}")
    points = grid["points"]
    if isinstance(points, bool) or not isinstance(points, int):
        raise ConfigError("time_grid.points", f"expected an integer, got {points!r}")
    if points < 2:
        raise ConfigError("time_grid.points", f"must be at least 2, got {points}")

    csv_path = plot_path = None
    if "outputs" in doc:
        outputs = _require_object(doc["outputs"], "outputs", ("csv_path", "plot_path"))
        csv_path = _optional_path(outputs.get("csv_path"), "outputs.csv_path")
        plot_path = _optional_path(outputs.get("plot_path"), "outputs.plot_path")

    return SimulationConfig(
        hamiltonian_matrix=hmat,
        dissipation_kind=kind,
        rates=rates,
        lindblad=lindblad,
        initial_state=initial,
        initial_pure=initial_pure,
        t_max=t_max,
        points=points,
        csv_path=csv_path,
        plot_path=plot_path,
    )


def _optional_path(node, path):
    if node is None:
        return None
    if not isinstance(node, str) or not node:
        raise ConfigError(path, f"expected a nonempty string, got {node!r}")
    return node


def _parse_hamiltonian(node) -> np.ndarray:
    if isinstance(node, dict) and "matrix" in node:
        _require_object(node, "hamiltonian", ("matrix",))
        hmat = _complex_matrix(node["matrix"], "hamiltonian.matrix", DIM, DIM)
        defect = float(np.max(np.abs(hmat - hmat.conj().T)))
        if defect > 1e-12:
            raise ConfigError(
                "hamiltonian.matrix", f"must be Hermitian; max |h - h^H| = {defect:.3e}"
            )
        return hmat
    node = _require_object(node, "hamiltonian", ("x1", "x2", "x3", "y"))
    params = {key: _real(node.get(key, 0.0), f"hamiltonian.{key}") for key in ("x1", "x2", "x3", "y")}
    return np.array(ControlHamiltonian(**params).matrix)


def parse_dissipation(node):
    if node == "none":
        return "none", None, None
    node = _require_object(node, "dissipation", DISSIPATION_KINDS)
    if len(node) != 1:
        raise ConfigError(
            "dissipation", f"exactly one variant required, got {sorted(node) or 'none'}"
        )
    key, value = next(iter(node.items()))
    if key == "none":
        if value not in (True, None):
            raise ConfigError("dissipation.none", f"expected true or null, got {value!r}")
        return "none", None, None
    if key == "rates":
        value = _require_object(value, "dissipation.rates", ("Gamma", "gamma"))
        if "Gamma" not in value:
            raise ConfigError("dissipation.rates.Gamma", "missing")
        gamma_big = _real_matrix(value["Gamma"], "dissipation.rates.Gamma", DIM, DIM)
        gamma_small = None
        if "gamma" in value:
            gamma_small = _real_matrix(value["gamma"], "dissipation.rates.gamma", DIM, DIM)
        try:
            rates = RateSet(dephasing=gamma_big, relaxation=gamma_small)
        except LindqbitError as exc:
            raise ConfigError("dissipation.rates", str(exc)) from exc
        return "rates", rates, None
    if key == "lindblad_diagonal":
        amps = _complex_vector(value, "dissipation.lindblad_diagonal", DIM)
        return "lindblad_diagonal", None, LindbladSpec.diagonal(amps)
    # lindblad_general
    if not isinstance(value, (list, tuple)):
        raise ConfigError("dissipation.lindblad_general", "expected a list of 4x4 matrices")
    ops = [
        _complex_matrix(item, f"dissipation.lindblad_general[{i}]", DIM, DIM)
        for i, item in enumerate(value)
    ]
    return "lindblad_general", None, LindbladSpec(tuple(ops))


def parse_state_node(node, path, normalize: bool = False):
    """Parse a state given as a Bell name, 4 amplitude pairs, or a 4x4
    matrix of pairs.  Returns (DensityMatrix, PureState or None)."""
    if isinstance(node, str):
        if node not in BELL_KINDS:
            raise ConfigError(path, f"unknown Bell kind {node!r}; choose one of {BELL_KINDS}")
        pure = bell_state(node)
        return density_from_pure(pure), pure
    if isinstance(node, dict):
        _require_object(node, path, ("amplitudes", "matrix"))
        if len(node) != 1:
            raise ConfigError(path, "give exactly one of 'amplitudes' or 'matrix'")
        if "amplitudes" in node:
            return _amplitudes_state(node["amplitudes"], f"{path}.amplitudes", normalize)
        return _matrix_state(node["matrix"], f"{path}.matrix")
    if isinstance(node, (list, tuple)) and len(node) == DIM:
        if all(isinstance(item, (list, tuple)) and len(item) == DIM for item in node):
            return _matrix_state(node, path)
        # otherwise treat as amplitudes so malformed pairs get indexed errors
        if all(isinstance(item, (list, tuple)) for item in node):
            return _amplitudes_state(node, path, normalize)
    raise ConfigError(
        path,
        "expected a Bell kind name, 4 amplitude [re, im] pairs, or a 4x4 matrix of pairs",
    )


def _amplitudes_state(node, path, normalize: bool):
    amps = _complex_vector(node, path, DIM)
    try:
        pure = PureState.normalized(amps) if normalize else PureState(amps)
    except InvalidStateError as exc:
        raise ConfigError(path, str(exc)) from exc
    return density_from_pure(pure), pure


def _matrix_state(node, path):
    matrix = _complex_matrix(node, path, DIM, DIM)
    try:
        return validate_state(matrix), None
    except LindqbitError as exc:
        raise ConfigError(path, str(exc)) from exc
