import json
import math

import numpy as np
import pytest

from lindqbit import ConfigError
from lindqbit.config import load_config, parse_config, parse_state_node


def base_config(**overrides):
    doc = {
        "hamiltonian": {"x1": 0.0, "x2": 0.0, "x3": 0.0, "y": 1.0},
        "dissipation": "none",
        "initial_state": "phi_plus",
        "time_grid": {"t_max": 1.0, "points": 10},
    }
    doc.update(overrides)
    return doc


class TestHamiltonianSection:
    def test_parameter_form(self):
        cfg = parse_config(base_config(hamiltonian={"y": 2.0, "x2": -1.0}))
        h = cfg.hamiltonian_matrix
        assert h[0, 3] == 2.0 and h[1, 1] == -1.0 and h[0, 0] == 0.0

    def test_explicit_matrix(self):
        rows = [[[float(i == j), 0.0] for j in range(4)] for i in range(4)]
        cfg = parse_config(base_config(hamiltonian={"matrix": rows}))
        assert np.array_equal(cfg.hamiltonian_matrix, np.eye(4, dtype=complex))

    def test_rejects_non_hermitian_matrix(self):
        rows = [[[0.0, 0.0]] * 4 for _ in range(4)]
        rows[0][1] = [1.0, 0.0]
        with pytest.raises(ConfigError, match="hamiltonian.matrix"):
            parse_config(base_config(hamiltonian={"matrix": rows}))

    def test_rejects_unknown_keys(self):
        with pytest.raises(ConfigError, match="unknown keys"):
            parse_config(base_config(hamiltonian={"y": 1.0, "coupling": 2.0}))


class TestDissipationSection:
    def test_none_string_and_object(self):
        assert parse_config(base_config(dissipation="none")).dissipation_kind == "none"
        assert parse_config(base_config(dissipation={"none": True})).dissipation_kind == "none"

    def test_rates(self):
        gamma = [[0.0, 1.0, 1.0, 1.0]] + [[1.0] * 4 for _ in range(3)]
        for i in range(4):
            gamma[i][i] = 0.0
        cfg = parse_config(base_config(dissipation={"rates": {"Gamma": gamma}}))
        assert cfg.dissipation_kind == "rates"
        assert cfg.rates.dephasing[0, 1] == 1.0
        assert not np.any(cfg.rates.relaxation)

    def test_rates_validation_has_field_path(self):
        gamma = [[0.0, -1.0, 0.0, 0.0]] + [[0.0] * 4 for _ in range(3)]
        with pytest.raises(ConfigError, match="dissipation.rates"):
            parse_config(base_config(dissipation={"rates": {"Gamma": gamma}}))

    def test_lindblad_diagonal(self):
        amps = [[1.0, 0.0], [0.0, 1.0], [0.5, 0.0], [0.0, 0.0]]
        cfg = parse_config(base_config(dissipation={"lindblad_diagonal": amps}))
        assert cfg.dissipation_kind == "lindblad_diagonal"
        assert len(cfg.lindblad.operators) == 3  # zero amplitude skipped

    def test_lindblad_general(self):
        flat = [[[0.0, 0.0]] * 4 for _ in range(4)]
        flat[0][1] = [0.3, 0.0]
        cfg = parse_config(base_config(dissipation={"lindblad_general": [flat]}))
        assert cfg.dissipation_kind == "lindblad_general"
        assert cfg.lindblad.operators[0][0, 1] == 0.3

    def test_exactly_one_variant(self):
        with pytest.raises(ConfigError, match="exactly one"):
            parse_config(
                base_config(
                    dissipation={"none": True, "lindblad_diagonal": [[0, 0]] * 4}
                )
            )

    def test_unknown_variant(self):
        with pytest.raises(ConfigError, match="unknown keys"):
            parse_config(base_config(dissipation={"kraus": []}))


class TestInitialStateSection:
    def test_bell_name(self):
        cfg = parse_config(base_config(initial_state="phi_i"))
        assert cfg.initial_pure is not None
        assert abs(cfg.initial_pure.amplitudes[3] - 1j / math.sqrt(2)) < 1e-15

    def test_unknown_bell_name(self):
        with pytest.raises(ConfigError, match="initial_state"):
            parse_config(base_config(initial_state="phi_q"))

    def test_amplitudes(self):
        s = 1.0 / math.sqrt(2.0)
        cfg = parse_config(base_config(initial_state=[[s, 0], [0, 0], [0, 0], [s, 0]]))
        assert cfg.initial_pure is not None
        assert abs(cfg.initial_state.matrix[0, 3] - 0.5) < 1e-15

    def test_unnormalized_amplitudes_name_the_field(self):
        with pytest.raises(ConfigError, match="initial_state"):
            parse_config(base_config(initial_state=[[1, 0], [1, 0], [0, 0], [0, 0]]))

    def test_density_matrix(self):
        rows = [[[0.25 * float(i == j), 0.0] for j in range(4)] for i in range(4)]
        cfg = parse_config(base_config(initial_state=rows))
        assert cfg.initial_pure is None
        assert np.allclose(cfg.initial_state.matrix, np.eye(4) / 4)

    def test_invalid_density_matrix(self):
        rows = [[[float(i == j), 0.0] for j in range(4)] for i in range(4)]  # trace 4
        with pytest.raises(ConfigError, match="trace"):
            parse_config(base_config(initial_state=rows))

    def test_state_node_normalization_flag(self):
        node = [[1.0, 0.0], [0.0, 0.0], [0.0, 0.0], [1.0, 0.0]]
        with pytest.raises(ConfigError):
            parse_state_node(node, "state")
        state, pure = parse_state_node(node, "state", normalize=True)
        assert abs(np.linalg.norm(pure.amplitudes) - 1.0) < 1e-12

    def test_complex_pair_errors_are_indexed(self):
        node = [[1.0, 0.0], [0.0], [0.0, 0.0], [0.0, 0.0]]
        with pytest.raises(ConfigError, match=r"state\[1\]"):
            parse_state_node(node, "state")


class TestTimeGridAndOutputs:
    def test_time_grid_values(self):
        cfg = parse_config(base_config(time_grid={"t_max": 2.5, "points": 3}))
        assert cfg.t_max == 2.5 and cfg.points == 3

    def test_rejects_single_point(self):
        with pytest.raises(ConfigError, match="time_grid.points"):
            parse_config(base_config(time_grid={"t_max": 1.0, "points": 1}))

    def test_rejects_non_positive_span(self):
        with pytest.raises(ConfigError, match="time_grid.t_max"):
            parse_config(base_config(time_grid={"t_max": 0.0, "points": 10}))

    def test_outputs_optional(self):
        cfg = parse_config(base_config())
        assert cfg.csv_path is None and cfg.plot_path is None
        cfg = parse_config(base_config(outputs={"csv_path": "run.csv"}))
        assert cfg.csv_path == "run.csv"

    def test_missing_section_is_named(self):
        doc = base_config()
        del doc["time_grid"]
        with pytest.raises(ConfigError, match="time_grid"):
            parse_config(doc)


class TestGeneratorAssembly:
    def test_none_dissipation_is_unitary_only(self):
        cfg = parse_config(base_config())
        generator = cfg.generator()
        assert np.max(np.abs(generator.matrix + generator.matrix.conj().T)) < 1e-15

    def test_rates_add_to_hamiltonian_part(self):
        gamma = [[0.0, 1.0, 1.0, 1.0], [1.0, 0.0, 1.0, 1.0], [1.0, 1.0, 0.0, 1.0], [1.0, 1.0, 1.0, 0.0]]
        cfg = parse_config(base_config(dissipation={"rates": {"Gamma": gamma}}))
        generator = cfg.generator()
        # coherence (1,4) sees both the phase term and the decay term
        assert generator.matrix[3, 3] == pytest.approx(-1.0)


class TestLoadConfig:
    def test_round_trip_file(self, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps(base_config()))
        cfg = load_config(path)
        assert cfg.points == 10

    def test_bad_json_reports_parse_error(self, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text("{not json")
        with pytest.raises(ConfigError, match="invalid JSON"):
            load_config(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError, match="cannot read"):
            load_config(tmp_path / "absent.json")
