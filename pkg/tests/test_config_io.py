"""Config grammar, output file formats, and manifest round-trips."""

import hashlib
import json

import numpy as np
import pytest

from pairplasma.config import RunConfig, format_config, parse_config
from pairplasma.diagnostics import SERIES_COLUMNS, make_record
from pairplasma.errors import ConfigError
from pairplasma.grid import Grid1D, integrate
from pairplasma.kernels import PhysicsParams
from pairplasma.output import (
    read_snapshot,
    write_manifest,
    write_series,
    write_snapshot,
)
from pairplasma.solver import InitialCondition, initial_condition

PARAMS = PhysicsParams(N0=0.2, alpha=1.0 / 137.0)


class TestParseConfig:
    def test_empty_text_gives_documented_defaults(self):
        cfg = parse_config("")
        assert cfg.physics.N0 == 0.2
        assert cfg.physics.a == 0.0
        assert cfg.grid.half_width == 24000.0
        assert cfg.grid.cells == 2048
        assert cfg.solver.cfl == 0.4
        assert cfg.solver.dt is None
        assert cfg.solver.t_end == 1500.0
        assert cfg.solver.displacement_terms is True
        assert cfg.solver.nu_h == 0.0
        assert cfg.ic.kind == "gaussian"
        assert cfg.ic.L == 6000.0
        assert cfg.ic.base_e == 1.01
        assert cfg.ic.base_p == 0.01
        assert cfg.ic.amplitude == 2.0

    def test_partial_overrides(self):
        cfg = parse_config(
            """
            # comment line
            physics.N0 = 0.3   # trailing comment
            solver.cfl = 0.25
            grid.cells = 256
            ic.kind = sine
            ic.epsilon = 1.5e-7
            solver.displacement_terms = off
            """
        )
        assert cfg.physics.N0 == 0.3
        assert cfg.solver.cfl == 0.25
        assert cfg.grid.cells == 256
        assert cfg.ic.kind == "sine"
        assert cfg.ic.epsilon == 1.5e-7
        assert cfg.solver.displacement_terms is False
        assert cfg.grid.half_width == 24000.0  # untouched default

    def test_dt_cfl_conflict(self):
        with pytest.raises(ConfigError, match="mutually exclusive"):
            parse_config("solver.dt = 1.0\nsolver.cfl = 0.4\n")

    def test_dt_alone_accepted(self):
        cfg = parse_config("solver.dt = 2.5\n")
        assert cfg.solver.dt == 2.5
        assert cfg.solver.cfl is None

    def test_unknown_key_rejected_with_line_number(self):
        with pytest.raises(ConfigError, match="line 2"):
            parse_config("physics.N0 = 0.2\nphysics.banana = 1\n")

    def test_malformed_line(self):
        with pytest.raises(ConfigError, match="line 1"):
            parse_config("just some words\n")
        with pytest.raises(ConfigError, match="line 1"):
            parse_config("N0 = 0.2\n")  # missing section

    def test_bad_values(self):
        with pytest.raises(ConfigError, match="bad value"):
            parse_config("grid.cells = 2048.5\n")
        with pytest.raises(ConfigError, match="bad value"):
            parse_config("solver.bohm = maybe\n")
        with pytest.raises(ConfigError, match="empty value"):
            parse_config("physics.N0 =\n")

    def test_duplicate_key_rejected(self):
        with pytest.raises(ConfigError, match="duplicate"):
            parse_config("physics.N0 = 0.2\nphysics.N0 = 0.3\n")

    def test_out_of_range_values(self):
        with pytest.raises(ConfigError):
            parse_config("physics.N0 = -1\n")
        with pytest.raises(ConfigError):
            parse_config("grid.cells = 7\n")
        with pytest.raises(ConfigError):
            parse_config("solver.cfl = 0.9\n")
        with pytest.raises(ConfigError):
            parse_config("ic.kind = vortex\n")

    def test_boolean_spellings(self):
        for text, value in [("on", True), ("true", True), ("yes", True), ("1", True),
                            ("off", False), ("false", False), ("no", False), ("0", False)]:
            cfg = parse_config(f"solver.bohm = {text}\n")
            assert cfg.solver.bohm is value

    def test_scientific_notation(self):
        cfg = parse_config("physics.eps_field = 2.5E-9\nic.epsilon = 1e-6\n")
        assert cfg.physics.eps_field == 2.5e-9


class TestFormatConfig:
    def test_round_trip_defaults(self):
        cfg = RunConfig()
        assert parse_config(format_config(cfg)) == cfg

    def test_round_trip_with_overrides(self):
        cfg = parse_config(
            "solver.dt = 3.25\nphysics.a = 0.125\nic.kind = sine\nic.mode = 4\n"
            "output.dir = elsewhere\nsolver.ampere_sign_flip = on\n"
        )
        text = format_config(cfg)
        assert parse_config(text) == cfg
        assert "solver.dt = 3.25" in text
        assert "solver.cfl" not in text


class TestSeriesFile:
    def _record(self, grid):
        state = initial_condition(InitialCondition(kind="uniform"), grid, PARAMS)
        return make_record(state, PARAMS, integrate(state.n_e, grid.dx))

    def test_header_only_for_no_records(self, tmp_path):
        path = write_series([], tmp_path / "series.csv")
        assert path.read_text() == ",".join(SERIES_COLUMNS) + "\n"

    def test_single_equilibrium_record(self, tmp_path):
        grid = Grid1D(half_width=100.0, cells=64)
        path = write_series([self._record(grid)], tmp_path / "series.csv")
        lines = path.read_text().splitlines()
        assert len(lines) == 2
        row = dict(zip(lines[0].split(","), lines[1].split(",")))
        assert float(row["delta_pairs"]) == 0.0
        assert float(row["gauss_residual"]) <= 1e-12
        assert float(row["t"]) == 0.0

    def test_full_precision_round_trip(self, tmp_path):
        grid = Grid1D(half_width=100.0, cells=64)
        rec = self._record(grid)
        path = write_series([rec], tmp_path / "series.csv")
        lines = path.read_text().splitlines()
        values = [float(s) for s in lines[1].split(",")]
        for name, value in zip(SERIES_COLUMNS, values):
            assert value == getattr(rec, name)  # exact, not approximate

    def test_lf_line_endings(self, tmp_path):
        grid = Grid1D(half_width=100.0, cells=64)
        path = write_series([self._record(grid)], tmp_path / "series.csv")
        assert b"\r" not in path.read_bytes()


class TestSnapshotFile:
    def test_round_trip(self, tmp_path):
        grid = Grid1D(half_width=24000.0, cells=128)
        state = initial_condition(InitialCondition(), grid, PARAMS)
        state.t = 12.5
        path = write_snapshot(state, 3, tmp_path)
        assert path.name == "fields_000003.csv"
        t, fields = read_snapshot(path)
        assert t == 12.5
        np.testing.assert_array_equal(fields["x"], grid.x)
        np.testing.assert_array_equal(fields["E"], state.E)
        np.testing.assert_array_equal(fields["n_e"], state.n_e)
        np.testing.assert_array_equal(fields["p_p"], state.p_p)

    def test_peak_field_in_initial_snapshot(self, tmp_path):
        grid = Grid1D(half_width=24000.0, cells=2048)
        state = initial_condition(InitialCondition(), grid, PARAMS)
        path = write_snapshot(state, 0, tmp_path)
        _, fields = read_snapshot(path)
        assert np.max(np.abs(fields["E"])) == pytest.approx(0.44373, rel=1e-3)
        peak_x = fields["x"][np.argmax(fields["E"])]
        assert abs(peak_x) < 3 * grid.dx

    def test_file_initial_condition_round_trip(self, tmp_path):
        grid = Grid1D(half_width=24000.0, cells=128)
        source = initial_condition(InitialCondition(), grid, PARAMS)
        source.p_e[:] = 0.25
        path = write_snapshot(source, 0, tmp_path)
        loaded = initial_condition(InitialCondition(kind="file", path=str(path)), grid, PARAMS)
        np.testing.assert_array_equal(loaded.n_e, source.n_e)
        np.testing.assert_array_equal(loaded.p_e, source.p_e)
        # E is rebuilt from the loaded charge distribution
        np.testing.assert_allclose(loaded.E, source.E, atol=1e-15)


class TestManifest:
    def test_digests_and_config_fidelity(self, tmp_path):
        grid = Grid1D(half_width=100.0, cells=64)
        state = initial_condition(InitialCondition(kind="uniform"), grid, PARAMS)
        series = write_series(
            [make_record(state, PARAMS, integrate(state.n_e, grid.dx))], tmp_path / "series.csv"
        )
        snap = write_snapshot(state, 0, tmp_path)
        cfg = RunConfig()
        manifest_path = write_manifest(format_config(cfg), tmp_path, [series, snap])
        manifest = json.loads(manifest_path.read_text())
        assert parse_config(manifest["config"]) == cfg
        for name, digest in manifest["outputs"].items():
            assert hashlib.sha256((tmp_path / name).read_bytes()).hexdigest() == digest
