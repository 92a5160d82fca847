"""Report/sweep pipeline: records, invariants, summaries, serialization."""

from __future__ import annotations

import numpy as np
import pytest

from twirlkit import ConfigError, parse_config, run_report, run_sweep
from twirlkit.runner import (
    CSV_COLUMNS,
    SweepError,
    check_record,
    record_payload,
    records_to_csv,
    summarize,
)

from conftest import PAULI_X


def pairs(m) -> list:
    return [[[float(v.real), float(v.imag)] for v in row] for row in np.asarray(m, complex)]


FLIP_PURE = {
    "group": {"kind": "cyclic", "n": 2},
    "rep": {"kind": "matrices", "matrices": [pairs(np.eye(2)), pairs(PAULI_X)]},
    "state": {"kind": "matrix", "matrix": pairs(np.diag([1.0, 0.0]))},
}

D3_RANDOM = {
    "group": {"kind": "dihedral", "n": 3},
    "rep": {"kind": "regular"},
    "state": {"kind": "random", "rank": 2},
    "budget": {"restarts": 2, "iterations": 40},
}


class TestRunReport:
    def test_flip_pure_state_record(self):
        record = run_report(parse_config(FLIP_PURE))
        m = record.measures
        assert m.asymmetry == pytest.approx(1.0, abs=1e-9)
        assert abs(m.symmetry) <= 1e-9
        assert m.capacity == pytest.approx(1.0, abs=1e-9)
        assert record.particle_lower == pytest.approx(1.0, abs=1e-6)
        assert record.particle_chi == pytest.approx(1.0, abs=1e-9)
        assert abs(record.wave_chi) <= 1e-9
        assert not check_record(record)
        assert record.seed is None

    def test_trivial_group_mixed_state_all_zero(self):
        cfg = parse_config(
            {
                "group": {"kind": "cyclic", "n": 1},
                "rep": {"kind": "regular"},
                "state": {"kind": "fixture", "name": "maximally_mixed"},
            }
        )
        record = run_report(cfg)
        assert abs(record.measures.asymmetry) <= 1e-12
        assert abs(record.measures.symmetry) <= 1e-12
        assert abs(record.particle_lower) <= 1e-12
        assert abs(record.wave_chi) <= 1e-12

    def test_digests_are_stable(self):
        a = run_report(parse_config(FLIP_PURE))
        b = run_report(parse_config(FLIP_PURE))
        assert a.digests == b.digests

    def test_stage_context_in_errors(self):
        bad = {**FLIP_PURE, "group": {"kind": "cayley", "table": [[0, 1], [0, 1]]}}
        with pytest.raises(Exception, match="while building group"):
            run_report(parse_config(bad))


class TestRunSweep:
    def test_small_sweep_invariants(self):
        cfg = parse_config(D3_RANDOM)
        records, summary = run_sweep(cfg, 5, 7)
        assert [r.seed for r in records] == [7, 8, 9, 10, 11]
        for r in records:
            assert not check_record(r)
        assert summary.count == 5
        assert summary.max_identity_deviation <= 1e-9
        assert summary.max_particle_violation <= 1e-9
        assert summary.max_wave_violation <= 1e-9
        assert summary.max_complementarity_violation <= 1e-9
        assert summary.asymmetry.min <= summary.asymmetry.mean <= summary.asymmetry.max

    def test_deterministic_csv(self):
        cfg = parse_config(D3_RANDOM)
        a = records_to_csv(run_sweep(cfg, 4, 3)[0])
        b = records_to_csv(run_sweep(cfg, 4, 3)[0])
        assert a == b

    def test_workers_do_not_change_output(self):
        cfg = parse_config(D3_RANDOM)
        serial = records_to_csv(run_sweep(cfg, 4, 5, workers=1)[0])
        parallel = records_to_csv(run_sweep(cfg, 4, 5, workers=2)[0])
        assert serial == parallel

    def test_rejects_non_random_state(self):
        with pytest.raises(ConfigError, match="kind=random"):
            run_sweep(parse_config(FLIP_PURE), 3, 0)

    def test_rejects_zero_count(self):
        with pytest.raises(ConfigError, match="count"):
            run_sweep(parse_config(D3_RANDOM), 0, 0)

    def test_partial_results_on_failure(self, monkeypatch):
        import twirlkit.runner as runner_mod

        real = runner_mod.run_report

        def flaky(cfg, *, state_seed=None):
            if state_seed == 3:
                raise ValueError("synthetic failure")
            return real(cfg, state_seed=state_seed)

        monkeypatch.setattr(runner_mod, "run_report", flaky)
        with pytest.raises(SweepError) as exc_info:
            runner_mod.run_sweep(parse_config(D3_RANDOM), 6, 1)
        err = exc_info.value
        assert err.failing_seed == 3
        assert [r.seed for r in err.partial] == [1, 2]
        assert isinstance(err.cause, ValueError)


class TestSerialization:
    def test_csv_has_fixed_columns(self):
        record = run_report(parse_config(FLIP_PURE))
        text = records_to_csv([record])
        lines = text.strip().split("\n")
        assert lines[0] == ",".join(CSV_COLUMNS)
        assert len(lines) == 2
        cells = lines[1].split(",")
        assert cells[0] == ""  # no seed for an explicit-matrix state
        assert cells[1] == "2" and cells[2] == "2"

    def test_record_payload_levels(self):
        record = run_report(parse_config(FLIP_PURE))
        slim = record_payload(record, full=False)
        full = record_payload(record, full=True)
        assert "best_povm" not in slim["particle"]
        assert "best_povm" in full["particle"]
        assert full["particle"]["optimizer_trace"]
        assert slim["slacks"]["identity_deviation"] <= 1e-9

    def test_summary_values(self):
        cfg = parse_config(D3_RANDOM)
        records, summary = run_sweep(cfg, 3, 11)
        manual = summarize(records)
        assert summary == manual
