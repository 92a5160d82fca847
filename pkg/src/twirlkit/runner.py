"""Config-driven experiment runner: single reports, sweeps, serialization.

A report composes the full pipeline for one state: measures, the particle
accessible-information sandwich, and the wave-channel Holevo quantity. A
sweep repeats it over seeded random states and certifies the inequalities
record by record. Identical config and seed produce byte-identical output,
regardless of the worker count.
"""

from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .config import (
    ExperimentConfig,
    build_encoder,
    build_group,
    build_rep,
    build_state,
    parse_config,
)
from .encodings import particle_ensemble, wave_encode
from .errors import ConfigError, InvariantViolation, ValidationError
from .info import InfoSandwich, accessible_info_lower, holevo_chi
from .measures import MeasureReport, complementarity_report
from .serialize import complex_matrix_to_pairs, digest_array, digest_json

RECORD_TOL = 1e-9

CSV_COLUMNS = (
    "seed",
    "dim",
    "group_order",
    "S_rho",
    "S_twirl",
    "A",
    "W",
    "capacity",
    "part_lower",
    "part_chi",
    "wave_chi",
    "slack",
)


@dataclass(frozen=True)
class SweepRecord:
    """One certified pipeline result; scalar views feed the CSV columns."""

    seed: int | None
    measures: MeasureReport
    particle: InfoSandwich
    wave_chi: float
    digests: dict

    @property
    def dim(self) -> int:
        return self.measures.dim

    @property
    def group_order(self) -> int:
        return self.measures.group_order

    @property
    def particle_lower(self) -> float:
        return self.particle.lower

    @property
    def particle_chi(self) -> float:
        return self.particle.upper

    @property
    def particle_slack(self) -> float:
        return self.measures.asymmetry - self.particle.lower

    @property
    def wave_slack(self) -> float:
        return self.measures.symmetry - self.wave_chi

    @property
    def identity_deviation(self) -> float:
        m = self.measures
        return abs(m.asymmetry + m.symmetry - m.capacity)

    @property
    def complementarity_slack(self) -> float:
        return self.measures.capacity - self.particle.lower - self.wave_chi


def check_record(record: SweepRecord, tol: float = RECORD_TOL) -> list[str]:
    """Names of violated record inequalities, empty when all hold."""
    m = record.measures
    out = []
    if record.particle_lower > m.asymmetry + tol:
        out.append(
            f"particle lower bound {record.particle_lower!r} exceeds asymmetry {m.asymmetry!r}"
        )
    if record.wave_chi > m.symmetry + tol:
        out.append(f"wave chi {record.wave_chi!r} exceeds symmetry {m.symmetry!r}")
    if record.identity_deviation > tol:
        out.append(f"A + W misses capacity by {record.identity_deviation:.3e}")
    if record.particle_lower + record.wave_chi > m.capacity + tol:
        out.append(
            f"complementarity sum {record.particle_lower + record.wave_chi!r} "
            f"exceeds capacity {m.capacity!r}"
        )
    return out


def _stage(name: str, exc: Exception) -> Exception:
    return type(exc)(f"while building {name}: {exc}")


def run_report(cfg: ExperimentConfig, *, state_seed: int | None = None) -> SweepRecord:
    """Run the full pipeline for one state and certify the record.

    ``state_seed`` overrides the configured random-state seed (sweeps use it);
    raises :class:`InvariantViolation` if any record inequality fails.
    """
    try:
        group = build_group(cfg)
    except (ValidationError, ValueError) as e:
        raise _stage("group", e) from e
    try:
        rep = build_rep(cfg, group)
    except ConfigError:
        raise
    except (ValidationError, ValueError) as e:
        raise _stage("rep", e) from e
    rho, seed_used = build_state(cfg, rep.dim, seed_override=state_seed)
    try:
        encoder = build_encoder(cfg, rep.dim)
    except ConfigError:
        raise
    except (ValidationError, ValueError) as e:
        raise _stage("wave encoder", e) from e

    measures = complementarity_report(rep, rho)

    particle = accessible_info_lower(
        particle_ensemble(rep, rho),
        cfg.budget,
        seed=cfg.optimizer_seed if cfg.optimizer_seed is not None else (seed_used or 0),
    )
    wave_chi = holevo_chi(wave_encode(encoder, rep, rho))

    record = SweepRecord(
        seed=seed_used,
        measures=measures,
        particle=particle,
        wave_chi=wave_chi,
        digests={
            "group": digest_array(group.cayley),
            "rep": digest_array(rep.matrices),
            "state": digest_array(rho.data),
            "config": digest_json(cfg.raw),
        },
    )
    violations = check_record(record)
    if violations:
        raise InvariantViolation(
            f"record (seed={seed_used}) violates: " + "; ".join(violations)
        )
    return record


@dataclass(frozen=True)
class Stats:
    min: float
    mean: float
    max: float

    @classmethod
    def over(cls, values) -> "Stats":
        vals = list(values)
        return cls(min=min(vals), mean=sum(vals) / len(vals), max=max(vals))


@dataclass(frozen=True)
class SweepSummary:
    """Aggregate certification data for a sweep."""

    count: int
    max_particle_violation: float
    max_wave_violation: float
    max_identity_deviation: float
    max_complementarity_violation: float
    asymmetry: Stats
    symmetry: Stats
    slack: Stats


class SweepError(RuntimeError):
    """A sweep record failed; carries the partial results for flushing."""

    def __init__(self, failing_seed: int, partial: list[SweepRecord], cause: Exception):
        super().__init__(f"sweep failed at seed {failing_seed}: {cause}")
        self.failing_seed = failing_seed
        self.partial = partial
        self.cause = cause


def summarize(records: list[SweepRecord]) -> SweepSummary:
    m = [r.measures for r in records]
    return SweepSummary(
        count=len(records),
        max_particle_violation=max(r.particle_lower - r.measures.asymmetry for r in records),
        max_wave_violation=max(r.wave_chi - r.measures.symmetry for r in records),
        max_identity_deviation=max(r.identity_deviation for r in records),
        max_complementarity_violation=max(-r.complementarity_slack for r in records),
        asymmetry=Stats.over(x.asymmetry for x in m),
        symmetry=Stats.over(x.symmetry for x in m),
        slack=Stats.over(r.complementarity_slack for r in records),
    )


def _sweep_worker(args) -> SweepRecord:
    raw, seed = args
    return run_report(parse_config(raw), state_seed=seed)


def run_sweep(
    cfg: ExperimentConfig,
    count: int,
    base_seed: int,
    *,
    workers: int = 1,
) -> tuple[list[SweepRecord], SweepSummary]:
    """Run ``count`` reports with state seeds base_seed .. base_seed+count-1.

    Records are computed independently (in a process pool when workers > 1)
    and returned sorted by seed, so the worker count never changes the
    output. On a failing record, raises :class:`SweepError` carrying every
    record completed before the failure.
    """
    if count < 1:
        raise ConfigError(f"sweep count must be >= 1, got {count}")
    if cfg.state["kind"] != "random":
        raise ConfigError("sweep requires a state of kind=random")
    seeds = [base_seed + i for i in range(count)]

    records: list[SweepRecord] = []
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = pool.map(_sweep_worker, [(cfg.raw, s) for s in seeds])
            for seed in seeds:
                try:
                    records.append(next(results))
                except StopIteration:
                    break
                except Exception as e:
                    raise SweepError(seed, records, e) from e
    else:
        for seed in seeds:
            try:
                records.append(run_report(cfg, state_seed=seed))
            except Exception as e:
                raise SweepError(seed, records, e) from e

    records.sort(key=lambda r: r.seed)
    return records, summarize(records)


def measures_payload(m: MeasureReport) -> dict:
    return {
        "dim": m.dim,
        "group_order": m.group_order,
        "entropy_rho": m.entropy_rho,
        "entropy_twirl": m.entropy_twirl,
        "asymmetry": m.asymmetry,
        "symmetry": m.symmetry,
        "capacity": m.capacity,
        "identity_ok": m.identity_ok,
        "bound_ok": m.bound_ok,
        "twirl_monotone_ok": m.twirl_monotone_ok,
    }


def record_payload(record: SweepRecord, *, full: bool) -> dict:
    """JSON-ready view of a record; ``full`` adds the POVM and trace."""
    payload = {
        "seed": record.seed,
        "dim": record.dim,
        "group_order": record.group_order,
        "measures": measures_payload(record.measures),
        "particle": {"lower": record.particle_lower, "chi": record.particle_chi},
        "wave": {"chi": record.wave_chi},
        "slacks": {
            "particle": record.particle_slack,
            "wave": record.wave_slack,
            "identity_deviation": record.identity_deviation,
            "complementarity": record.complementarity_slack,
        },
        "digests": record.digests,
    }
    if full:
        payload["particle"]["best_povm"] = [
            complex_matrix_to_pairs(e) for e in record.particle.best_povm.elements
        ]
        payload["particle"]["optimizer_trace"] = [
            {"stage": t.stage, "restart": t.restart, "iteration": t.iteration, "value": t.value}
            for t in record.particle.optimizer_trace
        ]
    return payload


def summary_payload(s: SweepSummary) -> dict:
    return {
        "count": s.count,
        "max_particle_violation": s.max_particle_violation,
        "max_wave_violation": s.max_wave_violation,
        "max_identity_deviation": s.max_identity_deviation,
        "max_complementarity_violation": s.max_complementarity_violation,
        "asymmetry": {"min": s.asymmetry.min, "mean": s.asymmetry.mean, "max": s.asymmetry.max},
        "symmetry": {"min": s.symmetry.min, "mean": s.symmetry.mean, "max": s.symmetry.max},
        "slack": {"min": s.slack.min, "mean": s.slack.mean, "max": s.slack.max},
    }


def _csv_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def records_to_csv(records: list[SweepRecord]) -> str:
    """Fixed-column CSV; floats use shortest round-trip formatting."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in records:
        m = r.measures
        writer.writerow(
            [
                _csv_cell(r.seed),
                _csv_cell(r.dim),
                _csv_cell(r.group_order),
                _csv_cell(m.entropy_rho),
                _csv_cell(m.entropy_twirl),
                _csv_cell(m.asymmetry),
                _csv_cell(m.symmetry),
                _csv_cell(m.capacity),
                _csv_cell(r.particle_lower),
                _csv_cell(r.particle_chi),
                _csv_cell(r.wave_chi),
                _csv_cell(r.complementarity_slack),
            ]
        )
    return buf.getvalue()
