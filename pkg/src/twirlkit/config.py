"""Experiment configuration: JSON schema parsing and object builders.

The schema (documented field by field in the README):

    {
      "group":  {"kind": "cyclic"|"dihedral", "n": int}
              | {"kind": "cayley", "table": [[int, ...], ...]},
      "rep":    {"kind": "regular"} | {"kind": "matrices", "matrices": [M, ...]},
      "state":  {"kind": "matrix", "matrix": M}
              | {"kind": "random", "dim"?: int, "rank"?: int, "seed"?: int}
              | {"kind": "fixture", "name": "pure0"|"maximally_mixed"},
      "wave_encoder"?: "weyl" | "trivial"
                     | {"matrices": [M, ...], "complete"?: bool},
      "budget"?: {"restarts"?, "iterations"?, "grid_polar"?, "grid_azimuth"?,
                  "seed"?: int},
      "sweep"?:  {"count"?: int, "seed"?: int},
      "output"?: {"path"?: str, "format"?: "json"|"csv"}
    }

where M is a complex matrix as row-major [re, im] pairs. Parsing is strict:
unknown keys are rejected so typos fail loudly instead of being ignored.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .encodings import (
    WaveEncoder,
    trivial_encoder,
    wave_encoder_from_matrices,
    weyl_unitaries,
)
from .errors import ConfigError
from .groups import (
    FiniteGroup,
    UnitaryRep,
    cyclic_group,
    dihedral_group,
    group_from_cayley,
    regular_representation,
    rep_from_matrices,
)
from .info import OptimizerBudget
from .serialize import complex_matrix_from_pairs
from .states import DensityMatrix, random_density, validate_density

STATE_FIXTURES = ("pure0", "maximally_mixed")


@dataclass(frozen=True)
class ExperimentConfig:
    """Parsed, structurally validated experiment description."""

    group: dict
    rep: dict
    state: dict
    encoder: str | dict
    budget: OptimizerBudget
    optimizer_seed: int | None
    sweep_count: int | None
    sweep_seed: int | None
    output_path: str | None
    output_format: str
    raw: dict


def _expect_mapping(obj, where: str) -> dict:
    if not isinstance(obj, dict):
        raise ConfigError(f"{where}: expected an object, got {type(obj).__name__}")
    return obj


def _reject_unknown(obj: dict, allowed: set[str], where: str) -> None:
    unknown = sorted(set(obj) - allowed)
    if unknown:
        raise ConfigError(f"{where}: unknown key(s) {', '.join(unknown)}")


def _get_int(obj: dict, key: str, where: str, *, minimum: int | None = None) -> int:
    v = obj.get(key)
    if not isinstance(v, int) or isinstance(v, bool):
        raise ConfigError(f"{where}.{key}: expected an integer, got {v!r}")
    if minimum is not None and v < minimum:
        raise ConfigError(f"{where}.{key}: must be >= {minimum}, got {v}")
    return v


def _opt_int(obj: dict, key: str, where: str, *, minimum: int | None = None) -> int | None:
    if key not in obj:
        return None
    return _get_int(obj, key, where, minimum=minimum)


def _parse_group(obj) -> dict:
    spec = _expect_mapping(obj, "group")
    kind = spec.get("kind")
    if kind in ("cyclic", "dihedral"):
        _reject_unknown(spec, {"kind", "n"}, "group")
        _get_int(spec, "n", "group", minimum=1)
    elif kind == "cayley":
        _reject_unknown(spec, {"kind", "table"}, "group")
        if not isinstance(spec.get("table"), list):
            raise ConfigError("group.table: expected a list of rows")
    else:
        raise ConfigError(f"group.kind: expected cyclic|dihedral|cayley, got {kind!r}")
    return spec


def _parse_rep(obj) -> dict:
    spec = _expect_mapping(obj, "rep")
    kind = spec.get("kind")
    if kind == "regular":
        _reject_unknown(spec, {"kind"}, "rep")
    elif kind == "matrices":
        _reject_unknown(spec, {"kind", "matrices"}, "rep")
        if not isinstance(spec.get("matrices"), list) or not spec["matrices"]:
            raise ConfigError("rep.matrices: expected a non-empty list of matrices")
    else:
        raise ConfigError(f"rep.kind: expected regular|matrices, got {kind!r}")
    return spec


def _parse_state(obj) -> dict:
    spec = _expect_mapping(obj, "state")
    kind = spec.get("kind")
    if kind == "matrix":
        _reject_unknown(spec, {"kind", "matrix"}, "state")
        if "matrix" not in spec:
            raise ConfigError("state.matrix: required for kind=matrix")
    elif kind == "random":
        _reject_unknown(spec, {"kind", "dim", "rank", "seed"}, "state")
        _opt_int(spec, "dim", "state", minimum=1)
        _opt_int(spec, "rank", "state", minimum=1)
        _opt_int(spec, "seed", "state")
    elif kind == "fixture":
        _reject_unknown(spec, {"kind", "name"}, "state")
        if spec.get("name") not in STATE_FIXTURES:
            raise ConfigError(
                f"state.name: expected one of {', '.join(STATE_FIXTURES)}, got {spec.get('name')!r}"
            )
    else:
        raise ConfigError(f"state.kind: expected matrix|random|fixture, got {kind!r}")
    return spec


def _parse_encoder(obj) -> str | dict:
    if obj is None:
        return "weyl"
    if isinstance(obj, str):
        if obj not in ("weyl", "trivial"):
            raise ConfigError(f"wave_encoder: expected weyl|trivial, got {obj!r}")
        return obj
    spec = _expect_mapping(obj, "wave_encoder")
    _reject_unknown(spec, {"matrices", "complete"}, "wave_encoder")
    if not isinstance(spec.get("matrices"), list) or not spec["matrices"]:
        raise ConfigError("wave_encoder.matrices: expected a non-empty list of matrices")
    if "complete" in spec and not isinstance(spec["complete"], bool):
        raise ConfigError("wave_encoder.complete: expected a boolean")
    return spec


def _parse_budget(obj) -> tuple[OptimizerBudget, int | None]:
    if obj is None:
        return OptimizerBudget(), None
    spec = _expect_mapping(obj, "budget")
    _reject_unknown(
        spec, {"restarts", "iterations", "grid_polar", "grid_azimuth", "seed"}, "budget"
    )
    kwargs = {}
    for key in ("restarts", "iterations", "grid_polar", "grid_azimuth"):
        v = _opt_int(spec, key, "budget", minimum=1)
        if v is not None:
            kwargs[key] = v
    return OptimizerBudget(**kwargs), _opt_int(spec, "seed", "budget")


def parse_config(data, *, source: str = "<config>") -> ExperimentConfig:
    """Validate raw JSON data against the schema and normalize it."""
    top = _expect_mapping(data, source)
    _reject_unknown(
        top, {"group", "rep", "state", "wave_encoder", "budget", "sweep", "output"}, source
    )
    for required in ("group", "rep", "state"):
        if required not in top:
            raise ConfigError(f"{source}: missing required section '{required}'")

    group = _parse_group(top["group"])
    rep = _parse_rep(top["rep"])
    state = _parse_state(top["state"])
    encoder = _parse_encoder(top.get("wave_encoder"))
    budget, optimizer_seed = _parse_budget(top.get("budget"))

    sweep_count = sweep_seed = None
    if "sweep" in top:
        sw = _expect_mapping(top["sweep"], "sweep")
        _reject_unknown(sw, {"count", "seed"}, "sweep")
        sweep_count = _opt_int(sw, "count", "sweep", minimum=1)
        sweep_seed = _opt_int(sw, "seed", "sweep")

    output_path = None
    output_format = "json"
    if "output" in top:
        out = _expect_mapping(top["output"], "output")
        _reject_unknown(out, {"path", "format"}, "output")
        if "path" in out:
            if not isinstance(out["path"], str) or not out["path"]:
                raise ConfigError("output.path: expected a non-empty string")
            output_path = out["path"]
        if "format" in out:
            if out["format"] not in ("json", "csv"):
                raise ConfigError(f"output.format: expected json|csv, got {out['format']!r}")
            output_format = out["format"]

    return ExperimentConfig(
        group=group,
        rep=rep,
        state=state,
        encoder=encoder,
        budget=budget,
        optimizer_seed=optimizer_seed,
        sweep_count=sweep_count,
        sweep_seed=sweep_seed,
        output_path=output_path,
        output_format=output_format,
        raw=top,
    )


def load_config(path) -> ExperimentConfig:
    """Read and parse a JSON config file."""
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"cannot read config {p}: {e}") from e
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(f"{p}: invalid JSON at line {e.lineno} column {e.colno}: {e.msg}") from e
    return parse_config(data, source=str(p))


def build_group(cfg: ExperimentConfig) -> FiniteGroup:
    spec = cfg.group
    if spec["kind"] == "cyclic":
        return cyclic_group(spec["n"])
    if spec["kind"] == "dihedral":
        return dihedral_group(spec["n"])
    return group_from_cayley(spec["table"])


def build_rep(cfg: ExperimentConfig, group: FiniteGroup) -> UnitaryRep:
    spec = cfg.rep
    if spec["kind"] == "regular":
        return regular_representation(group)
    try:
        mats = np.stack(
            [
                complex_matrix_from_pairs(m, what=f"rep.matrices[{i}]")
                for i, m in enumerate(spec["matrices"])
            ]
        )
    except ValueError as e:
        raise ConfigError(str(e)) from e
    return rep_from_matrices(group, mats)


def build_state(
    cfg: ExperimentConfig, dim: int, *, seed_override: int | None = None
) -> tuple[DensityMatrix, int | None]:
    """Realize the state spec at the representation's dimension.

    Returns the state and the seed actually used (None for deterministic
    specs). ``seed_override`` replaces the configured seed during sweeps.
    """
    spec = cfg.state
    kind = spec["kind"]
    if kind == "matrix":
        try:
            m = complex_matrix_from_pairs(spec["matrix"], what="state.matrix")
        except ValueError as e:
            raise ConfigError(str(e)) from e
        if m.shape != (dim, dim):
            raise ConfigError(
                f"state.matrix: shape {m.shape} does not match representation dim {dim}"
            )
        return validate_density(m, what="state.matrix"), None
    if kind == "random":
        sdim = spec.get("dim", dim)
        if sdim != dim:
            raise ConfigError(f"state.dim: {sdim} does not match representation dim {dim}")
        rank = spec.get("rank", dim)
        if not 1 <= rank <= dim:
            raise ConfigError(f"state.rank: must be in [1, {dim}], got {rank}")
        seed = seed_override if seed_override is not None else spec.get("seed")
        if seed is None:
            raise ConfigError("state.seed: required for kind=random (or pass --seed)")
        return random_density(dim, rank, seed), seed
    # fixture
    name = spec["name"]
    if name == "pure0":
        m = np.zeros((dim, dim), dtype=complex)
        m[0, 0] = 1.0
    else:  # maximally_mixed
        m = np.eye(dim, dtype=complex) / dim
    return validate_density(m, what=f"fixture {name}"), None


def build_encoder(cfg: ExperimentConfig, dim: int) -> WaveEncoder:
    spec = cfg.encoder
    if spec == "weyl":
        return weyl_unitaries(dim)
    if spec == "trivial":
        return trivial_encoder(dim)
    try:
        mats = np.stack(
            [
                complex_matrix_from_pairs(m, what=f"wave_encoder.matrices[{i}]")
                for i, m in enumerate(spec["matrices"])
            ]
        )
    except ValueError as e:
        raise ConfigError(str(e)) from e
    if mats.shape[1] != dim or mats.shape[2] != dim:
        raise ConfigError(
            f"wave_encoder.matrices: shape {mats.shape[1:]} does not match dim {dim}"
        )
    return wave_encoder_from_matrices(mats, complete=bool(spec.get("complete", False)))
