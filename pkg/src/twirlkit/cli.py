"""Command-line front end.

Subcommands:
    report    run the pipeline for the configured state, emit one record
    sweep     run over seeded random states, emit records plus a summary
    validate  dry-run the config: build group, rep, state, and encoder

Exit codes: 0 success, 2 config error, 3 numeric/validation failure,
4 invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .config import build_encoder, build_group, build_rep, build_state, load_config
from .errors import ConfigError, InvariantViolation, ValidationError
from .runner import (
    SweepError,
    record_payload,
    records_to_csv,
    run_report,
    run_sweep,
    summary_payload,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3
EXIT_INVARIANT = 4

REPORT_SCHEMA = "twirlkit-report/1"
SWEEP_SCHEMA = "twirlkit-sweep/1"


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        Path(out_path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _json_document(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=True, allow_nan=False) + "\n"


def _resolve_output(args, cfg) -> tuple[str | None, str]:
    out = args.out if args.out is not None else cfg.output_path
    fmt = args.format if args.format is not None else cfg.output_format
    return out, fmt


def cmd_report(args) -> int:
    cfg = load_config(args.config)
    out, fmt = _resolve_output(args, cfg)
    record = run_report(cfg)
    if fmt == "csv":
        _emit(records_to_csv([record]), out)
    else:
        payload = {"schema": REPORT_SCHEMA, **record_payload(record, full=True)}
        _emit(_json_document(payload), out)
    if out:
        print(f"report written to {out}", file=sys.stderr)
    return EXIT_OK


def _write_sweep(records, summary, meta, out, fmt) -> None:
    if fmt == "csv":
        _emit(records_to_csv(records), out)
        return
    payload = {
        "schema": SWEEP_SCHEMA,
        **meta,
        "records": [record_payload(r, full=False) for r in records],
        "summary": summary_payload(summary) if summary is not None else None,
    }
    _emit(_json_document(payload), out)


def cmd_sweep(args) -> int:
    cfg = load_config(args.config)
    out, fmt = _resolve_output(args, cfg)
    count = args.count if args.count is not None else cfg.sweep_count
    seed = args.seed if args.seed is not None else cfg.sweep_seed
    if count is None:
        raise ConfigError("sweep count missing: pass --count or set sweep.count")
    if seed is None:
        raise ConfigError("sweep seed missing: pass --seed or set sweep.seed")

    try:
        records, summary = run_sweep(cfg, count, seed, workers=args.workers)
    except SweepError as e:
        # Flush whatever completed, then report the failing seed.
        if e.partial:
            meta = {"count": len(e.partial), "base_seed": seed, "failed_seed": e.failing_seed}
            _write_sweep(e.partial, None, meta, out, fmt)
            if out:
                print(
                    f"partial results ({len(e.partial)} records) written to {out}",
                    file=sys.stderr,
                )
        print(f"error: {e}", file=sys.stderr)
        return _exit_code_for(e.cause)

    _write_sweep(records, summary, {"count": count, "base_seed": seed}, out, fmt)
    if out:
        print(f"sweep ({count} records) written to {out}", file=sys.stderr)
    print(
        "max violations: "
        f"particle {summary.max_particle_violation:.3e}, "
        f"wave {summary.max_wave_violation:.3e}, "
        f"identity {summary.max_identity_deviation:.3e}, "
        f"complementarity {summary.max_complementarity_violation:.3e}",
        file=sys.stderr,
    )
    return EXIT_OK


def cmd_validate(args) -> int:
    cfg = load_config(args.config)
    group = build_group(cfg)
    print(f"group: order {group.order}, identity {group.identity}, "
          f"abelian {'yes' if group.is_abelian() else 'no'}")
    rep = build_rep(cfg, group)
    print(f"rep: kind {cfg.rep['kind']}, dim {rep.dim}")
    rho, seed_used = build_state(cfg, rep.dim)
    rank = int((rho.eigenvalues() > 1e-12).sum())
    seed_note = f", seed {seed_used}" if seed_used is not None else ""
    print(f"state: kind {cfg.state['kind']}, dim {rho.dim}, numerical rank {rank}{seed_note}")
    encoder = build_encoder(cfg, rep.dim)
    kind = cfg.encoder if isinstance(cfg.encoder, str) else "matrices"
    print(f"wave encoder: {kind}, {len(encoder)} unitaries, complete {encoder.complete}")
    print("config ok")
    return EXIT_OK


def _exit_code_for(exc: Exception) -> int:
    if isinstance(exc, ConfigError):
        return EXIT_CONFIG
    if isinstance(exc, InvariantViolation):
        return EXIT_INVARIANT
    if isinstance(exc, (ValidationError, ValueError, ArithmeticError, np.linalg.LinAlgError)):
        return EXIT_NUMERIC
    raise exc


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twirlkit",
        description="Group-twirl symmetry/asymmetry measures and complementarity certification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    rep = sub.add_parser("report", help="run one configured state and emit a record")
    rep.add_argument("--config", required=True, help="JSON config file")
    rep.add_argument("--out", default=None, help="output file (default: stdout)")
    rep.add_argument("--format", choices=("json", "csv"), default=None)
    rep.set_defaults(func=cmd_report)

    sw = sub.add_parser("sweep", help="run seeded random states and emit records + summary")
    sw.add_argument("--config", required=True, help="JSON config file")
    sw.add_argument("--count", type=int, default=None, help="number of records")
    sw.add_argument("--seed", type=int, default=None, help="base seed; record i uses seed+i")
    sw.add_argument("--out", default=None, help="output file (default: stdout)")
    sw.add_argument("--format", choices=("json", "csv"), default=None)
    sw.add_argument("--workers", type=int, default=1, help="parallel worker processes")
    sw.set_defaults(func=cmd_sweep)

    val = sub.add_parser("validate", help="dry-run: build group/rep/state/encoder and report")
    val.add_argument("--config", required=True, help="JSON config file")
    val.set_defaults(func=cmd_validate)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except InvariantViolation as e:
        print(f"invariant violation: {e}", file=sys.stderr)
        return EXIT_INVARIANT
    except (ValidationError, ValueError, ArithmeticError, np.linalg.LinAlgError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    raise SystemExit(main())
