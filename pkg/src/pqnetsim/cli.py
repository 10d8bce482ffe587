"""Command-line front end: scenario ingestion, dispatch, CSV/JSON emission.

Subcommands: ``check``, ``simulate``, ``adversary``, ``kms``, ``sweep`` and
``profiles``.  Exit codes follow a fixed taxonomy: 0 on success, 1 for a
legitimate negative verdict (timing infeasible, intrusion flagged) so
pipelines can branch without parsing JSON, and 2 for malformed input.

Every command is a pure function of its input files and flags: all
randomness flows from the scenario seed or the ``--seed`` override, outputs
are assembled in deterministic order, and re-running an invocation
reproduces identical bytes.  CSV files always start with a header row and
format numbers with shortest round-trip precision.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import engine, kms, model, timing
from .adversary import detect, qber_of
from .errors import ParameterError, ScenarioValidationError

__all__ = ["CommandResult", "main", "build_parser"]

EXIT_OK = 0
EXIT_NEGATIVE_VERDICT = 1
EXIT_INPUT_ERROR = 2

TRIALS_CSV_COLUMNS = ["trial_index", "success", "failure_reason", "slots_used", "t_dist_s", "f_end"]


@dataclass(frozen=True)
class CommandResult:
    """Exit code plus the files a command wrote."""

    exit_code: int
    artifacts: tuple[str, ...] = ()


def _fmt_cell(value) -> str:
    """Shortest round-trip formatting for CSV cells; absent values are empty."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _dump_json(data) -> str:
    return json.dumps(data, sort_keys=True, indent=2)


def _write_csv(path: Path, header: list[str], rows: list[list]) -> None:
    with path.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt_cell(cell) for cell in row])


def _out_dir(args) -> Path:
    out = Path(args.out)
    try:
        out.mkdir(parents=True, exist_ok=True)
        probe = out / ".write_probe"
        probe.touch()
        probe.unlink()
    except OSError as exc:
        raise ParameterError(f"output directory {out} is not writable: {exc}") from exc
    return out


def _load_registry(args) -> model.CryptoRegistry:
    if args.profiles:
        return model.load_registry(args.profiles)
    return model.default_registry()


def _load_valid_scenario(args) -> model.ScenarioConfig:
    config = model.load_scenario(args.scenario, _load_registry(args))
    violations = model.validate_scenario(config)
    if violations:
        raise ScenarioValidationError(violations)
    return config


def _print_violations(exc: ScenarioValidationError) -> None:
    print(_dump_json({"violations": [{"path": v.path, "message": v.message} for v in exc.violations]}))


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_check(args) -> CommandResult:
    config = _load_valid_scenario(args)
    result = timing.check_scenario(config)
    payload = result.as_dict()
    payload["protocol"] = config.protocol.value
    print(_dump_json(payload))
    return CommandResult(EXIT_OK if result.feasible else EXIT_NEGATIVE_VERDICT)


def cmd_simulate(args) -> CommandResult:
    config = _load_valid_scenario(args)
    out = _out_dir(args)
    outcomes = engine.run_trials(config, args.trials, args.seed, max_slots=args.max_slots)
    summary = engine.summarize(config, outcomes)

    rows = [
        [
            i,
            o.success,
            o.failure_reason.value if o.failure_reason else None,
            o.slots_used,
            o.t_dist,
            o.f_end,
        ]
        for i, o in enumerate(outcomes)
    ]
    trials_path = out / "trials.csv"
    _write_csv(trials_path, TRIALS_CSV_COLUMNS, rows)
    summary_path = out / "summary.json"
    summary_path.write_text(_dump_json(summary.as_dict()) + "\n", encoding="utf-8")

    print(_dump_json(summary.as_dict()))
    print(f"wrote {trials_path} and {summary_path}", file=sys.stderr)
    return CommandResult(EXIT_OK, (str(trials_path), str(summary_path)))


def cmd_adversary(args) -> CommandResult:
    config = _load_valid_scenario(args)
    if config.adversary is None:
        raise ParameterError("scenario has no adversary block; nothing to detect")
    out = _out_dir(args)
    master = config.seed if args.seed is None else args.seed
    baseline_config = dataclasses.replace(config, adversary=None)

    baseline_seed = engine.derive_stream_seed(master, "baseline")
    observed_seed = engine.derive_stream_seed(master, "observed")
    baseline = engine.run_trials(baseline_config, args.baseline_trials, baseline_seed, max_slots=args.max_slots)
    observed = engine.run_trials(config, args.observed_trials, observed_seed, max_slots=args.max_slots)
    baseline_qber = [_qber_of_outcome(o) for o in baseline if o.success]
    observed_qber = [_qber_of_outcome(o) for o in observed if o.success]
    if len(baseline_qber) < 2 or len(observed_qber) < 2:
        raise ParameterError(
            "not enough successful trials to form QBER samples "
            f"(baseline {len(baseline_qber)}, observed {len(observed_qber)}); raise the trial counts"
        )

    report = detect(baseline_qber, observed_qber, args.threshold_sigma)
    samples_path = out / "samples.csv"
    rows = [["baseline", i, q] for i, q in enumerate(baseline_qber)]
    rows += [["observed", i, q] for i, q in enumerate(observed_qber)]
    _write_csv(samples_path, ["side", "sample_index", "qber"], rows)
    report_path = out / "detection.json"
    report_path.write_text(_dump_json(report.as_dict()) + "\n", encoding="utf-8")

    print(_dump_json(report.as_dict()))
    print(f"wrote {samples_path} and {report_path}", file=sys.stderr)
    code = EXIT_NEGATIVE_VERDICT if report.flagged else EXIT_OK
    return CommandResult(code, (str(samples_path), str(report_path)))


def _qber_of_outcome(outcome: engine.TrialOutcome) -> float:
    assert outcome.f_end is not None
    return qber_of(outcome.f_end)


def cmd_kms(args) -> CommandResult:
    out = _out_dir(args)
    rows = []
    for n in args.nodes:
        if args.mode == "hierarchical":
            if args.cluster_size is None:
                raise ParameterError("--cluster-size is required in hierarchical mode")
            handshakes = kms.hierarchical_handshakes(n, args.cluster_size)
            cluster = args.cluster_size
        else:
            handshakes = kms.full_mesh_handshakes(n)
            cluster = None
        t_key = kms.rekey_cycle_time(handshakes, args.handshake_time, args.auth_time, args.parallelism)
        rows.append([n, args.mode, cluster, handshakes, t_key])
    path = out / "kms.csv"
    _write_csv(path, ["n", "mode", "cluster_size", "handshakes", "t_key_s"], rows)
    print(f"wrote {path}", file=sys.stderr)
    return CommandResult(EXIT_OK, (str(path),))


def cmd_sweep(args) -> CommandResult:
    config = _load_valid_scenario(args)
    out = _out_dir(args)
    try:
        values = [float(v) for v in args.values.split(",") if v != ""]
    except ValueError as exc:
        raise ParameterError(f"--values must be a comma-separated list of numbers: {exc}") from exc
    if not values:
        raise ParameterError("--values must contain at least one number")
    master = config.seed if args.seed is None else args.seed
    rows = engine.sweep(config, args.param, values, args.trials, master, max_slots=args.max_slots)
    path = out / "sweep.csv"
    _write_csv(
        path,
        ["param", "value", "n_trials", "success_rate", "mean_t_dist_s", "f_end_mean", "f_end_min"],
        [
            [args.param, value, s.n_trials, s.success_rate, s.mean_t_dist, s.f_end_mean, s.f_end_min]
            for value, s in rows
        ],
    )
    print(f"wrote {path}", file=sys.stderr)
    return CommandResult(EXIT_OK, (str(path),))


def cmd_profiles(args) -> CommandResult:
    registry = _load_registry(args)
    profiles = registry.profiles()
    if args.format == "csv":
        writer = csv.writer(sys.stdout, lineterminator="\n")
        header = [
            "name",
            "kind",
            "t_encrypt",
            "t_decrypt",
            "public_key_bytes",
            "ciphertext_or_sig_bytes",
            "claimed_security_bits",
            "illustrative",
        ]
        writer.writerow(header)
        for p in profiles:
            writer.writerow(
                [
                    p.name,
                    p.kind.value,
                    _fmt_cell(p.t_encrypt),
                    _fmt_cell(p.t_decrypt),
                    p.public_key_bytes,
                    p.ciphertext_or_sig_bytes,
                    p.claimed_security_bits,
                    _fmt_cell(p.illustrative),
                ]
            )
    else:
        print(
            _dump_json(
                [
                    {
                        "name": p.name,
                        "kind": p.kind.value,
                        "t_encrypt": p.t_encrypt,
                        "t_decrypt": p.t_decrypt,
                        "public_key_bytes": p.public_key_bytes,
                        "ciphertext_or_sig_bytes": p.ciphertext_or_sig_bytes,
                        "claimed_security_bits": p.claimed_security_bits,
                        "illustrative": p.illustrative,
                    }
                    for p in profiles
                ]
            )
        )
    return CommandResult(EXIT_OK)


# ---------------------------------------------------------------------------
# Parser and entry point
# ---------------------------------------------------------------------------

def _seed_type(text: str) -> int:
    value = int(text)
    if not (0 <= value < 2**64):
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return value


def _add_global_options(parser: argparse.ArgumentParser, suppress: bool) -> None:
    """Global flags, accepted both before and after the subcommand.

    The subcommand-position copies default to SUPPRESS so they only override
    the top-level values when actually given.
    """

    def dflt(value):
        return argparse.SUPPRESS if suppress else value

    parser.add_argument(
        "--seed", type=_seed_type, default=dflt(None), help="override the scenario's master seed"
    )
    parser.add_argument(
        "--out", default=dflt("."), help="directory for written artifacts (default: current dir)"
    )
    parser.add_argument(
        "--format", choices=("csv", "json"), default=dflt("json"), help="stdout format where applicable"
    )
    parser.add_argument(
        "--profiles", default=dflt(None), help="crypto-profile registry JSON (default: shipped profiles)"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pqnetsim",
        description=(
            "Deterministic simulator and feasibility analyzer for quantum networks "
            "whose classical control traffic is protected by post-quantum cryptography."
        ),
    )
    _add_global_options(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _add_global_options(common, suppress=True)

    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser(
        "check", parents=[common], help="evaluate the timing feasibility inequality for a scenario"
    )
    p_check.add_argument("scenario")
    p_check.set_defaults(func=cmd_check)

    p_sim = sub.add_parser("simulate", parents=[common], help="run the Monte Carlo engine and write trials.csv / summary.json")
    p_sim.add_argument("scenario")
    p_sim.add_argument("--trials", type=int, default=None, help="override the scenario's n_trials")
    p_sim.add_argument("--max-slots", type=int, default=engine.DEFAULT_MAX_SLOTS, help="per-trial slot budget")
    p_sim.set_defaults(func=cmd_simulate)

    p_adv = sub.add_parser("adversary", parents=[common], help="run intercepted vs clean traffic and test for anomalies")
    p_adv.add_argument("scenario")
    p_adv.add_argument("--baseline-trials", type=int, default=2000, help="trials for the attack-free baseline")
    p_adv.add_argument("--observed-trials", type=int, default=500, help="trials for the intercepted run")
    p_adv.add_argument("--threshold-sigma", type=float, default=3.0, help="flagging threshold in sigmas")
    p_adv.add_argument("--max-slots", type=int, default=engine.DEFAULT_MAX_SLOTS, help="per-trial slot budget")
    p_adv.set_defaults(func=cmd_adversary)

    p_kms = sub.add_parser("kms", parents=[common], help="handshake counts and re-key cycle times")
    p_kms.add_argument("--nodes", type=int, nargs="+", required=True, help="network sizes to tabulate")
    p_kms.add_argument("--mode", choices=("full_mesh", "hierarchical"), default="full_mesh")
    p_kms.add_argument("--cluster-size", type=int, default=None)
    p_kms.add_argument("--handshake-time", type=float, default=2e-3, help="seconds per handshake (KEM included)")
    p_kms.add_argument("--auth-time", type=float, default=0.0, help="authentication overhead per handshake")
    p_kms.add_argument("--parallelism", type=int, default=1, help="concurrent handshake lanes")
    p_kms.set_defaults(func=cmd_kms)

    p_sweep = sub.add_parser("sweep", parents=[common], help="Monte Carlo over a list of values for one numeric config field")
    p_sweep.add_argument("scenario")
    p_sweep.add_argument("--param", required=True, help="dot path, e.g. nodes.0.memory.t_coh")
    p_sweep.add_argument("--values", required=True, help="comma-separated numbers")
    p_sweep.add_argument("--trials", type=int, default=None, help="override the scenario's n_trials")
    p_sweep.add_argument("--max-slots", type=int, default=engine.DEFAULT_MAX_SLOTS, help="per-trial slot budget")
    p_sweep.set_defaults(func=cmd_sweep)

    p_prof = sub.add_parser("profiles", parents=[common], help="list the crypto-profile registry")
    p_prof.set_defaults(func=cmd_profiles)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result: CommandResult = args.func(args)
    except ScenarioValidationError as exc:
        _print_violations(exc)
        return EXIT_INPUT_ERROR
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
