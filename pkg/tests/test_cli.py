"""Command-line interface: exit codes, artifacts, reproducibility."""

import csv
import json
from pathlib import Path

import pytest

from pqnetsim import HopTiming, timing
from pqnetsim.cli import main

SCENARIO_DIR = Path(__file__).resolve().parent.parent / "scenarios"


def write_profiles(tmp_path: Path, enc: float, dec: float) -> Path:
    profiles = [
        {
            "name": "test-sender",
            "kind": "signature",
            "t_encrypt": enc,
            "t_decrypt": 0.0,
            "public_key_bytes": 32,
            "ciphertext_or_sig_bytes": 64,
            "claimed_security_bits": 128,
        },
        {
            "name": "test-receiver",
            "kind": "signature",
            "t_encrypt": 0.0,
            "t_decrypt": dec,
            "public_key_bytes": 32,
            "ciphertext_or_sig_bytes": 64,
            "claimed_security_bits": 128,
        },
    ]
    path = tmp_path / "profiles.json"
    path.write_text(json.dumps(profiles))
    return path


def scenario_dict(
    comm: float = 0.002,
    t_coh: float = 0.01,
    p_success: float = 1.0,
    protocol: str = "single_hop",
    seed: int = 5,
    n_trials: int = 4,
):
    return {
        "nodes": [
            {
                "id": "alice",
                "role": "end_node",
                "memory": {"t_coh": 1.0, "tier": "short_lived"},
                "crypto": "test-sender",
            },
            {
                "id": "bob",
                "role": "end_node",
                "memory": {"t_coh": t_coh, "tier": "short_lived"},
                "crypto": "test-receiver",
            },
        ],
        "quantum_links": [
            {"endpoints": ["alice", "bob"], "gen_rate": 1000.0, "p_success": p_success, "base_fidelity": 0.95}
        ],
        "classical_channels": {"alice,bob": {"propagation_delay": comm, "processing_delay": 0.0}},
        "protocol": protocol,
        "seed": seed,
        "n_trials": n_trials,
        "slot_duration": 0.001,
    }


def write_scenario(tmp_path: Path, data: dict, name: str = "scenario.json") -> Path:
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return path


class TestCheck:
    def test_feasible_scenario_exits_zero(self, capsys):
        code = main(["check", str(SCENARIO_DIR / "teleport_single_hop.json")])
        payload = json.loads(capsys.readouterr().out)
        assert code == 0
        assert payload["feasible"] is True and payload["slack"] > 0

    def test_exact_boundary_exits_one(self, tmp_path, capsys):
        enc, comm, dec = 0.001, 0.002, 0.001
        boundary = timing.hop_total(HopTiming(enc, comm, dec))
        profiles = write_profiles(tmp_path, enc, dec)
        scenario = write_scenario(tmp_path, scenario_dict(comm=comm, t_coh=boundary))
        code = main(["--profiles", str(profiles), "check", str(scenario)])
        payload = json.loads(capsys.readouterr().out)
        assert code == 1
        assert payload["feasible"] is False and payload["slack"] == 0.0

    def test_unknown_key_exits_two_with_violations(self, tmp_path, capsys):
        data = scenario_dict()
        data["qauntum_links_typo"] = []
        profiles = write_profiles(tmp_path, 0.001, 0.001)
        scenario = write_scenario(tmp_path, data)
        code = main(["--profiles", str(profiles), "check", str(scenario)])
        payload = json.loads(capsys.readouterr().out)
        assert code == 2
        assert any("qauntum_links_typo" in v["path"] for v in payload["violations"])

    def test_missing_file_exits_two(self, tmp_path):
        assert main(["check", str(tmp_path / "nope.json")]) == 2


class TestSimulate:
    def test_reruns_are_byte_identical(self, tmp_path, capsys):
        profiles = write_profiles(tmp_path, 0.001, 0.001)
        scenario = write_scenario(tmp_path, scenario_dict(p_success=0.5, n_trials=200))
        for out in ("run_a", "run_b"):
            code = main(
                [
                    "--profiles",
                    str(profiles),
                    "--out",
                    str(tmp_path / out),
                    "simulate",
                    str(scenario),
                ]
            )
            assert code == 0
        capsys.readouterr()
        a = tmp_path / "run_a"
        b = tmp_path / "run_b"
        assert (a / "trials.csv").read_bytes() == (b / "trials.csv").read_bytes()
        assert (a / "summary.json").read_bytes() == (b / "summary.json").read_bytes()

    def test_single_trial_yields_one_row(self, tmp_path, capsys):
        profiles = write_profiles(tmp_path, 0.001, 0.001)
        scenario = write_scenario(tmp_path, scenario_dict())
        code = main(
            [
                "--profiles",
                str(profiles),
                "--out",
                str(tmp_path / "single"),
                "simulate",
                str(scenario),
                "--trials",
                "1",
            ]
        )
        capsys.readouterr()
        assert code == 0
        rows = (tmp_path / "single" / "trials.csv").read_text().splitlines()
        assert rows[0] == "trial_index,success,failure_reason,slots_used,t_dist_s,f_end"
        assert len(rows) == 2

    def test_deterministic_scenario_matches_check_verdict(self, tmp_path, capsys):
        profiles = write_profiles(tmp_path, 0.001, 0.001)
        for t_coh, expected_check in ((0.02, 0), (0.003, 1)):
            scenario = write_scenario(tmp_path, scenario_dict(t_coh=t_coh), name=f"s{t_coh}.json")
            check_code = main(["--profiles", str(profiles), "check", str(scenario)])
            assert check_code == expected_check
            out = tmp_path / f"out{t_coh}"
            sim_code = main(
                ["--profiles", str(profiles), "--out", str(out), "simulate", str(scenario)]
            )
            assert sim_code == 0
            summary = json.loads((out / "summary.json").read_text())
            assert summary["success_rate"] == (1.0 if expected_check == 0 else 0.0)
        capsys.readouterr()

    def test_seed_flag_overrides_scenario_seed(self, tmp_path, capsys):
        profiles = write_profiles(tmp_path, 0.001, 0.001)
        scenario = write_scenario(tmp_path, scenario_dict(p_success=0.5, n_trials=100))
        main(["--profiles", str(profiles), "--out", str(tmp_path / "x"), "simulate", str(scenario)])
        main(
            [
                "--profiles",
                str(profiles),
                "--out",
                str(tmp_path / "y"),
                "simulate",
                str(scenario),
                "--seed",
                "999",
            ]
        )
        capsys.readouterr()
        assert (tmp_path / "x" / "trials.csv").read_bytes() != (tmp_path / "y" / "trials.csv").read_bytes()

    def test_unwritable_output_dir_exits_two(self, tmp_path, capsys):
        profiles = write_profiles(tmp_path, 0.001, 0.001)
        scenario = write_scenario(tmp_path, scenario_dict())
        blocker = tmp_path / "blocker"
        blocker.write_text("a file, not a directory")
        code = main(
            [
                "--profiles",
                str(profiles),
                "--out",
                str(blocker / "sub"),
                "simulate",
                str(scenario),
            ]
        )
        capsys.readouterr()
        assert code == 2


class TestAdversaryCommand:
    def test_intercepted_scenario_is_flagged(self, tmp_path, capsys):
        out = tmp_path / "adv"
        code = main(
            [
                "--out",
                str(out),
                "adversary",
                str(SCENARIO_DIR / "intercepted_chain.json"),
                "--baseline-trials",
                "400",
                "--observed-trials",
                "200",
            ]
        )
        payload = json.loads(capsys.readouterr().out)
        assert code == 1
        assert payload["flagged"] is True
        assert payload["observed_mean_qber"] > payload["baseline_mean_qber"]
        samples = (out / "samples.csv").read_text().splitlines()
        assert samples[0] == "side,sample_index,qber"
        assert len(samples) > 100

    def test_zero_delay_adversary_is_not_flagged(self, tmp_path, capsys):
        data = json.loads((SCENARIO_DIR / "intercepted_chain.json").read_text())
        data["adversary"]["t_eve"] = 0.0
        data["adversary"]["t_pqc"] = 0.0
        scenario = write_scenario(tmp_path, data)
        code = main(
            [
                "--out",
                str(tmp_path / "adv0"),
                "adversary",
                str(scenario),
                "--baseline-trials",
                "400",
                "--observed-trials",
                "200",
            ]
        )
        payload = json.loads(capsys.readouterr().out)
        assert code == 0
        assert payload["flagged"] is False

    def test_scenario_without_adversary_exits_two(self, capsys):
        code = main(["adversary", str(SCENARIO_DIR / "teleport_single_hop.json")])
        capsys.readouterr()
        assert code == 2


class TestKmsCommand:
    def test_full_mesh_rows(self, tmp_path, capsys):
        out = tmp_path / "kms"
        code = main(["--out", str(out), "kms", "--nodes", "4", "10"])
        capsys.readouterr()
        assert code == 0
        rows = list(csv.DictReader((out / "kms.csv").read_text().splitlines()))
        assert rows[0]["n"] == "4" and rows[0]["handshakes"] == "6"
        assert rows[1]["n"] == "10" and rows[1]["handshakes"] == "45"

    def test_hierarchical_requires_cluster_size(self, tmp_path, capsys):
        code = main(["--out", str(tmp_path), "kms", "--nodes", "10", "--mode", "hierarchical"])
        capsys.readouterr()
        assert code == 2

    def test_hierarchical_row(self, tmp_path, capsys):
        out = tmp_path / "kms"
        code = main(
            [
                "--out",
                str(out),
                "kms",
                "--nodes",
                "1000",
                "--mode",
                "hierarchical",
                "--cluster-size",
                "10",
            ]
        )
        capsys.readouterr()
        assert code == 0
        rows = list(csv.DictReader((out / "kms.csv").read_text().splitlines()))
        assert rows[0]["handshakes"] == "5850"


class TestSweepCommand:
    def test_single_point_sweep_matches_simulate(self, tmp_path, capsys):
        profiles = write_profiles(tmp_path, 0.001, 0.001)
        scenario = write_scenario(tmp_path, scenario_dict(p_success=0.5, n_trials=300))
        sim_out = tmp_path / "sim"
        main(["--profiles", str(profiles), "--out", str(sim_out), "simulate", str(scenario)])
        sweep_out = tmp_path / "sweep"
        code = main(
            [
                "--profiles",
                str(profiles),
                "--out",
                str(sweep_out),
                "sweep",
                str(scenario),
                "--param",
                "nodes.1.memory.t_coh",
                "--values",
                "0.01",
            ]
        )
        capsys.readouterr()
        assert code == 0
        summary = json.loads((sim_out / "summary.json").read_text())
        rows = list(csv.DictReader((sweep_out / "sweep.csv").read_text().splitlines()))
        assert len(rows) == 1
        assert float(rows[0]["success_rate"]) == summary["success_rate"]
        assert rows[0]["param"] == "nodes.1.memory.t_coh"

    def test_bad_param_path_exits_two(self, tmp_path, capsys):
        profiles = write_profiles(tmp_path, 0.001, 0.001)
        scenario = write_scenario(tmp_path, scenario_dict())
        code = main(
            [
                "--profiles",
                str(profiles),
                "--out",
                str(tmp_path / "s"),
                "sweep",
                str(scenario),
                "--param",
                "nodes.7.memory.t_coh",
                "--values",
                "0.1,0.2",
            ]
        )
        capsys.readouterr()
        assert code == 2


class TestProfilesCommand:
    def test_lists_default_registry_as_json(self, capsys):
        code = main(["profiles"])
        payload = json.loads(capsys.readouterr().out)
        assert code == 0
        names = {p["name"] for p in payload}
        assert {"kyber512-class", "frodo1344-class", "dilithium-class", "sphincs-class"} <= names
        assert all(p["illustrative"] for p in payload)

    def test_csv_output_has_header(self, capsys):
        code = main(["profiles", "--format", "csv"])
        lines = capsys.readouterr().out.splitlines()
        assert code == 0
        assert lines[0].startswith("name,kind,t_encrypt")

    def test_custom_registry_file(self, tmp_path, capsys):
        profiles = write_profiles(tmp_path, 0.25, 0.5)
        code = main(["--profiles", str(profiles), "profiles"])
        payload = json.loads(capsys.readouterr().out)
        assert code == 0
        assert {p["name"] for p in payload} == {"test-sender", "test-receiver"}
