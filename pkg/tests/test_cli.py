from __future__ import annotations

import json

import pytest

from cubelink import cli
from cubelink.path_oracle import InvariantError


def invoke(capsys, *argv):
    code = cli.run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def invoke_json(capsys, *argv):
    code, out, err = invoke(capsys, *argv)
    return code, json.loads(out), err


class TestSolve:
    def test_flags_round_trip_through_verify(self, capsys, tmp_path):
        code, obj, _ = invoke_json(
            capsys, "solve", "--dim", "5", "--pairs", "00000:11111,00001:11110")
        assert code == 0
        assert obj["scenario_trace"][0] == "Q5:projection"
        witness = tmp_path / "witness.json"
        witness.write_text(json.dumps(obj))
        code, verdict, _ = invoke_json(capsys, "verify", str(witness))
        assert code == 0
        assert verdict["ok"] is True

    def test_instance_file_input(self, capsys, tmp_path):
        inst = tmp_path / "inst.json"
        inst.write_text(json.dumps({
            "host": {"type": "cube", "d": 5, "forbidden": []},
            "pairs": [["00000", "11111"], ["00011", "11100"]],
        }))
        code, obj, _ = invoke_json(capsys, "solve", str(inst))
        assert code == 0
        assert len(obj["paths"]) == 2

    def test_avoid_flag(self, capsys):
        code, obj, _ = invoke_json(
            capsys, "solve", "--dim", "5",
            "--pairs", "00000:11111,00011:11100", "--avoid", "00111")
        assert code == 0
        assert all("00111" not in p for p in obj["paths"])

    def test_text_format(self, capsys):
        code, out, _ = invoke(capsys, "solve", "--dim", "5",
                              "--pairs", "00000:11111", "--format", "text")
        assert code == 0
        assert out == "trace: Q5:trivial_pair\n00000 00001 00011 00111 01111 11111\n"

    def test_unsupported_q3_pair_count(self, capsys):
        code, out, err = invoke(capsys, "solve", "--dim", "3",
                                "--pairs", "000:011,001:010")
        assert code == 2
        assert "certificate" in err
        assert "0**" in err

    def test_malformed_pairs_flag(self, capsys):
        code, _, err = invoke(capsys, "solve", "--dim", "3", "--pairs", "0:31")
        assert code == 2
        assert "binary word" in err

    def test_missing_pairs(self, capsys):
        code, _, err = invoke(capsys, "solve", "--dim", "3")
        assert code == 2


class TestStrongAndLink:
    def test_strong_solve(self, capsys):
        code, obj, _ = invoke_json(
            capsys, "strong-solve", "--dim", "5",
            "--pairs", "00000:11111,00011:11100", "--avoid", "00111")
        assert code == 0
        assert obj["host"]["forbidden"] == ["00111"]
        assert obj["scenario_trace"][0].startswith("Q5:strong")

    def test_strong_solve_requires_one_avoid(self, capsys):
        code, _, err = invoke(capsys, "strong-solve", "--dim", "5",
                              "--pairs", "00000:11111,00011:11100")
        assert code == 2
        code, _, err = invoke(
            capsys, "strong-solve", "--dim", "5",
            "--pairs", "00000:11111,00011:11100", "--avoid", "00111,01110")
        assert code == 2

    def test_link_solve(self, capsys):
        code, obj, _ = invoke_json(
            capsys, "link-solve", "--dim", "6", "--apex", "000000",
            "--pairs", "000011:110000,000101:101000,000110:100001")
        assert code == 0
        assert sorted(obj["host"]["forbidden"]) == ["000000", "111111"]
        assert obj["scenario_trace"][0] == "Q6:link_case2"

    def test_link_solve_rejects_apex_terminal(self, capsys):
        code, _, err = invoke(capsys, "link-solve", "--dim", "6", "--apex",
                              "000000", "--pairs", "000000:110000")
        assert code == 2


class TestDecide:
    def test_unlinked_with_certificate(self, capsys):
        code, obj, _ = invoke_json(capsys, "decide", "--dim", "3",
                                   "--pairs", "000:011,001:010")
        assert code == 1
        assert obj["status"] == "unlinked"
        assert obj["certificate"] == {"face": "0**", "witness_terminal": "000"}

    def test_linked(self, capsys):
        code, obj, _ = invoke_json(capsys, "decide", "--dim", "3",
                                   "--pairs", "000:110,011:101")
        assert code == 0
        assert obj["status"] == "linked"
        assert "paths" in obj

    def test_budget_exhaustion(self, capsys):
        code, obj, _ = invoke_json(capsys, "decide", "--dim", "4",
                                   "--pairs", "0000:1111,0001:1110",
                                   "--budget", "3")
        assert code == 3
        assert obj["status"] == "budget_exceeded"

    def test_env_budget_fallback(self, capsys, monkeypatch):
        monkeypatch.setenv("LINKAGE_BUDGET", "3")
        code, obj, _ = invoke_json(capsys, "decide", "--dim", "4",
                                   "--pairs", "0000:1111,0001:1110")
        assert code == 3

    def test_flag_beats_env(self, capsys, monkeypatch):
        monkeypatch.setenv("LINKAGE_BUDGET", "3")
        code, obj, _ = invoke_json(capsys, "decide", "--dim", "4",
                                   "--pairs", "0000:1111,0001:1110",
                                   "--budget", "100000")
        assert code == 0

    def test_link_host_spec(self, capsys):
        code, obj, _ = invoke_json(capsys, "decide", "--host", "link:5",
                                   "--pairs", "00011:01100,00101:11000")
        assert code == 0
        assert obj["status"] == "linked"


class TestVerify:
    def test_rejects_bad_witness(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps({
            "host": {"type": "cube", "d": 3, "forbidden": []},
            "pairs": [["000", "011"]],
            "paths": [["000", "011"]],
        }))
        code, obj, _ = invoke_json(capsys, "verify", str(bad))
        assert code == 1
        assert obj["ok"] is False
        assert obj["clause"] == "ADJACENCY"

    def test_stdin_input(self, capsys, monkeypatch, tmp_path):
        import io

        payload = json.dumps({
            "host": {"type": "cube", "d": 3, "forbidden": []},
            "pairs": [["000", "011"]],
            "paths": [["000", "001", "011"]],
        })
        monkeypatch.setattr("sys.stdin", io.StringIO(payload))
        code, obj, _ = invoke_json(capsys, "verify", "-")
        assert code == 0
        assert obj["ok"] is True

    def test_malformed_json_reports_position(self, capsys, tmp_path):
        broken = tmp_path / "broken.json"
        broken.write_text('{"host": }')
        code, _, err = invoke(capsys, "verify", str(broken))
        assert code == 2
        assert "line 1" in err and "column" in err


class TestCertifyAndSuite:
    def test_certify_clean(self, capsys):
        code, obj, _ = invoke_json(
            capsys, "certify", "--host", "cube:5", "--k", "2",
            "--mode", "sampled", "--samples", "20", "--solver", "engine")
        assert code == 0
        assert obj["ok"] is True
        assert obj["instances"] == 20

    def test_certify_finds_pyramid_counterexample(self, capsys):
        code, obj, _ = invoke_json(
            capsys, "certify", "--host", "pyramid2-quad", "--k", "2",
            "--solver", "oracle", "--strong")
        assert code == 1
        assert obj["instances"] == 90
        assert len(obj["failures"]) == 2

    def test_certify_budget_exit(self, capsys):
        code, obj, _ = invoke_json(
            capsys, "certify", "--host", "cube:4", "--k", "2",
            "--solver", "oracle", "--budget", "5")
        assert code == 3
        assert obj["failures"] == []
        assert obj["budget_exceeded"] > 0

    def test_certify_text_summary(self, capsys):
        code, out, _ = invoke(
            capsys, "certify", "--host", "cube:3", "--k", "2",
            "--solver", "oracle", "--format", "text")
        assert code == 1
        assert "failures   6" in out

    def test_certify_rejects_bad_job(self, capsys):
        code, _, err = invoke(capsys, "certify", "--host", "cube:3",
                              "--k", "2", "--solver", "engine")
        assert code == 2

    def test_suite(self, capsys):
        code, obj, _ = invoke_json(capsys, "suite", "shared_neighbors")
        assert code == 0
        assert obj["ok"] is True

    def test_suite_unknown_name(self, capsys):
        code, _, err = invoke(capsys, "suite", "nonexistent")
        assert code == 2

    def test_bench(self, capsys):
        code, obj, _ = invoke_json(capsys, "bench", "--host", "cube:5",
                                   "--k", "3", "--samples", "5")
        assert code == 0
        assert set(obj) >= {"p50_ms", "p90_ms", "p99_ms", "max_ms", "total_s"}


class TestOutputStability:
    def test_json_runs_are_byte_identical(self, capsys):
        argv = ("solve", "--dim", "6",
                "--pairs", "000000:111111,000011:111100,000101:111010")
        _, out1, _ = invoke(capsys, *argv)
        _, out2, _ = invoke(capsys, *argv)
        assert out1 == out2

    def test_timing_only_with_flag(self, capsys):
        _, plain, _ = invoke_json(capsys, "certify", "--host", "cube:3",
                                  "--k", "1", "--solver", "engine")
        _, timed, _ = invoke_json(capsys, "certify", "--host", "cube:3",
                                  "--k", "1", "--solver", "engine", "--timing")
        assert "wall_time_s" not in plain
        assert "wall_time_s" in timed

    def test_keys_are_sorted(self, capsys):
        _, out, _ = invoke(capsys, "decide", "--dim", "3",
                           "--pairs", "000:111,001:110")
        obj = json.loads(out)
        assert list(obj) == sorted(obj)


class TestFailureHandling:
    def test_invariant_error_writes_replay_dump(self, capsys, monkeypatch,
                                                tmp_path):
        def boom(*args, **kwargs):
            raise InvariantError("planted failure", {"detail": 7})

        monkeypatch.setattr(cli, "solve_avoiding", boom)
        code, out, err = invoke(capsys, "solve", "--dim", "5",
                                "--pairs", "00000:11111")
        assert code == 3
        assert "replay dump" in err
        path = err.split("replay dump:", 1)[1].strip()
        dump = json.loads(open(path).read())
        assert dump["error"] == "planted failure"
        assert dump["context"] == {"detail": 7}

    def test_unknown_command(self, capsys):
        code, _, err = invoke(capsys, "frobnicate")
        assert code == 2

    def test_missing_file(self, capsys):
        code, _, err = invoke(capsys, "verify", "/nonexistent/file.json")
        assert code == 2
