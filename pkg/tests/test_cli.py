import json
import subprocess
import sys

import pytest

from tieless.cli import main

from helpers import FIXTURES

M3 = str(FIXTURES / "m3_edges.json")
M4 = str(FIXTURES / "m4_edges.json")
M2 = str(FIXTURES / "m2_edges.json")
M8 = str(FIXTURES / "m8_measurements.json")
GLS = str(FIXTURES / "gls_measurements.json")
GLS_SEQ = str(FIXTURES / "gls_sequences.json")
P2P = str(FIXTURES / "p2p_eventlog.csv")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestRank:
    def test_m3_edges(self, capsys):
        code, out, _ = run(capsys, "rank", "--input", M3, "--format", "edges", "--method", "M1")
        assert code == 0
        assert json.loads(out) == {"method": "M1", "ranks": [["t0", "t2"], ["t1"], ["t3"]]}

    def test_m4_m2(self, capsys):
        code, out, _ = run(capsys, "rank", "--input", M4, "--format", "edges", "--method", "M2")
        data = json.loads(out)
        assert code == 0
        assert len(data["ranks"]) == 2
        assert data["arrangement"] == ["t0", "t2", "t1", "t4", "t3", "t9", "t6", "t7", "t8", "t5"]

    def test_empty_file(self, capsys, tmp_path):
        p = tmp_path / "empty.csv"
        p.write_text("")
        code, _, err = run(capsys, "rank", "--input", str(p))
        assert code == 2
        assert "empty.csv" in err

    def test_unknown_extension(self, capsys, tmp_path):
        p = tmp_path / "data.txt"
        p.write_text("id,value\na,1\n")
        assert run(capsys, "rank", "--input", str(p))[0] == 2

    def test_outputs(self, capsys, tmp_path):
        out, dot, summary = tmp_path / "r.json", tmp_path / "g.dot", tmp_path / "s.json"
        code, _, _ = run(
            capsys, "rank", "--input", GLS, "--method", "M3", "--out", str(out), "--dot", str(dot), "--summary", str(summary)
        )
        assert code == 0
        assert len(json.loads(out.read_text())["ranks"]) == 2
        text = dot.read_text()
        for name in ("digraph G {", "digraph H {", "graph U {", "digraph Gprime {"):
            assert name in text
        assert len(json.loads(summary.read_text())["objects"]) == 10

    def test_median_relation(self, capsys):
        code, out, _ = run(capsys, "rank", "--input", GLS, "--relation", "median")
        assert code == 0
        assert len(json.loads(out)["ranks"]) == 10

    def test_deterministic(self, capsys):
        first = run(capsys, "rank", "--input", GLS, "--method", "M2")
        assert run(capsys, "rank", "--input", GLS, "--method", "M2") == first


class TestSweep:
    def test_default_sweep_selects_wider_tie(self, capsys, tmp_path):
        out = tmp_path / "rep.json"
        code, printed, _ = run(capsys, "sweep", "--input", M8, "--out", str(out))
        assert code == 0
        assert printed.strip() == "selected: 30,70"
        rep = json.loads(out.read_text())
        assert rep["avg_rel"] == {"25-75": -0.375, "30-70": -0.125, "35-65": -0.125, "40-60": -0.625}

    def test_one_limit(self, capsys):
        code, out, _ = run(capsys, "sweep", "--input", M8, "--limits", "35,65")
        assert code == 0
        assert json.loads(out)["selected"] == [35, 65]

    def test_sweep_string_and_table(self, capsys):
        code, out, err = run(capsys, "sweep", "--input", M8, "--sweep", "25,75;40,60", "--table")
        assert code == 0
        assert json.loads(out)["limits"] == [[25, 75], [40, 60]]
        assert "avg_rel" in err

    def test_contradictory_flags(self, capsys, tmp_path):
        f = tmp_path / "q.json"
        f.write_text("[[25, 75]]")
        code, _, err = run(capsys, "sweep", "--input", M8, "--limits", "25,75", "--sweep-file", str(f))
        assert code == 2
        assert "only one" in err

    def test_edges_rejected(self, capsys):
        assert run(capsys, "sweep", "--input", M3, "--format", "edges")[0] == 2


class TestDfg:
    def test_gls_fast_vs_slow(self, capsys):
        code, out, _ = run(capsys, "dfg", "--input", GLS, "--sequences", GLS_SEQ, "--method", "M2", "--green-ranks", "0")
        assert code == 0
        assert '"gemm" [color=green' in out
        assert '"transpose" [color=red' in out
        assert '"qr" [color=red' in out

    def test_top1(self, capsys):
        code, out, _ = run(capsys, "dfg", "--input", GLS, "--sequences", GLS_SEQ, "--top-k-median", "1")
        assert code == 0
        assert '"gemm" [color=red' in out

    def test_missing_sequence_file(self, capsys):
        code, _, err = run(
            capsys, "dfg", "--input", GLS, "--sequences", "no_such.json", "--green-ranks", "0"
        )
        assert code == 2
        assert "no_such.json" in err

    def test_needs_split(self, capsys):
        assert run(capsys, "dfg", "--input", GLS, "--sequences", GLS_SEQ)[0] == 2

    def test_event_log(self, capsys):
        code, out, _ = run(
            capsys, "dfg", "--input", P2P, "--format", "eventlog", "--green-ranks", "0,1", "--red-ranks", "4"
        )
        assert code == 0
        assert '"Cancel Goods Receipt" [color=red' in out
        assert "median" in out


class TestValidate:
    def write(self, tmp_path, ranks):
        p = tmp_path / "r.json"
        p.write_text(json.dumps({"method": "external", "ranks": ranks}))
        return str(p)

    def test_p2_violation(self, capsys, tmp_path):
        r = self.write(tmp_path, [["t0"], ["t1", "t2"], ["t3"]])
        code, out, err = run(capsys, "validate", "--input", M2, "--format", "edges", "--ranking", r)
        assert code == 1
        assert [v["kind"] for v in json.loads(out)["violations"]] == ["P2"]
        assert "P2" in err

    def test_round_trip_is_clean(self, capsys, tmp_path):
        ranking = tmp_path / "m.json"
        assert run(capsys, "rank", "--input", GLS, "--method", "M3", "--out", str(ranking))[0] == 0
        code, out, _ = run(capsys, "validate", "--input", GLS, "--ranking", str(ranking))
        assert code == 0
        assert json.loads(out)["ok"] is True

    def test_malformed_ranking(self, capsys, tmp_path):
        p = tmp_path / "r.json"
        p.write_text('{"ranks": "t0"}')
        assert run(capsys, "validate", "--input", M2, "--format", "edges", "--ranking", str(p))[0] == 2

    def test_intransitive_edges(self, capsys, tmp_path):
        e = tmp_path / "e.json"
        e.write_text('{"ids": ["a", "b", "c"], "better": [["a", "b"], ["b", "c"]]}')
        r = self.write(tmp_path, [["a"], ["b"], ["c"]])
        code, out, _ = run(capsys, "validate", "--input", str(e), "--format", "edges", "--ranking", r)
        assert code == 1
        assert json.loads(out)["violations"][0]["kind"] == "transitivity"


class TestSynth:
    ARGS = ("synth", "--mu", "0.30,0.31,0.32,0.43", "--sigma", "0.005,0.030,0.005,0.01", "--samples", "15")

    def test_same_seed_same_output(self, capsys):
        a = run(capsys, *self.ARGS, "--seed", "7")
        b = run(capsys, *self.ARGS, "--seed", "7")
        assert a == b
        data = json.loads(a[1])
        assert [len(o["values"]) for o in data["objects"]] == [15] * 4

    def test_seed_changes_output(self, capsys):
        assert run(capsys, *self.ARGS, "--seed", "1")[1] != run(capsys, *self.ARGS, "--seed", "2")[1]

    def test_zero_sigma(self, capsys):
        code, out, _ = run(capsys, "synth", "--mu", "1.5,2", "--sigma", "0,0", "--samples", "3")
        assert code == 0
        assert [o["values"] for o in json.loads(out)["objects"]] == [[1.5] * 3, [2.0] * 3]

    def test_length_mismatch(self, capsys):
        assert run(capsys, "synth", "--mu", "1,2", "--sigma", "1")[0] == 2


class TestConfig:
    def test_config_file_supplies_defaults(self, capsys, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"method": "M3"}))
        code, out, _ = run(capsys, "rank", "--input", GLS, "--config", str(cfg))
        assert code == 0
        assert json.loads(out)["method"] == "M3"

    def test_flag_beats_config(self, capsys, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"method": "M3"}))
        _, out, _ = run(capsys, "rank", "--input", GLS, "--config", str(cfg), "--method", "M1")
        assert json.loads(out)["method"] == "M1"

    def test_environment_variable(self, capsys, tmp_path, monkeypatch):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"seed": 3, "samples": 2}))
        monkeypatch.setenv("TIELESS_CONFIG", str(cfg))
        _, from_env, _ = run(capsys, "synth", "--mu", "0", "--sigma", "1")
        monkeypatch.delenv("TIELESS_CONFIG")
        _, explicit, _ = run(capsys, "synth", "--mu", "0", "--sigma", "1", "--seed", "3", "--samples", "2")
        assert from_env == explicit

    def test_bad_config(self, capsys, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text("[1, 2]")
        assert run(capsys, "rank", "--input", GLS, "--config", str(cfg))[0] == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "tieless", "rank", "--input", M3, "--format", "edges"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["ranks"] == [["t0", "t2"], ["t1"], ["t3"]]


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as info:
        main(["rank", "--method", "M9"])
    assert info.value.code == 2
