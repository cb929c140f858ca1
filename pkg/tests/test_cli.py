from __future__ import annotations

import json

import pandas as pd
import pytest

from domdim import __version__
from domdim.app.main import build_parser, main
from domdim.quiver.dsl import parse


def test_compute_json(corpus_dir, capsys):
    assert main(["compute", str(corpus_dir / "truncated_10_3.qv"), "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["engine_dd"] == 5
    assert data["command"] == "compute"
    assert data["field"] == "rational"


def test_check_human_output(corpus_dir, capsys):
    assert main(["check", str(corpus_dir / "long_relation_arm.qv")]) == 0
    out = capsys.readouterr().out
    assert "dominant dimension: 0" in out
    assert "tree-double-star" in out
    assert "verdict: agree" in out
    assert "witness:" in out


def test_check_with_resolution(capsys):
    assert main(["check", "truncated:n=5,m=2", "--resolution"]) == 0
    out = capsys.readouterr().out
    assert "P(5): dd = 4" in out
    assert "E0: I(5)=P(4)" in out


def test_pinned_mismatch_exit_code(corpus_dir, capsys):
    assert main(["check", str(corpus_dir / "linear5.qv"), "--expected", "2"]) == 4
    assert "pinned: 2 (MISMATCH)" in capsys.readouterr().out


def test_out_of_scope_exit_code(tmp_path, capsys):
    source = tmp_path / "square.qv"
    source.write_text(
        "quiver square\nvertices 1 2 3 4 5\n"
        "arrow a 1 -> 2\narrow b 1 -> 3\narrow c 2 -> 4\narrow d 3 -> 4\narrow e 4 -> 5\nrel c e\n",
        encoding="utf-8",
    )
    assert main(["predict", str(source), "--json"]) == 3
    data = json.loads(capsys.readouterr().out)
    assert data["status"] == "out-of-scope"
    assert data["prediction"]["theorem"] == "projective-injective-bound"


def test_prime_field_option(corpus_dir, capsys):
    assert main(["compute", str(corpus_dir / "inner_socle_arms.qv"), "--field", "prime:3", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["field"] == "prime:3"


def test_missing_file_exit_code(tmp_path, capsys):
    assert main(["compute", str(tmp_path / "nothing.qv")]) == 1
    assert "domdim:" in capsys.readouterr().err


def test_parse_error_exit_code(tmp_path, capsys):
    source = tmp_path / "broken.qv"
    source.write_text("quiver broken\nvertices 1\narrow a 1 -> 9\n", encoding="utf-8")
    assert main(["compute", str(source)]) == 1
    assert "invalid input" in capsys.readouterr().err


def test_usage_error_exits_with_input_code(capsys):
    with pytest.raises(SystemExit) as info:
        main(["compute", "x.qv", "--field", "prime:4"])
    assert info.value.code == 1


def test_version(capsys):
    with pytest.raises(SystemExit):
        build_parser().parse_args(["--version"])
    assert __version__ in capsys.readouterr().out


def test_generate_is_deterministic(tmp_path):
    args = ["generate", "--family", "random-relations", "--n", "8", "--count", "3", "--seed", "11"]
    first, second = tmp_path / "a.qv", tmp_path / "b.qv"
    assert main([*args, "-o", str(first)]) == 0
    assert main([*args, "-o", str(second)]) == 0
    assert first.read_text(encoding="utf-8") == second.read_text(encoding="utf-8")
    quiver, relations = parse(first.read_text(encoding="utf-8"))
    assert len(quiver.vertices) == 8
    assert 1 <= len(relations) <= 3


def test_generate_to_stdout(capsys):
    assert main(["generate", "--family", "disjoint", "--n", "7", "--relations", "1@2,4@3"]) == 0
    quiver, relations = parse(capsys.readouterr().out)
    assert list(relations) == [("a1", "a2"), ("a4", "a5", "a6")]


def test_generate_infeasible_family(capsys):
    assert main(["generate", "--family", "truncated", "--n", "4", "--m", "4"]) == 1
    assert "infeasible family" in capsys.readouterr().err


def test_batch_json_lines(corpus_dir, capsys):
    assert main(["batch", str(corpus_dir), "--json"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 15
    summary = json.loads(lines[-1])["summary"]
    assert summary["counts"]["total"] == 14
    assert summary["counts"]["MISMATCH"] == 0
    assert summary["counts"]["within-interval"] == 1
    assert summary["histogram"]["infinity"] == 1
    assert list(summary["histogram"])[-1] == "infinity"
    assert summary["exit_code"] == 0


def test_batch_writes_csv(corpus_dir, tmp_path, capsys):
    table = tmp_path / "summary.csv"
    assert main(["batch", str(corpus_dir / "sweeps" / "truncated_m2.csv"), "--csv", str(table)]) == 0
    out = capsys.readouterr().out
    assert "dd 9 |" in out
    frame = pd.read_csv(table, dtype=str, keep_default_na=False)
    assert frame["engine_dd"].tolist() == [str(v) for v in range(1, 10)]
    assert set(frame["status"]) == {"agree"}


def test_batch_missing_target(tmp_path, capsys):
    assert main(["batch", str(tmp_path / "nowhere.csv")]) == 1
    assert "cannot read batch input" in capsys.readouterr().err


def test_core_relations_flag(corpus_dir, capsys):
    source = str(corpus_dir / "long_relation_arm.qv")
    assert main(["predict", source, "--core-relations", "a t", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["prediction"]["theorem"] == "tree-hypothesis-unmet"
    assert main(["check", source, "--core-relations", "a t;d b"]) == 0
    assert "tree-double-star" in capsys.readouterr().out


def test_malformed_core_relations_flag():
    with pytest.raises(SystemExit) as info:
        main(["predict", "x.qv", "--core-relations", "a"])
    assert info.value.code == 1
