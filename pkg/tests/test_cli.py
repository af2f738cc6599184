import json
import subprocess
import sys

import pytest

from patrep.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_count_csv(capsys):
    code, out, _ = run(capsys, "count", "--partition", "123,321", "--n-range", "3..5")
    assert code == 0
    assert out.splitlines() == [
        "n,brute,formula,roots,agree",
        "3,5,5,5,True",
        "4,20,20,20,True",
        "5,102,102,102,True",
    ]


def test_count_is_deterministic(capsys):
    args = ("count", "--partition", "123,321|132,213", "--n-range", "3..5")
    assert run(capsys, *args) == run(capsys, *args)


def test_bad_partition_is_usage_error(capsys):
    code, _, err = run(capsys, "count", "--partition", "123,12", "--n", "4")
    assert code == 2 and "error" in err


def test_guard_is_usage_error(capsys):
    code, _, err = run(capsys, "classes", "--partition", "123,321", "--n", "11")
    assert code == 2 and "guard" in err


def test_missing_flag_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["classes", "--partition", "123,321"])
    assert exc.value.code == 2


def test_confluence_exit_codes(capsys):
    code, out, _ = run(capsys, "confluence", "--partition", "123,321", "--n-range", "3..5", "--diamond")
    assert code == 0
    assert all(json.loads(line)["local_diamond"] for line in out.splitlines())
    code, out, _ = run(capsys, "confluence", "--partition", "1243,1342,2314", "--n", "5")
    assert code == 1
    assert "12435" in json.loads(out)["counterexamples"]


def test_normal_form(capsys):
    code, out, _ = run(capsys, "normal-form", "--partition", "123,321", "--perm", "125436")
    assert code == 0
    last = json.loads(out.splitlines()[-1])
    assert last == {"perm": "125436", "root": "123456", "steps": 1}


def test_normal_form_budget(capsys):
    code, _, _ = run(capsys, "normal-form", "--partition", "123,321", "--perm", "125436", "--step-budget", "0")
    assert code == 1


def test_toothed(capsys):
    code, out, _ = run(capsys, "toothed", "--c", "3", "--perm", "3124657")
    data = json.loads(out)
    assert code == 0 and data["block_sizes"] == [3, 1, 2, 1] and data["toothed"]


def test_sequence_and_cache(capsys, tmp_path):
    args = ("sequence", "--c", "3", "--max-n", "6", "--cache-dir", str(tmp_path))
    code, out, _ = run(capsys, *args)
    assert code == 0
    assert out.splitlines()[1:] == ["3,6,6,True", "4,10,10,True", "5,23,23,True", "6,51,51,True"]
    store = json.loads((tmp_path / "results.json").read_text())
    assert store["entries"]["T3|5|bruteforce"]["value"] == 23
    # a tampered entry is served silently, then caught with --verify-cache
    store["entries"]["T3|5|bruteforce"]["value"] = 24
    (tmp_path / "results.json").write_text(json.dumps(store))
    code, out, _ = run(capsys, *args, "--method", "brute")
    assert code == 0 and "5,24" in out
    code, _, err = run(capsys, *args, "--method", "brute", "--verify-cache")
    assert code == 1 and "mismatch" in err


def test_cache_env_var(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("PATREP_CACHE_DIR", str(tmp_path))
    run(capsys, "count", "--partition", "123,321", "--n", "4", "--method", "brute")
    assert "123,321|132|213|231|312|4|brute" in json.loads((tmp_path / "results.json").read_text())["entries"]


def test_uncorrected_series_column(capsys):
    code, out, _ = run(capsys, "sequence", "--c", "3", "--max-n", "4", "--method", "recurrence", "--uncorrected-series")
    assert out.splitlines() == ["n,recurrence,uncorrected,agree", "3,6,2,True", "4,10,5,True"]


def test_bfile(capsys):
    _, out, _ = run(capsys, "sequence", "--c", "3", "--max-n", "5", "--format", "bfile")
    assert out == "3 6\n4 10\n5 23\n"


def test_config_file(capsys, tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"partition": "123,321", "n": 4}))
    code, out, _ = run(capsys, "--config", str(cfg), "count")
    assert code == 0 and out.splitlines()[1] == "4,20,20,20,True"


def test_classes_dot(capsys, tmp_path):
    dot = tmp_path / "g.dot"
    code, out, _ = run(
        capsys, "classes", "--partition", "123,321", "--n", "4", "--roots", "--dot", str(dot), "--dot-class", "1234"
    )
    assert code == 0 and json.loads(out)["count"] == 20
    text = dot.read_text()
    assert text.startswith("digraph") and '"1234" [shape=box];' in text


def test_verify_suite(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "s3", "--max-n", "4")
    assert code == 0 and out.startswith("PASS")


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "patrep", "toothed", "--c", "3", "--perm", "4321"],
        capture_output=True,
        text=True,
        check=True,
    )
    assert json.loads(proc.stdout)["toothed"] is False
