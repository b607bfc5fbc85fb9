from __future__ import annotations

import json
import subprocess
import sys

import pytest

from lefschetz.analyzer import WlpReport
from lefschetz.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_hf_text(capsys):
    code, out, _ = run(capsys, "hf", "-r", "4", "-n", "5", "-t", "3")
    assert code == 0
    assert out.strip().endswith("agreement")


def test_hf_csv_schema(capsys):
    code, out, _ = run(capsys, "hf", "-r", "4", "-n", "5", "-t", "3", "--format", "csv")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "degree,formula,oracle,agree"
    assert [int(l.split(",")[2]) for l in lines[1:]] == [1, 4, 10, 15, 15, 6]


def test_hf_window(capsys):
    code, out, _ = run(capsys, "hf", "-r", "4", "-n", "8", "-t", "8", "--from", "8", "--to", "15",
                       "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["schema"] == 1
    assert [row["oracle"] for row in doc["rows"]] == [157, 188, 206, 204, 175, 112, 8, 0]


@pytest.mark.parametrize("argv", [
    ["hf", "-r", "0", "-n", "5", "-t", "3"],
    ["hf", "-r", "4", "-n", "5"],
    ["hf", "-r", "4", "-n", "2", "--exponents", "3,3,3"],
    ["hf", "-r", "4", "-n", "5", "-t", "3", "--prime", "10"],
    ["hf", "-r", "4", "-n", "5", "-t", "3", "--format", "xml"],
    ["nonsense"],
    ["surface", "bound", "-n", "3", "-t", "4"],
    ["gt", "resolve", "--grid", "2-2"],
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_non_artinian_is_not_a_usage_error(capsys):
    code, _, err = run(capsys, "hf", "-r", "4", "-n", "3", "-t", "2")
    assert code == 1 and "InconclusiveError" in err


def test_wlp_json_round_trip(capsys):
    code, out, _ = run(capsys, "wlp", "-r", "4", "-n", "5", "-t", "3", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["schema"] == 1
    assert doc["symbolic"]["state"] == "Fails" and doc["symbolic"]["degree"] == 3
    assert {"Example 1.1", "Cor 3.3"} <= set(doc["citations"])
    assert WlpReport.from_dict(doc).to_dict() == doc


def test_wlp_csv_and_text(capsys):
    code, out, _ = run(capsys, "wlp", "-r", "3", "-n", "5", "-t", "3", "--format", "csv")
    assert code == 0 and out.splitlines()[0] == "j,dim_source,dim_target,rank,injective,surjective"
    code, out, _ = run(capsys, "wlp", "-r", "6", "-n", "7", "-t", "2")
    assert code == 0 and "symbolic: Fails at degree 2" in out


def test_output_is_deterministic(capsys):
    argv = ["wlp", "-r", "4", "-n", "6", "-t", "3", "--format", "json", "--seed", "11"]
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


def test_env_overrides(capsys, monkeypatch):
    monkeypatch.setenv("LEFSCHETZ_PRIME", "65521")
    monkeypatch.setenv("LEFSCHETZ_SEED", "3")
    _, out, _ = run(capsys, "hf", "-r", "3", "-n", "4", "-t", "2")
    assert "prime=65521 seed=3" in out
    _, out, _ = run(capsys, "hf", "-r", "3", "-n", "4", "-t", "2", "--seed", "9")
    assert "prime=65521 seed=9" in out
    monkeypatch.setenv("LEFSCHETZ_SEED", "x")
    assert run(capsys, "hf", "-r", "3", "-n", "4", "-t", "2")[0] == 2


def test_out_file(capsys, tmp_path):
    target = tmp_path / "hf.csv"
    code, out, _ = run(capsys, "hf", "-r", "4", "-n", "5", "-t", "3", "--format", "csv", "--out", str(target))
    assert code == 0 and out == ""
    data = target.read_bytes()
    assert data.startswith(b"degree,formula,oracle,agree\n") and b"\r" not in data


def test_surface_commands(capsys):
    code, out, _ = run(capsys, "surface", "curves", "-n", "8")
    assert code == 0 and len(out.splitlines()) == 240
    assert run(capsys, "surface", "irregular", "-n", "5", "-d", "4", "-m", "2")[1].startswith("true")
    code, out, _ = run(capsys, "surface", "irregular", "-n", "4", "-d", "3", "-m", "2")
    assert code == 0 and out.startswith("true (oracle)")
    assert run(capsys, "surface", "bound", "-n", "8", "-t", "8")[1].strip() == "11"
    code, out, _ = run(capsys, "surface", "worst", "-n", "8", "-t", "8", "--format", "json")
    assert json.loads(out)["result"]["value"] == surface_value()


def surface_value():
    from lefschetz.surface import worst_curve_value

    return worst_curve_value(8, 8, 11)


def test_gt_commands(capsys):
    code, out, _ = run(capsys, "gt", "resolve", "--grid", "2:2,3:2,2:3")
    assert code == 0 and out.startswith("Discrepancy")
    assert "PaperAsStated: first mismatch at (r=2, t=2, i=2): count 3 != 0" in out
    code, out, _ = run(capsys, "gt", "count", "-r", "2", "-t", "2", "-i", "2", "--format", "json")
    doc = json.loads(out)
    assert doc["counts"]["PaperAsStated"] == 3 and doc["hilbert"] == 0


def test_oracle_commands(capsys):
    assert run(capsys, "oracle", "rank", "-r", "4", "-n", "5", "-t", "4", "-j", "5")[1].strip() == "33"
    assert run(capsys, "oracle", "ideal-dim", "-r", "4", "-n", "5", "-t", "3", "-j", "3")[1].strip() == "5"
    assert run(capsys, "oracle", "socle", "-r", "4", "-n", "6", "-t", "4")[1].strip() == "7"
    out = run(capsys, "oracle", "fatpoints", "-r", "3", "-j", "4", "--mults", "2,2,2,2,2")[1]
    assert out.strip() == "h0=1 h1=1"


def test_verify_paper_subset(capsys):
    code, out, _ = run(capsys, "verify-paper", "--only", "surface")
    lines = out.splitlines()
    assert all(l.split("/")[0].split()[-1] == "surface" for l in lines[:-1])
    assert code == 0 and "0 fail" in lines[-1]
    assert run(capsys, "verify-paper", "--only", "surface", "--strict")[0] == 1
    assert run(capsys, "verify-paper", "--only", "nope")[0] == 2


def test_verify_paper_seed_independent(capsys):
    def statuses(seed):
        out = run(capsys, "verify-paper", "--only", "gt,hilbert,cli", "--seed", seed, "--format", "json")[1]
        return [(i["name"], i["status"]) for i in json.loads(out)["items"]]

    assert statuses("0") == statuses("7")


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "lefschetz", "surface", "bound", "-n", "8", "-t", "8"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.strip() == "11"
