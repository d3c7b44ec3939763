"""CLI behaviors: exit codes, deterministic JSON, probe files."""

from __future__ import annotations

import json
import subprocess
import sys

import pytest

from wittkit.cli import main


def run_cli(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_parse_echoes_canonical_form(capsys):
    code, out, _ = run_cli(capsys, ["parse", "--arity", "2", "2*t1*d1 + d2 - t1*d1"])
    assert code == 0
    assert out.strip() == "d2 + t1*d1"


def test_bracket_command(capsys):
    code, out, _ = run_cli(capsys, ["bracket", "--arity", "1", "t1^-1*d1", "t1*d1"])
    assert code == 0
    assert out.strip() == "2*d1"


def test_bracket_json_deterministic(capsys):
    argv = ["bracket", "--arity", "2", "--format", "json", "t1*d1", "t2*d2"]
    first = run_cli(capsys, argv)
    second = run_cli(capsys, argv)
    assert first == second
    payload = json.loads(first[1])
    assert payload == {"bracket": "0"}


def test_centralize_command(capsys):
    code, out, _ = run_cli(capsys, [
        "centralize", "--arity", "2", "--box", "2", "--format", "json", "dmu"])
    assert code == 0
    payload = json.loads(out)
    assert payload["dimension"] == 2
    assert payload["basis"] == ["d1", "d2"]


def test_verify_lemma_2_2(capsys):
    code, out, _ = run_cli(capsys, [
        "verify", "--arity", "2", "--k", "2", "lemma2.2"])
    assert code == 0
    assert "PASS" in out
    assert "dimension: 1" in out


def test_verify_json_payload(capsys):
    code, out, _ = run_cli(capsys, [
        "verify", "--arity", "2", "--k", "3", "--format", "json", "lemma3.3"])
    assert code == 0
    payload = json.loads(out)
    assert payload["pass"] is True
    assert payload["lemma"] == "3.3"
    assert payload["coefficient"] == "2*mu1*c"


def test_verify_element_flag_and_positional(capsys):
    argv_pos = ["verify", "--arity", "2", "lemma3.2", "t1*d1"]
    argv_flag = ["verify", "--arity", "2", "--x", "t1*d1", "lemma3.2"]
    first = run_cli(capsys, argv_pos)
    second = run_cli(capsys, argv_flag)
    assert first[0] == 0
    assert first == second


def test_verify_lemma_4_1(capsys):
    code, out, _ = run_cli(capsys, [
        "verify", "--arity", "3", "--prefix", "2", "--k", "1", "--box", "2",
        "--format", "json", "lemma4.1"])
    assert code == 0
    payload = json.loads(out)
    assert payload["dimension"] == 10
    assert payload["spans_equal"] is True


def test_verify_rejects_bad_k(capsys):
    code, _, err = run_cli(capsys, [
        "verify", "--arity", "2", "--k", "1", "lemma3.3"])
    assert code == 2
    assert "error" in err


def test_verify_missing_k_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--arity", "2", "lemma2.2"])
    assert exc.value.code == 2


def test_parse_error_exit_code(capsys):
    code, _, err = run_cli(capsys, ["parse", "--arity", "2", "t9*d1"])
    assert code == 2
    assert "parse error" in err


def test_unknown_variant_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["parse", "--arity", "2", "--variant", "sl2", "d1"])
    assert exc.value.code == 2


def test_rigidity_inner_table(capsys, tmp_path):
    probes = {
        "probes": [
            {"x": "dmu", "dx": "0"},
            {"x": "t1*dmu + t2*dmu", "dx": "mu1*t1*dmu - mu2*t2*dmu"},
        ]
    }
    path = tmp_path / "probes.json"
    path.write_text(json.dumps(probes))
    code, out, _ = run_cli(capsys, [
        "rigidity", "--arity", "2", "--box", "2", "--format", "json",
        "--probes", str(path)])
    assert code == 0
    payload = json.loads(out)
    assert payload["verdict"] == "inner"
    # [d1 - d2, t_i dmu] = (+/-1) t_i dmu reproduces the table
    assert payload["recovered_a"]


def test_rigidity_inconsistent_table(capsys, tmp_path):
    probes = {
        "probes": [
            {"x": "dmu", "dx": "0"},
            {"x": "t1*dmu + t2*dmu", "dx": "t1^2*dmu"},
        ]
    }
    path = tmp_path / "probes.json"
    path.write_text(json.dumps(probes))
    code, out, _ = run_cli(capsys, [
        "rigidity", "--arity", "2", "--box", "2", "--format", "json",
        "--probes", str(path)])
    assert code == 1
    payload = json.loads(out)
    assert payload["verdict"] == "inconsistent"
    assert payload["certificate"]


def test_rigidity_missing_file_is_usage_error(capsys, tmp_path):
    with pytest.raises(SystemExit) as exc:
        main(["rigidity", "--arity", "2", "--probes", str(tmp_path / "nope.json")])
    assert exc.value.code == 2


def test_fuzz_deterministic(capsys):
    argv = ["fuzz", "--arity", "2", "--box", "2", "--count", "50",
            "--seed", "7", "--format", "json", "jacobi"]
    first = run_cli(capsys, argv)
    second = run_cli(capsys, argv)
    assert first == second
    assert first[0] == 0
    payload = json.loads(first[1])
    assert payload["passes"] == 50 and payload["failures"] == 0


def test_fuzz_closure_on_variant(capsys):
    code, out, _ = run_cli(capsys, [
        "fuzz", "--arity", "2", "--variant", "wnplus", "--box", "2",
        "--count", "60", "closure"])
    assert code == 0
    assert "60/60 pass" in out


def test_module_entry_point():
    result = subprocess.run(
        [sys.executable, "-m", "wittkit", "bracket", "--arity", "1",
         "t1^-1*d1", "t1*d1"],
        capture_output=True,
        text=True,
        check=False,
        timeout=60,
    )
    assert result.returncode == 0
    assert result.stdout.strip() == "2*d1"
