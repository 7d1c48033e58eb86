"""CLI surface: exit codes, JSON schemas, piping, determinism."""

import json
import subprocess
import sys

from cublink.cli import main


def run_cli(args, stdin=None):
    proc = subprocess.run(
        [sys.executable, "-m", "cublink.cli", *args],
        input=stdin,
        capture_output=True,
        text=True,
    )
    return proc.returncode, proc.stdout


def test_generate_boolean_pipes_into_check(tmp_path):
    code, out = run_cli(["generate", "boolean", "--n", "3"])
    assert code == 0
    poset = json.loads(out)
    assert len(poset["elements"]) == 8
    code, out = run_cli(["check", "--type", "C"], stdin=out)
    assert code == 0
    verdict = json.loads(out)
    assert verdict["pass"] is True


def test_check_bowtie_star_exits_one(tmp_path):
    bowtie = {
        "type": "A",
        "vertices": ["x", "a", "a'", "b", "b'"],
        "maximal_simplices": [
            ["x", "a", "b"], ["x", "a", "b'"], ["x", "a'", "b"], ["x", "a'", "b'"],
        ],
    }
    path = tmp_path / "bowtie_star.json"
    path.write_text(json.dumps(bowtie))
    code, out = run_cli(["check", "--type", "A", str(path)])
    assert code == 1
    verdict = json.loads(out)
    assert verdict["pass"] is False
    failure = verdict["failures"][0]
    assert failure["vertex"] == "x"
    assert failure["witness"] == {"a": "a", "b": "a'", "c": "b", "d": "b'"}


def test_tightspan_two_points(tmp_path):
    path = tmp_path / "two_points.json"
    path.write_text(json.dumps({"points": ["x", "y"], "dist": [["0", "5"], ["5", "0"]]}))
    code, out = run_cli(["tightspan", str(path), "--dress", "1"])
    assert code == 0
    payload = json.loads(out)
    assert payload["dimension"] == 1
    assert payload["dress"] is True


def test_garside_check_on_generated_column(tmp_path):
    phi_path = tmp_path / "phi.json"
    code, out = run_cli(
        ["generate", "column", "--n", "2", "--depth", "1", "--phi-out", str(phi_path)]
    )
    assert code == 0
    code, verdict_out = run_cli(
        ["check", "--type", "garside", "--phi", str(phi_path), "--assume-simply-connected"],
        stdin=out,
    )
    assert code == 0
    verdict = json.loads(verdict_out)
    assert verdict["pass"] and verdict["certificate"] == "CUB_and_injective_certified"


def test_dist_between_square_corners():
    code, out = run_cli(["generate", "boolean", "--n", "2"])
    assert code == 0
    code, out = run_cli(
        ["dist", "--from", "{1}", "--to", "{2}", "--mesh", "1/4"],
        stdin=out,
    )
    assert code == 0
    assert json.loads(out)["distance"] == "1"


def test_dist_label_that_looks_like_json():
    code, out = run_cli(["generate", "boolean", "--n", "3"])
    code, out = run_cli(["dist", "--from", "{}", "--to", "{1,2,3}", "--mesh", "1/8"], stdin=out)
    assert code == 0
    assert json.loads(out)["distance"] == "1"


def test_dist_accepts_chain_points(tmp_path):
    code, poset_out = run_cli(["generate", "boolean", "--n", "2"])
    p = json.dumps({"chain": ["{}", "{1}", "{1,2}"], "coords": ["0", "0"]})
    q = json.dumps({"chain": ["{}", "{2}", "{1,2}"], "coords": ["1", "1"]})
    code, out = run_cli(["dist", "--from", p, "--to", q, "--mesh", "1/4"], stdin=poset_out)
    assert code == 0
    assert json.loads(out)["distance"] == "1"


def test_groupdev_pipeline(tmp_path):
    from cublink.groupdev import s4_simplex

    path = tmp_path / "s4.json"
    path.write_text(json.dumps(s4_simplex().to_json()))
    code, out = run_cli(["groupdev", str(path)])
    assert code == 0
    payload = json.loads(out)
    assert payload["conditions"]["holds"] is True
    assert all(v["pass"] for v in payload["developments"].values())


def test_groupdev_builtin_example():
    code, out = run_cli(["groupdev", "--example", "s4", "--conditions-only"])
    assert code == 0
    assert json.loads(out)["conditions"]["holds"] is True


def test_usage_error_is_machine_readable(tmp_path):
    path = tmp_path / "garbage.json"
    path.write_text("not json")
    code, out = run_cli(["check", "--type", "A", str(path)])
    assert code == 2
    assert json.loads(out)["error"] == "usage"


def test_output_is_byte_deterministic():
    runs = {run_cli(["generate", "affine-patch", "--n", "2", "--radius", "1"])[1] for _ in range(3)}
    assert len(runs) == 1


def test_selftest_quick():
    code, out = run_cli(["selftest", "--quick"])
    assert code == 0
    payload = json.loads(out)
    assert payload["pass"] is True
    assert len(payload["suites"]) == 5


def test_main_callable_directly(capsys):
    assert main(["generate", "boolean", "--n", "1"]) == 0
    out = capsys.readouterr().out
    assert json.loads(out)["elements"] == ["{1}", "{}"]
