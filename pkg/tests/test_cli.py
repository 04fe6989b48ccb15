import io
import json
import subprocess
import sys

import pytest

from laumon.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def write_json(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


VACUUM = {"kind": "affine", "n": 3, "lambdas": [[], [], []]}


def test_enumerate_single_box():
    code, text = run("enumerate", "--kind", "affine", "-n", "3", "--degree", "1,0,0")
    assert code == 0
    assert json.loads(text) == [{"kind": "affine", "n": 3, "lambdas": [[1], [], []]}]


def test_enumerate_finite():
    code, text = run("enumerate", "--kind", "finite", "-n", "3", "--degree", "1,1")
    assert code == 0
    assert len(json.loads(text)) == 2


def test_apply_e_on_vacuum(tmp_path):
    state = write_json(tmp_path, "vac.json", VACUUM)
    code, text = run("apply", "--gen", "e", "-i", "1", "--state", state)
    assert code == 0
    assert json.loads(text) == [{"pattern": {"kind": "affine", "n": 3, "lambdas": [[1], [], []]}, "coeff": "-1 / h"}]


def test_apply_linear_combination(tmp_path):
    state = write_json(tmp_path, "v.json", [{"pattern": VACUUM, "coeff": "x1"}, {"pattern": VACUUM, "coeff": "h"}])
    code, text = run("apply", "--gen", "h_diag", "-i", "1", "--state", state)
    assert code == 0
    (term,) = json.loads(text)
    assert term["pattern"] == VACUUM


def test_verify_xvi_exit_code():
    code, text = run("verify", "xvi", "-n", "3", "--max-degree", "2")
    assert code == 0
    assert json.loads(text)["status"] == "pass"


def test_failures_only_drops_passing_entries():
    code, text = run("verify", "localization", "-n", "3", "--max-degree", "1", "--failures-only")
    assert code == 0
    assert json.loads(text)["entries"] == []


def test_character_command():
    code, text = run("character", "--mu", "0,0,0", "--level", "1", "--cutoff", "3")
    assert code == 0
    assert json.loads(text)["match"] is True


def test_localize_edge(tmp_path):
    pat = write_json(tmp_path, "vac.json", VACUUM)
    code, text = run("localize", "edge", "--pattern", pat, "-i", "1", "-j", "1")
    assert code == 0
    doc = json.loads(text)
    assert doc["e"] == "-1 / h"


def test_localize_tangent_of_vacuum(tmp_path):
    pat = write_json(tmp_path, "vac.json", VACUUM)
    code, text = run("localize", "tangent", "--pattern", pat)
    assert code == 0
    assert json.loads(text)["weights"] == []


@pytest.mark.parametrize("argv", [
    ["enumerate", "--kind", "affine", "-n", "3", "--degree", "1,0"],
    ["enumerate", "--kind", "affine", "-n", "3", "--degree", "a,b,c"],
    ["verify", "xvi", "-n", "2", "--max-degree", "1"],
    ["verify", "truncation", "-n", "3", "--max-degree", "1"],
    ["character", "--mu", "0,1,0", "--level", "1", "--cutoff", "2"],
    ["bogus"],
])
def test_malformed_input_exits_2(argv):
    code, _ = run(*argv)
    assert code == 2


def test_bad_state_file(tmp_path):
    state = write_json(tmp_path, "bad.json", {"kind": "affine", "n": 3, "lambdas": [[1, 2], [], []]})
    code, text = run("apply", "--gen", "e", "-i", "1", "--state", state)
    assert code == 2
    assert "error" in json.loads(text)


def test_config_file(tmp_path):
    cfg = tmp_path / "laumon.cfg"
    cfg.write_text("order = 4\njobs = 1\n")
    code, _ = run("--config", str(cfg), "verify", "xvi", "-n", "3", "--max-degree", "1")
    assert code == 0
    cfg.write_text("colour = blue\n")
    code, _ = run("--config", str(cfg), "verify", "xvi", "-n", "3", "--max-degree", "1")
    assert code == 2


def test_n2_behind_flag(tmp_path):
    state = write_json(tmp_path, "v2.json", {"kind": "affine", "n": 2, "lambdas": [[], []]})
    assert run("apply", "--gen", "e", "-i", "1", "--state", state)[0] == 2
    cfg = tmp_path / "n2.cfg"
    cfg.write_text("allow_n2 = true\n")
    assert run("--config", str(cfg), "apply", "--gen", "e", "-i", "1", "--state", state)[0] == 0


def test_parallel_output_is_identical():
    a = run("verify", "k-identity", "-n", "3", "--max-degree", "2", "--jobs", "1")
    b = run("verify", "k-identity", "-n", "3", "--max-degree", "2", "--jobs", "3")
    assert a == b


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "laumon", "enumerate", "--kind", "affine", "-n", "3",
                           "--degree", "0,0,0"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout) == [VACUUM]


def test_xvi_per_component_flag():
    code, text = run("verify", "xvi", "-n", "3", "--max-degree", "1", "--per-component")
    assert code == 0
    assert json.loads(text)["params"]["per_component"] is True
    assert run("verify", "xvi", "-n", "3", "--max-degree", "1", "--per-component", "--mode", "all")[0] == 2
