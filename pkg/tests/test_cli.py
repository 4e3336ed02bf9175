import json
import subprocess
import sys
from pathlib import Path

import pytest
from conftest import FIXTURES

from rankzeta.cli import main
from rankzeta.invariants import profile
from rankzeta.rmcode import load_code

C1 = str(FIXTURES / "c1.json")
MDS = str(FIXTURES / "hamming" / "mds_4_2_f3.json")
NON_MDS = str(FIXTURES / "hamming" / "non_mds_4_2_f3.json")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    assert code == 0
    return json.loads(out)


def test_invariants_table(capsys):
    code, out, _ = run(capsys, "invariants", "--code", C1, "--i", "2")
    assert code == 0
    assert "W = 13XY^2 + 638Y^3" in out
    assert "b = (13/7, 651)" in out


def test_invariants_json(capsys):
    obj = run_json(capsys, "invariants", "--code", C1, "--all-i")
    assert len(obj) == 7
    assert obj[3]["A"] == [0, 0, 1, 1394]


def test_zeta(capsys):
    obj = run_json(capsys, "zeta", "--code", C1, "--i", "3", "--order", "4", "--tau", "1", "--beta")
    assert obj["Z"] == ["1/7", 1395, 6347715, 26167664835, 107225699266755]
    assert obj["reference"]["Z"][:4] == [155, 788035, 3269560515, 13402854502595]
    assert obj["beta"]["values"] == ["1/1085", "145108/33635"]


def test_zeta_beta_count(capsys):
    obj = run_json(capsys, "zeta", "--code", C1, "--i", "3", "--tau", "1", "--beta", "--beta-count", "3")
    assert obj["beta"]["values"][2] == "-440232944/1042685"


def test_zeta_times_phi(capsys):
    code, out, _ = run(capsys, "zeta", "--code", C1, "--i", "2", "--order", "2", "--times-phi")
    assert code == 0
    assert "Z*phi_3 at T^1: 13XY^2 + 638Y^3" in out
    assert "Z*phi_3 at T^2: 13X^2Y + 4518XY^2 + 169720Y^3" in out


def test_zeta_usage_errors(capsys):
    assert run(capsys, "zeta", "--code", C1, "--i", "9")[0] == 1
    assert run(capsys, "zeta", "--code", C1, "--i", "2", "--beta")[0] == 1
    assert run(capsys, "zeta", "--code", C1, "--i", "2", "--tau", "4")[0] == 1


def test_classify(capsys):
    obj = run_json(capsys, "classify", "--code", C1, "--dual")
    assert obj["C"]["minimal_bmd_index"] == 4
    assert obj["C-perp"]["weights"] == [0, 1, 2, 2, 3, 3, 3]
    assert obj["wei_duality_consistent"] is True


def test_oracle_check_random(capsys):
    code, out, _ = run(capsys, "oracle-check", "--random", "n=3", "m=3", "k=4", "q=2", "seed=7")
    assert code == 0
    assert "15 passed, 0 failed, 0 skipped" in out


def test_oracle_check_code(capsys):
    obj = run_json(capsys, "oracle-check", "--code", C1)
    assert obj["ok"] is True


def test_oracle_check_corrupt_profile(capsys, tmp_path):
    prof = profile(load_code(C1), 2).to_json()
    prof["A"][3] = 639
    path = tmp_path / "p.json"
    path.write_text(json.dumps(prof))
    code, out, _ = run(capsys, "oracle-check", "--code", C1, "--profile", str(path))
    assert code == 3
    assert "first violated identity: profile B->A inversion" in out


def test_oracle_check_good_profile(capsys, tmp_path):
    path = tmp_path / "p.json"
    C = load_code(C1)
    path.write_text(json.dumps([profile(C, i).to_json() for i in range(C.k + 1)]))
    assert run(capsys, "oracle-check", "--code", C1, "--profile", str(path))[0] == 0


def test_oracle_check_bad_random(capsys):
    assert run(capsys, "oracle-check", "--random", "n=3", "m=3")[0] == 1
    assert run(capsys, "oracle-check", "--random", "n=3", "m=3", "k=x")[0] == 1
    assert run(capsys, "oracle-check", "--random", "z=1")[0] == 1
    assert run(capsys, "oracle-check", "--random", "n=2", "m=2", "k=9")[0] == 1


def test_hamming(capsys):
    obj = run_json(capsys, "hamming", "--code", MDS)
    assert obj["weights"] == [0, 3, 4]
    assert obj["minimal_bmd_index"] == 1
    assert obj["closed_forms"][0]["A"] == obj["closed_forms"][0]["A_direct"]
    obj = run_json(capsys, "hamming", "--code", NON_MDS)
    assert obj["per_i"][0] == {"i": 1, "d_i": 1, "BMD": False, "MDS": False}


def test_reference(capsys):
    code, out, _ = run(capsys, "reference", "--tau", "1", "--j", "3", "--q", "2", "--m", "4", "--n", "3")
    assert code == 0
    assert "M_1,2 = 1085XY^2 + 786950Y^3" in out
    assert "M_1,3 = 155Y^3" in out
    assert run(capsys, "reference", "--tau", "4", "--j", "3", "--q", "2", "--m", "4", "--n", "3")[0] == 1


def test_phi(capsys):
    code, out, _ = run(capsys, "phi", "--n", "3", "--q", "2")
    assert code == 0
    assert "T^3: X^3 - 7X^2Y + 14XY^2 - 8Y^3" in out


def test_bell(capsys):
    code, out, _ = run(capsys, "bell", "--a", "5", "--b", "3")
    assert code == 0 and out.strip() == "P_5,3 = 3x_0^2x_1^2x_3 + 3x_0^2x_1x_2^2"
    obj = run_json(capsys, "bell", "--a", "5")
    assert {"exponents": [4, 0, 0, 0, 0, 1], "coeff": 1} in obj["terms"]
    assert run(capsys, "bell", "--a", "-1")[0] == 1


def test_macwilliams(capsys):
    obj = run_json(capsys, "macwilliams", "--code", C1, "--i", "2")
    assert [row[1] for row in obj["dual_moments"]] == [7, 1, 0]
    assert obj["reconstructed"][2] == 13
    assert obj["reconstructed"] == obj["direct"]


def test_fixtures(capsys, tmp_path):
    code, out, _ = run(capsys, "fixtures")
    assert code == 0 and out.split() == ["c1", "c2", "c3", "c4", "c5", "c6", "c7", "zero_3x4", "dqmrd_3x4"]
    code, out, _ = run(capsys, "fixtures", "--show", "c1")
    assert json.loads(out) == json.loads(Path(C1).read_text())
    assert run(capsys, "fixtures", "--show", "nope")[0] == 1
    assert run(capsys, "fixtures", "--export", str(tmp_path / "out"))[0] == 0
    assert len(list((tmp_path / "out").glob("*.json"))) == 9


def test_usage_exit_codes(capsys, tmp_path):
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["invariants", "--code", C1])
    assert exc.value.code == 1
    assert run(capsys, "invariants", "--code", str(tmp_path / "missing.json"), "--i", "0")[0] == 1
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    code, _, err = run(capsys, "invariants", "--code", str(bad), "--i", "0")
    assert code == 1 and "line 1" in err
    dep = tmp_path / "dep.json"
    dep.write_text(json.dumps({"q": 2, "n": 1, "m": 1, "generators": [[[1]], [[1]]]}))
    assert run(capsys, "invariants", "--code", str(dep), "--i", "0")[0] == 1


def test_budget_exit_code(capsys):
    code, _, err = run(capsys, "--budget", "5", "invariants", "--code", C1, "--i", "2")
    assert code == 2 and "budget" in err
    # the override does not leak into later calls
    assert run(capsys, "invariants", "--code", C1, "--i", "2")[0] == 0


def test_budget_env(capsys, monkeypatch):
    monkeypatch.setenv("RANKZETA_BUDGET", "3")
    assert run(capsys, "invariants", "--code", C1, "--i", "2")[0] == 2


def test_output_is_stable(capsys):
    first = run(capsys, "zeta", "--code", C1, "--i", "2", "--format", "json")[1]
    second = run(capsys, "zeta", "--code", C1, "--i", "2", "--format", "json")[1]
    assert first == second


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "rankzeta", "phi", "--n", "2", "--q", "3"],
                          capture_output=True, text=True, timeout=60)
    assert proc.returncode == 0
    assert "T^2:" in proc.stdout
