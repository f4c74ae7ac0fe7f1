import json
import subprocess
import sys

import numpy as np
import pytest

from jordansym import BlockAlgebra, CanonicalForm, JordanMap, PureState
from jordansym.acceptance import thomsen_fixture
from jordansym.cli import main


def write(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)


def run_json(capsys, *argv):
    capsys.readouterr()
    code = main([*argv, "--json"])
    out = capsys.readouterr().out
    return code, (json.loads(out) if out else None)


@pytest.fixture
def m2_files(tmp_path):
    A = BlockAlgebra((2, 1))
    return {
        "e1": write(tmp_path / "e1.json", PureState(A, 0, [1, 0]).to_json()),
        "e2": write(tmp_path / "e2.json", PureState(A, 0, [0, 1]).to_json()),
        "c": write(tmp_path / "c.json", PureState(A, 1, [1]).to_json()),
        "plus": write(tmp_path / "plus.json", {"block": 0, "re": [1, 1], "im": [0, 0]}),
    }


def test_tp_orthogonal_and_cross_block(capsys, m2_files):
    for other in ("e2", "c"):
        code, rep = run_json(capsys, "tp", m2_files["e1"], m2_files[other])
        assert code == 0
        assert rep["amplitude"] == rep["norm"] == rep["carrier"] == 0


def test_tp_bare_state_needs_algebra(capsys, m2_files):
    assert main(["tp", m2_files["e1"], m2_files["plus"]]) == 2
    code, rep = run_json(capsys, "tp", m2_files["e1"], m2_files["plus"], "--algebra", "2,1")
    assert code == 0 and rep["amplitude"] == pytest.approx(0.5)


def test_tp_errors(tmp_path, m2_files):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["tp", m2_files["e1"], str(bad)]) == 2
    assert main(["tp", m2_files["e1"], str(tmp_path / "missing.json")]) == 2
    other = write(tmp_path / "o.json", PureState(BlockAlgebra((2,)), 0, [1, 0]).to_json())
    assert main(["tp", m2_files["e1"], other]) == 2


def test_check_jordan(tmp_path, capsys):
    A = BlockAlgebra((2, 2))
    ident = write(tmp_path / "id.json", JordanMap.identity(A).to_json())
    code, rep = run_json(capsys, "check-jordan", ident, "--trials", "5")
    assert code == 0 and rep["passed"]
    transpose = CanonicalForm(A, (0, 1), (np.eye(2),) * 2, (True, True)).jordan()
    code, _ = run_json(capsys, "check-jordan", write(tmp_path / "t.json", transpose.to_json()),
                       "--trials", "5")
    assert code == 0
    scaled = write(tmp_path / "s.json", JordanMap(A, 2 * np.eye(A.real_dim)).to_json())
    code, rep = run_json(capsys, "check-jordan", scaled)
    assert code == 1 and rep["jordan"]["witness"] is not None


def test_decompose(tmp_path, capsys):
    code, rep = run_json(capsys, "decompose", write(tmp_path / "f.json", thomsen_fixture().to_json()))
    assert code == 0
    assert rep["labels"] == ["HOM", "ANTI", "BOTH"]
    code, rep = run_json(capsys, "decompose",
                         write(tmp_path / "i.json", JordanMap.identity(BlockAlgebra((2,))).to_json()))
    assert rep["p1_blocks"] == [1]
    code, rep = run_json(capsys, "decompose",
                         write(tmp_path / "c.json", JordanMap.identity(BlockAlgebra((1,))).to_json()))
    assert rep["p3_blocks"] == [1]
    bad = write(tmp_path / "bad.json", JordanMap(BlockAlgebra((2,)), 2 * np.eye(4)).to_json())
    assert main(["decompose", bad]) == 1


def test_extract(tmp_path, capsys):
    path = write(tmp_path / "f.json", thomsen_fixture().to_json())
    code, rep = run_json(capsys, "extract", path, "0")
    assert code == 0 and rep["operator"]["antiunitary"] is False
    code, rep = run_json(capsys, "extract", path, "1")
    assert code == 0 and rep["operator"]["antiunitary"] is True
    code, rep = run_json(capsys, "extract", path, "2")
    assert rep["operator"]["u"]["re"] == [1.0]
    assert main(["extract", path, "1", "--kind", "HOM"]) == 2
    assert main(["extract", path, "7"]) == 2


def test_reconstruct(tmp_path, capsys):
    A = BlockAlgebra((2, 1))
    ident = CanonicalForm(A, (0, 1), (np.eye(2), np.eye(1)), (False, False))
    code, rep = run_json(capsys, "reconstruct", write(tmp_path / "i.json", ident.to_json()))
    assert code == 0
    np.testing.assert_allclose(rep["jordan"]["matrix"], np.eye(5), atol=1e-10)
    assert main(["random", "wigner", "--algebra", "4,3,1", "--seed", "3",
                 "--output", str(tmp_path / "w.json")]) == 0
    code, rep = run_json(capsys, "reconstruct", str(tmp_path / "w.json"))
    assert code == 0 and rep["residual"] < 1e-8
    skew = CanonicalForm(A, (0, 1), (np.diag([1.0, 2.0]), np.eye(1)), (False, False))
    assert main(["reconstruct", write(tmp_path / "n.json", skew.to_json())]) == 1


def test_orientation(tmp_path, capsys):
    B = BlockAlgebra((2, 2))
    mixed = CanonicalForm(B, (0, 1), (np.eye(2),) * 2, (False, True)).jordan()
    code, rep = run_json(capsys, "orientation", write(tmp_path / "m.json", mixed.to_json()))
    assert code == 0 and rep["verdict"] == "MIXED"
    code, rep = run_json(capsys, "orientation",
                         write(tmp_path / "t.json", JordanMap.identity(BlockAlgebra((1, 1))).to_json()))
    assert rep["verdict"] == "TRIVIAL"
    main(["random", "jordan", "--algebra", "3", "--transpose", "none", "--output",
          str(tmp_path / "p.json")])
    code, rep = run_json(capsys, "orientation", str(tmp_path / "p.json"))
    assert rep["verdict"] == "PRESERVING"


def test_random_is_deterministic(tmp_path):
    for kind in ("jordan", "wigner", "state"):
        a, b = tmp_path / f"{kind}a.json", tmp_path / f"{kind}b.json"
        for path in (a, b):
            assert main(["random", kind, "--algebra", "[3,2,2]", "--seed", "99",
                         "--output", str(path)]) == 0
        assert a.read_bytes() == b.read_bytes()


def test_random_map_passes_checks(tmp_path, capsys):
    path = str(tmp_path / "j.json")
    main(["random", "jordan", "--algebra", "2,3", "--transpose", "0,1", "--seed", "5",
          "--output", path])
    assert main(["check-jordan", path, "--trials", "5"]) == 0
    code, rep = run_json(capsys, "decompose", path)
    assert rep["labels"] == ["HOM", "ANTI"]


def test_random_rejects_bad_arguments():
    assert main(["random", "jordan", "--algebra", "2,x"]) == 2
    assert main(["random", "jordan", "--algebra", "2,2", "--transpose", "1"]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["random", "jordan", "--algebra", "2", "--seed", "-1"])
    assert exc.value.code == 2


def test_reports_are_byte_identical(tmp_path):
    path = write(tmp_path / "f.json", thomsen_fixture().to_json())
    outs = []
    for k in range(2):
        out = tmp_path / f"r{k}.json"
        assert main(["orientation", path, "--seed", "4", "--json", "--output", str(out)]) == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_tolerance_override_fails(tmp_path):
    main(["random", "jordan", "--algebra", "3", "--output", str(tmp_path / "j.json")])
    assert main(["extract", str(tmp_path / "j.json"), "0", "--tol.extraction", "1e-30"]) == 1


def test_selftest_small_scale(capsys):
    code = main(["selftest", "--scale", "0.05", "--seed", "3"])
    out = capsys.readouterr().out
    assert code == 0
    assert out.count("[PASS]") == 11


def test_selftest_over_tight_tolerance(capsys):
    code = main(["selftest", "--scale", "0.05", "--tol.extraction", "1e-15"])
    out = capsys.readouterr().out
    assert code == 1 and "[FAIL] criterion  5" in out


@pytest.mark.parametrize("seed", range(10))
def test_selftest_seed_variation(seed):
    assert main(["selftest", "--scale", "0.05", "--seed", str(seed), "--json",
                 "--output", "/dev/null"]) == 0


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "jordansym", "--help"], capture_output=True, text=True)
    assert out.returncode == 0
    for cmd in ("tp", "check-jordan", "decompose", "extract", "reconstruct", "orientation",
                "random", "selftest"):
        assert cmd in out.stdout
