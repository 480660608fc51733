import json

import numpy as np
import pytest

from gfusion.cli import main
from gfusion.duality import parsevalize
from gfusion.gen import GenConfig, mercedes_frame, orthonormal_basis_frame, random_frame, two_atom_frame
from gfusion.io import load_frame, save_frame
from gfusion.model import GFusionFrame
from gfusion.operators import frame_operator


@pytest.fixture
def files(tmp_path):
    def put(name, frame):
        path = tmp_path / name
        save_frame(frame, path)
        return str(path)

    return put


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_gen_parseval(tmp_path, capsys):
    out = tmp_path / "p.json"
    code, _, _ = run(capsys, "gen", "--dim", "3", "--atoms", "5", "--kind", "parseval", "--seed", "7", "-o", str(out))
    assert code == 0
    fr = load_frame(out)
    assert np.linalg.norm(frame_operator(fr).matrix - np.eye(3), 2) <= 1e-9


def test_gen_stdout_identical(capsys):
    argv = ("gen", "--dim", "4", "--atoms", "6", "--seed", "3", "--scalar", "complex")
    a = run(capsys, *argv)[1]
    b = run(capsys, *argv)[1]
    assert a == b and json.loads(a)["scalar"] == "complex"


@pytest.mark.parametrize("argv", [("--dim", "0", "--atoms", "3"), ("--dim", "3", "--atoms", "2", "--kind", "tight", "--lambda", "-1")])
def test_gen_invalid(capsys, argv):
    code, out, err = run(capsys, "gen", *argv)
    assert code == 2 and out == "" and err


def test_gen_unwritable(tmp_path, capsys):
    assert run(capsys, "gen", "--dim", "2", "--atoms", "2", "-o", str(tmp_path))[0] == 3


def test_analyze_basis(files, capsys):
    code, out, _ = run(capsys, "analyze", files("e.json", orthonormal_basis_frame(2)))
    doc = json.loads(out)
    assert code == 0
    assert doc["A"] == 1.0 and doc["B"] == 1.0 and doc["tight"] and doc["parseval"] and doc["condition"] == 1.0


def test_analyze_diag(files, capsys):
    doc = json.loads(run(capsys, "analyze", files("d.json", two_atom_frame()))[1])
    assert doc["A"] == pytest.approx(1.0) and doc["B"] == pytest.approx(2.0) and doc["condition"] == pytest.approx(2.0)
    assert not doc["tight"] and not doc["parseval"]


def test_analyze_rank_deficient(files, capsys):
    fr = random_frame(GenConfig(dim=4, atoms=6, seed=1, kind="bessel_only"))
    code, out, err = run(capsys, "analyze", files("b.json", fr))
    assert code == 4 and json.loads(out)["frame"] is False and "Bessel" in err


def test_missing_and_malformed(tmp_path, capsys):
    assert run(capsys, "analyze", str(tmp_path / "nope.json"))[0] == 3
    bad = tmp_path / "bad.json"
    bad.write_text('{"version": 1, "scalar": "real", "dim": 1, "atoms": [{"id": "a", "mu": NaN}]}')
    assert run(capsys, "analyze", str(bad))[0] == 2


def test_check_mercedes(files, capsys, tmp_path):
    rep = tmp_path / "r.json"
    code, _, _ = run(capsys, "check", files("m.json", mercedes_frame()), "--trials", "20", "--report", str(rep))
    doc = json.loads(rep.read_text())
    assert code == 0 and doc["overall_pass"]
    assert "implemented" in doc["corrected_forms_note"]


def test_check_perturbed_parseval_fails(files, capsys):
    p = parsevalize(mercedes_frame())
    ops = list(p.operators)
    ops[0] = ops[0] * (1 + 1e-3)
    bent = GFusionFrame(p.dim, p.scalar, p.space, p.subspaces, tuple(ops))
    code, out, err = run(capsys, "check", files("q.json", bent), "--trials", "5")
    doc = json.loads(out)
    assert code == 5 and not doc["overall_pass"]
    assert any("NotParseval" in c.get("error", "") for c in doc["checks"])
    assert "FAIL" in err


def test_check_skip_inapplicable(files, capsys):
    fr = random_frame(GenConfig(dim=3, atoms=5, seed=2))
    code, out, _ = run(capsys, "check", files("r.json", fr), "--trials", "5", "--skip-inapplicable")
    doc = json.loads(out)
    assert code == 0 and doc["skipped"]


def test_check_subset(files, capsys):
    path = files("m.json", mercedes_frame())
    assert run(capsys, "check", path, "--trials", "3", "--subset", "0,2")[0] == 0
    code, _, err = run(capsys, "check", path, "--subset", "0,9")
    assert code == 2 and "9" in err


def test_check_workers_same_bytes(files, capsys, tmp_path):
    path = files("f.json", random_frame(GenConfig(dim=3, atoms=4, seed=5, kind="parseval")))
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(capsys, "check", path, "--trials", "10", "--report", str(a))
    run(capsys, "check", path, "--trials", "10", "--workers", "4", "--report", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_dual_and_parsevalize(files, capsys, tmp_path):
    path = files("d.json", two_atom_frame())
    out = tmp_path / "dual.json"
    assert run(capsys, "dual", path, "-o", str(out))[0] == 0
    np.testing.assert_allclose(frame_operator(load_frame(out)).matrix, np.diag([0.5, 1.0]), atol=1e-12)
    out = tmp_path / "pv.json"
    assert run(capsys, "parsevalize", path, "-o", str(out))[0] == 0
    np.testing.assert_allclose(frame_operator(load_frame(out)).matrix, np.eye(2), atol=1e-12)


def test_dual_not_frame(files, capsys):
    fr = random_frame(GenConfig(dim=4, atoms=6, seed=1, kind="bessel_only"))
    assert run(capsys, "dual", files("b.json", fr))[0] == 4
    assert run(capsys, "parsevalize", files("b.json", fr))[0] == 4


def test_pair_identity(files, capsys):
    e = files("e.json", orthonormal_basis_frame(2))
    code, out, _ = run(capsys, "pair", e, e, "--check-resolution", "--perturbation")
    doc = json.loads(out)
    assert code == 0
    assert doc["norm"] == 1.0 and doc["sigma_min"] == 1.0 and doc["invertible"]
    assert doc["resolution"]["pass"] and doc["perturbation"]["lambda1_star"] == 0.0


def test_pair_half_witness(files, capsys):
    v = files("v.json", orthonormal_basis_frame(2))
    w = files("w.json", orthonormal_basis_frame(2).replace(omega=[1.0, 0.5]))
    code, out, _ = run(capsys, "pair", v, w, "--perturbation")
    p = json.loads(out)["perturbation"]
    assert code == 0 and p["lambda1_star"] == pytest.approx(0.5) and p["certificate"] == pytest.approx(0.25)


def test_pair_zero_fails_resolution(files, capsys):
    fr = orthonormal_basis_frame(2)
    zero = GFusionFrame(2, "real", fr.space, fr.subspaces, tuple(np.zeros_like(op) for op in fr.operators))
    code, out, _ = run(capsys, "pair", files("v.json", fr), files("z.json", zero), "--check-resolution")
    assert code == 5 and json.loads(out)["resolution"]["pass"] is False


def test_pair_user_constants(files, capsys):
    v = files("v.json", orthonormal_basis_frame(2))
    w = files("w.json", orthonormal_basis_frame(2).replace(omega=[1.0, 0.5]))
    code, out, _ = run(capsys, "pair", v, w, "--perturbation", "--lambda1", "0.5", "--lambda2", "0")
    assert code == 0 and json.loads(out)["perturbation"]["user"]["verified"]
    assert run(capsys, "pair", v, w, "--perturbation", "--lambda1", "2", "--lambda2", "0")[0] == 2


def test_pair_incompatible(files, capsys):
    code, _, err = run(capsys, "pair", files("a.json", orthonormal_basis_frame(2)), files("b.json", mercedes_frame()))
    assert code == 2 and "incompatible" in err
