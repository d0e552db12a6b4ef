import json

import pytest

from poincare_hopf import generators
from poincare_hopf.cli import main, run
from poincare_hopf.off import write_off


def _strip(report):
    return {k: v for k, v in report.items() if k != "wall_time_ms"}


def test_verify_tetrahedron():
    report, code = run(["verify", "tetrahedron", "--trials", "100"])
    assert code == 0 and report["pass"] is True
    assert report["results"]["euler"] == 2
    assert report["results"]["trials_passed"] == 100
    assert report["schema"] == 1 and report["seed"] == 0


def test_verify_is_deterministic(capsys):
    main(["verify", "klein:4x4", "--trials", "20", "--seed", "3"])
    first = json.loads(capsys.readouterr().out)
    main(["verify", "klein:4x4", "--trials", "20", "--seed", "3"])
    second = json.loads(capsys.readouterr().out)
    assert _strip(first) == _strip(second)
    assert first["seed"] == 3


def test_lemma_power2():
    report, code = run(["lemma", "--field", "power:2", "--level", "3"])
    assert code == 0
    r = report["results"]
    assert r["planar"] == r["solid_angle"] == r["regular_value"] == 2


def test_lemma_constant_is_input_error():
    report, code = run(["lemma", "--field", "const"])
    assert code == 1 and report["pass"] is False
    assert "NoIsolatedZero" in report["error"]


def test_cover_rp2(tmp_path):
    out = tmp_path / "cover.off"
    csv = tmp_path / "cover.csv"
    report, code = run(["cover", "rp2", "-o", str(out), "--csv", str(csv)])
    assert code == 0
    c = report["results"]["cover"]
    assert (c["euler"], c["connected"], c["orientable"]) == (2, True, True)
    assert out.read_text().startswith("OFF\n12 20 30\n")
    assert csv.read_text().startswith("cover_id,base_id,deck_id\n")


def test_audit_file_and_builtin_agree(tmp_path):
    path = tmp_path / "t.off"
    write_off(generators.torus_grid(4, 4), path)
    a, code_a = run(["audit", str(path)])
    b, code_b = run(["audit", "torus:4x4"])
    assert code_a == code_b == 0
    assert a["results"] == b["results"]
    assert a["results"]["genus"] == 1 and a["results"]["orientable"]
    assert a["input_digest"].startswith("sha256:")


def test_audit_rp2():
    report, _ = run(["audit", "rp2"])
    r = report["results"]
    assert (r["euler"], r["orientable"], r["genus"]) == (1, False, 1)
    assert r["non_orientable_witness"]


def test_hopf_command():
    report, code = run(["hopf", "cube_sphere"])
    assert code == 0
    r = report["results"]
    assert r["total"] == r["euler"] == 2
    assert r["index_by_kind"] == {"0": [1], "1": [-1], "2": [1]}
    assert r["gradient_mismatches"] == []
    assert len(r["table"]) == 38


@pytest.mark.parametrize("field,idx", [("power:3", 3), ("conj:1", -1), ("const", 0)])
def test_index_command(field, idx):
    report, code = run(["index", "--field", field, "--radius", "0.8"])
    assert code == 0
    assert report["results"]["index"] == report["results"]["index_half_radius"] == idx


def test_index_csv(tmp_path):
    path = tmp_path / "f.csv"
    path.write_text("".join(f"{x},{y},{x},{y}\n" for x, y in
                            [(1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1)]))
    report, code = run(["index", "--field", f"csv:{path}"])
    assert code == 0 and report["results"]["index"] == 1


def test_degree_s1_sine():
    report, code = run(["degree-s1", "--map", "sine:1.5", "--value", "3.1426"])
    assert code == 0
    r = report["results"]
    assert r["winding"] == r["regular_value"] == 1
    assert r["crossing_signs"] == [1, -1, 1]


def test_degree_s1_value_on_sample_is_perturbed():
    report, code = run(["degree-s1", "--map", "mult:3", "--value", "0"])
    assert code == 0 and report["results"]["value"] != 0


@pytest.mark.parametrize("spec,deg", [("identity", 1), ("antipodal", -1),
                                      ("gauss:power:2", 2), ("gauss:conj:3", -3)])
def test_degree_s2(spec, deg):
    report, code = run(["degree-s2", "--map", spec, "--level", "3"])
    assert code == 0
    r = report["results"]
    assert r["solid_angle"] == r["regular_value"] == deg
    assert r["residual"] < 1e-6


@pytest.mark.parametrize("argv", [["audit", "no_such_mesh"], ["degree-s1", "--map", "tan"],
                                  ["degree-s2", "--map", "weird"], ["audit", "torus:2x9"]])
def test_input_errors(argv):
    report, code = run(argv)
    assert code == 1
    assert report["pass"] is False and "error" in report


def test_malformed_off_file(tmp_path):
    path = tmp_path / "bad.off"
    path.write_text("OFF\n4 2 0\n0 0 0\n1 0 0\n0 1 0\n1 1 0\n3 0 1 2\n3 1 3 2\n")
    report, code = run(["audit", str(path)])
    assert code == 1 and "NonManifoldEdge" in report["error"]


def test_verdict_failure_exit_code(monkeypatch):
    import poincare_hopf.cli as cli
    monkeypatch.setattr(cli, "morse_sum", lambda K, f: 99)
    report, code = run(["verify", "tetrahedron", "--trials", "3"])
    assert code == 2 and report["pass"] is False


def test_main_prints_json(capsys):
    assert main(["audit", "tetrahedron"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["results"]["euler"] == 2 and "pass" in out
