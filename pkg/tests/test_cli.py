import json

import pytest

from sl2rep.cli import main


def run(args, capsys):
    code = main(args)
    out = capsys.readouterr().out
    return code, out


def test_build_and_roundtrip(tmp_path, capsys):
    path = str(tmp_path / "w.json")
    code, out = run(["build", "premet-w", "--p", "3", "--d", "3",
                     "--out", path, "--json"], capsys)
    assert code == 0
    assert json.loads(out)["dim"] == 3
    from sl2rep.serialize import load
    assert load(path).dim == 3


def test_build_with_twist(tmp_path, capsys):
    path = str(tmp_path / "z.json")
    code, _ = run(["build", "baby-verma", "--p", "3", "--a", "0",
                   "--g", "1,0;1,1", "--out", path], capsys)
    assert code == 0


def test_induce_filtration_pipeline(tmp_path, capsys):
    zpath = str(tmp_path / "z.json")
    run(["build", "baby-verma", "--p", "3", "--a", "0", "--g", "1,0;1,1",
         "--out", zpath], capsys)
    mpath = str(tmp_path / "m.json")
    code, out = run(["induce", "--in", zpath, "--r", "2", "--out", mpath,
                     "--json"], capsys)
    assert code == 0 and json.loads(out)["dim"] == 9
    code, out = run(["filtration", "--in", mpath, "--json"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["steps"] == [3, 6, 9]
    assert data["splits"] == [False, False]


def test_filtration_from_params(capsys):
    code, out = run(["filtration", "--p", "3", "--a", "0", "--g", "1,0;1,1",
                     "--r", "2", "--json"], capsys)
    assert code == 0
    assert json.loads(out)["ambient_dim"] == 9


def test_realize_x_and_support(tmp_path, capsys):
    xpath = str(tmp_path / "x.json")
    code, _ = run(["realize-x", "--p", "3", "--a", "0", "--g", "1,0;1,1",
                   "--l", "1", "--r", "2", "--out", xpath], capsys)
    assert code == 0
    code, out = run(["support", "--in", xpath, "--m", "2", "--json"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["complexity"] == 1 and len(data["points"]) == 1


def test_hom_iso_ext_omega(tmp_path, capsys):
    a = str(tmp_path / "a.json")
    b = str(tmp_path / "b.json")
    run(["build", "baby-verma", "--p", "3", "--a", "0", "--out", a], capsys)
    run(["build", "premet-w", "--p", "3", "--d", "3", "--out", b], capsys)
    code, out = run(["hom", "--in", a, "--in2", b, "--json"], capsys)
    assert code == 0 and json.loads(out)["dim"] >= 1
    code, out = run(["iso", "--in", a, "--in2", b, "--json"], capsys)
    assert code == 0 and json.loads(out)["isomorphic"] is True
    code, out = run(["ext1", "--in", a, "--in2", a, "--json"], capsys)
    assert code == 0 and json.loads(out)["ext1_dim"] == 1
    om = str(tmp_path / "om.json")
    code, out = run(["omega", "--in", a, "--out", om, "--json"], capsys)
    assert code == 0 and json.loads(out)["dim"] == 3


def test_decompose_cli(tmp_path, capsys):
    xpath = str(tmp_path / "x.json")
    run(["realize-x", "--p", "3", "--a", "0", "--g", "1,0;1,1", "--l", "1",
         "--r", "2", "--out", xpath], capsys)
    code, out = run(["decompose", "--in", xpath, "--json"], capsys)
    assert code == 0
    assert json.loads(out)["summands"] == [{"dim": 9, "multiplicity": 1}]


def test_orbit_and_stabilizer(tmp_path, capsys):
    code, out = run(["orbit", "--p", "7", "--gamma", "2,0;0,4",
                     "--point", "1:1", "--json"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["group_order"] == 3 and len(data["orbit"]) == 3
    wpath = str(tmp_path / "w.json")
    run(["build", "premet-w", "--p", "7", "--d", "8", "--out", wpath], capsys)
    code, out = run(["stabilizer", "--in", wpath, "--gamma", "2,0;0,4",
                     "--json"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["stabilizer_order"] == 3 and data["stabilizer_cyclic"]


def test_verify_pass_and_exit_codes(capsys):
    code, out = run(["verify", "relations", "--p", "3", "--json"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["passed"] is True and data["suite"] == "relations"


def test_verify_unknown_suite_usage_error(capsys):
    code = main(["verify", "nonsense"])
    assert code == 2


def test_verify_invalid_params_usage_error(capsys):
    code = main(["verify", "prop-3.1", "--p", "3", "--a", "2"])
    assert code == 2


def test_verify_char_twist_cli(tmp_path, capsys):
    xpath = str(tmp_path / "x.json")
    run(["realize-x", "--p", "3", "--a", "0", "--g", "1,0;1,1", "--l", "1",
         "--r", "2", "--out", xpath], capsys)
    tpath = str(tmp_path / "xt.json")
    code, _ = run(["char-twist", "--in", xpath, "--lam", "3",
                   "--out", tpath], capsys)
    assert code == 0
    code, out = run(["iso", "--in", xpath, "--in2", tpath, "--json"], capsys)
    assert code == 0 and json.loads(out)["isomorphic"] is True


def test_missing_file_is_usage_error(capsys):
    code = main(["support", "--in", "/nonexistent/x.json"])
    assert code == 2
