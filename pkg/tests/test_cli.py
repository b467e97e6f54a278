import json

from amalgam_cgt.cli import main


def test_list(capsys):
    assert main(["list"]) == 0
    assert len(capsys.readouterr().out.split()) == 16


def test_verify_one(capsys):
    assert main(["verify", "theta-check", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["pass"] is True


def test_verify_unknown(capsys):
    assert main(["verify", "nope"]) == 2
    assert "unknown scenario" in capsys.readouterr().err


def test_verify_failure_exit_code(capsys):
    assert main(["verify", "presentation-orders", "--max-cosets", "50"]) == 1


def test_bad_arguments(capsys):
    assert main(["verify"]) == 2
    assert main(["enumerate", "--catalog", "Zstar", "--max-cosets", "0"]) == 2


def test_enumerate_catalog(capsys, tmp_path):
    dump = tmp_path / "t.json"
    assert main(["enumerate", "--catalog", "Xstar", "--subgroup", "a;b;t;u", "--format", "json",
                 "--dump", str(dump)]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["index"] == 4
    assert json.loads(dump.read_text())["index"] == 4


def test_enumerate_file(capsys, tmp_path):
    p = tmp_path / "d5.txt"
    p.write_text("gens r, s; rels r^5; s^2; (s r)^2;")
    assert main(["enumerate", "--presentation", str(p)]) == 0
    assert capsys.readouterr().out.splitlines()[0] == "index 10"


def test_enumerate_errors(capsys, tmp_path):
    assert main(["enumerate", "--catalog", "F", "--max-cosets", "1000"]) == 2
    assert "resource limit" in capsys.readouterr().err
    p = tmp_path / "bad.txt"
    p.write_text("gens a; rels a^;")
    assert main(["enumerate", "--presentation", str(p)]) == 2
    assert main(["enumerate", "--presentation", str(tmp_path / "missing.txt")]) == 2


def test_order(capsys, tmp_path):
    p = tmp_path / "g.txt"
    p.write_text("degree 4\n(1 2 3 4)\n(1 2)\n")
    assert main(["order", "--generators", str(p)]) == 0
    assert capsys.readouterr().out.strip() == "24"
