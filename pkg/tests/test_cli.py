from __future__ import annotations

import json

import pytest

from fusionforge.cli import parse_tau, run


def _json(capsys, argv):
    code = run(argv + ["--format", "json"])
    return code, json.loads(capsys.readouterr().out)


def test_family_table(capsys):
    assert run(["family", "vir:u=3,v=5"]) == 0
    out = capsys.readouterr().out
    assert "4 labels, c = -3/5" in out
    assert "FAIL" not in out


def test_family_json_is_deterministic(capsys, tmp_path):
    code, data = _json(capsys, ["family", "sl2:k=2"])
    assert code == 0
    assert data["schema"] == "fusionforge/1"
    assert data["h"] == ["0", "3/16", "1/2"]
    path = tmp_path / "out.json"
    assert run(["--format", "json", "--out", str(path), "family", "sl2:k=2"]) == 0
    first = path.read_bytes()
    assert run(["family", "sl2:k=2", "--format", "json", "--out", str(path)]) == 0
    assert path.read_bytes() == first
    assert json.loads(first) == data


def test_fuse_and_verlinde(capsys):
    assert run(["fuse", "sl2:k=2", "1", "1"]) == 0
    assert capsys.readouterr().out.strip() == "1 x 1 = 0 + 2"
    code, data = _json(capsys, ["verlinde", "lattice:gram=[[4]]"])
    assert code == 0
    assert len(data["fusion"]) == 16


def test_extend(capsys):
    code, data = _json(capsys, ["extend", "free-fermion"])
    assert code == 0
    assert data["statistics"] == "1/2Z-VOSA"
    assert data["counts"]["fixed"] == 1
    code, data = _json(capsys, ["extend", "vir:u=3,v=4", "--current", "(1,3)"])
    assert code == 0 and data["basis"] == ["(1,1)+", "(1,1)-", "(1,2)+"]
    code, data = _json(capsys, ["extend", "sl2:k=2", "--current", "0"])
    assert code == 0 and data["currents"] == []


def test_coset(capsys):
    code, data = _json(capsys, ["coset", "parafermion-k2"])
    assert code == 0
    assert data["count"] == 3
    assert data["axioms"]["passed"]


def test_chars(capsys):
    assert run(["chars", "ETA(1)^24", "--trunc", "4", "--show", "3"]) == 0
    out = capsys.readouterr().out
    assert "q^1 - 24 q^2 + 252 q^3" in out


def test_verify_and_exit_codes(capsys, tmp_path):
    assert run(["verify", "verlinde"]) == 0
    capsys.readouterr()
    bad = tmp_path / "registry.json"
    bad.write_text(json.dumps(["sl2:k=1", "vir:u=2,v=4"]))
    assert run(["verify", "axioms", "--registry", str(bad)]) == 1
    assert "FAIL" in capsys.readouterr().out
    empty = tmp_path / "empty.json"
    empty.write_text("[]")
    assert run(["verify", "axioms", "--registry", str(empty)]) == 0
    assert "warning" in capsys.readouterr().out


@pytest.mark.parametrize(
    "argv",
    [
        ["family", "sl2:k=zero"],
        ["extend", "sl2:k=2", "--current", "1"],
        ["coset", "no-such-setup"],
        ["chars", "ETA("],
        ["fuse", "sl2:k=2", "1", "9"],
    ],
)
def test_errors_exit_two(capsys, argv):
    assert run(argv) == 2
    assert "error" in capsys.readouterr().err


def test_bad_flags_are_rejected(capsys):
    with pytest.raises(SystemExit):
        run(["verify", "no-such-suite"])
    assert run(["family", "sl2:k=2", "--tol", "-1"]) == 2
    assert "--tol must be positive" in capsys.readouterr().err


def test_parse_tau():
    assert parse_tau("1.3i") == 1.3j
    assert parse_tau("0.5+1j") == 0.5 + 1j
