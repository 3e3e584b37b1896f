from __future__ import annotations

import json

import pytest

from nmorph.cli import FAILED, INVALID, OK, run
from nmorph.serial import SCHEMAS, SchemaError, schema, validate


def _run(capsys, *argv):
    code = run(list(argv))
    return code, capsys.readouterr()


def _json(capsys, *argv):
    code, out = _run(capsys, *argv, "--json")
    return code, json.loads(out.out)


def test_aw_witness(capsys):
    code, out = _run(capsys, "aw-witness")
    assert code == OK
    assert out.out.strip() == "(0, 0, 4/5) vs (0, 3/5, 1)"
    code, rep = _json(capsys, "aw-witness", "--x", "1/3")
    assert code == OK and rep["coassociative_here"] is False


@pytest.mark.parametrize("n", [0, 3])
def test_retract_check(capsys, n):
    code, rep = _json(capsys, "retract-check", "--n", str(n))
    assert code == OK and all(rep["identities"].values())


def test_subdivide_and_off(capsys, tmp_path):
    off = tmp_path / "d2.off"
    code, rep = _json(capsys, "subdivide", "--n", "2", "--s", "2", "--brute-force", "--off", str(off))
    assert code == OK
    assert rep["interior_top"] == rep["expected"] == rep["brute_force"] == 6
    lines = off.read_text().splitlines()
    assert lines[0] == "OFF"
    nv, nf, _ = map(int, lines[1].split())
    assert nf == sum(1 for s in rep["strata"] if s["dimension"] == 2) and nv > 0
    assert run(["subdivide", "--n", "5", "--off", str(off)]) == INVALID


def test_partitions(capsys):
    code, rep = _json(capsys, "partitions", "--face", "0<1<2", "--s", "2")
    assert code == OK and rep["count"] == 3
    assert [r["parts"] for r in rep["partitions"]][0] == ["[0]", "[0<1<2]"]
    assert run(["partitions", "--face", "2,1"]) == INVALID


def test_tree_boundary(capsys):
    code, rep = _json(capsys, "tree-boundary", "--tree", "[[[],[]],[[],[]]]", "--status", "b,a,a",
                      "--face", "0<1<2")
    assert code == OK and len(rep["terms"]) == 11 and rep["d_squared_zero"]
    code, rep = _json(capsys, "tree-boundary", "--tree", "[[[],[]],[]]", "--plain")
    assert code == OK and len(rep["terms"]) == 2
    assert run(["tree-boundary", "--tree", "[[[],[]],[]]"]) == INVALID
    assert run(["tree-boundary", "--tree", "[[[],[]],[]]", "--status", "a,b"]) == INVALID


def test_d2check(capsys):
    code, rep = _json(capsys, "d2check", "--family", "nombas", "--m-max", "3", "--n-max", "1")
    assert code == OK and rep["ok"] and rep["failure_count"] == 0
    assert run(["d2check", "--family", "bogus"]) == INVALID


def test_export_complex(capsys, tmp_path):
    out = tmp_path / "c.json"
    code, rep = _json(capsys, "export-complex", "--n", "2", "--m", "2", "--decomp", "coarse",
                      "--output", str(out))
    assert code == OK and rep["f_vector"] == [9, 14, 7, 1]
    assert json.loads(out.read_text()) == rep


def test_check_morphism_round_trip(capsys, tmp_path):
    path = tmp_path / "f.json"
    code, rep = _json(capsys, "check-morphism", "--flavor", "ainf", "--n", "1", "--save", str(path))
    assert code == OK
    code, rep = _json(capsys, "check-morphism", "--flavor", "ainf", "--input", str(path))
    assert code == OK and rep["seed"] is None
    data = json.loads(path.read_text())
    row = next(r for r in data["maps"] if r[0] == [0] and r[1] == 1)
    row[2]["coeffs"][0][2] *= 2
    path.write_text(json.dumps(data))
    assert run(["check-morphism", "--flavor", "ainf", "--input", str(path)]) == FAILED
    path.write_text(json.dumps({"flavor": "ainf", "n": 0}))
    assert run(["check-morphism", "--input", str(path)]) == INVALID
    path.write_text("{not json")
    assert run(["check-morphism", "--input", str(path)]) == INVALID


def test_check_morphism_ombas(capsys, tmp_path):
    path = tmp_path / "g.json"
    code, rep = _json(capsys, "check-morphism", "--flavor", "ombas", "--n", "0", "--save", str(path))
    assert code == OK and rep["push_forward_ok"]
    assert run(["check-morphism", "--flavor", "ombas", "--input", str(path), "--twisted", "1"]) == OK
    capsys.readouterr()
    assert run(["check-morphism", "--flavor", "ainf", "--twisted", "1"]) == INVALID


def test_fill_horn(capsys):
    code, rep = _json(capsys, "fill-horn", "--n", "3", "--k", "1", "--seed", "4")
    assert code == OK and rep["nonzero_residuals"] == 0
    assert run(["fill-horn", "--n", "2", "--k", "2"]) == INVALID


def test_fill_horn_from_file(capsys, tmp_path):
    import random

    from nmorph.homsimp import horn_of, random_pair, random_simplex

    rng = random.Random(3)
    pair, base = random_pair(rng, rank=2, cap=3)
    horn = horn_of(random_simplex(rng, pair, base, 2), 1)
    path = tmp_path / "h.json"
    path.write_text(json.dumps(horn.to_json()))
    code, rep = _json(capsys, "fill-horn", "--input", str(path))
    assert code == OK
    data = horn.to_json()
    del data["k"]
    path.write_text(json.dumps(data))
    assert run(["fill-horn", "--input", str(path)]) == INVALID


@pytest.mark.parametrize("n", [1, 2, 3])
def test_pi_compose(capsys, n):
    code, rep = _json(capsys, "pi-compose", "--n", str(n), "--seed", "7")
    assert code == OK and rep["n"] == n
    if n == 1:
        assert rep["matches_filler"]


def test_pi_compose_from_files(capsys, tmp_path):
    import random

    from nmorph.homsimp import abelian_target_pair, random_base, random_pin_rep

    rng = random.Random(1)
    pair = abelian_target_pair(rng)
    base = random_base(rng, pair)
    for name in "fg":
        (tmp_path / f"{name}.json").write_text(json.dumps(random_pin_rep(rng, pair, base, 2).to_json()))
    code, rep = _json(capsys, "pi-compose", "--f", str(tmp_path / "f.json"), "--g", str(tmp_path / "g.json"))
    assert code == OK
    assert run(["pi-compose", "--f", str(tmp_path / "f.json")]) == INVALID


def test_byte_identical_output(capsys):
    argv = ["check-morphism", "--flavor", "ainf", "--n", "1", "--seed", "3", "--json"]
    run(argv)
    first = capsys.readouterr().out
    run(argv)
    assert capsys.readouterr().out == first


def test_help_and_unknown_command(capsys):
    assert run(["--help"]) == OK
    assert run(["no-such-command"]) == INVALID


def test_schemas_load_and_reject():
    for name in SCHEMAS:
        assert schema(name)["$schema"].startswith("https://json-schema.org/")
    with pytest.raises(SchemaError):
        validate({"n": 1}, "pin_rep")
    with pytest.raises(KeyError):
        schema("nope")
