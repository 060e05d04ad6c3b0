import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from thompsonkit import cli, core
from thompsonkit.families import derive_generators, flip_g, torsion_a, torsion_tilde
from thompsonkit.order import Finite, order

FIX = Path(__file__).parent / "fixtures"


def run(capsys, *argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = cli.run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_order_of_flip(capsys):
    code, out, _ = run(capsys, "order", core.to_text(flip_g(3)))
    assert code == 0 and out.strip() == "4"


def test_rotation_text_and_json(capsys):
    a = core.to_text(torsion_tilde(torsion_a(1)))
    assert run(capsys, "rotation", a)[1].strip() == "2/5"
    code, out, _ = run(capsys, "--json", "rotation", a)
    assert json.loads(out) == {"num": 2, "den": 5}


def test_family_pipes_into_order(capsys, monkeypatch):
    code, out, _ = run(capsys, "family", "order_c", "45")
    assert code == 0 and out.splitlines()[1] == "order 45"
    code, out2, _ = run(capsys, "order", stdin=out, monkeypatch=monkeypatch)
    assert out2.strip() == "45"


def test_shell_pipeline():
    fam = subprocess.run([sys.executable, "-m", "thompsonkit.cli", "family", "order_c", "45"],
                         capture_output=True, text=True, check=True)
    res = subprocess.run([sys.executable, "-m", "thompsonkit.cli", "order"], input=fam.stdout,
                         capture_output=True, text=True, check=True)
    assert res.stdout.strip() == "45"


def test_exit_codes(capsys):
    code, _, err = run(capsys, "order", "((* *)")
    assert code == 2 and "error" in err
    code, _, err = run(capsys, "rotation", core.to_text(flip_g(4)))
    assert code == 1 and "NotInT" in err
    assert run(capsys, "family", "nope", "3")[0] == 2
    assert run(capsys, "no-such-command")[0] == 2


def test_element_commands(capsys):
    x0 = "((* *) *) ; [1 2 3] ; (* (* *))"
    assert run(capsys, "classify", x0)[1].strip() == "F"
    assert run(capsys, "torsion", x0)[1].strip() == "false"
    assert run(capsys, "order", x0)[1].strip() == "infinite"
    big = "((* *) (* *)) ; [1 2 3 4] ; ((* *) (* *))"
    assert run(capsys, "reduce", big)[1].strip() == "* ; [1] ; *"
    out = run(capsys, "compose", x0, core.to_text(core.inverse(core.from_text(x0))))[1]
    assert out.strip() == "* ; [1] ; *"
    out = run(capsys, "length-bound", core.to_text(flip_g(5)))[1].splitlines()
    assert out == ["leaves,rising,lds,shuffle_norm,bound", "5,5,5,3,20"]
    assert run(capsys, "dot", "--reduced", core.to_text(flip_g(3)))[1].startswith("digraph")


def test_json_round_trips(capsys):
    g = flip_g(4)
    code, out, _ = run(capsys, "--json", "reduce", core.to_text(g))
    assert core.from_json(json.loads(out)) == g
    code, out, _ = run(capsys, "--json", "family", "flip_g", "4")
    obj = json.loads(out)
    assert core.from_json(obj["element"]) == g and obj["order"] == 8
    code, out, _ = run(capsys, "--json", "order", "((* *) *) ; [1 2 3] ; (* (* *))")
    assert json.loads(out)["finite"] is False
    code, out, _ = run(capsys, "--json", "dot", core.to_text(g))
    assert set(json.loads(out)) == {"vertices", "edges", "circles"}


def test_random_is_seeded(capsys):
    a = run(capsys, "--seed", "7", "random", "--count", "3")[1]
    b = run(capsys, "--seed", "7", "random", "--count", "3")[1]
    assert a == b and len(a.splitlines()) == 3


def test_landau_and_houghton(capsys):
    assert run(capsys, "landau", "10")[1].strip() == "30"
    assert run(capsys, "landau", "10", "--primes", "2")[1].strip() == "8"
    assert run(capsys, "landau", "10", "--primes", "2,x")[0] == 2
    assert run(capsys, "houghton", "order", "a")[1].strip() == "2"
    assert run(capsys, "houghton", "order", "t", "a")[1].strip() == "infinite"
    out = run(capsys, "houghton", "witness", "2", "3")[1].splitlines()
    assert out[1] == "length 13" and out[-1] == "order 6"
    assert run(capsys, "houghton", "order", "t b")[0] == 2


def test_cfg_commands(capsys):
    g = str(FIX / "anbn.cfg")
    code, out, _ = run(capsys, "cfg", "cnf", g)
    assert code == 0 and "->" in out
    code, out, _ = run(capsys, "cfg", "intersect", g, str(FIX / "even_a.json"))
    assert code == 0 and out.startswith("S'")
    code, out, _ = run(capsys, "cfg", "unary-period", g)
    assert out.strip() == "preperiod 0 period 2"
    code, out, _ = run(capsys, "cfg", "cowp-order", str(FIX / "cowp_c6.json"), "aa")
    assert out.strip() == "3"
    code, out, _ = run(capsys, "cfg", "cowp-order", str(FIX / "cowp_s3.json"), "s t")
    assert out.strip() == "2"
    assert run(capsys, "cfg", "cnf", str(FIX / "missing.cfg"))[0] == 2


def _rows(out):
    lines = [ln for ln in out.splitlines() if not ln.startswith("#")]
    assert lines[0] == "radius,max_order"
    return [tuple(map(int, ln.split(","))) for ln in lines[1:]]


def test_pgrowth_tables(capsys):
    assert [m for _, m in _rows(run(capsys, "pgrowth", "--gens", "trivial", "--radius", "3")[1])] == [1] * 4
    assert [m for _, m in _rows(run(capsys, "pgrowth", "--gens", "a1", "--radius", "3")[1])] == [1, 2, 2, 2]
    out = run(capsys, "pgrowth", "--gens", "x0y", "--radius", "3")[1]
    assert "lower bound" in out


def test_pgrowth_self_consistent(tmp_path, capsys):
    t = derive_generators()
    table = {"x0": core.to_text(t["x0"]), "y": core.to_text(t["y"])}
    path = tmp_path / "gens.json"
    path.write_text(json.dumps(table))
    rows = _rows(run(capsys, "pgrowth", "--gens", str(path), "--radius", "3")[1])
    ms = [m for _, m in rows]
    assert ms == sorted(ms)
    spheres = cli.ball(core.GeneratorTable({k: core.from_text(v) for k, v in table.items()}), 3)
    for r in range(4):
        finite = [order(g).order for s in spheres[: r + 1] for g in s if isinstance(order(g), Finite)]
        assert max(finite) == ms[r]
