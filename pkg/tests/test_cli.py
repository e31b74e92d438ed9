import itertools
import json

import pytest

from curvecomplex.cli import main
from curvecomplex.loops import side_of


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_surface(capsys, tmp_path):
    path = tmp_path / "t.json"
    code, out, _ = run(["surface", "--genus", "2", "--out", str(path)], capsys)
    assert code == 0
    data = json.loads(out)
    assert len(data["triangles"]) == 6
    assert path.read_text() == out


def test_complex_deterministic_and_plot(capsys, tmp_path):
    argv = ["complex", "--genus", "2", "--weight", "8"]
    code, out1, _ = run(argv, capsys)
    _, out2, _ = run(argv, capsys)
    assert code == 0 and out1 == out2
    rep = json.loads(out1)
    assert rep["vertices"] == 25 and rep["dimension"] == 2
    png, dot = tmp_path / "c.png", tmp_path / "c.dot"
    assert run(argv + ["--plot", str(png), "--dot", str(dot)], capsys)[0] == 0
    assert png.stat().st_size > 0 and dot.read_text().startswith("graph")


def test_ht_counts(capsys, tmp_path):
    png = tmp_path / "ht.png"
    code, out, _ = run(["ht", "--genus", "2", "--radius", "2", "--weight", "10", "--cells",
                        "--plot", str(png)], capsys)
    assert code == 0
    rep = json.loads(out)
    assert (rep["vertices"], rep["edges"]) == (161, 628)
    assert rep["cells"] == {"I": 380, "II": 283, "III": 24}
    assert png.exists()


def test_ht_empty_ball(capsys):
    code, out, _ = run(["ht", "--genus", "2", "--radius", "1", "--weight", "0"], capsys)
    assert code == 0 and json.loads(out)["vertices"] == 0


def test_verify_cells_and_certificates(capsys, tmp_path):
    cert, png = tmp_path / "cells.json", tmp_path / "cells.png"
    code, out, _ = run(["verify-cells", "--genus", "2", "--radius", "1", "--weight", "10",
                        "--cert", str(cert), "--plot", str(png)], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["all_accepted"] and png.exists()
    code, out, _ = run(["verify-cert", "--cert", str(cert)], capsys)
    assert code == 0 and json.loads(out)["all_ok"]

    # removing a move breaks the replay
    data = json.loads(cert.read_text())
    entry = next(e for e in data["certificates"] if len(e["moves"]) > 1)
    entry["moves"].pop()
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(data))
    code, out, _ = run(["verify-cert", "--cert", str(bad)], capsys)
    assert code == 1 and not json.loads(out)["all_ok"]


def _sep_loop(ball):
    T = ball.T
    s = next(c for c in ball.classes if ball.separating(c))
    nb = [c for c in ball.nonseparating if ball.i(c, s) == 0]
    for x, y in itertools.permutations(nb, 2):
        if side_of(T, s, x) == side_of(T, s, y) and ball.i(x, y) != 0:
            return [x, s, y, s]
    raise AssertionError("no loop found")


def test_reduce_round_trip(capsys, tmp_path, ball2_10):
    loop = _sep_loop(ball2_10)
    lp = tmp_path / "loop.json"
    lp.write_text(json.dumps({"genus": 2, "loop": [list(c.coords) for c in loop]}))
    cert, png = tmp_path / "red.json", tmp_path / "red.png"
    argv = ["reduce", "--loop", str(lp), "--cert", str(cert), "--plot", str(png)]
    code, out1, _ = run(argv, capsys)
    assert code == 0
    _, out2, _ = run(argv, capsys)
    assert out1 == out2
    rep = json.loads(out1)
    assert rep["report"]["verified"] and "seconds" not in json.dumps(rep)
    assert png.exists()
    assert run(["verify-cert", "--cert", str(cert)], capsys)[0] == 0
    code, out, _ = run(argv + ["--timings"], capsys)
    assert "seconds" in out


def test_reduce_bound_exhausted(capsys, tmp_path, ball2_10):
    loop = _sep_loop(ball2_10)
    lp = tmp_path / "loop.json"
    lp.write_text(json.dumps([list(c.coords) for c in loop]))
    code, out, err = run(["reduce", "--genus", "2", "--weight", "0", "--loop", str(lp)], capsys)
    assert code == 3
    assert "BOUND_EXHAUSTED" in err and "eliminate_separating" in err and out == ""


def test_reduce_rejects_bad_loops(capsys, tmp_path, ball2_10):
    a, b = ball2_10.nonseparating[:2]
    c = next(x for x in ball2_10.nonseparating if ball2_10.i(a, x) != 0)
    lp = tmp_path / "loop.json"
    lp.write_text(json.dumps({"genus": 2, "loop": [list(a.coords), list(c.coords)]}))
    assert run(["reduce", "--loop", str(lp)], capsys)[0] == 2
    lp.write_text(json.dumps({"loop": [list(a.coords)]}))
    assert run(["reduce", "--loop", str(lp)], capsys)[0] == 2
    lp.write_text(json.dumps({"genus": 2, "loop": [[1, 2]]}))
    assert run(["reduce", "--loop", str(lp)], capsys)[0] == 2


def test_bounds_text_json_plot(capsys, tmp_path):
    code, out, _ = run(["bounds", "--genus", "2"], capsys)
    assert code == 0
    assert "lower = 3" in out and "upper = 3" in out and "harer = 3" in out
    assert "6*2 - 6" in out
    code, out, _ = run(["bounds", "--genus", "5", "--json"], capsys)
    rep = json.loads(out)["report"]
    assert code == 0 and rep["connectivity_upper"] == 21 and rep["historical"]["conn5"] == 17
    png = tmp_path / "b.png"
    assert run(["bounds", "--genus", "3", "--plot", str(png)], capsys)[0] == 0
    assert png.exists()


@pytest.mark.parametrize("argv", [
    ["bounds", "--genus", "1"],
    ["bounds"],
    ["nonsense"],
    ["complex", "--genus", "0", "--weight", "4"],
    ["verify-cert", "--cert", "/nonexistent/file.json"],
])
def test_usage_errors(argv, capsys):
    assert run(argv, capsys)[0] == 2


def test_verify_cert_wrong_format(capsys, tmp_path):
    p = tmp_path / "x.json"
    p.write_text(json.dumps({"format": "other"}))
    assert run(["verify-cert", "--cert", str(p)], capsys)[0] == 2
