import csv
import io
import json

import pytest

from drinfeld_tower.cli import main
from drinfeld_tower.fixtures import fixture_text


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def value(out, key):
    for line in out.splitlines():
        if line.startswith(key + " = "):
            return line.split(" = ", 1)[1]
    raise AssertionError(f"{key} not in output:\n{out}")


@pytest.mark.parametrize("cfg,ideal,g", [("sec6.json", "1^3", "5"), ("elliptic.json", "1^1", "4"),
                                         ("sec6.json", "1^1", "0")])
def test_genus(capsys, cfg, ideal, g):
    code, out, _ = run(capsys, "genus", "--config", cfg, "--ideal", ideal)
    assert code == 0
    assert value(out, "g(x0(n))") == g
    assert "closed form" in out and "Riemann-Hurwitz" in out
    assert "coprime" in out


def test_genus_from_polynomial(capsys):
    code, out, _ = run(capsys, "genus", "--config", "sec6.json", "--ideal-poly", "0,0,0,1")  # T^3
    assert code == 0 and value(out, "g(x0(n))") == "5"


@pytest.mark.parametrize("cfg,field,lim,opt", [("sec6.json", "2^8", "15", "yes"), ("elliptic.json", "2^10", "1", "no")])
def test_limit(capsys, cfg, field, lim, opt):
    code, out, _ = run(capsys, "limit", "--config", cfg)
    assert code == 0
    assert (value(out, "field"), value(out, "limit"), value(out, "optimal")) == (field, lim, opt)
    assert "Drinfeld-Vladut" in out


def test_supersingular(capsys):
    code, out, _ = run(capsys, "supersingular", "--config", "sec6.json")
    assert code == 0 and value(out, "N") == "30" and value(out, "per component") == "15"
    code, out, _ = run(capsys, "supersingular", "--config", "elliptic.json")
    assert value(out, "N") == "25" and value(out, "per component") == "5"


def test_bound(capsys):
    code, out, _ = run(capsys, "bound", "--config", "sec6.json", "--ideal", "1^4")
    assert code == 0
    assert value(out, "N1 lower bound") == "360" and value(out, "Hasse-Weil bound") == "673"


def test_formula_table_csv(capsys, tmp_path):
    out_file = tmp_path / "t.csv"
    code, _, _ = run(capsys, "table", "--config", "sec6.json", "--max-k", "5", "--out", str(out_file))
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out_file.read_text())))
    assert list(rows[0]) == ["k", "genus", "n1_lb", "ratio", "hasse_weil"]
    assert [r["genus"] for r in rows] == ["0", "1", "5", "13", "33"]


def test_config_options_and_validation(capsys, tmp_path):
    cfg = json.loads(fixture_text("sec6.json", verify=False))
    p = tmp_path / "c.json"
    p.write_text(json.dumps({**cfg, "format": "json", "jobs": 2}))
    code, out, _ = run(capsys, "table", "--config", str(p), "--max-k", "2")
    assert code == 0 and json.loads(out)[1]["genus"] == 1
    p.write_text(json.dumps({**cfg, "colour": "red"}))
    assert run(capsys, "limit", "--config", str(p))[0] == 2
    assert run(capsys, "genus", "--config", "missing.json", "--ideal", "1")[0] == 2
    assert run(capsys, "genus", "--config", "sec6.json")[0] == 2
    assert run(capsys, "genus", "--config", "sec6.json", "--ideal", "1^x")[0] == 2
    assert run(capsys, "genus", "--config", "sec6.json", "--ideal-poly", "1")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["tower", "count", "--max-level", "2", "--mode", "loose"])
    assert exc.value.code == 2


def test_derive_f_check(capsys):
    code, out, _ = run(capsys, "derive-f", "--check")
    assert code == 0 and "MATCH" in out
    assert value(out, "terms").startswith("94;")


def test_derive_f_mismatch_names_term(capsys, tmp_path):
    bad = fixture_text("f.txt").replace("(x*y + x)*h2^29*h3^3", "(x*y + y)*h2^29*h3^3", 1)
    p = tmp_path / "f.txt"
    p.write_text(bad)
    code, out, _ = run(capsys, "derive-f", "--check", "--fixture", str(p))
    assert code == 1
    assert "MISMATCH at h2^29*h3^3" in out


def test_tower_factor(capsys):
    code, out, _ = run(capsys, "tower", "factor", "--level", "2", "--emit", "canonical-text")
    assert code == 0
    assert "rho_2 = " in out and "Q_2 = " in out and "verified exact" in out
    assert run(capsys, "tower", "factor", "--level", "1")[0] == 2


def test_tower_count_fiber_level1(capsys, tmp_path):
    p = tmp_path / "r.json"
    code, _, _ = run(capsys, "tower", "count", "--max-level", "1", "--mode", "fiber", "--out", str(p))
    assert code == 0
    rep = json.loads(p.read_text())
    assert rep[0]["count"] == 257 and rep[1]["mode"] == "fiber"
    assert rep[1]["count"] == 250


def test_tower_table(capsys):
    code, out, _ = run(capsys, "tower", "table", "--max-level", "5", "--format", "csv")
    assert code == 0
    body = out.split("stabilization")[0]
    rows = list(csv.DictReader(io.StringIO(body)))
    assert [r["g_k"] for r in rows] == ["0", "1", "5", "13", "33"]
    assert "rho_2 = rho_4" in out
