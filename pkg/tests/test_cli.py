import json
import re

from sphyper.cli import main
from sphyper.linalg import RatMatrix
from sphyper.words import SymplecticWord, evaluate


def test_enumerate(capsys):
    assert main(["enumerate", "--degree", "4"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 121
    nr, pair, coeff = lines[0].split("\t")
    assert nr == "1"


def _parse_words(text):
    n = int(text.splitlines()[0].split()[-1])
    words = []
    for line in text.splitlines():
        if line.startswith("#"):
            continue
        letters = tuple((int(i), int(e)) for i, e in re.findall(r"g(\d+)\^(-?\d+)", line))
        words.append(SymplecticWord(n, letters))
    return words


def test_analyze_verify_export(tmp_path, capsys):
    row = tmp_path / "row.json"
    assert main(["analyze", "--pair", "C7 | C2^2*C3^2", "--out", str(row)]) == 0
    out = capsys.readouterr().out
    assert re.search(r"iLevel\s+2\n", out)
    rep = json.loads(row.read_text())
    assert rep["nr"] is not None

    assert main(["verify", "--row", str(row)]) == 0
    assert capsys.readouterr().out.strip().endswith("ok")

    words = tmp_path / "words.txt"
    assert main(["export-words", "--row", str(row), "--out", str(words)]) == 0
    parsed = _parse_words(words.read_text())
    assert [evaluate(w) for w in parsed] == [RatMatrix(g) for g in rep["lz_generators"]]


def test_verify_flags_tampering(tmp_path, capsys):
    row = tmp_path / "row.json"
    main(["analyze", "--pair", "C7 | C2^2*C3^2", "--out", str(row)])
    rep = json.loads(row.read_text())
    rep["iindex"] = "2^6*3^2"
    row.write_text(json.dumps(rep))
    assert main(["verify", "--row", str(row)]) == 1
    assert "iindex" in capsys.readouterr().out


def test_sweep_command(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("SPHYPER_TIME_BUDGET", "30")
    assert main(["sweep", "--degree", "4", "--out", str(tmp_path)]) == 0
    summary = json.loads((tmp_path / "summary.json").read_text())
    assert summary["pairs"] == 121
    assert summary["dense"] == 111
