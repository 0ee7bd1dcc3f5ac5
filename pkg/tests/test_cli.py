from __future__ import annotations

import json
from fractions import Fraction

import pytest

from weightpoly.cli import main
from weightpoly.gamefile import GameFileError, dump_game, dump_representation, parse_game
from weightpoly.games import WeightedRepresentation, realize
from weightpoly.sweep import COLUMNS, SweepConfig, run_sweep, write_csv
from weightpoly.verify import VerifyConfig, run_suite


def _write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(path)


@pytest.fixture
def games(tmp_path):
    return {
        "intro": _write(tmp_path, "intro.json", {"n": 4, "quota": "51/1", "weights": ["35", "34", "17", "14"]}),
        "majority": _write(tmp_path, "maj.json", {"n": 3, "quota": "2", "weights": ["1", "1", "1"]}),
        "unanimity": _write(tmp_path, "una.json", {"n": 3, "quota": "3", "weights": ["1", "1", "1"]}),
        "single": _write(tmp_path, "one.json", {"n": 1, "quota": "1", "weights": ["1"]}),
        "zero_quota": _write(tmp_path, "zero.json", {"n": 3, "quota": "0", "weights": ["1", "1", "1"]}),
        "broken": _write(tmp_path, "broken.json", '{"n": 3, "quota":'),
        "empty": _write(tmp_path, "empty.json", {"n": 6, "minimal_winning": [[1, 2], [3, 4], [5, 6]]}),
        "staircase": _write(
            tmp_path, "stairs.json", {"n": 15, "quota": "3/5", "weights": [f"{k}/120" for k in range(15, 0, -1)]}
        ),
        "half": _write(tmp_path, "half.json", {"n": 2, "quota": "1/2", "weights": ["1/2", "1/2"]}),
    }


def _json_out(capsys):
    return json.loads(capsys.readouterr().out)


def test_analyze(games, capsys):
    assert main(["analyze", games["intro"]]) == 0
    out = capsys.readouterr().out
    assert "players 1, 2, 3 equivalent" in out and "player 4 null" in out
    assert main(["analyze", games["majority"], "--json"]) == 0
    assert len(_json_out(capsys)["minimal_winning"]) == 3


def test_exit_codes(games, capsys):
    assert main(["analyze", games["zero_quota"]]) == 3
    assert main(["analyze", games["broken"]]) == 2
    assert main(["analyze", "/nonexistent.json"]) == 2
    assert main(["diameter", games["empty"]]) == 4
    assert main(["construct", "35", "--delta", "3/4", "--n", "4"]) == 5
    assert main(["construct", "31", "--k", "2", "--s", "3"]) == 5
    assert main(["sweep", "--n", "6", "--q-grid", "2", "--delta-grid", "1/4"]) == 2
    assert main(["sweep", "--n", "6", "--q-grid", "x", "--delta-grid", "1/4"]) == 2
    assert main(["frobnicate"]) == 2


def test_diameter(games, capsys):
    assert main(["diameter", games["majority"]]) == 0
    assert _json_out(capsys)["value"] == "1/1"
    assert main(["diameter", games["unanimity"], "--norm", "l1"]) == 0
    assert _json_out(capsys)["value"] == "2/1"
    assert main(["diameter", games["single"]]) == 0
    assert _json_out(capsys)["value"] == "0/1"


def test_bounds(games, capsys):
    assert main(["bounds", games["staircase"]]) == 0
    out = _json_out(capsys)
    assert out["thm43_basic"] == "5/4" and out["thm43_refined"] == "5/8"
    assert main(["bounds", games["half"]]) == 0
    assert _json_out(capsys)["thm43_basic"] == "2/1"


def test_construct_and_power(games, capsys):
    assert main(["construct", "31", "--k", "2", "--s", "3", "--t", "0"]) == 0
    assert _json_out(capsys)["w_a"] == ["4/9", "1/3", "2/9"]
    assert main(["construct", "36", "--q", "1/2", "--delta", "1/4", "--n", "6"]) == 0
    assert _json_out(capsys)["guaranteed_l1"] == "1/100"
    # the two-passer construction at Delta = 1/2 realizes different games; the certificate says so
    assert main(["construct", "35", "--delta", "1/2", "--n", "9"]) == 1
    assert _json_out(capsys)["checks"]["represents_a"] is False
    assert main(["power", games["intro"]]) == 0
    out = _json_out(capsys)
    assert out["power"]["values"] == ["1/3", "1/3", "1/3", "0/1"] and out["distance"]["l1"] == "49/150"


def test_verify(capsys):
    assert main(["verify", "--suite", "lemma23", "--samples", "50"]) == 0
    assert "pass" in capsys.readouterr().out
    assert main(["verify", "--suite", "section3"]) == 1
    out = capsys.readouterr().out
    assert "counterexample" in out and '"kind": "lemma35"' in out


def test_sweep_is_deterministic(tmp_path, capsys):
    args = ["sweep", "--n", "6", "--q-grid", "1/2", "--delta-grid", "1/4", "--samples", "2", "--seed", "7"]
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(args + ["--out", str(out1)]) == 0
    assert main(args + ["--out", str(out2), "--jobs", "2"]) == 0
    data = out1.read_bytes()
    assert data == out2.read_bytes() and b"\r" not in data
    lines = data.decode().splitlines()
    assert lines[0].split(",") == list(COLUMNS) and len(lines) == 4
    row = dict(zip(COLUMNS, lines[1].split(",")))
    assert row["source"] == "construction" and Fraction(row["tightness_ratio"]) <= 1


def test_empty_sweep_has_header_only():
    rows = run_sweep(SweepConfig((), (), ()))
    assert write_csv(rows) == ",".join(COLUMNS) + "\n"


def test_game_file_format():
    rep = WeightedRepresentation.of(Fraction(3, 5), [Fraction(1, 2), Fraction(1, 2)])
    spec = parse_game(dump_representation(rep))
    assert spec.rep == rep
    v = realize(WeightedRepresentation.of(2, [1, 1, 1]))
    assert parse_game(dump_game(v)).game == v
    for bad in ([], {"n": 2}, {"n": 2, "quota": "1"}, {"n": 2, "quota": 1.5, "weights": [1, 1]},
                {"n": 3, "quota": "1", "weights": ["1", "1"]}, {"n": 2, "minimal_winning": [["a"]]}):
        with pytest.raises(GameFileError):
            parse_game(bad)


def test_verify_suites_pass_on_small_samples():
    for suite in ("lemma22", "lemma23", "thm43", "lemma41", "lemma42", "section5"):
        assert run_suite(VerifyConfig(suite, samples=15, seed=3)).ok
