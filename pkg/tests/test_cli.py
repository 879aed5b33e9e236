import json

import pytest

from trimmedpoly.cli import BENCH_HEADER, main, parse_sweep
from trimmedpoly.poly import ValidationError

WORKED_POLY = {
    "p": "5", "n": 2, "d": 1, "D": 1,
    "terms": [{"exp": [0, 0], "coeff": "2"},
              {"exp": [1, 0], "coeff": "3"},
              {"exp": [0, 1], "coeff": "4"}],
}
WORKED_GRID = {"p": "5", "n": 2, "d": 1, "nodes": [["0", "1"], ["0", "1"]]}


def write(path, obj):
    path.write_text(json.dumps(obj) + "\n", encoding="utf-8")
    return str(path)


def test_eval_worked_example(tmp_path):
    poly = write(tmp_path / "poly.json", WORKED_POLY)
    grid = write(tmp_path / "grid.json", WORKED_GRID)
    out = tmp_path / "table.json"
    assert main(["eval", "--poly", poly, "--grid", grid,
                 "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["values"] == ["2", "0", "1"]
    assert doc["p"] == "5" and doc["D"] == 1


def test_eval_grid_gen_seq_matches_explicit(tmp_path):
    poly = write(tmp_path / "poly.json", WORKED_POLY)
    out = tmp_path / "table.json"
    assert main(["eval", "--poly", poly, "--grid-gen", "seq",
                 "--out", str(out)]) == 0
    assert json.loads(out.read_text())["values"] == ["2", "0", "1"]


def test_eval_constant_poly(tmp_path):
    poly = write(tmp_path / "poly.json",
                 {"p": "7", "n": 2, "d": 2, "D": 4,
                  "terms": [{"exp": [0, 0], "coeff": "6"}]})
    out = tmp_path / "table.json"
    assert main(["eval", "--poly", poly, "--grid-gen", "rand", "--seed", "3",
                 "--out", str(out)]) == 0
    values = json.loads(out.read_text())["values"]
    assert set(values) == {"6"}


def test_eval_duplicate_node_exits_1(tmp_path, capsys):
    poly = write(tmp_path / "poly.json", WORKED_POLY)
    grid = write(tmp_path / "grid.json",
                 {"p": "5", "n": 2, "d": 1, "nodes": [["0", "1"], ["1", "1"]]})
    assert main(["eval", "--poly", poly, "--grid", grid,
                 "--out", str(tmp_path / "o.json")]) == 1
    err = capsys.readouterr().err
    assert "variable 2" in err


def test_eval_deterministic_output(tmp_path):
    poly = write(tmp_path / "poly.json", WORKED_POLY)
    grid = write(tmp_path / "grid.json", WORKED_GRID)
    out_a, out_b = tmp_path / "a.json", tmp_path / "b.json"
    main(["eval", "--poly", poly, "--grid", grid, "--out", str(out_a)])
    main(["eval", "--poly", poly, "--grid", grid, "--out", str(out_b)])
    assert out_a.read_bytes() == out_b.read_bytes()


def test_interp_inverse_of_eval(tmp_path):
    table = write(tmp_path / "table.json",
                  {"p": "5", "n": 2, "d": 1, "D": 1,
                   "values": ["2", "0", "1"]})
    grid = write(tmp_path / "grid.json", WORKED_GRID)
    out = tmp_path / "poly.json"
    assert main(["interp", "--evals", table, "--grid", grid,
                 "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["terms"] == WORKED_POLY["terms"]


def test_interp_zero_table(tmp_path):
    table = write(tmp_path / "table.json",
                  {"p": "5", "n": 2, "d": 1, "D": 1,
                   "values": ["0", "0", "0"]})
    grid = write(tmp_path / "grid.json", WORKED_GRID)
    out = tmp_path / "poly.json"
    assert main(["interp", "--evals", table, "--grid", grid,
                 "--out", str(out)]) == 0
    assert json.loads(out.read_text())["terms"] == []


def test_interp_wrong_length_exits_1(tmp_path, capsys):
    table = write(tmp_path / "table.json",
                  {"p": "5", "n": 2, "d": 1, "D": 1, "values": ["2", "0"]})
    grid = write(tmp_path / "grid.json", WORKED_GRID)
    assert main(["interp", "--evals", table, "--grid", grid,
                 "--out", str(tmp_path / "o.json")]) == 1
    assert "length" in capsys.readouterr().err


def test_roundtrip_ok(capsys):
    assert main(["roundtrip", "--n", "4", "--d", "2", "--D", "5",
                 "--prime", "65537", "--seed", "0", "--trials", "5"]) == 0
    out = capsys.readouterr().out
    assert out.count(": ok") == 5


def test_roundtrip_zero_trials():
    assert main(["roundtrip", "--n", "3", "--d", "2", "--D", "3",
                 "--prime", "7", "--trials", "0"]) == 0


def test_roundtrip_corrupt_detected(capsys):
    code = main(["roundtrip", "--n", "3", "--d", "2", "--D", "3",
                 "--prime", "65537", "--seed", "9", "--trials", "3",
                 "--corrupt"])
    assert code == 2
    assert "--seed 9" in capsys.readouterr().err


def test_roundtrip_bad_params(capsys):
    assert main(["roundtrip", "--n", "2", "--d", "0", "--D", "1",
                 "--prime", "7", "--trials", "1"]) == 1
    assert main(["roundtrip", "--n", "2", "--d", "1", "--D", "1",
                 "--prime", "6", "--trials", "1"]) == 1
    capsys.readouterr()


def test_parse_sweep():
    instances = parse_sweep("n=2..4;d=1,2;D=nd/2,nd")
    assert (2, 1, 1) in instances and (2, 1, 2) in instances
    assert (4, 2, 4) in instances and (4, 2, 8) in instances
    assert len(instances) == 3 * 2 * 2
    assert parse_sweep("n=3;d=2;D=4") == [(3, 2, 4)]
    # duplicate D values collapse (nd/2 == nd for n=d=1... use n=1 d=1)
    assert parse_sweep("n=1;d=1;D=nd/2,nd") == [(1, 1, 1)]
    with pytest.raises(ValidationError):
        parse_sweep("n=2;d=1")
    with pytest.raises(ValidationError):
        parse_sweep("n=2;d=1;D=half")
    with pytest.raises(ValidationError):
        parse_sweep("n=0..2;d=1;D=nd")


def test_bench_two_rows(tmp_path):
    out = tmp_path / "bench.csv"
    assert main(["bench", "--sweep", "n=3;d=2;D=nd/2", "--algos",
                 "trimmed,naive", "--out", str(out)]) == 0
    lines = out.read_text().strip().split("\n")
    assert lines[0] == BENCH_HEADER
    assert len(lines) == 3
    trimmed_row = lines[1].split(",")
    naive_row = lines[2].split(",")
    assert trimmed_row[0] == "trimmed" and naive_row[0] == "naive"
    assert trimmed_row[1:6] == ["3", "2", "3", "65537", "17"]
    assert int(naive_row[7]) > int(trimmed_row[7])  # mul counts


def test_bench_deterministic_apart_from_wall_time(tmp_path):
    out_a, out_b = tmp_path / "a.csv", tmp_path / "b.csv"
    argv = ["bench", "--sweep", "n=2..3;d=2;D=nd/2,nd", "--algos",
            "trimmed,naive", "--seed", "5"]
    assert main(argv + ["--out", str(out_a)]) == 0
    assert main(argv + ["--out", str(out_b)]) == 0
    header_index = BENCH_HEADER.split(",").index("wall_time_ns")
    for line_a, line_b in zip(out_a.read_text().splitlines(),
                              out_b.read_text().splitlines()):
        cells_a, cells_b = line_a.split(","), line_b.split(",")
        cells_a[header_index] = cells_b[header_index] = "-"
        assert cells_a == cells_b


def test_eval_grid_shape_mismatch_exits_1(tmp_path, capsys):
    poly = write(tmp_path / "poly.json", WORKED_POLY)
    grid = write(tmp_path / "grid.json",
                 {"p": "5", "n": 2, "d": 2,
                  "nodes": [["0", "1", "2"], ["0", "1", "2"]]})
    assert main(["eval", "--poly", poly, "--grid", grid,
                 "--out", str(tmp_path / "o.json")]) == 1
    capsys.readouterr()


def test_bench_empty_algos(tmp_path, capsys):
    assert main(["bench", "--sweep", "n=2;d=1;D=nd", "--algos", "",
                 "--out", str(tmp_path / "x.csv")]) == 1
    capsys.readouterr()


def test_bench_unknown_algo(tmp_path, capsys):
    assert main(["bench", "--sweep", "n=2;d=1;D=nd", "--algos", "fast",
                 "--out", str(tmp_path / "x.csv")]) == 1
    capsys.readouterr()


def test_bench_capacity_skip(tmp_path, capsys):
    out = tmp_path / "bench.csv"
    assert main(["bench", "--sweep", "n=90;d=3;D=nd", "--algos", "trimmed",
                 "--out", str(out)]) == 0
    assert "skip" in capsys.readouterr().err
    assert out.read_text().strip() == BENCH_HEADER


def test_bench_yates_needs_full_cube(tmp_path, capsys):
    out = tmp_path / "bench.csv"
    assert main(["bench", "--sweep", "n=2;d=2;D=nd/2,nd", "--algos",
                 "yates", "--out", str(out)]) == 0
    err = capsys.readouterr().err
    assert "yates" in err  # nd/2 instance skipped
    lines = out.read_text().strip().split("\n")
    assert len(lines) == 2  # header + the D=nd row


def test_selftest(capsys):
    assert main(["selftest"]) == 0
    out = capsys.readouterr().out
    assert "extended-pascal" in out
    assert "FAIL" not in out


def test_selftest_json(capsys):
    assert main(["selftest", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc == {"extended-pascal": True, "lu-reconstruction": True,
                   "rank-unrank": True, "yates-consistency": True}


def test_usage_errors_exit_1(capsys):
    assert main([]) == 1
    assert main(["frobnicate"]) == 1
    assert main(["eval", "--poly", "x.json"]) == 1  # missing grid/out
    capsys.readouterr()


def test_missing_file_exits_1(tmp_path, capsys):
    assert main(["eval", "--poly", str(tmp_path / "absent.json"),
                 "--grid-gen", "seq", "--out", str(tmp_path / "o.json")]) == 1
    capsys.readouterr()
