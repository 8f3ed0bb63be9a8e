from __future__ import annotations

import csv
import io
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from tjoin.cli import main
from tjoin.generators import random_metric
from tjoin.graph import dump_edge_list

HERE = Path(__file__).parent
DATA = HERE / "data"
GOLDEN = HERE / "golden"

GOLDEN_CASES = [
    ("bounds_line.csv", ["bounds", "line_0_1_9_10.csv"]),
    ("bounds_line.md", ["bounds", "line_0_1_9_10.csv", "--format", "md"]),
    ("bounds_points12_full.csv", ["bounds", "points12.csv", "--all-columns"]),
    ("bounds_points12_full.md", ["bounds", "points12.csv", "--all-columns", "--format", "md"]),
    ("mu2k_unit_k6.csv", ["mu2k", "unit_k6.csv"]),
    ("mu2k_eps_line8.md", ["mu2k", "eps_line8.csv", "--format", "md"]),
    ("mu2k_points12.csv", ["mu2k", "points12.csv"]),
    ("ear_gap.txt", ["ear", "ear_gap.csv", "--show-ears"]),
    ("oracle_equivalence_ear_gap.csv", ["oracle", "equivalence", "ear_gap.csv"]),
    ("exact12_unit_k6.csv", ["exact12", "unit_k6.csv"]),
]


def run(argv, capsys):
    code = main([str(DATA / a) if a.endswith(".csv") else a for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


@pytest.mark.parametrize("golden, argv", GOLDEN_CASES, ids=[c[0] for c in GOLDEN_CASES])
def test_golden(golden, argv, capsys):
    code, out, _ = run(argv, capsys)
    assert code == 0
    assert out == (GOLDEN / golden).read_text()


def test_bounds_line_values(capsys):
    _, out, _ = run(["bounds", "line_0_1_9_10.csv", "--all-columns"], capsys)
    (r,) = rows(out)
    assert float(r["LB"]) == 10.0
    assert float(r["TSP_UB"]) == 10.0
    assert float(r["ratio"]) == 1.0


def test_bounds_two_vertices(tmp_path, capsys):
    f = tmp_path / "two.csv"
    f.write_text("a,b,2.5\n")
    assert main(["bounds", str(f), "--all-columns"]) == 0
    (r,) = rows(capsys.readouterr().out)
    assert float(r["LB"]) == 2.5
    assert r["TSP_UB"] == ""
    assert float(r["harmonic_UB"]) == 5.0


def test_mu2k_unit_k6(capsys):
    _, out, _ = run(["mu2k", "unit_k6.csv"], capsys)
    got = rows(out)
    assert [int(r["2k"]) for r in got] == [2, 4, 6]
    assert [float(r["mwm"]) for r in got] == [1.0, 2.0, 3.0]
    assert all(float(r["TSP_UB"]) == 3.0 for r in got)
    # smallest upper bound over mwm: min(2, 3)/1, min(8, 3)/2, min(15, 3)/3
    assert [float(r["ratio"]) for r in got] == [2.0, 1.5, 1.0]


def test_mu2k_k_range(capsys):
    _, out, _ = run(["mu2k", "unit_k6.csv", "--k-range", "2:3"], capsys)
    assert [int(r["2k"]) for r in rows(out)] == [4, 6]
    code, _, err = run(["mu2k", "unit_k6.csv", "--k-range", "1:4"], capsys)
    assert code == 2 and "k range" in err


def test_oracle_examples(capsys):
    _, out, _ = run(["oracle", "mu", "ear_gap.csv"], capsys)
    assert float(rows(out)[0]["value"]) == 9.0625
    _, out, _ = run(["oracle", "mu2k", "eps_line8.csv", "--k", "4"], capsys)
    assert float(rows(out)[0]["value"]) == pytest.approx(0.04, abs=1e-6)
    _, out, _ = run(["oracle", "valid-set", "ear_gap.csv"], capsys)
    assert float(rows(out)[0]["weight"]) == 9.0625


def test_exit_codes(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("a,b,1\nb,c,1.5\na,c,1\n")
    assert main(["exact12", str(bad)]) == 3
    bad.write_text("a,b,0\n")
    assert main(["bounds", str(bad)]) == 2
    assert main(["bounds", str(tmp_path / "missing.csv")]) == 2
    assert main(["gen", "points", "--n", "5"]) == 2
    assert main(["oracle", "mu2k", str(DATA / "ear_gap.csv")]) == 2
    nc = tmp_path / "k4minus.csv"
    nc.write_text("a,b,1\nb,c,1\nc,d,1\nd,a,1\n")
    assert main(["ear", str(nc), "--strategy", "hamiltonian-first"]) == 3
    assert main(["ear", str(nc), "--strategy", "hamiltonian-first", "--closure"]) == 0
    capsys.readouterr()


def test_gen_round_trip(capsys):
    for argv in (
        ["gen", "one-two", "--n", "7", "--p1", "0.4", "--seed", "3"],
        ["gen", "random-graph", "--n", "6", "--extra", "3", "--seed", "3"],
        ["gen", "points", "--n", "5", "--seed", "3"],
    ):
        assert main(argv) == 0
        first = capsys.readouterr().out
        main(argv)
        assert capsys.readouterr().out == first
        assert first.startswith("u,v,w\n")


def test_gen_matches_checked_in_data(capsys):
    main(["gen", "figure1", "--epsilon", "0.0625"])
    assert capsys.readouterr().out == (DATA / "ear_gap.csv").read_text()


def test_similarity_flag(tmp_path, capsys):
    f = tmp_path / "sim.csv"
    f.write_text("a,b,1\nb,c,3\na,c,0\n")
    assert main(["tsp", str(f), "--similarity"]) == 0
    (r,) = rows(capsys.readouterr().out)
    assert float(r["cost"]) == pytest.approx(0.5 + 0.25 + 0.75)


def test_ratio_at_least_one_and_jobs_deterministic(tmp_path, capsys):
    rng = np.random.default_rng(11)
    for i in range(5):
        f = tmp_path / f"m{i}.csv"
        f.write_text(dump_edge_list(random_metric(int(rng.integers(3, 30)), rng).as_graph()))
        outs = []
        for jobs in ("1", "3"):
            main(["mu2k", str(f), "--jobs", jobs])
            outs.append(capsys.readouterr().out)
            main(["bounds", str(f), "--jobs", jobs, "--all-columns"])
            outs.append(capsys.readouterr().out)
        assert outs[:2] == outs[2:]
        for text in outs[:2]:
            assert all(float(r["ratio"]) >= 1 - 1e-9 for r in rows(text))


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "tjoin", "oracle", "mu", "-"],
        input=(DATA / "line_0_1_9_10.csv").read_text(),
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[1].startswith("10.000000")
