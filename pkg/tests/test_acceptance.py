"""Exit criteria.  Each test is tagged with its criterion; the terminal
summary prints one PASS/FAIL line per criterion."""

import json
import time
from fractions import Fraction
from pathlib import Path

import pytest

from graphenv.cli import main
from graphenv.envelopes import (
    is_monotone_decreasing,
    is_monotone_increasing,
    is_subadditive,
    is_superadditive_disjoint,
    monotone_majorant,
    monotone_minorant,
    subadditive_minorant,
    superadditive_majorant,
)
from graphenv.io import read_json_report
from graphenv.lattice import build_graph, enumerate_lattice
from graphenv.oracle import (
    sample_monotone_minorants,
    sample_subadditive_minorants,
    subadditive_minorant_bruteforce,
    superadditive_majorant_bruteforce,
)
from graphenv.weights import WeightTable, load_table, random_table, table_to_document, tabulate

from conftest import GRAPHS, make_lattice, small_graphs

DATA = Path(__file__).parent / "data"
K2 = str(DATA / "k2.json")
W2_FILE = str(DATA / "k2_w2.json")
TEST_GRAPHS = sorted(GRAPHS)
ORACLE_CAP = 64


def ac(label):
    return pytest.mark.criterion(label)


@ac("AC1 golden K2 run")
def test_ac1_golden_k2():
    t0 = time.perf_counter()
    lat = enumerate_lattice(build_graph(["a", "b"], [("a", "b")]))
    w = WeightTable(lat, [0, 3, 5, 9, 4])
    bar = monotone_minorant(w).output
    under = monotone_majorant(w).output
    tilde = subadditive_minorant(w).output
    sup = superadditive_majorant(w).output
    elapsed = time.perf_counter() - t0
    assert list(bar) == [0, 3, 4, 4, 4]
    assert list(under) == [0, 3, 5, 9, 9]
    assert list(tilde) == [0, 3, 5, 8, 4]
    assert list(sup) == [0, 3, 5, 9, 4]
    assert all(isinstance(v, Fraction) for t in (bar, under, tilde, sup) for v in t)
    assert elapsed < 0.1, f"{elapsed:.3f}s"


@ac("AC2 envelope law suite")
def test_ac2_envelope_laws():
    t0 = time.perf_counter()
    graphs = small_graphs()
    assert len(graphs) == 12 and sum(g.vertex_count == 3 for g in graphs) == 8
    violations = []
    for g in graphs:
        lat = enumerate_lattice(g)
        for seed in range(50):
            w = random_table(lat, seed)
            lo, up = monotone_minorant(w).output, monotone_majorant(w).output
            sub, sup = subadditive_minorant(w).output, superadditive_majorant(w).output
            checks = {
                "orderings": lo <= w <= up and sub <= w <= sup,
                "lo monotone": bool(is_monotone_increasing(lo)),
                "up monotone": bool(is_monotone_increasing(up)),
                "sub subadditive": bool(is_subadditive(sub)),
                "sup superadditive": bool(is_superadditive_disjoint(sup)),
                "idempotent lo": monotone_minorant(lo).output == lo,
                "idempotent up": monotone_majorant(up).output == up,
                "idempotent sub": subadditive_minorant(sub).output == sub,
                "idempotent sup": superadditive_majorant(sup).output == sup,
                "fixed iff monotone": (lo == w) == bool(is_monotone_increasing(w)),
                "fixed iff subadditive": (sub == w) == bool(is_subadditive(w)),
            }
            violations += [(g.edges, seed, k) for k, ok in checks.items() if not ok]
    elapsed = time.perf_counter() - t0
    assert violations == []
    assert elapsed < 30, f"{elapsed:.1f}s"


@ac("AC3 DP-oracle equivalence")
@pytest.mark.parametrize("name", ["K2", "P3", "K3", "S3", "C4"])
def test_ac3_dp_oracle(name):
    lat = make_lattice(name)
    mismatches = 0
    for seed in range(25):
        w = random_table(lat, seed)
        mismatches += subadditive_minorant(w).output != subadditive_minorant_bruteforce(w, cap=ORACLE_CAP)
        mismatches += superadditive_majorant(w).output != superadditive_majorant_bruteforce(w, cap=ORACLE_CAP)
    assert mismatches == 0


@ac("AC4 monotone-input suite")
@pytest.mark.parametrize("name", TEST_GRAPHS)
def test_ac4_monotone_inputs(name):
    lat = make_lattice(name)
    for seed in range(50):
        inc = monotone_majorant(random_table(lat, seed)).output
        assert is_monotone_increasing(inc)
        assert is_monotone_increasing(subadditive_minorant(inc).output)
    for seed in range(50):
        up = monotone_majorant(random_table(lat, 500 + seed)).output
        c = 7  # below the typical maximum, so clipping happens
        dec = WeightTable(lat, [max(Fraction(0), c - x) for x in up])
        assert is_monotone_decreasing(dec)
        assert subadditive_minorant(dec).output == dec


@ac("AC5 maximality falsification")
@pytest.mark.parametrize("name", ["K3", "S3", "C4"])
def test_ac5_maximality(name):
    lat = make_lattice(name)
    w = random_table(lat, 42)
    bar = monotone_minorant(w).output
    tilde = subadditive_minorant(w).output
    mono = sample_monotone_minorants(w, seed=7, count=200)
    subs = sample_subadditive_minorants(w, seed=7, count=200, cap=ORACLE_CAP)
    assert len(mono) == len(subs) == 200
    assert [i for i, g in enumerate(mono) if not g <= bar] == []
    assert [i for i, s in enumerate(subs) if not s <= tilde] == []


@ac("AC6 builtins")
def test_ac6_builtins():
    for name in ("K3", "C4"):
        lat = make_lattice(name)
        for b in ("edge_count", "vertex_count", "max_degree", "clique_number", "chromatic_number"):
            assert is_monotone_increasing(tabulate(b, lat)), (name, b)
        deg = tabulate("max_degree", lat)
        assert is_subadditive(deg) and is_subadditive(tabulate("edge_count", lat))
        assert monotone_minorant(deg).output == deg
        assert subadditive_minorant(deg).output == deg
    p3 = make_lattice("P3")
    v = is_monotone_increasing(tabulate("component_count", p3))
    assert not v and v.violation is not None
    i, j = v.violation
    comp = tabulate("component_count", p3)
    assert p3.contains(i, j) and comp[i] > comp[j]


def _table_file(tmp_path, name, values):
    path = tmp_path / name
    path.write_text(json.dumps(table_to_document(WeightTable(make_lattice("K2"), values))))
    return str(path)


@ac("AC7 sandwich decisions")
def test_ac7_sandwich(tmp_path, capsys):
    k2 = make_lattice("K2")
    w2 = WeightTable(k2, [0, 3, 5, 9, 4])

    w1 = _table_file(tmp_path, "a.json", [0, 1, 1, 2, 2])
    assert main(["sandwich", "--graph", K2, "--w1", w1, "--w2", W2_FILE, "--kind", "subadditive"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("SUCCESS\n")
    sep = WeightTable(k2, [line.split(",")[-1] for line in out.splitlines()[2:]])
    assert list(sep) == [0, 3, 5, 8, 4]
    assert WeightTable(k2, [0, 1, 1, 2, 2]) <= sep <= w2 and is_subadditive(sep)

    mono = _table_file(tmp_path, "m.json", [0, 0, 0, 0, 1])
    assert main(["sandwich", "--graph", K2, "--w1", mono, "--w2", mono, "--kind", "monotone"]) == 0
    out = capsys.readouterr().out
    sep = WeightTable(k2, [line.split(",")[-1] for line in out.splitlines()[2:]])
    assert out.startswith("SUCCESS\n") and list(sep) == [0, 0, 0, 0, 1]
    assert is_monotone_increasing(sep)

    w1 = _table_file(tmp_path, "b.json", [0, 4, 0, 0, 0])
    assert main(["sandwich", "--graph", K2, "--w1", w1, "--w2", W2_FILE, "--kind", "monotone"]) == 5
    out = capsys.readouterr().out
    assert out.startswith("FAILURE at index 1 {a}") and "witness [1]" in out


@ac("AC8 CLI contract")
def test_ac8_golden_csv(capsys):
    assert main(["envelope", "--graph", K2, "--weights", W2_FILE, "--kind", "all", "--format", "csv"]) == 0
    assert capsys.readouterr().out.encode("utf-8") == (DATA / "k2_w2_golden.csv").read_bytes()


@ac("AC8 CLI contract")
def test_ac8_json_roundtrip(capsys):
    lat = make_lattice("K2")
    assert main(["envelope", "--graph", K2, "--weights", W2_FILE, "--format", "json"]) == 0
    cols = read_json_report(lat, json.loads(capsys.readouterr().out))
    assert cols["w"] == WeightTable(lat, [0, 3, 5, 9, 4])
    assert list(cols["subadd_min"]) == [0, 3, 5, 8, 4]
    for table in cols.values():
        text = json.dumps(table_to_document(table))
        assert load_table(lat, json.loads(text)) == table


def _bench_paths(capsys):
    t0 = time.perf_counter()
    assert main(["bench", "--family", "path", "--sizes", "2", "3", "4", "--seed", "0"]) == 0
    elapsed = time.perf_counter() - t0
    rows = [line.split(",") for line in capsys.readouterr().out.splitlines()[1:]]
    return elapsed, [int(r[4]) for r in rows]


@ac("AC8 CLI contract")
def test_ac8_bench_runtime(capsys):
    elapsed, sizes = _bench_paths(capsys)
    assert elapsed < 10, f"{elapsed:.1f}s"
    assert len(sizes) == 3


@ac("AC8 CLI contract")
def test_ac8_bench_path_sizes(capsys):
    # sizes as stated by the criterion
    _, sizes = _bench_paths(capsys)
    assert sizes == [5, 18, 67]
