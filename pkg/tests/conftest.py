import json
from itertools import combinations

import pytest

from graphenv.lattice import build_graph, enumerate_lattice
from graphenv.weights import WeightTable

W2 = [0, 3, 5, 9, 4]

GRAPHS = {
    "K2": (["a", "b"], [("a", "b")]),
    "two_isolated": (["a", "b"], []),
    "P3": (["a", "b", "c"], [("a", "b"), ("b", "c")]),
    "K3": (["a", "b", "c"], [("a", "b"), ("b", "c"), ("a", "c")]),
    "C4": (["a", "b", "c", "d"], [("a", "b"), ("b", "c"), ("c", "d"), ("a", "d")]),
    "S3": (["c", "x", "y", "z"], [("c", "x"), ("c", "y"), ("c", "z")]),
}


def make_lattice(name):
    labels, edges = GRAPHS[name]
    return enumerate_lattice(build_graph(labels, edges))


def small_graphs():
    """Every labeled simple graph on <= 3 vertices."""
    out = []
    for n in range(4):
        labels = "abc"[:n]
        pairs = list(combinations(labels, 2))
        for k in range(1 << len(pairs)):
            edges = [p for i, p in enumerate(pairs) if k >> i & 1]
            out.append(build_graph(list(labels), edges))
    return out


@pytest.fixture(scope="session")
def k2():
    return make_lattice("K2")


@pytest.fixture(scope="session")
def w2(k2):
    return WeightTable(k2, W2)


@pytest.fixture(params=sorted(GRAPHS), scope="session")
def any_lattice(request):
    return make_lattice(request.param)


def weight_document(lat, values):
    from graphenv.weights import table_to_document

    return table_to_document(WeightTable(lat, values))


@pytest.fixture
def write_json(tmp_path):
    def write(name, doc):
        path = tmp_path / name
        path.write_text(json.dumps(doc), encoding="utf-8")
        return str(path)

    return write


# ---- acceptance reporting: one pass/fail line per criterion ----

_criteria: dict[str, list[str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion this test checks")


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None or call.when != "call":
        return
    _criteria.setdefault(marker.args[0], []).append("failed" if call.excinfo else "passed")


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_criteria, key=lambda s: int(s.split()[0][2:])):
        outcomes = _criteria[label]
        verdict = "PASS" if all(o == "passed" for o in outcomes) else "FAIL"
        terminalreporter.write_line(f"{verdict}  {label}  ({outcomes.count('passed')}/{len(outcomes)} checks)")
