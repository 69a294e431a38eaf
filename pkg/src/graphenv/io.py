"""Graph/weight JSON documents and report rendering (CSV and JSON)."""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path
from typing import Mapping, Sequence

from .envelopes import EnvelopeKind, EnvelopeResult
from .errors import GraphFormatError
from .lattice import Cover, Graph, Lattice, build_graph
from .weights import WeightTable, describe, descriptor_key, format_rational, parse_rational

CSV_COLUMNS = (
    "index",
    "vertices",
    "edges",
    "w",
    "monotone_min",
    "monotone_maj",
    "subadd_min",
    "superadd_maj",
    "witness",
)
KIND_ORDER = tuple(EnvelopeKind)


def read_json(path: str | Path):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def graph_from_document(doc) -> Graph:
    if not isinstance(doc, Mapping):
        raise GraphFormatError("graph document must be a JSON object")
    if not isinstance(doc.get("vertices"), list):
        raise GraphFormatError('graph document needs a "vertices" list')
    edges = doc.get("edges", [])
    if not isinstance(edges, list):
        raise GraphFormatError('"edges" must be a list of label pairs')
    for label in doc["vertices"]:
        if not isinstance(label, str):
            raise GraphFormatError(f"vertex label {label!r} is not a string")
    for pair in edges:
        if not (isinstance(pair, list) and len(pair) == 2 and all(isinstance(x, str) for x in pair)):
            raise GraphFormatError(f"edge {pair!r} is not a pair of labels")
    return build_graph(doc["vertices"], edges)


def graph_to_document(g: Graph) -> dict:
    return {
        "vertices": list(g.vertex_labels),
        "edges": [list(g.edge_label(e)) for e in range(g.edge_count)],
    }


def render_subgraph(lat: Lattice, h: int) -> str:
    """Human form: ``∅``, ``{a,b}``, ``{a,b | ab}``.

    Edges are written as concatenated labels when every label is a single
    character, ``a-b`` otherwise.
    """
    if h == 0:
        return "∅"
    d = describe(lat, h)
    glue = "" if all(len(x) == 1 for x in lat.graph.vertex_labels) else "-"
    text = ",".join(d["vertices"])
    if d["edges"]:
        text += " | " + ",".join(glue.join(p) for p in d["edges"])
    return "{" + text + "}"


def render_witness(w) -> str:
    """Witness as a bracketed, space-separated list of canonical indices."""
    if isinstance(w, Cover):
        return "[" + " ".join(str(p) for p in w.parts) + "]"
    return f"[{w}]"


def _witness_kind(results: Mapping[EnvelopeKind, EnvelopeResult]) -> EnvelopeKind | None:
    # one witness column: prefer the cover of the subadditive minorant
    for kind in (EnvelopeKind.SUBADD_MIN, EnvelopeKind.SUPERADD_MAJ,
                 EnvelopeKind.MONOTONE_MIN, EnvelopeKind.MONOTONE_MAJ):
        if kind in results:
            return kind
    return None


def report_csv(w: WeightTable, results: Mapping[EnvelopeKind, EnvelopeResult]) -> str:
    lat = w.lattice
    buf = io.StringIO()
    out = csv.writer(buf, lineterminator="\n")
    out.writerow(CSV_COLUMNS)
    wk = _witness_kind(results)
    for h in range(len(lat)):
        d = describe(lat, h)
        row = [str(h), ";".join(d["vertices"]), ";".join("-".join(p) for p in d["edges"]),
               format_rational(w[h])]
        for kind in KIND_ORDER:
            row.append(format_rational(results[kind].output[h]) if kind in results else "")
        row.append(render_witness(results[wk].witness[h]) if wk else "")
        out.writerow(row)
    return buf.getvalue()


def report_json(w: WeightTable, results: Mapping[EnvelopeKind, EnvelopeResult]) -> str:
    lat = w.lattice
    rows = []
    for h in range(len(lat)):
        row = {"index": h, **describe(lat, h), "w": format_rational(w[h])}
        wit = {}
        for kind in KIND_ORDER:
            if kind in results:
                row[kind.value] = format_rational(results[kind].output[h])
                x = results[kind].witness[h]
                wit[kind.value] = list(x.parts) if isinstance(x, Cover) else [x]
        row["witness"] = wit
        rows.append(row)
    doc = {
        "graph": graph_to_document(lat.graph),
        "kinds": [k.value for k in KIND_ORDER if k in results],
        "rows": rows,
    }
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def read_json_report(lat: Lattice, doc: Mapping) -> dict[str, WeightTable]:
    """Recover every value column of a JSON report as a WeightTable."""
    columns: dict[str, list] = {}
    names = ["w", *doc.get("kinds", [])]
    for row in doc["rows"]:
        h = descriptor_key(lat, row["vertices"], row["edges"])
        if h != row["index"]:
            raise ValueError(f"row {row['index']} describes lattice index {h}")
        for name in names:
            columns.setdefault(name, []).append(parse_rational(row[name]))
    return {name: WeightTable(lat, vals) for name, vals in columns.items()}


def read_csv_report(lat: Lattice, text: str) -> dict[str, WeightTable]:
    rows = list(csv.DictReader(io.StringIO(text)))
    columns: dict[str, list] = {}
    for row in rows:
        vertices = row["vertices"].split(";") if row["vertices"] else []
        edges = [p.split("-") for p in row["edges"].split(";")] if row["edges"] else []
        h = descriptor_key(lat, vertices, edges)
        if h != int(row["index"]):
            raise ValueError(f"row {row['index']} describes lattice index {h}")
        for name in CSV_COLUMNS[3:-1]:
            if row[name] != "":
                columns.setdefault(name, []).append(parse_rational(row[name]))
    return {name: WeightTable(lat, vals) for name, vals in columns.items()}


def table_csv(lat: Lattice, columns: Sequence[tuple[str, WeightTable]]) -> str:
    """Plain value listing: index, vertices, edges, then one column per table."""
    buf = io.StringIO()
    out = csv.writer(buf, lineterminator="\n")
    out.writerow(["index", "vertices", "edges", *(name for name, _ in columns)])
    for h in range(len(lat)):
        d = describe(lat, h)
        out.writerow([h, ";".join(d["vertices"]), ";".join("-".join(p) for p in d["edges"]),
                      *(format_rational(t[h]) for _, t in columns)])
    return buf.getvalue()
