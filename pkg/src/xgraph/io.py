"""JSON graph documents.

Format::

    {"vertices": n,
     "index_base": 0 | 1,            # optional, default 0
     "edges": [{"u": int, "v": int, "cu": int, "cv": int,
                "w": {"re": [num, den], "im": [num, den]} | "1" | "-1" | "i" | "-i"}]}

Colour ids may be any non-negative integers; they are renumbered onto
``0..d-1`` in increasing order and the original ids are kept in
``ExperimentGraph.color_labels`` so that ``serialize`` writes them back.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .errors import GraphFormatError
from .gaussian import GaussianRational
from .graph import ExperimentGraph, HalfColoredEdge


def _rational(value, allow_float: bool) -> Fraction:
    if isinstance(value, bool):
        raise GraphFormatError(f"malformed rational {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if allow_float:
            return Fraction(value)
        raise GraphFormatError(f"malformed rational {value!r} (floats need float mode)")
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError):
            raise GraphFormatError(f"malformed rational {value!r}") from None
    if isinstance(value, (list, tuple)) and len(value) == 2:
        num, den = value
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in (num, den)):
            raise GraphFormatError(f"malformed rational {value!r}")
        if den == 0:
            raise GraphFormatError(f"malformed rational {value!r}: zero denominator")
        return Fraction(num, den)
    raise GraphFormatError(f"malformed rational {value!r}")


def parse_weight(value, allow_float: bool = False) -> GaussianRational:
    if isinstance(value, str):
        return GaussianRational.parse(value)
    if isinstance(value, dict):
        unknown = set(value) - {"re", "im"}
        if unknown:
            raise GraphFormatError(f"unknown weight fields {sorted(unknown)}")
        re = _rational(value.get("re", 0), allow_float)
        im = _rational(value.get("im", 0), allow_float)
        return GaussianRational(re, im)
    if isinstance(value, int) and not isinstance(value, bool):
        return GaussianRational(value)
    if isinstance(value, float) and allow_float:
        return GaussianRational.from_float(value)
    raise GraphFormatError(f"malformed weight {value!r}")


def _int_field(record, key, where):
    try:
        value = record[key]
    except KeyError:
        raise GraphFormatError(f"{where}: missing field {key!r}") from None
    if not isinstance(value, int) or isinstance(value, bool):
        raise GraphFormatError(f"{where}: field {key!r} must be an integer")
    return value


def graph_from_dict(doc: dict, allow_float: bool = False) -> ExperimentGraph:
    if not isinstance(doc, dict):
        raise GraphFormatError("graph document must be a JSON object")
    n = _int_field(doc, "vertices", "graph")
    base = doc.get("index_base", 0)
    if base not in (0, 1):
        raise GraphFormatError("index_base must be 0 or 1")
    raw = doc.get("edges", [])
    if not isinstance(raw, list):
        raise GraphFormatError("edges must be a list")
    records = []
    for k, rec in enumerate(raw):
        where = f"edge #{k}"
        if not isinstance(rec, dict):
            raise GraphFormatError(f"{where}: must be an object")
        u = _int_field(rec, "u", where) - base
        v = _int_field(rec, "v", where) - base
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"{where}: vertex outside the declared range")
        cu = _int_field(rec, "cu", where)
        cv = _int_field(rec, "cv", where)
        w = parse_weight(rec.get("w", "1"), allow_float)
        records.append((u, v, cu, cv, w))
    labels = sorted({c for r in records for c in (r[2], r[3])})
    cidx = {c: k for k, c in enumerate(labels)}
    edges = [HalfColoredEdge(u, v, cidx[cu], cidx[cv], w) for u, v, cu, cv, w in records]
    color_labels = None if labels == list(range(len(labels))) else tuple(labels)
    return ExperimentGraph(n, tuple(edges), base, color_labels)


def graph_to_dict(g: ExperimentGraph) -> dict:
    doc: dict = {"vertices": g.vertex_count}
    if g.index_base:
        doc["index_base"] = g.index_base
    doc["edges"] = [
        {
            "u": g.vertex_label(e.u),
            "v": g.vertex_label(e.v),
            "cu": g.color_label(e.color_at_u),
            "cv": g.color_label(e.color_at_v),
            "w": e.weight.to_json(abbreviate=True),
        }
        for e in g.edges
    ]
    return doc


def parse(text: str, allow_float: bool = False) -> ExperimentGraph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"invalid JSON: {exc}") from None
    return graph_from_dict(doc, allow_float)


def serialize(g: ExperimentGraph) -> str:
    return dumps(graph_to_dict(g))


def load(path, allow_float: bool = False) -> ExperimentGraph:
    return parse(Path(path).read_text(), allow_float)


def save(g: ExperimentGraph, path) -> None:
    Path(path).write_text(serialize(g))


def dumps(obj) -> str:
    """Deterministic JSON text used for every document this package writes."""
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"
