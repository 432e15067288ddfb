"""Text formats for complexes, graphs and maps, plus JSON emitters.

Vertex names are integers, bare words, or bracketed tuples such as ``[0,1]``
and ``[[0],[0,1]]`` (no spaces inside a name).
"""

from __future__ import annotations

import json
import re

from ._util import sorted_vertices, vertex_key
from .complexes import Complex, VertexMap, face_key
from .graphs import LOOP, REFLEXIVE, Graph

SCHEMA = 1

_INT = re.compile(r"-?\d+\Z")
_WORD = re.compile(r"[A-Za-z_+.'*-][A-Za-z0-9_+.'*-]*\Z")


class FormatError(ValueError):
    """A malformed input file; carries the 1-based line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


# -- vertex names -----------------------------------------------------------------


def format_vertex(v) -> str:
    if isinstance(v, bool):
        raise ValueError("booleans are not vertex names")
    if isinstance(v, int):
        return str(v)
    if isinstance(v, str):
        if not _WORD.match(v) or _INT.match(v):
            raise ValueError(f"vertex name {v!r} cannot be written in the text format")
        return v
    if isinstance(v, tuple):
        return "[" + ",".join(format_vertex(x) for x in v) + "]"
    raise TypeError(f"unsupported vertex label {v!r}")


def parse_vertex(token: str):
    pos = 0

    def atom():
        nonlocal pos
        if pos < len(token) and token[pos] == "[":
            pos += 1
            items = []
            if pos < len(token) and token[pos] == "]":
                pos += 1
                return ()
            while True:
                items.append(atom())
                if pos >= len(token):
                    raise ValueError("unclosed bracket")
                if token[pos] == ",":
                    pos += 1
                elif token[pos] == "]":
                    pos += 1
                    return tuple(items)
                else:
                    raise ValueError(f"unexpected {token[pos]!r}")
        end = pos
        while end < len(token) and token[end] not in ",[]":
            end += 1
        word = token[pos:end]
        pos = end
        if _INT.match(word):
            return int(word)
        if _WORD.match(word):
            return word
        raise ValueError(f"bad vertex name {word!r}")

    v = atom()
    if pos != len(token):
        raise ValueError(f"trailing characters in {token!r}")
    return v


def _lines(text: str):
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield n, line


def _tokens(n, line):
    try:
        return [parse_vertex(t) for t in line.split()]
    except ValueError as e:
        raise FormatError(n, str(e)) from None


# -- complexes ------------------------------------------------------------------------


def parse_complex(text: str) -> Complex:
    vertices = []
    facets = []
    for n, line in _lines(text):
        if line.startswith("vertices:"):
            vertices.extend(_tokens(n, line[len("vertices:"):]))
            continue
        if ":" in line.split()[0]:
            raise FormatError(n, f"unknown header {line.split()[0]!r}")
        f = _tokens(n, line)
        if len(set(f)) != len(f):
            raise FormatError(n, "repeated vertex in a facet")
        facets.append(f)
    verts = set(vertices)
    for f in facets:
        verts.update(f)
    return Complex(verts, facets)


def serialize_complex(K: Complex) -> str:
    lines = ["vertices: " + " ".join(format_vertex(v) for v in K.vertices)]
    for f in sorted(K.facets, key=face_key):
        lines.append(" ".join(format_vertex(v) for v in sorted_vertices(f)))
    return "\n".join(lines) + "\n"


# -- graphs ---------------------------------------------------------------------------


def parse_graph(text: str) -> Graph:
    mode = None
    vertices = []
    edges = []
    for n, line in _lines(text):
        if line.startswith("mode:"):
            mode = line[len("mode:"):].strip()
            if mode not in (REFLEXIVE, LOOP):
                raise FormatError(n, f"mode must be {REFLEXIVE} or {LOOP}")
            continue
        if line.startswith("vertices:"):
            vertices.extend(_tokens(n, line[len("vertices:"):]))
            continue
        e = _tokens(n, line)
        if len(e) != 2:
            raise FormatError(n, "an edge line names exactly two vertices")
        if e[0] == e[1] and mode != LOOP:
            raise FormatError(n, "loops may only be written in loop mode")
        edges.append((n, e))
    if mode is None:
        raise FormatError(1, "missing 'mode:' line")
    verts = set(vertices)
    for _, e in edges:
        verts.update(e)
    return Graph(verts, [set(e) for _, e in edges], mode)


def serialize_graph(G: Graph) -> str:
    lines = [f"mode: {G.mode}", "vertices: " + " ".join(format_vertex(v) for v in G.vertices)]
    for a, b in G.proper_edges():
        lines.append(f"{format_vertex(a)} {format_vertex(b)}")
    if G.mode == LOOP:
        for v in G.loops():
            lines.append(f"{format_vertex(v)} {format_vertex(v)}")
    return "\n".join(lines) + "\n"


# -- maps -----------------------------------------------------------------------------


def parse_map(text: str, source: Complex, target: Complex) -> VertexMap:
    mapping = {}
    for n, line in _lines(text):
        parts = line.split("->")
        if len(parts) != 2:
            raise FormatError(n, "expected 'x -> y'")
        x, y = (_tokens(n, p) for p in parts)
        if len(x) != 1 or len(y) != 1:
            raise FormatError(n, "expected 'x -> y'")
        x, y = x[0], y[0]
        if x in mapping:
            raise FormatError(n, f"{format_vertex(x)} is mapped twice")
        if x not in source.vertex_set:
            raise FormatError(n, f"{format_vertex(x)} is not a source vertex")
        if y not in target.vertex_set:
            raise FormatError(n, f"{format_vertex(y)} is not a target vertex")
        mapping[x] = y
    return VertexMap(source, target, mapping)


def serialize_map(f: VertexMap) -> str:
    return "".join(f"{format_vertex(v)} -> {format_vertex(f(v))}\n" for v in f.source.vertices)


# -- JSON -----------------------------------------------------------------------------


def vertex_json(v):
    return [vertex_json(x) for x in v] if isinstance(v, tuple) else v


def vertex_from_json(x):
    return tuple(vertex_from_json(y) for y in x) if isinstance(x, list) else x


def facets_json(K: Complex):
    return [[vertex_json(v) for v in sorted_vertices(f)] for f in sorted(K.facets, key=face_key)]


def complex_json(K: Complex):
    return {"vertices": [vertex_json(v) for v in K.vertices], "facets": facets_json(K)}


def complex_from_json(d) -> Complex:
    verts = [vertex_from_json(v) for v in d.get("vertices", [])]
    facets = [[vertex_from_json(v) for v in f] for f in d["facets"]]
    return Complex(set(verts).union(*map(set, facets)) if facets else verts, facets)


def map_json(f: VertexMap):
    return [[vertex_json(v), vertex_json(f(v))] for v in f.source.vertices]


def chain_json(chain):
    return [map_json(m) for m in chain.maps]


def collapse_json(seq):
    return [{"remove": vertex_json(v), "dominated_by": vertex_json(w)} for v, w in seq.steps]


def ndr_json(w):
    return {"L_prime": facets_json(w.L_prime), "steps": collapse_json(w.collapse)}


def cell_structure_json(cs):
    atts = []
    for a in cs.attachments:
        atts.append(
            {
                "generator": list(a.tag),
                "attaching": [
                    [vertex_json(x), vertex_json(y)]
                    for x, y in sorted(a.assignment.items(), key=lambda kv: vertex_key(kv[0]))
                ],
            }
        )
        if a.names:
            atts[-1]["names"] = [
                [vertex_json(x), vertex_json(y)] for x, y in sorted(a.names.items(), key=lambda kv: vertex_key(kv[0]))
            ]
    return {"base": complex_json(cs.base), "attachments": atts}


def cell_structure_from_json(d):
    from .cells import Attachment, CellStructure

    atts = []
    for a in d["attachments"]:
        names = {vertex_from_json(x): vertex_from_json(y) for x, y in a.get("names", [])}
        atts.append(
            Attachment(
                tuple(a["generator"]),
                {vertex_from_json(x): vertex_from_json(y) for x, y in a["attaching"]},
                names or None,
            )
        )
    return CellStructure(complex_from_json(d["base"]), atts)


def dumps(payload: dict) -> str:
    """JSON text with the schema version first."""
    return json.dumps({"schema": SCHEMA, **payload}, sort_keys=False)
