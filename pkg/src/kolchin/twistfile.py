"""JSON input format for a pair of twist splittings.

A document declares the ambient rank and basis once, then two twist
blocks; see schema/twist_pair.schema.json for the exact shape.  Parsing
reports the first offence with a stable error code and a JSON-path-like
location.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Union

from .gog import (Arrow, Graph, GraphOfGroups, Marking, arrow_str,
                  parse_arrow)
from .twist import TwistSpec, validate_twist
from .words import check_basis_names, parse_word, word_str


class InputError(Exception):
    """A parse or validation failure with a machine-readable code."""

    def __init__(self, code: str, path: str, message: str):
        super().__init__(f"{code} at {path}: {message}")
        self.code = code
        self.path = path
        self.message = message

    def as_dict(self) -> dict:
        return {"code": self.code, "path": self.path, "message": self.message}


def _expect(doc: dict, key: str, typ, path: str):
    if not isinstance(doc, dict) or key not in doc:
        raise InputError("missing-field", path, f"missing field {key!r}")
    value = doc[key]
    if typ is not None and not isinstance(value, typ):
        raise InputError("bad-type", f"{path}.{key}",
                         f"expected {typ.__name__}, got {type(value).__name__}")
    return value


def load_document(source: Union[str, Path, dict]) -> dict:
    if isinstance(source, dict):
        return source
    path = Path(source)
    try:
        text = path.read_text()
    except OSError as err:
        raise InputError("io", str(path), str(err)) from err
    try:
        return json.loads(text)
    except json.JSONDecodeError as err:
        raise InputError("json", f"{path}:{err.lineno}:{err.colno}", err.msg) from err


def _parse_graph(block: dict, path: str) -> Graph:
    gdoc = _expect(block, "graph", dict, path)
    vertices = _expect(gdoc, "vertices", list, f"{path}.graph")
    if not vertices or not all(isinstance(v, str) for v in vertices):
        raise InputError("bad-value", f"{path}.graph.vertices",
                         "need a nonempty list of vertex ids")
    if len(set(vertices)) != len(vertices):
        raise InputError("bad-value", f"{path}.graph.vertices", "duplicate vertex id")
    edges = _expect(gdoc, "edges", list, f"{path}.graph")
    pairs = []
    seen_ids: set[str] = set()
    for i, edoc in enumerate(edges):
        epath = f"{path}.graph.edges[{i}]"
        e = _expect(edoc, "edge", str, epath)
        ebar = _expect(edoc, "reverse", str, epath)
        u = _expect(edoc, "from", str, epath)
        v = _expect(edoc, "to", str, epath)
        if e == ebar:
            raise InputError("involution-mismatch", epath,
                             f"edge {e!r} equals its own reverse")
        for x in (e, ebar):
            if ":" in x or "." in x or any(c.isspace() for c in x):
                raise InputError("bad-value", epath, f"edge id {x!r} contains ':', '.' or space")
            if x in seen_ids:
                raise InputError("involution-mismatch", epath, f"edge id {x!r} declared twice")
            seen_ids.add(x)
        for w in (u, v):
            if w not in vertices:
                raise InputError("dangling-vertex", epath, f"unknown vertex {w!r}")
        pairs.append((e, ebar, u, v))
    return Graph.build(vertices, pairs)


def _parse_block(block: dict, basis: tuple[str, ...], default_name: str,
                 path: str) -> TwistSpec:
    if not isinstance(block, dict):
        raise InputError("bad-type", path, "twist block must be an object")
    name = block.get("name", default_name)
    if not isinstance(name, str):
        raise InputError("bad-type", f"{path}.name", "name must be a string")
    efficient = _expect(block, "efficient", bool, path)
    graph = _parse_graph(block, path)

    bases_doc = _expect(block, "vertex_bases", dict, path)
    if set(bases_doc) != set(graph.vertices):
        raise InputError("bad-value", f"{path}.vertex_bases",
                         "vertex bases must be declared for exactly the vertices")
    vertex_basis = {}
    for v, names in bases_doc.items():
        if not isinstance(names, list) or not all(isinstance(n, str) for n in names):
            raise InputError("bad-type", f"{path}.vertex_bases.{v}", "expected a list of names")
        try:
            check_basis_names(names)
        except ValueError as err:
            raise InputError("bad-basis", f"{path}.vertex_bases.{v}", str(err)) from err
        vertex_basis[v] = tuple(names)

    oriented = graph.oriented_edges
    inj_doc = _expect(block, "inj", dict, path)
    if set(inj_doc) != set(oriented):
        raise InputError("bad-value", f"{path}.inj",
                         "injections must be declared for exactly the oriented edges")
    inj = {}
    for e in oriented:
        text = inj_doc[e]
        if not isinstance(text, str):
            raise InputError("bad-type", f"{path}.inj.{e}", "expected a word string")
        try:
            inj[e] = parse_word(text, vertex_basis[graph.t[e]])
        except ValueError as err:
            raise InputError("word-grammar", f"{path}.inj.{e}", str(err)) from err
    gog = GraphOfGroups(graph, vertex_basis, inj)

    exp_doc = _expect(block, "exponents", dict, path)
    if set(exp_doc) != set(oriented):
        raise InputError("bad-value", f"{path}.exponents",
                         "exponents must be declared for exactly the oriented edges")
    exponents = {}
    for e in oriented:
        k = exp_doc[e]
        if not isinstance(k, int) or isinstance(k, bool):
            raise InputError("bad-type", f"{path}.exponents.{e}", "expected an integer")
        exponents[e] = k
    for e, ebar in graph.pairs:
        if exponents[ebar] != -exponents[e]:
            raise InputError("exponent-antisymmetry", f"{path}.exponents",
                             f"exponent antisymmetry violated at edge pair ({e}, {ebar})")

    mdoc = _expect(block, "marking", dict, path)
    base_vertex = _expect(mdoc, "base_vertex", str, f"{path}.marking")
    if base_vertex not in graph.vertices:
        raise InputError("dangling-vertex", f"{path}.marking.base_vertex",
                         f"unknown vertex {base_vertex!r}")
    cdoc = _expect(mdoc, "collapse", dict, f"{path}.marking")
    cv = _expect(cdoc, "vertices", dict, f"{path}.marking.collapse")
    if set(cv) != set(graph.vertices):
        raise InputError("bad-value", f"{path}.marking.collapse.vertices",
                         "collapse must cover exactly the vertices")
    vertex_images = {}
    for v in graph.vertices:
        table = cv[v]
        if not isinstance(table, dict) or set(table) != set(vertex_basis[v]):
            raise InputError("bad-value", f"{path}.marking.collapse.vertices.{v}",
                             "collapse must cover exactly the local letters")
        images = []
        for local in vertex_basis[v]:
            try:
                images.append(parse_word(table[local], basis))
            except (TypeError, ValueError) as err:
                raise InputError("word-grammar",
                                 f"{path}.marking.collapse.vertices.{v}.{local}",
                                 str(err)) from err
        vertex_images[v] = tuple(images)
    ce = _expect(cdoc, "edges", dict, f"{path}.marking.collapse")
    if set(ce) != set(oriented):
        raise InputError("bad-value", f"{path}.marking.collapse.edges",
                         "collapse must cover exactly the oriented edges")
    edge_images = {}
    for e in oriented:
        try:
            edge_images[e] = parse_word(ce[e], basis)
        except (TypeError, ValueError) as err:
            raise InputError("word-grammar", f"{path}.marking.collapse.edges.{e}",
                             str(err)) from err
    ldoc = _expect(mdoc, "lift", dict, f"{path}.marking")
    if set(ldoc) != set(basis):
        raise InputError("bad-value", f"{path}.marking.lift",
                         "lifts must cover exactly the ambient basis letters")
    lifts = []
    for letter in basis:
        try:
            lifts.append(parse_arrow(ldoc[letter], gog, base_vertex))
        except (TypeError, ValueError) as err:
            raise InputError("arrow-grammar", f"{path}.marking.lift.{letter}",
                             str(err)) from err
    marking = Marking(base_vertex, basis, vertex_images, edge_images, tuple(lifts))
    return TwistSpec(gog, marking, exponents, efficient=efficient, name=name)


def parse_twist_pair(source: Union[str, Path, dict],
                     validate: bool = True) -> tuple[TwistSpec, TwistSpec]:
    """Parse and (by default) fully validate a twist-pair document.

    Validation failures are raised as InputError with code "validation"
    and a message naming every violated condition and its location.
    """
    doc = load_document(source)
    rank = _expect(doc, "rank", int, "$")
    if isinstance(rank, bool) or rank < 1:
        raise InputError("bad-value", "$.rank", "rank must be a positive integer")
    basis_doc = _expect(doc, "basis", list, "$")
    if len(basis_doc) != rank or not all(isinstance(x, str) for x in basis_doc):
        raise InputError("bad-basis", "$.basis", f"need exactly {rank} letter names")
    try:
        check_basis_names(basis_doc)
    except ValueError as err:
        raise InputError("bad-basis", "$.basis", str(err)) from err
    basis = tuple(basis_doc)
    twists = _expect(doc, "twists", list, "$")
    if len(twists) != 2:
        raise InputError("bad-value", "$.twists", "need exactly two twist blocks")
    pair = tuple(_parse_block(block, basis, default, f"$.twists[{i}]")
                 for i, (block, default) in enumerate(zip(twists, ("A", "B"))))
    if validate:
        for i, ts in enumerate(pair):
            report = validate_twist(ts)
            if not report.ok:
                detail = "; ".join(f"{p.code} at {p.where}: {p.message}"
                                   for p in report.problems)
                raise InputError("validation", f"$.twists[{i}]", detail)
    return pair


def serialize_twist_pair(a: TwistSpec, b: TwistSpec) -> dict:
    """Inverse of parse_twist_pair up to structural equality."""
    basis = a.marking.basis

    def block(ts: TwistSpec, default_name: str) -> dict:
        graph = ts.gog.graph
        return {
            "name": ts.name or default_name,
            "efficient": ts.efficient,
            "graph": {
                "vertices": list(graph.vertices),
                "edges": [{"edge": e, "reverse": ebar,
                           "from": graph.o[e], "to": graph.t[e]}
                          for e, ebar in graph.pairs],
            },
            "vertex_bases": {v: list(ts.gog.vertex_basis[v]) for v in graph.vertices},
            "inj": {e: word_str(ts.gog.inj[e], ts.gog.vertex_basis[graph.t[e]])
                    for e in graph.oriented_edges},
            "exponents": {e: ts.exponents[e] for e in graph.oriented_edges},
            "marking": {
                "base_vertex": ts.marking.base_vertex,
                "collapse": {
                    "vertices": {v: {name: word_str(img, basis)
                                     for name, img in zip(ts.gog.vertex_basis[v],
                                                          ts.marking.vertex_images[v])}
                                 for v in graph.vertices},
                    "edges": {e: word_str(ts.marking.edge_images[e], basis)
                              for e in graph.oriented_edges},
                },
                "lift": {name: arrow_str(ts.gog, lift)
                         for name, lift in zip(basis, ts.marking.lifts)},
            },
        }

    return {
        "rank": len(basis),
        "basis": list(basis),
        "twists": [block(a, "A"), block(b, "B")],
    }
