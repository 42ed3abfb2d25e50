"""The edge-twist digraph of two twist splittings and the Kolchin test.

Nodes are the edge pairs of both splittings, tagged by side ("A:e",
"B:f").  There is an arc from an A-pair to a B-pair when the edge-group
generator of the A-pair, as a conjugacy class of the ambient group,
crosses that B-pair in its cyclically reduced form over B's splitting
(and symmetrically).  Twist exponents play no role.

The subgroup generated by the two twists consists of polynomially
growing automorphisms exactly when this digraph is acyclic; a
topological order or an explicit cycle certifies the verdict.  The
verdict is conditional on both splittings being efficient.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .gog import collapse_local, edges_used
from .twist import TwistSpec
from .words import conjugacy_class


@dataclass(frozen=True)
class EdgeTwistDigraph:
    nodes: tuple[str, ...]
    arcs: tuple[tuple[str, str], ...]

    def successors(self, node: str) -> tuple[str, ...]:
        return tuple(b for a, b in self.arcs if a == node)


@dataclass(frozen=True)
class KolchinVerdict:
    verdict: str  # "Kolchin" | "NotKolchin"
    topological_order: Optional[tuple[str, ...]] = None
    cycle: Optional[tuple[str, ...]] = None

    @property
    def kolchin(self) -> bool:
        return self.verdict == "Kolchin"

    def as_dict(self) -> dict:
        if self.kolchin:
            certificate = {"kind": "topological_order",
                           "nodes": list(self.topological_order)}
        else:
            certificate = {"kind": "cycle", "nodes": list(self.cycle)}
        return {"verdict": self.verdict, "certificate": certificate}


def _generator_class(ts: TwistSpec, edge: str):
    w = collapse_local(ts.marking, ts.gog.graph.t[edge], ts.gog.inj[edge])
    return conjugacy_class(w)


def build_edge_twist_digraph(a: TwistSpec, b: TwistSpec) -> EdgeTwistDigraph:
    """Arcs from each side's edge-group generators into the other side's
    splitting.  Node and arc order is deterministic."""
    if a.marking.rank != b.marking.rank:
        raise ValueError("ambient rank mismatch between the two splittings")
    sides = (("A", a, b), ("B", b, a))
    nodes = []
    arcs = set()
    for tag, here, there in sides:
        other_tag = "B" if tag == "A" else "A"
        for e, _ in here.gog.graph.pairs:
            nodes.append(f"{tag}:{e}")
            cls = _generator_class(here, e)
            for pair in edges_used(there.gog, there.marking, cls):
                arcs.add((f"{tag}:{e}", f"{other_tag}:{pair}"))
    return EdgeTwistDigraph(tuple(sorted(nodes)), tuple(sorted(arcs)))


def is_dag(digraph: EdgeTwistDigraph) -> KolchinVerdict:
    """Kahn's algorithm; on failure walk the residue to exhibit a cycle."""
    indeg = {n: 0 for n in digraph.nodes}
    for _, b in digraph.arcs:
        indeg[b] += 1
    order = []
    ready = sorted(n for n, d in indeg.items() if d == 0)
    while ready:
        n = ready.pop(0)
        order.append(n)
        for m in digraph.successors(n):
            indeg[m] -= 1
            if indeg[m] == 0:
                ready.append(m)
                ready.sort()
    if len(order) == len(digraph.nodes):
        return KolchinVerdict("Kolchin", topological_order=tuple(order))
    residue = {n for n in digraph.nodes if n not in set(order)}
    start = sorted(residue)[0]
    seen: list[str] = []
    node = start
    while node not in seen:
        seen.append(node)
        node = sorted(m for m in digraph.successors(node) if m in residue)[0]
    cycle = seen[seen.index(node):]
    pivot = cycle.index(min(cycle))
    return KolchinVerdict("NotKolchin", cycle=tuple(cycle[pivot:] + cycle[:pivot]))


def decide_kolchin(a: TwistSpec, b: TwistSpec) -> KolchinVerdict:
    return is_dag(build_edge_twist_digraph(a, b))


def digraph_dot(digraph: EdgeTwistDigraph) -> str:
    """DOT text with sorted nodes and arcs; byte-stable across runs."""
    lines = ["digraph edge_twist {"]
    for n in digraph.nodes:
        lines.append(f'  "{n}";')
    for a, b in digraph.arcs:
        lines.append(f'  "{a}" -> "{b}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def digraph_json(digraph: EdgeTwistDigraph) -> dict:
    return {"nodes": list(digraph.nodes),
            "arcs": [[a, b] for a, b in digraph.arcs]}
