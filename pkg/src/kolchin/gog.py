"""Graphs of groups with free vertex groups and infinite-cyclic edge
groups, their fundamental groupoids, and markings by a free group.

An arrow of the fundamental groupoid is an alternating sequence
g0 e1 g1 ... en gn read left to right: g0 lives in the vertex group at
the start vertex, each edge ei runs o(ei) -> t(ei), and gi lives at
t(ei).  The groupoid relations are bar(e) iota_bar(e)(z) e = iota_e(z)
for z the edge-group generator; Britton reduction rewrites a backtrack
e (iota_e(z))^k bar(e) to (iota_bar(e)(z))^k.

A marking identifies the fundamental group at a base vertex with an
ambient free group F_r: `collapse` sends vertex letters and edges to
words of F_r, `lift` sends each ambient basis letter to a loop.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .snf import smith_invariant_factors
from .words import (CyclicWord, Word, check_basis_names,
                    cyclic_coset_representative, cyclic_reduce,
                    generates_free_group, parse_word, power_exponent,
                    word_str)


# --- validation report ------------------------------------------------------


@dataclass(frozen=True)
class Problem:
    code: str
    where: str
    message: str

    def as_dict(self) -> dict:
        return {"code": self.code, "where": self.where, "message": self.message}


@dataclass(frozen=True)
class ValidationReport:
    problems: tuple[Problem, ...] = ()
    warnings: tuple[Problem, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.problems

    def merged(self, other: "ValidationReport") -> "ValidationReport":
        return ValidationReport(self.problems + other.problems,
                                self.warnings + other.warnings)

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "problems": [p.as_dict() for p in self.problems],
            "warnings": [p.as_dict() for p in self.warnings],
        }


# --- graphs -----------------------------------------------------------------


@dataclass(frozen=True, eq=True)
class Graph:
    """Oriented graph with a fixed-point-free edge involution `bar`.

    `pairs` lists each geometric edge once as (e, bar(e)); the first id
    of a pair is its canonical representative.
    """

    vertices: tuple[str, ...]
    pairs: tuple[tuple[str, str], ...]
    o: dict = field(compare=True)
    t: dict = field(compare=True)
    bar: dict = field(compare=True)

    __hash__ = None  # type: ignore[assignment]

    @classmethod
    def build(cls, vertices: Sequence[str],
              pairs: Sequence[tuple[str, str, str, str]]) -> "Graph":
        """pairs: (edge, reverse, origin, target) per geometric edge."""
        o: dict[str, str] = {}
        t: dict[str, str] = {}
        bar: dict[str, str] = {}
        pair_ids = []
        for e, ebar, u, v in pairs:
            o[e], t[e] = u, v
            o[ebar], t[ebar] = v, u
            bar[e], bar[ebar] = ebar, e
            pair_ids.append((e, ebar))
        return cls(tuple(vertices), tuple(pair_ids), o, t, bar)

    @property
    def oriented_edges(self) -> tuple[str, ...]:
        out = []
        for e, ebar in self.pairs:
            out.append(e)
            out.append(ebar)
        return tuple(out)

    def pair_id(self, e: str) -> str:
        for a, b in self.pairs:
            if e == a or e == b:
                return a
        raise KeyError(e)

    def check(self) -> list[Problem]:
        problems = []
        if not self.vertices:
            problems.append(Problem("graph/empty", "graph", "no vertices"))
        if len(set(self.vertices)) != len(self.vertices):
            problems.append(Problem("graph/dup-vertex", "graph", "duplicate vertex id"))
        ids = [e for pair in self.pairs for e in pair]
        if len(set(ids)) != len(ids):
            problems.append(Problem("graph/dup-edge", "graph", "duplicate edge id"))
        for e, ebar in self.pairs:
            if e == ebar:
                problems.append(Problem("graph/involution", f"edge {e}",
                                        "edge equals its own reverse"))
            for x in (e, ebar):
                if self.o.get(x) not in self.vertices or self.t.get(x) not in self.vertices:
                    problems.append(Problem("graph/dangling", f"edge {x}",
                                            "endpoint is not a declared vertex"))
            if self.bar.get(e) != ebar or self.bar.get(ebar) != e:
                problems.append(Problem("graph/involution", f"edge pair ({e}, {ebar})",
                                        "bar is not the declared pairing"))
            if self.o.get(ebar) != self.t.get(e) or self.t.get(ebar) != self.o.get(e):
                problems.append(Problem("graph/involution", f"edge pair ({e}, {ebar})",
                                        "reverse edge endpoints do not match"))
        if self.vertices and not problems:
            seen = {self.vertices[0]}
            frontier = [self.vertices[0]]
            while frontier:
                v = frontier.pop()
                for e in self.oriented_edges:
                    if self.o[e] == v and self.t[e] not in seen:
                        seen.add(self.t[e])
                        frontier.append(self.t[e])
            if seen != set(self.vertices):
                problems.append(Problem("graph/disconnected", "graph",
                                        "graph is not connected"))
        return problems


@dataclass(frozen=True, eq=True)
class GraphOfGroups:
    """Free vertex groups (given by local bases) and Z edge groups whose
    generators map to `inj[e]`, a nontrivial word at t(e)."""

    graph: Graph
    vertex_basis: dict
    inj: dict

    __hash__ = None  # type: ignore[assignment]

    def basis_of(self, v: str) -> tuple[str, ...]:
        return self.vertex_basis[v]

    def check(self) -> list[Problem]:
        problems = list(self.graph.check())
        if problems:
            return problems
        if set(self.vertex_basis) != set(self.graph.vertices):
            problems.append(Problem("gog/basis-keys", "vertex_basis",
                                    "vertex bases must be declared for exactly the vertices"))
            return problems
        for v, basis in self.vertex_basis.items():
            try:
                check_basis_names(basis)
            except ValueError as err:
                problems.append(Problem("gog/basis-name", f"vertex {v}", str(err)))
        if set(self.inj) != set(self.graph.oriented_edges):
            problems.append(Problem("gog/inj-keys", "inj",
                                    "edge injections must be declared for exactly the oriented edges"))
            return problems
        for e, w in self.inj.items():
            rank = len(self.vertex_basis[self.graph.t[e]])
            if not w:
                problems.append(Problem("gog/trivial-injection", f"edge {e}",
                                        "trivial edge injection"))
            for l in w.letters:
                if abs(l) > rank:
                    problems.append(Problem("gog/inj-rank", f"edge {e}",
                                            f"injection letter {l} outside basis of {self.graph.t[e]}"))
        return problems


# --- arrows -----------------------------------------------------------------


@dataclass(frozen=True)
class Arrow:
    """Fundamental groupoid arrow g0 e1 g1 ... en gn."""

    base: str
    head: Word
    steps: tuple[tuple[str, Word], ...] = ()

    def __repr__(self) -> str:
        inner = "; ".join([repr(self.head)] + [f"{e}; {g!r}" for e, g in self.steps])
        return f"Arrow({self.base}: {inner})"


def identity_arrow(vertex: str) -> Arrow:
    return Arrow(vertex, Word(), ())


def arrow_end(gog: GraphOfGroups, a: Arrow) -> str:
    return gog.graph.t[a.steps[-1][0]] if a.steps else a.base


def check_arrow(gog: GraphOfGroups, a: Arrow) -> None:
    """Raise ValueError unless the arrow is well formed over gog."""
    if a.base not in gog.graph.vertices:
        raise ValueError(f"unknown base vertex {a.base!r}")

    def check_word(w: Word, v: str) -> None:
        rank = len(gog.vertex_basis[v])
        for l in w.letters:
            if abs(l) > rank:
                raise ValueError(f"letter {l} outside basis of vertex {v!r}")

    check_word(a.head, a.base)
    here = a.base
    for e, g in a.steps:
        if e not in gog.graph.o:
            raise ValueError(f"unknown edge {e!r}")
        if gog.graph.o[e] != here:
            raise ValueError(f"edge {e!r} does not start at {here!r}")
        here = gog.graph.t[e]
        check_word(g, here)


def arrow_multiply(gog: GraphOfGroups, a: Arrow, b: Arrow) -> Arrow:
    """Concatenate composable arrows.  The result is not reduced."""
    if arrow_end(gog, a) != b.base:
        raise ValueError(f"arrows do not compose: {arrow_end(gog, a)!r} != {b.base!r}")
    if not a.steps:
        return Arrow(a.base, a.head * b.head, b.steps)
    e, g = a.steps[-1]
    return Arrow(a.base, a.head, a.steps[:-1] + ((e, g * b.head),) + b.steps)


def arrow_invert(gog: GraphOfGroups, a: Arrow) -> Arrow:
    if not a.steps:
        return Arrow(a.base, a.head.inverse(), ())
    elements = [a.head] + [g for _, g in a.steps]
    edges = [e for e, _ in a.steps]
    steps = tuple((gog.graph.bar[e], g.inverse())
                  for e, g in zip(reversed(edges), reversed(elements[:-1])))
    return Arrow(arrow_end(gog, a), elements[-1].inverse(), steps)


def _rewrite(gog: GraphOfGroups, j: int, k: int, head: Word,
             steps: list[tuple[str, Word]]) -> Word:
    """Apply e (inj e)^k bar(e) -> (inj bar(e))^k at position j in place."""
    e = steps[j][0]
    insert = (gog.inj[gog.graph.bar[e]] ** k) * steps[j + 1][1]
    del steps[j:j + 2]
    if j == 0:
        return head * insert
    prev_e, prev_g = steps[j - 1]
    steps[j - 1] = (prev_e, prev_g * insert)
    return head


def arrow_reduce(gog: GraphOfGroups, a: Arrow,
                 rng: Optional[random.Random] = None) -> Arrow:
    """Reduce an arrow to its canonical normal form.

    A backtrack ei gi e(i+1) with e(i+1) = bar(ei) and gi a power of
    inj(ei) is rewritten through the edge relation; this repeats until
    no position applies, which fixes the edge sequence uniquely.  The
    interleaved elements are then pinned down too: the relation lets an
    edge-group power slide across its edge (inj(bar e)^k e = e inj(e)^k),
    so a final left-to-right pass replaces the element before each edge
    by its minimal coset representative and pushes the power through.
    The result is independent of rewriting order; passing `rng` picks
    applicable positions at random instead of leftmost-first, which the
    test suite uses to exercise exactly that independence.
    """
    head = a.head
    steps = list(a.steps)
    if rng is None:
        j = 0
        while j < len(steps) - 1:
            e, g = steps[j]
            if steps[j + 1][0] == gog.graph.bar[e]:
                k = power_exponent(g, gog.inj[e])
                if k is not None:
                    head = _rewrite(gog, j, k, head, steps)
                    j = max(0, j - 1)
                    continue
            j += 1
    else:
        while True:
            spots = []
            for j in range(len(steps) - 1):
                e, g = steps[j]
                if steps[j + 1][0] == gog.graph.bar[e]:
                    k = power_exponent(g, gog.inj[e])
                    if k is not None:
                        spots.append((j, k))
            if not spots:
                break
            j, k = spots[rng.randrange(len(spots))]
            head = _rewrite(gog, j, k, head, steps)
    for i, (e, g) in enumerate(steps):
        left = head if i == 0 else steps[i - 1][1]
        rep, k = cyclic_coset_representative(left, gog.inj[gog.graph.bar[e]])
        if k:
            if i == 0:
                head = rep
            else:
                steps[i - 1] = (steps[i - 1][0], rep)
            steps[i] = (e, (gog.inj[e] ** k) * g)
    return Arrow(a.base, head, tuple(steps))


def is_reduced(gog: GraphOfGroups, a: Arrow) -> bool:
    for j in range(len(a.steps) - 1):
        e, g = a.steps[j]
        if a.steps[j + 1][0] == gog.graph.bar[e] and power_exponent(g, gog.inj[e]) is not None:
            return False
    return True


def is_cyclically_reduced(gog: GraphOfGroups, a: Arrow) -> bool:
    """For a reduced loop: no wrap-around backtrack en ... e1 = bar(en)
    with gn*g0 a power of inj(en).  Vertex elements always qualify."""
    if not is_reduced(gog, a):
        return False
    if not a.steps:
        return True
    e1 = a.steps[0][0]
    en, gn = a.steps[-1]
    if en != gog.graph.bar[e1]:
        return True
    return power_exponent(gn * a.head, gog.inj[en]) is None


def arrow_cyclic_reduce(gog: GraphOfGroups, a: Arrow) -> tuple[Arrow, Arrow]:
    """Cyclically reduce a loop.

    Returns (core, conj) with core a cyclically reduced loop and
    a = conj * core * conj^-1 in the groupoid.  Each strip rotates the
    loop past its leading edge and re-reduces, so the number of edges
    strictly decreases; the edge pairs of `core` are a conjugacy
    invariant.
    """
    if arrow_end(gog, a) != a.base:
        raise ValueError("arrow is not a loop")
    red = arrow_reduce(gog, a)
    conj = identity_arrow(a.base)
    while red.steps:
        e1 = red.steps[0][0]
        en, gn = red.steps[-1]
        if len(red.steps) >= 2 and en == gog.graph.bar[e1]:
            wrap = gn * red.head
            if power_exponent(wrap, gog.inj[en]) is not None:
                gamma = Arrow(red.base, red.head, ((e1, Word()),))
                rotated = Arrow(gog.graph.t[e1], red.steps[0][1],
                                red.steps[1:-1] + ((en, wrap), (e1, Word())))
                red = arrow_reduce(gog, rotated)
                conj = arrow_multiply(gog, conj, gamma)
                continue
        break
    return red, conj


# --- markings ---------------------------------------------------------------


@dataclass(frozen=True, eq=True)
class Marking:
    """Identification of the fundamental group at `base_vertex` with the
    ambient free group on `basis`.

    vertex_images[v][i] is the ambient image of the i-th local letter at
    v; edge_images[e] the ambient image of the edge e, with
    edge_images[bar(e)] its inverse; lifts[i] is a loop at base_vertex
    collapsing to the (i+1)-th ambient letter.
    """

    base_vertex: str
    basis: tuple[str, ...]
    vertex_images: dict
    edge_images: dict
    lifts: tuple[Arrow, ...]

    __hash__ = None  # type: ignore[assignment]

    @property
    def rank(self) -> int:
        return len(self.basis)


def collapse_local(marking: Marking, vertex: str, w: Word) -> Word:
    images = marking.vertex_images[vertex]
    out: list[int] = []
    for l in w.letters:
        img = images[abs(l) - 1]
        seq = img.letters if l > 0 else img.inverse().letters
        for x in seq:
            if out and out[-1] == -x:
                out.pop()
            else:
                out.append(x)
    return Word._raw(tuple(out))


def collapse(gog: GraphOfGroups, marking: Marking, a: Arrow) -> Word:
    """Ambient image of an arrow: collapse every letter and edge, then
    reduce.  Agrees on an arrow and its reduced form."""
    result = collapse_local(marking, a.base, a.head)
    for e, g in a.steps:
        result = result * marking.edge_images[e]
        result = result * collapse_local(marking, gog.graph.t[e], g)
    return result


def express(gog: GraphOfGroups, marking: Marking, w: Word) -> Arrow:
    """Reduced loop at the base vertex collapsing to w."""
    out = identity_arrow(marking.base_vertex)
    for l in w.letters:
        lift = marking.lifts[abs(l) - 1]
        if l < 0:
            lift = arrow_invert(gog, lift)
        out = arrow_multiply(gog, out, lift)
    return arrow_reduce(gog, out)


def edges_used(gog: GraphOfGroups, marking: Marking, c: CyclicWord) -> frozenset:
    """Canonical ids of the edge pairs crossed by the cyclically reduced
    form of the conjugacy class c.  Conjugation and inversion invariant."""
    if not c:
        raise ValueError("identity class has no well-defined edge support")
    loop = express(gog, marking, c.representative)
    core, _ = arrow_cyclic_reduce(gog, loop)
    return frozenset(gog.graph.pair_id(e) for e, _ in core.steps)


# --- presentation homology --------------------------------------------------


def presentation_h1(gog: GraphOfGroups) -> tuple[int, tuple[int, ...]]:
    """(rank, torsion coefficients) of H1 of the fundamental group.

    Presentation: all vertex letters plus one stable letter per edge
    pair off a spanning tree; each edge pair contributes the relation
    bar(e) inj(bar e) e = inj(e).  Stable letters cancel under
    abelianisation, so H1 is Z^(pairs - (V-1)) plus the cokernel of the
    matrix of exponent differences inj(e) - inj(bar e).
    """
    problems = gog.graph.check()
    if problems:
        raise ValueError("graph invalid: " + problems[0].message)
    col: dict[tuple[str, int], int] = {}
    for v in gog.graph.vertices:
        for i in range(len(gog.vertex_basis[v])):
            col[(v, i)] = len(col)
    rows = []
    for e, ebar in gog.graph.pairs:
        row = [0] * len(col)
        for edge, sign in ((e, 1), (ebar, -1)):
            v = gog.graph.t[edge]
            for l in gog.inj[edge].letters:
                row[col[(v, abs(l) - 1)]] += sign * (1 if l > 0 else -1)
        rows.append(row)
    factors = smith_invariant_factors(rows) if rows and col else ()
    nontree = len(gog.graph.pairs) - (len(gog.graph.vertices) - 1)
    rank = (len(col) - len(factors)) + nontree
    torsion = tuple(d for d in factors if d > 1)
    return rank, torsion


# --- validation -------------------------------------------------------------


def validate_marked_gog(gog: GraphOfGroups, marking: Marking) -> ValidationReport:
    """Structural invariants, the marking conditions (M1)-(M3), and the
    H1 sanity check, reported with stable codes."""
    problems = list(gog.check())
    if problems:
        return ValidationReport(tuple(problems))
    graph = gog.graph
    try:
        check_basis_names(marking.basis)
    except ValueError as err:
        problems.append(Problem("marking/basis", "basis", str(err)))
    rank = marking.rank
    if rank < 1:
        problems.append(Problem("marking/basis", "basis", "ambient rank must be >= 1"))
    if marking.base_vertex not in graph.vertices:
        problems.append(Problem("marking/base", "base_vertex",
                                f"unknown vertex {marking.base_vertex!r}"))
    if set(marking.vertex_images) != set(graph.vertices):
        problems.append(Problem("marking/collapse-keys", "collapse.vertices",
                                "collapse must cover exactly the vertices"))
    if set(marking.edge_images) != set(graph.oriented_edges):
        problems.append(Problem("marking/collapse-keys", "collapse.edges",
                                "collapse must cover exactly the oriented edges"))
    if problems:
        return ValidationReport(tuple(problems))
    for v in graph.vertices:
        if len(marking.vertex_images[v]) != len(gog.vertex_basis[v]):
            problems.append(Problem("marking/collapse-keys", f"collapse.vertices.{v}",
                                    "one ambient word per local letter required"))
    for w in list(marking.edge_images.values()) + [im for v in graph.vertices
                                                   for im in marking.vertex_images[v]]:
        for l in w.letters:
            if abs(l) > rank:
                problems.append(Problem("marking/rank", "collapse",
                                        f"collapse letter {l} outside ambient rank {rank}"))
    if problems:
        return ValidationReport(tuple(problems))
    for e, ebar in graph.pairs:
        if marking.edge_images[ebar] != marking.edge_images[e].inverse():
            problems.append(Problem("marking/edge-involution", f"edge pair ({e}, {ebar})",
                                    "collapse(bar e) is not collapse(e)^-1"))
    # (M1) collapse respects the edge relations
    for e, ebar in graph.pairs:
        lhs = (marking.edge_images[ebar]
               * collapse_local(marking, graph.t[ebar], gog.inj[ebar])
               * marking.edge_images[e])
        rhs = collapse_local(marking, graph.t[e], gog.inj[e])
        if lhs != rhs:
            problems.append(Problem("marking/M1", f"edge pair ({e}, {ebar})",
                                    "collapse breaks the edge relation"))
    # (M2) lifts collapse to the basis letters
    if len(marking.lifts) != rank:
        problems.append(Problem("marking/M2", "lift", "one lift per ambient letter required"))
    else:
        for i, lift in enumerate(marking.lifts):
            name = marking.basis[i]
            try:
                check_arrow(gog, lift)
            except ValueError as err:
                problems.append(Problem("marking/M2", f"lift.{name}", str(err)))
                continue
            if lift.base != marking.base_vertex or arrow_end(gog, lift) != marking.base_vertex:
                problems.append(Problem("marking/M2", f"lift.{name}",
                                        "lift is not a loop at the base vertex"))
            elif collapse(gog, marking, lift) != Word((i + 1,)):
                problems.append(Problem("marking/M2", f"lift.{name}",
                                        f"lift does not collapse to {name!r}"))
    # (M3) collapse images generate the ambient group
    gens = [im for v in graph.vertices for im in marking.vertex_images[v]]
    gens += [marking.edge_images[e] for e, _ in graph.pairs]
    if not generates_free_group(gens, rank):
        problems.append(Problem("marking/M3", "collapse",
                                "collapse images do not generate the ambient group"))
    # H1 of the presented group must match Z^rank
    h1_rank, torsion = presentation_h1(gog)
    if h1_rank != rank or torsion:
        problems.append(Problem("h1/mismatch", "graph",
                                f"H1 is Z^{h1_rank}" + (f" + torsion {list(torsion)}" if torsion else "")
                                + f", expected Z^{rank}"))
    return ValidationReport(tuple(problems))


# --- arrow text grammar -----------------------------------------------------


def parse_arrow(text: str, gog: GraphOfGroups, base: str) -> Arrow:
    """Parse "g0 . e1 . g1 . ... . en . gn" over the local bases.

    A single item is a vertex element at `base`.  Items at even
    positions are words, at odd positions edge ids.
    """
    items = [part.strip() for part in text.split(".")]
    if len(items) % 2 == 0:
        raise ValueError("arrow text must alternate word . edge . word")
    if base not in gog.graph.vertices:
        raise ValueError(f"unknown base vertex {base!r}")
    head = parse_word(items[0], gog.vertex_basis[base])
    steps = []
    here = base
    for pos in range(1, len(items), 2):
        e = items[pos]
        if e not in gog.graph.o:
            raise ValueError(f"unknown edge {e!r}")
        if gog.graph.o[e] != here:
            raise ValueError(f"edge {e!r} does not start at {here!r}")
        here = gog.graph.t[e]
        g = parse_word(items[pos + 1], gog.vertex_basis[here])
        steps.append((e, g))
    return Arrow(base, head, tuple(steps))


def arrow_str(gog: GraphOfGroups, a: Arrow) -> str:
    parts = [word_str(a.head, gog.vertex_basis[a.base])]
    for e, g in a.steps:
        parts.append(e)
        parts.append(word_str(g, gog.vertex_basis[gog.graph.t[e]]))
    return " . ".join(parts)
