"""Dehn twists of a marked graph of groups.

A twist is given by an integer exponent per oriented edge with
exponent(bar e) = -exponent(e).  It fixes vertex groups and sends each
edge e to e * inj(e)^exponent(e); through the marking this induces an
automorphism of the ambient free group.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .gog import (Arrow, GraphOfGroups, Marking, Problem, ValidationReport,
                  arrow_reduce, collapse, validate_marked_gog)
from .words import FreeAutomorphism, Word


@dataclass(frozen=True, eq=True)
class TwistSpec:
    """A marked graph-of-groups splitting with twist exponents.

    `efficient` records the user's assertion that the splitting is an
    efficient deformation-space representative; the digraph verdicts are
    conditional on it.
    """

    gog: GraphOfGroups
    marking: Marking
    exponents: dict
    efficient: bool = True
    name: str = ""

    __hash__ = None  # type: ignore[assignment]


def validate_twist(ts: TwistSpec) -> ValidationReport:
    report = validate_marked_gog(ts.gog, ts.marking)
    problems = []
    warnings = []
    edges = set(ts.gog.graph.oriented_edges)
    if set(ts.exponents) != edges:
        problems.append(Problem("twist/exponent-keys", "exponents",
                                "exponents must be declared for exactly the oriented edges"))
    else:
        for e, ebar in ts.gog.graph.pairs:
            if ts.exponents[ebar] != -ts.exponents[e]:
                problems.append(Problem("twist/exponent-antisymmetry",
                                        f"edge pair ({e}, {ebar})",
                                        "exponent antisymmetry violated"))
        if all(ts.exponents[e] == 0 for e in edges):
            warnings.append(Problem("twist/zero", "exponents",
                                    "all exponents are zero; the twist is the identity"))
    if not ts.efficient:
        warnings.append(Problem("twist/efficiency", "efficient",
                                "splitting not asserted efficient; verdicts are unreliable"))
    return report.merged(ValidationReport(tuple(problems), tuple(warnings)))


def twist_arrow(ts: TwistSpec, a: Arrow) -> Arrow:
    """Image of an arrow under the twist, Britton-reduced."""
    steps = []
    for e, g in a.steps:
        k = ts.exponents[e]
        steps.append((e, (ts.gog.inj[e] ** k) * g))
    return arrow_reduce(ts.gog, Arrow(a.base, a.head, tuple(steps)))


def twist_automorphism(ts: TwistSpec) -> FreeAutomorphism:
    """Induced automorphism of the ambient free group.

    Basis images come from twisting the lifts and collapsing; inverse
    images from the twist with negated exponents, which is the inverse
    twist.  The FreeAutomorphism constructor verifies the pair.
    """
    neg = scale_exponents(ts, -1)
    images = []
    inverse_images = []
    for lift in ts.marking.lifts:
        images.append(collapse(ts.gog, ts.marking, twist_arrow(ts, lift)))
        inverse_images.append(collapse(ts.gog, ts.marking, twist_arrow(neg, lift)))
    return FreeAutomorphism(ts.marking.rank, images, inverse_images)


def scale_exponents(ts: TwistSpec, m: int) -> TwistSpec:
    scaled = {e: m * k for e, k in ts.exponents.items()}
    return replace(ts, exponents=scaled)
