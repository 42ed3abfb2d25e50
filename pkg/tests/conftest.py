"""Shared fixtures: bundled corpus files plus programmatic splittings."""

from pathlib import Path

import pytest

from kolchin import (Graph, GraphOfGroups, Marking, TwistSpec, parse_arrow,
                     parse_twist_pair, parse_word)

ROOT = Path(__file__).resolve().parents[1]
CORPUS = ROOT / "corpus"

# one line per acceptance criterion, emitted after the test summary
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def W(text, basis=("a", "b")):
    return parse_word(text, basis)


def block_a(exponent=1):
    """One-loop splitting of F_2 whose twist is a |-> a, b |-> b a^exp."""
    graph = Graph.build(("v",), (("e", "E", "v", "v"),))
    local = ("x", "y")
    gog = GraphOfGroups(graph, {"v": local},
                        {"e": parse_word("x", local), "E": parse_word("y", local)})
    marking = Marking("v", ("a", "b"),
                      {"v": (W("a"), W("b a B"))},
                      {"e": W("b"), "E": W("B")},
                      (parse_arrow("x", gog, "v"),
                       parse_arrow("eps . e . eps", gog, "v")))
    return TwistSpec(gog, marking, {"e": exponent, "E": -exponent}, name="A")


def block_b(exponent=1):
    """Mirror splitting whose twist is a |-> a b^exp, b |-> b."""
    graph = Graph.build(("w",), (("f", "F", "w", "w"),))
    local = ("x", "y")
    gog = GraphOfGroups(graph, {"w": local},
                        {"f": parse_word("x", local), "F": parse_word("y", local)})
    marking = Marking("w", ("a", "b"),
                      {"w": (W("b"), W("a b A"))},
                      {"f": W("a"), "F": W("A")},
                      (parse_arrow("eps . f . eps", gog, "w"),
                       parse_arrow("x", gog, "w")))
    return TwistSpec(gog, marking, {"f": exponent, "F": -exponent}, name="B")


@pytest.fixture(scope="session")
def hnn_pair():
    return parse_twist_pair(CORPUS / "hnn_pair.json")


@pytest.fixture(scope="session")
def same_splitting_pair():
    return parse_twist_pair(CORPUS / "same_splitting.json")


@pytest.fixture(scope="session")
def one_way_pair():
    return parse_twist_pair(CORPUS / "one_way_pair.json")


@pytest.fixture
def spec_a():
    return block_a()


@pytest.fixture
def spec_b():
    return block_b()
