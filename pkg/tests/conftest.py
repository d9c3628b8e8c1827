"""Shared fixtures: the worked example family N1..N5 and small helpers."""

from __future__ import annotations

import pytest

from macrs import Network, parse

# One level-1 network with two nested reticulations and its reduction chain.
N1_TEXT = "((a,((c,((d,e))#H2),(f,#H2))#H1),(b,#H1));"
N2_TEXT = "((a,((c,(d|e)#H2),(f,#H2))#H1),(b,#H1));"
N3_TEXT = "((a,((c,d|e),f)#H1),(b,#H1));"
N4_TEXT = "((a,c|d|e|f),b);"
N5_TEXT = "((a,c),b);"


@pytest.fixture
def n1() -> Network:
    return parse(N1_TEXT)


@pytest.fixture
def n2() -> Network:
    return parse(N2_TEXT)


@pytest.fixture
def n3() -> Network:
    return parse(N3_TEXT)


@pytest.fixture
def n4() -> Network:
    return parse(N4_TEXT)


@pytest.fixture
def n5() -> Network:
    return parse(N5_TEXT)


@pytest.fixture
def triangle() -> Network:
    """Smallest cycle: root with a direct edge to the reticulation."""
    return Network(
        [(0, 1), (0, 2), (1, 2), (1, 3), (2, 4)],
        {3: {"b"}, 4: {"c"}},
    )


@pytest.fixture
def singleton() -> Network:
    return parse("(x);")
