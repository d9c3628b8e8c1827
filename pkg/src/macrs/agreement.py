"""Cubic dynamic program for agreement under simple reductions only.

The table is indexed by pairs of component roots, one per network, in
postorder. An entry holds the leaf count of the best common network reachable
from the two rooted subnetworks by simple reductions (which can never remove
a reticulation or any of its ancestors), or -inf when none exists:

* leaf against trivial subnetwork: 1 when they share a taxon and no
  reticulation survives below either, else -inf;
* two trivial tree vertices: either glue sub-agreements of both child pairs
  under a fresh root (straight or crossed pairing), or, when exactly one
  child pair shares taxa and nothing reticulated survives, collapse both
  sides to one shared leaf;
* trivial against non-trivial component: -inf, the surviving cycles must map
  onto each other exactly;
* two cycles: path lengths must match (straight or crossed), pendants pair
  positionally, and the bottoms delegate to their unique children.

Matched leaves of the rebuilt agreement network carry the intersection of
the two sides' label sets.
"""

from __future__ import annotations

from dataclasses import dataclass

from .canonical import ForestIndex
from .cherries import is_orchard
from .decomposition import level
from .model import (
    LevelError,
    Network,
    NotOrchardError,
    require_valid,
    reticulations_below,
    taxa_below,
)

NEG_INF = float("-inf")


class _Side:
    """Per-network precomputation: forest view, taxa/reticulations below
    every vertex, and a postorder over component roots."""

    def __init__(self, n: Network):
        self.n = n
        self.forest = ForestIndex(n)
        self.taxa = {v: taxa_below(n, v) for v in n.vertices}
        self.retics = {v: reticulations_below(n, v) for v in n.vertices}
        root = n.root
        # A singleton's degenerate root delegates to its leaf.
        self.entry = n.children(root)[0] if n.out_degree(root) == 1 else root
        order: list[int] = []
        stack: list[tuple[int, bool]] = [(self.entry, False)]
        while stack:
            v, done = stack.pop()
            if done:
                order.append(v)
                continue
            stack.append((v, True))
            for c in reversed(self.forest.child_roots(v)):
                stack.append((c, False))
        self.postorder = order

    def resolve(self, v: int) -> int:
        """Delegate a component bottom (reticulation) to its unique child."""
        while self.n.is_reticulation(v):
            (v,) = self.n.children(v)
        return v


@dataclass
class DPTable:
    values: dict[tuple[int, int], float]
    choices: dict[tuple[int, int], tuple | None]
    root_pair: tuple[int, int]

    def value(self, u: int, v: int) -> float:
        return self.values.get((u, v), NEG_INF)


def _entry(
    s1: _Side, s2: _Side, u: int, v: int, values: dict[tuple[int, int], float]
) -> tuple[float, tuple | None]:
    n1, n2 = s1.n, s2.n
    cu, cv = s1.forest.comp_of[u], s2.forest.comp_of[v]
    if cu.trivial != cv.trivial:
        return NEG_INF, None

    if cu.trivial:
        if n1.is_leaf(u) or n2.is_leaf(v):
            shared = s1.taxa[u] & s2.taxa[v]
            if shared and not (s1.retics[u] | s2.retics[v]):
                return 1, ("leaf", frozenset(shared))
            return NEG_INF, None
        u1, u2 = n1.children(u)
        v1, v2 = n2.children(v)
        best: float = NEG_INF
        choice: tuple | None = None
        for pair_a, pair_b in (((u1, v1), (u2, v2)), ((u1, v2), (u2, v1))):
            xa = s1.taxa[pair_a[0]] & s2.taxa[pair_a[1]]
            xb = s1.taxa[pair_b[0]] & s2.taxa[pair_b[1]]
            if xa and xb:
                val = values[pair_a] + values[pair_b]
                cand: tuple | None = ("pair", (pair_a, pair_b))
            elif (xa or xb) and not (s1.retics[u] | s2.retics[v]):
                val = 1
                cand = ("leaf", frozenset(s1.taxa[u] & s2.taxa[v]))
            else:
                val, cand = NEG_INF, None
            if val > best:
                best, choice = val, cand
        return best, choice

    # Two non-trivial components.
    pl1, pr1 = s1.forest.paths[u]
    pl2, pr2 = s2.forest.paths[v]
    b1 = s1.resolve(cu.bottom)
    b2 = s2.resolve(cv.bottom)
    best = NEG_INF
    choice = None
    for q1, q2 in ((pl2, pr2), (pr2, pl2)):
        if len(pl1) != len(q1) or len(pr1) != len(q2):
            continue
        left_pairs = tuple(zip(pl1.pendants, q1.pendants))
        right_pairs = tuple(zip(pr1.pendants, q2.pendants))
        total = values[(b1, b2)]
        for pair in left_pairs + right_pairs:
            total += values[pair]
        if total > best:
            best = total
            choice = ("cycle", left_pairs, right_pairs, (b1, b2))
    return best, choice


def build_table(n1: Network, n2: Network) -> DPTable:
    """Fill the whole table in postorder over component-root pairs."""
    s1, s2 = _Side(n1), _Side(n2)
    values: dict[tuple[int, int], float] = {}
    choices: dict[tuple[int, int], tuple | None] = {}
    for u in s1.postorder:
        for v in s2.postorder:
            values[(u, v)], choices[(u, v)] = _entry(s1, s2, u, v, values)
    return DPTable(values, choices, (s1.entry, s2.entry))


class _Builder:
    def __init__(self) -> None:
        self.edges: list[tuple[int, int]] = []
        self.labels: dict[int, set[str]] = {}
        self.next_id = 0

    def new(self) -> int:
        self.next_id += 1
        return self.next_id


def _rebuild(choices: dict, key: tuple[int, int], bld: _Builder) -> int:
    choice = choices[key]
    assert choice is not None
    tag = choice[0]
    if tag == "leaf":
        leaf = bld.new()
        bld.labels[leaf] = set(choice[1])
        return leaf
    if tag == "pair":
        node = bld.new()
        for sub in choice[1]:
            bld.edges.append((node, _rebuild(choices, sub, bld)))
        return node
    _, left_pairs, right_pairs, bottom_pair = choice
    rho = bld.new()
    bottom = bld.new()
    for pairs in (left_pairs, right_pairs):
        prev = rho
        for pair in pairs:
            pv = bld.new()
            bld.edges.append((prev, pv))
            bld.edges.append((pv, _rebuild(choices, pair, bld)))
            prev = pv
        bld.edges.append((prev, bottom))
    bld.edges.append((bottom, _rebuild(choices, bottom_pair, bld)))
    return rho


def check_inputs(n1: Network, n2: Network) -> None:
    """Raise unless both inputs are valid level-1 orchard networks."""
    for name, n in (("first input", n1), ("second input", n2)):
        require_valid(n, name)
        lv = level(n)
        if lv > 1:
            raise LevelError(f"{name} has level {lv}, only level-1 is supported")
        if is_orchard(n) is None:
            raise NotOrchardError(f"{name} is not an orchard network")


def macrs_simple(
    n1: Network,
    n2: Network,
    *,
    check_reticulation_counts: bool = True,
    validate_inputs: bool = True,
) -> tuple[Network, int] | None:
    """Best common subnetwork under simple reductions, with its leaf count.

    Returns None when no agreement exists. Simple reductions keep every
    reticulation, so unequal reticulation counts admit nothing; the flag only
    skips the table fill for that case, the table agrees when disabled.
    """
    if validate_inputs:
        check_inputs(n1, n2)
    if check_reticulation_counts and len(n1.reticulations) != len(n2.reticulations):
        return None

    dp = build_table(n1, n2)
    top = dp.values[dp.root_pair]
    if top == NEG_INF:
        return None

    bld = _Builder()
    frag_root = _rebuild(dp.choices, dp.root_pair, bld)
    if frag_root in bld.labels:
        root = bld.new()
        bld.edges.append((root, frag_root))
    result = Network(bld.edges, bld.labels)
    require_valid(result, "agreement network")
    assert len(result.reticulations) == len(n1.reticulations)
    assert len(result.leaves) == int(top)
    return result, int(top)
