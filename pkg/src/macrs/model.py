"""Rooted binary phylogenetic networks with multi-labeled leaves.

A network is an immutable value: integer vertex ids, directed edges, and a
taxon label set on each leaf. Constructors accept arbitrary graphs so that
``validate`` can report which invariants a candidate violates.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

RESERVED_CHARS = frozenset("(),;|#")


class MacrsError(Exception):
    """Base class for errors raised by this package."""


class UnknownVertexError(MacrsError):
    pass


class UnknownTaxonError(MacrsError):
    pass


class InvalidNetworkError(MacrsError):
    pass


class LevelError(MacrsError):
    """Raised when an operation requires a level-1 network and gets more."""


class NotOrchardError(MacrsError):
    pass


class InfeasibleParametersError(MacrsError):
    pass


class Network:
    """Immutable directed graph with taxon-labeled sinks.

    Vertices are implicit: every edge endpoint plus every labeled vertex.
    Vertex ids are stable only within one network value; reductions keep the
    ids of surviving vertices unchanged.
    """

    def __init__(
        self,
        edges: Iterable[tuple[int, int]],
        labels: Mapping[int, Iterable[str]],
    ):
        self.edges: tuple[tuple[int, int], ...] = tuple(sorted(edges))
        self.labels: dict[int, frozenset[str]] = {
            v: frozenset(labels[v]) for v in sorted(labels)
        }

    @cached_property
    def _children(self) -> dict[int, tuple[int, ...]]:
        out: dict[int, list[int]] = {v: [] for v in self.vertices}
        for u, v in self.edges:
            out[u].append(v)
        return {v: tuple(sorted(cs)) for v, cs in out.items()}

    @cached_property
    def _parents(self) -> dict[int, tuple[int, ...]]:
        inc: dict[int, list[int]] = {v: [] for v in self.vertices}
        for u, v in self.edges:
            inc[v].append(u)
        return {v: tuple(sorted(ps)) for v, ps in inc.items()}

    @cached_property
    def vertices(self) -> tuple[int, ...]:
        vs = set(self.labels)
        for u, v in self.edges:
            vs.add(u)
            vs.add(v)
        return tuple(sorted(vs))

    @cached_property
    def root(self) -> int | None:
        """The unique in-degree-0 vertex, or None if there is not exactly one."""
        roots = [v for v in self.vertices if not self._parents[v]]
        return roots[0] if len(roots) == 1 else None

    def _require(self, v: int) -> None:
        if v not in self._parents:
            raise UnknownVertexError(f"unknown vertex id {v}")

    def children(self, v: int) -> tuple[int, ...]:
        self._require(v)
        return self._children[v]

    def parents(self, v: int) -> tuple[int, ...]:
        self._require(v)
        return self._parents[v]

    def parent(self, v: int) -> int:
        """The single in-neighbor of v; raises if v has in-degree != 1."""
        ps = self.parents(v)
        if len(ps) != 1:
            raise UnknownVertexError(f"vertex {v} has no unique parent")
        return ps[0]

    def in_degree(self, v: int) -> int:
        return len(self.parents(v))

    def out_degree(self, v: int) -> int:
        return len(self.children(v))

    def is_leaf(self, v: int) -> bool:
        return self.out_degree(v) == 0 and v in self.labels

    def is_reticulation(self, v: int) -> bool:
        return self.in_degree(v) == 2 and self.out_degree(v) == 1

    def label(self, v: int) -> frozenset[str]:
        self._require(v)
        return self.labels.get(v, frozenset())

    @cached_property
    def leaves(self) -> tuple[int, ...]:
        return tuple(v for v in self.vertices if v in self.labels)

    @cached_property
    def reticulations(self) -> tuple[int, ...]:
        return tuple(v for v in self.vertices if self.is_reticulation(v))

    @cached_property
    def reticulation_edges(self) -> tuple[tuple[int, int], ...]:
        rs = set(self.reticulations)
        return tuple(e for e in self.edges if e[1] in rs)

    @cached_property
    def taxa(self) -> frozenset[str]:
        out: set[str] = set()
        for ls in self.labels.values():
            out |= ls
        return frozenset(out)

    @cached_property
    def _taxon_to_leaf(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for v in self.leaves:
            for t in self.labels[v]:
                out[t] = v
        return out

    def leaf_with_taxon(self, taxon: str) -> int:
        """The leaf whose label set contains the given taxon."""
        try:
            return self._taxon_to_leaf[taxon]
        except KeyError:
            raise UnknownTaxonError(f"no leaf is labeled with taxon {taxon!r}") from None

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def is_singleton(self) -> bool:
        """True for the two-vertex root-to-leaf network."""
        return (
            self.num_vertices == 2
            and len(self.edges) == 1
            and self.root is not None
            and self.edges[0][1] in self.labels
        )

    def fresh_id(self) -> int:
        return max(self.vertices, default=0) + 1

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Network):
            return NotImplemented
        return self.edges == other.edges and self.labels == other.labels

    def __hash__(self) -> int:
        return hash((self.edges, tuple(sorted(self.labels.items()))))

    def __repr__(self) -> str:
        return (
            f"Network(vertices={self.num_vertices}, leaves={len(self.leaves)}, "
            f"reticulations={len(self.reticulations)})"
        )


def vertex_count(n: Network) -> int:
    """Size measure 2L + 2R - 1 used for all agreement comparisons.

    Equals the true vertex count for every binary network whose root has
    out-degree 2; the two-vertex singleton is counted as 1 (its degenerate
    root is ignored) so that the identity holds unconditionally.
    """
    return 2 * len(n.leaves) + 2 * len(n.reticulations) - 1


def reach(n: Network, v: int) -> frozenset[int]:
    """All vertices on directed paths from v, including v itself."""
    n._require(v)
    seen = {v}
    stack = [v]
    while stack:
        for c in n._children[stack.pop()]:
            if c not in seen:
                seen.add(c)
                stack.append(c)
    return frozenset(seen)


def above(n: Network, v: int) -> frozenset[int]:
    """All vertices with a directed path to v, including v itself."""
    n._require(v)
    seen = {v}
    stack = [v]
    while stack:
        for p in n._parents[stack.pop()]:
            if p not in seen:
                seen.add(p)
                stack.append(p)
    return frozenset(seen)


def taxa_below(n: Network, v: int) -> frozenset[str]:
    """Union of the label sets of all leaves reachable from v."""
    out: set[str] = set()
    for u in reach(n, v):
        out |= n.labels.get(u, frozenset())
    return frozenset(out)


def reticulations_below(n: Network, v: int) -> frozenset[int]:
    """Reticulation vertices reachable from v (possibly including v)."""
    return frozenset(u for u in reach(n, v) if n.is_reticulation(u))


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def _is_acyclic(n: Network) -> bool:
    indeg = {v: n.in_degree(v) for v in n.vertices}
    queue = [v for v in n.vertices if indeg[v] == 0]
    seen = 0
    while queue:
        v = queue.pop()
        seen += 1
        for c in n._children[v]:
            indeg[c] -= 1
            if indeg[c] == 0:
                queue.append(c)
    return seen == len(n.vertices)


def validate(n: Network) -> ValidationReport:
    """Check every network invariant; an empty report means n is valid.

    Violations are data, not exceptions, so arbitrary candidate graphs can be
    inspected.
    """
    out: list[str] = []

    roots = [v for v in n.vertices if n.in_degree(v) == 0]
    if len(roots) != 1:
        out.append(f"root violation: {len(roots)} vertices of in-degree 0")

    dupes = [e for e, c in Counter(n.edges).items() if c > 1]
    for e in dupes:
        out.append(f"parallel edge violation: edge {e} appears more than once")

    if not _is_acyclic(n):
        out.append("cycle violation: graph is not acyclic")

    singleton_shape = len(n.vertices) == 2 and len(set(n.edges)) == 1
    for v in n.vertices:
        din, dout = n.in_degree(v), n.out_degree(v)
        if v in n.labels:
            if not n.labels[v]:
                out.append(f"empty label violation: leaf {v} has no taxa")
            if din != 1 or dout != 0:
                out.append(
                    f"leaf degree violation: labeled vertex {v} has "
                    f"in-degree {din}, out-degree {dout}"
                )
            continue
        if din == 0:
            if not (dout == 2 or (dout == 1 and singleton_shape)):
                out.append(f"root degree violation: root {v} has out-degree {dout}")
        elif din == 1 and dout == 1:
            out.append(
                f"suppressed-vertex violation: vertex {v} has "
                "in-degree 1 and out-degree 1"
            )
        elif din == 1 and dout == 2:
            pass
        elif din == 2 and dout == 1:
            pass
        elif dout == 0:
            out.append(f"unlabeled leaf violation: sink {v} carries no taxa")
        else:
            out.append(
                f"degree violation: vertex {v} has in-degree {din}, out-degree {dout}"
            )

    taxon_leaves: dict[str, list[int]] = {}
    for v in sorted(n.labels):
        for t in sorted(n.labels[v]):
            taxon_leaves.setdefault(t, []).append(v)
            if not t or any(c.isspace() for c in t) or set(t) & RESERVED_CHARS:
                out.append(f"taxon violation: {t!r} is not a legal taxon name")
    for t, vs in sorted(taxon_leaves.items()):
        if len(vs) > 1:
            out.append(
                f"label disjointness violation: taxon {t!r} labels leaves {vs}"
            )

    # Binary identity |V| = 2L + 2R - 1; the 2-vertex singleton is exempt
    # because its root has out-degree 1.
    if not out and not singleton_shape:
        if n.num_vertices != vertex_count(n):
            out.append(
                f"vertex-count violation: {n.num_vertices} vertices, "
                f"expected {vertex_count(n)}"
            )

    return ValidationReport(tuple(out))


def require_valid(n: Network, what: str = "network") -> None:
    """Raise InvalidNetworkError unless n passes validate()."""
    report = validate(n)
    if not report.ok:
        raise InvalidNetworkError(f"{what} is invalid: " + "; ".join(report.violations))
