"""Cherry detection, reductions with label subsumption, and cherry sequences.

Leaves are referenced by a representative taxon (any member of the leaf's
label set) so that references stay valid while reductions subsume labels. A
pair whose two taxa resolve to the same leaf is not a cherry and reduces to
a no-op, like any other non-cherry pair.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from .model import MacrsError, Network


class CherryKind(Enum):
    SIMPLE = "simple"
    RETICULATED = "reticulated"
    NOT_A_CHERRY = "none"


@dataclass(frozen=True)
class Cherry:
    x: str  # representative taxon of the leaf that the reduction removes
    y: str
    kind: CherryKind


class SequenceFormatError(MacrsError):
    pass


def _classify_ids(n: Network, lx: int, ly: int) -> CherryKind:
    px, py = n.parent(lx), n.parent(ly)
    if px == py:
        return CherryKind.SIMPLE
    if n.is_reticulation(px) and (py, px) in n.edges:
        return CherryKind.RETICULATED
    return CherryKind.NOT_A_CHERRY


def classify(n: Network, x: str, y: str) -> CherryKind:
    """Kind of the ordered pair (x, y); x is the leaf under the reticulation
    in a reticulated cherry."""
    lx, ly = n.leaf_with_taxon(x), n.leaf_with_taxon(y)
    if lx == ly:
        return CherryKind.NOT_A_CHERRY
    return _classify_ids(n, lx, ly)


def _suppress(
    edges: list[tuple[int, int]], labels: dict[int, set[str]]
) -> tuple[list[tuple[int, int]], dict[int, set[str]]]:
    """Remove in-1/out-1 vertices, rewiring parent to child, until none remain."""
    while True:
        parents: dict[int, list[int]] = {}
        children: dict[int, list[int]] = {}
        for u, v in edges:
            children.setdefault(u, []).append(v)
            parents.setdefault(v, []).append(u)
        victims = sorted(
            v
            for v in children
            if len(children[v]) == 1 and len(parents.get(v, ())) == 1
        )
        if not victims:
            return edges, labels
        v = victims[0]
        assert v not in labels
        p, c = parents[v][0], children[v][0]
        edges = [e for e in edges if e not in ((p, v), (v, c))]
        edges.append((p, c))


def reduce_cherry(n: Network, x: str, y: str) -> Network:
    """Apply the cherry reduction (x, y); non-cherries leave n unchanged.

    Simple: remove leaf x and its edge, subsume its labels into y, suppress.
    Reticulated: remove the reticulation edge (p(y), p(x)) and suppress.
    Surviving vertices keep their ids.
    """
    lx, ly = n.leaf_with_taxon(x), n.leaf_with_taxon(y)
    if lx == ly:
        return n
    kind = _classify_ids(n, lx, ly)
    if kind is CherryKind.NOT_A_CHERRY:
        return n

    edges = list(n.edges)
    labels = {v: set(ls) for v, ls in n.labels.items()}
    if kind is CherryKind.SIMPLE:
        edges.remove((n.parent(lx), lx))
        labels[ly] |= labels.pop(lx)
    else:
        edges.remove((n.parent(ly), n.parent(lx)))
    edges, labels = _suppress(edges, labels)
    return Network(edges, labels)


def apply_sequence(n: Network, seq: Iterable[tuple[str, str]]) -> Network:
    """Left fold of reduce_cherry over the pairs of seq."""
    for x, y in seq:
        n = reduce_cherry(n, x, y)
    return n


def representative(n: Network, leaf: int) -> str:
    return min(n.labels[leaf])


def find_cherries(n: Network) -> list[Cherry]:
    """Every ordered pair that is a cherry, sorted by representative taxa."""
    out: list[Cherry] = []
    for v in n.vertices:
        kids = n.children(v)
        if len(kids) == 2:
            leaf_kids = [c for c in kids if n.is_leaf(c)]
            if len(leaf_kids) == 2:
                x, y = leaf_kids
                rx, ry = representative(n, x), representative(n, y)
                out.append(Cherry(rx, ry, CherryKind.SIMPLE))
                out.append(Cherry(ry, rx, CherryKind.SIMPLE))
    for r in n.reticulations:
        (x,) = n.children(r)
        if not n.is_leaf(x):
            continue
        for q in n.parents(r):
            for y in n.children(q):
                if y != r and n.is_leaf(y):
                    out.append(
                        Cherry(representative(n, x), representative(n, y),
                               CherryKind.RETICULATED)
                    )
    out.sort(key=lambda c: (c.x, c.y))
    return out


def is_orchard(n: Network) -> list[tuple[str, str]] | None:
    """A complete cherry sequence reducing n to a singleton, or None.

    Greedily reduces the first cherry in canonical order; by the reordering
    property this reaches a singleton whenever any complete sequence exists.
    """
    seq: list[tuple[str, str]] = []
    cur = n
    while not cur.is_singleton:
        cherries = find_cherries(cur)
        if not cherries:
            return None
        first = cherries[0]
        cur = reduce_cherry(cur, first.x, first.y)
        seq.append((first.x, first.y))
    return seq


def parse_sequence(text: str) -> list[tuple[str, str]]:
    """Cherry-sequence file format: one 'taxon,taxon' pair per line."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        parts = [p.strip() for p in line.split(",")]
        if len(parts) != 2 or not all(parts):
            raise SequenceFormatError(
                f"line {lineno}: expected 'taxon,taxon', got {raw!r}"
            )
        out.append((parts[0], parts[1]))
    return out


def format_sequence(seq: Sequence[tuple[str, str]]) -> str:
    return "".join(f"{x},{y}\n" for x, y in seq)
