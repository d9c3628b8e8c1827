"""Enumeration of reticulation-trimmed subnetworks.

A candidate edge set F picks at most one incoming edge per reticulation
(threefold choice, so at most 3^|R| candidates) and must be disjoint: no two
chosen edges share an endpoint. The maker removes each chosen edge bottom-up,
replacing the subnetworks hanging at its endpoints by multi-labeled leaves,
and returns None when no cherry sequence can remove exactly that edge set.
"""

from __future__ import annotations

from itertools import product
from typing import Iterator

from .model import (
    MacrsError,
    Network,
    reach,
    reticulations_below,
    taxa_below,
    validate,
)
from .cherries import _suppress

Edge = tuple[int, int]
EdgeSet = tuple[Edge, ...]


def edge_fingerprint(n: Network, e: Edge) -> tuple[str, str]:
    """Stable name for an edge: sorted taxa below its tail and below its head.

    Vertex ids do not survive parse/serialize round trips; taxa sets do.
    """
    u, v = e
    return ("|".join(sorted(taxa_below(n, u))), "|".join(sorted(taxa_below(n, v))))


def set_fingerprint(n: Network, f: EdgeSet) -> tuple[tuple[str, str], ...]:
    return tuple(sorted(edge_fingerprint(n, e) for e in f))


def candidate_sets(n: Network) -> Iterator[EdgeSet]:
    """All disjoint subsets of the reticulation edges, smallest fingerprint
    first; includes the empty set."""
    per_reticulation = []
    for r in sorted(n.reticulations):
        ins = sorted(
            ((u, r) for u, head in n.edges if head == r),
            key=lambda e: edge_fingerprint(n, e),
        )
        per_reticulation.append([None, *ins])

    combos: list[tuple[tuple, EdgeSet]] = []
    for combo in product(*per_reticulation):
        chosen = tuple(e for e in combo if e is not None)
        endpoints = [x for e in chosen for x in e]
        if len(set(endpoints)) != len(endpoints):
            continue  # shares an endpoint: not disjoint
        ordered = tuple(sorted(chosen, key=lambda e: edge_fingerprint(n, e)))
        combos.append((set_fingerprint(n, ordered), ordered))
    assert len(combos) <= 3 ** len(n.reticulations)
    combos.sort(key=lambda item: item[0])
    for _, chosen in combos:
        yield chosen


def topological_sort_f(n: Network, f: EdgeSet) -> list[Edge]:
    """Order f lowest-first: if a path runs from an endpoint of e1 to an
    endpoint of e2, then e1 comes after e2."""
    below: dict[Edge, frozenset[int]] = {e: reach(n, e[0]) | reach(n, e[1]) for e in f}
    prereq: dict[Edge, set[Edge]] = {e: set() for e in f}
    for e1 in f:
        for e2 in f:
            if e1 != e2 and (e2[0] in below[e1] or e2[1] in below[e1]):
                prereq[e1].add(e2)

    out: list[Edge] = []
    remaining = set(f)
    while remaining:
        ready = sorted(
            (e for e in remaining if not (prereq[e] & remaining)),
            key=lambda e: edge_fingerprint(n, e),
        )
        if not ready:
            raise MacrsError("reticulation edges have no topological sort")
        out.append(ready[0])
        remaining.remove(ready[0])
    return out


def rt_subnet_maker(n: Network, f: EdgeSet) -> Network | None:
    """The unique reticulation-trimmed subnetwork of n w.r.t. f, or None.

    Processes f bottom-up. An edge (u, v) is removable only when no other
    reticulation survives below u or v, and v must not stay reachable from u
    once the edge is gone (otherwise u tops v's own cycle and no reticulated
    cherry on (u, v) can ever form). The subnetworks hanging at u and at v
    collapse to fresh leaves carrying all taxa below them; a child that is
    already a leaf is kept as-is.
    """
    endpoints = [x for e in f for x in e]
    if len(set(endpoints)) != len(endpoints):
        raise MacrsError("edge set is not disjoint")
    for e in f:
        if e not in n.edges or not n.is_reticulation(e[1]):
            raise MacrsError(f"{e} is not a reticulation edge of the network")

    state = n
    for u, v in topological_sort_f(n, f):
        guard = (reticulations_below(state, u) | reticulations_below(state, v)) - {v}
        if guard:
            return None
        edges = [e for e in state.edges if e != (u, v)]
        labels = {w: set(ls) for w, ls in state.labels.items()}
        cut = Network(edges, labels)
        if v in reach(cut, u):
            return None

        next_id = max(cut.vertices) + 1
        for vert in (u, v):
            (child,) = cut.children(vert)
            (parent,) = cut.parents(vert)
            if cut.is_leaf(child):
                # Keep the existing leaf; vert is simply suppressed.
                edges = [e for e in edges if e not in ((parent, vert), (vert, child))]
                edges.append((parent, child))
            else:
                fresh = next_id
                next_id += 1
                labels[fresh] = set(taxa_below(cut, child))
                subtree = reach(cut, vert)
                edges = [
                    e for e in edges if e[0] not in subtree and e[1] not in subtree
                ]
                edges.append((parent, fresh))
                for w in subtree:
                    labels.pop(w, None)
        state = Network(edges, labels)

    final_edges, final_labels = _suppress(list(state.edges), {v: set(ls) for v, ls in state.labels.items()})
    result = Network(final_edges, final_labels)
    report = validate(result)
    if not report.ok:
        raise MacrsError(
            "reticulation trimming produced an invalid network: "
            + "; ".join(report.violations)
        )
    return result


def reticulation_trimmed_subnetworks(n: Network) -> Iterator[tuple[EdgeSet, Network]]:
    """Stream (F, subnetwork) for every candidate set the maker accepts."""
    count = 0
    for f in candidate_sets(n):
        count += 1
        result = rt_subnet_maker(n, f)
        if result is not None:
            yield f, result
    assert count <= 3 ** len(n.reticulations)
