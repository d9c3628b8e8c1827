"""Biconnected-component decomposition of the underlying undirected graph.

Components here are the 2-edge-connected pieces left after removing all
bridges, so they partition the vertex set; a trivial component is a single
vertex. In a level-1 network every non-trivial component is one cycle: a
component root with two directed paths down to a bottom reticulation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import LevelError, Network


@dataclass(frozen=True)
class BiconnectedComponent:
    vertices: frozenset[int]
    root: int        # unique vertex with no in-neighbor inside the component
    bottom: int      # unique vertex with no out-neighbor inside the component
    trivial: bool


@dataclass(frozen=True)
class ComponentPath:
    """One of the two root-to-bottom paths, excluding both endpoints.

    ``pendants[i]`` is the off-path child of ``vertices[i]``; the edge to it
    is a bridge.
    """

    vertices: tuple[int, ...]
    pendants: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.vertices)


def find_bridges(n: Network) -> frozenset[tuple[int, int]]:
    """Bridges of the underlying undirected graph, as directed edges of n.

    Iterative lowpoint DFS; an undirected edge is a bridge iff the lowpoint
    of the DFS child never climbs above the parent.
    """
    adj: dict[int, list[int]] = {v: [] for v in n.vertices}
    for u, v in n.edges:
        adj[u].append(v)
        adj[v].append(u)
    edge_set = set(n.edges)

    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    bridges: set[tuple[int, int]] = set()
    timer = 0
    for start in n.vertices:
        if start in disc:
            continue
        disc[start] = low[start] = timer
        timer += 1
        parent: dict[int, int | None] = {start: None}
        skipped = {start: False}
        iters = {start: iter(adj[start])}
        path = [start]
        while path:
            v = path[-1]
            descended = False
            for w in iters[v]:
                if w == parent[v] and not skipped[v]:
                    # Skip one occurrence of the tree edge back to the parent.
                    skipped[v] = True
                    continue
                if w in disc:
                    low[v] = min(low[v], disc[w])
                else:
                    disc[w] = low[w] = timer
                    timer += 1
                    parent[w] = v
                    skipped[w] = False
                    iters[w] = iter(adj[w])
                    path.append(w)
                    descended = True
                    break
            if not descended:
                path.pop()
                if path:
                    p = path[-1]
                    low[p] = min(low[p], low[v])
                    if low[v] > disc[p]:
                        bridges.add((p, v) if (p, v) in edge_set else (v, p))
    return frozenset(bridges)


def decompose(
    n: Network,
) -> tuple[tuple[BiconnectedComponent, ...], frozenset[tuple[int, int]]]:
    """Partition vertices into components; bridges are the inter-component edges."""
    bridges = find_bridges(n)
    adj: dict[int, list[int]] = {v: [] for v in n.vertices}
    for u, v in n.edges:
        if (u, v) not in bridges:
            adj[u].append(v)
            adj[v].append(u)

    comp_of: dict[int, int] = {}
    groups: list[list[int]] = []
    for start in n.vertices:
        if start in comp_of:
            continue
        cid = len(groups)
        members = [start]
        comp_of[start] = cid
        stack = [start]
        while stack:
            for w in adj[stack.pop()]:
                if w not in comp_of:
                    comp_of[w] = cid
                    members.append(w)
                    stack.append(w)
        groups.append(sorted(members))

    comps = []
    for members in groups:
        member_set = set(members)
        tops = [v for v in members if not any(p in member_set for p in n.parents(v))]
        bottoms = [v for v in members if not any(c in member_set for c in n.children(v))]
        # Unique for level-1 components; min keeps the value deterministic
        # on degenerate inputs (level() never looks at these fields).
        comps.append(
            BiconnectedComponent(
                vertices=frozenset(members),
                root=min(tops) if tops else members[0],
                bottom=min(bottoms) if bottoms else members[0],
                trivial=len(members) == 1,
            )
        )
    comps.sort(key=lambda b: min(b.vertices))
    return tuple(comps), bridges


def level(n: Network) -> int:
    """Maximum reticulation count over the biconnected components."""
    comps, _ = decompose(n)
    best = 0
    for b in comps:
        count = sum(1 for v in b.vertices if n.is_reticulation(v))
        best = max(best, count)
    return best


def component_paths(
    n: Network, b: BiconnectedComponent
) -> tuple[ComponentPath, ComponentPath]:
    """The two paths from the component root's children down to its bottom.

    Requires a level-1 cycle component; either path may be empty when the
    root has a direct edge to the bottom.
    """
    if b.trivial:
        raise LevelError("trivial component has no component paths")
    starts = [c for c in n.children(b.root) if c in b.vertices]
    if len(starts) != 2:
        raise LevelError(
            f"component rooted at {b.root} is not a level-1 cycle"
        )

    paths = []
    for start in starts:
        verts: list[int] = []
        pends: list[int] = []
        cur = start
        while cur != b.bottom:
            inside = [c for c in n.children(cur) if c in b.vertices]
            outside = [c for c in n.children(cur) if c not in b.vertices]
            if len(inside) != 1 or len(outside) != 1:
                raise LevelError(
                    f"component rooted at {b.root} is not a level-1 cycle"
                )
            verts.append(cur)
            pends.append(outside[0])
            cur = inside[0]
        paths.append(ComponentPath(tuple(verts), tuple(pends)))
    return paths[0], paths[1]


def bottom_child(n: Network, b: BiconnectedComponent) -> int:
    """The unique child of a non-trivial component's bottom reticulation."""
    if b.trivial:
        raise LevelError("trivial component has no bottom reticulation")
    (child,) = n.children(b.bottom)
    return child
