"""Canonical forms and isomorphism for level-1 networks.

The canonical form is a serialized text: each biconnected cycle is encoded
with both path orientations tried, each tree vertex with both child orders,
taking the lexicographically smallest rendering. Reticulations render as a
defining occurrence ``(...)#Hk`` on the first-traversed path and a bare
``#Hk`` on the other, with tag numbers assigned in first-visit order.

Two networks are strongly isomorphic iff their canonical texts are equal;
weak isomorphism is decided by a structural matcher that requires the same
shape and a nonempty label intersection on every matched leaf pair.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .decomposition import (
    BiconnectedComponent,
    ComponentPath,
    bottom_child,
    component_paths,
    decompose,
)
from .model import InvalidNetworkError, Network


class ForestIndex:
    """Component-forest view of a level-1 network.

    Caches the decomposition, the two component paths of every cycle, and the
    child component roots of every subnetwork root.
    """

    def __init__(self, n: Network):
        self.n = n
        self.components, self.bridges = decompose(n)
        self.comp_of: dict[int, BiconnectedComponent] = {}
        for b in self.components:
            for v in b.vertices:
                self.comp_of[v] = b
        self.paths: dict[int, tuple[ComponentPath, ComponentPath]] = {}
        self.bottom_child: dict[int, int] = {}
        for b in self.components:
            if not b.trivial:
                self.paths[b.root] = component_paths(n, b)
                self.bottom_child[b.root] = bottom_child(n, b)

    def child_roots(self, v: int) -> tuple[int, ...]:
        """Roots of the subnetworks hanging below the subnetwork rooted at v."""
        comp = self.comp_of[v]
        if comp.trivial:
            return self.n.children(v) if not self.n.is_leaf(v) else ()
        pl, pr = self.paths[v]
        return pl.pendants + pr.pendants + (self.bottom_child[v],)


@dataclass(frozen=True)
class _Node:
    """One canonicalized subnetwork: its text key, children in textual order,
    the vertices it covers in visit order, and its reticulation tag if any."""

    key: str
    children: tuple["_Node", ...] = ()
    visits: tuple[int, ...] = ()
    tag: tuple[str, int] | None = None  # ("def"|"ref", bottom vertex id)


def _group(v: int, a: _Node, b: _Node) -> _Node:
    first, second = (a, b) if a.key <= b.key else (b, a)
    return _Node(
        key=f"({first.key},{second.key})",
        children=(first, second),
        visits=(v,) + first.visits + second.visits,
    )


def _build(n: Network, shape_only: bool = False) -> _Node:
    forest = ForestIndex(n)

    def frag(v: int) -> _Node:
        if n.is_leaf(v):
            text = "*" if shape_only else "|".join(sorted(n.labels[v]))
            return _Node(key=text, visits=(v,))
        comp = forest.comp_of[v]
        if comp.trivial:
            a, b = n.children(v)
            return _group(v, frag(a), frag(b))

        pl, pr = forest.paths[v]
        inner = frag(forest.bottom_child[v])
        ikey = inner.key if inner.key.startswith("(") else f"({inner.key})"

        def chain(path: ComponentPath, terminal: _Node) -> _Node:
            node = terminal
            for pv, pend in zip(reversed(path.vertices), reversed(path.pendants)):
                node = _group(pv, frag(pend), node)
            return node

        options = []
        for first_path, second_path in ((pl, pr), (pr, pl)):
            def_node = _Node(
                key=ikey + "#H?",
                children=(inner,),
                visits=(comp.bottom,) + inner.visits,
                tag=("def", comp.bottom),
            )
            ref_node = _Node(key="#H?", tag=("ref", comp.bottom))
            cfirst = chain(first_path, def_node)
            csecond = chain(second_path, ref_node)
            options.append(
                _Node(
                    key=f"({cfirst.key},{csecond.key})",
                    children=(cfirst, csecond),
                    visits=(v,) + cfirst.visits + csecond.visits,
                )
            )
        return min(options, key=lambda o: o.key)

    root = n.root
    if root is None:
        raise InvalidNetworkError("network has no unique root")
    if n.out_degree(root) == 1:
        leaf_node = frag(n.children(root)[0])
        return _Node(
            key=f"({leaf_node.key})",
            children=(leaf_node,),
            visits=(root,) + leaf_node.visits,
        )
    return frag(root)


def _collect_tags(node: _Node, out: list[tuple[str, int]]) -> None:
    # A def node's placeholder follows its inner text, so children first.
    for c in node.children:
        _collect_tags(c, out)
    if node.tag is not None:
        out.append(node.tag)


def _render(node: _Node) -> str:
    """Replace #H? placeholders with tag numbers in first-visit order."""
    tags: list[tuple[str, int]] = []
    _collect_tags(node, tags)
    numbers: dict[int, int] = {}
    for _, bottom in tags:
        if bottom not in numbers:
            numbers[bottom] = len(numbers) + 1
    parts = node.key.split("#H?")
    assert len(parts) == len(tags) + 1
    out = [parts[0]]
    for (_, bottom), part in zip(tags, parts[1:]):
        out.append(f"#H{numbers[bottom]}")
        out.append(part)
    return "".join(out)


def canonical_text(n: Network) -> str:
    """Canonical serialized form of n, ending in ';'."""
    return _render(_build(n)) + ";"


def shape_text(n: Network) -> str:
    """Canonical form with leaf labels blanked; equal shape texts are a
    necessary condition for weak isomorphism."""
    return _render(_build(n, shape_only=True)) + ";"


@dataclass
class IsomorphismWitness:
    """Vertex bijection between two networks."""

    mapping: dict[int, int] = field(default_factory=dict)

    def preserves_edges(self, a: Network, b: Network) -> bool:
        if len(self.mapping) != a.num_vertices or a.num_vertices != b.num_vertices:
            return False
        mapped = {(self.mapping[u], self.mapping[v]) for u, v in a.edges}
        return mapped == set(b.edges)


def strongly_isomorphic(a: Network, b: Network) -> IsomorphismWitness | None:
    """Witness of an edge-preserving bijection with equal leaf label sets."""
    na, nb = _build(a), _build(b)
    ra = _render(na)
    if ra != _render(nb):
        return None
    assert len(na.visits) == len(nb.visits)
    return IsomorphismWitness(dict(zip(na.visits, nb.visits)))


def weakly_isomorphic(a: Network, b: Network) -> IsomorphismWitness | None:
    """Witness of an edge-preserving bijection with intersecting leaf labels."""
    if a.root is None or b.root is None:
        raise InvalidNetworkError("weak isomorphism needs rooted networks")
    if a.out_degree(a.root) != b.out_degree(b.root):
        return None
    fa, fb = ForestIndex(a), ForestIndex(b)
    if a.out_degree(a.root) == 1:
        la, lb = a.children(a.root)[0], b.children(b.root)[0]
        m = _weak_match(fa, la, fb, lb)
        if m is None:
            return None
        return IsomorphismWitness({a.root: b.root, **m})
    m = _weak_match(fa, a.root, fb, b.root)
    return None if m is None else IsomorphismWitness(m)


def _weak_match(fa: ForestIndex, va: int, fb: ForestIndex, vb: int) -> dict[int, int] | None:
    a, b = fa.n, fb.n
    if a.is_leaf(va) or b.is_leaf(vb):
        if a.is_leaf(va) and b.is_leaf(vb) and (a.labels[va] & b.labels[vb]):
            return {va: vb}
        return None
    ca, cb = fa.comp_of[va], fb.comp_of[vb]
    if ca.trivial != cb.trivial:
        return None
    if ca.trivial:
        a1, a2 = a.children(va)
        for b1, b2 in ((b.children(vb)), (b.children(vb)[::-1])):
            m1 = _weak_match(fa, a1, fb, b1)
            if m1 is None:
                continue
            m2 = _weak_match(fa, a2, fb, b2)
            if m2 is None:
                continue
            return {va: vb, **m1, **m2}
        return None

    pla, pra = fa.paths[va]
    for plb, prb in ((fb.paths[vb]), (fb.paths[vb][::-1])):
        if len(pla) != len(plb) or len(pra) != len(prb):
            continue
        mapping = {va: vb, ca.bottom: cb.bottom}
        ok = True
        for path_a, path_b in ((pla, plb), (pra, prb)):
            for pv_a, pd_a, pv_b, pd_b in zip(
                path_a.vertices, path_a.pendants, path_b.vertices, path_b.pendants
            ):
                sub = _weak_match(fa, pd_a, fb, pd_b)
                if sub is None:
                    ok = False
                    break
                mapping[pv_a] = pv_b
                mapping.update(sub)
            if not ok:
                break
        if not ok:
            continue
        sub = _weak_match(fa, fa.bottom_child[va], fb, fb.bottom_child[vb])
        if sub is None:
            continue
        mapping.update(sub)
        return mapping
    return None
