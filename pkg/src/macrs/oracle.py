"""Brute-force ground truth and reproducible network generators.

The catalog explores every network reachable by cherry reductions,
deduplicated by canonical text, so the exact maximum agreement subnetwork
can be found by matching catalogs pairwise. Only meant for desk scale;
catalogs explode beyond roughly 8 leaves and 3 reticulations.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass

from .canonical import canonical_text, shape_text, weakly_isomorphic
from .cherries import CherryKind, find_cherries, reduce_cherry
from .decomposition import level
from .model import (
    InfeasibleParametersError,
    MacrsError,
    Network,
    validate,
    vertex_count,
)


class OracleLimitsError(MacrsError):
    pass


@dataclass
class CrsCatalog:
    """All cherry-reduced subnetworks of one network, keyed by canonical text,
    each with one witness cherry sequence that reaches it."""

    entries: dict[str, Network]
    witnesses: dict[str, tuple[tuple[str, str], ...]]

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, key: str) -> bool:
        return key in self.entries


def all_crs(
    n: Network,
    *,
    max_leaves: int = 8,
    max_retics: int = 3,
    simple_only: bool = False,
) -> CrsCatalog:
    """Breadth-first closure of cherry reductions, deduplicated canonically."""
    if len(n.leaves) > max_leaves or len(n.reticulations) > max_retics:
        raise OracleLimitsError(
            f"network has {len(n.leaves)} leaves / {len(n.reticulations)} "
            f"reticulations, beyond the limits ({max_leaves}, {max_retics})"
        )
    start_key = canonical_text(n)
    entries = {start_key: n}
    witnesses: dict[str, tuple[tuple[str, str], ...]] = {start_key: ()}
    queue = deque([(n, start_key)])
    while queue:
        cur, key = queue.popleft()
        for cherry in find_cherries(cur):
            if simple_only and cherry.kind is not CherryKind.SIMPLE:
                continue
            nxt = reduce_cherry(cur, cherry.x, cherry.y)
            nxt_key = canonical_text(nxt)
            if nxt_key not in entries:
                entries[nxt_key] = nxt
                witnesses[nxt_key] = witnesses[key] + ((cherry.x, cherry.y),)
                queue.append((nxt, nxt_key))
    return CrsCatalog(entries, witnesses)


def oracle_macrs(
    n1: Network,
    n2: Network,
    *,
    max_leaves: int = 8,
    max_retics: int = 3,
) -> tuple[int, Network] | None:
    """Exact maximum agreement subnetwork by exhaustive catalog matching.

    Scans same-shape catalog entries largest-first and returns the first
    weakly isomorphic pair, relabeled with the per-leaf label intersections.
    """
    cat1 = all_crs(n1, max_leaves=max_leaves, max_retics=max_retics)
    cat2 = all_crs(n2, max_leaves=max_leaves, max_retics=max_retics)

    by_shape: dict[str, list[str]] = {}
    for key, net in cat2.entries.items():
        by_shape.setdefault(shape_text(net), []).append(key)

    order = sorted(cat1.entries, key=lambda k: (-vertex_count(cat1.entries[k]), k))
    for key1 in order:
        net1 = cat1.entries[key1]
        for key2 in sorted(by_shape.get(shape_text(net1), ())):
            net2 = cat2.entries[key2]
            witness = weakly_isomorphic(net1, net2)
            if witness is None:
                continue
            labels = {
                leaf: net1.labels[leaf] & net2.labels[witness.mapping[leaf]]
                for leaf in net1.leaves
            }
            return vertex_count(net1), Network(net1.edges, labels)
    return None


def _taxon(i: int) -> str:
    return f"t{i}"


def _expand_simple(n: Network, rng: random.Random, taxon: str) -> Network:
    """Reverse of a simple reduction: give a random leaf a fresh sibling."""
    y = rng.choice(sorted(n.leaves))
    p = n.parent(y)
    x = n.fresh_id()
    edges = list(n.edges)
    labels = {v: set(ls) for v, ls in n.labels.items()}
    labels[x] = {taxon}
    if n.out_degree(p) == 1:
        # Growing the singleton: the root takes a second child directly.
        edges.append((p, x))
    else:
        m = x + 1
        edges.remove((p, y))
        edges.extend([(p, m), (m, y), (m, x)])
    return Network(edges, labels)


def _expand_reticulated(n: Network, rng: random.Random) -> Network | None:
    """Reverse of a reticulated reduction on two random leaves; None when the
    sampled position would push the level above 1."""
    leaves = sorted(n.leaves)
    x, y = rng.sample(leaves, 2)
    px, py = n.parent(x), n.parent(y)
    r = n.fresh_id()
    m = r + 1
    edges = list(n.edges)
    edges.remove((px, x))
    edges.remove((py, y))
    edges.extend([(px, r), (r, x), (py, m), (m, y), (m, r)])
    cand = Network(edges, {v: set(ls) for v, ls in n.labels.items()})
    if not validate(cand).ok or level(cand) > 1:
        return None
    return cand


def random_network(seed: int, leaves: int, retics: int) -> Network:
    """Random binary level-1 orchard network, deterministic in the seed.

    Built from a singleton by reverse cherry operations, so a complete
    reduction sequence exists by construction. Leaves are labeled t1..tN,
    giving any two generated networks overlapping taxa.
    """
    if leaves < 1 or retics < 0 or (retics > 0 and leaves < retics + 1):
        raise InfeasibleParametersError(
            f"no level-1 network has {leaves} leaves and {retics} reticulations"
        )
    for attempt in range(100):
        rng = random.Random(f"{seed}:{attempt}")
        net = _generate(rng, leaves, retics)
        if net is not None:
            return net
    raise InfeasibleParametersError(
        f"could not place {retics} reticulations on {leaves} leaves at level 1"
    )


def _generate(rng: random.Random, leaves: int, retics: int) -> Network | None:
    n = Network([(0, 1)], {1: {_taxon(1)}})
    taxa_used = 1
    simple_left = leaves - 1
    retic_left = retics
    while simple_left or retic_left:
        total = simple_left + retic_left
        pick_retic = (
            retic_left > 0
            and len(n.leaves) >= 2
            and rng.random() < retic_left / total
        )
        if pick_retic:
            for _ in range(50):
                grown = _expand_reticulated(n, rng)
                if grown is not None:
                    break
            else:
                return None
            n = grown
            retic_left -= 1
        elif simple_left:
            taxa_used += 1
            n = _expand_simple(n, rng, _taxon(taxa_used))
            simple_left -= 1
        else:
            return None
    return n if validate(n).ok else None


def chained_reticulation_network(k: int) -> Network:
    """Chain of k triangle components, each reticulation below the previous.

    Every cycle has one empty path, so only one incoming edge per
    reticulation is usable and the admitting edge sets are exactly the k+1
    suffixes of the chain.
    """
    if k < 1:
        raise InfeasibleParametersError("chain length must be at least 1")
    edges: list[tuple[int, int]] = []
    labels: dict[int, set[str]] = {}
    next_id = 0

    def new() -> int:
        nonlocal next_id
        next_id += 1
        return next_id

    top = None
    prev_bottom = None
    for i in range(1, k + 1):
        rho, p, r, pend = new(), new(), new(), new()
        edges.extend([(rho, r), (rho, p), (p, r), (p, pend)])
        labels[pend] = {f"c{i}"}
        if prev_bottom is None:
            top = rho
        else:
            edges.append((prev_bottom, rho))
        prev_bottom = r
    last = new()
    labels[last] = {"z"}
    edges.append((prev_bottom, last))
    assert top is not None
    return Network(edges, labels)


def diamond_caterpillar(retics: int, leaves: int) -> Network:
    """Caterpillar spine carrying `retics` independent diamond cycles plus
    padding leaves, for a total of `leaves` leaves (needs 3*retics + 1).

    Every reticulation keeps both incoming edges usable, so all 3^retics
    candidate edge sets admit a trimmed subnetwork.
    """
    padding = leaves - 3 * retics - 1
    if leaves < 1 or retics < 0 or padding < 0:
        raise InfeasibleParametersError(
            f"diamond caterpillar needs at least {3 * retics + 1} leaves for "
            f"{retics} reticulations"
        )
    edges: list[tuple[int, int]] = []
    labels: dict[int, set[str]] = {}
    next_id = 0
    taxa_used = 0

    def new() -> int:
        nonlocal next_id
        next_id += 1
        return next_id

    def new_leaf() -> int:
        nonlocal taxa_used
        leaf = new()
        taxa_used += 1
        labels[leaf] = {_taxon(taxa_used)}
        return leaf

    def diamond() -> int:
        rho, pl, pr, r = new(), new(), new(), new()
        edges.extend([(rho, pl), (rho, pr), (pl, r), (pr, r)])
        edges.append((pl, new_leaf()))
        edges.append((pr, new_leaf()))
        edges.append((r, new_leaf()))
        return rho

    attachments = [diamond for _ in range(retics)] + [new_leaf for _ in range(padding)]
    if not attachments:
        root = new()
        edges.append((root, new_leaf()))
        return Network(edges, labels)

    spine = [new() for _ in attachments]
    for i, (vertex, attach) in enumerate(zip(spine, attachments)):
        edges.append((vertex, attach()))
        if i + 1 < len(spine):
            edges.append((vertex, spine[i + 1]))
    edges.append((spine[-1], new_leaf()))
    return Network(edges, labels)
