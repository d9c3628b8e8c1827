"""Maximum agreement cherry-reduced subnetwork of two level-1 orchard networks.

Enumerates reticulation-trimmed subnetwork pairs, runs the simple-agreement
DP on each, and keeps the result with the most vertices. Ties break on the
canonical text of the result and then on pair order, so reruns (and parallel
runs) produce identical answers.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .agreement import check_inputs, macrs_simple
from .canonical import canonical_text
from .enewick import serialize
from .model import Network, vertex_count
from .trimming import reticulation_trimmed_subnetworks, set_fingerprint

Fingerprint = tuple[tuple[str, str], ...]


@dataclass(frozen=True)
class MacrsResult:
    network: Network
    v1: int
    v2: int
    v_star: int
    f1: Fingerprint  # removed reticulation edges of input 1, by taxa fingerprints
    f2: Fingerprint
    leaf_count: int
    reticulation_count: int


def macrs(
    n1: Network,
    n2: Network,
    *,
    use_r_filter: bool = True,
    threads: int = 1,
) -> MacrsResult | None:
    """A maximum agreement cherry-reduced subnetwork, or None when the inputs
    share no taxon.

    With use_r_filter, subnetwork pairs with unequal reticulation counts are
    skipped; such pairs admit no simple agreement, so the answer's vertex
    count is unchanged either way.
    """
    check_inputs(n1, n2)
    if not (n1.taxa & n2.taxa):
        return None

    inner = list(reticulation_trimmed_subnetworks(n2))

    def pair_stream():
        index = 0
        for f1, a in reticulation_trimmed_subnetworks(n1):
            for f2, b in inner:
                yield index, f1, a, f2, b
                index += 1

    def evaluate(item):
        index, f1, a, f2, b = item
        if use_r_filter and len(a.reticulations) != len(b.reticulations):
            return None
        # With the filter off, the table itself rules unequal pairs out.
        res = macrs_simple(
            a, b, check_reticulation_counts=use_r_filter, validate_inputs=False
        )
        if res is None:
            return None
        net, _ = res
        return vertex_count(net), canonical_text(net), index, net, f1, f2

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            outcomes = list(pool.map(evaluate, pair_stream()))
    else:
        outcomes = map(evaluate, pair_stream())

    best = None
    for out in outcomes:
        if out is None:
            continue
        if (
            best is None
            or out[0] > best[0]
            or (out[0] == best[0] and (out[1], out[2]) < (best[1], best[2]))
        ):
            best = out
    if best is None:
        return None

    v_star, _, _, net, f1, f2 = best
    return MacrsResult(
        network=net,
        v1=vertex_count(n1),
        v2=vertex_count(n2),
        v_star=v_star,
        f1=set_fingerprint(n1, f1),
        f2=set_fingerprint(n2, f2),
        leaf_count=len(net.leaves),
        reticulation_count=len(net.reticulations),
    )


def summarize(result: MacrsResult) -> dict:
    """JSON-ready record of a solver result, with the two size deltas."""
    return {
        "v1": result.v1,
        "v2": result.v2,
        "v_star": result.v_star,
        "leaf_count": result.leaf_count,
        "reticulation_count": result.reticulation_count,
        "deltas": [result.v1 - result.v_star, result.v2 - result.v_star],
        "network": serialize(result.network),
        "f1": [list(edge) for edge in result.f1],
        "f2": [list(edge) for edge in result.f2],
    }
