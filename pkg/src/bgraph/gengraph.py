"""Generating-graph edge counts and the degree split deg(H) = 2 e + phi(|H|)."""

from __future__ import annotations

from dataclasses import dataclass

from .groups import ElementSet, GroupTable, classify, generate, prime_factors
from .lattice import Subgroup


@dataclass(frozen=True)
class GenGraphSummary:
    subgroup_id: int
    edge_count: int
    diagonal_generators: int

    @property
    def degree(self) -> int:
        return 2 * self.edge_count + self.diagonal_generators

    def as_dict(self) -> dict:
        return {
            "subgroup_id": self.subgroup_id,
            "edge_count": self.edge_count,
            "diagonal_generators": self.diagonal_generators,
        }


def totient(n: int) -> int:
    if n < 1:
        raise ValueError("totient needs n >= 1")
    out = n
    for p in prime_factors(n):
        out -= out // p
    return out


def gen_graph_edges(G: GroupTable, H: Subgroup) -> GenGraphSummary:
    """Count unordered pairs {a, b}, a != b, of H with <a, b> = H, and the a with <a> = H."""
    target = H.carrier.bits
    elems = list(H.carrier)
    cyc = {a: generate(G, [a]).bits for a in elems}
    diagonal = sum(1 for a in elems if cyc[a] == target)
    memo: dict[tuple[int, int], bool] = {}
    edges = 0
    for i, a in enumerate(elems):
        for b in elems[i + 1 :]:
            key = (cyc[a], cyc[b]) if cyc[a] <= cyc[b] else (cyc[b], cyc[a])
            hit = memo.get(key)
            if hit is None:
                hit = memo[key] = generate(G, [a, b]).bits == target
            edges += hit
    return GenGraphSummary(H.id, edges, diagonal)


def carrier_summary(G: GroupTable, carrier: ElementSet, subgroup_id: int = 0) -> GenGraphSummary:
    """Same count for a bare carrier, e.g. the whole group of a standalone table."""
    return gen_graph_edges(G, Subgroup(subgroup_id, carrier, carrier.count, classify(G, carrier)))
