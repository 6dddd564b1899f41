"""Generation probabilities as exact fractions.

``aggregate`` reads everything off the degree map. ``oracle_probability``
rescans G x G with its own closure and its own structure tests, so the two
paths share nothing beyond the multiplication table.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .bigraph import DegreeMap
from .groups import ElementSet, GroupTable
from .lattice import Lattice, Subgroup


@dataclass(frozen=True)
class ProbReport:
    per_subgroup: dict[int, Fraction]
    phi2_group: Fraction
    pr_abelian: Fraction
    pr_cyclic: Fraction
    pr_nilpotent: Fraction
    pr_solvable: Fraction

    def __post_init__(self):
        if sum(self.per_subgroup.values()) != 1:
            raise ValueError("per-subgroup probabilities must sum to 1")
        if not self.pr_cyclic <= self.pr_abelian <= self.pr_nilpotent <= self.pr_solvable <= 1:
            raise ValueError("aggregate probabilities must be monotone along cyclic, abelian, nilpotent, solvable")


def fraction_text(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def pr_subgroup(dm: DegreeMap, hid: int) -> Fraction:
    return Fraction(dm.deg[hid], dm.group_order**2)


def phi2(H: Subgroup, dm: DegreeMap) -> Fraction:
    """phi_2(H), read from the ambient degree map."""
    return Fraction(dm.deg[H.id], H.order**2)


def aggregate(dm: DegreeMap, lat: Lattice) -> ProbReport:
    per = {H.id: pr_subgroup(dm, H.id) for H in lat}

    def over(flag: str) -> Fraction:
        return sum((per[H.id] for H in lat if getattr(H.flags, flag)), Fraction(0))

    return ProbReport(
        per_subgroup=per,
        phi2_group=phi2(lat.whole, dm),
        pr_abelian=over("is_abelian"),
        pr_cyclic=over("is_cyclic"),
        pr_nilpotent=over("is_nilpotent"),
        pr_solvable=over("is_solvable"),
    )


# oracle: naive closure and textbook structure tests


def _span(G: GroupTable, seeds) -> frozenset[int]:
    """Closure by multiplying everything by the seeds until nothing new appears."""
    seeds = list(seeds)
    out = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for h in frontier:
            for s in seeds:
                y = G.mul[h][s]
                if y not in out:
                    out.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(out)


def _commutators(G: GroupTable, A, B) -> frozenset[int]:
    inv, mul = G.inv, G.mul
    return _span(G, {mul[mul[inv[x]][inv[y]]][mul[x][y]] for x in A for y in B})


def _abelian(G: GroupTable, H: frozenset[int]) -> bool:
    return all(G.mul[x][y] == G.mul[y][x] for x in H for y in H)


def _cyclic(G: GroupTable, H: frozenset[int]) -> bool:
    for x in H:
        k, y = 1, x
        while y != 0:
            y = G.mul[y][x]
            k += 1
        if k == len(H):
            return True
    return False


def _nilpotent(G: GroupTable, H: frozenset[int]) -> bool:
    # lower central series: H, [H, H], [[H, H], H], ...
    term = H
    while len(term) > 1:
        nxt = _commutators(G, term, H)
        if nxt == term:
            return False
        term = nxt
    return True


def _solvable(G: GroupTable, H: frozenset[int]) -> bool:
    term = H
    while len(term) > 1:
        nxt = _commutators(G, term, term)
        if nxt == term:
            return False
        term = nxt
    return True


PREDICATES: dict[str, Callable[[GroupTable, frozenset[int]], bool]] = {
    "abelian": _abelian,
    "cyclic": _cyclic,
    "nilpotent": _nilpotent,
    "solvable": _solvable,
}


def oracle_probability(G: GroupTable, predicate: str | ElementSet) -> Fraction:
    """Fraction of ordered pairs (a, b) whose <a, b> satisfies ``predicate``.

    ``predicate`` is one of abelian, cyclic, nilpotent, solvable, or a carrier
    H meaning "<a, b> equals H".
    """
    if isinstance(predicate, ElementSet):
        target = frozenset(predicate)
        test = lambda G, H: H == target  # noqa: E731
    else:
        test = PREDICATES[predicate]
    n = G.order
    cyc = [_span(G, [a]) for a in range(n)]
    spans: dict[tuple[frozenset[int], frozenset[int]], bool] = {}
    verdict: dict[frozenset[int], bool] = {}
    hits = 0
    for a in range(n):
        for b in range(n):
            key = (cyc[a], cyc[b])
            ok = spans.get(key)
            if ok is None:
                H = _span(G, (a, b))
                if H not in verdict:
                    verdict[H] = test(G, H)
                ok = spans[key] = verdict[H]
            hits += ok
    return Fraction(hits, n * n)
