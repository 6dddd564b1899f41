"""The bipartite graph B(G) as a per-subgroup degree map.

Pair vertices (a, b) always have degree one, so B(G) is a disjoint union of
stars, one per subgroup, and the list of subgroup degrees determines it up
to isomorphism. The pair side is never materialised.
"""

from __future__ import annotations

import math
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from .errors import InconsistencyError, InvalidPrimeError, UnsupportedFamilyError
from .groups import ElementSet, GroupTable, closure, generate
from .lattice import Lattice

INFINITE = math.inf

# below this many pairs a process pool costs more than it saves
PARALLEL_MIN_PAIRS = 4096


class RankBucket(str, Enum):
    TRIVIAL = "trivial"
    ONE_GENERATED = "one_generated"
    TWO_GENERATED = "two_generated"
    NEEDS_THREE_PLUS = "needs_three_plus"


@dataclass(frozen=True)
class DegreeMap:
    group_order: int
    deg: tuple[int, ...]
    l2_ids: frozenset[int]
    rank_bucket: RankBucket

    @property
    def edges(self) -> int:
        return sum(self.deg)

    def __post_init__(self):
        n2 = self.group_order**2
        if sum(self.deg) != n2:
            raise InconsistencyError(f"degrees sum to {sum(self.deg)}, expected |G|^2 = {n2}")
        if self.deg[0] != 1:
            raise InconsistencyError("the trivial subgroup must have degree 1")


@dataclass(frozen=True)
class StarForest:
    """Leaf counts of the stars of B(G), ascending."""

    stars: tuple[int, ...]
    isolated_count: int

    def __post_init__(self):
        if list(self.stars) != sorted(self.stars):
            raise ValueError("stars must be sorted ascending")
        if self.isolated_count != self.stars.count(0):
            raise ValueError("isolated_count must equal the number of zero entries")

    @classmethod
    def of(cls, leaf_counts: Iterable[int]) -> StarForest:
        stars = tuple(sorted(leaf_counts))
        return cls(stars, stars.count(0))

    @property
    def edges(self) -> int:
        return sum(self.stars)

    def describe(self) -> str:
        """e.g. ``K_2 + 3K_{1,3} + K_{1,8} + K_{1,18}``"""
        parts = []
        for d, mult in sorted(Counter(self.stars).items()):
            name = "K_1" if d == 0 else "K_2" if d == 1 else f"K_{{1,{d}}}"
            parts.append(name if mult == 1 else f"{mult}{name}")
        return " + ".join(parts)


@dataclass(frozen=True)
class ParamReport:
    independence_number: int
    domination_number: int
    matching_number: int
    clique_number: int
    vertex_cover_number: int
    irredundance_number: int
    bondage_number: int
    girth: int
    diameter: float
    domatic_number: int | None

    def as_dict(self) -> dict:
        out = {
            "independence_number": self.independence_number,
            "domination_number": self.domination_number,
            "matching_number": self.matching_number,
            "clique_number": self.clique_number,
            "vertex_cover_number": self.vertex_cover_number,
            "irredundance_number": self.irredundance_number,
            "bondage_number": self.bondage_number,
            "girth": self.girth,
            "diameter": "inf" if self.diameter == INFINITE else int(self.diameter),
        }
        if self.domatic_number is not None:
            out["domatic_number"] = self.domatic_number
        return out


# degree map


def _cyclic_ids(G: GroupTable, lat: Lattice) -> list[int]:
    out = []
    for a in range(G.order):
        bits = generate(G, [a]).bits
        if bits not in lat.index:
            raise InconsistencyError(f"<{G.labels[a]}> is missing from the lattice")
        out.append(lat.index[bits])
    return out


def _count_rows(G: GroupTable, index: dict[int, int], cyc: Sequence[int], rows: Sequence[int]) -> list[int]:
    # <a, b> = <<a>, <b>>, so pairs with the same cyclic subgroups share a closure
    counts = [0] * len(index)
    memo: dict[tuple[int, int], int] = {}
    n = G.order
    for a in rows:
        ca = cyc[a]
        for b in range(n):
            cb = cyc[b]
            key = (ca, cb) if ca <= cb else (cb, ca)
            hid = memo.get(key)
            if hid is None:
                elems, _ = closure(G, (a, b))
                bits = ElementSet.of(elems).bits
                if bits not in index:
                    raise InconsistencyError(
                        f"<{G.labels[a]}, {G.labels[b]}> of order {len(elems)} is missing from the lattice"
                    )
                hid = memo[key] = index[bits]
            counts[hid] += 1
    return counts


def _chunks(n: int, k: int) -> list[range]:
    step = -(-n // k)
    return [range(i, min(i + step, n)) for i in range(0, n, step)]


def build_degree_map(G: GroupTable, lat: Lattice, workers: int = 1) -> DegreeMap:
    """Resolve <a, b> for every ordered pair and count pairs per subgroup.

    With ``workers > 1`` the rows of G x G are split across processes; the
    merged counts do not depend on the split.
    """
    n = G.order
    cyc = _cyclic_ids(G, lat)
    if workers > 1 and n * n >= PARALLEL_MIN_PAIRS:
        parts = _chunks(n, workers)
        with ProcessPoolExecutor(max_workers=min(workers, len(parts))) as pool:
            results = list(pool.map(_count_rows, [G] * len(parts), [lat.index] * len(parts), [cyc] * len(parts), parts))
        deg = [sum(col) for col in zip(*results)]
    else:
        deg = _count_rows(G, lat.index, cyc, range(n))

    whole = lat.whole
    if n == 1:
        bucket = RankBucket.TRIVIAL
    elif whole.flags.is_cyclic:
        bucket = RankBucket.ONE_GENERATED
    elif deg[whole.id] > 0:
        bucket = RankBucket.TWO_GENERATED
    else:
        bucket = RankBucket.NEEDS_THREE_PLUS
    l2 = frozenset(i for i, d in enumerate(deg) if d > 0)
    return DegreeMap(n, tuple(deg), l2, bucket)


def default_workers() -> int:
    return os.cpu_count() or 1


def star_forest(dm: DegreeMap) -> StarForest:
    return StarForest.of(dm.deg)


# graph parameters


def compute_params(dm: DegreeMap, lat: Lattice) -> ParamReport:
    """Closed-form graph parameters of B(G).

    Every component is a star (or an isolated subgroup vertex when that
    subgroup needs three or more generators), which is what makes these exact.
    Girth is 0 for an acyclic graph, by the convention used for B(G).
    """
    n2 = dm.group_order**2
    n_sub = len(lat)
    n_l2 = len(dm.l2_ids)
    independence = n2 + n_sub - n_l2
    dominating = min(n2 + n_sub - n_l2, n_sub)
    # a domatic 2-partition needs every vertex to have a neighbour
    domatic = 2 if n_l2 == n_sub else None
    return ParamReport(
        independence_number=independence,
        domination_number=dominating,
        matching_number=n_l2,
        clique_number=2,
        vertex_cover_number=n2 + n_sub - independence,
        irredundance_number=dominating,
        bondage_number=1,
        girth=0,
        diameter=1 if dm.group_order == 1 else INFINITE,
        domatic_number=domatic,
    )


def two_generated_discrepancies(dm: DegreeMap, lat: Lattice, params: ParamReport) -> list[str]:
    """Where a 2-generated G breaks the identities that assume L(G) = L_2(G)."""
    if dm.rank_bucket is RankBucket.NEEDS_THREE_PLUS:
        return []
    n2 = dm.group_order**2
    n_sub = len(lat)
    out = []
    if len(dm.l2_ids) != n_sub:
        missing = sorted(set(range(n_sub)) - dm.l2_ids)
        out.append(f"L_2(G) != L(G): subgroups {missing} need three or more generators")
    checks = [
        ("independence_number", params.independence_number, n2),
        ("domination_number", params.domination_number, n_sub),
        ("irredundance_number", params.irredundance_number, n_sub),
        ("vertex_cover_number", params.vertex_cover_number, n_sub),
        ("domatic_number", params.domatic_number, 2),
    ]
    for name, got, want in checks:
        if got != want:
            out.append(f"{name} = {got}, two-generated formula gives {want}")
    return out


# closed forms

FAMILIES = ("D2p", "D2p2", "Q4p", "Q4p2", "Zp", "Z2p", "Zp2", "Z2p2", "noncyclic_p2")


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def family_spec(family: str, p: int) -> str:
    """Group spec realising ``family`` at prime ``p``."""
    specs = {
        "D2p": f"D:{2 * p}",
        "D2p2": f"D:{2 * p * p}",
        "Q4p": f"Q:{4 * p}",
        "Q4p2": f"Q:{4 * p * p}",
        "Zp": f"Z:{p}",
        "Z2p": f"Z:{2 * p}",
        "Zp2": f"Z:{p * p}",
        "Z2p2": f"Z:{2 * p * p}",
        "noncyclic_p2": f"X(Z:{p},Z:{p})",
    }
    if family not in specs:
        raise UnsupportedFamilyError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")
    return specs[family]


def _stated(family: str, p: int) -> list[int]:
    p2, p3, p4 = p**2, p**3, p**4
    if family == "Zp":
        return [1, p2 - 1]
    if family == "Z2p":
        return [1, 3, p2 - 1, 3 * p2 - 3]
    if family == "Zp2":
        return [1, p2 - 1, p4 - p2]
    if family == "Z2p2":
        return [1, 3, p2 - 1, 3 * p2 - 3, p4 - p2, 3 * p4 - 3 * p2]
    if family == "noncyclic_p2":
        return [1] + [p2 - 1] * (p + 1) + [p * (p - 1) * (p2 - 1)]
    if family == "D2p":
        return [1] + [3] * p + [p2 - 1, 3 * p * (p - 1)]
    if family == "D2p2":
        return [1] + [3] * p2 + [p2 - 1, p4 - p2] + [3 * p * (p - 1)] * p + [3 * p2 * (p2 - p)]
    if family == "Q4p":
        if p == 2:
            return [1, 3, 12, 12, 12, 24]
        return [1, 3] + [12] * p + [p2 - 1, 3 * p2 - 3, 12 * p2 - 12 * p]
    if family == "Q4p2":
        if p == 2:
            return [1, 3] + [12] * 5 + [24, 24, 48, 96]
        return (
            [1, 3]
            + [12] * p2
            + [p2 - 1, 3 * p2 - 3, 3 * p4 - 3 * p2]
            + [12 * p2 - 12 * p] * (p - 1)
            + [13 * p4 - 12 * p3 + 11 * p2 - 12 * p]
        )
    raise UnsupportedFamilyError(f"unknown family {family!r}")


def closed_form_readings(family: str, p: int) -> dict[str, StarForest]:
    """Every closed-form reading available for (family, p); ``"stated"`` is always present.

    ``"stated"`` is the closed form as usually written. For Q4p2 at odd p that
    form's subgroup list omits <a^2> (cyclic of order p^2) and one of the
    p subgroups isomorphic to Q_{4p}; ``"corrected"`` adds both back, which
    moves p^4 - p^2 + 12p^2 - 12p pairs off the top star.
    """
    family_spec(family, p)
    if not is_prime(p):
        raise InvalidPrimeError(f"{p} is not prime")
    if family == "Z2p2" and p == 2:
        raise UnsupportedFamilyError("Z2p2 needs an odd prime")
    readings = {"stated": StarForest.of(_stated(family, p))}
    if family == "Q4p2" and p != 2:
        p2, p3, p4 = p**2, p**3, p**4
        readings["corrected"] = StarForest.of(
            [1, 3]
            + [12] * p2
            + [p2 - 1, 3 * p2 - 3, p4 - p2, 3 * p4 - 3 * p2]
            + [12 * p2 - 12 * p] * p
            + [12 * p4 - 12 * p3]
        )
    return readings


def closed_form_forest(family: str, p: int, reading: str = "stated") -> StarForest:
    readings = closed_form_readings(family, p)
    if reading not in readings:
        raise UnsupportedFamilyError(f"no {reading!r} reading for {family} at p = {p}")
    return readings[reading]
