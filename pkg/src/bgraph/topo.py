"""Degree-based topological indices of B(G), computed two independent ways."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable

from .bigraph import DegreeMap

FLOAT_FIELDS = ("randic", "abc", "ga", "harmonic", "sci")


@dataclass(frozen=True)
class IndexReport:
    m1: int
    m2: int
    randic: float
    abc: float
    ga: float
    harmonic: float
    sci: float

    def as_dict(self) -> dict:
        out = {"m1": self.m1, "m2": self.m2}
        for name in FLOAT_FIELDS:
            out[name] = f"{getattr(self, name):.12g}"
        return out


def indices_closed_form(dm: DegreeMap) -> IndexReport:
    """Each index as a sum over the star sizes d = deg(H); d = 0 terms vanish."""
    ds = sorted(d for d in dm.deg if d > 0)
    m2 = sum(d * d for d in ds)
    return IndexReport(
        m1=dm.group_order**2 + m2,
        m2=m2,
        randic=math.fsum(math.sqrt(d) for d in ds),
        abc=math.fsum(math.sqrt(d * d - d) for d in ds),
        ga=math.fsum(2 * d**1.5 / (1 + d) for d in ds),
        harmonic=math.fsum(2 * d / (1 + d) for d in ds),
        sci=math.fsum(d / math.sqrt(1 + d) for d in ds),
    )


def indices_from_edges(edges: Iterable[tuple[object, object]], vertices: Iterable[object] = ()) -> IndexReport:
    """Textbook definitions over an explicit edge list; isolated vertices may be passed in ``vertices``."""
    edges = list(edges)
    deg: Counter = Counter()
    for v in vertices:
        deg[v] += 0
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    pairs = [(deg[u], deg[v]) for u, v in edges]
    return IndexReport(
        m1=sum(k * k for k in deg.values()),
        m2=sum(a * b for a, b in pairs),
        randic=math.fsum(1 / math.sqrt(a * b) for a, b in pairs),
        abc=math.fsum(math.sqrt((a + b - 2) / (a * b)) for a, b in pairs),
        ga=math.fsum(2 * math.sqrt(a * b) / (a + b) for a, b in pairs),
        harmonic=math.fsum(2 / (a + b) for a, b in pairs),
        sci=math.fsum(1 / math.sqrt(a + b) for a, b in pairs),
    )


def bipartite_edges(dm: DegreeMap) -> list[tuple[tuple[str, int], tuple[str, int]]]:
    """An edge list isomorphic to B(G): pair vertex ("p", k) joined to subgroup vertex ("H", id)."""
    edges = []
    k = 0
    for hid, d in enumerate(dm.deg):
        for _ in range(d):
            edges.append((("p", k), ("H", hid)))
            k += 1
    return edges


def indices_direct(dm: DegreeMap) -> IndexReport:
    vertices = [("H", hid) for hid in range(len(dm.deg))]
    return indices_from_edges(bipartite_edges(dm), vertices)


def agree(a: IndexReport, b: IndexReport, rel_tol: float = 1e-12) -> bool:
    if (a.m1, a.m2) != (b.m1, b.m2):
        return False
    return all(math.isclose(getattr(a, f), getattr(b, f), rel_tol=rel_tol, abs_tol=0.0) for f in FLOAT_FIELDS)
