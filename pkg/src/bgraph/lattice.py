"""Enumeration of the complete subgroup list L(G)."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterator, NamedTuple

from .errors import CapExceededError
from .groups import DEFAULT_CAP, ElementSet, GroupTable, PropertyFlags, classify, closure, extend_subgroup


@dataclass(frozen=True)
class Subgroup:
    id: int
    carrier: ElementSet
    order: int
    flags: PropertyFlags
    gens: tuple[int, ...] = ()

    def __post_init__(self):
        if self.order != self.carrier.count:
            raise ValueError("subgroup order must equal carrier size")


@dataclass(frozen=True, eq=False)
class Lattice:
    """Subgroups sorted by (order, carrier bits); ``index`` maps carrier bits to id."""

    group: GroupTable
    subgroups: tuple[Subgroup, ...]
    index: dict[int, int] = field(repr=False)

    def __len__(self) -> int:
        return len(self.subgroups)

    def __iter__(self) -> Iterator[Subgroup]:
        return iter(self.subgroups)

    def __getitem__(self, i: int) -> Subgroup:
        return self.subgroups[i]

    def find(self, carrier: ElementSet) -> int:
        return self.index[carrier.bits]

    @property
    def trivial(self) -> Subgroup:
        return self.subgroups[0]

    @property
    def whole(self) -> Subgroup:
        return self.subgroups[-1]


class FamilyCounts(NamedTuple):
    cyclic: int
    abelian: int
    nilpotent: int
    solvable: int
    total: int


def enumerate_subgroups(G: GroupTable, cap: int = DEFAULT_CAP) -> Lattice:
    """Every subgroup of G exactly once.

    Worklist closure: start from {1} and the cyclic subgroups, extend each
    known H by one element x outside H, and stop when nothing new appears.
    <H, x> depends only on the right coset Hx, so one x per coset is tried.
    """
    n = G.order
    if n > cap:
        raise CapExceededError(f"{G.spec} has order {n} > cap {cap}")
    mul = G.mul
    found: dict[int, tuple[list[int], tuple[int, ...]]] = {}
    work: deque[int] = deque()

    def add(elems: list[int], gens: tuple[int, ...]) -> None:
        bits = ElementSet.of(elems).bits
        if bits not in found:
            found[bits] = (elems, gens)
            work.append(bits)

    add([0], ())
    for x in range(1, n):
        elems, gens = closure(G, [x])
        add(elems, tuple(gens))

    while work:
        elems, gens = found[work.popleft()]
        covered = bytearray(n)
        for h in elems:
            covered[h] = 1
        for x in range(n):
            if covered[x]:
                continue
            for h in elems:
                covered[mul[h][x]] = 1
            add(extend_subgroup(G, elems, gens, x), gens + (x,))

    ordered = sorted(found, key=lambda bits: (bits.bit_count(), bits))
    subgroups = []
    for i, bits in enumerate(ordered):
        carrier = ElementSet.from_bits(bits)
        flags = classify(G, carrier, check=False)
        subgroups.append(Subgroup(i, carrier, carrier.count, flags, found[bits][1]))
    return Lattice(G, tuple(subgroups), {bits: i for i, bits in enumerate(ordered)})


def family_counts(lat: Lattice) -> FamilyCounts:
    """(|L_C|, |L_A|, |L_N|, |L_S|, |L|)"""
    subs = lat.subgroups
    return FamilyCounts(
        sum(s.flags.is_cyclic for s in subs),
        sum(s.flags.is_abelian for s in subs),
        sum(s.flags.is_nilpotent for s in subs),
        sum(s.flags.is_solvable for s in subs),
        len(subs),
    )
