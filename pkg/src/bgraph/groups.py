"""Finite groups as Cayley tables.

Elements are dense indices ``0..n-1`` with the identity at index 0. Subsets
of a group are :class:`ElementSet` bit vectors backed by a Python int.

Group specs::

    Z:<n>        cyclic of order n
    D:<2n>       dihedral of order 2n, <a, b | a^n = b^2 = 1, bab = a^-1>
    Q:<4n>       dicyclic of order 4n (n >= 2), <a, b | a^2n = 1, b^2 = a^n, bab^-1 = a^-1>
    S:<n>        symmetric group on n <= 5 points
    A:<n>        alternating group on n <= 5 points
    X(s1,s2,..)  direct product
"""

from __future__ import annotations

import itertools
import math
import random
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Iterator, Sequence

from .errors import CapExceededError, NotASubgroupError, SpecParseError, UnsupportedGroupError

DEFAULT_CAP = 512
FULL_ASSOCIATIVITY_LIMIT = 64
RANDOM_ASSOCIATIVITY_TRIPLES = 10_000


@dataclass(frozen=True)
class ElementSet:
    """A subset of a group, stored as a bit vector."""

    bits: int
    count: int

    def __post_init__(self):
        if self.bits < 0:
            raise ValueError("bits must be non-negative")
        if self.count != self.bits.bit_count():
            raise ValueError(f"count {self.count} does not match popcount of bits")

    @classmethod
    def from_bits(cls, bits: int) -> ElementSet:
        return cls(bits, bits.bit_count())

    @classmethod
    def of(cls, elements: Iterable[int]) -> ElementSet:
        bits = 0
        for x in elements:
            bits |= 1 << x
        return cls.from_bits(bits)

    def __iter__(self) -> Iterator[int]:
        b = self.bits
        while b:
            low = b & -b
            yield low.bit_length() - 1
            b ^= low

    def __contains__(self, x: int) -> bool:
        return bool(self.bits >> x & 1)

    def __len__(self) -> int:
        return self.count

    def __and__(self, other: ElementSet) -> ElementSet:
        return ElementSet.from_bits(self.bits & other.bits)

    def __or__(self, other: ElementSet) -> ElementSet:
        return ElementSet.from_bits(self.bits | other.bits)

    def issubset(self, other: ElementSet) -> bool:
        return self.bits & ~other.bits == 0

    def elements(self) -> tuple[int, ...]:
        return tuple(self)


@dataclass(frozen=True)
class PropertyFlags:
    is_cyclic: bool
    is_abelian: bool
    is_nilpotent: bool
    is_solvable: bool

    def __post_init__(self):
        chain = (self.is_cyclic, self.is_abelian, self.is_nilpotent, self.is_solvable)
        for stronger, weaker in itertools.pairwise(chain):
            if stronger and not weaker:
                raise ValueError(f"flag chain cyclic => abelian => nilpotent => solvable violated: {chain}")

    def as_dict(self) -> dict[str, bool]:
        return {
            "cyclic": self.is_cyclic,
            "abelian": self.is_abelian,
            "nilpotent": self.is_nilpotent,
            "solvable": self.is_solvable,
        }


@dataclass(frozen=True, eq=False)
class GroupTable:
    """Multiplication table of a finite group with identity at index 0."""

    order: int
    mul: tuple[tuple[int, ...], ...]
    inv: tuple[int, ...]
    labels: tuple[str, ...]
    spec: str = ""
    identity: int = 0

    def __post_init__(self):
        n = self.order
        if n < 1:
            raise ValueError("group order must be positive")
        if self.identity != 0:
            raise ValueError("identity must be index 0")
        if len(self.mul) != n or any(len(row) != n for row in self.mul):
            raise ValueError("mul must be an n x n table")
        if len(self.inv) != n or len(self.labels) != n:
            raise ValueError("inv and labels must have length n")
        for x, row in enumerate(self.mul):
            if any(not 0 <= v < n for v in row):
                raise ValueError(f"row {x} of mul leaves 0..{n - 1}")
            if row[0] != x or self.mul[0][x] != x:
                raise ValueError(f"identity law fails at {x}")
            if row[self.inv[x]] != 0:
                raise ValueError(f"inverse law fails at {x}")
        self._check_associativity()

    def _check_associativity(self) -> None:
        n, mul = self.order, self.mul
        if n <= FULL_ASSOCIATIVITY_LIMIT:
            triples: Iterable[tuple[int, int, int]] = itertools.product(range(n), repeat=3)
        else:
            rng = random.Random(n)
            triples = (
                (rng.randrange(n), rng.randrange(n), rng.randrange(n))
                for _ in range(RANDOM_ASSOCIATIVITY_TRIPLES)
            )
        for x, y, z in triples:
            if mul[mul[x][y]][z] != mul[x][mul[y][z]]:
                raise ValueError(f"associativity fails at ({x}, {y}, {z})")

    @classmethod
    def from_operation(
        cls, elements: Sequence, op: Callable, label: Callable[[object], str], spec: str = ""
    ) -> GroupTable:
        """Tabulate ``op`` on ``elements``; ``elements[0]`` must be the identity."""
        index = {e: i for i, e in enumerate(elements)}
        if len(index) != len(elements):
            raise ValueError("duplicate elements")
        mul = tuple(tuple(index[op(x, y)] for y in elements) for x in elements)
        inv = tuple(row.index(0) for row in mul)
        return cls(len(elements), mul, inv, tuple(label(e) for e in elements), spec)

    @cached_property
    def orders(self) -> tuple[int, ...]:
        return tuple(element_order(self, x) for x in range(self.order))

    def m(self, x: int, y: int) -> int:
        return self.mul[x][y]

    def commutator(self, x: int, y: int) -> int:
        """x^-1 y^-1 x y"""
        mul, inv = self.mul, self.inv
        return mul[mul[inv[x]][inv[y]]][mul[x][y]]

    def __repr__(self):
        return f"GroupTable({self.spec or '?'}, order={self.order})"


# closure


def _extend(mul, base: list[int], member: bytearray, gens: list[int], s: int) -> list[int]:
    """Dimino step: grow the subgroup ``base`` = <gens> to <gens, s>.

    ``member`` flags the elements of ``base`` on entry and of the result on exit.
    The result is a union of right cosets ``base * r``; every coset
    representative times every generator is checked to stay inside.
    """
    gens = [*gens, s]
    out = list(base)
    reps = [s]
    coset = [mul[h][s] for h in base]
    for c in coset:
        member[c] = 1
    out.extend(coset)
    i = 0
    while i < len(reps):
        row = mul[reps[i]]
        for g in gens:
            t = row[g]
            if not member[t]:
                reps.append(t)
                coset = [mul[h][t] for h in base]
                for c in coset:
                    member[c] = 1
                out.extend(coset)
        i += 1
    return out


def closure(G: GroupTable, seeds: Iterable[int]) -> tuple[list[int], list[int]]:
    """Elements and an irredundant generating list of the subgroup generated by ``seeds``."""
    member = bytearray(G.order)
    member[0] = 1
    elems = [0]
    gens: list[int] = []
    for s in seeds:
        if not 0 <= s < G.order:
            raise IndexError(f"element {s} outside 0..{G.order - 1}")
        if member[s]:
            continue
        elems = _extend(G.mul, elems, member, gens, s)
        gens.append(s)
    return elems, gens


def extend_subgroup(G: GroupTable, elems: list[int], gens: Sequence[int], x: int) -> list[int]:
    """Elements of <H, x> where H (elements ``elems``) = <gens>."""
    member = bytearray(G.order)
    for h in elems:
        member[h] = 1
    if member[x]:
        return list(elems)
    return _extend(G.mul, elems, member, list(gens), x)


def generate(G: GroupTable, seeds: Iterable[int] | ElementSet) -> ElementSet:
    """Smallest subgroup of G containing ``seeds``; ``generate(G, []) == {0}``."""
    elems, _ = closure(G, seeds)
    return ElementSet.of(elems)


def element_order(G: GroupTable, x: int) -> int:
    mul = G.mul
    k, y = 1, x
    while y != 0:
        y = mul[y][x]
        k += 1
    return k


# classification


def is_subgroup(G: GroupTable, carrier: ElementSet) -> bool:
    if 0 not in carrier:
        return False
    elems = carrier.elements()
    bits = carrier.bits
    mul, inv = G.mul, G.inv
    for x in elems:
        if not bits >> inv[x] & 1:
            return False
        row = mul[x]
        for y in elems:
            if not bits >> row[y] & 1:
                return False
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _is_power_of(k: int, p: int) -> bool:
    while k % p == 0:
        k //= p
    return k == 1


def is_abelian(G: GroupTable, elems: Sequence[int]) -> bool:
    mul = G.mul
    return all(mul[x][y] == mul[y][x] for i, x in enumerate(elems) for y in elems[i + 1 :])


def is_nilpotent(G: GroupTable, elems: Sequence[int]) -> bool:
    """Every Sylow subgroup is unique.

    A Sylow p-subgroup P is unique iff the p-elements number exactly |P|:
    each p-element lies in some Sylow p-subgroup, and P is made of p-elements.
    """
    k = len(elems)
    orders = G.orders
    for p in prime_factors(k):
        sylow = p ** _valuation(k, p)
        if sum(1 for x in elems if _is_power_of(orders[x], p)) != sylow:
            return False
    return True


def _valuation(k: int, p: int) -> int:
    v = 0
    while k % p == 0:
        k //= p
        v += 1
    return v


def commutator_subgroup(G: GroupTable, elems: Sequence[int]) -> ElementSet:
    comm = G.commutator
    return generate(G, {comm(x, y) for x in elems for y in elems})


def derived_series(G: GroupTable, carrier: ElementSet) -> list[ElementSet]:
    """carrier, [carrier, carrier], ... down to the first repeated term."""
    series = [carrier]
    while True:
        nxt = commutator_subgroup(G, series[-1].elements())
        if nxt == series[-1]:
            return series
        series.append(nxt)


def is_solvable(G: GroupTable, carrier: ElementSet) -> bool:
    return derived_series(G, carrier)[-1].count == 1


def classify(G: GroupTable, carrier: ElementSet, *, check: bool = True) -> PropertyFlags:
    """Cyclic/abelian/nilpotent/solvable flags of the subgroup ``carrier``."""
    if check and not is_subgroup(G, carrier):
        raise NotASubgroupError(f"carrier with {carrier.count} elements is not a subgroup of {G.spec}")
    elems = carrier.elements()
    k = len(elems)
    orders = G.orders
    cyclic = any(orders[x] == k for x in elems)
    abelian = cyclic or is_abelian(G, elems)
    nilpotent = abelian or is_nilpotent(G, elems)
    solvable = nilpotent or is_solvable(G, carrier)
    return PropertyFlags(cyclic, abelian, nilpotent, solvable)


def restrict(G: GroupTable, carrier: ElementSet) -> GroupTable:
    """The subgroup ``carrier`` as a standalone GroupTable (identity stays first)."""
    if not is_subgroup(G, carrier):
        raise NotASubgroupError("cannot restrict to a non-subgroup")
    elems = carrier.elements()
    pos = {x: i for i, x in enumerate(elems)}
    mul = tuple(tuple(pos[G.mul[x][y]] for y in elems) for x in elems)
    inv = tuple(pos[G.inv[x]] for x in elems)
    labels = tuple(G.labels[x] for x in elems)
    return GroupTable(len(elems), mul, inv, labels, f"{G.spec}|{carrier.bits:x}")


# construction


def _word(i: int, s: int) -> str:
    a = "" if i == 0 else "a" if i == 1 else f"a^{i}"
    w = a + ("b" if s else "")
    return w or "1"


def cyclic_group(n: int, spec: str = "") -> GroupTable:
    return GroupTable.from_operation(
        list(range(n)), lambda x, y: (x + y) % n, lambda i: _word(i, 0), spec or f"Z:{n}"
    )


def dihedral_group(order: int, spec: str = "") -> GroupTable:
    """D_{2n}: a^i b^s with b a = a^-1 b, listed 1, a, .., a^{n-1}, b, ab, .., a^{n-1}b."""
    n = order // 2
    elements = [(i, s) for s in (0, 1) for i in range(n)]

    def op(x, y):
        (i, s), (j, t) = x, y
        return ((i + (-j if s else j)) % n, (s + t) % 2)

    return GroupTable.from_operation(elements, op, lambda e: _word(*e), spec or f"D:{order}")


def dicyclic_group(order: int, spec: str = "") -> GroupTable:
    """Q_{4n}: a^i b^s with b^2 = a^n and b a = a^-1 b."""
    n = order // 4
    m = 2 * n
    elements = [(i, s) for s in (0, 1) for i in range(m)]

    def op(x, y):
        (i, s), (j, t) = x, y
        e = i + (-j if s else j)
        if s and t:
            e += n
        return (e % m, (s + t) % 2)

    return GroupTable.from_operation(elements, op, lambda e: _word(*e), spec or f"Q:{order}")


def _cycle_label(perm: tuple[int, ...]) -> str:
    seen = set()
    parts = []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cyc = []
        x = start
        while x not in seen:
            seen.add(x)
            cyc.append(str(x + 1))
            x = perm[x]
        parts.append("(" + "".join(cyc) + ")")
    return "".join(parts) or "(1)"


def _is_even(perm: tuple[int, ...]) -> bool:
    inversions = sum(1 for i, j in itertools.combinations(range(len(perm)), 2) if perm[i] > perm[j])
    return inversions % 2 == 0


def permutation_group(n: int, even_only: bool = False, spec: str = "") -> GroupTable:
    """S_n or A_n; products compose left to right (apply x, then y)."""
    perms = [p for p in itertools.permutations(range(n)) if not even_only or _is_even(p)]
    return GroupTable.from_operation(
        perms,
        lambda x, y: tuple(y[x[i]] for i in range(n)),
        _cycle_label,
        spec or f"{'A' if even_only else 'S'}:{n}",
    )


def direct_product(factors: Sequence[GroupTable], spec: str = "") -> GroupTable:
    """Elements are tuples in lexicographic order, first factor most significant."""
    elements = list(itertools.product(*(range(f.order) for f in factors)))

    def op(x, y):
        return tuple(f.mul[a][b] for f, a, b in zip(factors, x, y))

    def label(e):
        return "(" + ",".join(f.labels[i] for f, i in zip(factors, e)) + ")"

    return GroupTable.from_operation(elements, op, label, spec)


# spec parsing

_ATOM = re.compile(r"([ZDQSA]):(\d+)")


@dataclass(frozen=True)
class _Node:
    family: str
    n: int = 0
    children: tuple[_Node, ...] = ()

    @property
    def order(self) -> int:
        if self.family == "X":
            return math.prod(c.order for c in self.children)
        if self.family in "SA":
            k = math.factorial(self.n)
            return k // 2 if self.family == "A" and self.n >= 2 else k
        return self.n

    def text(self) -> str:
        if self.family == "X":
            return "X(" + ",".join(c.text() for c in self.children) + ")"
        return f"{self.family}:{self.n}"


def _parse(text: str, pos: int) -> tuple[_Node, int]:
    if text.startswith("X(", pos):
        pos += 2
        children = []
        while True:
            child, pos = _parse(text, pos)
            children.append(child)
            if pos < len(text) and text[pos] == ",":
                pos += 1
                continue
            if pos < len(text) and text[pos] == ")":
                pos += 1
                break
            raise SpecParseError(f"expected ',' or ')' at position {pos} in {text!r}")
        if len(children) < 2:
            raise SpecParseError(f"direct product needs at least two factors: {text!r}")
        return _Node("X", children=tuple(children)), pos
    m = _ATOM.match(text, pos)
    if not m:
        raise SpecParseError(f"cannot parse group spec at position {pos} in {text!r}")
    node = _Node(m.group(1), int(m.group(2)))
    _check_family(node)
    return node, m.end()


def _check_family(node: _Node) -> None:
    f, n = node.family, node.n
    if f == "Z" and n < 1:
        raise UnsupportedGroupError("Z:<n> needs n >= 1")
    if f == "D" and (n < 2 or n % 2):
        raise UnsupportedGroupError(f"D:<2n> needs an even order >= 2, got {n}")
    if f == "Q" and (n < 8 or n % 4):
        raise UnsupportedGroupError(f"Q:<4n> needs an order divisible by 4 and >= 8, got {n}")
    if f in "SA" and not 1 <= n <= 5:
        raise UnsupportedGroupError(f"{f}:<n> supports 1 <= n <= 5, got {n}")


def parse_spec(spec: str) -> _Node:
    text = spec.strip()
    node, pos = _parse(text, 0)
    if pos != len(text):
        raise SpecParseError(f"trailing characters at position {pos} in {spec!r}")
    return node


def spec_order(spec: str) -> int:
    return parse_spec(spec).order


def _build(node: _Node) -> GroupTable:
    text = node.text()
    if node.family == "Z":
        return cyclic_group(node.n, text)
    if node.family == "D":
        return dihedral_group(node.n, text)
    if node.family == "Q":
        return dicyclic_group(node.n, text)
    if node.family == "S":
        return permutation_group(node.n, False, text)
    if node.family == "A":
        return permutation_group(node.n, True, text)
    return direct_product([_build(c) for c in node.children], text)


def make_group(spec: str, cap: int = DEFAULT_CAP) -> GroupTable:
    """Build the group described by ``spec``, refusing orders above ``cap``."""
    node = parse_spec(spec)
    if node.order > cap:
        raise CapExceededError(f"{node.text()} has order {node.order} > cap {cap}")
    return _build(node)
