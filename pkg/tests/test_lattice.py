import pytest

from bgraph.errors import CapExceededError
from bgraph.groups import make_group
from bgraph.lattice import FamilyCounts, enumerate_subgroups, family_counts
from bgraph.prob import PREDICATES

from corpus import CORPUS, pipeline


@pytest.mark.parametrize(
    "spec,size",
    [("Z:1", 1), ("Z:7", 2), ("Q:8", 6), ("S:4", 30), ("D:12", 16), ("A:5", 59), ("X(Z:4,Z:4,Z:4)", 129)],
)
def test_subgroup_counts(spec, size):
    assert len(pipeline(spec)[1]) == size


@pytest.mark.parametrize(
    "spec,counts",
    [
        ("D:8", (7, 9, 10, 10, 10)),
        ("A:4", (8, 9, 9, 10, 10)),
        ("Z:13", (2, 2, 2, 2, 2)),
        ("S:4", (17, 21, 24, 30, 30)),
        ("A:5", (32, 37, 37, 58, 59)),
    ],
)
def test_family_counts(spec, counts):
    assert family_counts(pipeline(spec)[1]) == FamilyCounts(*counts)


@pytest.mark.parametrize("spec", CORPUS)
def test_lattice_structure(spec):
    G, lat, _ = pipeline(spec)
    subs = list(lat)
    assert subs[0].carrier.elements() == (0,)
    assert subs[-1].order == G.order
    assert len({H.carrier.bits for H in subs}) == len(subs)
    assert [(H.order, H.carrier.bits) for H in subs] == sorted((H.order, H.carrier.bits) for H in subs)
    for H in subs:
        assert H.id == lat.find(H.carrier)
        assert G.order % H.order == 0
    c = family_counts(lat)
    assert c.cyclic <= c.abelian <= c.nilpotent <= c.solvable <= c.total


@pytest.mark.parametrize("spec", ["S:4", "D:12", "X(Z:2,Z:2,Z:2)", "Q:16", "X(A:4,Z:2)"])
def test_closed_under_intersection(spec):
    _, lat, _ = pipeline(spec)
    for H in lat:
        for K in lat:
            assert (H.carrier & K.carrier).bits in lat.index


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_p_plus_one_subgroups_of_order_p(p):
    _, lat, _ = pipeline(f"X(Z:{p},Z:{p})")
    assert sum(1 for H in lat if H.order == p) == p + 1


@pytest.mark.parametrize("spec", ["S:4", "A:5", "X(S:3,Z:3)", "Q:36", "D:16", "X(A:4,Z:2)"])
def test_flags_match_textbook_predicates(spec):
    # classify uses p-element counts for nilpotency; the prob oracle uses the lower central series
    G, lat, _ = pipeline(spec)
    for H in lat:
        elems = frozenset(H.carrier)
        for name, pred in PREDICATES.items():
            assert getattr(H.flags, f"is_{name}") == pred(G, elems), (H, name)


def test_cap_enforced():
    G = make_group("S:5")
    with pytest.raises(CapExceededError):
        enumerate_subgroups(G, cap=100)
