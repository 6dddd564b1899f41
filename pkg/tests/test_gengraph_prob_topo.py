import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bgraph.gengraph import carrier_summary, gen_graph_edges, totient
from bgraph.groups import ElementSet, make_group, restrict
from bgraph.prob import ProbReport, aggregate, oracle_probability, phi2, pr_subgroup
from bgraph.topo import agree, indices_closed_form, indices_direct, indices_from_edges

from corpus import CORPUS, explicit_graph, pipeline

# gen-graph


def test_totient_values():
    assert [totient(n) for n in (1, 2, 12, 13, 36, 97)] == [1, 1, 4, 12, 12, 96]
    with pytest.raises(ValueError):
        totient(0)


@given(st.integers(1, 2000))
def test_totient_matches_gcd_count(n):
    assert totient(n) == sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


def test_gen_graph_s3():
    G, lat, dm = pipeline("S:3")
    s = gen_graph_edges(G, lat.whole)
    assert (s.edge_count, s.diagonal_generators) == (9, 0)
    z3 = next(H for H in lat if H.order == 3)
    s = gen_graph_edges(G, z3)
    assert (s.edge_count, s.diagonal_generators) == (3, 2)
    s = gen_graph_edges(G, lat.trivial)
    assert (s.edge_count, s.diagonal_generators, s.degree) == (0, 1, 1)


@pytest.mark.parametrize("spec", ["S:4", "Q:36", "X(A:4,Z:2)", "D:18"])
def test_gen_graph_count_is_intrinsic(spec):
    G, lat, _ = pipeline(spec)
    for H in lat:
        K = restrict(G, H.carrier)
        assert carrier_summary(K, ElementSet.from_bits((1 << K.order) - 1), H.id) == gen_graph_edges(G, H)


# prob


def test_pr_subgroup_extremes():
    for spec in ("S:3", "Q:8", "A:5"):
        G, lat, dm = pipeline(spec)
        assert pr_subgroup(dm, lat.trivial.id) == Fraction(1, G.order**2)
    for p in (2, 3, 7):
        _, lat, dm = pipeline(f"Z:{p}")
        assert pr_subgroup(dm, lat.whole.id) == 1 - Fraction(1, p * p)
    _, lat, dm = pipeline("Z:1")
    assert pr_subgroup(dm, 0) == 1


@pytest.mark.parametrize("spec,value", [("S:4", Fraction(3, 8)), ("D:10", Fraction(3, 5)), ("Q:8", Fraction(3, 8))])
def test_phi2_examples(spec, value):
    _, lat, dm = pipeline(spec)
    assert phi2(lat.whole, dm) == value
    assert phi2(lat.trivial, dm) == 1


@pytest.mark.parametrize(
    "spec,cyc,ab,nil,sol",
    [
        ("D:12", "3/8", "1/2", "1/2", "1"),
        ("A:4", "7/24", "1/3", "1/3", "1"),
        ("Z:1", "1", "1", "1", "1"),
        ("A:5", None, None, None, None),
    ],
)
def test_aggregate_examples(spec, cyc, ab, nil, sol):
    _, lat, dm = pipeline(spec)
    r = aggregate(dm, lat)
    if spec == "A:5":
        assert r.pr_solvable < 1
        return
    assert (r.pr_cyclic, r.pr_abelian, r.pr_nilpotent, r.pr_solvable) == tuple(map(Fraction, (cyc, ab, nil, sol)))


@pytest.mark.parametrize("spec,pred,value", [("S:3", "abelian", "1/2"), ("D:8", "abelian", "5/8")])
def test_oracle_examples(spec, pred, value):
    assert oracle_probability(make_group(spec), pred) == Fraction(value)


def test_oracle_equals_h():
    G = make_group("Q:8")
    assert oracle_probability(G, ElementSet.from_bits(0xFF)) == Fraction(3, 8)


@pytest.mark.parametrize("spec", ["S:3", "D:12", "X(Z:2,Z:2,Z:2)", "Q:12"])
def test_oracle_per_subgroup(spec):
    G, lat, dm = pipeline(spec)
    for H in lat:
        assert oracle_probability(G, H.carrier) == pr_subgroup(dm, H.id)


@pytest.mark.parametrize("spec", CORPUS)
def test_prob_invariants(spec):
    G, lat, dm = pipeline(spec)
    r = aggregate(dm, lat)
    assert sum(r.per_subgroup.values()) == 1
    assert all(q.denominator > 0 for q in r.per_subgroup.values())
    if G.order < 60:
        assert r.pr_solvable == 1


def test_prob_report_rejects_non_monotone():
    one = Fraction(1)
    with pytest.raises(ValueError):
        ProbReport({0: one}, one, Fraction(1, 2), one, one, one)
    with pytest.raises(ValueError):
        ProbReport({0: Fraction(1, 2)}, one, one, one, one, one)


# topo


def test_indices_z1_z2():
    _, _, dm = pipeline("Z:1")
    r = indices_closed_form(dm)
    assert (r.m1, r.m2, r.randic, r.harmonic, r.abc) == (2, 1, 1.0, 1.0, 0.0)
    _, _, dm = pipeline("Z:2")
    r = indices_closed_form(dm)
    assert (r.m1, r.m2) == (14, 10)
    assert math.isclose(r.randic, 1 + math.sqrt(3), rel_tol=1e-15)


@pytest.mark.parametrize("spec,m1,m2", [("S:3", 452, 416), ("D:8", 64 + 838, 838), ("Q:8", 1082, 1018)])
def test_zagreb_examples(spec, m1, m2):
    _, _, dm = pipeline(spec)
    for r in (indices_closed_form(dm), indices_direct(dm)):
        assert (r.m1, r.m2) == (m1, m2)


@pytest.mark.parametrize("spec", CORPUS)
def test_index_properties(spec):
    _, _, dm = pipeline(spec)
    r = indices_closed_form(dm)
    assert r.m1 == dm.group_order**2 + r.m2
    assert (r.abc == 0) == (dm.group_order == 1)
    assert r.harmonic < 2 * len(dm.l2_ids)
    assert agree(r, indices_direct(dm))


@pytest.mark.parametrize("spec", ["S:3", "Z:6", "X(Z:2,Z:2,Z:2)"])
def test_indices_on_explicit_graph(spec):
    G, _, dm = pipeline(spec)
    B = explicit_graph(G)
    assert agree(indices_from_edges(B.edges, B.nodes), indices_closed_form(dm))


def test_index_serialization():
    _, _, dm = pipeline("S:3")
    d = indices_closed_form(dm).as_dict()
    assert d["m1"] == 452 and isinstance(d["randic"], str)
    assert len(d["randic"].replace(".", "").lstrip("0")) <= 12
