import pytest
from hypothesis import given, strategies as st

from itinerary_lab.addresses import critical_itineraries, omega_approx
from itinerary_lab.maps import MapSystem
from itinerary_lab.relations import (
    FiniteRelation, attractor_intervals, basin_and_dual, build_embedded_relation,
    build_itinerary_relation, chain_recurrent, conley_report, image, iterate,
    itinerary_report, maximal_attractor, omega_limit, transitive_components,
)
from itinerary_lab.words import star


@st.composite
def relations(draw, max_nodes=64):
    n = draw(st.integers(1, max_nodes))
    edges = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)),
                          max_size=3 * n))
    return FiniteRelation(range(n), edges)


def abc(edges):
    idx = {"a": 0, "b": 1, "c": 2}
    return FiniteRelation("abc", [(idx[i], idx[j]) for i, j in edges])


def test_image_and_iterate():
    r = abc([("a", "b"), ("b", "c")])
    assert r.names(image(r, {0})) == ["b"]
    assert iterate(r, 2).edges() == [(0, 2)]
    assert image(r, {2}) == frozenset()
    assert len(iterate(r, 0).edges()) == 9


def test_omega_examples():
    cycle = abc([("a", "b"), ("b", "c"), ("c", "a")])
    assert omega_limit(cycle, {0}) == cycle.nodes
    assert omega_limit(abc([("a", "b")]), {0}) == frozenset()
    assert maximal_attractor(cycle) == cycle.nodes


def test_chain_recurrence_examples():
    r = abc([("a", "b"), ("b", "a"), ("b", "c")])
    assert r.names(chain_recurrent(r)) == ["a", "b"]
    assert [r.names(c) for c in transitive_components(r)] == [["a", "b"]]
    two = FiniteRelation(range(4), [(0, 1), (1, 0), (2, 3), (3, 2)])
    assert transitive_components(two) == [frozenset({0, 1}), frozenset({2, 3})]
    loop = FiniteRelation(range(2), [(1, 1), (0, 1)])
    assert chain_recurrent(loop) == frozenset({1})


def test_basin_examples():
    cycle = abc([("a", "b"), ("b", "c"), ("c", "a")])
    assert basin_and_dual(cycle, cycle.nodes) == (cycle.nodes, frozenset())
    with pytest.raises(ValueError):
        basin_and_dual(cycle, {0})


def test_bad_edge():
    with pytest.raises(ValueError):
        FiniteRelation(range(2), [(0, 2)])


@given(relations(), st.data())
def test_partition_identities(r, data):
    seed = data.draw(st.sets(st.integers(0, len(r) - 1), min_size=1))
    rep = conley_report(r, seed)
    assert rep.chain_recurrent == frozenset().union(*rep.transitive_components)
    assert rep.basin | rep.dual_repeller == r.nodes
    assert not rep.basin & rep.dual_repeller
    assert rep.connecting == r.nodes - (rep.attractor | rep.dual_repeller)
    assert r.image(rep.attractor) == rep.attractor
    # brute-force basin: every point whose own limit set lands in the attractor
    assert rep.basin == frozenset(x for x in r.nodes if omega_limit(r, {x}) <= rep.attractor)


@given(relations(), st.data())
def test_omega_idempotent(r, data):
    seed = data.draw(st.sets(st.integers(0, len(r) - 1), min_size=1))
    w = omega_limit(r, seed)
    assert omega_limit(r, w) == w
    assert r.image(w) == w


@given(relations())
def test_transpose_identities(r):
    assert r.transpose().transpose() == r
    assert chain_recurrent(r) == chain_recurrent(r.transpose())


@given(relations(max_nodes=12), st.integers(1, 4))
def test_iterate_is_repeated_image(r, k):
    rk = iterate(r, k)
    for x in r.nodes:
        step = frozenset({x})
        for _ in range(k):
            step = r.image(step)
        assert rk.image({x}) == step


def test_depth_one_relation(sym):
    r = build_itinerary_relation(critical_itineraries(sym, 3), 1)
    assert r.labels == ["0", "1"]
    assert r.edges() == [(0, 0), (0, 1), (1, 0), (1, 1)]


@pytest.mark.parametrize("k", range(1, 11))
def test_maximal_attractor_is_prefix_set(sym, lopsided, k):
    for s in (sym, lopsided):
        r = build_itinerary_relation(critical_itineraries(s, k + 1), k)
        assert r.names(maximal_attractor(r)) == list(omega_approx(s, k).words)


@pytest.mark.parametrize("k", [6, 8, 10])
def test_itinerary_report(sym, k):
    crit = critical_itineraries(sym, k + 1)
    r, rep = itinerary_report(crit, k)
    ends = {"0" * k, "1" * k}
    recurrent = set(r.names(rep.chain_recurrent))
    assert ends <= recurrent
    lo, hi = crit.beta.word[:k], crit.alpha.word[:k]
    assert all(w in ends or lo <= w <= hi for w in recurrent)
    assert ends <= set(r.names(rep.dual_repeller))
    middle = [c for c in rep.transitive_components if not set(r.names(c)) <= ends]
    assert middle and all(c <= rep.attractor for c in middle)


def test_embedded_relation_mirror_at_symmetry(sym):
    k = 8
    r = build_embedded_relation(critical_itineraries(sym, k + 1), k)
    assert r.labels[5].lo == 5 / 256 and r.labels[5].hi == 6 / 256
    ivs = attractor_intervals(r)
    assert all(p[1] <= q[0] for p, q in zip(ivs, ivs[1:]))
    assert sorted((1 - hi, 1 - lo) for lo, hi in ivs) == ivs


def test_prefix_set_star_closed_at_symmetry(sym):
    words = omega_approx(sym, 9).as_set()
    assert {star(w) for w in words} == words


def test_json_shape(sym):
    r, rep = itinerary_report(critical_itineraries(sym, 3), 2)
    data = r.to_json()
    assert data["nodes"] == ["00", "01", "10", "11"]
    assert set(rep.to_json(r)) == {"maximal_attractor", "chain_recurrent",
                                   "transitive_components", "attractor", "basin",
                                   "dual_repeller", "connecting"}


def test_coarse_depth_is_one_component(sym):
    r, rep = itinerary_report(critical_itineraries(sym, 5), 4)
    assert rep.transitive_components == [r.nodes]


def test_lopsided_relation_endpoints_repel():
    s = MapSystem.affine("7/10", "11/20", "3/5", mode="rational")
    r, rep = itinerary_report(critical_itineraries(s, 9), 8)
    assert {"00000000", "11111111"} <= set(r.names(rep.dual_repeller))


@pytest.mark.parametrize("system,k", [("sym", 5), ("sym", 7), ("sym", 9),
                                      ("lopsided", 5), ("lopsided", 8), ("lopsided", 9)])
def test_boundary_excess_is_confined_to_neighbours(system, k, request):
    # kept boundary edges can add a word just outside [beta|k, alpha|k]
    s = request.getfixturevalue(system)
    crit = critical_itineraries(s, k + 1)
    r, rep = itinerary_report(crit, k)
    words = list(omega_approx(s, k).words)
    lo, hi = crit.beta.word[:k], crit.alpha.word[:k]
    band = [i for i, w in enumerate(words) if lo <= w <= hi]
    neighbours = {words[band[0] - 1], words[band[-1] + 1]}
    excess = set(r.names(rep.chain_recurrent)) - {"0" * k, "1" * k} - {words[i] for i in band}
    assert excess <= neighbours
