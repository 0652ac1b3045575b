import math
import statistics

import pytest

from solonet import SoloNetwork, Verdict, random_graph, small_world_assessment, undirected_projection
from solonet.baselines import Thresholds, classify, format_table, random_graph_stats, ring_lattice
from solonet.errors import DegenerateNetwork, TooManyEdges
from solonet.metrics import clustering_coefficient


def test_random_graph_extremes():
    k5 = undirected_projection(random_graph(5, 10, 1))
    assert k5.m == 10 and all(len(a) == 4 for a in k5.adj)
    assert random_graph(5, 0, 1).edges == {}
    with pytest.raises(TooManyEdges):
        random_graph(5, 11)
    with pytest.raises(TooManyEdges):
        random_graph(5, -1)


@pytest.mark.parametrize("seed", [0, 1, 12345])
def test_random_graph_shape_and_reproducibility(seed):
    g = random_graph(30, 60, seed)
    assert g.n == 30 and len(g.edges) == 60
    assert all(x < y for x, y in g.edges)
    assert random_graph(30, 60, seed) == g
    assert random_graph(30, 60, seed + 1) != g


def test_random_graph_is_uniform_over_pairs():
    # each of the 6 pairs of K4 should be chosen in about half of G(4, 3) draws
    counts = {}
    for s in range(2000):
        for e in random_graph(4, 3, s).edges:
            counts[e] = counts.get(e, 0) + 1
    assert len(counts) == 6
    for c in counts.values():
        assert abs(c - 1000) < 4 * math.sqrt(2000 * 0.25)


def test_random_clustering_near_density():
    n, m = 100, 300
    ccs, _ = random_graph_stats(n, m, 100, seed=3)
    p = 2 * m / (n * (n - 1))
    se = statistics.stdev(ccs) / math.sqrt(len(ccs))
    assert abs(statistics.mean(ccs) - p) < 3 * se


def test_random_distance_decreases_with_links():
    means = [statistics.mean(random_graph_stats(50, m, 50, seed=11)[1]) for m in (100, 150, 250, 400)]
    assert means == sorted(means, reverse=True)


@pytest.mark.parametrize(
    "row, expected",
    [
        # Crossroads (2nd solo) and Red House: small worlds
        ((0.40, 0.04, 3.68, 4.29), Verdict.SMALL_WORLD),
        ((0.24, 0.02, 3.37, 5.00), Verdict.SMALL_WORLD),
        # Comfortably numb (1st solo): not a small world
        ((0.06, 0.03, 4.30, 4.03), Verdict.INDETERMINATE),
        # complete graph against itself
        ((1.0, 1.0, 1.0, 1.0), Verdict.NOT_SMALL_WORLD),
        ((0.0, 0.0, 2.0, 2.0), Verdict.NOT_SMALL_WORLD),
        ((0.5, 0.04, 12.9, 3.4), Verdict.NOT_SMALL_WORLD),
        ((0.5, 0.04, 6.0, 3.4), Verdict.INDETERMINATE),
    ],
)
def test_classify(row, expected):
    assert classify(*row) is expected


def test_thresholds_are_configurable():
    row = (0.06, 0.03, 4.30, 4.03)
    assert classify(*row, Thresholds(cc_factor=1.5)) is Verdict.SMALL_WORLD


def test_ring_lattice_is_not_small_world():
    rep = small_world_assessment(ring_lattice(100, 4), replicates=30, seed=5)
    assert rep.cc == 0.5
    assert rep.avg_dist > 2 * rep.avg_dist_rg
    assert rep.verdict is Verdict.NOT_SMALL_WORLD


def test_complete_graph_not_small_world():
    k5 = SoloNetwork.from_edges(5, [(i, j) for i in range(5) for j in range(i + 1, 5)])
    rep = small_world_assessment(k5, replicates=5, seed=0)
    assert (rep.cc, rep.cc_rg, rep.avg_dist, rep.avg_dist_rg) == (1.0, 1.0, 1.0, 1.0)
    assert rep.verdict is Verdict.NOT_SMALL_WORLD


def test_assessment_report_fields():
    net = ring_lattice(40, 6, [(0, 20), (5, 27), (10, 33)])
    rep = small_world_assessment(net, replicates=10, seed=9)
    assert (rep.n, rep.m, rep.replicates, rep.seed) == (40, 123, 10, 9)
    assert rep.cc == clustering_coefficient(net)
    assert small_world_assessment(net, replicates=10, seed=9) == rep
    assert rep.to_json()["verdict"] == rep.verdict.value
    assert "PCG64" in rep.rng
    table = format_table([rep])
    assert "cc (RG)" in table and "avg dist (RG)" in table


def test_degenerate_network():
    with pytest.raises(DegenerateNetwork):
        small_world_assessment(SoloNetwork.from_edges(4, [(0, 1), (2, 3)]))
    with pytest.raises(DegenerateNetwork):
        small_world_assessment(SoloNetwork((), {}))
    with pytest.raises(ValueError):
        ring_lattice(10, 3)
