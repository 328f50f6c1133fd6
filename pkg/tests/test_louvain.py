import numpy as np
import pytest

from rwlouvain import (
    Graph,
    GraphError,
    LouvainConfig,
    Partition,
    PlantedSpec,
    RwgpConfig,
    aggregate,
    build_graph,
    local_move_phase,
    louvain,
    modularity,
    planted_l_partition,
    rwgp_louvain,
)
from rwlouvain.bench.io import load_edge_list
from rwlouvain.louvain import _local_move

from helpers import barbell, best_modularity, random_graph, two_triangles

RW = LouvainConfig(rwgp=RwgpConfig())


def test_local_move_barbell():
    p = local_move_phase(barbell(), seed=0)
    assert sorted(c.tolist() for c in p.communities()) == [[0, 1, 2], [3, 4, 5]]
    assert modularity(barbell(), p) == pytest.approx(best_modularity(barbell()), abs=1e-12)


def test_local_move_edgeless():
    with pytest.raises(GraphError):
        local_move_phase(Graph.from_arrays(4, [], []))


def test_local_move_fixpoint_single_pass():
    g = barbell()
    comm, passes = _local_move(g, np.array([0, 0, 0, 1, 1, 1]), np.random.default_rng(0))
    assert passes == 1
    assert comm.tolist() == [0, 0, 0, 1, 1, 1]


def test_local_move_only_strict_gains(rng):
    # at the fixpoint no single move improves modularity
    from rwlouvain.quality import move_gain

    for _ in range(10):
        g = random_graph(rng, 12, 0.35, weighted=True)
        if g.total_weight_2m == 0:
            continue
        p = local_move_phase(g, seed=int(rng.integers(100)))
        for i in range(g.n):
            for c in range(p.k):
                assert move_gain(g, p, i, c) <= 1e-12


def test_isolated_vertices_stay_alone():
    g = build_graph(5, [(0, 1, 1), (1, 2, 1), (0, 2, 1)])
    for res in (louvain(g), rwgp_louvain(g, RW)):
        assert res.final.assign[3] != res.final.assign[4]
        assert np.sum(res.final.assign == res.final.assign[3]) == 1


@pytest.mark.parametrize("run", [louvain, lambda g: rwgp_louvain(g, RW)])
def test_barbell(run):
    res = run(barbell())
    assert res.final.k == 2
    assert res.modularity == pytest.approx(5 / 14, abs=1e-12)


def test_rwgp_matches_louvain_on_barbell():
    assert louvain(barbell()).final == rwgp_louvain(barbell(), RW).final


def test_disjoint_triangles():
    res = louvain(two_triangles())
    assert sorted(c.tolist() for c in res.final.communities()) == [[0, 1, 2], [3, 4, 5]]


def test_karate():
    g = load_edge_list("karate").graph
    for res in (louvain(g), rwgp_louvain(g, RW)):
        assert res.modularity >= 0.38
        assert 2 <= res.final.k <= 5


def test_edgeless_rejected():
    with pytest.raises(GraphError):
        louvain(Graph.from_arrays(3, [], []))


def test_rwgp_louvain_needs_config():
    with pytest.raises(ValueError):
        rwgp_louvain(barbell(), LouvainConfig())


@pytest.mark.parametrize("kw", [{"min_gain": -1.0}, {"max_levels": 0}])
def test_config_validation(kw):
    with pytest.raises(ValueError):
        LouvainConfig(**kw)


def test_trace_increasing_and_final_matches(rng):
    for seed in range(5):
        lg = planted_l_partition(PlantedSpec(l=8, g=12, p_in=0.5, p_out=0.06, seed=seed))
        for res in (louvain(lg.graph, LouvainConfig(seed=seed)), rwgp_louvain(lg.graph, LouvainConfig(seed=seed, rwgp=RwgpConfig()))):
            assert all(b > a for a, b in zip(res.trace, res.trace[1:]))
            assert res.levels == len(res.trace)
            assert modularity(lg.graph, res.final) == pytest.approx(res.modularity, abs=1e-12)


def test_deterministic(rng):
    lg = planted_l_partition(PlantedSpec(l=10, g=10, p_in=0.5, p_out=0.05, seed=3))
    cfg = LouvainConfig(seed=7, rwgp=RwgpConfig())
    assert rwgp_louvain(lg.graph, cfg).final == rwgp_louvain(lg.graph, cfg).final
    assert louvain(lg.graph, cfg).final == louvain(lg.graph, cfg).final


def test_aggregation_preserves_modularity(rng):
    for _ in range(30):
        g = random_graph(rng, 25, 0.2, weighted=True)
        if g.total_weight_2m == 0:
            continue
        p = Partition(rng.integers(0, 5, size=g.n))
        h = aggregate(g, p)
        assert modularity(h, Partition.singletons(h.n)) == pytest.approx(modularity(g, p), abs=1e-12)


def test_local_move_on_aggregated_graph_with_loops(rng):
    g = random_graph(rng, 30, 0.2)
    h = aggregate(g, Partition(rng.integers(0, 8, size=g.n)))
    p = local_move_phase(h, seed=1)
    assert modularity(h, p) >= modularity(h, Partition.singletons(h.n)) - 1e-12


def test_dominance_unclear_regime():
    for seed in range(10):
        lg = planted_l_partition(PlantedSpec(l=20, g=10, p_in=0.7, p_out=0.05, seed=seed))
        q_lv = louvain(lg.graph, LouvainConfig(seed=seed)).modularity
        q_rw = rwgp_louvain(lg.graph, LouvainConfig(seed=seed, rwgp=RwgpConfig())).modularity
        assert q_rw >= q_lv - 1e-9


def test_max_levels_one(rng):
    lg = planted_l_partition(PlantedSpec(l=10, g=10, p_in=0.3, p_out=0.05, seed=1))
    assert louvain(lg.graph, LouvainConfig(max_levels=1)).levels == 1
