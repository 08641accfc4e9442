import numpy as np
import pytest

from buchigames import (P1, GameGraph, GenBuchiObjective, build_level, is_closed, solve_basic,
                        solve_fast, swap_players)
from buchigames.arena import ceil_log2
from buchigames.oracle import naive_solve

from corpora import genbuchi_corpus, ids

NAME = dict(zip("abcdefghij", range(10)))


def edges_named(text):
    return {(NAME[p[0]], NAME[p[1]]) for p in text.split()}


FIG1_ALL = edges_named("ab gb hb fb cb gh ih ch ba bf cg ci cd dc de ed ej fa fg hc id jd je")
FIG1_LEVEL1 = FIG1_ALL - edges_named("cb cd ch fb")
FIG1_LEVEL2 = FIG1_ALL - edges_named("cb")


def reference_level(graph, alive, i):
    """Level graph straight from its definition, on Python lists."""
    cap = 2 ** i
    live = lambda u, v: alive[u] and alive[v]
    odeg = {u: sum(1 for w in graph.successors(u).tolist() if alive[w]) for u in range(graph.n) if alive[u]}
    edges = set()
    for v in range(graph.n):
        if not alive[v]:
            continue
        preds = [u for u in graph.predecessors(v).tolist() if alive[u]]
        edges |= {(u, v) for u in preds[:cap]}
    for u, d in odeg.items():
        if d <= cap:
            edges |= {(u, w) for w in graph.successors(u).tolist() if live(u, w)}
    lodeg = {u: sum(1 for (a, _) in edges if a == u) for u in odeg}
    z = {v for v in odeg if (graph.owner[v] == 2 and lodeg[v] == 0) or (graph.owner[v] == 1 and odeg[v] > cap)}
    return edges, z


def test_figure1_partition(fig1):
    g, obj = fig1
    for solve in (solve_basic, solve_fast):
        res = solve(g, obj)
        assert res.w1 == ids("abcfghi")
        assert res.w2 == ids("dej")


def test_figure1_fast_trace(fig1):
    g, obj = fig1
    res = solve_fast(g, obj)
    assert len(res.trace) == 1
    rec = res.trace[0]
    assert rec.found == ids("ej")
    assert rec.removed == ids("dej")
    assert rec.witness == 1
    assert rec.level == 1
    assert res.final_level == 3


def test_figure1_basic_trace(fig1):
    g, obj = fig1
    res = solve_basic(g, obj)
    assert [(r.found, r.removed, r.witness) for r in res.trace] == [(ids("ej"), ids("dej"), 1)]
    assert res.iterations == 2


def test_figure1_level_graphs(fig1):
    g, _ = fig1
    alive = np.ones(10, bool)
    l1 = build_level(g, alive, 1)
    assert l1.edge_set() == FIG1_LEVEL1
    assert set(np.nonzero(l1.z)[0].tolist()) == ids("c")
    l2 = build_level(g, alive, 2)
    assert l2.edge_set() == FIG1_LEVEL2
    assert set(np.nonzero(l2.z)[0].tolist()) == ids("c")
    l3 = build_level(g, alive, 3)
    assert l3.edge_set() == FIG1_ALL
    assert not l3.z.any()
    assert l3.top


def test_build_level_range(fig1):
    g, _ = fig1
    with pytest.raises(ValueError):
        build_level(g, np.ones(10, bool), 0)
    with pytest.raises(ValueError):
        build_level(g, np.ones(10, bool), ceil_log2(10) + 1)


def test_build_level_matches_definition():
    for seed, g, _ in genbuchi_corpus(60, max_n=30):
        rng = np.random.default_rng(seed)
        for swapped in (False, True):
            h = swap_players(g) if swapped else g
            alive = rng.random(g.n) < 0.8
            if alive.sum() < 2:
                continue
            top = ceil_log2(int(alive.sum()))
            for i in range(1, top + 1):
                lvl = build_level(h, alive, i)
                edges, z = reference_level(h, alive, i)
                assert lvl.edge_set() == edges, (seed, i)
                assert set(np.nonzero(lvl.z)[0].tolist()) == z, (seed, i)
                assert lvl.m <= 2 * 2 ** i * int(alive.sum())
                assert np.array_equal(lvl.out_degree, np.bincount(lvl.in_src, minlength=g.n))


def test_empty_target_loses_everywhere():
    g = GameGraph(3, [1, 2, 1], [(0, 1), (1, 2), (2, 0), (0, 0)])
    obj = GenBuchiObjective([[0], []])
    for solve in (solve_basic, solve_fast):
        assert solve(g, obj).w1 == frozenset()


def test_self_loop_in_both_targets():
    g = GameGraph(1, [1], [(0, 0)])
    obj = GenBuchiObjective([[0], [0]])
    for solve in (solve_basic, solve_fast):
        assert solve(g, obj).w1 == {0}


def test_full_target_single_iteration():
    g = GameGraph(4, [1, 2, 1, 2], [(0, 1), (1, 2), (2, 3), (3, 0), (1, 3)])
    obj = GenBuchiObjective([range(4)])
    for solve in (solve_basic, solve_fast):
        res = solve(g, obj)
        assert res.w1 == set(range(4))
        assert res.iterations == 1 and res.trace == ()


def test_sorted_targets_report_original_witness(fig1):
    g, obj = fig1
    res = solve_basic(g, obj, sort_targets=True)
    assert res.trace[0].witness == 1
    assert res.w1 == ids("abcfghi")


def test_agrees_with_set_based_solver():
    for _, g, obj in genbuchi_corpus(150):
        want = naive_solve(g, obj).w1
        assert solve_basic(g, obj).w1 == want
        assert solve_fast(g, obj).w1 == want
        assert solve_basic(g, obj, sort_targets=True).w1 == want


def test_trace_laws():
    for _, g, obj in genbuchi_corpus(150):
        basic = solve_basic(g, obj)
        assert basic.iterations <= 2 * obj.sizes[0] + 2
        fast = solve_fast(g, obj)
        for res in (basic, fast):
            alive = np.ones(g.n, bool)
            seen = set()
            for rec in res.trace:
                assert rec.found <= rec.removed
                assert not rec.found & obj.targets[rec.witness]
                assert is_closed(g, P1, rec.found, alive)
                assert not seen & rec.removed
                seen |= rec.removed
                alive[list(rec.removed)] = False
            assert seen == res.w2
            assert res.w1 | res.w2 == set(range(g.n)) and not res.w1 & res.w2
        for rec in fast.trace:
            if rec.level > 1:
                assert len(rec.removed) > 2 ** (rec.level - 1)


def test_extra_target_never_grows_winning_set():
    for seed, g, obj in genbuchi_corpus(80):
        rng = np.random.default_rng(seed)
        extra = np.nonzero(rng.random(g.n) < 0.4)[0].tolist()
        bigger = GenBuchiObjective(list(obj.targets) + [extra])
        assert solve_fast(g, bigger).w1 <= solve_fast(g, obj).w1
