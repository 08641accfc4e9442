import numpy as np
import pytest

from buchigames import (P1, GameGraph, GenBuchiObjective, GR1Objective, find_small_dominion, is_closed,
                        solve_basic, solve_gr1_basic, solve_gr1_fast, swap_players)
from buchigames.gr1 import ceil_sqrt, find_small_dominion_witness
from buchigames.oracle import naive_gr1_winning

from corpora import cycle_gr1, gr1_corpus


def three_vertex():
    # s=0 belongs to player 2 and picks a=1 or b=2; both loop on themselves
    g = GameGraph(3, [2, 1, 1], [(0, 1), (0, 2), (1, 1), (2, 2)])
    return g, GR1Objective([[1, 2]], [[1]])


def test_unsatisfiable_assumption_wins_everywhere():
    g = GameGraph(3, [1, 2, 2], [(0, 1), (1, 2), (2, 0), (1, 1)])
    obj = GR1Objective([[0, 1], []], [[2]])
    for solve in (solve_gr1_basic, solve_gr1_fast):
        assert solve(g, obj).w1 == {0, 1, 2}
    assert find_small_dominion(g, obj, kmax=2) == frozenset()


def test_impossible_guarantee_loses_everywhere():
    g = GameGraph(3, [1, 2, 2], [(0, 1), (1, 2), (2, 0), (1, 1)])
    obj = GR1Objective([range(3)], [[0], []])
    for solve in (solve_gr1_basic, solve_gr1_fast):
        assert solve(g, obj).w1 == frozenset()


def test_three_vertex_game():
    g, obj = three_vertex()
    assert naive_gr1_winning(g, obj.assumptions, obj.guarantees) == {1}
    for solve in (solve_gr1_basic, solve_gr1_fast):
        res = solve(g, obj)
        assert res.w1 == {1}
        assert res.w2 == {0, 2}


def test_three_vertex_small_dominion():
    g, obj = three_vertex()
    dom = find_small_dominion(g, obj, kmax=3)
    assert dom and dom <= {0, 2}
    assert not dom & obj.guarantees[0]
    found, witness, level = find_small_dominion_witness(g, obj, kmax=3)
    assert found == dom and witness == 0 and level >= 1


def test_kmax_must_be_positive():
    g, obj = three_vertex()
    with pytest.raises(ValueError):
        find_small_dominion(g, obj, kmax=0)


def test_agrees_with_set_based_solver():
    for _, g, obj in gr1_corpus(120):
        want = naive_gr1_winning(g, obj.assumptions, obj.guarantees)
        assert solve_gr1_basic(g, obj).w1 == want
        assert solve_gr1_fast(g, obj).w1 == want
        assert solve_gr1_basic(g, obj, sub_algo="basic").w1 == want


def test_partition_and_inclusions():
    for _, g, obj in gr1_corpus(150, base=30_000):
        res = solve_gr1_fast(g, obj)
        assert res.w1 | res.w2 == set(range(g.n)) and not res.w1 & res.w2
        assert solve_basic(g, GenBuchiObjective(obj.guarantees)).w1 <= res.w1
        # where player 2 cannot visit every assumption set, player 1 wins
        p2_meets_all = solve_basic(swap_players(g), GenBuchiObjective(obj.assumptions)).w1
        assert set(range(g.n)) - p2_meets_all <= res.w1


def test_removed_dominions_are_closed_and_avoid_their_guarantee():
    for _, g, obj in gr1_corpus(150, base=40_000):
        for res in (solve_gr1_basic(g, obj), solve_gr1_fast(g, obj)):
            alive = np.ones(g.n, bool)
            for rec in res.trace:
                assert is_closed(g, P1, rec.found, alive)
                assert not rec.found & obj.guarantees[rec.witness]
                alive[list(rec.removed)] = False
            assert set(np.nonzero(~alive)[0].tolist()) == res.w2


def test_small_dominions_on_corpus_are_closed():
    for _, g, obj in gr1_corpus(80, base=50_000):
        dom = find_small_dominion(g, obj, kmax=ceil_sqrt(g.n))
        hit = find_small_dominion_witness(g, obj, kmax=ceil_sqrt(g.n))
        assert (hit is None) == (not dom)
        if dom:
            assert is_closed(g, P1, dom)
            assert not dom & obj.guarantees[hit[1]]


def test_long_cycle_needs_the_large_search():
    for n in (10, 17, 30, 45):
        g, obj = cycle_gr1(n, n)
        assert find_small_dominion(g, obj, kmax=ceil_sqrt(n)) == frozenset()
        res = solve_gr1_fast(g, obj)
        assert res.w2 == set(range(n))
        assert [r.source for r in res.trace] == ["large"]
        assert len(res.trace[0].removed) > ceil_sqrt(n)
        assert res.extra["kmax"] == ceil_sqrt(n)


def test_iteration_size_laws_with_small_kmax():
    large = 0
    for _, g, obj in gr1_corpus(150, base=60_000):
        for kmax in (1, 2):
            res = solve_gr1_fast(g, obj, kmax=kmax)
            assert res.w1 == solve_gr1_basic(g, obj).w1
            for rec in res.trace:
                if rec.source == "large":
                    large += 1
                    assert len(rec.removed) > kmax
                elif rec.level > 1:
                    assert len(rec.removed) > 2 ** (rec.level - 1)
    assert large > 0


def test_ceil_sqrt():
    assert [ceil_sqrt(x) for x in (0, 1, 2, 4, 5, 9, 10, 2000)] == [0, 1, 2, 2, 3, 3, 4, 45]
