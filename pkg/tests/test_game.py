import numpy as np
import pytest

from buchigames import (P1, P2, GameGraph, GenBuchiObjective, GR1Objective, InvalidGameError,
                        NotClosedError, induced_subgame, swap_players, validate)
from buchigames.attractors import attractor
from buchigames.game import require_valid, restrict_targets
from buchigames.reductions import gen_random_game

from corpora import genbuchi_corpus, ids


def test_self_loop_game_is_valid():
    g = GameGraph(1, [1], [(0, 0)])
    assert validate(g) == []


def test_sink_is_reported():
    g = GameGraph(2, [1, 1], [(0, 1)])
    assert validate(g) == ["vertex 1 has out-degree 0"]


def test_duplicate_edge_is_reported():
    g = GameGraph(1, [2], [(0, 0), (0, 0)])
    assert validate(g) == ["duplicate edge 0->0"]


def test_bad_owner_is_reported():
    g = GameGraph(1, [3], [(0, 0)])
    assert any("owner 3" in p for p in validate(g))


def test_constructor_rejects_out_of_range_endpoints():
    with pytest.raises(ValueError, match="outside"):
        GameGraph(2, [1, 1], [(0, 2)])
    with pytest.raises(ValueError, match="owner vector"):
        GameGraph(2, [1], [(0, 1)])


def test_require_valid_collects_objective_problems():
    g = GameGraph(1, [1], [(0, 0)])
    with pytest.raises(InvalidGameError) as exc:
        require_valid(g, GenBuchiObjective([[0, 5]]))
    assert exc.value.violations == ["target 0 contains vertex 5 outside 0..0"]


def test_figure1_is_valid(fig1):
    g, obj = fig1
    assert g.n == 10 and g.m == 23
    assert validate(g) == []
    assert obj.targets == (ids("aei"), ids("bd"))


def test_figure1_swap_owners(fig1):
    g, _ = fig1
    s = swap_players(g)
    assert set(np.nonzero(s.owner == 2)[0].tolist()) == ids("bci")
    assert set(np.nonzero(s.owner == 1)[0].tolist()) == ids("adefghj")


def test_swap_all_p1_gives_all_p2():
    g = GameGraph(3, [1, 1, 1], [(0, 1), (1, 2), (2, 0)])
    assert np.all(swap_players(g).owner == 2)


def test_predecessors_list_p2_sources_first():
    # vertex 0 has predecessors 1 (P1), 2 (P2), 3 (P1), 4 (P2) in input order
    owner = [1, 1, 2, 1, 2]
    edges = [(1, 0), (2, 0), (3, 0), (4, 0), (0, 1), (0, 2), (0, 3), (0, 4)]
    g = GameGraph(5, owner, edges)
    assert g.predecessors(0).tolist() == [2, 4, 1, 3]
    assert g.successors(0).tolist() == [1, 2, 3, 4]


def test_swap_is_an_involution_and_keeps_validity():
    for _, g, _ in genbuchi_corpus(40):
        s = swap_players(g)
        assert validate(s) == []
        assert swap_players(s) == g
        assert s.edge_set() == g.edge_set()


def test_adjacency_round_trip():
    for _, g, _ in genbuchi_corpus(40):
        for u, v in g.edge_set():
            assert v in g.successors(u).tolist()
            assert u in g.predecessors(v).tolist()
        assert int(g.out_degree.sum()) == int(g.in_degree.sum()) == g.m


def test_induced_subgame_keeps_exactly_inner_edges():
    for seed in range(20):
        g, _ = gen_random_game(12, 40, 1, seed=seed)
        # the complement of an attractor keeps a successor for every vertex
        keep = set(range(12)) - attractor(g, P2, {seed % 12}).members
        if not keep:
            continue
        sub, old_to_new, new_to_old = induced_subgame(g, keep)
        mapped = {(int(new_to_old[u]), int(new_to_old[v])) for u, v in sub.edge_set()}
        assert mapped == {(u, v) for u, v in g.edge_set() if u in keep and v in keep}
        assert all(old_to_new[new_to_old[i]] == i for i in range(sub.n))


def test_induced_subgame_whole_graph_is_a_copy(fig1):
    g, _ = fig1
    sub, old_to_new, new_to_old = induced_subgame(g, range(g.n))
    assert sub == g
    assert old_to_new.tolist() == list(range(g.n))


def test_figure1_subgame_without_player2_attractor(fig1):
    g, _ = fig1
    keep = set(range(10)) - ids("dej")
    sub, _, new_to_old = induced_subgame(g, keep)
    assert sub.n == 7
    assert np.all(sub.out_degree >= 1)
    assert set(new_to_old.tolist()) == keep


def test_figure1_subgame_on_single_vertex_fails(fig1):
    g, _ = fig1
    with pytest.raises(NotClosedError) as exc:
        induced_subgame(g, ids("a"))
    assert exc.value.vertices == [0]


def test_restrict_targets_drops_removed_vertices():
    old_to_new = np.array([0, -1, 1])
    assert restrict_targets([{0, 1, 2}, {1}], old_to_new) == [{0, 1}, set()]


def test_objectives_require_sets():
    with pytest.raises(ValueError):
        GenBuchiObjective([])
    with pytest.raises(ValueError):
        GR1Objective([[0]], [])
    obj = GenBuchiObjective([[], [1, 0]])
    assert obj.k == 2 and obj.sizes == [0, 2]
    assert obj.masks(3).tolist() == [[False, False, False], [True, True, False]]


def test_player_values():
    assert int(P1) == 1 and int(P2) == 2
