"""Attractors with ranks and memoryless strategies, and closed-set checks."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import kernels
from .game import GameGraph, Player, as_mask


@dataclass(frozen=True)
class AttractorResult:
    """``rank[v]`` is the entry layer of ``v`` (-1 outside the attractor)."""

    player: int
    rank: np.ndarray
    members: frozenset
    strategy: dict

    def member_mask(self) -> np.ndarray:
        return self.rank >= 0


def _alive_mask(graph: GameGraph, alive) -> np.ndarray:
    return np.ones(graph.n, bool) if alive is None else as_mask(alive, graph.n)


def attractor_rank(graph: GameGraph, player, seed, alive=None, owner=None) -> np.ndarray:
    """Rank array of Attr_player(seed) inside ``alive``; -1 marks non-members."""
    alive = _alive_mask(graph, alive)
    owner = graph.owner if owner is None else owner
    seed = as_mask(seed, graph.n)
    live = alive[graph.src] & alive[graph.dst]
    odeg = np.bincount(graph.src[live], minlength=graph.n).astype(np.int64)
    return kernels.attractor_kernel(graph.in_ptr, graph.in_src, owner, odeg, alive,
                                    int(player), seed, int(alive.sum()))


def strategy_from_rank(graph: GameGraph, rank: np.ndarray, player, alive=None,
                       owner=None) -> dict:
    """Attractor strategy for ``player``'s members of positive rank.

    Picks the successor of lowest rank, ties broken by lowest vertex id.
    """
    alive = _alive_mask(graph, alive)
    owner = graph.owner if owner is None else owner
    out = {}
    for v in np.nonzero((rank > 0) & (owner == int(player)))[0]:
        succ = graph.successors(v)
        succ = succ[alive[succ] & (rank[succ] >= 0)]
        r = rank[succ]
        best = succ[r == r.min()].min()
        out[int(v)] = int(best)
    return out


def attractor(graph: GameGraph, player, seed, alive=None, owner=None) -> AttractorResult:
    """Attr_player(graph[alive], seed) with ranks and a memoryless strategy.

    ``owner`` overrides the ownership vector (used for swapped-player views).
    Seed vertices outside ``alive`` are ignored.
    """
    rank = attractor_rank(graph, player, seed, alive, owner)
    members = frozenset(np.nonzero(rank >= 0)[0].tolist())
    strat = strategy_from_rank(graph, rank, player, alive, owner)
    return AttractorResult(int(player), rank, members, strat)


def is_closed(graph: GameGraph, player, vertices, alive=None, owner=None) -> bool:
    """True iff ``player`` cannot leave ``vertices`` and the opponent can stay inside.

    ``player``-owned members need every alive successor inside, opponent-owned
    members need at least one successor inside.
    """
    alive = _alive_mask(graph, alive)
    owner = graph.owner if owner is None else owner
    inside = as_mask(vertices, graph.n) & alive
    live = alive[graph.src] & alive[graph.dst]
    src = graph.src[live]
    dst_in = inside[graph.dst[live]]
    mine = owner[src] == int(player)
    # player-owned members with an edge leaving the set
    if np.any(inside[src] & mine & ~dst_in):
        return False
    opp_members = inside & (owner != int(player))
    has_inside = np.zeros(graph.n, bool)
    has_inside[src[dst_in & ~mine]] = True
    return bool(np.all(has_inside[opp_members]))


def opponent(player) -> Player:
    return Player(3 - int(player))


def closed_violations(graph: GameGraph, player, vertices, alive=None, owner=None) -> list:
    """Vertices that break closedness of ``vertices`` for ``player`` (for diagnostics)."""
    alive = _alive_mask(graph, alive)
    owner = graph.owner if owner is None else owner
    inside = as_mask(vertices, graph.n) & alive
    bad = []
    for v in np.nonzero(inside)[0]:
        succ = graph.successors(v)
        succ = succ[alive[succ]]
        if owner[v] == int(player):
            if not np.all(inside[succ]):
                bad.append(int(v))
        elif not np.any(inside[succ]):
            bad.append(int(v))
    return bad


def check_attractor_strategy(graph: GameGraph, result: AttractorResult, seed,
                             alive=None, owner: Optional[np.ndarray] = None) -> bool:
    """Exhaustive check that the strategy forces the seed from every member within n steps."""
    alive = _alive_mask(graph, alive)
    owner = graph.owner if owner is None else owner
    seed = as_mask(seed, graph.n) & alive
    members = result.rank >= 0
    # longest adversarial distance to the seed, by backward fixpoint
    dist = np.where(seed, 0, -1)
    for _ in range(graph.n + 1):
        changed = False
        for v in np.nonzero(members & ~seed)[0]:
            if owner[v] == result.player:
                w = result.strategy.get(int(v))
                if w is None or not members[w]:
                    return False
                d = dist[w] + 1 if dist[w] >= 0 else -1
            else:
                succ = graph.successors(v)
                succ = succ[alive[succ]]
                if not np.all(members[succ]) or np.any(dist[succ] < 0):
                    d = -1
                else:
                    d = int(dist[succ].max()) + 1
            if d != dist[v]:
                dist[v] = d
                changed = True
        if not changed:
            break
    return bool(np.all(dist[members] >= 0) and np.all(dist[members] <= graph.n))
