"""Reference solvers for cross-checking.

* the layered reduction from generalized Büchi to plain Büchi games,
* a textbook nested fixpoint solver written over Python sets,
* exhaustive enumerators for triangles, orthogonal pairs and small dominions.

None of these use the array kernels.
"""
from __future__ import annotations

from itertools import combinations
from typing import Optional

import numpy as np

from .game import GameGraph, GenBuchiObjective, SolveResult, require_valid
from .genbuchi import solve_basic


def genbuchi_to_buchi(graph: GameGraph, objective: GenBuchiObjective):
    """k-layer Büchi game equivalent to ``(graph, objective)``.

    Copy ``j`` of vertex ``v`` is ``j * n + v``.  Edges leave layer ``j``
    towards layer ``j+1`` (cyclically) exactly at vertices of ``T_j``.  The
    target is the copy of the smallest target set inside its own layer
    (lowest index on ties).  Returns ``(game, target, layer_map)`` where
    ``layer_map[j, v]`` is the id of copy ``j`` of ``v``.
    """
    n, k = graph.n, objective.k
    masks = objective.masks(n)
    src, dst = graph.src, graph.dst
    parts = []
    for j in range(k):
        hop = masks[j][src]
        nxt = np.where(hop, (j + 1) % k, j)
        parts.append(np.stack([j * n + src, nxt * n + dst], axis=1))
    edges = np.concatenate(parts) if parts else np.zeros((0, 2), np.int64)
    game = GameGraph(k * n, np.tile(graph.owner, k), edges)
    sizes = objective.sizes
    pick = sizes.index(min(sizes))
    target = frozenset(pick * n + v for v in objective.targets[pick])
    layer_map = np.arange(k * n, dtype=np.int64).reshape(k, n)
    return game, target, layer_map


def solve_buchi(graph: GameGraph, target) -> SolveResult:
    """Single Büchi objective, solved by the basic algorithm with one target set."""
    return solve_basic(graph, GenBuchiObjective([target]))


def solve_via_buchi_reduction(graph: GameGraph, objective: GenBuchiObjective,
                              debug: bool = False) -> SolveResult:
    """Winning sets read off layer 0 of the reduced Büchi game.

    With ``debug`` every layer is checked to agree on every vertex.
    """
    require_valid(graph, objective)
    game, target, layer_map = genbuchi_to_buchi(graph, objective)
    res = solve_buchi(game, target)
    win = np.zeros(game.n, bool)
    if res.w1:
        win[list(res.w1)] = True
    layers = win[layer_map]
    if debug and layers.size and not np.all(layers == layers[0]):
        bad = np.nonzero(~np.all(layers == layers[0], axis=0))[0]
        raise AssertionError(f"layer copies disagree at vertices {bad.tolist()}")
    w1 = layers[0] if layers.size else np.zeros(graph.n, bool)
    return SolveResult(graph.n, frozenset(np.nonzero(w1)[0].tolist()),
                       frozenset(np.nonzero(~w1)[0].tolist()), (), "oracle")


# ------------------------------------------------------------ set-based fixpoint

def _succ_lists(graph: GameGraph):
    return [graph.successors(v).tolist() for v in range(graph.n)]


def naive_genbuchi_winning(graph: GameGraph, targets, vertices=None, owner=None) -> set:
    """Player-1 winning set via the nested fixpoint, restricted to ``vertices``.

    ``Z = nu Z. AND_l mu X. (T_l & cpre(Z)) | cpre(X)`` where ``cpre`` is the
    one-step controllable predecessor for player 1.
    """
    owner = graph.owner.tolist() if owner is None else list(owner)
    succ = _succ_lists(graph)
    universe = set(range(graph.n)) if vertices is None else set(vertices)
    succ = {v: [w for w in succ[v] if w in universe] for v in universe}
    targets = [set(t) & universe for t in targets]

    def cpre(s):
        out = set()
        for v in universe:
            ws = succ[v]
            if owner[v] == 1:
                if any(w in s for w in ws):
                    out.add(v)
            elif ws and all(w in s for w in ws):
                out.add(v)
        return out

    z = set(universe)
    while True:
        new_z = set(universe)
        for t in targets:
            base = t & cpre(z)
            x = set()
            while True:
                nx = base | cpre(x)
                if nx == x:
                    break
                x = nx
            new_z &= x
        if new_z == z:
            return z
        z = new_z


def naive_solve(graph: GameGraph, objective: GenBuchiObjective) -> SolveResult:
    w1 = naive_genbuchi_winning(graph, objective.targets)
    return SolveResult(graph.n, frozenset(w1), frozenset(set(range(graph.n)) - w1), (), "naive")


def naive_gr1_winning(graph: GameGraph, assumptions, guarantees) -> set:
    """Player-1 GR(1) winning set by peeling player-2 dominions with the set-based solver.

    A player-2 dominion outside Attr_1(U_l) is found as the player-1 winning
    set of the swapped game with the assumption sets as targets.
    """
    owner = graph.owner.tolist()
    swapped = [3 - o for o in owner]
    succ = _succ_lists(graph)
    alive = set(range(graph.n))

    def attr(player, seed, own):
        a = set(seed) & alive
        changed = True
        while changed:
            changed = False
            for v in alive - a:
                ws = [w for w in succ[v] if w in alive]
                if (own[v] == player and any(w in a for w in ws)) or \
                        (own[v] != player and all(w in a for w in ws)):
                    a.add(v)
                    changed = True
        return a

    while True:
        hit = None
        for u in guarantees:
            sub = alive - attr(1, u, owner)
            if not sub:
                continue
            s = naive_genbuchi_winning(graph, [set(t) & sub for t in assumptions], sub, swapped)
            if s:
                hit = s
                break
        if hit is None:
            return set(alive)
        alive -= attr(2, hit, owner)


# ------------------------------------------------------------ brute force

def brute_force_triangle(n: int, edges) -> bool:
    """Directed triangle x->y->z->x on distinct vertices, by an O(n^3) scan."""
    adj = np.zeros((n, n), bool)
    for u, v in edges:
        if u != v:
            adj[u, v] = True
    for x in range(n):
        for y in np.nonzero(adj[x])[0]:
            if y == x:
                continue
            for z in np.nonzero(adj[y])[0]:
                if z != x and z != y and adj[z, x]:
                    return True
    return False


def brute_force_ov(s1, s2) -> bool:
    """True iff some ``u in s1`` and ``v in s2`` have dot product 0."""
    return any(sum(a * b for a, b in zip(u, v)) == 0 for u in s1 for v in s2)


def _is_p2_closed(graph: GameGraph, members: set) -> bool:
    for v in members:
        ws = graph.successors(v).tolist()
        if graph.owner[v] == 2:
            if not all(w in members for w in ws):
                return False
        elif not any(w in members for w in ws):
            return False
    return True


def all_small_dominions(graph: GameGraph, objective: GenBuchiObjective,
                        max_size: Optional[int] = None) -> list:
    """Every nonempty player-1 dominion with at most ``max_size`` vertices."""
    if graph.n > 12:
        raise ValueError("dominion enumeration is limited to n <= 12")
    max_size = graph.n if max_size is None else max_size
    out = []
    for size in range(1, max_size + 1):
        for combo in combinations(range(graph.n), size):
            members = set(combo)
            if not _is_p2_closed(graph, members):
                continue
            win = naive_genbuchi_winning(graph, objective.targets, members)
            if win == members:
                out.append(frozenset(members))
    return out


def brute_force_small_dominions(graph: GameGraph, objective: GenBuchiObjective, h: int) -> list:
    """All player-1 dominions of size at most ``h``, by subset enumeration (n <= 12)."""
    return all_small_dominions(graph, objective, h)
