"""GR(1) games: the basic solver and the solver with bounded dominion search.

Player 1 wins a play when it visits every assumption set infinitely often
only if it also visits every guarantee set infinitely often.  Player-2
dominions are sets from which player 2 can avoid some guarantee set forever
while meeting all assumptions; each solver removes their attractors until
none is left.
"""
from __future__ import annotations

import math
from typing import Optional

import numpy as np

from .arena import Arena, ceil_log2
from .game import (P1, P2, GameGraph, GR1Objective, IterationRecord, SolveResult,
                   require_valid)
from .genbuchi import solve_on_subarena
from .progress import lift_on_csr


def _frozen_ids(mask) -> frozenset:
    return frozenset(np.nonzero(mask)[0].tolist())


def _large_search(graph, arena: Arena, lmasks, umasks, sub_algo):
    """First guarantee index with a nonempty assumption-player region outside Attr_1(U)."""
    alive = arena.alive
    for ell in range(umasks.shape[0]):
        y = arena.attractor_rank(P1, umasks[ell] & alive) >= 0
        sub = alive & ~y
        if not sub.any():
            continue
        s = solve_on_subarena(graph, True, sub, lmasks & sub[None, :], sub_algo)
        if s.any():
            return ell, s
    return None


def _dominion_search(arena: Arena, lmasks, umasks, kmax: int):
    """Bounded search over level graphs; returns ``(ell, level, mask)`` or None."""
    alive = arena.alive
    levels = max(1, ceil_log2(2 * kmax))
    swapped = (3 - arena.owner).astype(np.int8)
    for i in range(1, levels + 1):
        level = arena.build_level(i)
        for ell in range(umasks.shape[0]):
            y = arena.level_attractor_rank(level, P1, (umasks[ell] | level.z) & alive) >= 0
            sub = alive & ~y
            size = int(sub.sum())
            if size == 0:
                continue
            h = min(1 << i, size)
            found = lift_on_csr(level.out_ptr, level.out_dst, level.in_ptr, level.in_src,
                                swapped, sub, lmasks, h)
            if found.any():
                return ell, i, found
    return None


def find_small_dominion(graph: GameGraph, objective: GR1Objective, alive=None,
                        kmax: int = 1) -> frozenset:
    """A player-2 dominion of the GR(1) game on ``graph[alive]``, searched up to size ~``2*kmax``.

    Returns the empty set only when every player-2 dominion has a player-2
    attractor of more than ``kmax`` vertices.
    """
    if kmax < 1:
        raise ValueError("kmax must be at least 1")
    arena = Arena(graph, alive)
    hit = _dominion_search(arena, objective.assumption_masks(graph.n),
                           objective.guarantee_masks(graph.n), kmax)
    return frozenset() if hit is None else _frozen_ids(hit[2])


def find_small_dominion_witness(graph: GameGraph, objective: GR1Objective, alive=None,
                                kmax: int = 1):
    """Like :func:`find_small_dominion` but returns ``(set, guarantee index, level)`` or None."""
    arena = Arena(graph, alive)
    hit = _dominion_search(arena, objective.assumption_masks(graph.n),
                           objective.guarantee_masks(graph.n), kmax)
    if hit is None:
        return None
    return _frozen_ids(hit[2]), hit[0], hit[1]


def _finish(arena, trace, algo, kmax=None) -> SolveResult:
    alive = arena.alive
    extra = {} if kmax is None else {"kmax": kmax}
    return SolveResult(arena.n, _frozen_ids(alive), _frozen_ids(~alive), tuple(trace), algo,
                       None, extra)


def solve_gr1_basic(graph: GameGraph, objective: GR1Objective, sub_algo: str = "fast",
                    check: bool = True) -> SolveResult:
    """Winning sets by repeated large-dominion search (O(k1 * k2 * n^3) with the basic sub-solver).

    ``sub_algo`` picks the generalized Büchi solver for the nested games.
    """
    if check:
        require_valid(graph, objective)
    arena = Arena(graph)
    lmasks = objective.assumption_masks(graph.n)
    umasks = objective.guarantee_masks(graph.n)
    trace = []
    while True:
        hit = _large_search(graph, arena, lmasks, umasks, sub_algo)
        if hit is None:
            break
        ell, s = hit
        d = arena.attractor_rank(P2, s) >= 0
        trace.append(IterationRecord(_frozen_ids(s), _frozen_ids(d), ell, None, "large"))
        arena.remove(d)
    return _finish(arena, trace, "basic")


def solve_gr1_fast(graph: GameGraph, objective: GR1Objective, sub_algo: str = "fast",
                   kmax: Optional[int] = None, check: bool = True) -> SolveResult:
    """Winning sets by the O(k1 * k2 * n^2.5) algorithm.

    Each iteration first tries the bounded dominion search with
    ``kmax = ceil(sqrt(n))`` and falls back to the large search.
    """
    if check:
        require_valid(graph, objective)
    kmax = max(1, ceil_sqrt(graph.n)) if kmax is None else kmax
    if kmax < 1:
        raise ValueError("kmax must be at least 1")
    arena = Arena(graph)
    lmasks = objective.assumption_masks(graph.n)
    umasks = objective.guarantee_masks(graph.n)
    trace = []
    while arena.size:
        hit = _dominion_search(arena, lmasks, umasks, kmax)
        if hit is not None:
            ell, level, s = hit
            source = "small"
        else:
            hit = _large_search(graph, arena, lmasks, umasks, sub_algo)
            if hit is None:
                break
            ell, s = hit
            level, source = None, "large"
        d = arena.attractor_rank(P2, s) >= 0
        trace.append(IterationRecord(_frozen_ids(s), _frozen_ids(d), ell, level, source))
        arena.remove(d)
    return _finish(arena, trace, "fast", kmax)


def ceil_sqrt(n: int) -> int:
    return 0 if n <= 0 else math.isqrt(n - 1) + 1
