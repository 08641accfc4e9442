"""Generalized Büchi games: the basic solver and the level-graph solver.

Both repeatedly find a player-2 dominion ``S`` (a player-1 closed set that
misses some target set), remove its player-2 attractor ``D`` and stop when
no such set exists.  What remains is player 1's winning set.
"""
from __future__ import annotations

import numpy as np

from .arena import Arena, LevelGraph
from .game import (P1, P2, GameGraph, GenBuchiObjective, IterationRecord, SolveResult,
                   as_mask, require_valid)


def _target_order(objective: GenBuchiObjective, sort_targets: bool) -> list:
    order = list(range(objective.k))
    if sort_targets:
        order.sort(key=lambda i: len(objective.targets[i]))
    return order


def _result(arena: Arena, trace, algo, final_level=None) -> SolveResult:
    alive = arena.alive
    return SolveResult(arena.n, frozenset(np.nonzero(alive)[0].tolist()),
                       frozenset(np.nonzero(~alive)[0].tolist()), tuple(trace), algo, final_level)


def _record(found, removed, witness, level, source):
    return IterationRecord(frozenset(np.nonzero(found)[0].tolist()),
                           frozenset(np.nonzero(removed)[0].tolist()), witness, level, source)


def build_level(graph: GameGraph, alive, i: int) -> LevelGraph:
    """Level ``i`` of the hierarchical decomposition of ``graph[alive]``."""
    arena = Arena(graph, alive)
    top = arena.num_levels(effective=False)
    if not 1 <= i <= top:
        raise ValueError(f"level must be in 1..{top}, got {i}")
    return arena.build_level(i)


def basic_on_arena(arena: Arena, tmasks: np.ndarray, order, record=True) -> list:
    """Run the basic loop on ``arena`` in place; returns the trace."""
    trace = []
    while True:
        alive = arena.alive
        found = None
        for ell in order:
            rank = arena.attractor_rank(P1, tmasks[ell] & alive)
            s = alive & (rank < 0)
            if s.any():
                found = (ell, s)
                break
        if found is None:
            return trace
        ell, s = found
        d = arena.attractor_rank(P2, s) >= 0
        if record:
            trace.append(_record(s, d, ell, None, "full"))
        arena.remove(d)


def fast_on_arena(arena: Arena, tmasks: np.ndarray, order, record=True):
    """Level-graph loop on ``arena`` in place; returns ``(trace, final_level)``."""
    trace = []
    while True:
        alive = arena.alive
        found = None
        top = arena.num_levels()
        for i in range(1, top + 1):
            level = None if i == top else arena.build_level(i)
            for ell in order:
                if level is None:
                    rank = arena.attractor_rank(P1, tmasks[ell] & alive)
                else:
                    rank = arena.level_attractor_rank(level, P1, (tmasks[ell] | level.z) & alive)
                s = alive & (rank < 0)
                if s.any():
                    found = (ell, i, s)
                    break
            if found is not None:
                break
        if found is None:
            return trace, top
        ell, i, s = found
        d = arena.attractor_rank(P2, s) >= 0
        if record:
            trace.append(_record(s, d, ell, i, "level"))
        arena.remove(d)


def solve_basic(graph: GameGraph, objective: GenBuchiObjective, sort_targets: bool = False,
                check: bool = True) -> SolveResult:
    """Winning sets by the basic O(k * b_1 * m) algorithm.

    ``sort_targets`` visits the target sets by increasing size; witness
    indices in the trace always refer to the caller's order.
    """
    if check:
        require_valid(graph, objective)
    arena = Arena(graph)
    trace = basic_on_arena(arena, objective.masks(graph.n), _target_order(objective, sort_targets))
    return _result(arena, trace, "basic")


def solve_fast(graph: GameGraph, objective: GenBuchiObjective, sort_targets: bool = False,
               check: bool = True) -> SolveResult:
    """Winning sets by the O(k * n^2) hierarchical-decomposition algorithm.

    Trace records carry the level at which each dominion was detected;
    ``final_level`` is the level of the last, unsuccessful sweep.
    """
    if check:
        require_valid(graph, objective)
    arena = Arena(graph)
    trace, final = fast_on_arena(arena, objective.masks(graph.n), _target_order(objective, sort_targets))
    return _result(arena, trace, "fast", final)


def solve_on_subarena(graph: GameGraph, owner_swapped: bool, alive, tmasks: np.ndarray,
                      algo: str = "fast") -> np.ndarray:
    """Player-1 winning mask of a generalized Büchi game on ``graph[alive]``.

    Used by the GR(1) solvers; no trace is kept.
    """
    arena = Arena(graph, as_mask(alive, graph.n), swapped=owner_swapped)
    order = range(tmasks.shape[0])
    if algo == "basic":
        basic_on_arena(arena, tmasks, order, record=False)
    else:
        fast_on_arena(arena, tmasks, order, record=False)
    return arena.alive.copy()
