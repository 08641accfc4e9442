"""Size-bounded progress-measure lifting for generalized Büchi games.

``lift_dominion`` returns a player-1 dominion that contains every player-1
dominion with at most ``h`` vertices (or the empty set).  With ``h`` equal
to the arena size the result is player 1's whole winning set.

Ranks live in a ``(k, n)`` table; :data:`INF` marks the top element.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .game import GameGraph, as_mask

INF = int(kernels.INF)


@dataclass(frozen=True)
class LiftResult:
    dominion: frozenset
    rho: np.ndarray
    caps: np.ndarray

    def __iter__(self):
        # allows ``dom, rho = lift_dominion(...)``
        return iter((self.dominion, self.rho))


def rank_caps(tmasks: np.ndarray, alive: np.ndarray, h: int) -> np.ndarray:
    """Per-target cap ``min(h - 1, |alive minus T|)``."""
    outside = (alive[None, :] & ~tmasks).sum(axis=1)
    return np.minimum(h - 1, outside).astype(np.int64)


def succ_row(tmasks, v, ell) -> int:
    k = tmasks.shape[0]
    return (ell + 1) % k if tmasks[ell, v] else ell


def best(graph: GameGraph, owner, alive, tmasks, rho, v: int, ell: int) -> int:
    """Min (player 1) or max (player 2) successor value in the row ``v`` reads."""
    row = succ_row(tmasks, v, ell)
    succ = graph.successors(v)
    vals = rho[row, succ[alive[succ]]]
    return int(vals.min() if owner[v] == 1 else vals.max())


def incr(tmasks, caps, v: int, ell: int, x: int) -> int:
    if tmasks[ell, v] and x != INF:
        return 0
    return x + 1 if x < caps[ell] else INF


def lift_dominion(graph: GameGraph, targets, h: int, alive=None, owner=None,
                  debug: bool = False) -> LiftResult:
    """Least fixed point of the lifting operator on ``graph[alive]``.

    ``targets`` is a :class:`GenBuchiObjective` or a ``(k, n)`` bool array.
    ``owner`` overrides the graph's ownership (swapped views).  ``debug``
    re-derives the successor-count cache after the run and raises on drift.
    """
    n = graph.n
    alive = np.ones(n, bool) if alive is None else as_mask(alive, n)
    size = int(alive.sum())
    if not 1 <= h <= size:
        raise ValueError(f"h must be in 1..{size}, got {h}")
    tmasks = targets if isinstance(targets, np.ndarray) else targets.masks(n)
    tmasks = np.ascontiguousarray(tmasks & alive[None, :])
    owner = graph.owner if owner is None else np.asarray(owner, np.int8)
    caps = rank_caps(tmasks, alive, h)
    rho = kernels.lift_kernel(graph.out_ptr, graph.out_dst, graph.in_ptr, graph.in_src,
                              owner, alive, tmasks, caps, debug)
    rho = np.where(alive[None, :], rho, INF)
    dom = frozenset(np.nonzero(np.any(rho < INF, axis=0))[0].tolist())
    return LiftResult(dom, rho, caps)


def lift_on_csr(out_ptr, out_dst, in_ptr, in_src, owner, alive, tmasks, h) -> np.ndarray:
    """Kernel entry for callers holding their own CSR arrays; returns the dominion mask."""
    tmasks = np.ascontiguousarray(tmasks & alive[None, :])
    caps = rank_caps(tmasks, alive, h)
    rho = kernels.lift_kernel(out_ptr, out_dst, in_ptr, in_src, owner, alive, tmasks, caps, False)
    return alive & np.any(rho < INF, axis=0)


def fixed_point_violations(graph: GameGraph, tmasks, rho, h, alive=None, owner=None) -> list:
    """Pairs ``(v, ell)`` where ``rho != incr(best)``; empty at a fixed point."""
    n = graph.n
    alive = np.ones(n, bool) if alive is None else as_mask(alive, n)
    owner = graph.owner if owner is None else owner
    tmasks = tmasks & alive[None, :]
    caps = rank_caps(tmasks, alive, h)
    bad = []
    for ell in range(tmasks.shape[0]):
        for v in np.nonzero(alive)[0]:
            want = incr(tmasks, caps, v, ell, best(graph, owner, alive, tmasks, rho, v, ell))
            if int(rho[ell, v]) != want:
                bad.append((int(v), ell))
    return bad
