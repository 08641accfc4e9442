"""Triangle detection and orthogonal vectors as generalized Büchi games.

Both reductions produce games where player 1 wins nowhere exactly when
the source instance has a solution.  Random instance generators use
numpy's PCG64 ``default_rng(seed)``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .game import GameGraph, GenBuchiObjective, GR1Objective, SolveResult, induced_subgame


@dataclass(frozen=True)
class TriangleInstance:
    n: int
    edges: tuple

    def __post_init__(self):
        for u, v in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge {u}->{v} out of range")
            if u == v:
                raise ValueError(f"self-loop at {u}")


@dataclass(frozen=True)
class OvInstance:
    s1: tuple
    s2: tuple
    d: int

    def __post_init__(self):
        for name, vecs in (("s1", self.s1), ("s2", self.s2)):
            for vec in vecs:
                if len(vec) != self.d:
                    raise ValueError(f"{name} vector {vec} does not have dimension {self.d}")
                if any(b not in (0, 1) for b in vec):
                    raise ValueError(f"{name} vector {vec} is not a 0/1 vector")


def triangle_to_game(inst: TriangleInstance):
    """Four copies of the graph plus a hub ``s``; every vertex belongs to player 2.

    Copy ``i`` (1..4) of vertex ``v`` gets id ``(i - 1) * n + v`` and ``s`` is
    ``4n``.  Target ``T_v`` is the first and last copy minus ``v``'s own copies.
    Returns ``(graph, objective, s)``; vertices without successors are kept
    (see :func:`prune_sinks`).
    """
    n = inst.n
    s = 4 * n
    edges = []
    for i in range(3):
        edges += [(i * n + u, (i + 1) * n + v) for u, v in inst.edges]
    edges += [(s, v) for v in range(n)]
    edges += [(3 * n + v, s) for v in range(n)]
    owner = np.full(4 * n + 1, 2, np.int8)
    graph = GameGraph(4 * n + 1, owner, edges)
    targets = [[u for u in range(n) if u != v] + [3 * n + u for u in range(n) if u != v]
               for v in range(n)]
    objective = GenBuchiObjective(targets if targets else [[]])
    return graph, objective, s


def prune_sinks(graph: GameGraph, objective):
    """Drop vertices that cannot continue forever; returns ``(graph, objective, new_to_old)``.

    Sound for the triangle games because player 2 owns every vertex: a
    vertex whose every path dead-ends lies on no infinite play.
    """
    alive = np.ones(graph.n, bool)
    while True:
        live = alive[graph.src] & alive[graph.dst]
        deg = np.bincount(graph.src[live], minlength=graph.n)
        dead = alive & (deg == 0)
        if not dead.any():
            break
        alive &= ~dead
    sub, old_to_new, new_to_old = induced_subgame(graph, alive)
    remap = lambda sets: [[int(old_to_new[v]) for v in t if old_to_new[v] >= 0] for t in sets]
    if isinstance(objective, GR1Objective):
        obj = GR1Objective(remap(objective.assumptions), remap(objective.guarantees))
    else:
        obj = GenBuchiObjective(remap(objective.targets))
    return sub, obj, new_to_old


def decode_triangle(result: SolveResult) -> bool:
    """A triangle exists iff the pruned game is nonempty and player 1 wins nowhere."""
    return result.n > 0 and not result.w1


def _ones(d):
    return tuple([1] * d)


def ov_to_game(inst: OvInstance):
    """Orthogonal vectors as a game with one singleton target per vector of ``s2``.

    Vertex order: ``s = 0``, then ``s1``, then ``s2`` (with the all-ones
    vector appended when missing), then one vertex per coordinate.  ``s`` is
    player 2's, the rest player 1's.  Returns ``(graph, objective, s)``.
    """
    if not inst.s1:
        raise ValueError("the first vector set is empty")
    if any(not any(u) for u in inst.s1):
        raise ValueError("the first vector set contains the zero vector")
    d = inst.d
    s2 = list(inst.s2)
    if _ones(d) not in [tuple(v) for v in s2]:
        s2.append(_ones(d))
    n1, n2 = len(inst.s1), len(s2)
    base1, base2, basec = 1, 1 + n1, 1 + n1 + n2
    n = basec + d
    edges = [(0, base1 + a) for a in range(n1)]
    for a, u in enumerate(inst.s1):
        edges += [(base1 + a, basec + i) for i in range(d) if u[i]]
    for i in range(d):
        edges += [(basec + i, base2 + b) for b, v in enumerate(s2) if v[i]]
    edges += [(base2 + b, 0) for b in range(n2)]
    owner = np.ones(n, np.int8)
    owner[0] = 2
    graph = GameGraph(n, owner, edges)
    objective = GenBuchiObjective([[base2 + b] for b in range(n2)])
    return graph, objective, 0


def decode_ov(result: SolveResult) -> bool:
    """An orthogonal pair exists iff player 1 wins nowhere."""
    return result.n > 0 and not result.w1


def solve_triangle(inst: TriangleInstance, solver) -> bool:
    """Reduce, prune, solve with ``solver(graph, objective)`` and decode."""
    graph, objective, _ = triangle_to_game(inst)
    graph, objective, _ = prune_sinks(graph, objective)
    if graph.n == 0:
        return False
    return decode_triangle(solver(graph, objective))


def solve_ov(inst: OvInstance, solver) -> bool:
    """Orthogonal-pair answer; degenerate inputs are answered without a game."""
    if not inst.s1 or not inst.s2:
        return False
    if any(not any(u) for u in inst.s1):
        return True
    graph, objective, _ = ov_to_game(inst)
    return decode_ov(solver(graph, objective))


# ---------------------------------------------------------------- generators

def _rng(seed):
    return np.random.default_rng(seed)


def gen_random_triangle(n: int, edge_prob: float, seed: int) -> TriangleInstance:
    if n < 0 or not 0.0 <= edge_prob <= 1.0:
        raise ValueError("need n >= 0 and 0 <= edge_prob <= 1")
    rng = _rng(seed)
    adj = rng.random((n, n)) < edge_prob
    np.fill_diagonal(adj, False)
    u, v = np.nonzero(adj)
    return TriangleInstance(n, tuple(zip(u.tolist(), v.tolist())))


def gen_random_ov(N: int, d: int, density: float, seed: int) -> OvInstance:
    """``N`` random vectors per side; the last vector of ``s2`` becomes all-ones if absent."""
    if N < 1 or d < 1 or not 0.0 <= density <= 1.0:
        raise ValueError("need N >= 1, d >= 1 and 0 <= density <= 1")
    rng = _rng(seed)
    s1 = (rng.random((N, d)) < density).astype(int)
    s2 = (rng.random((N, d)) < density).astype(int)
    if not np.any(np.all(s2 == 1, axis=1)):
        s2[-1] = 1
    as_tuples = lambda a: tuple(tuple(r) for r in a.tolist())
    return OvInstance(as_tuples(s1), as_tuples(s2), d)


def _random_edges(rng, n, m):
    if m > n * n:
        raise ValueError(f"cannot place {m} distinct edges on {n} vertices")
    codes = np.sort(rng.choice(n * n, size=m, replace=False)) if m else np.zeros(0, np.int64)
    src, dst = np.divmod(codes, n)
    # give every sink one uniform successor
    sinks = np.setdiff1d(np.arange(n), src)
    extra = rng.integers(0, n, size=len(sinks))
    src = np.concatenate([src, sinks])
    dst = np.concatenate([dst, extra])
    order = np.lexsort((dst, src))
    return np.stack([src[order], dst[order]], axis=1)


def _random_sets(rng, n, count, frac):
    return [np.nonzero(rng.random(n) < frac)[0].tolist() for _ in range(count)]


def gen_random_game(n: int, m: int, k: int, owner_bias: float = 0.5, seed: int = 0,
                    target_frac: float = 0.3):
    """Random game with ``m`` distinct edges (plus one per sink) and ``k`` random targets.

    ``owner_bias`` is the probability a vertex belongs to player 1.
    """
    if n < 1 or m < 0 or k < 1 or not 0.0 <= owner_bias <= 1.0:
        raise ValueError("need n >= 1, m >= 0, k >= 1 and 0 <= owner_bias <= 1")
    rng = _rng(seed)
    owner = np.where(rng.random(n) < owner_bias, 1, 2).astype(np.int8)
    edges = _random_edges(rng, n, m)
    return GameGraph(n, owner, edges), GenBuchiObjective(_random_sets(rng, n, k, target_frac))


def gen_random_gr1(n: int, m: int, k1: int, k2: int, seed: int = 0, owner_bias: float = 0.5,
                   assume_frac: float = 0.3, guarantee_frac: float = 0.3):
    if n < 1 or m < 0 or k1 < 1 or k2 < 1:
        raise ValueError("need n >= 1, m >= 0, k1 >= 1 and k2 >= 1")
    rng = _rng(seed)
    owner = np.where(rng.random(n) < owner_bias, 1, 2).astype(np.int8)
    edges = _random_edges(rng, n, m)
    obj = GR1Objective(_random_sets(rng, n, k1, assume_frac), _random_sets(rng, n, k2, guarantee_frac))
    return GameGraph(n, owner, edges), obj
