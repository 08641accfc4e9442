"""Game graphs, objectives and solver results."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np


class Player(enum.IntEnum):
    P1 = 1
    P2 = 2

    @property
    def opponent(self) -> "Player":
        return Player.P2 if self is Player.P1 else Player.P1


P1 = Player.P1
P2 = Player.P2


class InvalidGameError(ValueError):
    """Raised when a game violates the standing assumptions."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class NotClosedError(ValueError):
    """A subgame was requested on a set that leaves some vertex without successors."""

    def __init__(self, vertices):
        self.vertices = sorted(int(v) for v in vertices)
        super().__init__(f"vertices lose all successors: {self.vertices}")


def _frozen(a):
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


def _csr(keys, n):
    counts = np.bincount(keys, minlength=n) if len(keys) else np.zeros(n, dtype=np.int64)
    ptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=ptr[1:])
    return ptr


class GameGraph:
    """Directed game graph on vertices ``0..n-1`` with a player-1/player-2 partition.

    Edge ids are positions in the input edge list.  Successor lists keep the
    input order; predecessor lists put player-2 sources before player-1
    sources and are otherwise stable in input order.  The hierarchical graph
    decomposition reads prefixes of these predecessor lists.

    The graph is immutable.  Construction only rejects malformed arrays;
    standing-assumption violations (sinks, duplicate edges) are reported by
    :func:`validate`.
    """

    __slots__ = ("n", "m", "owner", "src", "dst", "out_ptr", "out_dst", "out_eid",
                 "in_ptr", "in_src", "in_eid", "out_degree", "in_degree")

    def __init__(self, n: int, owner: Sequence[int], edges):
        n = int(n)
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        owner = np.asarray(owner, dtype=np.int8).reshape(-1)
        if owner.shape[0] != n:
            raise ValueError(f"owner vector has length {owner.shape[0]}, expected {n}")
        edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2) if len(edges) else np.zeros((0, 2), np.int64)
        src = edges[:, 0].copy()
        dst = edges[:, 1].copy()
        if len(src) and (src.min() < 0 or dst.min() < 0 or src.max() >= n or dst.max() >= n):
            bad = np.nonzero((src < 0) | (dst < 0) | (src >= n) | (dst >= n))[0][0]
            raise ValueError(f"edge {int(src[bad])}->{int(dst[bad])} has an endpoint outside 0..{n - 1}")
        m = len(src)
        eids = np.arange(m, dtype=np.int64)

        out_order = np.lexsort((eids, src)) if m else eids
        # player-2 sources first, then player-1, stable in input order
        src_class = (owner[src] != P2).astype(np.int8) if m else np.zeros(0, np.int8)
        in_order = np.lexsort((eids, src_class, dst)) if m else eids

        self.n = n
        self.m = m
        self.owner = _frozen(owner)
        self.src = _frozen(src)
        self.dst = _frozen(dst)
        self.out_ptr = _frozen(_csr(src, n))
        self.out_dst = _frozen(dst[out_order])
        self.out_eid = _frozen(out_order.astype(np.int64))
        self.in_ptr = _frozen(_csr(dst, n))
        self.in_src = _frozen(src[in_order])
        self.in_eid = _frozen(in_order.astype(np.int64))
        self.out_degree = _frozen(np.diff(self.out_ptr))
        self.in_degree = _frozen(np.diff(self.in_ptr))

    @classmethod
    def from_lists(cls, owner: Sequence[int], successors: Sequence[Iterable[int]]) -> "GameGraph":
        edges = [(u, v) for u, succ in enumerate(successors) for v in succ]
        return cls(len(owner), owner, edges)

    @property
    def edges(self) -> np.ndarray:
        return np.stack([self.src, self.dst], axis=1)

    def successors(self, v: int) -> np.ndarray:
        return self.out_dst[self.out_ptr[v]:self.out_ptr[v + 1]]

    def predecessors(self, v: int) -> np.ndarray:
        return self.in_src[self.in_ptr[v]:self.in_ptr[v + 1]]

    def vertices(self, player: Optional[Player] = None) -> np.ndarray:
        if player is None:
            return np.arange(self.n)
        return np.nonzero(self.owner == int(player))[0]

    def edge_set(self) -> set:
        return set(zip(self.src.tolist(), self.dst.tolist()))

    def __eq__(self, other):
        if not isinstance(other, GameGraph):
            return NotImplemented
        return (self.n == other.n and np.array_equal(self.owner, other.owner)
                and np.array_equal(self.src, other.src) and np.array_equal(self.dst, other.dst))

    def __hash__(self):
        return hash((self.n, self.owner.tobytes(), self.src.tobytes(), self.dst.tobytes()))

    def __repr__(self):
        return f"GameGraph(n={self.n}, m={self.m})"


def _as_set(vertices) -> frozenset:
    if isinstance(vertices, np.ndarray) and vertices.dtype == bool:
        return frozenset(np.nonzero(vertices)[0].tolist())
    return frozenset(int(v) for v in vertices)


def as_mask(vertices, n: int) -> np.ndarray:
    """Boolean mask of length ``n`` from a mask, set or sequence of ids."""
    if isinstance(vertices, np.ndarray) and vertices.dtype == bool:
        if vertices.shape != (n,):
            raise ValueError(f"mask has shape {vertices.shape}, expected ({n},)")
        return vertices.copy()
    mask = np.zeros(n, dtype=bool)
    ids = np.fromiter((int(v) for v in vertices), dtype=np.int64)
    if len(ids):
        mask[ids] = True
    return mask


@dataclass(frozen=True)
class GenBuchiObjective:
    """Conjunction of Büchi objectives over ``targets[0..k-1]`` (player 1's goal)."""

    targets: tuple

    def __init__(self, targets):
        object.__setattr__(self, "targets", tuple(_as_set(t) for t in targets))
        if not self.targets:
            raise ValueError("a generalized Büchi objective needs at least one target set")

    @property
    def k(self) -> int:
        return len(self.targets)

    @property
    def sizes(self) -> list:
        return [len(t) for t in self.targets]

    def masks(self, n: int) -> np.ndarray:
        out = np.zeros((self.k, n), dtype=bool)
        for i, t in enumerate(self.targets):
            if t:
                out[i, list(t)] = True
        return out

    def violations(self, n: int) -> list:
        return [f"target {i} contains vertex {v} outside 0..{n - 1}"
                for i, t in enumerate(self.targets) for v in sorted(t) if not 0 <= v < n]


@dataclass(frozen=True)
class GR1Objective:
    """``AND_t Büchi(assumptions[t]) -> AND_l Büchi(guarantees[l])`` for player 1."""

    assumptions: tuple
    guarantees: tuple

    def __init__(self, assumptions, guarantees):
        object.__setattr__(self, "assumptions", tuple(_as_set(t) for t in assumptions))
        object.__setattr__(self, "guarantees", tuple(_as_set(t) for t in guarantees))
        if not self.assumptions or not self.guarantees:
            raise ValueError("GR(1) objectives need k1 >= 1 and k2 >= 1")

    @property
    def k1(self) -> int:
        return len(self.assumptions)

    @property
    def k2(self) -> int:
        return len(self.guarantees)

    def assumption_masks(self, n):
        return GenBuchiObjective(self.assumptions).masks(n)

    def guarantee_masks(self, n):
        return GenBuchiObjective(self.guarantees).masks(n)

    def violations(self, n: int) -> list:
        out = []
        for name, sets in (("assumption", self.assumptions), ("guarantee", self.guarantees)):
            out += [f"{name} {i} contains vertex {v} outside 0..{n - 1}"
                    for i, t in enumerate(sets) for v in sorted(t) if not 0 <= v < n]
        return out


@dataclass(frozen=True)
class IterationRecord:
    """One removal step: dominion ``found`` (S^j) and its player-2 attractor ``removed`` (D^j).

    ``witness`` is the 0-based index of the target (or guarantee) set the
    dominion avoids.  ``level`` is the decomposition level where it was
    detected (None for searches on the full graph).  ``source`` names the
    search that found it.
    """

    found: frozenset
    removed: frozenset
    witness: int
    level: Optional[int] = None
    source: str = "full"


@dataclass(frozen=True)
class SolveResult:
    n: int
    w1: frozenset
    w2: frozenset
    trace: tuple = ()
    algo: str = ""
    final_level: Optional[int] = None
    extra: dict = field(default_factory=dict, compare=False)

    @property
    def iterations(self) -> int:
        """Outer-loop iterations, counting the final one that finds nothing."""
        return len(self.trace) + 1

    def w1_mask(self) -> np.ndarray:
        return as_mask(self.w1, self.n)


def validate(graph: GameGraph) -> list:
    """Return every violated invariant of ``graph`` (empty list when valid)."""
    out = []
    bad_owner = np.nonzero((graph.owner != 1) & (graph.owner != 2))[0]
    out += [f"vertex {v} has owner {int(graph.owner[v])}, expected 1 or 2" for v in bad_owner]
    out += [f"vertex {v} has out-degree 0" for v in np.nonzero(graph.out_degree == 0)[0]]
    if graph.m:
        key = graph.src * max(graph.n, 1) + graph.dst
        uniq, first, counts = np.unique(key, return_index=True, return_counts=True)
        for u in np.nonzero(counts > 1)[0]:
            e = first[u]
            out.append(f"duplicate edge {int(graph.src[e])}->{int(graph.dst[e])}")
        # predecessor lists: no player-1 source directly before a player-2 source
        in_dst = np.repeat(np.arange(graph.n), graph.in_degree)
        p1_src = graph.owner[graph.in_src] == P1
        flip = p1_src[:-1] & ~p1_src[1:] & (in_dst[:-1] == in_dst[1:])
        for v in np.unique(in_dst[1:][flip]):
            out.append(f"predecessors of vertex {v} list a player-1 source before a player-2 source")
        back = np.sort(graph.in_src * max(graph.n, 1) + in_dst)
        if not np.array_equal(np.sort(key), back):
            out.append("successor and predecessor lists disagree")
    return out


def require_valid(graph: GameGraph, objective=None) -> None:
    problems = validate(graph)
    if objective is not None:
        problems += objective.violations(graph.n)
    if problems:
        raise InvalidGameError(problems)


def swap_players(graph: GameGraph) -> GameGraph:
    """Same edges, every owner flipped; predecessor order recomputed."""
    return GameGraph(graph.n, 3 - graph.owner, graph.edges)


def induced_subgame(graph: GameGraph, keep):
    """Subgame on ``keep``.

    Returns ``(subgame, old_to_new, new_to_old)``; ``old_to_new`` holds -1 for
    dropped vertices.  Raises :class:`NotClosedError` when a kept vertex has
    no kept successor.
    """
    mask = as_mask(keep, graph.n)
    new_to_old = np.nonzero(mask)[0]
    old_to_new = np.full(graph.n, -1, dtype=np.int64)
    old_to_new[new_to_old] = np.arange(len(new_to_old))
    sel = mask[graph.src] & mask[graph.dst]
    edges = np.stack([old_to_new[graph.src[sel]], old_to_new[graph.dst[sel]]], axis=1)
    sub = GameGraph(len(new_to_old), graph.owner[new_to_old], edges)
    sinks = np.nonzero(sub.out_degree == 0)[0]
    if len(sinks):
        raise NotClosedError(new_to_old[sinks])
    return sub, old_to_new, new_to_old


def restrict_targets(sets, old_to_new) -> list:
    """Map target sets through an ``old_to_new`` table, dropping removed vertices."""
    out = []
    for t in sets:
        out.append({int(old_to_new[v]) for v in t if old_to_new[v] >= 0})
    return out
