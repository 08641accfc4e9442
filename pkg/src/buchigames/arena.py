"""Mutable per-solve view of a game graph: the shrinking sub-arena V^j."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from ._jit import USE_NUMBA
from .game import GameGraph, as_mask


@dataclass
class LevelGraph:
    """Level ``i`` of the hierarchical decomposition over the current arena.

    ``in_ptr``/``in_src`` hold the edge set E_i by target, ``out_degree`` its
    out-degrees and ``z`` the excluded vertex mask Z_i.  The successor CSR
    (``out_ptr``/``out_dst``) is only needed by the lifting search and is
    built on first access.  ``top`` marks the level that coincides with the
    full current graph.
    """

    level: int
    cap: int
    in_ptr: np.ndarray
    in_src: np.ndarray
    out_degree: np.ndarray
    z: np.ndarray
    top: bool = False
    _out: tuple = None

    def _out_csr(self):
        if self._out is None:
            self._out = kernels.csr_from_pairs(len(self.in_ptr) - 1, self.in_src, self.edge_dst)
        return self._out

    @property
    def edge_dst(self) -> np.ndarray:
        n = len(self.in_ptr) - 1
        return np.repeat(np.arange(n, dtype=np.int64), np.diff(self.in_ptr))

    @property
    def out_ptr(self) -> np.ndarray:
        return self._out_csr()[0]

    @property
    def out_dst(self) -> np.ndarray:
        return self._out_csr()[1]

    def edge_set(self) -> set:
        return set(zip(self.in_src.tolist(), self.edge_dst.tolist()))

    @property
    def m(self) -> int:
        return int(self.in_ptr[-1])


def ceil_log2(x: int) -> int:
    return max(0, int(x - 1).bit_length())


class Arena:
    """Alive mask, alive out-degrees and lazily cleaned adjacency of a graph.

    With ``swapped=True`` the owners are flipped and the predecessor order is
    rebuilt so that (new) player-2 sources still come first.  Removing
    vertices is permanent; the level graphs read the linked adjacency lists
    and unlink dead entries as they meet them.
    """

    def __init__(self, graph: GameGraph, alive=None, swapped: bool = False):
        self.graph = graph
        n = graph.n
        self.n = n
        self.owner = (3 - graph.owner).astype(np.int8) if swapped else graph.owner
        self.swapped = swapped
        self.alive = np.ones(n, bool) if alive is None else as_mask(alive, n)
        self.in_ptr = graph.in_ptr
        if swapped and graph.m:
            dst = np.repeat(np.arange(n), graph.in_degree)
            cls = (self.owner[graph.in_src] != 2).astype(np.int64)
            order = np.lexsort((np.arange(graph.m), cls, dst))
            self.in_src = graph.in_src[order]
            self.in_eid = graph.in_eid[order]
        else:
            self.in_src = graph.in_src
            self.in_eid = graph.in_eid
        if alive is None:
            self.odeg = graph.out_degree.astype(np.int64)
            self.ideg = graph.in_degree.astype(np.int64)
        else:
            live = self.alive[graph.src] & self.alive[graph.dst]
            self.odeg = np.bincount(graph.src[live], minlength=n).astype(np.int64)
            self.ideg = np.bincount(graph.dst[live], minlength=n).astype(np.int64)
        self._lists = None
        self._in_dst = None
        self._stamp_val = 0

    @property
    def size(self) -> int:
        return int(self.alive.sum())

    def copy_alive(self) -> np.ndarray:
        return self.alive.copy()

    def remove(self, mask) -> None:
        ids = np.nonzero(as_mask(mask, self.n) & self.alive)[0].astype(np.int64)
        if ids.size:
            g = self.graph
            kernels.remove_kernel(self.in_ptr, self.in_src, g.out_ptr, g.out_dst, self.alive,
                                  self.odeg, self.ideg, ids)

    def attractor_rank(self, player: int, seed, alive=None) -> np.ndarray:
        """BFS-layer ranks of Attr_player(seed) on the full current graph (-1 outside)."""
        alive = self.alive if alive is None else alive
        odeg = self.odeg if alive is self.alive else _alive_outdeg(self.graph, alive)
        return kernels.attractor_kernel(self.in_ptr, self.in_src, self.owner, odeg,
                                        alive, int(player), as_mask(seed, self.n), int(alive.sum()))

    def level_attractor_rank(self, level: LevelGraph, player: int, seed, alive=None) -> np.ndarray:
        alive = self.alive if alive is None else alive
        return kernels.attractor_kernel(level.in_ptr, level.in_src, self.owner, level.out_degree,
                                        alive, int(player), as_mask(seed, self.n), int(alive.sum()))

    def num_levels(self, effective: bool = True) -> int:
        """Index of the top level.

        Nominally ``ceil(log2 |alive|)``; once the cap reaches every alive
        in- and out-degree the level graph already equals the current graph
        (and Z is empty), so the hierarchy stops there.
        """
        nominal = max(1, ceil_log2(self.size))
        if not effective or not self.alive.any():
            return nominal
        deg = max(int(self.odeg[self.alive].max()), int(self.ideg[self.alive].max()))
        return min(nominal, max(1, ceil_log2(deg)))

    def build_level(self, i: int) -> LevelGraph:
        """Level graph G_i (cap 2^i) with exclusion set Z_i of the current arena."""
        if i < 1:
            raise ValueError("levels start at 1")
        cap = 1 << min(i, 62)
        if USE_NUMBA:
            if self._lists is None:
                self._lists = self._init_lists()
            in_head, in_next, out_head, out_next, stamp = self._lists
            self._stamp_val += 1
            g = self.graph
            parts = kernels.level_nb(cap, self.alive, self.owner, self.odeg, in_head, in_next,
                                     self.in_src, self.in_eid, out_head, out_next,
                                     g.out_dst, g.out_eid, stamp, self._stamp_val)
        else:
            if self._in_dst is None:
                self._in_dst = np.repeat(np.arange(self.n, dtype=np.int64), self.graph.in_degree)
            parts = kernels.level_np(cap, self.alive, self.owner, self.odeg, self.in_ptr,
                                     self.in_src, self._in_dst)
        return LevelGraph(i, cap, *parts, top=i >= self.num_levels())

    def _init_lists(self):
        g = self.graph
        m = g.m

        def chain(ptr):
            nxt = np.arange(1, m + 1, dtype=np.int64)
            ends = ptr[1:][np.diff(ptr) > 0] - 1
            nxt[ends] = -1
            head = np.where(np.diff(ptr) > 0, ptr[:-1], -1).astype(np.int64)
            return head, nxt

        in_head, in_next = chain(g.in_ptr)
        out_head, out_next = chain(g.out_ptr)
        return in_head, in_next, out_head, out_next, np.zeros(m, np.int64)


def _alive_outdeg(graph: GameGraph, alive: np.ndarray) -> np.ndarray:
    live = alive[graph.src] & alive[graph.dst]
    return np.bincount(graph.src[live], minlength=graph.n).astype(np.int64)
