"""Winning strategies, player-2 certificates and their checkers.

Player 1 strategies use a cyclic counter as memory.  A state ``(v, c)``
means "at ``v`` with counter ``c``"; the counter first advances by one when
``v`` lies in the ``c``-th target (or guarantee) set, then the move for the
new counter is played.  Strategies are ``(k, n)`` successor tables with -1
where no move is defined.

Player 2 certificates replay the solver's removals: each record names a
player-1 closed set, the target set it avoids, its player-2 attractor and
the moves that keep the play inside / pull it in.

The ``check_*`` functions only rely on :mod:`game` and :mod:`attractors`;
extraction reuses the solver loop to rebuild nested certificates.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import breadth_first_order, connected_components

from .arena import Arena
from .attractors import attractor_rank, strategy_from_rank
from .game import GameGraph, GenBuchiObjective, GR1Objective, SolveResult, as_mask
from .genbuchi import basic_on_arena


# ---------------------------------------------------------------- types

@dataclass(frozen=True)
class CheckResult:
    """Checker verdict; ``lasso`` is ``(stem, cycle)`` of ``(vertex, counter)`` pairs."""

    ok: bool
    reason: str = ""
    lasso: Optional[tuple] = None
    edge: Optional[tuple] = None

    def __bool__(self):
        return self.ok

    def describe(self) -> str:
        if self.ok:
            return "accepted"
        lines = [f"rejected: {self.reason}"]
        if self.edge is not None:
            lines.append(f"edge: {self.edge[0]} -> {self.edge[1]}")
        if self.lasso is not None:
            stem, cycle = self.lasso
            fmt = lambda seq: " ".join(f"{v}@{c}" for v, c in seq)
            lines.append(f"stem: {fmt(stem)}")
            lines.append(f"cycle: {fmt(cycle)}")
        return "\n".join(lines)


ACCEPT = CheckResult(True)


@dataclass
class CounterStrategy:
    """Player-1 strategy with a cyclic counter over ``k`` sets.

    ``moves[c, v]`` is the successor played at ``v`` once the counter shows
    ``c`` (after the update at ``v``).
    """

    region: frozenset
    moves: np.ndarray

    @property
    def k(self) -> int:
        return self.moves.shape[0]

    def move(self, v: int, counter: int) -> int:
        return int(self.moves[counter, v])

    def copy(self):
        return type(self)(self.region, self.moves.copy())


class P1GenBuchiStrategy(CounterStrategy):
    """Counter over the target sets; attractor moves towards the current target."""


class P1Gr1Strategy(CounterStrategy):
    """Counter over the guarantee sets; attractor moves towards the current guarantee
    and, outside its attractor, moves that violate some assumption."""


@dataclass
class P2Record:
    found: frozenset
    witness: int
    removed: frozenset
    stay: dict
    attract: dict


@dataclass
class P2GenBuchiCertificate:
    records: list
    claimed_w2: frozenset


@dataclass
class Gr1P2Record:
    found: frozenset
    witness: int
    removed: frozenset
    inner: P1GenBuchiStrategy
    attract: dict


@dataclass
class Gr1P2Certificate:
    records: list
    claimed_w2: frozenset


# ---------------------------------------------------------------- extraction

def _lowest_succ_in(graph, v, region):
    succ = graph.successors(v)
    succ = succ[region[succ]]
    return int(succ.min()) if succ.size else -1


def counter_moves(graph: GameGraph, tmasks, region, owner=None, player=1) -> np.ndarray:
    """Per-target attractor moves for ``player`` on ``graph[region]``.

    Raises ValueError when some target's attractor does not cover the region.
    """
    owner = graph.owner if owner is None else owner
    k, n = tmasks.shape
    moves = np.full((k, n), -1, np.int64)
    mine = region & (owner == player)
    for c in range(k):
        rank = attractor_rank(graph, player, tmasks[c] & region, region, owner)
        if np.any(region & (rank < 0)):
            raise ValueError(f"target {c} is not reachable from the whole region")
        for v, w in strategy_from_rank(graph, rank, player, region, owner).items():
            moves[c, v] = w
        for v in np.nonzero(mine & (rank == 0))[0]:
            moves[c, v] = _lowest_succ_in(graph, v, region)
    return moves


def extract_p1_genbuchi(graph: GameGraph, objective, w1, owner=None) -> P1GenBuchiStrategy:
    tmasks = _tmasks(objective, graph.n)
    region = as_mask(w1, graph.n)
    return P1GenBuchiStrategy(frozenset(np.nonzero(region)[0].tolist()),
                              counter_moves(graph, tmasks, region, owner))


def extract_p2_genbuchi(graph: GameGraph, trace, owner=None, alive=None) -> P2GenBuchiCertificate:
    """Certificate from a solver trace, replayed from ``alive`` (default: all vertices)."""
    owner = graph.owner if owner is None else owner
    alive = np.ones(graph.n, bool) if alive is None else as_mask(alive, graph.n)
    records = []
    total = set()
    for rec in trace:
        s = as_mask(rec.found, graph.n)
        stay = {int(v): _lowest_succ_in(graph, v, s & alive)
                for v in np.nonzero(s & (owner == 2))[0]}
        rank = attractor_rank(graph, 2, s, alive, owner)
        attract = strategy_from_rank(graph, rank, 2, alive, owner)
        records.append(P2Record(frozenset(rec.found), rec.witness, frozenset(rec.removed),
                                stay, attract))
        alive = alive & ~as_mask(rec.removed, graph.n)
        total |= rec.removed
    return P2GenBuchiCertificate(records, frozenset(total))


def extract_genbuchi_strategies(result: SolveResult, graph: GameGraph,
                                objective: GenBuchiObjective):
    """``(P1GenBuchiStrategy, P2GenBuchiCertificate)`` for a basic or fast solve."""
    if result.w2 and not result.trace:
        raise ValueError("result carries no trace; solve with the basic or fast solver")
    p1 = extract_p1_genbuchi(graph, objective, result.w1)
    return p1, extract_p2_genbuchi(graph, result.trace)


def _swapped(graph):
    return (3 - graph.owner).astype(np.int8)


def extract_gr1_strategies(result: SolveResult, graph: GameGraph, objective: GR1Objective):
    """``(P1Gr1Strategy, Gr1P2Certificate)`` for a GR(1) solve."""
    if result.w2 and not result.trace:
        raise ValueError("result carries no trace")
    n = graph.n
    swapped = _swapped(graph)
    lmasks = objective.assumption_masks(n)
    umasks = objective.guarantee_masks(n)
    w1 = as_mask(result.w1, n)

    moves = np.full((objective.k2, n), -1, np.int64)
    for c in range(objective.k2):
        rank = attractor_rank(graph, 1, umasks[c] & w1, w1)
        for v, w in strategy_from_rank(graph, rank, 1, w1).items():
            moves[c, v] = w
        for v in np.nonzero(w1 & (graph.owner == 1) & (rank == 0))[0]:
            moves[c, v] = _lowest_succ_in(graph, v, w1)
        sub = w1 & (rank < 0)
        if not sub.any():
            continue
        # outside the attractor player 1 makes some assumption fail; the
        # removal trace of the swapped game says how
        arena = Arena(graph, sub, swapped=True)
        trace = basic_on_arena(arena, lmasks & sub[None, :], range(objective.k1))
        if arena.alive.any():
            raise ValueError("claimed winning set is not winning for player 1")
        cert = extract_p2_genbuchi(graph, trace, swapped, sub)
        for rec in cert.records:
            for v, w in rec.stay.items():
                moves[c, v] = w
            for v, w in rec.attract.items():
                moves[c, v] = w
    p1 = P1Gr1Strategy(frozenset(result.w1), moves)

    alive = np.ones(n, bool)
    records = []
    for rec in result.trace:
        s = as_mask(rec.found, n)
        inner = P1GenBuchiStrategy(frozenset(rec.found),
                                   counter_moves(graph, lmasks & s[None, :], s, swapped))
        rank = attractor_rank(graph, 2, s, alive)
        attract = strategy_from_rank(graph, rank, 2, alive)
        records.append(Gr1P2Record(frozenset(rec.found), rec.witness, frozenset(rec.removed),
                                   inner, attract))
        alive &= ~as_mask(rec.removed, n)
    return p1, Gr1P2Certificate(records, frozenset(result.w2))


# ---------------------------------------------------------------- product checks

def _tmasks(objective, n):
    if isinstance(objective, np.ndarray):
        return objective
    return objective.masks(n)


@dataclass
class _Product:
    n: int
    k: int
    adj: csr_matrix
    advancing: np.ndarray
    reach_order: np.ndarray
    pred: np.ndarray
    escape: Optional[tuple] = None
    reached: np.ndarray = field(default=None)


def _edge_codes(graph):
    return np.unique(graph.src * max(graph.n, 1) + graph.dst)


def _build_product(strategy: CounterStrategy, graph: GameGraph, tmasks, region, owner, alive):
    n, k = graph.n, tmasks.shape[0]
    codes = _edge_codes(graph)
    live = alive[graph.src] & alive[graph.dst] & region[graph.src]
    esrc, edst = graph.src[live], graph.dst[live]
    p2e = owner[esrc] != 1
    p1v = np.nonzero(region & (owner == 1))[0]
    rows, cols = [], []
    bad_states, bad_edges = [], []
    static_bad = []
    for c in range(k):
        nxt = np.where(tmasks[c], (c + 1) % k, c)
        s_src, s_dst = esrc[p2e], edst[p2e]
        rows.append(c * n + s_src)
        cols.append(nxt[s_src] * n + s_dst)
        out = ~region[s_dst]
        bad_states.append(c * n + s_src[out])
        bad_edges.append(np.stack([s_src[out], s_dst[out]], axis=1))
        mem = nxt[p1v]
        w = strategy.moves[mem, p1v] if strategy.k == k else np.full(len(p1v), -1)
        ok = w >= 0
        wc = np.where(ok, w, 0)
        ok &= np.isin(p1v * max(n, 1) + wc, codes) & alive[wc] & region[wc]
        rows.append(c * n + p1v[ok])
        cols.append(mem[ok] * n + w[ok])
        bad_states.append(c * n + p1v[~ok])
        bad_edges.append(np.stack([p1v[~ok], w[~ok]], axis=1))
        # a defined move that leaves the region is wrong even where no play reaches it
        if strategy.k == k:
            table = strategy.moves[c, p1v]
            defined = table >= 0
            tc = np.where(defined, table, 0)
            wrong = defined & ~(np.isin(p1v * max(n, 1) + tc, codes) & alive[tc] & region[tc])
            static_bad.extend((int(v), int(x)) for v, x in zip(p1v[wrong], table[wrong]))
    rows = np.concatenate(rows)
    cols = np.concatenate(cols)
    bad_states = np.concatenate(bad_states)
    bad_edges = np.concatenate(bad_edges)
    size = k * n + 1
    root = k * n
    init = np.nonzero(region)[0]
    rows = np.concatenate([rows, np.full(len(init), root)])
    cols = np.concatenate([cols, init])
    adj = csr_matrix((np.ones(len(rows), np.int8), (rows, cols)), shape=(size, size))
    order, pred = breadth_first_order(adj, root, directed=True, return_predecessors=True)
    reached = np.zeros(size, bool)
    reached[order] = True
    advancing = np.zeros(size, bool)
    for c in range(k):
        advancing[c * n:(c + 1) * n] = tmasks[c]
    prod = _Product(n, k, adj, advancing, order, pred, reached=reached)
    hit = np.nonzero(reached[bad_states])[0] if len(bad_states) else []
    if len(hit):
        prod.escape = (int(bad_states[hit[0]]), tuple(int(x) for x in bad_edges[hit[0]]))
    elif static_bad:
        prod.escape = (None, static_bad[0])
    return prod


def _state(prod, s):
    return (int(s % prod.n), int(s // prod.n))


def _stem(prod, target):
    path = []
    s = target
    root = prod.k * prod.n
    while s != root and s >= 0:
        path.append(_state(prod, s))
        s = prod.pred[s]
    return path[::-1]


def _cycle_through(sub_adj, x, members, prod):
    """States of a cycle from ``x`` back to ``x`` inside ``members``."""
    order, pred = breadth_first_order(sub_adj, x, directed=True, return_predecessors=True)
    into_x = sub_adj[:, x].nonzero()[0]
    last = next(int(y) for y in into_x if members[y] and (y == x or pred[y] >= 0))
    path = []
    s = last
    while s != x:
        path.append(s)
        s = pred[s]
    path.append(x)
    return [_state(prod, s) for s in path[::-1]]


def _starving_sccs(prod, require_cover=None):
    """Nontrivial SCCs of the reachable non-advancing subgraph (optionally covering every set)."""
    keep = prod.reached & ~prod.advancing
    keep[-1] = False
    adj = prod.adj.tocoo()
    mask = keep[adj.row] & keep[adj.col]
    size = prod.adj.shape[0]
    sub = csr_matrix((np.ones(int(mask.sum()), np.int8), (adj.row[mask], adj.col[mask])),
                     shape=(size, size))
    ncomp, labels = connected_components(sub, directed=True, connection="strong")
    counts = np.bincount(labels, minlength=ncomp)
    selfloop = np.zeros(size, bool)
    selfloop[adj.row[mask & (adj.row == adj.col)]] = True
    for comp in np.unique(labels[keep]):
        members = labels == comp
        if counts[comp] < 2 and not np.any(selfloop & members):
            continue
        if require_cover is not None:
            verts = np.nonzero(members)[0] % prod.n
            if not all(np.any(cover[verts]) for cover in require_cover):
                continue
        x = int(np.nonzero(members & keep)[0][0])
        return x, members, sub
    return None


def _region_and_alive(graph, claimed, alive):
    alive = np.ones(graph.n, bool) if alive is None else as_mask(alive, graph.n)
    return as_mask(claimed, graph.n) & alive, alive


def check_p1_genbuchi(strategy: CounterStrategy, graph: GameGraph, objective, claimed_w1,
                      owner=None, alive=None) -> CheckResult:
    """Accept iff from every claimed vertex (counter 0) the strategy stays in the claim and
    every cycle of the product advances the counter."""
    owner = graph.owner if owner is None else owner
    tmasks = _tmasks(objective, graph.n)
    region, alive = _region_and_alive(graph, claimed_w1, alive)
    if strategy.k != tmasks.shape[0]:
        return CheckResult(False, f"strategy has {strategy.k} counter values, objective has {tmasks.shape[0]} sets")
    prod = _build_product(strategy, graph, tmasks, region, owner, alive)
    if prod.escape is not None:
        s, edge = prod.escape
        return CheckResult(False, "a move leaves the claimed winning set",
                           None if s is None else (_stem(prod, s), []), edge)
    hit = _starving_sccs(prod)
    if hit is not None:
        x, members, sub = hit
        return CheckResult(False, "a cycle never advances the counter",
                           (_stem(prod, x), _cycle_through(sub, x, members, prod)))
    return ACCEPT


def check_p1_gr1(strategy: CounterStrategy, graph: GameGraph, objective: GR1Objective,
                 claimed_w1) -> CheckResult:
    """Accept iff no reachable counter-starving cycle meets every assumption set.

    Fixing player 1's moves leaves a one-player game per counter phase;
    player 2 wins it exactly through such a cycle.
    """
    tmasks = objective.guarantee_masks(graph.n)
    region, alive = _region_and_alive(graph, claimed_w1, None)
    if strategy.k != objective.k2:
        return CheckResult(False, "strategy counter does not match the guarantee count")
    prod = _build_product(strategy, graph, tmasks, region, graph.owner, alive)
    if prod.escape is not None:
        s, edge = prod.escape
        return CheckResult(False, "a move leaves the claimed winning set",
                           None if s is None else (_stem(prod, s), []), edge)
    hit = _starving_sccs(prod, list(objective.assumption_masks(graph.n)))
    if hit is not None:
        x, members, sub = hit
        return CheckResult(False, "a cycle meets every assumption but misses a guarantee",
                           (_stem(prod, x), _cycle_through(sub, x, members, prod)))
    return ACCEPT


# ---------------------------------------------------------------- certificate replay

def _check_attract(graph, rank, attract, s, removed, alive, owner, where):
    for v in np.nonzero(removed & ~s & (owner == 2))[0]:
        w = attract.get(int(v))
        if w is None:
            return CheckResult(False, f"{where}: no attractor move at {v}")
        if not (np.any(graph.successors(v) == w) and alive[w] and 0 <= rank[w] < rank[v]):
            return CheckResult(False, f"{where}: attractor move does not approach the dominion",
                               edge=(int(v), int(w)))
    return None


def _replay_common(graph, rec, idx, alive, owner, sets, kind):
    where = f"record {idx}"
    s = as_mask(rec.found, graph.n)
    if not s.any():
        return None, None, CheckResult(False, f"{where}: empty dominion")
    if np.any(s & ~alive):
        return None, None, CheckResult(False, f"{where}: dominion contains removed vertices")
    if not 0 <= rec.witness < sets.shape[0]:
        return None, None, CheckResult(False, f"{where}: {kind} index out of range")
    touch = np.nonzero(s & sets[rec.witness])[0]
    if touch.size:
        return None, None, CheckResult(False, f"{where}: dominion meets {kind} {rec.witness} at {touch[0]}")
    live = alive[graph.src] & alive[graph.dst] & s[graph.src] & ~s[graph.dst] & (owner[graph.src] == 1)
    if live.any():
        e = np.nonzero(live)[0][0]
        return None, None, CheckResult(False, f"{where}: player 1 can leave the dominion",
                                       edge=(int(graph.src[e]), int(graph.dst[e])))
    rank = attractor_rank(graph, 2, s, alive, owner)
    removed = as_mask(rec.removed, graph.n)
    if not np.array_equal(removed, rank >= 0):
        return None, None, CheckResult(False, f"{where}: removed set is not the player-2 attractor")
    return s, rank, None


def check_p2_genbuchi(certificate: P2GenBuchiCertificate, graph: GameGraph, objective,
                      owner=None, alive=None) -> CheckResult:
    """Replay the removals; accept iff every record is a valid dominion + attractor and
    the removed sets add up to the claimed player-2 set."""
    owner = graph.owner if owner is None else owner
    tmasks = _tmasks(objective, graph.n)
    alive = np.ones(graph.n, bool) if alive is None else as_mask(alive, graph.n)
    total = np.zeros(graph.n, bool)
    for idx, rec in enumerate(certificate.records):
        s, rank, err = _replay_common(graph, rec, idx, alive, owner, tmasks, "target")
        if err is not None:
            return err
        for v in np.nonzero(s & (owner == 2))[0]:
            w = rec.stay.get(int(v))
            if w is None or not (np.any(graph.successors(v) == w) and s[w] and alive[w]):
                return CheckResult(False, f"record {idx}: stay move leaves the dominion",
                                   edge=(int(v), -1 if w is None else int(w)))
        removed = rank >= 0
        err = _check_attract(graph, rank, rec.attract, s, removed, alive, owner, f"record {idx}")
        if err is not None:
            return err
        total |= removed
        alive = alive & ~removed
    if not np.array_equal(total, as_mask(certificate.claimed_w2, graph.n)):
        return CheckResult(False, "removed sets do not add up to the claimed player-2 set")
    return ACCEPT


def check_p2_gr1(certificate: Gr1P2Certificate, graph: GameGraph, objective: GR1Objective) -> CheckResult:
    """Replay GR(1) removals; inside each dominion player 2's assumption strategy is
    checked as a generalized Büchi strategy of the swapped game."""
    n = graph.n
    swapped = _swapped(graph)
    lmasks = objective.assumption_masks(n)
    umasks = objective.guarantee_masks(n)
    alive = np.ones(n, bool)
    total = np.zeros(n, bool)
    for idx, rec in enumerate(certificate.records):
        s, rank, err = _replay_common(graph, rec, idx, alive, graph.owner, umasks, "guarantee")
        if err is not None:
            return err
        inner = check_p1_genbuchi(rec.inner, graph, lmasks, s, owner=swapped, alive=alive)
        if not inner:
            return CheckResult(False, f"record {idx}: {inner.reason}", inner.lasso, inner.edge)
        removed = rank >= 0
        err = _check_attract(graph, rank, rec.attract, s, removed, alive, graph.owner, f"record {idx}")
        if err is not None:
            return err
        total |= removed
        alive &= ~removed
    if not np.array_equal(total, as_mask(certificate.claimed_w2, n)):
        return CheckResult(False, "removed sets do not add up to the claimed player-2 set")
    return ACCEPT


def check_partition(n: int, w1, w2) -> CheckResult:
    a, b = as_mask(w1, n), as_mask(w2, n)
    if np.any(a & b):
        return CheckResult(False, "winning sets overlap")
    if not np.all(a | b):
        return CheckResult(False, "winning sets do not cover every vertex")
    return ACCEPT


def verify_genbuchi(graph, objective, p1: P1GenBuchiStrategy, cert: P2GenBuchiCertificate) -> CheckResult:
    """Full check of a generalized Büchi result: partition, player-1 strategy, player-2 certificate."""
    res = check_partition(graph.n, p1.region, cert.claimed_w2)
    if res:
        res = check_p1_genbuchi(p1, graph, objective, p1.region)
    if res:
        res = check_p2_genbuchi(cert, graph, objective)
    return res


def verify_gr1(graph, objective, p1: P1Gr1Strategy, cert: Gr1P2Certificate) -> CheckResult:
    res = check_partition(graph.n, p1.region, cert.claimed_w2)
    if res:
        res = check_p1_gr1(p1, graph, objective, p1.region)
    if res:
        res = check_p2_gr1(cert, graph, objective)
    return res
