"""Seeded instance corpora and certificate mutations shared by the test modules."""
import os

import numpy as np

from buchigames import GameGraph, GenBuchiObjective, GR1Objective
from buchigames.attractors import attractor_rank
from buchigames.fileformat import read_game
from buchigames.reductions import gen_random_game, gen_random_gr1
from buchigames.strategies import Gr1P2Certificate, Gr1P2Record, P2GenBuchiCertificate, P2Record

DATA = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "data")

NAMES = "abcdefghij"


def ids(names: str) -> frozenset:
    return frozenset(NAMES.index(c) for c in names)


def figure1():
    gf = read_game(os.path.join(DATA, "figure1.gbg"))
    return gf.graph, gf.objective


def genbuchi_corpus(count: int, base: int = 10_000, max_n: int = 50, max_m: int = 250, max_k: int = 4):
    """Random generalized Büchi games with n <= max_n and at most max_m edges in total."""
    for seed in range(count):
        rng = np.random.default_rng(base + seed)
        n = int(rng.integers(1, max_n + 1))
        # sinks receive one extra edge each, so leave room for n of them
        hi = max(1, min(max_m - n, n * n))
        m = int(rng.integers(min(n, hi), hi + 1))
        k = int(rng.integers(1, max_k + 1))
        g, obj = gen_random_game(n, m, k, float(rng.random()), base + seed, float(rng.uniform(0.05, 0.6)))
        yield seed, g, obj


def gr1_corpus(count: int, base: int = 20_000, max_n: int = 40, max_k: int = 3):
    for seed in range(count):
        rng = np.random.default_rng(base + seed)
        n = int(rng.integers(1, max_n + 1))
        m = int(rng.integers(n, min(200, n * n) + 1))
        k1 = int(rng.integers(1, max_k + 1))
        k2 = int(rng.integers(1, max_k + 1))
        g, obj = gen_random_gr1(n, m, k1, k2, base + seed, float(rng.random()),
                                float(rng.uniform(0.1, 0.7)), float(rng.uniform(0.05, 0.5)))
        yield seed, g, obj


def small_corpus(count: int, base: int = 0, max_n: int = 8):
    for seed in range(count):
        rng = np.random.default_rng(base + seed)
        n = int(rng.integers(1, max_n + 1))
        m = int(rng.integers(n, n * n + 1))
        k = int(rng.integers(1, 4))
        g, obj = gen_random_game(n, m, k, float(rng.random()), base + seed, float(rng.uniform(0.1, 0.6)))
        yield seed, g, obj


def cycle_gr1(n: int, seed: int):
    """A bare n-cycle where player 2 wins everywhere, but only with the whole cycle.

    The single assumption set is one vertex and the guarantee is empty, so
    the smallest player-2 dominion has n vertices and only the large search
    can find it.
    """
    rng = np.random.default_rng(seed)
    owner = np.where(rng.random(n) < 0.5, 1, 2)
    edges = [(v, (v + 1) % n) for v in range(n)]
    return GameGraph(n, owner, edges), GR1Objective([[int(rng.integers(n))]], [[]])


# ---------------------------------------------------------------- mutations

def _record_alive(graph, records, idx):
    alive = np.ones(graph.n, bool)
    for r in records[:idx]:
        alive[list(r.removed)] = False
    return alive


def _clone_genbuchi(cert):
    return P2GenBuchiCertificate([P2Record(r.found, r.witness, r.removed, dict(r.stay), dict(r.attract))
                                  for r in cert.records], cert.claimed_w2)


def _clone_gr1(cert):
    return Gr1P2Certificate([Gr1P2Record(r.found, r.witness, r.removed, r.inner.copy(), dict(r.attract))
                             for r in cert.records], cert.claimed_w2)


def p1_flips(graph, p1, rng, limit=4):
    """Single moves of a player-1 strategy redirected to a successor outside its region."""
    out = []
    region = p1.region
    cands = [(c, v, w) for v in sorted(region) if graph.owner[v] == 1
             for w in graph.successors(v).tolist() if w not in region for c in range(p1.k)]
    if not cands:
        return out
    for i in rng.permutation(len(cands))[:limit]:
        c, v, w = cands[i]
        bad = p1.copy()
        bad.moves[c, v] = w
        out.append((f"move ({v},{c}) -> {w}", bad))
    return out


def certificate_mutations(graph, objective, cert, rng):
    """Single-field corruptions of a player-2 certificate that every sound checker must reject."""
    gr1 = isinstance(cert, Gr1P2Certificate)
    clone = _clone_gr1 if gr1 else _clone_genbuchi
    sets = objective.guarantees if gr1 else objective.targets
    n = graph.n
    out = []
    if n:
        v = int(rng.integers(n))
        bad = clone(cert)
        bad.claimed_w2 = cert.claimed_w2 ^ {v}
        out.append((f"claimed_w2 toggles {v}", bad))
    for idx, rec in enumerate(cert.records):
        alive = _record_alive(graph, cert.records, idx)
        rank = attractor_rank(graph, 2, rec.found, alive)
        # witness pointing at a set the dominion meets, or out of range
        meets = [j for j, t in enumerate(sets) if t & rec.found]
        bad = clone(cert)
        bad.records[idx].witness = meets[int(rng.integers(len(meets)))] if meets else len(sets)
        out.append((f"record {idx} witness", bad))
        # removed set off by one vertex
        v = int(rng.integers(n))
        bad = clone(cert)
        bad.records[idx].removed = rec.removed ^ {v}
        out.append((f"record {idx} removed toggles {v}", bad))
        # dominion grows by a vertex outside its attractor
        outside = [u for u in range(n) if u not in rec.removed]
        if outside:
            u = outside[int(rng.integers(len(outside)))]
            bad = clone(cert)
            bad.records[idx].found = rec.found | {u}
            out.append((f"record {idx} found adds {u}", bad))
        # attractor move that does not approach the dominion, or a missing one
        pulls = [(v, w) for v in sorted(rec.removed - rec.found) if graph.owner[v] == 2
                 for w in graph.successors(v).tolist() if not (alive[w] and 0 <= rank[w] < rank[v])]
        if pulls:
            v, w = pulls[int(rng.integers(len(pulls)))]
            bad = clone(cert)
            bad.records[idx].attract[v] = w
            out.append((f"record {idx} attract {v}->{w}", bad))
        if rec.attract:
            v = sorted(rec.attract)[int(rng.integers(len(rec.attract)))]
            bad = clone(cert)
            del bad.records[idx].attract[v]
            out.append((f"record {idx} attract drops {v}", bad))
        # moves that leave the dominion
        leaves = [(v, w) for v in sorted(rec.found) if graph.owner[v] == 2
                  for w in graph.successors(v).tolist() if w not in rec.found]
        if leaves:
            v, w = leaves[int(rng.integers(len(leaves)))]
            bad = clone(cert)
            if gr1:
                c = int(rng.integers(bad.records[idx].inner.k))
                bad.records[idx].inner.moves[c, v] = w
                out.append((f"record {idx} inner move ({v},{c}) -> {w}", bad))
            else:
                bad.records[idx].stay[v] = w
                out.append((f"record {idx} stay {v}->{w}", bad))
        if not gr1 and rec.stay:
            v = sorted(rec.stay)[int(rng.integers(len(rec.stay)))]
            bad = clone(cert)
            del bad.records[idx].stay[v]
            out.append((f"record {idx} stay drops {v}", bad))
        bad = clone(cert)
        del bad.records[idx]
        out.append((f"record {idx} dropped", bad))
    return out
