"""Benchmark harness: solve every suite entry with every listed algorithm and emit CSV rows.

A suite manifest is JSON::

    {"instances": [
        {"name": "fig1", "file": "figure1.gbg", "algos": ["basic", "fast"]},
        {"name": "rnd", "generate": {"kind": "random", "n": 200, "m": 2000, "k": 3, "seed": 1}}
    ]}

File paths are relative to the manifest.  ``generate`` accepts the
parameters of the ``gen`` command.  Only the solve call is timed.
"""
from __future__ import annotations

import csv
import hashlib
import json
import os
import time
from concurrent.futures import ThreadPoolExecutor

from .fileformat import read_game
from .game import GR1Objective
from . import genbuchi, gr1, oracle, reductions

COLUMNS = ["instance", "n", "m", "k", "k1", "k2", "algo", "wall_ns", "|W1|", "iterations", "checksum"]

GB_SOLVERS = {
    "basic": genbuchi.solve_basic,
    "fast": genbuchi.solve_fast,
    "oracle": oracle.solve_via_buchi_reduction,
}
GR1_SOLVERS = {
    "basic": gr1.solve_gr1_basic,
    "fast": gr1.solve_gr1_fast,
}


def checksum(w1, w2) -> str:
    """Order-independent digest of the partition."""
    text = "W1:" + ",".join(map(str, sorted(w1))) + "|W2:" + ",".join(map(str, sorted(w2)))
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def generate(params: dict):
    """``(graph, objective)`` for a manifest ``generate`` block."""
    params = dict(params)
    kind = params.pop("kind")
    if kind == "random":
        return reductions.gen_random_game(**params)
    if kind == "random-gr1":
        return reductions.gen_random_gr1(**params)
    if kind == "triangle":
        inst = reductions.gen_random_triangle(**params)
        g, obj, _ = reductions.triangle_to_game(inst)
        g, obj, _ = reductions.prune_sinks(g, obj)
        return g, obj
    if kind == "ov":
        inst = reductions.gen_random_ov(**params)
        g, obj, _ = reductions.ov_to_game(inst)
        return g, obj
    raise ValueError(f"unknown generator '{kind}'")


def load_suite(path) -> list:
    with open(path, encoding="utf-8") as fh:
        manifest = json.load(fh)
    base = os.path.dirname(os.path.abspath(path))
    entries = []
    for i, item in enumerate(manifest["instances"]):
        name = item.get("name", f"instance{i}")
        if "file" in item:
            gf = read_game(os.path.join(base, item["file"]))
            graph, objective = gf.graph, gf.objective
        else:
            graph, objective = generate(item["generate"])
        is_gr1 = isinstance(objective, GR1Objective)
        algos = item.get("algos", ["basic", "fast"])
        known = GR1_SOLVERS if is_gr1 else GB_SOLVERS
        for a in algos:
            if a not in known:
                raise ValueError(f"{name}: unknown algorithm '{a}'")
        entries.append((name, graph, objective, algos))
    return entries


def run_one(name, graph, objective, algo, repeat: int = 1) -> dict:
    is_gr1 = isinstance(objective, GR1Objective)
    solver = (GR1_SOLVERS if is_gr1 else GB_SOLVERS)[algo]
    best = None
    for _ in range(max(1, repeat)):
        t0 = time.perf_counter_ns()
        res = solver(graph, objective)
        dt = time.perf_counter_ns() - t0
        best = dt if best is None else min(best, dt)
    return {
        "instance": name, "n": graph.n, "m": graph.m,
        "k": "" if is_gr1 else objective.k,
        "k1": objective.k1 if is_gr1 else "",
        "k2": objective.k2 if is_gr1 else "",
        "algo": algo, "wall_ns": best, "|W1|": len(res.w1),
        "iterations": res.iterations, "checksum": checksum(res.w1, res.w2),
    }


def warm_up() -> None:
    """Trigger JIT compilation so the first timed solve does not pay for it."""
    g, obj = reductions.gen_random_game(8, 20, 2, seed=0)
    for fn in GB_SOLVERS.values():
        fn(g, obj)
    g, obj = reductions.gen_random_gr1(8, 20, 2, 2, seed=0)
    for fn in GR1_SOLVERS.values():
        fn(g, obj)


def run_suite(entries, out_path, jobs: int = 1, repeat: int = 1) -> list:
    tasks = [(name, g, obj, a) for name, g, obj, algos in entries for a in algos]
    warm_up()
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(lambda t: run_one(*t, repeat=repeat), tasks))
    else:
        rows = [run_one(*t, repeat=repeat) for t in tasks]
    with open(out_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=COLUMNS)
        writer.writeheader()
        writer.writerows(rows)
    return rows
