"""Compare the numba and numpy kernel backends.

Each backend runs in its own interpreter because the backend is fixed at
import time by BUCHIGAMES_BACKEND.  Every run solves the same seeded
instances and reports the best wall time of a few repeats plus the
partition checksum, so the two columns can be checked for agreement.

    python3 benchmarks/bench_backends.py [--sizes 200 500 1000] [--repeat 3]
"""
import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, time
from buchigames import reductions, genbuchi, gr1
from buchigames.bench import checksum

cfg = json.loads(sys.argv[1])
rows = []

def best(fn, *args):
    fn(*args)  # warm-up (compilation for numba)
    times = []
    for _ in range(cfg["repeat"]):
        t0 = time.perf_counter()
        res = fn(*args)
        times.append(time.perf_counter() - t0)
    return min(times), checksum(res.w1, res.w2)

for n in cfg["sizes"]:
    m = min(n * n, 8 * n)
    g, obj = reductions.gen_random_game(n, m, 4, seed=n)
    for name, fn in (("basic", genbuchi.solve_basic), ("fast", genbuchi.solve_fast)):
        t, c = best(fn, g, obj)
        rows.append(["gbg", n, m, name, t, c])
    g, obj = reductions.gen_random_gr1(n, m, 2, 2, seed=n)
    for name, fn in (("gr1-basic", gr1.solve_gr1_basic), ("gr1-fast", gr1.solve_gr1_fast)):
        t, c = best(fn, g, obj)
        rows.append(["gr1", n, m, name, t, c])
print(json.dumps(rows))
"""


def run_backend(backend, sizes, repeat):
    env = dict(os.environ, BUCHIGAMES_BACKEND=backend)
    cfg = json.dumps({"sizes": sizes, "repeat": repeat})
    out = subprocess.run([sys.executable, "-c", WORKER, cfg], env=env, check=True,
                         capture_output=True, text=True).stdout
    return json.loads(out.strip().splitlines()[-1])


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[200, 500, 1000, 2000])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    nb = run_backend("numba", args.sizes, args.repeat)
    npy = run_backend("numpy", args.sizes, args.repeat)
    print(f"{'kind':5} {'n':>6} {'m':>7} {'algo':10} {'numba s':>9} {'numpy s':>9} {'speedup':>8} agree")
    ok = True
    for a, b in zip(nb, npy):
        agree = a[5] == b[5]
        ok &= agree
        print(f"{a[0]:5} {a[1]:6d} {a[2]:7d} {a[3]:10} {a[4]:9.4f} {b[4]:9.4f} {b[4] / a[4]:8.2f} {agree}")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
