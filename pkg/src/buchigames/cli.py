"""Command-line interface.

Exit codes: 0 success, 1 certificate rejected, 2 usage or input error.
"""
from __future__ import annotations

import sys

import click

from . import bench as bench_mod
from .fileformat import (GameFormatError, dump_result, load_result, read_game, result_to_dict,
                         serialize_game)
from .game import GR1Objective, InvalidGameError
from .genbuchi import solve_basic, solve_fast
from .gr1 import solve_gr1_basic, solve_gr1_fast
from .oracle import brute_force_ov, brute_force_triangle, solve_via_buchi_reduction
from . import reductions, strategies


class InputError(click.ClickException):
    exit_code = 2


def _load(path, want_gr1: bool):
    try:
        gf = read_game(path)
    except (OSError, GameFormatError, InvalidGameError) as exc:
        raise InputError(f"{path}: {exc}")
    if (gf.kind == "gr1") != want_gr1:
        other = "solve-gr1" if gf.kind == "gr1" else "solve"
        raise InputError(f"{path} is a '{gf.kind}' file; use '{other}'")
    return gf


def _ids(s) -> str:
    return " ".join(str(v) for v in sorted(s))


def _print_partition(res):
    click.echo(f"W1: {_ids(res.w1)}".rstrip())
    click.echo(f"W2: {_ids(res.w2)}".rstrip())


@click.group()
def main():
    """Solve generalized Büchi and GR(1) games on graphs."""


@main.command()
@click.option("--algo", type=click.Choice(["basic", "fast", "oracle"]), default="fast", show_default=True)
@click.option("--certify", is_flag=True, help="Extract and check strategies; store them with -o.")
@click.option("--sort-targets", is_flag=True, help="Visit target sets by increasing size.")
@click.option("-o", "--output", type=click.Path(dir_okay=False), help="Write the result as JSON.")
@click.argument("file", type=click.Path(dir_okay=False))
def solve(algo, certify, sort_targets, output, file):
    """Solve a generalized Büchi game file."""
    gf = _load(file, want_gr1=False)
    if algo == "oracle":
        if certify:
            raise InputError("--certify needs the basic or fast solver")
        res = solve_via_buchi_reduction(gf.graph, gf.objective)
    else:
        fn = solve_basic if algo == "basic" else solve_fast
        res = fn(gf.graph, gf.objective, sort_targets=sort_targets)
    _print_partition(res)
    p1 = cert = None
    verdict = None
    if certify:
        p1, cert = strategies.extract_genbuchi_strategies(res, gf.graph, gf.objective)
        verdict = strategies.verify_genbuchi(gf.graph, gf.objective, p1, cert)
        click.echo(f"certificate: {verdict.describe()}")
    if output:
        dump_result(output, result_to_dict("gbg", res, p1, cert))
    if verdict is not None and not verdict:
        sys.exit(1)


@main.command("solve-gr1")
@click.option("--algo", type=click.Choice(["basic", "fast"]), default="fast", show_default=True)
@click.option("--certify", is_flag=True, help="Extract and check strategies; store them with -o.")
@click.option("-o", "--output", type=click.Path(dir_okay=False), help="Write the result as JSON.")
@click.argument("file", type=click.Path(dir_okay=False))
def solve_gr1(algo, certify, output, file):
    """Solve a GR(1) game file."""
    gf = _load(file, want_gr1=True)
    fn = solve_gr1_basic if algo == "basic" else solve_gr1_fast
    res = fn(gf.graph, gf.objective)
    _print_partition(res)
    p1 = cert = None
    verdict = None
    if certify:
        p1, cert = strategies.extract_gr1_strategies(res, gf.graph, gf.objective)
        verdict = strategies.verify_gr1(gf.graph, gf.objective, p1, cert)
        click.echo(f"certificate: {verdict.describe()}")
    if output:
        dump_result(output, result_to_dict("gr1", res, p1, cert))
    if verdict is not None and not verdict:
        sys.exit(1)


@main.command()
@click.argument("game_file", type=click.Path(dir_okay=False))
@click.argument("result_file", type=click.Path(dir_okay=False))
def verify(game_file, result_file):
    """Check the strategies and certificate stored in a result file."""
    try:
        gf = read_game(game_file)
    except (OSError, GameFormatError) as exc:
        raise InputError(f"{game_file}: {exc}")
    try:
        res, p1, cert = load_result(result_file)
    except (OSError, ValueError, KeyError, TypeError, IndexError) as exc:
        raise InputError(f"{result_file}: cannot read result ({exc})")
    if p1 is None or cert is None:
        raise InputError(f"{result_file} holds no strategies; solve with --certify -o")
    if res.n != gf.graph.n:
        click.echo(f"rejected: result is for {res.n} vertices, game has {gf.graph.n}")
        sys.exit(1)
    if p1.region != res.w1 or cert.claimed_w2 != res.w2:
        click.echo("rejected: strategies do not match the stated winning sets")
        sys.exit(1)
    if isinstance(gf.objective, GR1Objective):
        verdict = strategies.verify_gr1(gf.graph, gf.objective, p1, cert)
    else:
        verdict = strategies.verify_genbuchi(gf.graph, gf.objective, p1, cert)
    click.echo(verdict.describe())
    sys.exit(0 if verdict else 1)


def _write(output, graph, objective, meta: str):
    text = serialize_game(graph, objective, [f"# meta {meta}"])
    if output in (None, "-"):
        click.echo(text, nl=False)
    else:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)


@main.group()
def gen():
    """Generate instances (random games or hardness reductions)."""


@gen.command("triangle")
@click.option("--n", "n", type=int, required=True)
@click.option("--p", "p", type=float, default=0.1, show_default=True, help="Edge probability.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("-o", "--output", default="-")
def gen_triangle(n, p, seed, output):
    """Triangle detection as a game (vertices that dead-end are pruned)."""
    inst = reductions.gen_random_triangle(n, p, seed)
    g, obj, _ = reductions.triangle_to_game(inst)
    g, obj, _ = reductions.prune_sinks(g, obj)
    if g.n == 0:
        raise InputError("the reduced game is empty after pruning (no triangle); try another seed")
    answer = str(brute_force_triangle(inst.n, inst.edges)).lower()
    _write(output, g, obj, f"generator=triangle n={n} p={p} seed={seed} triangle={answer}")


@gen.command("ov")
@click.option("--N", "N", type=int, required=True, help="Vectors per side.")
@click.option("--d", "d", type=int, required=True, help="Dimension.")
@click.option("--density", type=float, default=0.5, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("-o", "--output", default="-")
def gen_ov(N, d, density, seed, output):
    """Orthogonal vectors as a game."""
    inst = reductions.gen_random_ov(N, d, density, seed)
    if any(not any(u) for u in inst.s1):
        raise InputError("the first set contains the zero vector (answer: orthogonal); try another seed")
    g, obj, _ = reductions.ov_to_game(inst)
    answer = str(brute_force_ov(inst.s1, inst.s2)).lower()
    _write(output, g, obj, f"generator=ov N={N} d={d} density={density} seed={seed} orthogonal={answer}")


@gen.command("random")
@click.option("--n", "n", type=int, required=True)
@click.option("--m", "m", type=int, required=True)
@click.option("--k", "k", type=int, default=2, show_default=True)
@click.option("--owner-bias", type=float, default=0.5, show_default=True)
@click.option("--target-frac", type=float, default=0.3, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("-o", "--output", default="-")
def gen_random(n, m, k, owner_bias, target_frac, seed, output):
    """Random generalized Büchi game."""
    try:
        g, obj = reductions.gen_random_game(n, m, k, owner_bias, seed, target_frac)
    except ValueError as exc:
        raise InputError(str(exc))
    _write(output, g, obj, f"generator=random n={n} m={m} k={k} owner_bias={owner_bias} "
                           f"target_frac={target_frac} seed={seed}")


@gen.command("random-gr1")
@click.option("--n", "n", type=int, required=True)
@click.option("--m", "m", type=int, required=True)
@click.option("--k1", type=int, default=1, show_default=True)
@click.option("--k2", type=int, default=1, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("-o", "--output", default="-")
def gen_random_gr1(n, m, k1, k2, seed, output):
    """Random GR(1) game."""
    try:
        g, obj = reductions.gen_random_gr1(n, m, k1, k2, seed)
    except ValueError as exc:
        raise InputError(str(exc))
    _write(output, g, obj, f"generator=random-gr1 n={n} m={m} k1={k1} k2={k2} seed={seed}")


@main.command()
@click.option("--suite", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("-o", "--output", type=click.Path(dir_okay=False), required=True)
@click.option("--jobs", type=int, default=1, show_default=True)
@click.option("--repeat", type=int, default=1, show_default=True, help="Keep the best of N runs.")
def bench(suite, output, jobs, repeat):
    """Time the solvers on a suite manifest and write CSV."""
    try:
        entries = bench_mod.load_suite(suite)
    except (OSError, ValueError, KeyError, GameFormatError) as exc:
        raise InputError(f"{suite}: {exc}")
    rows = bench_mod.run_suite(entries, output, jobs, repeat)
    click.echo(f"wrote {len(rows)} rows to {output}")


if __name__ == "__main__":  # pragma: no cover
    main()
