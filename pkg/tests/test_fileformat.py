import os

import pytest

from buchigames import GR1Objective, solve_fast, solve_gr1_fast
from buchigames.fileformat import (GameFormatError, parse_game, read_game, result_from_dict,
                                   result_to_dict, serialize_game)
from buchigames.reductions import gen_random_game, gen_random_gr1
from buchigames.strategies import extract_genbuchi_strategies, extract_gr1_strategies, verify_genbuchi

from corpora import DATA, figure1

MINIMAL = "gbg 1\nn 1\nowners 1\nedges 1\n0 0\ntargets 1\n1 0\n"


def test_minimal_file():
    gf = parse_game(MINIMAL)
    assert gf.kind == "gbg"
    assert gf.graph.n == 1 and gf.graph.edge_set() == {(0, 0)}
    assert gf.objective.targets == ({0},)
    assert serialize_game(gf.graph, gf.objective) == MINIMAL


def test_comments_and_blank_lines_are_ignored():
    text = "# leading\ngbg 1\n\nn 1   # one vertex\nowners 1\nedges 1\n0 0\n# mid\ntargets 1\n1 0\n"
    gf = parse_game(text)
    assert gf.graph.n == 1
    # only comments ahead of the 'n' line are kept
    assert gf.header_comments == ["# leading"]


def test_truncated_edges_name_the_missing_line():
    text = "gbg 1\nn 2\nowners 1 2\nedges 3\n0 1\n1 0\n"
    with pytest.raises(GameFormatError) as exc:
        parse_game(text)
    assert exc.value.line == 7
    assert "edge 2 of 3" in str(exc.value)


@pytest.mark.parametrize("text, line, fragment", [
    ("gbg 2\n", 1, "bad header"),
    ("gbg 1\nn 2\nowners 1 3\n", 3, "owner must be 1 or 2"),
    ("gbg 1\nn 2\nowners 1\n", 3, "expected 2"),
    ("gbg 1\nn 1\nowners 1\nedges 1\n0 1\n", 5, "out of range"),
    ("gbg 1\nn 1\nowners 1\nedges 2\n0 0\n0 0\n", 6, "duplicate edge"),
    ("gbg 1\nn 1\nowners 1\nedges 1\n0 x\n", 5, "expected an integer"),
    ("gbg 1\nn 1\nowners 1\nedges 1\n0 0\ntargets 1\n2 0\n", 7, "declares 2"),
    ("gbg 1\nn 1\nowners 1\nedges 1\n0 0\ntargets 1\n1 0\nextra\n", 8, "unexpected content"),
])
def test_errors_carry_line_numbers(text, line, fragment):
    with pytest.raises(GameFormatError) as exc:
        parse_game(text)
    assert exc.value.line == line
    assert fragment in str(exc.value)


def test_sinks_are_rejected():
    with pytest.raises(GameFormatError, match="out-degree 0"):
        parse_game("gbg 1\nn 2\nowners 1 1\nedges 1\n0 1\ntargets 1\n0\n")


def test_gr1_file():
    text = "gr1 1\nn 2\nowners 1 2\nedges 2\n0 1\n1 0\nassume 1\n1 1\nguarantee 2\n1 0\n0\n"
    gf = parse_game(text)
    assert gf.kind == "gr1"
    assert isinstance(gf.objective, GR1Objective)
    assert gf.objective.assumptions == ({1},) and gf.objective.guarantees == ({0}, set())
    assert serialize_game(gf.graph, gf.objective) == text


def test_shipped_files_round_trip():
    for name in ("figure1.gbg", "figure2-triangle.gbg", "figure3-ov.gbg"):
        path = os.path.join(DATA, name)
        gf = read_game(path)
        text = serialize_game(gf.graph, gf.objective, gf.header_comments)
        again = parse_game(text)
        assert again.graph == gf.graph and again.objective == gf.objective
        assert serialize_game(again.graph, again.objective, again.header_comments) == text


def test_figure1_file_matches_the_encoded_game():
    g, obj = figure1()
    assert g.n == 10 and g.m == 23
    assert solve_fast(g, obj).w1 == {0, 1, 2, 5, 6, 7, 8}


def test_random_games_round_trip():
    for seed in range(10):
        g, obj = gen_random_game(15, 40, 3, seed=seed)
        text = serialize_game(g, obj, ["# meta seed"])
        gf = parse_game(text)
        assert gf.graph == g and gf.objective == obj
        assert serialize_game(gf.graph, gf.objective, gf.header_comments) == text
        g, obj = gen_random_gr1(15, 40, 2, 2, seed=seed)
        gf = parse_game(serialize_game(g, obj))
        assert gf.graph == g and gf.objective == obj


def test_result_round_trip():
    g, obj = figure1()
    res = solve_fast(g, obj)
    p1, cert = extract_genbuchi_strategies(res, g, obj)
    back, p1b, certb = result_from_dict(result_to_dict("gbg", res, p1, cert))
    assert back == res
    assert (p1b.moves == p1.moves).all() and p1b.region == p1.region
    assert certb == cert
    assert verify_genbuchi(g, obj, p1b, certb)

    g, obj = gen_random_gr1(20, 60, 2, 2, seed=1)
    res = solve_gr1_fast(g, obj)
    p1, cert = extract_gr1_strategies(res, g, obj)
    back, p1b, certb = result_from_dict(result_to_dict("gr1", res, p1, cert))
    assert back == res and (p1b.moves == p1.moves).all()
    assert [r.found for r in certb.records] == [r.found for r in cert.records]


def test_result_format_tag_is_checked():
    with pytest.raises(ValueError):
        result_from_dict({"format": "other"})
