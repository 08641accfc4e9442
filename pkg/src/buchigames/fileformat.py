"""Text format for games and JSON format for results.

Game files are line oriented; ``#`` starts a comment::

    gbg 1
    n 2
    owners 1 2
    edges 3
    0 1
    1 0
    1 1
    targets 1
    1 0

GR(1) files start with ``gr1 1`` and replace the ``targets`` block by
``assume <k1>`` and ``guarantee <k2>`` blocks of the same shape.  Full-line
comments before the ``n`` line are kept and written back by
:func:`serialize_game`; other comments are dropped.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from .game import GameGraph, GenBuchiObjective, GR1Objective, SolveResult, IterationRecord
from .strategies import (Gr1P2Certificate, Gr1P2Record, P1GenBuchiStrategy, P1Gr1Strategy,
                         P2GenBuchiCertificate, P2Record)

KINDS = {"gbg": GenBuchiObjective, "gr1": GR1Objective}


class GameFormatError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


@dataclass
class GameFile:
    kind: str
    graph: GameGraph
    objective: Union[GenBuchiObjective, GR1Objective]
    header_comments: list = field(default_factory=list)


class _Lines:
    """Iterator over (line number, tokens, raw text) of non-empty, comment-stripped lines."""

    def __init__(self, text: str):
        self.items = []
        self.header_comments = []
        for no, raw in enumerate(text.splitlines(), start=1):
            body = raw.split("#", 1)[0].strip()
            if not body:
                # comments between the header line and the 'n' line are kept
                if raw.strip().startswith("#") and len(self.items) <= 1:
                    self.header_comments.append((no, raw.rstrip()))
                continue
            self.items.append((no, body.split(), raw))
        self.pos = 0
        self.last_line = len(text.splitlines())

    def next(self, what: str):
        if self.pos >= len(self.items):
            raise GameFormatError(f"unexpected end of file, expected {what}", self.last_line + 1)
        item = self.items[self.pos]
        self.pos += 1
        return item

    def keyword(self, word: str, nargs: int = 1):
        no, toks, raw = self.next(f"'{word}'")
        if toks[0] != word:
            raise GameFormatError(f"expected '{word}', found '{toks[0]}'", no, 1)
        if len(toks) != nargs + 1:
            raise GameFormatError(f"'{word}' takes {nargs} value(s), found {len(toks) - 1}", no)
        return no, [_int(t, no, raw) for t in toks[1:]], raw


def _int(tok: str, no: int, raw: str) -> int:
    try:
        return int(tok)
    except ValueError:
        col = raw.find(tok) + 1
        raise GameFormatError(f"expected an integer, found '{tok}'", no, col) from None


def _read_sets(lines: _Lines, word: str, n: int) -> list:
    _, (count,), _ = lines.keyword(word)
    if count < 0:
        raise GameFormatError(f"'{word}' count must be non-negative")
    sets = []
    for idx in range(count):
        no, toks, raw = lines.next(f"set {idx} of '{word}' ({count} expected)")
        vals = [_int(t, no, raw) for t in toks]
        size, ids = vals[0], vals[1:]
        if size != len(ids):
            raise GameFormatError(f"set declares {size} members but lists {len(ids)}", no, 1)
        for t, v in zip(toks[1:], ids):
            if not 0 <= v < n:
                raise GameFormatError(f"vertex {v} out of range 0..{n - 1}", no, raw.find(t) + 1)
        sets.append(ids)
    return sets


def parse_game(text: str) -> GameFile:
    """Parse a game file; raises :class:`GameFormatError` with line numbers."""
    lines = _Lines(text)
    no, toks, raw = lines.next("header 'gbg 1' or 'gr1 1'")
    if len(toks) != 2 or toks[0] not in KINDS or toks[1] != "1":
        raise GameFormatError(f"bad header '{raw.strip()}', expected 'gbg 1' or 'gr1 1'", no, 1)
    kind = toks[0]
    _, (n,), _ = lines.keyword("n")
    if n < 0:
        raise GameFormatError("vertex count must be non-negative")
    no, toks, raw = lines.next("'owners'")
    if toks[0] != "owners":
        raise GameFormatError(f"expected 'owners', found '{toks[0]}'", no, 1)
    owners = [_int(t, no, raw) for t in toks[1:]]
    if len(owners) != n:
        raise GameFormatError(f"'owners' lists {len(owners)} values, expected {n}", no)
    for t, o in zip(toks[1:], owners):
        if o not in (1, 2):
            raise GameFormatError(f"owner must be 1 or 2, found {o}", no, raw.find(t) + 1)
    eno, (m,), _ = lines.keyword("edges")
    edges = []
    seen = {}
    for idx in range(m):
        no, toks, raw = lines.next(f"edge {idx} of {m} (after line {eno})")
        if len(toks) != 2:
            raise GameFormatError(f"edge line needs 2 values, found {len(toks)}", no)
        u, v = (_int(t, no, raw) for t in toks)
        for t, x in zip(toks, (u, v)):
            if not 0 <= x < n:
                raise GameFormatError(f"vertex {x} out of range 0..{n - 1}", no, raw.find(t) + 1)
        if (u, v) in seen:
            raise GameFormatError(f"duplicate edge {u} {v} (first on line {seen[(u, v)]})", no)
        seen[(u, v)] = no
        edges.append((u, v))
    graph = GameGraph(n, owners, edges)
    sinks = np.nonzero(graph.out_degree == 0)[0]
    if len(sinks):
        raise GameFormatError(f"vertex {int(sinks[0])} has out-degree 0")
    if kind == "gbg":
        sets = _read_sets(lines, "targets", n)
        if not sets:
            raise GameFormatError("at least one target set is required")
        objective = GenBuchiObjective(sets)
    else:
        assume = _read_sets(lines, "assume", n)
        guarantee = _read_sets(lines, "guarantee", n)
        if not assume or not guarantee:
            raise GameFormatError("GR(1) files need at least one assumption and one guarantee")
        objective = GR1Objective(assume, guarantee)
    if lines.pos < len(lines.items):
        no, toks, _ = lines.items[lines.pos]
        raise GameFormatError(f"unexpected content '{' '.join(toks)}'", no, 1)
    return GameFile(kind, graph, objective, [c for _, c in lines.header_comments])


def read_game(path) -> GameFile:
    with open(path, encoding="utf-8") as fh:
        return parse_game(fh.read())


def _set_line(s) -> str:
    ids = sorted(s)
    return " ".join(str(x) for x in [len(ids), *ids])


def serialize_game(graph: GameGraph, objective, header_comments=()) -> str:
    kind = "gr1" if isinstance(objective, GR1Objective) else "gbg"
    out = [f"{kind} 1", *header_comments, f"n {graph.n}",
           "owners " + " ".join(str(int(o)) for o in graph.owner), f"edges {graph.m}"]
    out += [f"{int(u)} {int(v)}" for u, v in zip(graph.src, graph.dst)]
    if kind == "gbg":
        out.append(f"targets {objective.k}")
        out += [_set_line(t) for t in objective.targets]
    else:
        out.append(f"assume {objective.k1}")
        out += [_set_line(t) for t in objective.assumptions]
        out.append(f"guarantee {objective.k2}")
        out += [_set_line(t) for t in objective.guarantees]
    return "\n".join(out) + "\n"


def write_game(path, graph, objective, header_comments=()) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_game(graph, objective, header_comments))


# ---------------------------------------------------------------- results

def _pairs(d: dict) -> list:
    return [[int(v), int(w)] for v, w in sorted(d.items())]


def _moves_out(strategy) -> list:
    c, v = np.nonzero(strategy.moves >= 0)
    return [[int(a), int(b), int(strategy.moves[a, b])] for a, b in zip(c, v)]


def _moves_in(data, n, cls):
    k = int(data["k"])
    moves = np.full((k, n), -1, np.int64)
    for c, v, w in data["moves"]:
        moves[c, v] = w
    return cls(frozenset(data["region"]), moves)


def result_to_dict(kind: str, result: SolveResult, p1=None, cert=None) -> dict:
    out = {
        "format": "buchigames-result",
        "version": 1,
        "kind": kind,
        "algo": result.algo,
        "n": result.n,
        "w1": sorted(result.w1),
        "w2": sorted(result.w2),
        "trace": [{"found": sorted(r.found), "removed": sorted(r.removed), "witness": r.witness,
                   "level": r.level, "source": r.source} for r in result.trace],
    }
    if result.final_level is not None:
        out["final_level"] = result.final_level
    if p1 is not None:
        out["p1_strategy"] = {"k": p1.k, "region": sorted(p1.region), "moves": _moves_out(p1)}
    if cert is not None:
        recs = []
        for r in cert.records:
            item = {"found": sorted(r.found), "witness": r.witness, "removed": sorted(r.removed),
                    "attract": _pairs(r.attract)}
            if isinstance(r, Gr1P2Record):
                item["inner"] = {"k": r.inner.k, "region": sorted(r.inner.region),
                                 "moves": _moves_out(r.inner)}
            else:
                item["stay"] = _pairs(r.stay)
            recs.append(item)
        out["p2_certificate"] = {"records": recs, "claimed_w2": sorted(cert.claimed_w2)}
    return out


def dump_result(path, data: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(data, fh, indent=1, sort_keys=True)
        fh.write("\n")


def result_from_dict(data: dict):
    """``(SolveResult, p1 strategy or None, certificate or None)``."""
    if data.get("format") != "buchigames-result":
        raise ValueError("not a result file")
    n = int(data["n"])
    trace = tuple(IterationRecord(frozenset(r["found"]), frozenset(r["removed"]), int(r["witness"]),
                                  r.get("level"), r.get("source", "full")) for r in data["trace"])
    result = SolveResult(n, frozenset(data["w1"]), frozenset(data["w2"]), trace, data.get("algo", ""),
                         data.get("final_level"))
    gr1 = data["kind"] == "gr1"
    p1 = cert = None
    if "p1_strategy" in data:
        p1 = _moves_in(data["p1_strategy"], n, P1Gr1Strategy if gr1 else P1GenBuchiStrategy)
    if "p2_certificate" in data:
        recs = []
        for r in data["p2_certificate"]["records"]:
            attract = {int(v): int(w) for v, w in r["attract"]}
            if gr1:
                recs.append(Gr1P2Record(frozenset(r["found"]), int(r["witness"]), frozenset(r["removed"]),
                                        _moves_in(r["inner"], n, P1GenBuchiStrategy), attract))
            else:
                recs.append(P2Record(frozenset(r["found"]), int(r["witness"]), frozenset(r["removed"]),
                                     {int(v): int(w) for v, w in r["stay"]}, attract))
        cls = Gr1P2Certificate if gr1 else P2GenBuchiCertificate
        cert = cls(recs, frozenset(data["p2_certificate"]["claimed_w2"]))
    return result, p1, cert


def load_result(path):
    with open(path, encoding="utf-8") as fh:
        return result_from_dict(json.load(fh))
