"""Solvers for two-player graph games with generalized Büchi and GR(1) objectives."""
from .game import (P1, P2, GameGraph, GenBuchiObjective, GR1Objective, InvalidGameError,
                   IterationRecord, NotClosedError, Player, SolveResult, induced_subgame,
                   swap_players, validate)
from .attractors import AttractorResult, attractor, is_closed
from .arena import LevelGraph
from .genbuchi import build_level, solve_basic, solve_fast
from .progress import best, incr, lift_dominion
from .gr1 import find_small_dominion, solve_gr1_basic, solve_gr1_fast
from .strategies import (check_p1_genbuchi, check_p1_gr1, check_p2_genbuchi, check_p2_gr1,
                         extract_genbuchi_strategies, extract_gr1_strategies)
from .oracle import genbuchi_to_buchi, solve_buchi, solve_via_buchi_reduction

__all__ = [
    "P1", "P2", "Player", "GameGraph", "GenBuchiObjective", "GR1Objective", "SolveResult",
    "IterationRecord", "InvalidGameError", "NotClosedError", "validate", "swap_players",
    "induced_subgame", "AttractorResult", "attractor", "is_closed", "LevelGraph", "build_level",
    "solve_basic", "solve_fast", "best", "incr", "lift_dominion", "find_small_dominion",
    "solve_gr1_basic", "solve_gr1_fast", "extract_genbuchi_strategies", "extract_gr1_strategies",
    "check_p1_genbuchi", "check_p2_genbuchi", "check_p1_gr1", "check_p2_gr1",
    "genbuchi_to_buchi", "solve_buchi", "solve_via_buchi_reduction",
]
