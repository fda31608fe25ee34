"""Seeded instance generators for test corpora.

All streams come from Python's `random.Random` (the Mersenne Twister)
seeded explicitly per call, so a (family, seed, size) triple always
yields the same corpus; nothing touches global RNG state.

Level-graph families keep instances at desk scale: at most 4 levels
and 10 vertices, level width and vertex degree capped by arguments.
The formula family cycles through a fixed pool of layouts on a small
grid (at most 2 variables and 3 clauses, degenerate short clauses and
an unsatisfiable contradiction included), shuffling each round.
"""

from __future__ import annotations

import random
from typing import List, Tuple

from .core import OrderedLevelGraph, PreconditionError
from .satgadget import ClauseShape, Pm3SatInstance

FAMILIES = ("olp-random", "olp-proper", "olp-deg1", "pm3sat-tiny")

MAX_VERTICES = 10


def _layout(variables, clauses) -> Pm3SatInstance:
    return Pm3SatInstance(
        tuple(variables),
        tuple(ClauseShape(y, tuple(legs)) for y, legs in clauses))


PM3SAT_POOL: Tuple[Pm3SatInstance, ...] = (
    _layout([(0, 4)], [(1, [2])]),
    _layout([(0, 4)], [(-1, [2])]),
    _layout([(0, 4)], [(1, [1]), (-1, [2])]),  # contradiction, unsatisfiable
    _layout([(0, 4)], [(1, [1]), (-1, [2]), (2, [3])]),
    _layout([(0, 4), (6, 10)], [(1, [2, 8]), (-1, [1, 7])]),
    _layout([(0, 4), (6, 10)], [(1, [3, 7]), (2, [1, 9]), (-1, [2, 8])]),
    _layout([(0, 4), (6, 10)], [(1, [1, 2, 3]), (-1, [7, 8, 9])]),
    _layout([(0, 4), (6, 10)], [(-1, [2, 7]), (-2, [1, 8])]),
)


def showcase_layout() -> Pm3SatInstance:
    """Fixed five-variable, five-clause rectilinear layout.

    Satisfiable, every clause has three legs, and each side of the axis
    carries nested clauses, so the full gadget machinery (merged
    E-shapes, tunnel lanes, gates) is exercised at realistic size.
    """
    return _layout(
        [(0, 8), (10, 18), (20, 28), (30, 38), (40, 48)],
        [(1, [6, 15, 25]), (2, [2, 35, 45]),
         (-1, [7, 14, 24]), (-2, [5, 27, 34]), (-3, [3, 36, 44])])


def _random_levels(rng: random.Random, max_width: int) -> List[Tuple[str, int, int]]:
    while True:
        levels = rng.randint(1, 4)
        widths = [rng.randint(1, max_width) for _ in range(levels)]
        if sum(widths) <= MAX_VERTICES:
            break
    return [(f"v{lvl}_{pos}", lvl, pos)
            for lvl, width in enumerate(widths) for pos in range(width)]


def _random_olg(rng: random.Random, max_width: int, max_degree: int,
                proper: bool = False, deg_one: bool = False) -> OrderedLevelGraph:
    vertices = _random_levels(rng, max_width)
    ids = [v[0] for v in vertices]
    lvl_of = {v[0]: v[1] for v in vertices}
    deg = {vid: 0 for vid in ids}
    out_deg = {vid: 0 for vid in ids}
    in_deg = {vid: 0 for vid in ids}
    edges: List[Tuple[str, str]] = []
    attempts = rng.randint(0, 2 * len(ids)) if len(ids) > 1 else 0
    for _ in range(attempts):
        u, w = rng.sample(ids, 2)
        if lvl_of[u] == lvl_of[w]:
            continue
        if lvl_of[u] > lvl_of[w]:
            u, w = w, u
        if proper and lvl_of[w] - lvl_of[u] != 1:
            continue
        if deg[u] >= max_degree or deg[w] >= max_degree or (u, w) in edges:
            continue
        if deg_one and (out_deg[u] >= 1 or in_deg[w] >= 1):
            continue
        edges.append((u, w))
        deg[u] += 1
        deg[w] += 1
        out_deg[u] += 1
        in_deg[w] += 1
    return OrderedLevelGraph(vertices, edges)


def gen_corpus(family: str, seed: int, size: int,
               max_width: int = 3, max_degree: int = 3) -> list:
    """Deterministic corpus of `size` instances of the given family."""
    if family not in FAMILIES:
        raise PreconditionError(
            f"unknown family {family!r}; expected one of {FAMILIES}")
    if size < 0:
        raise PreconditionError("size must be non-negative")
    if max_width < 1 or max_degree < 1:
        raise PreconditionError("caps must be at least 1")
    rng = random.Random(seed)
    if family == "pm3sat-tiny":
        out: list = []
        while len(out) < size:
            batch = list(PM3SAT_POOL)
            rng.shuffle(batch)
            out.extend(batch)
        return out[:size]
    proper = family == "olp-proper"
    deg_one = family == "olp-deg1"
    return [_random_olg(rng, max_width, max_degree, proper, deg_one)
            for _ in range(size)]
