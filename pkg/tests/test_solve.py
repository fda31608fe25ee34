import random
from math import comb, factorial

import pytest

from olpkit.core import (
    OrderedLevelGraph,
    PreconditionError,
    ResourceBudgetError,
    Vertex,
    witness_check,
)
from olpkit.solve import (
    oracle_enumerate,
    resolve_node_budget,
    solve,
    solve_deg_one,
    solve_exact,
    solve_proper,
)


def make_graph(levels, edges=()):
    vertices = [Vertex(vid, lvl, pos)
                for lvl, ids in enumerate(levels)
                for pos, vid in enumerate(ids)]
    return OrderedLevelGraph(vertices, edges)


def oracle_size(graph):
    total = 1
    for lvl in range(graph.num_levels):
        v = graph.width(lvl)
        k = len(graph.pass_throughs(lvl))
        total *= comb(v + k, k) * factorial(k)
    return total


# -- known tiny instances ----------------------------------------------------


CROSSING = make_graph([["a0", "a1"], ["b0", "b1"]],
                      [("a0", "b1"), ("a1", "b0")])
PARALLEL = make_graph([["a0", "a1"], ["b0", "b1"]],
                      [("a0", "b0"), ("a1", "b1")])


def test_crossing_pair_is_infeasible_everywhere():
    for solver in (solve_proper, solve_deg_one, solve_exact, oracle_enumerate):
        assert solver(CROSSING).status == "infeasible"


def test_parallel_pair_is_feasible_everywhere():
    for solver in (solve_proper, solve_deg_one, solve_exact, oracle_enumerate):
        result = solver(PARALLEL)
        assert result.status == "feasible"
        assert witness_check(PARALLEL, result.witness)


def test_fan_is_feasible_but_not_deg_one():
    fan = make_graph([["a"], ["b0", "b1"]], [("a", "b0"), ("a", "b1")])
    assert solve_proper(fan).status == "feasible"
    with pytest.raises(PreconditionError):
        solve_deg_one(fan)
    assert solve(fan).method == "proper"


def test_long_edge_forced_to_one_side():
    # The pass-through must run left of m: on the right it would have to
    # cross either (b, m) below or (m, u) above.
    g = make_graph([["a", "b"], ["m"], ["t", "u"]],
                   [("a", "t"), ("b", "m"), ("m", "u")])
    for solver in (solve_exact, oracle_enumerate):
        result = solver(g)
        assert result.status == "feasible"
        assert witness_check(g, result.witness)
        assert result.witness.levels[1].objects == (("a", "t"), "m")


def test_twisted_long_edges_infeasible():
    # Two long edges forced through a single middle slot in opposite order.
    g = make_graph([["a0", "a1"], ["m0", "m1"], ["t0", "t1"]],
                   [("a0", "t1"), ("a1", "t0"), ("m0", "t0"), ("a0", "m0")])
    assert solve_exact(g).status == oracle_enumerate(g).status


def test_empty_graph_is_feasible():
    g = OrderedLevelGraph([], [])
    for method in ("auto", "exact", "proper", "deg1", "oracle"):
        result = solve(g, method=method)
        assert result.status == "feasible"
        assert result.witness.levels == ()


# -- dispatcher -------------------------------------------------------------


def test_dispatch_prefers_cheapest_applicable():
    assert solve(PARALLEL).method == "proper"
    skew = make_graph([["a"], ["m"], ["b"]], [("a", "b"), ("a", "m")])
    assert solve(skew).method == "exact"
    chain = make_graph([["a"], ["m"], ["b"]], [("a", "b")])
    assert solve(chain).method == "deg1"


def test_dispatch_rejects_invalid_instances():
    bad = OrderedLevelGraph([Vertex("a", 0, 0), Vertex("b", 0, 0)])
    with pytest.raises(PreconditionError):
        solve(bad)
    with pytest.raises(PreconditionError):
        solve(PARALLEL, method="guess")


def test_explicit_method_checks_preconditions():
    long_edge = make_graph([["a"], ["m"], ["b"]], [("a", "b")])
    with pytest.raises(PreconditionError):
        solve_proper(long_edge)


# -- budgets ----------------------------------------------------------------


def test_budget_resolution(monkeypatch):
    monkeypatch.delenv("OLPKIT_NODE_BUDGET", raising=False)
    assert resolve_node_budget() == 10 ** 7
    assert resolve_node_budget(42) == 42
    monkeypatch.setenv("OLPKIT_NODE_BUDGET", "123")
    assert resolve_node_budget() == 123
    assert resolve_node_budget(9) == 9
    monkeypatch.setenv("OLPKIT_NODE_BUDGET", "lots")
    with pytest.raises(PreconditionError):
        resolve_node_budget()
    with pytest.raises(PreconditionError):
        resolve_node_budget(0)


def test_exact_budget_exhaustion():
    g = make_graph([["a0", "a1"], ["m"], ["t0", "t1"]],
                   [("a0", "t0"), ("a1", "t1"), ("a0", "m")])
    with pytest.raises(ResourceBudgetError):
        solve_exact(g, node_budget=1)
    assert solve_exact(g, node_budget=100).status == "feasible"


def test_oracle_refuses_oversized_space():
    wide = make_graph(
        [[f"a{i}" for i in range(9)], ["m"], [f"t{i}" for i in range(9)]],
        [(f"a{i}", f"t{i}") for i in range(9)])
    assert oracle_size(wide) > 10 ** 5
    with pytest.raises(ResourceBudgetError):
        oracle_enumerate(wide, node_budget=10 ** 5)


def test_exact_budget_env(monkeypatch):
    g = make_graph([["a0", "a1"], ["m"], ["t0", "t1"]],
                   [("a0", "t0"), ("a1", "t1"), ("a0", "m")])
    monkeypatch.setenv("OLPKIT_NODE_BUDGET", "1")
    with pytest.raises(ResourceBudgetError):
        solve_exact(g)


# -- randomized cross-checks -------------------------------------------------


def random_levels(rng, max_levels=4, max_width=3):
    num_levels = rng.randint(2, max_levels)
    levels = []
    counter = 0
    for _ in range(num_levels):
        width = rng.randint(1, max_width)
        levels.append([f"v{counter + i}" for i in range(width)])
        counter += width
    return levels


def level_of(levels):
    return {vid: lvl for lvl, ids in enumerate(levels) for vid in ids}


def random_general(rng):
    while True:
        levels = random_levels(rng)
        lvl = level_of(levels)
        ids = list(lvl)
        candidates = [(u, v) for u in ids for v in ids if lvl[u] < lvl[v]]
        rng.shuffle(candidates)
        g = make_graph(levels, candidates[: rng.randint(0, min(6, len(candidates)))])
        if oracle_size(g) <= 10 ** 5:
            return g


def random_proper(rng):
    levels = random_levels(rng)
    lvl = level_of(levels)
    ids = list(lvl)
    candidates = [(u, v) for u in ids for v in ids if lvl[v] == lvl[u] + 1]
    rng.shuffle(candidates)
    return make_graph(levels, candidates[: rng.randint(0, min(6, len(candidates)))])


def random_deg_one(rng):
    while True:
        levels = random_levels(rng)
        lvl = level_of(levels)
        ids = list(lvl)
        candidates = [(u, v) for u in ids for v in ids if lvl[u] < lvl[v]]
        rng.shuffle(candidates)
        used_out, used_in, edges = set(), set(), []
        for u, v in candidates:
            if u in used_out or v in used_in:
                continue
            used_out.add(u)
            used_in.add(v)
            edges.append((u, v))
            if len(edges) >= rng.randint(1, 5):
                break
        g = make_graph(levels, edges)
        if oracle_size(g) <= 10 ** 5:
            return g


def test_exact_matches_oracle_on_random_instances():
    rng = random.Random(97)
    verdicts = {"feasible": 0, "infeasible": 0}
    for _ in range(150):
        g = random_general(rng)
        got = solve_exact(g)
        expected = oracle_enumerate(g)
        assert got.status == expected.status
        if got.status == "feasible":
            assert witness_check(g, got.witness)
        verdicts[got.status] += 1
    assert min(verdicts.values()) > 10


def test_proper_matches_oracle_on_random_instances():
    rng = random.Random(293)
    for _ in range(150):
        g = random_proper(rng)
        got = solve_proper(g)
        assert got.status == oracle_enumerate(g).status
        if got.status == "feasible":
            assert witness_check(g, got.witness)


def test_deg_one_matches_oracle_on_random_instances():
    rng = random.Random(431)
    verdicts = {"feasible": 0, "infeasible": 0}
    for _ in range(150):
        g = random_deg_one(rng)
        got = solve_deg_one(g)
        assert got.status == oracle_enumerate(g).status
        if got.status == "feasible":
            assert witness_check(g, got.witness)
        verdicts[got.status] += 1
    assert verdicts["feasible"] > 10
