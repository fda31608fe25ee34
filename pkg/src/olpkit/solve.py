"""Feasibility solvers for ordered level graphs.

Four routes compute whether an instance admits a crossing-free
y-monotone drawing respecting levels and positions:

* `solve_proper`: all edges span exactly one level.  Each strip is
  decided by one sorted scan over its edges.
* `solve_deg_one`: every vertex has at most one incoming and one
  outgoing edge.  The graph decomposes into vertex-disjoint monotone
  paths; the instance is feasible iff the left-of relation forced by
  neighbouring vertices is acyclic.
* `solve_exact`: backtracking over all per-level orders of
  pass-through edges.  Order relations forced by the level below, or
  shared between levels through chains of strip edges, prune partial
  orders early; an exhausted level jumps back to the deepest level it
  blamed for an exclusion.  Complete for every valid instance.
* `oracle_enumerate`: tests every structurally valid witness, built
  from scratch per level.  Deliberately shares no search code with
  `solve_exact` so the two can cross-check each other.

`solve` validates the instance and dispatches.
"""

from __future__ import annotations

import heapq
import os
from itertools import combinations, permutations
from math import comb, factorial
from typing import Dict, Iterator, List, NamedTuple, Optional, Tuple

from .core import (
    CrossingSet,
    Edge,
    EmbeddingWitness,
    OrderedLevelGraph,
    PreconditionError,
    ResourceBudgetError,
    WitnessObject,
    validate_olg,
    witness_check,
)

DEFAULT_NODE_BUDGET = 10 ** 7
NODE_BUDGET_ENV = "OLPKIT_NODE_BUDGET"

METHODS = ("auto", "proper", "deg1", "exact", "oracle")


class SolveResult(NamedTuple):
    status: str  # "feasible" | "infeasible"
    witness: Optional[EmbeddingWitness]
    method: str
    nodes: int


def resolve_node_budget(explicit: Optional[int] = None) -> int:
    if explicit is not None:
        if explicit <= 0:
            raise PreconditionError("node budget must be positive")
        return explicit
    env = os.environ.get(NODE_BUDGET_ENV)
    if env is not None:
        try:
            value = int(env)
        except ValueError:
            raise PreconditionError(f"{NODE_BUDGET_ENV} is not an integer: {env!r}")
        if value <= 0:
            raise PreconditionError(f"{NODE_BUDGET_ENV} must be positive")
        return value
    return DEFAULT_NODE_BUDGET


# -- proper instances --------------------------------------------------------


def solve_proper(graph: OrderedLevelGraph) -> SolveResult:
    """Decide an instance whose edges all span exactly one level."""
    if not graph.is_proper():
        raise PreconditionError("solve_proper requires all edges to span one level")
    for i in range(graph.num_levels - 1):
        items = sorted((graph.pos_of(u), graph.pos_of(v))
                       for u, v in graph.strip_edges(i))
        run_max = -1
        k = 0
        while k < len(items):
            bottom = items[k][0]
            group_min = items[k][1]
            group_max = group_min
            while k < len(items) and items[k][0] == bottom:
                group_max = items[k][1]
                k += 1
            if group_min < run_max:
                return SolveResult("infeasible", None, "proper", 0)
            run_max = max(run_max, group_max)
    witness = EmbeddingWitness(tuple(
        CrossingSet(i, graph.level_ids(i)) for i in range(graph.num_levels)))
    return SolveResult("feasible", witness, "proper", 0)


# -- degree-one instances -----------------------------------------------------


def _paths(graph: OrderedLevelGraph) -> List[List[str]]:
    """Vertex-disjoint maximal paths, in order of their start vertices."""
    out_edge: Dict[str, str] = {}
    has_in: Dict[str, bool] = {v.id: False for v in graph.vertices}
    for u, v in graph.edges:
        out_edge[u] = v
        has_in[v] = True
    starts = sorted((v for v in graph.vertices if not has_in[v.id]),
                    key=lambda v: (v.level, v.pos))
    paths = []
    for start in starts:
        path = [start.id]
        while path[-1] in out_edge:
            path.append(out_edge[path[-1]])
        paths.append(path)
    return paths


def solve_deg_one(graph: OrderedLevelGraph) -> SolveResult:
    """Decide an instance with in- and out-degree at most one."""
    if any(d > 1 for d in graph.in_degrees().values()) or \
            any(d > 1 for d in graph.out_degrees().values()):
        raise PreconditionError("solve_deg_one requires in/out degree at most 1")
    paths = _paths(graph)
    path_of: Dict[str, int] = {}
    for pid, path in enumerate(paths):
        for vid in path:
            path_of[vid] = pid

    successors: List[set] = [set() for _ in paths]
    indegree = [0] * len(paths)
    for lvl in range(graph.num_levels):
        ids = graph.level_ids(lvl)
        for left, right in zip(ids, ids[1:]):
            p, q = path_of[left], path_of[right]
            if q not in successors[p]:
                successors[p].add(q)
                indegree[q] += 1

    order: Dict[int, int] = {}
    ready = [pid for pid in range(len(paths)) if indegree[pid] == 0]
    heapq.heapify(ready)
    while ready:
        pid = heapq.heappop(ready)
        order[pid] = len(order)
        for q in sorted(successors[pid]):
            indegree[q] -= 1
            if indegree[q] == 0:
                heapq.heappush(ready, q)
    if len(order) < len(paths):
        return SolveResult("infeasible", None, "deg1", 0)

    objects_at: List[List[Tuple[int, WitnessObject]]] = [
        [] for _ in range(graph.num_levels)]
    for pid, path in enumerate(paths):
        rank = order[pid]
        for vid in path:
            objects_at[graph.level_of(vid)].append((rank, vid))
        for u, v in zip(path, path[1:]):
            for lvl in range(graph.level_of(u) + 1, graph.level_of(v)):
                objects_at[lvl].append((rank, (u, v)))
    witness = EmbeddingWitness(tuple(
        CrossingSet(lvl, tuple(obj for _, obj in sorted(row)))
        for lvl, row in enumerate(objects_at)))
    return SolveResult("feasible", witness, "deg1", 0)


# -- complete backtracking solver ---------------------------------------------


def _okey(obj: WitnessObject) -> Tuple[str, ...]:
    """Sort key giving witness objects one total order."""
    if isinstance(obj, str):
        return ("v", obj)
    return ("e", obj[0], obj[1])


class _OrderClasses:
    """Shared order unknowns between (level, object pair) slots.

    Two strip edges with distinct anchors below and distinct anchors
    above may not swap sides, so the relative order of their bottom
    objects equals the relative order of their top objects.  Chains of
    such equalities tie pairs on far-apart levels to one boolean.  The
    fixed per-level vertex orders seed values; the search assigns the
    rest and undoes them on backtrack.  Each value remembers the level
    that set it (-1 for the instance itself) so a failed insertion can
    blame a specific earlier decision.
    """

    def __init__(self) -> None:
        self.parent: Dict[tuple, tuple] = {}
        self.flip: Dict[tuple, bool] = {}
        self.size: Dict[tuple, int] = {}
        self.val: Dict[tuple, Tuple[bool, int]] = {}

    def _canon(self, level: int, a: WitnessObject,
               b: WitnessObject) -> Tuple[tuple, bool]:
        ka, kb = _okey(a), _okey(b)
        if ka <= kb:
            return (level, ka, kb), False
        return (level, kb, ka), True

    def _find(self, key: tuple) -> Tuple[tuple, bool]:
        parent = self.parent
        if key not in parent:
            parent[key] = key
            self.flip[key] = False
            self.size[key] = 1
            return key, False
        chain = []
        parities = []
        parity = False
        node = key
        while parent[node] != node:
            chain.append(node)
            parities.append(parity)
            parity ^= self.flip[node]
            node = parent[node]
        for link, seen in zip(chain, parities):
            parent[link] = node
            self.flip[link] = parity ^ seen
        return node, parity

    def tie(self, level_a: int, a1: WitnessObject, a2: WitnessObject,
            level_b: int, b1: WitnessObject, b2: WitnessObject) -> bool:
        """Record order(a1,a2)@level_a == order(b1,b2)@level_b.

        Returns False when the new equality contradicts the classes
        built so far, which already proves the instance infeasible.
        """
        key_a, fa = self._canon(level_a, a1, a2)
        key_b, fb = self._canon(level_b, b1, b2)
        ra, pa = self._find(key_a)
        rb, pb = self._find(key_b)
        rel = fa ^ fb ^ pa ^ pb
        if ra == rb:
            return not rel
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.flip[rb] = rel
        self.size[ra] += self.size[rb]
        if rb in self.val:
            vb, sb = self.val.pop(rb)
            va = vb ^ rel
            if ra in self.val:
                if self.val[ra][0] != va:
                    return False
            else:
                self.val[ra] = (va, sb)
        return True

    def class_size(self, level: int, a: WitnessObject, b: WitnessObject) -> int:
        key, _ = self._canon(level, a, b)
        root, _ = self._find(key)
        return self.size[root]

    def lookup(self, level: int, a: WitnessObject,
               b: WitnessObject) -> Optional[Tuple[bool, int]]:
        """(a-before-b, setter level) when the pair's class has a value."""
        key, flipped = self._canon(level, a, b)
        root, parity = self._find(key)
        got = self.val.get(root)
        if got is None:
            return None
        return got[0] ^ parity ^ flipped, got[1]

    def assign(self, level: int, a: WitnessObject, b: WitnessObject,
               a_before_b: bool, setter: int,
               trail: Optional[List[tuple]]) -> bool:
        key, flipped = self._canon(level, a, b)
        root, parity = self._find(key)
        want = a_before_b ^ flipped ^ parity
        got = self.val.get(root)
        if got is not None:
            return got[0] == want
        self.val[root] = (want, setter)
        if trail is not None:
            trail.append(root)
        return True


def _build_order_classes(graph: OrderedLevelGraph) -> Optional[_OrderClasses]:
    """Tie strip-forced pair orders together and seed vertex orders.

    Returns None when the ties alone are contradictory, i.e. some pair
    of objects would have to appear in both orders at once.
    """
    table = _OrderClasses()
    level_of = graph.level_of
    for lvl in range(graph.num_levels - 1):
        anchors = []
        for u, v in graph.strip_edges(lvl):
            bottom = u if level_of(u) == lvl else (u, v)
            top = v if level_of(v) == lvl + 1 else (u, v)
            anchors.append((bottom, top))
        for i, (b1, t1) in enumerate(anchors):
            for b2, t2 in anchors[i + 1:]:
                if b1 == b2 or t1 == t2:
                    continue
                if not table.tie(lvl, b1, b2, lvl + 1, t1, t2):
                    return None
    for lvl in range(graph.num_levels):
        ids = graph.level_ids(lvl)
        for i, a in enumerate(ids):
            for b in ids[i + 1:]:
                # Singleton classes are never consulted; skip the bulk.
                if table.class_size(lvl, a, b) == 1:
                    continue
                if not table.assign(lvl, a, b, True, -1, None):
                    return None
    return table


def solve_exact(graph: OrderedLevelGraph,
                node_budget: Optional[int] = None) -> SolveResult:
    """Complete search over per-level pass-through orders.

    Levels are fixed bottom-up.  Within a level the vertices keep their
    given order and each pass-through edge is inserted, in edge order,
    into the admissible gaps: a gap is ruled out when two objects with
    distinct anchors below would appear out of order, or when it
    contradicts an order relation already fixed elsewhere and shared
    through `_OrderClasses`.  When a level runs out of arrangements the
    search jumps straight back to the deepest level blamed for one of
    its exclusions; levels in between cannot affect the failures seen.
    Every slot placement counts one node against the budget, as does an
    insertion left with no admissible gap.
    """
    budget = resolve_node_budget(node_budget)
    n_levels = graph.num_levels
    if n_levels == 0:
        return SolveResult("feasible", EmbeddingWitness(()), "exact", 0)
    table = _build_order_classes(graph)
    if table is None:
        return SolveResult("infeasible", None, "exact", 0)
    in_edges: Dict[str, List[Edge]] = {v.id: [] for v in graph.vertices}
    for u, v in graph.edges:
        in_edges[v].append((u, v))
    edge_rank = {e: i for i, e in enumerate(graph.edges)}
    nodes = 0
    chosen: List[Tuple[WitnessObject, ...]] = [()] * n_levels
    level_of = graph.level_of
    lookup = table.lookup
    assign = table.assign

    def arrangements(level: int, conf: set) -> Iterator[Tuple[WitnessObject, ...]]:
        nonlocal nodes
        prev_index = {obj: i for i, obj in enumerate(chosen[level - 1])} \
            if level else {}

        def span_of(obj: WitnessObject) -> Optional[Tuple[int, int]]:
            below_edges = in_edges[obj] if isinstance(obj, str) else [obj]
            best = None
            for u, v in below_edges:
                bottom = u if level_of(u) == level - 1 else (u, v)
                pos = prev_index[bottom]
                if best is None:
                    best = (pos, pos)
                else:
                    best = (min(best[0], pos), max(best[1], pos))
            return best

        vertices = graph.level_ids(level)
        passes = sorted(graph.pass_throughs(level), key=edge_rank.__getitem__)
        seq: List[WitnessObject] = list(vertices)
        spans: List[Optional[Tuple[int, int]]] = [span_of(v) for v in vertices]
        run_max = None
        for span in spans:
            if span is None:
                continue
            if run_max is not None and span[0] < run_max:
                conf.add(level - 1)
                return
            if run_max is None or span[1] > run_max:
                run_max = span[1]
        pass_span = {e: span_of(e) for e in passes}
        trail: List[tuple] = []

        def place(pi: int) -> Iterator[Tuple[WitnessObject, ...]]:
            nonlocal nodes
            if pi == len(passes):
                yield tuple(seq)
                return
            e = passes[pi]
            e_min, e_max = pass_span[e]
            n = len(seq)
            lo, hi = 0, n
            lo_setters: set = set()
            hi_setters: set = set()
            free: List[Tuple[int, WitnessObject]] = []
            for idx, placed in enumerate(seq):
                got = lookup(level, e, placed)
                if got is None:
                    free.append((idx, placed))
                    continue
                before, setter = got
                if before:
                    if idx < hi:
                        hi = idx
                        if setter >= 0 and setter != level:
                            hi_setters.add(setter)
                else:
                    if idx + 1 > lo:
                        lo = idx + 1
                        if setter >= 0 and setter != level:
                            lo_setters.add(setter)
            scan_hi = 0
            while scan_hi < n:
                span = spans[scan_hi]
                if span is not None and span[1] > e_min:
                    break
                scan_hi += 1
            scan_lo = n
            while scan_lo > 0:
                span = spans[scan_lo - 1]
                if span is not None and span[0] < e_max:
                    break
                scan_lo -= 1
            if lo > 0:
                conf.update(lo_setters)
            if hi < n:
                conf.update(hi_setters)
            if level and (scan_lo > lo or scan_hi < hi):
                conf.add(level - 1)
            first, last = max(lo, scan_lo), min(hi, scan_hi)
            if first > last:
                nodes += 1
                if nodes > budget:
                    raise ResourceBudgetError(
                        f"exact search exceeded node budget {budget}")
                return
            for slot in range(first, last + 1):
                nodes += 1
                if nodes > budget:
                    raise ResourceBudgetError(
                        f"exact search exceeded node budget {budget}")
                mark = len(trail)
                for idx, placed in free:
                    assign(level, e, placed, slot <= idx, level, trail)
                seq.insert(slot, e)
                spans.insert(slot, pass_span[e])
                yield from place(pi + 1)
                del seq[slot]
                del spans[slot]
                while len(trail) > mark:
                    table.val.pop(trail.pop(), None)

        try:
            yield from place(0)
        finally:
            while trail:
                table.val.pop(trail.pop(), None)

    conf_sets: List[set] = [set() for _ in range(n_levels)]
    gens: List[Optional[Iterator[Tuple[WitnessObject, ...]]]] = [None] * n_levels
    gens[0] = arrangements(0, conf_sets[0])
    level = 0
    while True:
        try:
            seq = next(gens[level])
        except StopIteration:
            blame = conf_sets[level]
            blame.discard(level)
            gens[level] = None
            if not blame:
                return SolveResult("infeasible", None, "exact", nodes)
            target = max(blame)
            blame.discard(target)
            for mid in range(target + 1, level):
                gen = gens[mid]
                if gen is not None:
                    gen.close()
                    gens[mid] = None
            conf_sets[target] |= blame
            level = target
            continue
        chosen[level] = seq
        if level + 1 == n_levels:
            witness = EmbeddingWitness(tuple(
                CrossingSet(i, chosen[i]) for i in range(n_levels)))
            return SolveResult("feasible", witness, "exact", nodes)
        level += 1
        conf_sets[level] = set()
        gens[level] = arrangements(level, conf_sets[level])


# -- independent oracle -------------------------------------------------------


def _interleavings(vertices: Tuple[str, ...],
                   passes: Tuple[Edge, ...]) -> Iterator[Tuple[WitnessObject, ...]]:
    total = len(vertices) + len(passes)
    for slots in combinations(range(total), len(passes)):
        slot_set = frozenset(slots)
        for perm in permutations(passes):
            row: List[WitnessObject] = []
            vi = pi = 0
            for idx in range(total):
                if idx in slot_set:
                    row.append(perm[pi])
                    pi += 1
                else:
                    row.append(vertices[vi])
                    vi += 1
            yield tuple(row)


def oracle_enumerate(graph: OrderedLevelGraph,
                     node_budget: Optional[int] = None) -> SolveResult:
    """Try every structurally valid witness against `witness_check`.

    Refuses instances whose witness count exceeds the node budget.
    Intended as a ground-truth cross-check for the other solvers on
    small inputs, so it rebuilds candidate witnesses from first
    principles instead of reusing any search machinery.
    """
    budget = resolve_node_budget(node_budget)
    counts = []
    for lvl in range(graph.num_levels):
        v = graph.width(lvl)
        k = len(graph.pass_throughs(lvl))
        counts.append(comb(v + k, k) * factorial(k))
    total = 1
    for c in counts:
        total *= c
        if total > budget:
            raise ResourceBudgetError(
                f"witness space {total}+ exceeds node budget {budget}")

    def candidates(level: int) -> Iterator[List[CrossingSet]]:
        if level == graph.num_levels:
            yield []
            return
        for row in _interleavings(graph.level_ids(level),
                                  graph.pass_throughs(level)):
            for rest in candidates(level + 1):
                yield [CrossingSet(level, row)] + rest

    nodes = 0
    for levels in candidates(0):
        nodes += 1
        witness = EmbeddingWitness(tuple(levels))
        if witness_check(graph, witness):
            return SolveResult("feasible", witness, "oracle", nodes)
    return SolveResult("infeasible", None, "oracle", nodes)


# -- dispatcher ---------------------------------------------------------------


def solve(graph: OrderedLevelGraph, method: str = "auto",
          node_budget: Optional[int] = None) -> SolveResult:
    """Validate the instance, pick a solver and run it.

    `auto` uses the proper-instance scan when every edge spans one
    level, the path solver when in- and out-degrees are at most one,
    and the complete backtracking search otherwise.
    """
    if method not in METHODS:
        raise PreconditionError(f"unknown method {method!r}; expected one of {METHODS}")
    report = validate_olg(graph)
    if not report.ok:
        raise PreconditionError("invalid instance: " + "; ".join(report.issues))
    if method == "auto":
        if graph.is_proper():
            method = "proper"
        elif all(d <= 1 for d in graph.in_degrees().values()) and \
                all(d <= 1 for d in graph.out_degrees().values()):
            method = "deg1"
        else:
            method = "exact"
    if method == "proper":
        return solve_proper(graph)
    if method == "deg1":
        return solve_deg_one(graph)
    if method == "exact":
        return solve_exact(graph, node_budget)
    return oracle_enumerate(graph, node_budget)
