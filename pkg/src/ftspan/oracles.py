"""Brute-force ground truth.

Everything here enumerates: fault sets, edge subsets, cycles. Distances are
computed by Floyd-Warshall over scaled integer weights so that the checks share
no shortest-path code with the fast routines they validate.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Any, Iterable, Iterator

import numpy as np

from .budget import DEFAULT_BUDGET, Budget, BudgetExceeded
from .graph import (
    INFINITY,
    CycleWitness,
    DisjointSet,
    Subgraph,
    View,
    WeightedMultigraph,
    as_view,
    dist,
)

_INT64_SAFE = 1 << 62


def _jsonable(value: Any) -> Any:
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, float) and value == INFINITY:
        return "inf"
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return sorted(_jsonable(v) for v in value)
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    return value


@dataclass
class VerificationReport:
    passed: bool
    reason: str = ""
    witness: dict[str, Any] | None = field(default=None)

    def __bool__(self) -> bool:
        return self.passed

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"verdict": self.verdict, "witness": _jsonable(self.witness)}
        if self.reason:
            out["reason"] = self.reason
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


# -- fault-set enumeration ---------------------------------------------------


def colex_subsets(ids: Iterable[int], max_size: int) -> Iterator[tuple[int, ...]]:
    """Subsets of ``ids`` with at most ``max_size`` elements, in colex order.

    Colex order on id sets is the order of the bitmasks sum(2**id).
    """
    pool = sorted(ids)
    subsets = [c for r in range(min(max_size, len(pool)) + 1) for c in combinations(pool, r)]
    subsets.sort(key=lambda s: sum(1 << i for i in s))
    return iter(subsets)


def _apsp(g: WeightedMultigraph, edge_ids: Iterable[int]) -> np.ndarray:
    """All-pairs shortest paths in scaled integer units; unreachable = -1."""
    n = g.n
    big = sum(g.iw) + 1
    dtype = np.int64 if big * 4 < _INT64_SAFE else object
    d = np.full((n, n), big, dtype=dtype)
    np.fill_diagonal(d, 0)
    for i in edge_ids:
        e = g.edges[i]
        w = g.iw[i]
        if w < d[e.u, e.v]:
            d[e.u, e.v] = d[e.v, e.u] = w
    for x in range(n):
        d = np.minimum(d, d[:, x : x + 1] + d[x : x + 1, :])
    d[d >= big] = -1
    return d


def _k_parts(k: Fraction | int) -> tuple[int, int]:
    k = Fraction(k)
    if k < 1:
        raise ValueError("stretch k must be at least 1")
    return k.numerator, k.denominator


def _first_violation(dh: np.ndarray, dg: np.ndarray, a: int, b: int) -> tuple[int, int] | None:
    g_fin = dg >= 0
    bad = g_fin & ((dh < 0) | (dh * b > dg * a))
    if not bad.any():
        return None
    us, vs = np.nonzero(np.triu(bad, 1))
    return int(us[0]), int(vs[0])


def is_ft_spanner(
    h: Subgraph,
    g: WeightedMultigraph,
    k: Fraction | int,
    f: int,
    budget: Budget = DEFAULT_BUDGET,
) -> VerificationReport:
    """Exhaustive check that ``h`` is an f-edge-fault-tolerant k-spanner of ``g``."""
    if h.parent != g:
        raise ValueError("spanner must be a subgraph of the given graph")
    if f < 0:
        raise ValueError("f must be non-negative")
    a, b = _k_parts(k)
    budget.check_fault_sets(g.m, f)
    if len(h.edge_ids) == g.m:
        return VerificationReport(True)
    all_ids = frozenset(range(g.m))
    for fault in colex_subsets(range(g.m), f):
        fs = frozenset(fault)
        dg = _apsp(g, all_ids - fs)
        dh = _apsp(g, h.edge_ids - fs)
        bad = _first_violation(dh, dg, a, b)
        if bad is not None:
            u, v = bad
            scale = g.scale
            witness = {
                "fault_edge_ids": list(fault),
                "u": u,
                "v": v,
                "dist_H": INFINITY if dh[u, v] < 0 else Fraction(int(dh[u, v]), scale),
                "dist_G": Fraction(int(dg[u, v]), scale),
            }
            return VerificationReport(False, "stretch", witness)
    return VerificationReport(True)


def replay_witness(h: Subgraph, g: WeightedMultigraph, k: Fraction | int, witness: dict[str, Any]) -> bool:
    """True iff the witness is a genuine stretch violation under Dijkstra distances."""
    fault = frozenset(witness["fault_edge_ids"])
    u, v = witness["u"], witness["v"]
    dg = dist(g.subgraph(frozenset(range(g.m)) - fault), u, v)
    dh = dist(h.without(fault), u, v)
    if dg == INFINITY:
        return False
    return dh == INFINITY or dh > Fraction(k) * dg


def _labels(g: WeightedMultigraph, edge_ids: Iterable[int]) -> list[int]:
    ds = DisjointSet(g.n)
    for i in edge_ids:
        ds.union(g.edges[i].u, g.edges[i].v)
    return [ds.find(x) for x in range(g.n)]


def is_preserver_bruteforce(
    q: Subgraph, g: WeightedMultigraph, f: int, budget: Budget = DEFAULT_BUDGET
) -> VerificationReport:
    """Components of Q minus F equal those of G minus F for every |F| <= f."""
    if q.parent != g:
        raise ValueError("preserver must be a subgraph of the given graph")
    budget.check_fault_sets(g.m, f)
    all_ids = frozenset(range(g.m))
    for fault in colex_subsets(range(g.m), f):
        fs = frozenset(fault)
        lg = _labels(g, all_ids - fs)
        lq = _labels(g, q.edge_ids - fs)
        if lg != lq:
            u, v = next(
                (x, y)
                for x in range(g.n)
                for y in range(x + 1, g.n)
                if lg[x] == lg[y] and lq[x] != lq[y]
            )
            witness = {"fault_edge_ids": list(fault), "u": u, "v": v}
            return VerificationReport(False, "components", witness)
    return VerificationReport(True)


# -- cycles ----------------------------------------------------------------------


def enumerate_cycles(view: View, budget: Budget = DEFAULT_BUDGET) -> list[frozenset[int]]:
    """Every simple cycle (including 2-cycles of parallel edges) as an edge-id set.

    Walks the whole cycle space: each simple cycle is the XOR of a unique set
    of fundamental cycles.
    """
    view = as_view(view)
    g = view.parent
    ds = DisjointSet(g.n)
    tree_adj: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
    chords = []
    for i in sorted(view.edge_ids):
        e = g.edges[i]
        if ds.union(e.u, e.v):
            tree_adj[e.u].append((e.v, i))
            tree_adj[e.v].append((e.u, i))
        else:
            chords.append(i)
    budget.check_cyclomatic(len(chords))

    def tree_path(s: int, t: int) -> int:
        prev = {s: None}
        stack = [s]
        while stack:
            x = stack.pop()
            for y, i in tree_adj[x]:
                if y not in prev:
                    prev[y] = (x, i)
                    stack.append(y)
        mask = 0
        while t != s:
            x, i = prev[t]
            mask |= 1 << i
            t = x
        return mask

    basis = [tree_path(g.edges[c].u, g.edges[c].v) | (1 << c) for c in chords]
    cycles = []
    r = len(basis)
    for combo in range(1, 1 << r):
        mask = 0
        for j in range(r):
            if combo >> j & 1:
                mask ^= basis[j]
        ids = [i for i in range(g.m) if mask >> i & 1]
        if _is_simple_cycle(g, ids):
            cycles.append(frozenset(ids))
    return cycles


def _is_simple_cycle(g: WeightedMultigraph, ids: list[int]) -> bool:
    degree: dict[int, int] = {}
    for i in ids:
        e = g.edges[i]
        degree[e.u] = degree.get(e.u, 0) + 1
        degree[e.v] = degree.get(e.v, 0) + 1
    if any(d != 2 for d in degree.values()):
        return False
    ds = DisjointSet(g.n)
    for i in ids:
        ds.union(g.edges[i].u, g.edges[i].v)
    return len({ds.find(x) for x in degree}) == 1


def normalized_weight(g: WeightedMultigraph, cycle: Iterable[int]) -> Fraction:
    ids = list(cycle)
    return g.weight(ids) / max(g.edges[i].w for i in ids)


def weighted_girth_bruteforce(view: View, budget: Budget = DEFAULT_BUDGET) -> Fraction | float:
    view = as_view(view)
    g = view.parent
    return min((normalized_weight(g, c) for c in enumerate_cycles(view, budget)), default=INFINITY)


def lightest_cycle_bruteforce(view: View, budget: Budget = DEFAULT_BUDGET) -> CycleWitness | None:
    view = as_view(view)
    g = view.parent
    cycles = enumerate_cycles(view, budget)
    if not cycles:
        return None
    best = min(cycles, key=lambda c: (normalized_weight(g, c), sorted(c)))
    return CycleWitness.from_edges(g, best)


# -- connectivity ---------------------------------------------------------------


def pair_edge_connectivity_bruteforce(view: View, u: int, v: int, budget: Budget = DEFAULT_BUDGET) -> int:
    """Size of the smallest edge set separating u from v, by enumeration."""
    view = as_view(view)
    g = view.parent
    ids = sorted(view.edge_ids)
    budget.check_subsets(len(ids))
    for size in range(len(ids) + 1):
        for cut in combinations(ids, size):
            labels = _labels(g, view.edge_ids - frozenset(cut))
            if labels[u] != labels[v]:
                return size
    raise AssertionError("removing every edge must separate distinct vertices")


def connectivity_classes_bruteforce(view: View, c: int) -> list[list[int]]:
    view = as_view(view)
    from .graph import pair_edge_connectivity

    n = view.n
    classes: list[list[int]] = []
    seen: set[int] = set()
    for x in range(n):
        if x in seen:
            continue
        cls = [x] + [y for y in range(x + 1, n) if pair_edge_connectivity(view, x, y) >= c]
        seen.update(cls)
        classes.append(cls)
    return classes


def min_preserver_bruteforce(
    g: WeightedMultigraph, f: int, budget: Budget = DEFAULT_BUDGET
) -> Subgraph:
    """Minimum-weight f-fault connectivity preserver by subset enumeration.

    Ties go to the lexicographically smallest sorted id tuple.
    """
    budget.check_subsets(g.m)
    budget.check_fault_sets(g.m, f)
    deg_g = [0] * g.n
    for e in g.edges:
        deg_g[e.u] += 1
        deg_g[e.v] += 1
    masks = list(range(1 << g.m))
    ids_of = [tuple(i for i in range(g.m) if mask >> i & 1) for mask in masks]
    weight_of = [sum(g.iw[i] for i in ids) for ids in ids_of]
    masks.sort(key=lambda mask: (weight_of[mask], ids_of[mask]))
    for mask in masks:
        ids = ids_of[mask]
        deg = [0] * g.n
        for i in ids:
            deg[g.edges[i].u] += 1
            deg[g.edges[i].v] += 1
        # a vertex that lost an edge but kept <= f must be isolated by some fault set
        if any(deg[x] < deg_g[x] and deg[x] <= f for x in range(g.n)):
            continue
        q = g.subgraph(ids)
        if is_preserver_bruteforce(q, g, f, budget):
            return q
    raise AssertionError("the whole graph is always a preserver")


# -- reference algorithms -----------------------------------------------------------


def greedy_spanner_reference(g: WeightedMultigraph, k: Fraction | int) -> Subgraph:
    """The classical (fault-free) greedy spanner."""
    a, b = _k_parts(k)
    kept: list[int] = []
    for i in sorted(range(g.m), key=lambda i: (g.iw[i], i)):
        e = g.edges[i]
        d = _apsp(g, kept)[e.u, e.v]
        if d < 0 or d * b > g.iw[i] * a:
            kept.append(i)
    return g.subgraph(kept)


def blocking_fault_set_bruteforce(
    h: Subgraph, u: int, v: int, k: Fraction | int, f: int, w_uv: Fraction, budget: Budget = DEFAULT_BUDGET
) -> tuple[int, ...] | None:
    """Colex-smallest fault set of minimum size making u, v too far apart in h."""
    g = h.parent
    budget.check_fault_sets(len(h.edge_ids), f)
    limit = Fraction(k) * Fraction(w_uv) * g.scale
    pool = sorted(h.edge_ids)
    for size in range(f + 1):
        for fault in sorted(combinations(pool, size), key=lambda s: sum(1 << i for i in s)):
            d = _apsp(g, h.edge_ids - frozenset(fault))[u, v]
            if d < 0 or d > limit:
                return fault
    return None


__all__ = [
    "BudgetExceeded",
    "VerificationReport",
    "blocking_fault_set_bruteforce",
    "colex_subsets",
    "connectivity_classes_bruteforce",
    "enumerate_cycles",
    "greedy_spanner_reference",
    "is_ft_spanner",
    "is_preserver_bruteforce",
    "lightest_cycle_bruteforce",
    "min_preserver_bruteforce",
    "normalized_weight",
    "pair_edge_connectivity_bruteforce",
    "replay_witness",
    "weighted_girth_bruteforce",
]
