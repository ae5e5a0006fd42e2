"""Fault-tolerant connectivity preservers and competitive lightness.

A subgraph Q of G is an f-fault connectivity preserver when Q minus F and G
minus F have the same components for every set F of at most f edges. That
holds exactly when the endpoints of every edge outside Q are joined by f+1
edge-disjoint paths inside Q, which is what the fast test checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .budget import DEFAULT_BUDGET, Budget, BudgetExceeded
from .graph import Subgraph, WeightedMultigraph, mst, pair_edge_connectivity

EXACT = "exact"
HEURISTIC = "heuristic"
MODES = (EXACT, HEURISTIC)


def _robust(g: WeightedMultigraph, kept: frozenset[int], eid: int, f: int) -> bool:
    e = g.edges[eid]
    return pair_edge_connectivity(g.subgraph(kept), e.u, e.v, cap=f + 1) >= f + 1


def is_preserver_fast(q: Subgraph, g: WeightedMultigraph, f: int) -> bool:
    if q.parent != g:
        raise ValueError("preserver must be a subgraph of the given graph")
    if f < 0:
        raise ValueError("f must be non-negative")
    return all(_robust(g, q.edge_ids, i, f) for i in range(g.m) if i not in q.edge_ids)


def heuristic_preserver(g: WeightedMultigraph, f: int) -> Subgraph:
    """Reverse-delete: drop edges heaviest first while the result stays feasible.

    One pass suffices for inclusion-minimality since feasibility is monotone.
    """
    if f < 0:
        raise ValueError("f must be non-negative")
    kept = set(range(g.m))
    removed: list[int] = []
    for eid in g.sorted_ids(reverse=True):
        trial = frozenset(kept - {eid})
        if all(_robust(g, trial, r, f) for r in (*removed, eid)):
            kept.discard(eid)
            removed.append(eid)
    return g.subgraph(kept)


class _Search:
    """Branch and bound over edges in descending (weight, id) order.

    Candidates are ranked by weight * 2**m - mask where edge i contributes
    2**(m-1-i) to mask; among equal weights this prefers the lexicographically
    smallest sorted id tuple.
    """

    def __init__(self, g: WeightedMultigraph, f: int, budget: Budget):
        self.g = g
        self.f = f
        self.budget = budget
        self.order = g.sorted_ids(reverse=True)
        self.nodes = 0
        incumbent = heuristic_preserver(g, f)
        self.best_ids = incumbent.edge_ids
        self.best_key = self.key(incumbent.edge_ids)

    def mask(self, ids) -> int:
        m = self.g.m
        return sum(1 << (m - 1 - i) for i in ids)

    def key(self, ids) -> int:
        return sum(self.g.iw[i] for i in ids) * (1 << self.g.m) - self.mask(ids)

    def run(self) -> frozenset[int]:
        self.visit(0, frozenset(), frozenset(), frozenset(range(self.g.m)))
        return self.best_ids

    def visit(self, depth: int, inside: frozenset[int], outside: frozenset[int], upper: frozenset[int]) -> None:
        self.nodes += 1
        if self.nodes > self.budget.max_search_nodes:
            raise BudgetExceeded(
                f"preserver search exceeded {self.budget.max_search_nodes} nodes"
            )
        g, f = self.g, self.f
        undecided = [i for i in self.order[depth:]]
        forced = [i for i in undecided if not _robust(g, upper - {i}, i, f)]
        lower = sum(g.iw[i] for i in inside) + sum(g.iw[i] for i in forced)
        if lower * (1 << g.m) - self.mask(upper) >= self.best_key:
            return
        if depth == len(self.order):
            self.best_key = self.key(inside)
            self.best_ids = inside
            return
        eid = self.order[depth]
        if eid not in forced:
            shrunk = upper - {eid}
            if all(_robust(g, shrunk, o, f) for o in (*outside, eid)):
                self.visit(depth + 1, inside, outside | {eid}, shrunk)
        self.visit(depth + 1, inside | {eid}, outside, upper)


@lru_cache(maxsize=256)
def _exact_ids(g: WeightedMultigraph, f: int, budget: Budget) -> frozenset[int]:
    if f == 0:
        return mst(g).edge_ids
    return _Search(g, f, budget).run()


def min_weight_preserver(g: WeightedMultigraph, f: int, budget: Budget = DEFAULT_BUDGET) -> Subgraph:
    """Exact minimum-weight f-fault connectivity preserver.

    Raises BudgetExceeded once the search visits more than
    ``budget.max_search_nodes`` nodes.
    """
    if f < 0:
        raise ValueError("f must be non-negative")
    return g.subgraph(_exact_ids(g, f, budget))


@dataclass(frozen=True)
class PreserverChoice:
    q: Subgraph
    f: int
    mode: str
    fell_back: bool = False

    @property
    def weight(self) -> Fraction:
        return self.q.weight()


def preserver_for(
    g: WeightedMultigraph,
    f: int,
    mode: str = EXACT,
    budget: Budget = DEFAULT_BUDGET,
    fallback: bool = True,
) -> PreserverChoice:
    """Preserver in the requested mode; exact mode degrades to the heuristic on budget overrun."""
    if mode not in MODES:
        raise ValueError(f"unknown preserver mode {mode!r}")
    if mode == HEURISTIC:
        return PreserverChoice(heuristic_preserver(g, f), f, HEURISTIC)
    try:
        return PreserverChoice(min_weight_preserver(g, f, budget), f, EXACT)
    except BudgetExceeded:
        if not fallback:
            raise
        return PreserverChoice(heuristic_preserver(g, f), f, HEURISTIC, fell_back=True)


@dataclass(frozen=True)
class CompetitiveLightness:
    value: Fraction
    preserver_weight: Fraction
    mode: str
    f: int
    fell_back: bool = False

    def to_dict(self) -> dict:
        return {
            "value": str(self.value),
            "preserver_weight": str(self.preserver_weight),
            "mode": self.mode,
            "f": self.f,
            "fell_back": self.fell_back,
        }


def competitive_lightness(
    h: Subgraph,
    g: WeightedMultigraph,
    f: int,
    denominator_mode: str = EXACT,
    budget: Budget = DEFAULT_BUDGET,
) -> CompetitiveLightness:
    """w(H) over the weight of a minimum (or heuristic) f-fault preserver of G.

    Exact mode propagates BudgetExceeded instead of falling back.
    """
    if g.m == 0:
        raise ValueError("competitive lightness is undefined for a graph without edges")
    choice = preserver_for(g, f, denominator_mode, budget, fallback=False)
    return CompetitiveLightness(h.weight() / choice.weight, choice.weight, choice.mode, f)
