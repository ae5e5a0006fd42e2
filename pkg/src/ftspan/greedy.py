"""Fault-tolerant greedy spanner seeded with a connectivity preserver."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil

from .budget import DEFAULT_BUDGET, Budget, BudgetExceeded
from .graph import Subgraph, WeightedMultigraph, short_path
from .oracles import VerificationReport, enumerate_cycles, normalized_weight
from .preserver import EXACT, PreserverChoice, preserver_for

COMPETITIONS = ("2f", "2+eta")


@dataclass(frozen=True)
class BlockingSet:
    """Ordered edge pairs (e, e'); e is a spanner edge outside Q, e' was in its fault set."""

    pairs: frozenset[tuple[int, int]]
    f: int

    def partners(self, e: int) -> list[int]:
        return sorted(b for a, b in self.pairs if a == e)

    def firsts(self) -> list[int]:
        return sorted({a for a, _ in self.pairs})

    def to_list(self) -> list[list[int]]:
        return [list(pair) for pair in sorted(self.pairs)]


def _colex_key(fault: tuple[int, ...]) -> int:
    return sum(1 << i for i in fault)


def find_blocking_fault_set(
    h: Subgraph,
    u: int,
    v: int,
    k: Fraction | int,
    f: int,
    w_uv: Fraction | int,
    budget: Budget = DEFAULT_BUDGET,
) -> tuple[int, ...] | None:
    """A set F of at most f edges of h with dist(h - F, u, v) > k * w_uv, or None.

    Any such F hits every u-v path of length at most k * w_uv, so the search
    branches on the edges of one short path at a time. Sizes are tried in
    increasing order; among the minimum-size witnesses the colex-smallest is
    returned. Every minimum witness is reachable by this branching, because at
    each step it hits the current short path.
    """
    limit = Fraction(k) * Fraction(w_uv)
    g = h.parent
    nodes = 0
    for size in range(f + 1):
        found: list[tuple[int, ...]] = []
        seen: set[frozenset[int]] = set()
        stack = [frozenset()]
        while stack:
            fault = stack.pop()
            if fault in seen:
                continue
            seen.add(fault)
            nodes += 1
            if nodes > budget.max_search_nodes:
                raise BudgetExceeded(f"fault-set search exceeded {budget.max_search_nodes} nodes")
            path = short_path(g.subgraph(h.edge_ids - fault), u, v, limit)
            if path is None:
                found.append(tuple(sorted(fault)))
                continue
            if len(fault) < size:
                stack.extend(fault | {eid} for eid in path)
        if found:
            return min(found, key=_colex_key)
    return None


def competition_level(f: int, competition: str = "2f", eta: Fraction | float | None = None) -> int:
    """Fault parameter of the seeding preserver: 2f, or ceil((2 + eta) f)."""
    if competition == "2f":
        return 2 * f
    if competition == "2+eta":
        if eta is None or eta <= 0:
            raise ValueError("competition 2+eta needs eta > 0")
        return ceil((2 + Fraction(eta)) * f)
    raise ValueError(f"unknown competition {competition!r}")


@dataclass
class GreedyResult:
    h: Subgraph
    blocking: BlockingSet
    preserver: PreserverChoice
    k: Fraction
    f: int
    fault_sets: dict[int, tuple[int, ...]] = field(default_factory=dict)
    rejected: list[int] = field(default_factory=list)

    @property
    def q(self) -> Subgraph:
        return self.preserver.q


def build_greedy(
    g: WeightedMultigraph,
    k: Fraction | int,
    f: int,
    competition: str = "2f",
    eta: Fraction | float | None = None,
    preserver_mode: str = EXACT,
    budget: Budget = DEFAULT_BUDGET,
    preserver: PreserverChoice | None = None,
) -> GreedyResult:
    """Scan edges outside Q by (weight, id); keep each one some f faults would make too long."""
    k = Fraction(k)
    if k < 1:
        raise ValueError("stretch k must be at least 1")
    if f < 0:
        raise ValueError("f must be non-negative")
    if preserver is None:
        preserver = preserver_for(g, competition_level(f, competition, eta), preserver_mode, budget)
    q = preserver.q
    kept = set(q.edge_ids)
    pairs: set[tuple[int, int]] = set()
    fault_sets: dict[int, tuple[int, ...]] = {}
    rejected: list[int] = []
    for eid in g.sorted_ids():
        if eid in q.edge_ids:
            continue
        e = g.edges[eid]
        fault = find_blocking_fault_set(g.subgraph(kept), e.u, e.v, k, f, e.w, budget)
        if fault is None:
            rejected.append(eid)
            continue
        kept.add(eid)
        fault_sets[eid] = fault
        pairs.update((eid, other) for other in fault)
    return GreedyResult(
        g.subgraph(kept), BlockingSet(frozenset(pairs), f), preserver, k, f, fault_sets, rejected
    )


def check_blocking_set(
    b: BlockingSet, h: Subgraph, q: Subgraph, k: Fraction | int, budget: Budget = DEFAULT_BUDGET
) -> VerificationReport:
    """Cap, placement, and cycle-blocking conditions of a blocking set."""
    counts: dict[int, int] = {}
    for a, _ in b.pairs:
        counts[a] = counts.get(a, 0) + 1
    for a, count in sorted(counts.items()):
        if count > b.f:
            return VerificationReport(False, "cap", {"edge_id": a, "count": count})
        if a in q.edge_ids:
            return VerificationReport(False, "first-in-preserver", {"edge_id": a})
    g = h.parent
    bound = Fraction(k) + 1
    for cycle in sorted(enumerate_cycles(h, budget), key=sorted):
        if normalized_weight(g, cycle) > bound:
            continue
        heaviest = max(g.edges[i].w for i in cycle)
        if all(i in q.edge_ids for i in cycle if g.edges[i].w == heaviest):
            continue
        if not any(a in cycle and c in cycle for a, c in b.pairs):
            return VerificationReport(False, "unblocked-cycle", {"cycle": sorted(cycle)})
    return VerificationReport(True)


def unstable_rejections(result: GreedyResult, budget: Budget = DEFAULT_BUDGET) -> list[int]:
    """Rejected edges that the final spanner would now accept (should be none)."""
    g = result.h.parent
    unstable = []
    for eid in result.rejected:
        e = g.edges[eid]
        if find_blocking_fault_set(result.h, e.u, e.v, result.k, result.f, e.w, budget) is not None:
            unstable.append(eid)
    return unstable
