"""Polynomial-time spanner construction by sampled survival estimates.

For each candidate edge (u, v) outside the preserver Q and each packing tree T
that spans the class of u and v, random subgraphs are drawn that contain T and
each already-accepted non-Q edge independently with probability ``p_sample``.
The fraction of draws in which u and v end up farther apart than k * w(u, v)
estimates the chance that some fault set could cut every short path.

Randomness comes from numpy's Philox counter-based generator; the stream for
one (edge, tree) estimate is keyed by (seed, edge id, tree index), and row i of
the drawn matrix is sample i. Results do not depend on evaluation order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import ceil, log
from typing import Iterable

import numpy as np

from .budget import DEFAULT_BUDGET, Budget
from .graph import Subgraph, WeightedMultigraph, short_path
from .packing import ForestPacking, eligible_hosts, pack_forests
from .preserver import EXACT, PreserverChoice, preserver_for

DEFAULT_C_CONST = 384
DEFAULT_THRESHOLD = Fraction(1, 8)
MAX_EXACT_EDGES = 15


def substream(seed: int, edge_id: int, tree_index: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, edge_id, tree_index])))


def sample_count(n: int, c_const: float = DEFAULT_C_CONST) -> int:
    """ceil(c * ln n), at least one."""
    return max(1, ceil(c_const * log(max(n, 2))))


def sampling_probability(f: int) -> Fraction:
    """1/f, clamped to 1/2 so that f = 1 still leaves room for a fault to survive."""
    return Fraction(1, max(f, 2))


@dataclass(frozen=True)
class SurvivalEstimate:
    tree_index: int
    pair: tuple[int, int]
    samples: int
    hits: int

    @property
    def p_hat(self) -> Fraction:
        return Fraction(self.hits, self.samples)


@lru_cache(maxsize=1 << 16)
def _too_far(g: WeightedMultigraph, ids: frozenset[int], u: int, v: int, limit: Fraction) -> bool:
    return short_path(g.subgraph(ids), u, v, limit) is None


def estimate_survival(
    t: Subgraph,
    e_cur: Iterable[int],
    u: int,
    v: int,
    k: Fraction | int,
    w_uv: Fraction | int,
    p_sample: Fraction | float,
    samples: int,
    rng: np.random.Generator,
    tree_index: int = 0,
) -> SurvivalEstimate:
    """Fraction of random subgraphs of T + E_cur in which dist(u, v) > k * w_uv."""
    g = t.parent
    extra = sorted(set(e_cur) - t.edge_ids)
    limit = Fraction(k) * Fraction(w_uv)
    if samples < 1:
        raise ValueError("samples must be positive")
    draws = rng.random((samples, len(extra))) < float(p_sample)
    patterns, counts = np.unique(draws, axis=0, return_counts=True)
    hits = 0
    for row, count in zip(patterns, counts):
        chosen = t.edge_ids | frozenset(eid for eid, keep in zip(extra, row) if keep)
        if _too_far(g, chosen, u, v, limit):
            hits += int(count)
    return SurvivalEstimate(tree_index, (u, v), samples, hits)


def exact_survival_probability(
    t: Subgraph,
    e_cur: Iterable[int],
    u: int,
    v: int,
    k: Fraction | int,
    w_uv: Fraction | int,
    p_sample: Fraction,
) -> Fraction:
    """The probability that estimate_survival's draws hit, summed over all outcomes."""
    g = t.parent
    extra = sorted(set(e_cur) - t.edge_ids)
    if len(extra) > MAX_EXACT_EDGES:
        raise ValueError(f"exact enumeration limited to {MAX_EXACT_EDGES} sampled edges")
    p = Fraction(p_sample)
    limit = Fraction(k) * Fraction(w_uv)
    total = Fraction(0)
    for row in product((False, True), repeat=len(extra)):
        chosen = t.edge_ids | frozenset(eid for eid, keep in zip(extra, row) if keep)
        if _too_far(g, chosen, u, v, limit):
            kept = sum(row)
            total += p**kept * (1 - p) ** (len(extra) - kept)
    return total


@dataclass
class PolyResult:
    h: Subgraph
    preserver: PreserverChoice
    packing: ForestPacking
    host_log: list[dict] = field(default_factory=list)
    decisions: list[dict] = field(default_factory=list)
    samples: int = 0
    p_sample: Fraction = Fraction(0)
    threshold: Fraction = DEFAULT_THRESHOLD
    votes_needed: int = 1

    @property
    def q(self) -> Subgraph:
        return self.preserver.q

    def host_log_json(self) -> list[dict]:
        return [
            {"edge_id": row["edge_id"], "trees": list(row["trees"]), "p_hats": [str(p) for p in row["p_hats"]]}
            for row in self.host_log
        ]


def _run(
    g: WeightedMultigraph,
    k: Fraction,
    f: int,
    level: int,
    votes_needed: int,
    first_trigger: bool,
    c_const: float,
    preserver_mode: str,
    seed: int,
    threshold: Fraction,
    budget: Budget,
    preserver: PreserverChoice | None,
    packing: ForestPacking | None,
) -> PolyResult:
    if f < 1:
        raise ValueError("the sampling construction needs f >= 1")
    if k < 1:
        raise ValueError("stretch k must be at least 1")
    if preserver is None:
        preserver = preserver_for(g, level - 1, preserver_mode, budget)
    q = preserver.q
    if packing is None:
        packing = pack_forests(q, level)
    if packing.level != level:
        raise ValueError(f"packing level {packing.level} does not match required level {level}")
    samples = sample_count(g.n, c_const)
    p_sample = sampling_probability(f)
    accepted: list[int] = []
    host_log: list[dict] = []
    decisions: list[dict] = []
    for eid in g.sorted_ids():
        if eid in q.edge_ids:
            continue
        e = g.edges[eid]
        voters: list[int] = []
        p_hats: list[Fraction] = []
        for tree_index in eligible_hosts(packing, q, e.u, e.v):
            t = g.subgraph(packing.forests[tree_index])
            est = estimate_survival(
                t, accepted, e.u, e.v, k, e.w, p_sample, samples, substream(seed, eid, tree_index), tree_index
            )
            decisions.append(
                {"edge_id": eid, "tree": tree_index, "e_cur": tuple(accepted), "p_hat": est.p_hat}
            )
            if est.p_hat >= threshold:
                voters.append(tree_index)
                p_hats.append(est.p_hat)
                if first_trigger:
                    break
        if len(voters) >= votes_needed:
            accepted.append(eid)
            host_log.append({"edge_id": eid, "trees": voters, "p_hats": p_hats})
    h = g.subgraph(q.edge_ids | frozenset(accepted))
    return PolyResult(h, preserver, packing, host_log, decisions, samples, p_sample, threshold, votes_needed)


def build_poly(
    g: WeightedMultigraph,
    k: Fraction | int,
    f: int,
    c_const: float = DEFAULT_C_CONST,
    preserver_mode: str = EXACT,
    seed: int = 0,
    threshold: Fraction = DEFAULT_THRESHOLD,
    budget: Budget = DEFAULT_BUDGET,
    preserver: PreserverChoice | None = None,
    packing: ForestPacking | None = None,
) -> PolyResult:
    """Single-host variant: an edge is added as soon as one tree's estimate reaches the threshold."""
    return _run(
        g, Fraction(k), f, 2 * f + 1, 1, True, c_const, preserver_mode, seed,
        Fraction(threshold), budget, preserver, packing,
    )


def eta_parameters(f: int, eta: Fraction | float) -> tuple[int, int]:
    """(packing level, votes needed) = (ceil((2 + eta) f) + 1, ceil(eta f + 1))."""
    eta = Fraction(eta)
    if eta <= 0:
        raise ValueError("eta must be positive")
    return ceil((2 + eta) * f) + 1, ceil(eta * f + 1)


def build_poly_eta(
    g: WeightedMultigraph,
    k: Fraction | int,
    f: int,
    eta: Fraction | float,
    c_const: float = DEFAULT_C_CONST,
    preserver_mode: str = EXACT,
    seed: int = 0,
    threshold: Fraction = DEFAULT_THRESHOLD,
    budget: Budget = DEFAULT_BUDGET,
    preserver: PreserverChoice | None = None,
    packing: ForestPacking | None = None,
) -> PolyResult:
    """Voting variant: every covering tree votes and the edge needs ceil(eta f + 1) votes."""
    level, votes = eta_parameters(f, eta)
    return _run(
        g, Fraction(k), f, level, votes, False, c_const, preserver_mode, seed,
        Fraction(threshold), budget, preserver, packing,
    )
