"""Replay of the host-forest lightness argument on a concrete greedy run.

Each spanner edge outside Q is hosted by packing forests that avoid its
blocking partners. For a forest T, H[T] is T plus its hosted edges, and the
chain H1 >= H2 >= H3 subsamples H[T], breaks every blocked pair, and then
trims T back to a minimum spanning forest. H3 always has weighted girth above
k + 1, whatever the random choices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import floor, isqrt, sqrt
from typing import Mapping

import numpy as np

from .graph import Subgraph, mst, weighted_girth
from .greedy import BlockingSet
from .oracles import VerificationReport
from .packing import ForestPacking, eligible_hosts

HOST_MODES = ("single", "all-eligible", "q-light-heavy")


def heaviness_threshold(f: int) -> int:
    """An edge is Q-heavy with at least floor(f - sqrt(f)) blocking partners inside Q."""
    return floor(f - sqrt(f))


def light_host_target(f: int) -> int:
    """Hosts promised to a Q-light edge: ceil(sqrt(f)) + 1."""
    root = isqrt(f)
    return (root if root * root == f else root + 1) + 1


def heavy_sampling_probability(f: int) -> float:
    return 1.0 / sqrt(f) if f > 0 else 1.0


@dataclass
class HostGraphs:
    mode: str
    graphs: dict[int, Subgraph]
    hosts: dict[int, list[int]]
    heavy: frozenset[int] = frozenset()
    flags: dict[str, object] = field(default_factory=dict)


def build_host_graphs(
    h: Subgraph,
    q: Subgraph,
    b: BlockingSet,
    p: ForestPacking,
    mode: str = "single",
) -> HostGraphs:
    """Assign every edge of H outside Q to forests avoiding its blocking partners.

    ``single`` takes the lowest-index eligible forest, ``all-eligible`` takes
    them all, and ``q-light-heavy`` gives Q-light edges every eligible forest
    and Q-heavy edges a single one.
    """
    if mode not in HOST_MODES:
        raise ValueError(f"unknown host mode {mode!r}")
    g = h.parent
    hosts: dict[int, list[int]] = {}
    heavy: set[int] = set()
    threshold = heaviness_threshold(b.f)
    for eid in sorted(h.edge_ids - q.edge_ids):
        e = g.edges[eid]
        partners = frozenset(b.partners(eid))
        eligible = eligible_hosts(p, q, e.u, e.v, partners)
        if not eligible:
            raise RuntimeError(f"edge {eid} has no eligible host forest")
        if mode == "single":
            chosen = eligible[:1]
        elif mode == "all-eligible":
            chosen = eligible
        else:
            is_heavy = b.f > 0 and len(partners & q.edge_ids) >= threshold
            if is_heavy:
                heavy.add(eid)
            chosen = eligible[:1] if is_heavy else eligible
        hosts[eid] = chosen
    graphs = {
        i: g.subgraph(forest | frozenset(eid for eid, hs in hosts.items() if i in hs))
        for i, forest in enumerate(p.forests)
    }
    flags: dict[str, object] = {}
    if mode == "q-light-heavy":
        flags = {
            "heaviness_threshold": threshold,
            "heaviness_rounding": "floor",
            "light_host_target": light_host_target(b.f),
            "light_host_rounding": "ceil",
        }
    return HostGraphs(mode, graphs, hosts, frozenset(heavy), flags)


@dataclass(frozen=True)
class Chain:
    h1: Subgraph
    h2: Subgraph
    h3: Subgraph


def subsample_chain(
    ht: Subgraph,
    t: Subgraph,
    b: BlockingSet,
    p: float | Fraction,
    rng: np.random.Generator,
    break_pairs: bool = True,
) -> Chain:
    """H1 keeps T and each other edge with probability p; H2 drops the first edge of
    every blocked pair kept whole; H3 removes the edges of T outside mst(H2).

    ``break_pairs=False`` skips the H2 step, which is only useful to show that
    the girth guarantee depends on it.
    """
    if not t.edge_ids <= ht.edge_ids:
        raise ValueError("T must be contained in H[T]")
    others = sorted(ht.edge_ids - t.edge_ids)
    draws = rng.random(len(others)) < float(p)
    h1 = t.edge_ids | frozenset(eid for eid, keep in zip(others, draws) if keep)
    h2 = set(h1)
    if break_pairs:
        for first, second in b.pairs:
            if first in h1 and second in h1:
                h2.discard(first)
    g = ht.parent
    h2_view = g.subgraph(h2)
    spanning = mst(h2_view).edge_ids
    h3 = frozenset(h2) - (t.edge_ids - spanning)
    return Chain(g.subgraph(h1), h2_view, g.subgraph(h3))


def check_chain_girth(h3: Subgraph, k: Fraction | int) -> VerificationReport:
    girth, witness = weighted_girth(h3)
    bound = Fraction(k) + 1
    if girth > bound:
        return VerificationReport(True)
    return VerificationReport(
        False,
        "girth",
        {"girth": girth, "cycle": list(witness.edge_ids) if witness else None},
    )


def exact_survival(ht: Subgraph, t: Subgraph, b: BlockingSet, p: Fraction | float, eid: int) -> Fraction | float:
    """Probability that edge ``eid`` of H[T] minus T is still present in H2."""
    partners = [c for c in b.partners(eid) if c in ht.edge_ids]
    if any(c in t.edge_ids for c in partners):
        return 0 * p
    return p * (1 - p) ** len(partners)


@dataclass
class ChainStats:
    trials: int
    weight_ht: Fraction
    weight_t: Fraction
    mean_h3: float
    reference: float
    survival_frequency: dict[int, float]
    survival_exact: dict[int, float]

    def to_dict(self) -> dict:
        return {
            "trials": self.trials,
            "w_HT": str(self.weight_ht),
            "w_T": str(self.weight_t),
            "mean_w_H3": self.mean_h3,
            "reference": self.reference,
        }


def measure_chain_weight(
    ht: Subgraph,
    t: Subgraph,
    b: BlockingSet,
    p: float | Fraction,
    trials: int,
    rng: np.random.Generator,
) -> ChainStats:
    """Mean w(H3) over trials next to w(H[T]) * p - w(T), plus per-edge H2 survival rates."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    others = sorted(ht.edge_ids - t.edge_ids)
    seen = {eid: 0 for eid in others}
    total = 0.0
    for _ in range(trials):
        chain = subsample_chain(ht, t, b, p, rng)
        total += float(chain.h3.weight())
        for eid in others:
            if eid in chain.h2.edge_ids:
                seen[eid] += 1
    reference = float(ht.weight()) * float(p) - float(t.weight())
    return ChainStats(
        trials,
        ht.weight(),
        t.weight(),
        total / trials,
        reference,
        {eid: count / trials for eid, count in seen.items()},
        {eid: float(exact_survival(ht, t, b, p, eid)) for eid in others},
    )


def chain_rows(
    hosts: HostGraphs,
    packing: ForestPacking,
    b: BlockingSet,
    k: Fraction | int,
    p: float | Fraction,
    trials: int,
    seed: int,
) -> list[dict]:
    """Per-forest summary: forest_index, w(T), w(H[T]), mean w(H3), girth_check."""
    rows = []
    for i, ht in sorted(hosts.graphs.items()):
        g = ht.parent
        t = g.subgraph(packing.forests[i])
        rng = np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, i])))
        passed = True
        total = 0.0
        for _ in range(trials):
            chain = subsample_chain(ht, t, b, p, rng)
            total += float(chain.h3.weight())
            passed = passed and check_chain_girth(chain.h3, k).passed
        rows.append(
            {
                "forest_index": i,
                "w_T": str(t.weight()),
                "w_HT": str(ht.weight()),
                "mean_w_H3": total / trials,
                "girth_check": "pass" if passed else "fail",
            }
        )
    return rows


def hosts_avoid_partners(hosts: HostGraphs, packing: ForestPacking, b: BlockingSet) -> bool:
    return all(
        not (packing.forests[i] & frozenset(b.partners(eid)))
        for eid, forest_ids in hosts.hosts.items()
        for i in forest_ids
    )


def host_counts(hosts: HostGraphs) -> Mapping[int, int]:
    return {eid: len(hs) for eid, hs in hosts.hosts.items()}
