"""Acceptance criteria 1-11, each reported as one PASS/FAIL line."""

from __future__ import annotations

import time
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

import networkx as nx
import numpy as np
import pytest
from networkx.generators.atlas import graph_atlas_g

from conftest import ACCEPTANCE_LINES
from corpus import random_corpus
from ftspan.generators import (
    blowup_pair_ids,
    chord_ids,
    cloud_cycle_heavy_ids,
    cloud_cycle_unit_ids,
    gen_cloud_blowup,
    gen_cloud_cycle,
    gen_cycle,
    gen_cycle_chords,
    gen_triangle,
)
from ftspan.graph import WeightedMultigraph, dist, lightness, mst, weighted_girth
from ftspan.greedy import build_greedy, check_blocking_set
from ftspan.oracles import (
    colex_subsets,
    greedy_spanner_reference,
    is_ft_spanner,
    is_preserver_bruteforce,
    replay_witness,
)
from ftspan.packing import eligible_hosts, pack_forests, verify_packing
from ftspan.polytime import (
    MAX_EXACT_EDGES,
    build_poly,
    build_poly_eta,
    estimate_survival,
    exact_survival_probability,
    sample_count,
    substream,
)
from ftspan.preserver import competitive_lightness, is_preserver_fast, min_weight_preserver
from ftspan.replay import build_host_graphs, check_chain_girth, subsample_chain

pytestmark = pytest.mark.acceptance

FS = (1, 2)
KS = (1, 3, 5)


def record(number: int, title: str, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {title} ({detail})"
    ACCEPTANCE_LINES[number] = line
    print(line)
    assert ok, line


@lru_cache(maxsize=None)
def greedy_run(index: int, k: int, f: int):
    return build_greedy(random_corpus()[index], k, f)


def corpus_runs():
    for index in range(len(random_corpus())):
        for f in FS:
            for k in KS:
                yield index, k, f


def test_criterion_01_greedy_feasibility():
    corpus = random_corpus()
    assert len(corpus) >= 50
    assert all(g.n <= 12 and g.m <= 20 for g in corpus)
    started = time.perf_counter()
    failures = []
    runs = 0
    for index, k, f in corpus_runs():
        result = greedy_run(index, k, f)
        report = is_ft_spanner(result.h, corpus[index], k, f)
        runs += 1
        if not report:
            failures.append((index, k, f, report.witness))
    elapsed = time.perf_counter() - started
    record(
        1,
        "greedy output is an f-EFT k-spanner",
        not failures and elapsed < 300,
        f"{runs} runs, {len(failures)} failures, {elapsed:.1f}s",
    )


def test_criterion_02_fault_free_reduction():
    failures = []
    runs = 0
    for index, g in enumerate(random_corpus()):
        for k in KS:
            h = build_greedy(g, k, 0).h
            runs += 1
            girth, _ = weighted_girth(h)
            if h.edge_ids != greedy_spanner_reference(g, k).edge_ids or not girth > k + 1:
                failures.append((index, k))
    record(2, "f=0 greedy equals the classical greedy with girth > k+1", not failures, f"{runs} runs, {len(failures)} failures")


def atlas_graphs() -> list[WeightedMultigraph]:
    graphs = []
    for h in graph_atlas_g():
        if 0 < h.number_of_nodes() <= 6 and nx.is_connected(h):
            graphs.append(WeightedMultigraph(h.number_of_nodes(), [(u, v, 1) for u, v in sorted(h.edges())]))
    return graphs


def test_criterion_03_preserver_characterization():
    rng = np.random.Generator(np.random.Philox(3))
    disagreements = []
    checks = 0
    graphs = atlas_graphs()
    for gi, g in enumerate(graphs):
        if g.m <= 7:
            samples = [frozenset(i for i in range(g.m) if mask >> i & 1) for mask in range(1 << g.m)]
        else:
            samples = [frozenset(range(g.m)), mst(g).edge_ids]
            samples += [frozenset(np.flatnonzero(rng.random(g.m) < 0.7).tolist()) for _ in range(10)]
        for ids in samples:
            q = g.subgraph(ids)
            for f in range(4):
                checks += 1
                if is_preserver_fast(q, g, f) != bool(is_preserver_bruteforce(q, g, f)):
                    disagreements.append((gi, sorted(ids), f))
    record(
        3,
        "local preserver test matches brute force",
        not disagreements,
        f"{len(graphs)} connected graphs with n <= 6, {checks} (Q, f) checks, {len(disagreements)} disagreements",
    )


def test_criterion_04_triangle_forced_edges():
    problems = []
    for w in (4, 10, 100):
        g = gen_triangle(w)
        for eid in range(3):
            # stretch far beyond any detour: only disconnection can fail
            if is_ft_spanner(g.full().without([eid]), g, 10**6, 1):
                problems.append((w, "removable", eid))
        h = build_greedy(g, 3, 1).h
        if h.edge_ids != {0, 1, 2}:
            problems.append((w, "greedy", sorted(h.edge_ids)))
        if lightness(h, g) != Fraction(w + 2, 2):
            problems.append((w, "lightness", lightness(h, g)))
        if competitive_lightness(h, g, 2).value != 1:
            problems.append((w, "ell_2", competitive_lightness(h, g, 2).value))
    record(4, "triangle forces every edge; lightness (W+2)/2 and ell_2 = 1", not problems, f"W in 4, 10, 100; problems {problems}")


def test_criterion_05_lower_bound_instances():
    started = time.perf_counter()
    problems = []

    n, k = 5, 2
    g = gen_cycle_chords(n, k, Fraction(1, 4))
    if mst(g).weight() != 2 * n - 1:
        problems.append(("a", "mst", mst(g).weight()))
    for chord in chord_ids(n):
        if is_ft_spanner(g.full().without([chord]), g, k, 1):
            problems.append(("a", "chord removable", chord))
    if not set(chord_ids(n)) <= build_greedy(g, k, 1).h.edge_ids:
        problems.append(("a", "greedy misses a chord"))

    m, f, k = 4, 2, 2
    g = gen_cloud_cycle(m, f, k, Fraction(1, 4))
    units = g.subgraph(cloud_cycle_unit_ids(m, f))
    if units.weight() != 2 * m * f:
        problems.append(("b", "unit weight", units.weight()))
    if not is_preserver_bruteforce(units, g, 3):
        problems.append(("b", "not a 3-preserver"))
    if is_preserver_bruteforce(units, g, 4):
        problems.append(("b", "unexpected 4-preserver"))
    for heavy in cloud_cycle_heavy_ids(m, f):
        if is_ft_spanner(g.full().without([heavy]), g, k, f):
            problems.append(("b", "heavy edge removable", heavy))

    base = gen_cycle(5)
    g = gen_cloud_blowup(base, 1, 2)
    pairs = 0
    for e in base.edges:
        ids = blowup_pair_ids(base, 1, 2, e.id)
        for kept in colex_subsets(ids, 1):
            # every subgraph with at most one edge in this pair lies inside one of these
            h = g.full().without([i for i in ids if i not in kept])
            if is_ft_spanner(h, g, 3, 1):
                problems.append(("c", "pair", e.id, kept))
        pairs += 1

    elapsed = time.perf_counter() - started
    record(
        5,
        "cycle-chords, cloud-cycle and cloud-blowup claims replay exactly",
        not problems and elapsed < 120,
        f"{pairs} cloud pairs checked, problems {problems}, {elapsed:.1f}s",
    )


def test_criterion_06_packing_contract():
    corpus = random_corpus()
    failures = []
    packings = []
    for index, g in enumerate(corpus):
        for c in (1, 3, 5):
            q = min_weight_preserver(g, c - 1)
            p = pack_forests(q, c)
            if not verify_packing(p, q, c):
                failures.append((index, c))
            packings.append((q, p))
    rng = np.random.Generator(np.random.Philox(6))
    queries = 0
    bound_failures = []
    candidates = [(q, p) for q, p in packings if any(len(cls) > 1 for cls in p.classes)]
    while queries < 1000:
        q, p = candidates[int(rng.integers(len(candidates)))]
        classes = [cls for cls in p.classes if len(cls) > 1]
        cls = classes[int(rng.integers(len(classes)))]
        u, v = (cls[i] for i in rng.choice(len(cls), size=2, replace=False))
        size = int(rng.integers(0, p.level + 1))
        pool = sorted(range(q.parent.m))
        forbidden = {pool[i] for i in rng.choice(len(pool), size=min(size, len(pool)), replace=False)}
        j = len(forbidden & q.edge_ids)
        if len(eligible_hosts(p, q, int(u), int(v), forbidden)) < p.level - 2 * j:
            bound_failures.append((sorted(forbidden), u, v))
        queries += 1
    record(
        6,
        "packings verify and eligible hosts meet c - 2j",
        not failures and not bound_failures,
        f"{len(packings)} packings, {len(failures)} invalid; {queries} host queries, {len(bound_failures)} below bound",
    )


def test_criterion_07_blocking_set_lemma():
    corpus = random_corpus()
    assert all(g.m - g.n + 1 <= 8 for g in corpus)
    failures = []
    runs = 0
    for index, k, f in corpus_runs():
        result = greedy_run(index, k, f)
        runs += 1
        if not check_blocking_set(result.blocking, result.h, result.q, k):
            failures.append((index, k, f))
    record(7, "greedy blocking sets are capped and block every light cycle", not failures, f"{runs} runs, {len(failures)} failures")


def test_criterion_08_chain_girth():
    started = time.perf_counter()
    corpus = random_corpus()
    failures = []
    checks = 0
    forests = 0
    for index, k, f in corpus_runs():
        result = greedy_run(index, k, f)
        packing = pack_forests(result.q, 2 * f + 1)
        hosts = build_host_graphs(result.h, result.q, result.blocking, packing, "all-eligible")
        g = corpus[index]
        for i, ht in hosts.graphs.items():
            t = g.subgraph(packing.forests[i])
            forests += 1
            for seed in range(100):
                rng = np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, index, k, f, i])))
                chain = subsample_chain(ht, t, result.blocking, Fraction(1, f), rng)
                checks += 1
                if not check_chain_girth(chain.h3, k):
                    failures.append((index, k, f, i, seed))
    elapsed = time.perf_counter() - started
    record(
        8,
        "every subsampled chain has weighted girth > k+1",
        not failures and elapsed < 600,
        f"{forests} (instance, forest) pairs x 100 seeds = {checks} checks, {len(failures)} failures, {elapsed:.1f}s",
    )


def _violating_fault_exists(t, extra, u, v, k, w, f) -> bool:
    g = t.parent
    limit = Fraction(k) * Fraction(w)
    for fault in colex_subsets(extra, f):
        if dist(g.subgraph(t.edge_ids | (frozenset(extra) - frozenset(fault))), u, v) > limit:
            return True
    return False


def test_criterion_09_polytime_estimator():
    corpus = random_corpus()
    trigger_checks = 0
    trigger_failures = []
    points = []
    for index, g in enumerate(corpus):
        for f in FS:
            for k in (1, 3):
                result = build_poly(g, k, f, seed=index)
                p = result.p_sample
                for d in result.decisions:
                    if len(d["e_cur"]) > MAX_EXACT_EDGES:
                        continue
                    e = g.edges[d["edge_id"]]
                    t = g.subgraph(result.packing.forests[d["tree"]])
                    extra = sorted(set(d["e_cur"]) - t.edge_ids)
                    exact = exact_survival_probability(t, d["e_cur"], e.u, e.v, k, e.w, p)
                    if _violating_fault_exists(t, extra, e.u, e.v, k, e.w, f):
                        trigger_checks += 1
                        if not exact >= (1 - p) ** f >= Fraction(1, 4):
                            trigger_failures.append((index, f, k, d["edge_id"], d["tree"], exact))
                    points.append((index, f, k, d, exact, p))
    # accuracy on the decisions with the most randomness in them
    points.sort(key=lambda item: (-float(item[4] * (1 - item[4])), item[0], item[1], item[2], item[3]["edge_id"]))
    chosen = points[:12]
    accuracy = []
    for index, f, k, d, exact, p in chosen:
        g = corpus[index]
        e = g.edges[d["edge_id"]]
        t = g.subgraph(build_poly(g, k, f, seed=index).packing.forests[d["tree"]])
        samples = sample_count(g.n, 384)
        inside = 0
        for rep in range(200):
            est = estimate_survival(t, d["e_cur"], e.u, e.v, k, e.w, p, samples, substream(rep, d["edge_id"], d["tree"]))
            inside += abs(est.p_hat - exact) <= Fraction(1, 8)
        accuracy.append(inside / 200)
    ok = not trigger_failures and trigger_checks > 0 and chosen and min(accuracy) >= 0.95
    record(
        9,
        "exact survival meets the trigger bound and estimates stay within 1/8",
        bool(ok),
        f"{trigger_checks} trigger checks, {len(trigger_failures)} failures; "
        f"{len(chosen)} estimation points x 200 reps, worst in-band rate {min(accuracy):.3f}",
    )


def test_criterion_10_polytime_feasibility():
    corpus = random_corpus()
    worst = 1.0
    failing_seeds = []
    builds = 0
    for index, g in enumerate(corpus):
        verdicts: dict[frozenset[int], object] = {}
        for f in FS:
            for name, build in (("poly", build_poly), ("poly-eta", lambda *a, **kw: build_poly_eta(*a[:3], 1, **kw))):
                passed = 0
                for seed in range(100):
                    h = build(g, 3, f, seed=seed).h
                    builds += 1
                    key = (f, h.edge_ids)
                    if key not in verdicts:
                        verdicts[key] = is_ft_spanner(h, g, 3, f)
                    report = verdicts[key]
                    if report:
                        passed += 1
                    else:
                        assert replay_witness(h, g, 3, report.witness)
                        failing_seeds.append((index, f, name, seed, report.witness))
                worst = min(worst, passed / 100)
    for index, f, name, seed, witness in failing_seeds:
        print(f"criterion 10 failing seed: instance {index} f={f} {name} seed={seed} witness={witness}")
    record(
        10,
        "sampled constructions pass the exhaustive check in >= 99% of seeds",
        worst >= 0.99,
        f"{builds} builds, {len(failing_seeds)} failing seeds, worst per-instance pass rate {worst:.2f}",
    )


def test_criterion_11_metric_coherence():
    corpus = list(random_corpus()) + [gen_triangle(w) for w in (4, 10, 100)]
    problems = []
    strict = 0
    for index, g in enumerate(corpus):
        h = build_greedy(g, 3, 1).h
        weights = [min_weight_preserver(g, f).weight() for f in range(4)]
        ratios = [h.weight() / w for w in weights]
        if competitive_lightness(h, g, 0).value != lightness(h, g):
            problems.append((index, "ell_0"))
        if any(a > b for a, b in zip(weights, weights[1:])):
            problems.append((index, "preserver weight decreased", weights))
        if any(a < b for a, b in zip(ratios, ratios[1:])):
            problems.append((index, "ell_f increased", ratios))
        strict += any(a > b for a, b in zip(ratios, ratios[1:]))
    record(
        11,
        "ell_0 equals lightness; min preserver weight nondecreasing, so ell_f nonincreasing in f",
        not problems,
        f"{len(corpus)} instances, f = 0..3, {strict} with a strict drop in ell_f, problems {problems[:3]}",
    )


def test_ell_f_drops_on_the_triangle():
    # the fixed-H ratio moves opposite to the preserver weight
    g = gen_triangle(10)
    assert competitive_lightness(g.full(), g, 0).value == 6
    assert competitive_lightness(g.full(), g, 1).value == 1
