"""Instance families: lower-bound constructions and seeded random graphs."""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

import numpy as np

from .graph import Subgraph, WeightedMultigraph, is_connected, mst

Number = int | Fraction | str


def _positive(value: Fraction, what: str) -> Fraction:
    if value <= 0:
        raise ValueError(f"{what} must be positive, got {value}")
    return value


def gen_triangle(W: Number) -> WeightedMultigraph:
    """Vertices u=0, v=1, w=2 with w(u,v) = w(u,w) = 1 and w(v,w) = W."""
    W = _positive(Fraction(W), "W")
    return WeightedMultigraph(3, [(0, 1, 1), (0, 2, 1), (1, 2, W)])


def chord_weight(n: int, k: Number, eps: Number) -> Fraction:
    return Fraction(2 * n - 2) / Fraction(k) - Fraction(eps)


def gen_cycle_chords(n: int, k: Number, eps: Number) -> WeightedMultigraph:
    """Unit 2n-cycle (ids 0..2n-1) plus chords v_2j - v_2j+2 (ids 2n..3n-1)."""
    if n < 3:
        raise ValueError("cycle-chords needs n >= 3")
    if Fraction(eps) <= 0:
        raise ValueError("eps must be positive")
    w = _positive(chord_weight(n, k, eps), "chord weight")
    size = 2 * n
    edges = [(i, (i + 1) % size, 1) for i in range(size)]
    edges += [(2 * j, (2 * j + 2) % size, w) for j in range(n)]
    return WeightedMultigraph(size, edges)


def chord_ids(n: int) -> list[int]:
    return list(range(2 * n, 3 * n))


def cloud_vertex(m: int, f: int, i: int, j: int) -> int:
    return m + i * f + j


def gen_cloud_cycle(m: int, f: int, k: Number, eps: Number) -> WeightedMultigraph:
    """Hubs 0..m-1; cloud vertex (i, j) joins hubs i and i+1 by unit edges.

    Unit edges take ids 0..2mf-1 (hub i then hub i+1 for each cloud vertex);
    the heavy hub edges i - i+1 follow with weight (2m-2)/k - eps.
    """
    if m < 3:
        raise ValueError("cloud-cycle needs m >= 3")
    if f < 1:
        raise ValueError("cloud-cycle needs f >= 1")
    if Fraction(eps) <= 0:
        raise ValueError("eps must be positive")
    w = _positive(chord_weight(m, k, eps), "heavy edge weight")
    edges = []
    for i in range(m):
        for j in range(f):
            c = cloud_vertex(m, f, i, j)
            edges.append((i, c, 1))
            edges.append(((i + 1) % m, c, 1))
    edges += [(i, (i + 1) % m, w) for i in range(m)]
    return WeightedMultigraph(m + m * f, edges)


def cloud_cycle_unit_ids(m: int, f: int) -> list[int]:
    return list(range(2 * m * f))


def cloud_cycle_heavy_ids(m: int, f: int) -> list[int]:
    return list(range(2 * m * f, 2 * m * f + m))


def cloud_size(f: int, c: int) -> int:
    """ceil(sqrt(c f + 1))."""
    target = c * f + 1
    root = isqrt(target)
    return root if root * root == target else root + 1


def gen_cloud_blowup(gp: WeightedMultigraph, f: int, c: int) -> WeightedMultigraph:
    """Replace each vertex by a cloud of p vertices and each edge by K_{p,p}.

    Vertex (v, i) gets index v * p + i; the copies of edge e' take ids
    e' * p * p + i * p + j and keep its weight.
    """
    if f < 1:
        raise ValueError("cloud blowup needs f >= 1")
    if c < 2:
        raise ValueError("cloud blowup needs c >= 2")
    if not is_connected(gp):
        raise ValueError("cloud blowup needs a connected base graph")
    p = cloud_size(f, c)
    edges = [
        (e.u * p + i, e.v * p + j, e.w)
        for e in gp.edges
        for i in range(p)
        for j in range(p)
    ]
    return WeightedMultigraph(gp.n * p, edges)


def blowup_pair_ids(gp: WeightedMultigraph, f: int, c: int, base_edge: int) -> list[int]:
    p = cloud_size(f, c)
    return list(range(base_edge * p * p, (base_edge + 1) * p * p))


def blowup_mst_preserver(gp: WeightedMultigraph, g: WeightedMultigraph, f: int, c: int) -> Subgraph:
    """Complete bipartite cloud pairs along the base graph's minimum spanning tree."""
    ids = [i for e in sorted(mst(gp).edge_ids) for i in blowup_pair_ids(gp, f, c, e)]
    return g.subgraph(ids)


def gen_cycle(n: int, w: Number = 1) -> WeightedMultigraph:
    return WeightedMultigraph(n, [(i, (i + 1) % n, w) for i in range(n)])


def gen_random(
    n: int,
    edge_prob: float,
    weight_range: tuple[int, int] = (1, 10),
    seed: int = 0,
    max_tries: int = 1000,
) -> WeightedMultigraph:
    """Connected G(n, p) graph with integer weights uniform in weight_range.

    Draws come from one Philox stream; disconnected draws are discarded and
    the stream continues.
    """
    if not 0 < edge_prob <= 1:
        raise ValueError("edge_prob must lie in (0, 1]")
    lo, hi = weight_range
    if lo < 1 or hi < lo:
        raise ValueError("weight range must satisfy 1 <= lo <= hi")
    if n < 1:
        raise ValueError("n must be positive")
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    for _ in range(max_tries):
        keep = rng.random(len(pairs)) < edge_prob
        weights = rng.integers(lo, hi + 1, size=len(pairs))
        edges = [(u, v, int(w)) for (u, v), k, w in zip(pairs, keep, weights) if k]
        g = WeightedMultigraph(n, edges)
        if is_connected(g):
            return g
    raise ValueError(f"no connected graph after {max_tries} draws; edge_prob too small for n={n}")


FAMILIES = ("triangle", "cycle-chords", "cloud-cycle", "cloud-blowup", "random")
