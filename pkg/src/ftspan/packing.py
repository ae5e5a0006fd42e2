"""Forest packings of a preserver in which every edge is used at most twice.

At level c, every class of the relation "c edge-disjoint paths in Q" must be
connected in at least c of the forests. Three routes are tried in order:

* when every class induces a c-edge-connected subgraph, c disjoint spanning
  trees of the doubled class subgraph are found by matroid partition;
* a maximum partition of the whole doubled Q into c forests, kept if it
  happens to connect every class in every forest;
* a small integer feasibility program, with one flow per (forest, class)
  pair certifying that the class is connected.

Whatever route runs, the result goes through ``verify_packing`` before it is
returned.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.optimize import Bounds, LinearConstraint, milp
from scipy.sparse import lil_matrix

from .graph import (
    DisjointSet,
    Subgraph,
    WeightedMultigraph,
    connectivity_classes,
    mst,
    pair_edge_connectivity,
)
from .oracles import VerificationReport


class PackingError(RuntimeError):
    """No valid packing was produced, although one is known to exist."""


@dataclass(frozen=True)
class ForestPacking:
    level: int
    forests: tuple[frozenset[int], ...]
    classes: tuple[tuple[int, ...], ...]
    coverage: dict[tuple[int, ...], tuple[int, ...]] = field(hash=False, compare=False)

    def multiplicity(self) -> dict[int, int]:
        counts: dict[int, int] = {}
        for forest in self.forests:
            for eid in forest:
                counts[eid] = counts.get(eid, 0) + 1
        return counts

    def class_of(self, x: int) -> tuple[int, ...]:
        return next(cls for cls in self.classes if x in cls)

    def to_dict(self) -> dict:
        return {
            "level": self.level,
            "forests": [sorted(forest) for forest in self.forests],
            "classes": [list(cls) for cls in self.classes],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def double_edges(q: Subgraph) -> WeightedMultigraph:
    """Each Q edge becomes two parallel copies; copy j stems from sorted(Q)[j // 2]."""
    g = q.parent
    edges = []
    for eid in sorted(q.edge_ids):
        e = g.edges[eid]
        edges.append((e.u, e.v, e.w))
        edges.append((e.u, e.v, e.w))
    return WeightedMultigraph(g.n, edges)


def doubled_origin(q: Subgraph, doubled_id: int) -> int:
    return sorted(q.edge_ids)[doubled_id // 2]


def _connects(g: WeightedMultigraph, forest: frozenset[int], cls: tuple[int, ...]) -> bool:
    ds = DisjointSet(g.n)
    for eid in forest:
        ds.union(g.edges[eid].u, g.edges[eid].v)
    root = ds.find(cls[0])
    return all(ds.find(x) == root for x in cls)


def _coverage(g: WeightedMultigraph, forests, classes) -> dict[tuple[int, ...], tuple[int, ...]]:
    return {
        cls: tuple(i for i, forest in enumerate(forests) if _connects(g, forest, cls))
        for cls in classes
    }


def _forest_path(adj: dict[int, list[tuple[int, int]]], s: int, t: int) -> list[int] | None:
    prev: dict[int, tuple[int, int] | None] = {s: None}
    queue = deque([s])
    while queue:
        x = queue.popleft()
        if x == t:
            break
        for y, eid in adj.get(x, ()):
            if y not in prev:
                prev[y] = (x, eid)
                queue.append(y)
    if t not in prev:
        return None
    path = []
    while prev[t] is not None:
        x, eid = prev[t]
        path.append(eid)
        t = x
    return path


def disjoint_spanning_forests(ends: list[tuple[int, int]], c: int) -> list[set[int]]:
    """Matroid partition: c disjoint forests over edge indices 0..len(ends)-1 of maximum total size.

    Edges are offered in index order; each insertion is a shortest augmenting
    path in the exchange graph.
    """
    forests: list[set[int]] = [set() for _ in range(c)]
    adjs: list[dict[int, list[tuple[int, int]]]] = [{} for _ in range(c)]

    def add(i: int, eid: int) -> None:
        forests[i].add(eid)
        u, v = ends[eid]
        adjs[i].setdefault(u, []).append((v, eid))
        adjs[i].setdefault(v, []).append((u, eid))

    def remove(i: int, eid: int) -> None:
        forests[i].discard(eid)
        u, v = ends[eid]
        adjs[i][u].remove((v, eid))
        adjs[i][v].remove((u, eid))

    for x in range(len(ends)):
        label: dict[int, tuple[int, int] | None] = {x: None}
        queue = deque([x])
        found = None
        while queue and found is None:
            y = queue.popleft()
            u, v = ends[y]
            for i in range(c):
                if y in forests[i]:
                    continue
                cycle = _forest_path(adjs[i], u, v)
                if cycle is None:
                    found = (y, i)
                    break
                for z in cycle:
                    if z not in label:
                        label[z] = (y, i)
                        queue.append(z)
        if found is None:
            continue
        y, i = found
        add(i, y)
        while label[y] is not None:
            prev, j = label[y]
            remove(j, y)
            add(j, prev)
            y = prev
    return forests


def _tree_route(q: Subgraph, c: int, classes: list[tuple[int, ...]]) -> list[frozenset[int]] | None:
    g = q.parent
    forests: list[set[int]] = [set() for _ in range(c)]
    for cls in classes:
        members = set(cls)
        inner = g.sorted_ids(i for i in q.edge_ids if g.edges[i].u in members and g.edges[i].v in members)
        view = g.subgraph(inner)
        if any(pair_edge_connectivity(view, cls[0], x, cap=c) < c for x in cls[1:]):
            return None
        doubled = [i for i in inner for _ in range(2)]
        ends = [(g.edges[i].u, g.edges[i].v) for i in doubled]
        trees = disjoint_spanning_forests(ends, c)
        if any(len(tree) != len(cls) - 1 for tree in trees):
            return None
        for i, tree in enumerate(trees):
            forests[i].update(doubled[j] for j in tree)
    return [frozenset(forest) for forest in forests]


def _partition_route(q: Subgraph, c: int, classes: list[tuple[int, ...]]) -> list[frozenset[int]] | None:
    """Maximum c-forest partition of the whole doubled Q; kept only if it covers every class."""
    g = q.parent
    doubled = [i for i in g.sorted_ids(q.edge_ids) for _ in range(2)]
    ends = [(g.edges[i].u, g.edges[i].v) for i in doubled]
    forests = [frozenset(doubled[j] for j in forest) for forest in disjoint_spanning_forests(ends, c)]
    if all(_connects(g, forest, cls) for forest in forests for cls in classes):
        return forests
    return None


def _milp_route(q: Subgraph, c: int, classes: list[tuple[int, ...]]) -> list[frozenset[int]] | None:
    g = q.parent
    qe = sorted(q.edge_ids)
    ne = len(qe)
    nx = ne * c
    # flow variables: for every (forest, class) two arcs per edge
    blocks = [(i, cls) for i in range(c) for cls in classes]
    nvar = nx + len(blocks) * 2 * ne

    def xvar(j: int, i: int) -> int:
        return i * ne + j

    def fvar(b: int, j: int, direction: int) -> int:
        return nx + (b * ne + j) * 2 + direction

    rows: list[tuple[dict[int, float], float, float]] = []
    for j in range(ne):
        rows.append(({xvar(j, i): 1.0 for i in range(c)}, -np.inf, 2.0))
    for b, (i, cls) in enumerate(blocks):
        demand = len(cls) - 1
        root = cls[0]
        terminals = set(cls[1:])
        for j in range(ne):
            for d in (0, 1):
                rows.append(({fvar(b, j, d): 1.0, xvar(j, i): -float(demand)}, -np.inf, 0.0))
        for x in range(g.n):
            coeffs: dict[int, float] = {}
            for j, eid in enumerate(qe):
                e = g.edges[eid]
                if x not in (e.u, e.v):
                    continue
                out_dir = 0 if x == e.u else 1
                coeffs[fvar(b, j, out_dir)] = coeffs.get(fvar(b, j, out_dir), 0.0) + 1.0
                coeffs[fvar(b, j, 1 - out_dir)] = coeffs.get(fvar(b, j, 1 - out_dir), 0.0) - 1.0
            if not coeffs:
                continue
            net = float(demand) if x == root else (-1.0 if x in terminals else 0.0)
            rows.append((coeffs, net, net))
    a = lil_matrix((len(rows), nvar))
    lo = np.empty(len(rows))
    hi = np.empty(len(rows))
    for r, (coeffs, low, high) in enumerate(rows):
        for col, val in coeffs.items():
            a[r, col] = val
        lo[r], hi[r] = low, high
    cost = np.zeros(nvar)
    integrality = np.zeros(nvar)
    integrality[:nx] = 1
    upper = np.full(nvar, np.inf)
    upper[:nx] = 1
    res = milp(
        cost,
        constraints=LinearConstraint(a.tocsr(), lo, hi),
        integrality=integrality,
        bounds=Bounds(np.zeros(nvar), upper),
    )
    if res.x is None:
        return None
    forests = []
    for i in range(c):
        support = [eid for j, eid in enumerate(qe) if res.x[xvar(j, i)] > 0.5]
        forests.append(mst(g.subgraph(support)).edge_ids)
    return forests


@lru_cache(maxsize=512)
def pack_forests(q: Subgraph, c: int) -> ForestPacking:
    """A verified level-c forest packing of Q."""
    if c < 1:
        raise ValueError("packing level must be a positive integer")
    g = q.parent
    classes = [tuple(cls) for cls in connectivity_classes(q, c)]
    nontrivial = [cls for cls in classes if len(cls) > 1]
    if c == 1:
        forests = [mst(q).edge_ids]
    elif not nontrivial:
        forests = [frozenset() for _ in range(c)]
    else:
        forests = (
            _tree_route(q, c, nontrivial)
            or _partition_route(q, c, nontrivial)
            or _milp_route(q, c, nontrivial)
        )
        if forests is None:
            raise PackingError(f"no level-{c} packing found for {q!r}")
    forests = tuple(frozenset(sorted(forest)) for forest in forests)
    packing = ForestPacking(c, forests, tuple(classes), _coverage(g, forests, nontrivial))
    report = verify_packing(packing, q, c)
    if not report:
        raise PackingError(f"packing failed verification: {report.reason} {report.witness}")
    return packing


def verify_packing(p: ForestPacking, q: Subgraph, c: int) -> VerificationReport:
    g = q.parent
    for i, forest in enumerate(p.forests):
        stray = sorted(forest - q.edge_ids)
        if stray:
            return VerificationReport(False, "membership", {"forest": i, "edge_ids": stray})
    for i, forest in enumerate(p.forests):
        ds = DisjointSet(g.n)
        for eid in sorted(forest):
            if not ds.union(g.edges[eid].u, g.edges[eid].v):
                return VerificationReport(False, "acyclicity", {"forest": i, "edge_id": eid})
    for eid, count in sorted(p.multiplicity().items()):
        if count > 2:
            return VerificationReport(False, "multiplicity", {"edge_id": eid, "count": count})
    for cls in connectivity_classes(q, c):
        if len(cls) < 2:
            continue
        covering = [i for i, forest in enumerate(p.forests) if _connects(g, forest, tuple(cls))]
        if len(covering) < c:
            return VerificationReport(False, "coverage", {"class": cls, "forests": covering})
    return VerificationReport(True)


def eligible_hosts(
    p: ForestPacking, q: Subgraph, u: int, v: int, forbidden: frozenset[int] | set[int] = frozenset()
) -> list[int]:
    """Forests connecting the class of u and v that contain no forbidden edge."""
    cls = p.class_of(u)
    if v not in cls or u == v:
        raise ValueError(f"vertices {u} and {v} are not in a common level-{p.level} class")
    covering = p.coverage.get(cls)
    if covering is None:
        covering = tuple(i for i, forest in enumerate(p.forests) if _connects(q.parent, forest, cls))
    banned = frozenset(forbidden)
    return [i for i in covering if not (p.forests[i] & banned)]
