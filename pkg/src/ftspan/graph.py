"""Weighted multigraphs, edge-subset views, and the basic measurements on them.

Weights are exact :class:`fractions.Fraction` values. Every graph also keeps an
integer copy of its weights scaled by the least common multiple of the
denominators, so path lengths are compared exactly without rational arithmetic
in the inner loops.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, NamedTuple, Sequence, Union

INFINITY = math.inf

Weight = Union[int, Fraction, str]


class GraphFormatError(ValueError):
    """Malformed edge-list document or invalid graph data."""


class Edge(NamedTuple):
    id: int
    u: int
    v: int
    w: Fraction

    def other(self, x: int) -> int:
        return self.v if x == self.u else self.u


def _as_weight(w: Weight) -> Fraction:
    try:
        value = Fraction(w)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise GraphFormatError(f"bad weight {w!r}") from exc
    if value <= 0:
        raise GraphFormatError(f"weight must be positive, got {w!r}")
    return value


class WeightedMultigraph:
    """Undirected multigraph on vertices ``0..n-1`` with edge ids ``0..m-1``.

    Parallel edges are allowed, self-loops are not. ``edges[i].id == i``.
    """

    __slots__ = ("n", "edges", "scale", "iw", "adj", "_full", "_hash")

    def __init__(self, n: int, edges: Iterable[tuple[int, int, Weight]]):
        if n < 0:
            raise GraphFormatError("vertex count must be non-negative")
        built = []
        for i, (u, v, w) in enumerate(edges):
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(f"edge {i}: endpoint out of range for n={n}")
            if u == v:
                raise GraphFormatError(f"edge {i}: self-loop at vertex {u}")
            built.append(Edge(i, u, v, _as_weight(w)))
        self.n = n
        self.edges: tuple[Edge, ...] = tuple(built)
        scale = 1
        for e in self.edges:
            scale = math.lcm(scale, e.w.denominator)
        self.scale = scale
        self.iw: tuple[int, ...] = tuple(int(e.w * scale) for e in self.edges)
        adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for e in self.edges:
            adj[e.u].append((e.v, e.id))
            adj[e.v].append((e.u, e.id))
        self.adj = adj
        self._full: Subgraph | None = None
        self._hash = hash((n, self.edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    def __repr__(self) -> str:
        return f"WeightedMultigraph(n={self.n}, m={self.m})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightedMultigraph):
            return NotImplemented
        if self is other:
            return True
        return self._hash == other._hash and self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return self._hash

    def full(self) -> Subgraph:
        if self._full is None:
            self._full = Subgraph(self, frozenset(range(self.m)))
        return self._full

    def subgraph(self, edge_ids: Iterable[int]) -> Subgraph:
        return Subgraph(self, frozenset(edge_ids))

    def weight(self, edge_ids: Iterable[int] | None = None) -> Fraction:
        if edge_ids is None:
            edge_ids = range(self.m)
        return Fraction(sum(self.iw[i] for i in edge_ids), self.scale)

    def key(self, edge_id: int) -> tuple[Fraction, int]:
        """Scan-order key: nondecreasing weight, ties broken by id."""
        return (self.edges[edge_id].w, edge_id)

    def sorted_ids(self, edge_ids: Iterable[int] | None = None, reverse: bool = False) -> list[int]:
        ids = range(self.m) if edge_ids is None else edge_ids
        return sorted(ids, key=lambda i: (self.iw[i], i), reverse=reverse)


class Subgraph:
    """An edge subset of a parent graph; all vertices of the parent are kept."""

    __slots__ = ("parent", "edge_ids")

    def __init__(self, parent: WeightedMultigraph, edge_ids: frozenset[int]):
        bad = [i for i in edge_ids if not 0 <= i < parent.m]
        if bad:
            raise ValueError(f"edge ids {sorted(bad)} not in parent graph")
        self.parent = parent
        self.edge_ids = frozenset(edge_ids)

    def __repr__(self) -> str:
        return f"Subgraph({sorted(self.edge_ids)})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subgraph):
            return NotImplemented
        return self.parent == other.parent and self.edge_ids == other.edge_ids

    def __hash__(self) -> int:
        return hash(self.edge_ids)

    def __len__(self) -> int:
        return len(self.edge_ids)

    def __contains__(self, edge_id: object) -> bool:
        return edge_id in self.edge_ids

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.edge_ids))

    @property
    def n(self) -> int:
        return self.parent.n

    def weight(self) -> Fraction:
        return self.parent.weight(self.edge_ids)

    def edges(self) -> list[Edge]:
        return [self.parent.edges[i] for i in sorted(self.edge_ids)]

    def with_edges(self, ids: Iterable[int]) -> Subgraph:
        return Subgraph(self.parent, self.edge_ids | frozenset(ids))

    def without(self, ids: Iterable[int]) -> Subgraph:
        return Subgraph(self.parent, self.edge_ids - frozenset(ids))

    def complement(self) -> Subgraph:
        return Subgraph(self.parent, frozenset(range(self.parent.m)) - self.edge_ids)


View = Union[Subgraph, WeightedMultigraph]


def as_view(g: View) -> Subgraph:
    return g.full() if isinstance(g, WeightedMultigraph) else g


@dataclass(frozen=True)
class CycleWitness:
    """A cycle given as an ordered closed walk of distinct edges."""

    edge_ids: tuple[int, ...]
    total_weight: Fraction
    max_edge_weight: Fraction

    @property
    def normalized_weight(self) -> Fraction:
        return self.total_weight / self.max_edge_weight

    @classmethod
    def from_edges(cls, g: WeightedMultigraph, edge_ids: Iterable[int]) -> CycleWitness:
        ids = list(edge_ids)
        walk = _order_cycle(g, ids)
        return cls(
            tuple(walk),
            g.weight(walk),
            max(g.edges[i].w for i in walk),
        )

    def is_closed_walk(self, g: WeightedMultigraph) -> bool:
        ids = self.edge_ids
        if len(ids) < 2 or len(set(ids)) != len(ids):
            return False
        first = g.edges[ids[0]]
        for start in (first.u, first.v):
            cur = start
            ok = True
            for i in ids:
                e = g.edges[i]
                if cur == e.u:
                    cur = e.v
                elif cur == e.v:
                    cur = e.u
                else:
                    ok = False
                    break
            if ok and cur == start:
                return True
        return False


def _order_cycle(g: WeightedMultigraph, ids: Sequence[int]) -> list[int]:
    if len(ids) < 2:
        raise ValueError("a cycle needs at least two edges")
    remaining = set(ids)
    first = min(ids)
    walk = [first]
    remaining.discard(first)
    start = g.edges[first].u
    cur = g.edges[first].v
    while remaining:
        nxt = min((i for i in remaining if cur in (g.edges[i].u, g.edges[i].v)), default=None)
        if nxt is None:
            raise ValueError(f"edges {sorted(ids)} do not form a cycle")
        walk.append(nxt)
        remaining.discard(nxt)
        cur = g.edges[nxt].other(cur)
    if cur != start:
        raise ValueError(f"edges {sorted(ids)} do not form a cycle")
    return walk


# -- edge-list text format ---------------------------------------------------


def load_graph(text: str) -> WeightedMultigraph:
    """Parse the ``n m`` / ``u v w [id]`` edge-list format."""
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise GraphFormatError("empty document: missing 'n m' header")
    head = lines[0].split()
    if len(head) != 2:
        raise GraphFormatError(f"header must be 'n m', got {lines[0]!r}")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError as exc:
        raise GraphFormatError(f"header must be two integers, got {lines[0]!r}") from exc
    body = lines[1:]
    if len(body) != m:
        raise GraphFormatError(f"header declares {m} edges, found {len(body)}")
    slots: dict[int, tuple[int, int, Fraction]] = {}
    explicit: set[int] = set()
    for lineno, line in enumerate(body):
        parts = line.split()
        if len(parts) not in (3, 4):
            raise GraphFormatError(f"edge line {lineno + 1}: expected 'u v w [id]', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise GraphFormatError(f"edge line {lineno + 1}: bad vertex in {line!r}") from exc
        w = _as_weight(parts[2])
        if len(parts) == 4:
            try:
                eid = int(parts[3])
            except ValueError as exc:
                raise GraphFormatError(f"edge line {lineno + 1}: bad id {parts[3]!r}") from exc
            if eid in explicit:
                raise GraphFormatError(f"duplicate edge id {eid}")
            explicit.add(eid)
        else:
            eid = lineno
        if eid in slots:
            raise GraphFormatError(f"edge id {eid} assigned twice")
        slots[eid] = (u, v, w)
    if set(slots) != set(range(m)):
        raise GraphFormatError("edge ids must be exactly 0..m-1")
    return WeightedMultigraph(n, (slots[i] for i in range(m)))


def dump_graph(g: WeightedMultigraph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{e.u} {e.v} {e.w} {e.id}" for e in g.edges)
    return "\n".join(lines) + "\n"


def read_graph(path: str) -> WeightedMultigraph:
    with open(path, encoding="utf-8") as fh:
        return load_graph(fh.read())


# -- distances -----------------------------------------------------------------


def _check_vertex(g: WeightedMultigraph, *vs: int) -> None:
    for x in vs:
        if not 0 <= x < g.n:
            raise IndexError(f"vertex {x} out of range for n={g.n}")


def _dijkstra(
    g: WeightedMultigraph,
    allowed: frozenset[int] | set[int],
    src: int,
    dst: int | None = None,
    bound: Fraction | None = None,
    track: bool = False,
):
    """Integer-weight Dijkstra restricted to ``allowed`` edge ids.

    ``bound`` is in scaled units; vertices farther than it are never settled.
    Returns (dist list, pred-edge list or None).
    """
    iw = g.iw
    adj = g.adj
    dist: list[float] = [INFINITY] * g.n
    pred: list[int] | None = [-1] * g.n if track else None
    dist[src] = 0
    heap = [(0, src)]
    done = [False] * g.n
    while heap:
        d, x = heapq.heappop(heap)
        if done[x]:
            continue
        if bound is not None and d > bound:
            break
        done[x] = True
        if x == dst:
            break
        for y, eid in adj[x]:
            if eid not in allowed or done[y]:
                continue
            nd = d + iw[eid]
            if nd < dist[y] or (track and nd == dist[y] and eid < pred[y]):
                dist[y] = nd
                if track:
                    pred[y] = eid
                heapq.heappush(heap, (nd, y))
    if bound is not None:
        for x in range(g.n):
            if not done[x] and dist[x] > bound:
                dist[x] = INFINITY
    return dist, pred


def _scaled(g: WeightedMultigraph, d: float) -> Fraction | float:
    return INFINITY if d == INFINITY else Fraction(int(d), g.scale)


def dist(view: View, u: int, v: int) -> Fraction | float:
    """Shortest-path length between ``u`` and ``v``; ``INFINITY`` if disconnected."""
    view = as_view(view)
    g = view.parent
    _check_vertex(g, u, v)
    if u == v:
        return Fraction(0)
    d, _ = _dijkstra(g, view.edge_ids, u, v)
    return _scaled(g, d[v])


def distances_from(view: View, src: int) -> list[Fraction | float]:
    view = as_view(view)
    g = view.parent
    _check_vertex(g, src)
    d, _ = _dijkstra(g, view.edge_ids, src)
    return [_scaled(g, x) for x in d]


def short_path(view: View, u: int, v: int, limit: Fraction | None = None) -> list[int] | None:
    """Edge ids of a shortest u-v path, or None if none exists within ``limit``.

    Among shortest paths the predecessor with the smallest edge id wins, so
    the result is deterministic.
    """
    view = as_view(view)
    g = view.parent
    _check_vertex(g, u, v)
    bound = None if limit is None else limit * g.scale
    d, pred = _dijkstra(g, view.edge_ids, u, v, bound=bound, track=True)
    if d[v] == INFINITY:
        return None
    path = []
    x = v
    while x != u:
        eid = pred[x]
        path.append(eid)
        x = g.edges[eid].other(x)
    path.reverse()
    return path


# -- union-find, components, MST ---------------------------------------------


class DisjointSet:
    __slots__ = ("parent",)

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if ra > rb:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


def component_labels(view: View) -> list[int]:
    """Label of each vertex = smallest vertex in its component."""
    view = as_view(view)
    g = view.parent
    ds = DisjointSet(g.n)
    for i in view.edge_ids:
        e = g.edges[i]
        ds.union(e.u, e.v)
    return [ds.find(x) for x in range(g.n)]


def connected_components(view: View) -> list[list[int]]:
    labels = component_labels(view)
    groups: dict[int, list[int]] = {}
    for x, lab in enumerate(labels):
        groups.setdefault(lab, []).append(x)
    return [groups[k] for k in sorted(groups)]


def is_connected(view: View) -> bool:
    view = as_view(view)
    return view.n <= 1 or len(set(component_labels(view))) == 1


def mst(g: View) -> Subgraph:
    """Minimum spanning forest by Kruskal over (weight, id) order."""
    view = as_view(g)
    parent = view.parent
    ds = DisjointSet(parent.n)
    chosen = []
    for i in parent.sorted_ids(view.edge_ids):
        e = parent.edges[i]
        if ds.union(e.u, e.v):
            chosen.append(i)
    return Subgraph(parent, frozenset(chosen))


def lightness(h: View, g: WeightedMultigraph) -> Fraction:
    """w(H) / w(mst(G)) for a connected G."""
    h = as_view(h)
    if not is_connected(g):
        raise ValueError("lightness is undefined for a disconnected graph")
    base = mst(g).weight()
    if base == 0:
        raise ValueError("lightness is undefined for a graph without edges")
    return h.weight() / base


# -- edge connectivity ---------------------------------------------------------


def _max_flow_unit(g: WeightedMultigraph, allowed: Iterable[int], s: int, t: int, cap: int | None = None):
    """Unit-capacity max flow; returns (value, residual reachable set from s)."""
    arcs_at: list[list[int]] = [[] for _ in range(g.n)]
    head: dict[int, int] = {}
    resid: dict[int, int] = {}
    for eid in allowed:
        e = g.edges[eid]
        a, b = 2 * eid, 2 * eid + 1
        head[a], head[b] = e.v, e.u
        resid[a] = resid[b] = 1
        arcs_at[e.u].append(a)
        arcs_at[e.v].append(b)
    flow = 0
    while cap is None or flow < cap:
        prev = {s: -1}
        queue = [s]
        qi = 0
        while qi < len(queue) and t not in prev:
            x = queue[qi]
            qi += 1
            for a in arcs_at[x]:
                if resid[a] > 0:
                    y = head[a]
                    if y not in prev:
                        prev[y] = a
                        queue.append(y)
        if t not in prev:
            return flow, set(prev)
        y = t
        while y != s:
            a = prev[y]
            resid[a] -= 1
            resid[a ^ 1] += 1
            y = head[a ^ 1]
        flow += 1
    return flow, None


def pair_edge_connectivity(view: View, u: int, v: int, cap: int | None = None) -> int:
    """Maximum number of edge-disjoint u-v paths (parallel edges count separately).

    With ``cap`` set, stops once the value reaches ``cap``.
    """
    view = as_view(view)
    g = view.parent
    _check_vertex(g, u, v)
    if u == v:
        raise ValueError("pair_edge_connectivity needs two distinct vertices")
    value, _ = _max_flow_unit(g, view.edge_ids, u, v, cap)
    return value


def min_edge_cut(view: View, u: int, v: int) -> frozenset[int]:
    """A minimum set of edges separating u from v."""
    view = as_view(view)
    g = view.parent
    _check_vertex(g, u, v)
    _, side = _max_flow_unit(g, view.edge_ids, u, v)
    return frozenset(
        i for i in view.edge_ids if (g.edges[i].u in side) != (g.edges[i].v in side)
    )


def connectivity_classes(view: View, c: int) -> list[list[int]]:
    """Classes of the equivalence "pair_edge_connectivity >= c".

    Local edge connectivity satisfies lambda(x, z) >= min(lambda(x, y), lambda(y, z)),
    so comparing each vertex against one representative per class is enough.
    """
    if c < 1:
        raise ValueError("c must be a positive integer")
    view = as_view(view)
    g = view.parent
    if c == 1:
        return connected_components(view)
    labels = component_labels(view)
    degree = [0] * g.n
    for i in view.edge_ids:
        degree[g.edges[i].u] += 1
        degree[g.edges[i].v] += 1
    classes: list[list[int]] = []
    for x in range(g.n):
        placed = False
        if degree[x] >= c:
            for cls in classes:
                rep = cls[0]
                if labels[rep] == labels[x] and degree[rep] >= c:
                    if pair_edge_connectivity(view, rep, x, cap=c) >= c:
                        cls.append(x)
                        placed = True
                        break
        if not placed:
            classes.append([x])
    return classes


# -- weighted girth -------------------------------------------------------------


def weighted_girth(view: View) -> tuple[Fraction | float, CycleWitness | None]:
    """Minimum normalized weight w(C)/max_e w(e) over the cycles of ``view``.

    For every edge e taken as the heaviest edge of the cycle, the best cycle is
    e plus a shortest endpoint path through edges no later than e in
    (weight, id) order.
    """
    view = as_view(view)
    g = view.parent
    best: Fraction | float = INFINITY
    witness = None
    order = g.sorted_ids(view.edge_ids)
    allowed: set[int] = set()
    for eid in order:
        e = g.edges[eid]
        d, _ = _dijkstra(g, allowed, e.u, e.v)
        if d[e.v] != INFINITY:
            value = Fraction(g.iw[eid] + int(d[e.v]), g.iw[eid])
            if value < best:
                best = value
                path = short_path(g.subgraph(allowed), e.u, e.v)
                witness = CycleWitness.from_edges(g, [eid, *path])
        allowed.add(eid)
    return best, witness
