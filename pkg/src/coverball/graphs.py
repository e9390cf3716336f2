"""Metric graphs with exact rational edge lengths.

Vertices are integer ids.  Edges carry their own integer id, an unordered
endpoint pair (equal endpoints give a loop) and a strictly positive
``Fraction`` length.  Parallel edges are allowed.  All values are frozen
after construction; every operation returns a new graph.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping


class GraphError(ValueError):
    """Structural problem with a metric graph or an operation on it."""


@dataclass(frozen=True)
class Edge:
    id: int
    u: int
    w: int
    length: Fraction

    @property
    def is_loop(self) -> bool:
        return self.u == self.w

    def other(self, v: int) -> int:
        if v == self.u:
            return self.w
        if v == self.w:
            return self.u
        raise GraphError(f"vertex {v} not an endpoint of edge {self.id}")


@dataclass(frozen=True)
class MetricGraph:
    vertices: frozenset[int]
    edges: tuple[Edge, ...]
    _adj: dict[int, list[Edge]] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        ids = [e.id for e in self.edges]
        if len(ids) != len(set(ids)):
            raise GraphError("duplicate edge ids")
        adj: dict[int, list[Edge]] = {v: [] for v in self.vertices}
        for e in self.edges:
            if e.length <= 0:
                raise GraphError(f"nonpositive length on edge {e.id}")
            if e.u not in self.vertices or e.w not in self.vertices:
                raise GraphError(f"edge {e.id} has unknown endpoint")
            adj[e.u].append(e)
            if not e.is_loop:
                adj[e.w].append(e)
        object.__setattr__(self, "_adj", adj)

    @staticmethod
    def build(vertices: Iterable[int],
              edges: Iterable[tuple[int, int, int, Fraction | int | str]]) -> "MetricGraph":
        es = tuple(Edge(i, u, w, Fraction(l)) for i, u, w, l in edges)
        return MetricGraph(frozenset(vertices), es)

    def incident(self, v: int) -> list[Edge]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        # loops counted twice
        return sum(2 if e.is_loop else 1 for e in self._adj[v])

    def edge_by_id(self, eid: int) -> Edge:
        for e in self.edges:
            if e.id == eid:
                return e
        raise GraphError(f"unknown edge id {eid}")

    def total_length(self) -> Fraction:
        return sum((e.length for e in self.edges), Fraction(0))

    def components(self) -> list[set[int]]:
        seen: set[int] = set()
        comps = []
        for start in sorted(self.vertices):
            if start in seen:
                continue
            comp = {start}
            stack = [start]
            while stack:
                v = stack.pop()
                for e in self._adj[v]:
                    for x in (e.u, e.w):
                        if x not in comp:
                            comp.add(x)
                            stack.append(x)
            seen |= comp
            comps.append(comp)
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def next_edge_id(self) -> int:
        return max((e.id for e in self.edges), default=-1) + 1


@dataclass(frozen=True)
class ReductionTrace:
    """Maps a reduced graph back into the graph it came from.

    Surviving vertices keep their ids, so ``vertex_map`` is the identity on
    them; it exists to make pull-backs explicit and checkable.  ``edge_map``
    sends each surviving edge id to the ordered list of original edge ids it
    is made of (a single id unless degree-two smoothing merged edges).
    """
    removed_vertices: tuple[int, ...]
    vertex_map: Mapping[int, int]
    edge_map: Mapping[int, tuple[int, ...]]

    def pull_back_vertex(self, v: int) -> int:
        return self.vertex_map[v]

    @staticmethod
    def identity(g: MetricGraph) -> "ReductionTrace":
        return ReductionTrace((), {v: v for v in g.vertices},
                              {e.id: (e.id,) for e in g.edges})


def betti(g: MetricGraph) -> int:
    """First Betti number e - v + n."""
    return len(g.edges) - len(g.vertices) + len(g.components())


def girth(g: MetricGraph) -> Fraction | None:
    """Length of the shortest cycle, or None for a forest.

    Loops count as cycles of their own length; a pair of parallel edges is a
    cycle of the summed lengths.
    """
    best: Fraction | None = None
    for e in g.edges:
        if e.is_loop:
            cand = e.length
        else:
            d = _dijkstra_without(g, e.u, e.id).get(e.w)
            if d is None:
                continue
            cand = d + e.length
        if best is None or cand < best:
            best = cand
    return best


def _dijkstra_without(g: MetricGraph, src: int, skip_edge: int) -> dict[int, Fraction]:
    import heapq
    dist = {src: Fraction(0)}
    heap: list[tuple[Fraction, int]] = [(Fraction(0), src)]
    while heap:
        d, v = heapq.heappop(heap)
        if d > dist[v]:
            continue
        for e in g.incident(v):
            if e.id == skip_edge:
                continue
            u = e.other(v)
            nd = d + e.length
            if u not in dist or nd < dist[u]:
                dist[u] = nd
                heapq.heappush(heap, (nd, u))
    return dist


def validate(g: MetricGraph) -> dict:
    """Structural diagnostics; violations are listed, never fixed."""
    errors: list[str] = []
    for e in g.edges:
        if e.length <= 0:
            errors.append(f"nonpositive length on edge {e.id}")
    degsum = sum(g.degree(v) for v in g.vertices)
    if degsum != 2 * len(g.edges):
        errors.append("degree sum != 2e")
    connected = g.is_connected()
    return {
        "connected": connected,
        "components": len(g.components()),
        "vertices": len(g.vertices),
        "edges": len(g.edges),
        "betti": betti(g),
        "min_degree": min((g.degree(v) for v in g.vertices), default=0),
        "degree_sum": degsum,
        "total_length": g.total_length(),
        "errors": errors,
    }


def prune_leaves(g: MetricGraph) -> tuple[MetricGraph, ReductionTrace]:
    """Iteratively remove degree-1 vertices with their incident edges.

    A tree collapses to its single surviving vertex (the smallest id when the
    last round would empty the graph).
    """
    if not g.is_connected():
        raise GraphError("prune_leaves requires a connected graph")
    verts = set(g.vertices)
    edges = {e.id: e for e in g.edges}
    removed: list[int] = []

    def deg(v):
        return sum(2 if e.is_loop else 1 for e in edges.values() if v in (e.u, e.w))

    while True:
        leaves = sorted(v for v in verts if deg(v) == 1)
        if not leaves:
            break
        if len(leaves) == len(verts):
            # final pair of a path: keep the smallest id
            leaves = leaves[1:]
        for v in leaves:
            removed.append(v)
            verts.discard(v)
            for eid in [i for i, e in edges.items() if v in (e.u, e.w)]:
                del edges[eid]
    reduced = MetricGraph(frozenset(verts), tuple(sorted(edges.values(), key=lambda e: e.id)))
    trace = ReductionTrace(tuple(removed), {v: v for v in verts},
                           {i: (i,) for i in edges})
    return reduced, trace


def smooth_degree2(g: MetricGraph) -> tuple[MetricGraph, ReductionTrace]:
    """Merge the two edges at every degree-2 vertex into one of summed length.

    A pure cycle cannot be emptied: one representative vertex (smallest id)
    keeps a loop carrying the whole cycle length.  Total length and Betti
    number are preserved exactly.
    """
    if not g.is_connected():
        raise GraphError("smooth_degree2 requires a connected graph")
    verts = set(g.vertices)
    edges = {e.id: e for e in g.edges}
    edge_src = {e.id: [e.id] for e in g.edges}
    removed: list[int] = []
    next_id = g.next_edge_id()

    def deg(v):
        return sum(2 if e.is_loop else 1 for e in edges.values() if v in (e.u, e.w))

    changed = True
    while changed:
        changed = False
        for v in sorted(verts):
            if deg(v) != 2:
                continue
            inc = [e for e in edges.values() if v in (e.u, e.w)]
            if len(inc) == 1:
                # v carries a loop: nothing to merge
                continue
            e1, e2 = sorted(inc, key=lambda e: e.id)
            a, b = e1.other(v), e2.other(v)
            if a == v or b == v:
                continue
            merged = Edge(next_id, a, b, e1.length + e2.length)
            edge_src[next_id] = edge_src.pop(e1.id) + edge_src.pop(e2.id)
            del edges[e1.id], edges[e2.id]
            edges[next_id] = merged
            next_id += 1
            removed.append(v)
            verts.discard(v)
            changed = True
            break
    reduced = MetricGraph(frozenset(verts), tuple(sorted(edges.values(), key=lambda e: e.id)))
    trace = ReductionTrace(tuple(removed), {v: v for v in verts},
                           {i: tuple(edge_src[i]) for i in edges})
    return reduced, trace


def reduce_graph(g: MetricGraph) -> tuple[MetricGraph, ReductionTrace]:
    """prune_leaves followed by smooth_degree2, with composed traces."""
    g1, t1 = prune_leaves(g)
    g2, t2 = smooth_degree2(g1)
    edge_map = {}
    for eid, srcs in t2.edge_map.items():
        flat: list[int] = []
        for s in srcs:
            flat.extend(t1.edge_map[s])
        edge_map[eid] = tuple(flat)
    trace = ReductionTrace(t1.removed_vertices + t2.removed_vertices,
                           {v: t1.vertex_map[t2.vertex_map[v]] for v in g2.vertices},
                           edge_map)
    return g2, trace


def is_separating(g: MetricGraph, edge_id: int) -> bool:
    """True iff deleting the open edge disconnects g.  Loops never separate."""
    if not g.is_connected():
        raise GraphError("is_separating requires a connected graph")
    e = g.edge_by_id(edge_id)
    if e.is_loop:
        return False
    return e.w not in _dijkstra_without(g, e.u, edge_id)


def delete_edge(g: MetricGraph, edge_id: int) -> MetricGraph:
    g.edge_by_id(edge_id)
    return MetricGraph(g.vertices, tuple(e for e in g.edges if e.id != edge_id))


def induced_subgraph(g: MetricGraph, verts: set[int]) -> MetricGraph:
    es = tuple(e for e in g.edges if e.u in verts and e.w in verts)
    return MetricGraph(frozenset(verts), es)


def scale(g: MetricGraph, mu: Fraction | int | str) -> MetricGraph:
    mu = Fraction(mu)
    if mu <= 0:
        raise GraphError("scale factor must be positive")
    return MetricGraph(g.vertices,
                       tuple(Edge(e.id, e.u, e.w, e.length * mu) for e in g.edges))


# ---------------------------------------------------------------------------
# generators

def theta_graph(length: Fraction | int = 1) -> MetricGraph:
    l = Fraction(length)
    return MetricGraph.build([0, 1], [(0, 0, 1, l), (1, 0, 1, l), (2, 0, 1, l)])


def figure_eight(length: Fraction | int = 1) -> MetricGraph:
    l = Fraction(length)
    return MetricGraph.build([0], [(0, 0, 0, l), (1, 0, 0, l)])


def trivalent_reference(b: int) -> MetricGraph:
    """Unit-length trivalent graph of first Betti number b (3b-3 edges).

    Built as a chain of b-2 theta-like middle blocks capped with loops: two
    end vertices carry a loop, consecutive vertices are joined by double
    edges, which gives 2(b-1) vertices of degree 3 for b >= 3; b = 2 is the
    theta graph.
    """
    if b < 2:
        raise GraphError("trivalent reference needs b >= 2")
    if b == 2:
        return theta_graph()
    verts = list(range(2 * (b - 1)))
    edges: list[tuple[int, int, int, int]] = []
    eid = 0
    # chain: loop at 0, double edges (2k,2k+1)? use ladder of double bonds
    # vertices 0..n-1 in a path; ends carry loops; interior joined by single
    # and parallel edges alternately so every degree is 3.
    n = len(verts)
    edges.append((eid, 0, 0, 1)); eid += 1
    edges.append((eid, n - 1, n - 1, 1)); eid += 1
    for k in range(n - 1):
        if k % 2 == 0:
            edges.append((eid, k, k + 1, 1)); eid += 1
        else:
            edges.append((eid, k, k + 1, 1)); eid += 1
            edges.append((eid, k, k + 1, 1)); eid += 1
    g = MetricGraph.build(verts, edges)
    return g


def random_connected(b: int, length_range: tuple[Fraction, Fraction], seed: int,
                     n_vertices: int | None = None, denom: int = 8) -> MetricGraph:
    """Seeded random connected multigraph of first Betti number b.

    Lengths are multiples of 1/denom inside ``length_range``.
    """
    if b < 2:
        raise GraphError("random_connected needs b >= 2")
    rng = random.Random(seed)
    lo, hi = Fraction(length_range[0]), Fraction(length_range[1])
    klo, khi = -(-lo * denom // 1), hi * denom // 1
    if klo > khi or klo <= 0:
        raise GraphError("empty length range at this denominator")

    def rand_len():
        return Fraction(rng.randint(int(klo), int(khi)), denom)

    nv = n_vertices if n_vertices is not None else rng.randint(2, 2 * b)
    verts = list(range(nv))
    edges = []
    eid = 0
    order = verts[1:]
    rng.shuffle(order)
    joined = [verts[0]]
    for v in order:
        u = rng.choice(joined)
        edges.append((eid, u, v, rand_len())); eid += 1
        joined.append(v)
    for _ in range(b):
        u = rng.choice(verts)
        w = rng.choice(verts)
        edges.append((eid, u, w, rand_len())); eid += 1
    return MetricGraph.build(verts, edges)


def generate(kind: str, params: dict | None = None, seed: int = 0) -> MetricGraph:
    params = dict(params or {})
    if kind == "theta":
        return theta_graph(params.get("length", 1))
    if kind == "figure_eight":
        return figure_eight(params.get("length", 1))
    if kind == "trivalent_reference":
        return trivalent_reference(int(params["b"]))
    if kind == "random_connected":
        return random_connected(int(params["b"]),
                                params.get("length_range", (Fraction(1, 4), Fraction(1))),
                                seed,
                                n_vertices=params.get("n_vertices"),
                                denom=int(params.get("denom", 8)))
    raise GraphError(f"unknown graph kind {kind!r}")


# ---------------------------------------------------------------------------
# text format: `v <id>` / `e <id> <u> <w> <p>/<q>` lines, '#' comments

def parse_graph(text: str) -> MetricGraph:
    verts: list[int] = []
    edges: list[tuple[int, int, int, Fraction]] = []
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "v" and len(parts) == 2:
                verts.append(int(parts[1]))
            elif parts[0] == "e" and len(parts) == 5:
                edges.append((int(parts[1]), int(parts[2]), int(parts[3]),
                              Fraction(parts[4])))
            else:
                raise ValueError
        except ValueError:
            raise GraphError(f"malformed graph line {ln}: {raw!r}") from None
    return MetricGraph.build(verts, edges)


def format_graph(g: MetricGraph) -> str:
    lines = [f"v {v}" for v in sorted(g.vertices)]
    for e in sorted(g.edges, key=lambda e: e.id):
        u, w = min(e.u, e.w), max(e.u, e.w)
        lines.append(f"e {e.id} {u} {w} {e.length.numerator}/{e.length.denominator}")
    return "\n".join(lines) + "\n"
