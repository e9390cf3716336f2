"""Triangulated closed orientable surfaces with exact edge lengths.

The surface metric is the shortest-path metric on the 1-skeleton; face
areas come from Heron's formula.  First homology is computed over exact
rationals (mod-p echelon above a size threshold, with the rank certified
against the genus so capture conclusions stay exact).
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .graphs import Edge, GraphError, MetricGraph
from .linalg import PRIME, Echelon

EXACT_EDGE_LIMIT = 400   # above this, homology elimination runs mod PRIME


class SurfaceError(ValueError):
    """Invalid surface complex or operation."""


def heron(a: float, b: float, c: float) -> float:
    s = (a + b + c) / 2.0
    return math.sqrt(max(0.0, s * (s - a) * (s - b) * (s - c)))


def _pair(u: int, w: int) -> tuple[int, int]:
    return (u, w) if u < w else (w, u)


@dataclass
class TriSurface:
    vertices: tuple[int, ...]
    faces: tuple[tuple[int, int, int], ...]        # consistently oriented
    edge_lengths: dict[tuple[int, int], Fraction]
    edges: tuple[tuple[int, int], ...] = field(init=False)
    edge_faces: dict[tuple[int, int], tuple[int, ...]] = field(init=False)
    genus: int = field(init=False)

    @staticmethod
    def build(faces, lengths=None) -> "TriSurface":
        """Validate and orient a closed triangulated surface.

        ``faces`` are vertex triples; ``lengths`` maps unordered vertex
        pairs to positive rationals (default 1).
        """
        faces = [tuple(int(v) for v in f) for f in faces]
        verts = sorted({v for f in faces for v in f})
        for f in faces:
            if len(set(f)) != 3:
                raise SurfaceError(f"degenerate face {f}")
        edge_faces: dict[tuple[int, int], list[int]] = {}
        for i, (a, b, c) in enumerate(faces):
            for u, w in ((a, b), (b, c), (c, a)):
                edge_faces.setdefault(_pair(u, w), []).append(i)
        for e, fs in edge_faces.items():
            if len(fs) != 2:
                raise SurfaceError(f"non-manifold: edge {e} lies in {len(fs)} faces")
        # vertex links must be single cycles
        vfaces: dict[int, list[int]] = {v: [] for v in verts}
        for i, f in enumerate(faces):
            for v in f:
                vfaces[v].append(i)
        for v in verts:
            vedges = [e for e in edge_faces if v in e]
            if len(vedges) != len(vfaces[v]):
                raise SurfaceError(f"non-manifold vertex {v}")
            comp = {vfaces[v][0]}
            stack = [vfaces[v][0]]
            fset = set(vfaces[v])
            while stack:
                i = stack.pop()
                a, b, c = faces[i]
                for u, w in ((a, b), (b, c), (c, a)):
                    if v in (u, w):
                        for j in edge_faces[_pair(u, w)]:
                            if j in fset and j not in comp:
                                comp.add(j)
                                stack.append(j)
            if comp != fset:
                raise SurfaceError(f"non-manifold vertex {v} (disconnected link)")
        # face connectivity
        seen = {0}
        stack = [0]
        while stack:
            i = stack.pop()
            a, b, c = faces[i]
            for u, w in ((a, b), (b, c), (c, a)):
                for j in edge_faces[_pair(u, w)]:
                    if j not in seen:
                        seen.add(j)
                        stack.append(j)
        if len(seen) != len(faces):
            raise SurfaceError("disconnected surface")
        # orient: adjacent faces must induce opposite directions on the
        # shared edge
        flip = {0: False}
        stack = [0]
        while stack:
            i = stack.pop()
            di = _directed(faces[i], flip[i])
            for u, w in di:
                j = [x for x in edge_faces[_pair(u, w)] if x != i]
                j = j[0] if j else i
                if j == i:
                    continue
                need = None
                for fj in (False, True):
                    dj = _directed(faces[j], fj)
                    if (w, u) in dj:
                        need = fj
                        break
                if need is None:
                    raise SurfaceError("non-orientable surface")
                if j in flip:
                    if flip[j] != need:
                        raise SurfaceError("non-orientable surface")
                else:
                    flip[j] = need
                    stack.append(j)
        oriented = tuple(f if not flip[i] else (f[0], f[2], f[1])
                         for i, f in enumerate(faces))
        lengths = {(_pair(*k)): Fraction(v) for k, v in (lengths or {}).items()}
        full = {}
        for e in edge_faces:
            l = lengths.get(e, Fraction(1))
            if l <= 0:
                raise SurfaceError(f"nonpositive length on edge {e}")
            full[e] = l
        for (a, b, c) in oriented:
            la = full[_pair(b, c)]
            lb = full[_pair(a, c)]
            lc = full[_pair(a, b)]
            if not (la < lb + lc and lb < la + lc and lc < la + lb):
                raise SurfaceError(f"triangle inequality fails on face {(a, b, c)}")
        s = TriSurface(tuple(verts), oriented, full)
        return s

    def __post_init__(self):
        self.edge_faces = {}
        for i, (a, b, c) in enumerate(self.faces):
            for u, w in ((a, b), (b, c), (c, a)):
                self.edge_faces.setdefault(_pair(u, w), ())
                self.edge_faces[_pair(u, w)] += (i,)
        self.edges = tuple(sorted(self.edge_faces))
        chi = len(self.vertices) - len(self.edges) + len(self.faces)
        if chi % 2:
            raise SurfaceError("odd Euler characteristic")
        self.genus = (2 - chi) // 2
        if self.genus < 0:
            raise SurfaceError("negative genus")
        self._skeleton = None
        self._homology = None
        self._int_adj = None

    # -- derived views -----------------------------------------------------
    def face_area(self, i: int) -> float:
        a, b, c = self.faces[i]
        return heron(float(self.edge_lengths[_pair(b, c)]),
                     float(self.edge_lengths[_pair(a, c)]),
                     float(self.edge_lengths[_pair(a, b)]))

    def total_area(self) -> float:
        return sum(self.face_area(i) for i in range(len(self.faces)))

    def skeleton(self) -> MetricGraph:
        if self._skeleton is None:
            es = tuple(Edge(i, u, w, self.edge_lengths[(u, w)])
                       for i, (u, w) in enumerate(self.edges))
            self._skeleton = MetricGraph(frozenset(self.vertices), es)
        return self._skeleton

    def distances_from(self, src: int, cutoff: Fraction | None = None) -> dict[int, Fraction]:
        # run Dijkstra on the common denominator grid: integer arithmetic
        # is much faster than Fractions and stays exact
        D, adj = self._int_adjacency()
        icut = None
        if cutoff is not None:
            c = Fraction(cutoff) * D
            icut = c.numerator // c.denominator
        dist = {src: 0}
        heap = [(0, src)]
        while heap:
            d, v = heapq.heappop(heap)
            if d > dist[v]:
                continue
            for l, u in adj[v]:
                nd = d + l
                if icut is not None and nd > icut:
                    continue
                if u not in dist or nd < dist[u]:
                    dist[u] = nd
                    heapq.heappush(heap, (nd, u))
        return {v: Fraction(d, D) for v, d in dist.items()}

    def _int_adjacency(self):
        if self._int_adj is None:
            D = 1
            for l in self.edge_lengths.values():
                D = D * l.denominator // math.gcd(D, l.denominator)
            adj = {v: [] for v in self.vertices}
            for (u, w), l in self.edge_lengths.items():
                il = int(l * D)
                adj[u].append((il, w))
                adj[w].append((il, u))
            self._int_adj = (D, adj)
        return self._int_adj

    def homology(self) -> "HomologyData":
        if self._homology is None:
            self._homology = HomologyData(self)
        return self._homology


def _directed(face, flipped: bool):
    a, b, c = face
    if flipped:
        a, b, c = a, c, b
    return ((a, b), (b, c), (c, a))


class HomologyData:
    """First homology over Q via a spanning tree and face relations.

    Cycle chains are coordinatized on non-tree edges; the quotient by face
    boundaries is kept as an echelon basis, so the class of any closed walk
    is its reduced residual on the 2g free columns.
    """

    def __init__(self, s: TriSurface, exact: bool | None = None):
        self.surface = s
        if exact is None:
            exact = len(s.edges) <= EXACT_EDGE_LIMIT
        self.exact = exact
        self.p = None if exact else PRIME
        g = s.skeleton()
        # BFS spanning tree, deterministic
        root = min(s.vertices)
        parent_edge: dict[int, tuple[int, int]] = {}
        order = [root]
        seenv = {root}
        qi = 0
        while qi < len(order):
            v = order[qi]
            qi += 1
            for e in sorted(g.incident(v), key=lambda e: e.id):
                u = e.other(v)
                if u not in seenv:
                    seenv.add(u)
                    parent_edge[u] = (v, u)
                    order.append(u)
        self.tree = {_pair(*pe) for pe in parent_edge.values()}
        self.parent_edge = parent_edge
        self.root = root
        self.nontree = [e for e in s.edges if e not in self.tree]
        self.nontree_index = {e: i for i, e in enumerate(self.nontree)}
        # face boundary relations in non-tree coordinates
        self.relations = Echelon(self.p)
        for i, f in enumerate(s.faces):
            vec = self.chain_coords(_directed(f, False))
            self.relations.add(vec)
        m = len(self.nontree)
        expected = m - 2 * s.genus
        if self.relations.rank != expected:
            if self.p is not None:
                # unlucky prime: fall back to exact arithmetic
                self.__init__(s, exact=True)
                return
            raise SurfaceError("face relations have unexpected rank")
        # the 2g free columns carry the class coordinates
        self.free_cols = [i for i in range(m) if i not in self.relations.pivots]

    def chain_coords(self, directed_edges) -> dict[int, int]:
        vec: dict[int, int] = {}
        for (x, y) in directed_edges:
            idx = self.nontree_index.get(_pair(x, y))
            if idx is None:
                continue
            vec[idx] = vec.get(idx, 0) + (1 if x < y else -1)
            if not vec[idx]:
                del vec[idx]
        return vec

    def class_of_walk(self, walk_vertices) -> dict:
        """Homology class of a closed walk given as a vertex list
        (first and last vertex equal, or closure implied)."""
        vs = list(walk_vertices)
        if vs[0] != vs[-1]:
            vs.append(vs[0])
        return self.class_of_chain(self.chain_coords(zip(vs, vs[1:])))

    def class_of_chain(self, coords: dict) -> dict:
        return self.relations.reduce(coords)

    def tree_path(self, v: int) -> list[int]:
        """Vertex path from the root to v along the spanning tree."""
        path = [v]
        while path[-1] != self.root:
            path.append(self.parent_edge[path[-1]][0])
        return path[::-1]

    def fundamental_cycle(self, e: tuple[int, int]) -> list[int]:
        """Closed walk root -> u -> w -> root for a non-tree edge."""
        u, w = e
        return self.tree_path(u) + self.tree_path(w)[::-1]

    def boundary_matrices(self):
        """Exact sparse boundary maps (d1: edges->vertices, d2: faces->edges)."""
        s = self.surface
        eidx = {e: i for i, e in enumerate(s.edges)}
        d1 = []
        for (u, w) in s.edges:          # oriented u -> w, u < w
            d1.append({w: Fraction(1), u: Fraction(-1)})
        d2 = []
        for f in s.faces:
            col: dict[int, Fraction] = {}
            for (x, y) in _directed(f, False):
                col[eidx[_pair(x, y)]] = col.get(eidx[_pair(x, y)], Fraction(0)) \
                    + (1 if x < y else -1)
            d2.append({k: v for k, v in col.items() if v})
        return d1, d2


# ---------------------------------------------------------------------------
# capturing subgraphs

def subgraph_cycle_classes(s: TriSurface, sub_edges) -> list[dict]:
    """Homology classes of a fundamental cycle basis of the subgraph."""
    hom = s.homology()
    sub = sorted(set(map(lambda e: _pair(*e), sub_edges)))
    parent: dict[int, int] = {}

    def find(x):
        while parent.get(x, x) != x:
            parent[x] = parent.get(parent[x], parent[x])
            x = parent[x]
        return x

    adj: dict[int, list[tuple[int, tuple[int, int]]]] = {}
    tree: list[tuple[int, int]] = []
    extra: list[tuple[int, int]] = []
    for (u, w) in sub:
        ru, rw = find(u), find(w)
        if ru != rw:
            parent[ru] = rw
            tree.append((u, w))
            adj.setdefault(u, []).append((w, (u, w)))
            adj.setdefault(w, []).append((u, (u, w)))
        else:
            extra.append((u, w))

    def path(a, b):
        # BFS in the subgraph spanning forest
        prev = {a: None}
        q = [a]
        qi = 0
        while qi < len(q):
            v = q[qi]
            qi += 1
            if v == b:
                break
            for (nb, _) in adj.get(v, []):
                if nb not in prev:
                    prev[nb] = v
                    q.append(nb)
        out = [b]
        while prev[out[-1]] is not None:
            out.append(prev[out[-1]])
        return out[::-1]

    classes = []
    for (u, w) in extra:
        walk = path(w, u) + [w]
        classes.append(hom.class_of_walk(walk))
    return classes


def capturing_test(s: TriSurface, sub_edges) -> tuple[bool, int]:
    """True iff the subgraph's cycle space surjects onto H1(M); also the
    image rank (a certified lower bound when the mod-p backend is active)."""
    classes = subgraph_cycle_classes(s, sub_edges)
    ech = Echelon(s.homology().p)
    for c in classes:
        ech.add(c)
    rank = ech.rank
    return rank == 2 * s.genus, rank


def subgraph_betti(sub_edges) -> int:
    sub = sorted(set(map(lambda e: _pair(*e), sub_edges)))
    verts = {v for e in sub for v in e}
    parent = {v: v for v in verts}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    ncomp = len(verts)
    for (u, w) in sub:
        ru, rw = find(u), find(w)
        if ru != rw:
            parent[ru] = rw
            ncomp -= 1
    return len(sub) - len(verts) + ncomp


def prune_to_iso(s: TriSurface, sub_edges) -> set[tuple[int, int]]:
    """Greedy edge removal keeping the epimorphism; ends with Betti = 2g."""
    ok, rank = capturing_test(s, sub_edges)
    if not ok:
        raise SurfaceError(f"subgraph does not capture the topology (rank {rank})")
    cur = set(map(lambda e: _pair(*e), sub_edges))
    changed = True
    while changed:
        changed = False
        for e in sorted(cur, key=lambda e: (-s.edge_lengths[e], e)):
            trial = cur - {e}
            ok, _ = capturing_test(s, trial)
            if ok:
                cur = trial
                changed = True
    if subgraph_betti(cur) != 2 * s.genus:
        raise SurfaceError("pruned subgraph has wrong Betti number")
    return cur


def subgraph_length(s: TriSurface, sub_edges) -> Fraction:
    return sum((s.edge_lengths[_pair(*e)] for e in set(map(lambda e: _pair(*e), sub_edges))),
               Fraction(0))


def subgraph_metric_graph(s: TriSurface, sub_edges) -> MetricGraph:
    sub = sorted(set(map(lambda e: _pair(*e), sub_edges)))
    verts = {v for e in sub for v in e}
    es = tuple(Edge(i, u, w, s.edge_lengths[(u, w)]) for i, (u, w) in enumerate(sub))
    return MetricGraph(frozenset(verts), es)


# ---------------------------------------------------------------------------
# file format

def parse_surface(text: str) -> TriSurface:
    faces = []
    lengths = {}
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or lines[0] != "TSURF":
        raise SurfaceError("missing TSURF header")
    for raw in lines[1:]:
        parts = raw.split()
        try:
            if parts[0] == "f" and len(parts) == 4:
                faces.append(tuple(int(x) for x in parts[1:]))
            elif parts[0] == "el" and len(parts) == 4:
                lengths[(int(parts[1]), int(parts[2]))] = Fraction(parts[3])
            elif parts[0] == "nv" and len(parts) == 2:
                pass  # informational
            else:
                raise ValueError
        except (ValueError, IndexError):
            raise SurfaceError(f"malformed surface line: {raw!r}") from None
    if not faces:
        raise SurfaceError("no faces")
    return TriSurface.build(faces, lengths)


def format_surface(s: TriSurface) -> str:
    lines = ["TSURF", f"nv {len(s.vertices)}"]
    for f in s.faces:
        lines.append(f"f {f[0]} {f[1]} {f[2]}")
    for (u, w) in s.edges:
        l = s.edge_lengths[(u, w)]
        if l != 1:
            lines.append(f"el {u} {w} {l.numerator}/{l.denominator}")
    return "\n".join(lines) + "\n"


def load_surface(path) -> TriSurface:
    with open(path) as fh:
        return parse_surface(fh.read())
