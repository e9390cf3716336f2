"""Witness vertices with guaranteed cover-ball growth.

Given a connected metric graph whose total length is at most
lambda * (3b - 3), produces a vertex whose cover balls dominate
(1 - 3*lambda) times the unit trivalent tree reference at every radius,
together with a recursion trace and a verification routine.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import cover
from .graphs import (GraphError, MetricGraph, betti, delete_edge,
                     induced_subgraph, reduce_graph, is_separating, scale)


class TheoremViolation(AssertionError):
    """A step the underlying theorem guarantees has failed: implementation bug."""


@dataclass(frozen=True)
class WitnessParams:
    lam: Fraction
    c: Fraction
    c_prime: Fraction
    mu: Fraction          # scale applied before the recursion

    def __post_init__(self):
        if self.lam != self.c / (3 * (self.c_prime + self.c)):
            raise GraphError("inconsistent witness parameters")
        if self.mu <= 0:
            raise GraphError("scale factor must be positive")


@dataclass(frozen=True)
class WitnessCertificate:
    witness: int                       # vertex id in the original graph
    factor: Fraction                   # 1 - 3*lambda
    lam: Fraction
    trace: tuple[str, ...]

    def __post_init__(self):
        if not 0 < self.factor < 1:
            raise GraphError("certificate factor outside (0,1)")


def params_from_lambda(lam: Fraction | int | str) -> WitnessParams:
    lam = Fraction(lam)
    if not 0 < lam < Fraction(1, 3):
        raise GraphError("lambda must lie in (0, 1/3)")
    c = Fraction(1)
    c_prime = 1 / (3 * lam) - 1
    # scaling by c_prime + c = 1/(3*lambda) turns the hypothesis
    # length <= lambda*(3b-3) into length <= c*(b-1)
    return WitnessParams(lam, c, c_prime, c_prime + c)


def find_witness(g: MetricGraph, lam: Fraction | int | str) -> WitnessCertificate:
    lam = Fraction(lam)
    params = params_from_lambda(lam)
    if not g.is_connected():
        raise GraphError("find_witness requires a connected graph")
    b = betti(g)
    if b < 2:
        raise GraphError("find_witness requires first Betti number >= 2")
    if g.total_length() > lam * (3 * b - 3):
        raise GraphError("hypothesis violated: total length exceeds lambda*(3b-3)")

    c = params.c
    trace: list[str] = []
    cur = scale(g, params.mu)
    if cur.total_length() > c * (betti(cur) - 1):
        raise TheoremViolation("scaled hypothesis must hold")

    while True:
        reduced, _ = reduce_graph(cur)
        if len(reduced.edges) != len(cur.edges):
            trace.append("reduce")
        cur = reduced
        bc = betti(cur)
        if bc < 2:
            raise TheoremViolation("Betti number dropped below 2")
        long_edges = [e for e in cur.edges if e.length > c]
        if not long_edges:
            trace.append("baby-case")
            witness = min(cur.vertices)
            break
        w = sorted(long_edges, key=lambda e: (-e.length, e.id))[0]
        if not is_separating(cur, w.id):
            nxt = delete_edge(cur, w.id)
            if nxt.total_length() > c * (betti(nxt) - 1):
                raise TheoremViolation("non-separating branch length claim failed")
            trace.append(f"remove-nonseparating({w.id})")
            cur = nxt
        else:
            without = delete_edge(cur, w.id)
            comps = without.components()
            if len(comps) != 2:
                raise TheoremViolation("separating edge must leave two components")
            sides = [induced_subgraph(without, comp) for comp in comps]
            ok = []
            for s in sides:
                bs = betti(s)
                if s.total_length() <= c * (bs - 1):
                    ok.append((bs, min(s.vertices), s))
            if not ok:
                raise TheoremViolation("separating-side length claim failed")
            ok.sort(key=lambda t: (t[0], t[1]))
            bs, _, side = ok[0]
            if bs < 2:
                raise TheoremViolation("kept side must have Betti >= 2")
            trace.append(f"split-separating({w.id},betti={bs})")
            cur = side

    if witness not in g.vertices:
        raise TheoremViolation("witness did not pull back to the original graph")
    return WitnessCertificate(witness, 1 - 3 * lam, lam, tuple(trace))


# ---------------------------------------------------------------------------
# explicit subtree construction behind the baby case

@dataclass(frozen=True)
class SubtreeWitness:
    base: int
    nodes: tuple[tuple, ...]           # cover nodes as traversal tuples ((),) is root
    node_depth: tuple[int, ...]
    super_edges: tuple[tuple[int, int, tuple, Fraction], ...]
    # (parent node index, child node index, traversal path, exact length)


def _path_length(g: MetricGraph, traversals) -> Fraction:
    return sum((g.edge_by_id(e).length for e, _ in traversals), Fraction(0))


def cover_distance(g: MetricGraph, p: tuple, q: tuple) -> Fraction:
    """Distance in the universal cover between the endpoints of two
    non-backtracking paths from the same base lift."""
    k = 0
    while k < len(p) and k < len(q) and p[k] == q[k]:
        k += 1
    return _path_length(g, p[k:]) + _path_length(g, q[k:])


def build_cover_subtree(g: MetricGraph, c_prime: Fraction | int | str,
                         depth: int, max_nodes: int = 200_000) -> SubtreeWitness:
    """Greedy trivalent subtree in the cover with super-edges in [C', C'+c].

    From the base lift, grow three edge-disjoint reduced paths, each stopped
    at the first vertex where the accumulated length reaches ``c_prime``;
    from every frontier node grow two more, to combinatorial depth ``depth``.
    Departures are always the smallest-id ones available.
    """
    c_prime = Fraction(c_prime)
    if c_prime <= 0:
        raise GraphError("c_prime must be positive")
    if not g.is_connected():
        raise GraphError("subtree construction requires a connected graph")
    if min(g.degree(v) for v in g.vertices) < 3:
        raise GraphError("subtree construction requires an at least trivalent graph")
    head, length, departures, nxt = cover._transitions(g)

    base = min(g.vertices)
    nodes: list[tuple] = [()]
    node_depth = [0]
    super_edges: list[tuple[int, int, tuple, Fraction]] = []

    def grow_path(first: tuple[int, int]) -> tuple[tuple, Fraction]:
        path = [first]
        acc = length[first]
        while acc < c_prime:
            t = min(nxt[path[-1]])
            path.append(t)
            acc += length[t]
        return tuple(path), acc

    frontier = []  # (node index, incoming traversal or None)
    first_three = sorted(departures[base])[:3]
    for t in first_three:
        path, acc = grow_path(t)
        nodes.append(path)
        node_depth.append(1)
        super_edges.append((0, len(nodes) - 1, path, acc))
        frontier.append((len(nodes) - 1, path[-1]))
    d = 1
    while d < depth:
        nxt_frontier = []
        for idx, incoming in frontier:
            rev = (incoming[0], 1 - incoming[1])
            opts = sorted(s for s in departures[head[incoming]] if s != rev)[:2]
            for t in opts:
                if len(nodes) > max_nodes:
                    raise GraphError("subtree depth budget exceeded")
                path, acc = grow_path(t)
                # grow_path returns the path relative to the node; store the
                # absolute path from the base lift
                abs_path = nodes[idx] + path
                nodes.append(abs_path)
                node_depth.append(d + 1)
                super_edges.append((idx, len(nodes) - 1, path, acc))
                nxt_frontier.append((len(nodes) - 1, path[-1]))
        frontier = nxt_frontier
        d += 1
    return SubtreeWitness(base, tuple(nodes), tuple(node_depth), tuple(super_edges))


def verify_certificate(g: MetricGraph, cert: WitnessCertificate, radii,
                       budget: int = cover.DEFAULT_BUDGET) -> dict:
    """Check ball_length(g, witness, R) >= factor * trivalent_tree_ball(R)
    on each grid radius.  Truncated points where the certified lower bound
    already clears the target still pass; otherwise they are inconclusive."""
    rows = []
    failures = 0
    for R in radii:
        R = Fraction(R)
        rep = cover.ball_length(g, cert.witness, R, budget)
        target = cert.factor * cover.trivalent_tree_ball(R)
        if rep.total_length >= target:
            status = "pass"
        elif rep.truncated:
            status = "inconclusive"
        else:
            status = "fail"
            failures += 1
        rows.append({
            "R": R,
            "ball_length": rep.total_length,
            "target": target,
            "margin": rep.total_length - target,
            "truncated": rep.truncated,
            "status": status,
        })
    return {"witness": cert.witness, "factor": cert.factor,
            "failures": failures, "rows": rows, "ok": failures == 0}
