from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_bounded_instance
from coverball import cover, witness
from coverball.graphs import GraphError, scale, theta_graph, trivalent_reference

LAMBDAS = [F(1, 20), F(1, 10), F(1, 6), F(1, 4), F(3, 10)]


def test_params_from_lambda():
    p = witness.params_from_lambda(F(1, 6))
    assert p.c == 1 and p.c_prime == 1 and p.mu == 2
    assert p.lam == p.c / (3 * (p.c_prime + p.c))
    with pytest.raises(GraphError):
        witness.params_from_lambda(F(1, 3))
    with pytest.raises(GraphError):
        witness.params_from_lambda(0)


def test_hypothesis_violation_raises():
    with pytest.raises(GraphError):
        witness.find_witness(theta_graph(), F(1, 6))


def test_scaled_theta_certificate():
    g = scale(theta_graph(), F(1, 6))   # total length 1/2 = (1/6)(3*2-3)
    cert = witness.find_witness(g, F(1, 6))
    assert cert.factor == F(1, 2)
    assert cert.witness in g.vertices
    radii = [F(k, 2) for k in range(1, 9)]
    assert witness.verify_certificate(g, cert, radii)["ok"]


@given(st.integers(2, 8), st.integers(0, 99), st.sampled_from(LAMBDAS))
@settings(max_examples=60, deadline=None)
def test_random_certificates_verify(b, seed, lam):
    g = random_bounded_instance(b, lam * (3 * b - 3), seed)
    cert = witness.find_witness(g, lam)
    assert cert.factor == 1 - 3 * lam
    mu = witness.params_from_lambda(lam).mu
    rep = witness.verify_certificate(g, cert, [mu, 2 * mu])
    assert rep["ok"]


def test_certificate_trace_records_cases():
    g = random_bounded_instance(4, F(1, 6) * 9, 3)
    cert = witness.find_witness(g, F(1, 6))
    assert cert.trace[-1] == "baby-case"


# ---------------------------------------------------------------------------
# the explicit subtree construction

def test_subtree_super_edge_lengths():
    g = trivalent_reference(3)
    c_prime = F(3, 2)
    sw = witness.build_cover_subtree(g, c_prime, depth=3)
    for (_, _, _, length) in sw.super_edges:
        assert c_prime <= length <= c_prime + 1


def test_subtree_is_trivalent_in_counts():
    sw = witness.build_cover_subtree(trivalent_reference(2), F(1), depth=4)
    per_depth = {}
    for d in sw.node_depth:
        per_depth[d] = per_depth.get(d, 0) + 1
    assert per_depth == {0: 1, 1: 3, 2: 6, 3: 12, 4: 24}


def test_subtree_bilipschitz_to_cover():
    g = trivalent_reference(2)
    c_prime = F(1)
    sw = witness.build_cover_subtree(g, c_prime, depth=3)
    # tree distance between nodes i, j in super-edge steps
    import collections
    adj = collections.defaultdict(list)
    for (a, b, _, _) in sw.super_edges:
        adj[a].append(b)
        adj[b].append(a)
    n = len(sw.nodes)
    for i in range(n):
        seen = {i: 0}
        q = collections.deque([i])
        while q:
            x = q.popleft()
            for y in adj[x]:
                if y not in seen:
                    seen[y] = seen[x] + 1
                    q.append(y)
        for j in range(i + 1, n):
            steps = seen[j]
            d = witness.cover_distance(g, sw.nodes[i], sw.nodes[j])
            assert c_prime * steps <= d <= (c_prime + 1) * steps


def test_verify_reports_failures():
    from coverball.graphs import MetricGraph
    loop = MetricGraph.build([0], [(0, 0, 0, 1)])   # cover is a line: slow growth
    cert = witness.WitnessCertificate(0, F(1, 2), F(1, 6), ("baby-case",))
    rep = witness.verify_certificate(loop, cert, [F(2)])
    assert not rep["ok"] and rep["failures"] == 1
