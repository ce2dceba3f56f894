import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quadtangles.graphs import (
    GraphError,
    PointedBipartiteGraph,
    bell,
    check_pg1,
    check_pg2,
    fork_segment,
    leading_multiplicity,
    local_eigen_residual,
    partition_dims,
    partition_dims_bruteforce,
    partition_level4_traces,
    pf_weights,
    stirling2,
)


def qi(r, q):
    return (q ** r - q ** -r) / (q - 1 / q)


@pytest.mark.parametrize("m", range(2, 21))
def test_path_weights(m):
    g = PointedBipartiteGraph.path(m)
    w, d = pf_weights(g)
    theta = math.pi / (m + 1)
    assert d == pytest.approx(2 * math.cos(theta), abs=1e-12)
    for j in range(m):
        assert w[f"v{j}"] == pytest.approx(math.sin((j + 1) * theta) / math.sin(theta), abs=1e-10)
    assert w["v0"] == 1
    assert all(abs(local_eigen_residual(g, w, d, v)) < 1e-10 for v in g.vertices)


def _random_tree(size, seed):
    rng = np.random.default_rng(seed)
    verts = [f"x{i}" for i in range(size)]
    classes = {"x0": 0}
    edges = {}
    for i in range(1, size):
        parent = f"x{int(rng.integers(i))}"
        classes[verts[i]] = 1 - classes[parent]
        edges[(parent, verts[i])] = int(rng.integers(1, 3))
    return PointedBipartiteGraph(verts, classes, "x0", edges)


@given(st.integers(2, 12), st.integers(0, 10_000))
@settings(max_examples=40, deadline=None)
def test_pf_against_eigensolver(size, seed):
    g = _random_tree(size, seed)
    w, d = pf_weights(g)
    vals, vecs = np.linalg.eigh(g.adjacency())
    assert d == pytest.approx(vals[-1], abs=1e-9)
    assert min(w.values()) > 0
    assert all(abs(local_eigen_residual(g, w, d, v)) < 1e-9 * max(1, d) for v in g.vertices)


def test_graph_validation():
    with pytest.raises(GraphError):
        PointedBipartiteGraph(["a", "b"], {"a": 0, "b": 0}, "a", {("a", "b"): 1})
    with pytest.raises(GraphError):
        PointedBipartiteGraph(["a", "b", "c"], {"a": 0, "b": 1, "c": 0}, "a", {("a", "b"): 1})
    with pytest.raises(GraphError):
        PointedBipartiteGraph.from_json({"vertices": [{"id": "a", "class": 0}], "edges": []})


def test_graph_json_round_trip():
    g = _random_tree(6, 2)
    back = PointedBipartiteGraph.from_json(g.to_json())
    assert back.edges == g.edges and back.star == g.star


@pytest.mark.parametrize("n", [2, 4, 6])
@pytest.mark.parametrize("q", [1.1, 1.3, 2.0])
def test_pg1_exactly_at_rcheck(n, q):
    rc = qi(n + 2, q) / qi(n, q)
    assert check_pg1(n, q, rc)
    assert not check_pg1(n, q, rc * (1 + 1e-3))
    assert not check_pg1(n, q, rc * (1 - 1e-3))
    assert not check_pg2(n, q, rc)


def test_fork_path_is_eigenvector_inside():
    g, w, _ = fork_segment(4, 1.3, 2.0)
    d = 1.3 + 1 / 1.3
    for j in range(1, 3):
        assert abs(local_eigen_residual(g, w, d, f"v{j}")) < 1e-12
    with pytest.raises(ValueError):
        fork_segment(4, 1.3, 2.0, "g")


def test_partition_dims_examples():
    assert [partition_dims(n, n) for n in (3, 4, 5)] == [5, 15, 52]
    for k in range(1, 6):
        for n in range(6):
            assert partition_dims(k, n) == partition_dims_bruteforce(k, n)
    for n in range(8):
        assert partition_dims(n + 2, n) == bell(n)
    assert stirling2(5, 2) == 15


def test_leading_multiplicity():
    lm = leading_multiplicity([1, 1, 2, 5, 15, 52])
    assert (lm.supertransitivity, lm.excess, lm.next_term) == (3, 1, 0)
    assert leading_multiplicity([1, 1, 2, 5, 14, 42]).supertransitivity is None
    assert leading_multiplicity([1, 1, 2, 5, 15, 53]).next_term == 1
    with pytest.raises(ValueError):
        leading_multiplicity([1, 1, 1])


@pytest.mark.parametrize("d2", [5, 6, Fraction(73, 10)])
def test_partition_level4(d2):
    d2 = Fraction(d2)
    a, b = partition_level4_traces(d2, "+")
    assert (a, b) == ((d2 * d2 - 3 * d2) / 2, (d2 * d2 - 3 * d2 + 2) / 2)
    a2, b2 = partition_level4_traces(d2, "-")
    assert (a2, b2) == (d2 - 2, d2 * d2 - 4 * d2 + 3)
    assert a + b == a2 + b2 == d2 * d2 - 3 * d2 + 1
    q = (math.sqrt(float(d2)) + math.sqrt(float(d2) - 4)) / 2
    assert float(b2 / a2) == pytest.approx(qi(6, q) / qi(4, q), rel=1e-12)
    with pytest.raises(ValueError):
        partition_level4_traces(4, "+")
    with pytest.raises(ValueError):
        partition_level4_traces(5, "0")
