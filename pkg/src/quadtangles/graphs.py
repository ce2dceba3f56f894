"""Principal-graph utilities and partition planar algebra bookkeeping."""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .tl import catalan


class GraphError(ValueError):
    pass


@dataclass
class PointedBipartiteGraph:
    """Vertices carry a class bit; edges join opposite classes with a multiplicity."""

    vertices: list[str]
    classes: dict[str, int]
    star: str
    edges: dict[tuple[str, str], int] = field(default_factory=dict)

    def __post_init__(self):
        if self.star not in self.classes:
            raise GraphError(f"star vertex {self.star!r} is not a vertex")
        for (u, v), mult in self.edges.items():
            if u not in self.classes or v not in self.classes:
                raise GraphError(f"edge ({u}, {v}) uses an unknown vertex")
            if self.classes[u] == self.classes[v]:
                raise GraphError(f"edge ({u}, {v}) joins vertices of the same class")
            if mult < 1:
                raise GraphError("edge multiplicities must be positive")
        dist = self.distances()
        if len(dist) != len(self.vertices):
            raise GraphError("graph is not connected")

    @classmethod
    def from_json(cls, obj: dict) -> "PointedBipartiteGraph":
        verts = [str(v["id"]) for v in obj["vertices"]]
        classes = {str(v["id"]): int(v["class"]) for v in obj["vertices"]}
        stars = [str(v["id"]) for v in obj["vertices"] if v.get("star")]
        if len(stars) != 1:
            raise GraphError("exactly one vertex must be marked as star")
        edges: dict[tuple[str, str], int] = {}
        for u, v, *rest in obj["edges"]:
            key = (str(u), str(v))
            edges[key] = edges.get(key, 0) + (int(rest[0]) if rest else 1)
        return cls(verts, classes, stars[0], edges)

    def to_json(self) -> dict:
        return {
            "vertices": [{"id": v, "class": self.classes[v], "star": v == self.star} for v in self.vertices],
            "edges": [[u, v, m] for (u, v), m in sorted(self.edges.items())],
        }

    @classmethod
    def path(cls, m: int) -> "PointedBipartiteGraph":
        """A_m with the star at one end."""
        verts = [f"v{i}" for i in range(m)]
        return cls(verts, {v: i % 2 for i, v in enumerate(verts)}, "v0",
                   {(verts[i], verts[i + 1]): 1 for i in range(m - 1)})

    def neighbours(self, v: str) -> list[tuple[str, int]]:
        out = []
        for (a, b), mult in self.edges.items():
            if a == v:
                out.append((b, mult))
            elif b == v:
                out.append((a, mult))
        return out

    def distances(self) -> dict[str, int]:
        dist = {self.star: 0}
        todo = deque([self.star])
        while todo:
            v = todo.popleft()
            for u, _ in self.neighbours(v):
                if u not in dist:
                    dist[u] = dist[v] + 1
                    todo.append(u)
        return dist

    def adjacency(self) -> np.ndarray:
        idx = {v: i for i, v in enumerate(self.vertices)}
        adj = np.zeros((len(self.vertices), len(self.vertices)))
        for (u, v), mult in self.edges.items():
            adj[idx[u], idx[v]] += mult
            adj[idx[v], idx[u]] += mult
        return adj


def pf_weights(g: PointedBipartiteGraph, tol: float = 1e-14, max_iter: int = 1_000_000) -> tuple[dict[str, float], float]:
    """Perron-Frobenius weights normalised to 1 at the star, and the norm delta.

    Power iteration runs on Lambda^T Lambda (the far-class block); the near
    class is recovered as Lambda v / delta.
    """
    near = [v for v in g.vertices if g.classes[v] == g.classes[g.star]]
    far = [v for v in g.vertices if g.classes[v] != g.classes[g.star]]
    if not far:
        return {g.star: 1.0}, 0.0
    adj = g.adjacency()
    idx = {v: i for i, v in enumerate(g.vertices)}
    lam = adj[np.ix_([idx[v] for v in near], [idx[v] for v in far])]
    gram = lam.T @ lam
    vec = np.ones(len(far)) / np.sqrt(len(far))
    eig = 0.0
    for _ in range(max_iter):
        nxt = gram @ vec
        eig = float(vec @ nxt)
        # stop on the eigen-residual, not the step size: slow ratios make small steps misleading
        if np.linalg.norm(nxt - eig * vec) <= tol * eig:
            break
        vec = nxt / np.linalg.norm(nxt)
    delta = float(np.sqrt(eig))
    near_vals = lam @ vec / delta
    weights = dict(zip(far, vec.tolist())) | dict(zip(near, near_vals.tolist()))
    scale = weights[g.star]
    return {v: weights[v] / scale for v in g.vertices}, delta


def local_eigen_residual(g: PointedBipartiteGraph, weights: dict, delta, v: str):
    """delta w(v) - sum over neighbours u of mult * w(u)."""
    return delta * weights[v] - sum(mult * weights[u] for u, mult in g.neighbours(v))


def _qint(r: int, q: float) -> float:
    return (q ** r - q ** -r) / (q - 1 / q)


def fork_segment(n: int, q: float, rcheck: float, univalent: str = "e") -> tuple[PointedBipartiteGraph, dict, str]:
    """The path to distance n-1 with weights [j+1], then the fork carrying Tr(e), Tr(f).

    ``univalent`` names the fork vertex that ends there: "e" (smaller trace) is
    the first graph's shape, "f" the second's.  Returns the graph, its weights
    and the univalent vertex.
    """
    if univalent not in ("e", "f"):
        raise ValueError("univalent must be 'e' or 'f'")
    path = [f"v{j}" for j in range(n)]
    verts = path + ["e", "f", "x"]
    classes = {v: j % 2 for j, v in enumerate(path)}
    classes.update(e=n % 2, f=n % 2, x=(n + 1) % 2)
    edges = {(path[j], path[j + 1]): 1 for j in range(n - 1)}
    edges[(path[-1], "e")] = 1
    edges[(path[-1], "f")] = 1
    other = "f" if univalent == "e" else "e"
    edges[(other, "x")] = 1
    g = PointedBipartiteGraph(verts, classes, "v0", edges)
    weight = _qint(n + 1, q)
    weights = {v: _qint(j + 1, q) for j, v in enumerate(path)}
    weights["e"] = weight / (1 + rcheck)
    weights["f"] = rcheck * weight / (1 + rcheck)
    return g, weights, univalent


def _fork_check(n: int, q: float, rcheck: float, univalent: str, tol: float) -> tuple[bool, float]:
    g, weights, v = fork_segment(n, q, rcheck, univalent)
    # the weight beyond the fork is unknown, but the univalent vertex only sees v_{n-1}
    weights["x"] = 0.0
    res = local_eigen_residual(g, weights, q + 1 / q, v)
    return abs(res) <= tol * _qint(n, q), res


def check_pg1(n: int, q: float, rcheck: float, tol: float = 1e-8) -> bool:
    """Eigenvector equation at the univalent smaller-trace vertex; true iff r-check = [n+2]/[n]."""
    return _fork_check(n, q, rcheck, "e", tol)[0]


def check_pg2(n: int, q: float, rcheck: float, tol: float = 1e-8) -> bool:
    """Same equation with the larger-trace vertex univalent (the other graph's shape)."""
    return _fork_check(n, q, rcheck, "f", tol)[0]


# ---------------------------------------------------------------------------
# Partition planar algebra
# ---------------------------------------------------------------------------

def stirling2(n: int, k: int) -> int:
    row = [1] + [0] * k
    for m in range(1, n + 1):
        for j in range(min(m, k), 0, -1):
            row[j] = j * row[j] + row[j - 1]
        row[0] = 0
    return row[k]


def bell(n: int) -> int:
    return sum(stirling2(n, j) for j in range(n + 1))


def partition_dims(k: int, n: int) -> int:
    """Number of S_k orbits on {1..k}^n: set partitions of n points into at most k blocks."""
    if k < 1 or n < 0:
        raise ValueError("need k >= 1 and n >= 0")
    if n == 0:
        return 1
    return sum(stirling2(n, j) for j in range(1, min(k, n) + 1))


def partition_dims_bruteforce(k: int, n: int) -> int:
    """Orbit count by canonical relabelling of every word in {0..k-1}^n."""
    seen = set()
    for word in itertools.product(range(k), repeat=n):
        relabel: dict[int, int] = {}
        seen.add(tuple(relabel.setdefault(c, len(relabel)) for c in word))
    return len(seen)


@dataclass(frozen=True)
class LeadingMultiplicity:
    supertransitivity: int | None
    excess: int
    next_term: int | None


def leading_multiplicity(dims: list[int]) -> LeadingMultiplicity:
    """First level where dims exceed Catalan, its excess e, and the annular remainder after it."""
    if not dims or dims[0] != 1:
        raise ValueError("dims[0] must be 1")
    for m, d in enumerate(dims):
        c = catalan(m)
        if d < c:
            raise ValueError(f"dims[{m}] = {d} is below the Catalan number {c}")
        if d > c:
            e = d - c
            nxt = None
            if m + 1 < len(dims):
                nxt = dims[m + 1] - catalan(m + 1) - (2 * m + 2) * e
            return LeadingMultiplicity(m - 1, e, nxt)
    return LeadingMultiplicity(None, 0, None)


def partition_level4_traces(delta2, side: str):
    """Traces (alpha, beta) of the two new central projections at level 4.

    Side "+" solves alpha + beta = d^2 - 3d + 1 and alpha - beta + 2 + (d - 1) = d
    (d = delta^2); side "-" replaces the second equation by 2 + alpha = d.
    """
    d = Fraction(delta2) if isinstance(delta2, (int, Fraction)) else delta2
    if d <= 4:
        raise ValueError("need delta^2 > 4")
    total = d * d - 3 * d + 1
    if side == "+":
        diff = d - 2 - (d - 1)
        return (total + diff) / 2, (total - diff) / 2
    if side == "-":
        alpha = d - 2
        return alpha, total - alpha
    raise ValueError("side must be '+' or '-'")
