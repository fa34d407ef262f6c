"""Seeded randomness and graph generators.

Every randomized operation in this package draws from Python's Mersenne
Twister (`random.Random`) seeded explicitly, so results are reproducible
bit-for-bit given the same seed. Independent streams are derived with
:func:`split_seed`, a SplitMix64-style mixer over the parent seed and a
list of labels, which keeps the per-trial / per-repetition streams
decorrelated without any shared state.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .graphs import Graph, OrderedPattern

_MASK64 = (1 << 64) - 1


def _mix64(x: int) -> int:
    # SplitMix64 finalizer.
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def split_seed(seed: int, *labels: int | str) -> int:
    """Derive an independent child seed from `seed` and the labels."""

    acc = _mix64(seed & _MASK64)
    for label in labels:
        if isinstance(label, str):
            for byte in label.encode():
                acc = _mix64(acc ^ byte)
        else:
            acc = _mix64(acc ^ (label & _MASK64))
    return acc


def rng(seed: int) -> random.Random:
    return random.Random(seed)


@dataclass(frozen=True, slots=True)
class SampledSubgraph:
    """An induced subgraph together with its vertex remap record:
    ``kept[i]`` is the original id of the sample's vertex i."""

    graph: Graph
    kept: tuple[int, ...]

    def lift(self, vertices: tuple[int, ...]) -> tuple[int, ...]:
        """Map sample-local vertex ids back to original ids."""
        return tuple(self.kept[v] for v in vertices)


def random_induced_subgraph(g: Graph, seed: int) -> SampledSubgraph:
    """Keep each vertex independently with probability 1/2.

    The coin flips come from ``random.Random(seed)`` (one getrandbits(1)
    per vertex, in vertex order), so the same seed always yields the
    same sample.
    """

    r = rng(seed)
    kept = tuple(v for v in range(g.node_count) if r.getrandbits(1))
    return SampledSubgraph(g.induced(kept), kept)


# --- generators --------------------------------------------------------------

def gnp(n: int, p: float, seed: int, directed: bool = False) -> Graph:
    """Erdős–Rényi G(n, p); for directed graphs each ordered pair is an
    independent coin."""

    r = rng(seed)
    edges = []
    if directed:
        for u in range(n):
            for v in range(n):
                if u != v and r.random() < p:
                    edges.append((u, v))
    else:
        for u in range(n):
            for v in range(u + 1, n):
                if r.random() < p:
                    edges.append((u, v))
    return Graph.from_edges(n, edges, directed=directed)


def gnm_directed(n: int, m: int, seed: int) -> Graph:
    """Random directed graph with exactly m distinct arcs (no loops)."""

    if m > n * (n - 1):
        raise ValueError("too many arcs requested")
    r = rng(seed)
    arcs: set[tuple[int, int]] = set()
    while len(arcs) < m:
        u = r.randrange(n)
        v = r.randrange(n)
        if u != v:
            arcs.add((u, v))
    return Graph.from_edges(n, sorted(arcs), directed=True)


def random_dag(n: int, m: int, seed: int) -> Graph:
    """Random DAG: m arcs, each from a lower to a higher vertex index."""

    if m > n * (n - 1) // 2:
        raise ValueError("too many arcs requested")
    r = rng(seed)
    arcs: set[tuple[int, int]] = set()
    while len(arcs) < m:
        u = r.randrange(n)
        v = r.randrange(n)
        if u != v:
            arcs.add((min(u, v), max(u, v)))
    return Graph.from_edges(n, sorted(arcs), directed=True)


def random_pattern(k: int, p: float, seed: int) -> OrderedPattern:
    r = rng(seed)
    edges = [(u, v) for u in range(k) for v in range(u + 1, k) if r.random() < p]
    return OrderedPattern.from_edges(k, edges)


def plant_pattern(g: Graph, h: OrderedPattern, seed: int) -> tuple[Graph, tuple[int, ...]]:
    """Overwrite the induced subgraph on a random k-subset of g with h.

    Guarantees at least one induced copy of h; returns the new graph and
    the vertex subset used.
    """

    if g.directed:
        raise ValueError("host must be undirected")
    k = h.node_count
    if k > g.node_count:
        raise ValueError("pattern larger than host")
    r = rng(seed)
    spot = tuple(sorted(r.sample(range(g.node_count), k)))
    rows = list(g.adj)
    for i, u in enumerate(spot):
        for j, v in enumerate(spot):
            if i == j:
                continue
            if h.has_edge(i, j):
                rows[u] |= 1 << v
            else:
                rows[u] &= ~(1 << v)
    return Graph(g.node_count, False, tuple(rows)), spot


def plant_directed_cycle(g: Graph, k: int, seed: int) -> tuple[Graph, tuple[int, ...]]:
    """Add the arcs of a directed k-cycle over a random vertex subset."""

    if not g.directed:
        raise ValueError("host must be directed")
    r = rng(seed)
    order = r.sample(range(g.node_count), k)
    rows = list(g.adj)
    for i in range(k):
        u, v = order[i], order[(i + 1) % k]
        rows[u] |= 1 << v
    return Graph(g.node_count, True, tuple(rows)), tuple(order)


def random_bipartite(n: int, p: float, seed: int) -> Graph:
    """Random bipartite graph on ⌊n/2⌋ + ⌈n/2⌉ vertices — triangle-free."""

    r = rng(seed)
    half = n // 2
    edges = [
        (u, v)
        for u in range(half)
        for v in range(half, n)
        if r.random() < p
    ]
    return Graph.from_edges(n, edges)
