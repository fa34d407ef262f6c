"""Core graph and pattern types.

Graphs are stored as bit-adjacency: ``adj[v]`` is an int whose bit ``u``
is set iff there is an edge (arc) from ``v`` to ``u``. This makes
neighborhood intersection, subset tests and induced-subgraph extraction
single integer operations, which the counting and search code leans on
heavily.

Patterns are small undirected graphs on an ordered vertex set
``w_0 .. w_{k-1}`` with k between 1 and 8. A pattern's identity up to
isomorphism is captured by :class:`UnlabeledPatternKey`: the
lexicographically smallest adjacency bit-string over all k! orderings.
Two patterns have equal keys iff they are isomorphic, so the key doubles
as a dict key for tables indexed by unlabeled patterns.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

MAX_PATTERN_NODES = 8

# Pair order used when packing the upper triangle of a k-vertex adjacency
# matrix into a bit-string: (0,1) is the most significant bit, then (0,2),
# ..., (k-2,k-1) least significant. Keeping the (0,i) pairs most significant
# means the lexicographic minimum agrees with comparing rows of the
# adjacency matrix in order.
_PAIR_CACHE: dict[int, list[tuple[int, int]]] = {}
# Per-k gather tables for canonicalization: _PERM_CACHE[k] is a pair
# (perm_count, gather) where gather has shape (k!, C(k,2)) and gather[p][j]
# is the index (into the identity ordering's pair list) of the pair that
# lands in slot j after applying permutation p.
_PERM_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def pair_list(k: int) -> list[tuple[int, int]]:
    """Ordered list of vertex pairs (i, j), i < j, for a k-vertex pattern."""
    pairs = _PAIR_CACHE.get(k)
    if pairs is None:
        pairs = [(i, j) for i in range(k) for j in range(i + 1, k)]
        _PAIR_CACHE[k] = pairs
    return pairs


def _perm_tables(k: int) -> tuple[np.ndarray, np.ndarray]:
    cached = _PERM_CACHE.get(k)
    if cached is not None:
        return cached
    pairs = pair_list(k)
    pair_index = {p: i for i, p in enumerate(pairs)}
    perms = list(itertools.permutations(range(k)))
    gather = np.empty((len(perms), len(pairs)), dtype=np.int16)
    for pi, perm in enumerate(perms):
        for j, (a, b) in enumerate(pairs):
            u, v = perm[a], perm[b]
            if u > v:
                u, v = v, u
            gather[pi, j] = pair_index[(u, v)]
    perm_array = np.array(perms, dtype=np.int8)
    _PERM_CACHE[k] = (perm_array, gather)
    return perm_array, gather


@dataclass(frozen=True, slots=True)
class Graph:
    """A graph on vertices 0..n-1 with bit-set adjacency rows.

    ``directed`` chooses arc vs edge semantics; undirected graphs keep
    ``adj`` symmetric. Self-loops are rejected on construction.
    """

    node_count: int
    directed: bool
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.node_count < 0:
            raise ValueError("node_count must be non-negative")
        if len(self.adj) != self.node_count:
            raise ValueError("adjacency rows must match node_count")
        mask = (1 << self.node_count) - 1
        for v, row in enumerate(self.adj):
            if row & ~mask:
                raise ValueError(f"adjacency row {v} references missing vertices")
            if row >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
        if not self.directed:
            for v, row in enumerate(self.adj):
                rest = row
                while rest:
                    u = (rest & -rest).bit_length() - 1
                    rest &= rest - 1
                    if not (self.adj[u] >> v) & 1:
                        raise ValueError("undirected graph with asymmetric adjacency")

    @staticmethod
    def from_edges(n: int, edges: Iterable[tuple[int, int]], directed: bool = False) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for {n} vertices")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            rows[u] |= 1 << v
            if not directed:
                rows[v] |= 1 << u
        return Graph(n, directed, tuple(rows))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        """All edges (u < v) for undirected graphs, all arcs for directed."""
        out = []
        for u, row in enumerate(self.adj):
            rest = row
            while rest:
                v = (rest & -rest).bit_length() - 1
                rest &= rest - 1
                if self.directed or u < v:
                    out.append((u, v))
        return out

    def edge_count(self) -> int:
        total = sum(row.bit_count() for row in self.adj)
        return total if self.directed else total // 2

    def degree(self, v: int) -> int:
        """Out-degree for directed graphs, plain degree otherwise."""
        return self.adj[v].bit_count()

    def complement(self) -> "Graph":
        mask = (1 << self.node_count) - 1
        rows = tuple((~row & mask) & ~(1 << v) for v, row in enumerate(self.adj))
        return Graph(self.node_count, self.directed, rows)

    def induced(self, vertices: Sequence[int]) -> "Graph":
        """Induced subgraph on `vertices`, relabeled 0..len-1 in given order."""
        idx = {v: i for i, v in enumerate(vertices)}
        if len(idx) != len(vertices):
            raise ValueError("duplicate vertices")
        rows = [0] * len(vertices)
        for v, i in idx.items():
            row = self.adj[v]
            for u, j in idx.items():
                if row >> u & 1:
                    rows[i] |= 1 << j
        return Graph(len(vertices), self.directed, tuple(rows))

    def add_edge(self, u: int, v: int) -> "Graph":
        if u == v:
            raise ValueError("self-loop")
        rows = list(self.adj)
        rows[u] |= 1 << v
        if not self.directed:
            rows[v] |= 1 << u
        return Graph(self.node_count, self.directed, tuple(rows))


@dataclass(frozen=True, slots=True)
class OrderedPattern:
    """A small undirected pattern on ordered vertices w_0..w_{k-1}.

    The order matters: several operations treat w_0 as a pivot and the
    pairs (w_0,w_1)..(w_0,w_k') as the "free" slots of a pattern class.
    """

    node_count: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 1 <= self.node_count <= MAX_PATTERN_NODES:
            raise ValueError(
                f"pattern must have 1..{MAX_PATTERN_NODES} vertices, got {self.node_count}"
            )
        if len(self.adj) != self.node_count:
            raise ValueError("adjacency rows must match node_count")
        mask = (1 << self.node_count) - 1
        for v, row in enumerate(self.adj):
            if row & ~mask:
                raise ValueError(f"adjacency row {v} references missing vertices")
            if row >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
        for v, row in enumerate(self.adj):
            rest = row
            while rest:
                u = (rest & -rest).bit_length() - 1
                rest &= rest - 1
                if not (self.adj[u] >> v) & 1:
                    raise ValueError("pattern adjacency must be symmetric")

    @staticmethod
    def from_edges(k: int, edges: Iterable[tuple[int, int]]) -> "OrderedPattern":
        rows = [0] * k
        for u, v in edges:
            if not (0 <= u < k and 0 <= v < k):
                raise ValueError(f"edge ({u}, {v}) out of range")
            if u == v:
                raise ValueError("self-loop")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return OrderedPattern(k, tuple(rows))

    @staticmethod
    def from_graph(g: Graph) -> "OrderedPattern":
        if g.directed:
            raise ValueError("patterns are undirected")
        return OrderedPattern(g.node_count, g.adj)

    def to_graph(self) -> Graph:
        return Graph(self.node_count, False, self.adj)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        return self.to_graph().edges()

    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def complement(self) -> "OrderedPattern":
        return OrderedPattern.from_graph(self.to_graph().complement())

    def with_edge(self, u: int, v: int, present: bool) -> "OrderedPattern":
        rows = list(self.adj)
        if present:
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        else:
            rows[u] &= ~(1 << v)
            rows[v] &= ~(1 << u)
        return OrderedPattern(self.node_count, tuple(rows))

    def reordered(self, order: Sequence[int]) -> "OrderedPattern":
        """Pattern with vertex `order[i]` renamed to i."""
        if sorted(order) != list(range(self.node_count)):
            raise ValueError("order must be a permutation of the vertices")
        return OrderedPattern.from_graph(self.to_graph().induced(order))

    def pair_bits(self) -> np.ndarray:
        """Upper-triangle adjacency as a 0/1 vector in pair_list order."""
        k = self.node_count
        bits = np.empty(k * (k - 1) // 2, dtype=np.uint8)
        for j, (a, b) in enumerate(pair_list(k)):
            bits[j] = (self.adj[a] >> b) & 1
        return bits

    def key(self) -> "UnlabeledPatternKey":
        return UnlabeledPatternKey.of(self)


def _bits_to_int(bits: np.ndarray) -> int:
    value = 0
    for b in bits:
        value = (value << 1) | int(b)
    return value


@dataclass(frozen=True, slots=True)
class UnlabeledPatternKey:
    """Canonical form of a pattern: the lexicographically smallest
    adjacency bit-string over all orderings of its vertices.

    Keys compare equal exactly for isomorphic patterns, and order
    lexicographically by the canonical bit-string (ties by node count
    never arise between equal-size patterns).
    """

    node_count: int
    bits: int

    @staticmethod
    def of(pattern: OrderedPattern) -> "UnlabeledPatternKey":
        k = pattern.node_count
        if k == 1:
            return UnlabeledPatternKey(1, 0)
        _, gather = _perm_tables(k)
        images = pattern.pair_bits()[gather]  # (k!, C(k,2)) of 0/1
        # Lexicographic minimum over rows == minimum of packed integers.
        best = min(_bits_to_int(row) for row in _unique_rows(images))
        return UnlabeledPatternKey(k, best)

    def canonical_pattern(self) -> OrderedPattern:
        """The pattern whose ordering realizes the canonical bit-string."""
        k = self.node_count
        pairs = pair_list(k)
        nbits = len(pairs)
        edges = [
            pairs[j]
            for j in range(nbits)
            if (self.bits >> (nbits - 1 - j)) & 1
        ]
        return OrderedPattern.from_edges(k, edges)

    def __lt__(self, other: "UnlabeledPatternKey") -> bool:
        return (self.node_count, self.bits) < (other.node_count, other.bits)


def _unique_rows(rows: np.ndarray) -> np.ndarray:
    # Deduplicating before packing saves most of the int conversions.
    return np.unique(rows, axis=0)


def automorphism_count(pattern: OrderedPattern) -> int:
    """Number of adjacency-preserving permutations of the pattern."""
    k = pattern.node_count
    if k == 1:
        return 1
    _, gather = _perm_tables(k)
    bits = pattern.pair_bits()
    images = bits[gather]
    return int(np.count_nonzero((images == bits).all(axis=1)))


def isomorphic(a: OrderedPattern, b: OrderedPattern) -> bool:
    return a.node_count == b.node_count and a.key() == b.key()


# --- named small patterns used throughout the tests and CLI -----------------

def clique(k: int) -> OrderedPattern:
    return OrderedPattern.from_edges(k, [(i, j) for i in range(k) for j in range(i + 1, k)])


def independent(k: int) -> OrderedPattern:
    return OrderedPattern.from_edges(k, [])


def path(k: int) -> OrderedPattern:
    return OrderedPattern.from_edges(k, [(i, i + 1) for i in range(k - 1)])


def cycle(k: int) -> OrderedPattern:
    if k < 3:
        raise ValueError("cycles need at least 3 vertices")
    return OrderedPattern.from_edges(k, [(i, (i + 1) % k) for i in range(k)])


def triangle() -> OrderedPattern:
    return clique(3)


def diamond() -> OrderedPattern:
    """K_4 minus one edge."""
    return OrderedPattern.from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])


def paw() -> OrderedPattern:
    """Triangle with a pendant vertex."""
    return OrderedPattern.from_edges(4, [(0, 1), (0, 2), (1, 2), (2, 3)])


def augmented_clique(s: int, k: int) -> OrderedPattern:
    """A (k-1)-clique plus one extra vertex adjacent to s of its vertices.

    Vertices 0..k-2 form the clique; vertex k-1 is the extra vertex,
    adjacent to vertices 0..s-1. Requires 1 <= s <= k-1 (s = k-1 gives
    the complete graph K_k).
    """

    if not 1 <= s <= k - 1:
        raise ValueError("need 1 <= s <= k-1")
    edges = [(i, j) for i in range(k - 1) for j in range(i + 1, k - 1)]
    edges += [(i, k - 1) for i in range(s)]
    return OrderedPattern.from_edges(k, edges)


def augmented_clique_automorphism_count(s: int, k: int) -> int:
    """|Aut| of :func:`augmented_clique`, by formula (valid for any k).

    Generically the s clique vertices seen by the extra vertex permute
    among themselves and the k-1-s unseen ones likewise: s!(k-s-1)!.
    Two degenerate cases: s = k-1 collapses to K_k (k! automorphisms),
    and at s = k-2 the extra vertex and the single unseen clique vertex
    have identical neighborhoods and may swap: (k-2)!·2.
    """

    import math

    if s == k - 1:
        return math.factorial(k)
    if s == k - 2:
        return math.factorial(k - 2) * 2
    return math.factorial(s) * math.factorial(k - s - 1)


# --- host-graph text format --------------------------------------------------

def parse_graph(text: str) -> Graph:
    """Parse the line-oriented graph format.

    First significant line: ``n m D`` or ``n m U``; then m lines ``u v``
    with 0-based endpoints. ``#`` comments and blank lines are ignored.
    Raises ValueError mentioning the 1-based line number on bad input.
    """

    lines = text.splitlines()
    header: tuple[int, int, bool] | None = None
    edges: list[tuple[int, int]] = []
    seen = 0
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 3 or parts[2] not in ("D", "U"):
                raise ValueError(f"line {lineno}: expected header 'n m D|U'")
            try:
                n, m = int(parts[0]), int(parts[1])
            except ValueError:
                raise ValueError(f"line {lineno}: non-integer header field") from None
            if n < 0 or m < 0:
                raise ValueError(f"line {lineno}: negative header field")
            header = (n, m, parts[2] == "D")
            continue
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected edge 'u v'")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ValueError(f"line {lineno}: non-integer endpoint") from None
        n = header[0]
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"line {lineno}: endpoint out of range 0..{n-1}")
        if u == v:
            raise ValueError(f"line {lineno}: self-loop")
        edges.append((u, v))
        seen += 1
    if header is None:
        raise ValueError("line 1: empty graph file")
    n, m, directed = header
    if seen != m:
        raise ValueError(f"line {len(lines)}: header promises {m} edges, found {seen}")
    return Graph.from_edges(n, edges, directed=directed)


def emit_graph(g: Graph) -> str:
    flag = "D" if g.directed else "U"
    lines = [f"{g.node_count} {g.edge_count()} {flag}"]
    lines += [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def parse_pattern(text: str) -> OrderedPattern:
    g = parse_graph(text)
    if g.directed:
        raise ValueError("line 1: patterns must be undirected (U)")
    return OrderedPattern.from_graph(g)
