"""Brute-force oracles.

Everything here is exhaustive and slow on purpose: these functions are
the ground truth that the clever counting and detection code is tested
against. They only make sense for desk-scale inputs (patterns up to 8
vertices, hosts up to a few dozen).
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable

from .graphs import Graph, OrderedPattern, UnlabeledPatternKey


def _as_bitgraph(g: Graph | OrderedPattern) -> tuple[int, tuple[int, ...]]:
    return g.node_count, g.adj


def induced_census(g: Graph, k: int) -> dict[UnlabeledPatternKey, int]:
    """Count induced subgraphs of every isomorphism type on k vertices.

    Enumerates all C(n, k) vertex subsets once and buckets them by
    canonical key; one pass serves every pattern of that size.
    """

    if g.directed:
        raise ValueError("host must be undirected")
    counts: dict[UnlabeledPatternKey, int] = {}
    if k < 0 or k > g.node_count:
        return counts
    for subset in combinations(range(g.node_count), k):
        key = OrderedPattern.from_graph(g.induced(subset)).key()
        counts[key] = counts.get(key, 0) + 1
    return counts


def count_induced_bruteforce(g: Graph, h: OrderedPattern) -> int:
    """Number of vertex subsets of g inducing a copy of h.

    Returns 0 when h has more vertices than g.
    """

    if g.directed:
        raise ValueError("host must be undirected")
    if h.node_count > g.node_count:
        return 0
    target = h.key()
    count = 0
    for subset in combinations(range(g.node_count), h.node_count):
        if OrderedPattern.from_graph(g.induced(subset)).key() == target:
            count += 1
    return count


def _search_order(h: OrderedPattern) -> list[int]:
    """Pattern vertices ordered so each new vertex touches the already
    placed ones where possible, highest degree first (most-constrained
    first keeps the backtracking shallow)."""

    k = h.node_count
    placed: list[int] = []
    remaining = set(range(k))
    while remaining:
        best = None
        best_rank = (-1, -1)
        for v in remaining:
            anchored = sum(1 for u in placed if h.has_edge(u, v))
            rank = (anchored, h.degree(v))
            if rank > best_rank:
                best_rank = rank
                best = v
        placed.append(best)  # type: ignore[arg-type]
        remaining.remove(best)  # type: ignore[arg-type]
    return placed


def find_noninduced_copy(g: Graph | OrderedPattern, h: OrderedPattern) -> tuple[int, ...] | None:
    """An injective map preserving the edges of h (non-edges free), or None.

    Returns the image tuple indexed by pattern vertex: result[i] is the
    host vertex playing pattern vertex i.
    """

    return _find_copy(g, h, induced=False)


def find_induced_copy(g: Graph | OrderedPattern, h: OrderedPattern) -> tuple[int, ...] | None:
    """An injective map preserving edges AND non-edges of h, or None."""

    return _find_copy(g, h, induced=True)


def _find_copy(g: Graph | OrderedPattern, h: OrderedPattern, induced: bool) -> tuple[int, ...] | None:
    n, adj = _as_bitgraph(g)
    if isinstance(g, Graph) and g.directed:
        raise ValueError("host must be undirected")
    k = h.node_count
    if k > n:
        return None
    full = (1 << n) - 1
    order = _search_order(h)
    image = [-1] * k
    mask_nonadj = tuple(~row & full for row in adj)

    def extend(pos: int, used: int) -> bool:
        if pos == k:
            return True
        w = order[pos]
        cand = full & ~used
        for prev in order[:pos]:
            if h.has_edge(prev, w):
                cand &= adj[image[prev]]
            elif induced:
                cand &= mask_nonadj[image[prev]]
        while cand:
            v = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            image[w] = v
            if extend(pos + 1, used | (1 << v)):
                return True
        image[w] = -1
        return False

    if extend(0, 0):
        return tuple(image)
    return None


def exists_noninduced_bruteforce(g: Graph | OrderedPattern, h: OrderedPattern) -> bool:
    """True iff some injective mapping sends every edge of h to an edge of g."""

    return find_noninduced_copy(g, h) is not None


def chromatic_number(g: Graph | OrderedPattern) -> int:
    """Smallest number of colors in a proper coloring (exhaustive with
    branch-and-bound; 0 for the empty graph)."""

    n, adj = _as_bitgraph(g)
    if n == 0:
        return 0
    if all(row == 0 for row in adj):
        return 1
    lower = max_clique_size(g)
    order = sorted(range(n), key=lambda v: -adj[v].bit_count())
    for t in range(lower, n + 1):
        if _colorable(order, adj, t):
            return t
    return n


def is_colorable(g: Graph | OrderedPattern, t: int) -> bool:
    """True iff g has a proper coloring with at most t colors."""

    n, adj = _as_bitgraph(g)
    if n == 0:
        return True
    if t <= 0:
        return False
    order = sorted(range(n), key=lambda v: -adj[v].bit_count())
    return _colorable(order, adj, t)


def _colorable(order: list[int], adj: tuple[int, ...], t: int) -> bool:
    colors = {}

    def assign(pos: int, used: int) -> bool:
        if pos == len(order):
            return True
        v = order[pos]
        taken = set()
        for u, c in colors.items():
            if adj[v] >> u & 1:
                taken.add(c)
        # Trying only one brand-new color prunes color-permutation twins.
        limit = min(used + 1, t)
        for c in range(limit):
            if c in taken:
                continue
            colors[v] = c
            if assign(pos + 1, max(used, c + 1)):
                return True
            del colors[v]
        return False

    return assign(0, 0)


def max_clique_size(g: Graph | OrderedPattern) -> int:
    """Size of the largest clique (1 for a nonempty edgeless graph),
    by branch and bound over candidate bitsets."""

    n, adj = _as_bitgraph(g)
    if n == 0:
        return 0
    best = 1

    def expand(cand: int, size: int) -> None:
        nonlocal best
        if size + cand.bit_count() <= best:
            return
        if cand == 0:
            best = max(best, size)
            return
        while cand:
            if size + cand.bit_count() <= best:
                return
            v = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            expand(cand & adj[v], size + 1)

    expand((1 << n) - 1, 0)
    return best


def count_directed_k_cycles(g: Graph, k: int) -> int:
    """Exhaustive count of directed k-cycles (as vertex sets with a cyclic
    arc orientation; each cycle counted once)."""

    if not g.directed:
        raise ValueError("host must be directed")
    total = 0
    for cyc in iter_directed_k_cycles(g, k):
        total += 1
        del cyc
    return total


def iter_directed_k_cycles(g: Graph, k: int) -> Iterable[tuple[int, ...]]:
    """Yield each directed k-cycle exactly once, anchored at its smallest
    vertex."""

    n = g.node_count
    adj = g.adj
    path = [0] * k

    def extend(pos: int, used: int, start: int):
        v = path[pos - 1]
        rest = adj[v] & ~used
        # Never dip below the anchor; that cycle is someone else's.
        rest &= ~((1 << (start + 1)) - 1) | (1 << start)
        while rest:
            u = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            if pos == k - 1:
                if (adj[u] >> start) & 1 and u != start:
                    path[pos] = u
                    yield tuple(path)
            elif u != start:
                path[pos] = u
                yield from extend(pos + 1, used | (1 << u), start)

    for s in range(n):
        path[0] = s
        yield from extend(1, 1 << s, s)


def has_directed_k_cycle(g: Graph, k: int) -> bool:
    for _ in iter_directed_k_cycles(g, k):
        return True
    return False
