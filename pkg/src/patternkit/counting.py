"""Counting class members in a host graph via matrix products.

The count of labeled subgraphs of G landing in a class c factors through
three small matrix products. Write the ordered slots of a k-pattern as

    hub (slot 0) | middle (slots 1..k') | tail (k1 + k2 slots)

where k' = ⌊(k−1)/3⌋, k1 = ⌈(k−1)/3⌉, k2 = ⌈(k−2)/3⌉. The hub-middle
pairs are exactly the class's free pairs, so a class member is fixed by
choosing a tail tuple p (internally consistent with the class template),
a hub vertex compatible with p, and a middle tuple compatible with p.
Hubs per tail are one matrix product M = B·C; middles per tail another,
M' = B'·C'; and the only interaction between the two choices is that the
hub must avoid the middle vertices. For a fixed tail, every valid middle
tuple contains the same number r of vertices that also qualify as hubs —
r depends only on which middle slots impose the same tail-adjacency as
the hub slot — so the exact count is Σ_p (M_p − r)·M'_p over valid tails.

Matrices are indexed by mixed-radix vertex tuples including repeated
ones; rows for repeated tuples are simply left all-zero. Everything is
classical integer matrix multiplication (numpy int64), with an optional
modulus applied eagerly. A memory guard refuses jobs whose matrices
would not fit comfortably.
"""

from __future__ import annotations

from math import comb

import numpy as np

from .classes import PatternClass, free_pair_count
from .graphs import Graph

DEFAULT_CELL_BUDGET = 50_000_000


def block_sizes(k: int) -> tuple[int, int, int]:
    """(k', k1, k2) for a k-vertex pattern."""

    kp = free_pair_count(k)
    k1 = (k + 1) // 3  # ⌈(k−1)/3⌉
    k2 = k // 3        # ⌈(k−2)/3⌉
    assert kp + k1 + k2 == k - 1
    return kp, k1, k2


def collision_rank(c: PatternClass) -> int:
    """The r-correction: middle slots whose required adjacency to every
    tail slot coincides with the hub slot's."""

    k = c.k
    kp, k1, k2 = block_sizes(k)
    tail = list(range(kp + 1, k))
    tmpl = c.canonical
    r = 0
    for i in range(1, kp + 1):
        if all(tmpl.has_edge(i, s) == tmpl.has_edge(0, s) for s in tail):
            r += 1
    return r


def _tuple_coords(n: int, size: int) -> list[np.ndarray]:
    """Coordinate arrays of the mixed-radix tuple index (MSB first)."""

    idx = np.arange(n**size)
    return [(idx // n ** (size - 1 - a)) % n for a in range(size)]


def _distinct(coords: list[np.ndarray]) -> np.ndarray:
    size = len(coords)
    n_tuples = coords[0].shape[0] if coords else 1
    ok = np.ones(n_tuples, dtype=bool)
    for a in range(size):
        for b in range(a + 1, size):
            ok &= coords[a] != coords[b]
    return ok


def count_class(g: Graph, c: PatternClass, modulus: int | None = None,
                cell_budget: int = DEFAULT_CELL_BUDGET) -> int:
    """Number of labeled subgraphs of g mapping to a member of c
    (exact, or reduced mod `modulus`)."""

    if g.directed:
        raise ValueError("host must be undirected")
    if modulus is not None and modulus < 2:
        raise ValueError("modulus must be at least 2")
    k = c.k
    if k > 7:
        raise ValueError("counting is limited to k <= 7 patterns")
    kp, k1, k2 = block_sizes(k)
    n = g.node_count
    if n < k:
        return 0
    cells = (n**k1) * n + n * (n**k2) + 2 * (n**k1) * (n**k2) + (n**k1) * (n**kp) + (n**kp) * (n**k2)
    if cells > cell_budget:
        raise ValueError(
            f"matrix cells ({cells}) exceed the budget ({cell_budget}); "
            "reduce n or raise cell_budget"
        )

    A = np.zeros((n, n), dtype=bool)
    for v, row in enumerate(g.adj):
        rest = row
        while rest:
            u = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            A[v, u] = True

    tmpl = c.canonical
    mid = list(range(1, kp + 1))
    tail1 = list(range(kp + 1, kp + 1 + k1))
    tail2 = list(range(kp + 1 + k1, k))

    c1 = _tuple_coords(n, k1)
    c2 = _tuple_coords(n, k2)
    cm = _tuple_coords(n, kp)
    verts = np.arange(n)

    # B[p1, v]: hub candidates per left-tail tuple.
    B = np.ones((n**k1, n), dtype=bool)
    B &= _distinct(c1)[:, None]
    for a, slot in enumerate(tail1):
        B &= c1[a][:, None] != verts[None, :]
        B &= A[verts[None, :], c1[a][:, None]] == tmpl.has_edge(0, slot)

    # C[v, p2]: hub candidates per right-tail tuple.
    C = np.ones((n, n**k2), dtype=bool)
    C &= _distinct(c2)[None, :]
    for b, slot in enumerate(tail2):
        C &= c2[b][None, :] != verts[:, None]
        C &= A[verts[:, None], c2[b][None, :]] == tmpl.has_edge(0, slot)

    # B'[p1, u]: middle tuples against the left tail (plus the middle
    # block's internal structure and distinctness).
    Bp = np.ones((n**k1, n**kp), dtype=bool)
    Bp &= _distinct(c1)[:, None]
    Bp &= _distinct(cm)[None, :]
    for i in range(kp):
        for j in range(i + 1, kp):
            Bp &= (A[cm[i][None, :], cm[j][None, :]] == tmpl.has_edge(mid[i], mid[j]))
    for i in range(kp):
        for a, slot in enumerate(tail1):
            Bp &= cm[i][None, :] != c1[a][:, None]
            Bp &= A[cm[i][None, :], c1[a][:, None]] == tmpl.has_edge(mid[i], slot)

    # C'[u, p2]: middle tuples against the right tail.
    Cp = np.ones((n**kp, n**k2), dtype=bool)
    for i in range(kp):
        for b, slot in enumerate(tail2):
            Cp &= cm[i][:, None] != c2[b][None, :]
            Cp &= A[cm[i][:, None], c2[b][None, :]] == tmpl.has_edge(mid[i], slot)

    M = B.astype(np.int64) @ C.astype(np.int64)
    Mp = Bp.astype(np.int64) @ Cp.astype(np.int64)

    # Valid tails: both halves distinct, disjoint, and internally
    # consistent with the template.
    S = np.ones((n**k1, n**k2), dtype=bool)
    S &= _distinct(c1)[:, None]
    S &= _distinct(c2)[None, :]
    for a in range(k1):
        for b in range(k2):
            S &= c1[a][:, None] != c2[b][None, :]
            S &= A[c1[a][:, None], c2[b][None, :]] == tmpl.has_edge(tail1[a], tail2[b])
    for a in range(k1):
        for a2 in range(a + 1, k1):
            S &= (A[c1[a], c1[a2]] == tmpl.has_edge(tail1[a], tail1[a2]))[:, None]
    for b in range(k2):
        for b2 in range(b + 1, k2):
            S &= (A[c2[b], c2[b2]] == tmpl.has_edge(tail2[b], tail2[b2]))[None, :]

    r = collision_rank(c)
    terms = (M - r) * Mp
    if modulus is None:
        return int(terms[S].sum())
    total = int((terms[S] % modulus).sum()) % modulus
    return total


def codegree_pair_sum(g: Graph) -> int:
    """Σ over edges of C(common-neighbor count, 2).

    Equals (number of induced K_4−e copies) + 6·(number of K_4 copies):
    each K_4−e is counted once, by its chord; each K_4 is counted by all
    six of its edges.
    """

    if g.directed:
        raise ValueError("host must be undirected")
    total = 0
    for u, v in g.edges():
        codeg = (g.adj[u] & g.adj[v]).bit_count()
        total += comb(codeg, 2)
    return total
