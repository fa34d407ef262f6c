"""Hardness gadgets: from clique-finding to pattern-finding.

Both constructions blow a host graph G up into a gadget G* (at most n·k
vertices) that contains a non-induced copy of the pattern H exactly when
G contains a t-clique.

The clique-based gadget needs H to contain a t-clique. Cover all
t-cliques of H by a minimum family of vertex sets whose induced
subgraphs are t-colorable; replace each vertex of the first covering set
by an independent-set copy of V(G), wire adjacent block pairs with G's
edge structure, keep the remaining pattern vertices as singletons joined
fully to adjacent blocks and directly to each other. A t-clique in G
then realises H block-by-block via a proper t-coloring, and conversely a
copy of H must put a t-clique somewhere that forces one in G (else the
covering could be shrunk by one set — contradicting minimality).

The chromatic gadget only needs χ(H) = t ≥ 2. The role of t-cliques is
played by F, the smallest t-chromatic induced subgraph (with maximum
edges), and the role of proper colorings by colorings under which every
F-copy contracts onto K_t (color classes connected inside the copy,
every color pair joined — guaranteed to exist for F itself whenever
graphs of chromatic number t have K_t minors, which is verified
exhaustively at these sizes, never assumed). Blocks of adjacent
same-color vertices are wired by the identity perfect matching instead
of G's structure; everything else matches the clique gadget.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .graphs import Graph, OrderedPattern, UnlabeledPatternKey
from .oracles import (
    chromatic_number,
    exists_noninduced_bruteforce,
    is_colorable,
    max_clique_size,
)


class HadwigerCandidateError(RuntimeError):
    """A t-chromatic subgraph admitted no contraction coloring onto K_t.

    At the sizes this package handles that would be a counterexample to
    a famous open conjecture, so it is far more likely to be a bug in
    the caller's inputs; either way it must never pass silently.
    """


@dataclass(frozen=True)
class CliqueCovering:
    t: int
    sets: tuple[tuple[int, ...], ...]
    is_minimum: bool


@dataclass(frozen=True)
class MinorColoring:
    """Vertex -> color (1..t), not necessarily proper."""

    colors: tuple[tuple[int, int], ...]

    def mapping(self) -> dict[int, int]:
        return dict(self.colors)


@dataclass(frozen=True)
class FCovering:
    subgraph: OrderedPattern
    z: int
    sets: tuple[tuple[int, ...], ...]
    minor_colorings: tuple[MinorColoring, ...]


@dataclass(frozen=True)
class ReductionOutput:
    """Gadget plus provenance: block_map[i] = (pattern vertex, source
    vertex in G) for block vertices, (pattern vertex, None) for
    singletons."""

    gadget: Graph
    block_map: tuple[tuple[int, Optional[int]], ...]


def _exact_min_cover(masks: list[int], n_elements: int) -> list[int]:
    """Smallest index list covering all elements; first in index order
    among smallest (candidates are pre-sorted, so this is the lex rule)."""

    full = (1 << n_elements) - 1
    if full == 0:
        return []

    def dfs(start: int, covered: int, slots: int) -> Optional[list[int]]:
        if covered == full:
            return []
        if slots == 0:
            return None
        missing = full & ~covered
        reachable = 0
        best_gain = 0
        for i in range(start, len(masks)):
            gain = masks[i] & missing
            reachable |= gain
            cnt = gain.bit_count()
            if cnt > best_gain:
                best_gain = cnt
        if reachable != missing or best_gain * slots < missing.bit_count():
            return None
        for i in range(start, len(masks)):
            if masks[i] & missing == 0:
                continue
            rest = dfs(i + 1, covered | masks[i], slots - 1)
            if rest is not None:
                return [i] + rest
        return None

    for cap in range(1, len(masks) + 1):
        found = dfs(0, 0, cap)
        if found is not None:
            return found
    raise ValueError("candidates do not cover the universe")


def _maximal_subsets(k: int, admits) -> list[tuple[int, ...]]:
    """Maximal subsets of range(k) passing `admits`, assuming the
    property is closed under taking subsets."""

    kept: list[tuple[int, ...]] = []
    subsets = sorted(
        (tuple(s) for size in range(k, 0, -1) for s in combinations(range(k), size)),
        key=lambda s: (-len(s), s),
    )
    for cand in subsets:
        cs = set(cand)
        if any(cs <= set(m) for m in kept):
            continue
        if admits(cand):
            kept.append(cand)
    return kept


def min_t_clique_covering(h: OrderedPattern, t: int) -> CliqueCovering:
    """Minimum family of t-colorable vertex sets containing every
    t-clique of h; deterministic (lexicographically first among minima)."""

    g = h.to_graph()
    cliques = [
        frozenset(s)
        for s in combinations(range(h.node_count), t)
        if all(g.has_edge(u, v) for u, v in combinations(s, 2))
    ]
    if not cliques:
        raise ValueError(f"pattern has no {t}-clique")

    candidates = _maximal_subsets(
        h.node_count, lambda s: is_colorable(g.induced(list(s)), t)
    )
    candidates.sort()
    masks = [
        sum(1 << i for i, q in enumerate(cliques) if q <= set(cand))
        for cand in candidates
    ]
    chosen = _exact_min_cover(masks, len(cliques))
    return CliqueCovering(
        t=t, sets=tuple(candidates[i] for i in chosen), is_minimum=True
    )


def _gadget_layout(n: int, k: int, c1: tuple[int, ...]) -> tuple[dict[int, int], dict[int, int], list[tuple[int, Optional[int]]]]:
    """Vertex numbering: blocks for c1 members (in order), then
    singletons for the rest."""

    block_base: dict[int, int] = {}
    single_at: dict[int, int] = {}
    block_map: list[tuple[int, Optional[int]]] = []
    at = 0
    for v in c1:
        block_base[v] = at
        block_map.extend((v, w) for w in range(n))
        at += n
    for v in range(k):
        if v in block_base:
            continue
        single_at[v] = at
        block_map.append((v, None))
        at += 1
    return block_base, single_at, block_map


def build_clique_reduction(g: Graph, h: OrderedPattern, t: int) -> ReductionOutput:
    """The t-clique gadget. Contains a non-induced h iff g has a
    t-clique."""

    if g.directed:
        raise ValueError("host must be undirected")
    covering = min_t_clique_covering(h, t)
    c1 = covering.sets[0]
    n, k = g.node_count, h.node_count
    block_base, single_at, block_map = _gadget_layout(n, k, c1)

    edges: list[tuple[int, int]] = []
    hg = h.to_graph()
    for u, v in hg.edges():
        u_in, v_in = u in block_base, v in block_base
        if u_in and v_in:
            bu, bv = block_base[u], block_base[v]
            for w1, w2 in g.edges():
                edges.append((bu + w1, bv + w2))
                edges.append((bu + w2, bv + w1))
        elif u_in or v_in:
            inside, outside = (u, v) if u_in else (v, u)
            base, star = block_base[inside], single_at[outside]
            edges.extend((base + w, star) for w in range(n))
        else:
            edges.append((single_at[u], single_at[v]))

    gadget = Graph.from_edges(len(block_map), edges)
    assert gadget.node_count <= n * k
    return ReductionOutput(gadget=gadget, block_map=tuple(block_map))


def _induced_key(hg: Graph, subset: tuple[int, ...]) -> UnlabeledPatternKey:
    return UnlabeledPatternKey.of(OrderedPattern.from_graph(hg.induced(list(subset))))


def choose_F(h: OrderedPattern, t: int) -> OrderedPattern:
    """Smallest t-chromatic induced subgraph, maximum edges among that
    size, canonical form."""

    hg = h.to_graph()
    if chromatic_number(hg) != t:
        raise ValueError(f"pattern is not {t}-chromatic")
    for z in range(1, h.node_count + 1):
        witnesses = [
            s
            for s in combinations(range(h.node_count), z)
            if not is_colorable(hg.induced(list(s)), t - 1)
        ]
        if witnesses:
            best = min(
                witnesses,
                key=lambda s: (-hg.induced(list(s)).edge_count(), _induced_key(hg, s)),
            )
            return _induced_key(hg, best).canonical_pattern()
    raise AssertionError("unreachable: h itself is t-chromatic")


def _copies_of(hg: Graph, c_set: tuple[int, ...], f_pattern: OrderedPattern) -> list[tuple[int, ...]]:
    z = f_pattern.node_count
    want = f_pattern.key()
    return [s for s in combinations(sorted(c_set), z) if _induced_key(hg, s) == want]


def _contracts_to_clique(hg: Graph, copy: tuple[int, ...], colors: dict[int, int], t: int) -> bool:
    """All t colors present in the copy, each class connected inside the
    copy, every color pair joined inside the copy."""

    classes: dict[int, list[int]] = {}
    for v in copy:
        classes.setdefault(colors[v], []).append(v)
    if len(classes) != t:
        return False
    in_copy = set(copy)
    for members in classes.values():
        seen = {members[0]}
        frontier = [members[0]]
        member_set = set(members)
        while frontier:
            x = frontier.pop()
            for y in member_set - seen:
                if hg.has_edge(x, y):
                    seen.add(y)
                    frontier.append(y)
        if seen != member_set:
            return False
    cols = sorted(classes)
    for a, b in combinations(cols, 2):
        if not any(
            hg.has_edge(x, y) for x in classes[a] for y in classes[b] if y in in_copy
        ):
            return False
    return True


def find_minor_coloring(h: OrderedPattern, c_set: tuple[int, ...], f_pattern: OrderedPattern, t: int) -> Optional[MinorColoring]:
    """A coloring of c_set under which every induced copy of f_pattern
    inside it contracts onto K_t; None if no such coloring exists.

    Colorings are enumerated as restricted-growth strings (color names
    are interchangeable, so each set partition is tried once)."""

    order = sorted(c_set)
    hg = h.to_graph()
    copies = _copies_of(hg, tuple(order), f_pattern)
    if not copies:
        return MinorColoring(colors=tuple((v, 1) for v in order))

    colors: dict[int, int] = {}

    def assign(i: int, used: int) -> Optional[MinorColoring]:
        if i == len(order):
            if all(_contracts_to_clique(hg, cp, colors, t) for cp in copies):
                return MinorColoring(colors=tuple(sorted(colors.items())))
            return None
        for c in range(1, min(used + 1, t) + 1):
            colors[order[i]] = c
            got = assign(i + 1, max(used, c))
            if got is not None:
                return got
        del colors[order[i]]
        return None

    return assign(0, 0)


def min_f_covering(h: OrderedPattern, f_pattern: OrderedPattern, t: int) -> FCovering:
    """Minimum family of contraction-colorable vertex sets containing
    every induced copy of f_pattern."""

    hg = h.to_graph()
    k = h.node_count
    z = f_pattern.node_count
    everything = tuple(range(k))
    copies = _copies_of(hg, everything, f_pattern)
    if not copies:
        whole = find_minor_coloring(h, everything, f_pattern, t)
        assert whole is not None  # vacuous without copies
        return FCovering(subgraph=f_pattern, z=z, sets=(everything,), minor_colorings=(whole,))

    colorings: dict[tuple[int, ...], MinorColoring] = {}

    def admits(s: tuple[int, ...]) -> bool:
        got = find_minor_coloring(h, s, f_pattern, t)
        if got is not None:
            colorings[s] = got
            return True
        return False

    candidates = _maximal_subsets(k, admits)
    candidates.sort()
    copy_sets = [frozenset(c) for c in copies]
    for cp in copy_sets:
        if not any(cp <= set(cand) for cand in candidates):
            raise HadwigerCandidateError(
                f"no contraction coloring covers the copy {tuple(sorted(cp))}; "
                f"a {t}-chromatic graph without a K_{t} minor would be needed"
            )
    masks = [
        sum(1 << i for i, cp in enumerate(copy_sets) if cp <= set(cand))
        for cand in candidates
    ]
    chosen = _exact_min_cover(masks, len(copy_sets))
    return FCovering(
        subgraph=f_pattern,
        z=z,
        sets=tuple(candidates[i] for i in chosen),
        minor_colorings=tuple(colorings[candidates[i]] for i in chosen),
    )


def build_chromatic_reduction(g: Graph, h: OrderedPattern) -> ReductionOutput:
    """The chromatic gadget: contains a non-induced h iff g has a
    χ(h)-clique."""

    if g.directed:
        raise ValueError("host must be undirected")
    hg = h.to_graph()
    t = chromatic_number(hg)
    if t < 2:
        raise ValueError("pattern must have at least one edge")
    f_pattern = choose_F(h, t)
    covering = min_f_covering(h, f_pattern, t)
    c1 = covering.sets[0]
    f = covering.minor_colorings[0].mapping()
    n, k = g.node_count, h.node_count
    block_base, single_at, block_map = _gadget_layout(n, k, c1)

    edges: list[tuple[int, int]] = []
    for u, v in hg.edges():
        u_in, v_in = u in block_base, v in block_base
        if u_in and v_in:
            bu, bv = block_base[u], block_base[v]
            if f[u] == f[v]:
                edges.extend((bu + w, bv + w) for w in range(n))
            else:
                for w1, w2 in g.edges():
                    edges.append((bu + w1, bv + w2))
                    edges.append((bu + w2, bv + w1))
        elif u_in or v_in:
            inside, outside = (u, v) if u_in else (v, u)
            base, star = block_base[inside], single_at[outside]
            edges.extend((base + w, star) for w in range(n))
        else:
            edges.append((single_at[u], single_at[v]))

    gadget = Graph.from_edges(len(block_map), edges)
    assert gadget.node_count <= n * k
    return ReductionOutput(gadget=gadget, block_map=tuple(block_map))


def verify_reduction_iff(g: Graph, h: OrderedPattern, t: int, out: ReductionOutput) -> bool:
    """End-to-end check: gadget structure is sound and pattern presence
    matches t-clique presence exactly."""

    n, k = g.node_count, h.node_count
    if out.gadget.node_count > n * k:
        return False
    blocks: dict[int, list[int]] = {}
    for idx, (pv, src) in enumerate(out.block_map):
        if src is not None:
            blocks.setdefault(pv, []).append(idx)
    for members in blocks.values():
        for a, b in combinations(members, 2):
            if out.gadget.has_edge(a, b):
                return False
    found = exists_noninduced_bruteforce(out.gadget, h)
    return found == (max_clique_size(g) >= t)
