"""Directed k-cycle detection by color coding and degree-class plans.

Vertices are first colored uniformly at random with k colors; only edges
from color i to color i+1 (mod k) are kept, so any surviving k-cycle runs
through the color classes in order.  Within one coding the search is split
by degree class: for every way of prescribing a degree bucket to each color
class, the detector runs two independent strategies and cross-checks them —
scanning outward from every vertex of the bucket with the fewest members,
and realizing a pair of reachability matrices along a cost-optimal plan of
extension steps and Boolean matrix products.  The plan is priced by the
same exact dynamic program that the exponent analyzer uses, so the executed
strategy always matches the computed cost table.

Witnesses are reconstructed from one stored predecessor per true matrix
entry and are re-verified edge by edge against the original adjacency
before being returned; an absent answer after R repetitions is wrong with
probability at most (1 - k^-k)^R.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from .exponents import DegreeVector, exponent_table, matmul_cost
from .graphs import Graph
from .randomness import rng, split_seed

# Hard ceiling on color-coding repetitions; k^k ln(100) crosses this
# between k = 5 and k = 6.
MAX_REPETITIONS = 100_000


def default_repetitions(k: int) -> int:
    """Repetitions driving the miss probability below 1/100, capped."""
    return min(math.ceil(k ** k * math.log(100)), MAX_REPETITIONS)


def absence_error_bound(k: int, repetitions: int) -> float:
    """Upper bound on the probability that an absent answer is wrong."""
    return (1.0 - float(k) ** -k) ** repetitions


def degree_class(degree: int) -> int:
    """Index j of the degree bucket [2^j, 2^(j+1)) holding this degree."""
    if degree < 1:
        raise ValueError("degree classes start at degree 1")
    return degree.bit_length() - 1


@dataclass(frozen=True)
class ColorCodedGraph:
    """A directed graph with a k-coloring; only consecutive-color edges count.

    The original graph is kept untouched; an edge u -> v is *retained* when
    color(v) = color(u) + 1 (mod k).  Parts, in-adjacency, retained degrees
    (in plus out), and the retained edge count are derived once.
    """

    graph: Graph
    k: int
    colors: tuple[int, ...]
    parts: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    degrees: tuple[int, ...] = field(init=False, repr=False, compare=False)
    edge_count: int = field(init=False, repr=False, compare=False)
    _in_adj: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not self.graph.directed:
            raise ValueError("color coding applies to directed graphs")
        if self.k < 3:
            raise ValueError("cycle length must be at least 3")
        n = self.graph.node_count
        if len(self.colors) != n:
            raise ValueError("one color per vertex required")
        if any(not 0 <= c < self.k for c in self.colors):
            raise ValueError("colors must lie in 0..k-1")
        parts: list[list[int]] = [[] for _ in range(self.k)]
        for v, c in enumerate(self.colors):
            parts[c].append(v)
        out_deg = [0] * n
        in_deg = [0] * n
        in_rows = [0] * n
        retained = 0
        for u in range(n):
            rest = self.graph.adj[u]
            want = (self.colors[u] + 1) % self.k
            while rest:
                v = (rest & -rest).bit_length() - 1
                rest &= rest - 1
                if self.colors[v] == want:
                    out_deg[u] += 1
                    in_deg[v] += 1
                    in_rows[v] |= 1 << u
                    retained += 1
        object.__setattr__(self, "parts", tuple(tuple(p) for p in parts))
        object.__setattr__(self, "degrees",
                           tuple(o + i for o, i in zip(out_deg, in_deg)))
        object.__setattr__(self, "edge_count", retained)
        object.__setattr__(self, "_in_adj", tuple(in_rows))

    def conforms(self, u: int, v: int) -> bool:
        return (self.graph.has_edge(u, v)
                and self.colors[v] == (self.colors[u] + 1) % self.k)

    def out_conforming(self, u: int) -> list[int]:
        want = (self.colors[u] + 1) % self.k
        out = []
        rest = self.graph.adj[u]
        while rest:
            v = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            if self.colors[v] == want:
                out.append(v)
        return out

    def in_conforming(self, v: int) -> list[int]:
        out = []
        rest = self._in_adj[v]
        while rest:
            u = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            out.append(u)
        return out


def color_code(g: Graph, k: int, seed: int) -> ColorCodedGraph:
    """Assign uniform independent colors; deterministic for a fixed seed."""
    if not g.directed:
        raise ValueError("color coding applies to directed graphs")
    if k < 3:
        raise ValueError("cycle length must be at least 3")
    r = rng(seed)
    colors = tuple(r.randrange(k) for _ in range(g.node_count))
    return ColorCodedGraph(graph=g, k=k, colors=colors)


@dataclass(frozen=True)
class DegreeClassTuple:
    """One degree bucket index per color class, with its exponent vector.

    Bucket j holds vertices of retained total degree in [2^j, 2^(j+1)); the
    exponent d_j rewrites 2^(f_j) on the scale of the edge count, clamped
    into [0, 1] so pathological buckets (degree above the edge count) stay
    inside the cost model's domain.
    """

    f: tuple[int, ...]
    d: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.f) != len(self.d):
            raise ValueError("bucket indices and exponents must align")
        if any(x < 0 for x in self.f):
            raise ValueError("bucket indices are nonnegative")
        if any(not Fraction(0) <= x <= Fraction(1) for x in self.d):
            raise ValueError("exponents must lie in [0, 1]")

    @property
    def k(self) -> int:
        return len(self.f)

    @staticmethod
    def from_classes(f: Sequence[int], edge_count: int) -> "DegreeClassTuple":
        log_m = max(1, (max(edge_count, 1) - 1).bit_length())
        d = tuple(min(Fraction(fi, log_m), Fraction(1)) for fi in f)
        return DegreeClassTuple(f=tuple(f), d=d)


# --------------------------------------------------------------------------
# Evaluation plans: which rule realizes each reachability matrix.

@dataclass(frozen=True)
class PlanNode:
    """One step of a reachability-matrix computation.

    kind is "edge" (adjacent parts, read off the graph), "extend-head"
    (grow at the target end by scanning out-neighbours), "extend-tail"
    (grow at the source end by scanning in-neighbours), or "product"
    (Boolean product of the two child matrices at the split part).
    """

    kind: str
    source: int
    target: int
    cost: Fraction
    split: Optional[int] = None
    children: tuple["PlanNode", ...] = ()


@dataclass(frozen=True)
class EvaluationPlan:
    """Chosen matrix pair and strategy trees for one degree-class tuple."""

    k: int
    omega: Fraction
    degrees: tuple[Fraction, ...]
    pair: tuple[int, int]
    forward: PlanNode
    backward: PlanNode
    scan_part: int
    scan_cost: Fraction

    @property
    def pair_cost(self) -> Fraction:
        return max(self.forward.cost, self.backward.cost)

    @property
    def cost(self) -> Fraction:
        return min(self.scan_cost, self.pair_cost)


@lru_cache(maxsize=4096)
def _plan_for(d: tuple[Fraction, ...], omega: Fraction) -> EvaluationPlan:
    k = len(d)
    table = exponent_table(DegreeVector(d), omega)

    def build(i: int, j: int) -> PlanNode:
        span = (j - i) % k
        target_cost = table.entry(i, j)
        if span == 1:
            return PlanNode(kind="edge", source=i, target=j, cost=target_cost)
        # Prefer a product on ties: the split option is the one that makes
        # the plan's cost drop below pure scanning in the dense regimes.
        for step in range(1, span):
            r = (i + step) % k
            join = matmul_cost(1 - d[i], 1 - d[r], 1 - d[j], omega)
            if max(table.entry(i, r), table.entry(r, j), join) == target_cost:
                return PlanNode(kind="product", source=i, target=j,
                                cost=target_cost, split=r,
                                children=(build(i, r), build(r, j)))
        before_j = (j - 1) % k
        if table.entry(i, before_j) + d[before_j] == target_cost:
            return PlanNode(kind="extend-head", source=i, target=j,
                            cost=target_cost, children=(build(i, before_j),))
        after_i = (i + 1) % k
        assert table.entry(after_i, j) + d[after_i] == target_cost, \
            "no rule realizes the tabulated cost"
        return PlanNode(kind="extend-tail", source=i, target=j,
                        cost=target_cost, children=(build(after_i, j),))

    best_pair = min(
        ((i, j) for i in range(k) for j in range(i + 1, k)),
        key=lambda p: (max(table.entry(*p), table.entry(p[1], p[0])), p),
    )
    scan_part = min(range(k), key=lambda j: (2 - d[j], j))
    return EvaluationPlan(
        k=k,
        omega=omega,
        degrees=d,
        pair=best_pair,
        forward=build(best_pair[0], best_pair[1]),
        backward=build(best_pair[1], best_pair[0]),
        scan_part=scan_part,
        scan_cost=2 - d[scan_part],
    )


def plan_evaluation(tup: DegreeClassTuple, k: int, omega) -> EvaluationPlan:
    """Strategy trees realizing the cost table for the cheapest matrix pair.

    Shares the exact dynamic program with the exponent analyzer, so each
    node's cost equals the corresponding table entry; tie-breaks prefer a
    Boolean product, then growth at the target end.
    """
    if tup.k != k:
        raise ValueError("tuple length must equal the cycle length")
    w = omega if isinstance(omega, Fraction) else Fraction(str(omega))
    if not Fraction(2) <= w <= Fraction(3):
        raise ValueError("multiplication exponent must lie in [2, 3]")
    return _plan_for(tup.d, w)


# --------------------------------------------------------------------------
# Reachability matrices with witness reconstruction.

@dataclass(eq=False)
class ReachMatrix:
    """Boolean reachability between two degree-restricted color classes.

    matrix[a, b] is true iff a path rows[a] -> ... -> cols[b] exists through
    the prescribed degree-restricted parts; via[a, b] stores one interior
    vertex per true entry (split vertex or scan predecessor) so a concrete
    path can be rebuilt without recomputation.
    """

    source: int
    target: int
    rows: tuple[int, ...]
    cols: tuple[int, ...]
    matrix: np.ndarray
    via: np.ndarray
    kind: str
    children: tuple["ReachMatrix", ...] = ()

    def trace(self, u: int, w: int) -> list[int]:
        a = self.rows.index(u)
        b = self.cols.index(w)
        assert self.matrix[a, b], "trace requested for an unreachable pair"
        if self.kind == "edge":
            return [u, w]
        mid = int(self.via[a, b])
        if self.kind == "extend-head":
            return self.children[0].trace(u, mid) + [w]
        if self.kind == "extend-tail":
            return [u] + self.children[0].trace(mid, w)
        return (self.children[0].trace(u, mid)
                + self.children[1].trace(mid, w)[1:])


def _realize(node: PlanNode, cg: ColorCodedGraph,
             cand: list[tuple[int, ...]],
             index: list[dict[int, int]]) -> ReachMatrix:
    rows = cand[node.source]
    cols = cand[node.target]
    shape = (len(rows), len(cols))
    if node.kind == "edge":
        matrix = np.zeros(shape, dtype=bool)
        for a, u in enumerate(rows):
            row_bits = cg.graph.adj[u]
            for b, w in enumerate(cols):
                if row_bits >> w & 1:
                    matrix[a, b] = True
        return ReachMatrix(node.source, node.target, rows, cols,
                           matrix, np.full(shape, -1, dtype=np.int64), "edge")

    matrix = np.zeros(shape, dtype=bool)
    via = np.full(shape, -1, dtype=np.int64)
    if node.kind == "extend-head":
        child = _realize(node.children[0], cg, cand, index)
        col_of = index[node.target]
        for c_pos, c in enumerate(child.cols):
            reach = child.matrix[:, c_pos]
            if not reach.any():
                continue
            for w in cg.out_conforming(c):
                b = col_of.get(w)
                if b is None:
                    continue
                fresh = reach & ~matrix[:, b]
                matrix[fresh, b] = True
                via[fresh, b] = c
        return ReachMatrix(node.source, node.target, rows, cols,
                           matrix, via, "extend-head", (child,))
    if node.kind == "extend-tail":
        child = _realize(node.children[0], cg, cand, index)
        row_of = index[node.source]
        for s_pos, s in enumerate(child.rows):
            reach = child.matrix[s_pos, :]
            if not reach.any():
                continue
            for u in cg.in_conforming(s):
                a = row_of.get(u)
                if a is None:
                    continue
                fresh = reach & ~matrix[a, :]
                matrix[a, fresh] = True
                via[a, fresh] = s
        return ReachMatrix(node.source, node.target, rows, cols,
                           matrix, via, "extend-tail", (child,))

    left = _realize(node.children[0], cg, cand, index)
    right = _realize(node.children[1], cg, cand, index)
    for t_pos, t in enumerate(left.cols):
        from_left = left.matrix[:, t_pos]
        to_right = right.matrix[t_pos, :]
        if not from_left.any() or not to_right.any():
            continue
        block = np.outer(from_left, to_right) & ~matrix
        via[block] = t
        matrix |= block
    return ReachMatrix(node.source, node.target, rows, cols,
                       matrix, via, "product", (left, right))


# --------------------------------------------------------------------------
# Detection.

def _candidates(cg: ColorCodedGraph, tup: DegreeClassTuple
                ) -> Optional[list[tuple[int, ...]]]:
    cand = []
    for part, bucket in zip(cg.parts, tup.f):
        chosen = tuple(v for v in part
                       if cg.degrees[v] >= 1 and degree_class(cg.degrees[v]) == bucket)
        if not chosen:
            return None
        cand.append(chosen)
    return cand


def _scan_search(cg: ColorCodedGraph, cand: list[tuple[int, ...]],
                 start_part: int) -> Optional[list[int]]:
    """Grow paths from each start vertex through the prescribed buckets."""
    k = cg.k
    allowed = [set(c) for c in cand]
    for v in cand[start_part]:
        preds: list[dict[int, int]] = [{} for _ in range(k + 1)]
        frontier = {v}
        for step in range(1, k + 1):
            part = (start_part + step) % k
            target = allowed[part] if step < k else {v}
            nxt: dict[int, int] = {}
            for u in frontier:
                for w in cg.out_conforming(u):
                    if w in target and w not in nxt:
                        nxt[w] = u
            preds[step] = nxt
            frontier = set(nxt)
            if not frontier:
                break
        if v in preds[k]:
            walk = [v]
            cur = v
            for step in range(k, 1, -1):
                cur = preds[step][cur]
                walk.append(cur)
            walk.reverse()
            return walk
    return None


def _rotate_to_part_zero(cg: ColorCodedGraph, cycle: list[int]) -> tuple[int, ...]:
    at = next(i for i, v in enumerate(cycle) if cg.colors[v] == 0)
    return tuple(cycle[at:] + cycle[:at])


def detect_cycle_colored(cg: ColorCodedGraph, tup: DegreeClassTuple,
                         omega=Fraction(2)) -> Optional[tuple[int, ...]]:
    """Find a conforming k-cycle in one coding under one degree-class tuple.

    Runs both strategies — the scan from every vertex of the costliest
    bucket and the planned matrix pair — asserts that they agree, and
    returns the matrix pair's witness (rotated to start in part 0), or None.
    Both strategies are exact on the colored graph, so the answer is
    deterministic; randomness lives only in the coloring.
    """
    if tup.k != cg.k:
        raise ValueError("tuple length must equal the number of parts")
    cand = _candidates(cg, tup)
    if cand is None:
        return None
    plan = plan_evaluation(tup, cg.k, omega)

    scan_hit = _scan_search(cg, cand, plan.scan_part)

    index = [{v: pos for pos, v in enumerate(c)} for c in cand]
    forward = _realize(plan.forward, cg, cand, index)
    backward = _realize(plan.backward, cg, cand, index)
    meet = forward.matrix & backward.matrix.T
    pair_hit: Optional[list[int]] = None
    if meet.any():
        a, b = np.argwhere(meet)[0]
        u = cand[plan.pair[0]][int(a)]
        w = cand[plan.pair[1]][int(b)]
        first_leg = forward.trace(u, w)
        second_leg = backward.trace(w, u)
        pair_hit = first_leg + second_leg[1:-1]

    assert (scan_hit is None) == (pair_hit is None), \
        "scan and matrix strategies disagree on the same colored graph"
    if pair_hit is None:
        return None
    witness = _rotate_to_part_zero(cg, pair_hit)
    for t, u in enumerate(witness):
        assert cg.conforms(u, witness[(t + 1) % cg.k])
    return witness


def _coding_has_cycle(cg: ColorCodedGraph) -> bool:
    """Boolean-product screen: does this coding retain any k-cycle at all?"""
    if any(not part for part in cg.parts):
        return False
    reach = None
    for i in range(cg.k):
        src = cg.parts[i]
        dst = cg.parts[(i + 1) % cg.k]
        step = np.zeros((len(src), len(dst)), dtype=np.uint8)
        dst_pos = {v: pos for pos, v in enumerate(dst)}
        for a, u in enumerate(src):
            for w in cg.out_conforming(u):
                step[a, dst_pos[w]] = 1
        reach = step if reach is None else ((reach @ step) > 0).astype(np.uint8)
    assert reach is not None
    return bool(np.diagonal(reach).any())


def _search_coding(cg: ColorCodedGraph, omega) -> Optional[tuple[int, ...]]:
    buckets_per_part = []
    for part in cg.parts:
        buckets = sorted({degree_class(cg.degrees[v])
                          for v in part if cg.degrees[v] >= 1})
        if not buckets:
            return None
        buckets_per_part.append(buckets)
    for f in itertools.product(*buckets_per_part):
        tup = DegreeClassTuple.from_classes(f, cg.edge_count)
        witness = detect_cycle_colored(cg, tup, omega)
        if witness is not None:
            return witness
    return None


def detect_k_cycle(g: Graph, k: int, seed: int,
                   repetitions: Optional[int] = None,
                   omega=Fraction(2)) -> Optional[tuple[int, ...]]:
    """Search for a directed k-cycle; sound always, complete with high probability.

    Each repetition draws a fresh coloring (deterministically from the
    seed), screens it with a Boolean-product feasibility check, and only
    then loops over the populated degree-class tuples.  The first witness
    is verified edge by edge against the original adjacency and returned
    rotated so its smallest vertex comes first.  A None answer is wrong
    with probability at most (1 - k^-k)^repetitions.
    """
    if not g.directed:
        raise ValueError("directed graph required")
    if k < 3:
        raise ValueError("cycle length must be at least 3")
    reps = default_repetitions(k) if repetitions is None else repetitions
    if reps < 0:
        raise ValueError("repetitions must be nonnegative")
    if g.node_count < k:
        return None
    for rep in range(reps):
        cg = color_code(g, k, split_seed(seed, "coding", rep))
        if not _coding_has_cycle(cg):
            continue
        witness = _search_coding(cg, omega)
        assert witness is not None, "screen accepted a coding with no cycle"
        assert len(witness) == k and len(set(witness)) == k
        for t, u in enumerate(witness):
            assert g.has_edge(u, witness[(t + 1) % k]), \
                "witness edge missing from the original graph"
        low = min(range(k), key=lambda t: witness[t])
        return witness[low:] + witness[:low]
    return None
