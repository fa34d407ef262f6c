"""Pattern classes: ordered patterns grouped by their non-free pairs.

A class fixes every vertex pair of an ordered k-pattern except the k'
"free" pairs (0,1), (0,2), …, (0,k'), where k' = ⌊(k−1)/3⌋. The 2^k'
assignments of those pairs are the class members. Counting all members
of a class at once is what makes the fast counting pipeline tick; the
per-isomorphism-type multiplicities (the class spectrum) are what let
signed combinations of class counts isolate a single target pattern.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

import numpy as np

from .graphs import (
    OrderedPattern,
    UnlabeledPatternKey,
    _perm_tables,
    automorphism_count,
    pair_list,
)


def free_pair_count(k: int) -> int:
    return (k - 1) // 3


@dataclass(frozen=True, slots=True)
class PatternClass:
    """A class of ordered k-patterns; `canonical` has all free pairs clear."""

    canonical: OrderedPattern

    def __post_init__(self) -> None:
        k = self.canonical.node_count
        if k < 2:
            raise ValueError("classes need at least 2 vertices")
        for i in range(1, free_pair_count(k) + 1):
            if self.canonical.has_edge(0, i):
                raise ValueError("canonical member must have free pairs clear")

    @property
    def k(self) -> int:
        return self.canonical.node_count

    @property
    def free_pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple((0, i) for i in range(1, free_pair_count(self.k) + 1))

    def members(self) -> list[OrderedPattern]:
        """All 2^k' ordered patterns in the class."""
        out = [self.canonical]
        for (_, i) in self.free_pairs:
            out = [m for m in out] + [m.with_edge(0, i, True) for m in out]
        return out

    def contains(self, h: OrderedPattern) -> bool:
        return class_of(h) == self


def class_of(h: OrderedPattern) -> PatternClass:
    """The class of an ordered pattern: clear its free pairs."""

    if h.node_count < 2:
        raise ValueError("classes need at least 2 vertices")
    cleared = h
    for i in range(1, free_pair_count(h.node_count) + 1):
        cleared = cleared.with_edge(0, i, False)
    return PatternClass(cleared)


@dataclass(frozen=True, slots=True)
class SpectrumEntry:
    key: UnlabeledPatternKey
    alpha: int  # vertex orderings of the unlabeled pattern landing in the class
    b: int      # alpha / |Aut|


@dataclass(frozen=True, slots=True)
class ClassSpectrum:
    pattern_class: PatternClass
    entries: tuple[SpectrumEntry, ...]

    def alpha_of(self, key: UnlabeledPatternKey) -> int:
        for e in self.entries:
            if e.key == key:
                return e.alpha
        return 0


def _orderings_landing_in_class(h: OrderedPattern, c: PatternClass) -> int:
    """Count vertex orderings of h whose ordered pattern lies in c.

    An ordering lies in c when it agrees with the canonical member on
    every non-free pair. Vectorized over all k! permutations.
    """

    k = h.node_count
    _, gather = _perm_tables(k)
    images = h.pair_bits()[gather]  # (k!, C(k,2))
    free = {(0, i) for i in range(1, free_pair_count(k) + 1)}
    cols = [j for j, pair in enumerate(pair_list(k)) if pair not in free]
    template = c.canonical.pair_bits()[cols]
    return int(np.count_nonzero((images[:, cols] == template).all(axis=1)))


def class_spectrum(c: PatternClass) -> ClassSpectrum:
    """α and b coefficients for every unlabeled pattern embedding in c.

    α is counted directly over the k! orderings; b = α/|Aut| is asserted
    integral, and Σ b = 2^k' is asserted as a hard invariant (it equals
    the number of free-pair assignments).
    """

    k = c.k
    if k > 7:
        raise ValueError("spectrum enumeration is limited to k <= 7")
    seen: dict[UnlabeledPatternKey, OrderedPattern] = {}
    for member in c.members():
        seen.setdefault(member.key(), member)
    entries = []
    for key, rep in sorted(seen.items(), key=lambda kv: (kv[0].node_count, kv[0].bits)):
        alpha = _orderings_landing_in_class(rep, c)
        aut = automorphism_count(rep)
        if alpha % aut:
            raise AssertionError("alpha not divisible by |Aut|")
        entries.append(SpectrumEntry(key, alpha, alpha // aut))
    kp = free_pair_count(k)
    if sum(e.b for e in entries) != 1 << kp:
        raise AssertionError("spectrum b-coefficients do not sum to 2^k'")
    if not kp + 1 <= len(entries) <= 1 << kp:
        # k' = 0 gives exactly one entry; the bounds collapse to 1..1.
        if kp != 0 or len(entries) != 1:
            raise AssertionError("spectrum size out of bounds")
    return ClassSpectrum(c, tuple(entries))


def class_from_pattern_edges(
    h: OrderedPattern, pivot: int, edges: tuple[tuple[int, int], ...]
) -> PatternClass:
    """The class whose embeddable patterns are h minus subsets of `edges`.

    `edges` must be exactly k' edges of h incident to `pivot`. The class
    is built by reordering h so the pivot becomes vertex 0 and the chosen
    edges' far endpoints become vertices 1..k'; h is then the edge-maximal
    member (all free pairs present) and removing any subset of the chosen
    edges walks down the class lattice.
    """

    k = h.node_count
    kp = free_pair_count(k)
    if h.degree(pivot) < kp:
        raise ValueError("pivot degree too small for the class's free pairs")
    if len(edges) != kp:
        raise ValueError(f"need exactly {kp} chosen edges")
    partners = []
    for (u, v) in edges:
        if u == pivot:
            partners.append(v)
        elif v == pivot:
            partners.append(u)
        else:
            raise ValueError("chosen edges must touch the pivot")
        if not h.has_edge(u, v):
            raise ValueError("chosen pairs must be edges of the pattern")
    if len(set(partners)) != len(partners):
        raise ValueError("chosen edges must be distinct")
    rest = [v for v in range(k) if v != pivot and v not in partners]
    order = [pivot] + partners + rest
    return class_of(h.reordered(order))


def weighted_member_count(c: PatternClass, census: dict[UnlabeledPatternKey, int]) -> int:
    """Σ α·n over the spectrum — the quantity the fast counter computes,
    evaluated from a brute-force census instead."""

    spec = class_spectrum(c)
    return sum(e.alpha * census.get(e.key, 0) for e in spec.entries)


def telescoping_alpha_sum(k: int) -> int:
    return factorial(k)
