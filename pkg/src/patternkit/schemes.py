"""Modular detection schemes.

A detection scheme evaluates a signed combination of class counts on a
random induced subgraph, reduced modulo q. By construction the combined
coefficient of every pattern other than the target vanishes mod q while
the target's coefficient (the lead) does not, so a nonzero residue
certifies presence deterministically; repeated independent subsamples
drive the one-sided miss probability below (1 − 2^{−k})^trials.

Two constructions are provided:

* ``edge_chain_scheme`` — for patterns on 4..6 vertices (exactly the
  sizes whose classes have a single free pair). Remove the canonical
  pattern's edges one at a time in lexicographic order; each removal
  step contributes one two-member class, consecutive steps share a
  member with equal weight |Aut|, and the alternating sum telescopes:
  everything cancels except the target (coefficient |Aut(target)|) and
  the empty pattern (coefficient ±k!, killed by the modulus q = k!).

* ``augmented_clique_scheme`` — for the family K_{k−1} plus one extra
  vertex adjacent to s clique vertices. Ordering the pattern with the
  extra vertex first and non-neighbours of it as the free-pair partners
  puts the whole family slice {s, s+1, …, s+k'} into one class, with
  member coefficients C(k', j)·|Aut|. With q = s+1 prime (and s large
  enough that (k−s−1)! avoids the factor), every coefficient past the
  first is divisible by q and the lead is not. At k = 14 no valid s has
  s+1 prime; q = 2^9 works instead, by the 2-adic valuations of the
  automorphism counts. Patterns above 8 vertices cannot be materialised,
  so those schemes carry the coefficient certificate only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .classes import PatternClass, class_from_pattern_edges, class_of, class_spectrum, free_pair_count
from .counting import count_class
from .graphs import (
    Graph,
    OrderedPattern,
    UnlabeledPatternKey,
    augmented_clique,
    augmented_clique_automorphism_count,
    automorphism_count,
)
from .randomness import random_induced_subgraph, split_seed


class SchemeError(ValueError):
    """A scheme's arithmetic invariants cannot be satisfied."""


def default_trials(k: int, delta: float = 0.01) -> int:
    """Trials needed to push the miss probability below delta."""

    return math.ceil(2**k * math.log(1.0 / delta))


@dataclass(frozen=True)
class DetectionScheme:
    """A signed class combination with vanishing non-target residues."""

    k: int
    modulus: int
    lead: int
    terms: tuple[tuple[PatternClass, int], ...]
    target: Optional[UnlabeledPatternKey]
    member_coefficients: tuple[int, ...] = ()
    trials: int = 0

    @property
    def effective_modulus(self) -> int:
        """q divided by gcd(lead, q): the modulus actually resolving the
        target count."""

        return self.modulus // math.gcd(self.lead, self.modulus)

    def expansion(self) -> dict[UnlabeledPatternKey, int]:
        """Total coefficient per pattern across all terms (exact)."""

        coeffs: dict[UnlabeledPatternKey, int] = {}
        for cls, sign in self.terms:
            for entry in class_spectrum(cls).entries:
                coeffs[entry.key] = coeffs.get(entry.key, 0) + sign * entry.alpha
        return coeffs

    def validate(self) -> None:
        q = self.modulus
        if q < 2:
            raise SchemeError("modulus must be at least 2")
        if self.lead % q == 0:
            raise SchemeError(
                f"lead coefficient {self.lead} vanishes mod {q}; "
                "the scheme cannot see the target"
            )
        if self.terms:
            if self.target is None:
                raise SchemeError("materialised terms require a target key")
            coeffs = self.expansion()
            if self.target not in coeffs:
                raise SchemeError("target pattern missing from the expansion")
            if coeffs[self.target] % q != self.lead % q:
                raise SchemeError(
                    f"expansion gives the target coefficient "
                    f"{coeffs[self.target]}, scheme claims {self.lead} (mod {q})"
                )
            for key, coef in coeffs.items():
                if key != self.target and coef % q != 0:
                    raise SchemeError(
                        f"non-target pattern retains coefficient {coef} mod {q}"
                    )
        elif self.member_coefficients:
            for j, coef in enumerate(self.member_coefficients):
                if j == 0:
                    continue
                if coef % q != 0:
                    raise SchemeError(
                        f"family member {j} retains coefficient {coef} mod {q}"
                    )
        else:
            raise SchemeError("scheme carries neither terms nor a certificate")


def edge_chain_scheme(h: OrderedPattern, trials: Optional[int] = None) -> DetectionScheme:
    """Telescoping edge-removal scheme for a 4..6-vertex pattern."""

    k = h.node_count
    if not 4 <= k <= 6:
        raise SchemeError(
            "edge-removal chains need exactly one free pair per class, "
            f"which happens for 4..6 vertices only (got {k})"
        )
    target_key = h.key()
    canon = target_key.canonical_pattern()
    edges = sorted(canon.to_graph().edges())
    if not edges:
        raise SchemeError("the empty pattern admits no edge chain")

    terms: list[tuple[PatternClass, int]] = []
    current = canon
    for i, (u, v) in enumerate(edges):
        cls = class_from_pattern_edges(current, u, [(u, v)])
        terms.append((cls, 1 if i % 2 == 0 else -1))
        current = current.with_edge(u, v, False)

    scheme = DetectionScheme(
        k=k,
        modulus=math.factorial(k),
        lead=automorphism_count(canon),
        terms=tuple(terms),
        target=target_key,
        trials=default_trials(k) if trials is None else trials,
    )
    scheme.validate()
    return scheme


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def augmented_clique_scheme(s: int, k: int, trials: Optional[int] = None) -> DetectionScheme:
    """One-class scheme detecting K_{k−1} plus an extra vertex with s
    clique neighbours."""

    kp = free_pair_count(k)
    lo = (k - 1 + 1) // 2  # ⌈(k−1)/2⌉
    hi = k - 1 - kp
    if not lo <= s <= hi:
        raise SchemeError(
            f"s must lie in [{lo}, {hi}] for k = {k} so that the class "
            "slice stays inside the family and the lead survives (got "
            f"s = {s})"
        )
    if k == 14 and s == 7:
        modulus = 2**9
    elif _is_prime(s + 1):
        modulus = s + 1
    else:
        raise SchemeError(
            f"s + 1 = {s + 1} is not prime and (s, k) = ({s}, {k}) has no "
            "power-of-two fallback"
        )

    member_coefficients = tuple(
        math.comb(kp, j) * augmented_clique_automorphism_count(s + j, k)
        for j in range(kp + 1)
    )
    lead = member_coefficients[0]

    terms: tuple[tuple[PatternClass, int], ...] = ()
    target_key: Optional[UnlabeledPatternKey] = None
    if k <= 7:
        h = augmented_clique(s, k)
        extra = k - 1
        middles = list(range(s, s + kp))       # clique vertices not adjacent to extra
        rest = [v for v in range(k - 1) if v not in middles]
        cls = class_of(h.reordered([extra] + middles + rest))
        spectrum = class_spectrum(cls)
        got = tuple(
            spectrum.alpha_of(augmented_clique(s + j, k).key())
            for j in range(kp + 1)
        )
        if got != member_coefficients:
            raise SchemeError(
                f"spectrum coefficients {got} disagree with the certificate "
                f"{member_coefficients}"
            )
        terms = ((cls, 1),)
        target_key = h.key()

    scheme = DetectionScheme(
        k=k,
        modulus=modulus,
        lead=lead,
        terms=terms,
        target=target_key,
        member_coefficients=member_coefficients,
        trials=default_trials(k) if trials is None else trials,
    )
    scheme.validate()
    return scheme


@dataclass(frozen=True)
class DetectionResult:
    present: bool
    trials_run: int
    error_bound: float
    residue: Optional[int] = None
    trial_index: Optional[int] = None


def miss_bound(k: int, trials: int) -> float:
    """Upper bound on the probability that a present pattern evades
    every trial."""

    return (1.0 - 2.0**-k) ** trials


def detect_pattern_mod(g: Graph, scheme: DetectionScheme, seed: int,
                       trials: Optional[int] = None) -> DetectionResult:
    """Randomised one-sided presence test.

    A PRESENT answer is always correct: with the pattern absent every
    class count collapses mod q on every induced subgraph. An ABSENT
    answer is wrong with probability at most (1 − 2^{−k})^trials.
    """

    if g.directed:
        raise ValueError("host must be undirected")
    if not scheme.terms:
        raise ValueError(
            "scheme carries only a symbolic certificate; patterns above "
            "8 vertices cannot be counted"
        )
    if trials is None:
        trials = scheme.trials
    if trials < 0:
        raise ValueError("trials must be nonnegative")
    q = scheme.modulus
    for i in range(trials):
        sample = random_induced_subgraph(g, split_seed(seed, "detect", i))
        val = 0
        for cls, sign in scheme.terms:
            val = (val + sign * count_class(sample.graph, cls, modulus=q)) % q
        if val != 0:
            return DetectionResult(
                present=True,
                trials_run=i + 1,
                error_bound=0.0,
                residue=val,
                trial_index=i,
            )
    return DetectionResult(
        present=False,
        trials_run=trials,
        error_bound=miss_bound(scheme.k, trials),
    )
