"""Runtime-exponent analysis for degree-bucketed cycle search.

A length-k cycle search that buckets vertices by degree admits plans built
from two primitives: extending a partial reachability table by one bucket
(scan the edges leaving what was found so far), and joining two partial
tables with a Boolean matrix product whose cost comes from fast rectangular
multiplication.  For buckets holding roughly ``m^{d_0}, ..., m^{d_{k-1}}``
vertices, the cheapest plan cost is a piecewise-linear function of the
degree vector ``d``, computed here by an exact dynamic program over cyclic
intervals of bucket positions.

``exponent_table`` fills the table of pairwise plan costs, ``capacity``
reduces it to the single exponent governing the whole search, ``closed_form``
returns the known formulas for the optimum over all degree vectors,
``maximize_capacity`` searches for a costliest vector directly, and
``verify_hard_cases`` replays the documented extremal vectors and confirms
that each meets its bound exactly.

All load-bearing arithmetic uses exact rationals.  Floats appear in exactly
two places: as a screening device inside the grid search (every reported
value is re-derived exactly afterwards) and for display.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

import numpy as np

RationalLike = Union[Fraction, int, float, str]

MIN_OMEGA = Fraction(2)
MAX_OMEGA = Fraction(3)

# Rows per block in the vectorized grid screen; bounds peak memory at
# roughly  rows * k * k * 8  bytes for the cost table.
_CHUNK_ROWS = 65536


def as_rational(value: RationalLike) -> Fraction:
    """Coerce a number to an exact :class:`Fraction`.

    Floats are converted through their shortest decimal representation, so
    ``as_rational(2.373)`` is exactly 2373/1000 rather than the nearest
    binary float.  Strings accept anything ``Fraction`` itself accepts
    ("3/2", "2.25").
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        return Fraction(str(value))
    return Fraction(value)


def _checked_omega(omega: RationalLike) -> Fraction:
    w = as_rational(omega)
    if not MIN_OMEGA <= w <= MAX_OMEGA:
        raise ValueError(f"multiplication exponent must lie in [2, 3], got {w}")
    return w


@dataclass(frozen=True)
class DegreeVector:
    """A cyclic vector of per-bucket degree exponents, each in [0, 1]."""

    d: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "d", tuple(as_rational(x) for x in self.d))
        if len(self.d) < 2:
            raise ValueError("need at least two degree buckets")
        for x in self.d:
            if not Fraction(0) <= x <= Fraction(1):
                raise ValueError(f"bucket exponent {x} outside [0, 1]")

    @property
    def k(self) -> int:
        return len(self.d)

    def rotated(self, shift: int) -> "DegreeVector":
        k = len(self.d)
        return DegreeVector(tuple(self.d[(i + shift) % k] for i in range(k)))

    def mirrored(self) -> "DegreeVector":
        return DegreeVector(tuple(reversed(self.d)))

    def as_floats(self) -> tuple[float, ...]:
        return tuple(float(x) for x in self.d)


DegreeLike = Union[DegreeVector, Sequence[RationalLike]]


def _degree_vector(d: DegreeLike) -> DegreeVector:
    if isinstance(d, DegreeVector):
        return d
    return DegreeVector(tuple(d))


def matmul_cost(a: RationalLike, b: RationalLike, c: RationalLike,
                omega: RationalLike) -> Fraction:
    """Exponent of multiplying an m^a-by-m^b matrix with an m^b-by-m^c one.

    Rectangular multiplication is priced by squaring off the smallest
    dimension:  a + b + c - (3 - omega) * min(a, b, c).
    """
    ra, rb, rc = as_rational(a), as_rational(b), as_rational(c)
    if ra < 0 or rb < 0 or rc < 0:
        raise ValueError("matrix side exponents must be nonnegative")
    w = as_rational(omega)
    return ra + rb + rc - (3 - w) * min(ra, rb, rc)


@dataclass(frozen=True)
class ExponentTable:
    """Pairwise plan costs P[i][j] for ordered bucket pairs (diagonal unused)."""

    degrees: DegreeVector
    omega: Fraction
    P: tuple[tuple[Optional[Fraction], ...], ...]

    def entry(self, i: int, j: int) -> Fraction:
        if i == j:
            raise ValueError("pair cost is defined for distinct buckets only")
        value = self.P[i][j]
        assert value is not None
        return value


def exponent_table(d: DegreeLike, omega: RationalLike) -> ExponentTable:
    """Exact dynamic program for the pairwise plan-cost table.

    P[i][i+1] = 1; longer cyclic intervals take the cheapest of extending
    from either end (cost of the shorter interval plus the degree of the
    newly scanned bucket) or joining two sub-intervals at a split bucket r
    with a rectangular Boolean product.  Intervals are processed in order of
    increasing cyclic length so every reference is already final.
    """
    degrees = _degree_vector(d)
    w = _checked_omega(omega)
    dd = degrees.d
    k = degrees.k
    P: list[list[Optional[Fraction]]] = [[None] * k for _ in range(k)]
    one = Fraction(1)
    for i in range(k):
        P[i][(i + 1) % k] = one
    for span in range(2, k):
        for i in range(k):
            j = (i + span) % k
            before_j = (j - 1) % k
            after_i = (i + 1) % k
            best = min(P[i][before_j] + dd[before_j], P[after_i][j] + dd[after_i])
            for step in range(1, span):
                r = (i + step) % k
                join = matmul_cost(1 - dd[i], 1 - dd[r], 1 - dd[j], w)
                candidate = max(P[i][r], P[r][j], join)
                if candidate < best:
                    best = candidate
            P[i][j] = best
    return ExponentTable(degrees=degrees, omega=w,
                         P=tuple(tuple(row) for row in P))


def capacity(d: DegreeLike, omega: RationalLike) -> Fraction:
    """Exponent of the full search on one degree class.

    The scan rule handles any single bucket at exponent 2 - d_i; otherwise
    the cycle must be closed through some ordered pair of buckets, paying
    the dearer of the two interval costs.  The result is the cheapest of all
    those options, exactly.
    """
    table = exponent_table(d, omega)
    dd = table.degrees.d
    k = len(dd)
    best = min(2 - x for x in dd)
    for i in range(k):
        for j in range(i + 1, k):
            pair = max(table.entry(i, j), table.entry(j, i))
            if pair < best:
                best = pair
    return best


# --------------------------------------------------------------------------
# Closed forms for the optimum over all degree vectors.

K6_BREAKPOINTS = (Fraction(13, 6), Fraction(9, 4), Fraction(16, 7), Fraction(5, 2))


@dataclass(frozen=True)
class ClosedFormResult:
    k: int
    omega: Fraction
    value: Fraction
    regime: str


def _even_bound(k: int, w: Fraction) -> Fraction:
    slack = Fraction(4, k)
    return (k * w - slack) / (2 * w + k - 2 - slack)


def closed_form(k: int, omega: RationalLike) -> ClosedFormResult:
    """Best known value of the optimal search exponent for length-k cycles.

    Odd lengths have the uniform-class formula, capped at 2 - 2/(k+1) once
    the multiplication exponent exceeds 2k/(k-1) (the uncapped formula
    overstates the optimum there).  k = 4 and k = 6 have exact piecewise
    formulas; other even lengths get an upper bound that is tight at
    omega = 2.  k = 6 beyond 5/2 falls back to that same even-length bound.
    """
    if k < 3:
        raise ValueError("cycle length must be at least 3")
    w = _checked_omega(omega)
    if k % 2 == 1:
        value = w * (k + 1) / (2 * w + k - 1)
        if w > Fraction(2 * k, k - 1):
            value = min(value, 2 - Fraction(2, k + 1))
            regime = "odd-cap"
        else:
            regime = "odd"
    elif k == 4:
        value = (4 * w - 1) / (2 * w + 1)
        regime = "k4"
    elif k == 6:
        b1, b2, b3, b4 = K6_BREAKPOINTS
        if w <= b1:
            value, regime = (10 * w - 3) / (4 * w + 3), "k6-piece-1"
        elif w <= b2:
            value, regime = (22 - 4 * w) / (17 - 4 * w), "k6-piece-2"
        elif w <= b3:
            value, regime = (11 * w - 2) / (4 * w + 5), "k6-piece-3"
        elif w <= b4:
            value, regime = (10 - w) / (7 - w), "k6-piece-4"
        else:
            value, regime = _even_bound(6, w), "even-bound"
    else:
        value, regime = _even_bound(k, w), "even-bound"
    assert Fraction(1) <= value <= Fraction(2), "exponent escaped [1, 2]"
    return ClosedFormResult(k=k, omega=w, value=value, regime=regime)


# --------------------------------------------------------------------------
# Documented extremal degree classes ("hard cases").

@dataclass(frozen=True)
class HardCase:
    """An extremal degree class together with the bound it is known to meet."""

    k: int
    regime: str
    omega: Fraction
    degrees: DegreeVector
    bound: Fraction


@dataclass(frozen=True)
class HardCaseCheck:
    case: HardCase
    value: Fraction
    ok: bool


def _clamp(w: Fraction, lo: Fraction, hi: Fraction) -> Fraction:
    return min(max(w, lo), hi)


def odd_hard_case(k: int, omega: RationalLike) -> HardCase:
    """Uniform class for odd k; switches to the capped class past 2k/(k-1)."""
    if k < 3 or k % 2 == 0:
        raise ValueError("odd cycle length of at least 3 required")
    w = _checked_omega(omega)
    t = (k - 1) // 2
    if w > Fraction(2 * k, k - 1):
        delta = Fraction(2, k + 1)
        bound = 2 - Fraction(2, k + 1)
        regime = "odd-cap"
    else:
        delta = (w - 1) / (w + t)
        bound = w * (t + 1) / (w + t)
        regime = "odd-uniform"
    return HardCase(k, regime, w, DegreeVector((delta,) * k), bound)


def k4_hard_case(omega: RationalLike) -> HardCase:
    """Extremal class (d, d, d/2, d/2) for k = 4, valid up to omega = 5/2."""
    w = _clamp(_checked_omega(omega), MIN_OMEGA, Fraction(5, 2))
    delta = (2 * w - 2) / (2 * w + 1)
    d = (delta, delta, delta / 2, delta / 2)
    return HardCase(4, "k4", w, DegreeVector(d), 1 + delta)


_K6_REGIME_SPANS = (
    (MIN_OMEGA, K6_BREAKPOINTS[0]),
    (K6_BREAKPOINTS[0], K6_BREAKPOINTS[1]),
    (K6_BREAKPOINTS[1], K6_BREAKPOINTS[2]),
    (K6_BREAKPOINTS[2], K6_BREAKPOINTS[3]),
)


def k6_hard_case(regime: int, omega: RationalLike) -> HardCase:
    """One of the four extremal classes for k = 6, clamped to its own regime.

    Each class is stated in terms of the target bound B; at the regime
    boundaries adjacent formulas agree, so clamping an out-of-range omega to
    the nearest endpoint keeps the class/bound pair consistent.
    """
    if regime not in (1, 2, 3, 4):
        raise ValueError("regime index must be 1..4")
    lo, hi = _K6_REGIME_SPANS[regime - 1]
    w = _clamp(_checked_omega(omega), lo, hi)
    b = closed_form(6, w).value
    if regime == 1:
        delta = (b - 1) / 2
        d = (4 * delta / 3, delta, delta,
             2 * delta / 3, 2 * delta / 3, 2 * delta / 3)
    elif regime == 2:
        d = (2 - b, (7 * b - 10) / 4, (6 - 3 * b) / 4,
             (2 - b) / 2, (2 - b) / 2, 2 * b - 3)
    elif regime == 3:
        delta = (b - 1) / 2
        d = (8 * delta / 7, 8 * delta / 7, 6 * delta / 7,
             4 * delta / 7, 4 * delta / 7, 6 * delta / 7)
    else:
        d = (2 - b, 2 - b, 2 * b - 3, (2 - b) / 2, (2 - b) / 2, 2 * b - 3)
    return HardCase(6, f"k6-regime-{regime}", w, DegreeVector(d), b)


def even_hard_case(k: int) -> HardCase:
    """Extremal class for even k at omega = 2, meeting the even-length bound."""
    if k < 4 or k % 2 == 1:
        raise ValueError("even cycle length of at least 4 required")
    t = k // 2 - 1
    h = t + 1
    delta = Fraction(h, t * h + h + t)
    beta = delta * t / h
    d = (2 * beta,) + (delta,) * t + (beta,) * h
    return HardCase(k, "even-tight", Fraction(2), DegreeVector(d), 1 + t * delta)


def documented_hard_cases(omega: RationalLike) -> tuple[HardCase, ...]:
    """All extremal classes checked by :func:`verify_hard_cases`.

    Odd lengths 3..9 and k = 4 are instantiated at the given omega (clamped
    into each class's validity range); the four k = 6 regimes are clamped to
    their own omega intervals; even lengths 4..8 are pinned at omega = 2.
    """
    w = _checked_omega(omega)
    cases = [odd_hard_case(k, w) for k in (3, 5, 7, 9)]
    cases.append(k4_hard_case(w))
    cases.extend(k6_hard_case(r, w) for r in (1, 2, 3, 4))
    cases.extend(even_hard_case(k) for k in (4, 6, 8))
    return tuple(cases)


def verify_hard_cases(omega: RationalLike) -> tuple[HardCaseCheck, ...]:
    """Recompute each documented extremal class and compare bounds exactly."""
    checks = []
    for case in documented_hard_cases(omega):
        value = capacity(case.degrees, case.omega)
        checks.append(HardCaseCheck(case=case, value=value,
                                    ok=value == case.bound))
    return tuple(checks)


# --------------------------------------------------------------------------
# Direct maximization over degree vectors.

@dataclass(frozen=True)
class SearchBudget:
    """Knobs for :func:`maximize_capacity`.

    grid_step must divide 1; the coarse screen enumerates multiples of it
    with the first coordinate canonicalized to a maximum (rotations are
    equivalent).  refine_limit is the smallest coordinate-ascent step; the
    ascent halves its step from grid_step/2 down to this limit.  keep bounds
    how many screened grid points are re-derived exactly, and threads > 1
    fans the screen out over a thread pool (results merge in a fixed order,
    so the outcome is identical).
    """

    grid_step: Fraction = Fraction(1, 8)
    refine_limit: Fraction = Fraction(1, 1024)
    keep: int = 24
    threads: int = 1


def _search_seeds(k: int, w: Fraction) -> list[DegreeVector]:
    seeds = []
    if k % 2 == 1:
        seeds.append(odd_hard_case(k, w).degrees)
    else:
        seeds.append(even_hard_case(k).degrees)
        if k == 4:
            seeds.append(k4_hard_case(w).degrees)
        if k == 6:
            seeds.extend(k6_hard_case(r, w).degrees for r in (1, 2, 3, 4))
    return seeds


def _grid_chunks(k: int, levels: int, chunk_rows: int):
    """Yield (top, base, lo, hi) index blocks of the canonicalized grid."""
    for top in range(levels + 1):
        base = top + 1
        total = base ** (k - 1)
        for lo in range(0, total, chunk_rows):
            yield top, base, lo, min(lo + chunk_rows, total)


def _decode_chunk(k: int, top: int, base: int, lo: int, hi: int) -> np.ndarray:
    """Expand a flat index range into grid-level rows (first column = top)."""
    idx = np.arange(lo, hi, dtype=np.int64)
    out = np.empty((hi - lo, k), dtype=np.int64)
    out[:, 0] = top
    for col in range(k - 1, 0, -1):
        out[:, col] = idx % base
        idx //= base
    return out


def _batch_capacity(levels: np.ndarray, step: float, omega: float) -> np.ndarray:
    """Float replica of :func:`capacity` over many degree vectors at once.

    Used only to rank grid points; anything that survives ranking is
    re-derived with exact rationals before it can be reported.
    """
    d = levels.astype(np.float64) * step
    n, k = d.shape
    high = 1.0 - d
    P = np.full((n, k, k), np.inf)
    for i in range(k):
        P[:, i, (i + 1) % k] = 1.0
    for span in range(2, k):
        for i in range(k):
            j = (i + span) % k
            before_j = (j - 1) % k
            after_i = (i + 1) % k
            best = P[:, i, before_j] + d[:, before_j]
            np.minimum(best, P[:, after_i, j] + d[:, after_i], out=best)
            for step_r in range(1, span):
                r = (i + step_r) % k
                smallest = np.minimum(np.minimum(high[:, i], high[:, r]),
                                      high[:, j])
                join = high[:, i] + high[:, r] + high[:, j] \
                    - (3.0 - omega) * smallest
                candidate = np.maximum(np.maximum(P[:, i, r], P[:, r, j]), join)
                np.minimum(best, candidate, out=best)
            P[:, i, j] = best
    cap = 2.0 - d.max(axis=1)
    for i in range(k):
        for j in range(i + 1, k):
            np.minimum(cap, np.maximum(P[:, i, j], P[:, j, i]), out=cap)
    return cap


def maximize_capacity(k: int, omega: RationalLike,
                      budget: SearchBudget | None = None,
                      ) -> tuple[DegreeVector, Fraction]:
    """Search for a costliest degree vector; the result is a certified bound.

    Three stages: exact evaluation of the documented extremal classes, a
    vectorized float screen over the canonical coarse grid, and exact
    coordinate ascent with halving steps from the best point found.  The
    returned value is capacity(d) re-derived in exact rationals, so it is a
    true lower bound on the optimum regardless of screening error.  Ties are
    broken toward the lexicographically smallest vector.
    """
    if not 3 <= k <= 8:
        raise ValueError("search supports cycle lengths 3 through 8")
    w = _checked_omega(omega)
    if budget is None:
        budget = SearchBudget()
    step = as_rational(budget.grid_step)
    inverse = Fraction(1) / step
    if inverse.denominator != 1 or inverse < 1:
        raise ValueError("grid step must be the reciprocal of a positive integer")
    levels = inverse.numerator

    pool: list[tuple[Fraction, tuple[Fraction, ...]]] = []
    for seed in _search_seeds(k, w):
        pool.append((capacity(seed, w), seed.d))

    omega_f = float(w)
    step_f = float(step)

    def screen(job):
        top, base, lo, hi = job
        rows = _decode_chunk(k, top, base, lo, hi)
        caps = _batch_capacity(rows, step_f, omega_f)
        keep = min(budget.keep, caps.shape[0])
        if keep < caps.shape[0]:
            order = np.argpartition(-caps, keep - 1)[:keep]
        else:
            order = np.arange(caps.shape[0])
        return [(float(caps[i]), tuple(int(x) for x in rows[i]))
                for i in order]

    jobs = list(_grid_chunks(k, levels, _CHUNK_ROWS))
    if budget.threads > 1:
        with ThreadPoolExecutor(max_workers=budget.threads) as pool_exec:
            screened = list(pool_exec.map(screen, jobs))
    else:
        screened = [screen(job) for job in jobs]
    candidates = [row for rows in screened for row in rows]
    candidates.sort(key=lambda item: (-item[0], item[1]))
    if candidates:
        best_float = candidates[0][0]
        for value, row in candidates[:budget.keep]:
            if value < best_float - 1e-6:
                break
            d = tuple(Fraction(level) * step for level in row)
            pool.append((capacity(d, w), d))

    pool.sort(key=lambda item: (-item[0], item[1]))
    best_value, best_d = pool[0]

    current = list(best_d)
    current_value = best_value
    ascent_step = step / 2
    limit = as_rational(budget.refine_limit)
    while ascent_step >= limit:
        improved = True
        while improved:
            improved = False
            for i in range(k):
                for move in (ascent_step, -ascent_step):
                    trial = current[i] + move
                    if not Fraction(0) <= trial <= Fraction(1):
                        continue
                    trial_d = tuple(current[:i]) + (trial,) + tuple(current[i + 1:])
                    value = capacity(trial_d, w)
                    if value > current_value:
                        current_value = value
                        current = list(trial_d)
                        improved = True
        ascent_step = ascent_step / 2

    return DegreeVector(tuple(current)), current_value
