"""Extremal searches over pairs of codes.

``exhaustive_extremes`` finds the exact extremes of the agreement probability
(or average distance) over all code pairs of given sizes, pruning by symmetry:
the first code ranges over orbit representatives, the second over everything.
Float scores select near-optimal candidates, exact rational re-evaluation
breaks ties, and witnesses are reported as jointly canonicalized pairs.

``local_search`` scales to larger blocklengths with steepest single-swap
ascent from explicit constructions and random restarts; its value is a valid
one-sided bound, nothing more.
"""

from __future__ import annotations

import itertools
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .codes import (
    BinaryCode,
    canonical_pair,
    make_code,
    star,
    subcube,
    hamming_ball,
    _word_maps,
)
from .distance import distance_distribution, distance_moment
from .errors import (
    DimensionRangeError,
    ParameterRangeError,
    SearchBudgetError,
)
from .fourier import fwht
from .model import collision_prob

RHO_CERTIFICATION_GRID = (0.1, 0.3, 0.5, 0.7, 0.9)
MAX_EXHAUSTIVE_DIM = 4
MAX_LOCAL_DIM = 16
_SCORE_TOL = 1e-9
_TIME_BUDGET_S = 600.0
_CANONICAL_WITNESS_DIM = 6


def _thread_count() -> int:
    raw = os.environ.get("NISIM_THREADS", "")
    if not raw:
        return 1
    try:
        count = int(raw)
    except ValueError as exc:
        raise ParameterRangeError(f"NISIM_THREADS must be a positive integer, got {raw!r}") from exc
    if count < 1:
        raise ParameterRangeError(f"NISIM_THREADS must be a positive integer, got {count}")
    return count


@dataclass(frozen=True)
class OracleResult:
    """Outcome of an extremal search.

    Exactly one objective's fields are populated: (max_q, min_q) for the
    agreement probability, (max_d, min_d) for average distance.  A local
    search fills only the requested direction.  ``wall_time_s`` is measured
    and therefore excluded from serialized output.
    """

    n: int
    m: int
    n_second: int
    rho: float | None
    objective: str
    exhaustive: bool
    max_q: float | None = None
    min_q: float | None = None
    max_d: float | None = None
    min_d: float | None = None
    witness_max: tuple[BinaryCode, BinaryCode] | None = None
    witness_min: tuple[BinaryCode, BinaryCode] | None = None
    pairs_evaluated: int = 0
    orbits_enumerated: int = 0
    wall_time_s: float = 0.0

    def to_json_dict(self) -> dict:
        from .codes import format_code

        def pair(w):
            if w is None:
                return None
            return {"first": format_code(w[0]), "second": format_code(w[1])}

        return {
            "n": self.n,
            "m": self.m,
            "n_second": self.n_second,
            "rho": self.rho,
            "objective": self.objective,
            "exhaustive": self.exhaustive,
            "max_q": self.max_q,
            "min_q": self.min_q,
            "max_d": self.max_d,
            "min_d": self.min_d,
            "witness_max": pair(self.witness_max),
            "witness_min": pair(self.witness_min),
            "pairs_evaluated": self.pairs_evaluated,
            "orbits_enumerated": self.orbits_enumerated,
        }


def _orbit_reps(n: int, m: int) -> list[tuple[int, ...]]:
    """Lexicographically first representative of each symmetry orbit of
    m-subsets of the n-cube."""
    maps = _word_maps(n).astype(np.int64)
    weights = (np.int64(1) << (n * np.arange(m, dtype=np.int64))).astype(np.uint64)
    seen: set[int] = set()
    reps = []
    for combo in itertools.combinations(range(1 << n), m):
        key = 0
        for j, w in enumerate(combo):
            key |= w << (n * j)
        if key in seen:
            continue
        reps.append(combo)
        imgs = np.sort(maps[:, combo], axis=1).astype(np.uint64)
        seen.update((imgs * weights).sum(axis=1).tolist())
    return reps


def _collision_kernel(n: int, rho: float) -> np.ndarray:
    words = np.arange(1 << n, dtype=np.int64)
    dists = np.bitwise_count(words[:, None] ^ words[None, :])
    d = np.arange(n + 1, dtype=np.float64)
    pw = ((1.0 - rho) / 4.0) ** d * ((1.0 + rho) / 4.0) ** (n - d)
    return pw[dists]


def _distance_kernel(n: int) -> np.ndarray:
    words = np.arange(1 << n, dtype=np.int64)
    return np.bitwise_count(words[:, None] ^ words[None, :]).astype(np.int64)


def _exact_collision(a_words, b_words, rho: float, n: int) -> Fraction:
    aw = np.array(a_words, dtype=np.int64)
    bw = np.array(b_words, dtype=np.int64)
    counts = np.bincount(
        np.bitwise_count(aw[:, None] ^ bw[None, :]).ravel(), minlength=n + 1
    )
    r = Fraction(rho)
    lo, hi = (1 - r) / 4, (1 + r) / 4
    total = Fraction(0)
    for d, c in enumerate(counts.tolist()):
        if c:
            total += c * lo**d * hi ** (n - d)
    return total


class _Winnow:
    """Keeps the running float optimum and every candidate within tolerance."""

    def __init__(self, sign: int, tol: float):
        self.sign = sign
        self.tol = tol
        self.best = -math.inf
        self.cands: list[tuple[tuple[int, ...], tuple[int, ...]]] = []

    def offer(self, score_vec: np.ndarray, a_words, combos: np.ndarray) -> None:
        vec = score_vec * self.sign
        top = float(vec.max())
        if top > self.best + self.tol:
            self.best = top
            self.cands.clear()
        elif top < self.best - self.tol:
            return
        self.best = max(self.best, top)
        for idx in np.flatnonzero(vec >= self.best - self.tol):
            self.cands.append((tuple(a_words), tuple(int(w) for w in combos[idx])))

    def merge(self, other: "_Winnow") -> None:
        if other.best > self.best + self.tol:
            self.best = other.best
            self.cands = list(other.cands)
        elif other.best >= self.best - self.tol:
            self.best = max(self.best, other.best)
            self.cands.extend(other.cands)


def _scan_reps(reps, kernel, combos, tol):
    hi = _Winnow(+1, tol)
    lo = _Winnow(-1, tol)
    pairs = 0
    for a_words in reps:
        col = kernel[list(a_words)].sum(axis=0)
        scores = col[combos].sum(axis=1)
        hi.offer(scores, a_words, combos)
        lo.offer(scores, a_words, combos)
        pairs += combos.shape[0]
    return hi, lo, pairs


def _final_winnow_prune(win: _Winnow) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    out = []
    seen = set()
    for a_words, b_words in win.cands:
        key = (a_words, b_words)
        if key not in seen:
            seen.add(key)
            out.append(key)
    return out


def _pick_witness(cands, n):
    """Among exact-optimal candidates, return the smallest joint canonical pair."""
    best_key = None
    best_pair = None
    for a_words, b_words in cands:
        ca, cb = canonical_pair(BinaryCode(n, a_words), BinaryCode(n, b_words))
        key = (ca.words, cb.words)
        if best_key is None or key < best_key:
            best_key = key
            best_pair = (ca, cb)
    return best_pair


def exhaustive_extremes(
    n: int, m: int, n_second: int, rho: float | None, objective: str = "collision"
) -> OracleResult:
    """Exact extremes over every pair (|A| = m, |B| = n_second) of the n-cube.

    Refuses dimensions above 4 (the search space past that exceeds the time
    budget by orders of magnitude; use :func:`local_search` instead).
    """
    if not isinstance(n, int) or n < 1:
        raise DimensionRangeError(f"dimension must be a positive integer, got {n}")
    if n > MAX_EXHAUSTIVE_DIM:
        raise SearchBudgetError(
            f"exhaustive search at dimension {n} would exceed the {_TIME_BUDGET_S:.0f}s "
            f"budget; use local_search for one-sided bounds"
        )
    size = 1 << n
    if not (1 <= m <= size and 1 <= n_second <= size):
        raise ParameterRangeError(f"code sizes must be in 1..{size}, got ({m}, {n_second})")
    if objective not in ("collision", "distance"):
        raise ParameterRangeError(f"objective must be collision or distance, got {objective!r}")
    if objective == "collision":
        if rho is None:
            raise ParameterRangeError("collision objective needs a correlation value")
        if not -1.0 <= rho <= 1.0:
            raise ParameterRangeError(f"correlation must be in [-1, 1], got {rho}")
    else:
        rho = None

    start = time.perf_counter()
    reps = _orbit_reps(n, m)
    combos = np.array(list(itertools.combinations(range(size), n_second)), dtype=np.int64)
    projected = len(reps) * combos.shape[0] * 5e-8
    if projected > _TIME_BUDGET_S:
        raise SearchBudgetError(
            f"projected scan time {projected:.0f}s exceeds the {_TIME_BUDGET_S:.0f}s budget"
        )

    if objective == "collision":
        kernel = _collision_kernel(n, rho)
        tol = _SCORE_TOL
    else:
        kernel = _distance_kernel(n)
        tol = 0.0

    threads = _thread_count()
    if threads == 1 or len(reps) < 2 * threads:
        hi, lo, pairs = _scan_reps(reps, kernel, combos, tol)
    else:
        chunks = [reps[i::threads] for i in range(threads)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda ch: _scan_reps(ch, kernel, combos, tol), chunks))
        hi, lo, pairs = parts[0]
        for h2, l2, p2 in parts[1:]:
            hi.merge(h2)
            lo.merge(l2)
            pairs += p2

    scale = m * n_second

    def resolve(win: _Winnow, sign: int):
        cands = _final_winnow_prune(win)
        if objective == "collision":
            exact = [(c, _exact_collision(c[0], c[1], rho, n)) for c in cands]
            best = max(v * sign for _, v in exact)
            winners = [c for c, v in exact if v * sign == best]
        else:
            # integer scores: the winnow already kept exact optima only
            winners = cands
        pair = _pick_witness(winners, n)
        if objective == "collision":
            value = collision_prob(pair[0], pair[1], rho)
        else:
            value = distance_moment(distance_distribution(pair[0], pair[1]), 1)
        return value, pair

    hi_value, hi_pair = resolve(hi, +1)
    lo_value, lo_pair = resolve(lo, -1)
    elapsed = time.perf_counter() - start

    common = dict(
        n=n,
        m=m,
        n_second=n_second,
        rho=rho,
        objective=objective,
        exhaustive=True,
        witness_max=hi_pair,
        witness_min=lo_pair,
        pairs_evaluated=pairs,
        orbits_enumerated=len(reps),
        wall_time_s=elapsed,
    )
    if objective == "collision":
        return OracleResult(max_q=hi_value, min_q=lo_value, **common)
    return OracleResult(max_d=hi_value, min_d=lo_value, **common)


def exhaustive_distance_extremes(n: int, m: int, n_second: int) -> OracleResult:
    """Exact extremes of the average distance over pairs of given sizes."""
    return exhaustive_extremes(n, m, n_second, None, objective="distance")


def _weight_table(n: int, rho: float) -> np.ndarray:
    d = np.arange(n + 1, dtype=np.float64)
    return ((1.0 - rho) / 4.0) ** d * ((1.0 + rho) / 4.0) ** (n - d)


def _xor_convolve(indicator: np.ndarray, g_table: np.ndarray) -> np.ndarray:
    size = indicator.shape[0]
    return fwht(fwht(indicator) * fwht(g_table)) / size


class _SwapClimber:
    """Steepest single-codeword-swap ascent on the agreement probability."""

    def __init__(self, n: int, rho: float, direction: str):
        self.n = n
        self.size = 1 << n
        self.sign = 1.0 if direction == "max" else -1.0
        self.words = np.arange(self.size, dtype=np.int64)
        self.g = _weight_table(n, rho)[np.bitwise_count(self.words)]

    def _row(self, x: int) -> np.ndarray:
        return self.g[np.bitwise_count(self.words ^ x)]

    def climb(self, a_sel: np.ndarray, b_sel: np.ndarray) -> tuple[np.ndarray, np.ndarray, int]:
        w_b = _xor_convolve(b_sel.astype(np.float64), self.g)
        w_a = _xor_convolve(a_sel.astype(np.float64), self.g)
        steps = 0
        for _ in range(10000):
            delta, move = 0.0, None
            if not a_sel.all():
                gain = self.sign * w_b
                x_in = int(np.argmax(np.where(a_sel, -np.inf, gain)))
                x_out = int(np.argmin(np.where(a_sel, gain, np.inf)))
                d = gain[x_in] - gain[x_out]
                if d > delta:
                    delta, move = d, ("a", x_in, x_out)
            if not b_sel.all():
                gain = self.sign * w_a
                y_in = int(np.argmax(np.where(b_sel, -np.inf, gain)))
                y_out = int(np.argmin(np.where(b_sel, gain, np.inf)))
                d = gain[y_in] - gain[y_out]
                if d > delta:
                    delta, move = d, ("b", y_in, y_out)
            if move is None or delta <= 1e-15:
                break
            side, w_in, w_out = move
            steps += 1
            if side == "a":
                a_sel[w_in] = True
                a_sel[w_out] = False
                w_a += self._row(w_in) - self._row(w_out)
            else:
                b_sel[w_in] = True
                b_sel[w_out] = False
                w_b += self._row(w_in) - self._row(w_out)
        return a_sel, b_sel, steps


def local_search(
    n: int,
    m: int,
    n_second: int,
    rho: float,
    direction: str = "max",
    seed: int = 0,
    iters: int = 20,
) -> OracleResult:
    """Seeded hill climbing over code pairs; returns a one-sided bound.

    Starts from the explicit subcube constructions when the sizes are powers
    of two (so the result never falls below them) plus ``iters`` random
    restarts.  Deterministic for a fixed seed.
    """
    if not isinstance(n, int) or n < 1 or n > MAX_LOCAL_DIM:
        raise DimensionRangeError(f"local search supports dimensions 1..{MAX_LOCAL_DIM}, got {n}")
    size = 1 << n
    if not (1 <= m <= size and 1 <= n_second <= size):
        raise ParameterRangeError(f"code sizes must be in 1..{size}, got ({m}, {n_second})")
    if not -1.0 <= rho <= 1.0:
        raise ParameterRangeError(f"correlation must be in [-1, 1], got {rho}")
    if direction not in ("max", "min"):
        raise ParameterRangeError(f"direction must be max or min, got {direction!r}")
    if iters < 0:
        raise ParameterRangeError(f"restart count must be nonnegative, got {iters}")

    start = time.perf_counter()
    rng = np.random.default_rng(seed)
    climber = _SwapClimber(n, rho, direction)
    starts: list[tuple[np.ndarray, np.ndarray]] = []

    def selector(word_list) -> np.ndarray:
        sel = np.zeros(size, dtype=bool)
        sel[np.array(word_list, dtype=np.int64)] = True
        return sel

    if m & (m - 1) == 0 and n_second & (n_second - 1) == 0:
        pin_a = n - m.bit_length() + 1
        pin_b = n - n_second.bit_length() + 1
        a0 = subcube(n, pin_a)
        b0 = subcube(n, pin_b) if direction == "max" else star(subcube(n, pin_b))
        starts.append((selector(a0.words), selector(b0.words)))
    for _ in range(iters):
        starts.append(
            (
                selector(rng.permutation(size)[:m]),
                selector(rng.permutation(size)[:n_second]),
            )
        )
    if not starts:
        starts.append((selector(range(m)), selector(range(n_second))))

    sign = 1.0 if direction == "max" else -1.0
    best_value = None
    best_pair = None
    best_key = None
    total_steps = 0
    for a_sel, b_sel in starts:
        a_sel, b_sel, steps = climber.climb(a_sel.copy(), b_sel.copy())
        total_steps += steps + 1
        code_a = make_code(n, np.flatnonzero(a_sel).tolist())
        code_b = make_code(n, np.flatnonzero(b_sel).tolist())
        value = collision_prob(code_a, code_b, rho)
        if n <= _CANONICAL_WITNESS_DIM:
            code_a, code_b = canonical_pair(code_a, code_b)
        key = (code_a.words, code_b.words)
        better = best_value is None or value * sign > best_value * sign + 1e-15
        tied = best_value is not None and abs(value - best_value) <= 1e-15
        if better or (tied and key < best_key):
            best_value, best_pair, best_key = value, (code_a, code_b), key
    elapsed = time.perf_counter() - start

    common = dict(
        n=n,
        m=m,
        n_second=n_second,
        rho=rho,
        objective="collision",
        exhaustive=False,
        pairs_evaluated=total_steps,
        orbits_enumerated=0,
        wall_time_s=elapsed,
    )
    if direction == "max":
        return OracleResult(max_q=best_value, witness_max=best_pair, **common)
    return OracleResult(min_q=best_value, witness_min=best_pair, **common)


def construction_value(kind: str, n: int, i: int, rho: float) -> float:
    """Agreement probability of a named explicit construction.

    ``symmetric-subcube``: both codes pin the first i coordinates to 1, giving
    ((1+rho)/4)^i.  ``antisymmetric-subcube``: the second code is the
    coordinate-wise reflection, giving ((1-rho)/4)^i.  ``hamming-ball-pair``:
    both codes are the radius-i ball around the all-ones word.
    """
    if not -1.0 <= rho <= 1.0:
        raise ParameterRangeError(f"correlation must be in [-1, 1], got {rho}")
    if kind == "symmetric-subcube":
        a = subcube(n, i)
        return collision_prob(a, a, rho)
    if kind == "antisymmetric-subcube":
        a = subcube(n, i)
        return collision_prob(a, star(a), rho)
    if kind == "hamming-ball-pair":
        ball = hamming_ball(n, (1 << n) - 1, i)
        return collision_prob(ball, ball, rho)
    raise ParameterRangeError(
        f"kind must be symmetric-subcube, antisymmetric-subcube, or hamming-ball-pair, got {kind!r}"
    )
