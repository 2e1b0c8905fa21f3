"""Subsets of the Boolean hypercube and their symmetries.

A code is a nonempty set of n-bit words, stored as a strictly increasing tuple
of integers.  Bit i of a word is coordinate i+1 of the corresponding point of
{-1,+1}^n under the convention bit=1 <-> +1.  The symmetry group of the cube
(coordinate permutations composed with coordinate flips) acts on codes; for
small n we can canonicalize a code, or a pair of codes jointly, to a
lexicographically minimal orbit representative.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatchError,
    DimensionRangeError,
    EmptyCodeError,
    FormatError,
    ParameterRangeError,
    WordRangeError,
)

MAX_DIM = 64
MAX_TRANSFORM_DIM = 24
MAX_CANONICAL_DIM = 6


@dataclass(frozen=True)
class BinaryCode:
    """A nonempty subset of {0,1}^n, words sorted strictly increasing."""

    n: int
    words: tuple[int, ...]

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1 or self.n > MAX_DIM:
            raise DimensionRangeError(f"dimension must be in 1..{MAX_DIM}, got {self.n}")
        if len(self.words) == 0:
            raise EmptyCodeError("a code needs at least one word")
        limit = 1 << self.n
        prev = -1
        for w in self.words:
            if not isinstance(w, int) or w < 0 or w >= limit:
                raise WordRangeError(f"word {w} out of range for dimension {self.n}")
            if w <= prev:
                raise WordRangeError("words must be strictly increasing")
            prev = w

    @property
    def size(self) -> int:
        return len(self.words)

    @property
    def density(self) -> float:
        """Fraction of the cube covered, |A| / 2^n."""
        return len(self.words) / (1 << self.n)

    def word_array(self) -> np.ndarray:
        return np.array(self.words, dtype=np.int64)

    def __contains__(self, word: int) -> bool:
        i = np.searchsorted(self.word_array(), word)
        return i < len(self.words) and self.words[i] == word


def make_code(n: int, words) -> BinaryCode:
    """Build a code from an iterable of words, deduplicating and sorting."""
    if not isinstance(n, int) or n < 1 or n > MAX_DIM:
        raise DimensionRangeError(f"dimension must be in 1..{MAX_DIM}, got {n}")
    ws = sorted(set(int(w) for w in words))
    if not ws:
        raise EmptyCodeError("a code needs at least one word")
    return BinaryCode(n, tuple(ws))


def complement(code: BinaryCode) -> BinaryCode:
    """All words of the cube not in the code.  Errors if the code is the full cube."""
    total = 1 << code.n
    if code.size == total:
        raise EmptyCodeError("complement of the full cube is empty")
    mask = np.ones(total, dtype=bool)
    mask[code.word_array()] = False
    return BinaryCode(code.n, tuple(np.flatnonzero(mask).tolist()))


def star(code: BinaryCode) -> BinaryCode:
    """Flip every coordinate of every word (antipodal image of the code)."""
    full = (1 << code.n) - 1
    return BinaryCode(code.n, tuple(sorted(w ^ full for w in code.words)))


def subcube(n: int, k: int) -> BinaryCode:
    """The 2^(n-k) words whose first k coordinates are all 1."""
    if not isinstance(n, int) or n < 1 or n > MAX_DIM:
        raise DimensionRangeError(f"dimension must be in 1..{MAX_DIM}, got {n}")
    if not isinstance(k, int) or k < 0 or k > n:
        raise ParameterRangeError(f"pinned-coordinate count must be in 0..{n}, got {k}")
    low = (1 << k) - 1
    return BinaryCode(n, tuple(low | (m << k) for m in range(1 << (n - k))))


def hamming_ball(n: int, center: int, radius: int) -> BinaryCode:
    """All words within the given Hamming distance of the center word."""
    if not isinstance(n, int) or n < 1 or n > MAX_TRANSFORM_DIM:
        raise DimensionRangeError(
            f"dimension must be in 1..{MAX_TRANSFORM_DIM} for ball enumeration, got {n}"
        )
    if center < 0 or center >= (1 << n):
        raise WordRangeError(f"center {center} out of range for dimension {n}")
    if radius < 0 or radius > n:
        raise ParameterRangeError(f"radius must be in 0..{n}, got {radius}")
    dist = np.bitwise_count(np.arange(1 << n, dtype=np.int64) ^ center)
    return BinaryCode(n, tuple(np.flatnonzero(dist <= radius).tolist()))


@dataclass(frozen=True)
class CubeSymmetry:
    """A hypercube symmetry: permute coordinates, then flip a subset of them.

    ``perm[i]`` is the position that bit i is sent to; ``flips`` is XORed into
    the permuted word.
    """

    perm: tuple[int, ...]
    flips: int

    def __post_init__(self):
        n = len(self.perm)
        if n < 1 or n > MAX_DIM:
            raise DimensionRangeError(f"permutation length must be in 1..{MAX_DIM}")
        if sorted(self.perm) != list(range(n)):
            raise ParameterRangeError(f"{self.perm} is not a permutation of 0..{n - 1}")
        if self.flips < 0 or self.flips >= (1 << n):
            raise WordRangeError(f"flip mask {self.flips} out of range for dimension {n}")

    @property
    def n(self) -> int:
        return len(self.perm)

    def apply(self, word: int) -> int:
        out = 0
        for i, p in enumerate(self.perm):
            out |= ((word >> i) & 1) << p
        return out ^ self.flips


def apply_symmetry(g: CubeSymmetry, code: BinaryCode) -> BinaryCode:
    if g.n != code.n:
        raise DimensionMismatchError(f"symmetry on {g.n} bits applied to {code.n}-bit code")
    return BinaryCode(code.n, tuple(sorted(g.apply(w) for w in code.words)))


def symmetry_group(n: int) -> tuple[CubeSymmetry, ...]:
    """Every coordinate-permutation-and-flip symmetry, n! * 2^n elements."""
    _check_canonical_dim(n)
    return _group_elements(n)


def _check_canonical_dim(n: int) -> None:
    if not isinstance(n, int) or n < 1 or n > MAX_CANONICAL_DIM:
        raise DimensionRangeError(
            f"group enumeration supports dimensions 1..{MAX_CANONICAL_DIM}, got {n}"
        )


@functools.lru_cache(maxsize=None)
def _group_elements(n: int) -> tuple[CubeSymmetry, ...]:
    out = []
    for perm in itertools.permutations(range(n)):
        for flips in range(1 << n):
            out.append(CubeSymmetry(perm, flips))
    return tuple(out)


@functools.lru_cache(maxsize=None)
def _word_maps(n: int) -> np.ndarray:
    """Row g = image of every word of {0,1}^n under group element g."""
    words = np.arange(1 << n, dtype=np.int64)
    bits = (words[:, None] >> np.arange(n)) & 1
    rows = []
    for perm in itertools.permutations(range(n)):
        weights = np.int64(1) << np.array(perm, dtype=np.int64)
        permuted = bits @ weights
        for flips in range(1 << n):
            rows.append(permuted ^ flips)
    return np.array(rows, dtype=np.uint8)


def _lexmin_row(sorted_rows: np.ndarray) -> np.ndarray:
    order = np.lexsort(sorted_rows.T[::-1])
    return sorted_rows[order[0]]


def canonical_form(code: BinaryCode) -> BinaryCode:
    """Lexicographically smallest sorted word list over the code's orbit."""
    _check_canonical_dim(code.n)
    imgs = np.sort(_word_maps(code.n)[:, code.word_array()], axis=1)
    best = _lexmin_row(imgs)
    return BinaryCode(code.n, tuple(int(w) for w in best))


def canonical_pair(a: BinaryCode, b: BinaryCode) -> tuple[BinaryCode, BinaryCode]:
    """Apply one common symmetry to both codes, minimizing the joint word lists.

    The same group element transforms both codes, so pairwise distances (and
    any statistic built on them) are preserved.
    """
    if a.n != b.n:
        raise DimensionMismatchError(f"pair dimensions differ: {a.n} vs {b.n}")
    _check_canonical_dim(a.n)
    maps = _word_maps(a.n)
    ia = np.sort(maps[:, a.word_array()], axis=1)
    ib = np.sort(maps[:, b.word_array()], axis=1)
    best = _lexmin_row(np.concatenate([ia, ib], axis=1))
    wa, wb = best[: a.size], best[a.size :]
    return (
        BinaryCode(a.n, tuple(int(w) for w in wa)),
        BinaryCode(b.n, tuple(int(w) for w in wb)),
    )


def format_code(code: BinaryCode) -> str:
    """Serialize: a ``n=<dim>`` header, then one word per line, 0/1 characters
    with the most significant coordinate first."""
    lines = [f"n={code.n}"]
    lines.extend(format(w, f"0{code.n}b") for w in code.words)
    return "\n".join(lines) + "\n"


def parse_code(text: str) -> BinaryCode:
    """Inverse of :func:`format_code`.  Raises FormatError on malformed input."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or not lines[0].startswith("n="):
        raise FormatError("missing 'n=<dim>' header line")
    try:
        n = int(lines[0][2:])
    except ValueError as exc:
        raise FormatError(f"bad dimension in header: {lines[0]!r}") from exc
    if n < 1 or n > MAX_DIM:
        raise DimensionRangeError(f"dimension must be in 1..{MAX_DIM}, got {n}")
    words = []
    for ln in lines[1:]:
        if len(ln) != n:
            raise FormatError(f"word line {ln!r} is not {n} characters")
        if any(c not in "01" for c in ln):
            raise FormatError(f"word line {ln!r} contains characters other than 0/1")
        words.append(int(ln, 2))
    return make_code(n, words)
