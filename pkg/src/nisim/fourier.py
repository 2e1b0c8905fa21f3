"""Character expansion of code indicator functions.

``spectrum`` expands the +-1 indicator of a code over the parity characters of
the cube; ``level_sums`` aggregates coefficient products of two codes by
character weight.  Those level sums carry the correlation dependence of the
agreement probability: weighting level k by rho^k recovers the covariance term
directly (see :func:`theta_from_levels`).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .codes import MAX_TRANSFORM_DIM, BinaryCode
from .errors import DimensionMismatchError, DimensionRangeError, ParameterRangeError


def fwht(values: np.ndarray) -> np.ndarray:
    """Walsh-Hadamard transform with the (-1)^(popcount(mask & word)) kernel.

    Returns a new float array; applying it twice multiplies by len(values).
    """
    arr = np.array(values, dtype=np.float64, copy=True)
    size = arr.shape[0]
    if size == 0 or size & (size - 1):
        raise ParameterRangeError(f"transform length must be a power of two, got {size}")
    h = 1
    while h < size:
        view = arr.reshape(-1, 2 * h)
        left = view[:, :h].copy()
        view[:, :h] = left + view[:, h:]
        view[:, h:] = left - view[:, h:]
        h *= 2
    return arr


@dataclass(frozen=True, eq=False)
class FourierSpectrum:
    """Expectation-normalized character coefficients of a code's +-1 indicator.

    ``coeffs[mask]`` is the coefficient of the character picking out the
    coordinates in ``mask``.
    """

    n: int
    coeffs: np.ndarray
    source: BinaryCode

    def __post_init__(self):
        self.coeffs.flags.writeable = False

    def coefficient(self, mask: int) -> float:
        return float(self.coeffs[mask])


def spectrum(code: BinaryCode) -> FourierSpectrum:
    """Expand the +-1 indicator of the code (value +1 on code words)."""
    if code.n > MAX_TRANSFORM_DIM:
        raise DimensionRangeError(
            f"spectrum supports dimensions up to {MAX_TRANSFORM_DIM}, got {code.n}"
        )
    size = 1 << code.n
    table = np.full(size, -1.0)
    table[code.word_array()] = 1.0
    transformed = fwht(table)
    # The character convention counts a coordinate as active when its bit is 0,
    # so each mask picks up a sign (-1)^popcount(mask) relative to the raw kernel.
    signs = 1.0 - 2.0 * (np.bitwise_count(np.arange(size, dtype=np.int64)) & 1)
    return FourierSpectrum(code.n, signs * transformed / size, code)


@dataclass(frozen=True)
class LevelSums:
    """Coefficient products of two spectra, summed by character weight."""

    n: int
    s: tuple[float, ...]

    def __post_init__(self):
        if len(self.s) != self.n + 1:
            raise ParameterRangeError(
                f"need {self.n + 1} level sums for dimension {self.n}, got {len(self.s)}"
            )


def level_sums(f: FourierSpectrum, g: FourierSpectrum) -> LevelSums:
    if f.n != g.n:
        raise DimensionMismatchError(f"spectra dimensions differ: {f.n} vs {g.n}")
    weights = np.bitwise_count(np.arange(1 << f.n, dtype=np.int64))
    sums = np.bincount(weights, weights=f.coeffs * g.coeffs, minlength=f.n + 1)
    return LevelSums(f.n, tuple(float(v) for v in sums))


def theta_from_levels(levels: LevelSums, rho: float) -> float:
    """Covariance term of the agreement probability: one quarter of the
    rho-weighted level sums above level zero."""
    if not -1.0 <= rho <= 1.0:
        raise ParameterRangeError(f"correlation must be in [-1, 1], got {rho}")
    total = 0.0
    power = 1.0
    for k in range(1, levels.n + 1):
        power *= rho
        total += levels.s[k] * power
    return 0.25 * total


def tail_sign_sums(f: FourierSpectrum, g: FourierSpectrum) -> tuple[float, float]:
    """Quarter-sums of coefficient products at weight two and above, split by
    sign: (sum of nonnegative products, sum of negative products).

    The first component is nonnegative, the second nonpositive; together with
    the weight-one term they decompose the covariance at full correlation.
    Mainly useful as a diagnostic of how much cancellation the tail hides.
    """
    if f.n != g.n:
        raise DimensionMismatchError(f"spectra dimensions differ: {f.n} vs {g.n}")
    weights = np.bitwise_count(np.arange(1 << f.n, dtype=np.int64))
    products = f.coeffs * g.coeffs
    tail = weights >= 2
    pos = products[tail & (products >= 0)].sum()
    neg = products[tail & (products < 0)].sum()
    return 0.25 * float(pos), 0.25 * float(neg)
