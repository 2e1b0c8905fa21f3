"""Closed-form and optimized bounds on the agreement probability.

Everything here works on a normalized instance: densities at most 1/2, first
at most the second, correlation nonnegative.  ``normalize_instance`` reduces
an arbitrary instance to that cell and returns the affine map that carries
bounds back to the original coordinates; ``combined_report`` runs every bound
family and intersects them.

Three families are implemented: the quadratic-in-rho envelope bounds (two
lower, two upper), the maximal-correlation bounds (linear in rho), and a
reverse-hypercontractivity family obtained by numerically optimizing a
three-parameter certificate.
"""

from __future__ import annotations

import math
import warnings as _warnings
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import ConvergenceError, NumericalConsistencyError, ParameterRangeError


@dataclass(frozen=True)
class TransformRecord:
    """Affine bookkeeping for instance normalization.

    ``steps`` lists the reductions applied; the agreement probability of the
    original instance is ``alpha * q_normalized + beta``.
    """

    steps: tuple[str, ...]
    alpha: float
    beta: float

    def map_value(self, q: float) -> float:
        return self.alpha * q + self.beta

    def map_interval(self, lo: float, hi: float) -> tuple[float, float]:
        if self.alpha >= 0:
            return self.map_value(lo), self.map_value(hi)
        return self.map_value(hi), self.map_value(lo)


def normalize_instance(a: float, b: float, rho: float) -> tuple[float, float, float, TransformRecord]:
    """Reduce (a, b, rho) to the cell a <= b <= 1/2, rho >= 0.

    Negative correlation is absorbed by reflecting one function's input (the
    agreement probability is unchanged); a density above 1/2 is absorbed by
    complementing that function (q maps affinely); finally the two densities
    are swapped into sorted order.
    """
    if not (0.0 <= a <= 1.0 and 0.0 <= b <= 1.0):
        raise ParameterRangeError(f"densities must be in [0, 1], got ({a}, {b})")
    if not -1.0 <= rho <= 1.0:
        raise ParameterRangeError(f"correlation must be in [-1, 1], got {rho}")
    steps: list[str] = []
    alpha, beta = 1.0, 0.0

    def compose(step_alpha: float, step_beta: float) -> None:
        # q_outer = alpha * q_inner + beta, with q_inner = step_alpha * q_next + step_beta
        nonlocal alpha, beta
        beta = alpha * step_beta + beta
        alpha = alpha * step_alpha

    if rho < 0:
        rho = -rho
        steps.append("reflect-second-input")
    if a > 0.5:
        a = 1.0 - a
        steps.append("complement-first")
        compose(-1.0, b)
    if b > 0.5:
        b = 1.0 - b
        steps.append("complement-second")
        compose(-1.0, a)
    if a > b:
        a, b = b, a
        steps.append("swap")
    return a, b, rho, TransformRecord(tuple(steps), alpha, beta)


class Theorem1Bounds(NamedTuple):
    upsilon1_lb: float
    upsilon2_lb: float
    upsilon1_ub: float
    upsilon2_ub: float


def _check_normalized(a: float, b: float, rho: float) -> None:
    if not (0.0 <= a <= b <= 0.5):
        raise ParameterRangeError(
            f"expected a normalized instance with a <= b <= 1/2, got ({a}, {b})"
        )
    if not 0.0 <= rho <= 1.0:
        raise ParameterRangeError(f"normalized correlation must be in [0, 1], got {rho}")


def theta_plus(t: float, rho: float) -> float:
    """Upper envelope t^2 + (t/2) rho + (t/2 - t^2) rho^2 for density t."""
    return t * t + 0.5 * t * rho + (0.5 * t - t * t) * rho * rho


def theta_minus(t: float, rho: float) -> float:
    """Lower envelope t^2 - (t/2) rho - (t/2 - t^2) rho^2, clamped at zero."""
    return max(0.0, t * t - 0.5 * t * rho - (0.5 * t - t * t) * rho * rho)


def theorem1_bounds(a: float, b: float, rho: float) -> Theorem1Bounds:
    """The four quadratic envelope bounds for a normalized instance.

    Two lower and two upper bounds; neither member of a pair dominates the
    other across the whole parameter range, so callers should intersect them.
    """
    _check_normalized(a, b, rho)
    ab = a * b
    root_ab = math.sqrt(ab)
    cross = math.sqrt(a * (1.0 - a) * b * (1.0 - b))
    r2 = rho * rho
    u1_lb = max(0.0, ab - 0.5 * root_ab * rho - 0.5 * (ab + cross) * r2)
    u2_lb = max(0.0, ab - 0.5 * root_ab * rho - 0.5 * (a + b - 2.0 * ab - root_ab) * r2)
    u1_ub = min(a, ab + 0.5 * root_ab * rho + 0.5 * (a * (1.0 - b) + cross - root_ab) * r2)
    u2_ub = math.sqrt(theta_plus(a, rho) * theta_plus(b, rho))
    return Theorem1Bounds(u1_lb, u2_lb, u1_ub, u2_ub)


def symmetric_bounds(a: float, rho: float) -> tuple[float, float]:
    """Two-sided envelope for equal densities: (lower, upper)."""
    if not 0.0 < a <= 0.5:
        raise ParameterRangeError(f"density must be in (0, 1/2], got {a}")
    if not 0.0 <= rho <= 1.0:
        raise ParameterRangeError(f"normalized correlation must be in [0, 1], got {rho}")
    return theta_minus(a, rho), theta_plus(a, rho)


def maximal_correlation_bounds(a: float, b: float, rho: float) -> tuple[float, float]:
    """Linear-in-rho bounds ab -+ sqrt(a(1-a)b(1-b)) rho, clamped to the
    trivial range [0, min(a, b)]."""
    if not (0.0 <= a <= 1.0 and 0.0 <= b <= 1.0):
        raise ParameterRangeError(f"densities must be in [0, 1], got ({a}, {b})")
    if not 0.0 <= rho <= 1.0:
        raise ParameterRangeError(f"normalized correlation must be in [0, 1], got {rho}")
    dev = math.sqrt(a * (1.0 - a) * b * (1.0 - b)) * rho
    cap = min(a, b)
    lb = min(cap, max(0.0, a * b - dev))
    ub = min(cap, max(0.0, a * b + dev))
    return lb, ub


@dataclass(frozen=True)
class HcOptimizerConfig:
    """Knobs for the three-parameter certificate optimizer.

    grid_points: coarse log-grid resolution per axis.
    refine_sweeps: pattern-search sweep budget per start; past it the search
        stops with a still-valid but possibly loose bound and a warning.
    exclusion: half-width of the excluded band around the removable
        singularities at s = 1 and t = 1 (log coordinates).
    rel_tol: pattern-search step size at which refinement stops.
    """

    grid_points: int = 33
    refine_sweeps: int = 500
    exclusion: float = 1e-4
    rel_tol: float = 1e-6

    def __post_init__(self):
        if self.grid_points < 4:
            raise ParameterRangeError(f"grid_points must be at least 4, got {self.grid_points}")
        if self.refine_sweeps < 1:
            raise ParameterRangeError(f"refine_sweeps must be positive, got {self.refine_sweeps}")
        if not 0.0 < self.exclusion < 0.1:
            raise ParameterRangeError(f"exclusion must be in (0, 0.1), got {self.exclusion}")
        if not 0.0 < self.rel_tol < 0.1:
            raise ParameterRangeError(f"rel_tol must be in (0, 0.1), got {self.rel_tol}")


_LOG_LIMIT = math.log(1e3)
_KAPPA_MIN = 1e-3
_KAPPA_MAX = 1e3

# Pattern-search directions in (u, v, z) log coordinates: the six axis moves
# plus the four (u, v) diagonals.  The diagonals matter because the objective
# has a narrow valley along u = v near the excluded band where axis-only
# search stalls.
_STENCIL = (
    (1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1),
    (1, 1, 0), (-1, -1, 0), (1, -1, 0), (-1, 1, 0),
)


def _stable_power_term(u: float, a: float, p: float) -> float:
    """(e^(p u) a + 1 - a)^(1/p) - 1 without cancellation, any p != 0."""
    if abs(p) < 1e-12:
        return math.expm1(a * u)
    x = p * u
    if x > 40.0:
        ln_f = u + (math.log(a) + math.log1p((1.0 - a) / a * math.exp(-x))) / p
    elif x < -40.0:
        ln_f = (math.log(1.0 - a) + math.log1p(a / (1.0 - a) * math.exp(x))) / p
    else:
        ln_f = math.log1p(a * math.expm1(x)) / p
    return math.expm1(ln_f)


def _certificate_value(u: float, v: float, k: float, a: float, b: float, rho: float) -> float:
    """The certificate functional at s = e^u, t = e^v, kappa = k.

    Algebraically rearranged so the three O(eps) differences are formed from
    expm1/log1p outputs rather than by subtracting near-equal large terms;
    the naive form loses eight digits near the excluded band.
    """
    kp = 1.0 + rho * rho / (k - 1.0)
    es = _stable_power_term(u, a, kp)
    et = _stable_power_term(v, b, k)
    if not (math.isfinite(es) and math.isfinite(et)):
        return math.nan
    eps_s = math.expm1(u)
    eps_t = math.expm1(v)
    return ((es - a * eps_s) + (et - b * eps_t) + es * et) / (eps_s * eps_t)


def _hc_pattern(a, b, rho, sign, u, v, z, branch, cfg) -> tuple[float, bool] | None:
    """Refine one grid candidate.

    Returns (value, converged) or None for an infeasible start.  Every
    feasible evaluation is a valid bound on its own, so exhausting the sweep
    budget costs tightness, never validity; the flag reports which happened.
    """

    def value(uu, vv, zz):
        k = 1.0 + branch * math.exp(zz)
        if not _KAPPA_MIN <= k <= _KAPPA_MAX:
            return None
        prod_sign = math.copysign(1, uu) * math.copysign(1, vv) * math.copysign(1, k - 1.0)
        if (prod_sign > 0) != (sign > 0):
            return None
        f = _certificate_value(uu, vv, k, a, b, rho)
        return f if math.isfinite(f) else None

    def clamp_band(x):
        if abs(x) >= cfg.exclusion:
            return x
        return cfg.exclusion if x >= 0 else -cfg.exclusion

    best = value(u, v, z)
    if best is None:
        return None
    best *= sign
    step = 0.7
    sweeps = 0
    while step > cfg.rel_tol:
        sweeps += 1
        if sweeps > cfg.refine_sweeps:
            return best * sign, False
        move = None
        for du, dv, dz in _STENCIL:
            uu = clamp_band(u + du * step)
            vv = clamp_band(v + dv * step)
            zz = z + dz * step
            f = value(uu, vv, zz)
            if f is not None and f * sign < best - 1e-15:
                best = f * sign
                move = (uu, vv, zz)
        if move is None:
            step *= 0.5
        else:
            u, v, z = move
    return best * sign, True


def _hc_grid_candidates(a, b, rho, sign, cfg):
    """Coarse scan over both kappa branches; top two feasible cells of each."""
    npts = cfg.grid_points
    u = np.linspace(-_LOG_LIMIT, _LOG_LIMIT, npts)
    cands = []
    for branch in (1.0, -1.0):
        z_hi = math.log(_KAPPA_MAX - 1.0) if branch > 0 else math.log(1.0 - _KAPPA_MIN)
        z = np.linspace(math.log(1e-4), z_hi, npts)
        uu, vv, zz = np.meshgrid(u, u, z, indexing="ij")
        s, t = np.exp(uu), np.exp(vv)
        k = 1.0 + branch * np.exp(zz)
        feasible = (
            (((s - 1.0) * (t - 1.0) * (k - 1.0) > 0) == (sign > 0))
            & (np.abs(uu) >= cfg.exclusion)
            & (np.abs(vv) >= cfg.exclusion)
        )
        with np.errstate(all="ignore"):
            kp = 1.0 + rho * rho / (k - 1.0)
            fs = np.exp(np.log1p(a * np.expm1(kp * uu)) / kp)
            ft = np.exp(np.log1p(b * np.expm1(k * vv)) / k)
            vals = (fs * ft - 1.0) / ((s - 1.0) * (t - 1.0)) - a / (t - 1.0) - b / (s - 1.0)
        vals = np.where(feasible & np.isfinite(vals), vals, np.nan)
        flat = (vals * sign).ravel()
        order = np.argsort(flat)
        for idx in order[:2]:
            if np.isnan(flat[idx]):
                break
            cands.append(
                (float(uu.ravel()[idx]), float(vv.ravel()[idx]), branch, float(zz.ravel()[idx]))
            )
    return cands


def _hc_side(a, b, rho, sign, cfg) -> tuple[float, bool]:
    cands = _hc_grid_candidates(a, b, rho, sign, cfg)
    if not cands:
        raise ConvergenceError(
            f"no feasible certificate grid cell for densities ({a}, {b}) at rho {rho}"
        )
    best = None
    converged = False
    for u, v, branch, z in cands:
        out = _hc_pattern(a, b, rho, sign, u, v, z, branch, cfg)
        if out is None:
            continue
        f, ok = out
        if best is None or f * sign < best * sign:
            best = f
            converged = ok
        elif f == best:
            converged = converged or ok
    if best is None:
        raise ConvergenceError(
            f"all certificate starts infeasible for densities ({a}, {b}) at rho {rho}"
        )
    return best, converged


def hc_bounds(
    a: float, b: float, rho: float, config: HcOptimizerConfig | None = None
) -> tuple[float, float]:
    """Certificate bounds (lower, upper) from the three-parameter family.

    The upper bound is the infimum of the certificate over its feasible
    region, the lower bound the supremum over the complementary region; any
    feasible certificate point already gives a valid one-sided bound, so an
    exhausted refinement budget degrades tightness only (reported through a
    RuntimeWarning).  At rho = 0 both collapse to ab.  At rho = 1 the
    optimization still runs but the certificate family is being used at the
    edge of its domain, so a RuntimeWarning flags that too.
    """
    cfg = config if config is not None else HcOptimizerConfig()
    if not (0.0 < a < 1.0 and 0.0 < b < 1.0):
        raise ParameterRangeError(f"densities must be in (0, 1), got ({a}, {b})")
    if not 0.0 <= rho <= 1.0:
        raise ParameterRangeError(f"normalized correlation must be in [0, 1], got {rho}")
    if rho == 0.0:
        return a * b, a * b
    if rho == 1.0:
        _warnings.warn(
            "certificate bounds at full correlation come from a wide-domain grid "
            "optimization and may be loose",
            RuntimeWarning,
            stacklevel=2,
        )
    ub, ub_ok = _hc_side(a, b, rho, +1, cfg)
    lb, lb_ok = _hc_side(a, b, rho, -1, cfg)
    if not (ub_ok and lb_ok):
        _warnings.warn(
            "certificate refinement hit its sweep budget; the bounds are valid "
            "but may not be fully tightened",
            RuntimeWarning,
            stacklevel=2,
        )
    # Intersect with the bounds that hold for every joint distribution with
    # these marginals; this also absorbs last-digit rounding in the optimizer.
    lb = max(lb, 0.0, a + b - 1.0)
    ub = min(ub, a, b)
    return lb, max(lb, ub)


@dataclass(frozen=True)
class BoundsReport:
    """Every bound family for one instance, plus their intersection.

    Family fields are in normalized coordinates and clamped to the trivial
    range [0, min(a, b)]; ``combined_lb``/``combined_ub`` are mapped back to
    the original coordinates.  ``raw`` keeps pre-clamp values.
    """

    a: float
    b: float
    rho: float
    original_a: float
    original_b: float
    original_rho: float
    transform: TransformRecord
    upsilon1_lb: float
    upsilon2_lb: float
    upsilon1_ub: float
    upsilon2_ub: float
    mc_lb: float
    mc_ub: float
    hc_lb: float
    hc_ub: float
    combined_lb: float
    combined_ub: float
    raw: dict = field(default_factory=dict)
    warnings: tuple[str, ...] = ()

    def __post_init__(self):
        if self.combined_lb > self.combined_ub + 1e-9:
            raise NumericalConsistencyError(
                f"combined bounds crossed: [{self.combined_lb}, {self.combined_ub}]"
            )


def combined_report(
    a: float, b: float, rho: float, config: HcOptimizerConfig | None = None
) -> BoundsReport:
    """Normalize, run every family, intersect, and map back.

    The de-normalization uses only the affine record from normalization; no
    family formula is re-derived in original coordinates.
    """
    na, nb, nrho, record = normalize_instance(a, b, rho)
    notes: list[str] = []
    if na == 0.0:
        # one marginal is degenerate: the agreement probability is forced
        t1 = Theorem1Bounds(0.0, 0.0, 0.0, 0.0)
        mc = (0.0, 0.0)
        hc = (0.0, 0.0)
        notes.append("degenerate marginal: agreement probability is determined exactly")
    else:
        t1 = theorem1_bounds(na, nb, nrho)
        mc = maximal_correlation_bounds(na, nb, nrho)
        with _warnings.catch_warnings(record=True) as caught:
            _warnings.simplefilter("always")
            hc = hc_bounds(na, nb, nrho, config)
        notes.extend(str(w.message) for w in caught)

    cap = min(na, nb)
    clamp = lambda v: min(cap, max(0.0, v))
    raw = {
        "upsilon1_lb": t1.upsilon1_lb,
        "upsilon2_lb": t1.upsilon2_lb,
        "upsilon1_ub": t1.upsilon1_ub,
        "upsilon2_ub": t1.upsilon2_ub,
        "mc_lb": mc[0],
        "mc_ub": mc[1],
        "hc_lb": hc[0],
        "hc_ub": hc[1],
    }
    c = {k: clamp(v) for k, v in raw.items()}
    combined_lb_n = max(c["upsilon1_lb"], c["upsilon2_lb"], c["mc_lb"], c["hc_lb"])
    combined_ub_n = min(c["upsilon1_ub"], c["upsilon2_ub"], c["mc_ub"], c["hc_ub"])
    raw["combined_lb_normalized"] = combined_lb_n
    raw["combined_ub_normalized"] = combined_ub_n

    lo_o, hi_o = record.map_interval(combined_lb_n, combined_ub_n)
    raw["combined_lb_original"] = lo_o
    raw["combined_ub_original"] = hi_o
    sandwich_lo = max(0.0, a + b - 1.0)
    sandwich_hi = min(a, b)
    lo_o = min(sandwich_hi, max(sandwich_lo, lo_o))
    hi_o = min(sandwich_hi, max(sandwich_lo, hi_o))

    return BoundsReport(
        a=na,
        b=nb,
        rho=nrho,
        original_a=a,
        original_b=b,
        original_rho=rho,
        transform=record,
        upsilon1_lb=c["upsilon1_lb"],
        upsilon2_lb=c["upsilon2_lb"],
        upsilon1_ub=c["upsilon1_ub"],
        upsilon2_ub=c["upsilon2_ub"],
        mc_lb=c["mc_lb"],
        mc_ub=c["mc_ub"],
        hc_lb=c["hc_lb"],
        hc_ub=c["hc_ub"],
        combined_lb=lo_o,
        combined_ub=hi_o,
        raw=raw,
        warnings=tuple(notes),
    )
