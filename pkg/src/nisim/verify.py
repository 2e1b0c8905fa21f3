"""Randomized cross-validation of the package's identity lattice.

Generates seeded random code pairs across several blocklengths and checks
every identity the modules promise: transform inversions, enumerator and
moment reflections, level-sum relations, path agreement for the agreement
probability, and the Cauchy-Schwarz inequalities tying cross statistics to
self statistics.  Any failure names the violated identity and the instance.

The report is deterministic for a fixed seed, so its rendered form can be
compared byte for byte.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .codes import (
    MAX_TRANSFORM_DIM,
    BinaryCode,
    CubeSymmetry,
    apply_symmetry,
    canonical_form,
    complement,
    make_code,
)
from .errors import ParameterRangeError
from .distance import (
    DistanceDistribution,
    _poly_eval,
    distance_distribution,
    distance_moment,
    dual_distribution,
)
from .fourier import fwht, level_sums, spectrum, theta_from_levels
from .model import DsbsInstance

_DEFAULT_DIMS = (4, 6, 8, 10)
_RHO_GRID = (-1.0, -0.5, 0.0, 0.5, 0.9, 1.0)

FAMILY_NAMES = (
    "parseval",
    "transform-self-inverse",
    "level-one-extraction",
    "level-one-sum",
    "dual-bridge",
    "macwilliams-forward",
    "macwilliams-round-trip",
    "complement-average-distance",
    "star-average-distance",
    "moment-reflection",
    "enumerator-complement",
    "enumerator-star",
    "collision-path-agreement",
    "covariance-range",
    "negation-reduction",
    "dual-cauchy-schwarz",
    "distance-cauchy-schwarz",
    "enumerator-cauchy-schwarz",
    "canonical-invariance",
    "symmetry-distance-invariance",
)


@dataclass(frozen=True)
class FamilyResult:
    name: str
    checked: int
    failed: int
    worst_err: float
    first_failures: tuple[str, ...]


@dataclass(frozen=True)
class VerifyReport:
    seed: int
    trials: int
    dims: tuple[int, ...]
    families: tuple[FamilyResult, ...]

    @property
    def passed(self) -> bool:
        return all(f.failed == 0 for f in self.families)

    @property
    def failed_families(self) -> tuple[str, ...]:
        return tuple(f.name for f in self.families if f.failed > 0)

    def to_text(self) -> str:
        lines = [f"verify seed={self.seed} trials={self.trials} dims={list(self.dims)}"]
        for f in self.families:
            status = "PASS" if f.failed == 0 else "FAIL"
            lines.append(
                f"{f.name}: {status} checked={f.checked} worst={f.worst_err:.3e}"
            )
            for msg in f.first_failures:
                lines.append(f"  {msg}")
        overall = "PASS" if self.passed else "FAIL"
        lines.append(f"overall: {overall}")
        return "\n".join(lines) + "\n"


class _Lab:
    """One random code pair with lazily computed shared artifacts."""

    def __init__(self, a: BinaryCode, b: BinaryCode, sym: CubeSymmetry | None):
        self.a = a
        self.b = b
        self.sym = sym
        self.n = a.n

    @cached_property
    def fa(self):
        return spectrum(self.a)

    @cached_property
    def fb(self):
        return spectrum(self.b)

    @cached_property
    def levels(self):
        return level_sums(self.fa, self.fb)

    @cached_property
    def p_ab(self):
        return distance_distribution(self.a, self.b)

    @cached_property
    def p_aa(self):
        return distance_distribution(self.a, self.a)

    @cached_property
    def p_bb(self):
        return distance_distribution(self.b, self.b)

    @cached_property
    def p_acb(self):
        return distance_distribution(complement(self.a), self.b)

    @cached_property
    def dual_ab(self):
        return dual_distribution(self.a, self.b)

    @cached_property
    def dual_aa(self):
        return dual_distribution(self.a, self.a)

    @cached_property
    def dual_bb(self):
        return dual_distribution(self.b, self.b)

    def reflected(self, dist: DistanceDistribution) -> DistanceDistribution:
        """Distance distribution against the coordinate-flipped first code."""
        return DistanceDistribution(self.n, dist.p[::-1])

    def collision(self, dist: DistanceDistribution, rho: float, pairs: int) -> float:
        inst = DsbsInstance(rho, self.n)
        return math.fsum(
            pairs * p * inst.pair_probability(d) for d, p in enumerate(dist.p) if p > 0.0
        )


class _Collector:
    def __init__(self, fault: str | None):
        self.fault = fault
        self._fault_pending = {fault} if fault else set()
        self.stats: dict[str, list] = {name: [0, 0.0, []] for name in FAMILY_NAMES}

    def check(self, name: str, err: float, tol: float, desc: str) -> None:
        if name in self._fault_pending:
            self._fault_pending.discard(name)
            err = err + 1.0
        st = self.stats[name]
        st[0] += 1
        st[1] = max(st[1], err)
        if not err <= tol:
            if len(st[2]) < 3:
                st[2].append(f"{desc}: error {err:.3e} exceeds {tol:.1e}")

    def results(self) -> tuple[FamilyResult, ...]:
        out = []
        for name in FAMILY_NAMES:
            checked, worst, fails = self.stats[name]
            out.append(FamilyResult(name, checked, len(fails), worst, tuple(fails)))
        return out


def _run_families(lab: _Lab, c: _Collector) -> None:
    n = lab.n
    size = 1 << n
    a, b = lab.a, lab.b
    da, db = a.density, b.density
    where = f"n={n} |A|={a.size} |B|={b.size}"

    err = abs(float(np.sum(lab.fa.coeffs**2)) - 1.0)
    c.check("parseval", err, 1e-9, where)

    ind = np.zeros(size)
    ind[a.word_array()] = 1.0
    err = float(np.max(np.abs(fwht(fwht(ind)) / size - ind)))
    c.check("transform-self-inverse", err, 1e-9, where)

    signs = 2.0 * ((a.word_array()[:, None] >> np.arange(n)) & 1) - 1.0
    expect = 2.0 * signs.sum(axis=0) / size
    got = np.array([lab.fa.coeffs[1 << i] for i in range(n)])
    c.check("level-one-extraction", float(np.max(np.abs(got - expect))), 1e-9, where)

    d_ab = distance_moment(lab.p_ab, 1)
    err = abs(lab.levels.s[1] - 4.0 * da * db * (n - 2.0 * d_ab))
    c.check("level-one-sum", err, 1e-9, where)

    ind_b = np.zeros(size)
    ind_b[b.word_array()] = 1.0
    prods = fwht(ind) * fwht(ind_b)
    weights = np.bitwise_count(np.arange(size, dtype=np.int64))
    direct = np.bincount(weights, weights=prods, minlength=n + 1) / (a.size * b.size)
    err = float(np.max(np.abs(direct - np.array(lab.dual_ab.q))))
    c.check("dual-bridge", err, 1e-9, where)

    for z in (0.3, 1.0, 1.7):
        lhs = _poly_eval(lab.dual_ab.q, z)
        rhs = (1.0 + z) ** n * _poly_eval(lab.p_ab.p, (1.0 - z) / (1.0 + z))
        err = abs(lhs - rhs) / max(1.0, abs(lhs))
        c.check("macwilliams-forward", err, 1e-9, f"{where} z={z}")

    for z in (0.0, 0.4, 1.0, 2.5):
        lhs = _poly_eval(lab.p_ab.p, z)
        rhs = ((1.0 + z) / 2.0) ** n * _poly_eval(lab.dual_ab.q, (1.0 - z) / (1.0 + z))
        err = abs(lhs - rhs) / max(1.0, abs(lhs))
        c.check("macwilliams-round-trip", err, 1e-9, f"{where} z={z}")

    if a.size < size:
        lhs = a.size * d_ab + (size - a.size) * distance_moment(lab.p_acb, 1)
        rhs = n * size / 2.0
        c.check("complement-average-distance", abs(lhs - rhs) / rhs, 1e-9, where)

        for z in (0.3, 1.0, 2.0):
            lhs = a.size * _poly_eval(lab.p_ab.p, z) + (size - a.size) * _poly_eval(
                lab.p_acb.p, z
            )
            rhs = (1.0 + z) ** n
            c.check("enumerator-complement", abs(lhs - rhs) / rhs, 1e-9, f"{where} z={z}")

    p_star = lab.reflected(lab.p_ab)
    err = abs(d_ab + distance_moment(p_star, 1) - n)
    c.check("star-average-distance", err, 1e-9, where)

    for k in range(1, 5):
        lhs = distance_moment(p_star, k)
        rhs = math.fsum(
            math.comb(k, i) * n ** (k - i) * (-1.0) ** i * distance_moment(lab.p_ab, i)
            for i in range(k + 1)
        )
        err = abs(lhs - rhs) / max(1.0, abs(rhs))
        c.check("moment-reflection", err, 1e-9, f"{where} k={k}")

    for z in (0.5, 1.3):
        lhs = _poly_eval(p_star.p, z)
        rhs = z**n * _poly_eval(lab.p_ab.p, 1.0 / z)
        err = abs(lhs - rhs) / max(1.0, abs(rhs))
        c.check("enumerator-star", err, 1e-9, f"{where} z={z}")

    pairs = a.size * b.size
    for rho in _RHO_GRID:
        q_dist = lab.collision(lab.p_ab, rho, pairs)
        q_spec = da * db + theta_from_levels(lab.levels, rho)
        c.check("collision-path-agreement", abs(q_dist - q_spec), 1e-9, f"{where} rho={rho}")

        theta = q_dist - da * db
        viol = max(-da * db - theta, theta - da * (1.0 - db))
        c.check("covariance-range", viol, 1e-12, f"{where} rho={rho}")

    for rho in (0.3, 0.7, 1.0):
        lhs = lab.collision(lab.p_ab, -rho, pairs)
        rhs = lab.collision(lab.reflected(lab.p_ab), rho, pairs)
        c.check("negation-reduction", abs(lhs - rhs), 1e-9, f"{where} rho={rho} star")
        if a.size < size:
            lhs = lab.collision(lab.p_acb, rho, (size - a.size) * b.size)
            rhs = db - lab.collision(lab.p_ab, rho, pairs)
            c.check("negation-reduction", abs(lhs - rhs), 1e-9, f"{where} rho={rho} compl")

    qa = np.maximum(np.array(lab.dual_aa.q), 0.0)
    qb = np.maximum(np.array(lab.dual_bb.q), 0.0)
    viol = float(np.max(np.abs(np.array(lab.dual_ab.q)) - np.sqrt(qa * qb)))
    c.check("dual-cauchy-schwarz", viol, 1e-9, where)

    half = n / 2.0
    gap_a = max(0.0, half - distance_moment(lab.p_aa, 1))
    gap_b = max(0.0, half - distance_moment(lab.p_bb, 1))
    lhs = abs(half - d_ab)
    mid = math.sqrt(gap_a * gap_b)
    viol = max(lhs - mid, mid - (gap_a + gap_b) / 2.0)
    c.check("distance-cauchy-schwarz", viol, 1e-9, where)

    for z in (0.0, 0.4, 1.0):
        g_ab = _poly_eval(lab.p_ab.p, z)
        g_a = _poly_eval(lab.p_aa.p, z)
        g_b = _poly_eval(lab.p_bb.p, z)
        mid = math.sqrt(max(0.0, g_a * g_b))
        viol = max(g_ab - mid, mid - (g_a + g_b) / 2.0)
        c.check("enumerator-cauchy-schwarz", viol, 1e-9, f"{where} z={z}")
    for z in (1.0, 2.5):
        g_ab = _poly_eval(lab.p_ab.p, z)
        g_a = _poly_eval(lab.reflected(lab.p_aa).p, z)
        g_b = _poly_eval(lab.reflected(lab.p_bb).p, z)
        mid = math.sqrt(max(0.0, g_a * g_b))
        viol = max(g_ab - mid, mid - (g_a + g_b) / 2.0)
        c.check("enumerator-cauchy-schwarz", viol, 1e-9, f"{where} z={z} reflected")

    if lab.sym is not None:
        ga = apply_symmetry(lab.sym, a)
        err = 0.0 if canonical_form(ga).words == canonical_form(a).words else 1.0
        c.check("canonical-invariance", err, 0.0, where)

        gb = apply_symmetry(lab.sym, b)
        moved = distance_distribution(ga, gb)
        err = float(np.max(np.abs(np.array(moved.p) - np.array(lab.p_ab.p))))
        c.check("symmetry-distance-invariance", err, 1e-12, where)


def run_verify(
    seed: int = 20240823,
    trials: int = 100,
    dims: tuple[int, ...] = _DEFAULT_DIMS,
    fault: str | None = None,
) -> VerifyReport:
    """Run every identity family on ``trials`` random pairs per dimension.

    ``fault`` injects a synthetic error into the named family's first check,
    for exercising the failure path end to end.
    """
    if trials < 1:
        raise ParameterRangeError(f"trials must be at least 1, got {trials}")
    if not dims:
        raise ParameterRangeError("dims must name at least one dimension")
    for n in dims:
        if n < 1 or n > MAX_TRANSFORM_DIM:
            raise ParameterRangeError(
                f"dimension {n} outside 1..{MAX_TRANSFORM_DIM}"
            )
    if fault is not None and fault not in FAMILY_NAMES:
        raise ParameterRangeError(f"unknown family {fault!r}")
    rng = np.random.default_rng(seed)
    collector = _Collector(fault)
    for n in dims:
        size = 1 << n
        for _ in range(trials):
            sa = int(rng.integers(1, size + 1))
            sb = int(rng.integers(1, size + 1))
            a = make_code(n, rng.permutation(size)[:sa].tolist())
            b = make_code(n, rng.permutation(size)[:sb].tolist())
            sym = None
            if n <= 6:
                sym = CubeSymmetry(
                    tuple(int(p) for p in rng.permutation(n)),
                    int(rng.integers(0, size)),
                )
            _run_families(_Lab(a, b, sym), collector)
    return VerifyReport(seed, trials, tuple(dims), collector.results())
