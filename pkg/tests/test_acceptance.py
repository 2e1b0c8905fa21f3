"""End-to-end acceptance checks.

Each test here is one release criterion.  A short pass/fail digest is printed
after the run by the hook in conftest.py.  Tolerances and time budgets are
asserted inside the tests themselves, so a pass means both the values and the
runtime are within contract.
"""

import math
import time

import pytest

from nisim import (
    RHO_CERTIFICATION_GRID,
    canonical_form,
    chang_bound,
    combined_report,
    complement,
    cross_distance_bounds,
    distance_distribution,
    distance_moment,
    exhaustive_distance_extremes,
    hc_bounds,
    maximal_correlation_bounds,
    psi,
    psi_bound,
    run_verify,
    star,
    subcube,
    theorem1_bounds,
)
from nisim.cli import default_a_grid

RHO_SMALL_GRID = (0.1, 0.5, 0.9)


def test_c1_balanced_sharpness(extremes_cache):
    """Half-density codes: the extremes are exactly (1 +/- rho)/4."""
    start = time.monotonic()
    for n in (2, 3, 4):
        m = 1 << (n - 1)
        for rho in RHO_SMALL_GRID:
            res = extremes_cache(n, m, m, rho)
            assert res.exhaustive
            assert abs(res.max_q - (1.0 + rho) / 4.0) <= 1e-12
            assert abs(res.min_q - (1.0 - rho) / 4.0) <= 1e-12
    assert time.monotonic() - start < 60.0


def test_c2_quarter_density_product_point(extremes_cache):
    """Quarter-density codes: the maximum is ((1+rho)/4)^2, met by subcubes."""
    start = time.monotonic()
    for n in (2, 3, 4):
        m = 1 << (n - 2)
        target_code = canonical_form(subcube(n, 2))
        for rho in RHO_SMALL_GRID:
            res = extremes_cache(n, m, m, rho)
            assert res.exhaustive
            assert abs(res.max_q - ((1.0 + rho) / 4.0) ** 2) <= 1e-12
            wa, wb = res.witness_max
            assert canonical_form(wa).words == target_code.words
            assert canonical_form(wb).words == target_code.words
    assert time.monotonic() - start < 600.0


def test_c3_bounds_contain_exhaustive_extremes(extremes_cache):
    """Every exhaustively computed extreme lies inside the combined bounds."""
    start = time.monotonic()
    instances = []
    for n in (2, 3, 4):
        m_half = 1 << (n - 1)
        m_quarter = 1 << (n - 2)
        for rho in RHO_SMALL_GRID:
            instances.append((n, m_half, m_half, rho))
            instances.append((n, m_quarter, m_quarter, rho))
    for n in (2, 3):
        size = 1 << n
        for m in range(1, size + 1):
            for n_second in range(1, size + 1):
                for rho in RHO_CERTIFICATION_GRID:
                    instances.append((n, m, n_second, rho))

    report_cache = {}
    checked = 0
    for n, m, n_second, rho in instances:
        res = extremes_cache(n, m, n_second, rho)
        a = m / (1 << n)
        b = n_second / (1 << n)
        key = (a, b, rho)
        if key not in report_cache:
            report_cache[key] = combined_report(a, b, rho)
        rep = report_cache[key]
        assert rep.combined_lb - 1e-9 <= res.min_q, (n, m, n_second, rho)
        assert res.max_q <= rep.combined_ub + 1e-9, (n, m, n_second, rho)
        checked += 1
    assert checked == len(instances)
    assert time.monotonic() - start < 300.0


def test_c4_average_distance_floor_equalities():
    """Self pairs of subcubes attain the n/2 - 1/(4a) average-distance floor."""
    for n, m in ((3, 4), (4, 8), (4, 4)):
        a = m / (1 << n)
        res = exhaustive_distance_extremes(n, m, m)
        assert res.exhaustive
        assert abs(res.min_d - (n / 2.0 - 1.0 / (4.0 * a))) <= 1e-12
        k = n - int(math.log2(m))
        target = canonical_form(subcube(n, k))
        wa, wb = res.witness_min
        assert canonical_form(wa).words == target.words
        assert canonical_form(wb).words == target.words
        assert wa.words == wb.words


def test_c5_average_distance_band_equalities():
    """Complement and star pairings sit exactly on the band edges."""
    for n in (3, 4):
        for m in (1 << (n - 1), 1 << (n - 2), 3 << (n - 2)):
            if m == 1 << (n - 1):
                code = subcube(n, 1)
            elif m == 1 << (n - 2):
                code = subcube(n, 2)
            else:
                code = complement(subcube(n, 2))
            a = m / (1 << n)
            co = complement(code)
            b = co.density

            d_self = distance_moment(distance_distribution(code, code), 1)
            assert abs(d_self - cross_distance_bounds(n, a, a).lower) <= 1e-12

            d_comp = distance_moment(distance_distribution(code, co), 1)
            assert abs(d_comp - cross_distance_bounds(n, a, b).upper) <= 1e-12

            d_mirror = distance_moment(distance_distribution(code, star(co)), 1)
            assert abs(d_mirror - cross_distance_bounds(n, a, b).lower) <= 1e-12


def test_c6_identity_families():
    """The randomized identity harness passes on 100 fresh pairs per size."""
    start = time.monotonic()
    report = run_verify(seed=20240823, trials=100, dims=(4, 6, 8, 10))
    assert report.passed, report.failed_families
    required = {
        "macwilliams-round-trip",
        "parseval",
        "complement-average-distance",
        "level-one-sum",
        "dual-bridge",
        "collision-path-agreement",
        "covariance-range",
    }
    by_name = {fam.name: fam for fam in report.families}
    missing = required - set(by_name)
    assert not missing, missing
    for name in required:
        assert by_name[name].checked >= 100, name
    assert time.monotonic() - start < 60.0


def test_c7_certificate_crossover():
    """The certificate bound wins at small density, loses near one half."""
    start = time.monotonic()
    rho = 0.5
    grid = default_a_grid()
    cert_beats_closed = False
    closed_beats_cert = False
    for a in grid:
        t1 = theorem1_bounds(a, a, rho)
        ours_ub = min(t1.upsilon1_ub, t1.upsilon2_ub)
        ours_lb = max(t1.upsilon1_lb, t1.upsilon2_lb)
        mc_lb, mc_ub = maximal_correlation_bounds(a, a, rho)
        hc_lb, hc_ub = hc_bounds(a, a, rho)

        assert mc_lb - 1e-9 <= hc_lb
        assert hc_ub <= mc_ub + 1e-9

        if a < 0.1 and hc_ub < ours_ub - 1e-6:
            cert_beats_closed = True
        if a > 0.4 and ours_ub < hc_ub - 1e-6:
            closed_beats_cert = True
        if a == 0.5:
            assert abs(hc_ub - ours_ub) <= 1e-4
            assert abs(hc_lb - ours_lb) <= 1e-4
    assert cert_beats_closed
    assert closed_beats_cert
    assert time.monotonic() - start < 120.0


def test_c8_variational_rate_bound():
    """The variational exponent refines ln(1/a) and the bound it yields."""
    assert psi(0.5) <= 0.5 + 1e-9
    for i in range(1, 11):
        a = 0.05 * i
        assert 0.0 <= psi(a) <= math.log(1.0 / a) + 1e-9
        for n in (4, 8):
            assert psi_bound(n, a) >= chang_bound(n, a) - 1e-12


def test_c9_complement_duality(extremes_cache):
    """Minimum collision equals the density shift of the complement maximum."""
    for n in (2, 3):
        size = 1 << n
        for m in range(1, size):
            for n_second in range(1, size + 1):
                for rho in RHO_CERTIFICATION_GRID:
                    direct = extremes_cache(n, m, n_second, rho)
                    comp = extremes_cache(n, size - m, n_second, rho)
                    lhs = direct.min_q
                    rhs = n_second / size - comp.max_q
                    assert abs(lhs - rhs) <= 1e-12, (n, m, n_second, rho)
