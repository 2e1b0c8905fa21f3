"""Transform-side view: spectra, level sums, and the correlation response.

Shows how the joint one-one probability of two membership tests decomposes
into per-level contributions, and how that decomposition reads off the whole
correlation response curve at once.
"""

import numpy as np

from nisim import (
    collision_prob,
    hamming_ball,
    level_sums,
    make_code,
    spectrum,
    subcube,
    tail_sign_sums,
    theta_from_levels,
)


def main():
    n = 5
    cube = subcube(n, 1)
    ball = hamming_ball(n, 0, 1)
    majority = make_code(n, [w for w in range(1 << n) if bin(w).count("1") > n // 2])

    print("a single pinned coordinate is pure level one:")
    f = spectrum(cube)
    nonzero = {mask: c for mask, c in enumerate(f.coeffs) if abs(c) > 1e-12}
    print(f"  nonzero coefficients: {nonzero}")
    print()

    print("majority keeps odd levels only:")
    g = spectrum(majority)
    weights = np.bincount(
        [bin(m).count("1") for m in range(1 << n)],
        weights=g.coeffs**2,
        minlength=n + 1,
    )
    for k, w in enumerate(weights):
        print(f"  level {k}: squared mass {w:.4f}")
    print(f"  total {weights.sum():.6f} (Parseval)")
    print()

    print("level sums for the ball against majority:")
    h = spectrum(ball)
    lv = level_sums(h, g)
    for k, s in enumerate(lv.s):
        print(f"  s({k}) = {s:+.5f}")
    pos, neg = tail_sign_sums(h, g)
    print(f"  high-level tail split: +{pos:.5f} / {neg:.5f}")
    print()

    print("one decomposition, every correlation at once:")
    ab = ball.density * majority.density
    print("  rho   direct        from levels")
    for rho in (-0.8, -0.3, 0.0, 0.3, 0.8):
        direct = collision_prob(ball, majority, rho)
        from_levels = ab + theta_from_levels(lv, rho)
        print(f"  {rho:+.1f}  {direct:.9f}  {from_levels:.9f}")


if __name__ == "__main__":
    main()
