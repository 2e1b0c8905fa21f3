"""Average-distance constraints on set pairs of given densities.

Every pair of densities confines the average Hamming distance between the
sets to a band around n/2.  Self pairs obey a stronger floor, and the
variational exponent tightens the naive logarithmic version of it.
"""

import math

from nisim import (
    chang_bound,
    complement,
    cross_distance_bounds,
    distance_distribution,
    distance_moment,
    fwy_lower_bound,
    psi,
    psi_bound,
    star,
    subcube,
)


def main():
    n = 6

    print(f"band for the average distance at n={n}:")
    print(f"{'a':>7} {'b':>7} {'lower':>8} {'upper':>8}")
    for a, b in ((0.5, 0.5), (0.25, 0.5), (0.125, 0.125)):
        band = cross_distance_bounds(n, a, b)
        print(f"{a:7.3f} {b:7.3f} {band.lower:8.4f} {band.upper:8.4f}")
    print()

    print("three constructions that sit exactly on the edges:")
    code = subcube(n, 2)
    a = code.density
    co = complement(code)
    b = co.density
    d_self = distance_moment(distance_distribution(code, code), 1)
    d_comp = distance_moment(distance_distribution(code, co), 1)
    d_mirror = distance_moment(distance_distribution(code, star(co)), 1)
    print(f"  subcube with itself        {d_self:.4f}  (lower edge at b=a)")
    print(f"  subcube with complement    {d_comp:.4f}  (upper edge at b=1-a)")
    print(f"  subcube with mirrored comp {d_mirror:.4f}  (lower edge at b=1-a)")
    print()

    print("floors for self pairs, three strengths:")
    print(f"{'a':>7} {'n/2-ln(1/a)':>12} {'variational':>12} {'1/(4a) form':>12}")
    for a in (0.05, 0.1, 0.25, 0.5):
        simple = chang_bound(n, a)
        refined = psi_bound(n, a)
        floor = fwy_lower_bound(n, a)
        print(f"{a:7.2f} {simple:12.4f} {refined:12.4f} {floor:12.4f}")
    print()

    print("the variational exponent never exceeds ln(1/a):")
    for a in (0.1, 0.3, 0.5):
        print(f"  a={a:.1f}: psi={psi(a):.6f}  ln(1/a)={math.log(1 / a):.6f}")


if __name__ == "__main__":
    main()
