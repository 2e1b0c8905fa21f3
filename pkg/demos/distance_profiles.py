"""Distance histograms and their weight-graded duals for a few set shapes.

Walks through the basic distance analytics: build some codes, print their
pairwise distance histograms, then show the dual side and the polynomial
identity connecting the two descriptions.
"""

import numpy as np

from nisim import (
    complement,
    distance_distribution,
    distance_enumerator,
    distance_moment,
    dual_distribution,
    hamming_ball,
    macwilliams_forward,
    star,
    subcube,
)


def describe(label, code):
    print(f"{label}: n={code.n} size={code.size} density={code.density:.4f}")


def print_histogram(dist):
    for d, mass in enumerate(dist.p):
        if mass == 0.0:
            continue
        bar = "#" * int(round(60 * mass))
        print(f"  d={d:2d}  {mass:8.5f}  {bar}")


def main():
    n = 6
    cube = subcube(n, 2)
    ball = hamming_ball(n, 0, 2)
    describe("subcube (two coordinates pinned)", cube)
    describe("radius-2 ball at the origin", ball)
    print()

    print("self distances of the subcube:")
    dist = distance_distribution(cube)
    print_histogram(dist)
    avg = distance_moment(dist, 1)
    print(f"  average {avg:.4f} (spread over the {n - 2} free coordinates)")
    print()

    print("self distances of the ball (tighter around zero):")
    ball_dist = distance_distribution(ball)
    print_histogram(ball_dist)
    print(f"  average {distance_moment(ball_dist, 1):.4f}")
    print()

    print("subcube against its complement (no overlap, pushed outward):")
    cross = distance_distribution(cube, complement(cube))
    print_histogram(cross)
    print()

    print("mirroring one side reverses the histogram:")
    mirrored = distance_distribution(cube, star(cube))
    print(f"  forward  {np.round(dist.p, 5)}")
    print(f"  mirrored {np.round(mirrored.p, 5)}")
    print()

    print("dual weights of the subcube (all mass on the pinned pattern):")
    dual = dual_distribution(cube)
    for k, mass in enumerate(dual.q):
        if abs(mass) > 1e-12:
            print(f"  level {k}: {mass:8.4f}")
    print()

    print("the two enumerators determine each other:")
    for z in (0.25, 0.5, 0.75):
        lhs, rhs = macwilliams_forward(cube, cube, z)
        print(f"  z={z:.2f}  direct {lhs:.6f}  via dual {rhs:.6f}")
    print()
    print(f"enumerator at z=1 is always 1: {distance_enumerator(dist, 1.0):.6f}")


if __name__ == "__main__":
    main()
