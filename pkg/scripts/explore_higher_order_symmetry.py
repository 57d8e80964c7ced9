"""Conjecture exploration: permutation symmetry of the Dirichlet form at k >= 4.

Runs the trilinear symmetry check at w1 = w2 = -(n-2k)/3 beyond the range
where it is proven, and the linear-operator check outside k <= ell + 3.
Results are evidence on the round sphere only.

    python3 scripts/explore_higher_order_symmetry.py --trials 5
"""
import argparse
import time
from fractions import Fraction

from or_lab.coeffs import WeightConfig
from or_lab.verify import verify_formal_self_adjointness, verify_linear_fsa


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--trials", type=int, default=5)
    parser.add_argument("--degree", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    for k in (4, 5):
        for n in range(2 * k, 2 * k + 3):
            w = Fraction(-(n - 2 * k), 3)
            start = time.perf_counter()
            report = verify_formal_self_adjointness(
                WeightConfig(n, k, w, w), args.trials, args.degree, args.seed, explore=True
            )
            status = "symmetric" if report.all_passed else f"{len(report.failures())} asymmetric"
            print(f"trilinear n={n} k={k}: {status} [{report.notes['tag']}] {time.perf_counter() - start:.1f}s")
    for k, ell in [(4, 0), (5, 1), (5, Fraction(1, 2)), (6, 2)]:
        n = 2 * k + 1
        report = verify_linear_fsa(n, k, ell, args.trials, args.degree, args.seed)
        status = "symmetric" if report.all_passed else f"{len(report.failures())} asymmetric"
        print(f"linear n={n} k={k} ell={ell}: {status} [{report.notes['range']}]")


if __name__ == "__main__":
    main()
