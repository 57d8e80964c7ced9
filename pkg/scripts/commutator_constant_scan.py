"""Measure the constant in sum_i x^i [D_{2k}, x^i] = c D_{2k-2} over many (n, k).

For each pair the left side is computed exactly on harmonic inputs and, if
it is a single multiple of the right side, that ratio is printed next to
the asserted and rederived closed forms.

    python3 scripts/commutator_constant_scan.py --max-n 11 --degree 1
"""
import argparse

from or_lab.rational import format_rational
from or_lab.verify import (
    commutator_constant,
    rederived_commutator_constant,
    verify_commutator_identity,
)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-n", type=int, default=11)
    parser.add_argument("--max-k", type=int, default=3)
    parser.add_argument("--degree", type=int, default=1)
    args = parser.parse_args()
    print(f"{'n':>3} {'k':>2} {'observed':>12} {'asserted':>12} {'rederived':>12}")
    for n in range(3, args.max_n + 1):
        for k in range(1, args.max_k + 1):
            if n <= 2 * k:
                continue
            report = verify_commutator_identity(n, k, args.degree)
            observed = report.notes["observed_ratio"] or "none"
            print(
                f"{n:>3} {k:>2} {observed:>12} {format_rational(commutator_constant(n, k)):>12} "
                f"{format_rational(rederived_commutator_constant(n, k)):>12}"
            )


if __name__ == "__main__":
    main()
