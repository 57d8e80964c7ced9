"""Sweep weight configurations and compare basis size with a nullspace rank.

Prints one line per (n, k) with the number of configurations per case and
any disagreement between the classifier and a direct rank computation.

    python3 scripts/sweep_classification.py --max-n 8
"""
import argparse
import time
from collections import Counter
from fractions import Fraction

from or_lab.coeffs import WeightConfig, basis_tables, check_recursion, classify, recursion_equations, simplex


def nullity(config):
    index = {st: i for i, st in enumerate(simplex(config.k))}
    rows = []
    for p, cp, q, cq in recursion_equations(config):
        row = [Fraction(0)] * len(index)
        row[index[p]] += cp
        row[index[q]] += cq
        rows.append(row)
    rank = 0
    for col in range(len(index)):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                f = rows[i][col] / rows[rank][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return len(index) - rank


def weights(n, k, span):
    c = Fraction(n - 2 * k, 2)
    grid = sorted(set([Fraction(x, 2) for x in range(-2 * span, 2 * span + 1)] + [-c - l for l in range(k)]))
    pairs = {(a, b) for a in grid for b in grid}
    pairs |= {(a, -c + l - a) for a in grid for l in range(k)}
    return sorted(pairs)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-n", type=int, default=8)
    parser.add_argument("--span", type=int, default=4, help="half-integer grid runs over [-span, span]")
    args = parser.parse_args()
    start = time.perf_counter()
    total_bad = 0
    for n in range(2, args.max_n + 1):
        for k in range(1, n // 2 + 1):
            cases = Counter()
            bad = 0
            for w1, w2 in weights(n, k, args.span):
                config = WeightConfig(n, k, w1, w2)
                cls = classify(config)
                tables = basis_tables(config)
                cases[cls.case.value] += 1
                if cls.dimension != nullity(config) or not all(map(check_recursion, tables)):
                    bad += 1
            total_bad += bad
            summary = " ".join(f"{case}:{count}" for case, count in sorted(cases.items()))
            print(f"n={n} k={k} configs={sum(cases.values())} mismatches={bad} {summary}")
    print(f"total mismatches {total_bad} in {time.perf_counter() - start:.1f}s")


if __name__ == "__main__":
    main()
