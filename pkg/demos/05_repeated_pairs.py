#!/usr/bin/env python3
"""Repeated-sum and repeated-difference statistics X_k and Y_k.

X_k counts k-sets of unordered element pairs sharing one sum; Y_k counts
k-sets of ordered pairs sharing one difference.  Their alternating sums
reproduce |A+A| and |A-A| exactly, and their means at critical decay expose a
subtlety: every diagonal pair (a, a) has difference 0, and those k-sets alone
contribute ~ (np)^k / k!, which overwhelms the naive n c^(2k) / k! prediction
for k >= 2.  The exact expectation formulas account for it.
"""

import math

from modsetlab import (
    RegimeSpec,
    ResidueSet,
    difference_set,
    expected_x_k_exact,
    expected_y_k_exact,
    inclusion_exclusion_size,
    multiplicity_profile,
    realized_p,
    run_sweep,
    sumset,
    x_k,
    y_k,
)


def main():
    print("== alternating sums reproduce the set sizes exactly ==")
    A = ResidueSet.from_indices(101, [3 * i % 101 for i in range(20)])
    prof = multiplicity_profile(A)
    kmax = int(prof.m_sum.max())
    series = sum((-1) ** (k + 1) * x_k(prof, k) for k in range(1, kmax + 1))
    print(f"|A| = {A.cardinality}: sum_k (-1)^(k+1) X_k = {series}, "
          f"|A+A| = {sumset(A).cardinality}, "
          f"helper agrees: {inclusion_exclusion_size(prof, 'sum') == series}")
    kmax_d = int(prof.m_diff.max())
    series_d = sum((-1) ** (k + 1) * y_k(prof, k) for k in range(1, kmax_d + 1))
    print(f"difference side: sum_k (-1)^(k+1) Y_k = {series_d} "
          f"== |A-A| = {difference_set(A).cardinality}")

    print("\n== means at critical decay (n = 10007, c = 1, 300 trials) ==")
    n, c = 10007, 1.0
    spec = RegimeSpec(regime="critical", n_values=(n,), trials=300, base_seed=3,
                      c=c, k_max=3)
    agg = run_sweep(spec).aggregates[0]
    p = realized_p(spec, n)
    print(f"{'k':>2} {'mean X_k':>12} {'exact E[X_k]':>13} {'naive':>10}   "
          f"{'mean Y_k':>12} {'exact E[Y_k]':>13} {'naive':>10}")
    for k in (1, 2, 3):
        x_naive = n / math.factorial(k) * (c * c / 2) ** k
        y_naive = n / math.factorial(k) * c ** (2 * k)
        print(f"{k:>2} {agg.mean_xk[k-1]:>12.1f} "
              f"{float(expected_x_k_exact(n, p, k)):>13.1f} {x_naive:>10.1f}   "
              f"{agg.mean_yk[k-1]:>12.1f} "
              f"{float(expected_y_k_exact(n, p, k)):>13.1f} {y_naive:>10.1f}")
    print("\nX_k stays near its naive prediction, but Y_2 doubles it and Y_3")
    print("exceeds it a hundredfold: C(|A|, k) k-sets of diagonal pairs all")
    print("share difference 0, contributing ~ (np)^k / k! on top.  The exact")
    print("columns (enumeration-verified formulas) absorb the whole effect.")

    print("\n== the same effect is invisible in the set sizes ==")
    print("the diagonal class telescopes to exactly 1 in the alternating sum")
    print("(residue 0 is present in A-A whenever A is nonempty), so |A-A|")
    print("still follows n(1 - exp(-c^2)) - only the per-k statistics feel it.")


if __name__ == "__main__":
    main()
