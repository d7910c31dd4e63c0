#!/usr/bin/env python3
"""Run every congruence check on a quick grid and print one verdict line
each, then tabulate margins for the open strengthened-exponent question."""

from cycpsi import CHECK_IDS, SweepGrid, run_explore, run_sweep

grid = SweepGrid(primes=(2, 3, 5), a_range=(1, 2), n_range=(0, 15), l_range=(0, 2))

print("check         checked  verdict  elapsed")
for check_id in CHECK_IDS:
    report = run_sweep(check_id, grid)
    note = "   <- flipped on purpose" if check_id == "self-test" else ""
    print(f"{check_id:12s} {report.checked:>8}  {report.verdict:7s} {report.elapsed_ms:>5} ms{note}")

print("\nThe sign-flipped self-test failing is the harness working as intended.")

print("\nMargins over the conjectured exponent 2a - [p == 3] (never asserted):")
explore = run_explore(SweepGrid(primes=(3, 5), a_range=(1, 2), n_range=(1, 8), l_range=(0, 1)))
print(f"  tuples measured : {explore.checked}")
print(f"  zero differences: {explore.extra['infinite_margins']} (margin infinite)")
print(f"  minimum margin  : {explore.extra['min_margin']}")
for row in explore.extra["worst"][:3]:
    print(f"  tightest: {row['params']} observed ord {row['observed']} vs target {row['target']}")
