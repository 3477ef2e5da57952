#!/usr/bin/env python3
# How the bounded search trees grow with the distance budget k, against the
# branching bound n * sum_i r_max^i. The implication-chain family makes the
# growth visible: improving from start variable x_i forces the whole suffix.

from lscsp.bench import format_table, run_bench, to_csv

rows = run_bench(suites=("horn", "flipsep"), sizes=(10, 14), kmax=6)
print(format_table(rows))

print("\nall rows within bound:", all(r.within_bound for r in rows))
print("\nCSV form:\n")
print(to_csv(rows))
