"""d_max(m)/d_min(m) stays bounded exactly when the partial quotients do.

Run:  python demos/03_constant_type_ratio.py
Optionally pass a path to also write the phi scan as CSV.
"""

import sys

from threegap import build_table, ratio_scan, rule_source, surd_normalize
from threegap.cli import write_scan_csv

phi = surd_normalize(1, 1, 5, 2)
sqrt2 = surd_normalize(0, 1, 2, 1)

# Bounded case: sup over m <= 10^4 for phi is phi^2, below B + 2 = 3.
res = ratio_scan(build_table(phi, 0), 10_000)
print(f"phi:   sup ratio = {res.sup} ~ {float(res.sup):.12f} at m = {res.argmax}")
res2 = ratio_scan(build_table(sqrt2, 0), 10_000)
print(f"sqrt2: sup ratio = {res2.sup} ~ {float(res2.sup):.6f} (bound 4)")

# Unbounded case: alpha = [0; 1, 2, 3, ...].  At m = q_{k+1} the ratio exceeds k + 2.
nat = ratio_scan(build_table(rule_source("natural"), 0), convergents_only=True, k_max=15)
print("\nalpha = [0; 1, 2, 3, ...] at m = q_(k+1):")
for k, pt in enumerate(nat.points):
    print(f"  k={k:2d}  m={pt.m:>16d}  ratio={float(pt.ratio_value):9.5f}  "
          f"(>= {k + 2}, error < {float(pt.ratio_error):.0e})")

if __name__ == "__main__" and len(sys.argv) > 1:
    with open(sys.argv[1], "w", newline="") as fh:
        write_scan_csv(res.points, fh)
    print("wrote", sys.argv[1])
