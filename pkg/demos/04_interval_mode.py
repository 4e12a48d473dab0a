"""Certified interval mode for sources that are not given as exact surds.

Run:  python demos/04_interval_mode.py
"""

from threegap import PeriodicSource, build_table, ratio, verify

src = PeriodicSource([0], [1, 2])        # [0; 1, 2, 1, 2, ...] = sqrt(3) - 1
table = build_table(src, 8)

print(" n   eta_n (midpoint)            half-width")
for n in range(9):
    e = table.eta(n)
    print(f"{n:2d}   {float(e.mid):.20f}   {float(e.radius):.1e}")

pt = ratio(100, table)
print(f"\nm=100: ratio in [{float(pt.ratio.lo):.15f}, {float(pt.ratio.hi):.15f}]")

# The same value is available exactly, since a periodic expansion is a surd.
exact = build_table(src.to_surd(), 0)
print("exact ratio:", ratio(100, exact).ratio)

rep = verify(src, 300)
print("\n" + rep.summary())
