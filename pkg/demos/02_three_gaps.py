"""The three-gap structure of {alpha}, {2 alpha}, ..., {m alpha}.

Closed form from (k, r, s) next to the brute-force sort.

Run:  python demos/02_three_gaps.py
"""

from threegap import brute_force_gaps, build_table, gap_structure, surd_normalize

sqrt2 = surd_normalize(0, 1, 2, 1)
table = build_table(sqrt2, 0)

for m in (2, 10, 29):
    gs = gap_structure(m, table)
    print(f"m = {m}: (m, k, r, s) = {tuple(gs.decomposition)}")
    for e in gs.entries:
        flag = "   (absent)" if e.degenerate else ""
        print(f"   {e.tag:<5} {float(e.length):.6f} x {e.count}{flag}")
    sample = brute_force_gaps(sqrt2, m)
    same = gs.multiset() == dict(sample.multiset())
    print(f"   brute force agrees exactly: {same}\n")

# The partition always has m + 1 pieces and at most three lengths.
sizes = {len(brute_force_gaps(sqrt2, m).multiset()) for m in range(1, 300)}
print("distinct gap lengths seen for m < 300:", sorted(sizes))
