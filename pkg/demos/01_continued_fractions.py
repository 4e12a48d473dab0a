"""Continued fractions and convergents of a few quadratic irrationals.

Run:  python demos/01_continued_fractions.py
"""

from threegap import SurdSource, build_table, constant_type_bound, surd_normalize

phi = surd_normalize(1, 1, 5, 2)
sqrt2 = surd_normalize(0, 1, 2, 1)
x = surd_normalize(3, 7, 11, 5)          # (3 + 7 sqrt 11) / 5

# The expansion of a surd is eventually periodic; the period is found exactly.
for alpha in (phi, sqrt2, x):
    src = SurdSource(alpha)
    print(f"{alpha}:  preperiod {list(src.preperiod)}  period {list(src.period)}")

# Convergents p_n/q_n and the errors eta_n = |q_n alpha - p_n|, all exact.
t = build_table(sqrt2, 6)
print("\n n   a_n    p_n    q_n   eta_n")
for n, a, p, q, eta in t.rows():
    print(f"{n:2d} {a:4d} {p:6d} {q:6d}   {eta}  ~ {float(eta):.3e}")

# eta_{n-1} = a_{n+1} eta_n + eta_{n+1} holds as an exact identity.
residues = {t.eta(n - 1) - t.a(n + 1) * t.eta(n) - t.eta(n + 1) for n in range(5)}
print("\nrecurrence residues all zero:", residues == {0})

# Bounded partial quotients ("constant type"): the bound is exact once a period is seen.
print("B(phi) =", constant_type_bound(SurdSource(phi), 10))
print("B(x)   =", constant_type_bound(SurdSource(x), 20))
