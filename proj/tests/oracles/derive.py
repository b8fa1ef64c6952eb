# SPDX-License-Identifier: Apache-2.0
#
# Copyright 2026 The nowhereq Authors
"""Independent reference values, recomputed from first principles.

Uses only fractions (exact geometry by literal hole removal) and mpmath
(high precision reals). Its output is frozen into the C++ unit tests.
"""
from fractions import Fraction as F

import mpmath as mp

mp.mp.dps = 60


def stage(n):
    """Stage-n intervals by literal removal of centred holes of length 4^-k."""
    ivs = [(F(0), F(1))]
    for k in range(1, n):
        out = []
        h = F(1, 4**k)
        for a, b in ivs:
            mid = (a + b) / 2
            out += [(a, mid - h / 2), (mid + h / 2, b)]
        ivs = out
    return ivs


def holes_upto(g):
    """Holes of C with generation <= g, as (generation, lo, hi)."""
    out = []
    ivs = [(F(0), F(1))]
    for k in range(1, g + 1):
        nxt = []
        h = F(1, 4**k)
        for a, b in ivs:
            mid = (a + b) / 2
            out.append((k, mid - h / 2, mid + h / 2))
            nxt += [(a, mid - h / 2), (mid + h / 2, b)]
        ivs = nxt
    return out


def components(n, depth):
    """Hulls of A_n reachable with hole generations <= depth (unordered)."""
    hulls = [(F(0), F(1))]
    base = holes_upto(depth)
    for _ in range(1, n):
        nxt = []
        for a, b in hulls:
            w = b - a
            nxt += [(a + w * lo, a + w * hi) for _, lo, hi in base]
        hulls = nxt
    return hulls


def t(n):
    return stage(n)[0][1] if n <= 16 else F(1 + 2 ** (n - 1), 2 ** (2 * n - 1))


def show(name, value):
    print(f"{name} = {value}")


show("sqrt2", mp.sqrt(2))
show("(32/5)^(4/3)", mp.power(mp.mpf(32) / 5, mp.mpf(4) / 3))
show("ln4", mp.log(4))
show("stage2", stage(2))
show("stage3", stage(3))
for n in (1, 5, 12):
    show(f"measure stage({n})", sum(b - a for a, b in stage(n)))
show("t2,t3", (t(2), t(3)))
# t recurrence t_{n+1} = (t_n - 4^-n)/2 vs closed form
ok = True
tn = F(1)
for n in range(1, 61):
    ok &= tn == F(1 + 2 ** (n - 1), 2 ** (2 * n - 1))
    tn = (tn - F(1, 4**n)) / 2
show("t closed form n<=60", ok)


def left_tail(n, m):
    tn = t(n)
    return sum(max(F(0), min(b, tn) - a) for a, b in stage(m))


show("left_tail(2,3)", left_tail(2, 3))
show("left_tail(3,10) - 2^-3", left_tail(3, 10) - F(1, 8))
show("A2 D=1 hull", components(2, 1))
show("A2 D=2 hulls", sorted(components(2, 2)))
show("A2 D=1 m=2 realization", F(1, 4) * F(3, 4))
u = (F(1, 3), F(1, 2))
for n in range(1, 9):
    inside = [h for h in components(n, 5 if n <= 3 else 3) if u[0] <= h[0] and h[1] <= u[1]]
    show(f"components of A_{n} inside (1/3,1/2), D<=5/3", len(inside))

# single-term integrals
show("int x^-1/2 on [0,1]", 2)
show("lb h~_2 pick j0=2 on [1/4,1] q=2", mp.mpf(1) / 144 * 3 * (mp.cbrt(4) - 1))
# int_{1/4}^1 (x^-1/2/4 + x^-2/3/12)^2 dx
f = lambda x: (x ** (-0.5) / 4 + x ** (-mp.mpf(2) / 3) / 12) ** 2
show("int (h~_2)^2 on [1/4,1]", mp.quad(f, [mp.mpf(1) / 4, 1]))
# h with p=5/4 (q=5/4) check: ||h~_2||_{5/4}^{5/4} on [0,1]
p = mp.mpf(5) / 4
r = lambda j: p * (j + 1) / j
g = lambda x: sum(mp.power(2, -j) * x ** (-1 / r(j)) / (j + 1) ** (1 / p) for j in (1, 2)) ** p
show("int (h~_2)^(5/4) on [0,1], p=5/4", mp.quad(g, [0, mp.mpf(1) / 1000, 1]))

# lemma chain p=1 q=2 s=4/3
s = mp.mpf(4) / 3
show("LB(3)", mp.power(2, -3) * mp.power(mp.mpf(32) / 5, s))
show("corrected(3)", mp.power(2, (s - 1) * 3 - s))
show("LB(40)", mp.power(2, -40) * mp.power(mp.mpf(t(40).numerator) / t(40).denominator, -s))
# divergence g_1, U=(1/3,1/2), witness level 3, |I|=1/64, l=2, j=2, j0=2
coef = (mp.mpf(1) / 4 * mp.mpf(1) / 4 * 64 * mp.mpf(1) / 12) ** 2
show("divergence coefficient^2", coef)
for n in (67, 68):
    tn = mp.mpf(t(n).numerator) / t(n).denominator
    show(f"divergence bound n={n}", coef / 64 * mp.power(2, -n) * mp.power(tn, -s))
# U=[0,1], M=10: level 1, l=1 weight 1, j=1, |I|=1, j0=2 -> coef (1/2 * 1/12)^2
coef1 = (mp.mpf(1) / 2 * mp.mpf(1) / 12) ** 2
for n in range(1, 60):
    tn = mp.mpf(t(n).numerator) / t(n).denominator
    if coef1 * mp.power(2, -n) * mp.power(tn, -s) >= 10:
        show("U=[0,1] M=10 first n", n)
        break


# N = ||chi_C h~_J||_1 for p = 1: stage-m closed form minus/plus the
# removed-set slack, in double precision over all stage intervals.
def normalizer_p1(J, m):
    import numpy as np

    ivs = stage(m) if m <= 14 else None
    assert ivs is not None
    a = np.array([float(x[0]) for x in ivs])
    b = np.array([float(x[1]) for x in ivs])
    total = 0.0
    for j in range(1, J + 1):
        e = j / (j + 1)
        c = 2.0**-j / (j + 1)
        total += c * np.sum((b ** (1 - e) - a ** (1 - e)) / (1 - e))
    return total


for m in (10, 12, 14):
    show(f"stage-{m} ||h~_20||_1 (upper bound for N-part)", normalizer_p1(20, m))
