"""Reference values of the pruning confidence, evaluated directly at 60 digits.

    E = log( sum_l exp(-s_l) / (sum_l exp(-r_l))**alpha )

Output columns: alpha;survivors;removed;E  (lists comma-separated, floats in repr form).
Run: python3 gen_confidence_oracle.py > confidence_oracle.txt
"""
import random

import mpmath

mpmath.mp.dps = 60
rng = random.Random(20240611)

print("# alpha;survivors;removed;E")
for case in range(2000):
    L = rng.choice([1, 2, 4, 8, 16, 32])
    alpha = rng.choice([1.0, 2.0, 3.0, rng.uniform(1.0, 4.0)])
    scale = rng.choice([1.0, 10.0, 100.0, 1e3, 1e4])
    lo = rng.uniform(0.0, 1e4 - scale)
    pms = sorted(rng.uniform(lo, lo + scale) for _ in range(2 * L))
    if case % 7 == 0:
        # all metrics at the extreme end of the range
        pms = sorted(rng.uniform(9.9e3, 1e4) for _ in range(2 * L))
    surv, rem = pms[:L], pms[L:]
    num = mpmath.fsum(mpmath.exp(-mpmath.mpf(s)) for s in surv)
    den = mpmath.fsum(mpmath.exp(-mpmath.mpf(r)) for r in rem)
    e = mpmath.log(num / den ** mpmath.mpf(alpha))
    print("%r;%s;%s;%s" % (
        alpha,
        ",".join(repr(s) for s in surv),
        ",".join(repr(r) for r in rem),
        mpmath.nstr(e, 30),
    ))
