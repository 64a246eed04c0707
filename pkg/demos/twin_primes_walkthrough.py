"""
Twin primes: constant, prediction, count
========================================

Run with ``python demos/twin_primes_walkthrough.py``. Takes a few seconds.
"""

import math

import numpy as np

from primeheur import constants as K
from primeheur.census import count
from primeheur.families import Pair, Twin
from primeheur.predictor import log_power_integral, predict
from primeheur.tuples import adjustment_product_direct, parse_tuple

# The twin prime constant, once from the accelerated series and once as a
# plain product over p <= 10**6.
fast = K.twin_constant()
slow = adjustment_product_direct(parse_tuple("x,x+2"), 10**6)
print("C2 accelerated   ", fast.digits(20), "+-", f"{fast.error_bound:.1e}")
print("2*C2 direct 1e6  ", slow.digits(12), "+-", f"{slow.error_bound:.1e}")

# Actual counts against the two predictions.
print(f"\n{'N':>10} {'actual':>8} {'integral':>9} {'ratio':>9}")
for e in range(3, 9):
    N = 10**e
    r = predict(Twin(), N)
    print(f"{N:>10} {count(Twin(), N).count:>8} {r.integral_estimate:>9.0f} {r.ratio_estimate:>9.0f}")

# The integral form keeps track much better than N / log^2 N.
N = np.logspace(3, 12, 10)
li2 = np.array([log_power_integral(2, n, 2) for n in N])
print("\nratio (N/log^2 N) / Li2(N):", np.round(N / np.log(N) ** 2 / li2, 3))

# Pairs with gap 6 should be about twice as common as twins.
tw, p6 = count(Twin(), 10**7).count, count(Pair(6), 10**7).count
print(f"\ngap 6 / gap 2 up to 1e7: {p6 / tw:.4f}  (C2,3 / C2 = {float(K.pair_constant(6).value / fast.value):g})")
print("sanity:", math.isclose(p6 / tw, 2, rel_tol=0.05))
