"""
Primorial, factorial and Cullen/Woodall primes
==============================================

Counts use strong probable-prime tests. The 10**3 rows take a minute or two.
"""

import sys

from primeheur.census import count
from primeheur.families import Cullen, Factorial, Primorial, Woodall
from primeheur.predictor import predict

bounds = [10, 100, 1000] if "--full" in sys.argv else [10, 100]

for name, plus, minus in (("p# +- 1", Primorial(1), Primorial(-1)),
                          ("n! +- 1", Factorial(1), Factorial(-1))):
    print(name)
    for N in bounds:
        pred = predict(plus, N)
        print(f"  N={N:<5} +1: {count(plus, N).count:3d}  -1: {count(minus, N).count:3d}"
              f"  expected {pred.integral_estimate:6.2f} (closed form {pred.ratio_estimate:.2f})")

# Woodall primes follow the estimate, Cullen primes are scarcer.
N = 1000
r = predict(Cullen(), N)
print(f"\nn <= {N}: Woodall {count(Woodall(), N).count}, Cullen {count(Cullen(), N).count},"
      f" expected {r.integral_estimate:.1f} / {r.ratio_estimate:.1f}")
