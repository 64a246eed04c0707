"""
log2 log2 of the Mersenne primes against their index
====================================================

Reads an exponent list (one per line) and fits a line. Pass a file path, or
it falls back to the list shipped with the tests.
"""

import sys
from pathlib import Path

import numpy as np

from primeheur.cli import figure_rows, read_exponents

path = sys.argv[1] if len(sys.argv) > 1 else Path(__file__).parents[1] / "tests" / "data" / "mersenne_exponents.txt"
rows = np.array(figure_rows("mersenne", read_exponents(path)))
n, y = rows.T

slope, intercept = np.polyfit(n, y, 1)
print(f"{len(n)} exponents, slope {slope:.4f}, intercept {intercept:.3f}")
# (e^gamma / log 2) log p exponents below p, so log2 p grows like n / e^gamma
print(f"heuristic slope {np.exp(-np.euler_gamma):.4f}")

try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    sys.exit(0)

plt.plot(n, y, "o", ms=3)
plt.plot(n, slope * n + intercept)
plt.xlabel("n")
plt.ylabel("log2 log2 M_n")
plt.savefig("mersenne_loglog.png", dpi=120)
print("wrote mersenne_loglog.png")
