"""
Deutsch-Jozsa: constant vs balanced
===================================

A constant function ends in a basis state, so the final coherence is
zero.  A balanced one kills the |0...0> amplitude but can leave a lot
of coherence behind.
"""

import numpy as np

from qcoherence import DjFunction, run_dj
from qcoherence.dj import balanced_coherence_extremes, random_balanced

for bits in ("00000000", "00001111", "01100101"):
    res = run_dj(DjFunction.from_bitstring(bits))
    print(bits, res.verdict, f"p_zero={res.p_zero:.3f}",
          [f"({c.c_r:.3f}, {c.c_l1:.3f})" for c in res.trace])

# exhaustive ranges for small n
for n in (2, 3, 4):
    ext = balanced_coherence_extremes(n)
    print(f"n={n}: {ext.count} balanced functions, max C_r={ext.max_c_r:.4f} "
          f"(n-1={n - 1}), max C_l1={ext.max_c_l1:.4f} (2^(n-1)-1={2 ** (n - 1) - 1})")

# n=4 already breaks the l1 range: this table reaches C_l1 = 8
ext = balanced_coherence_extremes(4)
print("argmax table:", ext.argmax_c_l1)

# random balanced functions at n=8 typically sit well above 2^(n-1)-1
rng = np.random.default_rng(0)
l1 = [run_dj(random_balanced(8, rng)).trace[2].c_l1 for _ in range(200)]
print(f"n=8, 200 samples: C_l1 in [{min(l1):.1f}, {max(l1):.1f}]")
