"""
Order finding and factoring
===========================

Stage coherence of the order-finding circuit for x=7, N=15, then a
full factoring run.
"""

import math

import numpy as np

from qcoherence import QofConfig, recover_order, run_qof, shor_factor
from qcoherence.order_finding import continued_fractions

config = QofConfig(7, 15, t=8)
res = run_qof(config)
for stage, c in zip(("after H", "after modexp", "after IQFT"), res.trace):
    print(f"{stage:13s} C_r={c.c_r:.6f}  C_l1={c.c_l1:.4f}")

# r = 4 divides 2**8 so the first register lands on multiples of 64
print("support:", np.flatnonzero(res.distribution > 1e-12).tolist())

# continued fractions turn a measurement into a candidate order
cf = continued_fractions(192, 8, 15)
print("convergents of 192/256:", cf.convergents, "-> r =", cf.candidate_r)

found = recover_order(config, samples=10, seed=2024, qof=res)
print("recovered order", found.r, "after", found.attempts, "samples")

# r = 6 does not divide 2**t: the final C_r sits a bit above 2 log2 r
res = run_qof(QofConfig(2, 21))
print(f"x=2, N=21, t={res.config.t}: C_r={res.trace[2].c_r:.4f}  2 log2 6={2 * math.log2(6):.4f}")

for N in (15, 21, 35):
    f = shor_factor(N, seed=1)
    print(N, "=", f.factors, "via", f.method, "base", f.base, "order", f.order)
