"""
Coherence along a Grover search
===============================

n = 10 qubits, M marked items.  The search starts in the maximally
coherent uniform state and the coherence falls to about log2(M) near
the point where a solution is found, then revives.
"""

import math

from qcoherence import GroverConfig, min_coherence_vs_M, optimal_iterations, run_trace
from qcoherence.grover import classify_critical_points, first_coherence_minimum, success_argmax

n = 10

for M in (1, 2, 4, 16):
    rows = run_trace(GroverConfig(n, M, k_max=60))
    k_min = first_coherence_minimum(rows)
    print(f"M={M:2d}  k*={optimal_iterations(n, M):2d}  "
          f"first C_r minimum at k={k_min:2d}  success argmax k={success_argmax(rows):2d}  "
          f"C_r there {rows[k_min].c_r_sim:.4f}")

# the closed form and the statevector agree row by row
rows = run_trace(GroverConfig(n, 4, k_max=60))
print("max closed/sim gap:", max(abs(r.c_r_closed - r.c_r_sim) for r in rows))

# for M=2 and M=4 the continuous minimum sits near a half-integer,
# so rounding k* and the integer-k minimum pick different neighbours
for p in classify_critical_points(n, 4, 30):
    if p.kind == "solution_min":
        print("continuous solution minimum, M=4:", round(p.k, 4))

print("k   C_r      C_l1     P(success)")
for r in rows[10:16]:
    print(f"{r.k:2d}  {r.c_r_sim:.5f}  {r.c_l1_sim:8.4f}  {r.p_success:.6f}")

# minimal coherence grows with the number of solutions
for r in min_coherence_vs_M(n, [1, 2, 4, 8, 16]):
    print(f"M={r.M:2d}  log2 M={math.log2(r.M):.0f}  min C_r={r.min_c_r:.4f}  "
          f"min C_l1={r.min_c_l1:.3f}")
