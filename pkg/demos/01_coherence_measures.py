"""
Coherence measures on small states
==================================

Relative entropy of coherence and l1-norm of coherence for a few
hand-picked states, then a mixed state where the two paths differ.
"""

import numpy as np

from qcoherence import DensityMatrix, coherence_of_mixed
from qcoherence.coherence import coherence_of_amplitudes
from qcoherence.coherence import Majorization, majorization_compare

# a basis state has no coherence at all
print(coherence_of_amplitudes(np.array([0, 1, 0, 0], dtype=complex)))

# the uniform superposition is maximally coherent: (n, 2**n - 1)
n = 4
uniform = np.full(1 << n, 2 ** (-n / 2), dtype=complex)
print(coherence_of_amplitudes(uniform))

# phases do not matter, only the moduli do
phased = uniform * np.exp(1j * np.linspace(0, 3, 1 << n))
print(coherence_of_amplitudes(phased))

# a mixed state: dephasing half of |+><+|
plus = np.array([1, 1]) / np.sqrt(2)
rho = 0.5 * np.outer(plus, plus) + 0.25 * np.eye(2)
print(coherence_of_mixed(DensityMatrix(rho)))   # c_l1 = 0.5, c_r < 1

# majorization orders the measurement distributions
p = np.array([0.7, 0.2, 0.1])
q = np.array([0.5, 0.3, 0.2])
print(majorization_compare(p, q) is Majorization.P_MAJORIZES_Q)
