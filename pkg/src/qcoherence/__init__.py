"""Statevector simulation of Grover, Deutsch-Jozsa and quantum order finding,
with the relative-entropy and l1-norm coherence tracked at every step."""

__version__ = "0.1.0"

from .coherence import (CoherencePair, DensityMatrix, Majorization, coherence_of_mixed,
                        coherence_of_pure, hermitian_eigenvalues, majorization_compare)
from .dj import DjFunction, balanced_coherence_extremes, run_dj
from .errors import (CapacityError, InvalidBaseError, InvalidFunctionError, LayoutError,
                     NoSolutionError, ValidationError)
from .grover import (GroverConfig, GroverTraceRow, classify_critical_points,
                     closed_form_coherence, closed_form_state, coherence_derivatives,
                     min_coherence_vs_M, optimal_iterations, run_trace, theta)
from .order_finding import (ContinuedFractionResult, QofConfig, classical_order,
                            continued_fractions, recover_order, run_qof, shor_factor)
from .state import (PhaseOracleSpec, RegisterLayout, StateVector, apply_diffusion,
                    apply_modexp, apply_phase_oracle, hadamard_all, inverse_qft,
                    new_uniform, probabilities, qft)
