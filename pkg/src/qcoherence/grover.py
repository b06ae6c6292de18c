"""Grover search with a per-iteration coherence trace.

After ``k`` iterations the state is ``cos(w)|alpha> + sin(w)|beta>`` with
``w = (2k + 1) * theta / 2`` and ``cos(theta / 2) = sqrt((N - M) / N)``, where
``|alpha>`` and ``|beta>`` are the uniform superpositions over non-solutions
and solutions.  Closed forms below are functions of ``w`` only and are
checked against direct simulation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .coherence import CoherencePair, coherence_of_pure
from .errors import NoSolutionError, ValidationError
from .state import (PhaseOracleSpec, apply_diffusion, apply_phase_oracle,
                    check_capacity, new_uniform, probabilities)


def _sizes(n: int, M: int) -> tuple[int, int]:
    N = 1 << n
    if not 0 <= M <= N:
        raise ValidationError(f"solution count {M} outside 0..{N}")
    return N, M


def theta(n: int, M: int) -> float:
    """Rotation angle with ``cos(theta/2) = sqrt((N-M)/N)``.

    Evaluated as ``2 asin(sqrt(M/N))``; ``acos`` near 1 loses about half the
    digits for small ``M/N``.
    """
    N, M = _sizes(n, M)
    if M == 0:
        return 0.0
    if M == N:
        return math.pi
    return 2.0 * math.asin(math.sqrt(M / N))


def optimal_iterations(n: int, M: int) -> int:
    """Nearest integer to ``(pi/4) sqrt(N/M)``, halves rounded away from zero."""
    N, M = _sizes(n, M)
    if M == 0:
        raise NoSolutionError("no solutions: optimal iteration count undefined")
    return math.floor(math.pi / 4 * math.sqrt(N / M) + 0.5)


def omega(n: int, M: int, k: float) -> float:
    return (2 * k + 1) * theta(n, M) / 2


def closed_form_state(n: int, M: int, k: float) -> tuple[float, float]:
    """Coefficients ``(cos w, sin w)`` of ``G**k |psi0>`` on ``|alpha>, |beta>``."""
    if M == 0:
        raise NoSolutionError("no solutions: |beta> is undefined")
    w = omega(n, M, k)
    return math.cos(w), math.sin(w)


def _xlog_term(weight: float, count: int) -> float:
    # weight * log2(weight / count) spread over `count` equal amplitudes
    if weight == 0.0 or count == 0:
        return 0.0
    return weight * math.log2(weight / count)


def coherence_from_omega(N: int, M: int, w: float) -> CoherencePair:
    c, s = math.cos(w), math.sin(w)
    c2, s2 = c * c, s * s
    c_r = -(_xlog_term(c2, N - M) + _xlog_term(s2, M))
    c_l1 = (math.sqrt(N - M) * abs(c) + math.sqrt(M) * abs(s)) ** 2 - 1.0
    return CoherencePair(max(c_r, 0.0), max(c_l1, 0.0))


def closed_form_coherence(n: int, M: int, k: float) -> CoherencePair:
    """Coherence of ``G**k |psi0>`` from the two-dimensional rotation picture.

    ``C_r = -2 [cos^2 w log2(|cos w| / sqrt(N-M)) + sin^2 w log2(|sin w| / sqrt M)]``
    and ``C_l1 = (sqrt(N-M) |cos w| + sqrt(M) |sin w|)**2 - 1``.
    """
    if M == 0:
        raise NoSolutionError("no solutions: closed form undefined")
    N, M = _sizes(n, M)
    return coherence_from_omega(N, M, omega(n, M, k))


def printed_closed_form_cr(n: int, M: int, k: float) -> float:
    """``C_r`` with un-rooted ``N - M`` and ``M`` inside the logarithms.

    Kept only to quantify its disagreement with simulation; it does not
    reproduce ``C_r = n`` at ``k = 0``.
    """
    N, M = _sizes(n, M)
    if M == 0:
        raise NoSolutionError("no solutions: closed form undefined")
    c, s = closed_form_state(n, M, k)
    total = 0.0
    if c != 0.0 and N > M:
        total += c * c * math.log2(abs(c) / (N - M))
    if s != 0.0:
        total += s * s * math.log2(abs(s) / M)
    return -2.0 * total


def coherence_derivatives(n: int, M: int, k: float) -> tuple[float, float]:
    """``(dC_r/dk, dC_l1/dk)`` with ``k`` treated as continuous.

    Where the ``C_r`` expression is ``0 * log(0)`` or ``0 * log(inf)``
    (``sin w`` or ``cos w`` exactly zero) the first entry is ``nan``.
    ``C_l1`` has a cusp wherever ``sin(2w) = 0``; there ``sgn(0) = 0`` and the
    returned value is the mean of the one-sided derivatives.
    """
    N, M = _sizes(n, M)
    if M == 0:
        raise NoSolutionError("no solutions: derivatives undefined")
    th = theta(n, M)
    w = (2 * k + 1) * th / 2
    s2w = math.sin(2 * w)
    c2w = math.cos(2 * w)
    sw, cw = math.sin(w), math.cos(w)

    if N == M or sw == 0.0 or cw == 0.0:
        d_cr = math.nan
    else:
        d_cr = th * s2w * math.log2(M / (N - M) * (cw / sw) ** 2)

    sgn = (s2w > 0) - (s2w < 0)
    d_cl1 = th * ((2 * M - N) * s2w + 2 * math.sqrt((N - M) * M) * sgn * c2w)
    return d_cr, d_cl1


@dataclass(frozen=True)
class CriticalPoint:
    k: float
    kind: str
    physical: bool = True


def classify_critical_points(n: int, M: int, k_max: float) -> list[CriticalPoint]:
    """Stationary points of the coherence curves in ``[0, k_max]``.

    kinds: ``solution_min`` (``cos w = 0``), ``psi0_peak`` / ``O_psi0_peak``
    (``w = +-theta/2 mod pi``, a pair one iteration apart),
    ``inter_peak_valley`` (``cos w = +-1``, not reachable at integer k) and
    ``degenerate`` for ``M = 0``.
    """
    N, M = _sizes(n, M)
    if M == 0:
        return [CriticalPoint(math.nan, "degenerate", physical=False)]
    th = theta(n, M)
    points = []
    # k = w / theta - 1/2
    m = 0
    while True:
        period = m * math.pi / th
        candidates = [
            (period + 0.5 * math.pi / th - 0.5, "solution_min", True),
            (period, "psi0_peak", True),
            (period - 1.0, "O_psi0_peak", True),
            (period - 0.5, "inter_peak_valley", False),
        ]
        if period - 1.0 > k_max:
            break
        for k, kind, phys in candidates:
            if -1e-12 <= k <= k_max + 1e-12:
                points.append(CriticalPoint(max(k, 0.0), kind, phys))
        m += 1
    points.sort(key=lambda p: (p.k, p.kind))
    return points


@dataclass
class GroverConfig:
    n: int
    M: int
    solutions: Sequence[int] | None = None
    k_max: int | None = None
    seed: int | None = None

    def __post_init__(self):
        check_capacity(self.n)
        N = 1 << self.n
        if not 0 <= self.M <= N:
            raise ValidationError(f"solution count {self.M} outside 0..{N}")
        if self.solutions is None:
            if self.seed is None:
                self.solutions = tuple(range(self.M))
            else:
                rng = np.random.default_rng(self.seed)
                self.solutions = tuple(sorted(int(i) for i in
                                              rng.choice(N, self.M, replace=False)))
        else:
            self.solutions = tuple(sorted(set(int(i) for i in self.solutions)))
        if len(self.solutions) != self.M:
            raise ValidationError(
                f"{len(self.solutions)} distinct solutions given, M = {self.M}")
        if self.solutions and (self.solutions[0] < 0 or self.solutions[-1] >= N):
            raise ValidationError(f"solution index outside 0..{N - 1}")
        if self.k_max is None:
            self.k_max = 2 * optimal_iterations(self.n, self.M) + 5 if self.M else 5


@dataclass(frozen=True)
class GroverTraceRow:
    k: int
    c_r_closed: float
    c_l1_closed: float
    c_r_sim: float
    c_l1_sim: float
    p_success: float


def run_trace(config: GroverConfig) -> list[GroverTraceRow]:
    """Simulate ``G = D O`` for ``k = 0..k_max``; row ``k`` describes ``G**k |psi0>``."""
    n, M = config.n, config.M
    if M == 0:
        raise NoSolutionError("run_trace needs at least one solution")
    oracle = PhaseOracleSpec.from_solutions(n, config.solutions)
    sol = np.asarray(config.solutions)
    state = new_uniform(n)
    rows = []
    for k in range(config.k_max + 1):
        closed = closed_form_coherence(n, M, k)
        sim = coherence_of_pure(state)
        p = float(probabilities(state)[sol].sum())
        rows.append(GroverTraceRow(k, closed.c_r, closed.c_l1, sim.c_r, sim.c_l1, p))
        apply_phase_oracle(state, oracle)
        apply_diffusion(state)
    return rows


def success_argmax(rows: Sequence[GroverTraceRow]) -> int:
    """Iteration of the first local maximum of the success probability."""
    p = [r.p_success for r in rows]
    for i in range(1, len(p) - 1):
        if p[i] >= p[i - 1] and p[i] > p[i + 1]:
            return rows[i].k
    return rows[int(np.argmax(p))].k


def first_coherence_minimum(rows: Sequence[GroverTraceRow], measure: str = "c_r_sim") -> int:
    """Iteration of the first local minimum of a trace column."""
    v = [getattr(r, measure) for r in rows]
    for i in range(1, len(v) - 1):
        if v[i] < v[i - 1] and v[i] <= v[i + 1]:
            return rows[i].k
    return rows[int(np.argmin(v))].k


@dataclass(frozen=True)
class MinCoherence:
    M: int
    min_c_r: float
    min_c_l1: float
    k_min_c_r: int = field(default=0, compare=False)


def min_coherence(n: int, M: int) -> MinCoherence:
    rows = run_trace(GroverConfig(n, M, k_max=2 * optimal_iterations(n, M)))
    i = int(np.argmin([r.c_r_sim for r in rows]))
    return MinCoherence(M, rows[i].c_r_sim, min(r.c_l1_sim for r in rows), rows[i].k)


def min_coherence_vs_M(n: int, Ms: Sequence[int]) -> list[MinCoherence]:
    """Minimum simulated coherence over ``k in [0, 2 k*]`` for each solution count."""
    return [min_coherence(n, M) for M in Ms]
