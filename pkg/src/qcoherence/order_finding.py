"""Quantum order finding with a coherence trace, plus the classical parts of Shor.

The statevector holds ``t`` first-register qubits (phase estimate) above
``L = ceil(log2 N)`` second-register qubits, which start in ``|1>``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .coherence import CoherencePair, coherence_of_pure
from .errors import CapacityError, InvalidBaseError, ValidationError
from .state import (MAX_QUBITS, RegisterLayout, StateVector, apply_modexp,
                    hadamard_all, inverse_qft, probabilities)


def register_width(N: int) -> int:
    """``ceil(log2 N)`` qubits, enough for the residues ``0..N-1``."""
    return max(1, (N - 1).bit_length())


def default_t(N: int, epsilon: float) -> int:
    L = register_width(N)
    return 2 * L + 1 + math.ceil(math.log2(2 + 1 / (2 * epsilon)))


@dataclass
class QofConfig:
    x: int
    N: int
    epsilon: float = 0.25
    t: int | None = None
    L: int = field(init=False)

    def __post_init__(self):
        if self.N < 2:
            raise ValidationError(f"modulus must be >= 2, got {self.N}")
        if not 1 < self.x < self.N:
            raise ValidationError(f"base must satisfy 1 < x < N, got x={self.x}, N={self.N}")
        g = math.gcd(self.x, self.N)
        if g != 1:
            raise InvalidBaseError(self.x, self.N, g)
        if not 0 < self.epsilon < 1:
            raise ValidationError(f"epsilon must lie in (0, 1), got {self.epsilon}")
        self.L = register_width(self.N)
        if self.t is None:
            self.t = default_t(self.N, self.epsilon)
        if self.t < 1:
            raise ValidationError(f"t must be >= 1, got {self.t}")
        if self.t + self.L > MAX_QUBITS:
            raise CapacityError(
                f"t + L = {self.t} + {self.L} qubits exceeds guard {MAX_QUBITS}")

    @property
    def layout(self) -> RegisterLayout:
        return RegisterLayout(self.t, self.L)


def classical_order(x: int, N: int) -> int:
    """Least ``r > 0`` with ``x**r = 1 mod N`` by repeated multiplication."""
    if N < 2:
        raise ValidationError(f"modulus must be >= 2, got {N}")
    g = math.gcd(x, N)
    if g != 1:
        raise InvalidBaseError(x, N, g)
    r, value = 1, x % N
    while value != 1:
        value = value * x % N
        r += 1
    return r


@dataclass(frozen=True)
class QofResult:
    config: QofConfig
    trace: tuple[CoherencePair, CoherencePair, CoherencePair]
    distribution: np.ndarray
    state: StateVector


def run_qof(config: QofConfig) -> QofResult:
    """Hadamard on the first register, modular exponentiation, inverse QFT.

    ``trace`` holds the joint-state coherence after each of the three
    steps; ``distribution`` is the first-register outcome distribution of
    the final state.
    """
    layout = config.layout
    state = StateVector.basis(layout.num_qubits, 1, layout)
    hadamard_all(state, "first")
    trace = [coherence_of_pure(state)]
    apply_modexp(state, config.x, config.N)
    trace.append(coherence_of_pure(state))
    inverse_qft(state, "first")
    trace.append(coherence_of_pure(state))
    dist = probabilities(state).reshape(1 << config.t, 1 << config.L).sum(axis=1)
    return QofResult(config, tuple(trace), dist, state)


@dataclass(frozen=True)
class ContinuedFractionResult:
    measured_j: int
    t: int
    partial_quotients: tuple[int, ...]
    convergents: tuple[tuple[int, int], ...]
    candidate_r: int | None


def continued_fractions(j: int, t: int, N: int) -> ContinuedFractionResult:
    """Convergents of ``j / 2**t`` and the first denominator ``d <= N`` within ``2**-(t+1)``.

    The trivial leading convergent ``0/1`` is listed only for ``j = 0``,
    which carries no period information and gives no candidate.
    """
    Q = 1 << t
    if not 0 <= j < Q:
        raise ValidationError(f"outcome {j} outside 0..{Q - 1}")
    x = Fraction(j, Q)
    quotients = []
    num, den = j, Q
    while den:
        a, rem = divmod(num, den)
        quotients.append(a)
        num, den = den, rem

    convergents = []
    h_prev, h = 1, quotients[0]
    k_prev, k = 0, 1
    convergents.append((h, k))
    for a in quotients[1:]:
        h_prev, h = h, a * h + h_prev
        k_prev, k = k, a * k + k_prev
        convergents.append((h, k))
    if j > 0:
        convergents = convergents[1:]

    candidate = None
    if j > 0:
        bound = Fraction(1, 2 * Q)
        for s, d in convergents:
            if d > N:
                break
            if abs(x - Fraction(s, d)) <= bound:
                candidate = d
                break
    return ContinuedFractionResult(j, t, tuple(quotients), tuple(convergents), candidate)


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _reduce_to_order(x: int, N: int, multiple: int) -> int:
    # strip prime factors while x**(m/p) stays 1
    r = multiple
    for p in _prime_factors(multiple):
        while r % p == 0 and pow(x, r // p, N) == 1:
            r //= p
    return r


@dataclass(frozen=True)
class OrderResult:
    r: int | None
    attempts: int
    samples: tuple[int, ...]
    transcripts: tuple[ContinuedFractionResult, ...]

    @property
    def success(self) -> bool:
        return self.r is not None


def recover_order(config: QofConfig, samples: int = 10, seed=None,
                  qof: QofResult | None = None) -> OrderResult:
    """Sample first-register outcomes and combine continued-fraction candidates.

    Candidate denominators are folded together by lcm, so outcomes whose
    numerator shares a factor with ``r`` still contribute.  A budget that
    runs out returns ``r=None`` rather than raising.
    """
    if samples < 1:
        raise ValidationError(f"samples must be >= 1, got {samples}")
    if qof is None:
        qof = run_qof(config)
    rng = np.random.default_rng(seed)
    dist = qof.distribution / qof.distribution.sum()
    x, N = config.x, config.N
    acc = 1
    drawn, transcripts = [], []
    for attempt in range(1, samples + 1):
        j = int(rng.choice(dist.size, p=dist))
        cf = continued_fractions(j, config.t, N)
        drawn.append(j)
        transcripts.append(cf)
        if cf.candidate_r is None:
            continue
        acc = math.lcm(acc, cf.candidate_r)
        if pow(x, acc, N) == 1:
            r = _reduce_to_order(x, N, acc)
            return OrderResult(r, attempt, tuple(drawn), tuple(transcripts))
    return OrderResult(None, samples, tuple(drawn), tuple(transcripts))


def integer_root(n: int, k: int) -> int:
    """``floor(n ** (1/k))`` computed exactly."""
    if k == 2:
        return math.isqrt(n)
    r = int(round(n ** (1.0 / k)))
    while r ** k > n:
        r -= 1
    while (r + 1) ** k <= n:
        r += 1
    return r


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return _prime_factors(n) == [n]


def perfect_power(n: int) -> tuple[int, int] | None:
    """``(b, k)`` with ``b**k == n`` and ``k >= 2`` maximal, or ``None``."""
    for k in range(n.bit_length(), 1, -1):
        b = integer_root(n, k)
        if b > 1 and b ** k == n:
            return b, k
    return None


@dataclass(frozen=True)
class FactorResult:
    N: int
    factors: tuple[int, int] | None
    method: str
    attempts: int = 0
    base: int | None = None
    order: int | None = None
    log: tuple[str, ...] = ()

    @property
    def success(self) -> bool:
        return self.factors is not None


def shor_factor(N: int, seed=None, attempt_budget: int = 20, samples: int = 10,
                epsilon: float = 0.25, t: int | None = None) -> FactorResult:
    """Split ``N`` using order finding on random bases.

    Even and perfect-power ``N`` are split classically (``method`` says
    which).  A prime ``N`` raises :class:`ValidationError`.
    """
    if N < 4 or is_prime(N):
        raise ValidationError(f"{N} is not composite")
    if N % 2 == 0:
        return FactorResult(N, (2, N // 2), "even")
    pp = perfect_power(N)
    if pp is not None:
        b = pp[0]
        return FactorResult(N, (b, N // b), "prime_power")

    rng = np.random.default_rng(seed)
    log = []
    for attempt in range(1, attempt_budget + 1):
        x = int(rng.integers(2, N))
        g = math.gcd(x, N)
        if g > 1:
            log.append(f"x={x}: gcd {g}")
            return FactorResult(N, tuple(sorted((g, N // g))), "gcd", attempt, x, None,
                                tuple(log))
        config = QofConfig(x, N, epsilon=epsilon, t=t)
        found = recover_order(config, samples, seed=int(rng.integers(2 ** 63)))
        r = found.r
        if r is None:
            log.append(f"x={x}: order not recovered")
            continue
        if r % 2:
            log.append(f"x={x}: r={r} odd")
            continue
        half = pow(x, r // 2, N)
        if half == N - 1:
            log.append(f"x={x}: r={r}, x^(r/2) = -1 mod N")
            continue
        for cand in (math.gcd(half - 1, N), math.gcd(half + 1, N)):
            if 1 < cand < N:
                log.append(f"x={x}: r={r}, factor {cand}")
                return FactorResult(N, tuple(sorted((cand, N // cand))), "order", attempt,
                                    x, r, tuple(log))
        log.append(f"x={x}: r={r} gave only trivial factors")
    return FactorResult(N, None, "failed", attempt_budget, log=tuple(log))
