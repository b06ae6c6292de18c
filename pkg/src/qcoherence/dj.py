"""Deutsch-Jozsa in the phase-oracle form ``U_f |x> = (-1)**f(x) |x>``.

Function tables are bit strings of length ``2**n`` with index 0 leftmost,
e.g. ``"01100101"`` means ``f(1) = f(2) = f(5) = f(7) = 1``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .coherence import CoherencePair, coherence_of_pure
from .errors import CapacityError, InvalidFunctionError, ValidationError
from .state import (PhaseOracleSpec, apply_phase_oracle, check_capacity,
                    hadamard_all, new_uniform, probabilities)

MAX_ENUMERATION_QUBITS = 4


def _classify(table: np.ndarray) -> str:
    ones = int(np.count_nonzero(table))
    if ones == 0 or ones == table.size:
        return "constant"
    if 2 * ones == table.size:
        return "balanced"
    return "other"


@dataclass(frozen=True)
class DjFunction:
    n: int
    table: np.ndarray
    kind: str

    @classmethod
    def from_table(cls, table) -> DjFunction:
        table = np.asarray(table, dtype=bool).ravel()
        n = table.size.bit_length() - 1
        if table.size < 2 or table.size != 1 << n:
            raise ValidationError(f"table length {table.size} is not 2**n with n >= 1")
        check_capacity(n)
        return cls(n, table, _classify(table))

    @classmethod
    def from_bitstring(cls, bits: str, n: int | None = None) -> DjFunction:
        if not bits or set(bits) - {"0", "1"}:
            raise ValidationError(f"table {bits!r} must be a non-empty string of 0/1")
        if n is not None and len(bits) != 1 << n:
            raise ValidationError(
                f"table has length {len(bits)}, expected 2**{n} = {1 << n}")
        return cls.from_table([c == "1" for c in bits])

    @classmethod
    def constant(cls, n: int, value: int = 0) -> DjFunction:
        check_capacity(n)
        return cls.from_table(np.full(1 << n, bool(value)))

    def bitstring(self) -> str:
        return "".join("1" if b else "0" for b in self.table)


@dataclass(frozen=True)
class DjResult:
    verdict: str
    trace: tuple[CoherencePair, CoherencePair, CoherencePair]
    p_zero: float
    final_amplitudes: np.ndarray


def run_dj(f: DjFunction) -> DjResult:
    """Uniform state, phase oracle, Hadamard on all qubits; coherence at each stage."""
    if f.kind not in ("constant", "balanced"):
        raise InvalidFunctionError(
            f"function with {int(f.table.sum())} ones out of {f.table.size} "
            "is neither constant nor balanced")
    state = new_uniform(f.n)
    trace = [coherence_of_pure(state)]
    apply_phase_oracle(state, PhaseOracleSpec(f.table))
    trace.append(coherence_of_pure(state))
    hadamard_all(state)
    trace.append(coherence_of_pure(state))
    p_zero = float(probabilities(state)[0])
    verdict = "constant" if p_zero >= 0.5 else "balanced"
    return DjResult(verdict, tuple(trace), p_zero, state.amplitudes)


def balanced_tables(n: int):
    """Every balanced table on ``n`` qubits, in lexicographic order of the ones' positions."""
    size = 1 << n
    for ones in itertools.combinations(range(size), size // 2):
        table = np.zeros(size, dtype=bool)
        table[list(ones)] = True
        yield DjFunction(n, table, "balanced")


def random_balanced(n: int, rng: np.random.Generator) -> DjFunction:
    size = 1 << n
    table = np.zeros(size, dtype=bool)
    table[rng.choice(size, size // 2, replace=False)] = True
    return DjFunction(n, table, "balanced")


@dataclass(frozen=True)
class BalancedExtremes:
    n: int
    count: int
    max_c_r: float
    max_c_l1: float
    min_c_r: float
    min_c_l1: float
    argmax_c_r: str
    argmax_c_l1: str
    max_p_zero: float

    @property
    def bound_c_r(self) -> float:
        return float(self.n - 1)

    @property
    def bound_c_l1(self) -> float:
        return float((1 << (self.n - 1)) - 1)

    @property
    def within_bounds(self) -> bool:
        """Whether both maxima respect ``C_r <= n-1`` and ``C_l1 <= 2**(n-1) - 1``.

        Holds for ``n <= 3``; at ``n = 4`` some balanced functions reach
        ``C_l1 = 8``.
        """
        return (self.max_c_r <= self.bound_c_r + 1e-9
                and self.max_c_l1 <= self.bound_c_l1 + 1e-9)


def balanced_coherence_extremes(n: int) -> BalancedExtremes:
    """Exhaustive scan of all balanced functions on ``n <= 4`` qubits."""
    if not 1 <= n <= MAX_ENUMERATION_QUBITS:
        raise CapacityError(
            f"exhaustive enumeration limited to n <= {MAX_ENUMERATION_QUBITS}, got {n}")
    best_r = best_l1 = (-1.0, "")
    lo_r = lo_l1 = np.inf
    max_p0 = 0.0
    count = 0
    for f in balanced_tables(n):
        res = run_dj(f)
        final = res.trace[2]
        count += 1
        max_p0 = max(max_p0, res.p_zero)
        if final.c_r > best_r[0]:
            best_r = (final.c_r, f.bitstring())
        if final.c_l1 > best_l1[0]:
            best_l1 = (final.c_l1, f.bitstring())
        lo_r = min(lo_r, final.c_r)
        lo_l1 = min(lo_l1, final.c_l1)
    return BalancedExtremes(n, count, best_r[0], best_l1[0], float(lo_r), float(lo_l1),
                            best_r[1], best_l1[1], max_p0)
