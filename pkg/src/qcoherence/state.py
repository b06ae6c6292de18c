"""Dense statevector and the unitary primitives used by the three algorithms.

Basis index convention: with a register layout ``(t, L)`` the basis state
``|j>|k>`` (first register ``j`` on ``t`` qubits, second register ``k`` on
``L`` qubits) lives at index ``j * 2**L + k``, i.e. the first register holds
the high-order bits.  A flat amplitude array can therefore be viewed as a
``(2**t, 2**L)`` matrix whose rows are first-register values.

All operations mutate the state in place and return it, so calls chain.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Callable, Iterable

import numpy as np

from .errors import CapacityError, InvalidBaseError, LayoutError, ValidationError

MAX_QUBITS = 26


def check_capacity(num_qubits: int) -> None:
    if not 1 <= num_qubits <= MAX_QUBITS:
        raise CapacityError(
            f"{num_qubits} qubits outside supported range 1..{MAX_QUBITS}")


@dataclass(frozen=True)
class RegisterLayout:
    """Split of the qubits into a first (high-order) and second register."""
    t: int
    L: int

    def __post_init__(self):
        if self.t < 1 or self.L < 0:
            raise LayoutError(f"invalid register sizes t={self.t}, L={self.L}")

    @property
    def num_qubits(self) -> int:
        return self.t + self.L


class StateVector:
    """Pure state of ``num_qubits`` qubits stored as ``2**n`` complex amplitudes.

    Not safe for concurrent mutation; give each worker its own instance.
    """

    def __init__(self, amplitudes, layout: RegisterLayout | None = None):
        amps = np.ascontiguousarray(amplitudes, dtype=np.complex128).ravel()
        size = amps.size
        n = size.bit_length() - 1
        if size < 2 or size != 1 << n:
            raise ValidationError(f"amplitude count {size} is not 2**n with n >= 1")
        check_capacity(n)
        if layout is not None and layout.num_qubits != n:
            raise LayoutError(
                f"layout t={layout.t}, L={layout.L} does not cover {n} qubits")
        self.amplitudes = amps
        self.num_qubits = n
        self.layout = layout

    @classmethod
    def basis(cls, num_qubits: int, index: int = 0,
              layout: RegisterLayout | None = None) -> StateVector:
        check_capacity(num_qubits)
        amps = np.zeros(1 << num_qubits, dtype=np.complex128)
        amps[index] = 1.0
        return cls(amps, layout)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def copy(self) -> StateVector:
        return StateVector(self.amplitudes.copy(), self.layout)

    def norm_squared(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def as_registers(self) -> np.ndarray:
        """Writable ``(2**t, 2**L)`` view of the amplitudes."""
        if self.layout is None:
            raise LayoutError("state has no register layout")
        return self.amplitudes.reshape(1 << self.layout.t, 1 << self.layout.L)

    def __repr__(self):
        lay = "" if self.layout is None else f", t={self.layout.t}, L={self.layout.L}"
        return f"StateVector(n={self.num_qubits}{lay})"


@dataclass(frozen=True)
class PhaseOracleSpec:
    """Boolean marking ``f(x)`` over all ``2**n`` basis indices."""
    marked: np.ndarray

    def __post_init__(self):
        mask = np.asarray(self.marked, dtype=bool)
        object.__setattr__(self, "marked", mask)

    @classmethod
    def from_solutions(cls, num_qubits: int, solutions: Iterable[int]) -> PhaseOracleSpec:
        mask = np.zeros(1 << num_qubits, dtype=bool)
        idx = np.fromiter(solutions, dtype=np.int64)
        if idx.size and (idx.min() < 0 or idx.max() >= mask.size):
            raise ValidationError(f"solution index outside 0..{mask.size - 1}")
        mask[idx] = True
        return cls(mask)

    @classmethod
    def from_predicate(cls, num_qubits: int,
                       predicate: Callable[[int], bool]) -> PhaseOracleSpec:
        return cls(np.array([bool(predicate(x)) for x in range(1 << num_qubits)]))

    @property
    def solution_count(self) -> int:
        return int(np.count_nonzero(self.marked))


def new_uniform(num_qubits: int) -> StateVector:
    """Equal superposition with every amplitude exactly ``1/sqrt(2**n)``."""
    check_capacity(num_qubits)
    dim = 1 << num_qubits
    return StateVector(np.full(dim, 1.0 / np.sqrt(dim), dtype=np.complex128))


def apply_phase_oracle(state: StateVector, oracle: PhaseOracleSpec) -> StateVector:
    if oracle.marked.size != state.dim:
        raise ValidationError(
            f"oracle covers {oracle.marked.size} indices, state has {state.dim}")
    np.negative(state.amplitudes, out=state.amplitudes, where=oracle.marked)
    return state


def apply_diffusion(state: StateVector) -> StateVector:
    """Inversion about the mean, ``2|psi0><psi0| - I``."""
    a = state.amplitudes
    mean = a.mean()
    np.subtract(2.0 * mean, a, out=a)
    return state


def fwht(block: np.ndarray) -> np.ndarray:
    """Normalized Walsh-Hadamard transform along axis 0, in place.

    ``block`` must be a C-contiguous 2-D array whose first dimension is a
    power of two; columns are transformed independently.
    """
    dim, width = block.shape
    h = 1
    while h < dim:
        v = block.reshape(dim // (2 * h), 2, h, width)
        top = v[:, 0].copy()
        v[:, 0] += v[:, 1]
        np.subtract(top, v[:, 1], out=v[:, 1])
        h *= 2
    block *= 1.0 / np.sqrt(dim)
    return block


def _register_block(state: StateVector, register: str) -> np.ndarray:
    if register == "all":
        return state.amplitudes.reshape(state.dim, 1)
    if register == "first":
        return state.as_registers()
    raise LayoutError(f"unknown register selection {register!r}")


def hadamard_all(state: StateVector, register: str = "all") -> StateVector:
    """``H`` on every qubit (``"all"``) or on the first register only (``"first"``)."""
    fwht(_register_block(state, register))
    return state


def inverse_qft(state: StateVector, register: str = "first") -> StateVector:
    """``|j> -> 2**-t/2 sum_k exp(-2 pi i j k / 2**t) |k>`` on the selected register."""
    block = _register_block(state, register)
    block[...] = np.fft.fft(block, axis=0, norm="ortho")
    return state


def qft(state: StateVector, register: str = "first") -> StateVector:
    """Forward transform, the inverse of :func:`inverse_qft`."""
    block = _register_block(state, register)
    block[...] = np.fft.ifft(block, axis=0, norm="ortho")
    return state


def modpow_table(x: int, N: int, count: int) -> np.ndarray:
    """``x**j mod N`` for ``j = 0..count-1`` by square-and-multiply over the bits of ``j``."""
    if N >= 1 << 31:
        raise CapacityError(f"modulus {N} too large for int64 products")
    exps = np.arange(count, dtype=np.int64)
    out = np.ones(count, dtype=np.int64) % N
    base = x % N
    while exps.any():
        odd = (exps & 1).astype(bool)
        out[odd] = out[odd] * base % N
        base = base * base % N
        exps >>= 1
    return out


def apply_modexp(state: StateVector, x: int, N: int) -> StateVector:
    """Modular-exponentiation black box ``|j>|k> -> |j>|k * x**j mod N>``.

    Acting on a second register prepared in ``|1>`` this is
    ``|j>|1> -> |j>|x**j mod N>``.  Values ``k >= N`` are left untouched so
    the map is a permutation of basis states.
    """
    g = gcd(x, N)
    if g != 1:
        raise InvalidBaseError(x, N, g)
    regs = state.as_registers()
    t, L = state.layout.t, state.layout.L
    if N > 1 << L:
        raise LayoutError(f"second register of {L} qubits cannot hold values mod {N}")
    powers = modpow_table(x, N, 1 << t)
    rows = np.arange(1 << t)
    out = regs.copy()
    out[:, :N] = 0
    for k in range(N):
        column = regs[:, k]
        if not column.any():
            continue
        out[rows, k * powers % N] = column
    regs[...] = out
    return state


def probabilities(state: StateVector) -> np.ndarray:
    a = state.amplitudes
    return a.real ** 2 + a.imag ** 2
