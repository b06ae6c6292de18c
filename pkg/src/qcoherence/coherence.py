"""Coherence measures in the computational basis and a majorization comparator.

Both measures use base-2 logarithms with the convention ``0 log 0 = 0``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import CapacityError, ValidationError
from .state import StateVector

MAX_DENSITY_DIM = 64
NORM_TOL = 1e-9
HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-10
PSD_TOL = 1e-10


class CoherencePair(NamedTuple):
    c_r: float
    c_l1: float


def shannon_entropy(p) -> float:
    p = np.asarray(p, dtype=float)
    nz = p[p > 0]
    return float(-(nz * np.log2(nz)).sum()) + 0.0


def coherence_of_amplitudes(amplitudes) -> CoherencePair:
    """Coherence of a normalized pure state given by its amplitudes.

    ``C_r`` is the Shannon entropy of ``|a_i|**2``; ``C_l1`` is
    ``(sum |a_i|)**2 - sum |a_i|**2``.
    """
    a = np.asarray(amplitudes)
    mod = np.abs(a)
    p = mod * mod
    total = p.sum()
    if abs(total - 1.0) > NORM_TOL:
        raise ValidationError(f"state not normalized: sum |a|^2 = {total!r}")
    l1 = mod.sum() ** 2 - total
    return CoherencePair(shannon_entropy(p), max(float(l1), 0.0))


def coherence_of_pure(state: StateVector) -> CoherencePair:
    return coherence_of_amplitudes(state.amplitudes)


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, unit-trace, positive semidefinite ``d x d`` matrix.

    Hermiticity and trace are checked on construction; positivity needs the
    spectrum and is checked by :func:`coherence_of_mixed`.
    """
    entries: np.ndarray

    def __post_init__(self):
        rho = np.array(self.entries, dtype=np.complex128)
        if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
            raise ValidationError(f"density matrix must be square, got {rho.shape}")
        _check_hermitian(rho)
        tr = np.trace(rho).real
        if abs(tr - 1.0) > TRACE_TOL:
            raise ValidationError(f"trace {tr!r} != 1")
        object.__setattr__(self, "entries", rho)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @classmethod
    def from_pure(cls, amplitudes) -> DensityMatrix:
        a = np.asarray(amplitudes, dtype=np.complex128)
        return cls(np.outer(a, a.conj()))


def _check_hermitian(m: np.ndarray) -> None:
    scale = max(1.0, float(np.abs(m).max(initial=0.0)))
    dev = float(np.abs(m - m.conj().T).max(initial=0.0))
    if dev > HERMITIAN_TOL * scale:
        raise ValidationError(f"matrix not Hermitian (deviation {dev:.3g})")


def _round_robin(d: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Pairings for one cyclic sweep; every index pair appears exactly once.

    Pairs within a round are disjoint, so their rotations commute and can
    be applied together.
    """
    players = list(range(d)) + ([-1] if d % 2 else [])
    m = len(players)
    rounds = []
    for _ in range(m - 1):
        ps, qs = [], []
        for i in range(m // 2):
            a, b = players[i], players[m - 1 - i]
            if a >= 0 and b >= 0:
                ps.append(min(a, b))
                qs.append(max(a, b))
        rounds.append((np.array(ps, dtype=int), np.array(qs, dtype=int)))
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def _off_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.sqrt((off.real ** 2 + off.imag ** 2).sum()))


def hermitian_eigenvalues(matrix, tol: float = 1e-12, max_sweeps: int = 60) -> np.ndarray:
    """Ascending eigenvalues of a Hermitian matrix by cyclic complex Jacobi.

    Each rotation first removes the phase of ``a_pq`` and then applies the
    real symmetric Schur rotation.  Sweeps stop once the off-diagonal
    Frobenius norm is below ``tol * max(1, ||A||_F)``.
    """
    if isinstance(matrix, DensityMatrix):
        matrix = matrix.entries
    a = np.array(matrix, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValidationError(f"expected a square matrix, got shape {a.shape}")
    d = a.shape[0]
    if d > MAX_DENSITY_DIM:
        raise CapacityError(f"dimension {d} exceeds eigensolver guard {MAX_DENSITY_DIM}")
    _check_hermitian(a)
    a = 0.5 * (a + a.conj().T)
    if d == 1:
        return a.diagonal().real.copy()

    threshold = tol * max(1.0, float(np.linalg.norm(a)))
    rounds = _round_robin(d)
    for _ in range(max_sweeps):
        if _off_norm(a) <= threshold:
            break
        for p, q in rounds:
            b = a[p, q]
            mag = np.abs(b)
            active = mag > 0
            if not active.any():
                continue
            p, q, b, mag = p[active], q[active], b[active], mag[active]
            phase = b / mag
            app = a[p, p].real
            aqq = a[q, q].real
            zeta = (aqq - app) / (2.0 * mag)
            sign = np.where(zeta >= 0, 1.0, -1.0)
            tan = sign / (np.abs(zeta) + np.sqrt(1.0 + zeta * zeta))
            c = 1.0 / np.sqrt(1.0 + tan * tan)
            s = tan * c
            u = np.eye(d, dtype=np.complex128)
            u[p, p] = c
            u[p, q] = s
            u[q, p] = -s * phase.conj()
            u[q, q] = c * phase.conj()
            a = u.conj().T @ a @ u
        a = 0.5 * (a + a.conj().T)
    return np.sort(a.diagonal().real)


def von_neumann_entropy(eigenvalues) -> float:
    lam = np.clip(np.asarray(eigenvalues, dtype=float), 0.0, None)
    return shannon_entropy(lam)


def coherence_of_mixed(rho: DensityMatrix) -> CoherencePair:
    """``C_r = S(diag rho) - S(rho)`` and ``C_l1 = sum_{i != j} |rho_ij|``."""
    if not isinstance(rho, DensityMatrix):
        rho = DensityMatrix(rho)
    if rho.dim > MAX_DENSITY_DIM:
        raise CapacityError(f"dimension {rho.dim} exceeds guard {MAX_DENSITY_DIM}")
    lam = hermitian_eigenvalues(rho.entries)
    if lam[0] < -PSD_TOL:
        raise ValidationError(f"density matrix has negative eigenvalue {lam[0]:.3g}")
    m = rho.entries
    diag = np.clip(m.diagonal().real, 0.0, None)
    c_r = shannon_entropy(diag) - von_neumann_entropy(lam)
    c_l1 = float(np.abs(m).sum() - np.abs(m.diagonal()).sum())
    return CoherencePair(max(c_r, 0.0), max(c_l1, 0.0))


class Majorization(enum.Enum):
    P_MAJORIZES_Q = "p_majorizes_q"
    Q_MAJORIZES_P = "q_majorizes_p"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"


def _as_distribution(v, name: str) -> np.ndarray:
    v = np.asarray(v, dtype=float).ravel()
    if (v < 0).any():
        raise ValidationError(f"{name} has negative entries")
    if abs(v.sum() - 1.0) > 1e-10:
        raise ValidationError(f"{name} sums to {v.sum()!r}, not 1")
    return v


def majorization_compare(p, q, tol: float = 1e-10) -> Majorization:
    """Compare two distributions under the majorization preorder.

    The shorter vector is padded with zeros; prefix sums of the descending
    rearrangements are compared with tolerance ``tol``.
    """
    p = _as_distribution(p, "p")
    q = _as_distribution(q, "q")
    size = max(p.size, q.size)
    p = np.pad(p, (0, size - p.size))
    q = np.pad(q, (0, size - q.size))
    cp = np.cumsum(np.sort(p)[::-1])
    cq = np.cumsum(np.sort(q)[::-1])
    p_over = bool((cp >= cq - tol).all())
    q_over = bool((cq >= cp - tol).all())
    if p_over and q_over:
        return Majorization.EQUAL
    if p_over:
        return Majorization.P_MAJORIZES_Q
    if q_over:
        return Majorization.Q_MAJORIZES_P
    return Majorization.INCOMPARABLE
