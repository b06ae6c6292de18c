import itertools

import numpy as np
import pytest
from scipy.linalg import hadamard

from qcoherence.coherence import coherence_of_amplitudes
from qcoherence.dj import (DjFunction, balanced_coherence_extremes, balanced_tables,
                           random_balanced, run_dj)
from qcoherence.errors import CapacityError, InvalidFunctionError, ValidationError
from qcoherence.state import StateVector, hadamard_all


def dense_final_state(table):
    n = len(table).bit_length() - 1
    signs = np.where(np.asarray(table, dtype=bool), -1.0, 1.0)
    return hadamard(1 << n) @ signs / (1 << n)


def test_table_parsing_and_kinds():
    assert DjFunction.from_bitstring("0000").kind == "constant"
    assert DjFunction.from_bitstring("1111").kind == "constant"
    assert DjFunction.from_bitstring("0110").kind == "balanced"
    assert DjFunction.from_bitstring("0111").kind == "other"
    f = DjFunction.from_bitstring("01100101")
    assert f.n == 3 and f.bitstring() == "01100101"
    assert list(np.flatnonzero(f.table)) == [1, 2, 5, 7]
    with pytest.raises(ValidationError):
        DjFunction.from_bitstring("011")
    with pytest.raises(ValidationError):
        DjFunction.from_bitstring("0a10")
    with pytest.raises(ValidationError):
        DjFunction.from_bitstring("0110", n=3)


def test_constant_zero():
    res = run_dj(DjFunction.constant(3, 0))
    assert res.verdict == "constant"
    assert res.p_zero == pytest.approx(1, abs=1e-12)
    assert res.trace[2] == pytest.approx((0, 0), abs=1e-12)


def test_top_bit_pattern_lands_on_basis_state():
    res = run_dj(DjFunction.from_bitstring("00001111"))
    assert res.verdict == "balanced"
    assert np.flatnonzero(np.abs(res.final_amplitudes) > 1e-12).tolist() == [4]
    assert res.trace[2] == pytest.approx((0, 0), abs=1e-12)


def test_01100101_has_positive_bounded_coherence():
    res = run_dj(DjFunction.from_bitstring("01100101"))
    assert res.verdict == "balanced"
    final = res.trace[2]
    assert final.c_r > 0 and final.c_l1 > 0
    assert final.c_r <= 2 + 1e-12 and final.c_l1 <= 3 + 1e-12
    # dense oracle: four amplitudes of +-1/2
    expected = dense_final_state(DjFunction.from_bitstring("01100101").table)
    np.testing.assert_allclose(res.final_amplitudes, expected, atol=1e-14)
    assert final == pytest.approx((2, 3), abs=1e-12)


def test_oracle_step_keeps_coherence():
    for bits in ("01100101", "11110000", "00000000"):
        res = run_dj(DjFunction.from_bitstring(bits))
        assert res.trace[1] == pytest.approx(res.trace[0], abs=1e-12)


def test_rejects_promise_violation():
    with pytest.raises(InvalidFunctionError):
        run_dj(DjFunction.from_bitstring("01110101"))


def test_enumeration_counts_and_examples():
    assert sum(1 for _ in balanced_tables(3)) == 70
    ext2 = balanced_coherence_extremes(2)
    assert ext2.count == 6 and ext2.max_c_r <= 1 and ext2.max_c_l1 <= 1
    ext3 = balanced_coherence_extremes(3)
    assert ext3.count == 70
    assert ext3.within_bounds
    assert ext3.max_c_r == pytest.approx(2, abs=1e-12)
    assert ext3.max_c_l1 == pytest.approx(3, abs=1e-12)
    assert ext3.max_p_zero <= 1e-12
    with pytest.raises(CapacityError):
        balanced_coherence_extremes(5)


def test_enumeration_n4_values_match_dense_oracle():
    best_r = best_l1 = 0.0
    for ones in itertools.combinations(range(16), 8):
        table = np.zeros(16, dtype=bool)
        table[list(ones)] = True
        c = coherence_of_amplitudes(dense_final_state(table))
        best_r, best_l1 = max(best_r, c.c_r), max(best_l1, c.c_l1)
    ext = balanced_coherence_extremes(4)
    assert ext.count == 12870
    assert ext.max_c_r == pytest.approx(best_r, abs=1e-12)
    assert ext.max_c_l1 == pytest.approx(best_l1, abs=1e-12)
    # measured: 8 exceeds 2**(n-1) - 1 = 7
    assert ext.max_c_l1 == pytest.approx(8, abs=1e-12)
    assert not ext.within_bounds


def test_final_never_exceeds_initial_and_zero_amplitude_vanishes():
    rng = np.random.default_rng(5)
    for n in (5, 6, 7):
        for _ in range(50):
            res = run_dj(random_balanced(n, rng))
            assert abs(res.final_amplitudes[0]) <= 1e-12
            assert res.trace[2].c_r < res.trace[0].c_r
            assert res.trace[2].c_l1 < res.trace[0].c_l1


def test_hadamard_twice_in_pipeline():
    f = DjFunction.from_bitstring("0110100110010110")
    res = run_dj(f)
    s = StateVector(res.final_amplitudes.copy())
    hadamard_all(s)
    psi1 = np.where(f.table, -1.0, 1.0) / 4
    np.testing.assert_allclose(s.amplitudes, psi1, atol=1e-12)
