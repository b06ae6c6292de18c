import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from qcoherence.errors import CapacityError, InvalidBaseError, ValidationError
from qcoherence.order_finding import (QofConfig, classical_order, continued_fractions,
                                      default_t, perfect_power, recover_order,
                                      register_width, run_qof, shor_factor)


def brute_order(x, N):
    return next(r for r in range(1, N + 1) if pow(x, r, N) == 1)


def test_config_defaults():
    c = QofConfig(7, 15)
    assert c.L == 4 and c.t == 2 * 4 + 3
    assert default_t(21, 0.25) == 13
    assert register_width(16) == 4 and register_width(17) == 5
    with pytest.raises(InvalidBaseError):
        QofConfig(6, 15)
    with pytest.raises(ValidationError):
        QofConfig(1, 15)
    with pytest.raises(ValidationError):
        QofConfig(7, 15, epsilon=1.5)
    with pytest.raises(CapacityError):
        QofConfig(7, 15, t=23)


@pytest.mark.parametrize("x,N,r", [(7, 15, 4), (1, 9, 1), (2, 15, 4), (14, 15, 2), (2, 21, 6)])
def test_classical_order(x, N, r):
    assert classical_order(x, N) == r == brute_order(x, N)


def test_classical_order_rejects_shared_factor():
    with pytest.raises(InvalidBaseError):
        classical_order(6, 15)


def test_exact_period_instance():
    res = run_qof(QofConfig(7, 15, t=8))
    assert res.trace[0] == pytest.approx((8, 255), abs=1e-9)
    assert res.trace[1] == pytest.approx((8, 255), abs=1e-9)
    assert res.trace[2] == pytest.approx((4, 15), abs=1e-6)
    support = np.flatnonzero(res.distribution > 1e-12).tolist()
    assert support == [0, 64, 128, 192]
    np.testing.assert_allclose(res.distribution[support], 0.25, atol=1e-10)
    assert res.distribution.sum() == pytest.approx(1, abs=1e-12)


def test_order_two_instance():
    res = run_qof(QofConfig(4, 15, t=8))
    assert res.trace[2] == pytest.approx((2, 3), abs=1e-6)


@pytest.mark.parametrize("x,N,t", [(7, 15, 11), (2, 21, 11), (5, 33, 13), (3, 7, 7),
                                   (2, 9, 9)])
def test_stage_invariants(x, N, t):
    res = run_qof(QofConfig(x, N, t=t))
    assert res.trace[0] == pytest.approx(res.trace[1], abs=1e-12)
    assert res.trace[0] == pytest.approx((t, 2 ** t - 1), abs=1e-9 * 2 ** t)
    assert res.trace[2].c_r < res.trace[1].c_r


def test_relative_entropy_depletes_at_default_t():
    for N in range(3, 30):
        for x in range(2, N):
            if math.gcd(x, N) != 1:
                continue
            res = run_qof(QofConfig(x, N))
            assert res.trace[2].c_r < res.trace[1].c_r, (x, N)


@pytest.mark.parametrize("x,N", [(7, 15), (2, 15), (4, 15), (2, 21), (2, 9)])
def test_l1_depletes_for_small_orders(x, N):
    res = run_qof(QofConfig(x, N))
    assert res.trace[2].c_l1 < res.trace[1].c_l1


def test_l1_can_grow_for_large_order():
    # r = 28 with t = 13: leakage spreads weight over many outcomes
    res = run_qof(QofConfig(2, 29))
    assert classical_order(2, 29) == 28
    assert res.trace[2].c_l1 > res.trace[1].c_l1
    assert res.trace[2].c_r < res.trace[1].c_r


def test_undersized_register_can_raise_coherence():
    # t = 6 < 2L + 1 = 7: leakage around the r = 6 peaks outweighs the depletion
    res = run_qof(QofConfig(3, 7, t=6))
    assert res.trace[2].c_r > res.trace[1].c_r


def test_approximate_regime_sits_above_2_log_r():
    # r = 6 does not divide 2**t; leakage adds a t-independent ~1.2 bits
    gaps = []
    for t in (13, 16):
        res = run_qof(QofConfig(2, 21, t=t))
        gaps.append(res.trace[2].c_r - 2 * math.log2(6))
        assert res.trace[2].c_r < res.trace[1].c_r
    assert all(1.0 < g < 1.5 for g in gaps)
    assert gaps[0] == pytest.approx(gaps[1], abs=0.01)


def test_continued_fraction_examples():
    cf = continued_fractions(192, 8, 15)
    assert (3, 4) in cf.convergents and cf.candidate_r == 4
    assert continued_fractions(0, 8, 15).candidate_r is None
    cf = continued_fractions(128, 8, 15)
    assert cf.convergents[-1] == (1, 2) and cf.candidate_r == 2
    with pytest.raises(ValidationError):
        continued_fractions(256, 8, 15)


@given(t=st.integers(1, 16), data=st.data())
def test_convergent_invariants(t, data):
    j = data.draw(st.integers(0, 2 ** t - 1))
    cf = continued_fractions(j, t, 64)
    s, d = cf.convergents[-1]
    assert Fraction(s, d) == Fraction(j, 2 ** t)
    dens = [d for _, d in cf.convergents]
    assert all(a < b for a, b in zip(dens, dens[1:]))
    assert all(math.gcd(s, d) == 1 for s, d in cf.convergents)
    if cf.candidate_r is not None:
        assert cf.candidate_r <= 64


@pytest.mark.parametrize("x,N,r", [(7, 15, 4), (4, 15, 2), (14, 15, 2)])
def test_recover_order_examples(x, N, r):
    res = recover_order(QofConfig(x, N, t=8), samples=10, seed=1)
    assert res.r == r and res.attempts <= 10


def test_recover_order_budget_failure_is_a_result():
    # t=1 cannot resolve r=4; every candidate is 2 or none
    res = recover_order(QofConfig(7, 15, t=1), samples=3, seed=0)
    assert res.r is None and not res.success and res.attempts == 3


def test_recover_order_minimal_against_classical():
    for N in range(3, 40):
        for x in range(2, N):
            if math.gcd(x, N) != 1:
                continue
            L = register_width(N)
            res = recover_order(QofConfig(x, N, t=2 * L + 1), samples=20, seed=x * 100 + N)
            if res.r is not None:
                assert pow(x, res.r, N) == 1
                assert res.r == classical_order(x, N)


def test_perfect_power():
    assert perfect_power(9) == (3, 2)
    assert perfect_power(27) == (3, 3)
    assert perfect_power(15) is None


def test_shor_examples():
    assert shor_factor(15, seed=1).factors == (3, 5)
    assert shor_factor(21, seed=1).factors == (3, 7)
    r9 = shor_factor(9)
    assert r9.factors == (3, 3) and r9.method == "prime_power"
    assert shor_factor(22).method == "even"
    with pytest.raises(ValidationError):
        shor_factor(13)


def test_shor_deterministic():
    assert shor_factor(21, seed=7) == shor_factor(21, seed=7)
