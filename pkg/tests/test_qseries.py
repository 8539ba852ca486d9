import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import mp, mpf

import oracles
from rrcf.config import EvalConfig
from rrcf.errors import DomainError, NonConvergence
from rrcf.qseries import (
    QuotientId,
    euler_f,
    euler_f_bounded,
    legendre_chi,
    quotient,
    theta_phi,
    theta_psi,
)

CFG = EvalConfig(40)


def test_empty_products():
    assert euler_f(0, CFG) == 1
    assert theta_phi(0, CFG) == 1
    assert theta_psi(0, CFG) == 1


@pytest.mark.parametrize("q", ["0.1", "0.5", "-0.3"])
def test_euler_f_pentagonal(q):
    with mp.workdps(CFG.working_digits + 20):
        ref = oracles.pentagonal_sum(mpf(q))
    with mp.workdps(CFG.working_digits):
        b = euler_f_bounded(mpf(q), CFG)
        # the tail is below tol; rounding is carried in the certified bound
        assert abs(b.value - ref) < CFG.tol + b.bound
        assert b.bound < mpf(10) ** -(CFG.digits + 5)


@settings(max_examples=100, deadline=None)
@given(st.floats(min_value=-0.9, max_value=0.9))
def test_pentagonal_random(q):
    cfg = EvalConfig(30)
    with mp.workdps(cfg.working_digits):
        q = mpf(q)
        b = euler_f_bounded(q, cfg)
        assert abs(b.value - oracles.pentagonal_sum(q)) < cfg.tol + b.bound


def test_euler_ratio_is_sqrt5():
    with mp.workdps(CFG.working_digits):
        q = mp.exp(-2 * mp.pi / 5)
        ratio = euler_f(q, CFG) / (q * euler_f(mp.exp(-10 * mp.pi), CFG))
        assert abs(ratio - mp.sqrt(5)) < mpf(10) ** -(CFG.digits - 5)


def test_theta_phi_small():
    with mp.workdps(CFG.working_digits):
        q = mpf("0.1")
        assert abs(theta_phi(q, CFG) - oracles.phi_sum(q, 20)) < CFG.tol
        assert abs(theta_phi(q, CFG) - oracles.phi_jtheta(q)) < CFG.tol


def test_theta_phi_even_odd_split():
    with mp.workdps(CFG.working_digits):
        q = mpf("0.2")
        lhs = theta_phi(-q, CFG)
        rhs = 2 * theta_phi(q**4, CFG) - theta_phi(q, CFG)
        assert abs(lhs - rhs) < 10 * CFG.tol


def test_theta_psi_small():
    with mp.workdps(CFG.working_digits):
        q = mpf("0.1")
        assert abs(theta_psi(q, CFG) - oracles.psi_sum(q, 20)) < CFG.tol
        q = mpf("0.7")
        assert abs(theta_psi(q, CFG) - oracles.psi_jtheta(q)) < 100 * CFG.tol


def test_theta_domination():
    with mp.workdps(CFG.working_digits):
        assert theta_psi("0.5", CFG) > theta_phi("0.25", CFG) > 1


def test_legendre_values():
    assert legendre_chi(0, 5) == 0
    assert [legendre_chi(j, 5) for j in range(1, 5)] == [1, -1, -1, 1]
    residues = {j for j in range(1, 13) if legendre_chi(j, 13) == 1}
    assert residues == {1, 3, 4, 9, 10, 12}
    assert legendre_chi(26, 13) == 0
    with pytest.raises(DomainError):
        legendre_chi(1, 7)


@given(st.sampled_from([5, 13]), st.integers(min_value=1, max_value=10**6), st.integers(min_value=1, max_value=10**6))
def test_legendre_multiplicative(p, j, k):
    if j % p == 0 or k % p == 0:
        return
    assert legendre_chi(j, p) * legendre_chi(k, p) == legendre_chi(j * k % p, p)
    assert legendre_chi(j + p, p) == legendre_chi(j, p)


def test_quotient_special_values():
    with mp.workdps(CFG.working_digits):
        tol = mpf(10) ** -(CFG.digits - 5)
        assert abs(quotient(QuotientId.ROGERS_RAMANUJAN, mp.exp(-2 * mp.pi), CFG) - mp.sqrt(5)) < tol
        q5 = mp.exp(-2 * mp.pi / mp.sqrt(5))
        assert abs(quotient(QuotientId.ROGERS_RAMANUJAN_FIFTH, q5, CFG) - 5 * mp.sqrt(5)) < tol
        q = mp.exp(-mp.pi)
        assert abs(quotient(QuotientId.GOLLNITZ_GORDON_DIFF, q, CFG) - (2 * mp.sqrt(2) + 2)) < tol


def test_quotient_domain():
    with pytest.raises(DomainError):
        quotient(QuotientId.ROGERS_RAMANUJAN, 0, CFG)
    with pytest.raises(DomainError):
        quotient(QuotientId.GOLLNITZ_GORDON_SUM, "-0.2", CFG)


def test_domain_and_guard():
    with pytest.raises(DomainError):
        euler_f("0.999", CFG)
    with pytest.raises(NonConvergence):
        euler_f("0.9", EvalConfig(40, max_terms=50))
    with pytest.raises(NonConvergence):
        theta_psi("0.9999", EvalConfig(40, q_max=0.99999, max_terms=100))


def test_monotone_on_grid():
    cfg = EvalConfig(20)
    with mp.workdps(cfg.working_digits):
        qs = [cfg.q_limit * i / 200 for i in range(1, 201)]
        f = [euler_f(q, cfg) for q in qs]
        ph = [theta_phi(q, cfg) for q in qs]
        ps = [theta_psi(q, cfg) for q in qs]
    assert all(b < a for a, b in zip(f, f[1:]))
    assert all(b > a for a, b in zip(ph, ph[1:]))
    assert all(b > a for a, b in zip(ps, ps[1:]))


@pytest.mark.parametrize("fn", [euler_f, theta_phi, theta_psi])
def test_precision_scaling(fn):
    lo, hi = EvalConfig(30), EvalConfig(50)
    with mp.workdps(hi.working_digits):
        a = fn("0.7", lo)
        b = fn("0.7", hi)
        assert abs(a - b) <= mpf(10) ** -(lo.digits - 2) * abs(b)
