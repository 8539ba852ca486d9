"""q-series building blocks: Euler's product, the theta functions phi and psi,
quadratic characters, and the eta/theta quotients attached to each
continued fraction.

Every routine returns a plain ``mpf``; the ``*_bounded`` variants return a
:class:`~rrcf.config.Bounded` carrying the truncation + rounding budget.
"""

from __future__ import annotations

import enum

from mpmath import mp, mpf

from .config import DEFAULT, Bounded, EvalConfig, real_root, to_real
from .errors import DomainError, NonConvergence


def _check_nome(q, cfg: EvalConfig):
    if abs(q) > cfg.q_limit:
        raise DomainError(f"|q| = {mp.nstr(abs(q), 8)} exceeds q_max = {cfg.q_max}")


def legendre_chi(j: int, p: int) -> int:
    """Legendre symbol (j/p) for p in {5, 13}."""
    if p not in (5, 13):
        raise DomainError(f"unsupported modulus {p}; expected 5 or 13")
    r = j % p
    if r == 0:
        return 0
    return 1 if pow(r, (p - 1) // 2, p) == 1 else -1


def weighted_product(q, weights, cfg: EvalConfig = DEFAULT) -> Bounded:
    """prod_{j>=1} (1 - q^j)^weights[j mod len(weights)].

    Stops at the first j with |q|^j below ``cfg.tol``.  Beyond that point
    sum_i |w| |log(1 - q^i)| <= 2 |w|max |q|^j / (1 - |q|), which gives the
    relative tail bound used here.
    """
    _check_nome(q, cfg)
    if q == 0:
        return Bounded(mpf(1), mpf(0))
    period = len(weights)
    wmax = max(abs(w) for w in weights)
    tol = cfg.tol
    num = mpf(1)
    den = mpf(1)
    qj = mpf(1)
    j = 0
    ops = 0
    while True:
        j += 1
        if j > cfg.max_terms:
            raise NonConvergence(f"product needs more than {cfg.max_terms} factors")
        qj *= q
        if abs(qj) < tol:
            break
        w = weights[j % period]
        if w > 0:
            num *= (1 - qj) ** w
        elif w < 0:
            den *= (1 - qj) ** (-w)
        ops += abs(w) + 1
    value = num / den
    aq = abs(q)
    tail = 4 * wmax * abs(qj) / (1 - aq)
    rounding = (2 * ops + j + 4) * cfg.eps
    return Bounded(value, abs(value) * (tail + rounding))


def euler_f_bounded(q, cfg: EvalConfig = DEFAULT) -> Bounded:
    return weighted_product(q, (1,), cfg)


def euler_f(q, cfg: EvalConfig = DEFAULT) -> mpf:
    """Euler's product f(-q) = prod_{j>=1} (1 - q^j)."""
    with mp.workdps(cfg.working_digits):
        return euler_f_bounded(to_real(q), cfg).value


def theta_phi_bounded(q, cfg: EvalConfig = DEFAULT) -> Bounded:
    _check_nome(q, cfg)
    tol = cfg.tol
    total = mpf(1)
    term = mpf(1)
    step = q  # q^(2k-1)
    q2 = q * q
    k = 0
    while True:
        k += 1
        if k > cfg.max_terms:
            raise NonConvergence("theta series did not terminate")
        term *= step
        step *= q2
        if abs(term) < tol:
            break
        total += 2 * term
    tail = 2 * abs(term) / (1 - abs(q))
    return Bounded(total, tail + (2 * k + 2) * cfg.eps * abs(total))


def theta_phi(q, cfg: EvalConfig = DEFAULT) -> mpf:
    """phi(q) = sum over all integers k of q^(k^2)."""
    with mp.workdps(cfg.working_digits):
        return theta_phi_bounded(to_real(q), cfg).value


def theta_psi_bounded(q, cfg: EvalConfig = DEFAULT) -> Bounded:
    _check_nome(q, cfg)
    tol = cfg.tol
    total = mpf(1)
    term = mpf(1)
    qk = mpf(1)
    k = 0
    while True:
        k += 1
        if k > cfg.max_terms:
            raise NonConvergence("theta series did not terminate")
        qk *= q
        term *= qk
        if abs(term) < tol:
            break
        total += term
    tail = abs(term) / (1 - abs(q))
    return Bounded(total, tail + (2 * k + 2) * cfg.eps * abs(total))


def theta_psi(q, cfg: EvalConfig = DEFAULT) -> mpf:
    """psi(q) = sum_{k>=0} q^(k(k+1)/2)."""
    with mp.workdps(cfg.working_digits):
        return theta_psi_bounded(to_real(q), cfg).value


class QuotientId(enum.Enum):
    """The five quotients tied to 1/x -/+ x for R, R^5, R', V."""

    ROGERS_RAMANUJAN = "f(-q^1/5)/(q^1/5 f(-q^5))"
    ROGERS_RAMANUJAN_FIFTH = "f^6(-q)/(q f^6(-q^5))"
    LEVEL13 = "f^2(-q)/(q f^2(-q^13))"
    GOLLNITZ_GORDON_DIFF = "phi(q^2)/(q^1/2 psi(q^4))"
    GOLLNITZ_GORDON_SUM = "phi(q)/(q^1/2 psi(q^4))"


def _combine(factors, value) -> Bounded:
    """Relative-error sum for value = prod factor.value**power."""
    rel = mpf(0)
    for b, power in factors:
        rel += abs(power) * b.bound / abs(b.value)
    return Bounded(value, abs(value) * rel * (1 + rel))


def quotient_bounded(qid: QuotientId, q, cfg: EvalConfig = DEFAULT) -> Bounded:
    if q == 0:
        raise DomainError("quotients have a pole at q = 0")
    eps = cfg.eps
    if qid is QuotientId.ROGERS_RAMANUJAN:
        t = real_root(q, 5)
        top = euler_f_bounded(t, cfg)
        bot = euler_f_bounded(q**5, cfg)
        value = top.value / (t * bot.value)
        out = _combine([(top, 1), (bot, 1), (Bounded(t, 2 * eps * abs(t)), 1)], value)
    elif qid is QuotientId.ROGERS_RAMANUJAN_FIFTH:
        top = euler_f_bounded(q, cfg)
        bot = euler_f_bounded(q**5, cfg)
        value = (top.value / bot.value) ** 6 / q
        out = _combine([(top, 6), (bot, 6)], value)
    elif qid is QuotientId.LEVEL13:
        top = euler_f_bounded(q, cfg)
        bot = euler_f_bounded(q**13, cfg)
        value = (top.value / bot.value) ** 2 / q
        out = _combine([(top, 2), (bot, 2)], value)
    else:
        if q < 0:
            raise DomainError("q^(1/2) requires q > 0")
        h = mp.sqrt(q)
        num = theta_phi_bounded(q * q if qid is QuotientId.GOLLNITZ_GORDON_DIFF else q, cfg)
        den = theta_psi_bounded(q**4, cfg)
        value = num.value / (h * den.value)
        out = _combine([(num, 1), (den, 1)], value)
    return Bounded(out.value, out.bound + 8 * eps * abs(out.value))


def quotient(qid: QuotientId, q, cfg: EvalConfig = DEFAULT) -> mpf:
    """Evaluate one of the five eta/theta quotients at nome ``q``."""
    with mp.workdps(cfg.working_digits):
        return quotient_bounded(qid, to_real(q), cfg).value
