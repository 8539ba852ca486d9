"""Continued fraction evaluation by two independent routes.

``eval_product`` uses the infinite product of each fraction, ``eval_cf`` the
truncated continued fraction evaluated backwards with depth doubling.
``evaluate`` picks a route from the exponent alpha of a reciprocity family
and flips through the family's reciprocity law when q is too close to 1.
"""

from __future__ import annotations

import enum
import math
from fractions import Fraction

from mpmath import mp, mpf

from .config import DEFAULT, Bounded, EvalConfig, real_root, to_real
from .errors import DomainError, NoReciprocity, NonConvergence, UnsupportedForm
from .qseries import legendre_chi, weighted_product


class CFKind(enum.Enum):
    R = "R"
    S = "S"
    R5 = "R5"
    S5 = "S5"
    V = "V"
    VNEG = "Vneg"
    RP13 = "Rp13"
    SP13 = "Sp13"
    G = "G"
    G3 = "G3"
    SELBERG = "selberg"

    @classmethod
    def parse(cls, tag: str) -> "CFKind":
        for kind in cls:
            if kind.value.lower() == tag.lower() or kind.name.lower() == tag.lower():
                return kind
        raise DomainError(f"unknown continued fraction {tag!r}")

    @property
    def prefactor_exponent(self) -> Fraction:
        return _PREFACTOR[self]

    @property
    def sign_flip(self) -> bool:
        return self in _SIGN_FLIP

    @property
    def has_product(self) -> bool:
        return self is not CFKind.SELBERG

    @property
    def has_cf(self) -> bool:
        return self in _CF_KINDS


_PREFACTOR = {
    CFKind.R: Fraction(1, 5),
    CFKind.S: Fraction(1, 5),
    CFKind.R5: Fraction(1),
    CFKind.S5: Fraction(1),
    CFKind.V: Fraction(1, 2),
    CFKind.VNEG: Fraction(0),
    CFKind.RP13: Fraction(1),
    CFKind.SP13: Fraction(1),
    CFKind.G: Fraction(1, 3),
    CFKind.G3: Fraction(1),
    CFKind.SELBERG: Fraction(1, 8),
}
_SIGN_FLIP = {CFKind.S: CFKind.R, CFKind.SP13: CFKind.RP13}
_POWERS = {CFKind.R5: (CFKind.R, 5), CFKind.S5: (CFKind.S, 5), CFKind.G3: (CFKind.G, 3)}
_CF_KINDS = {CFKind.R, CFKind.S, CFKind.V, CFKind.VNEG, CFKind.G, CFKind.SELBERG}

_W5 = tuple(legendre_chi(r, 5) for r in range(5))
_W13 = tuple(legendre_chi(r, 13) for r in range(13))
_W8 = (0, 1, 0, -1, 0, -1, 0, 1)
_W6 = (0, 1, 0, -2, 0, 1)

_N0 = 32
_DEPTH_CAP = 2**20


def _check_nome(q, cfg):
    if abs(q) > cfg.q_limit:
        raise DomainError(f"|q| = {mp.nstr(abs(q), 8)} exceeds q_max = {cfg.q_max}")


def cayley(b: Bounded, eps) -> Bounded:
    """(1 - v)/(1 + v).  Turns V(q) into the k = -2 partner Vneg(q)."""
    v = b.value
    y = (1 - v) / (1 + v)
    return Bounded(y, 2 * b.bound / (1 + v) ** 2 * (1 + b.bound) + 4 * eps * abs(y))


def product_bounded(kind: CFKind, q, cfg: EvalConfig = DEFAULT) -> Bounded:
    if kind is CFKind.SELBERG:
        raise UnsupportedForm("the Ramanujan-Selberg fraction has no product form here")
    if kind in _POWERS:
        base, n = _POWERS[kind]
        return product_bounded(base, q, cfg).power(n)
    if kind in _SIGN_FLIP:
        return -product_bounded(_SIGN_FLIP[kind], -q, cfg)
    if kind is CFKind.VNEG:
        return cayley(product_bounded(CFKind.V, q, cfg), cfg.eps)
    _check_nome(q, cfg)
    if q == 0:
        return Bounded(mpf(0), mpf(0))
    if kind is CFKind.R:
        pre, body = real_root(q, 5), weighted_product(q, _W5, cfg)
    elif kind is CFKind.V:
        if q < 0:
            raise DomainError("V(q) needs q > 0 (half-integer prefactor)")
        pre, body = mp.sqrt(q), weighted_product(q, _W8, cfg)
    elif kind is CFKind.RP13:
        pre, body = q, weighted_product(q, _W13, cfg)
    elif kind is CFKind.G:
        pre, body = real_root(q, 3), weighted_product(q, _W6, cfg)
    else:  # pragma: no cover
        raise UnsupportedForm(kind)
    value = pre * body.value
    return Bounded(value, abs(pre) * body.bound + 2 * cfg.eps * abs(value))


def _coefficients(kind: CFKind, q):
    """Yield (a_j, b_j) for j = 0, 1, 2, ... with a_0 unused."""
    qj = mpf(1)
    if kind is CFKind.R:
        yield None, mpf(1)
        while True:
            qj *= q
            yield qj, mpf(1)
    elif kind is CFKind.S:
        yield None, mpf(1)
        while True:
            qj *= -q
            yield qj, mpf(1)
    elif kind is CFKind.V:
        q2 = q * q
        yield None, 1 + q
        while True:
            qj *= q2
            yield qj, 1 + qj * q
    elif kind is CFKind.G:
        yield None, mpf(1)
        while True:
            qj *= q
            yield qj + qj * qj, mpf(1)
    elif kind is CFKind.SELBERG:
        yield None, mpf(1)
        while True:
            qj *= q
            yield qj, 1 + qj


def _backward(a, b, n):
    t = b[n]
    for j in range(n, 0, -1):
        if t == 0:
            raise NonConvergence("zero denominator in continued fraction tail")
        t = b[j - 1] + a[j] / t
    return 1 / t


def cf_bounded(kind: CFKind, q, cfg: EvalConfig = DEFAULT) -> Bounded:
    if kind is CFKind.VNEG:
        return cayley(cf_bounded(CFKind.V, q, cfg), cfg.eps)
    if kind not in _CF_KINDS:
        raise UnsupportedForm(f"{kind.value} has no continued fraction form; use eval_product")
    _check_nome(q, cfg)
    if q == 0:
        return Bounded(mpf(0), mpf(0))
    if kind is CFKind.V:
        if q < 0:
            raise DomainError("V(q) needs q > 0 (half-integer prefactor)")
        pre = mp.sqrt(q)
    elif kind is CFKind.SELBERG:
        if q < 0:
            raise DomainError("s(q) needs q > 0 (q^(1/8) prefactor)")
        pre = mp.root(q, 8)
    else:
        pre = real_root(q, 5 if kind in (CFKind.R, CFKind.S) else 3)

    tol = cfg.tol
    cap = min(_DEPTH_CAP, cfg.max_terms)
    # a_j decays like |q|^j for every kind here; start near the needed depth
    n = max(_N0, int(math.ceil(float(mp.log(tol) / mp.log(abs(q))))))
    gen = _coefficients(kind, q)
    a, b = [], []

    def extend(upto):
        while len(b) <= upto:
            aj, bj = next(gen)
            a.append(aj)
            b.append(bj)

    extend(n)
    prev = _backward(a, b, n)
    while True:
        if 2 * n > cap:
            raise NonConvergence(f"continued fraction depth exceeded {cap}")
        n *= 2
        extend(n)
        cur = _backward(a, b, n)
        diff = abs(cur - prev)
        if diff <= tol:
            break
        prev = cur
    value = pre * cur
    bound = abs(pre) * (diff + (2 * n + 4) * cfg.eps * abs(cur)) + 2 * cfg.eps * abs(value)
    return Bounded(value, bound)


def value_bounded(kind: CFKind, q, cfg: EvalConfig = DEFAULT) -> Bounded:
    """Direct evaluation by the product when one exists, else the CF."""
    if kind.has_product:
        return product_bounded(kind, q, cfg)
    return cf_bounded(kind, q, cfg)


def eval_product(kind: CFKind, q, cfg: EvalConfig = DEFAULT) -> mpf:
    """Prefactor times truncated character product at nome ``q``."""
    with mp.workdps(cfg.working_digits):
        return product_bounded(kind, to_real(q), cfg).value


def eval_cf(kind: CFKind, q, cfg: EvalConfig = DEFAULT) -> mpf:
    """Truncated continued fraction at nome ``q`` (backward recurrence)."""
    with mp.workdps(cfg.working_digits):
        return cf_bounded(kind, to_real(q), cfg).value


ROUTES = ("auto", "direct", "reciprocal")


def evaluate_bounded(kind: CFKind, alpha, family, cfg: EvalConfig = DEFAULT, route: str = "auto") -> Bounded:
    if route not in ROUTES:
        raise DomainError(f"route must be one of {ROUTES}")
    if family.kind is not kind:
        raise NoReciprocity(f"family {family.id} relates {family.kind.value}, not {kind.value}")
    alpha = to_real(alpha)
    if alpha < 0:
        raise DomainError("alpha must be non-negative")
    if alpha == 0:
        return Bounded(family.endpoint(), mpf(0))
    q = family.q_of(alpha)
    if route == "direct" or (route == "auto" and abs(q) <= cfg.q_limit):
        return value_bounded(kind, q, cfg)
    beta = family.conjugate(alpha)
    partner = value_bounded(kind, family.q_of(beta), cfg)
    return family.reflect(partner, cfg)


def evaluate(kind: CFKind, alpha, family, cfg: EvalConfig = DEFAULT, route: str = "auto") -> mpf:
    """Value of ``kind`` at nome ``family.q_of(alpha)``.

    With ``route="auto"`` the nome is used directly when ``|q| <= q_max``;
    otherwise the partner at beta = ab/alpha is evaluated and mapped back
    through the family's reciprocity law.  ``"direct"`` and
    ``"reciprocal"`` force one route.
    """
    with mp.workdps(cfg.working_digits):
        return evaluate_bounded(kind, alpha, family, cfg, route).value
