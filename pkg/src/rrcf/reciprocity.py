"""Reciprocity families and residual checks.

A family ties one continued fraction to a law linking its values at
exponents alpha and beta with alpha*beta fixed:

* quadratic: (c + x1)(c + x2) = 1 + c^2 with c^2 - k c - 1 = 0,
* cubic:     (1 + x1)(1 + x2) = 1 + 2^k,
* linear:    x1 + x2 = 1/16 (Ramanujan-Selberg, x = s^8).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from mpmath import mp, mpf

from .cfengine import CFKind, evaluate_bounded, value_bounded
from .config import DEFAULT, Bounded, EvalConfig, to_real
from .errors import DomainError, PoleError, UnknownFamily
from .qseries import QuotientId, quotient_bounded


def c_from_k(k) -> mpf:
    """Positive root of c^2 - k c - 1 = 0, so that c - 1/c = k."""
    k = mpf(k)
    s = mp.sqrt(k * k + 4)
    if k >= 0:
        return (k + s) / 2
    return 2 / (s - k)


class Residual(NamedTuple):
    value: mpf
    bound: mpf

    @property
    def passes(self) -> bool:
        return abs(self.value) <= self.bound


@dataclass(frozen=True)
class Family:
    """One reciprocity formula.

    ``q_of(alpha) = sign * exp(-scale * alpha)`` gives the nome, ``ab`` is
    alpha*beta as a rational multiple of pi^2, and ``reciprocal`` marks the
    cubic rows whose law is stated for 1/G rather than G.
    """

    id: str
    k: int
    law: str
    kind: CFKind
    scale: int
    ab: Fraction
    sign: int = 1
    reciprocal: bool = False

    @property
    def kind_pair(self) -> tuple[CFKind, CFKind]:
        return (self.kind, self.kind)

    @property
    def c(self) -> mpf:
        if self.law == "quadratic":
            return c_from_k(self.k)
        if self.law == "cubic":
            return mpf(2) ** self.k
        return mpf(1) / 16

    @property
    def ab_product(self) -> mpf:
        return self.ab.numerator * mp.pi**2 / self.ab.denominator

    @property
    def self_dual_alpha(self) -> mpf:
        return mp.sqrt(self.ab_product)

    def q_of(self, alpha) -> mpf:
        return self.sign * mp.exp(-self.scale * to_real(alpha))

    def conjugate(self, alpha) -> mpf:
        alpha = to_real(alpha)
        if alpha <= 0:
            raise DomainError("alpha must be positive")
        return self.ab_product / alpha

    # value of the fraction <-> variable x appearing in the law

    def to_x(self, v):
        if self.law == "linear":
            return v**8
        if self.reciprocal:
            return mp.inf if v == 0 else 1 / v
        return v

    def from_x(self, x):
        if self.law == "linear":
            if x < 0:
                raise DomainError("s^8 must be non-negative")
            return mp.root(x, 8)
        if self.reciprocal:
            return 1 / x
        return x

    def flip(self, x):
        """Map the law's variable at alpha to its value at beta."""
        if self.law == "linear":
            return self.c - x
        if self.law == "cubic":
            if x == -1:
                raise PoleError("cubic reciprocity has a pole at x = -1")
            return (1 + self.c) / (1 + x) - 1
        c = self.c
        if x == -c:
            raise PoleError("reciprocity map has a pole at x = -c")
        return (1 - c * x) / (c + x)

    def flip_slope(self, x):
        if self.law == "linear":
            return mpf(1)
        if self.law == "cubic":
            return (1 + self.c) / (1 + x) ** 2
        c = self.c
        return (1 + c * c) / (c + x) ** 2

    def x_bounded(self, b: Bounded) -> Bounded:
        v, e = b
        if self.law == "linear":
            return Bounded(v**8, 8 * abs(v) ** 7 * e * (1 + 8 * e))
        if self.reciprocal:
            return Bounded(1 / v, e / (v * v) * (1 + 2 * e / abs(v)))
        return b

    def reflect(self, partner: Bounded, cfg: EvalConfig = DEFAULT) -> Bounded:
        """Value at alpha from the bounded value at beta."""
        x2 = self.x_bounded(partner)
        x1 = self.flip(x2.value)
        e1 = self.flip_slope(x2.value) * x2.bound * 2
        v = self.from_x(x1)
        if self.law == "linear":
            e = e1 / (8 * abs(v) ** 7) * 2 if v else mp.root(e1, 8)
        elif self.reciprocal:
            e = e1 / (x1 * x1) * 2
        else:
            e = e1
        return Bounded(v, e + 8 * cfg.eps * abs(v))

    def endpoint(self) -> mpf:
        """Limit of the fraction's value as alpha -> 0 (beta -> infinity)."""
        at_zero = mpf(1) if self.kind is CFKind.VNEG else mpf(0)
        x_inf = self.to_x(at_zero)
        if x_inf == mp.inf:
            x0 = mpf(-1)  # cubic law as x2 -> infinity
        else:
            x0 = self.flip(x_inf)
        return self.from_x(x0)


_FAMILIES = {
    f.id: f
    for f in (
        Family("k1", 1, "quadratic", CFKind.R, 2, Fraction(1)),
        Family("k-1", -1, "quadratic", CFKind.S, 1, Fraction(1)),
        Family("k11", 11, "quadratic", CFKind.R5, 2, Fraction(1, 5)),
        Family("k-11", -11, "quadratic", CFKind.S5, 1, Fraction(1, 5)),
        Family("k2", 2, "quadratic", CFKind.V, 1, Fraction(1)),
        Family("k-2", -2, "quadratic", CFKind.VNEG, 1, Fraction(1)),
        Family("k3", 3, "quadratic", CFKind.RP13, 2, Fraction(1, 13)),
        Family("k-3", -3, "quadratic", CFKind.SP13, 1, Fraction(1, 13)),
        Family("cubic1", 1, "cubic", CFKind.G, 1, Fraction(1), sign=-1, reciprocal=True),
        Family("cubic-1", -1, "cubic", CFKind.G, 1, Fraction(2)),
        Family("cubic3", 3, "cubic", CFKind.G3, 1, Fraction(1, 3), sign=-1, reciprocal=True),
        Family("cubic-3", -3, "cubic", CFKind.G3, 1, Fraction(2, 3)),
        Family("selberg", 0, "linear", CFKind.SELBERG, 1, Fraction(1)),
    )
}

QUADRATIC_IDS = ("k1", "k-1", "k11", "k-11", "k2", "k-2", "k3", "k-3")
CUBIC_IDS = ("cubic1", "cubic-1", "cubic3", "cubic-3")
FAMILY_IDS = QUADRATIC_IDS + CUBIC_IDS + ("selberg",)

DEFAULT_FAMILY = {
    CFKind.R: "k1",
    CFKind.S: "k-1",
    CFKind.R5: "k11",
    CFKind.S5: "k-11",
    CFKind.V: "k2",
    CFKind.VNEG: "k-2",
    CFKind.RP13: "k3",
    CFKind.SP13: "k-3",
    CFKind.G: "cubic-1",
    CFKind.G3: "cubic-3",
    CFKind.SELBERG: "selberg",
}


def registry(family_id) -> Family:
    """Look up a family by id (``"k-3"``, ``"cubic+1"``, ``"selberg"``) or by
    integer k for the quadratic rows."""
    if isinstance(family_id, Family):
        return family_id
    if isinstance(family_id, int):
        key = f"k{family_id}"
    else:
        key = str(family_id).strip().lower().replace("+", "").replace(" ", "")
    try:
        return _FAMILIES[key]
    except KeyError:
        raise UnknownFamily(family_id) from None


def conjugate_alpha(family, alpha, cfg: EvalConfig = DEFAULT) -> mpf:
    with mp.workdps(cfg.working_digits):
        return registry(family).conjugate(alpha)


def _law_residual(f: Family, x1: Bounded, x2: Bounded, cfg: EvalConfig) -> Residual:
    (a, ea), (b, eb) = x1, x2
    if f.law == "linear":
        value = a + b - f.c
        sens = ea + eb
        scale = abs(a) + abs(b) + f.c
    else:
        shift = f.c if f.law == "quadratic" else mpf(1)
        rhs = 1 + f.c * f.c if f.law == "quadratic" else 1 + f.c
        value = (shift + a) * (shift + b) - rhs
        sens = abs(shift + b) * ea + abs(shift + a) * eb + ea * eb
        scale = abs((shift + a) * (shift + b)) + rhs
    return Residual(value, 10 * sens + 8 * cfg.eps * scale)


def reciprocity_residual(family, alpha, cfg: EvalConfig = DEFAULT, route: str = "auto") -> Residual:
    """Defect of the family's law for the pair of values at alpha and beta."""
    f = registry(family)
    with mp.workdps(cfg.working_digits):
        alpha = to_real(alpha)
        beta = f.conjugate(alpha)
        v1 = evaluate_bounded(f.kind, alpha, f, cfg, route)
        v2 = evaluate_bounded(f.kind, beta, f, cfg, route)
        return _law_residual(f, f.x_bounded(v1), f.x_bounded(v2), cfg)


_FUNDAMENTAL = {
    QuotientId.ROGERS_RAMANUJAN: (CFKind.R, 1, -1),
    QuotientId.ROGERS_RAMANUJAN_FIFTH: (CFKind.R5, 11, -1),
    QuotientId.LEVEL13: (CFKind.RP13, 3, -1),
    QuotientId.GOLLNITZ_GORDON_DIFF: (CFKind.V, 0, -1),
    QuotientId.GOLLNITZ_GORDON_SUM: (CFKind.V, 0, 1),
}


def fundamental_residual(qid: QuotientId, q, cfg: EvalConfig = DEFAULT) -> Residual:
    """(1/x -/+ x) - shift - quotient, with x the matching fraction at q."""
    kind, shift, sgn = _FUNDAMENTAL[qid]
    with mp.workdps(cfg.working_digits):
        q = to_real(q)
        x, ex = value_bounded(kind, q, cfg)
        quo = quotient_bounded(qid, q, cfg)
        lhs = 1 / x + sgn * x
        value = lhs - shift - quo.value
        sens = (1 / (x * x) + 1) * ex * (1 + 2 * ex / abs(x)) + quo.bound
        return Residual(value, 10 * sens + 8 * cfg.eps * (abs(lhs) + shift + abs(quo.value)))


_NOME_QUOTIENT = {
    CFKind.R: (QuotientId.ROGERS_RAMANUJAN, 1),
    CFKind.R5: (QuotientId.ROGERS_RAMANUJAN_FIFTH, 11),
    CFKind.V: (QuotientId.GOLLNITZ_GORDON_DIFF, 0),
    CFKind.RP13: (QuotientId.LEVEL13, 3),
}


def c_from_nome(kind: CFKind, q, cfg: EvalConfig = DEFAULT) -> tuple[mpf, mpf]:
    """(c, k) read off the eta/theta quotient at nome q.

    c = (shift + quotient)/2 and k = c - 1/c; k is integral only at
    special nomes such as e^{-2 pi} for R.
    """
    if kind not in _NOME_QUOTIENT:
        raise DomainError(f"no quotient formula for {kind.value}")
    qid, shift = _NOME_QUOTIENT[kind]
    with mp.workdps(cfg.working_digits):
        quo = quotient_bounded(qid, to_real(q), cfg).value
        c = (shift + quo) / 2
        return c, c - 1 / c


def chained_fifth_residual(alpha, gamma, cfg: EvalConfig = DEFAULT) -> tuple[Residual, Residual]:
    """t^5 - (5t + 3) and t^5 - t5 for t from the k=1 pair at alpha and t5
    from the k=11 pair at gamma; both vanish since t = phi, t5 = phi^5."""
    f1, f11 = registry("k1"), registry("k11")
    with mp.workdps(cfg.working_digits):
        alpha, gamma = to_real(alpha), to_real(gamma)
        x1 = evaluate_bounded(CFKind.R, alpha, f1, cfg)
        x2 = evaluate_bounded(CFKind.R, f1.conjugate(alpha), f1, cfg)
        y1 = evaluate_bounded(CFKind.R5, gamma, f11, cfg)
        y2 = evaluate_bounded(CFKind.R5, f11.conjugate(gamma), f11, cfg)
        t, et = _ratio(x1, x2)
        t5, et5 = _ratio(y1, y2)
        first = t**5 - (5 * t + 3)
        e_first = (5 * abs(t) ** 4 + 5) * et * 2
        second = t**5 - t5
        e_second = 5 * abs(t) ** 4 * et * 2 + et5
        floor = 8 * cfg.eps * abs(t) ** 5
        return Residual(first, 10 * e_first + floor), Residual(second, 10 * e_second + floor)


def _ratio(x1: Bounded, x2: Bounded) -> Bounded:
    """t = (1 - x1 x2)/(x1 + x2) with first-order error."""
    (a, ea), (b, eb) = x1, x2
    s = a + b
    if s == 0:
        raise PoleError("x1 + x2 = 0")
    t = (1 - a * b) / s
    # dt/da = -(1 + b^2)/s^2, dt/db = -(1 + a^2)/s^2
    e = ((1 + b * b) * ea + (1 + a * a) * eb) / (s * s)
    return Bounded(t, e)
