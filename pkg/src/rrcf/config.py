"""Evaluation settings, bounded values and small real-number helpers.

All numerics run on mpmath's global context.  Every public operation enters
``mp.workdps(cfg.working_digits)`` itself, so callers never have to set the
ambient precision, but arguments that carry precision (``mpf`` values) must
already be accurate to the requested number of digits.  Pass special points
such as ``"pi/sqrt5"`` as strings to have them built at working precision.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from mpmath import mp, mpf

from .errors import DomainError

GUARD_DIGITS = 10


@dataclass(frozen=True)
class EvalConfig:
    """Precision and truncation settings shared by every evaluator.

    Parameters
    ----------
    digits : int
        Requested decimal precision P (at least 10).
    tail_tol : str, float or mpf, optional
        Magnitude below which a series/product term ends the loop.
        Defaults to ``10**-(digits + 10)``.
    q_max : float
        Largest ``|q|`` evaluated by direct series; callers beyond this
        must go through a reciprocity formula.
    max_terms : int
        Hard guard on the number of series terms / continued fraction depth.
    """

    digits: int = 50
    tail_tol: object = None
    q_max: float = 0.995
    max_terms: int = 10**6

    def __post_init__(self):
        if int(self.digits) != self.digits or self.digits < 10:
            raise DomainError(f"digits must be an integer >= 10, got {self.digits!r}")
        if not 0 < self.q_max < 1:
            raise DomainError(f"q_max must lie in (0, 1), got {self.q_max!r}")
        if self.max_terms < 1:
            raise DomainError("max_terms must be positive")
        if self.tail_tol is not None and not mpf(self.tail_tol) > 0:
            raise DomainError("tail_tol must be positive")

    @property
    def working_digits(self) -> int:
        return self.digits + GUARD_DIGITS

    @property
    def tol(self) -> mpf:
        if self.tail_tol is None:
            return mpf(10) ** (-(self.digits + GUARD_DIGITS))
        return mpf(self.tail_tol)

    @property
    def q_limit(self) -> mpf:
        """q_max read as the decimal it was written as, so "0.995" is admitted."""
        return mpf(repr(self.q_max))

    @property
    def eps(self) -> mpf:
        """Unit roundoff of the working precision, as a decimal power."""
        return mpf(10) ** (-self.working_digits)

    def with_digits(self, digits: int) -> "EvalConfig":
        return EvalConfig(digits, self.tail_tol, self.q_max, self.max_terms)


DEFAULT = EvalConfig()


class Bounded(NamedTuple):
    """A computed value together with an absolute error bound."""

    value: mpf
    bound: mpf

    def __neg__(self):
        return Bounded(-self.value, self.bound)

    def power(self, n: int) -> "Bounded":
        v = self.value**n
        if self.value == 0:
            return Bounded(v, self.bound**n)
        rel = self.bound / abs(self.value)
        return Bounded(v, abs(v) * ((1 + rel) ** abs(n) - 1))


def real_root(x, n: int):
    """Real n-th root; negative arguments only for odd n."""
    x = mpf(x)
    if x >= 0:
        return mp.root(x, n)
    if n % 2 == 0:
        raise DomainError(f"even root of negative number {x}")
    return -mp.root(-x, n)


_FACTOR = re.compile(
    r"(?P<num>(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][-+]?\d+)?)?"
    r"(?P<atom>pi|sqrt\(?(?P<rad>\d+(?:\.\d*)?)\)?)?"
)


def _parse_expr(text: str) -> mpf:
    text = text.strip()
    sign = 1
    if text and text[0] in "+-":
        sign = -1 if text[0] == "-" else 1
        text = text[1:]
    pieces = re.split(r"\s*([*/])\s*", text)
    value = None
    op = "*"
    for i, piece in enumerate(pieces):
        if i % 2 == 1:
            op = piece
            continue
        m = _FACTOR.fullmatch(piece)
        if not piece or m is None or not (m.group("num") or m.group("atom")):
            raise DomainError(f"cannot parse real expression {text!r}")
        factor = mpf(m.group("num")) if m.group("num") else mpf(1)
        atom = m.group("atom")
        if atom == "pi":
            factor *= mp.pi
        elif atom:
            factor *= mp.sqrt(mpf(m.group("rad")))
        if value is None:
            value = factor
        elif op == "*":
            value *= factor
        else:
            value /= factor
    return sign * value


def to_real(x) -> mpf:
    """Convert ``x`` to an ``mpf`` at the ambient precision.

    Strings are parsed exactly: decimals, and products/quotients of
    numbers, ``pi`` and ``sqrtN`` such as ``"2pi"``, ``"pi/sqrt5"`` or
    ``"sqrt2*pi"``.
    """
    if isinstance(x, str):
        return _parse_expr(x)
    if isinstance(x, Fraction):
        return mpf(x.numerator) / x.denominator
    if callable(x):
        return mpf(x())
    return mpf(x)
