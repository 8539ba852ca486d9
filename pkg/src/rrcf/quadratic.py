"""The quadratic x^2 - 2 r x - (2 r c - 1) = 0 and integer power coefficients.

Since c^2 = k c + 1, every power of c (and of 1/c) is an integer linear
combination of 1 and c; the coefficients are kept as exact ints.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import NamedTuple

from mpmath import mp, mpf

from .config import DEFAULT, Bounded, EvalConfig, to_real
from .errors import ComplexRoots, DomainError, NegativeRootWarning, PoleError
from .reciprocity import Residual


class RootPair(NamedTuple):
    r: mpf
    c: mpf
    x1: mpf
    x2: mpf

    def recovered(self) -> tuple[mpf, mpf]:
        """(r, c) rebuilt from the two roots."""
        s = self.x1 + self.x2
        return s / 2, (1 - self.x1 * self.x2) / s


def solve_pair(r, c, cfg: EvalConfig = DEFAULT) -> RootPair:
    """Roots r +/- sqrt(r^2 + 2 r c - 1), larger first."""
    with mp.workdps(cfg.working_digits):
        r, c = to_real(r), to_real(c)
        if c <= 0:
            raise DomainError("c must be positive")
        disc = r * r + 2 * r * c - 1
        # a double root computed in floating point lands a few ulps off zero
        if abs(disc) <= 16 * cfg.eps * (r * r + abs(2 * r * c) + 1):
            disc = mpf(0)
        elif disc < 0:
            raise ComplexRoots(f"discriminant {mp.nstr(disc, 5)} < 0")
        if 2 * r * c > 1:
            warnings.warn("2rc > 1: the smaller root is negative", NegativeRootWarning, stacklevel=2)
        s = mp.sqrt(disc)
        return RootPair(r, c, r + s, r - s)


@dataclass(frozen=True)
class PowerCoeffs:
    """c^n = a + b c and c^-n = A + B c, exactly."""

    n: int
    k: int
    a: int
    b: int
    A: int
    B: int


def power_coeffs(k: int, n: int) -> PowerCoeffs:
    if n < 1:
        raise DomainError("n must be >= 1")
    k = int(k)
    a, b = 0, 1
    A, B = -k, 1
    for _ in range(n - 1):
        a, b = b, a + k * b
        A, B = B - k * A, A
    return PowerCoeffs(n, k, a, b, A, B)


def power_residual(k: int, n: int, pair, cfg: EvalConfig = DEFAULT, pair_error=None) -> tuple[Residual, Residual]:
    """t^n - (a_n + b_n t) and t^-n - (A_n + B_n t) for t = (1 - x1 x2)/(x1 + x2).

    ``pair`` holds plain reals or :class:`Bounded` values; plain reals are
    treated as exact to ``pair_error`` (default: working precision).
    """
    pc = power_coeffs(k, n)
    with mp.workdps(cfg.working_digits):
        xs = []
        for x in pair:
            if isinstance(x, Bounded):
                xs.append(x)
            else:
                v = to_real(x)
                err = to_real(pair_error) if pair_error is not None else 4 * cfg.eps * abs(v)
                xs.append(Bounded(v, err))
        (x1, e1), (x2, e2) = xs
        s = x1 + x2
        if s == 0:
            raise PoleError("x1 + x2 = 0")
        num = 1 - x1 * x2
        if num == 0:
            raise PoleError("1 - x1 x2 = 0")
        t = num / s
        et = ((1 + x2 * x2) * e1 + (1 + x1 * x1) * e2) / (s * s) * 2
        tn = t**n
        inv = 1 / tn
        first = tn - (pc.a + pc.b * t)
        second = inv - (pc.A + pc.B * t)
        slope1 = n * abs(t) ** (n - 1) + abs(pc.b)
        slope2 = n * abs(inv / t) + abs(pc.B)
        floor1 = (4 * n + 8) * cfg.eps * (abs(tn) + abs(pc.a) + abs(pc.b * t))
        floor2 = (4 * n + 8) * cfg.eps * (abs(inv) + abs(pc.A) + abs(pc.B * t))
        return (
            Residual(first, 10 * slope1 * et + floor1),
            Residual(second, 10 * slope2 * et + floor2),
        )


def periodic_cf(k: int, depth: int, cfg: EvalConfig = DEFAULT) -> mpf:
    """2k + 4/(2k + 4/(... + 4/(2k))) with ``depth`` partial quotients 4/(2k+).

    The limit is the root of y^2 - 2ky - 4 = 0 of larger modulus, which is
    2c for k > 0 and k - sqrt(k^2 + 4) = -2/c for k < 0.
    """
    if k == 0:
        raise DomainError("k = 0 gives a divergent periodic fraction")
    with mp.workdps(cfg.working_digits):
        y = mpf(2 * k)
        for _ in range(depth):
            y = 2 * k + 4 / y
        return y


def generic_embedding(B, C, cfg: EvalConfig = DEFAULT) -> tuple[mpf, mpf]:
    """(r, c) such that x^2 + B x + C = 0 coincides with x^2 - 2rx - (2rc - 1) = 0."""
    with mp.workdps(cfg.working_digits):
        B, C = to_real(B), to_real(C)
        if B == 0:
            raise PoleError("B = 0 has no (r, c) representation")
        return -B / 2, (C - 1) / B

