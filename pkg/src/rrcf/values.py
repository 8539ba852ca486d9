"""Explicit values, reciprocity chains, the two-branch approximation of
R(e^{-2 alpha}) and figure/scan data.

Closed forms are stored as procedures over phi = (1 + sqrt5)/2 (and nu,
rho) so they are exact at whatever precision they are evaluated.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, NamedTuple

from mpmath import mp, mpf

from .cfengine import CFKind, evaluate, evaluate_bounded, value_bounded
from .config import DEFAULT, EvalConfig, to_real
from .errors import DomainError, NonConvergence, PrecisionExhausted, UnknownId
from .reciprocity import c_from_k, c_from_nome, registry


def _phi():
    return (1 + mp.sqrt(5)) / 2


def _r5(x):
    return mp.root(x, 5)


class Exponent(NamedTuple):
    """t = coef * pi * sqrt(rad); the nome is e^{-t}."""

    coef: Fraction
    rad: int = 1

    @property
    def value(self) -> mpf:
        return self.coef.numerator * mp.pi * mp.sqrt(self.rad) / self.coef.denominator

    def swap(self, ab: Fraction) -> "Exponent":
        """t' with t t' = 4 ab pi^2, i.e. alpha -> ab pi^2/alpha for q = e^{-2 alpha}."""
        return Exponent(4 * ab / (self.coef * self.rad), self.rad)

    def __str__(self):
        c = self.coef
        head = "" if c == 1 else (str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}*")
        root = "" if self.rad == 1 else f"*sqrt{self.rad}"
        return f"{head}pi{root}".replace("/*", "/")


@dataclass(frozen=True)
class KnownValue:
    id: str
    kind: CFKind
    exponent: Exponent
    closed_form: Callable[[], mpf]
    note: str
    unscaled: bool = False  # value excludes the q^(1/5) prefactor

    @property
    def alpha(self) -> mpf:
        return self.exponent.value / registry_for(self.kind).scale

    def direct(self, cfg: EvalConfig = DEFAULT):
        """Bounded value from the product/continued fraction at e^{-t}."""
        t = self.exponent.value
        b = value_bounded(self.kind, mp.exp(-t), cfg)
        if self.unscaled:
            s = mp.exp(t / 5)
            return type(b)(b.value * s, b.bound * s)
        return b


def registry_for(kind: CFKind):
    from .reciprocity import DEFAULT_FAMILY

    return registry(DEFAULT_FAMILY[kind])


# closed forms ---------------------------------------------------------------


def _s2pi():
    p = _phi()
    return mp.sqrt(p * p + 1) - p


def _r5_2pi_over_5():
    p, s = _phi(), _s2pi()
    return (1 - p**5 * s**5) / (p**5 + s**5)


def _r_10pi():
    p, s = _phi(), _s2pi()
    top, bot = _r5(p**5 + s**5), _r5(1 - p**5 * s**5)
    return (top - p * bot) / (p * top + bot)


def _w():
    p = _phi()
    return mp.sqrt(p**10 + 1) - p**5


def _r_2pi_sqrt5():
    p, u = _phi(), _r5(_w())
    return (1 - p * u) / (p + u)


def _hardy():
    s5 = mp.sqrt(5)
    inner = _r5(mpf(5) ** (mpf(3) / 4) * ((s5 - 1) / 2) ** (mpf(5) / 2) - 1)
    return (s5 / (1 + inner) - (s5 + 1) / 2) * mp.exp(2 * mp.pi / s5)


def _chain2_pair():
    p, u = _phi(), _r5(_w())
    A = (p + u) ** 5 - p**5 * (1 - p * u) ** 5
    B = p**5 * (p + u) ** 5 + (1 - p * u) ** 5
    return A, B


def _r5_2pi_over_5sqrt5():
    A, B = _chain2_pair()
    return A / B


def _r_10sqrt5pi():
    p = _phi()
    A, B = _chain2_pair()
    return (_r5(B) - p * _r5(A)) / (p * _r5(B) + _r5(A))


def _rpi_parts():
    p = _phi()
    sp, spp = mp.sqrt(p), mp.sqrt(p + 1 / p)
    return p, sp - spp / p, p + 1 / p - p * sp, spp


def _r_pi():
    p, n1, n2, _ = _rpi_parts()
    return n2 / n1


def _r_pi_radical():
    s5 = mp.sqrt(5)
    w = mp.sqrt(2 * s5 + 5)
    return (-mp.sqrt(s5) * (s5 + 5) + w + mp.sqrt(5 * (2 * s5 + 5))) / (2 * (s5 - w))


def _r_4pi_parts():
    p, n1, n2, spp = _rpi_parts()
    return n1 - p * n2, p + 1 / p - spp


def _r_4pi():
    top, bot = _r_4pi_parts()
    return top / bot


def _r5_4pi_over_5():
    p, n1, n2, _ = _rpi_parts()
    return (n1**5 - p**5 * n2**5) / (p**5 * n1**5 + n2**5)


def _r5_pi_over_5():
    p = _phi()
    m2, m1 = _r_4pi_parts()
    return (m1**5 - p**5 * m2**5) / (p**5 * m1**5 + m2**5)


def _self_dual(k):
    def form():
        c = c_from_k(k)
        return mp.sqrt(c * c + 1) - c

    return form


_F = Fraction
CATALOG = {
    v.id: v
    for v in (
        KnownValue("R_2pi", CFKind.R, Exponent(_F(2)), _s2pi, "self-dual point of the k=1 law"),
        KnownValue("R5_2pi_over_5", CFKind.R5, Exponent(_F(2, 5)), _r5_2pi_over_5, "k=11 step from R_2pi"),
        KnownValue("R_10pi", CFKind.R, Exponent(_F(10)), _r_10pi, "k=1 step from R5_2pi_over_5"),
        KnownValue("R5_2pi_over_sqrt5", CFKind.R5, Exponent(_F(2, 5), 5), _w, "self-dual point of the k=11 law"),
        KnownValue("R_2pi_over_sqrt5", CFKind.R, Exponent(_F(2, 5), 5), lambda: _r5(_w()), "fifth root of R5_2pi_over_sqrt5"),
        KnownValue("R_2pi_sqrt5", CFKind.R, Exponent(_F(2), 5), _r_2pi_sqrt5, "k=1 step from R_2pi_over_sqrt5"),
        KnownValue("HardyLetter", CFKind.R, Exponent(_F(2), 5), _hardy, "1/(1+ e^{-2pi sqrt5}/(1+ ...)), letter form", unscaled=True),
        KnownValue("R5_2pi_over_5sqrt5", CFKind.R5, Exponent(_F(2, 25), 5), _r5_2pi_over_5sqrt5, "k=11 step from R_2pi_sqrt5"),
        KnownValue("R_10sqrt5_pi", CFKind.R, Exponent(_F(10), 5), _r_10sqrt5pi, "k=1 step from R5_2pi_over_5sqrt5"),
        KnownValue("R_pi", CFKind.R, Exponent(_F(1)), _r_pi, "phi form of R(e^{-pi})"),
        KnownValue("R_pi_radical", CFKind.R, Exponent(_F(1)), _r_pi_radical, "nested radical form of R(e^{-pi})"),
        KnownValue("R_4pi", CFKind.R, Exponent(_F(4)), _r_4pi, "k=1 step from R_pi"),
        KnownValue("R5_4pi_over_5", CFKind.R5, Exponent(_F(4, 5)), _r5_4pi_over_5, "k=11 step from R_pi"),
        KnownValue("R5_pi_over_5", CFKind.R5, Exponent(_F(1, 5)), _r5_pi_over_5, "k=11 step from R_4pi"),
        KnownValue("V_pi", CFKind.V, Exponent(_F(1)), _self_dual(2), "self-dual point of the k=2 law"),
        KnownValue("Rp13_2pi_over_sqrt13", CFKind.RP13, Exponent(_F(2, 13), 13), _self_dual(3), "self-dual point of the k=3 law"),
        KnownValue("G_sqrt2pi", CFKind.G, Exponent(_F(1), 2), lambda: mp.sqrt(mpf(3) / 2) - 1, "self-dual point of the cubic k=-1 law"),
        KnownValue("Selberg_pi", CFKind.SELBERG, Exponent(_F(1)), lambda: mpf(2) ** (mpf(-5) / 8), "s^8 = 1/32 at alpha = beta = pi"),
    )
}


def _entry(entry_id) -> KnownValue:
    try:
        return CATALOG[entry_id]
    except KeyError:
        raise UnknownId(entry_id) from None


def known_value(entry_id: str, cfg: EvalConfig = DEFAULT) -> mpf:
    """Closed form of a catalog entry at working precision."""
    entry = _entry(entry_id)
    with mp.workdps(cfg.working_digits):
        return entry.closed_form()


def reciprocal_step(family, x, cfg: EvalConfig = DEFAULT) -> mpf:
    """Map the law variable at alpha to its partner at beta."""
    with mp.workdps(cfg.working_digits):
        return registry(family).flip(to_real(x))


# chains ---------------------------------------------------------------------


class ChainStep(NamedTuple):
    kind: CFKind  # R or R5
    alpha: mpf  # nome e^{-2 alpha}
    value: mpf
    exponent: Exponent


_K1_AB = Fraction(1)
_K11_AB = Fraction(1, 5)


def chain_exponents(start: str, steps: int) -> list[tuple[CFKind, Exponent, Exponent]]:
    """Exact orbit of the start exponent under the k=1 and k=11 swaps.

    Breadth first: every known exponent gets the k=1 step (on R) then the
    k=11 step (on R^5); only exponents not seen before are emitted.
    Returns (kind, exponent, parent) triples.
    """
    entry = _entry(start)
    if entry.kind not in (CFKind.R, CFKind.R5) or entry.unscaled:
        raise DomainError(f"chains start from an R or R^5 value, not {start}")
    if steps < 1:
        raise DomainError("steps must be >= 1")
    seen = {entry.exponent}
    queue = deque([entry.exponent])
    out = []
    while queue and len(out) < steps:
        t = queue.popleft()
        for kind, ab in ((CFKind.R, _K1_AB), (CFKind.R5, _K11_AB)):
            nxt = t.swap(ab)
            if nxt in seen:
                continue
            seen.add(nxt)
            queue.append(nxt)
            out.append((kind, nxt, t))
            if len(out) == steps:
                break
    return out


def chain_digits(start: str, steps: int, cfg: EvalConfig = DEFAULT) -> int:
    """Decimal digits needed so every chain value keeps ``cfg.digits``
    significant digits; R(e^{-t}) ~ e^{-t/5} and R^5 ~ e^{-t}."""
    plan = chain_exponents(start, steps)
    t_max = max(float(t.value) for _, t, _ in plan)
    t_max = max(t_max, float(_entry(start).exponent.value))
    return cfg.digits + int(math.ceil(t_max / math.log(10)))


def iterate_chain(start: str, steps: int, cfg: EvalConfig = DEFAULT, max_digits: int = 5000) -> list[ChainStep]:
    """Values reached from a catalog entry by alternating the two
    Rogers-Ramanujan reciprocity maps.

    Working precision is raised up front so that values near e^{-t/5}
    for large t keep their significance.
    """
    plan = chain_exponents(start, steps)
    digits = max(cfg.digits, chain_digits(start, steps, cfg))
    if digits > max_digits:
        raise PrecisionExhausted(f"chain needs {digits} digits (> {max_digits})")
    run = cfg.with_digits(digits)
    entry = _entry(start)
    out = []
    with mp.workdps(run.working_digits):
        phi = _phi()
        phi5 = phi**5
        v = entry.closed_form()
        r_of = {entry.exponent: v if entry.kind is CFKind.R else _r5(v)}
        for kind, t, parent in plan:
            x = r_of[parent]
            if kind is CFKind.R:
                val = (1 - phi * x) / (phi + x)
                r_of[t] = val
            else:
                y = x**5
                val = (1 - phi5 * y) / (phi5 + y)
                if val <= 0:
                    raise PrecisionExhausted("fifth power underflowed at current precision")
                r_of[t] = _r5(val)
            out.append(ChainStep(kind, t.value / 2, val, t))
    return out


# approximation and scans ----------------------------------------------------


def approx_R(alpha, cfg: EvalConfig = DEFAULT) -> mpf:
    """Two-branch approximation of R(e^{-2 alpha}).

    For alpha <= pi the partner R(e^{-2 beta}) is replaced by e^{-2 beta/5}
    inside the k=1 reciprocity map; for alpha >= pi, R ~ e^{-2 alpha/5}.
    """
    with mp.workdps(cfg.working_digits):
        alpha = to_real(alpha)
        if alpha <= 0:
            raise DomainError("alpha must be positive")
        if alpha <= mp.pi:
            p = _phi()
            e = mp.exp(-2 * mp.pi**2 / (5 * alpha))
            return (1 - p * e) / (p + e)
        return mp.exp(-2 * alpha / 5)


@dataclass
class ScanResult:
    max_err: mpf
    argmax: mpf
    rows: list  # (alpha, approx, exact, error)


def log_grid(lo, hi, n: int) -> list:
    ratio = hi / lo
    return [lo * ratio ** (mpf(i) / (n - 1)) for i in range(n)]


def error_scan(grid_size: int, alpha_max, cfg: EvalConfig = DEFAULT, alpha_min=None) -> ScanResult:
    """Largest |approx_R - R| over a log-uniform alpha grid."""
    if grid_size < 100:
        raise DomainError("grid_size must be >= 100")
    fam = registry("k1")
    with mp.workdps(cfg.working_digits):
        hi = to_real(alpha_max)
        if hi < 2 * mp.pi:
            raise DomainError("alpha_max must be >= 2 pi")
        lo = to_real(alpha_min) if alpha_min is not None else hi / 1000
        rows = []
        best = (mpf(-1), None)
        for a in log_grid(lo, hi, grid_size):
            approx = approx_R(a, cfg)
            exact = evaluate(CFKind.R, a, fam, cfg)
            err = abs(approx - exact)
            rows.append((a, approx, exact, err))
            if err > best[0]:
                best = (err, a)
        return ScanResult(best[0], best[1], rows)


FIGURE_COLUMNS = {
    1: ("alpha", "two_r"),
    2: ("alpha", "R_alpha", "R_beta"),
    3: ("alpha", "R_alpha", "exp_alpha", "R_beta", "exp_beta"),
    4: ("alpha", "k"),
}


def _k_at(alpha, fam, cfg):
    q = mp.exp(-2 * alpha)
    if mp.exp(-2 * alpha / 5) <= cfg.q_limit:
        return c_from_nome(CFKind.R, q, cfg)[1]
    x = evaluate(CFKind.R, alpha, fam, cfg)
    c = (1 / x - x) / 2
    return c - 1 / c


def figure_data(fig: int, grid_size: int, cfg: EvalConfig = DEFAULT):
    """(columns, rows) for one of the four figures on a uniform alpha grid
    starting at 0; alpha = 0 rows use the limiting values."""
    if fig not in FIGURE_COLUMNS:
        raise DomainError("figure id must be 1..4")
    if grid_size < 2:
        raise DomainError("grid_size must be >= 2")
    fam = registry("k1")
    rows = []
    with mp.workdps(cfg.working_digits):
        top = 4 * mp.pi if fig == 3 else mp.pi
        phi = _phi()
        for i in range(grid_size):
            a = top * i / (grid_size - 1)
            if i == 0:
                ra, rb = 1 / phi, mpf(0)
                if fig == 1:
                    rows.append((a, ra + rb))
                elif fig == 2:
                    rows.append((a, ra, rb))
                elif fig == 3:
                    rows.append((a, ra, mpf(1), rb, mpf(0)))
                else:
                    rows.append((a, mpf(-3) / 2))
                continue
            if fig == 4:
                rows.append((a, _k_at(a, fam, cfg)))
                continue
            b = fam.conjugate(a)
            ra = evaluate(CFKind.R, a, fam, cfg)
            rb = evaluate(CFKind.R, b, fam, cfg)
            if fig == 1:
                rows.append((a, ra + rb))
            elif fig == 2:
                rows.append((a, ra, rb))
            else:
                rows.append((a, ra, mp.exp(-2 * a / 5), rb, mp.exp(-2 * b / 5)))
    return FIGURE_COLUMNS[fig], rows


# Ramanujan-Selberg inversion ------------------------------------------------


def selberg8(alpha, cfg: EvalConfig = DEFAULT) -> mpf:
    """s^8(e^{-alpha}), through the linear reciprocity law when q is near 1."""
    fam = registry("selberg")
    with mp.workdps(cfg.working_digits):
        return evaluate_bounded(CFKind.SELBERG, alpha, fam, cfg).value ** 8


def invert_selberg(x, cfg: EvalConfig = DEFAULT, max_iter: int = 200) -> mpf:
    """alpha with s^8(e^{-alpha}) = x for 0 < x < 1/16."""
    with mp.workdps(cfg.working_digits):
        x = to_real(x)
        if not 0 < x < mpf(1) / 16:
            raise DomainError("x must lie strictly between 0 and 1/16")
        target = mp.log(x)

        def g(a):
            return mp.log(selberg8(a, cfg)) - target

        # s^8(e^{-alpha}) falls from 1/16 to 0 as alpha grows
        lo = hi = +mp.pi
        glo = ghi = g(lo)
        for _ in range(max_iter):
            if ghi <= 0:
                break
            hi *= 2
            ghi = g(hi)
        for _ in range(max_iter):
            if glo >= 0:
                break
            lo /= 2
            glo = g(lo)
        if glo < 0 or ghi > 0:
            raise NonConvergence("could not bracket the Selberg inverse")
        if glo == 0:
            return lo
        if ghi == 0:
            return hi
        # Illinois-modified regula falsi on the bracket [lo, hi]
        tol = cfg.tol
        side = 0
        for _ in range(max_iter):
            mid = (lo * ghi - hi * glo) / (ghi - glo)
            gm = g(mid)
            if abs(gm) <= tol or hi - lo <= tol * hi:
                return mid
            if gm > 0:
                lo, glo = mid, gm
                if side == 1:
                    ghi /= 2
                side = 1
            else:
                hi, ghi = mid, gm
                if side == -1:
                    glo /= 2
                side = -1
        raise NonConvergence("Selberg inversion did not converge")
