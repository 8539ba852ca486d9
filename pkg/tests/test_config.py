from fractions import Fraction

import pytest
from mpmath import mp, mpf

from rrcf.config import Bounded, EvalConfig, real_root, to_real
from rrcf.errors import DomainError


@pytest.mark.parametrize(
    "kwargs",
    [{"digits": 9}, {"digits": 12.5}, {"q_max": 1.0}, {"q_max": 0}, {"max_terms": 0}, {"tail_tol": "-1e-3"}],
)
def test_invalid_config(kwargs):
    with pytest.raises(DomainError):
        EvalConfig(**kwargs)


def test_defaults():
    cfg = EvalConfig()
    assert cfg.digits == 50 and cfg.working_digits == 60
    with mp.workdps(80):
        assert cfg.tol == mpf(10) ** -60
        assert EvalConfig(tail_tol="1e-20").tol == mpf("1e-20")
    assert cfg.with_digits(70).digits == 70


def test_q_limit_admits_the_decimal():
    with mp.workdps(500):
        assert EvalConfig().q_limit == mpf("0.995")


@pytest.mark.parametrize(
    "text,expected",
    [
        ("2pi", lambda: 2 * mp.pi),
        ("pi/2", lambda: mp.pi / 2),
        ("pi/sqrt5", lambda: mp.pi / mp.sqrt(5)),
        ("pi/sqrt13", lambda: mp.pi / mp.sqrt(13)),
        ("sqrt2*pi", lambda: mp.sqrt(2) * mp.pi),
        ("1.25e-3", lambda: mpf("0.00125")),
        ("2/25*pi*sqrt5", lambda: 2 * mp.pi * mp.sqrt(5) / 25),
    ],
)
def test_to_real_parses_exactly(text, expected):
    with mp.workdps(80):
        assert abs(to_real(text) - expected()) < mpf(10) ** -78


@pytest.mark.parametrize("bad", ["", "pie", "2**3", "pi//2", "sqrt"])
def test_to_real_rejects(bad):
    with pytest.raises(DomainError):
        to_real(bad)


def test_to_real_other_types():
    assert to_real(Fraction(1, 4)) == mpf("0.25")
    assert to_real(lambda: 3) == 3


def test_real_root_branches():
    assert real_root(-8, 3) == -2
    assert real_root(32, 5) == 2
    with pytest.raises(DomainError):
        real_root(-4, 2)


def test_bounded_power():
    b = Bounded(mpf(2), mpf("0.01")).power(3)
    assert b.value == 8
    # (2.01)^3 - 8 is the worst case
    assert b.bound >= mpf("2.01") ** 3 - 8 - mpf("1e-12")
    assert (-Bounded(mpf(1), mpf(0))).value == -1
