import random
from fractions import Fraction
from math import comb

import mpmath
import pytest

from motive_selberg.barnes import (
    DEFAULT_ACCURACY,
    AccuracyRequest,
    DomainError,
    PoleError,
    SingularPointError,
    binom_shift_coeffs,
    hurwitz_zeta,
    hurwitz_zeta_ds,
    log_multiple_gamma,
    multiple_sine,
    precision_from_env,
)


def rel(a, b):
    return float(abs(mpmath.mpc(a) - mpmath.mpc(b)) / abs(mpmath.mpc(b)))


def direct_em(s, w, N=400):
    """Textbook Euler-Maclaurin at large N with four corrections, at 40 digits."""
    with mpmath.workdps(40):
        s, w = mpmath.mpf(s), mpmath.mpf(w)
        a = N + w
        total = sum((n + w) ** -s for n in range(N))
        total += a ** (1 - s) / (s - 1) + a**-s / 2
        total += mpmath.mpf(1) / 12 * s * a ** (-s - 1)
        total -= mpmath.mpf(1) / 720 * s * (s + 1) * (s + 2) * a ** (-s - 3)
        total += mpmath.mpf(1) / 30240 * mpmath.rf(s, 5) * a ** (-s - 5)
        total -= mpmath.mpf(1) / 1209600 * mpmath.rf(s, 7) * a ** (-s - 7)
        return total


# -- Hurwitz zeta -------------------------------------------------------------------

def test_basel():
    assert rel(hurwitz_zeta(2, 1).value, mpmath.pi**2 / 6) <= 1e-12


def test_zeta_at_zero_half():
    # zeta(0, w) = 1/2 - w
    assert abs(hurwitz_zeta(0, 0.5).value) <= 1e-14
    assert abs(direct_em(0, 0.5)) <= 1e-14


def test_zeta_at_minus_one():
    # zeta(-1) = -B_2 / 2
    assert rel(hurwitz_zeta(-1, 1).value, -mpmath.bernoulli(2) / 2) <= 1e-14


def test_zeta_matches_direct_em():
    for s, w in [(0.5, 0.3), (-2.5, 1.7), (3.0, 0.9)]:
        assert rel(hurwitz_zeta(s, w).value, direct_em(s, w)) <= 1e-12


@pytest.mark.parametrize("s, w", [(-3, 0.3 + 0.2j), (-15, 2.5), (0.5 + 1j, 0.7), (2.2, 5 - 3j), (-7, 0.05)])
def test_zeta_and_derivative_against_mpmath(s, w):
    assert rel(hurwitz_zeta(s, w).value, mpmath.zeta(s, w)) <= 1e-12
    assert rel(hurwitz_zeta_ds(s, w).value, mpmath.zeta(s, w, 1)) <= 1e-12


def test_derivative_special_values():
    assert rel(hurwitz_zeta_ds(0, 1).value, -mpmath.log(2 * mpmath.pi) / 2) <= 1e-12
    assert rel(hurwitz_zeta_ds(0, 0.5).value, -mpmath.log(2) / 2) <= 1e-12


def test_derivative_matches_central_differences():
    rng = random.Random(7)
    h = 1e-5
    for _ in range(10):
        s = complex(rng.uniform(-4, 3), rng.uniform(-2, 2))
        w = complex(rng.uniform(0.1, 3), rng.uniform(-1, 1))
        if abs(s - 1) < 0.2:
            continue
        fd = (hurwitz_zeta(s + h, w).value - hurwitz_zeta(s - h, w).value) / (2 * h)
        assert rel(hurwitz_zeta_ds(s, w).value, fd) <= 1e-6


def test_hurwitz_errors():
    with pytest.raises(PoleError):
        hurwitz_zeta(1, 0.5)
    with pytest.raises(DomainError):
        hurwitz_zeta(2, 0)
    with pytest.raises(DomainError):
        hurwitz_zeta_ds(2, -0.5 + 1j)


def test_error_estimate_is_small_and_nonnegative():
    res = hurwitz_zeta_ds(-3, 0.7)
    assert 0 <= res.error_estimate <= 1e-10


# -- binomial shift coefficients ------------------------------------------------------

def test_binom_shift_examples():
    assert binom_shift_coeffs(1, Fraction(1, 3)) == [1]
    w = Fraction(2, 7)
    assert binom_shift_coeffs(2, w) == [1 - w, 1]
    assert binom_shift_coeffs(3, 0) == [1, Fraction(3, 2), Fraction(1, 2)]


@pytest.mark.parametrize("r", range(1, 9))
@pytest.mark.parametrize("w", [Fraction(0), Fraction(1, 3), Fraction(-5, 2), Fraction(7, 4)])
def test_binom_shift_identity_exact(r, w):
    beta = binom_shift_coeffs(r, w)
    for n in range(2 * r + 1):
        assert sum(b * (n + w) ** j for j, b in enumerate(beta)) == comb(n + r - 1, r - 1)


# -- multiple gamma -------------------------------------------------------------------

def test_gamma_1_is_normalised_gamma():
    # Lerch: zeta'(0, w) = log Gamma(w) - log(2 pi)/2
    for w in (0.3, 1.0, 2.75, 0.4 + 1.1j):
        want = mpmath.loggamma(w) - mpmath.log(2 * mpmath.pi) / 2
        assert abs(log_multiple_gamma(1, w).value - want) <= 1e-13


def test_gamma_ladder_at_integers():
    # log Gamma_2(2) - log Gamma_2(1) = -log Gamma_1(1)
    lhs = log_multiple_gamma(2, 2).value - log_multiple_gamma(2, 1).value
    assert abs(lhs + log_multiple_gamma(1, 1).value) <= 1e-13


@pytest.mark.parametrize("r", [2, 3, 5, 8])
def test_gamma_ladder_random(r):
    rng = random.Random(r)
    for _ in range(4):
        w = complex(rng.uniform(0.1, 4), rng.uniform(-1, 1))
        lhs = log_multiple_gamma(r, w).value - log_multiple_gamma(r, w + 1).value
        rhs = log_multiple_gamma(r - 1, w).value
        assert abs(mpmath.exp(lhs - rhs) - 1) <= 1e-10


def test_gamma_2_against_mpmath_hurwitz():
    # binom(n+1, 1) = (n + w) + (1 - w), so zeta_2(s, w) = zeta(s-1, w) + (1-w) zeta(s, w)
    for w in (0.4, 1.3, 2.0 + 0.5j):
        want = mpmath.zeta(-1, w, 1) + (1 - mpmath.mpc(w)) * mpmath.zeta(0, w, 1)
        assert abs(log_multiple_gamma(2, w).value - want) <= 1e-12


def test_gamma_domain():
    with pytest.raises(DomainError):
        log_multiple_gamma(3, -0.2)
    with pytest.raises(ValueError):
        log_multiple_gamma(0, 1.0)


# -- multiple sine --------------------------------------------------------------------

def test_s1_special_values():
    assert rel(multiple_sine(1, 0.5).value, 2) <= 1e-12
    assert rel(multiple_sine(1, 0.25).value, mpmath.sqrt(2)) <= 1e-12


def test_s1_is_two_sine():
    rng = random.Random(3)
    for _ in range(50):
        w = complex(rng.uniform(0.01, 0.99), rng.uniform(-2, 2))
        want = 2 * mpmath.sin(mpmath.pi * mpmath.mpc(w))
        assert rel(multiple_sine(1, w).value, want) <= 1e-10


def test_even_reflection():
    prod = multiple_sine(2, 0.7).value * multiple_sine(2, 1.3).value
    assert abs(prod - 1) <= 1e-12
    rng = random.Random(11)
    for r in (2, 4, 6):
        for _ in range(5):
            w = complex(rng.uniform(0.05, r - 0.05), rng.uniform(-1, 1))
            prod = multiple_sine(r, w).value * multiple_sine(r, r - w).value
            assert abs(prod - 1) <= 1e-8


def test_s3_ladder_example():
    lhs = multiple_sine(3, 1.2).value / multiple_sine(3, 2.2).value
    assert rel(lhs, multiple_sine(2, 1.2).value) <= 1e-10


@pytest.mark.parametrize("r", range(2, 7))
def test_ladder(r):
    rng = random.Random(100 + r)
    for _ in range(6):
        w = complex(rng.uniform(0.02, r - 1.02), rng.uniform(-1, 1))
        lhs = multiple_sine(r, w).value / multiple_sine(r, w + 1).value
        assert rel(lhs, multiple_sine(r - 1, w).value) <= 1e-8


def test_real_argument_gives_real_value():
    v = multiple_sine(4, 1.7).value
    assert mpmath.im(v) == 0


def test_sine_domain_and_singularities():
    with pytest.raises(DomainError):
        multiple_sine(2, 2.5)
    with pytest.raises(DomainError):
        multiple_sine(3, -0.1)
    with pytest.raises(SingularPointError):
        multiple_sine(2, 1e-8)
    with pytest.raises(SingularPointError):
        multiple_sine(4, 4 - 1e-9)


def test_tighter_accuracy_does_not_worsen_residuals():
    w = 0.37 + 0.4j
    residuals = []
    for acc in (DEFAULT_ACCURACY, DEFAULT_ACCURACY.tightened(1e-6)):
        with mpmath.workdps(acc.digits + 5):
            lhs = multiple_sine(4, w, acc).value / multiple_sine(4, w + 1, acc).value
            residuals.append(rel(lhs, multiple_sine(3, w, acc).value))
    assert residuals[1] <= max(residuals[0], 1e-25)


def test_high_precision_mode():
    acc = AccuracyRequest.high(50)
    with mpmath.workdps(60):
        got = multiple_sine(1, mpmath.mpf(1) / 3, acc).value
        want = 2 * mpmath.sin(mpmath.pi / 3)
        assert abs(got - want) <= mpmath.mpf(10) ** -40


def test_accuracy_request_validation():
    with pytest.raises(ValueError):
        AccuracyRequest(rel_tol=0)
    with pytest.raises(ValueError):
        AccuracyRequest(rel_tol=1e-30, digits=20)


def test_precision_from_env(monkeypatch):
    monkeypatch.setenv("MOTIVE_SELBERG_PRECISION", "high:40")
    assert precision_from_env().digits == 40
    monkeypatch.setenv("MOTIVE_SELBERG_PRECISION", "standard")
    assert precision_from_env() == DEFAULT_ACCURACY
