"""Hurwitz zeta, Barnes multiple gamma and multiple sine numerics.

Conventions::

    zeta_r(s, w)   = sum_{n>=0} binom(n+r-1, r-1) (n+w)^-s
    log Gamma_r(w) = d/ds zeta_r(s, w) at s = 0
    S_r(w)         = Gamma_r(w)^-1 * Gamma_r(r-w)^((-1)^r)

so that ``Gamma_1(w) = Gamma(w)/sqrt(2 pi)`` and ``S_1(w) = 2 sin(pi w)``.

Everything runs on :mod:`mpmath`.  The Hurwitz zeta and its s-derivative
use Euler-Maclaurin summation with the derivative taken analytically term
by term.  Error estimates are the size of the last Bernoulli correction
used; they are heuristic, not rigorous bounds.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache

import mpmath
from mpmath import mp

__all__ = [
    "AccuracyRequest",
    "EvalResult",
    "NumericsError",
    "PoleError",
    "DomainError",
    "SingularPointError",
    "DEFAULT_ACCURACY",
    "hurwitz_zeta",
    "hurwitz_zeta_ds",
    "binom_shift_coeffs",
    "log_multiple_gamma",
    "multiple_sine",
    "log_multiple_sine",
    "precision_from_env",
]

SINGULAR_DISTANCE = 1e-6


class NumericsError(ValueError):
    pass


class PoleError(NumericsError):
    pass


class DomainError(NumericsError):
    pass


class SingularPointError(NumericsError):
    pass


@dataclass(frozen=True)
class AccuracyRequest:
    """Target relative error plus Euler-Maclaurin knobs.

    ``digits`` is the working precision in decimal digits; guard digits
    against cancellation are added internally.  ``head_terms`` is the
    number N of directly summed terms and ``bernoulli_terms`` caps the
    number K of Bernoulli corrections (order 2K).  Summation of the
    corrections stops early once a term falls below the target.
    """

    rel_tol: float = 1e-10
    digits: int = 20
    head_terms: int = 60
    bernoulli_terms: int = 15

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise ValueError("rel_tol must be positive")
        if self.digits < 10:
            raise ValueError("digits must be at least 10")
        floor = 10.0 ** (2 - self.digits)
        if self.rel_tol < floor:
            raise ValueError(
                f"rel_tol={self.rel_tol:g} is below the floor {floor:g} for {self.digits} digits"
            )
        if self.head_terms < 1 or self.bernoulli_terms < 1:
            raise ValueError("head_terms and bernoulli_terms must be positive")

    @classmethod
    def high(cls, digits: int) -> "AccuracyRequest":
        """High-precision mode with ``digits`` working digits."""
        return cls(
            rel_tol=10.0 ** (5 - digits),
            digits=digits,
            head_terms=60,
            bernoulli_terms=max(15, digits // 2 + 10),
        )

    def tightened(self, factor: float = 1e-3) -> "AccuracyRequest":
        digits = self.digits + math.ceil(-math.log10(factor))
        return replace(
            self,
            rel_tol=self.rel_tol * factor,
            digits=digits,
            bernoulli_terms=max(self.bernoulli_terms, digits // 2 + 10),
        )


DEFAULT_ACCURACY = AccuracyRequest()


def precision_from_env(default: AccuracyRequest = DEFAULT_ACCURACY) -> AccuracyRequest:
    """Read ``MOTIVE_SELBERG_PRECISION`` (``standard`` or a digit count)."""
    raw = os.environ.get("MOTIVE_SELBERG_PRECISION", "").strip().lower()
    if not raw or raw == "standard":
        return default
    if raw.startswith("high:"):
        raw = raw[5:]
    return AccuracyRequest.high(int(raw))


@dataclass(frozen=True)
class EvalResult:
    """A computed value with a heuristic error estimate.

    ``value`` is an ``mpmath.mpc`` carrying the full working precision.
    """

    value: mpmath.mpc
    error_estimate: float
    heuristic: bool = True
    flags: tuple[str, ...] = field(default=())

    @property
    def complex(self) -> complex:
        return complex(self.value)

    def to_json(self) -> dict:
        v = complex(self.value)
        out = {"value_re": v.real, "value_im": v.imag, "err_est": float(self.error_estimate)}
        if self.flags:
            out["flags"] = list(self.flags)
        return out


@lru_cache(maxsize=None)
def _bernoulli_over_factorial(k2: int, dps: int) -> mpmath.mpf:
    """``B_{2k} / (2k)!`` at ``dps`` digits; cached, read-only after first use."""
    with mp.workdps(dps):
        return mpmath.bernoulli(k2) / mpmath.factorial(k2)


def _guard_digits(s, w, n_head: int) -> int:
    """Extra digits lost to cancellation of head terms of size |N+w|^-Re(s)."""
    re_s = float(mpmath.re(s))
    scale = n_head + abs(complex(w)) + 1.0
    return 8 + max(0, math.ceil(-re_s * math.log10(scale))) + math.ceil(math.log10(scale))


def _check_args(s, w) -> None:
    if mpmath.re(w) <= 0:
        raise DomainError(f"Hurwitz zeta needs Re(w) > 0, got w={complex(w)}")
    if s == 1:
        raise PoleError("Hurwitz zeta has a pole at s = 1")


def _euler_maclaurin(s, w, acc: AccuracyRequest, derivative: bool) -> EvalResult:
    _check_args(s, w)
    dps = acc.digits + _guard_digits(s, w, acc.head_terms)
    with mp.workdps(dps):
        s = mpmath.mpmathify(s)
        w = mpmath.mpmathify(w)
        N = acc.head_terms
        a = N + w
        loga = mpmath.log(a)
        head = mpmath.mpf(0)
        for n in range(N):
            t = n + w
            lt = mpmath.log(t)
            term = mpmath.exp(-s * lt)
            head += -lt * term if derivative else term
        a_s = mpmath.exp(-s * loga)  # a^-s
        if derivative:
            tail = (-loga * a * a_s / (s - 1) - a * a_s / (s - 1) ** 2) - loga * a_s / 2
        else:
            tail = a * a_s / (s - 1) + a_s / 2
        total = head + tail
        # rising factorial p = (s)_{2k-1} and its s-derivative dp
        p, dp = s, mpmath.mpf(1)
        a_pow = a_s / a  # a^(-s-1)
        inv_a2 = 1 / (a * a)
        tol = mpmath.mpf(acc.rel_tol) * mpmath.mpf(10) ** -4
        last = mpmath.mpf(0)
        for k in range(1, acc.bernoulli_terms + 1):
            c = _bernoulli_over_factorial(2 * k, dps)
            if derivative:
                term = c * (dp - p * loga) * a_pow
            else:
                term = c * p * a_pow
            total += term
            last = abs(term)
            scale = abs(total)
            if last <= tol * scale and k >= 2:
                break
            # advance (s)_{2k-1} -> (s)_{2k+1}
            for m in (2 * k - 1, 2 * k):
                dp = dp * (s + m) + p
                p = p * (s + m)
            a_pow *= inv_a2
        err = float(last)
        value = mpmath.mpc(total)
    return EvalResult(value, err)


def hurwitz_zeta(s, w, acc: AccuracyRequest = DEFAULT_ACCURACY) -> EvalResult:
    """``zeta(s, w) = sum_{n>=0} (n + w)^-s`` continued in ``s``; needs Re(w) > 0."""
    return _euler_maclaurin(s, w, acc, derivative=False)


def hurwitz_zeta_ds(s, w, acc: AccuracyRequest = DEFAULT_ACCURACY) -> EvalResult:
    """``d/ds zeta(s, w)`` from the analytically differentiated expansion."""
    return _euler_maclaurin(s, w, acc, derivative=True)


def _hurwitz_ds_negative_integers(jmax: int, w, acc: AccuracyRequest) -> list[EvalResult]:
    """``zeta'(-j, w)`` for ``j = 0..jmax`` sharing logs and powers.

    Same Euler-Maclaurin expansion as :func:`hurwitz_zeta_ds`, specialised
    to integer ``s = -j`` so the head sum needs one log per node.
    """
    _check_args(-jmax, w)
    dps = acc.digits + _guard_digits(-jmax, w, acc.head_terms)
    N = acc.head_terms
    out = []
    with mp.workdps(dps):
        w = mpmath.mpmathify(w)
        heads = [mpmath.mpc(0)] * (jmax + 1)
        for n in range(N):
            t = n + w
            lt = mpmath.log(t)
            pw = -lt
            for j in range(jmax + 1):
                heads[j] += pw
                pw *= t
        a = N + w
        loga = mpmath.log(a)
        inv_a2 = 1 / (a * a)
        a_j = mpmath.mpc(1)  # a^j
        tol = mpmath.mpf(acc.rel_tol) * mpmath.mpf(10) ** -4
        for j in range(jmax + 1):
            s = -j
            total = heads[j]
            total += loga * a * a_j / (j + 1) - a * a_j / (j + 1) ** 2 - loga * a_j / 2
            p, dp = mpmath.mpf(s), mpmath.mpf(1)
            a_pow = a_j / a
            last = mpmath.mpf(0)
            for k in range(1, acc.bernoulli_terms + 1):
                term = _bernoulli_over_factorial(2 * k, dps) * (dp - p * loga) * a_pow
                total += term
                last = abs(term)
                if k >= 2 and last <= tol * abs(total):
                    break
                for m in (2 * k - 1, 2 * k):
                    dp = dp * (s + m) + p
                    p = p * (s + m)
                a_pow *= inv_a2
            out.append(EvalResult(+total, float(last)))
            a_j *= a
    return out


def binom_shift_coeffs(r: int, w) -> list:
    """Coefficients beta_j with ``binom(n+r-1, r-1) = sum_j beta_j (n+w)^j``.

    ``binom(n+r-1, r-1) = prod_{i=1}^{r-1} ((n+w) + (i-w)) / (r-1)!``; the
    product is expanded in ``y = n + w`` using whatever arithmetic ``w``
    carries (``Fraction`` stays exact).
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    coeffs = [w * 0 + 1]  # polynomial in y, lowest degree first
    for i in range(1, r):
        c = i - w
        new = [w * 0] * (len(coeffs) + 1)
        for j, b in enumerate(coeffs):
            new[j] += b * c
            new[j + 1] += b
        coeffs = new
    fact = math.factorial(r - 1)
    if isinstance(w, (int, Fraction)):
        return [Fraction(b) / fact for b in coeffs]
    return [b / fact for b in coeffs]


def log_multiple_gamma(r: int, w, acc: AccuracyRequest = DEFAULT_ACCURACY) -> EvalResult:
    """``log Gamma_r(w) = sum_j beta_j(w) zeta'(-j, w)`` for Re(w) > 0."""
    if r < 1:
        raise ValueError("r must be >= 1")
    if mpmath.re(w) <= 0:
        raise DomainError(f"log Gamma_{r} is implemented for Re(w) > 0, got w={complex(w)}")
    # beta_j(w) grow like |w|^(r-1) and cancel in the sum
    guard = 5 + math.ceil((r - 1) * math.log10(abs(complex(w)) + r + 1))
    inner = replace(acc, digits=acc.digits + guard)
    with mp.workdps(inner.digits):
        w = mpmath.mpmathify(w)
        betas = binom_shift_coeffs(r, w)
        total = mpmath.mpc(0)
        err = 0.0
        zetas = _hurwitz_ds_negative_integers(r - 1, w, inner)
        for beta, z in zip(betas, zetas):
            total += beta * z.value
            err += float(abs(beta)) * z.error_estimate
        total = +total
    return EvalResult(total, err)


def _check_strip(r: int, w) -> None:
    if r < 1:
        raise ValueError("r must be >= 1")
    re_w = mpmath.re(w)
    for p in (0, r):
        if abs(complex(w) - p) < SINGULAR_DISTANCE:
            raise SingularPointError(f"S_{r} is singular at w={p}")
    if not 0 < re_w < r:
        raise DomainError(f"S_{r} is implemented for 0 < Re(w) < {r}, got w={complex(w)}")


def log_multiple_sine(r: int, w, acc: AccuracyRequest = DEFAULT_ACCURACY) -> EvalResult:
    """A logarithm of ``S_r(w)`` for ``0 < Re(w) < r`` (branch unspecified)."""
    _check_strip(r, w)
    with mp.workdps(acc.digits + 5):
        w = mpmath.mpmathify(w)
        g1 = log_multiple_gamma(r, w, acc)
        g2 = log_multiple_gamma(r, r - w, acc)
        sgn = 1 if r % 2 == 0 else -1
        value = -g1.value + sgn * g2.value
    return EvalResult(value, g1.error_estimate + g2.error_estimate)


def multiple_sine(r: int, w, acc: AccuracyRequest = DEFAULT_ACCURACY) -> EvalResult:
    """``S_r(w)`` on the strip ``0 < Re(w) < r``.

    For real ``w`` the imaginary part is checked to be below tolerance and
    dropped.
    """
    lg = log_multiple_sine(r, w, acc)
    with mp.workdps(acc.digits + 5):
        value = mpmath.exp(lg.value)
        if mpmath.im(w) == 0:
            dust = abs(mpmath.im(value))
            assert dust <= 1e3 * acc.rel_tol * max(1, abs(value)), f"imaginary part {dust} at real w"
            value = mpmath.mpc(mpmath.re(value))
        err = float(abs(value)) * lg.error_estimate
    return EvalResult(value, err)
