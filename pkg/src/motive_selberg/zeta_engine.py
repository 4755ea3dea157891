"""Certificates for simple functional equations, plus Euler-product numerics.

For a space ``M`` and motive ``f`` the generalized zeta function
``Z_{M(f)}(s) = prod_k Z_M(s-k)^a(k)`` satisfies
``Z_{M(f)}(D + 2 rho - s)^C = Z_{M(f)}(s) S_{M(f)}(s)`` whenever ``f`` is
automorphic, with ``S_{M(f)} = prod_k S_M(s-k)^a(k)``.  A certificate
records the exact reduction of ``S_{M(f)}`` to a constant and a numeric
spot check of that constant.
"""

from __future__ import annotations

import csv
import math
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence, Union

import mpmath
from mpmath import mp
from scipy import integrate

from .barnes import DEFAULT_ACCURACY, AccuracyRequest, DomainError, EvalResult, multiple_sine
from .laurent import (
    DEGENERATE,
    ONE_MINUS_XINV,
    Automorphy,
    Degenerate,
    TateMotive,
    detect_automorphy,
    divide_exact,
    vanishing_order_at_one,
)
from .sine_calculus import (
    NormalForm,
    apply_motive,
    eval_log,
    from_level_poly,
    is_constant,
    normal_form,
)
from .spaces import Space, gamma_factor

__all__ = [
    "Certificate",
    "NumericSample",
    "LengthSpectrum",
    "SpectrumError",
    "NotAutomorphicError",
    "STANDARD_SAMPLES",
    "certify_simple_fe",
    "predicted_reflection",
    "numeric_accuracy_for",
    "load_length_spectrum",
    "truncated_zeta",
    "truncated_zeta_motive",
    "plancherel_surface_check",
]

SIMPLE_FE = "simple_fe"
GAMMA_FE_ONLY = "gamma_fe_only"
NOT_AUTOMORPHIC = "not_automorphic"

# sigma + i t with t in {0, 0.3, 0.7}; non-integer sigma keeps real points off the lattice
STANDARD_SAMPLES: tuple[complex, ...] = (
    0.37 + 0.0j,
    0.61 + 0.3j,
    0.23 + 0.7j,
    0.83 + 0.3j,
    0.47 + 0.7j,
)


class NotAutomorphicError(ValueError):
    pass


@dataclass(frozen=True)
class NumericSample:
    s: complex
    residual: float

    def to_json(self) -> dict:
        return {"s_re": self.s.real, "s_im": self.s.imag, "residual": self.residual}


@dataclass(frozen=True)
class Certificate:
    space: Space
    motive: TateMotive
    automorphy: Union[Automorphy, Degenerate, None]
    order: Union[int, float]
    quotient: Optional[TateMotive]
    level_constant: Union[int, str, None]
    normal_form: NormalForm
    reflection: Optional[tuple[int, int]]
    samples: tuple[NumericSample, ...] = field(default=())
    verdict: str = NOT_AUTOMORPHIC

    @property
    def max_residual(self) -> Optional[float]:
        if not self.samples:
            return None
        return max(x.residual for x in self.samples)

    def to_json(self) -> dict:
        if self.automorphy is None:
            auto = "none"
        elif self.automorphy is DEGENERATE:
            auto = "degenerate"
        else:
            auto = self.automorphy.to_json()
        numeric = None
        if self.samples:
            numeric = {
                "samples": [x.to_json() for x in self.samples],
                "max_residual": self.max_residual,
            }
        return {
            "space": self.space.to_json(),
            "motive": self.motive.to_json(),
            "motive_text": str(self.motive),
            "automorphy": auto,
            "order": "infinite" if self.order == math.inf else self.order,
            "quotient": None if self.quotient is None else self.quotient.to_json(),
            "level_constant": self.level_constant,
            "normal_form": self.normal_form.to_json(),
            "reflection": None if self.reflection is None else {"C": self.reflection[0], "point": self.reflection[1]},
            "numeric": numeric,
            "verdict": self.verdict,
        }


def predicted_reflection(space: Space, f: TateMotive) -> tuple[int, int]:
    """``(C, D + 2 rho_M)`` for automorphic ``f``."""
    auto = detect_automorphy(f)
    if not isinstance(auto, Automorphy):
        raise NotAutomorphicError(f"{f} has no unique automorphy (got {auto!r})")
    return auto.C, auto.D + space.rho2


def numeric_accuracy_for(S, samples: Sequence[complex] = STANDARD_SAMPLES) -> AccuracyRequest:
    """Working precision for spot-checking a product that should cancel to 1.

    ``log S_r(w)`` grows roughly like ``|w|^r``; with exponents up to ``E``
    the sum cancels from about ``E |w|^r`` down to zero.  Digits are
    rounded up to a multiple of 20 so repeated calls share caches.
    """
    total = sum(abs(e) for _, _, e in S.factors()) or 1
    span = max((abs(k) for _, k, _ in S.factors()), default=0) + max(abs(s) for s in samples)
    level = max((r for r, _ in S.levels), default=1)
    need = 25 + math.log10(total) + level * math.log10(span + level + 1)
    digits = 20 * math.ceil(need / 20)
    return AccuracyRequest.high(max(digits, 40))


def _off_lattice(s: complex, S) -> complex:
    """Nudge ``s`` by 1e-3 while some ``s - k + j`` sits on an integer."""
    while abs(s.imag) < 1e-6 and abs(s.real - round(s.real)) < 1e-6:
        s += 1e-3
    return s


def certify_simple_fe(
    space: Space,
    f: TateMotive,
    samples: Sequence[complex] = STANDARD_SAMPLES,
    acc: Optional[AccuracyRequest] = None,
    numeric: bool = True,
) -> Certificate:
    auto = detect_automorphy(f)
    order = vanishing_order_at_one(f)
    divisible = order >= space.dim
    quotient = divide_exact(f, ONE_MINUS_XINV**space.dim) if divisible else None
    S = apply_motive(gamma_factor(space), f)
    nf = normal_form(S)
    constant = is_constant(nf)

    level_constant = None
    if divisible:
        level_constant = is_constant(normal_form(from_level_poly(space.dim, f)))
        expected = -1 if quotient(1) % 2 else 1
        assert level_constant == expected, "sign law violated"

    if auto is None:
        verdict = NOT_AUTOMORPHIC
    elif divisible:
        assert constant == 1, f"S_M(f) reduced to {nf}, not +1"
        verdict = SIMPLE_FE
    else:
        verdict = GAMMA_FE_ONLY

    reflection = None
    if isinstance(auto, Automorphy):
        reflection = (auto.C, auto.D + space.rho2)

    checks = []
    if verdict == SIMPLE_FE and numeric:
        acc = acc or numeric_accuracy_for(S, samples)
        with mp.workdps(acc.digits + 10):
            for s in samples:
                s = _off_lattice(complex(s), S)
                value = mpmath.exp(eval_log(S, s, acc))
                checks.append(NumericSample(s, float(abs(value - 1))))
    return Certificate(
        space=space,
        motive=f,
        automorphy=auto,
        order=order,
        quotient=quotient,
        level_constant=level_constant,
        normal_form=nf,
        reflection=reflection,
        samples=tuple(checks),
        verdict=verdict,
    )


# -- length spectra and truncated Euler products ---------------------------------

class SpectrumError(ValueError):
    pass


@dataclass(frozen=True)
class LengthSpectrum:
    """Primitive geodesic lengths with multiplicities, sorted by length."""

    entries: tuple[tuple[float, int], ...] = ()
    source: str = ""

    def __post_init__(self):
        for length, mult in self.entries:
            if not length > 0:
                raise SpectrumError(f"length must be positive, got {length!r}")
            if not isinstance(mult, int) or mult < 1:
                raise SpectrumError(f"multiplicity must be a positive integer, got {mult!r}")
        object.__setattr__(self, "entries", tuple(sorted(self.entries)))

    def __len__(self) -> int:
        return len(self.entries)

    def upto(self, length_cut: float) -> tuple[tuple[float, int], ...]:
        return tuple(e for e in self.entries if e[0] <= length_cut)


def load_length_spectrum(path) -> LengthSpectrum:
    """Read a ``length,multiplicity`` CSV.  An empty file is an empty spectrum."""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    rows = list(csv.reader(text.splitlines()))
    if not rows or all(not r for r in rows):
        return LengthSpectrum((), str(path))
    header = [c.strip() for c in rows[0]]
    if header != ["length", "multiplicity"]:
        raise SpectrumError(f"line 1: expected header 'length,multiplicity', got {','.join(rows[0])!r}")
    entries = []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != 2:
            raise SpectrumError(f"line {lineno}: expected 2 fields, got {len(row)}")
        try:
            length = float(row[0])
            mult = int(row[1])
        except ValueError:
            raise SpectrumError(f"line {lineno}: cannot parse {','.join(row)!r}") from None
        if not (math.isfinite(length) and length > 0):
            raise SpectrumError(f"line {lineno}: length must be positive, got {row[0].strip()}")
        if mult < 1:
            raise SpectrumError(f"line {lineno}: multiplicity must be positive, got {row[1].strip()}")
        entries.append((length, mult))
    return LengthSpectrum(tuple(entries), str(path))


_ZETA_DIGITS = 30


def _euler_product(entries, s, N: int) -> mpmath.mpc:
    value = mpmath.mpc(1)
    for length, mult in entries:
        for n in range(N + 1):
            value *= (1 - mpmath.exp(-length * (s + n))) ** mult
    return value


def truncated_zeta(
    spec: LengthSpectrum,
    s,
    N: int,
    L: float,
    rho2: int = 1,
) -> EvalResult:
    """``prod_{l(P) <= L} prod_{n=0}^{N} (1 - exp(-l(P)(s+n)))^mult``.

    ``error_estimate`` is the change from the previous refinement: the
    larger of dropping weight ``N`` and dropping the longest included
    length.  Outside ``Re(s) > rho2`` the value is still computed but
    flagged ``divergent``.
    """
    if N < 0 or not L > 0:
        raise ValueError("need N >= 0 and L > 0")
    flags = ()
    if complex(s).real <= rho2:
        flags = ("divergent",)
        warnings.warn(f"Re(s)={complex(s).real} is outside the convergence region Re(s) > {rho2}")
    with mp.workdps(_ZETA_DIGITS):
        s = mpmath.mpc(s)
        entries = spec.upto(L)
        value = _euler_product(entries, s, N)
        prev_n = _euler_product(entries, s, N - 1) if N > 0 else mpmath.mpc(1)
        delta = abs(value - prev_n)
        if entries:
            longest = entries[-1][0]
            shorter = tuple(e for e in entries if e[0] < longest)
            delta = max(delta, abs(value - _euler_product(shorter, s, N)))
    return EvalResult(value, float(delta), flags=flags)


def truncated_zeta_motive(
    spec: LengthSpectrum,
    f: TateMotive,
    s,
    N: int,
    L: float,
    rho2: int = 1,
) -> EvalResult:
    """``prod_k Z(s - k)^a(k)`` with every factor truncated at ``(N, L)``.

    Accumulated as one log-sum over geodesics, weights and motive terms;
    the error estimate is the change from weight ``N - 1``.
    """
    if N < 0 or not L > 0:
        raise ValueError("need N >= 0 and L > 0")
    flags = ()
    if f and complex(s).real - f.max_deg <= rho2:
        flags = ("divergent",)
        warnings.warn(f"some Re(s - k) is outside the convergence region Re > {rho2}")
    with mp.workdps(_ZETA_DIGITS):
        s = mpmath.mpc(s)
        entries = spec.upto(L)

        def log_product(n_max: int) -> mpmath.mpc:
            total = mpmath.mpc(0)
            for length, mult in entries:
                for n in range(n_max + 1):
                    for k, a in f.terms():
                        total += a * mult * mpmath.log(1 - mpmath.exp(-length * (s - k + n)))
            return total

        value = mpmath.exp(log_product(N))
        prev = mpmath.exp(log_product(N - 1)) if N > 0 else mpmath.mpc(1)
    return EvalResult(value, float(abs(value - prev)), flags=flags)


def plancherel_surface_check(g: int, s: float, acc: AccuracyRequest = DEFAULT_ACCURACY) -> float:
    """Relative gap between the Plancherel integral form and the sine form.

    ``exp((4 - 4g) int_0^{s-1/2} pi t tan(pi t) dt)`` against
    ``(S_2(s) S_2(s+1))^(2 - 2g)`` for ``1/2 <= s < 1``.
    """
    if not isinstance(g, int) or g < 2:
        raise ValueError(f"genus must be an integer >= 2, got {g!r}")
    if not 0.5 <= s < 1:
        raise DomainError(f"s must lie in [1/2, 1), got {s}")
    upper = s - 0.5
    if upper == 0:
        integral = 0.0
    else:
        integral, _ = integrate.quad(
            lambda t: math.pi * t * math.tan(math.pi * t), 0.0, upper, epsabs=1e-13, epsrel=1e-13, limit=200
        )
    lhs = math.exp((4 - 4 * g) * integral)
    with mp.workdps(acc.digits + 5):
        pair = multiple_sine(2, s, acc).value * multiple_sine(2, s + 1, acc).value
        rhs = complex(pair ** (2 - 2 * g)).real
    return abs(lhs - rhs) / abs(rhs)
