"""Formal products of shifted multiple sine functions and their normal form.

A :class:`FormalSineProduct` stands for::

    sign * prod_r prod_k S_r(s - k) ** ([x^k] P_r)

with one Laurent polynomial ``P_r`` per level.  Acting with a motive ``f``
multiplies every ``P_r`` by ``f``.  The only rewrite rules used in
:func:`normal_form` are the ladder ``S_r(s) / S_r(s+1) = S_{r-1}(s)`` and
``S_1(s - k) = (-1)^k S_1(s)``; together they bring any product to
``sign * prod_r S_r(s) ** c_r``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping, Union

import mpmath
from mpmath import mp

from .barnes import (
    DEFAULT_ACCURACY,
    SINGULAR_DISTANCE,
    AccuracyRequest,
    SingularPointError,
    log_multiple_gamma,
)
from .laurent import ONE, ONE_MINUS_XINV, TateMotive, divmod_one_minus_xinv

__all__ = [
    "FormalSineProduct",
    "ReductionStep",
    "NormalForm",
    "NOT_CONSTANT",
    "from_level_poly",
    "apply_motive",
    "normal_form",
    "is_constant",
    "replay_trace",
    "eval_log",
    "continued_log_gamma",
    "continued_log_sine",
]

NOT_CONSTANT = "not_constant"


def _sign_power(sign: int, e: int) -> int:
    return -1 if sign == -1 and e % 2 else 1


@dataclass(frozen=True)
class FormalSineProduct:
    """``sign * prod_r S_r^{P_r}(s)``; ``levels`` holds nonzero ``(r, P_r)`` pairs."""

    levels: tuple[tuple[int, TateMotive], ...] = ()
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        clean = {}
        for r, P in self.levels:
            if r < 1:
                raise ValueError(f"level must be >= 1, got {r}")
            clean[r] = clean.get(r, TateMotive()) + P
        object.__setattr__(
            self, "levels", tuple(sorted((r, P) for r, P in clean.items() if not P.is_zero()))
        )

    @classmethod
    def from_levels(cls, levels: Mapping[int, TateMotive], sign: int = 1) -> "FormalSineProduct":
        return cls(tuple(levels.items()), sign)

    @property
    def level_map(self) -> dict[int, TateMotive]:
        return dict(self.levels)

    def level(self, r: int) -> TateMotive:
        return self.level_map.get(r, TateMotive())

    def is_empty(self) -> bool:
        return not self.levels

    def __mul__(self, other: "FormalSineProduct") -> "FormalSineProduct":
        if not isinstance(other, FormalSineProduct):
            return NotImplemented
        return FormalSineProduct(self.levels + other.levels, self.sign * other.sign)

    def inverse(self) -> "FormalSineProduct":
        return FormalSineProduct(tuple((r, -P) for r, P in self.levels), self.sign)

    def apply(self, f: TateMotive) -> "FormalSineProduct":
        return apply_motive(self, f)

    def factors(self) -> Iterable[tuple[int, int, int]]:
        """Yield ``(r, k, e)`` for each factor ``S_r(s - k) ** e``."""
        for r, P in self.levels:
            for k, e in P.terms():
                yield r, k, e

    def to_json(self) -> dict:
        return {
            "sign": self.sign,
            "levels": {str(r): P.to_json() for r, P in self.levels},
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "FormalSineProduct":
        levels = {int(r): TateMotive.from_json(P) for r, P in data["levels"].items()}
        return cls.from_levels(levels, int(data.get("sign", 1)))


@dataclass(frozen=True)
class ReductionStep:
    """One ladder step: ``P_r = (1 - x^-1) * quotient + residue``.

    The quotient moves to level ``r - 1``; at level 1 it is absorbed as the
    sign ``(-1)^{quotient(1)}``.
    """

    level: int
    quotient: TateMotive
    residue: int
    sign_contribution: int

    def to_json(self) -> dict:
        return {
            "level": self.level,
            "quotient": self.quotient.to_json(),
            "residue": self.residue,
            "sign_contribution": self.sign_contribution,
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "ReductionStep":
        return cls(
            int(data["level"]),
            TateMotive.from_json(data["quotient"]),
            int(data["residue"]),
            int(data["sign_contribution"]),
        )


@dataclass(frozen=True)
class NormalForm:
    sign: int
    residues: dict[int, int]
    trace: tuple[ReductionStep, ...] = field(default=(), compare=False)

    def as_product(self) -> FormalSineProduct:
        return FormalSineProduct(tuple((r, TateMotive.constant(c)) for r, c in self.residues.items()), self.sign)

    def to_json(self) -> dict:
        return {
            "sign": self.sign,
            "residues": {str(r): c for r, c in sorted(self.residues.items())},
            "trace": [step.to_json() for step in self.trace],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "NormalForm":
        return cls(
            int(data["sign"]),
            {int(r): int(c) for r, c in data["residues"].items()},
            tuple(ReductionStep.from_json(s) for s in data["trace"]),
        )

    def __str__(self) -> str:
        parts = [f"S_{r}(s)^{c}" for r, c in sorted(self.residues.items(), reverse=True)]
        head = "-1" if self.sign < 0 else "+1"
        return " * ".join([head] + parts)


def from_level_poly(r: int, P: TateMotive) -> FormalSineProduct:
    if r < 1:
        raise ValueError(f"level must be >= 1, got {r}")
    return FormalSineProduct(((r, P),))


def apply_motive(F: FormalSineProduct, f: TateMotive) -> FormalSineProduct:
    """Act with ``f``: ``P_r -> P_r * f`` and ``sign -> sign ** f(1)``."""
    levels = tuple((r, P * f) for r, P in F.levels)
    return FormalSineProduct(levels, _sign_power(F.sign, f(1)))


def normal_form(F: FormalSineProduct) -> NormalForm:
    levels = F.level_map
    sign = F.sign
    residues: dict[int, int] = {}
    trace = []
    top = max(levels, default=0)
    carry = TateMotive()
    for r in range(top, 0, -1):
        P = levels.get(r, TateMotive()) + carry
        if P.is_zero():
            carry = TateMotive()
            continue
        Q, c = divmod_one_minus_xinv(P)
        if r == 1:
            # S_1^{(1 - x^-1)} = S_0 = -1
            contribution = _sign_power(-1, Q(1))
            sign *= contribution
            carry = TateMotive()
        else:
            contribution = 1
            carry = Q
        if c:
            residues[r] = c
        trace.append(ReductionStep(r, Q, c, contribution))
    return NormalForm(sign, residues, tuple(trace))


def is_constant(N: NormalForm) -> Union[int, str]:
    """The constant ``+1``/``-1`` if no residual sines remain, else ``'not_constant'``."""
    return N.sign if not N.residues else NOT_CONSTANT


def replay_trace(F: FormalSineProduct, trace: Iterable[ReductionStep]) -> tuple[int, dict[int, int]]:
    """Check a reduction trace against ``F`` without trusting :func:`normal_form`.

    Each step is verified by multiplying back, ``P_r == (1 - x^-1) * q + c``.
    Raises ``ValueError`` on the first mismatch.
    """
    levels = F.level_map
    sign = F.sign
    residues: dict[int, int] = {}
    carry = TateMotive()
    current = max(levels, default=0) + 1
    for step in trace:
        if not step.level < current:
            raise ValueError(f"trace levels must strictly decrease, got {step.level} after {current}")
        for skipped in range(current - 1, step.level, -1):
            if not (levels.get(skipped, TateMotive()) + carry).is_zero():
                raise ValueError(f"trace skips nonzero level {skipped}")
            carry = TateMotive()
        P = levels.get(step.level, TateMotive()) + carry
        if ONE_MINUS_XINV * step.quotient + step.residue != P:
            raise ValueError(f"step at level {step.level} does not multiply back")
        if step.level == 1:
            expected = -1 if step.quotient(1) % 2 else 1
        else:
            expected = 1
        if step.sign_contribution != expected:
            raise ValueError(f"bad sign contribution at level {step.level}")
        sign *= step.sign_contribution
        if step.residue:
            residues[step.level] = step.residue
        carry = step.quotient if step.level > 1 else TateMotive()
        current = step.level
    for skipped in range(current - 1, 0, -1):
        if not (levels.get(skipped, TateMotive()) + carry).is_zero():
            raise ValueError(f"trace stops before nonzero level {skipped}")
        carry = TateMotive()
    return sign, residues


# -- numerics ----------------------------------------------------------------

def _nearest_nonpositive_integer_clash(w) -> bool:
    re_w = float(mpmath.re(w))
    k = round(re_w)
    return k <= 0 and abs(complex(w) - k) < SINGULAR_DISTANCE


@lru_cache(maxsize=200_000)
def continued_log_gamma(r: int, w: mpmath.mpc, acc: AccuracyRequest = DEFAULT_ACCURACY) -> mpmath.mpc:
    """``log Gamma_r(w)`` (mod 2 pi i) for any ``w`` off the poles ``0, -1, -2, ...``.

    Left of the line Re(w) = 0 the recursion ``Gamma_r(w) = Gamma_r(w+1)
    Gamma_{r-1}(w)`` with ``Gamma_0(w) = 1/w`` climbs back to the half-plane
    where :func:`log_multiple_gamma` applies.
    """
    if _nearest_nonpositive_integer_clash(w):
        raise SingularPointError(f"Gamma_{r} has a pole at w={complex(w)}")
    with mp.workdps(acc.digits + 10):
        if r == 0:
            return -mpmath.log(w)
        if mpmath.re(w) > 0.5:
            return log_multiple_gamma(r, w, acc).value
        return continued_log_gamma(r, w + 1, acc) + continued_log_gamma(r - 1, w, acc)


def continued_log_sine(r: int, w, acc: AccuracyRequest = DEFAULT_ACCURACY) -> mpmath.mpc:
    """``log S_r(w)`` (mod 2 pi i) anywhere off the integer lattice of singularities."""
    with mp.workdps(acc.digits + 10):
        w = mpmath.mpc(w)
        lg = continued_log_gamma(r, w, acc)
        lr = continued_log_gamma(r, r - w, acc)
        return -lg + (lr if r % 2 == 0 else -lr)


def eval_log(F: FormalSineProduct, s, acc: AccuracyRequest = DEFAULT_ACCURACY) -> mpmath.mpc:
    """``sum e * log S_r(s - k) + log(sign)`` with ``log(-1) = i pi``.

    The result is only meaningful modulo ``2 pi i``.
    """
    with mp.workdps(acc.digits + 10):
        s = mpmath.mpc(s)
        total = mpmath.mpc(0, mpmath.pi) if F.sign < 0 else mpmath.mpc(0)
        for r, k, e in F.factors():
            total += e * continued_log_sine(r, s - k, acc)
        return +total
