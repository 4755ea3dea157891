"""Gamma factors of compact rank-1 locally symmetric spaces.

Each even-dimensional family carries an exponent table ``e_0..e_K`` and
an overall exponent; its gamma factor is::

    S_M(s) = (prod_k S_r(s + k) ** e_k) ** outer

at sine level ``r = dim(M)``.  The reflection centre ``2 rho_M`` is not
tabulated anywhere here: it is forced by matching ``S_r(w) = Gamma_r(r-w)
/ Gamma_r(w)`` against ``S_M(s) = Gamma_M(s) / Gamma_M(2 rho_M - s)``,
which gives ``2 rho_M = r - K``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import comb
from typing import Optional

import mpmath
from mpmath import mp

from .barnes import DEFAULT_ACCURACY, AccuracyRequest, log_multiple_gamma, log_multiple_sine
from .laurent import TateMotive
from .sine_calculus import FormalSineProduct

__all__ = [
    "Family",
    "Space",
    "ExponentTable",
    "GammaProduct",
    "make_space",
    "sine_exponents",
    "gamma_factor",
    "gamma_function_product",
    "rho_sum",
    "check_gamma_relation",
    "exponent_parity",
    "catalog",
]


class Family(str, enum.Enum):
    SO_1_2n = "SO_1_2n"
    SU_1_n = "SU_1_n"
    Sp_1_n = "Sp_1_n"
    F4 = "F4"

    @classmethod
    def parse(cls, name: str) -> "Family":
        key = name.strip().lower().replace("(", "_").replace(")", "").replace(",", "_")
        aliases = {
            "so": cls.SO_1_2n,
            "so_1_2n": cls.SO_1_2n,
            "su": cls.SU_1_n,
            "su_1_n": cls.SU_1_n,
            "sp": cls.Sp_1_n,
            "sp_1_n": cls.Sp_1_n,
            "f4": cls.F4,
            "f_4": cls.F4,
        }
        try:
            return aliases[key]
        except KeyError:
            raise ValueError(f"unknown family {name!r}; expected one of so, su, sp, f4") from None


@dataclass(frozen=True)
class ExponentTable:
    """``exponents[k]`` is the power of ``S_r(s + k)``; ``outer`` multiplies all."""

    exponents: tuple[int, ...]
    outer: int

    @property
    def top_shift(self) -> int:
        return len(self.exponents) - 1

    def is_symmetric(self) -> bool:
        return self.exponents == self.exponents[::-1]


@dataclass(frozen=True)
class Space:
    family: Family
    n: Optional[int]
    vol: int
    dim: int
    level: int
    rho2: int

    @property
    def label(self) -> str:
        if self.family is Family.SO_1_2n:
            return f"SO(1,{2 * self.n})"
        if self.family is Family.SU_1_n:
            return f"SU(1,{self.n})"
        if self.family is Family.Sp_1_n:
            return f"Sp(1,{self.n})"
        return "F4"

    def to_json(self) -> dict:
        return {
            "family": self.family.value,
            "n": self.n,
            "vol": self.vol,
            "dim": self.dim,
            "level": self.level,
            "rho2": self.rho2,
        }


def _dimension(family: Family, n: Optional[int]) -> int:
    if family is Family.F4:
        return 16
    if family is Family.Sp_1_n:
        return 4 * n
    return 2 * n


def _table(family: Family, n: Optional[int], vol: int, dim: int) -> ExponentTable:
    sign = -1 if (dim // 2) % 2 else 1
    if family is Family.SO_1_2n:
        return ExponentTable((1, 1), vol * sign)
    if family is Family.SU_1_n:
        return ExponentTable(tuple(comb(n, k) ** 2 for k in range(n + 1)), vol * sign)
    if family is Family.Sp_1_n:
        exps = []
        for k in range(2 * n):
            num = comb(2 * n, k) * comb(2 * n, k + 1)
            q, rem = divmod(num, 2 * n)
            assert rem == 0, f"Sp(1,{n}) exponent at k={k} is not an integer"
            exps.append(q)
        return ExponentTable(tuple(exps), vol)
    return ExponentTable((1, 10, 28, 28, 10, 1), vol)


def make_space(family, n: Optional[int] = None, vol: int = 1) -> Space:
    family = Family.parse(family) if isinstance(family, str) and not isinstance(family, Family) else Family(family)
    if family is Family.F4:
        if n not in (None, 1):
            raise ValueError("F4 takes no parameter n")
        n = None
    elif n is None or not isinstance(n, int) or n < 1:
        raise ValueError(f"{family.value} needs an integer n >= 1, got {n!r}")
    if not isinstance(vol, int) or vol < 1:
        raise ValueError(f"vol must be a positive integer, got {vol!r}")
    dim = _dimension(family, n)
    table = _table(family, n, vol, dim)
    return Space(family, n, vol, dim, dim, _rho_from_table(dim, table))


def sine_exponents(space: Space) -> ExponentTable:
    return _table(space.family, space.n, space.vol, space.dim)


def gamma_factor(space: Space) -> FormalSineProduct:
    """``S_M`` as a level-``dim`` product; shift ``s + k`` is ``x^-k``."""
    table = sine_exponents(space)
    P = TateMotive({-k: table.outer * e for k, e in enumerate(table.exponents)})
    return FormalSineProduct(((space.level, P),))


@dataclass(frozen=True)
class GammaProduct:
    """``Gamma_M(s) = prod_k Gamma_r(s - k) ** [x^k] poly``."""

    level: int
    poly: TateMotive

    def eval_log(self, s, acc: AccuracyRequest = DEFAULT_ACCURACY) -> mpmath.mpc:
        with mp.workdps(acc.digits + 10):
            s = mpmath.mpc(s)
            total = mpmath.mpc(0)
            for k, e in self.poly.terms():
                total += e * log_multiple_gamma(self.level, s - k, acc).value
            return +total


def gamma_function_product(space: Space) -> GammaProduct:
    """``Gamma_M`` with ``S_M(s) = Gamma_M(s) / Gamma_M(2 rho_M - s)``.

    The outer exponent is ``(-1)^(dim/2 - 1) vol`` for SO and SU and
    ``-vol`` for Sp and F4, i.e. always minus the sine outer exponent.
    """
    table = sine_exponents(space)
    if space.family in (Family.SO_1_2n, Family.SU_1_n):
        outer = space.vol * (-1 if (space.dim // 2 - 1) % 2 else 1)
    else:
        outer = -space.vol
    P = TateMotive({-k: outer * e for k, e in enumerate(table.exponents)})
    return GammaProduct(space.level, P)


def _rho_from_table(level: int, table: ExponentTable) -> int:
    if not table.is_symmetric():
        raise ArithmeticError(f"exponent table {table.exponents} is not symmetric")
    rho2 = level - table.top_shift
    assert rho2 > 0
    return rho2


def rho_sum(space: Space) -> int:
    """``2 rho_M = level - K`` from reflection matching."""
    return _rho_from_table(space.level, sine_exponents(space))


def check_gamma_relation(space: Space, s, acc: AccuracyRequest = DEFAULT_ACCURACY) -> float:
    """Relative gap between ``S_M(s)`` and ``Gamma_M(s) / Gamma_M(2 rho - s)``.

    ``S_M`` is evaluated factor by factor through :func:`log_multiple_sine`,
    so every ``s + k`` must lie in the strip ``(0, dim)``.
    """
    table = sine_exponents(space)
    with mp.workdps(acc.digits + 10):
        s = mpmath.mpc(s)
        log_s = mpmath.mpc(0)
        for k, e in enumerate(table.exponents):
            log_s += table.outer * e * log_multiple_sine(space.level, s + k, acc).value
        gamma = gamma_function_product(space)
        log_g = gamma.eval_log(s, acc) - gamma.eval_log(rho_sum(space) - s, acc)
        lhs = mpmath.exp(log_s)
        rhs = mpmath.exp(log_g)
        return float(abs(lhs - rhs) / abs(lhs))


def exponent_parity(space: Space) -> str:
    table = sine_exponents(space)
    total = table.outer * sum(table.exponents)
    return "even" if total % 2 == 0 else "odd"


def catalog(n_max: int = 4, sp_max: int = 2, vols=(1, 2, 3)) -> list[Space]:
    spaces = []
    for vol in vols:
        for n in range(1, n_max + 1):
            spaces.append(make_space(Family.SO_1_2n, n, vol))
        for n in range(1, n_max + 1):
            spaces.append(make_space(Family.SU_1_n, n, vol))
        for n in range(1, sp_max + 1):
            spaces.append(make_space(Family.Sp_1_n, n, vol))
        spaces.append(make_space(Family.F4, None, vol))
    return spaces
