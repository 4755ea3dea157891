"""Numeric and exact identity sweeps behind ``verify``.

Every suite returns a :class:`SuiteReport` whose cases are sorted by key,
so reports built from the same seed are identical.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import comb
from typing import Callable, Optional

import mpmath
from mpmath import mp

from .barnes import DEFAULT_ACCURACY, AccuracyRequest, multiple_sine
from .spaces import Family, check_gamma_relation, exponent_parity, make_space, sine_exponents
from .zeta_engine import plancherel_surface_check

__all__ = ["CaseResult", "SuiteReport", "SUITES", "run_suite", "DEFAULT_TOLERANCES"]

DEFAULT_TOLERANCES = {
    "ladder": 1e-8,
    "s1": 1e-10,
    "reflection": 1e-8,
    "gamma-relation": 1e-8,
    "plancherel": 1e-8,
    "parity": 0.5,  # exact checks report 0 (ok) or 1 (violated)
}


@dataclass(frozen=True)
class CaseResult:
    key: str
    residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.residual <= self.tolerance

    def to_json(self) -> dict:
        return {"case": self.key, "residual": self.residual, "tolerance": self.tolerance, "pass": self.passed}


@dataclass
class SuiteReport:
    suite: str
    cases: list[CaseResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cases)

    @property
    def max_residual(self) -> float:
        return max((c.residual for c in self.cases), default=0.0)

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "max_residual": self.max_residual,
            "cases": [c.to_json() for c in self.cases],
        }

    def to_text(self) -> str:
        lines = [f"suite {self.suite}: {'PASS' if self.passed else 'FAIL'} (max residual {self.max_residual:.3e})"]
        width = max((len(c.key) for c in self.cases), default=4)
        for c in self.cases:
            lines.append(f"  {c.key:<{width}}  {c.residual:.3e}  <= {c.tolerance:.1e}  {'ok' if c.passed else 'FAIL'}")
        return "\n".join(lines)


def _rel(a, b) -> float:
    return float(abs(a - b) / abs(b))


def _point(rng: random.Random, lo: float, hi: float, im: float) -> complex:
    return complex(rng.uniform(lo, hi), rng.uniform(-im, im))


def ladder_suite(tol, acc, seed=0, rmax=6, points=20) -> SuiteReport:
    """``S_r(w) / S_r(w+1)`` against ``S_{r-1}(w)`` for ``0 < Re(w) < r-1``."""
    rng = random.Random(seed)
    report = SuiteReport("ladder")
    for r in range(2, rmax + 1):
        for i in range(points):
            w = _point(rng, 0.02, r - 1 - 0.02, 1.0)
            with mp.workdps(acc.digits + 5):
                lhs = multiple_sine(r, w, acc).value / multiple_sine(r, w + 1, acc).value
                rhs = multiple_sine(r - 1, w, acc).value
                report.cases.append(CaseResult(f"r={r}/{i:02d}", _rel(lhs, rhs), tol))
    return report


def s1_suite(tol, acc, seed=0, points=50) -> SuiteReport:
    """Barnes-pipeline ``S_1(w)`` against ``2 sin(pi w)``."""
    rng = random.Random(seed)
    report = SuiteReport("s1")
    for i in range(points):
        w = _point(rng, 0.01, 0.99, 2.0)
        with mp.workdps(acc.digits + 5):
            got = multiple_sine(1, w, acc).value
            want = 2 * mpmath.sin(mpmath.pi * mpmath.mpc(w))
            report.cases.append(CaseResult(f"{i:02d}", _rel(got, want), tol))
    return report


def reflection_suite(tol, acc, seed=0, points=10) -> SuiteReport:
    """``S_r(w) S_r(r - w) = 1`` for even ``r``."""
    rng = random.Random(seed)
    report = SuiteReport("reflection")
    for r in (2, 4, 6, 8):
        for i in range(points):
            w = _point(rng, 0.02, r - 0.02, 1.0)
            with mp.workdps(acc.digits + 5):
                prod = multiple_sine(r, w, acc).value * multiple_sine(r, r - w, acc).value
                report.cases.append(CaseResult(f"r={r}/{i:02d}", float(abs(prod - 1)), tol))
    return report


def gamma_relation_suite(tol, acc, seed=0, points=5, n_max=3, vols=(1,)) -> SuiteReport:
    """``S_M(s) = Gamma_M(s) / Gamma_M(2 rho - s)`` across the catalog."""
    rng = random.Random(seed)
    report = SuiteReport("gamma-relation")
    spaces = []
    for fam in (Family.SO_1_2n, Family.SU_1_n, Family.Sp_1_n):
        for n in range(1, n_max + 1):
            for vol in vols:
                spaces.append(make_space(fam, n, vol))
    for vol in vols:
        spaces.append(make_space(Family.F4, None, vol))
    for space in spaces:
        for i in range(points):
            s = _point(rng, 0.05, space.rho2 - 0.05, 0.5)
            key = f"{space.label}/vol={space.vol}/{i}"
            report.cases.append(CaseResult(key, check_gamma_relation(space, s, acc), tol))
    return report


def plancherel_suite(tol, acc, seed=0, genera=(2, 3, 4), points=(0.6, 0.75, 0.9)) -> SuiteReport:
    report = SuiteReport("plancherel")
    for g in genera:
        for s in points:
            report.cases.append(CaseResult(f"g={g}/s={s}", plancherel_surface_check(g, s, acc), tol))
    return report


def parity_suite(tol, acc, seed=0, n_max=8) -> SuiteReport:
    """Exact table checks: symmetry, Sp integrality, even total exponent."""
    report = SuiteReport("parity")
    spaces = [make_space(fam, n, 1) for fam in (Family.SO_1_2n, Family.SU_1_n, Family.Sp_1_n) for n in range(1, n_max + 1)]
    spaces.append(make_space(Family.F4, None, 1))
    for space in spaces:
        table = sine_exponents(space)
        bad = 0.0
        if not table.is_symmetric():
            bad = 1.0
        if exponent_parity(space) != "even":
            bad = 1.0
        if space.family is Family.Sp_1_n:
            n = space.n
            if any(comb(2 * n, k) * comb(2 * n, k + 1) % (2 * n) for k in range(2 * n)):
                bad = 1.0
        report.cases.append(CaseResult(f"{space.label}", bad, tol))
    return report


SUITES: dict[str, Callable[..., SuiteReport]] = {
    "ladder": ladder_suite,
    "s1": s1_suite,
    "reflection": reflection_suite,
    "gamma-relation": gamma_relation_suite,
    "plancherel": plancherel_suite,
    "parity": parity_suite,
}


def run_suite(
    name: str,
    tol: Optional[float] = None,
    acc: AccuracyRequest = DEFAULT_ACCURACY,
    seed: int = 0,
    **options,
) -> SuiteReport:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    tol = DEFAULT_TOLERANCES[name] if tol is None else tol
    report = SUITES[name](tol, acc, seed=seed, **options)
    report.cases.sort(key=lambda c: c.key)
    return report
