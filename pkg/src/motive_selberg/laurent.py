"""Integer Laurent polynomials acting as Tate motives.

A :class:`TateMotive` is an element of ``Z[x, x^-1]`` stored in sparse
canonical form (exponent -> nonzero coefficient).  Besides ring arithmetic
the module answers the structural questions the rest of the package needs:
is ``f`` automorphic (``f(1/x) = C x^-D f(x)``), and how often does
``(x - 1)`` divide it.
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

__all__ = [
    "TateMotive",
    "Automorphy",
    "Degenerate",
    "DEGENERATE",
    "MotiveParseError",
    "X",
    "ONE",
    "ZERO",
    "ONE_MINUS_XINV",
    "X_MINUS_ONE",
    "arith",
    "power",
    "reverse",
    "detect_automorphy",
    "vanishing_order_at_one",
    "divide_exact",
    "divmod_one_minus_xinv",
    "derivative_at_one",
    "symmetrize",
    "parse_motive",
]


class TateMotive:
    """Sparse integer Laurent polynomial ``sum a(k) x^k``.

    Instances are immutable and hashable.  Zero coefficients are never
    stored, so the zero polynomial has no terms.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, coeffs: Union[Mapping[int, int], Iterable[tuple[int, int]], None] = None):
        acc: dict[int, int] = {}
        if coeffs is not None:
            items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
            for k, a in items:
                if not isinstance(k, int) or isinstance(k, bool):
                    raise TypeError(f"exponent must be int, got {k!r}")
                if not isinstance(a, int) or isinstance(a, bool):
                    raise TypeError(f"coefficient must be int, got {a!r}")
                acc[k] = acc.get(k, 0) + a
        self._terms = tuple(sorted((k, a) for k, a in acc.items() if a != 0))
        self._hash = hash(self._terms)

    # -- construction helpers -------------------------------------------
    @classmethod
    def monomial(cls, k: int, a: int = 1) -> "TateMotive":
        return cls({k: a})

    @classmethod
    def constant(cls, a: int) -> "TateMotive":
        return cls({0: a})

    @classmethod
    def from_json(cls, data: Mapping[str, int]) -> "TateMotive":
        return cls({int(k): int(a) for k, a in data.items()})

    @classmethod
    def parse(cls, text: str) -> "TateMotive":
        return parse_motive(text)

    # -- accessors ---------------------------------------------------------
    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._terms)

    def terms(self) -> tuple[tuple[int, int], ...]:
        """(exponent, coefficient) pairs in increasing exponent order."""
        return self._terms

    def __getitem__(self, k: int) -> int:
        for e, a in self._terms:
            if e == k:
                return a
        return 0

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    @property
    def min_deg(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no support")
        return self._terms[0][0]

    @property
    def max_deg(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no support")
        return self._terms[-1][0]

    def max_abs_coeff(self) -> int:
        return max((abs(a) for _, a in self._terms), default=0)

    def __call__(self, x):
        """Evaluate at ``x``.  Integer ``x = 1`` stays exact."""
        if x == 1:
            return sum(a for _, a in self._terms)
        return sum(a * x**k for k, a in self._terms)

    # -- ring operations ---------------------------------------------------
    def _coerce(self, other) -> "TateMotive":
        if isinstance(other, TateMotive):
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return TateMotive.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return TateMotive(self._terms + other._terms)

    __radd__ = __add__

    def __neg__(self) -> "TateMotive":
        return TateMotive((k, -a) for k, a in self._terms)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc: dict[int, int] = {}
        for k, a in self._terms:
            for l, b in other._terms:
                acc[k + l] = acc.get(k + l, 0) + a * b
        return TateMotive(acc)

    __rmul__ = __mul__

    def __pow__(self, m: int) -> "TateMotive":
        if not isinstance(m, int) or m < 0:
            raise ValueError(f"exponent must be a nonnegative integer, got {m!r}")
        result, base = ONE, self
        while m:
            if m & 1:
                result = result * base
            base = base * base
            m >>= 1
        return result

    def shift(self, d: int) -> "TateMotive":
        """Multiply by ``x^d``."""
        return TateMotive((k + d, a) for k, a in self._terms)

    def reverse(self) -> "TateMotive":
        return TateMotive((-k, a) for k, a in self._terms)

    # -- dunder plumbing ---------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, int) and not isinstance(other, bool):
            other = TateMotive.constant(other)
        if not isinstance(other, TateMotive):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"TateMotive({str(self)!r})"

    def __str__(self) -> str:
        return format_motive(self)

    def to_json(self) -> dict[str, int]:
        return {str(k): a for k, a in self._terms}


ZERO = TateMotive()
ONE = TateMotive.constant(1)
X = TateMotive.monomial(1)
X_MINUS_ONE = TateMotive({1: 1, 0: -1})
ONE_MINUS_XINV = TateMotive({0: 1, -1: -1})


@dataclass(frozen=True)
class Automorphy:
    """Sign ``C`` and weight ``D`` with ``f(1/x) = C x^-D f(x)``."""

    C: int
    D: int

    def __post_init__(self):
        if self.C not in (1, -1):
            raise ValueError(f"C must be +1 or -1, got {self.C}")

    def to_json(self) -> dict[str, int]:
        return {"C": self.C, "D": self.D}


class Degenerate(enum.Enum):
    """Automorphy status of the zero polynomial (holds for every C, D)."""

    DEGENERATE = "degenerate"

    def __repr__(self) -> str:
        return "DEGENERATE"


DEGENERATE = Degenerate.DEGENERATE


def arith(f: TateMotive, g: TateMotive, op: str) -> TateMotive:
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise ValueError(f"unknown operation {op!r}")


def power(f: TateMotive, m: int) -> TateMotive:
    return f**m


def reverse(f: TateMotive) -> TateMotive:
    """Return ``f(1/x)``."""
    return f.reverse()


def detect_automorphy(f: TateMotive) -> Union[Automorphy, Degenerate, None]:
    """Find ``(C, D)`` with ``a(D - k) = C a(k)`` for all ``k``.

    ``D`` is forced to be ``min_deg + max_deg`` since the reflection has to
    map the support onto itself.  Returns ``None`` when no such pair exists
    and :data:`DEGENERATE` for the zero polynomial.
    """
    if f.is_zero():
        return DEGENERATE
    lo, hi = f.min_deg, f.max_deg
    a_lo, a_hi = f[lo], f[hi]
    if abs(a_lo) != abs(a_hi):
        return None
    C = 1 if a_hi == a_lo else -1
    D = lo + hi
    coeffs = f.coeffs
    for k, a in coeffs.items():
        if coeffs.get(D - k, 0) != C * a:
            return None
    return Automorphy(C, D)


def divide_exact(f: TateMotive, g: TateMotive) -> TateMotive | None:
    """Return ``q`` with ``f == g * q`` in ``Z[x, x^-1]``, or ``None``.

    Both operands are shifted to ordinary polynomials with nonzero constant
    term; monomials are units so only those parts need to divide.
    """
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if f.is_zero():
        return ZERO
    fshift, gshift = f.min_deg, g.min_deg
    num = [Fraction(f[fshift + i]) for i in range(f.max_deg - fshift + 1)]
    den = [g[gshift + i] for i in range(g.max_deg - gshift + 1)]
    dn = len(den) - 1
    if len(num) - 1 < dn:
        return None
    quot = [Fraction(0)] * (len(num) - dn)
    lead = den[-1]
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i] / lead
        quot[i - dn] = c
        if c:
            for j, d in enumerate(den):
                num[i - dn + j] -= c * d
    if any(num[:dn]):
        return None
    if any(c.denominator != 1 for c in quot):
        return None
    return TateMotive({i + fshift - gshift: int(c) for i, c in enumerate(quot)})


def divmod_one_minus_xinv(f: TateMotive) -> tuple[TateMotive, int]:
    """Split ``f = (1 - x^-1) q + c`` with the constant remainder ``c = f(1)``.

    Coefficients of ``(1 - x^-1) q`` at ``x^k`` are ``q_k - q_{k+1}``, so
    ``q_k`` is the tail sum of ``f - c`` from the top degree down.
    """
    c = f(1)
    if f.is_zero():
        return ZERO, 0
    rest = (f - c).coeffs
    if not rest:
        return ZERO, c
    lo, hi = min(rest), max(rest)
    q: dict[int, int] = {}
    running = 0
    for k in range(hi, lo, -1):
        running += rest.get(k, 0)
        q[k] = running
    assert running + rest.get(lo, 0) == 0
    return TateMotive(q), c


def vanishing_order_at_one(f: TateMotive) -> int | float:
    """Largest ``m`` with ``(x - 1)^m | f``; ``math.inf`` for zero."""
    if f.is_zero():
        return math.inf
    m = 0
    while f(1) == 0:
        f, c = divmod_one_minus_xinv(f)
        m += 1
    return m


def derivative_at_one(f: TateMotive, m: int) -> int:
    """Exact ``f^(m)(1) = sum a(k) k (k-1) ... (k-m+1)``."""
    if m < 0:
        raise ValueError("derivative order must be nonnegative")
    total = 0
    for k, a in f.terms():
        falling = 1
        for i in range(m):
            falling *= k - i
        total += a * falling
    return total


def symmetrize(h: TateMotive, r: int) -> TateMotive:
    """Build ``(x-1)^r h(x) + (-1)^r (1/x - 1)^r h(1/x)``.

    The result lies in ``(x-1)^r Z[x, x^-1]`` and, unless it vanishes, has
    automorphy ``((-1)^r, 0)``.
    """
    if r < 1:
        raise ValueError("r must be positive")
    u = X_MINUS_ONE**r * h
    sign = -1 if r % 2 else 1
    return u + sign * u.reverse()


# -- text form ---------------------------------------------------------------

class MotiveParseError(ValueError):
    """Raised for malformed polynomial text; ``column`` is 1-based."""

    def __init__(self, message: str, text: str, column: int):
        super().__init__(f"{message} at column {column}: {text!r}")
        self.text = text
        self.column = column


_TERM = re.compile(
    r"""
    (?P<coef>\d+)?\s*
    (?:(?P<star>\*)\s*)?
    (?P<x>x
        (?:\s*\^\s*(?P<exp>[+-]?\s*\d+|\(\s*[+-]?\s*\d+\s*\)))?
    )?
    """,
    re.VERBOSE,
)


def parse_motive(text: str) -> TateMotive:
    """Parse ``'1 - 3x^-1 + 3x^-2 - x^-3'`` style text.

    Grammar (whitespace-insensitive)::

        poly  := ['+'|'-'] term (('+'|'-') term)*
        term  := INT | INT ['*'] 'x' ['^' EXP] | 'x' ['^' EXP]
        EXP   := ['+'|'-'] INT | '(' ['+'|'-'] INT ')'
    """
    pos = 0
    n = len(text)
    acc: dict[int, int] = {}

    def skip_ws(p: int) -> int:
        while p < n and text[p].isspace():
            p += 1
        return p

    pos = skip_ws(pos)
    if pos == n:
        raise MotiveParseError("empty polynomial", text, pos + 1)
    first = True
    while True:
        pos = skip_ws(pos)
        sign = 1
        if pos < n and text[pos] in "+-":
            sign = -1 if text[pos] == "-" else 1
            pos = skip_ws(pos + 1)
        elif not first:
            raise MotiveParseError("expected '+' or '-'", text, pos + 1)
        if pos == n:
            raise MotiveParseError("expected a term", text, pos + 1)
        m = _TERM.match(text, pos)
        if m is None or m.end() == pos or (m.group("coef") is None and m.group("x") is None):
            raise MotiveParseError("expected a term", text, pos + 1)
        if m.group("star") and not m.group("x"):
            raise MotiveParseError("expected 'x' after '*'", text, m.end() + 1)
        coef = int(m.group("coef")) if m.group("coef") is not None else 1
        if m.group("x") is None:
            k = 0
        elif m.group("exp") is None:
            k = 1
        else:
            k = int(re.sub(r"[\s()]", "", m.group("exp")))
        acc[k] = acc.get(k, 0) + sign * coef
        pos = skip_ws(m.end())
        first = False
        if pos == n:
            break
        if text[pos] not in "+-":
            raise MotiveParseError(f"unexpected character {text[pos]!r}", text, pos + 1)
    return TateMotive(acc)


def format_motive(f: TateMotive) -> str:
    """Render with descending exponents, e.g. ``1 - 3x^-1 + 3x^-2 - x^-3``."""
    if f.is_zero():
        return "0"
    parts = []
    for i, (k, a) in enumerate(reversed(f.terms())):
        mag = abs(a)
        if k == 0:
            body = str(mag)
        else:
            var = "x" if k == 1 else f"x^{k}"
            body = var if mag == 1 else f"{mag}{var}"
        if i == 0:
            parts.append(("-" if a < 0 else "") + body)
        else:
            parts.append(("- " if a < 0 else "+ ") + body)
    return " ".join(parts)
