"""Exact arithmetic: continued fractions, 2x2 continuant matrices and quadratic surds.

Rationals are plain :class:`fractions.Fraction` values (always reduced, positive
denominator). Quadratic surds ``(p + q*sqrt(D)) / r`` are compared exactly with
integer-only sign analysis; nothing here touches binary floating point.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, isqrt
from typing import Sequence, Union

__all__ = [
    "Chain",
    "Mat2",
    "QuadraticSurd",
    "rat_from_cf",
    "cf_from_rat",
    "matrix_of_chain",
    "mobius_apply",
    "fixed_point",
    "surd_cmp",
    "periodic_cf_value",
    "to_decimal",
]

Number = Union[int, Fraction, "QuadraticSurd"]

# square divisors k*k with k <= this bound are stripped from D
_SQUARE_TRIAL_LIMIT = 1000

_CHAIN_RE = re.compile(r"^\s*\[\s*(?:(-?\d+)\s*;)?\s*(\d+(?:\s*,\s*\d+)*)?\s*\]\s*$")


@dataclass(frozen=True)
class Chain:
    """Partial quotients ``[integer_part; terms...]`` of a continued fraction."""

    terms: tuple[int, ...]
    integer_part: int = 0

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(int(t) for t in self.terms))
        if any(t < 1 for t in self.terms):
            raise ValueError(f"chain terms must be positive integers: {self.terms}")

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __str__(self) -> str:
        return f"[{self.integer_part};{','.join(map(str, self.terms))}]"

    @classmethod
    def parse(cls, text: str) -> "Chain":
        """Parse ``[0;1,1,2,2]``, ``[1,1,2,2]`` or a bare ``1,1,2,2``."""
        s = text.strip()
        if not s.startswith("["):
            s = f"[{s}]"
        m = _CHAIN_RE.match(s)
        if m is None or m.group(2) is None:
            raise ValueError(f"cannot parse chain literal {text!r}")
        a0 = int(m.group(1)) if m.group(1) is not None else 0
        return cls(tuple(int(t) for t in m.group(2).split(",")), a0)

    def reversed(self) -> "Chain":
        return Chain(self.terms[::-1], self.integer_part)


def _as_terms(chain: Chain | Sequence[int]) -> tuple[int, ...]:
    return chain.terms if isinstance(chain, Chain) else tuple(chain)


def rat_from_cf(chain: Chain | Sequence[int]) -> Fraction:
    """Value of ``[a0; a1, ..., an]`` via the continuant recurrence."""
    a0 = chain.integer_part if isinstance(chain, Chain) else 0
    p_prev, p = 1, a0
    q_prev, q = 0, 1
    for a in _as_terms(chain):
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
    return Fraction(p, q)


def cf_from_rat(value: Fraction, parity_preference: str = "canonical") -> Chain:
    """Expand ``value`` in (0, 1) as ``[0; a1, ..., an]``.

    ``canonical`` gives the short form (last term >= 2); ``even``/``odd`` apply
    the rewrite ``[..., x] -> [..., x-1, 1]`` when needed to hit that length parity.
    """
    value = Fraction(value)
    if not 0 < value < 1:
        raise ValueError(f"continued fraction expansion requires 0 < value < 1, got {value}")
    if parity_preference not in ("canonical", "even", "odd"):
        raise ValueError(f"unknown parity preference {parity_preference!r}")
    terms = []
    num, den = value.denominator, value.numerator
    while den:
        a, rem = divmod(num, den)
        terms.append(a)
        num, den = den, rem
    want = {"even": 0, "odd": 1}.get(parity_preference)
    if want is not None and len(terms) % 2 != want:
        terms[-1] -= 1
        terms.append(1)
    return Chain(tuple(terms))


@dataclass(frozen=True)
class Mat2:
    """Integer matrix ``[[a, b], [c, d]]``."""

    a: int
    b: int
    c: int
    d: int

    def __matmul__(self, o: "Mat2") -> "Mat2":
        return Mat2(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    @property
    def trace(self) -> int:
        return self.a + self.d

    def rows(self) -> list[list[int]]:
        return [[self.a, self.b], [self.c, self.d]]

    @classmethod
    def identity(cls) -> "Mat2":
        return cls(1, 0, 0, 1)


def matrix_of_chain(chain: Chain | Sequence[int]) -> Mat2:
    """Product of ``[[a_i, 1], [1, 0]]`` over the terms (integer part ignored)."""
    return reduce(lambda m, t: m @ Mat2(t, 1, 1, 0), _as_terms(chain), Mat2.identity())


def _sign_surd(p: int, q: int, d: int) -> int:
    """Sign of ``p + q*sqrt(d)`` for d >= 0."""
    sp = (p > 0) - (p < 0)
    sq = (q > 0) - (q < 0)
    if sq == 0 or d == 0:
        return sp
    if sp == 0 or sp == sq:
        return sq
    diff = p * p - q * q * d
    return sp * ((diff > 0) - (diff < 0))


def _sign_two_surds(a: int, b: int, m: int, c: int, n: int) -> int:
    """Sign of ``a + b*sqrt(m) + c*sqrt(n)``."""
    su = _sign_surd(a, b, m)
    sv = (c > 0) - (c < 0) if n else 0
    if su == 0 or sv == 0 or su == sv:
        return su or sv
    # opposite signs: compare u^2 = a^2 + b^2 m + 2ab sqrt(m) against v^2 = c^2 n
    s = _sign_surd(a * a + b * b * m - c * c * n, 2 * a * b, m)
    return su if s > 0 else (sv if s < 0 else 0)


def _strip_squares(q: int, d: int) -> tuple[int, int]:
    k = 2
    while k <= _SQUARE_TRIAL_LIMIT and k * k <= d:
        kk = k * k
        while d % kk == 0:
            d //= kk
            q *= k
        k += 1
    return q, d


class QuadraticSurd:
    """Exact real number ``(p + q*sqrt(D)) / r`` with D a positive non-square.

    Stored canonically: ``r > 0``, ``gcd(p, q, r) == 1``, and small square
    factors pulled out of D. Equality and ordering are decided by sign analysis
    and do not rely on D being square-free.
    """

    __slots__ = ("p", "q", "D", "r")

    def __init__(self, p: int, q: int, D: int, r: int = 1):
        if r == 0:
            raise ZeroDivisionError("surd denominator is zero")
        if D <= 0 or isqrt(D) ** 2 == D:
            raise ValueError(f"D must be a positive non-square integer, got {D}")
        q, D = _strip_squares(q, D)
        if r < 0:
            p, q, r = -p, -q, -r
        g = gcd(gcd(p, q), r)
        self.p, self.q, self.D, self.r = p // g, q // g, D, r // g

    @classmethod
    def make(cls, p: int, q: int, D: int, r: int = 1) -> Union["QuadraticSurd", Fraction]:
        """Like the constructor but collapses to a Fraction when the radical vanishes."""
        if q == 0:
            return Fraction(p, r)
        s = isqrt(D)
        if s * s == D:
            return Fraction(p + q * s, r)
        return cls(p, q, D, r)

    def __repr__(self) -> str:
        return f"QuadraticSurd(p={self.p}, q={self.q}, D={self.D}, r={self.r})"

    def __str__(self) -> str:
        sign = "-" if self.q < 0 else "+"
        qa = abs(self.q)
        rad = f"√{self.D}" if qa == 1 else f"{qa}√{self.D}"
        body = f"{self.p}{sign}{rad}" if self.p else f"{'-' if self.q < 0 else ''}{rad}"
        if self.r == 1:
            return body
        return f"({body})/{self.r}"

    def key(self) -> tuple[int, int, int, int]:
        return (self.p, self.q, self.D, self.r)

    def conjugate(self) -> "QuadraticSurd":
        return QuadraticSurd(self.p, -self.q, self.D, self.r)

    def __float__(self) -> float:
        # exact floor at growing binary scales; naive evaluation cancels badly
        # when p and q*sqrt(D) are huge and nearly opposite
        shift = 64
        while True:
            n = _floor_surd(self.p << shift, self.q << shift, self.D, self.r)
            if abs(n) >= 1 << 60:
                return float(Fraction(n, 1 << shift))
            shift *= 2

    def to_dict(self, digits: int = 12) -> dict:
        return {"p": self.p, "q": self.q, "D": self.D, "r": self.r, "decimal": to_decimal(self, digits)}

    # arithmetic -----------------------------------------------------------

    def _coerce(self, other) -> tuple[int, int, int] | None:
        """Return other as (p, q, r) over the same D, or None if unsupported."""
        if isinstance(other, QuadraticSurd):
            if other.D != self.D:
                raise ValueError(f"mixed radicals √{self.D} and √{other.D} in arithmetic")
            return other.p, other.q, other.r
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return f.numerator, 0, f.denominator
        return None

    def __neg__(self):
        return QuadraticSurd(-self.p, -self.q, self.D, self.r)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p2, q2, r2 = o
        return QuadraticSurd.make(self.p * r2 + p2 * self.r, self.q * r2 + q2 * self.r, self.D, self.r * r2)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + QuadraticSurd.make(-o[0], -o[1], self.D, o[2])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p2, q2, r2 = o
        return QuadraticSurd.make(
            self.p * p2 + self.q * q2 * self.D, self.p * q2 + self.q * p2, self.D, self.r * r2
        )

    __rmul__ = __mul__

    def reciprocal(self):
        # r / (p + q√D) = r (p - q√D) / (p² - q² D)
        n = self.p * self.p - self.q * self.q * self.D
        return QuadraticSurd(self.r * self.p, -self.r * self.q, self.D, n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p2, q2, r2 = o
        if q2 == 0:
            if p2 == 0:
                raise ZeroDivisionError("division of surd by zero")
            return QuadraticSurd(self.p * r2, self.q * r2, self.D, self.r * p2)
        return self * QuadraticSurd(p2, q2, self.D, r2).reciprocal()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.reciprocal() * Fraction(o[0], o[2])

    # comparison -----------------------------------------------------------

    def _cmp(self, other) -> int:
        if isinstance(other, (int, Fraction, QuadraticSurd)):
            return surd_cmp(self, other)
        return NotImplemented  # type: ignore[return-value]

    def __eq__(self, other):
        if not isinstance(other, (int, Fraction, QuadraticSurd)):
            return NotImplemented
        return surd_cmp(self, other) == 0

    def __hash__(self):
        return hash(self.key())

    def __lt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c >= 0

    def __abs__(self):
        return -self if self < 0 else self


def _parts(x: Number) -> tuple[int, int, int, int]:
    if isinstance(x, QuadraticSurd):
        return x.p, x.q, x.D, x.r
    f = Fraction(x)
    return f.numerator, 0, 0, f.denominator


def surd_cmp(s1: Number, s2: Number) -> int:
    """Exact three-way comparison (-1, 0, 1) of rationals and quadratic surds."""
    p1, q1, d1, r1 = _parts(s1)
    p2, q2, d2, r2 = _parts(s2)
    # r1*r2*(s1 - s2) = (p1 r2 - p2 r1) + q1 r2 sqrt(d1) - q2 r1 sqrt(d2)
    a = p1 * r2 - p2 * r1
    if d1 == d2 or d2 == 0 or d1 == 0:
        # a rational operand has q == 0, so one radical remains
        return _sign_surd(a, q1 * r2 - q2 * r1, d1 or d2)
    return _sign_two_surds(a, q1 * r2, d1, -q2 * r1, d2)


def mobius_apply(m: Mat2, x: Number):
    """``(a x + b) / (c x + d)`` computed exactly."""
    den = m.c * x + m.d
    if den == 0:
        raise ZeroDivisionError(f"Möbius image undefined: c*x + d = 0 for {m} at {x}")
    num = m.a * x + m.b
    if isinstance(num, QuadraticSurd) or isinstance(den, QuadraticSurd):
        return num / den
    return Fraction(num) / Fraction(den)


def fixed_point(m: Mat2) -> QuadraticSurd:
    """Attracting fixed point x > 1 of a chain matrix: the purely periodic CF value."""
    if m.c <= 0:
        raise ValueError(f"fixed_point expects a chain matrix with positive bottom-left entry: {m}")
    disc = (m.a - m.d) ** 2 + 4 * m.b * m.c
    s = isqrt(disc)
    if s * s == disc:
        raise ArithmeticError(f"degenerate matrix {m}: rational fixed point")
    x = QuadraticSurd(m.a - m.d, 1, disc, 2 * m.c)
    assert x > 1
    return x


def periodic_cf_value(preperiod: Chain | Sequence[int], period: Chain | Sequence[int]) -> QuadraticSurd:
    """Value of ``[0; preperiod, period, period, ...]``."""
    period = _as_terms(period)
    if not period:
        raise ValueError("period must be nonempty")
    tail = fixed_point(matrix_of_chain(period))
    return 1 / mobius_apply(matrix_of_chain(preperiod), tail)


def _floor_surd(p: int, q: int, d: int, r: int) -> int:
    """floor((p + q*sqrt(d)) / r) for r > 0 and d not a perfect square (or q == 0)."""
    if q == 0 or d == 0:
        return p // r
    s = isqrt(q * q * d)
    fl = s if q > 0 else -s - 1
    return (p + fl) // r


def to_decimal(x: Number, digits: int = 12) -> str:
    """Correctly rounded decimal rendering (round half up) using integers only."""
    if digits < 1:
        raise ValueError("digits must be >= 1")
    p, q, d, r = _parts(x)
    scale = 10**digits
    # floor(x * 10^digits + 1/2)
    n = _floor_surd(2 * p * scale + r, 2 * q * scale, d, 2 * r)
    sign = "-" if n < 0 else ""
    whole, frac = divmod(abs(n), scale)
    return f"{sign}{whole}.{frac:0{digits}d}"


def exact_string(x: Number) -> str:
    """Exact textual form: ``p/q`` for rationals, ``(p+q√D)/r`` for surds."""
    if isinstance(x, QuadraticSurd):
        return str(x)
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}"
