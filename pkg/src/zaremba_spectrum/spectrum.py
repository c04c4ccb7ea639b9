"""The Zaremba spectrum above 1/3: classified families, brute-force sweep and their comparison.

Also builds the chains ``R(n1, ..., nk)`` whose values sit just below 1/3.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence, Union

from .chains import THIRD, leading_value, perron_value, rho
from .markoff import LimitPoint, limit_point, markoff_numbers
from .nielsen import enumerate_admissible
from .rational_core import Chain, to_decimal
from .zaremba import bruteforce_row


@dataclass(frozen=True)
class Provenance:
    family: str  # Fibonacci | AllTwos | NielsenFamily
    n: Optional[int] = None
    psi: Optional[str] = None
    k: Optional[int] = None

    def __str__(self) -> str:
        if self.family == "NielsenFamily":
            return f"NielsenFamily(psi={self.psi!r}, k={self.k})"
        return f"{self.family}(n={self.n})"

    def to_dict(self) -> dict:
        d = {"family": self.family}
        if self.family == "NielsenFamily":
            d.update(psi=self.psi, k=self.k)
        else:
            d["n"] = self.n
        return d


@dataclass
class SpectrumPoint:
    value: Fraction
    provenance: list[Provenance]
    witness: Fraction

    @property
    def denominator(self) -> int:
        return self.witness.denominator


@dataclass(frozen=True)
class BelowThreshold:
    """A family member whose value is not strictly above 1/3."""

    value: Fraction
    witness: Fraction
    provenance: Provenance


def fibonacci(n: int) -> int:
    """F_n with F_1 = F_2 = 1."""
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def fibonacci_family(n: int) -> Union[SpectrumPoint, BelowThreshold]:
    """``F_{n-2}/F_n``, attained at ``F_{n-1}/F_n``."""
    if n < 3:
        raise ValueError("the Fibonacci family starts at n = 3")
    fn = fibonacci(n)
    value = Fraction(fibonacci(n - 2), fn)
    witness = Fraction(fibonacci(n - 1), fn)
    prov = Provenance("Fibonacci", n=n)
    if value > THIRD:
        return SpectrumPoint(value, [prov], witness)
    return BelowThreshold(value, witness, prov)


def all_twos_family(n: int) -> Union[SpectrumPoint, BelowThreshold]:
    """``(1/2 + [2; 2 x n])^-1``, attained at ``[0; 2 x (n + 2)]``.

    Every n >= 0 is accepted; only n = 1 lands on 1/3 itself.
    """
    if n < 0:
        raise ValueError("the all-twos family starts at n = 0")
    value = 1 / (Fraction(1, 2) + leading_value((2,) * (n + 1)))
    witness = rho((2,) * (n + 2))
    prov = Provenance("AllTwos", n=n)
    if value > THIRD:
        return SpectrumPoint(value, [prov], witness)
    return BelowThreshold(value, witness, prov)


def _merge(points: dict[Fraction, SpectrumPoint], p: SpectrumPoint) -> None:
    cur = points.get(p.value)
    if cur is None:
        points[p.value] = p
        return
    cur.provenance.extend(p.provenance)
    if p.witness.denominator < cur.witness.denominator:
        cur.witness = p.witness


def classified_spectrum(max_denominator: int) -> list[SpectrumPoint]:
    """Family values above 1/3 with a witness of denominator <= max_denominator, largest first."""
    points: dict[Fraction, SpectrumPoint] = {}
    n = 3
    while fibonacci(n) <= max_denominator:
        p = fibonacci_family(n)
        if isinstance(p, SpectrumPoint):
            _merge(points, p)
        n += 1
    n = 0
    while (p := all_twos_family(n)).witness.denominator <= max_denominator:
        if isinstance(p, SpectrumPoint):
            _merge(points, p)
        n += 1
    for rec in enumerate_admissible(max_denominator):
        if rec.z > THIRD:
            prov = Provenance("NielsenFamily", psi=rec.psi.letters, k=rec.k)
            _merge(points, SpectrumPoint(rec.z, [prov], rec.rho))
    return sorted(points.values(), key=lambda p: p.value, reverse=True)


def bruteforce_spectrum(
    max_denominator: int, threshold: Fraction = THIRD
) -> list[tuple[Fraction, list[Fraction]]]:
    """Every Z(a/b) > threshold over reduced a/b with b <= max_denominator, largest first."""
    if max_denominator < 2:
        raise ValueError("max_denominator must be >= 2")
    groups: dict[Fraction, list[Fraction]] = {}
    for b in range(2, max_denominator + 1):
        row = bruteforce_row(b)
        for a in range(1, b):
            if gcd(a, b) != 1:
                continue
            z = Fraction(int(row[a - 1]), b)
            if z > threshold:
                groups.setdefault(z, []).append(Fraction(a, b))
    return sorted(((v, sorted(ws)) for v, ws in groups.items()), key=lambda t: t[0], reverse=True)


@dataclass
class VerificationReport:
    bound: int
    brute_set: list[Fraction]
    classified_set: list[Fraction]
    missing_from_classified: list[Fraction] = field(default_factory=list)
    missing_from_brute: list[Fraction] = field(default_factory=list)

    @property
    def agree(self) -> bool:
        return not self.missing_from_classified and not self.missing_from_brute


def verify_classification(max_denominator: int) -> VerificationReport:
    brute = [v for v, _ in bruteforce_spectrum(max_denominator, THIRD)]
    classified = [p.value for p in classified_spectrum(max_denominator)]
    bs, cs = set(brute), set(classified)
    return VerificationReport(
        max_denominator,
        brute,
        classified,
        sorted(bs - cs, reverse=True),
        sorted(cs - bs, reverse=True),
    )


# just below 1/3 -----------------------------------------------------------------


def construct_R(ns: Sequence[int]) -> Chain:
    """``1 x n1, 2, 2, 1 x n2, 2, 2, ..., 2, 2, 1 x nk``."""
    if len(ns) < 2 or any(n < 1 for n in ns):
        raise ValueError(f"need at least two positive block lengths, got {list(ns)}")
    terms: list[int] = [1] * ns[0]
    for n in ns[1:]:
        terms += [2, 2] + [1] * n
    return Chain(tuple(terms))


@dataclass(frozen=True)
class BelowThirdValue:
    chain: Chain
    z: Fraction
    in_window: bool
    epsilon_bound: Fraction
    section_formula: Optional[Fraction] = None  # set when n2 is even and the strict maximum


def below_third_value(ns: Sequence[int]) -> BelowThirdValue:
    ns = list(ns)
    if len(ns) < 2:
        raise ValueError("need k >= 2 blocks")
    if any(n < 1 for n in ns):
        raise ValueError("block lengths must be positive")
    if ns[0] % 2 == 0:
        raise ValueError(f"n1 must be odd, got {ns[0]}")
    if any(n <= ns[0] for n in ns[1:]):
        raise ValueError(f"n1 = {ns[0]} must be smaller than every other block length")
    chain = construct_R(ns)
    z = 1 / perron_value(chain)[0]
    formula = None
    if ns[1] % 2 == 0 and all(n < ns[1] for i, n in enumerate(ns) if i != 1):
        right = chain.terms[ns[0] :]
        formula = 1 / (leading_value(right) + rho((1,) * ns[0]))
        if formula != z:
            raise ArithmeticError(f"maximal section for {ns} is not at the first 2-block")
    return BelowThirdValue(chain, z, z < THIRD, THIRD - z, formula)


def limit_points_above_third(max_m: int, decimal_digits: int = 12) -> list[tuple[LimitPoint, str]]:
    """Limit point for every Markoff number m <= max_m, with a correctly rounded decimal."""
    if max_m < 1:
        return []
    out = []
    for m in markoff_numbers(max_m):
        lp = limit_point(m)
        out.append((lp, to_decimal(lp.value, decimal_digits)))
    return out
