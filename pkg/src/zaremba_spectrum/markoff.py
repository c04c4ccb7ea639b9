"""Markoff triples, trace matrices of Nielsen images and the limit points above 1/3."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .chains import chain_from_word, leading_value
from .nielsen import ClassificationError, NielsenWord, apply_nielsen, symmetric_section
from .rational_core import QuadraticSurd, matrix_of_chain, periodic_cf_value


@dataclass(frozen=True)
class MarkoffTriple:
    x: int
    y: int
    z: int

    def satisfies_equation(self) -> bool:
        return self.x**2 + self.y**2 + self.z**2 == 3 * self.x * self.y * self.z

    def pairwise_coprime(self) -> bool:
        return gcd(self.x, self.y) == gcd(self.y, self.z) == gcd(self.x, self.z) == 1

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.x, self.y, self.z)


def markoff_tree(max_value: int) -> list[MarkoffTriple]:
    """Sorted triples ``x <= y <= z <= max_value`` reachable from (1, 1, 1) by Vieta moves."""
    if max_value < 1:
        return []
    seen = {(1, 1, 1)}
    stack = [(1, 1, 1)]
    while stack:
        t = stack.pop()
        for i in range(3):
            u = list(t)
            others = t[:i] + t[i + 1 :]
            u[i] = 3 * others[0] * others[1] - t[i]
            nxt = tuple(sorted(u))
            if 0 < nxt[0] and nxt[2] <= max_value and nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return [MarkoffTriple(*t) for t in sorted(seen, key=lambda t: (t[2], t[1], t[0]))]


def markoff_numbers(max_value: int) -> list[int]:
    return sorted({c for t in markoff_tree(max_value) for c in t.as_tuple()})


def _trace_third(word) -> int:
    tr = matrix_of_chain(chain_from_word(word)).trace
    if tr % 3:
        raise ClassificationError(f"trace {tr} of M({word}) is not divisible by 3")
    return tr // 3


def trace_triple(psi: NielsenWord | str) -> MarkoffTriple:
    """``(Tr M_Psi(a), Tr M_Psi(b), Tr M_Psi(ab)) / 3``."""
    return MarkoffTriple(
        _trace_third(apply_nielsen(psi, "a")),
        _trace_third(apply_nielsen(psi, "b")),
        _trace_third(apply_nielsen(psi, "ab")),
    )


def z_prime(t: MarkoffTriple) -> int:
    """The residue ``0 < z' < z`` with ``x + y z' = 0 (mod z)``."""
    if t.z < 2:
        raise ValueError("z' needs z >= 2")
    assert gcd(t.y, t.z) == 1, t
    return -t.x * pow(t.y, -1, t.z) % t.z


def matrix_form_check(psi: NielsenWord | str) -> bool:
    """Whether ``M_Psi(ab) = [[3z - z', *], [z, z']]``."""
    m = matrix_of_chain(chain_from_word(apply_nielsen(psi, "ab")))
    t = trace_triple(psi)
    zp = z_prime(t)
    return m.c == t.z and m.d == zp and m.a == 3 * t.z - zp


@dataclass(frozen=True)
class LimitPoint:
    m: int
    value: QuadraticSurd


def limit_point(m: int) -> LimitPoint:
    """``2m / (sqrt(9m^2 - 4) + 3m)``, stored rationalized as ``(3m^2 - m sqrt(9m^2 - 4)) / 2``."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return LimitPoint(m, QuadraticSurd(3 * m * m, -m, 9 * m * m - 4, 2))


def limit_of_family(psi: NielsenWord | str) -> QuadraticSurd:
    """``lim_k Z(r_k^Psi) = 1 / ([0; Pi2, Pi, Pi, ...] + [Pi])``."""
    s = symmetric_section(psi)
    pi = chain_from_word(s.pi)
    tail = periodic_cf_value(chain_from_word(s.pi2), pi)
    return 1 / (tail + leading_value(pi))
