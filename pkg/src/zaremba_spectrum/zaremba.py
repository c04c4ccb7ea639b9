"""Zaremba's function ``Z(a/b) = min_{0<q<b} q * ||q a / b||`` computed three ways."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd
from typing import Optional

import numpy as np

from .chains import perron_value
from .rational_core import cf_from_rat


class Method(str, Enum):
    BRUTE_FORCE = "BruteForce"
    PERRON = "Perron"
    LATTICE = "Lattice"


@dataclass(frozen=True)
class ZResult:
    value: Fraction
    method: Method
    witness_q: Optional[int] = None
    witness_index: Optional[int] = None


@dataclass(frozen=True)
class LatticeSpec:
    """The lattice ``{(u, v) in Z^2 : u*g1 + v*g2 = 0 mod p}``."""

    p: int
    g1: int
    g2: int

    def __post_init__(self):
        if self.p < 2:
            raise ValueError(f"lattice modulus must be >= 2, got {self.p}")
        if gcd(gcd(self.g1, self.g2), self.p) != 1:
            raise ValueError(f"gcd(g1, g2, p) must be 1 for {self}")


def _check_fraction(a: int, b: int) -> None:
    if b < 2 or not 0 < a < b:
        raise ValueError(f"Z(a/b) needs b >= 2 and 0 < a < b, got {a}/{b}")
    if gcd(a, b) != 1:
        raise ValueError(f"{a}/{b} is not reduced")


def z_bruteforce(a: int, b: int) -> ZResult:
    _check_fraction(a, b)
    best, best_q = b * b, 0
    for q in range(1, b):
        r = q * a % b
        v = q * min(r, b - r)
        if v < best:
            best, best_q = v, q
    return ZResult(Fraction(best, b), Method.BRUTE_FORCE, witness_q=best_q)


def bruteforce_row(b: int) -> np.ndarray:
    """``b * Z(a/b)`` for every ``a`` in ``1..b-1`` (entry ``a - 1``), by the same minimum over q.

    Entries for non-reduced ``a`` are computed but meaningless.
    """
    q = np.arange(1, b, dtype=np.int64)
    r = np.outer(q, q) % b  # rows indexed by a, columns by q
    return (np.minimum(r, b - r) * q).min(axis=1)


def z_perron(a: int, b: int) -> ZResult:
    _check_fraction(a, b)
    value, index = perron_value(cf_from_rat(Fraction(a, b), "canonical"))
    return ZResult(1 / value, Method.PERRON, witness_index=index)


def _least_abs_residue(x: int, p: int) -> int:
    r = x % p
    if r == 0:
        return p
    return min(r, p - r)


def lattice_lambda(spec: LatticeSpec) -> Fraction:
    """``p^-1 * min |u v|`` over lattice vectors with ``u v != 0``.

    With g2 invertible every vector has ``v = -u g1 / g2 (mod p)``. A vector with
    ``|u| >= p`` has product at least p, while ``u = 1`` already gives at most p/2,
    so ``u`` in ``1..p-1`` with the absolutely least ``v`` suffices (v = +-p when
    the residue is 0).
    """
    p, g1, g2 = spec.p, spec.g1, spec.g2
    if gcd(g2, p) == 1:
        slope = -g1 * pow(g2, -1, p)
    elif gcd(g1, p) == 1:
        slope = -g2 * pow(g1, -1, p)
    else:
        raise NotImplementedError(f"neither g1 nor g2 is invertible mod {p}: degenerate lattice")
    best = min(u * _least_abs_residue(u * slope, p) for u in range(1, p))
    return Fraction(best, p)


def lattice_slope(spec: LatticeSpec) -> int:
    """The ``a`` in ``(0, p)`` with ``lattice_lambda(spec) == Z(a/p)`` (0 when degenerate)."""
    p, g1, g2 = spec.p, spec.g1, spec.g2
    if gcd(g2, p) == 1:
        return -g1 * pow(g2, -1, p) % p
    return -g2 * pow(g1, -1, p) % p
