"""Chains over {1, 2}, sections, the chain order and the admissibility filters.

A chain ``T = (a1, ..., an)`` stands for ``rho_T = [0; a1, ..., an]``. Mixed
chains whose clusters all have even length are written as words over ``a = (2, 2)``
and ``b = (1, 1)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence

from .rational_core import Chain, rat_from_cf

THIRD = Fraction(1, 3)

LETTER_TERMS = {"a": (2, 2), "b": (1, 1)}
_EXCEPTIONAL = (1, 1, 1, 1, 1)


def _terms(chain: Chain | Sequence[int]) -> tuple[int, ...]:
    return chain.terms if isinstance(chain, Chain) else tuple(chain)


def rho(chain: Chain | Sequence[int]) -> Fraction:
    """``[0; a1, ..., an]``; the empty chain has value 0."""
    return rat_from_cf(_terms(chain))


def leading_value(chain: Chain | Sequence[int]) -> Fraction:
    """``[a1; a2, ..., an]``: the chain read with its first term as integer part."""
    t = _terms(chain)
    return rat_from_cf(Chain(t[1:], t[0]))


def clusters(terms: Sequence[int]) -> list[tuple[int, int, int]]:
    """Maximal runs of equal terms as ``(value, start, length)``."""
    out = []
    start = 0
    for value, grp in itertools.groupby(terms):
        n = len(list(grp))
        out.append((value, start, n))
        start += n
    return out


# words -------------------------------------------------------------------


@dataclass(frozen=True)
class ABWord:
    """Word over the alphabet {a, b}; ``a`` encodes (2, 2) and ``b`` encodes (1, 1)."""

    letters: str

    def __post_init__(self):
        if set(self.letters) - {"a", "b"}:
            raise ValueError(f"word must use only the letters a and b: {self.letters!r}")

    def __str__(self) -> str:
        return self.letters

    def __len__(self) -> int:
        return len(self.letters)

    def __add__(self, other: "ABWord") -> "ABWord":
        return ABWord(self.letters + other.letters)

    def __mul__(self, k: int) -> "ABWord":
        return ABWord(self.letters * k)

    def reversed(self) -> "ABWord":
        return ABWord(self.letters[::-1])

    def is_palindrome(self) -> bool:
        return self.letters == self.letters[::-1]


def chain_from_word(word: ABWord | str) -> Chain:
    letters = word.letters if isinstance(word, ABWord) else word
    return Chain(tuple(t for ch in letters for t in LETTER_TERMS[ch]))


def word_from_chain(chain: Chain | Sequence[int]) -> ABWord:
    terms = _terms(chain)
    letters = []
    for value, start, n in clusters(terms):
        if value not in (1, 2):
            raise ValueError(f"term {value} at index {start} has no letter encoding")
        if n % 2:
            raise ValueError(f"odd cluster of {value}'s (length {n}) at index {start}")
        letters.append(("b" if value == 1 else "a") * (n // 2))
    return ABWord("".join(letters))


class WordType(str, Enum):
    TYPE_I = "TypeI"
    TYPE_II = "TypeII"


@dataclass(frozen=True)
class CharSeq:
    word_type: WordType
    exponents: tuple[int, ...]

    def decode(self) -> ABWord:
        if self.word_type is WordType.TYPE_I:
            return ABWord("a".join("b" * e for e in self.exponents))
        return ABWord("b" + "b".join("a" * e for e in self.exponents) + "b")


def _runs(letters: str, ch: str) -> list[int]:
    return [len(list(g)) for k, g in itertools.groupby(letters) if k == ch]


def characteristic_sequence(word: ABWord | str) -> CharSeq:
    """Type I ``b^e1 a b^e2 ... a b^en`` or Type II ``b a^e1 b ... a^en b``.

    ``b(ab)^k`` fits both shapes and is reported as Type II.
    """
    w = word.letters if isinstance(word, ABWord) else word
    if len(w) < 3 or w[0] != "b" or w[-1] != "b" or "a" not in w:
        raise ValueError(f"word {w!r} is neither Type I nor Type II")
    if max(_runs(w, "b")) == 1:
        return CharSeq(WordType.TYPE_II, tuple(_runs(w, "a")))
    if max(_runs(w, "a")) == 1:
        return CharSeq(WordType.TYPE_I, tuple(_runs(w, "b")))
    raise ValueError(f"word {w!r} is neither Type I nor Type II")


# canonical form ----------------------------------------------------------


def _fix_tail(terms: list[int]) -> list[int]:
    n = 0
    while n < len(terms) and terms[-1 - n] == 2:
        n += 1
    if n % 2:
        terms = terms[:-1] + [1, 1]
    return terms


def canonicalize_chain(chain: Chain | Sequence[int]) -> Chain:
    """Make the chain start and end with an even number (possibly zero) of 2's.

    Uses ``[..., 2] == [..., 1, 1]`` (same rational) and ``[2, ...] == [1, 1, ...]``
    (rho -> 1 - rho, same Z); the head rule is the tail rule on the reversal.
    """
    terms = list(_terms(chain))
    if not terms or set(terms) - {1, 2}:
        raise ValueError(f"canonicalization needs a nonempty chain over {{1, 2}}: {terms}")
    terms = _fix_tail(terms)
    terms = _fix_tail(terms[::-1])[::-1]
    return Chain(tuple(terms))


def is_canonical(chain: Chain | Sequence[int]) -> bool:
    t = _terms(chain)
    return bool(t) and not set(t) - {1, 2} and canonicalize_chain(t).terms == t


def identification_class(chain: Chain | Sequence[int]) -> set[tuple[int, ...]]:
    """All chains reachable by the head/tail identifications; all share one Z value."""
    start = _terms(chain)
    seen = {start}
    todo = [start]
    while todo:
        t = todo.pop()
        nxt = []
        if t and t[-1] == 2:
            nxt.append(t[:-1] + (1, 1))
        if len(t) > 2 and t[-2:] == (1, 1):
            nxt.append(t[:-2] + (2,))
        if t and t[0] == 2:
            nxt.append((1, 1) + t[1:])
        if len(t) > 2 and t[:2] == (1, 1):
            nxt.append((2,) + t[2:])
        for u in nxt:
            if u not in seen:
                seen.add(u)
                todo.append(u)
    return seen


def is_single_letter_class(chain: Chain | Sequence[int]) -> bool:
    """True when the chain is identified with a chain of only 1's or only 2's."""
    return any(len(set(u)) == 1 for u in identification_class(chain))


def reverse_chain(chain: Chain | Sequence[int]) -> Chain:
    return Chain(_terms(chain)[::-1])


# sections and Perron ------------------------------------------------------


@dataclass(frozen=True)
class Section:
    """Split ``T = R S`` with ``R = terms[:split_index]``."""

    chain: Chain
    split_index: int

    def __post_init__(self):
        if not 0 <= self.split_index <= len(self.chain):
            raise ValueError(f"split index {self.split_index} outside 0..{len(self.chain)}")

    @property
    def left(self) -> tuple[int, ...]:
        return self.chain.terms[: self.split_index]

    @property
    def right(self) -> tuple[int, ...]:
        return self.chain.terms[self.split_index :]


def section_value(s: Section | tuple[Sequence[int], Sequence[int]]) -> Fraction:
    """``Z(R|S) = 1 / (rho_{R*} + 1/rho_S)``."""
    if isinstance(s, Section):
        left, right = s.left, s.right
    else:
        left, right = tuple(s[0]), tuple(s[1])
    if not right:
        raise ValueError("section value needs a nonempty right part S")
    return 1 / (rho(left[::-1]) + leading_value(right))


def perron_value(chain: Chain | Sequence[int]) -> tuple[Fraction, int]:
    """``max_i ([a_i; a_{i+1}, ..., a_n] + [0; a_{i-1}, ..., a_1])`` and its smallest argmax (1-based).

    Z of the chain is the reciprocal of the returned value.
    """
    t = _terms(chain)
    n = len(t)
    if n == 0:
        raise ValueError("perron_value needs a nonempty chain")
    tails = [Fraction(0)] * (n + 1)
    # tails[i] = [a_{i+1}; a_{i+2}, ..., a_n] (0-based: starting at t[i])
    tails[n - 1] = Fraction(t[n - 1])
    for i in range(n - 2, -1, -1):
        tails[i] = t[i] + 1 / tails[i + 1]
    best, best_i = None, 0
    head = Fraction(0)  # [0; a_{i-1}, ..., a_1]
    for i in range(n):
        v = tails[i] + head
        if best is None or v > best:
            best, best_i = v, i + 1
        head = 1 / (t[i] + head)
    return best, best_i


def zaremba_of_chain(chain: Chain | Sequence[int]) -> Fraction:
    return 1 / perron_value(chain)[0]


def chain_less(t1: Chain | Sequence[int], t2: Chain | Sequence[int]) -> bool:
    """The chain order: ``[T1] < [T2]`` iff ``rho_T1 > rho_T2``."""
    return rho(t1) > rho(t2)


def is_admissible(chain: Chain | Sequence[int]) -> bool:
    """Z(chain) > 1/3, i.e. every Perron sum is strictly below 3."""
    return perron_value(chain)[0] < 3


# lemma filters -------------------------------------------------------------


class RejectionTag(str, Enum):
    CONTAINS_121 = "Contains121"
    CONTAINS_212 = "Contains212"
    ODD_CLUSTER = "OddCluster"
    BOTH_LETTERS_EXCEED_TWO = "BothLettersExceedTwo"
    BAD_ENDPOINTS = "BadEndpoints"
    SECTION_BELOW_THIRD = "SectionBelowThird"


@dataclass(frozen=True)
class RejectionReason:
    tag: RejectionTag
    location: int

    def __str__(self) -> str:
        return f"{self.tag.value}@{self.location}"


def _find(t: tuple[int, ...], pattern: tuple[int, ...]) -> int:
    m = len(pattern)
    for i in range(len(t) - m + 1):
        if t[i : i + m] == pattern:
            return i
    return -1


def quick_reject(chain: Chain | Sequence[int]) -> Optional[RejectionReason]:
    """First lemma that rules the canonical chain out, or None.

    None does not certify admissibility; this is a filter. The cluster and
    endpoint lemmas are only applied to chains not identified with a
    single-letter chain: ``b a^j`` and ``a^j b`` are all-2 chains in disguise
    and are admissible for odd totals of 2's from five on.
    """
    t = _terms(chain)
    if not is_canonical(t):
        raise ValueError(f"quick_reject expects a canonical chain over {{1, 2}}: {t}")
    i = _find(t, (1, 2, 1))
    if i >= 0:
        return RejectionReason(RejectionTag.CONTAINS_121, i)
    if t != _EXCEPTIONAL:
        i = _find(t, (2, 1, 2))
        if i >= 0:
            return RejectionReason(RejectionTag.CONTAINS_212, i)
    runs = clusters(t)
    if len(runs) == 1 or is_single_letter_class(t):
        return None
    for _, start, n in runs:
        if n % 2:
            return RejectionReason(RejectionTag.ODD_CLUSTER, start)
    # one of the letters must appear only as clusters of length exactly 2
    long_ones = [start for v, start, n in runs if v == 1 and n > 2]
    long_twos = [start for v, start, n in runs if v == 2 and n > 2]
    if long_ones and long_twos:
        return RejectionReason(RejectionTag.BOTH_LETTERS_EXCEED_TWO, max(long_ones[0], long_twos[0]))
    if t[0] != 1:
        return RejectionReason(RejectionTag.BAD_ENDPOINTS, 0)
    if t[-1] != 1:
        return RejectionReason(RejectionTag.BAD_ENDPOINTS, len(t) - 1)
    return None


def rejection_reason(chain: Chain | Sequence[int]) -> Optional[RejectionReason]:
    """Why a chain is inadmissible: a lemma certificate or the Perron witness; None if admissible."""
    t = _terms(chain)
    if set(t) - {1, 2}:
        value, i = perron_value(t)
        return RejectionReason(RejectionTag.SECTION_BELOW_THIRD, i - 1)
    canon = canonicalize_chain(t)
    reason = quick_reject(canon)
    if reason is not None:
        return reason
    value, i = perron_value(canon)
    if value >= 3:
        return RejectionReason(RejectionTag.SECTION_BELOW_THIRD, i - 1)
    return None
