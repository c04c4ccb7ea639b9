"""Nielsen moves on {a, b}-words and the admissible families they generate.

A Nielsen word ``s1 s2 ... st`` over {U, V} acts as ``s1 o s2 o ... o st``: the
rightmost letter is applied first. ``U: a -> ab, b -> b`` and ``V: a -> a, b -> ab``.
The adjusted moves keep admissible chains admissible::

    Ubar(T) = b U(T)        Vbar(T) = a^{-1} V(T)

Every admissible mixed word is ``Psibar(b (ab)^k)`` for a unique Nielsen word
``Psi`` and ``k >= 1``; the result is ``Pi2 (Pi1 Pi2)^k`` where ``Pi1 Pi2`` is the
split of ``Psi(ab)`` into two palindromes.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

from .chains import (
    ABWord,
    WordType,
    chain_from_word,
    characteristic_sequence,
    is_admissible,
    leading_value,
    rho,
)
from .rational_core import Chain


class ClassificationError(RuntimeError):
    """An admissible word did not reduce the way the classification requires."""


@dataclass(frozen=True)
class NielsenWord:
    letters: str = ""

    def __post_init__(self):
        if set(self.letters) - {"U", "V"}:
            raise ValueError(f"Nielsen word must use only U and V: {self.letters!r}")

    def __str__(self) -> str:
        return self.letters

    def __len__(self) -> int:
        return len(self.letters)

    @classmethod
    def all_of_length(cls, n: int) -> Iterator["NielsenWord"]:
        from itertools import product

        for t in product("UV", repeat=n):
            yield cls("".join(t))

    @classmethod
    def up_to_length(cls, n: int) -> Iterator["NielsenWord"]:
        for m in range(n + 1):
            yield from cls.all_of_length(m)


_SUBST = {"U": {"a": "ab", "b": "b"}, "V": {"a": "a", "b": "ab"}}


def _letters(x: ABWord | str) -> str:
    return x.letters if isinstance(x, ABWord) else x


def _psi(w: NielsenWord | str) -> str:
    return w.letters if isinstance(w, NielsenWord) else w


def _substitute(move: str, word: str) -> str:
    table = _SUBST[move]
    return "".join(table[ch] for ch in word)


def apply_nielsen(w: NielsenWord | str, x: ABWord | str) -> ABWord:
    word = _letters(x)
    for move in reversed(_psi(w)):
        word = _substitute(move, word)
    return ABWord(word)


def apply_Ubar(t: ABWord | str) -> ABWord:
    return ABWord("b" + _substitute("U", _letters(t)))


def apply_Vbar(t: ABWord | str) -> ABWord:
    image = _substitute("V", _letters(t))
    if not image.startswith("a"):
        raise AssertionError(f"V({_letters(t)!r}) does not start with a")
    if len(image) == 1:
        raise ValueError("Vbar(a) is the empty word, which is not a chain")
    return ABWord(image[1:])


def apply_bar(w: NielsenWord | str, t: ABWord | str) -> ABWord:
    """Apply the adjusted word Psibar, rightmost letter first."""
    out = ABWord(_letters(t))
    for move in reversed(_psi(w)):
        out = apply_Ubar(out) if move == "U" else apply_Vbar(out)
    return out


def _unsubstitute(move: str, word: str) -> Optional[str]:
    """Inverse of the substitution, or None when ``word`` is not in its image."""
    out = []
    i = 0
    while i < len(word):
        if word.startswith("ab", i):
            out.append("a" if move == "U" else "b")
            i += 2
        elif word[i] == "a" and move == "V":
            out.append("a")
            i += 1
        elif word[i] == "b" and move == "U":
            out.append("b")
            i += 1
        else:
            return None
    return "".join(out)


def base_word(k: int) -> ABWord:
    """``b (ab)^k``."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return ABWord("b" + "ab" * k)


def _base_power(w: str) -> Optional[int]:
    if len(w) >= 3 and len(w) % 2 == 1 and w == "b" + "ab" * (len(w) // 2):
        return len(w) // 2
    return None


def bar_reduce(t: ABWord | str) -> Optional[tuple[str, ABWord]]:
    """Undo one adjusted move: returns ``(letter, preimage)`` or None on ``b(ab)^k``.

    Ubar produces Type I words (isolated a's) and Vbar produces Type II words
    (isolated b's), so the word type picks the move to invert.
    """
    w = _letters(t)
    if _base_power(w) is not None:
        return None
    cs = characteristic_sequence(w)
    if cs.word_type is WordType.TYPE_I:
        letter, pre = "U", (_unsubstitute("U", w[1:]) if w.startswith("b") else None)
    else:
        letter, pre = "V", _unsubstitute("V", "a" + w)
    if not pre or len(pre) >= len(w):
        raise ValueError(f"word {w!r} has no shorter preimage under {letter}bar")
    if apply_bar(letter, pre).letters != w:
        raise ValueError(f"round trip failed reducing {w!r} by {letter}bar")
    return letter, ABWord(pre)


def decompose(t: ABWord | str) -> tuple[NielsenWord, int]:
    """Find ``(Psi, k)`` with ``Psibar(b(ab)^k) = t`` for an admissible word ``t``."""
    w = _letters(t)
    if len(set(w)) < 2:
        raise ValueError(f"word {w!r} is a power of a single letter")
    if not is_admissible(chain_from_word(w)):
        raise ValueError(f"word {w!r} is not admissible")
    letters = []
    current = w
    while (k := _base_power(current)) is None:
        try:
            step = bar_reduce(current)
        except ValueError as exc:
            raise ClassificationError(f"admissible word {w!r} stalled at {current!r}: {exc}") from exc
        assert step is not None
        letters.append(step[0])
        current = step[1].letters
    psi = NielsenWord("".join(letters))
    if apply_bar(psi, base_word(k)).letters != w:
        raise ClassificationError(f"decomposition of {w!r} does not reproduce it")
    return psi, k


@dataclass(frozen=True)
class SymmetricSection:
    pi1: ABWord
    pi2: ABWord

    @property
    def pi(self) -> ABWord:
        return self.pi1 + self.pi2


def symmetric_section(psi: NielsenWord | str) -> SymmetricSection:
    """Split ``Psi(ab)`` into palindromes ``Pi1`` (a...a) and ``Pi2`` (b...b)."""
    pi1, pi2 = "a", "b"
    for move in reversed(_psi(psi)):
        p1, p2 = _substitute(move, pi1), _substitute(move, pi2)
        if move == "U":
            # U(Pi1) ends in b, which moves over to the front of Pi2
            pi1, pi2 = p1[:-1], "b" + p2
        else:
            # V(Pi2) starts with a, which moves over to the end of Pi1
            pi1, pi2 = p1 + "a", p2[1:]
    return SymmetricSection(ABWord(pi1), ABWord(pi2))


def family_word(psi: NielsenWord | str, k: int) -> ABWord:
    """``Pi2 (Pi1 Pi2)^k``."""
    if k < 1:
        raise ValueError("k must be >= 1")
    s = symmetric_section(psi)
    return s.pi2 + s.pi * k


def build_r(psi: NielsenWord | str, k: int) -> Chain:
    """Chain of ``r_k^Psi``."""
    return chain_from_word(family_word(psi, k))


def z_closed_form(psi: NielsenWord | str, k: int) -> Fraction:
    """``([Pi] + 1/[Pi2 Pi^{k-1}])^{-1}``, with ``[X]`` read with its first term as integer part."""
    if k < 1:
        raise ValueError("k must be >= 1")
    s = symmetric_section(psi)
    pi = chain_from_word(s.pi)
    tail = chain_from_word(s.pi2 + s.pi * (k - 1))
    return 1 / (leading_value(pi) + 1 / leading_value(tail))


@dataclass(frozen=True)
class FamilyRecord:
    psi: NielsenWord
    k: int
    chain: Chain
    rho: Fraction
    z: Fraction


def enumerate_admissible(max_denominator: int) -> Iterator[FamilyRecord]:
    """Every ``(Psi, k)`` whose ``r_k^Psi`` has denominator <= max_denominator.

    Breadth-first over ``|Psi|`` (lexicographic within a length), then ``k``
    ascending. Denominators grow with ``k`` and with any one-letter extension of
    ``Psi``, so a word whose ``k = 1`` member is too large has no surviving
    extensions.
    """
    if max_denominator < 2:
        return
    level = [NielsenWord("")]
    while level:
        survivors = []
        for psi in level:
            k = 1
            while True:
                chain = build_r(psi, k)
                r = rho(chain)
                if r.denominator > max_denominator:
                    break
                yield FamilyRecord(psi, k, chain, r, z_closed_form(psi, k))
                k += 1
            if k > 1:
                survivors.append(psi)
        level = [NielsenWord(p.letters + m) for p in survivors for m in "UV"]


def words_up_to_chain_length(max_len: int) -> Iterator[tuple[NielsenWord, int, Chain]]:
    """All ``(Psi, k, build_r(Psi, k))`` with chain length <= max_len."""
    queue = deque([NielsenWord("")])
    while queue:
        psi = queue.popleft()
        k = 1
        while len(chain := build_r(psi, k)) <= max_len:
            yield psi, k, chain
            k += 1
        if k > 1:
            queue.extend(NielsenWord(psi.letters + m) for m in "UV")
