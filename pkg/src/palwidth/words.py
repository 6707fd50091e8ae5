"""Exact words over a finite generating alphabet with formal inverses.

A word is a literal sequence of signed letters.  Palindromicity is judged
on that literal sequence (exponents expanded to unit letters), never on a
reduced form.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

_NAME_RE = re.compile(r"[a-z][0-9]*\Z")
_TOKEN_RE = re.compile(r"([A-Za-z][0-9]*)(\^(-?[0-9]+))?")

Letter = tuple[int, int]  # (generator index, sign in {+1, -1})


@dataclass(frozen=True)
class Alphabet:
    """Ordered generator names; lowercase in text form, uppercase = inverse."""

    names: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.names:
            raise ValueError("alphabet needs at least one generator")
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate generator names in {self.names}")
        for name in self.names:
            if not _NAME_RE.match(name):
                raise ValueError(f"bad generator name {name!r}: want [a-z][0-9]*")

    def __len__(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise ValueError(f"unknown generator {name!r} (alphabet {self.names})")


@dataclass(frozen=True)
class Word:
    """Immutable sequence of (generator index, sign) letters; () is the empty word."""

    letters: tuple[Letter, ...] = ()

    def __post_init__(self) -> None:
        for gen, sign in self.letters:
            if sign not in (1, -1) or gen < 0:
                raise ValueError(f"bad letter ({gen}, {sign})")

    def __len__(self) -> int:
        return len(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def reverse(self) -> "Word":
        """Same letters in reverse order, signs unchanged."""
        return Word(self.letters[::-1])

    def invert(self) -> "Word":
        """Group inverse: reversed order with all signs flipped."""
        return Word(tuple((g, -s) for g, s in self.letters[::-1]))

    def is_palindrome(self) -> bool:
        """True iff the letter sequence equals its own reversal, signs included."""
        return self.letters == self.letters[::-1]

    def free_reduce(self) -> "Word":
        """Delete adjacent inverse pairs until none remain (unique reduced form)."""
        stack: list[Letter] = []
        for gen, sign in self.letters:
            if stack and stack[-1][0] == gen and stack[-1][1] == -sign:
                stack.pop()
            else:
                stack.append((gen, sign))
        return Word(tuple(stack))


EPSILON = Word()


def power(gen: int, exp: int) -> Word:
    """The word gen^exp, expanded to |exp| unit letters."""
    if exp == 0:
        return EPSILON
    sign = 1 if exp > 0 else -1
    return Word(((gen, sign),) * abs(exp))


def concat(words: list[Word] | tuple[Word, ...]) -> Word:
    out: list[Letter] = []
    for w in words:
        out.extend(w.letters)
    return Word(tuple(out))


def free_equal(a: Word, b: Word) -> bool:
    return a.free_reduce() == b.free_reduce()


def parse_word(alphabet: Alphabet, text: str) -> Word:
    """Parse text form: lowercase = generator, uppercase = inverse, ^k = run length.

    Tokens may be juxtaposed or whitespace-separated; `a^-3` expands to three
    inverse letters, `A^2` likewise.
    """
    letters: list[Letter] = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ValueError(f"cannot parse word at ...{text[pos:pos + 12]!r}")
        token, _, exp_str = m.groups()
        sign = -1 if token[0].isupper() else 1
        gen = alphabet.index(token.lower())
        exp = sign * (int(exp_str) if exp_str is not None else 1)
        letters.extend(power(gen, exp).letters)
        pos = m.end()
    return Word(tuple(letters))


def format_word(alphabet: Alphabet, word: Word) -> str:
    """Compact run-length text form, e.g. t^-6a^-2ta^2; the empty word is ''."""
    parts: list[str] = []
    i = 0
    letters = word.letters
    while i < len(letters):
        gen, sign = letters[i]
        j = i
        while j < len(letters) and letters[j] == (gen, sign):
            j += 1
        exp = sign * (j - i)
        name = alphabet.names[gen]
        parts.append(name if exp == 1 else f"{name}^{exp}")
        i = j
    return "".join(parts)
