"""Wreath products G wr Z^r with lamplighter-style word evaluation.

The base group G is a runtime-pluggable contract.  Built-ins: the integers
(one generator `a`), cyclic groups Z_m, and a generic free-word group with a
user equality oracle.  Elements of G wr Z^r pair a finitely supported
configuration Z^r -> G with a shift vector.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable

from .lattice import LatticeFn, Point
from .words import Alphabet, EPSILON, Word, power


class BaseGroup:
    """Contract for the base factor of the wreath product.

    Subclasses supply exact group arithmetic, evaluation of words over the
    base alphabet, a palindromic factorization with a declared width bound,
    and a word normalization hook used by the symmetric decomposition.
    """

    name: str
    alphabet: Alphabet
    pw: int | None  # declared palindromic width bound, None if unknown

    def identity(self) -> Any:
        raise NotImplementedError

    def multiply(self, a: Any, b: Any) -> Any:
        raise NotImplementedError

    def invert(self, a: Any) -> Any:
        raise NotImplementedError

    def equal(self, a: Any, b: Any) -> bool:
        return a == b

    def evaluate(self, word: Word) -> Any:
        """Monoid homomorphism from words over the base alphabet to G."""
        raise NotImplementedError

    def canonical_word(self, element: Any) -> Word:
        """A fixed representative word for the element."""
        raise NotImplementedError

    def normalize_word(self, word: Word) -> Word:
        """Canonical word form where the group has one; verbatim otherwise."""
        return word

    def palindromic_factorization(self, element: Any) -> list[Word]:
        """Palindromic words whose product evaluates to the element.

        The list length is at most the declared `pw` when that is not None;
        factors for the identity may be empty.
        """
        raise NotImplementedError

    def encode_value(self, element: Any) -> Any:
        return element

    def decode_value(self, raw: Any) -> Any:
        return raw

    def __eq__(self, other: object) -> bool:
        return isinstance(other, BaseGroup) and self.name == other.name

    def __hash__(self) -> int:
        return hash(self.name)

    def __repr__(self) -> str:
        return f"<base group {self.name}>"


class IntegerGroup(BaseGroup):
    """The integers under addition, generated by `a`; every n is the palindrome a^n."""

    def __init__(self) -> None:
        self.name = "Z"
        self.alphabet = Alphabet(("a",))
        self.pw = 1

    def identity(self) -> int:
        return 0

    def multiply(self, a: int, b: int) -> int:
        return a + b

    def invert(self, a: int) -> int:
        return -a

    def evaluate(self, word: Word) -> int:
        return sum(sign for _gen, sign in word.letters)

    def canonical_word(self, element: int) -> Word:
        return power(0, element)

    def normalize_word(self, word: Word) -> Word:
        return self.canonical_word(self.evaluate(word))

    def palindromic_factorization(self, element: int) -> list[Word]:
        return [self.canonical_word(element)] if element else []


class CyclicGroup(BaseGroup):
    """Z_m under addition mod m, generated by `a`; canonical exponents in [0, m)."""

    def __init__(self, m: int) -> None:
        if m < 2:
            raise ValueError(f"modulus must be >= 2, got {m}")
        self.m = m
        self.name = f"Zm:{m}"
        self.alphabet = Alphabet(("a",))
        self.pw = 1

    def identity(self) -> int:
        return 0

    def multiply(self, a: int, b: int) -> int:
        return (a + b) % self.m

    def invert(self, a: int) -> int:
        return (-a) % self.m

    def evaluate(self, word: Word) -> int:
        return sum(sign for _gen, sign in word.letters) % self.m

    def canonical_word(self, element: int) -> Word:
        return power(0, element % self.m)

    def normalize_word(self, word: Word) -> Word:
        return self.canonical_word(self.evaluate(word))

    def palindromic_factorization(self, element: int) -> list[Word]:
        element %= self.m
        return [self.canonical_word(element)] if element else []


class WordGroup(BaseGroup):
    """Free-word base group; elements are reduced words, equality by an oracle.

    Without a user-supplied factorization strategy every element factors
    letter by letter (each unit letter is a palindrome) and no width bound
    is declared.
    """

    def __init__(self, alphabet: Alphabet,
                 equality: Callable[[Word, Word], bool] | None = None,
                 pw: int | None = None,
                 factorization: Callable[[Word], list[Word]] | None = None) -> None:
        self.alphabet = alphabet
        self.name = "free:" + ",".join(alphabet.names)
        self.pw = pw
        self._equality = equality
        self._factorization = factorization

    def identity(self) -> Word:
        return EPSILON

    def multiply(self, a: Word, b: Word) -> Word:
        return (a * b).free_reduce()

    def invert(self, a: Word) -> Word:
        return a.invert()

    def equal(self, a: Word, b: Word) -> bool:
        if self._equality is not None:
            return self._equality(a, b)
        return a.free_reduce() == b.free_reduce()

    def evaluate(self, word: Word) -> Word:
        return word.free_reduce()

    def canonical_word(self, element: Word) -> Word:
        return element

    def palindromic_factorization(self, element: Word) -> list[Word]:
        if self._factorization is not None:
            return self._factorization(element)
        return [Word((letter,)) for letter in element.letters]

    def encode_value(self, element: Word) -> str:
        from .words import format_word

        return format_word(self.alphabet, element)

    def decode_value(self, raw: str) -> Word:
        from .words import parse_word

        return parse_word(self.alphabet, raw).free_reduce()


def base_from_name(name: str) -> BaseGroup:
    """Parse a base-group tag: "Z" or "Zm:<modulus>"."""
    if name == "Z":
        return IntegerGroup()
    if name.startswith("Zm:"):
        return CyclicGroup(int(name.split(":", 1)[1]))
    raise ValueError(f"unknown base group {name!r} (want Z or Zm:<m>)")


@dataclass(frozen=True)
class WreathContext:
    """Base group plus lattice rank; owns the combined generating alphabet."""

    base: BaseGroup
    r: int

    def __post_init__(self) -> None:
        if self.r < 1:
            raise ValueError(f"rank must be >= 1, got {self.r}")
        overlap = set(self.base.alphabet.names) & set(self.lattice_names())
        if overlap:
            raise ValueError(f"base alphabet collides with lattice generators: {overlap}")

    def lattice_names(self) -> tuple[str, ...]:
        if self.r == 1:
            return ("t",)
        return tuple(f"x{i}" for i in range(1, self.r + 1))

    @property
    def alphabet(self) -> Alphabet:
        return Alphabet(self.base.alphabet.names + self.lattice_names())

    @property
    def base_size(self) -> int:
        return len(self.base.alphabet)

    def lattice_gen(self, axis: int) -> int:
        """Letter index of the lattice generator for 0-based axis."""
        if not 0 <= axis < self.r:
            raise ValueError(f"axis {axis} out of range for rank {self.r}")
        return self.base_size + axis


@dataclass(frozen=True)
class WreathElement:
    """Pair (configuration Z^r -> G, shift vector) of G wr Z^r."""

    ctx: WreathContext
    fn: LatticeFn
    shift: Point

    def __post_init__(self) -> None:
        if self.fn.r != self.ctx.r or len(self.shift) != self.ctx.r:
            raise ValueError("rank mismatch between configuration and context")

    def is_identity(self) -> bool:
        return self.fn.is_zero() and all(c == 0 for c in self.shift)

    def frozen(self) -> tuple:
        return (self.fn.frozen(), self.shift)


def identity_element(ctx: WreathContext) -> WreathElement:
    return WreathElement(ctx, LatticeFn(ctx.r, {}, ctx.base.identity()), (0,) * ctx.r)


def make_element(ctx: WreathContext, fn: dict[Point, Any] | LatticeFn,
                 shift: Point) -> WreathElement:
    if not isinstance(fn, LatticeFn):
        fn = LatticeFn(ctx.r, fn, ctx.base.identity())
    return WreathElement(ctx, fn, tuple(shift))


def evaluate_word(ctx: WreathContext, word: Word) -> WreathElement:
    """Operational semantics: base letters multiply the lamp under the cursor,
    lattice letters move the cursor."""
    base = ctx.base
    nb = ctx.base_size
    ident = base.identity()
    config: dict[Point, Any] = {}
    pos = [0] * ctx.r
    for gen, sign in word.letters:
        if gen < nb:
            value = base.evaluate(Word(((gen, sign),)))
            key = tuple(pos)
            combined = base.multiply(config.get(key, ident), value)
            if base.equal(combined, ident):
                config.pop(key, None)
            else:
                config[key] = combined
        elif gen < nb + ctx.r:
            pos[gen - nb] += sign
        else:
            raise ValueError(f"letter index {gen} outside alphabet {ctx.alphabet.names}")
    return WreathElement(ctx, LatticeFn(ctx.r, config, ident), tuple(pos))


def multiply(a: WreathElement, b: WreathElement) -> WreathElement:
    """(a.fn, a.shift) * (b.fn, b.shift): b's configuration acts shifted by a.shift."""
    if a.ctx != b.ctx:
        raise ValueError("context mismatch")
    base = a.ctx.base
    fn = a.fn.combine(b.fn.shift(a.shift), base.multiply)
    shift = tuple(x + y for x, y in zip(a.shift, b.shift))
    return WreathElement(a.ctx, fn, shift)


def invert(a: WreathElement) -> WreathElement:
    base = a.ctx.base
    neg = tuple(-c for c in a.shift)
    fn = a.fn.shift(neg).map_values(base.invert)
    return WreathElement(a.ctx, fn, neg)


def element_to_json(e: WreathElement) -> dict:
    return {
        "base": e.ctx.base.name,
        "r": e.ctx.r,
        "fn": e.fn.to_json(e.ctx.base.encode_value),
        "shift": list(e.shift),
    }


def element_from_json(data: dict) -> WreathElement:
    base = base_from_name(data["base"])
    ctx = WreathContext(base, int(data["r"]))
    fn = LatticeFn.from_json(data["fn"], zero=base.identity(), decode=base.decode_value)
    return WreathElement(ctx, fn, tuple(int(c) for c in data["shift"]))
