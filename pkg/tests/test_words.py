import random

import pytest

from palwidth import Alphabet, EPSILON, Word, concat, format_word, parse_word, power

from gens import random_word

AT = Alphabet(("a", "t"))
X3 = Alphabet(("x1", "x2", "x3"))

W_H_TEXT = "t^-6a^2ta^2ta^2ta^-1t^2ata^2ta^2tat^2a^-1ta^2ta^2ta^2t^-6"


def test_reverse_examples():
    w = parse_word(AT, "a t A")
    assert format_word(AT, w.reverse()) == "a^-1ta"
    assert EPSILON.reverse() == EPSILON
    rho = parse_word(X3, "x1x2X1X2")
    assert format_word(X3, rho.reverse()) == "x2^-1x1^-1x2x1"


def test_invert_examples():
    assert format_word(AT, parse_word(AT, "a t").invert()) == "t^-1a^-1"
    assert EPSILON.invert() == EPSILON
    comm = parse_word(X3, "x1x2X1X2")
    assert format_word(X3, comm.invert()) == "x2x1x2^-1x1^-1"


def test_palindrome_examples():
    assert parse_word(X3, "x1^2x2x1^-2x2x1^2").is_palindrome()
    assert not parse_word(AT, "a t").is_palindrome()
    assert parse_word(AT, W_H_TEXT).is_palindrome()


def test_free_reduce_examples():
    assert format_word(AT, parse_word(AT, "a A t").free_reduce()) == "t"
    assert parse_word(X3, "x1x2X2X1").free_reduce() == EPSILON
    product = parse_word(X3, "x1x2 x3 x2x1 X1X2 X2X1 X3")
    assert format_word(X3, product.free_reduce()) == "x1x2x3x2^-1x1^-1x3^-1"


def test_involutions_and_commuting():
    rng = random.Random(0)
    for _ in range(300):
        w = random_word(rng, 3, 12)
        assert w.reverse().reverse() == w
        assert w.invert().invert() == w
        assert w.reverse().invert() == w.invert().reverse()
        assert w.is_palindrome() == w.reverse().is_palindrome()
        assert (w * w.reverse()).is_palindrome()
        reduced = w.free_reduce()
        assert reduced.free_reduce() == reduced
        assert len(reduced) <= len(w)
        assert (w * w.invert()).free_reduce() == EPSILON


def test_parse_run_length_and_case():
    assert parse_word(AT, "a^-3") == power(0, -3)
    assert parse_word(AT, "A^2") == power(0, -2)
    assert parse_word(AT, "A^-2") == power(0, 2)
    assert parse_word(AT, "a^0") == EPSILON
    assert parse_word(X3, "x1X2") == Word(((0, 1), (1, -1)))
    with pytest.raises(ValueError):
        parse_word(AT, "b")


def test_format_round_trip():
    rng = random.Random(1)
    for _ in range(200):
        w = random_word(rng, 2, 15)
        assert parse_word(AT, format_word(AT, w)) == w


def test_alphabet_validation():
    with pytest.raises(ValueError):
        Alphabet(())
    with pytest.raises(ValueError):
        Alphabet(("a", "a"))
    with pytest.raises(ValueError):
        Alphabet(("A",))


def test_concat():
    assert concat([power(0, 2), power(1, -1)]) == parse_word(AT, "a a T")
