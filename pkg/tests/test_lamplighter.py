import random
from fractions import Fraction

import pytest

from palwidth import (HypothesisViolation, TwoPalDecomposition, certify_width_three,
                      concat, enumerate_palindromes, evaluate_word, format_word,
                      is_palindromic_element, lamp_element,
                      minimal_palindromic_length_bfs, multiply, palindrome_for,
                      parse_word, two_palindrome_decision)
from palwidth.lamplighter import LAMP_CTX, _window

from test_wreath import G_ROW, W_G

WITNESS = lamp_element({0: 1, 1: 2}, 3)


def test_is_palindromic_element():
    assert is_palindromic_element(lamp_element({-1: 5, 0: 7, 1: 5}, 0))
    assert not is_palindromic_element(WITNESS)
    assert is_palindromic_element(lamp_element(G_ROW, 0))
    assert is_palindromic_element(lamp_element({}, 0))


def test_palindrome_for_examples():
    assert palindrome_for(lamp_element({}, 0)) == parse_word(LAMP_CTX.alphabet, "")
    word = palindrome_for(lamp_element({-1: 5, 0: 7, 1: 5}, 0))
    assert format_word(LAMP_CTX.alphabet, word) == "t^-1a^5ta^7ta^5t^-1"
    assert format_word(LAMP_CTX.alphabet, palindrome_for(lamp_element(G_ROW, 0))) == W_G
    with pytest.raises(HypothesisViolation):
        palindrome_for(WITNESS)


def test_palindrome_for_random_symmetric():
    rng = random.Random(0)
    for _ in range(200):
        k = rng.randint(-6, 6)
        half = {x: rng.randint(-4, 4) for x in range(k, k + rng.randint(0, 4))}
        fn = {}
        for x, v in half.items():
            fn[x] = fn.get(x, 0) + v
            fn[k - x] = fn.get(k - x, 0) + (v if 2 * x != k else 0)
        fn = {x: v for x, v in fn.items() if v}
        e = lamp_element(fn, k)
        if not is_palindromic_element(e):
            continue
        word = palindrome_for(e)
        assert word.is_palindrome()
        assert evaluate_word(LAMP_CTX, word) == e


def _solve_window_fractions(f, k, p, lo, hi):
    """Independent oracle: dense Gaussian elimination for g on the window."""
    xs = list(range(lo, hi + 1))
    index = {x: i for i, x in enumerate(xs)}
    rows = []

    def g_coeff(x):
        row = [Fraction(0)] * len(xs)
        inside = lo <= x <= hi
        if inside:
            row[index[x]] = Fraction(1)
        return row, inside

    fval = lambda x: Fraction(f.get(x, 0))
    for x in xs:
        # g(x) - g(p - x) = 0
        row1, _ = g_coeff(x)
        row2, _ = g_coeff(p - x)
        rows.append(([a - b for a, b in zip(row1, row2)], Fraction(0)))
        # g(x) - g(p + k - x) = f(x) - f(p + k - x)
        row3, _ = g_coeff(p + k - x)
        rows.append(([a - b for a, b in zip(row1, row3)], fval(x) - fval(p + k - x)))
    # f must vanish outside the window for solutions pinned to it
    for x in f:
        if not lo <= x <= hi and f[x]:
            return None

    matrix = [row + [rhs] for row, rhs in rows]
    cols = len(xs)
    pivot_row = 0
    pivots = []
    for col in range(cols):
        sel = next((i for i in range(pivot_row, len(matrix)) if matrix[i][col]), None)
        if sel is None:
            continue
        matrix[pivot_row], matrix[sel] = matrix[sel], matrix[pivot_row]
        pivot = matrix[pivot_row][col]
        matrix[pivot_row] = [v / pivot for v in matrix[pivot_row]]
        for i in range(len(matrix)):
            if i != pivot_row and matrix[i][col]:
                factor = matrix[i][col]
                matrix[i] = [v - factor * w for v, w in zip(matrix[i], matrix[pivot_row])]
        pivots.append(col)
        pivot_row += 1
    for i in range(pivot_row, len(matrix)):
        if matrix[i][-1] != 0:
            return None  # inconsistent
    # free variables: set to f(x) (mirrors the solver's h0 := 0 tie-break)
    solution = [None] * cols
    free = [c for c in range(cols) if c not in pivots]
    for c in free:
        solution[c] = fval(xs[c])
    for row_i, col in reversed(list(enumerate(pivots))):
        value = matrix[row_i][-1]
        for c in range(col + 1, cols):
            if matrix[row_i][c]:
                value -= matrix[row_i][c] * solution[c]
        solution[col] = value
    if any(v.denominator != 1 for v in solution):
        return None
    return {x: int(v) for x, v in zip(xs, solution) if v}


def test_decision_none_for_witness():
    for p in (-1, 0):
        verdict = two_palindrome_decision(WITNESS, p)
        assert isinstance(verdict, str)


def test_decision_full_scan_witness():
    for p in range(-25, 29):
        assert isinstance(two_palindrome_decision(WITNESS, p), str)


def test_decision_finds_constructed():
    rng = random.Random(1)
    for _ in range(60):
        p = rng.randint(-5, 5)
        q = rng.randint(-5, 5)
        g = {}
        for _ in range(rng.randint(0, 3)):
            x = rng.randint(-4, 4)
            v = rng.randint(-3, 3)
            g[x] = g.get(x, 0) + v
            g[p - x] = g.get(p - x, 0) + (v if 2 * x != p else 0)
        h = {}
        for _ in range(rng.randint(0, 3)):
            x = rng.randint(-4, 4)
            v = rng.randint(-3, 3)
            h[x] = h.get(x, 0) + v
            h[q - x] = h.get(q - x, 0) + (v if 2 * x != q else 0)
        left = lamp_element({x: v for x, v in g.items() if v}, p)
        right = lamp_element({x: v for x, v in h.items() if v}, q)
        if not (is_palindromic_element(left) and is_palindromic_element(right)):
            continue
        target = multiply(left, right)
        verdict = two_palindrome_decision(target, p)
        assert isinstance(verdict, TwoPalDecomposition)
        l2, r2 = verdict.as_elements()
        assert multiply(l2, r2) == target
        assert is_palindromic_element(l2) and is_palindromic_element(r2)
        w1, w2 = verdict.words()
        assert evaluate_word(LAMP_CTX, w1 * w2) == target


def test_decision_cross_oracle():
    # 100 random small targets x a few centers: propagation agrees with an
    # independent exact linear solve on the same window.
    rng = random.Random(2)
    for _ in range(100):
        fn = {x: rng.randint(-2, 2) for x in range(rng.randint(-2, 0),
                                                   rng.randint(1, 3))}
        fn = {x: v for x, v in fn.items() if v}
        k = rng.randint(-3, 4)
        target = lamp_element(fn, k)
        p = rng.randint(-6, 6)
        verdict = two_palindrome_decision(target, p)
        lo, hi = _window(fn, k, p)
        oracle = _solve_window_fractions(fn, k, p, lo, hi)
        if isinstance(verdict, TwoPalDecomposition):
            assert oracle is not None
            assert {x: v for (x,), v in verdict.g.items()} == oracle
        else:
            assert oracle is None, (fn, k, p, oracle)


def test_certify_width_three_witness():
    witness = certify_width_three(WITNESS, scan_radius=25)
    assert witness.in_hypothesis
    assert witness.all_none
    assert witness.p_range == (-25, 28)
    assert witness.upper.count <= 3


def test_certify_out_of_hypothesis_still_runs():
    eq = lamp_element({0: 1, 1: 1}, 3)
    witness = certify_width_three(eq, scan_radius=6)
    assert not witness.in_hypothesis
    assert len(witness.verdicts) == 6 + 6 + 3 + 1


def test_certify_exploratory_shift_two():
    witness = certify_width_three(lamp_element({0: 1, 1: 2}, 2), scan_radius=8)
    assert not witness.in_hypothesis
    # cross-check every found/none verdict against the oracle count
    res = minimal_palindromic_length_bfs(lamp_element({0: 1, 1: 2}, 2), 7, 2)
    if witness.found():
        assert res.status == "exact" and res.minimal <= 2


def test_oracle_identity_and_single():
    assert minimal_palindromic_length_bfs(lamp_element({}, 0), 5, 3).minimal == 0
    assert minimal_palindromic_length_bfs(lamp_element({0: 1}, 0), 5, 3).minimal == 1


def test_oracle_witness_not_two():
    res = minimal_palindromic_length_bfs(WITNESS, 9, 2)
    assert res.status == "exceeds-max-factors"
    assert res.minimal is None


def test_oracle_consistent_with_decision():
    rng = random.Random(3)
    pals = enumerate_palindromes(7)
    for _ in range(25):
        w1, w2 = rng.choice(pals), rng.choice(pals)
        target = evaluate_word(LAMP_CTX, w1 * w2)
        res = minimal_palindromic_length_bfs(target, 7, 2)
        assert res.status == "exact" and res.minimal <= 2
        if res.minimal == 2:
            scan = certify_width_three(target)
            assert scan.found(), "decision scan missed a two-palindrome product"


def test_oracle_budget_guard():
    from palwidth import BudgetExceeded

    with pytest.raises(BudgetExceeded):
        minimal_palindromic_length_bfs(WITNESS, 7, 5, max_states=500)


def test_oracle_three_factors():
    # a three-palindrome product that no two short palindromes reproduce
    res = minimal_palindromic_length_bfs(WITNESS, 7, 4)
    assert res.status == "exact"
    assert res.minimal == 3
    assert evaluate_word(LAMP_CTX, concat(res.witness)) == WITNESS
