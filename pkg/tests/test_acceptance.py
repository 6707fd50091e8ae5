"""Acceptance criteria, one test per criterion.

Each test prints a PASS line with its runtime; run with `pytest -s` to see
them.  All checks are exact: no tolerances anywhere.
"""

import random
import subprocess
import sys
import time

from palwidth import (CyclicGroup, IntegerGroup, Word, WreathContext, concat,
                      enumerate_palindromes, evaluate_word, evaluate_word_flow,
                      factorize_metabelian, factorize_wreath, factorize_wreath_z,
                      lamp_element, lattice_word, minimal_palindromic_length_bfs,
                      multiply, skew_split_fixed_centers, skew_split_grid,
                      skew_split_half, two_palindrome_decision,
                      TwoPalDecomposition)
from palwidth.lamplighter import LAMP_CTX, default_scan_radius

from gens import (grid_zero, random_flow_element, random_wreath_element,
                  random_word, zero_sum)

WITNESS = lamp_element({0: 1, 1: 2}, 3)


def _report(name: str, started: float, budget: float) -> None:
    elapsed = time.time() - started
    print(f"ACCEPTANCE {name}: PASS ({elapsed:.2f}s, budget {budget:.0f}s)")
    assert elapsed < budget, f"{name} exceeded its runtime budget"


def test_criterion_1_worked_example_bit_exact():
    started = time.time()
    proc = subprocess.run([sys.executable, "-m", "palwidth.cli", "demo-paper"],
                          capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    lines = proc.stdout.splitlines()
    assert ("g(x)  |   0  -2  -2   1   0   4  -1  -2  -1   4   0   1  -2  -2   0"
            in lines)
    assert ("h(x)  |   0   2   2   2  -1   0   1   2   2   1   0  -1   2   2   2"
            in lines)
    assert ("w_g = t^-6a^-2ta^-2tat^2a^4ta^-1ta^-2ta^-1ta^4t^2ata^-2ta^-2t^-6"
            in lines)
    assert ("w_h = t^-6a^2ta^2ta^2ta^-1t^2ata^2ta^2tat^2a^-1ta^2ta^2ta^2t^-6"
            in lines)
    assert "w_g evaluates to (g, 0): ok" in lines
    assert "w_h evaluates to (h, 1): ok" in lines
    assert "w_g w_h tail evaluates to (f, 7): ok" in lines
    _report("1 (worked example)", started, 1.0)


def test_criterion_2_rank1_refinement():
    started = time.time()
    rng = random.Random(0)
    values = [v for v in range(-9, 10) if v]
    for _ in range(1000):
        e = random_wreath_element(rng, LAMP_CTX, 8, values, 8, max_points=10)
        fact = factorize_wreath_z(e)
        assert fact.count <= 3
        for w in fact.factors:
            assert w.is_palindrome()
        assert evaluate_word(LAMP_CTX, concat(fact.factors)) == e
    _report("2 (rank-1, 1000 elements, <= 3 factors)", started, 5.0)


def test_criterion_3_general_wreath():
    started = time.time()
    rng = random.Random(1)
    cases = [
        (WreathContext(IntegerGroup(), 2), [v for v in range(-9, 10) if v]),
        (WreathContext(IntegerGroup(), 3), [v for v in range(-9, 10) if v]),
        (WreathContext(CyclicGroup(3), 2), [1, 2]),
    ]
    for ctx, values in cases:
        bound = 3 * ctx.r + 1
        for _ in range(200):
            e = random_wreath_element(rng, ctx, 3, values, 3, max_points=8)
            fact = factorize_wreath(e)
            assert fact.count <= bound
            for w in fact.factors:
                assert w.is_palindrome()
            assert evaluate_word(ctx, concat(fact.factors)) == e
    _report("3 (general wreath, 600 elements)", started, 30.0)


def test_criterion_4_width_three_lower_bound():
    started = time.time()
    for p in range(-25, 29):
        verdict = two_palindrome_decision(WITNESS, p)
        assert isinstance(verdict, str), f"decomposition found at p={p}"
    result = minimal_palindromic_length_bfs(WITNESS, 9, 2)
    assert result.status == "exceeds-max-factors"
    assert result.minimal is None
    _report("4 (width-3 witness: p scan + oracle)", started, 120.0)


def test_criterion_5_skew_suite():
    started = time.time()
    rng = random.Random(2)
    for _ in range(500):
        r = rng.randint(1, 3)
        f = zero_sum(rng, r, 4, 6)
        two_p = tuple(rng.randint(-3, 3) for _ in range(r))
        pieces = skew_split_half(f, two_p)  # sums + predicates verified inside
        assert len(pieces) == r + 1
    for _ in range(500):
        r = rng.randint(1, 3)
        f = grid_zero(rng, r, 4, 6)
        p = tuple(rng.randint(-3, 3) for _ in range(r))
        assert len(skew_split_grid(f, p)) == r + 1
        two_c = tuple(rng.randint(-3, 3) for _ in range(r))
        assert len(skew_split_fixed_centers(f, two_c)) == r + 1
    _report("5 (skew suite, 500 + 500)", started, 30.0)


def test_criterion_6_metabelian():
    started = time.time()
    rng = random.Random(3)
    counts = {2: [], 3: []}
    for r, trials, bound in ((2, 200, 93), (3, 50, 445)):
        for _ in range(trials):
            e = random_flow_element(rng, r, 4, 3, 4, points_per_pair=5)
            fact = factorize_metabelian(e)
            assert fact.count <= bound
            for w in fact.factors:
                assert w.is_palindrome()
            assert evaluate_word_flow(r, concat(fact.factors)) == e
            counts[r].append(fact.count)
    print(f"  realized counts: r=2 max {max(counts[2])}, r=3 max {max(counts[3])}")
    _report("6 (metabelian, 200 + 50 elements)", started, 120.0)


def test_criterion_7_flow_soundness():
    started = time.time()
    rng = random.Random(4)
    for _ in range(1000):
        r = rng.randint(2, 3)
        prefix = random_word(rng, r, 6)
        suffix = random_word(rng, r, 6)
        u = lattice_word(r, tuple(rng.randint(-2, 2) for _ in range(r)))
        v = lattice_word(r, tuple(rng.randint(-2, 2) for _ in range(r)))
        i1, j1 = sorted(rng.sample(range(r), 2))
        i2, j2 = sorted(rng.sample(range(r), 2))
        rho1 = Word(((i1, 1), (j1, 1), (i1, -1), (j1, -1)))
        rho2 = Word(((i2, 1), (j2, 1), (i2, -1), (j2, -1)))
        left = u * rho1 * u.invert() * v * rho2 * v.invert()
        right = v * rho2 * v.invert() * u * rho1 * u.invert()
        w = prefix * left * suffix
        # free insertion plus the commuted rearrangement
        cut = rng.randint(0, len(prefix))
        g = rng.randrange(r)
        insertion = Word(((g, 1), (g, -1)))
        w_prime = (Word(prefix.letters[:cut]) * insertion *
                   Word(prefix.letters[cut:]) * right * suffix)
        assert evaluate_word_flow(r, w) == evaluate_word_flow(r, w_prime)
    checked = 0
    while checked < 1000:
        r = 3
        a = tuple(rng.randint(-5, 5) for _ in range(r))
        b = tuple(rng.randint(-5, 5) for _ in range(r))
        if a == b:
            continue
        ea = evaluate_word_flow(r, lattice_word(r, a))
        eb = evaluate_word_flow(r, lattice_word(r, b))
        assert ea != eb
        checked += 1
    _report("7 (flow soundness, 1000 + 1000)", started, 30.0)


def test_criterion_8_rewrites():
    started = time.time()
    from palwidth import commutator_three_palindromes, conjugate_factorization, free_equal

    rng = random.Random(5)
    for _ in range(500):
        g = random_word(rng, 3, 8)
        b = Word(((rng.randrange(3), rng.choice((1, -1))),))
        out = commutator_three_palindromes(g, b)
        assert len(out.factors) == 3
        assert all(w.is_palindrome() for w in out.factors)
        assert free_equal(concat(out.factors), g * b * g.invert() * b.invert())
    for _ in range(500):
        h = random_word(rng, 3, 6)
        factors = []
        for _ in range(rng.randint(0, 6)):
            half = random_word(rng, 3, 3)
            middle = random_word(rng, 3, 1)
            factors.append(half * middle * half.reverse())
        out = conjugate_factorization(h, factors)
        assert all(w.is_palindrome() for w in out.factors)
        assert out.count <= len(factors) + 1
        assert free_equal(concat(out.factors), h * concat(factors) * h.invert())
    _report("8 (rewrites, 500 + 500)", started, 10.0)


def test_criterion_9_oracle_consistency():
    started = time.time()
    rng = random.Random(6)
    palindromes = enumerate_palindromes(7)
    for _ in range(50):
        w1, w2 = rng.choice(palindromes), rng.choice(palindromes)
        target = evaluate_word(LAMP_CTX, w1 * w2)
        p = evaluate_word(LAMP_CTX, w1).shift[0]
        radius = default_scan_radius(target)
        k = target.shift[0]
        assert -radius <= p <= radius + abs(k), "construction fell outside the scan"
        verdict = two_palindrome_decision(target, p)
        assert isinstance(verdict, TwoPalDecomposition)
        left, right = verdict.as_elements()
        assert multiply(left, right) == target
        result = minimal_palindromic_length_bfs(target, 7, 2)
        assert result.status == "exact" and result.minimal <= 2
    _report("9 (oracle consistency, 50 products)", started, 300.0)
