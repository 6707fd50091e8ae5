"""Palindromicity certificates for the integer lamplighter group Z wr Z.

Contains the symmetric-configuration characterization of one-palindrome
elements, an exact per-center decision procedure for two-palindrome
products, a scanning certifier, and an exhaustive minimal-length oracle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import BudgetExceeded, HypothesisViolation, VerificationError
from .lattice import LatticeFn
from .wreath import (IntegerGroup, WreathContext, WreathElement, evaluate_word,
                     invert, make_element, multiply)
from .wreath_factor import Factorization, factorize_wreath_z
from .words import Word, concat, power

LAMP_CTX = WreathContext(IntegerGroup(), 1)
A, T = 0, 1  # letter indices in the (a, t) alphabet


def _require_lamp(e: WreathElement) -> None:
    if e.ctx != LAMP_CTX:
        raise ValueError("expected an element of Z wr Z over (a, t)")


def lamp_element(fn: dict[int, int], shift: int) -> WreathElement:
    return make_element(LAMP_CTX, {(x,): v for x, v in fn.items()}, (shift,))


def is_palindromic_element(e: WreathElement) -> bool:
    """True iff the configuration is symmetric about shift/2."""
    _require_lamp(e)
    k = e.shift[0]
    return all(e.fn[(x,)] == e.fn[(k - x,)] for (x,) in e.fn.support())


def palindrome_for(e: WreathElement) -> Word:
    """One palindromic word for a symmetric element: walk to the leftmost
    relevant lamp, sweep right setting lamps, then walk to the shift."""
    _require_lamp(e)
    if not is_palindromic_element(e):
        raise HypothesisViolation("element configuration is not symmetric about shift/2")
    k = e.shift[0]
    support = [x for (x,) in e.fn.support()]
    lo = min([0, k] + support)
    hi = k - lo
    parts = [power(T, lo)]
    for x in range(lo, hi + 1):
        parts.append(power(A, e.fn[(x,)]))
        if x < hi:
            parts.append(power(T, 1))
    parts.append(power(T, lo))
    word = concat(parts)
    if not word.is_palindrome() or evaluate_word(LAMP_CTX, word) != e:
        raise VerificationError("palindrome construction failed verification")
    return word


@dataclass
class TwoPalDecomposition:
    """Verified solution target = (g, p) * (h, q) with both parts symmetric."""

    g: LatticeFn
    p: int
    h: LatticeFn
    q: int

    def as_elements(self) -> tuple[WreathElement, WreathElement]:
        return (WreathElement(LAMP_CTX, self.g, (self.p,)),
                WreathElement(LAMP_CTX, self.h, (self.q,)))

    def words(self) -> tuple[Word, Word]:
        left, right = self.as_elements()
        return palindrome_for(left), palindrome_for(right)


def _lamps(e: WreathElement) -> dict[int, int]:
    return {p[0]: v for p, v in e.fn.items()}


def _window(f: dict[int, int], k: int, p: int) -> tuple[int, int]:
    """Interval outside which every finitely supported solution vanishes.

    Base interval: min/max of {0, p, k, supp f} padded by |k| + 2.  For k != 0
    the solution is unique and its support lies within the reflection-chain
    bounds computed from where the propagation jumps can hit supp f; the
    window is the hull of both.
    """
    pts = [0, p, k] + list(f)
    lo, hi = min(pts) - abs(k) - 2, max(pts) + abs(k) + 2
    if f and k != 0:
        min_f, max_f = min(f), max(f)
        if k > 0:
            a = max(p - min_f, max_f - k)       # g support within [p - a, a]
            b = min(p + k - max_f, min_f + k)   # h0 support within [b, p + k - b]
            hull = [a, p - a, b, p + k - b]
        else:
            a = min(p - max_f, min_f - k)
            b = max(p + k - min_f, max_f + k)
            hull = [a, p - a, b, p + k - b]
        lo = min([lo] + [c - 2 for c in hull])
        hi = max([hi] + [c + 2 for c in hull])
    return lo, hi


def two_palindrome_decision(target: WreathElement, p: int
                            ) -> TwoPalDecomposition | str:
    """Exact decision for the given left shift p: a verified decomposition,
    or a contradiction trace string when none exists.

    Solves for g on a finite window with zero boundary; g must be symmetric
    about p/2 and h0 := f - g symmetric about (p + k)/2, where k is the
    target shift.  Outside the window any finitely supported solution is
    forced to vanish, so the procedure is complete as well as sound.
    """
    _require_lamp(target)
    f = _lamps(target)
    k = target.shift[0]
    q = k - p
    lo, hi = _window(f, k, p)
    window = range(lo, hi + 1)
    in_window = lambda x: lo <= x <= hi

    fval = lambda x: f.get(x, 0)
    g: dict[int, int] = {}

    def relations(x: int) -> list[tuple[int, int]]:
        # g(x) = g(p - x); g(x) = g(p + k - x) + (f(x) - f(p + k - x))
        return [(p - x, 0), (p + k - x, fval(x) - fval(p + k - x))]

    def set_value(x: int, value: int, note: str) -> str | None:
        if x in g:
            if g[x] != value:
                return f"p={p}: g({x}) forced to both {g[x]} and {value} ({note})"
            return None
        g[x] = value
        frontier.append(x)
        return None

    seen: set[int] = set()
    for start in window:
        if start in seen or start in g:
            seen.add(start)
            continue
        # Explore the constraint component of `start`.
        component = []
        stack = [start]
        comp_seen = set()
        anchored = False
        while stack:
            x = stack.pop()
            if x in comp_seen or not in_window(x):
                continue
            comp_seen.add(x)
            component.append(x)
            for y, _ in relations(x):
                if in_window(y):
                    stack.append(y)
                else:
                    anchored = True
        seen.update(comp_seen)
        frontier: list[int] = []
        if anchored:
            # Some relation exits the window; propagate zeros inward.
            for x in sorted(component):
                for y, delta in relations(x):
                    if not in_window(y):
                        # g(y) = 0 pinned, so g(x) = 0 + delta along that relation.
                        trace = set_value(x, delta, f"boundary via {y}")
                        if trace:
                            return trace
        if not any(x in g for x in component):
            # Closed component (only possible when k = 0): choose h0 = 0 there.
            x0 = min(component)
            trace = set_value(x0, fval(x0), "free component, h0 := 0")
            if trace:
                return trace
        while frontier:
            x = frontier.pop()
            base = g[x]
            for y, delta in relations(x):
                # g(x) = g(y) + delta
                if in_window(y):
                    trace = set_value(y, base - delta, f"from g({x})")
                    if trace:
                        return trace
                elif base - delta != 0:
                    return (f"p={p}: g({y}) = {base - delta} outside the window "
                            f"contradicts finite support")

    g_fn = LatticeFn(1, {(x,): v for x, v in g.items()})
    h0 = {x: fval(x) - g.get(x, 0) for x in set(f) | set(g)}
    # Verify both symmetries exactly before reporting success.
    for x in set(g) | {p - x for x in g}:
        if g.get(x, 0) != g.get(p - x, 0):
            return f"p={p}: solved g breaks its symmetry at {x}"
    for x in set(h0) | {p + k - x for x in h0}:
        if h0.get(x, 0) != h0.get(p + k - x, 0):
            return f"p={p}: residual h breaks its symmetry at {x}"
    h_fn = LatticeFn(1, {(x - p,): v for x, v in h0.items() if v})
    decomposition = TwoPalDecomposition(g_fn, p, h_fn, q)
    left, right = decomposition.as_elements()
    if multiply(left, right) != target:
        raise VerificationError("verified decomposition fails to multiply back")
    return decomposition


@dataclass
class TwoPalWitness:
    """Per-center verdict table plus the upper factorization certificate."""

    target: WreathElement
    p_range: tuple[int, int]
    verdicts: dict[int, TwoPalDecomposition | str]
    in_hypothesis: bool
    upper: Factorization

    @property
    def all_none(self) -> bool:
        return all(isinstance(v, str) for v in self.verdicts.values())

    def found(self) -> list[int]:
        return [p for p, v in self.verdicts.items()
                if isinstance(v, TwoPalDecomposition)]


def default_scan_radius(target: WreathElement) -> int:
    k = target.shift[0]
    return abs(k) + target.fn.box_radius() + 22


def certify_width_three(target: WreathElement,
                        scan_radius: int | None = None) -> TwoPalWitness:
    """Scan all centers p in [-P, P + |k|] and attach the <=3-factor upper bound."""
    _require_lamp(target)
    radius = default_scan_radius(target) if scan_radius is None else scan_radius
    k = target.shift[0]
    lo, hi = -radius, radius + abs(k)
    verdicts = {p: two_palindrome_decision(target, p) for p in range(lo, hi + 1)}
    f = _lamps(target)
    in_hypothesis = (set(f) == {0, 1} and f[0] != f[1] and k == 3)
    upper = factorize_wreath_z(target)
    return TwoPalWitness(target, (lo, hi), verdicts, in_hypothesis, upper)


def enumerate_palindromes(max_len: int) -> list[Word]:
    """All nonempty palindromes over (a, t) of length <= max_len, shortest first.

    A palindrome is its first ceil(L/2) letters mirrored, so each length-L
    word comes from a free choice of half letters.
    """
    alphabet = [(A, 1), (A, -1), (T, 1), (T, -1)]
    out: list[Word] = []
    for length in range(1, max_len + 1):
        half = (length + 1) // 2
        for prefix in itertools.product(alphabet, repeat=half):
            mirror = prefix[:length - half][::-1]
            out.append(Word(prefix + mirror))
    return out


@dataclass
class OracleResult:
    status: str  # "exact" | "exceeds-max-factors" | "budget-exceeded"
    minimal: int | None
    palindromes: int = 0
    states: int = 0
    witness: list[Word] = field(default_factory=list)


def minimal_palindromic_length_bfs(target: WreathElement, max_len: int,
                                   max_factors: int,
                                   max_states: int = 2_000_000) -> OracleResult:
    """Exact minimum number of palindromes of length <= max_len multiplying to
    the target, or the reason none was found within the budget."""
    _require_lamp(target)
    if target.is_identity():
        return OracleResult("exact", 0)

    words = enumerate_palindromes(max_len)
    if not words:
        return OracleResult("exceeds-max-factors", None)
    elements: dict[tuple, tuple[WreathElement, Word]] = {}
    for w in words:
        e = evaluate_word(LAMP_CTX, w)
        if e.is_identity():
            continue
        elements.setdefault(e.frozen(), (e, w))
    singles = list(elements.values())

    if max_factors >= 1 and target.frozen() in elements:
        return OracleResult("exact", 1, palindromes=len(elements),
                            witness=[elements[target.frozen()][1]])
    if max_factors >= 2:
        for e, w in singles:
            rest = multiply(invert(e), target)
            hit = elements.get(rest.frozen())
            if hit is not None:
                return OracleResult("exact", 2, palindromes=len(elements),
                                    witness=[w, hit[1]])

    # Depth >= 3: breadth-first layers over right multiplication by single
    # palindromes; first visit gives the minimal factor count, and depth d is
    # tested by dividing one palindrome off the right of the target.
    layer: dict[tuple, list[Word]] = {key: [w] for key, (_, w) in elements.items()}
    layer_elems = {key: e for key, (e, _) in elements.items()}
    visited: set[tuple] = set(layer)
    states = len(layer)
    for depth in range(3, max_factors + 1):
        # Grow the depth-1 layer: L_{depth-1} = L_{depth-2} * singles, new only.
        new_layer: dict[tuple, list[Word]] = {}
        new_elems: dict[tuple, WreathElement] = {}
        for key, ws in layer.items():
            left = layer_elems[key]
            for e, w in singles:
                prod = multiply(left, e)
                pkey = prod.frozen()
                if pkey in visited or pkey in new_layer or prod.is_identity():
                    continue
                new_layer[pkey] = ws + [w]
                new_elems[pkey] = prod
                states += 1
                if states > max_states:
                    raise BudgetExceeded(
                        f"state budget {max_states} exceeded at depth {depth}")
        visited.update(new_layer)
        layer, layer_elems = new_layer, new_elems
        for e, w in singles:
            rest = multiply(target, invert(e))
            hit = layer.get(rest.frozen())
            if hit is not None:
                return OracleResult("exact", depth, palindromes=len(elements),
                                    states=states, witness=hit + [w])
    return OracleResult("exceeds-max-factors", None, palindromes=len(elements),
                        states=states)
