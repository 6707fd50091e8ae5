"""Exact arithmetic in the free metabelian group of rank r via edge flows.

An element is a shift vector (its abelianization) plus a finitely supported
integer flow on the grid graph of Z^r, with divergence +1 at the origin and
-1 at the shift.  Words over x_1..x_r evaluate by tracing their path; two
words are equal in the group exactly when their flows agree.  Shift-zero
elements (the derived subgroup) convert to and from commutator-power
coefficient functions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import VerificationError
from .lattice import LatticeFn, Point, zero_fn
from .words import Alphabet, Word, concat, power

Edge = tuple[Point, int]  # (tail point, 0-based axis)


def free_alphabet(r: int) -> Alphabet:
    return Alphabet(tuple(f"x{i}" for i in range(1, r + 1)))


@dataclass(frozen=True)
class FlowElement:
    """Shift vector plus sparse edge flow; equality is componentwise."""

    r: int
    shift: Point
    edges: dict[Edge, int]

    def __post_init__(self) -> None:
        _check_divergence(self.r, self.shift, self.edges)

    def is_identity(self) -> bool:
        return not self.edges and all(c == 0 for c in self.shift)

    def frozen(self) -> tuple:
        return (self.shift, tuple(sorted(self.edges.items())))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FlowElement):
            return NotImplemented
        return (self.r == other.r and self.shift == other.shift
                and self.edges == other.edges)


def _check_divergence(r: int, shift: Point, edges: dict[Edge, int]) -> None:
    """Net outflow must be +1 at the origin, -1 at the shift, 0 elsewhere."""
    div: dict[Point, int] = {}
    for (point, axis), value in edges.items():
        if not 0 <= axis < r or len(point) != r:
            raise ValueError(f"bad edge {(point, axis)} for rank {r}")
        div[point] = div.get(point, 0) + value
        head = tuple(c + (1 if j == axis else 0) for j, c in enumerate(point))
        div[head] = div.get(head, 0) - value
    origin = (0,) * r
    for point in set(div) | {origin, tuple(shift)}:
        expected = (point == origin) - (point == tuple(shift))
        if div.get(point, 0) != expected:
            raise VerificationError(f"divergence at {point} is {div.get(point, 0)}, "
                                    f"expected {expected}")


def identity_flow(r: int) -> FlowElement:
    return FlowElement(r, (0,) * r, {})


def _clean(edges: dict[Edge, int]) -> dict[Edge, int]:
    return {e: v for e, v in edges.items() if v}


def evaluate_word_flow(r: int, word: Word) -> FlowElement:
    """Trace the word's path from the origin, counting signed edge passages."""
    edges: dict[Edge, int] = {}
    pos = [0] * r
    for gen, sign in word.letters:
        if not 0 <= gen < r:
            raise ValueError(f"letter index {gen} outside rank-{r} alphabet")
        if sign > 0:
            key = (tuple(pos), gen)
            edges[key] = edges.get(key, 0) + 1
            pos[gen] += 1
        else:
            pos[gen] -= 1
            key = (tuple(pos), gen)
            edges[key] = edges.get(key, 0) - 1
    return FlowElement(r, tuple(pos), _clean(edges))


def multiply_flow(a: FlowElement, b: FlowElement) -> FlowElement:
    """Concatenation of flows: b is translated by a's shift, then added."""
    if a.r != b.r:
        raise ValueError("rank mismatch")
    edges = dict(a.edges)
    for (point, axis), value in b.edges.items():
        key = (tuple(c + s for c, s in zip(point, a.shift)), axis)
        edges[key] = edges.get(key, 0) + value
    shift = tuple(x + y for x, y in zip(a.shift, b.shift))
    return FlowElement(a.r, shift, _clean(edges))


def invert_flow(a: FlowElement) -> FlowElement:
    neg = tuple(-c for c in a.shift)
    edges = {(tuple(c + n for c, n in zip(point, neg)), axis): -value
             for (point, axis), value in a.edges.items()}
    return FlowElement(a.r, neg, edges)


def product_flow(r: int, elements: Iterable[FlowElement]) -> FlowElement:
    out = identity_flow(r)
    for e in elements:
        out = multiply_flow(out, e)
    return out


# ---------------------------------------------------------------------------
# commutator-power coefficients
# ---------------------------------------------------------------------------

Pair = tuple[int, int]  # 0-based axis pair (i, j), i < j


@dataclass
class SquareCoeffs:
    """Integer coefficient function per commutator [x_i, x_j] (axes 0-based)."""

    r: int
    coeffs: dict[Pair, LatticeFn]

    def __post_init__(self) -> None:
        for (i, j), fn in list(self.coeffs.items()):
            if not 0 <= i < j < self.r:
                raise ValueError(f"bad axis pair {(i, j)} for rank {self.r}")
            if fn.is_zero():
                del self.coeffs[(i, j)]

    def pairs(self) -> list[Pair]:
        return sorted(self.coeffs)

    def get(self, pair: Pair) -> LatticeFn:
        return self.coeffs.get(pair, zero_fn(self.r))

    def is_zero(self) -> bool:
        return not self.coeffs


def square_flow(r: int, pair: Pair, at: Point, value: int) -> dict[Edge, int]:
    """Edge flow of [x_i, x_j]^value conjugated to the point `at`."""
    i, j = pair
    ei = tuple(1 if k == i else 0 for k in range(r))
    at = tuple(at)
    return _clean({
        (at, i): value,
        (tuple(a + e for a, e in zip(at, ei)), j): value,
        (tuple(a + (1 if k == j else 0) for k, a in enumerate(at)), i): -value,
        (at, j): -value,
    })


def squares_to_element(c: SquareCoeffs) -> FlowElement:
    """Sum of shifted commutator flows; always a shift-zero element."""
    edges: dict[Edge, int] = {}
    for pair in c.pairs():
        for point, value in c.coeffs[pair].items():
            for edge, v in square_flow(c.r, pair, point, value).items():
                edges[edge] = edges.get(edge, 0) + v
    return FlowElement(c.r, (0,) * c.r, _clean(edges))


def circulation_to_squares(h: FlowElement) -> SquareCoeffs:
    """One concrete coefficient choice for a shift-zero element.

    Axes are peeled from the top down.  For the current top axis j, every
    axis-i edge column (i < j) is telescoped along e_j by squares on the
    pair (i, j): above height zero f(y) = -sum_{t>y} E(t), below it
    f(y) = sum_{t<=y} E(t).  Subtracting the implied square flows moves all
    remaining axis-i edges into the height-zero hyperplane and, because the
    residual stays divergence free, wipes out the axis-j edges entirely;
    the residual is then a flow of one rank lower and the peel repeats.
    The final residual must be the identity, which is asserted.
    """
    if any(c != 0 for c in h.shift):
        raise ValueError(f"nonzero shift {h.shift}: not in the derived subgroup")
    r = h.r
    coeffs: dict[Pair, LatticeFn] = {}
    residual = h
    for j in range(r - 1, 0, -1):
        batch: dict[Pair, LatticeFn] = {}
        for i in range(j):
            columns: dict[tuple, dict[int, int]] = {}
            for (point, axis), value in residual.edges.items():
                if axis != i:
                    continue
                key = point[:j] + point[j + 1:]
                columns.setdefault(key, {})[point[j]] = value
            table: dict[Point, int] = {}
            for key, col in columns.items():
                heights = sorted(col)
                acc = 0
                for y in range(heights[-1] - 1, -1, -1):
                    acc += col.get(y + 1, 0)
                    if acc:
                        table[key[:j] + (y,) + key[j:]] = -acc
                acc = 0
                for y in range(heights[0], 0):
                    acc += col.get(y, 0)
                    if acc:
                        table[key[:j] + (y,) + key[j:]] = acc
            if table:
                batch[(i, j)] = LatticeFn(r, table)
        if batch:
            implied = squares_to_element(SquareCoeffs(r, dict(batch)))
            residual = multiply_flow(residual, invert_flow(implied))
            coeffs.update(batch)
        for (point, axis) in residual.edges:
            if axis >= j or point[j] != 0:
                raise VerificationError(
                    f"peeling axis {j + 1} left the edge {(point, axis)} behind")
    if residual.edges:
        raise VerificationError("rank-1 residual flow is nonzero")
    result = SquareCoeffs(r, coeffs)
    if squares_to_element(result) != h:
        raise VerificationError("coefficient extraction does not reproduce the flow")
    return result


def lattice_word(r: int, point: Point) -> Word:
    """Canonical monomial x_1^(u_1) ... x_r^(u_r) for a lattice point."""
    return concat([power(axis, exp) for axis, exp in enumerate(point)])


def squares_word(c: SquareCoeffs) -> Word:
    """Word spelling every u [x_i,x_j]^f(u) u^-1 with canonical monomials."""
    parts: list[Word] = []
    for pair in c.pairs():
        i, j = pair
        rho = Word(((i, 1), (j, 1), (i, -1), (j, -1)))
        for point, value in c.coeffs[pair].items():
            m = lattice_word(c.r, point)
            core = concat([rho] * value) if value > 0 else concat(
                [rho.invert()] * (-value))
            parts.append(m * core * m.invert())
    return concat(parts)


def element_to_word(h: FlowElement) -> Word:
    """A word re-evaluating to h: commutator spelling of the circulation part
    followed by the canonical shift monomial."""
    shift_word = lattice_word(h.r, h.shift)
    circulation = multiply_flow(h, invert_flow(evaluate_word_flow(h.r, shift_word)))
    word = squares_word(circulation_to_squares(circulation)) * shift_word
    if evaluate_word_flow(h.r, word) != h:
        raise VerificationError("word construction does not re-evaluate to the element")
    return word


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def flow_to_json(e: FlowElement) -> dict:
    return {
        "r": e.r,
        "shift": list(e.shift),
        "edges": [{"pos": list(point), "axis": axis + 1, "val": value}
                  for (point, axis), value in sorted(e.edges.items())],
    }


def flow_from_json(data: dict) -> FlowElement:
    r = int(data["r"])
    edges = {(tuple(int(c) for c in item["pos"]), int(item["axis"]) - 1):
             int(item["val"]) for item in data["edges"]}
    return FlowElement(r, tuple(int(c) for c in data["shift"]), _clean(edges))
