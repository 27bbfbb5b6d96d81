"""Affine Weyl group elements as words, the dot action, and bounded
enumeration of the alternating orbit terms.

The dot action is w . lambda = w(lambda + rho) - (lambda + rho); for lambda
dominant it lands in -Q_+, and every alternating sum in the character theory
runs over the shifts xi_w = -(w . lambda).  For lambda + rho strictly
dominant the shift height is strictly monotone along reduced words, which
makes a breadth-first expansion with a height cap both complete and finite:
a branch whose height already exceeds the cap can never come back.

Group elements are identified by their shift vectors (equivalently by the
images w(lambda + rho)); for a regular weight these are pairwise distinct,
so no normal-form computation is needed.
"""

from __future__ import annotations

from dataclasses import dataclass

from .rootdata import RootDatum, RootVec, Weight


class NotRegularDominant(ValueError):
    """lambda + rho must pair strictly positively with every coroot."""


@dataclass(frozen=True)
class WeylElement:
    """A reduced word in the simple reflections (index list into I)."""

    word: tuple[int, ...] = ()

    @property
    def length(self) -> int:
        return len(self.word)

    @property
    def sign(self) -> int:
        return -1 if len(self.word) % 2 else 1


def apply_word(datum: RootDatum, word: tuple[int, ...], w: Weight) -> Weight:
    """s_{word[0]} s_{word[1]} ... applied to a weight (rightmost acts first)."""
    for i in reversed(word):
        w = datum.reflect_weight(w, i)
    return w


def dot_action(datum: RootDatum, element: WeylElement | tuple[int, ...], lam: Weight) -> RootVec:
    """w . lambda = w(lambda+rho) - (lambda+rho), in root coordinates.

    Tracked exactly: each reflection s_i subtracts <mu, h_i> alpha_i, so the
    accumulated coefficients are the root coordinates of the shift.  For
    dominant lambda the result lies in -Q_+.
    """
    word = element.word if isinstance(element, WeylElement) else tuple(element)
    mu = lam + datum.rho
    shift = [0] * (datum.rank + 1)
    for i in reversed(word):
        c = mu.levels[i]
        if c:
            mu = datum.reflect_weight(mu, i)
            shift[i] -= c
    return tuple(shift)


def enumerate_dot_terms(
    datum: RootDatum,
    lam: Weight,
    height_cap: int | None,
    letters: tuple[int, ...] | None = None,
) -> list[tuple[int, RootVec]]:
    """All pairs (sign(w), -(w . lambda)) with height(-(w . lambda)) <= cap,
    each group element exactly once, sorted by (height, coordinates).

    BFS over right multiplication by simple reflections; only ascents are
    expanded (a descent revisits a shorter element).  Monotonicity of the
    shift height along every accepted edge is asserted at runtime.  With
    letters restricted to a finite-type subset the cap may be None, in which
    case the finite group is enumerated exhaustively.
    """
    mu0 = lam + datum.rho
    active = tuple(datum.index_set) if letters is None else tuple(letters)
    if any(mu0.levels[i] <= 0 for i in active):
        raise NotRegularDominant(f"lambda + rho = {mu0.levels} is not strictly dominant")
    if height_cap is None and letters is None:
        raise ValueError("unbounded enumeration needs a finite-type letter subset")

    zero = (0,) * (datum.rank + 1)
    visited = {zero}
    out: list[tuple[int, RootVec]] = [(1, zero)]
    frontier: list[tuple[tuple[int, ...], tuple[int, ...]]] = [(zero, mu0.levels)]
    sign = 1
    while frontier:
        sign = -sign
        nxt = []
        for shift, levels in frontier:
            h = -sum(shift)
            for i in active:
                c = levels[i]
                if c <= 0:
                    # c < 0 is a descent (already visited); c == 0 cannot
                    # happen on the orbit of a regular weight
                    if c == 0:
                        raise AssertionError("regular orbit touched a wall")
                    continue
                new_shift = list(shift)
                new_shift[i] -= c
                new_height = h + c
                if new_height <= (height_cap if height_cap is not None else new_height):
                    t = tuple(new_shift)
                    if t not in visited:
                        if new_height <= h:
                            raise AssertionError("dot-shift height failed to increase on an ascent")
                        visited.add(t)
                        col = tuple(datum.cartan[j][i] for j in datum.index_set)
                        new_levels = tuple(a - c * b for a, b in zip(levels, col))
                        nxt.append((t, new_levels))
                        out.append((sign, tuple(-s for s in t)))
        frontier = nxt
    out.sort(key=lambda sv: (sum(sv[1]), sv[1]))
    return out
