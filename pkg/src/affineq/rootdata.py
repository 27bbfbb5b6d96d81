"""Untwisted affine Cartan data of simply-laced type and explicit root/weight
coordinates.

Roots live in the simple-root basis as plain int tuples (c_0, ..., c_n):
coordinate 0 belongs to the affine node, so c_0 is both the delta-degree and
the pairing with the scaling element d.  Weights live in the fundamental
weight basis as a tuple of integer pairings <lambda, h_i> plus a rational
delta coefficient; the bridge between the two is

    alpha_i  =  sum_j A[j][i] Lambda_j  +  (delta if i == 0 else 0).

Shipped types: A_n^(1) (n >= 1), D_n^(1) (n >= 4), E_6^(1), E_7^(1), E_8^(1),
written A1~1, D4~1, E8~1 ... in ASCII.  The classical subalgebra must be
simply-laced because the exponent table (used by the correction factor) is
only shipped for A, D, E.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

RootVec = tuple[int, ...]


class UnsupportedType(ValueError):
    """Affine type label outside the shipped simply-laced table."""


class NotReduced(ValueError):
    """The configured word fails the reducedness (positivity) check."""


def height(v: RootVec) -> int:
    return sum(v)

def delta_degree(v: RootVec) -> int:
    return v[0]

def classical_height(v: RootVec) -> int:
    return sum(v[1:])

def in_positive_lattice(v: RootVec) -> bool:
    return all(c >= 0 for c in v)


def _classical_exponents(family: str, n: int) -> tuple[int, ...]:
    if family == "A":
        return tuple(range(1, n + 1))
    if family == "D":
        return tuple(sorted(list(range(1, 2 * n - 2, 2)) + [n - 1]))
    if family == "E":
        return {
            6: (1, 4, 5, 7, 8, 11),
            7: (1, 5, 7, 9, 11, 13, 17),
            8: (1, 7, 11, 13, 17, 19, 23, 29),
        }[n]
    raise UnsupportedType(family)


def _edges_and_marks(family: str, n: int) -> tuple[list[tuple[int, int]], list[int]]:
    """Dynkin diagram edges over nodes 0..n and the marks a_i (delta = sum a_i alpha_i)."""
    if family == "A":
        if n == 1:
            return [], [1, 1]  # double bond handled specially in the Cartan matrix
        return [(i, i + 1) for i in range(n)] + [(n, 0)], [1] * (n + 1)
    if family == "D":
        edges = [(i, i + 1) for i in range(1, n - 2)]
        edges += [(n - 2, n - 1), (n - 2, n), (0, 2)]
        marks = [1, 1] + [2] * (n - 3) + [1, 1]
        return edges, marks
    if family == "E":
        chain = [(1, 3), (3, 4), (4, 5), (5, 6)]
        if n == 6:
            edges = chain + [(2, 4), (0, 2)]
            marks = [1, 1, 2, 2, 3, 2, 1]
        elif n == 7:
            edges = chain + [(6, 7), (2, 4), (0, 1)]
            marks = [1, 2, 2, 3, 4, 3, 2, 1]
        else:
            edges = chain + [(6, 7), (7, 8), (2, 4), (0, 8)]
            marks = [1, 2, 3, 4, 6, 5, 4, 3, 2]
        return edges, marks
    raise UnsupportedType(family)


@dataclass(frozen=True)
class Weight:
    """Integer pairings <lambda, h_i> for i in I, plus the delta coefficient."""

    levels: tuple[int, ...]
    delta: Fraction = Fraction(0)

    def is_dominant(self) -> bool:
        return all(c >= 0 for c in self.levels)

    def is_regular_dominant(self) -> bool:
        return all(c > 0 for c in self.levels)

    def __add__(self, other: Weight) -> Weight:
        return Weight(
            tuple(a + b for a, b in zip(self.levels, other.levels)),
            self.delta + other.delta,
        )

    def __sub__(self, other: Weight) -> Weight:
        return Weight(
            tuple(a - b for a, b in zip(self.levels, other.levels)),
            self.delta - other.delta,
        )


@dataclass(frozen=True)
class RootDatum:
    label: str
    rank: int                                 # classical rank n; |I| = n + 1
    cartan: tuple[tuple[int, ...], ...]        # A[i][j] = <alpha_j, h_i>
    marks: tuple[int, ...]                     # a_i with delta = sum a_i alpha_i
    classical_positive_roots: tuple[RootVec, ...]
    exponents: tuple[int, ...]

    @property
    def index_set(self) -> range:
        return range(self.rank + 1)

    @property
    def delta(self) -> RootVec:
        return self.marks

    @property
    def num_classical_positive(self) -> int:
        return len(self.classical_positive_roots)

    @property
    def classical_dimension(self) -> int:
        return 2 * len(self.classical_positive_roots) + self.rank

    def simple_root(self, i: int) -> RootVec:
        e = [0] * (self.rank + 1)
        e[i] = 1
        return tuple(e)

    # -- root-coordinate action ---------------------------------------------

    def pairing_with_coroot(self, v: RootVec, i: int) -> int:
        """<v, h_i> for v in the root lattice."""
        row = self.cartan[i]
        return sum(row[j] * c for j, c in enumerate(v) if c)

    def reflect_root(self, v: RootVec, i: int) -> RootVec:
        c = self.pairing_with_coroot(v, i)
        if not c:
            return v
        out = list(v)
        out[i] -= c
        return tuple(out)

    def sym_form(self, v: RootVec, w: RootVec) -> int:
        """Invariant bilinear form on the root lattice, (alpha_i,alpha_j)=A[i][j]
        in the simply-laced normalization (all real roots of square length 2)."""
        total = 0
        for i, a in enumerate(v):
            if a:
                row = self.cartan[i]
                total += a * sum(row[j] * b for j, b in enumerate(w) if b)
        return total

    # -- weight coordinates --------------------------------------------------

    def weight(self, levels, delta: Fraction | int = 0) -> Weight:
        levels = tuple(int(c) for c in levels)
        if len(levels) != self.rank + 1:
            raise ValueError("levels must cover the full index set")
        return Weight(levels, Fraction(delta))

    def fundamental_weight(self, i: int) -> Weight:
        return Weight(tuple(1 if j == i else 0 for j in self.index_set))

    @property
    def rho(self) -> Weight:
        """The Weyl vector: <rho, h_i> = 1 for all i, rho(d) = 0."""
        return Weight((1,) * (self.rank + 1))

    def root_as_weight(self, v: RootVec) -> Weight:
        levels = tuple(self.pairing_with_coroot(v, i) for i in self.index_set)
        return Weight(levels, Fraction(v[0]))

    def reflect_weight(self, w: Weight, i: int) -> Weight:
        c = w.levels[i]
        if not c:
            return w
        col = tuple(self.cartan[j][i] for j in self.index_set)
        levels = tuple(a - c * b for a, b in zip(w.levels, col))
        return Weight(levels, (w.delta - c) if i == 0 else w.delta)

    def weight_form(self, w: Weight, v: RootVec) -> int:
        """(lambda, v) for v in the root lattice; the delta coefficient of
        lambda drops out because (delta, alpha_i) = 0."""
        return sum(a * b for a, b in zip(w.levels, v))

    def level(self, w: Weight) -> int:
        """(lambda, delta) = sum a_i <lambda, h_i>, the central charge."""
        return sum(a * b for a, b in zip(w.levels, self.marks))


@lru_cache(maxsize=None)
def build_root_datum(label: str) -> RootDatum:
    """Construct the datum for an ASCII label like A1~1, A2~1, D4~1, E8~1.

    The Cartan matrix is validated against its null vector (A . marks = 0)
    and the exponent table against the positive-root count.
    """
    m = re.fullmatch(r"([A-Z])(\d+)~1", label.strip())
    if not m:
        raise UnsupportedType(f"cannot parse affine type label {label!r}")
    family, n = m.group(1), int(m.group(2))
    if family == "A" and n >= 1:
        pass
    elif family == "D" and n >= 4:
        pass
    elif family == "E" and n in (6, 7, 8):
        pass
    else:
        raise UnsupportedType(f"unsupported affine type {label!r} (shipped: A/D/E simply-laced)")

    edges, marks = _edges_and_marks(family, n)
    size = n + 1
    cartan = [[0] * size for _ in range(size)]
    for i in range(size):
        cartan[i][i] = 2
    if family == "A" and n == 1:
        cartan[0][1] = cartan[1][0] = -2
    else:
        for i, j in edges:
            cartan[i][j] = cartan[j][i] = -1
    for i in range(size):
        if sum(cartan[i][j] * marks[j] for j in range(size)) != 0:
            raise AssertionError(f"marks are not the null vector of the Cartan matrix for {label}")

    cartan_t = tuple(tuple(row) for row in cartan)
    datum = RootDatum(label, n, cartan_t, tuple(marks), (), _classical_exponents(family, n))
    positives = _classical_positive_closure(datum)
    datum = RootDatum(label, n, cartan_t, tuple(marks), positives, datum.exponents)
    if sum(datum.exponents) != len(positives):
        raise AssertionError(f"exponent table inconsistent with root count for {label}")
    return datum


def _classical_positive_closure(datum: RootDatum) -> tuple[RootVec, ...]:
    """All classical positive roots, by closure of the simple ones under the
    classical simple reflections (keeping only positive images)."""
    simple = [datum.simple_root(i) for i in range(1, datum.rank + 1)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for v in frontier:
            for i in range(1, datum.rank + 1):
                w = datum.reflect_root(v, i)
                if w not in seen and in_positive_lattice(w):
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return tuple(sorted(seen, key=lambda v: (height(v), v)))


def positive_roots_up_to(datum: RootDatum, height_cap: int) -> list[tuple[RootVec, int]]:
    """All positive roots of height <= cap with their multiplicities.

    Real roots are the classical positives plus {alpha + k delta : k >= 1,
    alpha a classical root of either sign}, each of multiplicity 1; the
    imaginary roots are k delta with multiplicity = classical rank.
    """
    if height_cap < 1:
        raise ValueError("height cap must be >= 1")
    delta = datum.delta
    ht_delta = height(delta)
    out: list[tuple[RootVec, int]] = []
    for v in datum.classical_positive_roots:
        if height(v) <= height_cap:
            out.append((v, 1))
    k = 1
    while k * ht_delta - max(height(v) for v in datum.classical_positive_roots) <= height_cap:
        base = tuple(k * a for a in delta)
        if k * ht_delta <= height_cap:
            out.append((base, datum.rank))
        for v in datum.classical_positive_roots:
            up = tuple(a + b for a, b in zip(base, v))
            if height(up) <= height_cap:
                out.append((up, 1))
            down = tuple(a - b for a, b in zip(base, v))
            if height(down) <= height_cap:
                out.append((down, 1))
        k += 1
    out.sort(key=lambda rm: (height(rm[0]), rm[0]))
    return out


def positive_roots_within(datum: RootDatum, delta_cap: int, classical_cap: int) -> list[tuple[RootVec, int]]:
    """Positive roots with delta-degree <= delta_cap and classical height <=
    classical_cap, with multiplicities, sorted by (height, coordinates)."""
    delta = datum.delta
    out: list[tuple[RootVec, int]] = []
    if classical_cap >= 0:
        for v in datum.classical_positive_roots:
            if classical_height(v) <= classical_cap:
                out.append((v, 1))
    for k in range(1, delta_cap + 1):
        base = tuple(k * a for a in delta)
        if classical_height(base) <= classical_cap:
            out.append((base, datum.rank))
        for v in datum.classical_positive_roots:
            up = tuple(a + b for a, b in zip(base, v))
            if classical_height(up) <= classical_cap:
                out.append((up, 1))
            down = tuple(a - b for a, b in zip(base, v))
            if classical_height(down) <= classical_cap:
                out.append((down, 1))
    out.sort(key=lambda rm: (height(rm[0]), rm[0]))
    return out


@dataclass(frozen=True)
class WordH:
    """Doubly infinite periodic index word h = (..., i_{-1}, i_0, i_1, ...).

    pos repeats as i_1, i_2, ...; neg repeats as i_0, i_{-1}, ....  Finite
    windows are required to be reduced, which beta_prefix checks via
    positivity of the generated roots.
    """

    pos: tuple[int, ...]
    neg: tuple[int, ...]

    def letter(self, k: int) -> int:
        if k > 0:
            return self.pos[(k - 1) % len(self.pos)]
        return self.neg[(-k) % len(self.neg)]


def default_word(datum: RootDatum) -> WordH:
    """The cyclic word i_k = k mod (n+1): ascending 1..n,0 on the positive
    side and 0,n,...,1 on the other."""
    n = datum.rank
    return WordH(tuple(list(range(1, n + 1)) + [0]), tuple([0] + list(range(n, 0, -1))))


def beta_prefix(datum: RootDatum, word: WordH, k: int) -> list[RootVec]:
    """The roots beta_1..beta_k (k > 0) or beta_0..beta_k (k <= 0).

    beta_k = s_{i_1} ... s_{i_{k-1}}(alpha_{i_k}) on the positive side and
    s_{i_0} ... s_{i_{k+1}}(alpha_{i_k}) on the other; each must be a
    positive real root or the window is not reduced (NotReduced).
    """
    out: list[RootVec] = []
    if k > 0:
        indices = range(1, k + 1)
        prefix_letters: list[int] = []
    else:
        indices = range(0, k - 1, -1)
        prefix_letters = []
    for m in indices:
        v = datum.simple_root(word.letter(m))
        for letter in reversed(prefix_letters):
            v = datum.reflect_root(v, letter)
        if not in_positive_lattice(v):
            raise NotReduced(f"window up to slot {m} of the word is not reduced")
        out.append(v)
        prefix_letters.append(word.letter(m))
    return out


def beta_sequence(datum: RootDatum, word: WordH, k: int) -> RootVec:
    """beta_k for a signed slot index (beta_0 = alpha_{i_0}, beta_1 = alpha_{i_1})."""
    return beta_prefix(datum, word, k)[-1]
