"""Exact univariate polynomial arithmetic in the deformation variable u = q^{-1}.

Every deformed quantity in this package (H-polynomials, epsilon, p, the two
deformed Kostant functions) lives in Z[u].  A polynomial is stored densely as
a tuple of Python integers, coeffs[i] being the coefficient of u**i, with the
highest stored coefficient nonzero (the zero polynomial is the empty tuple).
No floating point is used anywhere; "limits" such as q -> 1 are taken by exact
division by powers of (1 - u) followed by evaluation at u = 1.

Instances are immutable and hashable, hence safe to share between threads.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

Scalar = Union[int, Fraction]


class NotDivisible(ArithmeticError):
    """(1 - u)**r does not exactly divide the polynomial."""


class QPoly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    # -- ring structure -----------------------------------------------------

    def __add__(self, other: QPoly | int) -> QPoly:
        if isinstance(other, int):
            other = QPoly((other,))
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return QPoly(out)

    __radd__ = __add__

    def __neg__(self) -> QPoly:
        p = QPoly()
        p.coeffs = tuple(-c for c in self.coeffs)
        return p

    def __sub__(self, other: QPoly | int) -> QPoly:
        if isinstance(other, int):
            other = QPoly((other,))
        return self + (-other)

    def __rsub__(self, other: int) -> QPoly:
        return QPoly((other,)) - self

    def __mul__(self, other: QPoly | int) -> QPoly:
        if isinstance(other, int):
            if other == 0:
                return ZERO
            p = QPoly()
            p.coeffs = tuple(c * other for c in self.coeffs)
            return p
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZERO
        out = [0] * (len(a) + len(b) - 1)
        for i, c in enumerate(a):
            if c:
                for j, d in enumerate(b):
                    out[i + j] += c * d
        p = QPoly()
        p.coeffs = tuple(out)
        return p

    __rmul__ = __mul__

    def __pow__(self, n: int) -> QPoly:
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self.coeffs == (() if other == 0 else (other,))
        if isinstance(other, QPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    # -- queries ------------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree in u; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    @property
    def constant_term(self) -> int:
        return self.coeffs[0] if self.coeffs else 0

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def shift(self, k: int) -> QPoly:
        """Multiply by u**k."""
        if not self.coeffs:
            return ZERO
        p = QPoly()
        p.coeffs = (0,) * k + self.coeffs
        return p

    # -- evaluation and limits ----------------------------------------------

    def evaluate(self, point: Scalar) -> Scalar:
        """Exact substitution of u = point (Horner).

        point = 0 yields the constant term, which is the q -> infinity limit;
        point = 1 and point = -1 are the q = 1 and q = -1 specializations.
        """
        acc: Scalar = 0
        for c in reversed(self.coeffs):
            acc = acc * point + c
        return acc

    def exact_div_one_minus_u(self, r: int) -> QPoly:
        """Quotient s with self = (1 - u)**r * s, exactly.

        Raises NotDivisible when (1 - u)**r does not divide self, i.e. when
        some iterated quotient fails to vanish at u = 1.  The zero polynomial
        divides trivially.
        """
        if r < 0:
            raise ValueError("r must be >= 0")
        cs = list(self.coeffs)
        for _ in range(r):
            if not cs:
                break
            # (1-u) * sum(b_i u^i) = p  <=>  b_i = a_0 + ... + a_i, total sum 0.
            acc = 0
            quot = []
            for a in cs:
                acc += a
                quot.append(acc)
            if acc != 0:
                raise NotDivisible(f"(1-u)^{r} does not divide {self!r}")
            quot.pop()
            cs = quot
            while cs and cs[-1] == 0:
                cs.pop()
        return QPoly(cs)

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        """JSON form with decimal-string coefficients (no 64-bit ambiguity)."""
        return {"var": "u", "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> QPoly:
        if data.get("var") != "u":
            raise ValueError("expected a polynomial in u")
        return cls(int(c) for c in data["coeffs"])

    def __repr__(self) -> str:
        if not self.coeffs:
            return "QPoly(0)"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("u" if i == 1 else f"u^{i}")
            mag = str(abs(c)) if (abs(c) != 1 or i == 0) else ""
            if not parts:
                parts.append(("-" if c < 0 else "") + mag + mono)
            else:
                parts.append((" - " if c < 0 else " + ") + mag + mono)
        return f"QPoly({''.join(parts)})"


ZERO = QPoly()
ONE = QPoly((1,))
U = QPoly((0, 1))
ONE_MINUS_U = QPoly((1, -1))


@lru_cache(maxsize=None)
def one_minus_u_pow(d: int) -> QPoly:
    """(1 - u)**d, cached; the ubiquitous weight of a d-support index."""
    return ONE_MINUS_U**d


@lru_cache(maxsize=None)
def neg_u_pow(d: int) -> QPoly:
    """(-u)**d, cached; the weight of a d-part distinct partition."""
    return (-U) ** d


@lru_cache(maxsize=None)
def u_pow(j: int) -> QPoly:
    return U**j
