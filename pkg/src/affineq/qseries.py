"""Truncated power series in t with QPoly coefficients, and the q-deformed
arithmetical functions they generate.

The deformations all come from Euler-type products after the substitution
z^delta = t:

    prod_k (1 - u t^k)^n        ->  epsilon_{q,n}(k)   (kappa_q-weighted sums)
    prod_k ((1-u t^k)/(1-t^k))^n -> p_{q,n}(k)         ((1-u)^d-weighted sums)

epsilon_{1,1} is Euler's pentagonal sequence, epsilon_{1,24}(k) = tau(k+1) is
the Ramanujan tau function, and the two families satisfy the exact recurrence
epsilon_{q,n}(k) = sum_r epsilon_{1,n}(r) p_{q,n}(k-r), verified here as a
polynomial identity at configurable truncation.

Every public value is computed along two independent routes (partition
counting versus product expansion) and compared before being returned.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

from . import partitions as pt
from .qpoly import ONE, QPoly, ZERO, U, one_minus_u_pow
from .reports import CheckReport

Scalar = Union[int, Fraction]


class OrderExceeded(ValueError):
    """Requested coefficient index lies beyond the configured truncation."""


class TSeries:
    """Power series in t truncated at a fixed order, coefficients in Z[u].

    coeffs[k] is the QPoly coefficient of t**k.  Arithmetic between two
    series truncates at the smaller of the two orders.  Values are immutable
    by convention and safe to share between threads.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: Iterable[QPoly | int] = ()):
        if order < 0:
            raise ValueError("order must be >= 0")
        cs = [c if isinstance(c, QPoly) else QPoly((c,)) for c in coeffs]
        if len(cs) > order + 1:
            cs = cs[: order + 1]
        cs.extend([ZERO] * (order + 1 - len(cs)))
        self.order = order
        self.coeffs = cs

    @classmethod
    def one(cls, order: int) -> TSeries:
        return cls(order, [ONE])

    def coefficient(self, k: int) -> QPoly:
        if k > self.order:
            raise OrderExceeded(f"t^{k} beyond truncation order {self.order}")
        return self.coeffs[k]

    def truncate(self, order: int) -> TSeries:
        return TSeries(min(order, self.order), self.coeffs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TSeries):
            return NotImplemented
        n = min(self.order, other.order)
        return self.coeffs[: n + 1] == other.coeffs[: n + 1]

    def __hash__(self):
        return hash((self.order, tuple(self.coeffs)))

    def __add__(self, other: TSeries) -> TSeries:
        n = min(self.order, other.order)
        return TSeries(n, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: TSeries) -> TSeries:
        n = min(self.order, other.order)
        return TSeries(n, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __mul__(self, other: TSeries) -> TSeries:
        n = min(self.order, other.order)
        out = [ZERO] * (n + 1)
        for i in range(n + 1):
            a = self.coeffs[i]
            if not a:
                continue
            for j in range(n + 1 - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] = out[i + j] + a * b
        return TSeries(n, out)

    def __pow__(self, n: int) -> TSeries:
        if n < 0:
            raise ValueError("negative series power; use inverse() first")
        result = TSeries.one(self.order)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def mul_sparse(self, k: int, c: QPoly) -> TSeries:
        """Multiply by (1 + c t^k), cheaply."""
        out = list(self.coeffs)
        for i in range(self.order - k, -1, -1):
            a = self.coeffs[i]
            if a:
                out[i + k] = out[i + k] + a * c
        return TSeries(self.order, out)

    def inverse(self) -> TSeries:
        """Multiplicative inverse; requires constant term 1."""
        if self.coeffs[0] != ONE:
            raise ValueError("inverse needs constant term 1")
        out = [ONE] + [ZERO] * self.order
        for k in range(1, self.order + 1):
            acc = ZERO
            for j in range(1, k + 1):
                a = self.coeffs[j]
                if a:
                    acc = acc + a * out[k - j]
            out[k] = -acc
        return TSeries(self.order, out)

    def eval_u(self, point: Scalar) -> list[Scalar]:
        return [c.evaluate(point) for c in self.coeffs]

    def __repr__(self) -> str:
        head = ", ".join(repr(c) for c in self.coeffs[:5])
        return f"TSeries(order={self.order}, [{head}{', ...' if self.order > 4 else ''}])"


# -- Euler-type products ----------------------------------------------------


@lru_cache(maxsize=32)
def euler_product(n: int, order: int, with_u: bool = True, inverse: bool = False) -> TSeries:
    """prod_{k=1}^{order} (1 - [u] t^k)^{+-n} truncated at `order`.

    with_u keeps the factor u (the deformed product); without it the factor
    is the classical (1 - t^k).  inverse=True expands the reciprocal power,
    e.g. the multi-partition generating function prod (1 - t^k)^{-n}.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    c = -U if with_u else QPoly((-1,))
    base = TSeries.one(order)
    for k in range(1, order + 1):
        base = base.mul_sparse(k, c)
    powered = base**n
    return powered.inverse() if inverse else powered


# -- pentagonal numbers and exact partition counts ---------------------------


def pentagonal_epsilon(k: int) -> int:
    """(-1)^m if k = m(3m+-1)/2 for some m >= 0, else 0 (closed form)."""
    if k < 0:
        raise ValueError("k must be >= 0")
    m = 0
    while m * (3 * m - 1) // 2 <= k:
        if k in (m * (3 * m - 1) // 2, m * (3 * m + 1) // 2):
            return -1 if m % 2 else 1
        m += 1
    return 0


def generalized_pentagonal_pairs(limit: int) -> list[tuple[int, int, int]]:
    """(m, m(3m-1)/2, m(3m+1)/2) for m >= 1 while the smaller one is <= limit."""
    out = []
    m = 1
    while m * (3 * m - 1) // 2 <= limit:
        out.append((m, m * (3 * m - 1) // 2, m * (3 * m + 1) // 2))
        m += 1
    return out


def partition_numbers(kmax: int) -> list[int]:
    """p(0..kmax) by the pentagonal recurrence (independent of any series code)."""
    p = [1] + [0] * kmax
    for k in range(1, kmax + 1):
        acc = 0
        for m, g1, g2 in generalized_pentagonal_pairs(k):
            sign = -1 if m % 2 == 0 else 1
            acc += sign * p[k - g1]
            if g2 <= k:
                acc += sign * p[k - g2]
        p[k] = acc
    return p


# -- the deformed families, each computed two ways ---------------------------


@lru_cache(maxsize=None)
def _epsilon_base(order: int) -> TSeries:
    """Enumeration route for n=1: coefficients sum kappa_q over partitions."""
    table = pt.count_distinct_by_num_parts(order)
    coeffs = []
    for k in range(order + 1):
        acc = QPoly()
        for j, c in sorted(table[k].items()):
            acc = acc + c * ((-U) ** j)
        coeffs.append(acc)
    return TSeries(order, coeffs)


@lru_cache(maxsize=None)
def _p_base(order: int) -> TSeries:
    """Enumeration route for n=1: coefficients sum (1-u)^d over partitions."""
    table = pt.count_by_distinct_sizes(order)
    coeffs = []
    for k in range(order + 1):
        acc = QPoly()
        for j, c in sorted(table[k].items()):
            acc = acc + c * one_minus_u_pow(j)
        coeffs.append(acc)
    return TSeries(order, coeffs)


@lru_cache(maxsize=None)
def epsilon_series(n: int, order: int) -> TSeries:
    """sum_k epsilon_{q,n}(k) t^k, cross-checked enumeration vs product."""
    enumerated = _epsilon_base(order) ** n
    product = euler_product(n, order, with_u=True)
    if enumerated != product:
        raise AssertionError(
            f"epsilon_(q,{n}) enumeration and product expansion disagree at order {order}"
        )
    return enumerated


@lru_cache(maxsize=None)
def p_series(n: int, order: int) -> TSeries:
    """sum_k p_{q,n}(k) t^k from the partition-counting route."""
    return _p_base(order) ** n


def epsilon_qn(n: int, k: int) -> QPoly:
    """epsilon_{q,n}(k) = sum over n-component multi-partitions of weight k
    of kappa_q; equal to the t^k coefficient of prod (1 - u t^j)^n, and both
    routes are computed and compared."""
    if k < 0:
        raise ValueError("k must be >= 0")
    return epsilon_series(n, _round_order(k)).coefficient(k)


def p_qn(n: int, k: int) -> QPoly:
    """p_{q,n}(k) = sum over n-component multi-partitions of weight k of
    (1-u)^d; its value at u=0 is the n-component multi-partition count."""
    if k < 0:
        raise ValueError("k must be >= 0")
    return p_series(n, _round_order(k)).coefficient(k)


def _round_order(k: int) -> int:
    """Bucket truncation orders so the per-(n, order) caches actually hit."""
    return max(8, 1 << (k - 1).bit_length()) if k > 0 else 8


def ramanujan_tau(k: int, order: int = 200) -> int:
    """tau(k) as the t^{k-1} coefficient of prod (1 - t^j)^24.

    Raises OrderExceeded when k - 1 lies beyond the configured truncation.
    """
    if k < 1:
        raise ValueError("tau is indexed from 1")
    if k - 1 > order:
        raise OrderExceeded(f"tau({k}) needs order {k - 1} > {order}")
    c = euler_product(24, order, with_u=False).coefficient(k - 1)
    if not c.is_constant():
        raise AssertionError("undeformed product must have integer coefficients")
    return c.constant_term


# -- identity verifiers -------------------------------------------------------


def verify_single_partition_recurrence(order: int) -> CheckReport:
    """epsilon_q(k) - p_q(k) = sum_m (-1)^m (p_q(k - m(3m-1)/2) + p_q(k - m(3m+1)/2))

    checked as an exact identity in Z[u] for all 1 <= k <= order.
    """
    report = CheckReport("eps-recurrence", {"t_order": order})
    eps = epsilon_series(1, order)
    p = p_series(1, order)
    pairs = generalized_pentagonal_pairs(order)
    for k in range(1, order + 1):
        lhs = eps.coefficient(k) - p.coefficient(k)
        rhs = QPoly()
        for m, g1, g2 in pairs:
            if g1 > k:
                break
            sign = -1 if m % 2 else 1
            term = p.coefficient(k - g1)
            if g2 <= k:
                term = term + p.coefficient(k - g2)
            rhs = rhs + sign * term
        report.compare(f"k={k}", lhs, rhs)
    return report


def verify_multi_recurrence(n: int, order: int) -> CheckReport:
    """epsilon_{q,n}(k) = sum_r epsilon_{1,n}(r) p_{q,n}(k-r) for k <= order,
    plus the u=0 specialization 0 = sum_r epsilon_{1,n}(r) p_{inf,n}(k-r)."""
    report = CheckReport("multi-eps-recurrence", {"n": n, "t_order": order})
    eps = epsilon_series(n, order)
    p = p_series(n, order)
    eps1 = euler_product(n, order, with_u=False)  # u = 1 specialization
    pinf = euler_product(n, order, with_u=False, inverse=True)  # multi-partition counts
    for k in range(1, order + 1):
        rhs = QPoly()
        for r in range(k + 1):
            e = eps1.coefficient(r)
            if e:
                rhs = rhs + e.constant_term * p.coefficient(k - r)
        report.compare(f"k={k}", eps.coefficient(k), rhs)
        limit = 0
        for r in range(k + 1):
            e = eps1.coefficient(r)
            if e:
                limit += e.constant_term * pinf.coefficient(k - r).evaluate(0)
        report.compare(f"k={k} (u=0 limit)", limit, 0)
        report.compare(
            f"k={k} (p at u=0 vs count)",
            p.coefficient(k).evaluate(0),
            pinf.coefficient(k).evaluate(0),
        )
    return report


def q_pochhammer_sum(order: int) -> TSeries:
    """sum_{m=0}^{order} (u;t)_m / (t;t)_m * t^m as a TSeries.

    (a;t)_m = prod_{k=0}^{m-1} (1 - a t^k).  The m-th summand has valuation m,
    so truncating the outer sum at `order` is exact.  Asserts the q-binomial
    identity: the sum equals sum_k p_q(k) t^k.
    """
    term = TSeries.one(order)  # (u;t)_m / (t;t)_m * t^m, starting at m=0
    total = term
    for m in range(1, order + 1):
        # multiply by (1 - u t^{m-1}) * t / (1 - t^m)
        term = term.mul_sparse(m - 1, -U)
        term = TSeries(order, [ZERO] + term.coeffs[:-1])
        geom = TSeries(order, [ONE if j % m == 0 else ZERO for j in range(order + 1)])
        term = term * geom
        total = total + term
    if total != p_series(1, order):
        raise AssertionError("q-binomial sum disagrees with sum p_q(k) t^k")
    return total


def verify_q_binomial(order: int) -> CheckReport:
    """The q-binomial rearrangement plus its u -> 0 limit
    sum_m t^m/(t;t)_m = sum p(m) t^m, with p(m) from the pentagonal recurrence."""
    report = CheckReport("q-binomial", {"t_order": order})
    total = q_pochhammer_sum(order)
    p = p_series(1, order)
    for k in range(order + 1):
        report.compare(f"t^{k}", total.coefficient(k), p.coefficient(k))
    # u = 0 limit, against an independent source of p(m)
    pnum = partition_numbers(order)
    at_zero = total.eval_u(0)
    for k in range(order + 1):
        report.compare(f"t^{k} (u=0)", at_zero[k], pnum[k])
    return report


def verify_pentagonal(order: int = 200) -> CheckReport:
    """Pentagonal closed form == prod (1 - t^k) coefficients == eps_{q,1} at u=1."""
    report = CheckReport("pentagonal", {"t_order": order})
    prod = euler_product(1, order, with_u=False)
    eps = epsilon_series(1, order)
    for k in range(order + 1):
        closed = pentagonal_epsilon(k)
        report.compare(f"t^{k} (product)", prod.coefficient(k).evaluate(0), closed)
        report.compare(f"t^{k} (u=1)", eps.coefficient(k).evaluate(1), closed)
    return report
