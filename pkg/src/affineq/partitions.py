"""Integer partitions, multi-partitions and the statistics driving the q-weights.

For a partition p = (1^{m_1} 2^{m_2} ...):

  * weight(p)  = sum of the parts,
  * d(p)       = number of distinct part *sizes* (number of nonzero m_r),
  * kappa_q(p) = (-u)^{#parts} if every m_r is 0 or 1, else 0.

A multi-partition is an n-tuple of partitions; weight and d add over the
components and kappa_q multiplies.  Enumeration order is deterministic:
lexicographic on the component weight split, parts descending inside each
component, so golden tests can freeze outputs.

Besides literal enumeration streams this module provides exact counting
tables (partitions of k grouped by d, distinct-part partitions grouped by
part count) which serve as the enumeration-side oracle at weights where
literal streaming is infeasible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from .qpoly import QPoly, neg_u_pow


@dataclass(frozen=True)
class Partition:
    """Weakly decreasing tuple of positive integers."""

    parts: tuple[int, ...] = ()

    def __post_init__(self):
        if any(a < 1 for a in self.parts):
            raise ValueError("parts must be positive")
        if any(self.parts[i] < self.parts[i + 1] for i in range(len(self.parts) - 1)):
            raise ValueError("parts must be weakly decreasing")

    @property
    def weight(self) -> int:
        return sum(self.parts)

    @property
    def num_parts(self) -> int:
        return len(self.parts)

    @property
    def distinct_sizes(self) -> int:
        """d(p): the number of distinct part sizes."""
        return len(set(self.parts))

    def multiplicities(self) -> dict[int, int]:
        """Map part size r -> m_r, omitting zero multiplicities."""
        m: dict[int, int] = {}
        for a in self.parts:
            m[a] = m.get(a, 0) + 1
        return m

    def has_distinct_parts(self) -> bool:
        return len(set(self.parts)) == len(self.parts)

    def to_json(self) -> list[int]:
        return list(self.parts)


@dataclass(frozen=True)
class MultiPartition:
    components: tuple[Partition, ...]

    @property
    def weight(self) -> int:
        return sum(c.weight for c in self.components)

    @property
    def distinct_sizes(self) -> int:
        """d summed over the components (distinct sizes counted per component)."""
        return sum(c.distinct_sizes for c in self.components)

    @property
    def num_parts(self) -> int:
        return sum(c.num_parts for c in self.components)

    def to_json(self) -> list[list[int]]:
        return [c.to_json() for c in self.components]


@dataclass(frozen=True)
class SupportSeq:
    """Finitely supported map from slot index to a nonnegative count.

    Slots are positive for one half-sequence and nonpositive for the other;
    d is the number of nonzero entries and total their sum.
    """

    entries: tuple[tuple[int, int], ...] = field(default=())

    def __post_init__(self):
        if any(c <= 0 for _, c in self.entries):
            raise ValueError("stored counts must be positive")
        slots = [s for s, _ in self.entries]
        if len(set(slots)) != len(slots):
            raise ValueError("duplicate slots")

    @property
    def d(self) -> int:
        return len(self.entries)

    @property
    def total(self) -> int:
        return sum(c for _, c in self.entries)


def partitions_of(k: int, max_part: int | None = None) -> Iterator[Partition]:
    """All partitions of k, largest part first, in descending lex order."""
    if k < 0:
        raise ValueError("k must be >= 0")
    cap = k if max_part is None else min(k, max_part)

    def rec(rem: int, bound: int, prefix: list[int]) -> Iterator[Partition]:
        if rem == 0:
            yield Partition(tuple(prefix))
            return
        for a in range(min(rem, bound), 0, -1):
            prefix.append(a)
            yield from rec(rem - a, a, prefix)
            prefix.pop()

    yield from rec(k, cap, [])


def multipartitions_of(n: int, k: int) -> Iterator[MultiPartition]:
    """All n-component multi-partitions of total weight k, exactly once.

    Order: lexicographic on the weight composition (first component takes
    the largest share first), then the per-component partition order.
    """
    if n < 1:
        raise ValueError("n must be >= 1")

    def rec(i: int, rem: int, prefix: list[Partition]) -> Iterator[MultiPartition]:
        if i == n - 1:
            for p in partitions_of(rem):
                prefix.append(p)
                yield MultiPartition(tuple(prefix))
                prefix.pop()
            return
        for w in range(rem, -1, -1):
            for p in partitions_of(w):
                prefix.append(p)
                yield from rec(i + 1, rem - w, prefix)
                prefix.pop()

    yield from rec(0, k, [])


def kappa_q(p: Partition | MultiPartition) -> QPoly:
    """(-u)^{#parts} on partitions with all part sizes distinct, else 0.

    For a multi-partition this is the product over components, i.e. zero as
    soon as any single component repeats a size.
    """
    if isinstance(p, MultiPartition):
        if any(not c.has_distinct_parts() for c in p.components):
            return QPoly()
        return neg_u_pow(p.num_parts)
    if not p.has_distinct_parts():
        return QPoly()
    return neg_u_pow(p.num_parts)


def count_by_distinct_sizes(kmax: int) -> list[dict[int, int]]:
    """table[k][j] = number of partitions of k with exactly j distinct sizes.

    Exact DP over part sizes (each size contributes multiplicity 0 or >= 1),
    independent of any series machinery; table[0] = {0: 1}.  Processing k
    downward keeps reads at k - w in the previous-size state, so the update
    can run in place.
    """
    table: list[dict[int, int]] = [{0: 1}] + [{} for _ in range(kmax)]
    for s in range(1, kmax + 1):
        for k in range(kmax, s - 1, -1):
            row = table[k]
            w = s
            while w <= k:
                for j, c in table[k - w].items():
                    row[j + 1] = row[j + 1] + c if j + 1 in row else c
                w += s
    return table


def count_distinct_by_num_parts(kmax: int) -> list[dict[int, int]]:
    """table[k][j] = number of partitions of k into exactly j distinct parts."""
    table: list[dict[int, int]] = [{0: 1}] + [{} for _ in range(kmax)]
    for s in range(1, kmax + 1):
        for k in range(kmax, s - 1, -1):
            row = table[k]
            for j, c in table[k - s].items():
                row[j + 1] = row[j + 1] + c if j + 1 in row else c
    return table


def partition_sum_by_d(k: int, table: list[dict[int, int]] | None = None) -> QPoly:
    """sum over |p| = k of (1-u)^{d(p)}, from the counting table."""
    from .qpoly import one_minus_u_pow

    if table is None:
        table = count_by_distinct_sizes(k)
    acc = QPoly()
    for j, c in sorted(table[k].items()):
        acc = acc + c * one_minus_u_pow(j)
    return acc
