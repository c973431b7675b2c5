"""Partial preference relations and their choice sets.

Pairwise "at least as desirable" relations over a finite set of items:
interval dominance of expectation bounds, simultaneous dominance of
both bounds, threshold orderings of real-valued mass functions, and
the extraction of maximal/greatest elements. Relations store weak
pairs only; strictness is always derived, never stored.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

from .errors import InvalidMassError


class Relation:
    """A boolean "row at least as desirable as column" table.

    Reflexivity is enforced at construction. Transitivity is not
    assumed; :func:`transitive_closure` repairs it explicitly when
    wanted.
    """

    __slots__ = ("n", "table", "complete")

    def __init__(self, table: Sequence[Sequence[bool]], *, complete: bool = False):
        n = len(table)
        rows = tuple(tuple(bool(x) for x in row) for row in table)
        for i, row in enumerate(rows):
            if len(row) != n:
                raise ValueError("relation table must be square")
            if not row[i]:
                raise ValueError(f"relation must be reflexive; item {i} is not related to itself")
        if complete:
            for i in range(n):
                for j in range(n):
                    if not (rows[i][j] or rows[j][i]):
                        raise ValueError(
                            f"relation flagged complete but items {i} and {j} are incomparable"
                        )
        self.n = n
        self.table = rows
        self.complete = complete

    @classmethod
    def from_scores(cls, scores: Sequence[float], *, higher_better: bool = True) -> "Relation":
        """Complete preorder induced by score comparison; ties are indifference."""
        n = len(scores)
        sign = 1.0 if higher_better else -1.0
        table = [[sign * scores[i] >= sign * scores[j] for j in range(n)] for i in range(n)]
        return cls(table, complete=True)

    def holds(self, i: int, j: int) -> bool:
        return self.table[i][j]

    def strictly(self, i: int, j: int) -> bool:
        return self.table[i][j] and not self.table[j][i]

    def indifferent(self, i: int, j: int) -> bool:
        return self.table[i][j] and self.table[j][i]

    def incomparable(self, i: int, j: int) -> bool:
        return not self.table[i][j] and not self.table[j][i]

    def is_transitive(self) -> bool:
        for i in range(self.n):
            for j in range(self.n):
                if self.table[i][j]:
                    for k in range(self.n):
                        if self.table[j][k] and not self.table[i][k]:
                            return False
        return True

    def describe(self, names: Sequence[str]) -> list[str]:
        """Deterministic textual listing of all pairs, ordered by item name."""
        if len(names) != self.n:
            raise ValueError(f"{len(names)} names for {self.n} items")
        order = sorted(range(self.n), key=lambda i: names[i])
        lines = []
        for a in range(len(order)):
            for b in range(a + 1, len(order)):
                i, j = order[a], order[b]
                if self.indifferent(i, j):
                    lines.append(f"{names[i]} ~ {names[j]}")
                elif self.strictly(i, j):
                    lines.append(f"{names[i]} > {names[j]}")
                elif self.strictly(j, i):
                    lines.append(f"{names[j]} > {names[i]}")
                else:
                    lines.append(f"{names[i]} ? {names[j]}")
        return lines


def transitive_closure(rel: Relation) -> Relation:
    """Smallest transitive relation containing ``rel`` (Floyd-Warshall)."""
    table = [list(row) for row in rel.table]
    n = rel.n
    for k in range(n):
        for i in range(n):
            if table[i][k]:
                row_i, row_k = table[i], table[k]
                for j in range(n):
                    if row_k[j]:
                        row_i[j] = True
    return Relation(table, complete=rel.complete)


def maximal_elements(rel: Relation) -> list[int]:
    """Items to which no other item is strictly preferred."""
    return [i for i in range(rel.n) if not any(rel.strictly(j, i) for j in range(rel.n))]


def greatest_elements(rel: Relation) -> list[int]:
    """Items at least as desirable as every item; a subset of the maximal ones."""
    return [i for i in range(rel.n) if all(rel.holds(i, j) for j in range(rel.n))]


def relation_from_choice_set(n: int, chosen: Iterable[int]) -> Relation:
    """Partial relation whose greatest elements are exactly ``chosen``.

    Chosen items are mutually indifferent and strictly preferred to
    every non-chosen item; non-chosen items stay incomparable.
    """
    chosen_set = set(chosen)
    if not chosen_set:
        raise ValueError("the choice set must be non-empty")
    if not chosen_set <= set(range(n)):
        raise ValueError(f"choice set {sorted(chosen_set)} out of range for {n} items")
    # chosen rows relate to everything; non-chosen rows only to themselves
    table = [
        [True] * n if i in chosen_set else [i == j for j in range(n)]
        for i in range(n)
    ]
    return Relation(table)


def _check_intervals(lowers: Sequence[float], uppers: Sequence[float]) -> None:
    if len(lowers) != len(uppers):
        raise ValueError("lower and upper bound vectors differ in length")
    for i, (lo, hi) in enumerate(zip(lowers, uppers)):
        if lo > hi:
            raise ValueError(f"interval {i} is inverted: [{lo}, {hi}]")


def interval_dominance(lowers: Sequence[float], uppers: Sequence[float]) -> Relation:
    """Weak preference iff one interval's lower bound reaches the other's upper.

    A very demanding relation; its choice set is typically large. Use
    :func:`interval_dominance_choice` for the non-dominated items.
    """
    _check_intervals(lowers, uppers)
    n = len(lowers)
    table = [[i == j or lowers[i] >= uppers[j] for j in range(n)] for i in range(n)]
    return Relation(table)


def interval_dominance_choice(lowers: Sequence[float], uppers: Sequence[float]) -> list[int]:
    """Items whose interval no competitor's lower bound strictly clears.

    A member is exactly an item for which, against every competitor,
    some pair of compatible expectations rates it at least as high.
    Elimination requires a strictly higher lower bound; touching
    intervals eliminate nothing.
    """
    _check_intervals(lowers, uppers)
    n = len(lowers)
    return [
        i
        for i in range(n)
        if not any(lowers[j] > uppers[i] for j in range(n) if j != i)
    ]


def interval_bound_dominance(lowers: Sequence[float], uppers: Sequence[float]) -> Relation:
    """Weak preference iff both interval bounds are at least as high.

    Equivalent to dominating for every pessimism index of the blended
    criterion at once.
    """
    _check_intervals(lowers, uppers)
    n = len(lowers)
    table = [
        [lowers[i] >= lowers[j] and uppers[i] >= uppers[j] for j in range(n)] for i in range(n)
    ]
    return Relation(table)


class RealMass:
    """A mass function whose focal sets are finite sets of real numbers."""

    __slots__ = ("focal",)

    def __init__(self, masses: Iterable[tuple[Iterable[float], float]]):
        focal: dict[tuple[float, ...], float] = {}
        for values, mass in masses:
            key = tuple(sorted(set(float(v) for v in values)))
            if not key:
                raise InvalidMassError("mass assigned to an empty set of reals")
            if mass < 0:
                raise InvalidMassError(f"negative mass {mass} on {key}")
            if mass == 0:
                continue
            focal[key] = focal.get(key, 0.0) + mass
        if not focal:
            raise InvalidMassError("real-valued mass function has no focal sets")
        total = math.fsum(focal.values())
        if abs(total - 1.0) > 1e-9:
            raise InvalidMassError(f"masses sum to {total!r}, expected 1")
        self.focal = dict(sorted(focal.items()))

    @classmethod
    def bayesian(cls, distribution: Iterable[tuple[float, float]]) -> "RealMass":
        return cls(((value,), p) for value, p in distribution)

    def support(self) -> list[float]:
        """All reals occurring in any focal set, ascending."""
        points = {v for key in self.focal for v in key}
        return sorted(points)

    def bel_above(self, x: float) -> float:
        """Mass of focal sets entirely above ``x`` (minimum > x)."""
        return math.fsum(v for key, v in self.focal.items() if key[0] > x)

    def pl_above(self, x: float) -> float:
        """Mass of focal sets reaching above ``x`` (maximum > x)."""
        return math.fsum(v for key, v in self.focal.items() if key[-1] > x)

    def lower_of(self, fn) -> float:
        """Mass-weighted minimum of ``fn`` over each focal set."""
        return math.fsum(v * min(fn(x) for x in key) for key, v in self.focal.items())

    def upper_of(self, fn) -> float:
        """Mass-weighted maximum of ``fn`` over each focal set."""
        return math.fsum(v * max(fn(x) for x in key) for key, v in self.focal.items())


CREDAL_ORDERS = ("pl_bel", "bel_bel", "pl_pl", "bel_pl")


def credal_order(m_x: RealMass, m_y: RealMass, relation: str) -> bool:
    """Threshold comparison of two real-valued mass functions.

    For every threshold the chosen pair of set functions of the upper
    tail is compared: ``pl_bel`` checks Pl_X >= Bel_Y, ``bel_bel``
    Bel_X >= Bel_Y, ``pl_pl`` Pl_X >= Pl_Y and ``bel_pl``
    Bel_X >= Pl_Y. Both tails are step functions changing only at
    support points, so checking the union of supports decides the
    relation. All four coincide with first-order stochastic dominance
    when both masses are Bayesian.
    """
    if relation not in CREDAL_ORDERS:
        raise ValueError(f"unknown credal order {relation!r}; pick one of {CREDAL_ORDERS}")
    left = m_x.pl_above if relation.startswith("pl") else m_x.bel_above
    right = m_y.bel_above if relation.endswith("bel") else m_y.pl_above
    thresholds = sorted(set(m_x.support()) | set(m_y.support()))
    return all(left(x) >= right(x) - 1e-12 for x in thresholds)


def stochastic_dominance(dist_x: Sequence[tuple[float, float]],
                         dist_y: Sequence[tuple[float, float]]) -> bool:
    """First-order dominance of two discrete distributions by direct tail comparison."""
    points = sorted({v for v, _ in dist_x} | {v for v, _ in dist_y})
    for x in points:
        tail_x = math.fsum(p for v, p in dist_x if v > x)
        tail_y = math.fsum(p for v, p in dist_y if v > x)
        if tail_x < tail_y - 1e-12:
            return False
    return True
