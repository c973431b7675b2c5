"""Imprecise-probability decision rules over gambles.

A gamble is a real payoff per state. A mass function on the states
induces lower/upper previsions (expectations bounds over the set of
compatible probabilities); on top of these sit the maximality relation
(nonnegative lower prevision of the difference) and e-admissibility
(some single compatible probability makes the gamble a best response),
the latter decided by a linear program in allocation variables.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import Frame, MassFunction, iter_elements
from .errors import FrameMismatchError, SolverError
from .relations import Relation, maximal_elements
from .simplex import LinearProgram, SimplexResult, lp_text, simplex_solve

E_ADMISSIBILITY_TOL = 1e-8


@dataclass(frozen=True)
class Gamble:
    """A real-valued payoff for every state of a frame."""

    frame: Frame
    payoffs: tuple[float, ...]

    def __init__(self, frame: Frame, payoffs: Iterable[float]):
        values = tuple(float(v) for v in payoffs)
        if len(values) != frame.size:
            raise ValueError(f"{len(values)} payoffs for a frame of size {frame.size}")
        if not all(math.isfinite(v) for v in values):
            raise ValueError("gamble payoffs must be finite")
        object.__setattr__(self, "frame", frame)
        object.__setattr__(self, "payoffs", values)

    def __sub__(self, other: "Gamble") -> "Gamble":
        if other.frame != self.frame:
            raise FrameMismatchError("cannot subtract gambles on different frames")
        return Gamble(self.frame, tuple(a - b for a, b in zip(self.payoffs, other.payoffs)))

    def __add__(self, other: "Gamble") -> "Gamble":
        if other.frame != self.frame:
            raise FrameMismatchError("cannot add gambles on different frames")
        return Gamble(self.frame, tuple(a + b for a, b in zip(self.payoffs, other.payoffs)))

    def __neg__(self) -> "Gamble":
        return Gamble(self.frame, tuple(-v for v in self.payoffs))

    def expectation(self, probabilities: Sequence[float]) -> float:
        return math.fsum(p * v for p, v in zip(probabilities, self.payoffs))


def _check_gamble(m: MassFunction, gamble: Gamble) -> None:
    if gamble.frame != m.frame:
        raise FrameMismatchError(
            f"gamble frame {gamble.frame.labels!r} differs from mass frame {m.frame.labels!r}"
        )


def lower_prevision(m: MassFunction, gamble: Gamble) -> float:
    """Mass-weighted minimum payoff per focal set.

    Also the minimum expectation over all probabilities compatible
    with ``m``.
    """
    _check_gamble(m, gamble)
    return math.fsum(
        v * min(gamble.payoffs[i] for i in iter_elements(a)) for a, v in m.items()
    )


def upper_prevision(m: MassFunction, gamble: Gamble) -> float:
    """Mass-weighted maximum payoff per focal set; conjugate of the lower."""
    _check_gamble(m, gamble)
    return math.fsum(
        v * max(gamble.payoffs[i] for i in iter_elements(a)) for a, v in m.items()
    )


def maximality_relation(
    gambles: Sequence[Gamble], m: MassFunction
) -> tuple[list[list[float]], Relation, list[int]]:
    """Pairwise lower previsions of differences, the induced relation, choice set.

    Entry [i][j] is the lower prevision of gamble i minus gamble j;
    i is weakly preferred iff it is >= 0 and strictly iff > 0. The
    choice set keeps every gamble no other gamble strictly beats, so a
    member is exactly a gamble that some compatible probability rates
    at least as high as any single competitor. Elimination requires the
    strict inequality itself: a zero lower prevision of the difference
    never eliminates, even when the reverse comparison fails.
    """
    if not gambles:
        raise ValueError("need at least one gamble")
    n = len(gambles)
    delta = [[0.0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i != j:
                delta[i][j] = lower_prevision(m, gambles[i] - gambles[j])
    table = [[i == j or delta[i][j] >= 0.0 for j in range(n)] for i in range(n)]
    relation = Relation(table)
    chosen = [
        i for i in range(n) if not any(delta[j][i] > 0.0 for j in range(n) if j != i)
    ]
    return delta, relation, chosen


def _allocation_layout(m: MassFunction) -> list[tuple[int, int]]:
    """(state index, focal position) pairs for every allocation variable."""
    layout = []
    for j, (a, _) in enumerate(m.items()):
        for k in iter_elements(a):
            layout.append((k, j))
    return layout


def build_e_admissibility_lp(gambles: Sequence[Gamble], m: MassFunction, i: int) -> LinearProgram:
    """The feasibility program deciding whether gamble ``i`` is e-admissible.

    Variables: one allocation share per (state, focal set) incidence,
    one probability per state, one slack per competing gamble. Each
    focal mass must be fully allocated among its states, probabilities
    collect the allocations, and each competitor's expectation may
    exceed gamble ``i``'s by at most its slack. The slack total is
    minimized; it reaches zero exactly when some compatible probability
    makes gamble ``i`` a best response.
    """
    n = len(gambles)
    s = m.frame.size
    focal = list(m.items())
    layout = _allocation_layout(m)
    n_alloc = len(layout)
    others = [l for l in range(n) if l != i]
    n_vars = n_alloc + s + len(others)

    rows: list[list[float]] = []
    senses: list[str] = []
    rhs: list[float] = []

    # each focal mass fully allocated among its elements
    for j, (_, mass) in enumerate(focal):
        row = [0.0] * n_vars
        for pos, (k, jj) in enumerate(layout):
            if jj == j:
                row[pos] = 1.0
        rows.append(row)
        senses.append("=")
        rhs.append(mass)

    # probabilities collect their allocations
    for k in range(s):
        row = [0.0] * n_vars
        for pos, (kk, _) in enumerate(layout):
            if kk == k:
                row[pos] = -1.0
        row[n_alloc + k] = 1.0
        rows.append(row)
        senses.append("=")
        rhs.append(0.0)

    # gamble i must not be beaten by more than each competitor's slack
    for slot, l in enumerate(others):
        row = [0.0] * n_vars
        for k in range(s):
            row[n_alloc + k] = gambles[i].payoffs[k] - gambles[l].payoffs[k]
        row[n_alloc + s + slot] = 1.0
        rows.append(row)
        senses.append(">=")
        rhs.append(0.0)

    objective = [0.0] * n_vars
    for slot in range(len(others)):
        objective[n_alloc + s + slot] = 1.0
    return LinearProgram(objective, rows, senses, rhs)


def e_admissible(
    gambles: Sequence[Gamble], m: MassFunction, i: int, *, tol: float = E_ADMISSIBILITY_TOL
) -> tuple[bool, tuple[float, ...] | None]:
    """Whether some compatible probability makes gamble ``i`` best overall.

    Returns the verdict and, when admissible, the witnessing
    probability vector over the states. Solver failures raise
    :class:`SolverError`; they are never reported as inadmissibility.
    """
    if not gambles:
        raise ValueError("need at least one gamble")
    if not 0 <= i < len(gambles):
        raise IndexError(f"gamble index {i} out of range")
    for g in gambles:
        _check_gamble(m, g)
    if len(gambles) == 1:
        return True, _any_compatible_probability(m)

    lp = build_e_admissibility_lp(gambles, m, i)
    result = simplex_solve(lp)
    if result.status != "optimal":
        raise SolverError(
            f"e-admissibility program ended with status {result.status!r}; "
            "this program is feasible and bounded by construction"
        )
    if result.objective > tol:
        return False, None
    n_alloc = len(_allocation_layout(m))
    witness = tuple(result.x[n_alloc : n_alloc + m.frame.size])
    return True, witness


def _any_compatible_probability(m: MassFunction) -> tuple[float, ...]:
    """One compatible probability: send each focal mass to its lowest state."""
    p = [0.0] * m.frame.size
    for a, v in m.items():
        p[next(iter_elements(a))] += v
    return tuple(p)


def e_admissible_set(
    gambles: Sequence[Gamble], m: MassFunction, *, tol: float = E_ADMISSIBILITY_TOL
) -> tuple[list[int], dict[int, tuple[float, ...]]]:
    """Indices of e-admissible gambles plus a witness per member.

    Screens with the maximality choice set first (e-admissibility
    implies maximality), then solves one program per surviving gamble.
    """
    _, _, candidates = maximality_relation(gambles, m)
    chosen: list[int] = []
    witnesses: dict[int, tuple[float, ...]] = {}
    for i in candidates:
        verdict, witness = e_admissible(gambles, m, i, tol=tol)
        if verdict:
            chosen.append(i)
            witnesses[i] = witness
    return chosen, witnesses


def e_admissibility_lp_text(gambles: Sequence[Gamble], m: MassFunction, i: int) -> str:
    """Debug dump of the program for gamble ``i`` as plain-text equations."""
    lp = build_e_admissibility_lp(gambles, m, i)
    layout = _allocation_layout(m)
    names = [f"a[{m.frame.labels[k]},F{j + 1}]" for k, j in layout]
    names += [f"p[{label}]" for label in m.frame.labels]
    names += [f"slack{l + 1}" for l in range(len(gambles)) if l != i]
    return lp_text(lp, names)


__all__ = [
    "Gamble",
    "lower_prevision",
    "upper_prevision",
    "maximality_relation",
    "build_e_admissibility_lp",
    "e_admissible",
    "e_admissible_set",
    "e_admissibility_lp_text",
    "LinearProgram",
    "SimplexResult",
    "simplex_solve",
]
