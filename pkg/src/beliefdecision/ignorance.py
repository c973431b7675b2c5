"""Decision criteria under total ignorance of the state of nature.

Given only a payoff matrix: dominance pruning, the optimistic and
pessimistic extremes, their convex blend, row averaging, smallest
maximum regret, and rank-weighted (OWA) aggregation with
maximum-entropy weights for a prescribed degree of optimism.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import UndefinedMeasureError

OPTIMISM_TOL = 1e-8


@dataclass(frozen=True)
class PayoffMatrix:
    """Rectangular utility table: one row per act, one column per state."""

    act_names: tuple[str, ...]
    state_names: tuple[str, ...]
    utilities: tuple[tuple[float, ...], ...]

    def __init__(
        self,
        act_names: Iterable[str],
        state_names: Iterable[str],
        utilities: Iterable[Iterable[float]],
    ):
        acts = tuple(act_names)
        states = tuple(state_names)
        rows = tuple(tuple(float(v) for v in row) for row in utilities)
        if len(rows) != len(acts):
            raise ValueError(f"{len(acts)} act names but {len(rows)} utility rows")
        if not acts or not states:
            raise ValueError("payoff matrix needs at least one act and one state")
        for name, row in zip(acts, rows):
            if len(row) != len(states):
                raise ValueError(f"act {name!r} has {len(row)} utilities for {len(states)} states")
            if not all(math.isfinite(v) for v in row):
                raise ValueError(f"act {name!r} has non-finite utilities")
        object.__setattr__(self, "act_names", acts)
        object.__setattr__(self, "state_names", states)
        object.__setattr__(self, "utilities", rows)

    @property
    def n_acts(self) -> int:
        return len(self.act_names)

    @property
    def n_states(self) -> int:
        return len(self.state_names)

    def row(self, i: int) -> tuple[float, ...]:
        return self.utilities[i]

    def as_array(self) -> np.ndarray:
        return np.asarray(self.utilities, dtype=float)


def prune_dominated(matrix: PayoffMatrix) -> tuple[list[int], list[tuple[int, int]]]:
    """Indices of non-dominated acts, plus (dominated, dominator) pairs.

    An act is removed iff some other act is at least as good in every
    state and strictly better in at least one. Identical rows survive.
    """
    u = matrix.as_array()
    surviving: list[int] = []
    pairs: list[tuple[int, int]] = []
    for i in range(matrix.n_acts):
        dominator = None
        for k in range(matrix.n_acts):
            if k == i:
                continue
            if np.all(u[k] >= u[i]) and np.any(u[k] > u[i]):
                dominator = k
                break
        if dominator is None:
            surviving.append(i)
        else:
            pairs.append((i, dominator))
    return surviving, pairs


def score_ignorance(
    matrix: PayoffMatrix, criterion: str, alpha: float | None = None
) -> tuple[float, ...]:
    """Per-act scores (higher better) for one of the four aggregation criteria.

    ``criterion`` is one of ``maximin``, ``maximax``, ``hurwicz`` (needs
    the pessimism index ``alpha``), or ``laplace``.
    """
    u = matrix.as_array()
    if criterion == "maximin":
        scores = u.min(axis=1)
    elif criterion == "maximax":
        scores = u.max(axis=1)
    elif criterion == "hurwicz":
        if alpha is None:
            raise ValueError("the hurwicz criterion needs a pessimism index")
        if not 0.0 <= alpha <= 1.0:
            raise ValueError(f"pessimism index must be in [0, 1], got {alpha}")
        scores = alpha * u.min(axis=1) + (1.0 - alpha) * u.max(axis=1)
    elif criterion == "laplace":
        scores = u.mean(axis=1)
    else:
        raise ValueError(f"unknown ignorance criterion {criterion!r}")
    return tuple(float(s) for s in scores)


def minimax_regret(matrix: PayoffMatrix) -> tuple[tuple[tuple[float, ...], ...], tuple[float, ...]]:
    """Regret matrix (column best minus entry) and each act's maximum regret.

    Lower maximum regret is better. Every column of the regret matrix
    contains a zero.
    """
    u = matrix.as_array()
    regret = u.max(axis=0)[None, :] - u
    max_regret = regret.max(axis=1)
    return (
        tuple(tuple(float(v) for v in row) for row in regret),
        tuple(float(v) for v in max_regret),
    )


@dataclass(frozen=True)
class OwaWeights:
    """Nonnegative rank weights summing to one; ``w[0]`` weights the largest value."""

    w: tuple[float, ...]

    def __init__(self, w: Iterable[float]):
        weights = tuple(float(v) for v in w)
        if any(v < 0 for v in weights):
            raise ValueError(f"weights must be nonnegative, got {weights}")
        total = math.fsum(weights)
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"weights sum to {total!r}, expected 1")
        object.__setattr__(self, "w", weights)

    @property
    def arity(self) -> int:
        return len(self.w)


def owa_aggregate(values: Sequence[float], weights: OwaWeights) -> float:
    """Weighted sum of the values sorted in decreasing order."""
    if len(values) != weights.arity:
        raise ValueError(f"{len(values)} values for {weights.arity} weights")
    ordered = sorted(values, reverse=True)
    return math.fsum(wi * xi for wi, xi in zip(weights.w, ordered))


def degree_of_optimism(weights: OwaWeights) -> float:
    """Rank-weighted summary in [0, 1]: 1 for max, 0 for min, 0.5 for mean."""
    s = weights.arity
    if s < 2:
        raise UndefinedMeasureError("degree of optimism is undefined for arity 1")
    return math.fsum(wi * (s - i) / (s - 1) for i, wi in enumerate(weights.w, start=1))


def max_entropy_owa_weights(s: int, beta: float) -> OwaWeights:
    """The entropy-maximizing weight vector with degree of optimism ``beta``.

    The maximizer is log-linear in rank, w_i proportional to
    exp(lambda * (s-i)/(s-1)); lambda is found by bisection since the
    degree of optimism is strictly increasing in it. beta = 0 and
    beta = 1 return the exact corner vectors, beta = 0.5 the exact
    uniform vector.
    """
    if s < 2:
        raise UndefinedMeasureError("need at least two ranks for OWA weights")
    if not 0.0 <= beta <= 1.0:
        raise ValueError(f"degree of optimism must be in [0, 1], got {beta}")
    if beta == 0.0:
        return OwaWeights((0.0,) * (s - 1) + (1.0,))
    if beta == 1.0:
        return OwaWeights((1.0,) + (0.0,) * (s - 1))
    if beta == 0.5:
        return OwaWeights((1.0 / s,) * s)

    q = np.array([(s - i) / (s - 1) for i in range(1, s + 1)])

    def optimism(lam: float) -> float:
        z = lam * q
        z -= z.max()
        w = np.exp(z)
        w /= w.sum()
        return float(w @ q)

    lo, hi = -200.0, 200.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if optimism(mid) < beta:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-13:
            break
    lam = 0.5 * (lo + hi)
    z = lam * q
    z -= z.max()
    w = np.exp(z)
    w /= w.sum()
    return OwaWeights(tuple(float(v) for v in w))
