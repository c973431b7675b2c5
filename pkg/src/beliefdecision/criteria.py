"""Complete-preorder criteria over evidential lotteries.

A lottery is a mass function over consequences together with a utility
table. Each criterion aggregates the utilities inside every focal set
into one number and averages those by the focal masses, so all of them
collapse to ordinary expected utility on Bayesian lotteries.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Callable, Mapping

from .core import Frame, MassFunction, UtilityTable, iter_elements, nonspecificity
from .errors import FrameMismatchError
from .ignorance import OwaWeights, PayoffMatrix, max_entropy_owa_weights, minimax_regret


def _check_lottery(mu: MassFunction, u: UtilityTable) -> None:
    if mu.frame != u.frame:
        raise FrameMismatchError(
            f"lottery frame {mu.frame.labels!r} differs from utility frame {u.frame.labels!r}"
        )


def lower_expectation(mu: MassFunction, u: UtilityTable) -> float:
    """Mass-weighted average of the worst utility in each focal set."""
    _check_lottery(mu, u)
    return math.fsum(v * min(u.over(a)) for a, v in mu.items())


def upper_expectation(mu: MassFunction, u: UtilityTable) -> float:
    """Mass-weighted average of the best utility in each focal set."""
    _check_lottery(mu, u)
    return math.fsum(v * max(u.over(a)) for a, v in mu.items())


def generalized_hurwicz(mu: MassFunction, u: UtilityTable, alpha: float) -> float:
    """Convex blend of the lower and upper expectations.

    ``alpha`` is the pessimism index: 1 gives the lower expectation,
    0 the upper.
    """
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"pessimism index must be in [0, 1], got {alpha}")
    return alpha * lower_expectation(mu, u) + (1.0 - alpha) * upper_expectation(mu, u)


def auto_hurwicz_alpha(mu: MassFunction) -> float:
    """Pessimism index chosen as the lottery's own nonspecificity.

    The blend then becomes more cautious the more ambiguous the
    lottery is: 1 for vacuous, 0 for Bayesian.
    """
    return nonspecificity(mu)


def pignistic_expected_utility(mu: MassFunction, u: UtilityTable) -> float:
    """Mass-weighted average of the mean utility in each focal set.

    Equals expected utility under the pignistic probability.
    """
    _check_lottery(mu, u)
    return math.fsum(v * math.fsum(u.over(a)) / a.bit_count() for a, v in mu.items())


@lru_cache(maxsize=4096)
def _owa_weights_cached(arity: int, beta: float) -> OwaWeights:
    return max_entropy_owa_weights(arity, beta)


def generalized_owa_expected_utility(mu: MassFunction, u: UtilityTable, beta: float) -> float:
    """Mass-weighted average of rank-weighted utilities per focal set.

    Each focal set's utilities are aggregated by the maximum-entropy
    OWA operator of matching arity and degree of optimism ``beta``.
    beta = 0 gives the lower expectation, 1 the upper, and 0.5 the
    pignistic expected utility.
    """
    if not 0.0 <= beta <= 1.0:
        raise ValueError(f"degree of optimism must be in [0, 1], got {beta}")
    _check_lottery(mu, u)
    terms = []
    for a, v in mu.items():
        values = u.over(a)
        if len(values) == 1:
            terms.append(v * values[0])
        else:
            weights = _owa_weights_cached(len(values), beta)
            ordered = sorted(values, reverse=True)
            terms.append(v * math.fsum(w * x for w, x in zip(weights.w, ordered)))
    return math.fsum(terms)


def generalized_minimax_regret(matrix: PayoffMatrix, m: MassFunction) -> tuple[float, ...]:
    """Expected maximal regret of each act under a mass function on states.

    Per focal set the worst regret inside the set is taken, then the
    worst cases are averaged by the masses. Lower is better. Reduces to
    the classical maximal regret for a logical mass on the whole frame,
    and ranks like expected utility for Bayesian masses.
    """
    if m.frame.labels != matrix.state_names:
        raise FrameMismatchError(
            f"mass frame {m.frame.labels!r} differs from payoff states {matrix.state_names!r}"
        )
    regret, _ = minimax_regret(matrix)
    out = []
    for i in range(matrix.n_acts):
        row = regret[i]
        out.append(math.fsum(v * max(row[j] for j in iter_elements(a)) for a, v in m.items()))
    return tuple(out)


class SetUtility:
    """A real utility for every non-empty subset of a consequence frame."""

    __slots__ = ("frame", "_table")

    def __init__(self, frame: Frame, table: Mapping[object, float]):
        self.frame = frame
        encoded = {frame.subset(k): float(v) for k, v in table.items()}
        missing = [a for a in frame.subsets() if a not in encoded]
        if missing:
            raise ValueError(
                f"set utility is missing {len(missing)} non-empty subsets (first: "
                f"{frame.members(missing[0])!r})"
            )
        if 0 in encoded:
            raise ValueError("set utility must not assign a value to the empty set")
        self._table = encoded

    @classmethod
    def from_function(cls, frame: Frame, fn: Callable[[tuple[float, ...]], float],
                      u: UtilityTable) -> "SetUtility":
        """Tabulate ``fn`` over the utility values of every non-empty subset."""
        return cls(frame, {a: fn(u.over(a)) for a in frame.subsets()})

    def __call__(self, subset_mask: int) -> float:
        return self._table[subset_mask]


def linear_set_utility(mu: MassFunction, set_utility: SetUtility) -> float:
    """Mass-weighted sum of per-focal-set utilities.

    The common linear form behind the lower/upper, blended, pignistic
    and OWA criteria; each is recovered by the corresponding choice of
    the set utility.
    """
    if mu.frame != set_utility.frame:
        raise FrameMismatchError(
            f"lottery frame {mu.frame.labels!r} differs from set-utility frame "
            f"{set_utility.frame.labels!r}"
        )
    return math.fsum(v * set_utility(a) for a, v in mu.items())


class LocalPessimismIndex:
    """Pessimism weight for every ordered (worst, best) consequence pair.

    Either a constant in [0, 1] applied to all pairs, or an explicit
    table keyed by (worst label, best label).
    """

    __slots__ = ("_constant", "_table")

    def __init__(self, table: Mapping[tuple[str, str], float]):
        for pair, value in table.items():
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"pessimism index {value} for pair {pair!r} outside [0, 1]")
        self._constant = None
        self._table = dict(table)

    @classmethod
    def constant(cls, alpha: float) -> "LocalPessimismIndex":
        if not 0.0 <= alpha <= 1.0:
            raise ValueError(f"pessimism index must be in [0, 1], got {alpha}")
        obj = cls.__new__(cls)
        obj._constant = alpha
        obj._table = {}
        return obj

    def __call__(self, worst: str, best: str) -> float:
        if self._constant is not None:
            return self._constant
        try:
            return self._table[(worst, best)]
        except KeyError:
            raise KeyError(f"no pessimism index for the pair ({worst!r}, {best!r})") from None


def jaffray_utility(mu: MassFunction, u: UtilityTable, index: LocalPessimismIndex) -> float:
    """Blend of worst and best utility per focal set with a pair-dependent weight.

    For each focal set the worst and best consequences under ``u`` are
    found (ties broken by frame order) and combined with the pair's
    local pessimism index. A constant index reduces to the plain blended
    criterion.
    """
    _check_lottery(mu, u)
    terms = []
    for a, v in mu.items():
        indices = list(iter_elements(a))
        worst = min(indices, key=lambda i: (u.of_index(i), i))
        best = max(indices, key=lambda i: (u.of_index(i), -i))
        alpha = index(mu.frame.labels[worst], mu.frame.labels[best])
        terms.append(v * (alpha * u.of_index(worst) + (1.0 - alpha) * u.of_index(best)))
    return math.fsum(terms)
