"""Finite-frame belief-function calculus.

Mass functions over a finite frame, their belief/plausibility set
functions, the inversion recovering masses from a belief function,
pushforward of masses through (possibly multi-valued) acts, probability
transforms, the normalized nonspecificity measure, and enumeration of
the extreme points of the credal set.

Subsets of a frame are encoded as integer bitmasks over the frame's
declared element order, which makes subset algebra and equality exact.
Frames are capped at 24 elements.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Union

from .errors import (
    FrameMismatchError,
    FrameSizeError,
    InvalidMassError,
    NotABeliefFunctionError,
    SizeLimitError,
    UndefinedMeasureError,
)

MAX_FRAME_SIZE = 24
MASS_SUM_TOL = 1e-9
MOBIUS_NEG_TOL = 1e-9

SubsetLike = Union[int, Iterable[str]]


@dataclass(frozen=True)
class Frame:
    """An ordered finite frame of distinct element labels.

    The label order is fixed at construction and defines the bit
    encoding of subsets: bit ``i`` set means the ``i``-th label is in
    the subset.
    """

    labels: tuple[str, ...]

    def __init__(self, labels: Iterable[str]):
        labels = tuple(labels)
        if not labels:
            raise FrameSizeError("a frame needs at least one element")
        if len(labels) > MAX_FRAME_SIZE:
            raise FrameSizeError(
                f"frame has {len(labels)} elements; at most {MAX_FRAME_SIZE} supported"
            )
        if len(set(labels)) != len(labels):
            raise ValueError(f"frame labels must be unique, got {labels!r}")
        object.__setattr__(self, "labels", labels)

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def full_set(self) -> int:
        """Bitmask of the whole frame."""
        return (1 << self.size) - 1

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"label {label!r} not in frame {self.labels!r}") from None

    def subset(self, members: SubsetLike) -> int:
        """Encode a subset (iterable of labels, or a bitmask) as a bitmask.

        Labels outside the frame raise :class:`FrameMismatchError`.
        """
        if isinstance(members, int):
            if members < 0 or members > self.full_set:
                raise ValueError(f"bitmask {members} out of range for frame of size {self.size}")
            return members
        mask = 0
        for label in members:
            try:
                mask |= 1 << self.index(label)
            except KeyError:
                raise FrameMismatchError(
                    f"label {label!r} is not in the frame {self.labels!r}"
                ) from None
        return mask

    def members(self, mask: int) -> tuple[str, ...]:
        """Decode a bitmask into the tuple of labels it contains."""
        return tuple(self.labels[i] for i in range(self.size) if mask >> i & 1)

    def singletons(self) -> Iterator[int]:
        return (1 << i for i in range(self.size))

    def subsets(self, include_empty: bool = False) -> Iterator[int]:
        """All subsets in increasing bitmask order."""
        return iter(range(0 if include_empty else 1, self.full_set + 1))


def iter_elements(mask: int) -> Iterator[int]:
    """Indices of the set bits of a subset mask, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def iter_submasks(mask: int) -> Iterator[int]:
    """All non-empty submasks of ``mask``."""
    sub = mask
    while sub:
        yield sub
        sub = (sub - 1) & mask


class MassFunction:
    """A normalized assignment of mass to non-empty subsets of a frame.

    Every stored mass is strictly positive and the masses sum to one
    (tolerance 1e-9). Instances are immutable; all derived quantities
    are computed on demand.
    """

    __slots__ = ("frame", "_focal")

    def __init__(self, frame: Frame, masses: Mapping[SubsetLike, float]):
        focal: dict[int, float] = {}
        for key, value in masses.items():
            mask = frame.subset(key)
            if mask == 0:
                raise InvalidMassError("mass assigned to the empty set")
            if value < 0:
                raise InvalidMassError(f"negative mass {value} on {frame.members(mask)!r}")
            if value == 0:
                continue
            focal[mask] = focal.get(mask, 0.0) + value
        total = math.fsum(focal.values())
        if abs(total - 1.0) > MASS_SUM_TOL:
            raise InvalidMassError(f"masses sum to {total!r}, expected 1 within {MASS_SUM_TOL}")
        if not focal:
            raise InvalidMassError("mass function has no focal sets")
        self.frame = frame
        self._focal = dict(sorted(focal.items()))

    @classmethod
    def vacuous(cls, frame: Frame) -> "MassFunction":
        """Total ignorance: all mass on the whole frame."""
        return cls(frame, {frame.full_set: 1.0})

    @classmethod
    def bayesian(cls, frame: Frame, probabilities: Iterable[float]) -> "MassFunction":
        """All mass on singletons, from a probability vector in frame order."""
        probs = tuple(probabilities)
        if len(probs) != frame.size:
            raise InvalidMassError("probability vector length differs from frame size")
        return cls(frame, {1 << i: p for i, p in enumerate(probs)})

    def items(self) -> Iterator[tuple[int, float]]:
        """(focal bitmask, mass) pairs in ascending bitmask order."""
        return iter(self._focal.items())

    def focal_sets(self) -> tuple[int, ...]:
        return tuple(self._focal)

    def mass(self, subset: SubsetLike) -> float:
        return self._focal.get(self.frame.subset(subset), 0.0)

    def __len__(self) -> int:
        return len(self._focal)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MassFunction):
            return NotImplemented
        return self.frame == other.frame and self._focal == other._focal

    def isclose(self, other: "MassFunction", *, tol: float = 1e-9) -> bool:
        """Same frame and focal sets, masses equal within ``tol``."""
        return (
            self.frame == other.frame
            and self.focal_sets() == other.focal_sets()
            and all(abs(self._focal[a] - other._focal[a]) <= tol for a in self._focal)
        )

    def __repr__(self) -> str:
        parts = ", ".join(
            f"{{{','.join(self.frame.members(a))}}}:{v:g}" for a, v in self._focal.items()
        )
        return f"MassFunction({parts})"

    def is_bayesian(self) -> bool:
        """True iff every focal set is a singleton."""
        return all(a & (a - 1) == 0 for a in self._focal)

    def is_logical(self) -> bool:
        """True iff there is a single focal set."""
        return len(self._focal) == 1

    def normalized(self) -> "MassFunction":
        """Explicitly rescale masses to sum to one (never done silently)."""
        total = math.fsum(self._focal.values())
        out = MassFunction.__new__(MassFunction)
        out.frame = self.frame
        out._focal = {a: v / total for a, v in self._focal.items()}
        return out

    def _check_frame(self, other_frame: Frame) -> None:
        if other_frame != self.frame:
            raise FrameMismatchError(
                f"expected frame {self.frame.labels!r}, got {other_frame.labels!r}"
            )


def belief(m: MassFunction, subset: SubsetLike) -> float:
    """Total mass of focal sets included in ``subset``.

    The probability that the evidence implies the proposition. Subsets
    with labels outside the frame raise :class:`FrameMismatchError`.
    """
    a = m.frame.subset(subset)
    return math.fsum(v for b, v in m.items() if b & ~a == 0)


def plausibility(m: MassFunction, subset: SubsetLike) -> float:
    """Total mass of focal sets intersecting ``subset``.

    The probability that the evidence does not contradict the
    proposition; equals ``1 - belief(complement)``.
    """
    a = m.frame.subset(subset)
    return math.fsum(v for b, v in m.items() if b & a)


def belief_table(m: MassFunction) -> dict[int, float]:
    """Belief values for every subset of the frame (empty set included)."""
    return {a: belief(m, a) for a in range(m.frame.full_set + 1)}


def mass_from_belief(frame: Frame, bel: Mapping[SubsetLike, float]) -> MassFunction:
    """Recover the unique mass function whose belief function is ``bel``.

    ``bel`` must cover every subset of ``frame``. Inversion computes
    alternating-sign sums over non-empty subsets; values in
    [-1e-9, 0) are treated as round-off and clamped to zero, anything
    more negative fails with :class:`NotABeliefFunctionError`.
    """
    table = {frame.subset(k): float(v) for k, v in bel.items()}
    full = frame.full_set
    missing = [a for a in range(full + 1) if a not in table]
    if missing:
        raise ValueError(f"belief table is missing {len(missing)} subsets (first: {missing[0]})")
    if abs(table[0]) > MASS_SUM_TOL:
        raise NotABeliefFunctionError(f"belief of the empty set is {table[0]!r}, expected 0")
    if abs(table[full] - 1.0) > MASS_SUM_TOL:
        raise NotABeliefFunctionError(f"belief of the full frame is {table[full]!r}, expected 1")

    masses: dict[int, float] = {}
    for a in range(1, full + 1):
        size_a = a.bit_count()
        value = math.fsum(
            (-1.0 if (size_a - b.bit_count()) % 2 else 1.0) * table[b] for b in iter_submasks(a)
        )
        if value < -MOBIUS_NEG_TOL:
            raise NotABeliefFunctionError(
                f"inversion yields mass {value!r} on {frame.members(a)!r}; "
                "input is not a belief function"
            )
        # |value| <= 1e-9 is round-off either way; keep only genuine mass
        if value > MOBIUS_NEG_TOL:
            masses[a] = value
    return MassFunction(frame, masses)


def pushforward(m: MassFunction, act: "Act") -> MassFunction:
    """Carry a mass function on states through an act.

    Each focal mass is transferred to the union of the act's images
    over the focal set; masses landing on the same image are summed.
    """
    m._check_frame(act.states)
    out: dict[int, float] = {}
    for a, v in m.items():
        image = act.image_of(a)
        out[image] = out.get(image, 0.0) + v
    return MassFunction(act.consequences, out)


def pignistic(m: MassFunction) -> tuple[float, ...]:
    """Probability vector splitting each focal mass equally among its elements."""
    p = [0.0] * m.frame.size
    for a, v in m.items():
        share = v / a.bit_count()
        for i in iter_elements(a):
            p[i] += share
    return tuple(p)


def plausibility_transform(m: MassFunction) -> tuple[float, ...]:
    """Probability vector proportional to singleton plausibilities."""
    pl = [plausibility(m, 1 << i) for i in range(m.frame.size)]
    total = math.fsum(pl)
    return tuple(v / total for v in pl)


def nonspecificity(m: MassFunction) -> float:
    """Normalized imprecision measure: 0 for Bayesian, 1 for vacuous masses."""
    if m.frame.size < 2:
        raise UndefinedMeasureError("nonspecificity is undefined on a one-element frame")
    raw = math.fsum(v * math.log2(a.bit_count()) for a, v in m.items())
    return raw / math.log2(m.frame.size)


def credal_vertices(m: MassFunction, *, allocation_cap: int = 10**6) -> list[tuple[float, ...]]:
    """Extreme points of the set of probabilities compatible with ``m``.

    Enumerates every allocation that sends each focal mass entirely to
    one of its elements; duplicate probability vectors are removed.
    Raises :class:`SizeLimitError` when the number of allocations would
    exceed ``allocation_cap``.
    """
    focal = list(m.items())
    count = 1
    for a, _ in focal:
        count *= a.bit_count()
        if count > allocation_cap:
            raise SizeLimitError(
                f"{count}+ allocations exceed the cap of {allocation_cap}; "
                "raise allocation_cap to enumerate anyway"
            )
    element_lists = [list(iter_elements(a)) for a, _ in focal]
    seen: set[tuple[float, ...]] = set()
    vertices: list[tuple[float, ...]] = []
    for choice in itertools.product(*element_lists):
        p = [0.0] * m.frame.size
        for (_, v), target in zip(focal, choice):
            p[target] += v
        vec = tuple(p)
        key = tuple(round(x, 12) for x in vec)
        if key not in seen:
            seen.add(key)
            vertices.append(vec)
    return vertices


@dataclass(frozen=True)
class Act:
    """A (possibly multi-valued) mapping from states to consequence sets.

    ``images[i]`` is the non-empty bitmask of consequences the act can
    yield in state ``i``. Singleton images encode an ordinary
    point-valued act.
    """

    name: str
    states: Frame
    consequences: Frame
    images: tuple[int, ...]

    def __post_init__(self):
        if len(self.images) != self.states.size:
            raise ValueError(
                f"act {self.name!r} defines {len(self.images)} images "
                f"for {self.states.size} states"
            )
        for i, image in enumerate(self.images):
            if image == 0:
                raise ValueError(
                    f"act {self.name!r} has an empty consequence set in state "
                    f"{self.states.labels[i]!r}"
                )

    @classmethod
    def from_mapping(
        cls,
        name: str,
        states: Frame,
        consequences: Frame,
        mapping: Mapping[str, Iterable[str]],
    ) -> "Act":
        """Build an act from a {state label: consequence labels} mapping."""
        images = []
        for state in states.labels:
            if state not in mapping:
                raise ValueError(f"act {name!r} gives no consequences for state {state!r}")
            images.append(consequences.subset(mapping[state]))
        return cls(name, states, consequences, tuple(images))

    def is_point_valued(self) -> bool:
        return all(img & (img - 1) == 0 for img in self.images)

    def image_of(self, subset_mask: int) -> int:
        """Union of the images over a subset of states."""
        out = 0
        for i in iter_elements(subset_mask):
            out |= self.images[i]
        return out


class UtilityTable:
    """Real-valued utility for every consequence of a frame."""

    __slots__ = ("frame", "values")

    def __init__(self, frame: Frame, values: Mapping[str, float] | Iterable[float]):
        self.frame = frame
        if isinstance(values, Mapping):
            missing = [c for c in frame.labels if c not in values]
            if missing:
                raise ValueError(f"utility table is missing consequences {missing!r}")
            vals = tuple(float(values[c]) for c in frame.labels)
        else:
            vals = tuple(float(v) for v in values)
            if len(vals) != frame.size:
                raise ValueError("utility vector length differs from frame size")
        if not all(math.isfinite(v) for v in vals):
            raise ValueError("utilities must be finite")
        self.values = vals

    def __call__(self, consequence: str) -> float:
        return self.values[self.frame.index(consequence)]

    def of_index(self, i: int) -> float:
        return self.values[i]

    def over(self, mask: int) -> tuple[float, ...]:
        """Utilities of the consequences in a subset, in frame order."""
        return tuple(self.values[i] for i in iter_elements(mask))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UtilityTable):
            return NotImplemented
        return self.frame == other.frame and self.values == other.values
