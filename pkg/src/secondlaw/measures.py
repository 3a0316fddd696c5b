"""Finite state spaces and exact rational signed measures on them.

A state space is an ordered finite set of opaque labels; a signed measure
is one exact rational per state.  Conditions (nonnegative measures) carry
mass, heating measures carry energy.  Every operation here is exact: no
floating point enters at any stage.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence


class SpaceMismatch(ValueError):
    """Two measures (or a measure and a host object) live on different spaces."""


class UnknownState(KeyError):
    """A state label is not part of the given state space."""

    def __str__(self) -> str:  # KeyError quotes its payload otherwise
        return self.args[0] if self.args else ""


@dataclass(frozen=True)
class StateSpace:
    """Ordered finite set of state labels.

    The ordering is fixed at construction and defines the component index
    of every measure on the space.  Coordinates are optional display/binning
    metadata; they play no role in any computation and none in equality.
    """

    states: tuple[str, ...]
    coords: tuple[Fraction, ...] | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if not self.states:
            raise ValueError("state space must be nonempty")
        if len(set(self.states)) != len(self.states):
            raise ValueError("state labels must be pairwise distinct")
        if self.coords is not None and len(self.coords) != len(self.states):
            raise ValueError("coords length must match number of states")

    @cached_property
    def _index(self) -> dict[str, int]:
        return {s: i for i, s in enumerate(self.states)}

    def __len__(self) -> int:
        return len(self.states)

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownState(f"unknown state label: {label!r}") from None

    def __contains__(self, label: str) -> bool:
        return label in self._index


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r} ({type(x).__name__})")


@dataclass(frozen=True, eq=False)
class SignedMeasure:
    """Dense exact-rational set function on a finite state space.

    Equality is componentwise exact and by value, so a nonnegative measure
    compares equal to the identical plain measure.
    """

    space: StateSpace
    values: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.values) != len(self.space):
            raise ValueError(
                f"measure has {len(self.values)} components for "
                f"{len(self.space)} states"
            )
        coerced = tuple(_as_fraction(v) for v in self.values)
        object.__setattr__(self, "values", coerced)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SignedMeasure):
            return NotImplemented
        return self.space == other.space and self.values == other.values

    def __hash__(self) -> int:
        return hash((self.space, self.values))

    def __getitem__(self, label: str) -> Fraction:
        return self.values[self.space.index(label)]

    def __add__(self, other: "SignedMeasure") -> "SignedMeasure":
        _require_same_space(self, other)
        return SignedMeasure(self.space, tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: "SignedMeasure") -> "SignedMeasure":
        _require_same_space(self, other)
        return SignedMeasure(self.space, tuple(a - b for a, b in zip(self.values, other.values)))

    def __neg__(self) -> "SignedMeasure":
        return SignedMeasure(self.space, tuple(-a for a in self.values))

    def scaled(self, alpha) -> "SignedMeasure":
        a = _as_fraction(alpha)
        return SignedMeasure(self.space, tuple(a * v for v in self.values))

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.values)

    def is_nonnegative(self) -> bool:
        return all(v >= 0 for v in self.values)


@dataclass(frozen=True, eq=False)
class Condition(SignedMeasure):
    """A nonnegative measure: the distribution of a body's mass over states."""

    def __post_init__(self) -> None:
        super().__post_init__()
        for label, v in zip(self.space.states, self.values):
            if v < 0:
                raise ValueError(f"condition is negative at state {label!r}: {v}")


def _require_same_space(a: SignedMeasure, b: SignedMeasure) -> None:
    if a.space != b.space:
        raise SpaceMismatch("measures live on different state spaces")


def zero(space: StateSpace) -> SignedMeasure:
    return SignedMeasure(space, (Fraction(0),) * len(space))


def total(m: SignedMeasure) -> Fraction:
    """Sum of all components: the measure of the whole space."""
    return sum(m.values, Fraction(0))


def dirac(space: StateSpace, label: str) -> Condition:
    """Unit mass concentrated at one state."""
    i = space.index(label)
    values = tuple(Fraction(1 if j == i else 0) for j in range(len(space)))
    return Condition(space, values)


def combine(
    coeffs: Sequence, measures: Sequence[SignedMeasure], *, space: StateSpace | None = None
) -> SignedMeasure:
    """Exact componentwise linear combination sum(c_i * m_i).

    All measures must share one space.  For the empty combination the target
    space must be supplied explicitly.
    """
    if len(coeffs) != len(measures):
        raise ValueError(f"{len(coeffs)} coefficients for {len(measures)} measures")
    if not measures:
        if space is None:
            raise ValueError("empty combination requires an explicit space")
        return zero(space)
    host = measures[0].space
    if space is not None and space != host:
        raise SpaceMismatch("explicit space disagrees with the measures' space")
    for m in measures[1:]:
        _require_same_space(measures[0], m)
    acc = [Fraction(0)] * len(host)
    for c, m in zip(coeffs, measures):
        cf = _as_fraction(c)
        if cf == 0:
            continue
        for i, v in enumerate(m.values):
            if v:
                acc[i] += cf * v
    return SignedMeasure(host, tuple(acc))


def negative_part(m: SignedMeasure) -> Condition:
    """Componentwise max(-value, 0)."""
    return Condition(m.space, tuple(max(-v, Fraction(0)) for v in m.values))


def positive_part(m: SignedMeasure) -> Condition:
    """Componentwise max(value, 0)."""
    return Condition(m.space, tuple(max(v, Fraction(0)) for v in m.values))


def l1_norm(m: SignedMeasure) -> Fraction:
    return sum((abs(v) for v in m.values), Fraction(0))
