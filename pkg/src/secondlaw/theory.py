"""Processes and thermodynamical theories as validated immutable objects.

A process is a pair (delta_m, q): the change of condition of the body that
suffered it and its heating measure.  A theory is a state space together
with a finite generating set of processes, understood as generating the
conic hull of admissible process directions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .measures import (
    SignedMeasure,
    SpaceMismatch,
    StateSpace,
    _as_fraction,
    dirac,
    total,
    zero,
)


class MassNotConserved(ValueError):
    """delta_m does not sum to zero; reports the offending total."""

    def __init__(self, excess: Fraction):
        super().__init__(f"change of condition has nonzero total mass: {excess}")
        self.excess = excess


@dataclass(frozen=True)
class Process:
    """A (delta_m, q) pair with delta_m summing to zero exactly.

    The optional id is bookkeeping only and does not enter equality.
    """

    delta_m: SignedMeasure
    q: SignedMeasure
    id: str | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.delta_m.space != self.q.space:
            raise SpaceMismatch("delta_m and q live on different state spaces")
        excess = total(self.delta_m)
        if excess != 0:
            raise MassNotConserved(excess)

    @property
    def space(self) -> StateSpace:
        return self.delta_m.space

    def is_cyclic(self) -> bool:
        """True iff the body's condition is unchanged (delta_m = 0)."""
        return self.delta_m.is_zero()

    def is_forbidden(self) -> bool:
        """True iff cyclic with nonzero, nonnegative heating.

        Such a process absorbs heat somewhere and emits none anywhere: the
        kind of perfectly efficient cycle the Kelvin-Planck Second Law bans.
        """
        return self.is_cyclic() and self.q.is_nonnegative() and not self.q.is_zero()

    def scaled(self, alpha) -> "Process":
        """The cone element alpha * p for nonnegative rational alpha."""
        a = _as_fraction(alpha)
        if a < 0:
            raise ValueError(f"cone scaling requires alpha >= 0, got {a}")
        return Process(self.delta_m.scaled(a), self.q.scaled(a), id=self.id)

    def __add__(self, other: "Process") -> "Process":
        return Process(self.delta_m + other.delta_m, self.q + other.q)


def zero_process(space: StateSpace) -> Process:
    return Process(zero(space), zero(space))


@dataclass(frozen=True)
class TheorySpec:
    """A state space plus a finite generating set of processes."""

    space: StateSpace
    processes: tuple[Process, ...]

    def __post_init__(self) -> None:
        for p in self.processes:
            if p.space != self.space:
                raise SpaceMismatch("process does not live on the theory's state space")
        ids = [p.id for p in self.processes if p.id is not None]
        if len(set(ids)) != len(ids):
            raise ValueError("process ids must be unique")

    def __len__(self) -> int:
        return len(self.processes)

    def with_process(self, p: Process) -> "TheorySpec":
        return TheorySpec(self.space, self.processes + (p,))


def _interval_space(coords: list[Fraction]) -> StateSpace:
    ordered = sorted(set(coords))
    return StateSpace(tuple(str(c) for c in ordered), tuple(ordered))


def example_a(n_max: int) -> TheorySpec:
    """Cyclic processes (0, n*d1 - d0) for n = 1..n_max.

    Each member emits one unit of heat at state 0 and absorbs n units at
    state 1, so efficiency (n-1)/n creeps toward 1 as n grows while no
    member (and no finite conic combination) is itself forbidden.
    """
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    space = _interval_space([Fraction(0), Fraction(1)])
    d0, d1 = dirac(space, "0"), dirac(space, "1")
    procs = tuple(
        Process(zero(space), d1.scaled(n) - d0, id=f"A{n}") for n in range(1, n_max + 1)
    )
    return TheorySpec(space, procs)


def example_b(n_max: int) -> TheorySpec:
    """Near-cyclic processes (d_{1/n} - d0, n*d_{1/2}) for n = 1..n_max.

    Pure heat absorption at state 1/2, no emission anywhere; the change of
    condition shrinks as n grows, so the normalized directions drift toward
    the forbidden ray through (0, d_{1/2}).
    """
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    coords = [Fraction(0), Fraction(1, 2)] + [Fraction(1, n) for n in range(1, n_max + 1)]
    space = _interval_space(coords)
    d0 = dirac(space, "0")
    dhalf = dirac(space, str(Fraction(1, 2)))
    procs = tuple(
        Process(
            dirac(space, str(Fraction(1, n))) - d0,
            dhalf.scaled(n),
            id=f"B{n}",
        )
        for n in range(1, n_max + 1)
    )
    return TheorySpec(space, procs)
