"""Derive processes and histories from body-level records.

A record names a finite set of material points with positive masses, a
strictly increasing time grid, the state of every point at every sample
time, and the heat each point received over each interval.  Pushing the
mass assignment forward along the state map gives the body's condition at
each instant; attributing each interval's heat to the state its point
occupied at the interval's start gives the heating measure.  Records are
assumed to be sampled finely enough that left-endpoint attribution is
immaterial.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .histories import ProcessHistory
from .measures import SignedMeasure, StateSpace, zero
from .theory import Process

_F0 = Fraction(0)


@dataclass(frozen=True)
class BodyProcessRecord:
    point_ids: tuple[str, ...]
    masses: tuple[Fraction, ...]
    times: tuple[Fraction, ...]
    states: tuple[tuple[str, ...], ...]  # per point, one label per sample time
    heat: tuple[tuple[Fraction, ...], ...]  # per point, one increment per interval

    def __post_init__(self) -> None:
        npts, ntimes = len(self.point_ids), len(self.times)
        if npts == 0:
            raise ValueError("record needs at least one material point")
        if len(set(self.point_ids)) != npts:
            raise ValueError("point ids must be distinct")
        if len(self.masses) != npts:
            raise ValueError("one mass per point required")
        if any(m <= 0 for m in self.masses):
            raise ValueError("point masses must be strictly positive")
        if ntimes < 2:
            raise ValueError("record needs at least an initial and a final time")
        if any(a >= b for a, b in zip(self.times, self.times[1:])):
            raise ValueError("record times must be strictly increasing")
        if len(self.states) != npts or any(len(row) != ntimes for row in self.states):
            raise ValueError("state table must assign every point a state at every time")
        if len(self.heat) != npts or any(len(row) != ntimes - 1 for row in self.heat):
            raise ValueError("heat table must cover every point on every interval")

    @property
    def num_intervals(self) -> int:
        return len(self.times) - 1


def _pushforward(rec: BodyProcessRecord, space: StateSpace, time_idx: int) -> SignedMeasure:
    acc = [_F0] * len(space)
    for mass, row in zip(rec.masses, rec.states):
        acc[space.index(row[time_idx])] += mass
    return SignedMeasure(space, tuple(acc))


def _interval_heat(rec: BodyProcessRecord, space: StateSpace, k: int) -> SignedMeasure:
    acc = [_F0] * len(space)
    for states_row, heat_row in zip(rec.states, rec.heat):
        inc = heat_row[k]
        if inc:
            acc[space.index(states_row[k])] += inc
    return SignedMeasure(space, tuple(acc))


def derive_process(rec: BodyProcessRecord, space: StateSpace) -> Process:
    """Overall (delta_m, q): final minus initial condition, total heat by state."""
    dm = _pushforward(rec, space, len(rec.times) - 1) - _pushforward(rec, space, 0)
    q = zero(space)
    for k in range(rec.num_intervals):
        q = q + _interval_heat(rec, space, k)
    return Process(dm, q)


def derive_history(rec: BodyProcessRecord, space: StateSpace) -> ProcessHistory:
    """Cumulative trajectory through the record, clock shifted to start at 0."""
    t0 = rec.times[0]
    taus = tuple(t - t0 for t in rec.times)
    m0 = _pushforward(rec, space, 0)
    dm = [zero(space)]
    qq = [zero(space)]
    for k in range(1, len(rec.times)):
        dm.append(_pushforward(rec, space, k) - m0)
        qq.append(qq[-1] + _interval_heat(rec, space, k - 1))
    return ProcessHistory(space, taus, tuple(dm), tuple(qq))


def merge_records(a: BodyProcessRecord, b: BodyProcessRecord) -> BodyProcessRecord:
    """One record for two disjoint bodies run over the same time grid.

    The derived process of the merge is the sum of the two derived
    processes: remote simultaneous execution.
    """
    if a.times != b.times:
        raise ValueError("records must share one time grid to merge")
    if set(a.point_ids) & set(b.point_ids):
        raise ValueError("records must have disjoint point ids to merge")
    return BodyProcessRecord(
        point_ids=a.point_ids + b.point_ids,
        masses=a.masses + b.masses,
        times=a.times,
        states=a.states + b.states,
        heat=a.heat + b.heat,
    )


def record_heat_total(rec: BodyProcessRecord) -> Fraction:
    """Sum of every heat entry; pushforward preserves it as total(q)."""
    return sum((h for row in rec.heat for h in row), _F0)
