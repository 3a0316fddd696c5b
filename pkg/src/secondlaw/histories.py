"""Time-sampled process histories and their combination algebra.

A history is a trajectory of cumulative (delta_m, q) values on a strictly
increasing rational grid running from 0 to its duration, zero at time 0
and mass-conserving at every sample.  Between samples the trajectory is
piecewise constant, held from the left grid point, which keeps grid
refinement lossless and all arithmetic exact.

The operations here realize, on explicit trajectories, the closure story
behind conic combination of processes: simultaneous execution of
equal-duration histories adds endpoints, subdividing a history into N
simultaneous segments divides its duration without changing its endpoint,
and the two together produce any positive rational combination.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .measures import SignedMeasure, SpaceMismatch, StateSpace, total, zero
from .theory import Process

_F0 = Fraction(0)
_F1 = Fraction(1)


class DurationMismatch(ValueError):
    """Simultaneous execution requires equal durations."""


class OffGridTime(ValueError):
    """A requested time is not a sample point of the history."""


@dataclass(frozen=True)
class ProcessHistory:
    space: StateSpace
    times: tuple[Fraction, ...]
    delta_m: tuple[SignedMeasure, ...]
    q: tuple[SignedMeasure, ...]

    def __post_init__(self) -> None:
        if len(self.times) < 2:
            raise ValueError("a history needs at least the samples at 0 and duration")
        if self.times[0] != 0:
            raise ValueError("sample grid must start at time 0")
        if any(a >= b for a, b in zip(self.times, self.times[1:])):
            raise ValueError("sample grid must be strictly increasing")
        if len(self.delta_m) != len(self.times) or len(self.q) != len(self.times):
            raise ValueError("trajectory must carry one (delta_m, q) pair per sample")
        for m in (*self.delta_m, *self.q):
            if m.space != self.space:
                raise SpaceMismatch("trajectory sample lives on a different state space")
        if not self.delta_m[0].is_zero() or not self.q[0].is_zero():
            raise ValueError("trajectory must be zero at time 0")
        for tau, m in zip(self.times, self.delta_m):
            if total(m) != 0:
                raise ValueError(f"mass not conserved at sample t = {tau}")

    @property
    def duration(self) -> Fraction:
        return self.times[-1]

    def _locate(self, t: Fraction) -> int:
        """Index of the last sample at or before t (step interpolation)."""
        lo, hi = 0, len(self.times) - 1
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if self.times[mid] <= t:
                lo = mid
            else:
                hi = mid - 1
        return lo

    def at(self, t: Fraction) -> tuple[SignedMeasure, SignedMeasure]:
        if t < 0 or t > self.duration:
            raise ValueError(f"time {t} outside [0, {self.duration}]")
        k = self._locate(t)
        return self.delta_m[k], self.q[k]


def zero_history(space: StateSpace, duration: Fraction) -> ProcessHistory:
    d = Fraction(duration)
    if d <= 0:
        raise ValueError("duration must be positive")
    z = zero(space)
    return ProcessHistory(space, (_F0, d), (z, z), (z, z))


def endpoint_process(h: ProcessHistory) -> Process:
    """The overall (delta_m, q) record the history realizes."""
    return Process(h.delta_m[-1], h.q[-1])


def restrict(h: ProcessHistory, a: Fraction, b: Fraction) -> Process:
    """The sub-process between two on-grid instants a < b."""
    a, b = Fraction(a), Fraction(b)
    if a >= b:
        raise ValueError(f"restriction needs a < b, got [{a}, {b}]")
    for t in (a, b):
        if t not in h.times:
            raise OffGridTime(f"time {t} is not on the sample grid; refine first")
    ia, ib = h.times.index(a), h.times.index(b)
    return Process(h.delta_m[ib] - h.delta_m[ia], h.q[ib] - h.q[ia])


def refine(h: ProcessHistory, extra: tuple[Fraction, ...]) -> ProcessHistory:
    """Add sample points inside [0, duration]; values step-interpolate."""
    wanted = sorted(set(h.times) | {Fraction(t) for t in extra})
    if wanted[0] < 0 or wanted[-1] > h.duration:
        raise ValueError("refinement points must lie within [0, duration]")
    dm, qq = [], []
    for t in wanted:
        a, b = h.at(t)
        dm.append(a)
        qq.append(b)
    return ProcessHistory(h.space, tuple(wanted), tuple(dm), tuple(qq))


def scale(h: ProcessHistory, alpha: Fraction) -> ProcessHistory:
    """Pointwise positive rational scaling of the whole trajectory."""
    a = Fraction(alpha)
    if a <= 0:
        raise ValueError(f"history scaling requires alpha > 0, got {a}")
    return ProcessHistory(
        h.space,
        h.times,
        tuple(m.scaled(a) for m in h.delta_m),
        tuple(m.scaled(a) for m in h.q),
    )


def parallel_compose(h1: ProcessHistory, h2: ProcessHistory) -> ProcessHistory:
    """Simultaneous execution on one body made of both: pointwise sum."""
    if h1.space != h2.space:
        raise SpaceMismatch("histories live on different state spaces")
    if h1.duration != h2.duration:
        raise DurationMismatch(
            f"durations differ: {h1.duration} vs {h2.duration}"
        )
    grid = tuple(sorted(set(h1.times) | set(h2.times)))
    r1, r2 = refine(h1, grid), refine(h2, grid)
    return ProcessHistory(
        h1.space,
        grid,
        tuple(a + b for a, b in zip(r1.delta_m, r2.delta_m)),
        tuple(a + b for a, b in zip(r1.q, r2.q)),
    )


def subdivide(h: ProcessHistory, n: int) -> ProcessHistory:
    """Run the history's n equal-duration segments simultaneously.

    The result has duration d/n and the same endpoint: the segment
    increments telescope.
    """
    if n < 1 or n != int(n):
        raise ValueError(f"subdivision count must be a positive integer, got {n}")
    if n == 1:
        return h
    d = h.duration
    cuts = [d * k / n for k in range(n + 1)]
    hr = refine(h, tuple(cuts))
    local = sorted({t - d * k / n for t in hr.times for k in range(n) if d * k / n <= t <= d * (k + 1) / n})
    dm, qq = [], []
    for s in local:
        acc_m, acc_q = zero(h.space), zero(h.space)
        for k in range(n):
            base = d * k / n
            m_t, q_t = hr.at(base + s)
            m_0, q_0 = hr.at(base)
            acc_m = acc_m + (m_t - m_0)
            acc_q = acc_q + (q_t - q_0)
        dm.append(acc_m)
        qq.append(acc_q)
    return ProcessHistory(h.space, tuple(local), tuple(dm), tuple(qq))


def rational_sum(h1: ProcessHistory, h2: ProcessHistory) -> tuple[Process, ProcessHistory]:
    """Sum two histories of rationally related durations.

    With d1/d2 = n1/n2 in lowest terms, both subdivide to the common
    duration d1/n1 = d2/n2 and compose there; the endpoint is the sum of
    the two endpoints.
    """
    ratio = Fraction(h1.duration, 1) / h2.duration
    n1, n2 = ratio.numerator, ratio.denominator
    combined = parallel_compose(subdivide(h1, n1), subdivide(h2, n2))
    return endpoint_process(combined), combined


def replicate(h: ProcessHistory, n: int) -> ProcessHistory:
    """n thermally isolated copies run simultaneously: n-fold composition."""
    if n < 1:
        raise ValueError(f"replication count must be >= 1, got {n}")
    return h if n == 1 else scale(h, Fraction(n))


def conic_combination(
    items: list[tuple[Fraction, ProcessHistory]],
) -> tuple[Process, ProcessHistory]:
    """Realize sum(alpha_i * h_i) for positive rational coefficients.

    Writing alpha_i = n_i/m_i and D for the common denominator, each
    history is replicated n_i * (D/m_i) times, the replicas are folded
    together with rational_sum, and the final trajectory is scaled by 1/D;
    the endpoint equals the same combination of the endpoint processes.
    """
    if not items:
        raise ValueError("conic combination needs at least one history")
    alphas = [Fraction(a) for a, _ in items]
    if any(a <= 0 for a in alphas):
        raise ValueError("conic combination coefficients must be positive")
    denom = lcm(*(a.denominator for a in alphas))
    reps = [a.numerator * (denom // a.denominator) for a in alphas]
    acc = replicate(items[0][1], reps[0])
    for (_, h), r in zip(items[1:], reps[1:]):
        _, acc = rational_sum(acc, replicate(h, r))
    final = scale(acc, Fraction(1, denom))
    return endpoint_process(final), final
