"""Shared strategies and seeded random instance generators for the suite."""

from __future__ import annotations

import random
from fractions import Fraction

from hypothesis import strategies as st

from secondlaw.histories import ProcessHistory
from secondlaw.ingest import BodyProcessRecord
from secondlaw.measures import SignedMeasure, StateSpace, zero
from secondlaw.theory import Process, TheorySpec

LABELS = tuple("abcdef")


# ---------------------------------------------------------------- hypothesis

small_fractions = st.fractions(min_value=-3, max_value=3, max_denominator=4)


@st.composite
def state_spaces(draw, max_states: int = 4) -> StateSpace:
    n = draw(st.integers(min_value=1, max_value=max_states))
    return StateSpace(LABELS[:n])


@st.composite
def measures(draw, space: StateSpace | None = None) -> SignedMeasure:
    if space is None:
        space = draw(state_spaces())
    vals = draw(
        st.tuples(*([small_fractions] * len(space)))
    )
    return SignedMeasure(space, vals)


@st.composite
def zero_total_measures(draw, space: StateSpace | None = None) -> SignedMeasure:
    """Signed measures with total zero, built from pairwise transfers."""
    if space is None:
        space = draw(state_spaces())
    m = len(space)
    acc = [Fraction(0)] * m
    for _ in range(draw(st.integers(min_value=0, max_value=3))):
        i = draw(st.integers(min_value=0, max_value=m - 1))
        j = draw(st.integers(min_value=0, max_value=m - 1))
        c = draw(small_fractions)
        acc[i] += c
        acc[j] -= c
    return SignedMeasure(space, tuple(acc))


@st.composite
def processes(draw, space: StateSpace | None = None) -> Process:
    if space is None:
        space = draw(state_spaces())
    return Process(draw(zero_total_measures(space)), draw(measures(space)))


@st.composite
def theories(draw, max_states: int = 4, max_processes: int = 4) -> TheorySpec:
    space = draw(state_spaces(max_states))
    k = draw(st.integers(min_value=0, max_value=max_processes))
    return TheorySpec(space, tuple(draw(processes(space)) for _ in range(k)))


@st.composite
def histories_on(draw, space: StateSpace, max_samples: int = 5) -> ProcessHistory:
    extra = draw(
        st.lists(
            st.fractions(min_value="1/4", max_value=6, max_denominator=4),
            min_size=1,
            max_size=max_samples - 1,
            unique=True,
        )
    )
    times = (Fraction(0),) + tuple(sorted(extra))
    dm = [zero(space)]
    qq = [zero(space)]
    for _ in times[1:]:
        dm.append(dm[-1] + draw(zero_total_measures(space)))
        qq.append(qq[-1] + draw(measures(space)))
    return ProcessHistory(space, times, tuple(dm), tuple(qq))


@st.composite
def histories(draw, max_samples: int = 5) -> ProcessHistory:
    space = draw(state_spaces())
    return draw(histories_on(space, max_samples))


# ------------------------------------------------------------ seeded random

def rand_fraction(rng: random.Random, max_int: int = 9, zero_weight: int = 2) -> Fraction:
    if rng.randrange(zero_weight + 1) < zero_weight - 1:
        return Fraction(0)
    num = rng.randint(-max_int, max_int)
    den = rng.randint(1, max_int)
    return Fraction(num, den)


def rand_zero_total(rng: random.Random, space: StateSpace, max_int: int = 9) -> SignedMeasure:
    m = len(space)
    acc = [Fraction(0)] * m
    for _ in range(rng.randint(0, 3)):
        i, j = rng.randrange(m), rng.randrange(m)
        c = Fraction(rng.randint(-max_int, max_int), rng.randint(1, max_int))
        acc[i] += c
        acc[j] -= c
    return SignedMeasure(space, tuple(acc))


def rand_measure(rng: random.Random, space: StateSpace, max_int: int = 9) -> SignedMeasure:
    return SignedMeasure(
        space, tuple(rand_fraction(rng, max_int) for _ in range(len(space)))
    )


def rand_theory(
    rng: random.Random,
    max_states: int = 6,
    max_gens: int = 8,
    max_int: int = 9,
    min_gens: int = 0,
) -> TheorySpec:
    space = StateSpace(LABELS[: rng.randint(1, max_states)])
    k = rng.randint(min_gens, max_gens)
    procs = tuple(
        Process(rand_zero_total(rng, space, max_int), rand_measure(rng, space, max_int))
        for _ in range(k)
    )
    return TheorySpec(space, procs)


def rand_small_theory(rng: random.Random) -> TheorySpec:
    """Instances small enough for the Fourier-Motzkin oracle: integer entries."""
    space = StateSpace(LABELS[: rng.randint(1, 3)])
    m = len(space)
    procs = []
    for _ in range(rng.randint(0, 3)):
        while True:
            dm = tuple(Fraction(rng.randint(-2, 2)) for _ in range(m))
            if sum(dm) == 0:
                break
        q = tuple(Fraction(rng.randint(-2, 2)) for _ in range(m))
        procs.append(Process(SignedMeasure(space, dm), SignedMeasure(space, q)))
    return TheorySpec(space, tuple(procs))


def rand_record(rng: random.Random, space: StateSpace) -> BodyProcessRecord:
    npts = rng.randint(1, 4)
    ntimes = rng.randint(2, 5)
    t = Fraction(0)
    times = [t]
    for _ in range(ntimes - 1):
        t += Fraction(rng.randint(1, 4), rng.randint(1, 3))
        times.append(t)
    ids = tuple(f"p{i}" for i in range(npts))
    masses = tuple(Fraction(rng.randint(1, 9), rng.randint(1, 4)) for _ in range(npts))
    states = tuple(
        tuple(rng.choice(space.states) for _ in range(ntimes)) for _ in range(npts)
    )
    heat = tuple(
        tuple(rand_fraction(rng) for _ in range(ntimes - 1)) for _ in range(npts)
    )
    return BodyProcessRecord(ids, masses, tuple(times), states, heat)


def rand_history(rng: random.Random, space: StateSpace, max_samples: int = 5) -> ProcessHistory:
    ntimes = rng.randint(2, max_samples)
    t = Fraction(0)
    times = [t]
    for _ in range(ntimes - 1):
        t += Fraction(rng.randint(1, 4), rng.randint(1, 3))
        times.append(t)
    dm = [zero(space)]
    qq = [zero(space)]
    for _ in range(ntimes - 1):
        dm.append(dm[-1] + rand_zero_total(rng, space, max_int=4))
        qq.append(qq[-1] + rand_measure(rng, space, max_int=4))
    return ProcessHistory(space, tuple(times), tuple(dm), tuple(qq))
