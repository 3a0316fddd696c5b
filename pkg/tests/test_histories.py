import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from secondlaw.histories import (
    DurationMismatch,
    OffGridTime,
    ProcessHistory,
    conic_combination,
    endpoint_process,
    parallel_compose,
    rational_sum,
    refine,
    restrict,
    scale,
    subdivide,
    zero_history,
)
from secondlaw.measures import SpaceMismatch, StateSpace, combine, dirac, total, zero
from secondlaw.theory import Process, zero_process

import support


SP = StateSpace(("a", "b", "h", "c"))
DA, DB, DH, DC = (dirac(SP, s) for s in "abhc")
Z = zero(SP)


def two_step(space=SP, dm=None, q=None, duration=F(2)):
    dm = DB - DA if dm is None else dm
    q = DH if q is None else q
    return ProcessHistory(space, (F(0), duration), (zero(space), dm), (zero(space), q))


class TestInvariants:
    def test_rejects_single_sample(self):
        with pytest.raises(ValueError):
            ProcessHistory(SP, (F(0),), (Z,), (Z,))

    def test_rejects_grid_not_starting_at_zero(self):
        with pytest.raises(ValueError):
            ProcessHistory(SP, (F(1), F(2)), (Z, Z), (Z, Z))

    def test_rejects_nonincreasing_grid(self):
        with pytest.raises(ValueError):
            ProcessHistory(SP, (F(0), F(1), F(1)), (Z, Z, Z), (Z, Z, Z))

    def test_rejects_nonzero_start(self):
        with pytest.raises(ValueError):
            ProcessHistory(SP, (F(0), F(1)), (Z, Z), (DH, DH))

    def test_rejects_mass_leak(self):
        with pytest.raises(ValueError):
            ProcessHistory(SP, (F(0), F(1)), (Z, DA), (Z, Z))

    def test_zero_history_duration_positive(self):
        with pytest.raises(ValueError):
            zero_history(SP, F(0))


class TestEndpoint:
    def test_constant_zero_trajectory(self):
        assert endpoint_process(zero_history(SP, F(3))) == zero_process(SP)

    def test_two_sample_history(self):
        h = two_step()
        assert endpoint_process(h) == Process(DB - DA, DH)

    def test_full_restriction_is_endpoint(self):
        h = two_step()
        assert restrict(h, F(0), h.duration) == endpoint_process(h)


class TestRestrict:
    def test_constant_stretch_gives_zero_process(self):
        h = refine(two_step(), (F(1, 2), F(1)))
        # trajectory is constant-from-the-left, so [1/2, 1] spans no jump
        assert restrict(h, F(1, 2), F(1)) == zero_process(SP)

    def test_piecewise_difference(self):
        h = ProcessHistory(SP, (F(0), F(1), F(2)), (Z, Z, Z), (Z, DH, DH - DC))
        assert restrict(h, F(1), F(2)).q == -DC

    def test_off_grid_rejected(self):
        with pytest.raises(OffGridTime):
            restrict(two_step(), F(1, 3), F(2))

    def test_empty_interval_rejected(self):
        with pytest.raises(ValueError):
            restrict(two_step(), F(1), F(1))


class TestParallelCompose:
    def test_zero_history_is_identity_up_to_grid(self):
        h = two_step()
        combined = parallel_compose(h, zero_history(SP, h.duration))
        assert endpoint_process(combined) == endpoint_process(h)
        assert combined.at(F(1)) == h.at(F(1))

    def test_endpoint_additivity(self):
        h1 = two_step()
        h2 = two_step(dm=DA - DB, q=DC.scaled(3))
        combined = parallel_compose(h1, h2)
        assert endpoint_process(combined) == Process(Z, DH + DC.scaled(3))

    def test_doubling(self):
        h = two_step()
        assert endpoint_process(parallel_compose(h, h)) == endpoint_process(h).scaled(2)

    def test_duration_mismatch(self):
        with pytest.raises(DurationMismatch):
            parallel_compose(two_step(), zero_history(SP, F(1)))

    def test_space_mismatch(self):
        other = StateSpace(("x", "y"))
        with pytest.raises(SpaceMismatch):
            parallel_compose(two_step(), zero_history(other, F(2)))


class TestSubdivide:
    def test_identity_at_one(self):
        h = two_step()
        assert subdivide(h, 1) == h

    def test_two_segment_linear(self):
        mid_dm, mid_q = (DB - DA).scaled(F(1, 2)), DH.scaled(F(1, 2))
        h = ProcessHistory(SP, (F(0), F(1), F(2)), (Z, mid_dm, DB - DA), (Z, mid_q, DH))
        folded = subdivide(h, 2)
        assert folded.duration == 1
        assert endpoint_process(folded) == endpoint_process(h)

    def test_endpoint_preserved_for_many_counts(self):
        h = ProcessHistory(
            SP,
            (F(0), F(1, 2), F(2), F(3)),
            (Z, DB - DA, (DB - DA).scaled(2), DB - DA),
            (Z, DH, DH - DC, DC.scaled(5)),
        )
        for n in range(1, 7):
            folded = subdivide(h, n)
            assert folded.duration == h.duration / n
            assert endpoint_process(folded) == endpoint_process(h)

    def test_rejects_bad_count(self):
        with pytest.raises(ValueError):
            subdivide(two_step(), 0)


class TestRationalSum:
    def test_equal_durations_match_parallel_compose(self):
        h1, h2 = two_step(), two_step(dm=DA - DB, q=DC)
        p, _ = rational_sum(h1, h2)
        assert p == endpoint_process(parallel_compose(h1, h2))

    def test_durations_two_and_three(self):
        h1 = two_step(duration=F(2))
        h2 = two_step(dm=DA - DB, q=DC.scaled(4), duration=F(3))
        p, combined = rational_sum(h1, h2)
        assert combined.duration == 1
        assert p == Process(Z, DH + DC.scaled(4))

    def test_zero_history_neutral(self):
        h = two_step()
        p, _ = rational_sum(h, zero_history(SP, F(5, 3)))
        assert p == endpoint_process(h)


class TestConicCombination:
    def test_single_unit_coefficient(self):
        h = two_step()
        p, _ = conic_combination([(F(1), h)])
        assert p == endpoint_process(h)

    def test_midpoint_of_two(self):
        h1, h2 = two_step(), two_step(dm=DA - DB, q=DC)
        p, _ = conic_combination([(F(1, 2), h1), (F(1, 2), h2)])
        assert p.delta_m == Z
        assert p.q == combine([F(1, 2), F(1, 2)], [DH, DC])

    def test_cross_checked_against_measure_combination(self):
        h1 = two_step(duration=F(1))
        h2 = two_step(dm=DA - DB, q=DC.scaled(4), duration=F(2))
        alphas = [F(2, 3), F(3, 5)]
        p, _ = conic_combination(list(zip(alphas, [h1, h2])))
        endpoints = [endpoint_process(h1), endpoint_process(h2)]
        assert p.delta_m == combine(alphas, [e.delta_m for e in endpoints])
        assert p.q == combine(alphas, [e.q for e in endpoints])

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            conic_combination([])

    def test_rejects_nonpositive_coefficient(self):
        with pytest.raises(ValueError):
            conic_combination([(F(0), two_step())])


class TestOperationsPreserveInvariants:
    def test_random_pipelines_stay_valid(self):
        rng = random.Random(23)
        space = StateSpace(("a", "b", "c"))
        for _ in range(25):
            h1 = support.rand_history(rng, space)
            h2 = support.rand_history(rng, space)
            n = rng.randint(1, 5)
            for h in (subdivide(h1, n), rational_sum(h1, h2)[1], scale(h1, F(3, 7))):
                assert h.delta_m[0].is_zero() and h.q[0].is_zero()
                assert all(total(m) == 0 for m in h.delta_m)


@given(support.histories(), st.integers(min_value=1, max_value=6))
@settings(max_examples=40, deadline=None)
def test_subdivide_endpoint_invariance(h, n):
    assert endpoint_process(subdivide(h, n)) == endpoint_process(h)


@given(st.data())
@settings(max_examples=30, deadline=None)
def test_rational_sum_endpoint_additivity(data):
    space = data.draw(support.state_spaces())
    h1 = data.draw(support.histories_on(space))
    h2 = data.draw(support.histories_on(space))
    p, combined = rational_sum(h1, h2)
    want = endpoint_process(h1) + endpoint_process(h2)
    assert p == want
    assert endpoint_process(combined) == want


@given(st.data())
@settings(max_examples=30, deadline=None)
def test_conic_combination_matches_combine(data):
    space = data.draw(support.state_spaces())
    k = data.draw(st.integers(min_value=1, max_value=3))
    items = []
    for _ in range(k):
        alpha = data.draw(st.fractions(min_value="1/4", max_value=3, max_denominator=4))
        items.append((alpha, data.draw(support.histories_on(space))))
    p, _ = conic_combination(items)
    endpoints = [endpoint_process(h) for _, h in items]
    alphas = [a for a, _ in items]
    assert p.delta_m == combine(alphas, [e.delta_m for e in endpoints], space=space)
    assert p.q == combine(alphas, [e.q for e in endpoints], space=space)
