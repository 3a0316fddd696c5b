import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from secondlaw.measures import StateSpace, UnknownState, dirac, total, zero
from secondlaw.separation import (
    ClausiusDuhemPair,
    Compliant,
    NotKelvinPlanck,
    Violated,
    ViolationCertificate,
    analyze_directions,
    cd_margin,
    check_kelvin_planck,
    find_violation,
    max_uniform_coldness,
    synthesize_cd_pair,
    verify_cd_pair,
    verify_violation,
)
from secondlaw.theory import Process, TheorySpec, example_a, example_b, zero_process

import support
from fm_oracle import kelvin_planck_by_elimination


SP01 = StateSpace(("0", "1"))
D0, D1 = dirac(SP01, "0"), dirac(SP01, "1")


def pair_of(verdict):
    assert isinstance(verdict, Compliant)
    return verdict.pair


class TestCheckKelvinPlanck:
    def test_forbidden_generator_is_violated(self):
        th = TheorySpec(SP01, (Process(zero(SP01), D1),))
        verdict = check_kelvin_planck(th)
        assert isinstance(verdict, Violated)
        assert verdict.certificate.weights == (F(1),)
        assert verdict.certificate.witness.q == D1
        assert verify_violation(th, verdict.certificate)

    def test_conic_sum_violation(self):
        sp = StateSpace(("a", "b", "c"))
        da, db, dc = (dirac(sp, s) for s in "abc")
        th = TheorySpec(sp, (Process(db - da, dc), Process(da - db, zero(sp))))
        verdict = check_kelvin_planck(th)
        assert isinstance(verdict, Violated)
        assert verdict.certificate.weights == (F(1), F(1))
        assert verdict.certificate.witness.delta_m.is_zero()
        assert verdict.certificate.witness.q == dc
        assert verify_violation(th, verdict.certificate)

    @pytest.mark.parametrize("n", [1, 3, 10])
    def test_family_a_truncations_comply(self, n):
        # every conic combination has q mass -sum(lambda) at state 0,
        # never nonnegative unless all weights vanish
        verdict = check_kelvin_planck(example_a(n))
        assert isinstance(verdict, Compliant)
        assert verify_cd_pair(example_a(n), verdict.pair).passed

    def test_adding_limit_process_flips_family_a(self):
        th = example_a(3).with_process(Process(zero(SP01), D1, id="limit"))
        verdict = check_kelvin_planck(th)
        assert isinstance(verdict, Violated)
        assert verify_violation(th, verdict.certificate)

    def test_family_b_complies(self):
        th = example_b(5)
        verdict = check_kelvin_planck(th)
        assert isinstance(verdict, Compliant)
        assert verify_cd_pair(th, verdict.pair).passed


class TestSynthesize:
    def test_empty_theory_canonical_output(self):
        th = TheorySpec(SP01, ())
        pair = synthesize_cd_pair(th)
        assert pair.eta == (F(0), F(0))
        assert pair.temperature == (F(1), F(1))

    def test_reversible_pair_forces_equality(self):
        sp = StateSpace(("a", "b", "h"))
        da, db, dh = (dirac(sp, s) for s in "abh")
        th = TheorySpec(sp, (Process(db - da, dh), Process(da - db, -dh)))
        pair = synthesize_cd_pair(th)
        ia, ib, ih = (sp.index(s) for s in "abh")
        assert pair.eta[ib] - pair.eta[ia] == pair.beta[ih]
        assert verify_cd_pair(th, pair).passed

    @pytest.mark.parametrize("n", [1, 3, 10])
    def test_family_a_temperature_ratio(self, n):
        # generator constraints force beta(0) >= k beta(1) for k <= n
        th = example_a(n)
        pair = synthesize_cd_pair(th)
        i0, i1 = th.space.index("0"), th.space.index("1")
        assert pair.beta[i0] >= n * pair.beta[i1]
        assert pair.temperature[i1] / pair.temperature[i0] >= n

    def test_gauge_defaults_to_first_state(self):
        pair = synthesize_cd_pair(example_b(3))
        assert pair.eta[0] == 0

    def test_gauge_state_selectable(self):
        th = example_b(3)
        pair = synthesize_cd_pair(th, gauge_state="1/2")
        assert pair.eta[th.space.index("1/2")] == 0

    def test_unknown_gauge_state(self):
        with pytest.raises(UnknownState):
            synthesize_cd_pair(example_a(1), gauge_state="zz")

    def test_violated_theory_raises_with_certificate(self):
        th = TheorySpec(SP01, (Process(zero(SP01), D1),))
        with pytest.raises(NotKelvinPlanck) as exc:
            synthesize_cd_pair(th)
        assert verify_violation(th, exc.value.certificate)


class TestVerifyCDPair:
    def test_unit_pair_passes_balanced_cycle(self):
        th = TheorySpec(SP01, (Process(zero(SP01), D1 - D0),))
        pair = ClausiusDuhemPair(SP01, (F(0), F(0)), (F(1), F(1)))
        report = verify_cd_pair(th, pair)
        assert report.margins == (F(0),)
        assert report.passed

    def test_unit_pair_fails_lopsided_cycle(self):
        th = TheorySpec(SP01, (Process(zero(SP01), D1.scaled(2) - D0),))
        pair = ClausiusDuhemPair(SP01, (F(0), F(0)), (F(1), F(1)))
        report = verify_cd_pair(th, pair)
        assert report.margins == (F(-1),)
        assert not report.passed

    def test_zero_beta_component_fails(self):
        th = TheorySpec(SP01, ())
        pair = ClausiusDuhemPair(SP01, (F(0), F(0)), (F(1), F(0)))
        report = verify_cd_pair(th, pair)
        assert not report.beta_positive
        assert not report.passed

    def test_synthesized_pairs_always_pass(self):
        rng = random.Random(3)
        found = 0
        while found < 10:
            th = support.rand_theory(rng, max_states=4, max_gens=5)
            verdict = check_kelvin_planck(th)
            if isinstance(verdict, Compliant):
                assert verify_cd_pair(th, verdict.pair).passed
                found += 1


class TestVerifyViolation:
    def test_rejects_unbalanced_heating(self):
        th = TheorySpec(SP01, (Process(zero(SP01), D1 - D0),))
        cert = ViolationCertificate((F(1),), Process(zero(SP01), D1 - D0))
        assert not verify_violation(th, cert)

    def test_rejects_zero_weights(self):
        th = TheorySpec(SP01, (Process(zero(SP01), D1),))
        cert = ViolationCertificate((F(0),), zero_process(SP01))
        assert not verify_violation(th, cert)

    def test_rejects_negative_weights(self):
        th = TheorySpec(SP01, (Process(zero(SP01), -D1),))
        cert = ViolationCertificate((F(-1),), Process(zero(SP01), D1))
        assert not verify_violation(th, cert)

    def test_rejects_wrong_length(self):
        th = TheorySpec(SP01, (Process(zero(SP01), D1),))
        cert = ViolationCertificate((F(1), F(1)), Process(zero(SP01), D1))
        assert not verify_violation(th, cert)

    def test_rejects_tampered_witness(self):
        th = TheorySpec(SP01, (Process(zero(SP01), D1),))
        cert = ViolationCertificate((F(1),), Process(zero(SP01), D1.scaled(2)))
        assert not verify_violation(th, cert)


class TestAnalyzeDirections:
    def test_family_a_distances_decrease_harmonically(self):
        report = analyze_directions(list(example_a(4).processes))
        assert report.distances == (F(1, 2), F(1, 3), F(1, 4), F(1, 5))
        assert report.strictly_decreasing

    def test_family_b_distances_and_limit(self):
        th = example_b(5)
        report = analyze_directions(list(th.processes))
        assert report.distances == (F(2, 3), F(1, 2), F(2, 5), F(1, 3), F(2, 7))
        assert report.strictly_decreasing
        # nearest forbidden element of the last term concentrates at 1/2
        nf = report.nearest_forbidden
        assert nf["1/2"] == F(5, 7)
        assert total(nf) == nf["1/2"]

    def test_constant_family_is_flat(self):
        p = Process(zero(SP01), D1 - D0)
        report = analyze_directions([p, p, p])
        assert report.distances == (F(1, 2), F(1, 2), F(1, 2))
        assert not report.strictly_decreasing

    def test_zero_distance_iff_forbidden_direction(self):
        report = analyze_directions([Process(zero(SP01), D1.scaled(3))])
        assert report.distances == (F(0),)

    def test_rejects_zero_process(self):
        with pytest.raises(ValueError):
            analyze_directions([zero_process(SP01)])

    def test_rejects_empty_family(self):
        with pytest.raises(ValueError):
            analyze_directions([])


class TestDualityExclusivity:
    def test_exactly_one_branch_on_random_theories(self):
        rng = random.Random(11)
        for _ in range(60):
            th = support.rand_theory(rng, max_states=4, max_gens=5)
            cert = find_violation(th)
            t_star = max_uniform_coldness(th)
            assert (cert is not None) == (t_star == 0)

    def test_oracle_agreement_on_small_instances(self):
        rng = random.Random(13)
        for _ in range(60):
            th = support.rand_small_theory(rng)
            lp_compliant = isinstance(check_kelvin_planck(th), Compliant)
            assert lp_compliant == kelvin_planck_by_elimination(th)


class TestInvariances:
    def test_gauge_shift_leaves_margins_unchanged(self):
        th = example_b(4)
        pair = synthesize_cd_pair(th)
        before = verify_cd_pair(th, pair).margins
        for c in (F(7, 3), F(-2), F(1, 9)):
            after = verify_cd_pair(th, pair.shifted(c)).margins
            assert after == before

    def test_joint_scaling_preserves_validity(self):
        th = example_b(4)
        pair = synthesize_cd_pair(th)
        for c in (F(2), F(1, 3), F(5, 7)):
            assert verify_cd_pair(th, pair.scaled(c)).passed

    def test_scaling_rejects_nonpositive(self):
        pair = synthesize_cd_pair(example_a(1))
        with pytest.raises(ValueError):
            pair.scaled(F(0))

    def test_cone_invariance_of_verdict(self):
        rng = random.Random(17)
        for _ in range(20):
            th = support.rand_theory(rng, max_states=3, max_gens=4, min_gens=1)
            scaled = TheorySpec(
                th.space,
                tuple(
                    p.scaled(F(rng.randint(1, 5), rng.randint(1, 5)))
                    for p in th.processes
                ),
            )
            assert isinstance(check_kelvin_planck(th), Compliant) == isinstance(
                check_kelvin_planck(scaled), Compliant
            )

    def test_monotonicity_violated_stays_violated(self):
        rng = random.Random(19)
        checked = 0
        while checked < 15:
            th = support.rand_theory(rng, max_states=3, max_gens=4, min_gens=1)
            if isinstance(check_kelvin_planck(th), Violated):
                bigger = th.with_process(
                    Process(
                        support.rand_zero_total(rng, th.space),
                        support.rand_measure(rng, th.space),
                    )
                )
                assert isinstance(check_kelvin_planck(bigger), Violated)
                checked += 1


@given(support.theories(max_states=3, max_processes=3))
@settings(max_examples=40, deadline=None)
def test_certificates_always_reverify(th):
    verdict = check_kelvin_planck(th)
    if isinstance(verdict, Compliant):
        assert verify_cd_pair(th, verdict.pair).passed
    else:
        assert verify_violation(th, verdict.certificate)


@given(support.processes(), st.fractions(min_value=-2, max_value=2, max_denominator=3))
@settings(max_examples=40, deadline=None)
def test_margin_is_gauge_invariant_per_process(p, c):
    space = p.space
    pair = ClausiusDuhemPair(
        space, tuple(F(0) for _ in space.states), tuple(F(1) for _ in space.states)
    )
    assert cd_margin(pair.shifted(c), p) == cd_margin(pair, p)
