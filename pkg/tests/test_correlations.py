import math

import numpy as np
import pytest

from bellswap.correlations import (
    OUTCOME_ORDER,
    PhaseClass,
    bell_polarization_distribution,
    classify_zeta,
    f_value_of,
    joint_bell_probabilities,
    kappa_of,
    perfect_correlation_report,
    sample_events,
    zeta,
)
from bellswap.quantum import BELL_ORDER, AngleSettings, BellOutcome, Polarization

PI = math.pi
ZEROS = AngleSettings(0, 0, 0, 0)


class TestOutcomeCodings:
    @pytest.mark.parametrize(
        "outcome,expected",
        [
            (BellOutcome.PHI_PLUS, +1),
            (BellOutcome.PSI_MINUS, +1),
            (BellOutcome.PHI_MINUS, -1),
            (BellOutcome.PSI_PLUS, -1),
        ],
    )
    def test_kappa(self, outcome, expected):
        assert kappa_of(outcome) == expected

    @pytest.mark.parametrize(
        "outcome,expected",
        [
            (BellOutcome.PHI_PLUS, +1),
            (BellOutcome.PHI_MINUS, +1),
            (BellOutcome.PSI_PLUS, -1),
            (BellOutcome.PSI_MINUS, -1),
        ],
    )
    def test_polarization_product(self, outcome, expected):
        assert f_value_of(outcome) == expected

    def test_codings_jointly_separate_all_outcomes(self):
        pairs = {(kappa_of(b), f_value_of(b)) for b in BellOutcome}
        assert len(pairs) == 4

    def test_polarization_signs(self):
        assert Polarization.H.sign == +1
        assert Polarization.V.sign == -1


class TestJointBellProbabilities:
    def test_zero_angles_diagonal_quarters(self):
        probs = joint_bell_probabilities(ZEROS)
        np.testing.assert_allclose(probs, np.eye(4) * 0.25, atol=1e-15)

    def test_kappa_never_mismatches(self):
        rng = np.random.default_rng(29)
        for _ in range(100):
            probs = joint_bell_probabilities(AngleSettings(*rng.uniform(0, 2 * PI, size=4)))
            mismatch = sum(
                probs[i, j]
                for i, bc in enumerate(BELL_ORDER)
                for j, ad in enumerate(BELL_ORDER)
                if kappa_of(bc) != kappa_of(ad)
            )
            assert mismatch < 1e-12

    def test_marginals_are_uniform(self):
        rng = np.random.default_rng(31)
        for _ in range(50):
            probs = joint_bell_probabilities(AngleSettings(*rng.uniform(0, 2 * PI, size=4)))
            np.testing.assert_allclose(probs.sum(axis=0), 0.25, atol=1e-12)
            np.testing.assert_allclose(probs.sum(axis=1), 0.25, atol=1e-12)
            assert probs.sum() == pytest.approx(1.0, abs=1e-12)


class TestBellPolarizationDistribution:
    def test_has_16_entries_summing_to_one(self):
        dist = bell_polarization_distribution(ZEROS)
        assert len(dist) == 16
        assert sum(dist.values()) == pytest.approx(1.0, abs=1e-12)

    def test_zero_angles_polarization_marginal(self):
        dist = bell_polarization_distribution(ZEROS)
        p_a_h = sum(p for (_, pol_a, _), p in dist.items() if pol_a is Polarization.H)
        assert p_a_h == pytest.approx(0.5, abs=1e-12)

    @pytest.mark.parametrize("kappa", [+1, -1])
    def test_zero_angles_wrong_products_are_impossible(self, kappa):
        dist = bell_polarization_distribution(ZEROS)
        bad = sum(
            p
            for (bell, pol_a, pol_d), p in dist.items()
            if kappa_of(bell) == kappa
            and pol_a.sign * f_value_of(bell) * pol_d.sign == -1
        )
        assert bad < 1e-12


class TestClassifyZeta:
    def test_half_pi(self):
        assert classify_zeta(AngleSettings(0, PI / 4, 0, PI / 4), +1) is PhaseClass.HALF_PI

    def test_zero_for_other_sector(self):
        assert classify_zeta(AngleSettings(0, PI / 4, 0, PI / 4), -1) is PhaseClass.ZERO_OR_PI

    def test_generic(self):
        assert classify_zeta(AngleSettings(0, 0.3, 0, 0), +1) is PhaseClass.GENERIC

    def test_periodicity(self):
        assert classify_zeta(AngleSettings(6 * PI, 0, 0, 0), +1) is PhaseClass.ZERO_OR_PI
        assert classify_zeta(AngleSettings(2 * PI + PI / 2, 0, 0, 0), +1) is PhaseClass.HALF_PI
        assert classify_zeta(AngleSettings(-PI, 0, 0, 0), +1) is PhaseClass.ZERO_OR_PI

    def test_tolerance_is_respected(self):
        nudged = AngleSettings(1e-6, 0, 0, 0)
        assert classify_zeta(nudged, +1, tol=1e-9) is PhaseClass.GENERIC
        assert classify_zeta(nudged, +1, tol=1e-3) is PhaseClass.ZERO_OR_PI

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            classify_zeta(ZEROS, 0)
        with pytest.raises(ValueError):
            classify_zeta(ZEROS, +1, tol=0.0)

    def test_zeta_values(self):
        angles = AngleSettings(0.1, 0.5, 1.0, 0.25)
        assert zeta(angles, +1) == pytest.approx((0.1 - 0.5) + (1.0 - 0.25))
        assert zeta(angles, -1) == pytest.approx((0.1 - 0.5) - (1.0 - 0.25))


class TestPerfectCorrelationReport:
    def test_zero_angles_both_sectors_certain(self):
        report = perfect_correlation_report(ZEROS)
        assert report.holds
        for sector in report.sectors:
            assert sector.phase_class is PhaseClass.ZERO_OR_PI
            assert sector.predicted_product == +1
            assert sector.sector_probability == pytest.approx(0.5, abs=1e-12)
            assert sector.violation_probability < 1e-12
            assert sector.product_certain
            assert sector.pairing_certain
            # identity pairing at zeta = 0
            assert all(bc is ad for bc, ad in sector.bell_pairing.items())

    def test_mixed_sector_classes(self):
        report = perfect_correlation_report(AngleSettings(0, PI / 4, PI / 4, 0))
        plus, minus = report.sectors
        assert plus.kappa == +1
        assert plus.phase_class is PhaseClass.ZERO_OR_PI
        assert plus.predicted_product == +1
        assert plus.product_certain
        assert minus.kappa == -1
        assert minus.phase_class is PhaseClass.HALF_PI
        assert minus.predicted_product == -1
        assert minus.product_certain
        # swapped pairing at zeta = -pi/2
        assert minus.bell_pairing[BellOutcome.PHI_MINUS] is BellOutcome.PSI_PLUS
        assert minus.pairing_certain

    def test_generic_setting_makes_no_claims(self):
        report = perfect_correlation_report(AngleSettings(0, 0.3, 0.7, 0.1))
        assert report.holds
        for sector in report.sectors:
            assert sector.phase_class is PhaseClass.GENERIC
            assert sector.predicted_product is None
            assert sector.violation_probability is None
            assert sector.product_certain is None
            assert sector.bell_pairing is None

    def test_to_dict_round_trips_through_json(self):
        import json

        report = perfect_correlation_report(AngleSettings(0, PI / 4, PI / 4, 0))
        doc = report.to_dict()
        assert json.loads(json.dumps(doc)) == doc


class TestSampler:
    def test_zero_count_gives_empty_list(self):
        assert sample_events(ZEROS, 0, 1) == []

    def test_negative_count_rejected(self):
        with pytest.raises(ValueError):
            sample_events(ZEROS, -1, 1)

    def test_outcome_order_is_pinned(self):
        assert len(OUTCOME_ORDER) == 16
        assert OUTCOME_ORDER[0] == (BellOutcome.PHI_PLUS, Polarization.H, Polarization.H)
        assert OUTCOME_ORDER[-1] == (BellOutcome.PSI_MINUS, Polarization.V, Polarization.V)

    def test_deterministic_for_fixed_seed(self):
        first = sample_events(ZEROS, 500, seed=42)
        second = sample_events(ZEROS, 500, seed=42)
        assert first == second
        different = sample_events(ZEROS, 500, seed=43)
        assert first != different

    def test_derived_fields_are_consistent(self):
        for event in sample_events(AngleSettings(0.3, 1.1, 0.2, 2.0), 200, seed=9):
            assert event.kappa == kappa_of(event.bc_outcome)
            assert event.f_value == f_value_of(event.bc_outcome)
            assert event.a_value == event.pol_a.sign
            assert event.d_value == event.pol_d.sign
            assert event.product == event.a_value * event.f_value * event.d_value

    def test_zero_angles_products_never_violate(self):
        events = sample_events(ZEROS, 20_000, seed=42)
        assert all(event.product == +1 for event in events)

    def test_bell_marginals_at_zero_angles(self):
        n = 100_000
        events = sample_events(ZEROS, n, seed=5)
        for bell in BELL_ORDER:
            count = sum(1 for e in events if e.bc_outcome is bell)
            # binomial: p = 1/4, five standard errors
            sigma = math.sqrt(0.25 * 0.75 * n)
            assert abs(count - 0.25 * n) < 5 * sigma

    @pytest.mark.parametrize(
        "angles", [ZEROS, AngleSettings(0.8, 0.15, 2.4, 1.05)], ids=["zeros", "generic"]
    )
    def test_all_outcome_frequencies_within_five_sigma(self, angles):
        n = 100_000
        dist = bell_polarization_distribution(angles)
        events = sample_events(angles, n, seed=77)
        counts = {key: 0 for key in OUTCOME_ORDER}
        for event in events:
            counts[(event.bc_outcome, event.pol_a, event.pol_d)] += 1
        for key, p in dist.items():
            if p < 1e-15:
                assert counts[key] == 0
                continue
            sigma = math.sqrt(n * p * (1 - p))
            assert abs(counts[key] - n * p) < 5 * sigma + 1
