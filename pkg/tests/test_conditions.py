"""Tests for the odd-integer transfer-condition families.

Integer identities are checked in exact arithmetic; real-valued rows are
checked against the published three-decimal table values and against
brute-force scans.
"""

import math
from dataclasses import replace

import numpy as np
import pytest

from tripop import (
    CouplingRatios,
    InvalidPairError,
    OddPair,
    build_dressed_basis,
    classify_cases,
    condition_for_target,
    condition_from_odd_pair,
    enumerate_conditions,
    p3_max,
    populations_closed_form,
    populations_closed_form_array,
    populations_general_array,
    validate_condition,
)

RNG = np.random.default_rng(3)

# (n1, n2) -> (A(t0), alpha) rows quoted to three decimals, positive-r branch
TABLE_ROWS = {
    (1, 5): (1.656, 2.530),
    (5, 1): (1.656, -2.530),
    (3, 3): (2.221, 0.000),
    (1, 11): (2.456, 4.264),
    (11, 1): (2.456, -4.264),
    (1, 17): (3.053, 5.488),
    (17, 1): (3.053, -5.488),
    (1, 23): (3.551, 6.487),
    (23, 1): (3.551, -6.487),
    (3, 9): (3.848, 1.633),
    (9, 3): (3.848, -1.633),
    (1, 29): (3.988, 7.353),
    (29, 1): (3.988, -7.353),
    (1, 35): (4.381, 8.128),
    (5, 7): (4.381, 0.478),
    (7, 5): (4.381, -0.478),
    (35, 1): (4.381, -8.128),
}


def all_valid_pairs(bound):
    """Brute-force enumeration of odd pairs with n1*n2 > 0."""
    pairs = []
    for n_o in range(-bound, bound + 1, 2):
        for n_op in range(-bound, bound + 1, 2):
            n1, n2 = 2 * n_o + n_op, n_o + 2 * n_op
            if n1 * n2 > 0:
                pairs.append(OddPair(n_o, n_op))
    return pairs


class TestOddPair:
    def test_derived_integers(self):
        pair = OddPair(-1, 3)
        assert (pair.n1, pair.n2) == (1, 5)

    def test_rejects_even_entries(self):
        with pytest.raises(InvalidPairError):
            OddPair(2, 3)
        with pytest.raises(InvalidPairError):
            OddPair(1, 0)

    def test_rejects_negative_product(self):
        # (1, -1) gives (n1, n2) = (1, -1)
        with pytest.raises(InvalidPairError):
            OddPair(1, -1)


class TestConditionFromOddPair:
    def test_simplest_member(self, cond_33):
        assert (cond_33.n1, cond_33.n2) == (3, 3)
        assert cond_33.action_t0 == pytest.approx(2.2214, abs=5e-5)
        assert cond_33.alpha == 0.0

    def test_one_five_member(self, cond_15):
        assert (cond_15.n1, cond_15.n2) == (1, 5)
        assert cond_15.action_t0 == pytest.approx(1.6558, abs=5e-5)
        assert cond_15.alpha == pytest.approx(2.530, abs=5e-4)

    def test_fig4_member(self, cond_351):
        """(n_o, n_o') = (23, -11) gives (35, 1); |A| = 4.381, |alpha| = 8.128.

        The negative-r twin carries the same magnitudes with both signs
        flipped, which is the same physical drive up to V -> -V."""
        assert (cond_351.n1, cond_351.n2) == (35, 1)
        assert cond_351.action_t0 == pytest.approx(4.381, abs=5e-4)
        assert cond_351.alpha == pytest.approx(-8.128, abs=5e-4)
        twin = condition_from_odd_pair(cond_351.pair, sign=-1)
        assert twin.action_t0 == pytest.approx(-4.381, abs=5e-4)
        assert twin.alpha == pytest.approx(8.128, abs=5e-4)

    def test_invariants_exhaustive(self):
        """Family laws hold exactly for every valid pair with |n_o|, |n_o'| <= 15."""
        for pair in all_valid_pairs(15):
            for sign in (1, -1):
                cond = condition_from_odd_pair(pair, sign=sign)
                assert 3.0 * cond.r * cond.action_t0 == pytest.approx(math.pi, abs=1e-12)
                assert cond.alpha == pytest.approx(cond.r * (cond.n2 - cond.n1), abs=1e-12)
                assert cond.r**2 * cond.n1 * cond.n2 == pytest.approx(2.0, abs=1e-12)
                assert (cond.n1 + cond.n2) % 6 == 0
                assert ((2 * cond.n1 - cond.n2) // 3) % 2 != 0
                assert ((2 * cond.n2 - cond.n1) // 3) % 2 != 0


class TestEnumerate:
    def test_smallest_products(self):
        rows = enumerate_conditions(9)
        assert [(c.n1, c.n2) for c in rows] == [(1, 5), (5, 1), (3, 3)]
        np.testing.assert_allclose(
            [c.action_t0 for c in rows], [1.656, 1.656, 2.221], atol=5e-4
        )

    def test_below_smallest_product_is_empty(self):
        """No odd pair reaches n1*n2 < 5 (brute-force scan over |n_o| <= 9)."""
        smallest = min(p.n1 * p.n2 for p in all_valid_pairs(9))
        assert smallest == 5
        assert enumerate_conditions(4) == []

    def test_reproduces_table(self):
        rows = enumerate_conditions(35)
        assert len(rows) == len(TABLE_ROWS) == 17
        for cond in rows:
            a_ref, alpha_ref = TABLE_ROWS[(cond.n1, cond.n2)]
            assert cond.action_t0 == pytest.approx(a_ref, abs=5e-4)
            assert cond.alpha == pytest.approx(alpha_ref, abs=5e-4)

    def test_sorted_by_product_then_n1(self):
        rows = enumerate_conditions(35)
        keys = [(c.product, c.n1) for c in rows]
        assert keys == sorted(keys)

    def test_both_signs_when_requested(self):
        rows = enumerate_conditions(9, signs=(1, -1))
        assert len(rows) == 6
        by_pair = {}
        for c in rows:
            by_pair.setdefault((c.n1, c.n2), []).append(c)
        for (n1, n2), pair_rows in by_pair.items():
            assert sorted(c.sign for c in pair_rows) == [-1, 1]
            a_plus, a_minus = (c.action_t0 for c in sorted(pair_rows, key=lambda c: -c.sign))
            assert a_plus == pytest.approx(-a_minus, abs=1e-15)


class TestClassifyCases:
    def test_three_three(self, cond_33):
        cases = classify_cases(cond_33)
        assert cases.case_ii == (1, 1)
        assert cases.case_i == (2, -1)
        assert cases.case_iii == (-1, 2)

    def test_one_five(self, cond_15):
        assert classify_cases(cond_15).case_ii == (-1, 3)

    def test_thirty_five_one(self, cond_351):
        cases = classify_cases(cond_351)
        assert cases.case_ii == (23, -11)
        k, kp = cases.case_ii
        assert (2 * k + kp) * (k + 2 * kp) == 35

    def test_identities_and_parities_exhaustive(self):
        """All three sets map back to n1*n2 and follow the parity pattern."""
        for cond in enumerate_conditions(35):
            cases = classify_cases(cond)
            n1n2 = cond.n1 * cond.n2
            k, kp = cases.case_i
            assert (k - kp) * (2 * k + kp) == n1n2
            assert k % 2 == 0 and kp % 2 != 0
            k, kp = cases.case_ii
            assert (2 * k + kp) * (k + 2 * kp) == n1n2
            assert k % 2 != 0 and kp % 2 != 0
            k, kp = cases.case_iii
            assert (2 * kp + k) * (kp - k) == n1n2
            assert k % 2 != 0 and kp % 2 == 0
            assert 18.0 * cases.e_value**2 == pytest.approx(n1n2, rel=1e-12)


class TestClosedFormPopulations:
    def test_complete_transfer(self, cond_33):
        p = populations_closed_form(cond_33, cond_33.action_t0)
        assert p.p1 == pytest.approx(0.0, abs=1e-12)
        assert p.p2 == pytest.approx(1.0, abs=1e-12)
        assert p.p3 == pytest.approx(0.0, abs=1e-12)

    def test_half_action_p3(self, cond_33):
        p = populations_closed_form(cond_33, cond_33.action_t0 / 2.0)
        assert p.p3 == pytest.approx(0.5, abs=1e-12)

    def test_initial_state(self):
        for cond in enumerate_conditions(35):
            p = populations_closed_form(cond, 0.0)
            np.testing.assert_allclose(p.as_tuple(), [1.0, 0.0, 0.0], atol=1e-14)

    def test_matches_general_form(self):
        """Closed form equals the general cosine-sum populations within 1e-10
        at 1000 action samples, for every family member with n1*n2 <= 35 and
        both beta signs."""
        actions = np.linspace(-1.2, 1.2, 1000)
        for cond in enumerate_conditions(35):
            scaled = actions * abs(cond.action_t0)
            closed = populations_closed_form_array(cond, scaled)
            for beta in (1, -1):
                basis = build_dressed_basis(cond.ratios(beta=beta))
                general = populations_general_array(basis, scaled)
                np.testing.assert_allclose(closed, general, atol=1e-10)


class TestP3Max:
    @pytest.mark.parametrize(
        "pair,expected",
        [((1, 1), 0.5), ((-1, 3), 10.0 / 36.0), ((23, -11), 70.0 / 1296.0)],
    )
    def test_formula(self, pair, expected):
        cond = condition_from_odd_pair(OddPair(*pair))
        assert p3_max(cond) == pytest.approx(expected, abs=1e-15)

    def test_equals_dense_scan_maximum(self):
        """Formula matches the max of a dense closed-form scan of p3."""
        actions = np.linspace(0.0, 1.0, 200001)
        for cond in enumerate_conditions(35):
            scan = populations_closed_form_array(cond, actions * 2.0 * abs(cond.action_t0))
            assert scan[:, 2].max() == pytest.approx(p3_max(cond), abs=1e-6)
            assert p3_max(cond) <= 0.5
            if cond.n1 == cond.n2:
                assert p3_max(cond) == 0.5


class TestValidateCondition:
    def test_fig1_values_not_in_family(self):
        assert validate_condition(2.0, 1.0, 1.5, tol=1e-6) is None

    def test_fig2_values_match(self):
        cond = validate_condition(0.0, 1.0, 2.2214, tol=1e-3)
        assert cond is not None and (cond.n1, cond.n2) == (3, 3)

    def test_near_miss_rejected(self):
        assert validate_condition(8.5, 1.0, 5.8, tol=1e-6) is None

    def test_signed_alpha_matches_swapped_pair(self, cond_15):
        cond = validate_condition(-cond_15.alpha, 1.0, cond_15.action_t0, tol=1e-9)
        assert cond is not None and (cond.n1, cond.n2) == (5, 1)

    def test_negative_action_resolves_to_negative_sign_member(self, cond_15):
        cond = validate_condition(-cond_15.alpha, 1.0, -cond_15.action_t0, tol=1e-9)
        assert cond is not None and cond.sign == -1 and (cond.n1, cond.n2) == (1, 5)

    def test_perturbed_alpha_rejected(self, cond_33):
        assert validate_condition(1e-3, 1.0, cond_33.action_t0, tol=1e-6) is None

    def test_non_unit_beta_rejected(self, cond_33):
        assert validate_condition(0.0, 0.5, cond_33.action_t0, tol=1e-6) is None


class TestConditionForTarget:
    def test_target_two_is_identity(self):
        pair = OddPair(-1, 3)
        assert condition_for_target(pair, target=2) == condition_from_odd_pair(pair)

    def test_target_three_swaps_couplings(self):
        cond = condition_for_target(OddPair(1, 1), target=3)
        assert cond.alpha == 1.0 and cond.beta == 0.0 and cond.target == 3

    def test_target_three_closed_form(self):
        """Swapped closed form reaches full level-3 occupation at A(t0)."""
        for pair in (OddPair(1, 1), OddPair(-1, 3), OddPair(23, -11)):
            cond = condition_for_target(pair, target=3)
            p = populations_closed_form(cond, cond.action_t0)
            assert p.p3 == pytest.approx(1.0, abs=1e-12)
            assert p.p1 == pytest.approx(0.0, abs=1e-12)
            assert p.p2 == pytest.approx(0.0, abs=1e-12)

    def test_tampered_condition_fails_validation(self, cond_15):
        with pytest.raises(ValueError):
            replace(cond_15, alpha=cond_15.alpha + 1e-3)
