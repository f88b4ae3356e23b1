"""Tests for cocycle_entropy.core."""

import math
from fractions import Fraction as F
from functools import partial

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cocycle_entropy.core import (
    as_probabilities,
    as_weights,
    extend,
    hat_entropy,
    hat_entropy_potential_form,
    renyi_entropy,
    restrict,
    shannon_entropy,
    tsallis_entropy,
    u,
)
from cocycle_entropy.exceptions import DomainError

mpmath.mp.dps = 40


def mp_hat(ws):
    """High-precision oracle: sum u(w_i) - u(sum w) with mpmath."""

    def mu(x):
        x = mpmath.mpf(x.numerator) / x.denominator
        return 0 if x == 0 else x * mpmath.log(1 / x, 2)

    ws = [F(w) for w in ws]
    return float(sum(mu(w) for w in ws) - mu(sum(ws)))


rationals = st.fractions(min_value=0, max_value=100, max_denominator=100)
weight_vectors = st.lists(rationals, min_size=1, max_size=8).filter(lambda w: sum(w) > 0)


class TestU:
    @pytest.mark.parametrize(
        "x, expected",
        [(1, 0.0), (F(1, 2), 0.5), (2, -2.0), (0, 0.0), (F(0), 0.0)],
    )
    def test_values(self, x, expected):
        assert u(x) == expected

    def test_negative_is_domain_error(self):
        with pytest.raises(DomainError):
            u(F(-1, 3))

    def test_matches_oracle_on_thirds(self):
        assert u(3) == pytest.approx(-4.754887502163468, abs=1e-12)
        assert u(F(1, 3)) == pytest.approx(0.5283208335737187, abs=1e-12)

    def test_floats_accepted(self):
        assert u(0.25) == pytest.approx(0.5)


class TestShannonEntropy:
    def test_fair_coin_is_one_bit(self):
        assert shannon_entropy((F(1, 2), F(1, 2))) == 1.0

    def test_certain_outcome(self):
        assert shannon_entropy((1,)) == 0.0

    def test_three_outcomes(self):
        assert shannon_entropy((F(1, 2), F(1, 4), F(1, 4))) == 1.5

    def test_zero_entries_contribute_nothing(self):
        assert shannon_entropy((F(1, 2), 0, F(1, 2), 0)) == 1.0

    def test_float_tolerance(self):
        assert shannon_entropy((0.1, 0.2, 0.7 + 1e-10)) > 0
        with pytest.raises(DomainError):
            shannon_entropy((0.1, 0.2, 0.7 + 1e-8))

    def test_exact_vector_must_sum_to_one(self):
        with pytest.raises(DomainError):
            shannon_entropy((F(1, 2), F(1, 3)))

    def test_empty_rejected(self):
        with pytest.raises(DomainError):
            shannon_entropy(())


class TestHatEntropy:
    def test_normalization(self):
        assert hat_entropy((1, 1)) == 2.0

    @pytest.mark.parametrize("c", [1, F(1, 7), 5, F(99, 4)])
    def test_singleton_is_zero(self, c):
        assert hat_entropy((c,)) == 0.0

    def test_two_two(self):
        assert hat_entropy((2, 2)) == 4.0
        assert hat_entropy_potential_form((2, 2)) == 4.0

    def test_one_two_three(self):
        assert hat_entropy((1, 2, 3)) == pytest.approx(8.754887502163468, abs=1e-12)

    def test_all_zero_rejected(self):
        with pytest.raises(DomainError):
            hat_entropy((0, 0))

    def test_empty_rejected(self):
        with pytest.raises(DomainError):
            hat_entropy(())

    def test_floats_rejected(self):
        with pytest.raises(TypeError):
            hat_entropy((0.5, 0.5))

    def test_string_rationals(self):
        assert hat_entropy(("1/2", "1/2")) == 1.0

    @given(weight_vectors)
    @settings(max_examples=200)
    def test_matches_high_precision_oracle(self, w):
        assert hat_entropy(w) == pytest.approx(mp_hat(w), abs=1e-9)

    @given(weight_vectors)
    def test_two_forms_agree(self, w):
        assert abs(hat_entropy(w) - hat_entropy_potential_form(w)) <= 1e-9

    @given(weight_vectors, st.randoms(use_true_random=False))
    def test_permutation_invariance_is_exact(self, w, rnd):
        perm = list(w)
        rnd.shuffle(perm)
        assert hat_entropy(perm) == hat_entropy(w)

    @given(weight_vectors, st.fractions(min_value=F(1, 100), max_value=100, max_denominator=100))
    def test_homogeneity(self, w, c):
        assert abs(hat_entropy([c * x for x in w]) - float(c) * hat_entropy(w)) <= 1e-9

    @given(weight_vectors)
    def test_zero_padding(self, w):
        assert hat_entropy(list(w) + [0]) == hat_entropy(w)


class TestExtendRestrict:
    def test_extend_shannon_normalization(self):
        assert extend(shannon_entropy)((1, 1)) == 2.0

    def test_extend_on_simplex_calls_oracle_unchanged(self):
        seen = []

        def h(p):
            seen.append(p)
            return 42.0

        p = (F(1, 3), F(2, 3))
        assert extend(h)(p) == 42.0
        assert seen == [p]

    def test_extend_renyi2(self):
        assert extend(partial(renyi_entropy, alpha=2))((2, 2)) == 4.0

    @given(st.lists(st.integers(0, 50), min_size=1, max_size=8).filter(lambda k: sum(k) > 0))
    def test_round_trip_is_exact(self, counts):
        s = sum(counts)
        p = tuple(F(k, s) for k in counts)
        for h in (shannon_entropy, partial(renyi_entropy, alpha=0.5), partial(tsallis_entropy, q=2)):
            assert restrict(extend(h))(p) == h(p)


class TestValidation:
    def test_negative_weight(self):
        with pytest.raises(DomainError):
            as_weights((1, -1, 2))

    def test_probabilities_keep_exactness(self):
        p = as_probabilities((F(1, 3), F(2, 3)))
        assert all(isinstance(x, F) for x in p)


class TestOtherEntropies:
    def test_renyi_of_uniform_is_log_n(self):
        p = (F(1, 4),) * 4
        for alpha in (0.5, 2, 3):
            assert renyi_entropy(p, alpha) == pytest.approx(2.0, abs=1e-12)

    def test_renyi_bad_order(self):
        with pytest.raises(DomainError):
            renyi_entropy((1,), 1)

    def test_tsallis_q2(self):
        assert tsallis_entropy((F(1, 2), F(1, 2)), 2) == 0.5
        assert math.isclose(tsallis_entropy((F(1, 4), F(1, 4), F(1, 2)), 2), 0.625)
