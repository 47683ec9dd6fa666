import random

import pytest

from cm_isolate.errors import IntegralityError
from cm_isolate.exactfield import make_nonnormal_field
from cm_isolate.weilnum import (
    IsolationTag,
    WeilCandidate,
    classify,
    complete_candidate,
    disc_char_poly,
    disc_closed_form,
    disc_trace_form,
    four_index,
    index_from_CD,
    index_of_candidate,
    nonnormal_index_cofactor,
    p_from_CD,
    sixteen_p,
)


class TestClosedForms:
    @pytest.mark.parametrize(
        "field_name,C,D,p,I",
        [
            ("zeta5", 3, 1, 11, 1),
            ("zeta5", 1, 3, 5, 5),  # the I = p edge case
            ("f29", 1, 1, 7, 1),
            ("f37", 1, 1, 7, 3),
        ],
    )
    def test_p_and_index_examples(self, request, field_name, C, D, p, I):
        field = request.getfixturevalue(field_name)
        assert p_from_CD(field, C, D) == p
        assert index_from_CD(field, C, D) == I

    def test_parity_rejected(self, zeta5):
        with pytest.raises(ValueError):
            p_from_CD(zeta5, 2, 1)
        with pytest.raises(ValueError):
            index_from_CD(zeta5, 1, 4)

    def test_parity_lemma_integrality_fails(self, zeta5, f29):
        # both even: 16p check fails; mixed parity: 4I check fails
        rng = random.Random(0)
        for field in (zeta5, f29):
            for _ in range(5000):
                C = rng.randrange(-200, 201)
                D = rng.randrange(-200, 201)
                if C % 2 == 1 and D % 2 == 1:
                    assert sixteen_p(field, C, D) % 16 == 0
                    assert four_index(field, C, D) % 4 == 0
                elif C % 2 == 0 and D % 2 == 0:
                    assert sixteen_p(field, C, D) % 16 != 0
                else:
                    assert four_index(field, C, D) % 4 != 0

    def test_sign_symmetry(self, zeta5, f37):
        rng = random.Random(1)
        for field in (zeta5, f37):
            for _ in range(200):
                C = rng.randrange(-49, 50) * 2 + 1
                D = rng.randrange(-49, 50) * 2 + 1
                assert p_from_CD(field, C, D) == p_from_CD(field, -C, -D)
                assert index_from_CD(field, C, D) == index_from_CD(field, -C, -D)


class TestCompleteCandidate:
    def test_A_from_relation(self, zeta5):
        cand = complete_candidate(zeta5, 3, 1, B=1)
        assert (cand.A, cand.B, cand.p, cand.I) == (-11, 1, 11, 1)

    def test_B_minus_one_flips_A_only(self, zeta5):
        plus = complete_candidate(zeta5, 3, 1, B=1)
        minus = complete_candidate(zeta5, 3, 1, B=-1)
        assert minus.A == -plus.A
        assert (minus.p, minus.I) == (plus.p, plus.I)

    def test_smallest_degenerate(self, zeta5):
        cand = complete_candidate(zeta5, 1, 1, B=1)
        assert cand.A == -1 and cand.p == 1  # rejected downstream: 1 is not prime

    def test_invalid_B(self, zeta5):
        with pytest.raises(ValueError):
            complete_candidate(zeta5, 3, 1, B=2)


class TestDiscriminantOracles:
    def test_explicit_value(self, zeta5):
        cand = complete_candidate(zeta5, 3, 1)
        assert cand.A == -11
        # (125/16) * 121 * (9 - 12 - 1)^2 = 15125 = I^2 p^2 disc(K)
        assert disc_closed_form(cand) == 15125
        assert disc_trace_form(cand) == 15125
        assert disc_char_poly(cand) == 15125
        assert cand.I**2 * cand.p**2 * zeta5.disc == 15125

    def test_three_oracle_agreement(self, zeta5, f29, f37):
        rng = random.Random(2)
        for field in (zeta5, f29, f37):
            for _ in range(60):
                C = rng.randrange(-49, 50) * 2 + 1
                D = rng.randrange(-49, 50) * 2 + 1
                cand = complete_candidate(field, C, D, B=rng.choice((1, -1)))
                a = disc_closed_form(cand)
                assert disc_trace_form(cand) == a
                assert disc_char_poly(cand) == a
                assert index_of_candidate(cand) ** 2 * cand.p**2 * field.disc == a

    def test_index_scales_with_B_squared(self, zeta5):
        base = complete_candidate(zeta5, 3, 1)
        synthetic = WeilCandidate(
            field=zeta5, A=base.A, B=2, C=base.C, D=base.D, p=base.p, I=4 * base.I
        )
        assert index_of_candidate(synthetic) == 4 * index_of_candidate(base)

    def test_degenerate_real_candidate(self, zeta5):
        # C = D = 0: pi is real, all conjugate differences collapse
        cand = WeilCandidate(field=zeta5, A=4, B=0, C=0, D=0, p=1, I=0)
        assert disc_trace_form(cand) == 0
        with pytest.raises(ValueError):
            index_of_candidate(cand)


class TestThreeCLemma:
    def test_three_divides_pI(self, f13):
        rng = random.Random(3)
        for _ in range(10**4):
            C = rng.randrange(-499, 500) * 2 + 1
            D = rng.randrange(-499, 500) * 2 + 1
            p = p_from_CD(f13, C, D)
            I = index_from_CD(f13, C, D)
            assert p % 3 == 0 or I % 3 == 0

    def test_no_prime_index_corollary_exhaustive(self, f13):
        # d = 13 = 13 mod 24: no candidate with p >= 5 prime has prime index > 3.
        # 3 | p*I always, so p >= 5 prime forces 3 | I, and a prime I would be 3.
        for C in range(1, 1000, 2):
            for D in range(1, 1000, 2):
                if sixteen_p(f13, C, D) % 3 != 0:
                    assert four_index(f13, C, D) % 3 == 0


class TestClassify:
    def test_not_isolated_small(self, zeta5):
        cand = WeilCandidate(field=zeta5, A=-11, B=1, C=3, D=1, p=11, I=12)
        assert classify(cand).tag is IsolationTag.NOT_ISOLATED

    def test_strictly_isolated_reference_conductor(self, zeta5):
        I = 2955859292970642142002483626678135540313500021819  # 162-bit prime
        cand = WeilCandidate(field=zeta5, A=-11, B=1, C=3, D=1, p=11, I=I)
        assert classify(cand).tag is IsolationTag.STRICTLY_ISOLATED
        assert classify(cand, h_K=None).tag is IsolationTag.STRICTLY_ISOLATED
        assert classify(cand, h_K=2).tag is IsolationTag.ISOLATED

    def test_isolated_without_class_number(self, f29):
        I = 2955859292970642142002483626678135540313500021819
        cand = WeilCandidate(field=f29, A=-5, B=1, C=1, D=1, p=7, I=I)
        assert classify(cand).tag is IsolationTag.ISOLATED

    def test_almost_isolated_mersenne(self, zeta5):
        m89 = (1 << 89) - 1
        cand = WeilCandidate(field=zeta5, A=-11, B=1, C=3, D=1, p=11, I=6 * m89)
        iso = classify(cand, large_prime_bits=80, smooth_bound=1 << 20)
        assert iso.tag is IsolationTag.ALMOST_ISOLATED
        assert iso.large_prime == m89 and iso.smooth_cofactor == 6

    def test_smooth_only_not_isolated(self, zeta5):
        cand = WeilCandidate(field=zeta5, A=-11, B=1, C=3, D=1, p=11, I=2**30 * 3**7)
        assert classify(cand).tag is IsolationTag.NOT_ISOLATED

    def test_prime_below_threshold(self, zeta5):
        cand = WeilCandidate(field=zeta5, A=-11, B=1, C=3, D=1, p=11, I=(1 << 61) - 1)
        assert classify(cand, large_prime_bits=80).tag is IsolationTag.NOT_ISOLATED
        # with the threshold relaxed the same index passes; h(K)=1 upgrades it
        assert (
            classify(cand, large_prime_bits=40).tag is IsolationTag.STRICTLY_ISOLATED
        )
        assert classify(cand, large_prime_bits=40, h_K=3).tag is IsolationTag.ISOLATED


class TestNonNormalCofactor:
    def test_examples(self):
        f_d2 = make_nonnormal_field(17, 6, 2)
        assert nonnormal_index_cofactor(f_d2, 5, 1) == 23
        assert nonnormal_index_cofactor(f_d2, 1, 1) == 1  # |1 - 2| = 1
        f_d5 = make_nonnormal_field(13, 2, 5)
        assert nonnormal_index_cofactor(f_d5, 1, 1) == 1  # 1 + 1 - 1
