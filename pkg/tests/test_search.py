import random

import pytest
import sympy

from cm_isolate.errors import NoPrimeIndexError, SearchExhaustedError
from cm_isolate.search import (
    count_prime_pairs,
    counts_by_bound,
    elliptic_analogue_search,
    elliptic_candidate,
    empirical_frequency,
    find_isolated,
)
from cm_isolate.splitting import SplittingClass, classify_prime
from cm_isolate.weilnum import index_from_CD, p_from_CD


class TestCountPrimePairs:
    def test_against_independent_oracle(self, zeta5):
        # brute-force recount with sympy primality over a small box
        report = count_prime_pairs(zeta5, 60)
        expect = 0
        for C in range(1, 61, 2):
            for D in range(1, 61, 2):
                p, I = p_from_CD(zeta5, C, D), index_from_CD(zeta5, C, D)
                if I >= 2 and sympy.isprime(I) and sympy.isprime(p):
                    expect += 1
        assert report.count == expect
        assert len(report.hits) == report.count

    def test_monotone_in_bound(self, f29):
        big = count_prime_pairs(f29, 100)
        partial = counts_by_bound(big, [40, 60, 80, 100])
        vals = [partial[b] for b in (40, 60, 80, 100)]
        assert vals == sorted(vals)
        assert partial[100] == big.count

    def test_partition_invariance(self, zeta5):
        one = count_prime_pairs(zeta5, 80, workers=1)
        three = count_prime_pairs(zeta5, 80, workers=3)
        assert one.count == three.count
        assert one.hits == three.hits
        assert one == three  # wall time excluded from equality

    def test_hits_satisfy_invariants(self, zeta5):
        from cm_isolate.weilnum import complete_candidate

        report = count_prime_pairs(zeta5, 60)
        for h in report.hits:
            cand = complete_candidate(zeta5, h.C, h.D)
            assert cand.p == h.p and cand.I == h.I
            assert 16 * h.p == cand.A**2 + 5 * (1 + h.C**2 + h.D**2)

    def test_hit_primes_are_coherent(self, zeta5):
        # p = 1 mod 5 for every hit with p not 5 (split-or-ramified lemma)
        report = count_prime_pairs(zeta5, 120)
        for h in report.hits:
            assert h.p == 5 or h.p % 5 == 1

    def test_bound_validation(self, zeta5):
        with pytest.raises(ValueError):
            count_prime_pairs(zeta5, 2)
        rep = count_prime_pairs(zeta5, 60)
        with pytest.raises(ValueError):
            counts_by_bound(rep, [120])


class TestDivisorOfPLemma:
    def test_small_prime_divisors_split_or_ramify(self, zeta5):
        suspects = []
        for C in range(3, 160, 2):
            for D in range(3, 160, 2):
                p = p_from_CD(zeta5, C, D)
                for l in (3, 7, 13, 17, 19, 23, 29, 37, 43, 47):
                    if p % l == 0:
                        suspects.append(l)
        assert not suspects  # none of these lie in P_C for d = 5


class TestEmpiricalFrequency:
    def test_reference_value(self, zeta5):
        assert f"{empirical_frequency(zeta5, 11, 3, 2001):.6f}" == "0.529075"

    def test_matches_direct_count_small(self, f37):
        lo, hi, l = 3, 301, 7
        direct = 0
        total = 0
        for C in range(lo, hi + 1, 2):
            for D in range(lo, hi + 1, 2):
                total += 1
                if p_from_CD(f37, C, D) % l and index_from_CD(f37, C, D) % l:
                    direct += 1
        assert empirical_frequency(f37, l, lo, hi) == direct / total

    def test_validation(self, zeta5):
        with pytest.raises(ValueError):
            empirical_frequency(zeta5, 11, 2, 100)
        with pytest.raises(ValueError):
            empirical_frequency(zeta5, 2, 3, 101)


class TestFindIsolated:
    def test_eighty_bit_target(self, zeta5):
        res = find_isolated(zeta5, target_p_bits=80, large_prime_bits=40, seed=1)
        cand = res.candidate
        assert cand.C % 2 == 1 and cand.D % 2 == 1
        assert 16 * cand.p == cand.A**2 + 5 * (1 + cand.C**2 + cand.D**2)
        assert cand.I >= 1 << 40
        assert abs(cand.p.bit_length() - 80) <= 4

    def test_deterministic_under_seed(self, zeta5):
        a = find_isolated(zeta5, 80, large_prime_bits=40, seed=9)
        b = find_isolated(zeta5, 80, large_prime_bits=40, seed=9)
        assert a.candidate == b.candidate and a.attempts == b.attempts

    def test_no_prime_index_field_rejected(self, f13):
        with pytest.raises(NoPrimeIndexError):
            find_isolated(f13, target_p_bits=80, seed=1)

    def test_exhaustion(self, zeta5):
        with pytest.raises(SearchExhaustedError):
            find_isolated(
                zeta5, target_p_bits=80, large_prime_bits=79, seed=1, max_attempts=3
            )

    def test_target_validation(self, zeta5):
        with pytest.raises(ValueError):
            find_isolated(zeta5, target_p_bits=32, seed=1)


class TestEllipticAnalogue:
    def test_reference_scan(self):
        hit = elliptic_analogue_search(1, 4)
        assert (hit.B, hit.A, hit.p, hit.n, hit.sign) == (11, 4, 137, 73, 1)

    def test_candidate_validation(self):
        with pytest.raises(ValueError):
            elliptic_candidate(1, 3, 11)  # odd A rejected
        with pytest.raises(ValueError):
            elliptic_candidate(1, 4, 10)  # even d*B rejected
        c = elliptic_candidate(1, 4, 11)
        assert (c.p, c.n_minus, c.n_plus) == (137, 65, 73)

    def test_seeded_search(self):
        hit = elliptic_analogue_search(1, 8, seed=7)
        assert hit.p == hit.A**2 + hit.B**2
        assert hit.n == (hit.p + 1) // 2 + hit.sign * hit.A
        assert sympy.isprime(hit.p) and sympy.isprime(hit.n) and sympy.isprime(hit.B)
        assert hit.B.bit_length() == 8 and hit.A % 2 == 0
        again = elliptic_analogue_search(1, 8, seed=7)
        assert again == hit

    def test_general_d_gating(self):
        with pytest.raises(ValueError):
            elliptic_analogue_search(13, 6)  # needs experimental
        # d = 13 is 1 mod 4 and 1 mod 3 (d = 2 mod 3 forces 3 | n, no hits)
        hit = elliptic_analogue_search(13, 6, seed=3, experimental=True)
        assert hit.p == hit.A**2 + 13 * hit.B**2
        assert sympy.isprime(hit.p) and sympy.isprime(hit.n)

    def test_unsupported_d(self):
        with pytest.raises(ValueError):
            elliptic_analogue_search(2, 6, experimental=True)  # p always even
        with pytest.raises(ValueError):
            elliptic_analogue_search(3, 6, experimental=True)  # half-integral case
        with pytest.raises(ValueError):
            elliptic_analogue_search(12, 6, experimental=True)  # not square-free

    def test_scan_needs_small_k(self):
        with pytest.raises(ValueError):
            elliptic_analogue_search(1, 30)


def test_splitting_classes_consistent_with_hits(f37):
    # spot check: p = 7 appears as a hit value and is totally split for d = 37
    assert classify_prime(f37, 7) is SplittingClass.TOTALLY_SPLIT


def test_search_determinism_seeds(zeta5):
    rng_hits = []
    for _ in range(2):
        res = find_isolated(zeta5, 64, large_prime_bits=20, seed=123)
        rng_hits.append((res.candidate.C, res.candidate.D, res.attempts))
    assert rng_hits[0] == rng_hits[1]
