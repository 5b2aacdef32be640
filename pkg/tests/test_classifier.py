import pytest
from hypothesis import given, settings, strategies as st

from twinsieve import oracle
from twinsieve.classifier import (
    Verdict,
    candidates,
    classify,
    classify_many,
    merged_sequence_check,
    parity_signature,
    verify_parity_law,
)
from twinsieve.errors import DomainError
from twinsieve.forms import DivisorPair, FormKind, FormWitness

from conftest import trial_prime


def test_classify_examples():
    c = classify(25)
    assert c.verdict is Verdict.COMPOSITE
    assert c.witness == FormWitness(FormKind.MINUS_MINUS, 1, 1, 4)
    assert c.divisors == DivisorPair(5, 5, 25)

    assert classify(31).verdict is Verdict.PRIME
    assert classify(31).witness is None and classify(31).divisors is None

    c = classify(35)
    assert c.witness == FormWitness(FormKind.PLUS_MINUS, 1, 1, 6)
    assert (c.divisors.d1, c.divisors.d2) == (5, 7)


@pytest.mark.parametrize("m", [-7, 0, 1, 2, 3, 4, 6, 8, 9, 12, 15, 3.5])
def test_classify_domain(m):
    with pytest.raises(DomainError):
        classify(m)


def test_classify_matches_trial_division():
    for m in candidates(2000).tolist():
        c = classify(m)
        assert c.is_prime == trial_prime(m), m
        if not c.is_prime:
            assert c.divisors.m == m and c.divisors.d1 * c.divisors.d2 == m


def test_classify_many_matches_scalar():
    ms = candidates(3000).tolist()[::-1]
    assert classify_many(ms) == [classify(m) for m in ms]


@given(st.integers(1, 10**8), st.sampled_from([-1, 1]))
@settings(deadline=None)
def test_oracle_agreement(n, sign):
    m = 6 * n + sign
    c = classify(m)
    assert c.is_prime == oracle.oracle_is_prime(m)
    if not c.is_prime:
        assert c.divisors.d1 * c.divisors.d2 == m
        assert 1 < c.divisors.d1 <= c.divisors.d2 < m


@pytest.mark.parametrize("m, alpha, beta", [(35, 1, 1), (25, 2, 0), (49, 0, 2), (5, 1, 0), (7, 0, 1)])
def test_parity_signature_examples(m, alpha, beta):
    sig = parity_signature(m)
    assert (sig.alpha, sig.beta) == (alpha, beta)


def test_parity_signature_domain():
    with pytest.raises(DomainError):
        parity_signature(9)


def test_parity_law_small():
    report = verify_parity_law(20)
    assert report.ok and report.violation_count == 0
    assert report.checked == 40
    assert report.alpha_odd == report.alpha_even == 20


@given(st.integers(1, 10**9).map(lambda k: 6 * k + 5))
def test_parity_law_property(m):
    sig = parity_signature(m)
    assert sig.alpha % 2 == 1


@given(st.integers(1, 10**9).map(lambda k: 6 * k + 1))
def test_parity_law_property_plus(m):
    sig = parity_signature(m)
    assert sig.alpha % 2 == 0


def test_merged_sequence_examples():
    assert candidates(3).tolist() == [5, 7, 11, 13, 17, 19]
    assert candidates(1).tolist() == [5, 7]
    for limit in (1, 3, 100):
        report = merged_sequence_check(limit)
        assert report.passed and report.first_discrepancy is None
    assert merged_sequence_check(100).primes_checked == sum(trial_prime(p) for p in range(5, 602))


def test_merged_sequence_domain():
    with pytest.raises(DomainError):
        merged_sequence_check(0)
