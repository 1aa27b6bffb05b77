from fractions import Fraction

import pytest

from gmmh.errors import BudgetExceededError, InvalidArgumentError
from gmmh.family import DeltaQuery, FamilyParams
from gmmh.verifier import (
    VerificationReport,
    brute_force_delta_probability,
    cross_check_fast_path,
    find_fast_path_disagreement,
    max_delta_probability,
    pairwise_delta_extremes,
    translation_spot_check,
    verify_theorem,
)


def query(n, k, m, mp, b):
    p = FamilyParams(n, k)
    return p, DeltaQuery(p.vector(m), p.vector(mp), b)


@pytest.mark.parametrize(
    "n, k, m, mp, b, expected",
    [
        (6, 2, (3, 0), (0, 0), 3, Fraction(1, 2)),
        (5, 1, (1,), (0,), 2, Fraction(1, 5)),
        (4, 1, (2,), (0,), 1, Fraction(0)),
    ],
)
def test_brute_force_examples(kernels, n, k, m, mp, b, expected):
    p, q = query(n, k, m, mp, b)
    assert brute_force_delta_probability(p, q) == expected


def test_brute_force_budget():
    p, q = query(6, 2, (3, 0), (0, 0), 3)
    with pytest.raises(BudgetExceededError) as info:
        brute_force_delta_probability(p, q, budget=35)
    assert info.value.required == 36


@pytest.mark.parametrize(
    "n, k, prob, a",
    [(6, 1, Fraction(1, 2), (3,)), (4, 2, Fraction(1, 2), (0, 2)), (5, 1, Fraction(1, 5), (1,))],
)
def test_max_delta_examples(kernels, n, k, prob, a):
    best, witness = max_delta_probability(FamilyParams(n, k))
    assert best == prob
    assert witness.m.entries == a and witness.m_prime.is_zero() and witness.b == 0


def test_max_delta_budget():
    # cost n^k * (n^k - 1) * n
    with pytest.raises(BudgetExceededError) as info:
        max_delta_probability(FamilyParams(6, 2), budget=7559)
    assert info.value.required == 7560
    max_delta_probability(FamilyParams(6, 2), budget=7560)


@pytest.mark.parametrize(
    "n, k, bound, universal",
    [(6, 2, Fraction(1, 2), False), (7, 2, Fraction(1, 7), True), (12, 1, Fraction(1, 2), False)],
)
def test_verify_theorem_examples(kernels, n, k, bound, universal):
    r = verify_theorem(FamilyParams(n, k))
    assert r.bound == bound == r.max_delta_probability
    assert r.bound_holds and r.bound_tight
    assert r.is_delta_universal is universal


def test_worker_count_does_not_change_report():
    p = FamilyParams(9, 3)
    reports = {verify_theorem(p, budget=10**8, workers=w).to_text() for w in (1, 2, 3, 7)}
    assert len(reports) == 1
    _, q = query(9, 3, (3, 1, 4), (1, 5, 0), 2)
    assert len({brute_force_delta_probability(p, q, workers=w) for w in (1, 4)}) == 1


def test_report_text_round_trip():
    r = verify_theorem(FamilyParams(6, 2))
    text = r.to_text("lines")
    assert text.splitlines()[:7] == [
        "n=6", "k=2", "max=1/2", "bound=1/2", "tight=true", "holds=true", "delta_universal=false",
    ]
    assert "max=1/2 bound=1/2 tight=true" in r.to_text("text")
    assert VerificationReport.from_text(text) == r
    assert VerificationReport.from_text(r.to_text("text")) == r


def test_report_rejects_inconsistent_text():
    text = verify_theorem(FamilyParams(6, 2)).to_text().replace("tight=true", "tight=false")
    with pytest.raises(InvalidArgumentError):
        VerificationReport.from_text(text)


@pytest.mark.parametrize("n, k", [(6, 2), (9, 2), (2, 1)])
def test_cross_check_examples(kernels, n, k):
    assert cross_check_fast_path(FamilyParams(n, k), trials=200, seed=n * 100 + k)


def test_cross_check_reports_disagreement(monkeypatch, caplog):
    import gmmh.verifier as verifier

    monkeypatch.setattr(verifier, "delta_probability", lambda params, q: Fraction(1, params.n))
    p = FamilyParams(6, 2)
    found = find_fast_path_disagreement(p, trials=200, seed=1)
    assert found is not None
    q, fast, brute = found
    assert fast == Fraction(1, 6) != brute
    assert not cross_check_fast_path(p, trials=200, seed=1)
    assert "m=" in caplog.text


def test_translation_spot_check(kernels):
    assert translation_spot_check(FamilyParams(6, 2), trials=100, seed=5)
    assert translation_spot_check(FamilyParams(8, 2), trials=100, seed=6)


def test_pairwise_extremes_small():
    low, high, pairs = pairwise_delta_extremes(FamilyParams(4, 2))
    assert (low, high, pairs) == (Fraction(0), Fraction(1, 2), 16 * 15)
