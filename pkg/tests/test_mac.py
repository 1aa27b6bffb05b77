from fractions import Fraction

import pytest

from gmmh.errors import InvalidArgumentError, KeyExhaustedError, KeyFileError
from gmmh.family import FamilyParams, evaluate, sample_key
from gmmh.mac import (
    MacKey,
    Tag,
    best_substitution_probability,
    forgery_experiment,
    mac_sign,
    mac_verify,
)


@pytest.fixture
def params():
    return FamilyParams(10, 3)


def test_sign_example(params):
    key = MacKey(params.vector([1, 2, 3]), [7])
    assert mac_sign(params, key, params.vector([4, 5, 6])) == Tag(9, 0)


def test_zero_pad_gives_plain_digest(params):
    x, m = params.vector([3, 1, 4]), params.vector([1, 5, 9])
    assert mac_sign(params, MacKey(x, [0]), m).value == evaluate(params, x, m)


def test_pads_consumed_in_order(params):
    key = MacKey.generate(params, 2, seed=1)
    m = params.vector([1, 2, 3])
    assert [mac_sign(params, key, m).pad_index for _ in range(2)] == [0, 1]
    with pytest.raises(KeyExhaustedError):
        mac_sign(params, key, m)
    assert key.next_pad_index == 2


def test_round_trip_and_tamper(params):
    key = MacKey.generate(params, 20, seed=2)
    for i in range(20):
        m = params.reduce([i, 2 * i, 3 * i + 1])
        tag = mac_sign(params, key, m)
        assert mac_verify(params, key, m, tag)
        assert not mac_verify(params, key, m, Tag((tag.value + 1) % params.n, tag.pad_index))


def test_verify_unknown_pad(params):
    key = MacKey.generate(params, 1, seed=3)
    with pytest.raises(InvalidArgumentError):
        mac_verify(params, key, params.zero(), Tag(0, 1))


def test_generate_shares_key_sampler(params):
    assert MacKey.generate(params, 4, seed=9).hash_key == sample_key(params, 9)


def test_key_text_round_trip(params):
    key = MacKey.generate(params, 3, seed=4)
    mac_sign(params, key, params.zero())
    again = MacKey.from_text(key.to_text())
    assert again == key and again.next_pad_index == 1


@pytest.mark.parametrize(
    "text, line",
    [
        ("n=10\nk=3\nx=1,2,3\n", 4),
        ("n=10\nk=3\nx=1,2,3\npads=1,12\n", 4),
        ("n=10\nk=3\nx=1,2,3\npads=1,2\nnext=3\n", 5),
    ],
)
def test_key_text_errors(text, line):
    with pytest.raises(KeyFileError) as info:
        MacKey.from_text(text)
    assert info.value.line == line


def test_forgery_experiment_validates():
    with pytest.raises(InvalidArgumentError):
        forgery_experiment(FamilyParams(6, 2), 0, seed=0)


def test_forgery_experiment_deterministic():
    p = FamilyParams(6, 2)
    assert forgery_experiment(p, 500, seed=11) == forgery_experiment(p, 500, seed=11)


@pytest.mark.parametrize("n, k", [(n, k) for n in range(2, 7) for k in (1, 2)])
def test_best_adversary_matches_bound(n, k):
    p = FamilyParams(n, k)
    assert best_substitution_probability(p) == Fraction(1, p.p)
