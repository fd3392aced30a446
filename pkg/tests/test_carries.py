import itertools

import pytest

from paley_snf.carries import carries_add_mod, carry_count, carry_profile, digit_sum
from paley_snf.errors import InvalidInputError

QS = [5, 9, 13, 25, 27, 49, 81, 121, 125, 243, 343]


def _digits(x, p, t):
    return [(x // p**i) % p for i in range(t)]


def _carry_sequences_brute_force(a, p, t):
    """All 0/1 cyclic sequences satisfying a_i + (p-1)/2 + c_i = b_i + p c_{i+1}."""
    q = p**t
    target = (a + (q - 1) // 2) % (q - 1)
    ad = _digits(a, p, t)
    out = []
    # b ranges over both representatives in [0, q-1] when the sum is 0 mod q-1
    for b_val in sorted({target, target + q - 1} & set(range(q))):
        b = _digits(b_val, p, t)
        for c in itertools.product((0, 1), repeat=t):
            if all(ad[i] + (p - 1) // 2 + c[i] == b[i] + p * c[(i + 1) % t] for i in range(t)):
                out.append(c)
    return out


def test_digit_sum_examples():
    assert digit_sum(12, 25) == 4
    assert digit_sum(0, 25) == 0
    assert digit_sum(26, 25) == 2
    assert digit_sum(24, 25) == 0


def test_carry_count_examples():
    assert carry_count(2, 9) == 1
    assert carry_count(1, 9) == 0
    assert carry_count(13, 25) == 2


@pytest.mark.parametrize("i", [0, 12, 24, 30])
def test_carry_count_rejects_excluded(i):
    with pytest.raises(InvalidInputError):
        carry_count(i, 25)


def test_carries_add_mod_examples():
    assert carries_add_mod(7, 25) == (0, 0)
    assert carries_add_mod(13, 25) == (1, 1)
    assert sum(carries_add_mod(2, 9)) == 1
    for a in (0, 12, 24):
        with pytest.raises(InvalidInputError):
            carries_add_mod(a, 25)


@pytest.mark.parametrize("p,t", [(3, 2), (5, 2), (3, 3), (7, 2), (5, 3), (3, 4)])
def test_carries_brute_force(p, t):
    q = p**t
    for a in range(1, q - 1):
        if a == (q - 1) // 2:
            continue
        sequences = _carry_sequences_brute_force(a, p, t)
        assert sequences == [carries_add_mod(a, q)]
        assert sum(sequences[0]) == carry_count(a, q)


@pytest.mark.parametrize("p,t", [(3, 2), (5, 1), (5, 2)])
def test_degenerate_indices_brute_force(p, t):
    q = p**t
    assert _carry_sequences_brute_force(0, p, t) == [(0,) * t]
    assert _carry_sequences_brute_force(q - 1, p, t) == [(1,) * t]
    assert sorted(_carry_sequences_brute_force((q - 1) // 2, p, t)) == [(0,) * t, (1,) * t]


def test_profile_examples():
    assert carry_profile(25).counts == (7, 8, 7)
    assert carry_profile(9).counts == (2, 2, 2)
    assert carry_profile(5).counts == (1, 1)


@pytest.mark.parametrize("q", QS)
def test_profile_properties(q):
    profile = carry_profile(q)
    t = profile.t
    p = round(q ** (1 / t))
    assert sum(profile.counts) == q - 3
    assert profile.is_palindrome()
    assert profile.counts[0] + 2 == ((p + 1) // 2) ** t
    k = (q - 1) // 2
    for i in range(1, q - 1):
        if i != k:
            assert carry_count(i, q) + carry_count(q - 1 - i, q) == t
