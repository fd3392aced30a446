import pytest

from paley_snf.carries import carry_count, carry_profile
from paley_snf.charsums import (
    Principal,
    character_table,
    jacobi_sum,
    jacobi_valuation,
    predicted_local_divisors,
    verify_fixed_block,
    verify_isotypic_action,
)
from paley_snf.errors import InvalidInputError
from paley_snf.fields import find_field, galois_ring, teichmuller
from paley_snf.linalg import local_divisors


def _ring(p, t, m=None):
    return galois_ring(find_field(p, t), t + 1 if m is None else m)


@pytest.mark.parametrize("p,t", [(5, 1), (3, 2), (13, 1), (5, 2)])
def test_principal_conventions(p, t):
    ring = _ring(p, t)
    q = p**t
    minus_one = ring(-1)
    for a in (1, 2, (q - 1) // 2, q - 2):
        assert jacobi_sum(ring, a, 0, principal_b=Principal.ON_ALL) == ring.zero
        assert jacobi_sum(ring, a, q - 1, principal_b=Principal.OFF_ZERO) == minus_one
    k = (q - 1) // 2
    assert jacobi_sum(ring, k, k) == minus_one


def test_principal_both():
    ring = _ring(3, 2)
    # T^0 with T^0 counts every x; T^(q-1) with T^(q-1) counts x != 0, 1
    assert jacobi_sum(ring, 0, 0, Principal.ON_ALL, Principal.ON_ALL) == ring(9)
    assert jacobi_sum(ring, 0, 0, Principal.OFF_ZERO, Principal.OFF_ZERO) == ring(7)


def test_character_table_matches_teichmuller():
    ring = _ring(3, 2, 3)
    table = character_table(ring)
    for x in ring.residue_field.elements()[1:]:
        assert table.value(1, x.index()) == teichmuller(ring, x)


@pytest.mark.parametrize("p,t", [(5, 1), (3, 2), (5, 2), (7, 2)])
def test_jacobi_norm(p, t):
    # J(T^a, T^b) J(T^-a, T^-b) = q whenever a, b, a+b are nonzero mod q-1
    ring = _ring(p, t)
    q = p**t
    for a, b in [(1, 1), (1, 2), (2, 3), (1, (q - 1) // 2)]:
        if (a + b) % (q - 1) and b % (q - 1):
            assert jacobi_sum(ring, a, b) * jacobi_sum(ring, -a, -b) == ring(q)


def test_jacobi_valuation_examples():
    assert jacobi_valuation(9, 2) == 1
    assert jacobi_valuation(9, 1) == 0
    assert jacobi_valuation(25, 13) == 2
    with pytest.raises(InvalidInputError):
        jacobi_valuation(25, 12)


@pytest.mark.parametrize("q", [5, 9, 13, 25, 27, 49])
def test_jacobi_valuation_equals_carries(q):
    k = (q - 1) // 2
    for i in range(1, q - 1):
        if i != k:
            assert jacobi_valuation(q, i) == carry_count(i, q)


@pytest.mark.parametrize("q,i", [(5, 1), (9, 1), (9, 3), (5, 3), (13, 5)])
def test_isotypic_action_examples(q, i):
    assert verify_isotypic_action(q, i)


def test_isotypic_action_detects_wrong_jacobi(monkeypatch):
    import paley_snf.charsums as cs

    real = cs.jacobi_sum
    monkeypatch.setattr(cs, "jacobi_sum", lambda ring, a, b, *r: real(ring, a, b, *r) + 1)
    assert not verify_isotypic_action(9, 1)


def test_isotypic_action_rejects_bad_input():
    with pytest.raises(InvalidInputError):
        verify_isotypic_action(9, 4)
    with pytest.raises(InvalidInputError):
        verify_isotypic_action(9, 1, m=2)


@pytest.mark.parametrize("q", [5, 9, 13])
def test_fixed_block(q):
    assert verify_fixed_block(q)
    assert verify_fixed_block(q, m=1)


def test_predicted_local_divisors_examples():
    # q = 5: c(1) = 0, c(3) = 1, plus the two units
    assert predicted_local_divisors(5) == (0, 0, 0, 1)
    assert predicted_local_divisors(9) == (0, 0, 0, 0, 1, 1, 2, 2)
    profile = predicted_local_divisors(25)
    assert [profile.count(lam) for lam in range(3)] == [9, 8, 7]
    assert carry_profile(25).counts == (7, 8, 7)


@pytest.mark.parametrize("q", [5, 9, 13, 25, 49])
def test_predicted_local_divisors_match_snf(paley_laplacian, q):
    p = [ell for ell in range(2, q + 1) if q % ell == 0][0]
    assert local_divisors(paley_laplacian(q), p) == predicted_local_divisors(q)
