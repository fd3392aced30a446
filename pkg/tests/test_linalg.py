import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Matrix
from sympy.matrices.normalforms import invariant_factors

from paley_snf.errors import InvalidInputError
from paley_snf.groups import AbelianGroup
from paley_snf.linalg import (
    SmithForm,
    cokernel,
    det_bareiss,
    identity,
    local_divisors,
    smith_normal_form,
)


def _oracle(m):
    """Nonzero invariant factors via sympy (an independent implementation)."""
    return tuple(int(d) for d in invariant_factors(Matrix(m)) if d != 0)


def test_snf_examples(paley):
    assert smith_normal_form(identity(3)) == SmithForm((1, 1, 1))
    assert smith_normal_form(paley(5).adjacency).divisors == (1, 1, 1, 1, 2)
    assert smith_normal_form([[4, 0], [0, 6]]).divisors == (2, 12)
    assert smith_normal_form([]) == SmithForm(())


def test_snf_rectangular():
    snf = smith_normal_form([[2, 4, 6], [4, 8, 12]])
    assert snf == SmithForm((2,), 1)
    assert smith_normal_form([[0, 0, 0]]) == SmithForm((), 1)


def test_snf_json():
    assert SmithForm((1, 1, 2, 6), 1).to_json() == [[1, 2], [2, 1], [6, 1], [0, 1]]


def test_cokernel_examples(paley, paley_laplacian):
    assert cokernel(paley(5).adjacency) == AbelianGroup.from_invariant_factors([2])
    g = cokernel(paley_laplacian(5))
    assert g.free_rank == 1 and g.torsion() == AbelianGroup.from_invariant_factors([5])
    zero = cokernel([[0, 0], [0, 0]])
    assert zero.free_rank == 2 and zero.elementary == ()


def test_local_divisors_examples(paley_laplacian):
    lap = paley_laplacian(9)
    assert local_divisors(lap, 3) == (0, 0, 0, 0, 1, 1, 2, 2)
    assert local_divisors(lap, 2) == (0, 0, 0, 0, 1, 1, 1, 1)
    assert local_divisors(identity(4), 7) == (0, 0, 0, 0)
    with pytest.raises(InvalidInputError):
        local_divisors(lap, 4)


def test_det_examples(paley):
    assert abs(det_bareiss(paley(5).adjacency)) == 2
    assert abs(det_bareiss(paley(13).adjacency)) == 4374
    assert det_bareiss(identity(5)) == 1
    assert det_bareiss([[0, 1], [1, 0]]) == -1
    assert det_bareiss([[1, 2], [2, 4]]) == 0


@pytest.mark.parametrize("q", [13, 17])
def test_det_vs_sympy(paley, q):
    adj = paley(q).adjacency
    assert det_bareiss(adj) == Matrix(adj).det()


def test_snf_vs_sympy_random():
    rng = random.Random(20241016)
    for _ in range(200):
        rows, cols = rng.randint(1, 6), rng.randint(1, 6)
        m = [[rng.randint(-9, 9) for _ in range(cols)] for _ in range(rows)]
        snf = smith_normal_form(m)
        assert all(b % a == 0 for a, b in zip(snf.divisors, snf.divisors[1:]))
        assert snf.divisors == _oracle(m)
        assert snf.rank + snf.zero_count == min(rows, cols)


@pytest.mark.parametrize("q", [9, 13, 25])
def test_snf_vs_sympy_paley(paley, paley_laplacian, q):
    assert smith_normal_form(paley(q).adjacency).divisors == _oracle(paley(q).adjacency)
    assert smith_normal_form(paley_laplacian(q)).divisors == _oracle(paley_laplacian(q))


def _scramble(m, rng, steps=12):
    m = [row[:] for row in m]
    rows, cols = len(m), len(m[0])
    for _ in range(steps):
        kind = rng.randrange(4)
        if kind == 0 and rows > 1:
            i, j = rng.sample(range(rows), 2)
            c = rng.randint(-3, 3)
            m[i] = [a + c * b for a, b in zip(m[i], m[j])]
        elif kind == 1 and cols > 1:
            i, j = rng.sample(range(cols), 2)
            c = rng.randint(-3, 3)
            for row in m:
                row[i] += c * row[j]
        elif kind == 2:
            i, j = rng.randrange(rows), rng.randrange(rows)
            m[i], m[j] = m[j], m[i]
        else:
            i = rng.randrange(rows)
            m[i] = [-a for a in m[i]]
    return m


small_matrices = st.integers(1, 6).flatmap(
    lambda r: st.integers(1, 6).flatmap(
        lambda c: st.lists(
            st.lists(st.integers(-20, 20), min_size=c, max_size=c), min_size=r, max_size=r
        )
    )
)


@settings(max_examples=200, deadline=None)
@given(small_matrices, st.integers(0, 2**32))
def test_snf_unimodular_invariance(m, seed):
    snf = smith_normal_form(m)
    assert all(b % a == 0 for a, b in zip(snf.divisors, snf.divisors[1:]))
    assert all(d > 0 for d in snf.divisors)
    assert smith_normal_form(_scramble(m, random.Random(seed))) == snf


@settings(max_examples=100, deadline=None)
@given(st.lists(st.lists(st.integers(-15, 15), min_size=4, max_size=4), min_size=4, max_size=4))
def test_snf_product_is_abs_det(m):
    det = det_bareiss(m)
    snf = smith_normal_form(m)
    if det:
        prod = 1
        for d in snf.divisors:
            prod *= d
        assert prod == abs(det)
    else:
        assert snf.zero_count > 0


def test_local_structure_reconstructs_invariants(paley_laplacian):
    lap = paley_laplacian(25)
    snf = smith_normal_form(lap)
    group = cokernel(lap)
    for ell in group.primes:
        exps = local_divisors(lap, ell)
        assert tuple(e for e in exps if e) == group.exponents(ell)
    assert group.invariant_factors == snf.nontrivial()
