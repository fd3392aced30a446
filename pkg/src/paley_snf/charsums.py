"""Jacobi sums of Teichmüller characters and the Laplacian action on isotypic vectors.

Character values live in the Galois ring GR(p^m, t); T denotes the
Teichmüller character and chi = T^k the quadratic character, k = (q-1)/2.
"""

from __future__ import annotations

import enum
from functools import cached_property, lru_cache

from sympy import factorint

from .carries import _check_index, _params, carry_count
from .errors import InvalidInputError, PrecisionError
from .fields import (
    FieldElement,
    GaloisRing,
    GaloisRingElement,
    find_field,
    galois_ring,
    teichmuller,
    valuation,
)
from .graph import build_paley, laplacian

__all__ = [
    "CharacterTable",
    "Principal",
    "character_table",
    "jacobi_sum",
    "jacobi_valuation",
    "predicted_local_divisors",
    "verify_fixed_block",
    "verify_isotypic_action",
]


# -- characters and Jacobi sums -------------------------------------------------


class Principal(enum.Enum):
    """How a character power divisible by q-1 behaves at 0."""

    ON_ALL = "T^0"  # value 1 everywhere, including at 0
    OFF_ZERO = "T^(q-1)"  # value 0 at 0


class CharacterTable:
    """Discrete logs and Teichmüller powers for one Galois ring."""

    def __init__(self, ring: GaloisRing):
        self.ring = ring
        self.field = ring.residue_field
        q = ring.q
        self.q = q
        self.generator = _primitive_element(self.field)
        omega = teichmuller(ring, self.generator)
        self.powers = [ring.one]
        for _ in range(q - 2):
            self.powers.append(self.powers[-1] * omega)
        assert self.powers[-1] * omega == ring.one
        self.log = {}
        x = self.field.one
        for j in range(q - 1):
            self.log[x.index()] = j
            x = x * self.generator
        assert len(self.log) == q - 1

    @cached_property
    def one_minus(self) -> list:
        """Index of 1 - x for each index of x."""
        return [(self.field.one - x).index() for x in self.field.elements()]

    def value(self, c: int, x_index: int, principal: Principal = Principal.OFF_ZERO):
        """T^c at the element with index x_index."""
        if x_index == 0:
            if c % (self.q - 1) == 0 and principal is Principal.ON_ALL:
                return self.ring.one
            return self.ring.zero
        return self.powers[(c * self.log[x_index]) % (self.q - 1)]


def _primitive_element(field) -> FieldElement:
    order = field.q - 1
    cofactors = [order // ell for ell in factorint(order)]
    for x in field.elements()[1:]:
        if all(x**c != field.one for c in cofactors):
            return x
    raise AssertionError("no primitive element")  # unreachable


@lru_cache(maxsize=32)
def character_table(ring: GaloisRing) -> CharacterTable:
    return CharacterTable(ring)


def jacobi_sum(
    ring: GaloisRing,
    a: int,
    b: int,
    principal_a: Principal = Principal.OFF_ZERO,
    principal_b: Principal = Principal.OFF_ZERO,
) -> GaloisRingElement:
    """J(T^a, T^b) = sum over all x in F_q of T^a(x) T^b(1-x).

    The principal flags only matter when the exponent is divisible by q-1.
    """
    table = character_table(ring)
    total = ring.zero
    for x, y in enumerate(table.one_minus):
        u = table.value(a, x, principal_a)
        if u.is_zero():
            continue
        v = table.value(b, y, principal_b)
        if not v.is_zero():
            total = total + u * v
    return total


def _ring_for(q: int, m: int | None) -> GaloisRing:
    params = _params(q)
    return galois_ring(find_field(params.p, params.t), params.t + 1 if m is None else m)


def jacobi_valuation(q: int, i: int) -> int:
    """p-adic valuation of J(T^-i, chi), computed in GR(p^(t+1), t)."""
    _check_index(i, q)
    ring = _ring_for(q, None)
    v = valuation(jacobi_sum(ring, -i, (q - 1) // 2))
    if v >= ring.m:
        raise PrecisionError(f"valuation of J(T^-{i}, chi) not resolved at precision {ring.m}")
    return v


# -- Laplacian action on isotypic vectors ------------------------------------------


def _laplacian_for(q: int) -> list:
    return laplacian(build_paley(q))


def _apply(matrix, vec):
    """Integer matrix times a vector of ring elements."""
    ring = vec[0].ring
    n = ring.order
    cols = list(zip(*(e.coeffs for e in vec)))
    out = []
    for row in matrix:
        coeffs = [sum(a * c for a, c in zip(row, col)) % n for col in cols]
        out.append(type(vec[0])(ring, coeffs))
    return out


def _e_vector(table: CharacterTable, i: int) -> list:
    """e_i: coordinate T^i(x^-1) at each nonzero x, 0 at vertex 0."""
    return [table.value(-i, x) for x in range(table.q)]


def verify_isotypic_action(q: int, i: int, m: int | None = None) -> bool:
    """Check L(e_i) = (q e_i - J(T^-i, chi) e_{i+k}) / 2 coordinatewise mod p^m."""
    params = _params(q)
    _check_index(i, q)
    if m is not None and m < params.t + 1:
        raise InvalidInputError(f"precision must be at least t+1 = {params.t + 1}")
    ring = _ring_for(q, m)
    table = character_table(ring)
    k = params.k
    half = ring(2).inv()
    jac = jacobi_sum(ring, -i, k)
    e_i = _e_vector(table, i)
    e_ik = _e_vector(table, i + k)
    lhs = _apply(_laplacian_for(q), e_i)
    rhs = [half * (u * q - jac * v) for u, v in zip(e_i, e_ik)]
    return lhs == rhs


def verify_fixed_block(q: int, m: int | None = None) -> bool:
    """Check L(1) = 0, L(e_k) = (1 - q([0] - e_k))/2 and L([0]) = (q[0] - e_k - 1)/2."""
    params = _params(q)
    ring = _ring_for(q, m)
    table = character_table(ring)
    lap = _laplacian_for(q)
    half = ring(2).inv()
    one, zero = ring.one, ring.zero
    ones = [one] * q
    delta0 = [one] + [zero] * (q - 1)
    e_k = _e_vector(table, params.k)

    checks = [
        _apply(lap, ones) == [zero] * q,
        _apply(lap, e_k) == [half * (1 - (d - e) * q) for d, e in zip(delta0, e_k)],
        _apply(lap, delta0) == [half * (d * q - e - 1) for d, e in zip(delta0, e_k)],
    ]
    return all(checks)


def predicted_local_divisors(q: int) -> tuple:
    """Sorted p-exponents of the q-1 nonzero diagonal entries of L over the p-adic ring.

    These are c(i) for i in [1, q-2] minus {k}, plus two units; the remaining
    slot is the zero divisor (free rank one).
    """
    params = _params(q)
    if q % 4 != 1:
        raise InvalidInputError("q must be a prime power ≡ 1 (mod 4)")
    exps = [carry_count(i, q) for i in range(1, q - 1) if i != params.k]
    return tuple(sorted(exps + [0, 0]))
