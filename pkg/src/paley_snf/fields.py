"""Finite fields GF(p^t) and Galois rings GR(p^m, t) in a polynomial basis.

Elements are immutable coefficient tuples, constant term first.  A field
and the Galois rings built over it share the same integer modulus, read
mod p for the field and mod p^m for the ring.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache

from sympy import factorint, isprime

from .errors import InvalidInputError, NotInvertibleError

__all__ = [
    "PrimePowerParams",
    "FiniteField",
    "FieldElement",
    "GaloisRing",
    "GaloisRingElement",
    "find_field",
    "galois_ring",
    "nonzero_squares",
    "teichmuller",
    "valuation",
]


@dataclass(frozen=True)
class PrimePowerParams:
    p: int
    t: int

    def __post_init__(self):
        if self.p < 3 or not isprime(self.p):
            raise InvalidInputError(f"p must be an odd prime, got {self.p}")
        if self.t < 1:
            raise InvalidInputError(f"t must be >= 1, got {self.t}")

    @classmethod
    def from_q(cls, q: int) -> "PrimePowerParams":
        if q < 3:
            raise InvalidInputError(f"q must be an odd prime power, got {q}")
        factors = factorint(q)
        if len(factors) != 1:
            raise InvalidInputError(f"q must be an odd prime power, got {q}")
        ((p, t),) = factors.items()
        return cls(p, t)

    @property
    def q(self) -> int:
        return self.p**self.t

    @property
    def k(self) -> int:
        return (self.q - 1) // 2

    @property
    def mu(self) -> int:
        if self.q % 4 != 1:
            raise InvalidInputError(f"mu is only defined for q = 1 mod 4, got q={self.q}")
        return (self.q - 1) // 4


def paley_params(q: int) -> PrimePowerParams:
    """Validate a Paley order: an odd prime power congruent to 1 mod 4."""
    try:
        params = PrimePowerParams.from_q(q)
    except InvalidInputError:
        params = None
    if params is None or q % 4 != 1:
        raise InvalidInputError("q must be a prime power ≡ 1 (mod 4)")
    return params


# -- polynomial helpers over Z/n, coefficient lists constant term first ------


def _poly_mulmod(a, b, modulus, n):
    t = len(modulus) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] += ai * bj
    # modulus is monic: x^t = -(m_0 + ... + m_{t-1} x^{t-1})
    for d in range(len(prod) - 1, t - 1, -1):
        c = prod[d] % n
        if c:
            for j in range(t):
                prod[d - t + j] -= c * modulus[j]
    out = [c % n for c in prod[:t]]
    out += [0] * (t - len(out))
    return tuple(out)


def _poly_rem(a, b, p):
    """Remainder of a by monic b over F_p (lists, constant term first)."""
    a = list(a)
    db = len(b) - 1
    for d in range(len(a) - 1, db - 1, -1):
        c = a[d] % p
        if c:
            for j in range(db + 1):
                a[d - db + j] -= c * b[j]
    return [c % p for c in a[:db]]


def _monic_polys(p, degree):
    for low in itertools.product(range(p), repeat=degree):
        yield list(low) + [1]


def is_irreducible(poly, p) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    t = len(poly) - 1
    if t <= 1:
        return True
    for d in range(1, t // 2 + 1):
        for divisor in _monic_polys(p, d):
            if not any(_poly_rem(poly, divisor, p)):
                return False
    return True


# -- quotient rings -----------------------------------------------------------


class _Element:
    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs):
        n = ring.order
        coeffs = tuple(int(c) % n for c in coeffs)
        if len(coeffs) != ring.t:
            raise InvalidInputError(f"expected {ring.t} coefficients, got {len(coeffs)}")
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("elements are immutable")

    def _coerce(self, other):
        if isinstance(other, _Element):
            if other.ring != self.ring:
                raise InvalidInputError("operands belong to different rings")
            return other
        if isinstance(other, int):
            return self.ring(other)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring(other)
        if not isinstance(other, _Element):
            return NotImplemented
        return self.ring == other.ring and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ring, self.coeffs))

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return type(self)(self.ring, (a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return type(self)(self.ring, (a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        return -self + other

    def __neg__(self):
        return type(self)(self.ring, (-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, int):
            return type(self)(self.ring, (a * other for a in self.coeffs))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        ring = self.ring
        return type(self)(ring, _poly_mulmod(self.coeffs, other.coeffs, ring.modulus, ring.order))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inv() ** (-e)
        result = self.ring.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_unit(self) -> bool:
        p = self.ring.p
        return any(c % p for c in self.coeffs)

    def inv(self):
        if not self.is_unit():
            raise NotInvertibleError(f"{self!r} is not invertible")
        return self ** (self.ring.unit_group_order - 1)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inv()

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
                coef = "" if (c == 1 and i) else str(c)
                terms.append(coef + mono)
        return " + ".join(reversed(terms)) or "0"


class FieldElement(_Element):
    __slots__ = ()

    @property
    def field(self) -> "FiniteField":
        return self.ring

    def index(self) -> int:
        return element_index(self)


class GaloisRingElement(_Element):
    __slots__ = ()


class _QuotientRing:
    element_type: type = _Element

    def __call__(self, value=0):
        if isinstance(value, int):
            return self.element_type(self, (value,) + (0,) * (self.t - 1))
        return self.element_type(self, value)

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    @property
    def q(self) -> int:
        return self.p**self.t


@dataclass(frozen=True, eq=True)
class FiniteField(_QuotientRing):
    """GF(p^t) as F_p[x]/(modulus); modulus is monic, constant term first."""

    p: int
    t: int
    modulus: tuple

    element_type = FieldElement

    @property
    def order(self) -> int:
        return self.p

    @property
    def unit_group_order(self) -> int:
        return self.q - 1

    @property
    def params(self) -> PrimePowerParams:
        return PrimePowerParams(self.p, self.t)

    def index_element(self, index: int) -> FieldElement:
        if not 0 <= index < self.q:
            raise InvalidInputError(f"index {index} out of range for GF({self.q})")
        digits = []
        for _ in range(self.t):
            index, d = divmod(index, self.p)
            digits.append(d)
        return FieldElement(self, digits)

    def elements(self):
        """All field elements in index order."""
        return [self.index_element(i) for i in range(self.q)]

    def describe(self) -> dict:
        return {"p": self.p, "t": self.t, "modulus": list(self.modulus)}


def element_index(e: FieldElement) -> int:
    p = e.ring.p
    return sum(c * p**i for i, c in enumerate(e.coeffs))


@lru_cache(maxsize=None)
def find_field(p: int, t: int) -> FiniteField:
    """GF(p^t) with the lexicographically smallest monic irreducible modulus.

    Candidates are ordered by their constant-term-first coefficients read as
    a base-p integer, which is exactly the order `_monic_polys` produces.
    """
    if not isprime(p):
        raise InvalidInputError(f"p must be prime, got {p}")
    if t < 1:
        raise InvalidInputError(f"t must be >= 1, got {t}")
    for low in range(p**t):
        coeffs = []
        for _ in range(t):
            low, d = divmod(low, p)
            coeffs.append(d)
        poly = coeffs + [1]
        if is_irreducible(poly, p):
            return FiniteField(p, t, tuple(poly))
    raise AssertionError("no irreducible polynomial found")  # unreachable


@dataclass(frozen=True, eq=True)
class GaloisRing(_QuotientRing):
    """GR(p^m, t) = (Z/p^m)[x]/(modulus), an unramified lift of GF(p^t)."""

    p: int
    m: int
    t: int
    modulus: tuple

    element_type = GaloisRingElement

    @property
    def order(self) -> int:
        return self.p**self.m

    @property
    def unit_group_order(self) -> int:
        return (self.q - 1) * self.q ** (self.m - 1)

    @cached_property
    def residue_field(self) -> FiniteField:
        return FiniteField(self.p, self.t, self.modulus)

    def lift(self, x: FieldElement) -> GaloisRingElement:
        """Coefficient-wise lift of a residue field element."""
        if x.ring != self.residue_field:
            raise InvalidInputError("element is not from this ring's residue field")
        return GaloisRingElement(self, x.coeffs)

    def reduce(self, y: GaloisRingElement) -> FieldElement:
        return FieldElement(self.residue_field, y.coeffs)


def galois_ring(field: FiniteField, m: int) -> GaloisRing:
    if m < 1:
        raise InvalidInputError(f"precision m must be >= 1, got {m}")
    return GaloisRing(field.p, m, field.t, field.modulus)


def nonzero_squares(field: FiniteField) -> set:
    return {y * y for y in field.elements()[1:]}


def teichmuller(ring: GaloisRing, x: FieldElement) -> GaloisRingElement:
    """The unique (q-1)-th root of unity in `ring` reducing to x."""
    if x.is_zero():
        raise InvalidInputError("the Teichmüller lift is only defined on nonzero elements")
    q = ring.q
    y = ring.lift(x)
    # each Frobenius-power step at least doubles the p-adic accuracy
    for _ in range(ring.m):
        y = y**q
    assert y**q == y
    return y


def _int_valuation(c: int, p: int, cap: int) -> int:
    if c == 0:
        return cap
    v = 0
    while c % p == 0 and v < cap:
        c //= p
        v += 1
    return v


def valuation(e: GaloisRingElement) -> int:
    """p-adic valuation, capped at the precision m (m means ">= m")."""
    ring = e.ring
    return min(_int_valuation(c, ring.p, ring.m) for c in e.coeffs)
