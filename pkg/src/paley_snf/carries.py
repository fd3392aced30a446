"""Base-p digit sums and the carries of adding (q-1)/2 modulo q-1."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .errors import InvalidInputError
from .fields import PrimePowerParams

__all__ = [
    "CarryProfile",
    "carries_add_mod",
    "carry_count",
    "carry_profile",
    "digit_sum",
]


def _params(q: int) -> PrimePowerParams:
    return PrimePowerParams.from_q(q)


def _digits(x: int, p: int, t: int) -> list:
    out = []
    for _ in range(t):
        x, d = divmod(x, p)
        out.append(d)
    return out


def digit_sum(x: int, q: int) -> int:
    """Base-p digit sum of x mod (q-1); the zero residue has digit sum 0."""
    params = _params(q)
    return sum(_digits(x % (q - 1), params.p, params.t))


def _check_index(i: int, q: int) -> None:
    k = (q - 1) // 2
    if not 1 <= i <= q - 2 or i == k:
        raise InvalidInputError(f"index must lie in [1, q-2] minus {{k}}, got i={i}, q={q}")


def carry_count(i: int, q: int) -> int:
    """c(i) = (s(i) + t(p-1)/2 - s(i+k)) / (p-1)."""
    _check_index(i, q)
    params = _params(q)
    p, t, k = params.p, params.t, params.k
    num = digit_sum(i, q) + t * (p - 1) // 2 - digit_sum(i + k, q)
    c, rem = divmod(num, p - 1)
    assert rem == 0
    return c


def carries_add_mod(a: int, q: int) -> tuple:
    """Cyclic carry sequence (c_0, ..., c_{t-1}) for a + (q-1)/2 mod q-1."""
    if a % (q - 1) == 0 or a == (q - 1) // 2:
        raise InvalidInputError(
            f"a={a} is degenerate: the carry sequence is forced or ambiguous"
        )
    _check_index(a, q)
    params = _params(q)
    p, t = params.p, params.t
    half = (p - 1) // 2
    digits = _digits(a, p, t)
    b_digits = _digits((a + params.k) % (q - 1), p, t)
    closing = []
    for c0 in (0, 1):
        c = [c0]
        ok = True
        for i in range(t):
            nxt, b_i = divmod(digits[i] + half + c[i], p)
            if b_i != b_digits[i]:
                ok = False
                break
            c.append(nxt)
        if ok and c[t] == c[0]:
            closing.append(tuple(c[:t]))
    if len(closing) != 1:
        raise AssertionError(f"expected a unique carry sequence for a={a}, got {closing}")
    return closing[0]


@dataclass(frozen=True)
class CarryProfile:
    """counts[lam] = #{i in [1, q-2] minus {k} : c(i) = lam}."""

    q: int
    t: int
    counts: tuple

    def as_dict(self) -> dict:
        return dict(enumerate(self.counts))

    def is_palindrome(self) -> bool:
        return self.counts == self.counts[::-1]


def carry_profile(q: int) -> CarryProfile:
    params = _params(q)
    tally = Counter(carry_count(i, q) for i in range(1, q - 1) if i != params.k)
    return CarryProfile(q, params.t, tuple(tally.get(lam, 0) for lam in range(params.t + 1)))
