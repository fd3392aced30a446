"""Finite(ly generated) abelian groups and the closed-form Paley predictions.

Groups are stored canonically as per-prime sorted elementary-divisor
exponents; the invariant-factor chain is derived on demand.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from math import prod

from sympy import factorint, isprime

from .errors import InvalidInputError
from .fields import paley_params
from .transfer import f_closed_form

__all__ = [
    "AbelianGroup",
    "GroupPrediction",
    "Verdict",
    "compare",
    "f_closed_form",
    "group_order",
    "predict",
    "predict_critical_group",
    "predict_smith_group",
    "to_invariant_factors",
]


@dataclass(frozen=True)
class AbelianGroup:
    """Z^free_rank ⊕ (⊕ over primes l of ⊕ Z/l^e).

    ``elementary`` is a tuple of ``(prime, exponents)`` pairs sorted by prime,
    with each exponent tuple sorted ascending and free of zeros.
    """

    elementary: tuple = ()
    free_rank: int = 0

    @classmethod
    def from_exponents(cls, exponents: dict, free_rank: int = 0) -> "AbelianGroup":
        """Build from ``{prime: iterable of exponents}``; zero exponents are dropped."""
        parts = []
        for ell in sorted(exponents):
            if not isprime(ell):
                raise InvalidInputError(f"{ell} is not prime")
            exps = tuple(sorted(e for e in exponents[ell] if e > 0))
            if any(e < 0 for e in exponents[ell]):
                raise InvalidInputError("exponents must be non-negative")
            if exps:
                parts.append((ell, exps))
        return cls(tuple(parts), free_rank)

    @classmethod
    def from_invariant_factors(cls, factors, free_rank: int = 0) -> "AbelianGroup":
        """Build from any list of cyclic orders (a chain is not required)."""
        exponents: dict[int, list[int]] = {}
        for d in factors:
            if d < 1:
                raise InvalidInputError(f"cyclic orders must be positive, got {d}")
            for ell, e in factorint(d).items():
                exponents.setdefault(ell, []).append(e)
        return cls.from_exponents(exponents, free_rank)

    @property
    def primes(self) -> tuple:
        return tuple(ell for ell, _ in self.elementary)

    def exponents(self, ell: int) -> tuple:
        for prime, exps in self.elementary:
            if prime == ell:
                return exps
        return ()

    def part(self, ell: int) -> "AbelianGroup":
        """The Sylow ell-subgroup."""
        return AbelianGroup.from_exponents({ell: self.exponents(ell)})

    def complement(self, ell: int) -> "AbelianGroup":
        """The torsion part prime to ell."""
        return AbelianGroup(tuple((pr, ex) for pr, ex in self.elementary if pr != ell))

    def torsion(self) -> "AbelianGroup":
        return AbelianGroup(self.elementary)

    @property
    def invariant_factors(self) -> tuple:
        return to_invariant_factors(self)

    @property
    def order(self) -> int:
        return group_order(self)

    def to_json(self) -> dict:
        return {
            "free_rank": self.free_rank,
            "elementary_divisors": {str(ell): list(exps) for ell, exps in self.elementary},
            "invariant_factors": list(self.invariant_factors),
        }

    @classmethod
    def from_json(cls, data: dict) -> "AbelianGroup":
        return cls.from_exponents(
            {int(ell): exps for ell, exps in data["elementary_divisors"].items()},
            data.get("free_rank", 0),
        )

    def format_elementary(self) -> str:
        terms = []
        for ell, exps in self.elementary:
            for e, mult in sorted(Counter(exps).items()):
                terms.append(_cyclic(ell**e, mult))
        return _join(terms, self.free_rank)

    def format_invariant(self) -> str:
        chain = self.invariant_factors
        terms = [_cyclic(d, mult) for d, mult in _runs(chain)]
        return _join(terms, self.free_rank)

    def __str__(self):
        return self.format_elementary()


def _runs(seq):
    out = []
    for d in seq:
        if out and out[-1][0] == d:
            out[-1][1] += 1
        else:
            out.append([d, 1])
    return [tuple(r) for r in out]


def _cyclic(n: int, mult: int) -> str:
    return f"Z/{n}" if mult == 1 else f"(Z/{n})^{mult}"


def _join(terms, free_rank):
    if free_rank:
        terms = [("Z" if free_rank == 1 else f"Z^{free_rank}")] + terms
    return " + ".join(terms) if terms else "0"


def to_invariant_factors(g: AbelianGroup) -> tuple:
    """Invariant factors d_1 | d_2 | ... | d_r (all > 1), ascending.

    Exponent lists are aligned largest-with-largest across primes.
    """
    width = max((len(exps) for _, exps in g.elementary), default=0)
    chain = [1] * width
    for ell, exps in g.elementary:
        for pos, e in enumerate(reversed(exps)):
            chain[width - 1 - pos] *= ell**e
    return tuple(chain)


def group_order(g: AbelianGroup) -> int:
    if g.free_rank:
        raise InvalidInputError("group is infinite (positive free rank)")
    return prod(ell ** sum(exps) for ell, exps in g.elementary)


@dataclass(frozen=True)
class Verdict:
    equal: bool
    prime: int | None = None
    predicted: tuple = ()
    computed: tuple = ()
    detail: str = ""

    def to_json(self) -> dict:
        return {
            "equal": self.equal,
            "prime": self.prime,
            "predicted": list(self.predicted),
            "computed": list(self.computed),
            "detail": self.detail,
        }


def compare(predicted: AbelianGroup, computed: AbelianGroup) -> Verdict:
    """Compare per-prime elementary-divisor multisets; report the first difference."""
    if predicted.free_rank != computed.free_rank:
        return Verdict(
            False,
            detail=f"free rank {predicted.free_rank} != {computed.free_rank}",
        )
    for ell in sorted(set(predicted.primes) | set(computed.primes)):
        a, b = predicted.exponents(ell), computed.exponents(ell)
        if a != b:
            diff = Counter(a)
            diff.subtract(Counter(b))
            detail = ", ".join(
                f"exponent {e}: {n:+d}" for e, n in sorted(diff.items()) if n
            )
            return Verdict(False, ell, a, b, f"prime {ell}: predicted-minus-computed {detail}")
    return Verdict(True)


# -- closed-form predictions -------------------------------------------------


def predict_smith_group(q: int) -> AbelianGroup:
    """Z/2mu ⊕ (Z/mu)^(2mu) with mu = (q-1)/4."""
    mu = paley_params(q).mu
    return AbelianGroup.from_invariant_factors([mu] * (2 * mu) + [2 * mu])


def predict_critical_group(q: int) -> AbelianGroup:
    params = paley_params(q)
    p, t, mu = params.p, params.t, params.mu
    return _assemble_critical(p, t, mu)[0]


def _assemble_critical(p, t, mu):
    p_exps = []
    factors = []
    for lam in range(1, t):
        n = f_closed_form(p, t, lam)
        p_exps += [lam] * n
        factors.append((p**lam, n, f"f({t},{lam}) closed-walk count"))
    top = ((p + 1) // 2) ** t - 2
    p_exps += [t] * top
    factors.append((p**t, top, f"((p+1)/2)^{t} - 2"))
    prime_to_p = AbelianGroup.from_invariant_factors([mu] * (2 * mu))
    if mu > 1:
        factors.insert(0, (mu, 2 * mu, "p'-part (Z/mu)^(2mu)"))
    exponents = {ell: list(exps) for ell, exps in prime_to_p.elementary}
    exponents[p] = p_exps
    return AbelianGroup.from_exponents(exponents), factors


@dataclass(frozen=True)
class GroupPrediction:
    q: int
    smith: AbelianGroup
    critical: AbelianGroup
    smith_factors: tuple = field(default=())
    critical_factors: tuple = field(default=())

    @staticmethod
    def _structured(factors) -> str:
        return " + ".join(_cyclic(n, m) for n, m, _ in factors if m and n > 1) or "0"

    def structured_smith(self) -> str:
        return self._structured(self.smith_factors)

    def structured_critical(self) -> str:
        """The critical group written the way it is assembled, e.g. (Z/156)^312 + ..."""
        return self._structured(self.critical_factors)


def predict(q: int) -> GroupPrediction:
    params = paley_params(q)
    mu = params.mu
    smith = predict_smith_group(q)
    smith_factors = ((2 * mu, 1, "Z/2mu"), (mu, 2 * mu, "(Z/mu)^(2mu)"))
    critical, critical_factors = _assemble_critical(params.p, params.t, mu)
    return GroupPrediction(q, smith, critical, smith_factors, tuple(critical_factors))
