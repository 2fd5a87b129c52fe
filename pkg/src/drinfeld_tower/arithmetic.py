"""Ideals of A described by their prime factorization data, and the functions phi, eps, kappa."""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import prod

from .polyalg.uni import UniPoly, factor_univariate


class UnitIdealError(ValueError):
    """The formulas need at least one prime factor."""


@dataclass(frozen=True)
class IdealFactorization:
    """n = p_1^r_1 ... p_s^r_s given as ((deg p_1, r_1), ...), over base q."""

    primes: tuple[tuple[int, int], ...]
    q: int

    def __post_init__(self):
        for d, r in self.primes:
            if d < 1 or r < 1:
                raise ValueError(f"prime degree and multiplicity must be positive, got {d}^{r}")
        if self.q < 2:
            raise ValueError("q must be at least 2")

    @classmethod
    def parse(cls, text: str, q: int) -> "IdealFactorization":
        """From ``d1^r1,d2^r2,...`` (a bare ``d`` means multiplicity 1)."""
        primes = []
        for part in text.split(","):
            part = part.strip()
            if not part:
                continue
            mt = re.fullmatch(r"(\d+)(?:\^(\d+))?", part)
            if mt is None:
                raise ValueError(f"bad ideal component {part!r}; expected d^r")
            primes.append((int(mt.group(1)), int(mt.group(2) or 1)))
        return cls(tuple(primes), q)

    @classmethod
    def prime_power(cls, degree: int, k: int, q: int) -> "IdealFactorization":
        return cls(((degree, k),), q)

    @property
    def s(self) -> int:
        return len(self.primes)

    @property
    def qi(self) -> list[int]:
        return [self.q ** d for d, _ in self.primes]

    @property
    def norm(self) -> int:
        """|n| = prod q_i^r_i."""
        return prod(qi ** r for qi, (_, r) in zip(self.qi, self.primes))

    @property
    def degree(self) -> int:
        return sum(d * r for d, r in self.primes)

    def require_proper(self) -> None:
        if not self.primes:
            raise UnitIdealError("the unit ideal (s = 0) is not supported by the formulas")

    def __str__(self) -> str:
        return ",".join(f"{d}^{r}" for d, r in self.primes) or "(1)"


def phi(n: IdealFactorization) -> int:
    """|(A/n)^*| = prod q_i^(r_i - 1) (q_i - 1)."""
    n.require_proper()
    return prod(qi ** (r - 1) * (qi - 1) for qi, (_, r) in zip(n.qi, n.primes))


def eps(n: IdealFactorization) -> int:
    n.require_proper()
    return prod(qi ** (r - 1) * (qi + 1) for qi, (_, r) in zip(n.qi, n.primes))


def kappa(n: IdealFactorization) -> int:
    n.require_proper()
    return prod(qi ** (r // 2) + qi ** (r - r // 2 - 1) for qi, (_, r) in zip(n.qi, n.primes))


def order_H(n: IdealFactorization) -> int:
    return phi(n) * n.norm


def order_G(n: IdealFactorization) -> int:
    return phi(n) * eps(n) * n.norm


def ideal_from_poly(f: UniPoly) -> IdealFactorization:
    """Factorization data of the ideal (f) of F_q[T] for monic nonconstant f."""
    if f.degree < 1:
        raise UnitIdealError("a constant polynomial generates the unit ideal")
    if f.lc != 1:
        raise ValueError("ideal generators are taken monic")
    merged: dict[tuple[int, ...], tuple[int, int]] = {}
    for g, r in factor_univariate(f):
        merged[g.coeffs] = (g.degree, r)
    return IdealFactorization(tuple(sorted(merged.values())), f.field.order)
