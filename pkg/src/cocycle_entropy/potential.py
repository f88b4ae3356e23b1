"""Potentials of cocycle solutions and the functional equations they obey.

A potential ``g`` with ``g(1) = 0`` represents a symmetric cocycle solution
as ``hat(w) = sum(g(w_i)) - g(sum(w))``. For Shannon entropy ``g`` is ``u``.
The defect ``D(a, b) = g(ab) - a*g(b) - b*g(a)`` measures how far ``g`` is
from a derivation; homogeneity of the induced ``hat`` is equivalent to ``D``
being additive in each slot.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .core import HatFunctional, as_weights, u
from .exceptions import DomainError
from .rationals import parse_rational

NORMALIZATION_TOL = 1e-12


@dataclass(frozen=True)
class Potential:
    """A function on positive rationals normalized by ``g(1) = 0``."""

    fn: Callable[[Fraction], float]
    name: str = "g"
    check: bool = field(default=True, compare=False)

    def __post_init__(self):
        if self.check and abs(self.fn(Fraction(1))) > NORMALIZATION_TOL:
            raise DomainError(f"potential {self.name} is not normalized: g(1) = {self.fn(Fraction(1))}")

    def __call__(self, x):
        return self.fn(Fraction(x))


@dataclass(frozen=True)
class Defect:
    """``D(a, b) = g(ab) - a*g(b) - b*g(a)`` for a potential ``g``."""

    g: Potential

    def __call__(self, a, b):
        a, b = Fraction(a), Fraction(b)
        g = self.g
        return g(a * b) - a * g(b) - b * g(a)


SHANNON_POTENTIAL = Potential(u, "u")


def scaled_shannon_potential(c) -> Potential:
    c = Fraction(c)
    return Potential(lambda x: float(c) * u(x), f"{c}*u")


def defect_of(g: Potential) -> Defect:
    return Defect(g)


def hat_from_potential(g: Potential, w: Sequence) -> float:
    """``g(w_1) + ... + g(w_n) - g(sum(w))``."""
    w = as_weights(w)
    return math.fsum([g(x) for x in w] + [-g(sum(w))])


def hat_of(g: Potential) -> HatFunctional:
    """The cocycle solution induced by ``g``, as a one-argument functional."""

    def hat(w):
        return hat_from_potential(g, w)

    hat.__name__ = f"hat_from_{g.name}"
    return hat


class PotentialRecovery:
    """Recover the potential of a homogeneous cocycle solution.

    Integers climb the ladder ``g(n+1) = g(n) - hat(n, 1)``, and a rational
    ``p/q`` in lowest terms follows from ``hat(p/q, ..., p/q) = q*g(p/q) - g(p)``
    with ``q`` equal entries. Ladder values are memoized per instance.
    """

    def __init__(self, hat: HatFunctional):
        self.hat = hat
        self._ladder = [0.0, 0.0]  # index n holds g(n); g(0) is unused

    def integer(self, n: int) -> float:
        if n < 1:
            raise DomainError(f"ladder is defined for n >= 1, got {n}")
        while len(self._ladder) <= n:
            k = len(self._ladder) - 1
            self._ladder.append(self._ladder[k] - self.hat((Fraction(k), Fraction(1))))
        return self._ladder[n]

    def __call__(self, q) -> float:
        q = parse_rational(q) if not isinstance(q, Fraction) else q
        if q <= 0:
            raise DomainError(f"potential recovery needs q > 0, got {q}")
        p, d = q.numerator, q.denominator
        if d == 1:
            return self.integer(p)
        return (self.hat((q,) * d) + self.integer(p)) / d

    def as_potential(self, name: str = "recovered") -> Potential:
        return Potential(self, name)


def recover_potential(hat: HatFunctional, q) -> float:
    """``g(q)`` for the potential of ``hat``, normalized by ``g(1) = 0``."""
    return PotentialRecovery(hat)(q)


def homogeneity_residual(g: Potential, a, b1, b2) -> float:
    """``[g(a(b1+b2)) - g(a b1) - g(a b2)] - a [g(b1+b2) - g(b1) - g(b2)]``."""
    a, b1, b2 = Fraction(a), Fraction(b1), Fraction(b2)
    if min(a, b1, b2) <= 0:
        raise DomainError("homogeneity probes need positive arguments")
    scaled = g(a * (b1 + b2)) - g(a * b1) - g(a * b2)
    base = g(b1 + b2) - g(b1) - g(b2)
    return scaled - a * base


def bilinearity_residuals(d: Defect, samples: Iterable[tuple]) -> list:
    """``D(a, b1+b2) - D(a, b1) - D(a, b2)`` for each sample ``(a, b1, b2)``.

    Only the second slot is probed; the first follows from symmetry of ``D``,
    which holds by construction for defects built from a potential.
    """
    out = []
    for a, b1, b2 in samples:
        a, b1, b2 = Fraction(a), Fraction(b1), Fraction(b2)
        if min(a, b1, b2) <= 0:
            raise DomainError("bilinearity probes need positive arguments")
        out.append(d(a, b1 + b2) - d(a, b1) - d(a, b2))
    return out


def rational_rule_residual(g: Potential, a, b) -> float:
    """``g(ab) - a*g(b) - b*g(a)``; zero when ``g`` is a derivation on Q+."""
    a, b = Fraction(a), Fraction(b)
    if a <= 0 or b <= 0:
        raise DomainError("rational rule probes need positive arguments")
    return Defect(g)(a, b)


def slope_function(g: Potential, a) -> float:
    """``l(a) = g(a) / a``, so that ``g(a) = a*l(a)``."""
    a = Fraction(a)
    if a <= 0:
        raise DomainError(f"slope function needs a > 0, got {a}")
    return g(a) / a


def rational_grid(max_term: int) -> list[Fraction]:
    """Distinct positive rationals p/q with 1 <= p, q <= max_term, ascending."""
    return sorted({Fraction(p, q) for p in range(1, max_term + 1) for q in range(1, max_term + 1)})
