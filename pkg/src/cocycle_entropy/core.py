"""Shannon entropy, the map u(x) = x log2(1/x), and the homogeneous extension.

Weight vectors carry exact rationals; entropy values are floats in bits.
A homogeneous functional on weights and a functional on probability vectors
determine each other through ``extend`` and ``restrict``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational, Real
from typing import Callable, Sequence

from .exceptions import DomainError
from .rationals import exact_sum, parse_rational

ProbFunctional = Callable[[Sequence], float]
HatFunctional = Callable[[Sequence[Fraction]], float]

EXACT_SUM_TOL = 1e-12
FLOAT_SUM_TOL = 1e-9


def log2(x) -> float:
    """Base-2 logarithm that stays accurate for Fractions with huge terms."""
    if isinstance(x, Fraction):
        return math.log2(x.numerator) - math.log2(x.denominator)
    return math.log2(x)


def u(x) -> float:
    """Return x*log2(1/x), with u(0) = 0.

    >>> u(Fraction(1, 2))
    0.5
    """
    if x < 0:
        raise DomainError(f"u is defined for x >= 0, got {x}")
    if x == 0:
        return 0.0
    return -float(x) * log2(x)


def as_weights(entries) -> tuple[Fraction, ...]:
    """Validate and convert a weight vector to a tuple of Fractions.

    Entries must be exact rationals (ints, Fractions or ``"p/q"`` strings),
    nonnegative, at least one of them, with a positive sum.
    """
    out = []
    for e in entries:
        if isinstance(e, float):
            raise TypeError(f"weights must be exact rationals, got float {e!r}")
        w = parse_rational(e)
        if w < 0:
            raise DomainError(f"negative weight {w}")
        out.append(w)
    if not out:
        raise DomainError("weight vector must have at least one entry")
    if exact_sum(out) <= 0:
        raise DomainError("weight vector must have a positive sum")
    return tuple(out)


def as_probabilities(entries) -> tuple:
    """Validate a probability vector; exact entries stay exact.

    The sum must be within 1e-12 of 1 for exact input and 1e-9 once any
    entry is a float.
    """
    p = tuple(entries)
    if not p:
        raise DomainError("probability vector must have at least one entry")
    exact = True
    for x in p:
        t = type(x)
        if t is not Fraction and t is not int:
            if not isinstance(x, Real) or t is bool:
                raise TypeError(f"not a real number: {x!r}")
            exact = exact and isinstance(x, Rational)
        if x < 0:
            raise DomainError(f"negative probability {x}")
    if exact:
        total = exact_sum(p)
        tol = EXACT_SUM_TOL
    else:
        total = math.fsum(float(x) for x in p)
        tol = FLOAT_SUM_TOL
    if abs(total - 1) > tol:
        raise DomainError(f"probabilities sum to {float(total)!r}, not 1")
    return p


def shannon_entropy(p: Sequence) -> float:
    """Shannon entropy in bits; zero entries contribute nothing."""
    p = as_probabilities(p)
    return math.fsum(u(x) for x in p)


def hat_entropy(w: Sequence) -> float:
    """Homogeneous Shannon entropy s*H(w/s) of a weight vector, s = sum(w)."""
    w = as_weights(w)
    s = exact_sum(w)
    if s == 1:
        return shannon_entropy(w)
    return float(s) * shannon_entropy([x / s for x in w])


def hat_entropy_potential_form(w: Sequence) -> float:
    """The same quantity written as sum(u(w_i)) - u(sum(w))."""
    w = as_weights(w)
    return math.fsum(u(x) for x in w) - u(exact_sum(w))


def extend(h: ProbFunctional) -> HatFunctional:
    """Lift a functional on probability vectors to a homogeneous one on weights.

    On a vector that already sums to 1 the oracle is called unchanged, so
    ``restrict(extend(h))`` agrees with ``h`` bit for bit.
    """

    def hat(w):
        w = as_weights(w)
        s = exact_sum(w)
        if s == 1:
            return h(w)
        return float(s) * h(tuple(x / s for x in w))

    hat.__name__ = f"hat_{getattr(h, '__name__', 'h')}"
    return hat


def restrict(hat: HatFunctional) -> ProbFunctional:
    """Restrict a functional on weight vectors to the probability simplex."""

    def h(p):
        return hat(as_probabilities(p))

    h.__name__ = f"restricted_{getattr(hat, '__name__', 'hat')}"
    return h


def renyi_entropy(p: Sequence, alpha: float) -> float:
    """Renyi entropy of order alpha in bits (alpha > 0, alpha != 1)."""
    if alpha <= 0 or alpha == 1:
        raise DomainError(f"Renyi order must be positive and != 1, got {alpha}")
    p = as_probabilities(p)
    power_sum = math.fsum(float(x) ** alpha for x in p if x > 0)
    return math.log2(power_sum) / (1 - alpha)


def tsallis_entropy(p: Sequence, q: float) -> float:
    """Tsallis entropy (1 - sum p_i^q) / (q - 1)."""
    if q == 1:
        raise DomainError("Tsallis index q = 1 is Shannon in nats; use shannon_entropy")
    p = as_probabilities(p)
    return (1 - math.fsum(float(x) ** q for x in p if x > 0)) / (q - 1)
