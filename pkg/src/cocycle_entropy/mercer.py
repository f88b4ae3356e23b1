"""The Mercer transform a_n -> a_n + s_n/n and finite-horizon convergence probes."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .additive import AdditiveFunction, values
from .exceptions import DomainError

TELESCOPE_TOL_PER_1E4 = 1e-12


class RealSequence:
    """A real sequence indexed from 1.

    ``gen(n)`` gives one term. ``batch(N)``, when present, returns the first
    ``N`` terms in one pass and must agree with ``gen``.
    """

    def __init__(self, gen: Callable[[int], float], name: str = "a",
                 batch: Optional[Callable[[int], list]] = None):
        self.gen = gen
        self.name = name
        self._batch = batch

    def __call__(self, n: int) -> float:
        if n < 1:
            raise DomainError(f"sequences are indexed from 1, got {n}")
        return self.gen(n)

    def take(self, N: int) -> list[float]:
        if self._batch is not None:
            return self._batch(N)
        return [self.gen(n) for n in range(1, N + 1)]

    def __repr__(self):
        return f"RealSequence({self.name})"


def linear_combination(alpha: float, a: RealSequence, beta: float, b: RealSequence) -> RealSequence:
    return RealSequence(
        lambda n: alpha * a(n) + beta * b(n),
        f"{alpha}*{a.name}+{beta}*{b.name}",
        batch=lambda N: [alpha * x + beta * y for x, y in zip(a.take(N), b.take(N))],
    )


def exact_partial_sums(terms) -> list[Fraction]:
    """Running sums of float terms, kept exact as rationals."""
    total = Fraction(0)
    out = []
    for x in terms:
        total += Fraction(x)
        out.append(total)
    return out


def partial_sums(terms) -> list[float]:
    """Running sums, each correctly rounded from the exact value."""
    return [float(s) for s in exact_partial_sums(terms)]


def _transform_terms(terms) -> list[float]:
    # a_n + s_n/n formed exactly and rounded once, so a constant c maps to 2c exactly
    return [float(Fraction(x) + s / n) for n, (x, s) in enumerate(zip(terms, exact_partial_sums(terms)), start=1)]


def mercer_transform(a: RealSequence) -> RealSequence:
    """``n -> a_n + s_n / n`` with ``s_n = a_1 + ... + a_n``.

    Single terms cost O(n); ``take`` reuses one running sum. Each value is
    the correctly rounded transform of the float terms.
    """

    def gen(n):
        return _transform_terms(a.take(n))[-1]

    def batch(N):
        return _transform_terms(a.take(N))

    return RealSequence(gen, f"mercer({a.name})", batch)


@dataclass(frozen=True)
class ConvergenceProbe:
    N: int
    estimated_limit: float
    tail_sup_deviation: float

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "estimated_limit": self.estimated_limit,
            "tail_sup_deviation": self.tail_sup_deviation,
        }


def probe_terms(terms: list, N: int) -> ConvergenceProbe:
    if N < 20:
        raise DomainError(f"probe needs N >= 20, got {N}")
    if len(terms) < N:
        raise DomainError(f"probe needs {N} terms, got {len(terms)}")
    tail = terms[N - math.ceil(N / 10):N]
    limit = math.fsum(tail) / len(tail)
    dev = max(abs(x - limit) for x in terms[math.ceil(N / 2) - 1:N])
    return ConvergenceProbe(N, limit, dev)


def probe(x: RealSequence, N: int) -> ConvergenceProbe:
    """Mean of the last tenth of ``x_1..x_N`` and the sup deviation from it over ``[N/2, N]``.

    This reports numbers; it does not decide convergence.
    """
    return probe_terms(x.take(N), N)


def constant(c: float) -> RealSequence:
    return RealSequence(lambda n: c, f"const({c})")


HARMONIC = RealSequence(lambda n: 1 / n, "1/n")
INV_SQRT = RealSequence(lambda n: 1 / math.sqrt(n), "1/sqrt(n)")
ALTERNATING = RealSequence(lambda n: -1.0 if n % 2 else 1.0, "(-1)^n")


@dataclass(frozen=True)
class MercerScan:
    """Rows ``(n, a_n, s_n/n, a_n + s_n/n)`` and the probe of the last column."""

    rows: list
    probe: ConvergenceProbe


def delta_mercer_scan(l: AdditiveFunction, N: int) -> MercerScan:
    """Mercer transform of ``a_n = l(n+1) - l(n)`` for ``n = 1..N``.

    The partial sums telescope to ``s_n = l(n+1)``; a drift beyond the
    rounding budget raises ``ArithmeticError``.
    """
    if N < 20:
        raise DomainError(f"probe needs N >= 20, got {N}")
    v = values(l, N + 1)
    a = [v[n + 1] - v[n] for n in range(1, N + 1)]
    s = partial_sums(a)
    budget = TELESCOPE_TOL_PER_1E4 * max(1.0, N / 1e4)
    worst = max(abs(s[n - 1] - v[n + 1]) for n in range(1, N + 1))
    if worst > budget:
        raise ArithmeticError(f"partial sums drifted from l(n+1) by {worst:.3g} > {budget:.3g}")
    t = _transform_terms(a)
    rows = [(n, a[n - 1], s[n - 1] / n, t[n - 1]) for n in range(1, N + 1)]
    return MercerScan(rows, probe_terms([r[3] for r in rows], N))


def delta_mercer(l: AdditiveFunction, N: int) -> ConvergenceProbe:
    return delta_mercer_scan(l, N).probe
