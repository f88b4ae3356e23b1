"""Completely additive arithmetic functions and finite-scale log diagnostics.

A completely additive ``l`` satisfies ``l(ab) = l(a) + l(b)`` and is fixed by
its values on primes. If in addition ``l(n+1) - l(n) -> 0`` then ``l`` is a
multiple of ``ln``; at finite scale we can only report how close the data
look to that, which is what :func:`erdos_diagnostic` does.
"""

from __future__ import annotations

import json
import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping

from .exceptions import BoundError, DomainError

DEFAULT_BOUND = 10**7


class _PrimeTable:
    """Primes up to sqrt(bound), sieved once on first use."""

    def __init__(self):
        self._primes: list[int] = []
        self._limit = 1
        self._lock = threading.Lock()

    def primes_upto(self, limit: int) -> list[int]:
        if limit > self._limit:
            with self._lock:
                if limit > self._limit:
                    sieve = bytearray([1]) * (limit + 1)
                    sieve[0:2] = b"\x00\x00"
                    for i in range(2, math.isqrt(limit) + 1):
                        if sieve[i]:
                            sieve[i * i :: i] = bytes(len(range(i * i, limit + 1, i)))
                    self._primes = [i for i in range(limit + 1) if sieve[i]]
                    self._limit = limit
        return self._primes


_PRIMES = _PrimeTable()


def factorize(n: int, bound: int = DEFAULT_BOUND) -> list[tuple[int, int]]:
    """Prime factorization of ``n`` as ``[(p, e), ...]`` by trial division."""
    if n < 1:
        raise DomainError(f"factorize needs n >= 1, got {n}")
    if n > bound:
        raise BoundError(f"{n} exceeds the factorization bound {bound}")
    primes = _PRIMES.primes_upto(math.isqrt(bound))
    out = []
    for p in primes:
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
    if n > 1:
        out.append((n, 1))
    return out


@dataclass(frozen=True)
class AdditiveFunction:
    """A completely additive function given by its value at each prime."""

    prime_value: Callable[[int], float]
    name: str
    bound: int = field(default=DEFAULT_BOUND, compare=False)

    def __call__(self, n: int) -> float:
        return eval_additive(self, n)

    def at_rational(self, q) -> float:
        """``l(p/q) = l(p) - l(q)`` on positive rationals."""
        q = Fraction(q)
        if q <= 0:
            raise DomainError(f"additive functions live on positive rationals, got {q}")
        return eval_additive(self, q.numerator) - eval_additive(self, q.denominator)


def from_prime_map(values: Mapping[int, float], name: str = "custom") -> AdditiveFunction:
    """Additive function from ``{prime: value}``; unlisted primes map to 0."""
    table = {}
    for p, v in values.items():
        p = int(p)
        if p < 2 or any(p % d == 0 for d in range(2, math.isqrt(p) + 1)):
            raise DomainError(f"{p} is not a prime")
        table[p] = float(v)
    return AdditiveFunction(lambda p: table.get(p, 0.0), name)


LOG2 = AdditiveFunction(math.log2, "log2")
ZERO = AdditiveFunction(lambda p: 0.0, "zero")
NU2 = AdditiveFunction(lambda p: 1.0 if p == 2 else 0.0, "nu2")

BUILTINS = {f.name: f for f in (LOG2, ZERO, NU2)}


def parse_additive(spec: str) -> AdditiveFunction:
    """A built-in name (``log2``, ``zero``, ``nu2``) or a JSON prime map."""
    if spec in BUILTINS:
        return BUILTINS[spec]
    try:
        values = json.loads(spec)
    except json.JSONDecodeError as exc:
        raise ValueError(f"unknown additive function {spec!r}") from exc
    if not isinstance(values, dict):
        raise ValueError("additive function map must be a JSON object")
    try:
        return from_prime_map({int(k): v for k, v in values.items()}, name=spec)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"bad prime map {spec!r}: {exc}") from exc


def eval_additive(l: AdditiveFunction, n: int) -> float:
    """Sum of ``e * l(p)`` over prime powers ``p**e`` exactly dividing ``n``."""
    if n < 1:
        raise DomainError(f"additive functions are evaluated at n >= 1, got {n}")
    return sum(e * l.prime_value(p) for p, e in factorize(n, l.bound))


def values(l: AdditiveFunction, n_max: int) -> list[float]:
    """``[l(0) placeholder, l(1), ..., l(n_max)]``; index 0 is NaN."""
    return [math.nan] + [eval_additive(l, n) for n in range(1, n_max + 1)]


def delta_sequence(l: AdditiveFunction, N: int) -> list[float]:
    """``l(n+1) - l(n)`` for ``n = 1 .. N-1``."""
    if N < 2:
        raise DomainError(f"delta sequence needs N >= 2, got {N}")
    v = values(l, N)
    return [v[n + 1] - v[n] for n in range(1, N)]


@dataclass(frozen=True)
class ErdosDiagnostic:
    N: int
    tail_sup: float
    fitted_c: float
    max_fit_residual: float
    classification: str

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "tail_sup": self.tail_sup,
            "fitted_c": self.fitted_c,
            "max_fit_residual": self.max_fit_residual,
            "classification": self.classification,
        }


def log_like_threshold(N: int) -> float:
    return 10 * math.log1p(1 / (N / 2)) / math.log(2)


def erdos_diagnostic(l: AdditiveFunction, N: int, fit_tol: float = 1e-6) -> ErdosDiagnostic:
    """Tail oscillation and least-squares fit of ``l(n) ~ c ln n`` up to ``N``.

    ``tail_sup`` is the largest ``|l(n+1) - l(n)|`` for ``n`` in
    ``[ceil(N/2), N-1]``; ``fitted_c`` is the through-origin least-squares
    slope over ``n`` in ``[2, N]``. The classification is evidence at scale
    ``N`` only.
    """
    if N < 16:
        raise DomainError(f"diagnostic needs N >= 16, got {N}")
    v = values(l, N)
    tail_sup = max(abs(v[n + 1] - v[n]) for n in range(-(-N // 2), N))
    logs = [math.log(n) for n in range(2, N + 1)]
    ls = v[2:]
    c = math.fsum(a * b for a, b in zip(ls, logs)) / math.fsum(x * x for x in logs)
    fit = max(abs(a - c * b) for a, b in zip(ls, logs))
    if tail_sup < log_like_threshold(N) and fit < fit_tol:
        label = f"log-like at scale {N}"
    else:
        label = f"not log-like at scale {N}"
    return ErdosDiagnostic(N, tail_sup, c, fit, label)


def bridge_identity_residual(l: AdditiveFunction, n: int) -> float:
    """Both sides of the identity linking the delta sequence to ``g = a*l(a)``.

    Left: ``l(n+1) - l(n) + l(n+1)/n``. Right: ``g((n+1)/n) - g(1) - g(1/n)``
    with ``l`` extended to rationals. Returns left minus right.
    """
    if n < 1:
        raise DomainError(f"bridge identity needs n >= 1, got {n}")

    def g(q: Fraction) -> float:
        return float(q) * l.at_rational(q)

    left = l(n + 1) - l(n) + l(n + 1) / n
    right = g(Fraction(n + 1, n)) - g(Fraction(1)) - g(Fraction(1, n))
    return left - right
