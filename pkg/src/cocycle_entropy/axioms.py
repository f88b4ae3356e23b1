"""Check candidate entropies against the five-condition characterization.

A candidate is a functional on probability vectors; its homogeneous
extension is what gets tested for homogeneity, symmetry, the 2-cocycle
equation, a finite continuity proxy and the normalization ``hat(1, 1) = 2``.
Only Shannon entropy should pass all five.

Sampling is seeded per axiom, so reports are reproducible and the axioms can
be evaluated in any order or in parallel.
"""

from __future__ import annotations

import json
import math
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import partial
from typing import Callable, Optional

from .core import (
    ProbFunctional,
    extend,
    hat_entropy_potential_form,
    renyi_entropy,
    shannon_entropy,
    tsallis_entropy,
)
from .rationals import format_rational, parse_rational
from .tree import cocycle_residual

AXIOMS = ("homogeneous", "symmetric", "cocycle", "continuous-proxy", "normalized")

DEFAULT_SEED = 3405691582
DEFAULT_TOLERANCES = {
    "homogeneous": 1e-6,
    "symmetric": 1e-6,
    "cocycle": 1e-6,
    "continuous-proxy": 1e-3,
    "normalized": 1e-6,
}

# Evaluated before the random draws so that the textbook counterexamples
# always appear in the sample set.
COCYCLE_ANCHORS = (
    ((Fraction(1, 4), Fraction(1, 4)), (Fraction(1, 2),)),
    ((Fraction(1), Fraction(1)), (Fraction(2),)),
    ((Fraction(1), Fraction(1)), (Fraction(1), Fraction(1))),
)
CONCLUSION_ANCHORS = (
    (Fraction(1, 2), Fraction(1, 4), Fraction(1, 4)),
    (Fraction(1), Fraction(1)),
)


@dataclass(frozen=True)
class Candidate:
    name: str
    h: ProbFunctional

    @property
    def hat(self):
        return extend(self.h)


def shannon() -> Candidate:
    return Candidate("shannon", shannon_entropy)


def renyi(alpha: float) -> Candidate:
    return Candidate(f"renyi(alpha={alpha:g})", partial(renyi_entropy, alpha=alpha))


def tsallis(q: float) -> Candidate:
    return Candidate(f"tsallis(q={q:g})", partial(tsallis_entropy, q=q))


def scaled_shannon(factor: float = 2) -> Candidate:
    def h(p):
        return factor * shannon_entropy(p)

    return Candidate(f"scaled-shannon(factor={factor:g})", h)


def builtin_candidates() -> list[Candidate]:
    return [shannon(), renyi(0.5), renyi(2), tsallis(2), scaled_shannon(2)]


@dataclass
class SuiteConfig:
    seed: int = DEFAULT_SEED
    samples: int = 500
    max_len: int = 8
    max_term: int = 100
    max_groups: int = 8
    continuity_lengths: tuple = (2, 3, 4, 5, 6)
    continuity_samples: int = 200
    delta: Fraction = Fraction(1, 10**6)
    tolerances: dict = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))
    workers: int = 1

    def rng(self, stream: str) -> random.Random:
        return random.Random(f"{self.seed}:{stream}")


@dataclass(frozen=True)
class AxiomRecord:
    name: str
    passed: bool
    max_residual: float
    witness: Optional[dict]
    tolerance: float
    error: Optional[str] = None

    def to_dict(self) -> dict:
        d = {
            "name": self.name,
            "pass": self.passed,
            "max_residual": self.max_residual if math.isfinite(self.max_residual) else None,
            "tolerance": self.tolerance,
            "witness": self.witness,
        }
        if self.error is not None:
            d["error"] = self.error
        return d


@dataclass(frozen=True)
class AxiomReport:
    candidate: str
    seed: int
    axioms: tuple
    conclusion_distance: float

    @property
    def all_pass(self) -> bool:
        return all(r.passed for r in self.axioms)

    def record(self, name: str) -> AxiomRecord:
        for r in self.axioms:
            if r.name == name:
                return r
        raise KeyError(name)

    def failed(self) -> list[str]:
        return [r.name for r in self.axioms if not r.passed]

    def to_dict(self) -> dict:
        return {
            "candidate": self.candidate,
            "seed": self.seed,
            "axioms": [r.to_dict() for r in self.axioms],
            "conclusion_distance": self.conclusion_distance if math.isfinite(self.conclusion_distance) else None,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


# -- sampling -----------------------------------------------------------------

def _rational(rng: random.Random, max_term: int) -> Fraction:
    return Fraction(rng.randint(1, max_term), rng.randint(1, max_term))


def _weights(rng: random.Random, cfg: SuiteConfig, length: Optional[int] = None) -> tuple:
    n = length or rng.randint(1, cfg.max_len)
    w = [Fraction(0) if rng.random() < 0.1 else _rational(rng, cfg.max_term) for _ in range(n)]
    if sum(w) == 0:
        w[rng.randrange(n)] = _rational(rng, cfg.max_term)
    return tuple(w)


def _scalar(rng: random.Random) -> Fraction:
    # rationals in [1/10, 10]
    den = rng.randint(1, 10)
    return Fraction(rng.randint(-(-den // 10), 10 * den), den)


def _grouping(rng: random.Random, cfg: SuiteConfig) -> tuple:
    groups = []
    for _ in range(rng.randint(1, cfg.max_groups)):
        size = rng.randint(1, cfg.max_len)
        groups.append(tuple(_rational(rng, cfg.max_term) if rng.random() >= 0.1 else Fraction(0) for _ in range(size)))
    if all(sum(g) == 0 for g in groups):
        groups[0] = (Fraction(1),) + groups[0][1:]
    return tuple(groups)


def _simplex_point(rng: random.Random, cfg: SuiteConfig, n: int) -> tuple:
    # integer counts with frequent zeros, so boundary points are sampled too
    k = [0 if rng.random() < 0.25 else rng.randint(1, cfg.max_term) for _ in range(n)]
    if sum(k) == 0:
        k[rng.randrange(n)] = 1
    s = sum(k)
    return tuple(Fraction(x, s) for x in k)


def _perturb(rng: random.Random, p: tuple, delta: Fraction) -> tuple:
    """Move mass ``min(delta, p_i)`` from a positive coordinate i to another j."""
    n = len(p)
    i = rng.choice([k for k in range(n) if p[k] > 0])
    j = rng.choice([k for k in range(n) if k != i])
    m = min(delta, p[i])
    q = list(p)
    q[i] -= m
    q[j] += m
    return tuple(q)


# -- witness (de)serialization --------------------------------------------------

def _enc(v):
    return [format_rational(x) for x in v]


def _dec(v):
    return tuple(parse_rational(x) for x in v)


# -- per-axiom residuals on a single input ---------------------------------------

def _homogeneity(c: Candidate, witness: dict) -> float:
    hat = c.hat
    k, w = parse_rational(witness["c"]), _dec(witness["w"])
    return abs(hat(tuple(k * x for x in w)) - float(k) * hat(w))


def _symmetry(c: Candidate, witness: dict) -> float:
    hat = c.hat
    return abs(hat(_dec(witness["permuted"])) - hat(_dec(witness["w"])))


def _cocycle(c: Candidate, witness: dict) -> float:
    return abs(cocycle_residual([_dec(g) for g in witness["groups"]], c.hat))


def _continuity(c: Candidate, witness: dict) -> float:
    return abs(c.h(_dec(witness["perturbed"])) - c.h(_dec(witness["p"])))


def _normalization(c: Candidate, witness: dict) -> float:
    return abs(c.hat(_dec(witness["w"])) - 2)


RESIDUALS: dict[str, Callable[[Candidate, dict], float]] = {
    "homogeneous": _homogeneity,
    "symmetric": _symmetry,
    "cocycle": _cocycle,
    "continuous-proxy": _continuity,
    "normalized": _normalization,
}


def evaluate_witness(c: Candidate, axiom: str, witness: dict) -> float:
    """Recompute the absolute residual of ``axiom`` at a reported witness."""
    return RESIDUALS[axiom](c, witness)


def _witnesses(axiom: str, cfg: SuiteConfig):
    rng = cfg.rng(axiom)
    if axiom == "homogeneous":
        for _ in range(cfg.samples):
            k = _scalar(rng)
            yield {"c": format_rational(k), "w": _enc(_weights(rng, cfg))}
    elif axiom == "symmetric":
        for _ in range(cfg.samples):
            w = _weights(rng, cfg)
            perm = list(w)
            rng.shuffle(perm)
            yield {"w": _enc(w), "permuted": _enc(perm)}
    elif axiom == "cocycle":
        for groups in COCYCLE_ANCHORS:
            yield {"groups": [_enc(g) for g in groups]}
        for _ in range(cfg.samples):
            yield {"groups": [_enc(g) for g in _grouping(rng, cfg)]}
    elif axiom == "continuous-proxy":
        for n in cfg.continuity_lengths:
            for _ in range(cfg.continuity_samples):
                p = _simplex_point(rng, cfg, n)
                yield {"p": _enc(p), "perturbed": _enc(_perturb(rng, p, cfg.delta))}
    elif axiom == "normalized":
        yield {"w": ["1", "1"]}
    else:
        raise KeyError(axiom)


def check_axiom(c: Candidate, axiom: str, cfg: SuiteConfig) -> AxiomRecord:
    """Largest residual of one axiom over its sample set, with the first witness attaining it."""
    tol = cfg.tolerances[axiom]
    f = RESIDUALS[axiom]
    best, best_w = -1.0, None
    for w in _witnesses(axiom, cfg):
        try:
            r = f(c, w)
        except Exception as exc:  # oracle failure is a verdict, not a crash
            return AxiomRecord(axiom, False, math.inf, w, tol, f"{type(exc).__name__}: {exc}")
        if not math.isfinite(r):
            return AxiomRecord(axiom, False, math.inf, w, tol, "non-finite residual")
        if r > best:
            best, best_w = r, w
    return AxiomRecord(axiom, best <= tol, best, best_w, tol)


def conclusion_witness(c: Candidate, cfg: SuiteConfig) -> tuple[float, tuple]:
    """Largest distance from the closed Shannon form, and where it occurs."""
    rng = cfg.rng("conclusion")
    samples = list(CONCLUSION_ANCHORS) + [_weights(rng, cfg) for _ in range(cfg.samples)]
    hat = c.hat
    best, best_w = -1.0, None
    for w in samples:
        d = abs(hat(w) - hat_entropy_potential_form(w))
        if d > best:
            best, best_w = d, w
    return best, best_w


def conclusion_check(c: Candidate, cfg: Optional[SuiteConfig] = None) -> float:
    """max over sampled w of ``|hat(w) - (sum u(w_i) - u(sum w))|``."""
    return conclusion_witness(c, cfg or SuiteConfig())[0]


def run_suite(c: Candidate, cfg: Optional[SuiteConfig] = None) -> AxiomReport:
    cfg = cfg or SuiteConfig()
    if cfg.workers > 1:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            records = tuple(pool.map(lambda a: check_axiom(c, a, cfg), AXIOMS))
    else:
        records = tuple(check_axiom(c, a, cfg) for a in AXIOMS)
    try:
        distance = conclusion_check(c, cfg)
    except Exception:
        distance = math.inf
    return AxiomReport(c.name, cfg.seed, records, distance)
