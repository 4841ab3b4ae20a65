"""Pseudo-random generation and Monte Carlo for loss models.

A linear congruential engine for exact reproduction of small worked
sequences, a stronger default engine, inverse-transform sampling for
continuous/discrete/mixed distributions, aggregate-model simulation,
and the accuracy-based stopping rule for the number of replications.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = [
    "Lcg",
    "DefaultEngine",
    "make_engine",
    "FiniteDiscrete",
    "ZeroInflated",
    "inverse_transform",
    "simulate_collective",
    "simulate_individual",
    "required_draws",
]


class Lcg:
    """Linear congruential generator B' = (a B + c) mod m, U = B'/m."""

    def __init__(self, modulus: int, multiplier: int, increment: int, seed: int):
        if modulus <= 1:
            raise ValueError("modulus must exceed 1")
        self.m = modulus
        self.a = multiplier
        self.c = increment
        self.state = seed % modulus

    def next_state(self) -> int:
        self.state = (self.a * self.state + self.c) % self.m
        return self.state

    def uniform(self) -> float:
        return self.next_state() / self.m

    def uniforms(self, n: int):
        return [self.uniform() for _ in range(n)]

    @classmethod
    def textbook(cls, seed: int = 1):
        """The small classroom generator with m=15, a=3, c=2."""
        return cls(15, 3, 2, seed)

    @classmethod
    def msvb(cls, seed: int = 0):
        """Parameters historically used by Visual Basic: m=2^24."""
        return cls(2**24, 1_140_671_485, 12_820_163, seed)


class DefaultEngine:
    """Seeded engine backed by numpy's PCG64; supports stream splitting
    for independently seeded parallel runs."""

    def __init__(self, seed: int = 0, stream: int = 0):
        self.seed = seed
        self.stream = stream
        self._rng = np.random.default_rng([seed, stream])

    def uniform(self) -> float:
        return float(self._rng.random())

    def uniforms(self, n: int):
        return self._rng.random(n).tolist()

    def spawn(self, stream: int) -> "DefaultEngine":
        return DefaultEngine(self.seed, stream)


def make_engine(name: str, seed: int = 0):
    if name == "textbook-lcg":
        return Lcg.textbook(seed if seed else 1)
    if name == "default":
        return DefaultEngine(seed)
    raise ValueError(f"unknown engine {name!r}")


class FiniteDiscrete:
    """Arbitrary finite discrete distribution given as (value, prob) pairs."""

    def __init__(self, pairs):
        pairs = [(v, float(p)) for v, p in pairs]
        if not pairs or any(p < 0 for _, p in pairs):
            raise ValueError("probabilities must be nonnegative and nonempty")
        if abs(sum(p for _, p in pairs) - 1.0) > 1e-12:
            raise ValueError("probabilities must sum to 1")
        self.pairs = pairs

    def mean(self):
        return sum(v * p for v, p in self.pairs)

    def var(self):
        m = self.mean()
        return sum(v * v * p for v, p in self.pairs) - m * m

    def cdf(self, x):
        return sum(p for v, p in self.pairs if v <= x)

    def quantile_u(self, u):
        if u <= 0.0:
            return self.pairs[0][0]
        total = 0.0
        for v, p in self.pairs:
            total += p
            if total >= u:
                return v
        return self.pairs[-1][0]


class ZeroInflated:
    """Mixture of an atom at zero (probability p0) and a continuous part."""

    def __init__(self, p0: float, continuous):
        if not 0.0 <= p0 < 1.0:
            raise ValueError("atom probability must lie in [0, 1)")
        self.p0 = p0
        self.continuous = continuous

    def cdf(self, x):
        if x < 0:
            return 0.0
        return self.p0 + (1.0 - self.p0) * self.continuous.cdf(x)

    def quantile_u(self, u):
        if u <= self.p0:
            return 0.0
        return self.continuous.quantile((u - self.p0) / (1.0 - self.p0))


def inverse_transform(dist, u: float):
    """Map a uniform draw through the left-inverse of the cdf.

    Works for continuous, discrete, and mixed distributions through the
    distribution's own quantile machinery; u = 0 maps to the essential
    infimum."""
    if not 0.0 <= u < 1.0:
        raise ValueError("u must lie in [0, 1)")
    return dist.quantile_u(u)


def simulate_collective(freq, sev, n_sims: int, engine) -> list:
    """Aggregate totals: draw N, then N severities, n_sims times."""
    if n_sims < 1:
        raise ValueError("need at least one simulation")
    out = []
    for _ in range(n_sims):
        n = freq.quantile_u(engine.uniform())
        total = 0.0
        for _ in range(n):
            total += sev.quantile_u(engine.uniform())
        out.append(total)
    return out


def simulate_individual(contracts, n_sims: int, engine) -> list:
    """Totals for an individual model: ``contracts`` is a list of
    (claim probability, conditional severity distribution) pairs."""
    if n_sims < 1:
        raise ValueError("need at least one simulation")
    out = []
    for _ in range(n_sims):
        total = 0.0
        for q, sev in contracts:
            if engine.uniform() < q:
                total += sev.quantile_u(engine.uniform())
        out.append(total)
    return out


def required_draws(mean_est: float, sd_est: float) -> int:
    """Replications for the mean to lie within 1% at 95% confidence:
    R >= 38,416 (s / hbar)^2."""
    if mean_est == 0:
        raise ValueError("stopping rule undefined for a zero mean estimate")
    if sd_est == 0:
        return 1
    return math.ceil(38_416.0 * (sd_est / mean_est) ** 2)
