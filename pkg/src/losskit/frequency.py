"""Claim-count distributions.

Poisson, binomial, and negative binomial families together with their
zero-truncated/zero-modified variants, the two-parameter recursion
machinery that ties the three families together, count mixtures, and
the gamma mixing result for Poisson rates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .special import gammainc_upper, betainc, lgamma

__all__ = [
    "Poisson",
    "Binomial",
    "NegBinomial",
    "ZeroModified",
    "zero_truncated",
    "CountMixture",
    "ab0_recursion",
    "classify_ab0",
    "mixed_poisson_gamma",
    "conditional_mixture_query",
]

_TAIL_TOL = 1e-12
_K_CAP = 10**6


class CountDistribution:
    """Base class for distributions on the nonnegative integers."""

    def pmf(self, k: int) -> float:
        raise NotImplementedError

    def cdf(self, x: float) -> float:
        if x < 0:
            return 0.0
        return sum(self.pmf(k) for k in range(int(math.floor(x)) + 1))

    def sf(self, x: float) -> float:
        return 1.0 - self.cdf(x)

    def mean(self) -> float:
        raise NotImplementedError

    def var(self) -> float:
        raise NotImplementedError

    def pgf(self, z: float) -> float:
        raise NotImplementedError

    def mgf(self, t: float) -> float:
        return self.pgf(math.exp(t))

    def quantile(self, q: float) -> int:
        """Smallest k with F(k) >= q."""
        if not 0.0 < q < 1.0:
            raise ValueError("q must lie in (0, 1)")
        total = 0.0
        k = 0
        while k <= _K_CAP:
            total += self.pmf(k)
            if total >= q:
                return k
            k += 1
        raise RuntimeError("quantile search exceeded support cap")

    def sample(self, rng, size: int):
        """Draw by inverse transform on the cdf."""
        return [self.quantile_u(rng.uniform()) for _ in range(size)]

    def quantile_u(self, u: float) -> int:
        # u = 0 maps to the smallest support point rather than erroring
        if u <= 0.0:
            return 0
        total = 0.0
        k = 0
        while k <= _K_CAP:
            total += self.pmf(k)
            if total >= u:
                return k
            k += 1
        return _K_CAP


@dataclass(frozen=True)
class Poisson(CountDistribution):
    lam: float

    def __post_init__(self):
        if self.lam < 0:
            raise ValueError("rate must be nonnegative")

    def pmf(self, k: int) -> float:
        if k < 0:
            return 0.0
        if self.lam == 0.0:
            return 1.0 if k == 0 else 0.0
        return math.exp(-self.lam + k * math.log(self.lam) - lgamma(k + 1))

    def cdf(self, x: float) -> float:
        if x < 0:
            return 0.0
        if self.lam == 0.0:
            return 1.0
        # survival of Poisson = lower incomplete gamma; use upper for cdf
        return gammainc_upper(math.floor(x) + 1.0, self.lam)

    def mean(self) -> float:
        return self.lam

    def var(self) -> float:
        return self.lam

    def pgf(self, z: float) -> float:
        return math.exp(self.lam * (z - 1.0))

    def ab0(self):
        """Recursion parameters (a, b) and starting probability p0."""
        return 0.0, self.lam, math.exp(-self.lam)


@dataclass(frozen=True)
class Binomial(CountDistribution):
    m: int
    q: float

    def __post_init__(self):
        if self.m < 1 or self.m != int(self.m):
            raise ValueError("m must be a positive integer")
        if not 0.0 <= self.q <= 1.0:
            raise ValueError("q must lie in [0, 1]")

    def pmf(self, k: int) -> float:
        if k < 0 or k > self.m:
            return 0.0
        if self.q == 0.0:
            return 1.0 if k == 0 else 0.0
        if self.q == 1.0:
            return 1.0 if k == self.m else 0.0
        logc = lgamma(self.m + 1) - lgamma(k + 1) - lgamma(self.m - k + 1)
        return math.exp(
            logc + k * math.log(self.q) + (self.m - k) * math.log1p(-self.q)
        )

    def cdf(self, x: float) -> float:
        if x < 0:
            return 0.0
        k = int(math.floor(x))
        if k >= self.m:
            return 1.0
        if self.q in (0.0, 1.0):
            return sum(self.pmf(j) for j in range(k + 1))
        return betainc(self.m - k, k + 1.0, 1.0 - self.q)

    def mean(self) -> float:
        return self.m * self.q

    def var(self) -> float:
        return self.m * self.q * (1.0 - self.q)

    def pgf(self, z: float) -> float:
        return (1.0 + self.q * (z - 1.0)) ** self.m

    def ab0(self):
        if self.q == 0.0:
            return 0.0, 0.0, 1.0
        a = -self.q / (1.0 - self.q)
        b = (self.m + 1) * self.q / (1.0 - self.q)
        return a, b, (1.0 - self.q) ** self.m


@dataclass(frozen=True)
class NegBinomial(CountDistribution):
    r: float
    beta: float

    def __post_init__(self):
        if self.r <= 0:
            raise ValueError("r must be positive")
        if self.beta < 0:
            raise ValueError("beta must be nonnegative")

    def pmf(self, k: int) -> float:
        if k < 0:
            return 0.0
        if self.beta == 0.0:
            return 1.0 if k == 0 else 0.0
        logc = lgamma(self.r + k) - lgamma(k + 1) - lgamma(self.r)
        return math.exp(
            logc
            - self.r * math.log1p(self.beta)
            + k * (math.log(self.beta) - math.log1p(self.beta))
        )

    def cdf(self, x: float) -> float:
        if x < 0:
            return 0.0
        if self.beta == 0.0:
            return 1.0
        k = int(math.floor(x))
        return betainc(self.r, k + 1.0, 1.0 / (1.0 + self.beta))

    def mean(self) -> float:
        return self.r * self.beta

    def var(self) -> float:
        return self.r * self.beta * (1.0 + self.beta)

    def pgf(self, z: float) -> float:
        arg = 1.0 - self.beta * (z - 1.0)
        if arg <= 0:
            raise ValueError("argument outside pgf convergence region")
        return arg ** (-self.r)

    def mgf(self, t: float) -> float:
        if self.beta > 0 and t > math.log1p(1.0 / self.beta):
            raise ValueError("argument outside mgf convergence region")
        return self.pgf(math.exp(t))

    def ab0(self):
        if self.beta == 0.0:
            return 0.0, 0.0, 1.0
        a = self.beta / (1.0 + self.beta)
        return a, (self.r - 1.0) * a, (1.0 + self.beta) ** (-self.r)


class ZeroModified(CountDistribution):
    """Reassign the probability at zero, keeping relative positive-count
    probabilities.  ``p0m = 0`` gives the zero-truncated distribution."""

    def __init__(self, base: CountDistribution, p0m: float):
        if not 0.0 <= p0m < 1.0:
            raise ValueError("modified zero probability must lie in [0, 1)")
        p0 = base.pmf(0)
        if p0 >= 1.0:
            raise ValueError("base distribution is degenerate at zero")
        self.base = base
        self.p0m = p0m
        self._scale = (1.0 - p0m) / (1.0 - p0)

    def pmf(self, k: int) -> float:
        if k < 0:
            return 0.0
        if k == 0:
            return self.p0m
        return self._scale * self.base.pmf(k)

    def cdf(self, x: float) -> float:
        if x < 0:
            return 0.0
        return self.p0m + self._scale * (self.base.cdf(x) - self.base.pmf(0))

    def pgf(self, z: float) -> float:
        # convex combination of the point mass at 0 and the truncated pgf
        p0 = self.base.pmf(0)
        c = (1.0 - self.p0m) / (1.0 - p0)
        return 1.0 - c + c * self.base.pgf(z)

    def mean(self) -> float:
        return self._scale * self.base.mean()

    def var(self) -> float:
        m2_base = self.base.var() + self.base.mean() ** 2
        m2 = self._scale * m2_base
        return m2 - self.mean() ** 2

    def ab1(self):
        """(a, b) with the recursion valid from k = 2, plus p1."""
        a, b, _ = self.base.ab0()
        return a, b, self.pmf(1)


def zero_truncated(base: CountDistribution) -> ZeroModified:
    return ZeroModified(base, 0.0)


def ab0_recursion(a: float, b: float, start: tuple[int, float], k_max: int):
    """Probabilities from the ratio recursion p_k/p_{k-1} = a + b/k.

    ``start`` is an (index, probability) pair with index 0 or 1; the
    returned list runs from index 0 through ``k_max`` (entries below the
    start index are left at 0).  Raises if some ratio in range is
    negative, naming the first offending k.
    """
    idx, p_start = start
    if idx not in (0, 1):
        raise ValueError("start index must be 0 or 1")
    if k_max < idx:
        raise ValueError("k_max smaller than start index")
    out = [0.0] * (k_max + 1)
    out[idx] = p_start
    for k in range(idx + 1, k_max + 1):
        ratio = a + b / k
        if out[k - 1] == 0.0:
            # mass already exhausted (binomial above m); sign is irrelevant
            continue
        if ratio < 0:
            raise ValueError(f"invalid parameters: negative recursion ratio at k={k}")
        out[k] = ratio * out[k - 1]
    return out


def classify_ab0(a: float, b: float) -> CountDistribution:
    """Recover the unique count family with ratio parameters (a, b)."""
    if a == 0.0:
        if b < 0:
            raise ValueError("inadmissible parameters: a=0 requires b >= 0")
        return Poisson(b)
    if a < 0:
        # binomial: a = -q/(1-q), b = (m+1)q/(1-q)  =>  b/(-a) = m+1
        ratio = b / (-a)
        m = ratio - 1.0
        m_int = round(m)
        if m_int < 1 or abs(m - m_int) > 1e-9:
            raise ValueError("inadmissible parameters: b/(-a) - 1 not a positive integer")
        q = a / (a - 1.0)
        return Binomial(m_int, q)
    if a >= 1.0:
        raise ValueError("inadmissible parameters: a must be below 1")
    if a + b <= 0:
        raise ValueError("inadmissible parameters: a + b must be positive")
    # negative binomial: a = beta/(1+beta), b = (r-1) a
    beta = a / (1.0 - a)
    r = b / a + 1.0
    return NegBinomial(r, beta)


def mixed_poisson_gamma(alpha: float, theta: float) -> CountDistribution:
    """Poisson rate mixed over a gamma(shape alpha, scale theta) population."""
    if alpha <= 0 or theta < 0:
        raise ValueError("gamma mixing parameters must be positive")
    if theta == 0.0:
        return Poisson(0.0)
    return NegBinomial(r=alpha, beta=theta)


class CountMixture(CountDistribution):
    """Finite mixture of count distributions."""

    def __init__(self, weights, components):
        weights = list(weights)
        components = list(components)
        if len(weights) != len(components) or not components:
            raise ValueError("weights and components must align and be nonempty")
        if any(w <= 0 for w in weights):
            raise ValueError("weights must be positive")
        if abs(sum(weights) - 1.0) > 1e-12:
            raise ValueError("weights must sum to 1")
        self.weights = weights
        self.components = components

    def pmf(self, k: int) -> float:
        return sum(w * c.pmf(k) for w, c in zip(self.weights, self.components))

    def cdf(self, x: float) -> float:
        return sum(w * c.cdf(x) for w, c in zip(self.weights, self.components))

    def pgf(self, z: float) -> float:
        return sum(w * c.pgf(z) for w, c in zip(self.weights, self.components))

    def mean(self) -> float:
        return sum(w * c.mean() for w, c in zip(self.weights, self.components))

    def var(self) -> float:
        m2 = sum(
            w * (c.var() + c.mean() ** 2)
            for w, c in zip(self.weights, self.components)
        )
        return m2 - self.mean() ** 2


def conditional_mixture_query(mix: CountMixture, k: int):
    """Posterior component weights given an observed count of k."""
    joint = [w * c.pmf(k) for w, c in zip(mix.weights, mix.components)]
    total = sum(joint)
    if total <= 0.0:
        raise ValueError("conditioning event has probability zero")
    return [j / total for j in joint]


def generating_fn(dist, arg: float, kind: str = "pgf") -> float:
    """Evaluate the probability or moment generating function."""
    if kind == "pgf":
        return dist.pgf(arg)
    if kind == "mgf":
        return dist.mgf(arg)
    raise ValueError("kind must be 'pgf' or 'mgf'")
