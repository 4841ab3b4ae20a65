"""Continuous claim-size distributions.

Each family exposes pdf/cdf/sf/quantile, raw moments with an explicit
finite-order bound, limited expectations E[(X ^ d)^k] (closed form where
the family admits one, adaptive quadrature otherwise), and the scale /
power / exponential transformations with their closed-family results.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy import integrate, optimize

from .special import (
    betainc,
    gammainc_lower,
    gammainc_upper,
    lbeta,
    lgamma,
    norm_cdf,
    norm_pdf,
    norm_ppf,
)

__all__ = [
    "Exponential",
    "Gamma",
    "Pareto2",
    "SingleParamPareto",
    "Weibull",
    "Lognormal",
    "Normal",
    "Uniform",
    "GB2",
    "Loglogistic",
    "InverseExponential",
    "Burr",
    "ContinuousMixture",
    "Transformed",
    "scale_transform",
    "power_transform",
    "exp_transform",
]

_QUAD_RELTOL = 1e-9


class InfiniteMomentError(ValueError):
    """Raised when a requested raw or limited moment does not exist."""


class SeverityDistribution:
    """Base class for continuous loss-size distributions."""

    #: largest k with E[X^k] finite (math.inf when all moments exist)
    max_moment_order: float = math.inf
    #: lower endpoint of the support
    support_lower: float = 0.0
    support_upper: float = math.inf

    def pdf(self, x: float) -> float:
        raise NotImplementedError

    def cdf(self, x: float) -> float:
        raise NotImplementedError

    def sf(self, x: float) -> float:
        return 1.0 - self.cdf(x)

    def quantile(self, q: float) -> float:
        if not 0.0 < q < 1.0:
            raise ValueError("q must lie in (0, 1)")
        return self._quantile_root(q)

    def _quantile_root(self, q: float) -> float:
        lo = self.support_lower
        hi = max(1.0, lo + 1.0)
        while self.cdf(hi) < q:
            hi = lo + 2.0 * (hi - lo)
            if hi > 1e300:
                raise RuntimeError("quantile bracket failed")
        return optimize.brentq(lambda x: self.cdf(x) - q, lo, hi, xtol=1e-12, rtol=1e-13)

    def moment(self, k: float) -> float:
        """Raw moment E[X^k]."""
        if k >= self.max_moment_order:
            raise InfiniteMomentError(
                f"moment of order {k} is infinite (finite below {self.max_moment_order})"
            )
        return self._raw_moment(k)

    def _raw_moment(self, k: float) -> float:
        hi = self.support_upper
        val, _ = integrate.quad(
            lambda x: x**k * self.pdf(x),
            self.support_lower,
            hi,
            epsrel=_QUAD_RELTOL,
            limit=200,
        )
        return val

    def mean(self) -> float:
        return self.moment(1)

    def var(self) -> float:
        mu = self.mean()
        return self.moment(2) - mu * mu

    def skewness(self) -> float:
        mu = self.mean()
        v = self.var()
        m3 = self.moment(3)
        return (m3 - 3.0 * mu * v - mu**3) / v**1.5

    def limited_moment(self, d: float, k: int = 1) -> float:
        """E[(X ^ d)^k] for a limit d."""
        if d <= self.support_lower:
            raise ValueError("limit must exceed the support lower bound")
        if k < 1:
            raise ValueError("order must be at least 1")
        if math.isinf(d):
            return self.moment(k)
        return self._limited_moment(d, k)

    def _limited_moment(self, d: float, k: int) -> float:
        hi = min(d, self.support_upper)
        val, _ = integrate.quad(
            lambda x: x**k * self.pdf(x),
            self.support_lower,
            hi,
            epsrel=_QUAD_RELTOL,
            limit=200,
        )
        return val + d**k * self.sf(d)

    def mgf(self, t: float) -> float:
        raise NotImplementedError(f"{type(self).__name__} has no closed-form mgf")

    def sample(self, rng, size: int):
        return [self.quantile_u(rng.uniform()) for _ in range(size)]

    def quantile_u(self, u: float) -> float:
        # u = 0 maps to the essential infimum
        if u <= 0.0:
            return self.support_lower
        return self.quantile(u)

    # -- transformation hooks; subclasses override the closed cases -----
    def scaled(self, c: float):
        return Transformed(self, "scale", c)

    def powered(self, tau: float):
        return Transformed(self, "power", tau)

    def exponentiated(self):
        return Transformed(self, "exp", None)


@dataclass(frozen=True)
class Exponential(SeverityDistribution):
    theta: float

    def __post_init__(self):
        if self.theta <= 0:
            raise ValueError("scale must be positive")

    def pdf(self, x):
        return math.exp(-x / self.theta) / self.theta if x >= 0 else 0.0

    def cdf(self, x):
        return -math.expm1(-x / self.theta) if x > 0 else 0.0

    def quantile(self, q):
        if not 0.0 < q < 1.0:
            raise ValueError("q must lie in (0, 1)")
        return -self.theta * math.log1p(-q)

    def _raw_moment(self, k):
        return self.theta**k * math.exp(lgamma(k + 1.0))

    def _limited_moment(self, d, k):
        if k == 1:
            return self.theta * -math.expm1(-d / self.theta)
        return super()._limited_moment(d, k)

    def mgf(self, t):
        if t >= 1.0 / self.theta:
            raise ValueError("argument outside mgf convergence region")
        return 1.0 / (1.0 - self.theta * t)

    def scaled(self, c):
        return Exponential(c * self.theta)

    def powered(self, tau):
        if tau > 0:
            return Weibull(1.0 / tau, self.theta**tau)
        return super().powered(tau)


@dataclass(frozen=True)
class Gamma(SeverityDistribution):
    alpha: float
    theta: float

    def __post_init__(self):
        if self.alpha <= 0 or self.theta <= 0:
            raise ValueError("parameters must be positive")

    def pdf(self, x):
        if x <= 0:
            return 0.0
        a, th = self.alpha, self.theta
        return math.exp((a - 1.0) * math.log(x) - x / th - lgamma(a) - a * math.log(th))

    def cdf(self, x):
        if x <= 0:
            return 0.0
        return gammainc_lower(self.alpha, x / self.theta)

    def _raw_moment(self, k):
        return self.theta**k * math.exp(lgamma(self.alpha + k) - lgamma(self.alpha))

    def _limited_moment(self, d, k):
        a, th = self.alpha, self.theta
        body = th**k * math.exp(lgamma(a + k) - lgamma(a)) * gammainc_lower(a + k, d / th)
        return body + d**k * gammainc_upper(a, d / th)

    def mean(self):
        return self.alpha * self.theta

    def var(self):
        return self.alpha * self.theta**2

    def skewness(self):
        return 2.0 / math.sqrt(self.alpha)

    def mgf(self, t):
        if t >= 1.0 / self.theta:
            raise ValueError("argument outside mgf convergence region")
        return (1.0 - self.theta * t) ** (-self.alpha)

    def scaled(self, c):
        return Gamma(self.alpha, c * self.theta)


@dataclass(frozen=True)
class Pareto2(SeverityDistribution):
    """Pareto type II (Lomax): S(x) = (theta / (x + theta))^alpha."""

    alpha: float
    theta: float

    def __post_init__(self):
        if self.alpha <= 0 or self.theta <= 0:
            raise ValueError("parameters must be positive")

    @property
    def max_moment_order(self):
        return self.alpha

    def pdf(self, x):
        if x < 0:
            return 0.0
        a, th = self.alpha, self.theta
        return a * th**a / (x + th) ** (a + 1.0)

    def cdf(self, x):
        if x <= 0:
            return 0.0
        return 1.0 - (self.theta / (x + self.theta)) ** self.alpha

    def sf(self, x):
        if x <= 0:
            return 1.0
        return (self.theta / (x + self.theta)) ** self.alpha

    def quantile(self, q):
        if not 0.0 < q < 1.0:
            raise ValueError("q must lie in (0, 1)")
        return self.theta * ((1.0 - q) ** (-1.0 / self.alpha) - 1.0)

    def _raw_moment(self, k):
        # E[X^k] = theta^k Gamma(k+1) Gamma(alpha-k) / Gamma(alpha), k < alpha
        return self.theta**k * math.exp(
            lgamma(k + 1.0) + lgamma(self.alpha - k) - lgamma(self.alpha)
        )

    def _limited_moment(self, d, k):
        if k == 1:
            a, th = self.alpha, self.theta
            if a == 1.0:
                return th * math.log((d + th) / th)
            return th / (a - 1.0) * (1.0 - (th / (d + th)) ** (a - 1.0))
        return super()._limited_moment(d, k)

    def scaled(self, c):
        return Pareto2(self.alpha, c * self.theta)


@dataclass(frozen=True)
class SingleParamPareto(SeverityDistribution):
    """Pareto with support above theta: F(x) = 1 - (theta/x)^alpha."""

    alpha: float
    theta: float

    def __post_init__(self):
        if self.alpha <= 0 or self.theta <= 0:
            raise ValueError("parameters must be positive")

    @property
    def max_moment_order(self):
        return self.alpha

    @property
    def support_lower(self):
        return self.theta

    def pdf(self, x):
        if x <= self.theta:
            return 0.0
        return self.alpha * self.theta**self.alpha / x ** (self.alpha + 1.0)

    def cdf(self, x):
        if x <= self.theta:
            return 0.0
        return 1.0 - (self.theta / x) ** self.alpha

    def quantile(self, q):
        if not 0.0 < q < 1.0:
            raise ValueError("q must lie in (0, 1)")
        return self.theta * (1.0 - q) ** (-1.0 / self.alpha)

    def _raw_moment(self, k):
        return self.alpha * self.theta**k / (self.alpha - k)

    def _limited_moment(self, d, k):
        a, th = self.alpha, self.theta
        if a == k:
            body = a * th**k * math.log(d / th)
        else:
            body = a * th**k / (a - k) * (1.0 - (th / d) ** (a - k))
        return body + d**k * (th / d) ** a

    def scaled(self, c):
        return SingleParamPareto(self.alpha, c * self.theta)


@dataclass(frozen=True)
class Weibull(SeverityDistribution):
    tau: float
    theta: float

    def __post_init__(self):
        if self.tau <= 0 or self.theta <= 0:
            raise ValueError("parameters must be positive")

    def pdf(self, x):
        if x <= 0:
            return 0.0
        z = (x / self.theta) ** self.tau
        return self.tau / x * z * math.exp(-z)

    def cdf(self, x):
        if x <= 0:
            return 0.0
        return -math.expm1(-((x / self.theta) ** self.tau))

    def sf(self, x):
        if x <= 0:
            return 1.0
        return math.exp(-((x / self.theta) ** self.tau))

    def quantile(self, q):
        if not 0.0 < q < 1.0:
            raise ValueError("q must lie in (0, 1)")
        return self.theta * (-math.log1p(-q)) ** (1.0 / self.tau)

    def _raw_moment(self, k):
        return self.theta**k * math.exp(lgamma(1.0 + k / self.tau))

    def _limited_moment(self, d, k):
        z = (d / self.theta) ** self.tau
        body = (
            self.theta**k
            * math.exp(lgamma(1.0 + k / self.tau))
            * gammainc_lower(1.0 + k / self.tau, z)
        )
        return body + d**k * math.exp(-z)

    def scaled(self, c):
        return Weibull(self.tau, c * self.theta)

    def powered(self, tau):
        if tau > 0:
            return Weibull(self.tau / tau, self.theta**tau)
        return super().powered(tau)


@dataclass(frozen=True)
class Lognormal(SeverityDistribution):
    mu: float
    sigma: float

    def __post_init__(self):
        if self.sigma <= 0:
            raise ValueError("sigma must be positive")

    def pdf(self, x):
        if x <= 0:
            return 0.0
        z = (math.log(x) - self.mu) / self.sigma
        return norm_pdf(z) / (x * self.sigma)

    def cdf(self, x):
        if x <= 0:
            return 0.0
        return norm_cdf((math.log(x) - self.mu) / self.sigma)

    def quantile(self, q):
        if not 0.0 < q < 1.0:
            raise ValueError("q must lie in (0, 1)")
        return math.exp(self.mu + self.sigma * norm_ppf(q))

    def _raw_moment(self, k):
        return math.exp(k * self.mu + 0.5 * k * k * self.sigma**2)

    def _limited_moment(self, d, k):
        body = self._raw_moment(k) * norm_cdf(
            (math.log(d) - self.mu - k * self.sigma**2) / self.sigma
        )
        return body + d**k * self.sf(d)

    def scaled(self, c):
        return Lognormal(self.mu + math.log(c), self.sigma)

    def powered(self, tau):
        if tau > 0:
            return Lognormal(tau * self.mu, tau * self.sigma)
        return super().powered(tau)


@dataclass(frozen=True)
class Normal(SeverityDistribution):
    mu: float
    sigma: float

    support_lower = -math.inf

    def __post_init__(self):
        if self.sigma <= 0:
            raise ValueError("sigma must be positive")

    def pdf(self, x):
        return norm_pdf((x - self.mu) / self.sigma) / self.sigma

    def cdf(self, x):
        return norm_cdf((x - self.mu) / self.sigma)

    def quantile(self, q):
        if not 0.0 < q < 1.0:
            raise ValueError("q must lie in (0, 1)")
        return self.mu + self.sigma * norm_ppf(q)

    def mean(self):
        return self.mu

    def var(self):
        return self.sigma**2

    def _raw_moment(self, k):
        val, _ = integrate.quad(
            lambda x: x**k * self.pdf(x),
            self.mu - 40 * self.sigma,
            self.mu + 40 * self.sigma,
            epsrel=_QUAD_RELTOL,
        )
        return val

    def mgf(self, t):
        return math.exp(self.mu * t + 0.5 * self.sigma**2 * t * t)

    def scaled(self, c):
        return Normal(c * self.mu, c * self.sigma)

    def exponentiated(self):
        return Lognormal(self.mu, self.sigma)


@dataclass(frozen=True)
class Uniform(SeverityDistribution):
    a: float
    b: float

    def __post_init__(self):
        if self.b <= self.a:
            raise ValueError("upper endpoint must exceed lower endpoint")

    @property
    def support_lower(self):
        return self.a

    @property
    def support_upper(self):
        return self.b

    def pdf(self, x):
        return 1.0 / (self.b - self.a) if self.a <= x <= self.b else 0.0

    def cdf(self, x):
        if x <= self.a:
            return 0.0
        if x >= self.b:
            return 1.0
        return (x - self.a) / (self.b - self.a)

    def quantile(self, q):
        if not 0.0 < q < 1.0:
            raise ValueError("q must lie in (0, 1)")
        return self.a + q * (self.b - self.a)

    def _raw_moment(self, k):
        kk = k + 1.0
        return (self.b**kk - self.a**kk) / (kk * (self.b - self.a))

    def mean(self):
        return 0.5 * (self.a + self.b)

    def var(self):
        return (self.b - self.a) ** 2 / 12.0

    def scaled(self, c):
        return Uniform(c * self.a, c * self.b)


@dataclass(frozen=True)
class GB2(SeverityDistribution):
    """Generalized beta of the second kind with parameters (a, b, alpha, beta)."""

    a: float
    b: float
    alpha: float
    beta: float

    def __post_init__(self):
        if min(self.a, self.b, self.alpha, self.beta) <= 0:
            raise ValueError("parameters must be positive")

    @property
    def max_moment_order(self):
        return self.a * self.beta

    def pdf(self, x):
        if x <= 0:
            return 0.0
        a, b, al, be = self.a, self.b, self.alpha, self.beta
        logp = (
            math.log(a)
            + (a * al - 1.0) * math.log(x)
            - a * al * math.log(b)
            - lbeta(al, be)
            - (al + be) * math.log1p((x / b) ** a)
        )
        return math.exp(logp)

    def cdf(self, x):
        # no closed form used: integrate the density
        if x <= 0:
            return 0.0
        val, _ = integrate.quad(self.pdf, 0.0, x, epsrel=_QUAD_RELTOL, limit=200)
        return min(val, 1.0)

    def _raw_moment(self, k):
        if k <= -self.a * self.alpha:
            raise InfiniteMomentError("moment order too small")
        a, b, al, be = self.a, self.b, self.alpha, self.beta
        return b**k * math.exp(lbeta(al + k / a, be - k / a) - lbeta(al, be))

    def scaled(self, c):
        return GB2(self.a, c * self.b, self.alpha, self.beta)

    def powered(self, tau):
        if tau > 0:
            return GB2(self.a / tau, self.b**tau, self.alpha, self.beta)
        return super().powered(tau)


@dataclass(frozen=True)
class Loglogistic(SeverityDistribution):
    """F(x) = (x/theta)^gamma / (1 + (x/theta)^gamma)."""

    gamma: float
    theta: float

    def __post_init__(self):
        if self.gamma <= 0 or self.theta <= 0:
            raise ValueError("parameters must be positive")

    @property
    def max_moment_order(self):
        return self.gamma

    def pdf(self, x):
        if x <= 0:
            return 0.0
        z = (x / self.theta) ** self.gamma
        return self.gamma * z / (x * (1.0 + z) ** 2)

    def cdf(self, x):
        if x <= 0:
            return 0.0
        z = (x / self.theta) ** self.gamma
        return z / (1.0 + z)

    def quantile(self, q):
        if not 0.0 < q < 1.0:
            raise ValueError("q must lie in (0, 1)")
        return self.theta * (q / (1.0 - q)) ** (1.0 / self.gamma)

    def _raw_moment(self, k):
        g = self.gamma
        return self.theta**k * math.exp(lgamma(1 + k / g) + lgamma(1 - k / g))

    def scaled(self, c):
        return Loglogistic(self.gamma, c * self.theta)

    def powered(self, tau):
        if tau > 0:
            return Loglogistic(self.gamma / tau, self.theta**tau)
        return super().powered(tau)


@dataclass(frozen=True)
class InverseExponential(SeverityDistribution):
    """F(x) = exp(-theta/x); mean and higher moments are infinite."""

    theta: float

    max_moment_order = 1.0

    def __post_init__(self):
        if self.theta <= 0:
            raise ValueError("scale must be positive")

    def pdf(self, x):
        if x <= 0:
            return 0.0
        return self.theta * math.exp(-self.theta / x) / (x * x)

    def cdf(self, x):
        if x <= 0:
            return 0.0
        return math.exp(-self.theta / x)

    def quantile(self, q):
        if not 0.0 < q < 1.0:
            raise ValueError("q must lie in (0, 1)")
        return -self.theta / math.log(q)

    def scaled(self, c):
        return InverseExponential(c * self.theta)


@dataclass(frozen=True)
class Burr(SeverityDistribution):
    """S(x) = [1 / (1 + (x/theta)^gamma)]^alpha."""

    alpha: float
    theta: float
    gamma: float

    def __post_init__(self):
        if min(self.alpha, self.theta, self.gamma) <= 0:
            raise ValueError("parameters must be positive")

    @property
    def max_moment_order(self):
        return self.alpha * self.gamma

    def pdf(self, x):
        if x <= 0:
            return 0.0
        z = (x / self.theta) ** self.gamma
        return self.alpha * self.gamma * z / (x * (1.0 + z) ** (self.alpha + 1.0))

    def cdf(self, x):
        if x <= 0:
            return 0.0
        return 1.0 - self.sf(x)

    def sf(self, x):
        if x <= 0:
            return 1.0
        return (1.0 + (x / self.theta) ** self.gamma) ** (-self.alpha)

    def quantile(self, q):
        if not 0.0 < q < 1.0:
            raise ValueError("q must lie in (0, 1)")
        return self.theta * ((1.0 - q) ** (-1.0 / self.alpha) - 1.0) ** (1.0 / self.gamma)

    def _raw_moment(self, k):
        a, g = self.alpha, self.gamma
        return self.theta**k * math.exp(
            lgamma(1 + k / g) + lgamma(a - k / g) - lgamma(a)
        )

    def scaled(self, c):
        return Burr(self.alpha, c * self.theta, self.gamma)

    def powered(self, tau):
        if tau > 0:
            return Burr(self.alpha, self.theta**tau, self.gamma / tau)
        return super().powered(tau)


class ContinuousMixture(SeverityDistribution):
    """Finite mixture of severity distributions."""

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

    @property
    def max_moment_order(self):
        return min(c.max_moment_order for c in self.components)

    @property
    def support_lower(self):
        return min(c.support_lower for c in self.components)

    def pdf(self, x):
        return sum(w * c.pdf(x) for w, c in zip(self.weights, self.components))

    def cdf(self, x):
        return sum(w * c.cdf(x) for w, c in zip(self.weights, self.components))

    def _raw_moment(self, k):
        return sum(w * c.moment(k) for w, c in zip(self.weights, self.components))

    def _limited_moment(self, d, k):
        return sum(
            w * c.limited_moment(d, k) for w, c in zip(self.weights, self.components)
        )


class Transformed(SeverityDistribution):
    """Scale/power/exp transform of a base distribution, evaluated by
    change of variables when no closed-family result applies."""

    def __init__(self, base: SeverityDistribution, kind: str, param):
        if kind == "scale" and param <= 0:
            raise ValueError("scale factor must be positive")
        if kind == "power" and param == 0:
            raise ValueError("power exponent must be nonzero")
        if kind not in ("scale", "power", "exp"):
            raise ValueError(f"unknown transform kind {kind!r}")
        self.base = base
        self.kind = kind
        self.param = param

    # y = g(x); x = ginv(y)
    def _ginv(self, y: float) -> float:
        if self.kind == "scale":
            return y / self.param
        if self.kind == "power":
            return y ** (1.0 / self.param)
        return math.log(y)

    def _dginv(self, y: float) -> float:
        if self.kind == "scale":
            return 1.0 / self.param
        if self.kind == "power":
            p = 1.0 / self.param
            return abs(p * y ** (p - 1.0))
        return 1.0 / y

    @property
    def support_lower(self):
        lo = self.base.support_lower
        if self.kind == "scale":
            return self.param * lo
        if self.kind == "power":
            return lo**self.param if self.param > 0 else 0.0
        return math.exp(lo) if lo > -math.inf else 0.0

    def _increasing(self):
        return not (self.kind == "power" and self.param < 0)

    def pdf(self, y):
        if y <= self.support_lower and self.kind != "scale":
            return 0.0
        try:
            x = self._ginv(y)
        except ValueError:
            return 0.0
        return self.base.pdf(x) * self._dginv(y)

    def cdf(self, y):
        try:
            x = self._ginv(y)
        except ValueError:
            return 0.0
        if self._increasing():
            return self.base.cdf(x)
        return self.base.sf(x)

    def quantile(self, q):
        if not 0.0 < q < 1.0:
            raise ValueError("q must lie in (0, 1)")
        if self._increasing():
            x = self.base.quantile(q)
        else:
            x = self.base.quantile(1.0 - q)
        if self.kind == "scale":
            return self.param * x
        if self.kind == "power":
            return x**self.param
        return math.exp(x)


def scale_transform(dist: SeverityDistribution, c: float) -> SeverityDistribution:
    """Multiply the loss by a constant c > 0 (inflation, currency)."""
    if c <= 0:
        raise ValueError("scale factor must be positive")
    if c == 1.0:
        return dist
    return dist.scaled(c)


def power_transform(dist: SeverityDistribution, tau: float) -> SeverityDistribution:
    """Raise the loss to a power tau != 0."""
    if tau == 0:
        raise ValueError("power exponent must be nonzero")
    if tau == 1.0:
        return dist
    return dist.powered(tau)


def exp_transform(dist: SeverityDistribution) -> SeverityDistribution:
    """Exponentiate the loss."""
    return dist.exponentiated()


def moments(dist):
    """(mean, variance, skewness or None) for any distribution exposing
    the moment interface."""
    mean = dist.mean()
    variance = dist.var()
    try:
        skew = dist.skewness()
    except (AttributeError, InfiniteMomentError, NotImplementedError):
        skew = None
    return mean, variance, skew
