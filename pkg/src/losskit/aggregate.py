"""Aggregate loss models.

Individual and collective risk models: moments, discrete convolutions,
severity discretization, the recursive computation of the compound pmf,
stop-loss premiums, the compound Poisson-gamma family, normal
approximations, and the geometric-exponential closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .frequency import Binomial, NegBinomial, Poisson, ZeroModified
from .special import lgamma, norm_cdf

__all__ = [
    "DiscretePmf",
    "CompoundModel",
    "IndividualPortfolio",
    "individual_moments",
    "convolve",
    "compound_cdf_bruteforce",
    "collective_moments",
    "discretize",
    "panjer",
    "stop_loss",
    "stop_loss_lattice",
    "Tweedie",
    "tweedie_from_mean_dispersion",
    "normal_approx_tail",
    "geometric_exponential_sf",
]


@dataclass(frozen=True)
class DiscretePmf:
    """Pmf on the lattice {0, h, 2h, ...}."""

    h: float
    probs: tuple

    def __post_init__(self):
        if self.h <= 0:
            raise ValueError("span must be positive")
        if any(p < -1e-15 for p in self.probs):
            raise ValueError("negative probability mass")

    @property
    def mean(self):
        return self.h * sum(k * p for k, p in enumerate(self.probs))

    def cdf(self, x):
        kmax = int(math.floor(x / self.h + 1e-12))
        return float(sum(self.probs[: kmax + 1]))


@dataclass(frozen=True)
class CompoundModel:
    """Frequency plus severity defining the aggregate loss S."""

    frequency: object
    severity: object  # SeverityDistribution or DiscretePmf
    span: float = 1.0
    method: str = "rounding"

    def discrete_severity(self, n_points=None) -> DiscretePmf:
        if isinstance(self.severity, DiscretePmf):
            return self.severity
        return discretize(self.severity, self.span, self.method, n_points=n_points)


@dataclass(frozen=True)
class IndividualPortfolio:
    """Per-contract claim probabilities and conditional claim moments."""

    q: tuple
    mu: tuple
    sigma2: tuple

    def __post_init__(self):
        if not len(self.q) == len(self.mu) == len(self.sigma2):
            raise ValueError("per-contract arrays must align")
        if any(not 0.0 <= qi <= 1.0 for qi in self.q):
            raise ValueError("claim probabilities must lie in [0, 1]")
        if any(s < 0 for s in self.sigma2):
            raise ValueError("variances must be nonnegative")


def individual_moments(portfolio: IndividualPortfolio):
    """(mean, variance) of the individual risk model total."""
    mean = sum(q * m for q, m in zip(portfolio.q, portfolio.mu))
    var = sum(
        q * s2 + q * (1.0 - q) * m * m
        for q, m, s2 in zip(portfolio.q, portfolio.mu, portfolio.sigma2)
    )
    return mean, var


def convolve(f: DiscretePmf, n: int, cap: int | None = None) -> DiscretePmf:
    """n-fold convolution of a lattice pmf; n = 0 is a point mass at 0."""
    if n < 0:
        raise ValueError("fold count must be nonnegative")
    base = np.asarray(f.probs, dtype=float)
    out = np.array([1.0])
    for _ in range(n):
        out = np.convolve(out, base)
        if cap is not None and out.size > cap:
            out = out[: cap + 1]
    return DiscretePmf(f.h, tuple(out))


def compound_cdf_bruteforce(freq, f: DiscretePmf, s: float, n_terms=None) -> float:
    """F_S(s) by direct mixing over the claim count: sum_n p_n F^{*n}(s).

    Independent check of the recursion; cost grows with the number of
    convolutions."""
    k_s = int(math.floor(s / f.h + 1e-12))
    if n_terms is None:
        # once every claim contributes its minimum positive mass the sum
        # cannot reach s; bound the required fold count
        first_pos = next(i for i, p in enumerate(f.probs) if i > 0 and p > 0)
        n_terms = k_s // first_pos + 1 if f.probs[0] == 0.0 else 200
    total = freq.pmf(0)
    fold = DiscretePmf(f.h, (1.0,))
    base = np.asarray(f.probs, dtype=float)
    probs = np.array([1.0])
    for n in range(1, n_terms + 1):
        probs = np.convolve(probs, base)[: k_s + 1]
        total += freq.pmf(n) * float(probs.sum())
    return total


def collective_moments(model_or_freq, severity=None):
    """(mean, variance) of the collective model S = X_1 + ... + X_N."""
    if severity is None:
        freq, severity = model_or_freq.frequency, model_or_freq.severity
    else:
        freq = model_or_freq
    if isinstance(severity, DiscretePmf):
        mu = severity.mean
        m2 = severity.h**2 * sum(k * k * p for k, p in enumerate(severity.probs))
        sig2 = m2 - mu * mu
    else:
        mu = severity.moment(1)
        sig2 = severity.moment(2) - mu * mu
    en, vn = freq.mean(), freq.var()
    return mu * en, sig2 * en + mu * mu * vn


def discretize(sev, h: float, method: str = "rounding", n_points=None) -> DiscretePmf:
    """Put a continuous severity on the lattice {0, h, 2h, ...}.

    rounding assigns mass F(kh + h/2) - F(kh - h/2) to kh; upper/lower
    use cdf differences biased up or down.  The tail beyond the cap is
    lumped at the final point so the masses sum to 1."""
    if h <= 0:
        raise ValueError("span must be positive")
    if n_points is None:
        mean = sev.moment(1) if sev.max_moment_order > 1 else sev.quantile(0.99)
        n_points = max(int(200 * mean / h), 200)
    probs = []
    if method == "rounding":
        prev = 0.0
        for k in range(n_points):
            hi = sev.cdf(k * h + h / 2.0)
            probs.append(max(hi - prev, 0.0))
            prev = hi
    elif method == "upper":
        # mass at kh equals Pr((k-1)h < X <= kh): stochastically larger
        prev = 0.0
        probs.append(0.0)
        for k in range(1, n_points):
            hi = sev.cdf(k * h)
            probs.append(max(hi - prev, 0.0))
            prev = hi
    elif method == "lower":
        prev = 0.0
        for k in range(n_points):
            hi = sev.cdf((k + 1) * h)
            probs.append(max(hi - prev, 0.0))
            prev = hi
    else:
        raise ValueError(f"unknown discretization method {method!r}")
    remainder = 1.0 - sum(probs)
    probs[-1] += max(remainder, 0.0)
    return DiscretePmf(h, tuple(probs))


def _panjer_terms(freq):
    """(a, b, p0, p1) for the recursion, handling zero modification."""
    if isinstance(freq, ZeroModified):
        a, b, p1 = freq.ab1()
        return a, b, freq.pmf(0), p1
    a, b, p0 = freq.ab0()
    return a, b, p0, (a + b) * p0


def panjer(model: CompoundModel, s_max=None, tail_tol: float = 1e-9) -> DiscretePmf:
    """Aggregate pmf by the two-parameter recursion.

    Supports frequencies in the base three-family class and their
    zero-modified versions; severity is discretized on the model span.
    Stops at s_max lattice points or once cumulative mass reaches
    1 - tail_tol."""
    fx = model.discrete_severity()
    a, b, p0, p1 = _panjer_terms(model.frequency)
    fx0 = fx.probs[0]
    denom = 1.0 - a * fx0
    if denom <= 0.0:
        raise ValueError("recursion singularity: a * f_X(0) = 1")
    f0 = model.frequency.pgf(fx0)
    out = [f0]
    m = len(fx.probs) - 1
    correction = p1 - (a + b) * p0  # vanishes for base-class frequencies
    cum = f0
    hard_cap = s_max if s_max is not None else 10**6
    s = 0
    while s < hard_cap:
        s += 1
        upper = min(s, m)
        acc = 0.0
        for x in range(1, upper + 1):
            acc += (a + b * x / s) * fx.probs[x] * out[s - x]
        val = (correction * (fx.probs[s] if s <= m else 0.0) + acc) / denom
        out.append(max(val, 0.0))
        cum += out[-1]
        if s_max is None and cum >= 1.0 - tail_tol:
            break
    return DiscretePmf(fx.h, tuple(out))


def stop_loss(model_or_pmf, d: float) -> float:
    """Net stop-loss premium E[(S - d)_+] = E[S] - E[S ^ d]."""
    if isinstance(model_or_pmf, DiscretePmf):
        pmf = model_or_pmf
        mean = pmf.mean
        limited = sum(
            min(k * pmf.h, d) * p for k, p in enumerate(pmf.probs)
        )
        # mass beyond the tabulated support is treated as at least d
        limited += d * max(1.0 - sum(pmf.probs), 0.0)
        return mean - limited
    if isinstance(model_or_pmf, CompoundModel):
        pmf = panjer(model_or_pmf, tail_tol=1e-12)
        mean, _ = collective_moments(model_or_pmf)
        limited = sum(min(k * pmf.h, d) * p for k, p in enumerate(pmf.probs))
        limited += d * max(1.0 - sum(pmf.probs), 0.0)
        return mean - limited
    raise TypeError("expected a CompoundModel or DiscretePmf")


def stop_loss_lattice(pmf: DiscretePmf, j_max: int, mean: float | None = None):
    """Stop-loss premiums at lattice deductibles 0, h, ..., j_max*h via
    the recursion E[(S-(j+1)h)_+] = E[(S-jh)_+] - h (1 - F_S(jh)).

    ``mean`` overrides the E[S] starting value (useful when the exact
    mean is known and the tabulated pmf carries a truncated tail)."""
    out = [pmf.mean if mean is None else mean]
    cum = 0.0
    for j in range(j_max):
        cum += pmf.probs[j] if j < len(pmf.probs) else 0.0
        out.append(out[-1] - pmf.h * (1.0 - cum))
    return out


@dataclass(frozen=True)
class Tweedie:
    """Compound Poisson-gamma: rate lam, gamma shape alpha and rate gamma."""

    lam: float
    alpha: float
    gamma: float

    def __post_init__(self):
        if min(self.lam, self.alpha, self.gamma) <= 0:
            raise ValueError("parameters must be positive")

    def mass_at_zero(self) -> float:
        return math.exp(-self.lam)

    def pdf(self, s: float, term_tol: float = 1e-15) -> float:
        """Density for s > 0 by the Poisson-weighted gamma series."""
        if s <= 0:
            raise ValueError("density defined for s > 0; use mass_at_zero for the atom")
        total = 0.0
        log_s = math.log(s)
        n = 0
        best = 0.0
        while n < 10_000:
            n += 1
            log_term = (
                -self.lam
                + n * math.log(self.lam)
                - lgamma(n + 1)
                + n * self.alpha * math.log(self.gamma)
                + (n * self.alpha - 1.0) * log_s
                - self.gamma * s
                - lgamma(n * self.alpha)
            )
            term = math.exp(log_term)
            total += term
            best = max(best, term)
            if n > 3 and term < term_tol * best:
                break
        return total

    def mean(self) -> float:
        return self.lam * self.alpha / self.gamma

    def var(self) -> float:
        return self.lam * self.alpha * (1.0 + self.alpha) / self.gamma**2

    def to_dispersion(self):
        """(mu, phi, p) exponential-dispersion parameters."""
        p = (self.alpha + 2.0) / (self.alpha + 1.0)
        mu = self.mean()
        phi = self.gamma / ((p - 1.0) * mu ** (p - 1.0))
        return mu, phi, p


def tweedie_from_mean_dispersion(mu: float, phi: float, p: float) -> Tweedie:
    """Invert the (mu, phi, p) parameterization, p in (1, 2)."""
    if not 1.0 < p < 2.0:
        raise ValueError("power parameter must lie strictly between 1 and 2")
    lam = mu ** (2.0 - p) / (phi * (2.0 - p))
    alpha = (2.0 - p) / (p - 1.0)
    gamma = phi * (p - 1.0) * mu ** (p - 1.0)
    return Tweedie(lam, alpha, gamma)


def normal_approx_tail(mean: float, var: float, threshold: float) -> float:
    """Pr(S > threshold) under a central-limit normal approximation."""
    if var <= 0:
        raise ValueError("variance must be positive")
    return 1.0 - norm_cdf((threshold - mean) / math.sqrt(var))


def geometric_exponential_sf(beta: float, theta: float, s: float) -> float:
    """Pr(S > s) for geometric(beta) frequency and exponential(theta)
    severity; the aggregate has an atom 1/(1+beta) at zero."""
    if beta < 0 or theta <= 0 or s < 0:
        raise ValueError("invalid parameters")
    return beta / (1.0 + beta) * math.exp(-s / (theta * (1.0 + beta)))
