"""Policy coverage modifications.

Deductibles (ordinary and franchise), policy limits, coinsurance, and
inflation applied to a ground-up loss, on per-loss and per-payment
bases; the loss elimination ratio; and the induced payment-count
distribution when a deductible changes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .frequency import Binomial, NegBinomial, Poisson, ZeroModified

__all__ = [
    "PolicyTerms",
    "per_loss_moment",
    "per_loss_variance",
    "per_payment_moment",
    "payment_probability",
    "ler",
    "payment_frequency",
    "exposure_scaling",
]


@dataclass(frozen=True)
class PolicyTerms:
    """Contract terms transforming a ground-up loss into a payment."""

    deductible: float = 0.0
    max_covered_loss: float = math.inf
    coinsurance: float = 1.0
    inflation: float = 0.0
    franchise: bool = False

    def __post_init__(self):
        if self.deductible < 0:
            raise ValueError("deductible must be nonnegative")
        if self.deductible >= self.max_covered_loss:
            raise ValueError("invalid terms: deductible must lie below the maximum covered loss")
        if not 0.0 < self.coinsurance <= 1.0:
            raise ValueError("coinsurance must lie in (0, 1]")
        if self.inflation <= -1.0:
            raise ValueError("inflation rate must exceed -1")

    @property
    def policy_limit(self) -> float:
        return self.coinsurance * (self.max_covered_loss - self.deductible)


def per_loss_moment(sev, terms: PolicyTerms, order: int = 1) -> float:
    """E[(Y^L)^k] for the payment-per-loss variable, k in {1, 2}."""
    if order not in (1, 2):
        raise ValueError("only the first two moments are supported")
    a = terms.coinsurance
    r = terms.inflation
    d = terms.deductible / (1.0 + r)
    u = terms.max_covered_loss / (1.0 + r)

    def lim(point, k=1):
        if math.isinf(point):
            return sev.moment(k)
        if point <= sev.support_lower:
            # nothing of the loss lies below the point
            return point**k
        return sev.limited_moment(point, k)

    e_u = lim(u)
    e_d = lim(d) if terms.deductible > 0 else 0.0
    base = a * (1.0 + r) * (e_u - e_d)
    if terms.franchise:
        # franchise pays the full (inflated, coinsured) loss once it exceeds d
        base += a * terms.deductible * sev.sf(d)
    if order == 1:
        return base

    if terms.franchise:
        raise NotImplementedError("second moment implemented for ordinary deductibles")
    e2_u = lim(u, 2)
    e2_d = lim(d, 2) if terms.deductible > 0 else 0.0
    second = (a * (1.0 + r)) ** 2 * (e2_u - e2_d - 2.0 * d * (e_u - e_d))
    return second


def per_loss_variance(sev, terms: PolicyTerms) -> float:
    m1 = per_loss_moment(sev, terms, 1)
    m2 = per_loss_moment(sev, terms, 2)
    return m2 - m1 * m1


def payment_probability(sev, terms: PolicyTerms) -> float:
    """Probability that a loss produces a payment, Pr(X > d/(1+r))."""
    d = terms.deductible / (1.0 + terms.inflation)
    return sev.sf(d)


def per_payment_moment(sev, terms: PolicyTerms, order: int = 1) -> float:
    """E[(Y^P)^k]: the per-loss moment conditioned on a payment occurring."""
    v = payment_probability(sev, terms)
    if v <= 0.0:
        raise ValueError("per-payment variable undefined: payment probability is zero")
    return per_loss_moment(sev, terms, order) / v


def ler(sev, d: float) -> float:
    """Loss elimination ratio E[X ^ d] / E[X] of an ordinary deductible."""
    mean = sev.mean()
    if math.isinf(mean):
        raise ValueError("loss elimination ratio undefined for infinite mean")
    if d <= 0:
        return 0.0
    if math.isinf(d):
        return 1.0
    return sev.limited_moment(d, 1) / mean


def payment_frequency(freq, v: float):
    """Distribution of the payment count when each loss independently
    becomes a payment with probability v (thinning by Pr(X > d))."""
    if not 0.0 <= v <= 1.0:
        raise ValueError("payment probability must lie in [0, 1]")
    if isinstance(freq, Poisson):
        return Poisson(freq.lam * v)
    if isinstance(freq, NegBinomial):
        return NegBinomial(freq.r, freq.beta * v)
    if isinstance(freq, Binomial):
        return Binomial(freq.m, freq.q * v)
    if isinstance(freq, ZeroModified):
        return ZeroModified(payment_frequency(freq.base, v), freq.p0m)
    raise ValueError(f"thinning not implemented for {type(freq).__name__}")


def exposure_scaling(freq, factor: float):
    """Count distribution when the exposure changes by the given factor,
    via P_new(z) = P_old(z)^factor realized in closed family form."""
    if factor <= 0:
        raise ValueError("exposure factor must be positive")
    if isinstance(freq, Poisson):
        return Poisson(freq.lam * factor)
    if isinstance(freq, NegBinomial):
        return NegBinomial(freq.r * factor, freq.beta)
    if isinstance(freq, Binomial):
        m_new = freq.m * factor
        if abs(m_new - round(m_new)) > 1e-9:
            raise ValueError("unsupported: scaled binomial size is not an integer")
        return Binomial(int(round(m_new)), freq.q)
    raise ValueError(f"exposure scaling not implemented for {type(freq).__name__}")
