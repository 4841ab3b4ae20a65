"""Credibility theory.

Limited-fluctuation (full and partial) standards, Buhlmann and
Buhlmann-Straub estimators, nonparametric and semiparametric estimation
of the structure parameters, balanced complements of credibility, and
conjugate Bayesian updating with the exact-credibility identities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .special import norm_ppf

__all__ = [
    "CredStandard",
    "full_standard",
    "exposures_for_full",
    "partial_z",
    "buhlmann",
    "buhlmann_straub",
    "empirical_epv_vhm",
    "empirical_epv_vhm_straub",
    "semiparametric_poisson",
    "balanced_complement",
    "GammaPoissonPrior",
    "BetaBinomialPrior",
]


@dataclass(frozen=True)
class CredStandard:
    """Accuracy fraction k and confidence p defining the standard."""

    k: float
    p: float

    def __post_init__(self):
        if self.k <= 0 or not 0.0 < self.p < 1.0:
            raise ValueError("need k > 0 and p in (0, 1)")

    @property
    def y_p(self) -> float:
        return norm_ppf((self.p + 1.0) / 2.0)

    @property
    def lambda_kp(self) -> float:
        return (self.y_p / self.k) ** 2


def full_standard(kind: str, std: CredStandard, freq_ratio: float = 1.0, sev_cv2: float = 0.0):
    """Expected claim count for full credibility.

    kind 'frequency' uses the variance-to-mean ratio of the claim count;
    'severity' uses the squared coefficient of variation of claim size;
    'aggregate' adds the two.  Returns (raw value, ceiling)."""
    lam = std.lambda_kp
    if kind == "frequency":
        value = lam * freq_ratio
    elif kind == "severity":
        value = lam * sev_cv2
    elif kind == "aggregate":
        value = lam * (freq_ratio + sev_cv2)
    else:
        raise ValueError(f"unknown standard kind {kind!r}")
    return value, math.ceil(value - 1e-9)


def exposures_for_full(standard: float, rate: float):
    """Exposures carrying the full-credibility claim standard at the
    given claims-per-exposure rate; returns (raw, ceiling)."""
    if rate <= 0:
        raise ValueError("claims rate must be positive")
    value = standard / rate
    return value, math.ceil(value - 1e-9)


def partial_z(n: float, n0: float) -> float:
    """Limited-fluctuation partial credibility sqrt(n / n0), capped at 1."""
    if n < 0 or n0 <= 0:
        raise ValueError("need n >= 0 and n0 > 0")
    return min(1.0, math.sqrt(n / n0))


def buhlmann(n: float, xbar: float, mu: float, epv: float, vhm: float):
    """(K, Z, estimate) with K = EPV/VHM and Z = n/(n+K)."""
    if vhm <= 0:
        raise ValueError("credibility undefined: variance of hypothetical means not positive")
    k = epv / vhm
    z = n / (n + k) if n > 0 else 0.0
    return k, z, z * xbar + (1.0 - z) * mu


def buhlmann_straub(exposures, losses_per_exposure, mu: float, epv: float, vhm: float):
    """(K, Z, per-exposure estimate) with exposure m replacing the
    period count; caller scales by the next-period exposure."""
    if any(m <= 0 for m in exposures):
        raise ValueError("exposures must be positive")
    if vhm <= 0:
        raise ValueError("credibility undefined: variance of hypothetical means not positive")
    m = sum(exposures)
    xbar = sum(mi * xi for mi, xi in zip(exposures, losses_per_exposure)) / m
    k = epv / vhm
    z = m / (m + k)
    return k, z, z * xbar + (1.0 - z) * mu


def empirical_epv_vhm(histories):
    """Nonparametric structure estimates for the equal-exposure model.

    ``histories`` is a list of per-risk loss sequences, all the same
    length.  Returns (EPV hat, VHM hat, flag) where the flag marks a
    negative variance estimate (never silently clipped)."""
    r = len(histories)
    if r < 2:
        raise ValueError("need at least two risks")
    n = len(histories[0])
    if n < 2 or any(len(h) != n for h in histories):
        raise ValueError("need >= 2 equal-length periods per risk")
    means = [sum(h) / n for h in histories]
    s2 = [sum((x - mb) ** 2 for x in h) / (n - 1) for h, mb in zip(histories, means)]
    epv = sum(s2) / r
    grand = sum(means) / r
    vhm = sum((mb - grand) ** 2 for mb in means) / (r - 1) - epv / n
    return epv, vhm, vhm < 0


def empirical_epv_vhm_straub(exposures, losses):
    """Nonparametric structure estimates with varying exposures.

    ``exposures[i][j]`` and ``losses[i][j]`` give risk i's exposure and
    total loss in period j (periods with zero exposure are dropped).
    Returns (EPV hat, VHM hat, per-risk means, grand mean, flag)."""
    r = len(exposures)
    if r < 2 or len(losses) != r:
        raise ValueError("need at least two risks with matching losses")
    m_i, xbar_i, n_i = [], [], []
    num_epv = 0.0
    for exp_row, loss_row in zip(exposures, losses):
        pairs = [(m, y) for m, y in zip(exp_row, loss_row) if m > 0]
        if not pairs:
            raise ValueError("each risk needs at least one exposed period")
        mi = sum(m for m, _ in pairs)
        xb = sum(y for _, y in pairs) / mi
        num_epv += sum(m * (y / m - xb) ** 2 for m, y in pairs)
        m_i.append(mi)
        xbar_i.append(xb)
        n_i.append(len(pairs))
    dof = sum(n - 1 for n in n_i)
    if dof < 1:
        raise ValueError("no within-risk degrees of freedom")
    epv = num_epv / dof
    m = sum(m_i)
    grand = sum(mi * xb for mi, xb in zip(m_i, xbar_i)) / m
    num_vhm = sum(mi * (xb - grand) ** 2 for mi, xb in zip(m_i, xbar_i)) - (r - 1) * epv
    den_vhm = m - sum(mi * mi for mi in m_i) / m
    vhm = num_vhm / den_vhm
    return epv, vhm, xbar_i, grand, vhm < 0


def semiparametric_poisson(histories=None, tallies=None, n_periods=None):
    """Structure estimates under a Poisson process assumption.

    Either ``histories`` (per-risk count sequences) or grouped
    ``tallies`` = list of (total claims over the horizon, number of
    policies) with ``n_periods`` per policy.  EPV hat equals the overall
    per-period mean; VHM hat subtracts EPV/n from the variance of
    per-risk means.  Returns (EPV hat, VHM hat, flag)."""
    if histories is not None:
        r = len(histories)
        n = len(histories[0])
        means = [sum(h) / n for h in histories]
        grand = sum(means) / r
        epv = grand
        var_means = sum((mb - grand) ** 2 for mb in means) / (r - 1)
        vhm = var_means - epv / n
        return epv, vhm, vhm < 0
    if tallies is None or n_periods is None:
        raise ValueError("supply histories, or tallies with n_periods")
    r = sum(cnt for _, cnt in tallies)
    means = [(total / n_periods, cnt) for total, cnt in tallies]
    grand = sum(mb * cnt for mb, cnt in means) / r
    epv = grand
    var_means = sum(cnt * (mb - grand) ** 2 for mb, cnt in means) / (r - 1)
    vhm = var_means - epv / n_periods
    return epv, vhm, vhm < 0


def balanced_complement(z_values, xbars):
    """Complement of credibility that balances the weighted estimates:
    mu hat = sum(Z_i Xbar_i) / sum(Z_i)."""
    tz = sum(z_values)
    if tz <= 0:
        raise ValueError("total credibility weight must be positive")
    return sum(z * x for z, x in zip(z_values, xbars)) / tz


@dataclass(frozen=True)
class GammaPoissonPrior:
    """Gamma prior (shape alpha, rate) on a Poisson mean."""

    alpha: float
    rate: float

    def __post_init__(self):
        if self.alpha <= 0 or self.rate <= 0:
            raise ValueError("hyperparameters must be positive")

    def prior_mean(self):
        return self.alpha / self.rate

    def update(self, counts):
        return GammaPoissonPrior(self.alpha + sum(counts), self.rate + len(counts))

    def predictive_mean(self, counts=()):
        post = self.update(counts)
        return post.alpha / post.rate

    def buhlmann_k(self):
        # exact credibility: K equals the prior rate
        return self.rate


@dataclass(frozen=True)
class BetaBinomialPrior:
    """Beta prior on a Bernoulli/binomial success probability."""

    alpha: float
    beta: float

    def __post_init__(self):
        if self.alpha <= 0 or self.beta <= 0:
            raise ValueError("hyperparameters must be positive")

    def prior_mean(self):
        return self.alpha / (self.alpha + self.beta)

    def update(self, successes, trials):
        return BetaBinomialPrior(self.alpha + successes, self.beta + trials - successes)

    def posterior_mean(self, successes, trials):
        post = self.update(successes, trials)
        return post.prior_mean()

    def buhlmann_k(self):
        # exact credibility: K equals alpha + beta
        return self.alpha + self.beta
