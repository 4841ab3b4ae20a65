"""Model selection and validation.

Goodness-of-fit statistics, chi-square tests for count fits with an
optional minimum-expected-count merge rule, a minimum-distance cell
fitter, information criteria, the likelihood ratio test, pp/qq point
series, K-fold cross-validation, and the ordered Lorenz curve with its
Gini index.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "gof_statistics",
    "chi_square_gof",
    "min_chisq_fit",
    "information_criteria",
    "lrt",
    "pp_points",
    "qq_points",
    "kfold_cv",
    "CvReport",
    "ordered_lorenz",
    "gini_index",
    "classic_lorenz",
]


def gof_statistics(sample, fitted_cdf):
    """Kolmogorov-Smirnov, Cramer-von Mises, and Anderson-Darling
    statistics comparing a sample with a fitted distribution.

    AD is reported as nan (with the other two intact) when some fitted
    probability hits 0 or 1, where its logarithms are undefined."""
    xs = sorted(float(v) for v in sample)
    n = len(xs)
    if n == 0:
        raise ValueError("sample must be nonempty")
    F = [fitted_cdf(x) for x in xs]

    d_plus = max(abs((i + 1) / n - F[i]) for i in range(n))
    d_minus = max(abs(F[i] - i / n) for i in range(n))
    ks = max(d_plus, d_minus)

    cvm = 1.0 / (12.0 * n) + sum(
        (F[i] - (2 * i + 1) / (2.0 * n)) ** 2 for i in range(n)
    )

    if any(f <= 0.0 or f >= 1.0 for f in F):
        ad = math.nan
    else:
        ad = -n - sum(
            (2 * i + 1) * (math.log(F[i]) + math.log(1.0 - F[n - 1 - i]))
            for i in range(n)
        ) / n
    return ks, cvm, ad


def _merge_cells(observed, probs, min_expected, n):
    """Merge cells from the right until every expected count reaches the
    floor, keeping as many cells as that constraint allows."""
    obs = list(observed)
    prs = list(probs)
    while len(obs) > 1 and n * prs[-1] < min_expected:
        obs[-2] += obs[-1]
        prs[-2] += prs[-1]
        obs.pop()
        prs.pop()
    return obs, prs


def chi_square_gof(observed, probs, n_fitted_params, min_expected=None):
    """Pearson chi-square statistic over cells with fitted probabilities.

    ``min_expected`` enables right-tail merging so each expected count
    reaches the given floor.  Returns (statistic, dof, cells_used)."""
    observed = list(observed)
    probs = list(probs)
    if len(observed) != len(probs):
        raise ValueError("observed and probs must align")
    n = sum(observed)
    if abs(sum(probs) - 1.0) > 1e-8:
        raise ValueError("cell probabilities must sum to 1")
    if min_expected is not None:
        observed, probs = _merge_cells(observed, probs, min_expected, n)
    if len(observed) < 2:
        raise ValueError("fewer than 2 cells after merging")
    stat = sum((m - n * p) ** 2 / (n * p) for m, p in zip(observed, probs))
    dof = len(observed) - 1 - n_fitted_params
    return stat, dof, len(observed)


def min_chisq_fit(observed, cell_probs_fn, bracket=(1e-9, 10.0)):
    """One-parameter minimum-distance cell fit.

    Minimizes the sum of squared differences between observed and fitted
    cell probabilities by golden-section search on the bracket;
    ``cell_probs_fn(param)`` returns the model cell probabilities."""
    observed = list(observed)
    n = sum(observed)
    op = [m / n for m in observed]

    def distance(param):
        probs = cell_probs_fn(param)
        return sum((o - p) ** 2 for o, p in zip(op, probs))

    lo, hi = bracket
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = distance(c), distance(d)
    for _ in range(300):
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = distance(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = distance(d)
        if abs(b - a) < 1e-13 * (1.0 + abs(a)):
            break
    return 0.5 * (a + b)


def information_criteria(loglik, p, n):
    """(AIC, BIC) for a model with p parameters fit to n observations."""
    aic = -2.0 * loglik + 2.0 * p
    bic = -2.0 * loglik + p * math.log(n)
    return aic, bic


def lrt(loglik_full, loglik_reduced, dof):
    """Likelihood ratio statistic for nested models with dof extra params."""
    if dof < 1:
        raise ValueError("dof must be at least 1")
    if loglik_full < loglik_reduced - 1e-12:
        raise ValueError("nesting violation: full model cannot fit worse")
    return 2.0 * (loglik_full - loglik_reduced), dof


def pp_points(sample, fitted_cdf):
    """(F_n(x_(i)), F(x_(i))) pairs for a probability-probability plot."""
    xs = sorted(float(v) for v in sample)
    n = len(xs)
    return [((i + 1) / n, fitted_cdf(x)) for i, x in enumerate(xs)]


def qq_points(sample, fitted_quantile):
    """(x_(i), F^{-1}(i/(n+1))) pairs for a quantile-quantile plot."""
    xs = sorted(float(v) for v in sample)
    n = len(xs)
    return [(x, fitted_quantile((i + 1) / (n + 1))) for i, x in enumerate(xs)]


@dataclass
class CvReport:
    """Cumulative out-of-sample score from K-fold cross-validation."""

    total: float
    fold_scores: list
    seed: int
    failed_folds: list = field(default_factory=list)

    @property
    def n_folds(self):
        return len(self.fold_scores) + len(self.failed_folds)


def kfold_cv(data, k, fit_predict, distance="squared", seed=0) -> CvReport:
    """K-fold cross-validation with a seeded shuffle.

    ``fit_predict(train)`` returns a callable prediction function that is
    evaluated on each held-out point; fold scores are summed with the
    chosen distance.  A fold whose fit raises is recorded as failed."""
    data = list(data)
    n = len(data)
    if not 2 <= k <= n:
        raise ValueError("need 2 <= k <= n")
    if distance == "squared":
        dist = lambda y, g: (y - g) ** 2
    elif distance == "absolute":
        dist = lambda y, g: abs(y - g)
    else:
        raise ValueError("distance must be 'squared' or 'absolute'")
    rng = np.random.default_rng(seed)
    order = rng.permutation(n)
    folds = np.array_split(order, k)
    scores, failed = [], []
    for f_idx, hold in enumerate(folds):
        hold_set = set(int(i) for i in hold)
        train = [data[i] for i in range(n) if i not in hold_set]
        test = [data[i] for i in hold_set]
        try:
            predict = fit_predict(train)
            scores.append(sum(dist(y, predict(y)) for y in test))
        except Exception as err:  # noqa: BLE001 - fold failure is reported, not fatal
            failed.append((f_idx, repr(err)))
    return CvReport(total=sum(scores), fold_scores=scores, seed=seed, failed_folds=failed)


def ordered_lorenz(losses, premiums, relativities):
    """Ordered Lorenz curve: (premium df, loss df) evaluated at the
    distinct relativities, sorted ascending (ties keep input order)."""
    n = len(losses)
    if not (len(premiums) == len(relativities) == n) or n == 0:
        raise ValueError("inputs must align and be nonempty")
    if any(p <= 0 for p in premiums):
        raise ValueError("premiums must be positive")
    order = sorted(range(n), key=lambda i: (relativities[i], i))
    tot_p = float(sum(premiums))
    tot_y = float(sum(losses))
    if tot_y == 0:
        raise ValueError("Gini undefined: all losses zero")
    pts = [(0.0, 0.0)]
    cum_p = cum_y = 0.0
    for i in order:
        cum_p += premiums[i]
        cum_y += losses[i]
        pts.append((cum_p / tot_p, cum_y / tot_y))
    return pts


def gini_index(curve) -> float:
    """Twice the area between the curve and the 45-degree line."""
    total = 0.0
    for (a0, b0), (a1, b1) in zip(curve, curve[1:]):
        total += (a1 - a0) * (b1 + b0)
    return 1.0 - total


def classic_lorenz(losses):
    """Classic Lorenz curve: proportion of policies vs proportion of losses,
    ordered by loss size."""
    ys = sorted(float(v) for v in losses)
    n = len(ys)
    tot = sum(ys)
    if tot == 0:
        raise ValueError("Gini undefined: all losses zero")
    pts = [(0.0, 0.0)]
    cum = 0.0
    for i, y in enumerate(ys):
        cum += y
        pts.append(((i + 1) / n, cum / tot))
    return pts
