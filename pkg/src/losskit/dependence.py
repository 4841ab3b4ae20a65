"""Dependence measures and bivariate copulas.

Scalar association measures (Pearson, Spearman with and without tied
ranks, Kendall, Blomqvist), the odds ratio with Yule transforms,
two-way independence tests, Archimedean copula evaluation and
one-parameter fitting, Frechet bounds, copula-implied rank
correlations, and tail concentration functions.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = [
    "pearson",
    "spearman",
    "spearman_tied",
    "kendall",
    "blomqvist",
    "association",
    "pseudo_observations",
    "odds_ratio",
    "independence_tests",
    "IndependenceCopula",
    "FrankCopula",
    "ClaytonCopula",
    "GumbelCopula",
    "frechet_bounds",
    "copula_rho_tau",
    "tail_concentration",
    "fit_archimedean",
]


# ---------------------------------------------------------------- measures
def _ranks(values):
    """Average ranks (1-based) with ties sharing their mean rank."""
    order = np.argsort(values, kind="mergesort")
    ranks = np.empty(len(values))
    i = 0
    vals = np.asarray(values)
    while i < len(values):
        j = i
        while j + 1 < len(values) and vals[order[j + 1]] == vals[order[i]]:
            j += 1
        avg = 0.5 * (i + j) + 1.0
        for k in range(i, j + 1):
            ranks[order[k]] = avg
        i = j + 1
    return ranks


def pearson(x, y) -> float:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    xc, yc = x - x.mean(), y - y.mean()
    den = math.sqrt(float(xc @ xc) * float(yc @ yc))
    if den == 0.0:
        raise ValueError("undefined coefficient: zero variance")
    return float(xc @ yc) / den


def spearman(x, y) -> float:
    """Product-moment correlation of the (average) ranks."""
    return pearson(_ranks(x), _ranks(y))


def spearman_tied(table) -> float:
    """Spearman's rho for a two-way table of ordinal counts, using the
    average rank of each category."""
    table = np.asarray(table, dtype=float)
    n = table.sum()
    row_tot = table.sum(axis=1)
    col_tot = table.sum(axis=0)
    r_bar = (n + 1.0) / 2.0

    def avg_ranks(margins):
        out, before = [], 0.0
        for m in margins:
            out.append(before + 0.5 * (1.0 + m))
            before += m
        return out

    r1 = avg_ranks(row_tot)
    r2 = avg_ranks(col_tot)
    num = sum(
        table[s, t] * (r1[s] - r_bar) * (r2[t] - r_bar)
        for s in range(table.shape[0])
        for t in range(table.shape[1])
    )
    d1 = sum(m * (r - r_bar) ** 2 for m, r in zip(row_tot, r1))
    d2 = sum(m * (r - r_bar) ** 2 for m, r in zip(col_tot, r2))
    if d1 <= 0 or d2 <= 0:
        raise ValueError("undefined coefficient: a margin is constant")
    return num / math.sqrt(d1 * d2)


def kendall(x, y) -> float:
    """Kendall's tau with sgn(0) = 0 ties, counted in O(n log n)."""
    n = len(x)
    if n < 2:
        raise ValueError("need at least two pairs")
    idx = sorted(range(n), key=lambda i: (x[i], y[i]))
    xs = [x[i] for i in idx]
    ys = [y[i] for i in idx]

    def tie_pairs(sorted_vals):
        total, run = 0, 1
        for a, b in zip(sorted_vals, sorted_vals[1:]):
            if a == b:
                run += 1
            else:
                total += run * (run - 1) // 2
                run = 1
        total += run * (run - 1) // 2
        return total

    n0 = n * (n - 1) // 2
    ties_x = tie_pairs(xs)
    ties_y = tie_pairs(sorted(ys))
    ties_xy = tie_pairs(sorted(zip(xs, ys)))

    # merge sort counting swaps of y within the x-ordering
    arr = ys[:]
    tmp = [0.0] * n
    swaps = 0

    def merge_count(lo, hi):
        nonlocal swaps
        if hi - lo <= 1:
            return
        mid = (lo + hi) // 2
        merge_count(lo, mid)
        merge_count(mid, hi)
        i, j, k = lo, mid, lo
        while i < mid and j < hi:
            if arr[i] <= arr[j]:
                tmp[k] = arr[i]
                i += 1
            else:
                tmp[k] = arr[j]
                swaps += mid - i
                j += 1
            k += 1
        while i < mid:
            tmp[k] = arr[i]
            i += 1
            k += 1
        while j < hi:
            tmp[k] = arr[j]
            j += 1
            k += 1
        arr[lo:hi] = tmp[lo:hi]

    merge_count(0, n)
    discordant = swaps
    concordant_minus_discordant = n0 - ties_x - ties_y + ties_xy - 2 * discordant
    return 2.0 * concordant_minus_discordant / (n * (n - 1))


def blomqvist(x, y) -> float:
    """Median concordance coefficient from ranks."""
    n = len(x)
    rx, ry = _ranks(x), _ranks(y)
    mid = (n + 1.0) / 2.0
    return 2.0 / n * sum(
        1 for i in range(n) if (rx[i] - mid) * (ry[i] - mid) >= 0
    ) - 1.0


_MEASURES = {
    "pearson": pearson,
    "spearman": spearman,
    "kendall": kendall,
    "blomqvist": blomqvist,
}


def association(x, y, measure: str) -> float:
    if len(x) != len(y) or len(x) < 2:
        raise ValueError("need at least two aligned pairs")
    try:
        fn = _MEASURES[measure]
    except KeyError:
        raise ValueError(f"unknown measure {measure!r}") from None
    return fn(x, y)


def pseudo_observations(x):
    """Ranks rescaled by (n+1) so values stay strictly inside (0, 1)."""
    n = len(x)
    return _ranks(x) / (n + 1.0)


def odds_ratio(n00, n01, n10, n11):
    """(odds ratio, Yule Q, Yule Y) from 2x2 counts."""
    if min(n00 + n01, n10 + n11, n00 + n10, n01 + n11) <= 0:
        raise ValueError("all margins must be positive")
    if n01 == 0 or n10 == 0:
        return math.inf, 1.0, 1.0
    orr = (n00 * n11) / (n01 * n10)
    q = (orr - 1.0) / (orr + 1.0)
    y = (math.sqrt(orr) - 1.0) / (math.sqrt(orr) + 1.0)
    return orr, q, y


def independence_tests(table):
    """(Pearson chi-square, likelihood-ratio G^2, dof) for a two-way
    table of counts; zero cells contribute 0 to the G^2 sum."""
    t = np.asarray(table, dtype=float)
    n = t.sum()
    row = t.sum(axis=1, keepdims=True)
    col = t.sum(axis=0, keepdims=True)
    if np.any(row <= 0) or np.any(col <= 0):
        raise ValueError("margins must be positive")
    expected = row @ col / n
    chi2 = float(((t - expected) ** 2 / expected).sum())
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(t > 0, t * np.log(t / expected), 0.0)
    g2 = 2.0 * float(terms.sum())
    dof = (t.shape[0] - 1) * (t.shape[1] - 1)
    return chi2, g2, dof


# ---------------------------------------------------------------- copulas
class Copula:
    theta: float = 0.0

    def cdf(self, u1: float, u2: float) -> float:
        raise NotImplementedError

    def pdf(self, u1: float, u2: float) -> float:
        raise NotImplementedError

    def sample(self, n: int, rng) -> np.ndarray:
        raise NotImplementedError


class IndependenceCopula(Copula):
    def cdf(self, u1, u2):
        return u1 * u2

    def pdf(self, u1, u2):
        return 1.0

    def sample(self, n, rng):
        return rng.random((n, 2))


class FrankCopula(Copula):
    """C(u,v) = -(1/theta) log(1 + (e^{-theta u}-1)(e^{-theta v}-1)/(e^{-theta}-1))."""

    def __init__(self, theta: float):
        if theta == 0.0:
            raise ValueError("theta must be nonzero; use IndependenceCopula")
        self.theta = theta

    def cdf(self, u1, u2):
        t = self.theta
        em1 = math.expm1(-t)
        num = math.expm1(-t * u1) * math.expm1(-t * u2)
        return -math.log1p(num / em1) / t

    def pdf(self, u1, u2):
        t = self.theta
        em1 = math.expm1(-t)
        den = em1 + math.expm1(-t * u1) * math.expm1(-t * u2)
        return -t * em1 * math.exp(-t * (u1 + u2)) / (den * den)

    def sample(self, n, rng):
        t = self.theta
        u = rng.random(n)
        w = rng.random(n)
        expu = np.exp(-t * u)
        u2 = -np.log1p(w * np.expm1(-t) / (expu * (1.0 - w) + w)) / t
        return np.column_stack([u, u2])


class ClaytonCopula(Copula):
    """C(u,v) = max(u^{-theta} + v^{-theta} - 1, 0)^{-1/theta}."""

    def __init__(self, theta: float):
        if theta < -1.0 or theta == 0.0:
            raise ValueError("theta must lie in [-1, inf) excluding 0")
        self.theta = theta

    def cdf(self, u1, u2):
        t = self.theta
        if u1 <= 0.0 or u2 <= 0.0:
            return 0.0
        base = u1 ** (-t) + u2 ** (-t) - 1.0
        if base <= 0.0:
            return 0.0
        return base ** (-1.0 / t)

    def pdf(self, u1, u2):
        t = self.theta
        base = u1 ** (-t) + u2 ** (-t) - 1.0
        if base <= 0.0:
            return 0.0
        return (
            (1.0 + t)
            * (u1 * u2) ** (-t - 1.0)
            * base ** (-2.0 - 1.0 / t)
        )

    def sample(self, n, rng):
        if self.theta <= 0:
            raise NotImplementedError("sampling implemented for theta > 0")
        t = self.theta
        u = rng.random(n)
        w = rng.random(n)
        u2 = (u ** (-t) * (w ** (-t / (1.0 + t)) - 1.0) + 1.0) ** (-1.0 / t)
        return np.column_stack([u, u2])


class GumbelCopula(Copula):
    """C(u,v) = exp(-[(-log u)^theta + (-log v)^theta]^{1/theta})."""

    def __init__(self, theta: float):
        if theta < 1.0:
            raise ValueError("theta must be at least 1")
        self.theta = theta

    def cdf(self, u1, u2):
        if u1 <= 0.0 or u2 <= 0.0:
            return 0.0
        if u1 >= 1.0:
            return u2
        if u2 >= 1.0:
            return u1
        t = self.theta
        s = (-math.log(u1)) ** t + (-math.log(u2)) ** t
        return math.exp(-(s ** (1.0 / t)))

    def pdf(self, u1, u2):
        t = self.theta
        x = -math.log(u1)
        y = -math.log(u2)
        s = x**t + y**t
        c = math.exp(-(s ** (1.0 / t)))
        return (
            c
            / (u1 * u2)
            * s ** (2.0 / t - 2.0)
            * (x * y) ** (t - 1.0)
            * (1.0 + (t - 1.0) * s ** (-1.0 / t))
        )

    def sample(self, n, rng):
        # positive stable frailty with index 1/theta
        t = self.theta
        alpha = 1.0 / t
        theta_u = rng.uniform(0.0, math.pi, n)
        w = rng.exponential(1.0, n)
        v = (
            np.sin(alpha * theta_u)
            / np.sin(theta_u) ** (1.0 / alpha)
            * (np.sin((1.0 - alpha) * theta_u) / w) ** ((1.0 - alpha) / alpha)
        )
        e = rng.exponential(1.0, (n, 2))
        return np.exp(-((e / v[:, None]) ** alpha))


def frechet_bounds(u1: float, u2: float):
    """(lower, upper) pointwise bounds on any copula."""
    return max(u1 + u2 - 1.0, 0.0), min(u1, u2)


_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(64)
_GL_X = 0.5 * (_GL_NODES + 1.0)  # mapped to (0, 1)
_GL_W = 0.5 * _GL_WEIGHTS


def copula_rho_tau(cop: Copula):
    """(Spearman rho, Kendall tau) by 64x64 tensor Gauss-Legendre:
    rho = 12 iint (C - uv), tau = 4 iint C dC - 1."""
    rho = 0.0
    tau = 0.0
    for wi, ui in zip(_GL_W, _GL_X):
        for wj, vj in zip(_GL_W, _GL_X):
            c = cop.cdf(ui, vj)
            rho += wi * wj * (c - ui * vj)
            tau += wi * wj * c * cop.pdf(ui, vj)
    return 12.0 * rho, 4.0 * tau - 1.0


def tail_concentration(cop: Copula, z: float):
    """(L(z), R(z)): joint lower- and upper-tail conditional
    probabilities at level z."""
    if not 0.0 < z < 1.0:
        raise ValueError("z must lie in (0, 1)")
    c = cop.cdf(z, z)
    return c / z, (1.0 - 2.0 * z + c) / (1.0 - z)


_COPULA_FAMILIES = {
    "frank": (FrankCopula, (-50.0, 50.0)),
    "clayton": (ClaytonCopula, (1e-6, 50.0)),
    "gumbel": (GumbelCopula, (1.0, 50.0)),
}


def fit_archimedean(u, v, family: str, flat_tol: float = 1e-4):
    """One-parameter maximum likelihood on pseudo-observations.

    Golden-section search on the copula log likelihood; returns
    (theta hat, loglik, flags).  A near-flat profile around the optimum
    is flagged as a wide confidence interval."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if np.any((u <= 0) | (u >= 1) | (v <= 0) | (v >= 1)):
        raise ValueError("pseudo-observations must lie strictly inside (0, 1)")
    try:
        ctor, (lo, hi) = _COPULA_FAMILIES[family]
    except KeyError:
        raise ValueError(f"unknown Archimedean family {family!r}") from None

    def negll(theta):
        if family == "frank" and abs(theta) < 1e-8:
            return 0.0  # independence limit
        try:
            cop = ctor(theta)
        except ValueError:
            return math.inf
        total = 0.0
        for ui, vi in zip(u, v):
            d = cop.pdf(ui, vi)
            if not d > 0.0:
                return math.inf
            total += math.log(d)
        return -total

    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = negll(c), negll(d)
    for _ in range(200):
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = negll(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = negll(d)
        if abs(b - a) < 1e-10 * (1.0 + abs(a)):
            break
    theta = 0.5 * (a + b)
    ll = -negll(theta)
    flags = []
    span = max(abs(theta), 1.0) * 0.5
    if abs(negll(theta + span) - negll(theta)) < flat_tol * max(abs(ll), 1.0):
        flags.append("flat likelihood: wide confidence interval")
    return theta, ll, flags
