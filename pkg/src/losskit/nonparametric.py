"""Nonparametric estimators.

Empirical distribution function, empirical and smoothed quantiles,
kernel density estimates, the ogive for grouped data, and the
product-limit / cumulative-hazard estimators for right-censored,
left-truncated samples with Greenwood's variance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "StepFunction",
    "SurvivalRecord",
    "edf",
    "quantile_def",
    "smoothed_quantile",
    "kde",
    "kde_bandwidth",
    "ogive",
    "ogive_density",
    "kaplan_meier",
    "nelson_aalen",
    "greenwood_variance",
]


@dataclass(frozen=True)
class StepFunction:
    """Right-continuous step function given by breakpoints and values.

    ``values[i]`` is the value on [x[i], x[i+1]); below x[0] the
    function equals ``initial``."""

    x: tuple
    values: tuple
    initial: float = 0.0

    def __call__(self, t: float) -> float:
        idx = np.searchsorted(self.x, t, side="right") - 1
        if idx < 0:
            return self.initial
        return self.values[idx]

    def left_limit(self, t: float) -> float:
        idx = np.searchsorted(self.x, t, side="left") - 1
        if idx < 0:
            return self.initial
        return self.values[idx]


@dataclass(frozen=True)
class SurvivalRecord:
    """Left-truncation point plus either an exact or censored outcome."""

    d: float = 0.0
    x: float | None = None  # exact value
    u: float | None = None  # right-censoring value

    def __post_init__(self):
        if (self.x is None) == (self.u is None):
            raise ValueError("exactly one of x (exact) or u (censored) must be set")
        out = self.x if self.x is not None else self.u
        if out <= self.d:
            raise ValueError("outcome must exceed the truncation point")


def edf(sample) -> StepFunction:
    """Empirical distribution function F_n."""
    xs = sorted(float(v) for v in sample)
    if not xs:
        raise ValueError("sample must be nonempty")
    n = len(xs)
    bx, bv = [], []
    seen = 0
    for v in xs:
        seen += 1
        if bx and bx[-1] == v:
            bv[-1] = seen / n
        else:
            bx.append(v)
            bv.append(seen / n)
    return StepFunction(tuple(bx), tuple(bv))


def quantile_def(F: StepFunction, q: float):
    """All x with F(x-) <= q <= F(x): a point or a closed interval.

    Returns a float when the quantile is unique and an (a, b) tuple when
    a whole interval satisfies the defining inequalities."""
    if not 0.0 < q < 1.0:
        raise ValueError("q must lie in (0, 1)")
    xs = F.x
    hits = []
    for i, x in enumerate(xs):
        before = F.values[i - 1] if i > 0 else F.initial
        if before <= q <= F.values[i]:
            hits.append(x)
    if not hits:
        raise ValueError("no quantile found; is F a distribution function?")
    lo = hits[0]
    # flat stretch at exactly q extends the solution to the next breakpoint
    i = list(xs).index(lo)
    if F.values[i] == q and i + 1 < len(xs):
        return (lo, xs[i + 1])
    return lo


def smoothed_quantile(sample, q: float) -> float:
    """Linear interpolation between order statistics at (n+1)q."""
    xs = sorted(float(v) for v in sample)
    n = len(xs)
    if not 1.0 / (n + 1) <= q <= n / (n + 1):
        raise ValueError("q outside the interpolable range [1/(n+1), n/(n+1)]")
    pos = (n + 1) * q
    j = int(math.floor(pos))
    h = pos - j
    if j >= n:
        return xs[-1]
    return (1.0 - h) * xs[j - 1] + h * xs[j]


_KERNELS = {
    "uniform": lambda u: 0.5 if -1.0 < u <= 1.0 else 0.0,
    "triangle": lambda u: (1.0 - abs(u)) if abs(u) <= 1.0 else 0.0,
    "epanechnikov": lambda u: 0.75 * (1.0 - u * u) if abs(u) <= 1.0 else 0.0,
    "gaussian": lambda u: math.exp(-0.5 * u * u) / math.sqrt(2.0 * math.pi),
}


def kde_bandwidth(sample) -> float:
    """Rule-of-thumb bandwidth 0.9 min(sd, IQR/1.34) n^(-1/5)."""
    xs = np.asarray(sample, dtype=float)
    sd = xs.std(ddof=1) if xs.size > 1 else 1.0
    iqr = np.subtract(*np.percentile(xs, [75, 25]))
    spread = min(sd, iqr / 1.34) if iqr > 0 else sd
    if spread <= 0:
        spread = 1.0
    return 0.9 * spread * xs.size ** (-0.2)


def kde(sample, kernel: str, bandwidth: float, x: float) -> float:
    """Kernel density estimate at a point."""
    if bandwidth <= 0:
        raise ValueError("bandwidth must be positive")
    try:
        w = _KERNELS[kernel]
    except KeyError:
        raise ValueError(f"unknown kernel {kernel!r}") from None
    xs = [float(v) for v in sample]
    n = len(xs)
    return sum(w((x - xi) / bandwidth) for xi in xs) / (n * bandwidth)


def ogive(groups, x: float) -> float:
    """Linear interpolation of F_n between group boundaries.

    ``groups`` is a list of (lower, upper, count) intervals partitioning
    [c0, ck]."""
    groups = sorted(groups)
    n = sum(c for _, _, c in groups)
    c0 = groups[0][0]
    ck = groups[-1][1]
    if not c0 <= x <= ck:
        raise ValueError("argument outside the grouped range")
    cum = 0.0
    for lo, hi, cnt in groups:
        if x <= hi:
            frac = (x - lo) / (hi - lo)
            return (cum + frac * cnt) / n
        cum += cnt
    return 1.0


def ogive_density(groups, x: float) -> float:
    """Slope of the ogive (grouped-data density) at x."""
    groups = sorted(groups)
    n = sum(c for _, _, c in groups)
    for lo, hi, cnt in groups:
        if lo <= x < hi:
            return cnt / (n * (hi - lo))
    raise ValueError("argument outside the grouped range")


def _risk_table(records):
    """Distinct uncensored event times with event counts and risk sets."""
    xs = [r.x for r in records if r.x is not None]
    us = [r.u for r in records if r.u is not None]
    ds = [r.d for r in records]
    times = sorted(set(xs))
    table = []
    for t in times:
        s = sum(1 for v in xs if v == t)
        risk = (
            sum(1 for v in xs if v >= t)
            + sum(1 for v in us if v >= t)
            - sum(1 for v in ds if v >= t)
        )
        table.append((t, s, risk))
    return table


def kaplan_meier(records) -> StepFunction:
    """Product-limit estimator of the survival function."""
    table = _risk_table(records)
    if not table:
        raise ValueError("no uncensored observations")
    bx, bv = [], []
    s = 1.0
    for t, sj, rj in table:
        if rj <= 0:
            raise ValueError(f"degenerate risk set at event time {t}")
        s *= 1.0 - sj / rj
        bx.append(t)
        bv.append(s)
    return StepFunction(tuple(bx), tuple(bv), initial=1.0)


def nelson_aalen(records):
    """Cumulative-hazard estimator and the implied survival function."""
    table = _risk_table(records)
    if not table:
        raise ValueError("no uncensored observations")
    bx, hv, sv = [], [], []
    h = 0.0
    for t, sj, rj in table:
        if rj <= 0:
            raise ValueError(f"degenerate risk set at event time {t}")
        h += sj / rj
        bx.append(t)
        hv.append(h)
        sv.append(math.exp(-h))
    hazard = StepFunction(tuple(bx), tuple(hv), initial=0.0)
    survival = StepFunction(tuple(bx), tuple(sv), initial=1.0)
    return hazard, survival


def greenwood_variance(records, x: float) -> float:
    """Greenwood's estimate of Var(S_hat(x)) for the product-limit fit."""
    table = _risk_table(records)
    surv = kaplan_meier(records)
    total = 0.0
    for t, sj, rj in table:
        if t > x:
            break
        if rj == sj:
            return math.inf
        total += sj / (rj * (rj - sj))
    return surv(x) ** 2 * total
