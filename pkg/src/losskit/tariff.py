"""Multiplicative tariff via Poisson regression with exposure offsets.

Cell encoding into base-level indicators, Newton-Raphson solution of
the score equations, the information matrix and standard errors,
relativity extraction, and rate lookup for new cells.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = ["TariffData", "GlmFit", "encode", "fit_poisson", "rate"]


@dataclass(frozen=True)
class FactorSpec:
    name: str
    levels: tuple
    base: object


@dataclass
class TariffData:
    """Design matrix with offsets built from tariff cells."""

    X: np.ndarray
    offset: np.ndarray
    y: np.ndarray
    columns: list
    factors: list


def _factor_specs(factor_levels, base_levels):
    specs = []
    for name, levels in factor_levels.items():
        base = base_levels[name] if base_levels and name in base_levels else levels[0]
        if base not in levels:
            raise ValueError(f"base level {base!r} not among levels of {name!r}")
        specs.append(FactorSpec(name, tuple(levels), base))
    return specs


def encode(cells, factor_levels, base_levels=None, interactions=()) -> TariffData:
    """Indicator encoding of tariff cells.

    ``cells`` is a list of dicts with one entry per rating factor plus
    'exposure' and 'claims'.  One indicator is created per non-base
    level per factor (the base cell encodes to all zeros), plus an
    intercept, plus optional pairwise interaction columns given as
    (factor_a, factor_b) names."""
    specs = _factor_specs(factor_levels, base_levels)
    columns = ["intercept"]
    for s in specs:
        for lev in s.levels:
            if lev != s.base:
                columns.append(f"{s.name}={lev}")
    for fa, fb in interactions:
        sa = next(s for s in specs if s.name == fa)
        sb = next(s for s in specs if s.name == fb)
        for la in sa.levels:
            if la == sa.base:
                continue
            for lb in sb.levels:
                if lb == sb.base:
                    continue
                columns.append(f"{fa}={la}:{fb}={lb}")
    rows, offs, ys = [], [], []
    for cell in cells:
        m = float(cell["exposure"])
        if m <= 0:
            raise ValueError("cells with zero exposure are rejected")
        vec = {c: 0.0 for c in columns}
        vec["intercept"] = 1.0
        for s in specs:
            lev = cell[s.name]
            if lev not in s.levels:
                raise ValueError(f"unseen level {lev!r} for factor {s.name!r}")
            if lev != s.base:
                vec[f"{s.name}={lev}"] = 1.0
        for fa, fb in interactions:
            key = f"{fa}={cell[fa]}:{fb}={cell[fb]}"
            if key in vec:
                vec[key] = 1.0
        rows.append([vec[c] for c in columns])
        offs.append(math.log(m))
        ys.append(float(cell["claims"]))
    return TariffData(
        X=np.array(rows),
        offset=np.array(offs),
        y=np.array(ys),
        columns=columns,
        factors=specs,
    )


@dataclass
class GlmFit:
    """Fitted multiplicative tariff."""

    coefficients: dict
    observed_info: np.ndarray
    cov: np.ndarray
    std_errors: dict
    loglik: float
    iterations: int
    converged: bool
    factors: list = field(default_factory=list)

    @property
    def base_value(self) -> float:
        return math.exp(self.coefficients["intercept"])

    def relativities(self) -> dict:
        """Per-column multiplicative factors, base value under 'intercept'."""
        return {k: math.exp(v) for k, v in self.coefficients.items()}


def fit_poisson(data: TariffData, score_tol: float = 1e-10, max_iter: int = 100) -> GlmFit:
    """Newton-Raphson on the Poisson score with a log exposure offset.

    The fitted totals preserve the observed claim count (the intercept
    row of the score equations)."""
    X, y, off = data.X, data.y, data.offset
    n, k = X.shape
    if np.linalg.matrix_rank(X) < k:
        # name the first aliased column for the error message
        _, r = np.linalg.qr(X)
        bad = data.columns[int(np.argmin(np.abs(np.diag(r))))]
        raise ValueError(f"design not full rank; aliased column: {bad}")
    beta = np.zeros(k)
    total_y, total_m = y.sum(), np.exp(off).sum()
    beta[0] = math.log(total_y / total_m) if total_y > 0 else -10.0

    def mu_of(b):
        return np.exp(off + X @ b)

    def ll_of(mu):
        with np.errstate(divide="ignore"):
            lg = np.where(y > 0, y * np.log(mu), 0.0)
        return float((lg - mu).sum())

    mu = mu_of(beta)
    ll = ll_of(mu)
    converged = False
    it = 0
    for it in range(1, max_iter + 1):
        score = X.T @ (y - mu)
        if np.max(np.abs(score)) < score_tol:
            converged = True
            break
        info = X.T @ (mu[:, None] * X)
        step = np.linalg.solve(info, score)
        lam = 1.0
        for _ in range(50):
            cand = beta + lam * step
            mu_c = mu_of(cand)
            ll_c = ll_of(mu_c)
            if ll_c >= ll - 1e-12:
                beta, mu, ll = cand, mu_c, ll_c
                break
            lam *= 0.5
    info = X.T @ (mu[:, None] * X)
    cov = np.linalg.inv(info)
    coefs = dict(zip(data.columns, beta))
    ses = {c: math.sqrt(cov[i, i]) for i, c in enumerate(data.columns)}
    return GlmFit(
        coefficients=coefs,
        observed_info=info,
        cov=cov,
        std_errors=ses,
        loglik=ll,
        iterations=it,
        converged=converged,
        factors=data.factors,
    )


def rate(fit: GlmFit, cell_levels: dict, exposure: float = 1.0) -> float:
    """Expected claims m * f0 * product of the cell's relativities."""
    log_rate = fit.coefficients["intercept"]
    for spec in fit.factors:
        lev = cell_levels[spec.name]
        if lev not in spec.levels:
            raise ValueError(f"unseen level {lev!r} for factor {spec.name!r}")
        key = f"{spec.name}={lev}"
        if key in fit.coefficients:
            log_rate += fit.coefficients[key]
    # interaction terms present in the fit apply when all parts match
    for key, b in fit.coefficients.items():
        if ":" in key:
            parts = key.split(":")
            if all(
                cell_levels.get(p.split("=")[0]) is not None
                and str(cell_levels[p.split("=")[0]]) == p.split("=")[1]
                for p in parts
            ):
                log_rate += b
    return exposure * math.exp(log_rate)
