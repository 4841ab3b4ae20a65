"""Likelihood construction and parameter estimation.

Handles complete, grouped, right/left-censored, and left/right-truncated
observations.  Closed-form maximum likelihood where the family admits
one, Newton iteration with backtracking elsewhere, plus method of
moments, percentile matching, and the delta method.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import optimize

from . import severity as sev
from .frequency import Poisson

__all__ = [
    "ModifiedObservation",
    "exact",
    "grouped",
    "right_censored",
    "left_censored",
    "FitResult",
    "loglik",
    "mle",
    "mle_negbin_newton",
    "mle_binomial_profile",
    "method_of_moments",
    "percentile_match",
    "delta_method",
]

_LOG_FLOOR = -745.0  # ~ log of the smallest positive double


@dataclass(frozen=True)
class ModifiedObservation:
    """One data record: an exact value, a group interval, or a censored
    bound, optionally truncated, with a tally weight."""

    kind: str  # exact | grouped | right_censored | left_censored
    value: float = math.nan
    lower: float = math.nan
    upper: float = math.nan
    left_trunc: float = 0.0
    right_trunc: float = math.inf
    weight: float = 1.0

    def __post_init__(self):
        if self.kind not in ("exact", "grouped", "right_censored", "left_censored"):
            raise ValueError(f"unknown observation kind {self.kind!r}")
        if self.weight <= 0:
            raise ValueError("weight must be positive")
        if self.kind == "grouped" and not self.lower < self.upper:
            raise ValueError("group interval must have lower < upper")
        if self.kind == "exact" and self.left_trunc > 0 and self.value <= self.left_trunc:
            raise ValueError("exact value must exceed the truncation point")


def exact(value, left_trunc=0.0, weight=1.0):
    return ModifiedObservation("exact", value=value, left_trunc=left_trunc, weight=weight)


def grouped(lower, upper, weight, left_trunc=0.0):
    return ModifiedObservation(
        "grouped", lower=lower, upper=upper, left_trunc=left_trunc, weight=weight
    )


def right_censored(at, left_trunc=0.0, weight=1.0):
    return ModifiedObservation(
        "right_censored", value=at, left_trunc=left_trunc, weight=weight
    )


def left_censored(at, weight=1.0):
    return ModifiedObservation("left_censored", value=at, weight=weight)


def loglik(model, data) -> float:
    """Weighted log likelihood of modified observations under ``model``.

    Zero-probability contributions are clipped to the smallest
    representable log rather than crashing; ``loglik_flagged`` reports
    whether any clip occurred.
    """
    total, _ = loglik_flagged(model, data)
    return total


def loglik_flagged(model, data):
    total = 0.0
    clipped = False
    for obs in data:
        if obs.kind == "exact":
            dens = model.pdf(obs.value)
            contrib = math.log(dens) if dens > 0.0 else _LOG_FLOOR
        elif obs.kind == "right_censored":
            s = model.sf(obs.value)
            contrib = math.log(s) if s > 0.0 else _LOG_FLOOR
        elif obs.kind == "left_censored":
            f = model.cdf(obs.value)
            contrib = math.log(f) if f > 0.0 else _LOG_FLOOR
        else:  # grouped
            p = model.cdf(obs.upper) - model.cdf(obs.lower)
            contrib = math.log(p) if p > 0.0 else _LOG_FLOOR
        if contrib <= _LOG_FLOOR:
            clipped = True
        if obs.left_trunc > 0.0:
            s = model.sf(obs.left_trunc)
            contrib -= math.log(s) if s > 0.0 else _LOG_FLOOR
        if not math.isinf(obs.right_trunc):
            f = model.cdf(obs.right_trunc)
            contrib -= math.log(f) if f > 0.0 else _LOG_FLOOR
        total += obs.weight * contrib
    return total, clipped


@dataclass
class FitResult:
    """Estimates with curvature information from a likelihood fit."""

    family: str
    params: dict
    loglik: float
    observed_info: np.ndarray | None = None
    cov: np.ndarray | None = None
    std_errors: dict = field(default_factory=dict)
    convergence: str = "converged"
    iterations: int = 0
    flags: list = field(default_factory=list)

    @property
    def param_vector(self) -> np.ndarray:
        return np.array(list(self.params.values()), dtype=float)

    def distribution(self):
        return _build(self.family, self.params)


# family registry: name -> (parameter names, constructor, positivity mask)
_FAMILIES = {
    "exponential": (("theta",), sev.Exponential, (True,)),
    "gamma": (("alpha", "theta"), sev.Gamma, (True, True)),
    "pareto2": (("alpha", "theta"), sev.Pareto2, (True, True)),
    "single_pareto": (("alpha", "theta"), sev.SingleParamPareto, (True, True)),
    "weibull": (("tau", "theta"), sev.Weibull, (True, True)),
    "lognormal": (("mu", "sigma"), sev.Lognormal, (False, True)),
    "normal": (("mu", "sigma"), sev.Normal, (False, True)),
    "loglogistic": (("gamma", "theta"), sev.Loglogistic, (True, True)),
    "inverse_exponential": (("theta",), sev.InverseExponential, (True,)),
    "burr": (("alpha", "theta", "gamma"), sev.Burr, (True, True, True)),
    "gb2": (("a", "b", "alpha", "beta"), sev.GB2, (True, True, True, True)),
}


def _build(family, params: dict):
    names, ctor, _ = _FAMILIES[family]
    return ctor(*(params[n] for n in names))


def _as_observations(data):
    out = []
    for item in data:
        if isinstance(item, ModifiedObservation):
            out.append(item)
        else:
            out.append(exact(float(item)))
    return out


def _numeric_gradient(f, x, h=1e-6):
    x = np.asarray(x, dtype=float)
    g = np.zeros_like(x)
    for i in range(x.size):
        step = h * max(1.0, abs(x[i]))
        xp, xm = x.copy(), x.copy()
        xp[i] += step
        xm[i] -= step
        g[i] = (f(xp) - f(xm)) / (2.0 * step)
    return g


def _numeric_hessian(f, x, h=1e-4):
    x = np.asarray(x, dtype=float)
    n = x.size
    H = np.zeros((n, n))
    steps = [h * max(1.0, abs(v)) for v in x]
    f0 = f(x)
    for i in range(n):
        for j in range(i, n):
            if i == j:
                xp, xm = x.copy(), x.copy()
                xp[i] += steps[i]
                xm[i] -= steps[i]
                H[i, i] = (f(xp) - 2.0 * f0 + f(xm)) / steps[i] ** 2
            else:
                xpp, xpm, xmp, xmm = x.copy(), x.copy(), x.copy(), x.copy()
                xpp[[i, j]] += [steps[i], steps[j]]
                xpm[i] += steps[i]
                xpm[j] -= steps[j]
                xmp[i] -= steps[i]
                xmp[j] += steps[j]
                xmm[[i, j]] -= [steps[i], steps[j]]
                H[i, j] = H[j, i] = (f(xpp) - f(xpm) - f(xmp) + f(xmm)) / (
                    4.0 * steps[i] * steps[j]
                )
    return H


def _newton_maximize(f, x0, max_iter=200, grad_tol=1e-10):
    """Maximize f by damped Newton with backtracking halving."""
    x = np.asarray(x0, dtype=float)
    fx = f(x)
    for it in range(1, max_iter + 1):
        g = _numeric_gradient(f, x)
        if np.max(np.abs(g)) < grad_tol:
            return x, fx, it, True
        H = _numeric_hessian(f, x)
        try:
            step = np.linalg.solve(H, -g)
        except np.linalg.LinAlgError:
            step = g / max(1.0, np.max(np.abs(g)))
        if not np.all(np.isfinite(step)):
            step = g / max(1.0, np.max(np.abs(g)))
        # ensure ascent; flip if the Newton step points downhill
        if float(g @ step) < 0.0:
            step = -step
        lam = 1.0
        improved = False
        for _ in range(60):
            x_new = x + lam * step
            f_new = f(x_new)
            if math.isfinite(f_new) and f_new > fx:
                x, fx = x_new, f_new
                improved = True
                break
            lam *= 0.5
        if not improved:
            if np.max(np.abs(g)) < 1e-6:
                return x, fx, it, True
            return x, fx, it, False
    return x, fx, max_iter, False


def _spread_starts(x0, n_starts=5):
    rngs = [1.0, 0.5, 2.0, 0.25, 4.0]
    return [np.asarray(x0, dtype=float) + math.log(f) for f in rngs[:n_starts]]


def mle(family: str, data, fixed: dict | None = None, start: dict | None = None) -> FitResult:
    """Maximum likelihood fit of a named severity family.

    ``data`` mixes plain numbers (exact observations) and
    ``ModifiedObservation`` records.  ``fixed`` pins parameters at given
    values; ``start`` overrides the default starting point.
    """
    obs = _as_observations(data)
    if not obs:
        raise ValueError("data must be nonempty")
    fixed = dict(fixed or {})

    closed = _closed_form_mle(family, obs, fixed)
    if closed is not None:
        return closed

    names, ctor, positive = _FAMILIES[family]
    free = [n for n in names if n not in fixed]
    pos = {n: p for n, p in zip(names, positive)}

    def to_params(z):
        vals = dict(fixed)
        for n, v in zip(free, z):
            vals[n] = math.exp(v) if pos[n] else v
        return vals

    def objective(z):
        try:
            model = _build(family, to_params(z))
        except (ValueError, OverflowError):
            return -math.inf
        try:
            return loglik(model, obs)
        except (ValueError, OverflowError):
            return -math.inf

    start_params = start or _default_start(family, obs, fixed)
    z0 = np.array(
        [math.log(start_params[n]) if pos[n] else start_params[n] for n in free]
    )

    best = None
    results = []
    for z_init in _spread_starts(z0):
        z_hat, l_hat, iters, ok = _newton_maximize(objective, z_init)
        results.append((l_hat, z_hat, iters, ok))
        if best is None or l_hat > best[0]:
            best = (l_hat, z_hat, iters, ok)
    l_hat, z_hat, iters, ok = best[0], best[1], best[2], best[3]

    flags = []
    for l_other, z_other, _, _ in results:
        if abs(l_other - l_hat) < 1e-3 and np.max(np.abs(z_other - z_hat)) > 1e-2:
            flags.append("possible multimodality")
            break

    params = to_params(z_hat)
    theta_hat = np.array([params[n] for n in free])

    def ll_natural(v):
        vals = dict(fixed)
        vals.update({n: x for n, x in zip(free, v)})
        try:
            return loglik(_build(family, vals), obs)
        except (ValueError, OverflowError):
            return -math.inf

    info = -_numeric_hessian(ll_natural, theta_hat)
    cov, ses = _covariance(info, free)
    return FitResult(
        family=family,
        params=params,
        loglik=l_hat,
        observed_info=info,
        cov=cov,
        std_errors=ses,
        convergence="converged" if ok else "failed: no further improvement",
        iterations=iters,
        flags=flags,
    )


def _covariance(info, names):
    try:
        cov = np.linalg.inv(info)
        ses = {
            n: math.sqrt(cov[i, i]) if cov[i, i] > 0 else math.nan
            for i, n in enumerate(names)
        }
    except np.linalg.LinAlgError:
        cov, ses = None, {}
    return cov, ses


def _default_start(family, obs, fixed):
    vals = [o.value for o in obs if o.kind == "exact"]
    if not vals:
        vals = [o.upper if o.kind == "grouped" else o.value for o in obs]
        vals = [v for v in vals if math.isfinite(v)]
    m1 = sum(vals) / len(vals) if vals else 1.0
    m1 = max(m1, 1e-6)
    defaults = {
        "exponential": {"theta": m1},
        "gamma": {"alpha": 1.0, "theta": m1},
        "pareto2": {"alpha": 2.0, "theta": m1},
        "single_pareto": {"alpha": 1.0, "theta": fixed.get("theta", min(vals) if vals else 1.0)},
        "weibull": {"tau": 1.0, "theta": m1},
        "lognormal": {"mu": math.log(m1), "sigma": 1.0},
        "normal": {"mu": m1, "sigma": max(1e-3, np.std(vals) if vals else 1.0)},
        "loglogistic": {"gamma": 1.5, "theta": m1},
        "inverse_exponential": {"theta": m1},
        "burr": {"alpha": 2.0, "theta": m1, "gamma": 1.0},
        "gb2": {"a": 1.0, "b": m1, "alpha": 1.0, "beta": 1.0},
    }
    out = defaults[family]
    out.update(fixed)
    return out


def _closed_form_mle(family, obs, fixed):
    all_exact = all(o.kind == "exact" and o.left_trunc == 0.0 for o in obs)

    if family == "poisson":
        n = sum(o.weight for o in obs)
        total = sum(o.weight * o.value for o in obs)
        lam = total / n
        model = Poisson(lam)
        ll = sum(o.weight * math.log(max(model.pmf(int(o.value)), 1e-323)) for o in obs)
        info = np.array([[n / lam]]) if lam > 0 else None
        cov, ses = _covariance(info, ["lam"]) if info is not None else (None, {})
        return FitResult("poisson", {"lam": lam}, ll, info, cov, ses)

    if family == "exponential":
        # closed under right censoring and left truncation
        usable = all(o.kind in ("exact", "right_censored") for o in obs)
        if usable:
            n_u = sum(o.weight for o in obs if o.kind == "exact")
            if n_u == 0:
                return None
            excess = sum(o.weight * (o.value - o.left_trunc) for o in obs)
            theta = excess / n_u
            model = sev.Exponential(theta)
            info = np.array([[n_u / theta**2]])
            cov, ses = _covariance(info, ["theta"])
            return FitResult(
                "exponential", {"theta": theta}, loglik(model, obs), info, cov, ses
            )
        return None

    if family == "inverse_exponential" and all_exact:
        n = sum(o.weight for o in obs)
        s = sum(o.weight / o.value for o in obs)
        theta = n / s
        model = sev.InverseExponential(theta)
        info = np.array([[n / theta**2]])
        cov, ses = _covariance(info, ["theta"])
        return FitResult(
            "inverse_exponential", {"theta": theta}, loglik(model, obs), info, cov, ses
        )

    if family == "lognormal" and all_exact and not fixed:
        n = sum(o.weight for o in obs)
        mu = sum(o.weight * math.log(o.value) for o in obs) / n
        s2 = sum(o.weight * (math.log(o.value) - mu) ** 2 for o in obs) / n
        sigma = math.sqrt(s2)
        model = sev.Lognormal(mu, sigma)
        info = np.array([[n / s2, 0.0], [0.0, 2.0 * n / s2]])
        cov, ses = _covariance(info, ["mu", "sigma"])
        return FitResult(
            "lognormal", {"mu": mu, "sigma": sigma}, loglik(model, obs), info, cov, ses
        )

    if family == "normal" and all_exact and not fixed:
        n = sum(o.weight for o in obs)
        mu = sum(o.weight * o.value for o in obs) / n
        s2 = sum(o.weight * (o.value - mu) ** 2 for o in obs) / n
        sigma = math.sqrt(s2)
        model = sev.Normal(mu, sigma)
        info = np.array([[n / s2, 0.0], [0.0, 2.0 * n / s2]])
        cov, ses = _covariance(info, ["mu", "sigma"])
        return FitResult(
            "normal", {"mu": mu, "sigma": sigma}, loglik(model, obs), info, cov, ses
        )

    if family == "weibull" and "tau" in fixed:
        tau = fixed["tau"]
        usable = all(o.kind in ("exact", "right_censored") for o in obs)
        if usable:
            n_u = sum(o.weight for o in obs if o.kind == "exact")
            if n_u == 0:
                return None
            s = sum(o.weight * (o.value**tau - o.left_trunc**tau) for o in obs)
            theta = (s / n_u) ** (1.0 / tau)
            model = sev.Weibull(tau, theta)
            info = np.array([[tau**2 * n_u / theta**2]])
            cov, ses = _covariance(info, ["theta"])
            return FitResult(
                "weibull", {"tau": tau, "theta": theta}, loglik(model, obs), info, cov, ses
            )
        return None

    return None


def mle_negbin_newton(data, tol: float = 1e-8, max_iter: int = 100) -> FitResult:
    """Two-parameter negative binomial fit via Newton root finding on the
    profile score for the size parameter; the scale follows from the
    sample mean.  Returns a Poisson-preferred result when the sample
    variance does not exceed the mean."""
    x = [float(v) for v in data]
    n = len(x)
    if n == 0:
        raise ValueError("data must be nonempty")
    mean = sum(x) / n
    var = sum(v * v for v in x) / n - mean * mean
    if var <= mean:
        lam_fit = mle("poisson", [exact(v) for v in x])
        lam_fit.flags.append("poisson preferred: sample variance <= mean")
        lam_fit.convergence = "boundary"
        return lam_fit

    r = mean * mean / (var - mean)
    iterates = [r]
    converged = False
    for _ in range(max_iter):
        m1 = sum(sum(1.0 / (r - 1.0 + j) for j in range(1, int(v) + 1)) for v in x) / n
        m2 = (
            sum(sum(1.0 / (r - 1.0 + j) ** 2 for j in range(1, int(v) + 1)) for v in x)
            / n
        )
        score = m1 - math.log(r + mean) + math.log(r)
        hess = mean / (r * (r + mean)) - m2
        r_new = r - score / hess
        iterates.append(r_new)
        if abs(r_new - r) < tol:
            r = r_new
            converged = True
            break
        r = r_new

    beta = mean / r
    from .frequency import NegBinomial

    model = NegBinomial(r, beta)
    ll = sum(math.log(max(model.pmf(int(v)), 1e-323)) for v in x)

    def ll_fn(v):
        try:
            return sum(
                math.log(max(NegBinomial(v[0], v[1]).pmf(int(xx)), 1e-323)) for xx in x
            )
        except ValueError:
            return -math.inf

    info = -_numeric_hessian(ll_fn, np.array([r, beta]))
    cov, ses = _covariance(info, ["r", "beta"])
    result = FitResult(
        "negbinomial",
        {"r": r, "beta": beta},
        ll,
        info,
        cov,
        ses,
        convergence="converged" if converged else "failed: max iterations",
        iterations=len(iterates) - 1,
    )
    result.iterates = iterates
    return result


def mle_binomial_profile(data, rel_tol: float = 1e-12, m_cap: int = 10_000) -> FitResult:
    """Profile likelihood scan over the binomial size parameter.

    Reports ``m = inf`` (Poisson preferred) when the sample mean does
    not exceed the sample variance; otherwise scans m upward from the
    sample maximum until the profile likelihood comes within ``rel_tol``
    of its Poisson limit, returning the maximizing m."""
    x = [int(v) for v in data]
    n = len(x)
    if n == 0:
        raise ValueError("data must be nonempty")
    mean = sum(x) / n
    var = sum(v * v for v in x) / n - mean * mean

    if all(v == 0 for v in x):
        return FitResult(
            "binomial", {"m": 1, "q": 0.0}, 0.0, convergence="boundary",
            flags=["all observations zero; m arbitrary"],
        )

    # log Poisson-limit likelihood (up to the same constant used below)
    log_fact = sum(math.lgamma(v + 1) for v in x)
    log_poisson = -log_fact - n * mean + n * mean * math.log(mean)

    def log_prof(m):
        q = mean / m
        if q > 1.0:
            return -math.inf
        logc = sum(
            math.lgamma(m + 1) - math.lgamma(v + 1) - math.lgamma(m - v + 1) for v in x
        )
        tail = (n * m - n * mean) * math.log1p(-q) if q < 1.0 else 0.0
        return logc + n * mean * math.log(q) + tail

    if var >= mean:
        return FitResult(
            "binomial",
            {"m": math.inf, "q": 0.0, "lam": mean},
            log_poisson,
            convergence="boundary",
            flags=["poisson preferred: sample mean <= sample variance"],
        )

    m = max(x)
    best_m, best_ll = m, log_prof(m)
    while m < m_cap:
        m += 1
        ll = log_prof(m)
        if ll > best_ll:
            best_m, best_ll = m, ll
        if abs(ll - log_poisson) <= rel_tol * abs(log_poisson):
            break
    q = mean / best_m
    return FitResult(
        "binomial", {"m": best_m, "q": q}, best_ll, convergence="converged"
    )


def method_of_moments(family: str, data=None, moments=None) -> dict:
    """Solve the family's moment map from the first two sample moments.

    Either raw ``data`` or precomputed raw ``moments = (m1, m2)`` may be
    supplied."""
    if moments is None:
        vals = [float(v) for v in data]
        n = len(vals)
        m1 = sum(vals) / n
        m2 = sum(v * v for v in vals) / n
    else:
        m1, m2 = moments
    s2 = m2 - m1 * m1
    if family == "exponential":
        return {"theta": m1}
    if family == "gamma":
        if s2 <= 0:
            raise ValueError("no solution: second moment too small")
        return {"alpha": m1 * m1 / s2, "theta": s2 / m1}
    if family == "pareto2":
        if s2 <= m1 * m1:
            # need m2 > 2 m1^2 for alpha > 2; also variance must exceed mean^2
            raise ValueError("no solution: moments inconsistent with a Pareto")
        alpha = 1.0 + m2 / (m2 - 2.0 * m1 * m1)
        if alpha <= 2.0 or m2 <= 2.0 * m1 * m1:
            raise ValueError("no solution: moments inconsistent with a Pareto")
        return {"alpha": alpha, "theta": (alpha - 1.0) * m1}
    if family == "lognormal":
        if s2 <= 0 or m1 <= 0:
            raise ValueError("no solution: invalid moments for lognormal")
        sigma2 = math.log(m2 / (m1 * m1))
        return {"mu": math.log(m1) - 0.5 * sigma2, "sigma": math.sqrt(sigma2)}
    if family == "negbinomial":
        if s2 <= m1:
            raise ValueError("no solution: variance must exceed mean")
        beta = s2 / m1 - 1.0
        return {"r": m1 / beta, "beta": beta}
    raise ValueError(f"method of moments not implemented for {family!r}")


def percentile_match(family: str, p1: tuple, p2: tuple) -> dict:
    """Match two empirical quantiles (q, x) to a two-parameter family."""
    (q1, x1), (q2, x2) = p1, p2
    if not (0.0 < q1 < q2 < 1.0) or not (x1 < x2):
        raise ValueError("need 0 < q1 < q2 < 1 and x1 < x2")

    if family == "loglogistic":
        # odds(q) = (x/theta)^gamma gives a one-dimensional reduction
        o1, o2 = q1 / (1.0 - q1), q2 / (1.0 - q2)
        gamma = math.log(o2 / o1) / math.log(x2 / x1)
        theta = x1 / o1 ** (1.0 / gamma)
        return {"gamma": gamma, "theta": theta}

    if family == "weibull":
        l1, l2 = -math.log1p(-q1), -math.log1p(-q2)
        tau = math.log(l2 / l1) / math.log(x2 / x1)
        theta = x1 / l1 ** (1.0 / tau)
        return {"tau": tau, "theta": theta}

    if family == "exponential":
        return {"theta": x1 / (-math.log1p(-q1))}

    if family == "lognormal":
        from .special import norm_ppf

        z1, z2 = norm_ppf(q1), norm_ppf(q2)
        sigma = (math.log(x2) - math.log(x1)) / (z2 - z1)
        return {"mu": math.log(x1) - sigma * z1, "sigma": sigma}

    if family == "pareto2":
        # solve F^{-1}(qi) = xi for (alpha, theta) via a 1-D root in alpha
        def gap(alpha):
            t1 = x1 / ((1.0 - q1) ** (-1.0 / alpha) - 1.0)
            t2 = x2 / ((1.0 - q2) ** (-1.0 / alpha) - 1.0)
            return t1 - t2

        lo, hi = 1e-6, 1.0
        glo = gap(lo)
        while gap(hi) * glo > 0:
            hi *= 2.0
            if hi > 1e9:
                raise ValueError(
                    f"no root in bracket [1e-6, 1e9]: gap({lo:.3g})={glo:.3g}"
                )
        alpha = optimize.brentq(gap, lo, hi, xtol=1e-14)
        theta = x1 / ((1.0 - q1) ** (-1.0 / alpha) - 1.0)
        return {"alpha": alpha, "theta": theta}

    # generic two-parameter solve on the family quantile function
    names, ctor, positive = _FAMILIES[family]
    if len(names) != 2:
        raise ValueError("generic percentile matching needs a two-parameter family")

    def equations(z):
        vals = [math.exp(v) if p else v for v, p in zip(z, positive)]
        try:
            dist = ctor(*vals)
            return [dist.quantile(q1) - x1, dist.quantile(q2) - x2]
        except (ValueError, OverflowError):
            return [1e6, 1e6]

    sol = optimize.fsolve(equations, [0.0, math.log(max(x1, 1e-6))], full_output=True)
    z, _, ok, mesg = sol
    if ok != 1:
        raise ValueError(f"no root found: {mesg}")
    vals = [math.exp(v) if p else v for v, p in zip(z, positive)]
    return dict(zip(names, vals))


def delta_method(fit: FitResult, g, gradient=None, h: float = 1e-6):
    """Estimate and approximate variance of ``g(params)`` by the delta
    method.  ``g`` takes the parameter vector; the gradient is computed
    by central differences when not supplied."""
    if fit.cov is None:
        raise ValueError("fit has a singular information matrix")
    theta = fit.param_vector
    est = g(theta)
    if gradient is None:
        grad = _numeric_gradient(g, theta, h=h)
    else:
        grad = np.asarray(gradient(theta), dtype=float)
    var = float(grad @ fit.cov @ grad)
    return est, var
