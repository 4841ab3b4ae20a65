"""CSV ingestion and model serialization.

Column-mapped CSV loading with per-row error collection, JSON
(de)serialization of frequency/severity models, and report emission
shared by the command-line entry points.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field

from . import frequency as freq
from . import severity as sev
from .estimation import ModifiedObservation, exact, grouped, right_censored
from .nonparametric import SurvivalRecord

SCHEMA_VERSION = 1

__all__ = [
    "SCHEMA_VERSION",
    "LoadReport",
    "load_table",
    "load_values",
    "load_observations",
    "load_tally",
    "load_survival",
    "load_lorenz",
    "load_long_portfolio",
    "load_cells",
    "severity_to_dict",
    "severity_from_dict",
    "frequency_to_dict",
    "frequency_from_dict",
    "dump_report",
    "write_csv",
]


class LoadError(ValueError):
    """Raised when a file cannot be interpreted at all."""


@dataclass
class LoadReport:
    rows: list
    errors: list = field(default_factory=list)
    warnings: list = field(default_factory=list)


def load_table(path, required=(), numeric=()) -> LoadReport:
    """Read a CSV into dict rows.

    Missing required columns abort; malformed numeric fields are
    collected (with 1-based line numbers) without dropping the file."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            return LoadReport(rows=[], warnings=["empty file"])
        header = [h.strip() for h in reader.fieldnames]
        missing = [c for c in required if c not in header]
        if missing:
            raise LoadError(f"missing mandatory column(s): {', '.join(missing)}")
        rows, errors = [], []
        for lineno, raw in enumerate(reader, start=2):
            row = {(k.strip() if k else k): (v.strip() if isinstance(v, str) else v)
                   for k, v in raw.items()}
            ok = True
            for col in numeric:
                val = row.get(col)
                if val in (None, ""):
                    row[col] = None
                    continue
                try:
                    row[col] = float(val)
                except ValueError:
                    errors.append(f"line {lineno}: bad numeric value {val!r} in {col!r}")
                    ok = False
            if ok:
                rows.append(row)
        report = LoadReport(rows=rows, errors=errors)
        if not rows and not errors:
            report.warnings.append("empty table")
        return report


def load_values(path, column="value") -> LoadReport:
    rep = load_table(path, required=(column,), numeric=(column,))
    rep.rows = [r[column] for r in rep.rows if r[column] is not None]
    return rep


def load_observations(path) -> LoadReport:
    """Modified-observation schema: optional columns value, lower,
    upper, censored, trunc, weight; exactly one of value/(lower,upper)
    per row, censored=1 marking a right-censored value."""
    rep = load_table(
        path, numeric=("value", "lower", "upper", "censored", "trunc", "weight")
    )
    obs = []
    for i, r in enumerate(rep.rows, start=2):
        w = r.get("weight") or 1.0
        d = r.get("trunc") or 0.0
        try:
            if r.get("value") is not None:
                if r.get("censored"):
                    obs.append(right_censored(r["value"], left_trunc=d, weight=w))
                else:
                    obs.append(exact(r["value"], left_trunc=d, weight=w))
            elif r.get("lower") is not None:
                upper = r.get("upper")
                upper = math.inf if upper is None else upper
                obs.append(grouped(r["lower"], upper, w, left_trunc=d))
            else:
                rep.errors.append(f"line {i}: row has neither value nor interval")
        except ValueError as err:
            rep.errors.append(f"line {i}: {err}")
    rep.rows = obs
    return rep


def load_tally(path) -> LoadReport:
    """Frequency tallies: columns count, policies."""
    rep = load_table(path, required=("count", "policies"), numeric=("count", "policies"))
    rep.rows = [(r["count"], r["policies"]) for r in rep.rows]
    return rep


def load_survival(path) -> LoadReport:
    """Survival schema: columns d, x, u with exactly one of x/u set."""
    rep = load_table(path, numeric=("d", "x", "u"))
    recs = []
    for i, r in enumerate(rep.rows, start=2):
        try:
            recs.append(SurvivalRecord(d=r.get("d") or 0.0, x=r.get("x"), u=r.get("u")))
        except ValueError as err:
            rep.errors.append(f"line {i}: {err}")
    rep.rows = recs
    return rep


def load_lorenz(path) -> LoadReport:
    rep = load_table(
        path, required=("loss", "premium", "relativity"),
        numeric=("loss", "premium", "relativity"),
    )
    return rep


def load_long_portfolio(path) -> LoadReport:
    """Long-format credibility data: risk, period, exposure, loss."""
    rep = load_table(
        path, required=("risk", "period", "exposure", "loss"),
        numeric=("period", "exposure", "loss"),
    )
    return rep


def load_cells(path, factor_columns) -> LoadReport:
    rep = load_table(
        path,
        required=tuple(factor_columns) + ("exposure", "claims"),
        numeric=("exposure", "claims"),
    )
    return rep


_SEVERITY_NAMES = {
    "exponential": sev.Exponential,
    "gamma": sev.Gamma,
    "pareto2": sev.Pareto2,
    "single_pareto": sev.SingleParamPareto,
    "weibull": sev.Weibull,
    "lognormal": sev.Lognormal,
    "normal": sev.Normal,
    "uniform": sev.Uniform,
    "gb2": sev.GB2,
    "loglogistic": sev.Loglogistic,
    "inverse_exponential": sev.InverseExponential,
    "burr": sev.Burr,
}


def severity_to_dict(dist) -> dict:
    for name, cls in _SEVERITY_NAMES.items():
        if type(dist) is cls:
            params = {k: getattr(dist, k) for k in dist.__dataclass_fields__}
            return {"family": name, "params": params}
    raise ValueError(f"cannot serialize severity {type(dist).__name__}")


def severity_from_dict(spec: dict):
    try:
        cls = _SEVERITY_NAMES[spec["family"]]
    except KeyError:
        raise ValueError(f"unknown severity family {spec.get('family')!r}") from None
    return cls(**spec["params"])


def frequency_to_dict(dist) -> dict:
    zero_adjust = None
    base = dist
    if isinstance(dist, freq.ZeroModified):
        zero_adjust = {"p0m": dist.p0m}
        base = dist.base
    if isinstance(base, freq.Poisson):
        out = {"family": "poisson", "params": {"lam": base.lam}}
    elif isinstance(base, freq.Binomial):
        out = {"family": "binomial", "params": {"m": base.m, "q": base.q}}
    elif isinstance(base, freq.NegBinomial):
        out = {"family": "negbinomial", "params": {"r": base.r, "beta": base.beta}}
    else:
        raise ValueError(f"cannot serialize frequency {type(dist).__name__}")
    if zero_adjust:
        out["zero_adjust"] = zero_adjust
    return out


def frequency_from_dict(spec: dict):
    fam = spec.get("family")
    params = spec.get("params", {})
    if fam == "poisson":
        base = freq.Poisson(**params)
    elif fam == "binomial":
        base = freq.Binomial(int(params["m"]), params["q"])
    elif fam == "negbinomial":
        base = freq.NegBinomial(**params)
    else:
        raise ValueError(f"unknown frequency family {fam!r}")
    adj = spec.get("zero_adjust")
    if adj:
        if adj.get("truncated"):
            return freq.zero_truncated(base)
        return freq.ZeroModified(base, adj["p0m"])
    return base


def dump_report(payload: dict, path=None) -> str:
    """Serialize a report deterministically (sorted keys, version field)."""
    body = dict(payload)
    body["schema_version"] = SCHEMA_VERSION
    text = json.dumps(body, sort_keys=True, indent=2, allow_nan=True) + "\n"
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text


def write_csv(path, header, rows):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)
