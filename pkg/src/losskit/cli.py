"""Batch command-line interface.

Subcommands: fit, gof, aggregate, coverage, credibility, risk,
reinsure, tariff, simulate, depend, gini.  Each reads CSV/JSON inputs,
invokes the owning module, and writes a JSON report (plus optional CSV
series).  Exit codes: 0 success, 2 validation error, 3 numerical
failure, 64 usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys

import numpy as np

from . import aggregate as agg
from . import coverage as cov
from . import credibility as cred
from . import dependence as dep
from . import estimation as est
from . import io as lio
from . import riskmeasures as risk
from . import selection as sel
from . import simulation as sim
from . import tariff as trf

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3
EXIT_USAGE = 64

log = logging.getLogger("losskit")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _emit(report: dict, args) -> None:
    text = lio.dump_report(report, getattr(args, "out", None))
    if not getattr(args, "out", None):
        sys.stdout.write(text)


def _load_json(path_or_text):
    if os.path.exists(path_or_text):
        with open(path_or_text, encoding="utf-8") as fh:
            return json.load(fh)
    return json.loads(path_or_text)


_COUNT_FAMILIES = {"poisson", "negbin", "binomial"}


def _cmd_fit(args):
    if args.family in _COUNT_FAMILIES:
        rep = lio.load_values(args.data, column=args.column)
        counts = rep.rows
        if not counts:
            raise ValueError("no usable rows in the data file")
        if args.family == "negbin":
            fit = est.mle_negbin_newton(counts)
        elif args.family == "binomial":
            fit = est.mle_binomial_profile(counts)
        else:
            fit = est.mle("poisson", [est.exact(v) for v in counts])
        payload = {
            "command": "fit",
            "family": fit.family,
            "params": fit.params,
            "loglik": fit.loglik,
            "std_errors": fit.std_errors,
            "convergence": fit.convergence,
            "flags": fit.flags,
            "parse_errors": rep.errors,
        }
        if hasattr(fit, "iterates"):
            payload["iterates"] = fit.iterates
    else:
        rep = lio.load_observations(args.data)
        fixed = _load_json(args.fixed) if args.fixed else None
        fit = est.mle(args.family, rep.rows, fixed=fixed)
        payload = {
            "command": "fit",
            "family": fit.family,
            "params": fit.params,
            "loglik": fit.loglik,
            "std_errors": fit.std_errors,
            "convergence": fit.convergence,
            "flags": fit.flags,
            "parse_errors": rep.errors,
        }
    _emit(payload, args)


def _cmd_gof(args):
    rep = lio.load_values(args.data, column=args.column)
    model = lio.severity_from_dict(_load_json(args.model))
    ks, cvm, ad = sel.gof_statistics(rep.rows, model.cdf)
    ll = est.loglik(model, [est.exact(v) for v in rep.rows])
    p = args.params if args.params is not None else len(lio.severity_to_dict(model)["params"])
    aic, bic = sel.information_criteria(ll, p, len(rep.rows))
    _emit(
        {
            "command": "gof",
            "ks": ks,
            "cvm": cvm,
            "ad": ad,
            "loglik": ll,
            "aic": aic,
            "bic": bic,
            "n": len(rep.rows),
            "parse_errors": rep.errors,
        },
        args,
    )


def _compound_from_spec(spec):
    frequency = lio.frequency_from_dict(spec["frequency"])
    sev_spec = spec["severity"]
    if "pmf" in sev_spec:
        severity = agg.DiscretePmf(sev_spec.get("span", 1.0), tuple(sev_spec["pmf"]))
    else:
        severity = lio.severity_from_dict(sev_spec)
    return agg.CompoundModel(frequency, severity, span=spec.get("span", 1.0))


def _cmd_aggregate(args):
    model = _compound_from_spec(_load_json(args.model))
    pmf = agg.panjer(model, s_max=args.s_max)
    mean, var = agg.collective_moments(model)
    payload = {
        "command": "aggregate",
        "mean": mean,
        "variance": var,
        "lattice_span": pmf.h,
        "points": len(pmf.probs),
    }
    if args.stop_loss is not None:
        payload["stop_loss"] = {
            "deductible": args.stop_loss,
            "premium": agg.stop_loss(model, args.stop_loss),
        }
    if args.series:
        cum = np.cumsum(pmf.probs)
        lio.write_csv(
            args.series,
            ["s", "f", "F"],
            [(k * pmf.h, p, c) for k, (p, c) in enumerate(zip(pmf.probs, cum))],
        )
        payload["series"] = args.series
    _emit(payload, args)


def _cmd_coverage(args):
    model = lio.severity_from_dict(_load_json(args.model))
    t = _load_json(args.terms)
    terms = cov.PolicyTerms(
        deductible=t.get("deductible", 0.0),
        max_covered_loss=t.get("max_covered_loss", math.inf),
        coinsurance=t.get("coinsurance", 1.0),
        inflation=t.get("inflation", 0.0),
        franchise=t.get("franchise", False),
    )
    payload = {
        "command": "coverage",
        "per_loss_mean": cov.per_loss_moment(model, terms, 1),
        "per_payment_mean": cov.per_payment_moment(model, terms, 1),
        "payment_probability": cov.payment_probability(model, terms),
    }
    if not terms.franchise:
        payload["per_loss_variance"] = cov.per_loss_variance(model, terms)
    if not math.isinf(model.max_moment_order) or model.max_moment_order > 1:
        try:
            payload["ler"] = cov.ler(model, terms.deductible)
        except ValueError:
            payload["ler"] = None
    _emit(payload, args)


def _cmd_credibility(args):
    rep = lio.load_long_portfolio(args.data)
    by_risk = {}
    for r in rep.rows:
        by_risk.setdefault(r["risk"], []).append(r)
    risks = sorted(by_risk)
    exposures = [
        [r["exposure"] for r in sorted(by_risk[k], key=lambda r: r["period"])]
        for k in risks
    ]
    losses = [
        [r["loss"] for r in sorted(by_risk[k], key=lambda r: r["period"])]
        for k in risks
    ]
    epv, vhm, xbars, grand, negative = cred.empirical_epv_vhm_straub(exposures, losses)
    payload = {
        "command": "credibility",
        "risks": risks,
        "epv": epv,
        "vhm": vhm,
        "vhm_negative": negative,
        "grand_mean": grand,
        "parse_errors": rep.errors,
    }
    if not negative:
        k = epv / vhm
        m_i = [sum(row) for row in exposures]
        zs = [m / (m + k) for m in m_i]
        ests = [z * xb + (1.0 - z) * grand for z, xb in zip(zs, xbars)]
        payload.update(
            {
                "k": k,
                "z": dict(zip(risks, zs)),
                "estimates": dict(zip(risks, ests)),
                "balanced_complement": cred.balanced_complement(zs, xbars),
            }
        )
    _emit(payload, args)


_Q_GRID = (0.8, 0.9, 0.95, 0.99)


def _cmd_risk(args):
    model = lio.severity_from_dict(_load_json(args.model))
    table = {}
    for q in _Q_GRID:
        row = {"var": risk.var(model, q)}
        try:
            row["tvar"] = risk.tvar(model, q)
        except ValueError as err:
            row["tvar"] = None
            row["note"] = str(err)
        table[str(q)] = row
    _emit({"command": "risk", "measures": table}, args)


def _cmd_reinsure(args):
    spec = _load_json(args.risks)
    dists = [lio.severity_from_dict(d) for d in spec]
    payload = {"command": "reinsure", "revenue": args.revenue, "kind": args.kind}
    if args.kind == "quota":
        ev = [(d.mean(), d.var()) for d in dists]
        c, clipped = risk.optimal_proportions(ev, args.revenue)
        payload["proportions"] = list(c)
        payload["proportions_clipped"] = list(clipped)
    else:
        ms, gap = risk.optimal_retentions(dists, args.revenue)
        payload["retentions"] = ms
        payload["common_gap"] = gap
    _emit(payload, args)


def _cmd_tariff(args):
    factors = _load_json(args.factors)
    rep = lio.load_cells(args.data, list(factors))
    cells = rep.rows
    base = _load_json(args.base) if args.base else None
    data = trf.encode(cells, factors, base_levels=base)
    fit = trf.fit_poisson(data)
    _emit(
        {
            "command": "tariff",
            "coefficients": fit.coefficients,
            "relativities": fit.relativities(),
            "std_errors": fit.std_errors,
            "loglik": fit.loglik,
            "converged": fit.converged,
            "parse_errors": rep.errors,
        },
        args,
    )


def _cmd_simulate(args):
    model = _compound_from_spec(_load_json(args.model))
    engine = sim.make_engine(args.engine, args.seed)
    draws = sim.simulate_collective(model.frequency, model.severity, args.n, engine)
    if args.series:
        lio.write_csv(args.series, ["draw"], [(d,) for d in draws])
    mean = sum(draws) / len(draws)
    sd = math.sqrt(sum((d - mean) ** 2 for d in draws) / len(draws))
    payload = {
        "command": "simulate",
        "n": args.n,
        "seed": args.seed,
        "engine": args.engine,
        "mean": mean,
        "sd": sd,
        "draws": draws if args.n <= 100 else draws[:100],
    }
    if mean != 0:
        payload["required_draws_1pct"] = sim.required_draws(mean, sd)
    _emit(payload, args)


def _cmd_depend(args):
    rep = lio.load_table(args.data)
    cols = list(rep.rows[0]) if rep.rows else []
    if len(cols) < 2:
        raise ValueError("need a two-column CSV")
    cx, cy = cols[:2]
    x = [float(r[cx]) for r in rep.rows]
    y = [float(r[cy]) for r in rep.rows]
    payload = {
        "command": "depend",
        "n": len(x),
        "pearson": dep.pearson(x, y),
        "spearman": dep.spearman(x, y),
        "kendall": dep.kendall(x, y),
        "blomqvist": dep.blomqvist(x, y),
    }
    u = dep.pseudo_observations(x)
    v = dep.pseudo_observations(y)
    theta, ll, flags = dep.fit_archimedean(u, v, args.copula)
    rho, tau = dep.copula_rho_tau(_copula(args.copula, theta))
    payload["copula"] = {
        "family": args.copula,
        "theta": theta,
        "loglik": ll,
        "flags": flags,
        "rho": rho,
        "tau": tau,
    }
    if args.series:
        cop = _copula(args.copula, theta)
        zs = [round(0.01 * i, 2) for i in range(1, 100)]
        rows = []
        for z in zs:
            left, right = dep.tail_concentration(cop, z)
            rows.append((z, left, right))
        lio.write_csv(args.series, ["z", "L", "R"], rows)
        payload["series"] = args.series
    _emit(payload, args)


def _copula(family, theta):
    if family == "frank":
        return dep.FrankCopula(theta)
    if family == "clayton":
        return dep.ClaytonCopula(theta)
    if family == "gumbel":
        return dep.GumbelCopula(theta)
    raise ValueError(f"unknown copula family {family!r}")


def _cmd_gini(args):
    rep = lio.load_lorenz(args.data)
    losses = [r["loss"] for r in rep.rows]
    prems = [r["premium"] for r in rep.rows]
    rels = [r["relativity"] for r in rep.rows]
    curve = sel.ordered_lorenz(losses, prems, rels)
    payload = {
        "command": "gini",
        "gini": sel.gini_index(curve),
        "n": len(losses),
        "parse_errors": rep.errors,
    }
    if args.series:
        lio.write_csv(args.series, ["a", "b"], curve)
        payload["series"] = args.series
    _emit(payload, args)


def build_parser() -> _Parser:
    p = _Parser(prog="losskit", description="loss data analytics batch tool")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--out", help="write the JSON report here instead of stdout")

    sp = sub.add_parser("fit", parents=[], help="fit a frequency or severity family")
    sp.add_argument("--family", required=True)
    sp.add_argument("--data", required=True)
    sp.add_argument("--column", default="value")
    sp.add_argument("--fixed", help="JSON of parameters to pin")
    common(sp)
    sp.set_defaults(func=_cmd_fit)

    sp = sub.add_parser("gof", help="goodness-of-fit statistics for a fitted model")
    sp.add_argument("--data", required=True)
    sp.add_argument("--column", default="value")
    sp.add_argument("--model", required=True, help="severity model JSON")
    sp.add_argument("--params", type=int, help="parameter count for AIC/BIC")
    common(sp)
    sp.set_defaults(func=_cmd_gof)

    sp = sub.add_parser("aggregate", help="aggregate-loss distribution")
    sp.add_argument("--model", required=True, help="compound model JSON")
    sp.add_argument("--s-max", type=int, dest="s_max")
    sp.add_argument("--stop-loss", type=float, dest="stop_loss")
    sp.add_argument("--series", help="CSV path for the (s, f, F) table")
    common(sp)
    sp.set_defaults(func=_cmd_aggregate)

    sp = sub.add_parser("coverage", help="policy-modification moments")
    sp.add_argument("--model", required=True)
    sp.add_argument("--terms", required=True, help="policy terms JSON")
    common(sp)
    sp.set_defaults(func=_cmd_coverage)

    sp = sub.add_parser("credibility", help="empirical Buhlmann-Straub estimates")
    sp.add_argument("--data", required=True, help="long CSV: risk, period, exposure, loss")
    common(sp)
    sp.set_defaults(func=_cmd_credibility)

    sp = sub.add_parser("risk", help="VaR/TVaR table")
    sp.add_argument("--model", required=True)
    common(sp)
    sp.set_defaults(func=_cmd_risk)

    sp = sub.add_parser("reinsure", help="optimal quota shares or retentions")
    sp.add_argument("--risks", required=True, help="JSON list of severity models")
    sp.add_argument("--revenue", type=float, required=True)
    sp.add_argument("--kind", choices=("quota", "excess"), default="excess")
    common(sp)
    sp.set_defaults(func=_cmd_reinsure)

    sp = sub.add_parser("tariff", help="multiplicative tariff fit")
    sp.add_argument("--data", required=True, help="cells CSV: factors, exposure, claims")
    sp.add_argument("--factors", required=True, help="JSON {factor: [levels...]}")
    sp.add_argument("--base", help="JSON {factor: base level}")
    common(sp)
    sp.set_defaults(func=_cmd_tariff)

    sp = sub.add_parser("simulate", help="Monte Carlo draws of an aggregate model")
    sp.add_argument("--model", required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--engine", choices=("textbook-lcg", "default"), default="default")
    sp.add_argument("--series", help="CSV path for the raw draws")
    common(sp)
    sp.set_defaults(func=_cmd_simulate)

    sp = sub.add_parser("depend", help="association measures and a copula fit")
    sp.add_argument("--data", required=True, help="two-column CSV")
    sp.add_argument("--copula", choices=("frank", "clayton", "gumbel"), default="frank")
    sp.add_argument("--series", help="CSV path for the tail-concentration grid")
    common(sp)
    sp.set_defaults(func=_cmd_depend)

    sp = sub.add_parser("gini", help="ordered Lorenz curve and Gini index")
    sp.add_argument("--data", required=True, help="CSV: loss, premium, relativity")
    sp.add_argument("--series", help="CSV path for the curve")
    common(sp)
    sp.set_defaults(func=_cmd_gini)

    return p


def main(argv=None) -> int:
    logging.basicConfig(level=os.environ.get("LOSSKIT_LOG", "WARNING").upper())
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as ex:
        return int(ex.code or 0)
    try:
        args.func(args)
    except (ValueError, lio.LoadError, FileNotFoundError, KeyError, json.JSONDecodeError) as err:
        log.error("validation error: %s", err)
        sys.stderr.write(f"validation error: {err}\n")
        return EXIT_VALIDATION
    except (ArithmeticError, np.linalg.LinAlgError, RuntimeError) as err:
        log.error("numerical failure: %s", err)
        sys.stderr.write(f"numerical failure: {err}\n")
        return EXIT_NUMERICAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
