"""Command-line interface.

Four subcommands, all driven by the same config file:

* ``analytic``  -- tabulate closed-form mean and covariance densities over
                   an intensity sweep;
* ``simulate``  -- run replications, write per-sample functionals and a
                   summary report;
* ``validate``  -- run replications per swept intensity and compare the
                   estimated covariances to the closed forms by z-score;
* ``hist``      -- histogram the standardized functionals against the
                   standard normal.

Reports are CSV/JSON files in the output directory; each command also
renders a PNG figure alongside them unless --no-figures is given.  Exit
code 0 means success (validate: all entries within threshold), 1 means a
validation mismatch, 2 means a usage or configuration error.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from typing import Mapping, Sequence

import numpy as np

from . import figures
from .config import ConfigError, RunConfig, parse_config, write_config
from .estimation import (
    CovarianceEstimate,
    estimate_cov,
    histogram,
    ks_normal,
    standardize,
)
from .formulas import RectModel, cov_matrix, mean_densities
from .grains import GrainSizeError
from .sampling import run as run_replications

__all__ = ["main", "compare_to_reference"]

_ENTRY_INDEX: dict[str, tuple[int, int]] = {
    "s00": (0, 0),
    "s01": (0, 1),
    "s02": (0, 2),
    "s11": (1, 1),
    "s12": (1, 2),
    "s22": (2, 2),
}

# below this replication count the bootstrap errors themselves are noisy,
# so validation verdicts are flagged as statistically weak
_MIN_SOLID_M = 100


def _write_csv(path, header: Sequence[str], rows: Sequence[Sequence]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def _fmt(value) -> str:
    """Shortest round-trip text for floats; plain text otherwise."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _analytic_row(model: RectModel) -> dict[str, float]:
    d0, d1, d2 = mean_densities(model)
    m = cov_matrix(model)
    row = {"gamma": model.gamma, "p": model.p, "d0": d0, "d1": d1, "d2": d2}
    for name, (i, j) in _ENTRY_INDEX.items():
        row[name] = float(m[i, j])
    return row


def _require_ordered_sides(cfg: RunConfig) -> None:
    if cfg.b > cfg.a:
        raise ConfigError(
            f"the closed forms take a as the longer side, got a={cfg.a!r} < "
            f"b={cfg.b!r}; swap a and b"
        )


def _load(args) -> RunConfig:
    cfg = parse_config(args.config)
    if getattr(args, "seed", None) is not None:
        cfg = cfg.with_seed(args.seed)
    return cfg


def _results_matrix(results) -> np.ndarray:
    return np.array(
        [[r.functionals.v0, r.functionals.v1, r.functionals.v2] for r in results],
        dtype=float,
    )


def _write_samples(path, results) -> None:
    rows = [
        [
            r.index,
            r.grain_count,
            r.functionals.v0,
            _fmt(r.functionals.v1),
            _fmt(r.functionals.v2),
        ]
        for r in results
    ]
    _write_csv(path, ["index", "grain_count", "v0", "v1", "v2"], rows)


def cmd_analytic(args) -> int:
    cfg = _load(args)
    _require_ordered_sides(cfg)
    if args.gammas is not None:
        gammas = tuple(float(tok) for tok in args.gammas.replace(",", " ").split())
    else:
        gammas = cfg.gammas
    rows = [_analytic_row(RectModel(cfg.a, cfg.b, g)) for g in gammas]
    os.makedirs(args.out, exist_ok=True)
    header = ["gamma", "p", "d0", "d1", "d2", *_ENTRY_INDEX]
    _write_csv(
        os.path.join(args.out, "analytic.csv"),
        header,
        [[_fmt(row[k]) for k in header] for row in rows],
    )
    if rows and not args.no_figures:
        figures.render_analytic(rows, os.path.join(args.out, "analytic.png"))
    return 0


def cmd_simulate(args) -> int:
    cfg = _load(args)
    spec = cfg.spec()
    results = run_replications(spec, workers=args.workers)
    os.makedirs(args.out, exist_ok=True)
    _write_samples(os.path.join(args.out, "samples.csv"), results)
    write_config(cfg, os.path.join(args.out, "config.ini"))

    M = len(results)
    summary: dict = {
        "replications": M,
        "window_area": spec.window_area,
        "insufficient_statistics": M < _MIN_SOLID_M,
        "grain_mean": (
            float(np.mean([r.grain_count for r in results])) if results else None
        ),
    }
    est: CovarianceEstimate | None = None
    if M >= 2:
        est = estimate_cov(
            results, spec.window_area, cfg.bootstrap, cfg.bootstrap_seed
        )
        summary["mean"] = [float(v) for v in est.mean]
        summary["mean_per_area"] = [float(v / spec.window_area) for v in est.mean]
        summary["cov"] = {
            name: float(est.cov[i, j]) for name, (i, j) in _ENTRY_INDEX.items()
        }
        summary["se"] = {
            name: float(est.se[i, j]) for name, (i, j) in _ENTRY_INDEX.items()
        }
        summary["se_mean"] = [float(v) for v in est.se_mean]
    else:
        summary["mean"] = summary["mean_per_area"] = None
        summary["cov"] = summary["se"] = summary["se_mean"] = None
    if cfg.orientation == "aligned":
        summary["analytic"] = _analytic_row(RectModel(cfg.a, cfg.b, cfg.gamma))
    else:
        summary["analytic"] = None
    with open(os.path.join(args.out, "summary.json"), "w", encoding="utf-8") as f:
        json.dump(summary, f, indent=2)
        f.write("\n")
    if results and not args.no_figures:
        figures.render_samples(
            _results_matrix(results), os.path.join(args.out, "samples.png")
        )
    return 0


def compare_to_reference(
    est: CovarianceEstimate, targets: Mapping[str, float], z_threshold: float
) -> list[dict]:
    """z-score each estimated covariance entry against a reference value.

    Only entries named in ``targets`` are compared.  An entry passes when
    |estimate - target| <= z_threshold * bootstrap standard error.
    """
    out = []
    for name, target in targets.items():
        i, j = _ENTRY_INDEX[name]
        estimate = float(est.cov[i, j])
        se = float(est.se[i, j])
        diff = estimate - float(target)
        if se > 0.0:
            z = diff / se
        else:
            z = 0.0 if diff == 0.0 else math.copysign(math.inf, diff)
        out.append(
            {
                "entry": name,
                "estimate": estimate,
                "analytic": float(target),
                "se": se,
                "z": z,
                "pass": bool(abs(z) <= z_threshold),
            }
        )
    return out


def cmd_validate(args) -> int:
    cfg = _load(args)
    if cfg.orientation != "aligned":
        raise ConfigError(
            "the closed form reference covers aligned grains only; "
            "isotropic runs cannot be validated against it"
        )
    _require_ordered_sides(cfg)
    os.makedirs(args.out, exist_ok=True)
    runs = []
    all_pass = True
    for g in cfg.gammas:
        spec = cfg.spec(gamma=g)
        results = run_replications(spec, workers=args.workers)
        est = estimate_cov(results, spec.window_area, cfg.bootstrap, cfg.bootstrap_seed)
        m = cov_matrix(RectModel(cfg.a, cfg.b, g))
        targets = {name: float(m[i, j]) for name, (i, j) in _ENTRY_INDEX.items()}
        entries = compare_to_reference(est, targets, cfg.z_threshold)
        all_pass &= all(e["pass"] for e in entries)
        runs.append(
            {
                "gamma": g,
                "replications": est.M,
                "insufficient_statistics": est.M < _MIN_SOLID_M,
                "entries": entries,
            }
        )
    report = {"z_threshold": cfg.z_threshold, "runs": runs}
    with open(os.path.join(args.out, "validation.json"), "w", encoding="utf-8") as f:
        json.dump(report, f, indent=2)
        f.write("\n")
    rows = [
        [
            _fmt(rep["gamma"]),
            e["entry"],
            _fmt(e["estimate"]),
            _fmt(e["analytic"]),
            _fmt(e["se"]),
            _fmt(e["z"]),
            _fmt(e["pass"]),
        ]
        for rep in runs
        for e in rep["entries"]
    ]
    _write_csv(
        os.path.join(args.out, "validation.csv"),
        ["gamma", "entry", "estimate", "analytic", "se", "z", "pass"],
        rows,
    )
    if not args.no_figures:
        figures.render_validation(
            runs, cfg.z_threshold, os.path.join(args.out, "validation.png")
        )
    return 0 if all_pass else 1


def cmd_hist(args) -> int:
    cfg = _load(args)
    spec = cfg.spec()
    if spec.replications < 2:
        raise ConfigError("histograms need at least two replications")
    results = run_replications(spec, workers=args.workers)
    Z = standardize(results)
    os.makedirs(args.out, exist_ok=True)
    hists = {}
    ks = {}
    overflow = {}
    for i, name in enumerate(("v0", "v1", "v2")):
        h = histogram(Z[:, i], cfg.lo, cfg.hi, cfg.bins)
        hists[name] = h
        ks[name] = ks_normal(Z[:, i])
        overflow[name] = {"below": h.n_below, "above": h.n_above}
        _write_csv(
            os.path.join(args.out, f"hist_{name}.csv"),
            ["bin_center", "weight"],
            [[_fmt(float(c)), _fmt(float(w))] for c, w in zip(h.centers, h.weights)],
        )
    summary = {"replications": len(results), "ks": ks, "overflow": overflow}
    with open(os.path.join(args.out, "hist_summary.json"), "w", encoding="utf-8") as f:
        json.dump(summary, f, indent=2)
        f.write("\n")
    if not args.no_figures:
        figures.render_histograms(hists, ks, os.path.join(args.out, "hist.png"))
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="boolcov",
        description="Boolean rectangle models: exact functionals, closed-form "
        "covariances, and Monte Carlo validation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    commands = {
        "analytic": (cmd_analytic, "tabulate closed-form densities"),
        "simulate": (cmd_simulate, "run replications and summarize"),
        "validate": (cmd_validate, "compare simulated covariances to closed forms"),
        "hist": (cmd_hist, "histogram standardized functionals"),
    }
    for name, (fn, help_) in commands.items():
        p = sub.add_parser(name, help=help_)
        p.add_argument("--config", required=True, help="path to a config file")
        p.add_argument("--seed", type=int, default=None,
                       help="override the master seed")
        p.add_argument("--workers", type=int, default=None,
                       help="worker processes for replication runs")
        p.add_argument("--out", default="out", help="output directory")
        p.add_argument("--no-figures", action="store_true",
                       help="skip PNG rendering")
        if name == "analytic":
            p.add_argument("--gammas", default=None,
                           help="space- or comma-separated intensities "
                           "(overrides the sweep)")
        p.set_defaults(func=fn)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, GrainSizeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
