"""Command-line pipeline: per-asset stats tables, ranked groupings,
simulation plus forecast evaluation, and the full report run.

Every command writes CSV files (12 significant digits) plus a JSON
manifest carrying the configuration, seed and a content hash per file,
so any run can be audited and reproduced byte for byte.

Exit codes: 0 success, 1 usage error, 2 data error, 3 numeric error.
"""

import argparse
import hashlib
import json
import sys
import zlib
from dataclasses import asdict
from pathlib import Path

from . import _kernels
from .config import RunConfig, apply_overrides, load_config, parse_horizons
from .errors import DataError, NumericError
from .evaluation import evaluate_ensemble
from .gbm import GbmParams, SimulationConfig, envelope, simulate_ensemble
from .market_data import PriceSeries, align_panel, load_csv, slice_panel, slice_period
from .portfolio import (
    Portfolio,
    Weights,
    optimize_max_sharpe,
    portfolio_value_series,
    rank_and_group,
)
from .stats import asset_stats

import numpy as np

METRICS = ("return", "risk", "sharpe")
ENVELOPE_QUANTILES = (0.05, 0.95)


def _fmt(x):
    if x is None:
        return "NA"
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(x)


def _write_csv(path, header, rows):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def _config_dict(config):
    d = asdict(config)
    d.pop("out_dir")  # where the files land is not part of the results
    for key in ("calibration_start", "calibration_end", "evaluation_start", "evaluation_end"):
        d[key] = d[key].isoformat()
    d["horizons"] = [{"label": h["label"], "days": h["days"]} for h in d["horizons"]]
    return d


def _write_manifest(out_dir, command, config, files):
    hashes = {}
    for name in sorted(files):
        hashes[name] = hashlib.sha256((out_dir / name).read_bytes()).hexdigest()
    manifest = {
        "command": command,
        "backend": _kernels.BACKEND,
        "config": _config_dict(config),
        "files": hashes,
    }
    with open(out_dir / "run_manifest.json", "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _subject_seed(config, name):
    # stable per-subject stream, independent of which subjects a run includes
    return (config.seed << 32) ^ zlib.crc32(name.encode())


def _universe_tickers(config):
    paths = sorted(Path(config.data_dir).glob("*.csv"))
    if not paths:
        raise DataError(f"no CSV files in {config.data_dir}")
    return [p.stem for p in paths]


def _load_series(config, ticker):
    return load_csv(Path(config.data_dir) / f"{ticker}.csv", ticker)


def _load_panel(config, tickers, start, end):
    series = [_load_series(config, t) for t in tickers]
    return slice_panel(align_panel(series), start, end)


# ---------------------------------------------------------------------------
# stats

def cmd_stats(config, tickers):
    out_dir = Path(config.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    rows = []
    for ticker in tickers:
        series = slice_period(
            _load_series(config, ticker), config.calibration_start, config.calibration_end
        )
        s = asset_stats(series, config.risk_free)
        rows.append((s.ticker, s.return_annual, s.risk_annual, s.sharpe))

    _write_csv(out_dir / "stats.csv", ["ticker", "return_annual", "risk_annual", "sharpe"], rows)
    with open(out_dir / "stats.txt", "w", encoding="utf-8") as fh:
        fh.write(f"{'ticker':<10}{'return':>12}{'risk':>12}{'sharpe':>10}\n")
        for ticker, ret, risk, sharpe in rows:
            sh = "NA" if sharpe is None else f"{sharpe:.3f}"
            fh.write(f"{ticker:<10}{ret:>12.4f}{risk:>12.4f}{sh:>10}\n")
    _write_manifest(out_dir, "stats", config, ["stats.csv", "stats.txt"])
    return 0


# ---------------------------------------------------------------------------
# group

def _grouping(config, metric, calibration_panel):
    return rank_and_group(
        calibration_panel,
        metric,
        config.risk_free,
        group_count=config.group_count,
        group_size=config.group_size,
    )


def _group_weights(config, metric, members, calibration_panel):
    """Equal weights for return/risk groups; max-Sharpe weights otherwise."""
    sub = align_panel([calibration_panel.column(t) for t in members])
    if metric == "sharpe":
        weights, _ = optimize_max_sharpe(
            sub,
            config.n_trials,
            _subject_seed(config, f"opt-{metric}-{'-'.join(members)}"),
            config.risk_free,
        )
        return weights
    return Weights(np.full(len(members), 1.0 / len(members)))


def cmd_group(config, metric):
    if metric not in METRICS:
        raise DataError(f"unknown metric {metric!r}")
    out_dir = Path(config.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    panel = _load_panel(
        config, _universe_tickers(config), config.calibration_start, config.calibration_end
    )
    grouping = _grouping(config, metric, panel)

    rows = [
        (g + 1, rank + 1, ticker)
        for g, members in enumerate(grouping.groups)
        for rank, ticker in enumerate(members)
    ]
    files = [f"groups_{metric}.csv"]
    _write_csv(out_dir / files[0], ["group", "rank", "ticker"], rows)

    if metric == "sharpe":
        weight_rows = []
        for g, members in enumerate(grouping.groups):
            weights = _group_weights(config, metric, members, panel)
            weight_rows.extend(
                (g + 1, ticker, w) for ticker, w in zip(members, weights.values)
            )
        files.append("weights_sharpe.csv")
        _write_csv(out_dir / files[1], ["group", "ticker", "weight"], weight_rows)

    _write_manifest(out_dir, f"group-{metric}", config, files)
    return 0


# ---------------------------------------------------------------------------
# simulate

def _horizon_max(config):
    return max(h.days for h in config.horizons)


def _forecast_subject(config, name, calibration_series, actual_series):
    """Calibrate on the history, simulate, score against realized prices.

    actual_series index 0 is the last calibration price (the simulation's
    day 0); it must extend at least max-horizon days beyond that.
    """
    stats = asset_stats(calibration_series, config.risk_free)
    params = GbmParams(
        s0=float(calibration_series.prices[-1]), mu=stats.mu_daily, sigma=stats.sigma_daily
    )
    sim = SimulationConfig(
        n_paths=config.n_paths, horizon=_horizon_max(config), seed=_subject_seed(config, name)
    )
    paths = simulate_ensemble(params, sim)
    report = evaluate_ensemble(
        paths, actual_series, config.horizons, denominator=config.mape_denominator
    )
    band = envelope(paths, *ENVELOPE_QUANTILES)
    return report, band, actual_series


def _spliced_actual(name, calibration_series, evaluation_series, max_h):
    if len(evaluation_series) < max_h:
        raise DataError(f"{name}: evaluation window shorter than horizon {max_h}")
    dates = (calibration_series.dates[-1],) + evaluation_series.dates[:max_h]
    prices = np.concatenate(
        ([calibration_series.prices[-1]], evaluation_series.prices[:max_h])
    )
    return PriceSeries(name, dates, prices)


def _ticker_subject(config, ticker):
    series = _load_series(config, ticker)
    calib = slice_period(series, config.calibration_start, config.calibration_end)
    ev = slice_period(series, config.evaluation_start, config.evaluation_end)
    actual = _spliced_actual(ticker, calib, ev, _horizon_max(config))
    return calib, actual


def _group_subject(config, metric, index, full_panel, calibration_panel):
    grouping = _grouping(config, metric, calibration_panel)
    members = grouping.groups[index]
    weights = _group_weights(config, metric, members, calibration_panel)
    capital = 100.0 * len(members)
    name = f"{metric}-{index + 1}"
    sub_full = align_panel([full_panel.column(t) for t in members])
    value = portfolio_value_series(sub_full, weights, capital, name=name)
    calib = slice_period(value, config.calibration_start, config.calibration_end)
    ev = slice_period(value, config.evaluation_start, config.evaluation_end)
    actual = _spliced_actual(name, calib, ev, _horizon_max(config))
    portfolio = Portfolio(tuple(members), weights, capital, value)
    return calib, actual, portfolio


def _emit_subject(out_dir, config, name, calib, actual):
    report, band, actual = _forecast_subject(config, name, calib, actual)
    report_rows = [
        (r.horizon.label, r.horizon.days, r.mean_correlation, r.mape, r.band)
        for r in report.results
    ]
    _write_csv(
        out_dir / f"report_{name}.csv",
        ["horizon", "days", "mean_correlation", "mape", "band"],
        report_rows,
    )
    env_rows = [
        (k, actual.dates[k].isoformat(), actual.prices[k], band.mean[k], band.lower[k], band.upper[k])
        for k in range(len(actual))
    ]
    _write_csv(
        out_dir / f"envelope_{name}.csv",
        ["day_index", "date", "actual", "mean", "q05", "q95"],
        env_rows,
    )
    return report, [f"report_{name}.csv", f"envelope_{name}.csv"]


def _parse_subject(subject):
    for metric in METRICS:
        prefix = metric + "-"
        if subject.startswith(prefix):
            try:
                index = int(subject[len(prefix):]) - 1
            except ValueError:
                raise DataError(f"bad group subject {subject!r}") from None
            return metric, index
    return None


def _summary_rows(reports):
    rows = []
    for report in reports:
        for r in report.results:
            rows.append(
                (report.subject, r.horizon.label, r.horizon.days, r.mean_correlation, r.mape, r.band)
            )
    # final mean row per horizon, the summary-table convention
    if reports:
        for i, r0 in enumerate(reports[0].results):
            corrs = [rep.results[i].mean_correlation for rep in reports]
            corrs = [c for c in corrs if c is not None]
            mean_corr = sum(corrs) / len(corrs) if corrs else None
            mean_mape = sum(rep.results[i].mape for rep in reports) / len(reports)
            rows.append(("MEAN", r0.horizon.label, r0.horizon.days, mean_corr, mean_mape, ""))
    return rows


def cmd_simulate(config, subject):
    out_dir = Path(config.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    files = []
    reports = []

    group_ref = _parse_subject(subject) if subject != "all" else None
    if subject == "all" or group_ref is not None:
        tickers = _universe_tickers(config)
        full_panel = slice_panel(
            align_panel([_load_series(config, t) for t in tickers]),
            config.calibration_start,
            config.evaluation_end,
        )
        calibration_panel = slice_panel(
            full_panel, config.calibration_start, config.calibration_end
        )

    if subject == "all":
        for ticker in tickers:
            calib = slice_period(
                full_panel.column(ticker), config.calibration_start, config.calibration_end
            )
            ev = slice_period(
                full_panel.column(ticker), config.evaluation_start, config.evaluation_end
            )
            actual = _spliced_actual(ticker, calib, ev, _horizon_max(config))
            report, emitted = _emit_subject(out_dir, config, ticker, calib, actual)
            reports.append(report)
            files.extend(emitted)
        for metric in METRICS:
            for index in range(config.group_count):
                calib, actual, _ = _group_subject(
                    config, metric, index, full_panel, calibration_panel
                )
                report, emitted = _emit_subject(
                    out_dir, config, f"{metric}-{index + 1}", calib, actual
                )
                reports.append(report)
                files.extend(emitted)
        _write_csv(
            out_dir / "summary.csv",
            ["subject", "horizon", "days", "mean_correlation", "mape", "band"],
            _summary_rows(reports),
        )
        files.append("summary.csv")
    elif group_ref is not None:
        metric, index = group_ref
        if not (0 <= index < config.group_count):
            raise DataError(f"group index out of range in {subject!r}")
        calib, actual, _ = _group_subject(config, metric, index, full_panel, calibration_panel)
        _, emitted = _emit_subject(out_dir, config, subject, calib, actual)
        files.extend(emitted)
    else:
        calib, actual = _ticker_subject(config, subject)
        _, emitted = _emit_subject(out_dir, config, subject, calib, actual)
        files.extend(emitted)

    _write_manifest(out_dir, f"simulate-{subject}", config, files)
    return 0


def cmd_report(config):
    """End-to-end run: stats for the whole universe, all groupings, all subjects."""
    cmd_stats(config, _universe_tickers(config))
    for metric in METRICS:
        cmd_group(config, metric)
    cmd_simulate(config, "all")
    # the last manifest wins; rebuild it over everything present
    out_dir = Path(config.out_dir)
    files = sorted(p.name for p in out_dir.iterdir() if p.name != "run_manifest.json")
    _write_manifest(out_dir, "report", config, files)
    return 0


# ---------------------------------------------------------------------------
# argument parsing

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(1)


def build_parser():
    parser = _Parser(prog="gbmfolio", description=__doc__)
    parser.add_argument("--config", help="flat key=value config file")
    parser.add_argument("--data-dir", help="directory of <TICKER>.csv files")
    parser.add_argument("--out-dir", help="output directory")
    parser.add_argument("--seed", type=int)
    parser.add_argument("--paths", type=int, help="simulated paths per subject")
    parser.add_argument("--trials", type=int, help="random portfolios per optimization")
    parser.add_argument("--risk-free", type=float, help="annual risk-free rate")
    parser.add_argument("--horizons", help="label:days list, e.g. 1w:5,1m:21")
    parser.add_argument("--group-count", type=int)
    parser.add_argument("--group-size", type=int)
    parser.add_argument("--calibration-start")
    parser.add_argument("--calibration-end")
    parser.add_argument("--evaluation-start")
    parser.add_argument("--evaluation-end")

    sub = parser.add_subparsers(dest="command", required=True)
    p_stats = sub.add_parser("stats", help="per-asset return/risk/Sharpe table")
    p_stats.add_argument("tickers", nargs="*")
    p_group = sub.add_parser("group", help="ranked grouping of the universe")
    p_group.add_argument("--metric", required=True, choices=METRICS)
    p_sim = sub.add_parser("simulate", help="simulate and evaluate forecasts")
    p_sim.add_argument("--subject", required=True, help="ticker, <metric>-<n>, or all")
    sub.add_parser("report", help="full pipeline over the whole universe")
    return parser


def _resolve_config(args):
    import datetime as dt

    config = load_config(args.config) if args.config else RunConfig()
    date = dt.date.fromisoformat
    return apply_overrides(
        config,
        data_dir=args.data_dir,
        out_dir=args.out_dir,
        seed=args.seed,
        n_paths=args.paths,
        n_trials=args.trials,
        risk_free=args.risk_free,
        horizons=parse_horizons(args.horizons) if args.horizons else None,
        group_count=args.group_count,
        group_size=args.group_size,
        calibration_start=date(args.calibration_start) if args.calibration_start else None,
        calibration_end=date(args.calibration_end) if args.calibration_end else None,
        evaluation_start=date(args.evaluation_start) if args.evaluation_start else None,
        evaluation_end=date(args.evaluation_end) if args.evaluation_end else None,
    )


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        config = _resolve_config(args)
        if args.command == "stats":
            return cmd_stats(config, args.tickers)
        if args.command == "group":
            return cmd_group(config, args.metric)
        if args.command == "simulate":
            return cmd_simulate(config, args.subject)
        return cmd_report(config)
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 2
    except NumericError as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
