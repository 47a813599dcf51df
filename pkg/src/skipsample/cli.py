"""Command-line interface: analyze a series from a CSV file, or run one of the
Monte Carlo validation experiments from a JSON config.

Exit codes: 0 success; 1 a simulation check failed; 2 unreadable input or bad
configuration; 3 the requested statistic is degenerate on the given data.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .estimator import VARIANCE_MODES, SkipSamplingEstimator
from .exceptions import DegenerateStatisticError
from .functionals import STATISTIC_NAMES, StatisticSpec
from .simulate import LinearProcessSpec, MonteCarloConfig, ar1_process
from .simulate import run_coverage, run_covariance_decay, run_variance_consistency

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_BAD_INPUT = 2
EXIT_DEGENERATE = 3


class ConfigError(ValueError):
    """Invalid simulation config; the message names the offending field."""


@dataclass(frozen=True)
class AnalysisRequest:
    """Parsed `analyze` invocation; round-trips through ``to_dict``/``from_dict``."""

    input_path: str
    statistic: StatisticSpec
    b: str | int = "auto"
    alpha: float = 0.05
    variance_mode: str = "subsampling-quantiles"
    eta: float | None = None
    bandwidth: int | None = None
    output_format: str = "json"

    def to_dict(self) -> dict:
        return {
            "input": self.input_path,
            "statistic": self.statistic.to_dict(),
            "b": self.b,
            "alpha": self.alpha,
            "variance_mode": self.variance_mode,
            "eta": self.eta,
            "bandwidth": self.bandwidth,
            "format": self.output_format,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "AnalysisRequest":
        return cls(
            input_path=data["input"],
            statistic=StatisticSpec.from_dict(data["statistic"]),
            b=data.get("b", "auto"),
            alpha=data.get("alpha", 0.05),
            variance_mode=data.get("variance_mode", "subsampling-quantiles"),
            eta=data.get("eta"),
            bandwidth=data.get("bandwidth"),
            output_format=data.get("format", "json"),
        )


def read_series_csv(path: str) -> list:
    """One numeric value per line, UTF-8; a non-numeric first line is a header."""
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise ValueError("input: file is empty")
    start = 0
    try:
        float(lines[0])
    except ValueError:
        start = 1
    values = []
    for number, line in enumerate(lines[start:], start=start + 1):
        text = line.strip()
        if text == "":
            raise ValueError(f"input: missing value on line {number}")
        try:
            value = float(text)
        except ValueError as exc:
            raise ValueError(f"input: non-numeric value {text!r} on line {number}") from exc
        if value != value or value in (float("inf"), float("-inf")):
            raise ValueError(f"input: non-finite value on line {number}")
        values.append(value)
    if not values:
        raise ValueError("input: no data rows")
    return values


def _parse_coefficients(text: str | None) -> tuple:
    if text is None or text.strip() == "":
        return ()
    try:
        return tuple(float(part) for part in text.split(","))
    except ValueError as exc:
        raise ValueError(f"statistic: bad coefficient list {text!r}") from exc


def build_analysis_report(request: AnalysisRequest, estimator: SkipSamplingEstimator) -> dict:
    plan = estimator.plan_
    report = {
        "schema_version": 1,
        "request": request.to_dict(),
        "plan": {
            "T": plan.n_total,
            "b": plan.block_length,
            "q": plan.n_subsamples,
            "effective_T": plan.n_effective,
        },
        "theta_hat": float(estimator.theta_),
        "v_hat": float(estimator.variance_.v_hat),
        "variance_corrected": bool(estimator.variance_.corrected),
        "confidence_interval": {
            "alpha": float(request.alpha),
            "method": request.variance_mode,
            "lower": float(estimator.interval_.lower),
            "upper": float(estimator.interval_.upper),
        },
        "skip_statistics": [float(v) for v in estimator.skip_statistics_],
    }
    return report


def _flatten(report: dict, prefix: str = "") -> list:
    rows = []
    for key, value in report.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            rows.extend(_flatten(value, prefix=f"{name}."))
        elif isinstance(value, list):
            for i, item in enumerate(value, start=1):
                rows.append((f"{name}[{i}]", item))
        else:
            rows.append((name, value))
    return rows


def render_report(report: dict, output_format: str) -> str:
    """JSON or key,value CSV; numbers print identically (shortest round-trip form)."""
    if output_format == "json":
        return json.dumps(report, indent=2)
    lines = ["key,value"]
    for key, value in _flatten(report):
        if isinstance(value, float):
            text = repr(value)
        elif isinstance(value, bool):
            text = "true" if value else "false"
        elif value is None:
            text = ""
        else:
            text = str(value)
        lines.append(f"{key},{text}")
    return "\n".join(lines)


def cmd_analyze(args) -> int:
    try:
        statistic = StatisticSpec(
            name=args.statistic,
            k=args.k,
            cos_coefficients=_parse_coefficients(args.cos),
            sin_coefficients=_parse_coefficients(args.sin),
        )
        request = AnalysisRequest(
            input_path=args.input,
            statistic=statistic,
            b=args.b if args.b == "auto" else int(args.b),
            alpha=args.alpha,
            variance_mode=args.variance_mode,
            eta=args.eta,
            bandwidth=args.bandwidth,
            output_format=args.format,
        )
        values = read_series_csv(args.input)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT

    estimator = SkipSamplingEstimator(
        statistic=request.statistic.name,
        k=request.statistic.k,
        cos_coefficients=request.statistic.cos_coefficients,
        sin_coefficients=request.statistic.sin_coefficients,
        b=request.b,
        alpha=request.alpha,
        variance_mode=request.variance_mode,
        eta=request.eta,
        bandwidth=request.bandwidth,
    )
    try:
        estimator.fit(values)
    except DegenerateStatisticError as exc:
        print(f"error: degenerate statistic: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except ValueError as exc:
        print(f"error: estimation setup: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT

    print(render_report(build_analysis_report(request, estimator), request.output_format))
    return EXIT_OK


def _require(config: dict, field: str, kind, context: str = "config"):
    if field not in config:
        raise ConfigError(f"{context}.{field}: missing required field")
    value = config[field]
    if kind is int and isinstance(value, bool):
        raise ConfigError(f"{context}.{field}: expected {kind.__name__}")
    if kind is float and isinstance(value, int) and not isinstance(value, bool):
        value = float(value)
    if not isinstance(value, kind):
        raise ConfigError(f"{context}.{field}: expected {kind.__name__}")
    return value


def _process_from_config(data: dict) -> LinearProcessSpec:
    kind = data.get("kind", "linear")
    try:
        if kind == "ar1":
            return ar1_process(
                phi=_require(data, "phi", (int, float), "process"),
                sigma2=data.get("sigma2", 1.0),
                innovation=data.get("innovation", "gaussian"),
                df=data.get("df"),
                mean=data.get("mean", 0.0),
            )
        if kind == "linear":
            return LinearProcessSpec(
                ma_coefficients=tuple(_require(data, "psi", list, "process")),
                innovation=data.get("innovation", "gaussian"),
                df=data.get("df"),
                sigma2=data.get("sigma2", 1.0),
                mean=data.get("mean", 0.0),
            )
    except ValueError as exc:
        raise ConfigError(f"process: {exc}") from exc
    raise ConfigError(f"process.kind: unknown kind {kind!r}")


def _statistic_from_config(data: dict) -> StatisticSpec:
    try:
        return StatisticSpec.from_dict(data)
    except ValueError as exc:
        raise ConfigError(f"statistic: {exc}") from exc


def run_simulation_config(config: dict, workers: int | None = None) -> dict:
    """Dispatch a parsed JSON config to the matching experiment driver."""
    experiment = _require(config, "experiment", str)
    spec = _process_from_config(_require(config, "process", dict))
    statistic = _statistic_from_config(_require(config, "statistic", dict))
    n_workers = int(workers if workers is not None else config.get("workers", 1))

    if experiment == "covariance_decay":
        t_list = _require(config, "T_list", list)
        try:
            return run_covariance_decay(
                spec,
                block_length=_require(config, "b", int),
                T_list=[int(t) for t in t_list],
                replications=_require(config, "replications", int),
                seed=_require(config, "seed", int),
                statistic=statistic,
                workers=n_workers,
            )
        except ValueError as exc:
            raise ConfigError(f"config: {exc}") from exc

    try:
        mc = MonteCarloConfig(
            replications=_require(config, "replications", int),
            n_total=_require(config, "T", int),
            block_length=_require(config, "b", int),
            seed=_require(config, "seed", int),
            statistic=statistic,
            alpha=config.get("alpha", 0.05),
            workers=n_workers,
        )
        if experiment == "variance_consistency":
            hybrid = config.get("hybrid")
            return run_variance_consistency(
                mc,
                spec,
                hybrid_eta=None if hybrid is None else _require(hybrid, "eta", (int, float), "hybrid"),
                hybrid_bandwidth=None if hybrid is None else hybrid.get("bandwidth"),
                tolerance=config.get("tolerance", 0.15),
                include_replications=bool(config.get("include_replications", False)),
            )
        if experiment == "coverage":
            return run_coverage(
                mc,
                spec,
                true_theta=config.get("true_theta"),
                coverage_range=tuple(config.get("coverage_range", (0.90, 0.98))),
                include_replications=bool(config.get("include_replications", False)),
            )
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(f"config: {exc}") from exc
    raise ConfigError(f"experiment: unknown experiment {experiment!r}")


def cmd_simulate(args) -> int:
    try:
        with open(args.config, "r", encoding="utf-8") as fh:
            config = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: config: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    try:
        report = run_simulation_config(config, workers=args.workers)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT

    text = json.dumps(report, indent=2)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return EXIT_OK if report.get("all_passed", True) else EXIT_CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="skipsample",
        description="Frequency-domain subsampling inference for stationary time series.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", help="estimate a statistic with confidence interval")
    analyze.add_argument("--input", required=True, help="CSV file, one value per line")
    analyze.add_argument("--statistic", required=True, choices=STATISTIC_NAMES)
    analyze.add_argument("--k", type=int, default=1, help="lag for autocovariance/autocorrelation")
    analyze.add_argument("--cos", default=None, help="comma-separated cosine coefficients (custom)")
    analyze.add_argument("--sin", default=None, help="comma-separated sine coefficients (custom)")
    analyze.add_argument("--b", default="auto", help="block length, or 'auto' for floor(T**0.4)")
    analyze.add_argument("--alpha", type=float, default=0.05)
    analyze.add_argument("--variance-mode", dest="variance_mode", default="subsampling-quantiles",
                         choices=VARIANCE_MODES)
    analyze.add_argument("--eta", type=float, default=None, help="kurtosis for normal-hybrid")
    analyze.add_argument("--bandwidth", type=int, default=None, help="lag-window bandwidth")
    analyze.add_argument("--format", default="json", choices=("json", "csv"))
    analyze.set_defaults(func=cmd_analyze)

    simulate = sub.add_parser("simulate", help="run a Monte Carlo experiment from a JSON config")
    simulate.add_argument("--config", required=True, help="JSON experiment config")
    simulate.add_argument("--out", default=None, help="write the JSON report here instead of stdout")
    simulate.add_argument("--workers", type=int, default=None,
                          help="process count (overrides the config; never affects results)")
    simulate.set_defaults(func=cmd_simulate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
