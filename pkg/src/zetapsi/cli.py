"""Command-line entry point: ``zetapsi {eval,certify,verify,plot-data}``."""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from dataclasses import dataclass, fields, replace
from pathlib import Path

import mpmath
from mpmath import mpf

from . import certificate, inequality, representations, special_fn
from .errors import DomainError, NumericalError, OutOfDomain, ViolationFound, ZetaPsiError
from .numerics import GridSpec, PrecisionContext, working
from .report import CertificateReport, dumps, format_number

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2

FUNCTIONS = ("zeta", "digamma", "F", "Fprime", "Fsecond", "P", "J")
UNIT_INTERVAL_FNS = {"F", "Fprime", "Fsecond", "P", "J"}
CERTIFY_GRID_POINTS = 1000


@dataclass(frozen=True)
class RunConfig:
    precision_digits: int = 50
    grid_points: int | None = None  # per-command default when unset
    grid_inset: float = 1e-6
    sigma_N: int = 200
    output_format: str = "json"
    output_path: str | None = None
    path: str = "composition"

    def __post_init__(self):
        if self.precision_digits <= 0:
            raise ValueError("precision must be positive")
        if self.grid_points is not None and self.grid_points < 2:
            raise ValueError("grid_points must be at least 2")
        if not self.grid_inset > 0:
            raise ValueError("grid_inset must be positive")
        if self.sigma_N < 2:
            raise ValueError("sigma_N must be >= 2")
        if self.output_format not in ("json", "csv", "text"):
            raise ValueError(f"unknown format {self.output_format!r}")
        if self.path not in ("composition", "direct"):
            raise ValueError(f"unknown evaluation path {self.path!r}")

    def context(self) -> PrecisionContext:
        # keep the tolerance inside what the working precision can deliver
        tol_digits = min(30, (self.precision_digits + 15) // 2)
        return PrecisionContext(work_digits=self.precision_digits, target_tol=10.0**-tol_digits)

    def grid(self, default_points: int) -> GridSpec:
        return GridSpec(0.0, 1.0, self.grid_points or default_points, self.grid_inset)


_CONFIG_KEYS = {
    "precision": ("precision_digits", int),
    "precision_digits": ("precision_digits", int),
    "grid_points": ("grid_points", int),
    "grid-points": ("grid_points", int),
    "grid_inset": ("grid_inset", float),
    "grid-inset": ("grid_inset", float),
    "sigma_N": ("sigma_N", int),
    "sigma-N": ("sigma_N", int),
    "format": ("output_format", str),
    "output_format": ("output_format", str),
    "out": ("output_path", str),
    "output_path": ("output_path", str),
    "path": ("path", str),
}


def read_config_file(path: str | Path) -> dict:
    """Parse ``key=value`` lines; ``#`` starts a comment."""
    values = {}
    text = Path(path).read_text(encoding="utf-8")
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key=value")
        key, value = (p.strip() for p in line.split("=", 1))
        if key not in _CONFIG_KEYS:
            raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
        name, conv = _CONFIG_KEYS[key]
        values[name] = conv(value)
    return values


def build_config(args: argparse.Namespace) -> RunConfig:
    """Defaults, then the config file, then explicit flags."""
    values = {}
    if getattr(args, "config", None):
        values.update(read_config_file(args.config))
    flag_map = {
        "precision": "precision_digits",
        "grid_points": "grid_points",
        "grid_inset": "grid_inset",
        "sigma_N": "sigma_N",
        "format": "output_format",
        "out": "output_path",
        "path": "path",
    }
    for flag, name in flag_map.items():
        v = getattr(args, flag, None)
        if v is not None:
            values[name] = v
    known = {f.name for f in fields(RunConfig)}
    return RunConfig(**{k: v for k, v in values.items() if k in known})


def _emit(text: str, config: RunConfig) -> None:
    if config.output_path:
        Path(config.output_path).write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _report_csv(report: CertificateReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["name", "value", "err", "op", "reference", "pass", "citation"])
    for e in report.entries:
        w.writerow([
            e.name, format_number(e.computed.value), format_number(e.computed.err), e.op,
            format_number(e.reference), "true" if e.passed else "false", e.citation,
        ])
    return buf.getvalue()


def _render_report(report: CertificateReport, config: RunConfig, extra: dict | None = None) -> str:
    if config.output_format == "json":
        return report.to_json(extra)
    if config.output_format == "csv":
        return _report_csv(report)
    lines = [report.text()]
    for k, v in (extra or {}).items():
        lines.append(f"{k}: {mpmath.nstr(v, 12) if isinstance(v, mpf) else v}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def _clamp_to_inset(fn: str, s: mpf, inset: float) -> mpf:
    if fn in UNIT_INTERVAL_FNS:
        if s == 0:
            return mpf(inset)
        if s == 1:
            return 1 - mpf(inset)
    return s


def evaluate(fn: str, s, config: RunConfig):
    """(abscissa used, value, route label) for one of the ``eval`` functions."""
    ctx = config.context()
    with working(ctx):
        s = _clamp_to_inset(fn, mpf(s), config.grid_inset)
        direct = config.path == "direct"
        if fn == "zeta":
            if direct:
                return s, representations.zeta_via_stieltjes_integral(s, ctx), "integral"
            return s, special_fn.zeta(s, ctx), "series"
        if fn == "digamma":
            if direct:
                return s, representations.digamma_via_integral(s, ctx), "integral"
            return s, special_fn.digamma(s, ctx), "asymptotic"
        if fn == "F":
            return s, inequality.F(s, ctx, config.path), config.path
        if fn == "Fprime":
            return s, inequality.F_prime(s, ctx, config.path), config.path
        if fn == "Fsecond":
            return s, inequality.F_second(s, ctx, config.path), config.path
        if fn == "P":
            if direct:
                return s, representations.P_integral(s, ctx), "integral"
            return s, certificate.P_eval(s, ctx), "series"
        if fn == "J":
            if direct:
                return s, representations.J_integral(s, ctx), "integral"
            return s, certificate.J_direct(s, ctx), "quadrature"
        raise ValueError(f"unknown function {fn!r}")


def cmd_eval(fn: str, s: str, config: RunConfig) -> int:
    s_used, value, path = evaluate(fn, s, config)
    doc = {"fn": fn, "s": mpf(s_used), "value": value.value, "err": value.err, "path": path}
    if config.output_format == "json":
        text = dumps(doc)
    elif config.output_format == "csv":
        text = "fn,s,value,err,path\n" + ",".join(
            [fn, format_number(s_used), format_number(value.value), format_number(value.err), path]
        )
    else:
        text = (
            f"{fn}({mpmath.nstr(s_used, 15)}) = {mpmath.nstr(value.value, 20)}"
            f" ± {mpmath.nstr(value.err, 3)}  [{path}]"
        )
    _emit(text, config)
    return EXIT_OK


def cmd_certify(config: RunConfig) -> int:
    ctx = config.context()
    grid = config.grid(CERTIFY_GRID_POINTS)
    report = certificate.convexity_chain(
        ctx, sigma_N=config.sigma_N, grid_points=grid.n_points, grid_inset=grid.inset
    )
    report = report.merged(certificate.boundary_entries(ctx))
    _emit(_render_report(report, config), config)
    return EXIT_OK if report.overall_pass else EXIT_FAIL


def cmd_verify(config: RunConfig) -> int:
    ctx = config.context()
    grid = config.grid(10_000)
    try:
        report = inequality.verify_bounds(grid, ctx)
        report = report.merged(inequality.conjecture_original_form(grid, ctx))
    except ViolationFound as exc:
        sys.stderr.write(f"violation: {exc}\n")
        return EXIT_FAIL
    minimum = inequality.find_minimum(ctx)
    extra_entries = [
        inequality.reflection_equivalence(mpf(x), ctx) for x in ("0.1", "0.25", "0.5", "0.75", "0.9")
    ]
    extra_entries.append(inequality.sharpness_check(ctx))
    report = report.merged(CertificateReport(tuple(extra_entries), ctx))
    lower, upper = inequality.worst_slacks(report)
    extra = {
        "s0": minimum.s0,
        "min_G": minimum.G_at_s0.value,
        "min_G_err": minimum.G_at_s0.err,
        "worst_lower_slack": lower.value,
        "worst_upper_slack": upper.value,
    }
    _emit(_render_report(report, config, extra), config)
    return EXIT_OK if report.overall_pass else EXIT_FAIL


def plot_rows(config: RunConfig) -> list[tuple[float, float, float, float]]:
    ctx = config.context()
    grid = config.grid(10_000)
    with working(ctx):
        line = inequality.LinearBound.from_context(ctx)
        rows = []
        for s in grid.points():
            rows.append((s, inequality.F(s, ctx).value, s, line(s).value))
        return rows


def cmd_plot_data(config: RunConfig) -> int:
    out = ["s,F,lower,upper"]
    for row in plot_rows(config):
        out.append(",".join(f"{float(x):.15g}" for x in row))
    _emit("\n".join(out), config)
    return EXIT_OK


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------


def _positive_int(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _positive_float(text: str) -> float:
    v = float(text)
    if not (v > 0 and math.isfinite(v)):
        raise argparse.ArgumentTypeError("must be a positive number")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", type=_positive_int, help="working decimal digits (default 50)")
    common.add_argument("--grid-points", dest="grid_points", type=_positive_int, help="number of grid abscissae")
    common.add_argument("--grid-inset", dest="grid_inset", type=_positive_float, help="distance of the grid from 0 and 1")
    common.add_argument("--sigma-N", dest="sigma_N", type=_positive_int, help="partial-sum cut-off for the majorant series")
    common.add_argument("--format", choices=("json", "csv", "text"), help="output format (default json)")
    common.add_argument("--out", help="write output to this file instead of stdout")
    common.add_argument("--config", help="key=value configuration file")

    parser = argparse.ArgumentParser(
        prog="zetapsi",
        description="Evaluate F(s) = zeta(s) - psi(1-s) and re-check its bounds and convexity.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="evaluate one function at one point")
    p.add_argument("--fn", required=True, choices=FUNCTIONS)
    p.add_argument("--s", required=True, help="abscissa (decimal string)")
    p.add_argument("--path", choices=("composition", "direct"), help="evaluation route (default composition)")

    sub.add_parser("certify", parents=[common], help="run the convexity ledger and boundary checks")
    sub.add_parser("verify", parents=[common], help="check the linear bounds on a grid and locate min G")
    sub.add_parser("plot-data", parents=[common], help="write s,F,lower,upper as CSV")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = build_config(args)
        if args.command == "eval":
            try:
                s = mpf(args.s)
            except (ValueError, TypeError):
                raise OutOfDomain(f"cannot parse s={args.s!r} as a number") from None
            if not mpmath.isfinite(s):
                raise OutOfDomain("s must be finite")
            return cmd_eval(args.fn, args.s, config)
        if args.command == "certify":
            return cmd_certify(config)
        if args.command == "verify":
            return cmd_verify(config)
        if args.command == "plot-data":
            # plot data is always CSV
            return cmd_plot_data(replace(config, output_format="csv"))
    except DomainError as exc:
        sys.stderr.write(f"domain error: {exc}\n")
        return EXIT_ERROR
    except NumericalError as exc:
        sys.stderr.write(f"numerical error: {exc}\n")
        return EXIT_ERROR
    except ViolationFound as exc:
        sys.stderr.write(f"violation: {exc}\n")
        return EXIT_FAIL
    except ZetaPsiError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_ERROR
    except (OSError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_ERROR
    return EXIT_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
