"""Command-line interface.

Subcommands: ``metrics`` (class-model report from an .omdl file), ``fit``
(regression on a CSV or the built-in dataset), ``predict`` (fit then
evaluate at given predictor values), ``dataset`` (dump a data source),
``plot`` (scatter files per y column).

Exit codes: 0 success, 1 I/O failure, 2 parse/usage error, 3 model
validation diagnostics, 4 computation or domain error.  The MOODKIT_FORMAT
environment variable sets the default output format (table, json, csv).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from typing import Optional, Sequence

from . import class_model, metrics as metrics_mod, omdl, regression
from .dataset import Dataset, builtin_table1, read_csv, scatter, svg_scatter, write_csv
from .errors import MalformedRowError, MoodkitError, NonNumericError
from .omdl import ParseError
from .regression import FitResult, ModelSpec

FORMATS = ("table", "json", "csv")
BUILTIN_SOURCES = {"builtin:table1": builtin_table1}


class _UsageError(Exception):
    """Bad command line or bad source token; maps to exit 2."""


class _ValidationFailed(Exception):
    def __init__(self, diagnostics: list[class_model.Diagnostic]):
        self.diagnostics = diagnostics
        super().__init__(f"{len(diagnostics)} validation diagnostic(s)")


def _default_format() -> str:
    fmt = os.environ.get("MOODKIT_FORMAT", "table")
    if fmt not in FORMATS:
        raise _UsageError(
            f"MOODKIT_FORMAT must be one of {', '.join(FORMATS)}, got {fmt!r}")
    return fmt


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="moodkit",
        description="Class-model design metrics and size-measure regression.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser):
        p.add_argument("--format", choices=FORMATS, default=None,
                       help="output format (default: table, or MOODKIT_FORMAT)")
        p.add_argument("-o", "--output", default=None,
                       help="write output to this file instead of stdout")

    p = sub.add_parser("metrics", help="compute design metrics from an .omdl file")
    p.add_argument("model_path", help="path to an .omdl model file")
    add_common(p)

    p = sub.add_parser("fit", help="least-squares fit on a dataset")
    p.add_argument("source", help="CSV path or builtin:table1")
    p.add_argument("--response", required=True,
                   help="response column, or 'all' for the four-way interchange")
    add_common(p)

    p = sub.add_parser("predict", help="fit, then evaluate at given values")
    p.add_argument("source", help="CSV path or builtin:table1")
    p.add_argument("--response", required=True, help="response column")
    add_common(p)

    p = sub.add_parser("dataset", help="dump a data source")
    p.add_argument("source", help="CSV path or builtin:table1")
    add_common(p)

    p = sub.add_parser("plot", help="write scatter files, one per y column")
    p.add_argument("source", help="CSV path or builtin:table1")
    p.add_argument("--x", required=True, help="x-axis column")
    p.add_argument("--y", required=True,
                   help="comma-separated y-axis columns")
    p.add_argument("--log10", action="store_true",
                   help="transform both axes to log base 10")
    p.add_argument("--svg", action="store_true",
                   help="emit SVG images instead of CSV point files")
    p.add_argument("--out", required=True, help="output directory")
    return parser


def _load_source(token: str) -> Dataset:
    if token.startswith("builtin:"):
        loader = BUILTIN_SOURCES.get(token)
        if loader is None:
            raise _UsageError(
                f"unknown builtin dataset {token!r}; available: "
                + ", ".join(sorted(BUILTIN_SOURCES)))
        return loader()
    with open(token, "r", encoding="utf-8", newline="") as fh:
        return read_csv(fh, provenance=token)


def _emit(text: str, output: Optional[str]):
    if output is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)


# Display rounding mirrors conventional statistics-package output: estimates
# to 3 decimals, p-values to 3 decimals (so anything below 0.0005 prints as
# 0.000), big sums of squares in short scientific form.
def _fmt3(v: float) -> str:
    return f"{v:.3f}"


def _fmt_p(v: float) -> str:
    return f"{v:.3f}"


def _fmt_ss(v: float) -> str:
    if v != v or v in (math.inf, -math.inf):
        return str(v)
    if abs(v) >= 1e7:
        return f"{v:.4E}"
    return f"{v:.3f}"


def _metrics_table(report: metrics_mod.MoodReport) -> str:
    rows = []
    for key in ("mhf", "ahf", "mif", "aif", "pf", "cf"):
        mv: metrics_mod.MetricValue = getattr(report, key)
        if mv.defined:
            rows.append((key.upper(), f"{mv.value:.4f}",
                         f"{mv.numerator}/{mv.denominator}", ""))
        else:
            rows.append((key.upper(), "undefined",
                         f"{mv.numerator}/{mv.denominator}",
                         mv.undefined_reason or ""))
    lines = [f"classes: {report.tc}", ""]
    lines.append(f"{'metric':<8}{'value':>12}  {'ratio':>12}  note")
    for name, value, ratio, note in rows:
        lines.append(f"{name:<8}{value:>12}  {ratio:>12}  {note}".rstrip())
    return "\n".join(lines) + "\n"


def _metrics_csv(report: metrics_mod.MoodReport) -> str:
    lines = ["metric,value,numerator,denominator,undefined_reason"]
    for key in ("mhf", "ahf", "mif", "aif", "pf", "cf"):
        mv: metrics_mod.MetricValue = getattr(report, key)
        value = "" if mv.value is None else repr(mv.value)
        reason = mv.undefined_reason or ""
        lines.append(f"{key},{value},{mv.numerator},{mv.denominator},{reason}")
    lines.append(f"tc,{report.tc},,,")
    return "\n".join(lines) + "\n"


def cmd_metrics(args) -> str:
    with open(args.model_path, "r", encoding="utf-8") as fh:
        source = fh.read()
    doc = omdl.parse(source)
    diags = class_model.validate(doc.model)
    if diags:
        raise _ValidationFailed(diags)
    report = metrics_mod.compute_all(doc.model)
    fmt = args.format or _default_format()
    if fmt == "json":
        return json.dumps(report.to_json(), indent=2) + "\n"
    if fmt == "csv":
        return _metrics_csv(report)
    return _metrics_table(report)


def _fit_table(fit: FitResult) -> str:
    spec = fit.spec
    lines = [
        f"response: {spec.response}   predictors: "
        + ", ".join(spec.predictors) + f"   n = {fit.n}",
        "",
        "coefficients",
        f"  {'term':<12}{'beta':>16}{'std error':>16}{'t':>12}{'p':>8}",
    ]
    for c in fit.coefficients:
        lines.append(
            f"  {c.name:<12}{_fmt3(c.beta):>16}{_fmt3(c.std_error):>16}"
            f"{_fmt3(c.t_stat):>12}{_fmt_p(c.p_value):>8}")
    lines += [
        "",
        "model summary",
        f"  r-squared            {fit.r_squared:.3f}",
        f"  adj r-squared        {fit.adj_r_squared:.3f}",
        f"  std error of est.    {fit.std_error_estimate:.2f}",
        "",
        "anova",
        f"  {'source':<12}{'ss':>14}{'df':>6}{'ms':>14}{'F':>12}{'p':>8}",
    ]
    a = fit.anova
    lines.append(
        f"  {'regression':<12}{_fmt_ss(a.ss_regression):>14}"
        f"{a.df_regression:>6}{_fmt_ss(a.ms_regression):>14}"
        f"{_fmt3(a.f_stat):>12}{_fmt_p(a.p_value):>8}")
    lines.append(
        f"  {'residual':<12}{_fmt_ss(a.ss_residual):>14}"
        f"{a.df_residual:>6}{_fmt_ss(a.ms_residual):>14}")
    lines.append(
        f"  {'total':<12}{_fmt_ss(a.ss_total):>14}{a.df_total:>6}")
    return "\n".join(lines) + "\n"


def _fit_csv(fits: list[FitResult]) -> str:
    lines = ["response,term,beta,std_error,t,p"]
    for fit in fits:
        for c in fit.coefficients:
            lines.append(
                f"{fit.spec.response},{c.name},{c.beta!r},{c.std_error!r},"
                f"{c.t_stat!r},{c.p_value!r}")
    return "\n".join(lines) + "\n"


def _render_fits(fits: list[FitResult], many: bool, fmt: str) -> str:
    if fmt == "json":
        payload = [f.to_json() for f in fits] if many else fits[0].to_json()
        return json.dumps(payload, indent=2) + "\n"
    if fmt == "csv":
        return _fit_csv(fits)
    return "\n".join(_fit_table(f) for f in fits)


def cmd_fit(args) -> str:
    data = _load_source(args.source)
    fmt = args.format or _default_format()
    if args.response == "all":
        fits = regression.fit_all_interchange(data)
        return _render_fits(fits, True, fmt)
    response = data.resolve(args.response)
    predictors = tuple(c for c in data.columns if c != response)
    fit = regression.fit(data, ModelSpec(response=response, predictors=predictors))
    return _render_fits([fit], False, fmt)


def _parse_value_flags(extras: Sequence[str]) -> dict[str, float]:
    values: dict[str, float] = {}
    i = 0
    while i < len(extras):
        item = extras[i]
        if not item.startswith("--") or len(item) <= 2:
            raise _UsageError(f"unexpected argument {item!r}; "
                              "expected --<COLUMN> <value> pairs")
        name, eq, text = item[2:].partition("=")
        if not eq:
            i += 1
            if i >= len(extras):
                raise _UsageError(f"flag --{name} is missing a value")
            text = extras[i]
        if name in values:
            raise _UsageError(f"duplicate value for --{name}")
        try:
            values[name] = float(text)
        except ValueError:
            raise _UsageError(
                f"value for --{name} must be numeric, got {text!r}") from None
        i += 1
    return values


def cmd_predict(args, extras: Sequence[str]) -> str:
    data = _load_source(args.source)
    response = data.resolve(args.response)
    predictors = tuple(c for c in data.columns if c != response)
    fit = regression.fit(data, ModelSpec(response=response, predictors=predictors))
    values = _parse_value_flags(extras)
    prediction = regression.predict(fit, values)
    fmt = args.format or _default_format()
    if fmt == "json":
        return json.dumps({"response": response,
                           "inputs": values,
                           "prediction": prediction}, indent=2) + "\n"
    if fmt == "csv":
        return f"response,prediction\n{response},{prediction!r}\n"
    return f"{prediction!r}\n"


def cmd_dataset(args) -> str:
    data = _load_source(args.source)
    fmt = args.format or _default_format()
    if fmt == "json":
        return json.dumps({"columns": list(data.columns),
                           "provenance": data.provenance,
                           "rows": [list(r) for r in data.rows]},
                          indent=2) + "\n"
    if fmt == "csv":
        import io
        buf = io.StringIO()
        write_csv(data, buf)
        return buf.getvalue()
    widths = [max(len(c), 12) for c in data.columns]
    lines = ["  ".join(c.rjust(w) for c, w in zip(data.columns, widths))]
    for row in data.rows:
        cells = []
        for v, w in zip(row, widths):
            text = str(int(v)) if v == int(v) else f"{v:.6g}"
            cells.append(text.rjust(w))
        lines.append("  ".join(cells))
    lines.append(f"rows: {data.n_rows}   provenance: {data.provenance}")
    return "\n".join(lines) + "\n"


def cmd_plot(args) -> list[str]:
    data = _load_source(args.source)
    ys = [part for part in args.y.split(",") if part]
    if not ys:
        raise _UsageError("--y needs at least one column name")
    series_list = scatter(data, args.x, ys, log10=args.log10)
    os.makedirs(args.out, exist_ok=True)
    written: list[str] = []
    suffix = "_log10" if args.log10 else ""
    for series in series_list:
        stem = f"{series.y_name}_vs_{series.x_name}{suffix}"
        if args.svg:
            path = os.path.join(args.out, stem + ".svg")
            payload = svg_scatter(series)
        else:
            path = os.path.join(args.out, stem + ".csv")
            x_label = series.x_name + suffix
            y_label = series.y_name + suffix
            lines = [f"{x_label},{y_label}"]
            lines += [f"{x!r},{y!r}" for x, y in series.points]
            payload = "\n".join(lines) + "\n"
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(payload)
        written.append(path)
    return written


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args, extras = parser.parse_known_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if extras and args.command != "predict":
            raise _UsageError(f"unrecognized arguments: {' '.join(extras)}")
        if args.command == "metrics":
            _emit(cmd_metrics(args), args.output)
        elif args.command == "fit":
            _emit(cmd_fit(args), args.output)
        elif args.command == "predict":
            _emit(cmd_predict(args, extras), args.output)
        elif args.command == "dataset":
            _emit(cmd_dataset(args), args.output)
        elif args.command == "plot":
            for path in cmd_plot(args):
                sys.stdout.write(path + "\n")
        return 0
    except _UsageError as exc:
        print(f"moodkit: error: {exc}", file=sys.stderr)
        return 2
    except _ValidationFailed as exc:
        for d in exc.diagnostics:
            where = f" [{d.class_name}]" if d.class_name else ""
            print(f"moodkit: {d.code}{where}: {d.message}", file=sys.stderr)
        return 3
    except (ParseError, MalformedRowError, NonNumericError) as exc:
        print(f"moodkit: {exc.code}: {exc}", file=sys.stderr)
        return 2
    except MoodkitError as exc:
        print(f"moodkit: {exc.code}: {exc}", file=sys.stderr)
        return 4
    except OSError as exc:
        print(f"moodkit: i/o error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
