"""Command-line interface.

Exit codes follow the audit contract: 0 clean, 1 input error, 2 when the
audit raised flags. Every randomized command requires an explicit --seed so
runs are reproducible; with fixed inputs and seed the output bytes are
identical across runs.
"""

from __future__ import annotations

import argparse
import sys

from . import io
from .diagnostics import NullSpec, anscombe_demo, anscombe_sets, r2_null_mean, r2_null_pvalue
from .distributions import (
    DEFAULT_SAMPLES,
    Direction,
    cles_mc,
    cles_normal,
    cohen_d,
    density,
    odds,
    profile_moments,
    sample,
)
from .errors import DegenerateError, InputError
from .importance import DEFAULT_P, calibrate_p, composite_fold, ri_bounds, zfold
from .models import consistency_check, DEFAULT_MEAN_TOLERANCE, DEFAULT_SD_SLACK
from .report import FORMATS, Report, Table
from .scoring import difficulty_ratio, impact_ratio, pass_rates, wathen_1rm

_SIGN_NOTE = {1: "", 0: "zero coefficient", -1: "anti-correlated"}


class _Parser(argparse.ArgumentParser):
    # usage mistakes are input errors; exit 2 is reserved for audit flags
    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        raise InputError(message)


def _add_format(parser: argparse.ArgumentParser, default: str = "table") -> None:
    parser.add_argument(
        "--format",
        choices=FORMATS,
        default=default,
        help=f"output rendering (default {default})",
    )


def _emit(report: Report, fmt: str) -> None:
    sys.stdout.write(report.render(fmt))


def cmd_check(args: argparse.Namespace) -> int:
    model = io.load_model(io.resolve_input(args.model))
    result = consistency_check(
        model, mean_tolerance=args.mean_tolerance, sd_slack=args.sd_slack
    )
    fields: list[tuple[str, object]] = [
        ("model", model.label),
        ("predictors", len(model.predictors)),
        ("predicted_mean", result.predicted_mean),
        ("sd_l1", result.sd_l1),
        ("sd_l2", result.sd_l2),
    ]
    if result.reported_mean is not None:
        fields.append(("reported_mean", result.reported_mean))
        fields.append(("mean_abs_dev", result.mean_abs_dev))
    if result.reported_sd is not None:
        fields.append(("reported_sd", result.reported_sd))
    fields.append(("clean", result.clean))
    tables = ()
    if result.flags:
        tables = (Table("flags", ("flag",), tuple((f,) for f in result.flags)),)
    _emit(Report("consistency check", tuple(fields), tables), args.format)
    return 0 if result.clean else 2


def cmd_importance(args: argparse.Namespace) -> int:
    model = io.load_model(io.resolve_input(args.model))
    report = ri_bounds(model, p_point=args.p)
    fields: list[tuple[str, object]] = [("model", model.label), ("p", report.p_point)]
    if model.reported_r2 is not None and model.reported_outcome_sd is not None:
        fields.append(("calibrated_p", calibrate_p(model)))
    rows = tuple(
        (r.name, r.lower, r.point, r.upper, _SIGN_NOTE[r.sign])
        for r in sorted(report.rows, key=lambda r: r.point, reverse=True)
    )
    table = Table("shares", ("predictor", "lower", "point", "upper", "note"), rows)
    if args.plot:
        from . import figures

        figures.save_figure(
            figures.importance_figure(report, title=model.label), args.plot
        )
        fields.append(("plot", args.plot))
    _emit(Report("relative importance", tuple(fields), (table,)), args.format)
    return 0


def cmd_effect(args: argparse.Namespace) -> int:
    a = io.load_profile(io.resolve_input(args.profile_a))
    b = io.load_profile(io.resolve_input(args.profile_b))
    if a.direction != b.direction:
        raise InputError(
            f"profiles disagree on direction: {a.direction.value} vs {b.direction.value}"
        )
    mean_a, var_a = profile_moments(a)
    mean_b, var_b = profile_moments(b)
    d = cohen_d(mean_a, var_a**0.5, 1, mean_b, var_b**0.5, 1)
    if args.method == "normal":
        oriented = d if a.direction is Direction.HIGHER_IS_BETTER else -d
        cles = cles_normal(oriented)
    else:
        if args.seed is None:
            raise InputError("--seed is required with --method mc")
        cles = cles_mc(a, b, args.samples, args.seed)
    try:
        numerator, denominator = odds(cles)
        odds_text = f"{numerator}:{denominator}"
    except DegenerateError:
        odds_text = "beyond resolution (every draw on one side)"
    fields: list[tuple[str, object]] = [
        ("profile_a", a.label),
        ("profile_b", b.label),
        ("direction", a.direction.value),
        ("mean_a", mean_a),
        ("sd_a", var_a**0.5),
        ("mean_b", mean_b),
        ("sd_b", var_b**0.5),
        ("method", args.method),
    ]
    if args.method == "mc":
        fields.append(("samples", args.samples))
        fields.append(("seed", args.seed))
    fields.extend([("cohen_d", d), ("cles", cles), ("odds", odds_text)])
    _emit(Report("effect size", tuple(fields)), args.format)
    return 0


def cmd_reconstruct(args: argparse.Namespace) -> int:
    method = "linear" if args.linear else "pchip"
    profiles = [io.load_profile(io.resolve_input(p)) for p in args.profiles]
    labels = [p.label for p in profiles]
    if len(set(labels)) != len(labels):
        raise InputError(f"duplicate profile labels: {labels}")
    fields: list[tuple[str, object]] = [
        ("seed", args.seed),
        ("samples", args.samples),
        ("method", method),
    ]
    summary_rows = []
    tables = []
    curves: dict[str, object] = {}
    for profile in profiles:
        draws = sample(profile, args.samples, args.seed, method=method)
        curve = density(draws, bandwidth=args.bandwidth)
        curves[profile.label] = curve
        values = draws.values
        summary_rows.append(
            (
                profile.label,
                float(values.mean()),
                float(values.std(ddof=1)),
                curve.bandwidth,
            )
        )
        tables.append(
            Table(
                profile.label,
                ("score", "density"),
                tuple(zip(curve.grid.tolist(), curve.density.tolist())),
            )
        )
    summary = Table(
        "sample summary", ("profile", "mean", "sd", "bandwidth"), tuple(summary_rows)
    )
    if args.plot:
        from . import figures

        figures.save_figure(figures.density_figure(curves), args.plot)
        fields.append(("plot", args.plot))
    _emit(
        Report("reconstructed distributions", tuple(fields), (summary, *tables)),
        args.format,
    )
    return 0


def cmd_score(args: argparse.Namespace) -> int:
    cohort = io.load_cohort(io.resolve_input(args.cohort, ".csv"))
    standard = io.load_standard(io.resolve_input(args.standard))
    group_by = args.group_by
    if group_by is None:
        groups = cohort.group_columns
        if not groups:
            raise InputError("cohort has no group: column; pass --group-by")
        group_by = groups[0]
    rates = pass_rates(cohort, standard, args.tier, group_by)
    fields: list[tuple[str, object]] = [
        ("tier", rates.tier),
        ("minimum_points", standard.tier_minimum(rates.tier)),
        ("group_column", rates.group_column),
        ("subjects", len(cohort)),
    ]
    event_names = standard.event_names
    rows = tuple(
        (g.group, g.size, *(rate for _, rate in g.per_event), g.overall)
        for g in rates.groups
    )
    table = Table("pass rates", ("group", "size", *event_names, "overall"), rows)
    exit_code = 0
    tables = [table]
    if len(rates.groups) >= 2:
        impact = impact_ratio({g.group: g.overall for g in rates.groups})
        fields.append(("impact_ratio", impact.ratio))
        fields.append(("flagged", impact.flagged))
        if impact.flagged:
            exit_code = 2
    else:
        fields.append(("impact_ratio", "needs at least two groups"))
    _emit(Report("tiered pass rates", tuple(fields), tuple(tables)), args.format)
    return exit_code


def cmd_impact(args: argparse.Namespace) -> int:
    if args.counts is not None:
        counts = io.load_counts(io.resolve_input(args.counts))
        exit_code = 0
        fields: list[tuple[str, object]] = [
            ("target", args.target),
            ("baseline", args.baseline),
        ]
        difficulty_rows = []
        for group, tests in counts.items():
            for name in (args.target, args.baseline):
                if name not in tests:
                    raise InputError(f"group {group!r} has no counts for test {name!r}")
            ratio = difficulty_ratio(tests[args.target], tests[args.baseline])
            fails_t, total_t = tests[args.target]
            fails_b, total_b = tests[args.baseline]
            difficulty_rows.append(
                (group, fails_t / total_t, fails_b / total_b, ratio)
            )
        difficulty = Table(
            "failure rates",
            ("group", f"{args.target} fail", f"{args.baseline} fail", "ratio"),
            tuple(difficulty_rows),
        )
        screen_rows = []
        tests_seen = sorted({t for tests in counts.values() for t in tests})
        for name in tests_seen:
            rates = {}
            for group, tests in counts.items():
                if name in tests:
                    fails, total = tests[name]
                    rates[group] = (total - fails) / total
            if len(rates) < 2:
                continue
            screen = impact_ratio(rates)
            screen_rows.append((name, screen.ratio, screen.flagged))
            if screen.flagged:
                exit_code = 2
        screen_table = Table(
            "four-fifths screen", ("test", "ratio", "flagged"), tuple(screen_rows)
        )
        _emit(
            Report("test difficulty", tuple(fields), (difficulty, screen_table)),
            args.format,
        )
        return exit_code

    rates = io.load_rates(io.resolve_input(args.rates))
    result = impact_ratio(rates)
    table = Table("selection rates", ("group", "rate"), result.rates)
    fields = [("impact_ratio", result.ratio), ("flagged", result.flagged)]
    _emit(Report("four-fifths screen", tuple(fields), (table,)), args.format)
    return 2 if result.flagged else 0


def cmd_anscombe(args: argparse.Namespace) -> int:
    fits = anscombe_demo()
    rows = tuple(
        (label, fit.intercept, fit.slopes[0], fit.r2)
        for label, fit in sorted(fits.items())
    )
    table = Table("fits", ("set", "intercept", "slope", "r2"), rows)
    fields: list[tuple[str, object]] = [
        ("sets", len(fits)),
        ("pairwise_agreement", "within 0.01 on intercept, slope, and r2"),
    ]
    if args.plot:
        from . import figures

        labeled = dict(zip(("1", "2", "3", "4"), anscombe_sets()))
        figures.save_figure(figures.anscombe_figure(labeled, fits), args.plot)
        fields.append(("plot", args.plot))
    _emit(Report("identical fits, different data", tuple(fields), (table,)), args.format)
    return 0


def cmd_r2null(args: argparse.Namespace) -> int:
    spec = NullSpec(n=args.n, k=args.k, r2=args.r2)
    fields = (
        ("n", spec.n),
        ("k", spec.k),
        ("r2", spec.r2),
        ("null_mean_r2", r2_null_mean(spec)),
        ("p_value", r2_null_pvalue(spec)),
    )
    _emit(Report("r2 under the null", fields), args.format)
    return 0


def cmd_wathen(args: argparse.Namespace) -> int:
    one_rm = wathen_1rm(args.weight, args.reps)
    fields = (
        ("weight", args.weight),
        ("reps", args.reps),
        ("one_rm", one_rm),
    )
    _emit(Report("one-repetition maximum", fields), args.format)
    return 0


def cmd_composite(args: argparse.Namespace) -> int:
    model = io.load_model(io.resolve_input(args.model))
    sources = [s.strip() for s in args.sources.split(",") if s.strip()]
    fold = composite_fold(model, sources, args.name)
    folded = zfold(model, sources, args.name, args.coefficient)
    if args.out:
        io.save_model(folded, args.out)
    else:
        sys.stdout.write(io.dumps_model(folded) + "\n")
    sys.stderr.write(
        f"folded {', '.join(fold.source_names)} -> {fold.folded_name} "
        f"(mean {fold.mu_star:.8g}, sd {fold.sigma_star:.8g})\n"
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="regaudit",
        description="Audit published linear-regression models from summary statistics.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="implied vs reported outcome statistics")
    p.add_argument("model", help="model file or bundled name (e.g. apft)")
    p.add_argument("--mean-tolerance", type=float, default=DEFAULT_MEAN_TOLERANCE)
    p.add_argument("--sd-slack", type=float, default=DEFAULT_SD_SLACK)
    _add_format(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("importance", help="relative-importance share bands")
    p.add_argument("model", help="model file or bundled name")
    p.add_argument("--p", type=float, default=DEFAULT_P, help="point-estimate exponent")
    p.add_argument("--plot", help="write a band figure (.svg or .png)")
    _add_format(p)
    p.set_defaults(func=cmd_importance)

    p = sub.add_parser("effect", help="effect size between two percentile profiles")
    p.add_argument("profile_a", nargs="?", default="demo_profile_a")
    p.add_argument("profile_b", nargs="?", default="demo_profile_b")
    p.add_argument("--method", choices=("normal", "mc"), default="normal")
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, help="required with --method mc")
    _add_format(p)
    p.set_defaults(func=cmd_effect)

    p = sub.add_parser("reconstruct", help="rebuild distributions from percentiles")
    p.add_argument("profiles", nargs="*", default=["demo_profile_a"])
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    p.add_argument("--bandwidth", type=float, help="kernel bandwidth override")
    p.add_argument("--linear", action="store_true", help="piecewise-linear quantiles")
    p.add_argument("--plot", help="write a density figure (.svg or .png)")
    _add_format(p, default="csv")
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("score", help="tiered pass rates for a cohort")
    p.add_argument("cohort", nargs="?", default="demo_cohort")
    p.add_argument("--standard", default="acft_standard")
    p.add_argument("--tier", default="gold")
    p.add_argument("--group-by", help="group column (default: first group: column)")
    _add_format(p)
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("impact", help="four-fifths screen and test difficulty")
    p.add_argument("--rates", default="gold_pass_rates", help="selection-rate file")
    p.add_argument("--counts", help="pass/fail count file (difficulty mode)")
    p.add_argument("--target", default="apft", help="counts mode: test under audit")
    p.add_argument("--baseline", default="acft", help="counts mode: reference test")
    _add_format(p)
    p.set_defaults(func=cmd_impact)

    p = sub.add_parser("anscombe", help="same fit from four different data sets")
    p.add_argument("--plot", help="write the quartet figure (.svg or .png)")
    _add_format(p)
    p.set_defaults(func=cmd_anscombe)

    p = sub.add_parser("r2null", help="p-value of an observed r2 under the null")
    p.add_argument("--n", type=int, required=True, help="sample size")
    p.add_argument("--k", type=int, required=True, help="coefficients incl. constant")
    p.add_argument("--r2", type=float, required=True)
    _add_format(p)
    p.set_defaults(func=cmd_r2null)

    p = sub.add_parser("wathen", help="one-repetition-maximum conversion")
    p.add_argument("--weight", type=float, required=True)
    p.add_argument("--reps", type=int, required=True)
    _add_format(p)
    p.set_defaults(func=cmd_wathen)

    p = sub.add_parser("composite", help="fold predictors into a z-score composite")
    p.add_argument("model", help="model file or bundled name")
    p.add_argument("--sources", required=True, help="comma-separated predictor names")
    p.add_argument("--name", required=True, help="name for the composite predictor")
    p.add_argument("--coefficient", type=float, required=True)
    p.add_argument("--out", help="write the folded model here instead of stdout")
    p.set_defaults(func=cmd_composite)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except InputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
