"""Command-line front end.

Exit codes: 0 success, 2 expression parse error, 3 domain error (series
not invertible, tangency condition violated, ...), 4 usage error, 5 empty
result (a sweep where no row could be computed).
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import numeric
from .elementary import eval_expr
from .errors import ArnoldLabError, InvalidInput
from .expressions import ParseError, parse
from .inversion import compositional_inverse
from .limits import arnold_ratio
from .series import series_from_json, series_to_json
from .numeric import SeriesFn, SweepTable, sweep, thread_cap

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_DOMAIN = 3
EXIT_USAGE = 4
EXIT_EMPTY = 5


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad usage; remap to this tool's usage code
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="arnold-lab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="expand an expression into a series")
    p_eval.add_argument("--expr", required=True)
    p_eval.add_argument("--order", type=int, required=True)
    p_eval.add_argument("--format", choices=("json", "text"), default="json")

    p_inv = sub.add_parser("invert", help="compositional inverse of a series")
    source = p_inv.add_mutually_exclusive_group(required=True)
    source.add_argument("--expr")
    source.add_argument("--series-json", dest="series_json")
    p_inv.add_argument("--order", type=int)
    p_inv.add_argument("--with-residuals", action="store_true")

    p_lim = sub.add_parser("limit", help="exact limit of (f-g)/(g_inv-f_inv)")
    p_lim.add_argument("--f", required=True)
    p_lim.add_argument("--g", required=True)
    p_lim.add_argument("--order", type=int, required=True)

    p_cex = sub.add_parser("counterexample", help="sweep the flat pair toward 0")
    p_cex.add_argument("--t-min", type=float, required=True)
    p_cex.add_argument("--t-max", type=float, required=True)
    p_cex.add_argument("--points", type=int, required=True)
    p_cex.add_argument("--out")
    p_cex.add_argument("--format", choices=("csv", "json"), default="csv")

    p_sweep = sub.add_parser("sweep", help="geometric ratios of an expression pair")
    p_sweep.add_argument("--f", required=True)
    p_sweep.add_argument("--g", required=True)
    p_sweep.add_argument("--xs", help="comma-separated, strictly decreasing")
    p_sweep.add_argument("--x-min", type=float)
    p_sweep.add_argument("--x-max", type=float)
    p_sweep.add_argument("--points", type=int)
    p_sweep.add_argument("--order", type=int, default=12)
    p_sweep.add_argument("--out")
    p_sweep.add_argument("--format", choices=("csv", "json"), default="csv")
    return parser


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _series_text(series) -> str:
    lines = [f"order {series.order}"]
    lines += [f"x^{k}: {c}" for k, c in enumerate(series.coefficients)]
    return "\n".join(lines) + "\n"


def _table_text(table: SweepTable, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(table.to_json_dict()) + "\n"
    return table.to_csv()


def _log_spaced(lo: float, hi: float, points: int) -> list[float]:
    """points values from hi down to lo, uniform in log."""
    if points == 1:
        return [hi]
    step = (math.log(hi) - math.log(lo)) / (points - 1)
    values = [math.exp(math.log(hi) - k * step) for k in range(points)]
    values[0], values[-1] = hi, lo
    return values


def _cmd_eval(args) -> int:
    series = eval_expr(parse(args.expr), _positive(args.order, "--order"))
    if args.format == "json":
        _emit(json.dumps(series_to_json(series)) + "\n", None)
    else:
        _emit(_series_text(series), None)
    return EXIT_OK


def _cmd_invert(args) -> int:
    if args.expr is not None:
        if args.order is None:
            raise _Usage("--order is required with --expr")
        series = eval_expr(parse(args.expr), _positive(args.order, "--order"))
    else:
        series = series_from_json(_load_json(args.series_json))
        if args.order is not None:
            if args.order > series.order:
                raise _Usage(
                    f"--order {args.order} exceeds the series order {series.order}"
                )
            series = series.truncate(_positive(args.order, "--order"))
    witness = compositional_inverse(series)
    _emit(json.dumps(witness.to_json_dict(with_residuals=args.with_residuals)) + "\n", None)
    return EXIT_OK


def _cmd_limit(args) -> int:
    order = _positive(args.order, "--order")
    f = eval_expr(parse(args.f), order)
    g = eval_expr(parse(args.g), order)
    report = arnold_ratio(f, g)
    _emit(json.dumps(report.to_json_dict()) + "\n", None)
    return EXIT_OK


def _cmd_counterexample(args) -> int:
    t_min, t_max, points = args.t_min, args.t_max, args.points
    if not 0.0 < t_min < t_max < 0.5:
        raise _Usage("need 0 < --t-min < --t-max < 0.5")
    if points < 1:
        raise _Usage("--points must be >= 1")
    table = numeric.counterexample_sweep(_log_spaced(t_min, t_max, points))
    _emit(_table_text(table, args.format), args.out)
    return EXIT_OK


def _cmd_sweep(args) -> int:
    order = _positive(args.order, "--order")
    f = SeriesFn(eval_expr(parse(args.f), order))
    g = SeriesFn(eval_expr(parse(args.g), order))
    if args.xs is not None:
        try:
            xs = [float(part) for part in args.xs.split(",") if part.strip()]
        except ValueError as exc:
            raise _Usage(f"--xs must be comma-separated numbers: {exc}")
        if not xs:
            raise _Usage("--xs is empty")
    else:
        if args.x_min is None or args.x_max is None or args.points is None:
            raise _Usage("need --xs or all of --x-min/--x-max/--points")
        if not 0.0 < args.x_min < args.x_max:
            raise _Usage("need 0 < --x-min < --x-max")
        if args.points < 1:
            raise _Usage("--points must be >= 1")
        xs = _log_spaced(args.x_min, args.x_max, args.points)
    table = sweep(f, g, xs)
    _emit(_table_text(table, args.format), args.out)
    if all("configuration_violated" in r.flags or "unresolved" in r.flags for r in table.rows):
        return EXIT_EMPTY
    return EXIT_OK


class _Usage(Exception):
    pass


def _positive(value: int, flag: str) -> int:
    if value < 1:
        raise _Usage(f"{flag} must be >= 1")
    return value


def _load_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"malformed JSON: {exc}") from exc


_COMMANDS = {
    "eval": _cmd_eval,
    "invert": _cmd_invert,
    "limit": _cmd_limit,
    "counterexample": _cmd_counterexample,
    "sweep": _cmd_sweep,
}


def console_main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        thread_cap(1)  # fail fast on a malformed ARNOLD_LAB_THREADS
    except InvalidInput as exc:
        print(f"arnold-lab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return _COMMANDS[args.command](args)
    except _Usage as exc:
        print(f"arnold-lab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"arnold-lab: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ArnoldLabError as exc:
        print(f"arnold-lab: error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


def main() -> None:
    sys.exit(console_main())


if __name__ == "__main__":
    main()
