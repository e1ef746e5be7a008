"""Floating-point verification of the geometric picture.

Everything symbolic lives elsewhere; this module samples actual doubles.
The one non-negotiable rule here: quantities that can be exponentially
flat (anything built from theta(x) = exp(-1/|x|)) are never divided as raw
doubles.  Each such quantity carries a log-magnitude channel and ratios
are formed by subtracting logs, so the sweep stays meaningful far below
the underflow threshold of double precision (|x| around 1/745).
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

from .errors import (
    BracketInvalid,
    ConfigurationViolated,
    InvalidInput,
    NotMonotone,
)
from .inversion import compositional_inverse
from .series import TruncatedSeries

NAN = float("nan")

CSV_HEADER = "x,AB,BC,ED,DDp,FDp,ratio_AB_BC,ratio_BC_ED,log_ratio_DDp_FDp,flags"


def theta(x: float) -> float:
    """The flat function: exp(-1/|x|) away from 0, and exactly 0 at 0."""
    if x == 0:
        return 0.0
    return math.exp(-1.0 / abs(x))


def log_theta(x: float) -> float:
    """log of theta; finite (-1/|x|) wherever theta itself underflows."""
    if x == 0:
        return float("-inf")
    return -1.0 / abs(x)


def _exp(z: float) -> float:
    """exp that saturates instead of raising on overflow."""
    try:
        return math.exp(z)
    except OverflowError:
        return float("inf")


# numeric functions


class NumericFunction:
    """A deterministic double -> double function with optional structure.

    Subclasses may override inverse() when they know a better realization
    than generic bisection.
    """

    def __call__(self, x: float) -> float:
        raise NotImplementedError

    def inverse(self) -> "NumericFunction":
        return InverseFn(self)

    def describe(self) -> str:
        return type(self).__name__


@lru_cache(maxsize=64)
def _cached_reversion(series: TruncatedSeries) -> TruncatedSeries:
    return compositional_inverse(series).inverse


class SeriesFn(NumericFunction):
    """Evaluate a truncated series in double precision (Horner)."""

    def __init__(self, series: TruncatedSeries):
        self.series = series
        self._floats = tuple(float(c) for c in series.coefficients)

    def __call__(self, x: float) -> float:
        acc = 0.0
        for c in reversed(self._floats):
            acc = acc * x + c
        return acc

    def inverse(self) -> "SeriesFn":
        # exact series reversion, evaluated as floats like everything else
        return SeriesFn(_cached_reversion(self.series))

    def describe(self) -> str:
        return f"series(order={self.series.order})"


class ThetaFn(NumericFunction):
    def __call__(self, x: float) -> float:
        return theta(x)

    def describe(self) -> str:
        return "theta"


class _SampledMonotone(NumericFunction):
    """Base for the counterexample building blocks: construction-time
    monotonicity check by dense sampling on the working bracket."""

    SAMPLES = 10_000

    def __init__(self, bracket: tuple[float, float] = (0.0, 0.5)):
        lo, hi = bracket
        if not lo < hi:
            raise BracketInvalid(f"bracket {bracket} is empty")
        self.bracket = (float(lo), float(hi))
        previous = self(float(lo))
        step = (hi - lo) / self.SAMPLES
        for i in range(1, self.SAMPLES + 1):
            value = self(lo + i * step)
            if value <= previous:
                raise NotMonotone(
                    f"{self.describe()} is not strictly increasing near {lo + i * step}"
                )
            previous = value


class QPolyFn(_SampledMonotone):
    """q(x) = x + x^2."""

    def __call__(self, x: float) -> float:
        return x + x * x

    def describe(self) -> str:
        return "q"


class PFlatFn(_SampledMonotone):
    """p(x) = q(x) + theta(x): same 2-jet as q, different germ."""

    def __call__(self, x: float) -> float:
        return x + x * x + theta(x)

    def describe(self) -> str:
        return "p"


class ComposeFn(NumericFunction):
    def __init__(self, outer: NumericFunction, inner: NumericFunction):
        self.outer = outer
        self.inner = inner

    def __call__(self, x: float) -> float:
        return self.outer(self.inner(x))

    def inverse(self) -> NumericFunction:
        return ComposeFn(self.inner.inverse(), self.outer.inverse())

    def describe(self) -> str:
        return f"compose({self.outer.describe()}, {self.inner.describe()})"


class InverseFn(NumericFunction):
    """base^(-1), realized by bisection on the base's bracket."""

    def __init__(
        self,
        base: NumericFunction,
        bracket: tuple[float, float] | None = None,
        tol: float = 1e-12,
    ):
        self.base = base
        self.bracket = bracket if bracket is not None else getattr(base, "bracket", (0.0, 1.0))
        self.tol = tol

    def __call__(self, y: float) -> float:
        return numeric_inverse(self.base, y, self.bracket, self.tol)

    def inverse(self) -> NumericFunction:
        return self.base

    def describe(self) -> str:
        return f"inverse({self.base.describe()})"


def numeric_inverse(
    f: NumericFunction,
    y: float,
    bracket: tuple[float, float],
    tol: float = 1e-12,
) -> float:
    """Solve f(x) = y on the bracket by bisection.

    f must be strictly monotone there.  The interval is narrowed to machine
    width, then the residual |f(x) - y| <= tol * max(1, |y|) is enforced;
    a residual failure or an interior value outside the endpoint range is
    reported as NotMonotone.  No derivatives are used: the counterexample
    functions are too flat near 0 for Newton steps to be trustworthy.
    """
    lo, hi = float(bracket[0]), float(bracket[1])
    if not lo < hi:
        raise BracketInvalid(f"bracket ({lo}, {hi}) is empty")
    flo, fhi = f(lo), f(hi)
    increasing = fhi >= flo
    low_value, high_value = min(flo, fhi), max(flo, fhi)
    if not low_value <= y <= high_value:
        raise BracketInvalid(
            f"target {y} outside f(bracket) = [{low_value}, {high_value}]"
        )
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            break
        fm = f(mid)
        if not low_value <= fm <= high_value:
            raise NotMonotone(f"sign anomaly at {mid}: f outside endpoint range")
        if (fm < y) == increasing:
            lo = mid
        else:
            hi = mid
    x = 0.5 * (lo + hi)
    if abs(f(x) - y) > tol * max(1.0, abs(y)):
        raise NotMonotone(
            f"bisection converged to {x} but |f(x) - y| exceeds tolerance; "
            "is f monotone on the bracket?"
        )
    return x


# geometric sampling


@dataclass(frozen=True)
class GeometricSample:
    """Lengths and ratios of the tangency picture at one abscissa.

    With A = (x, f(x)), B = (x, g(x)), C = (f_inv(g(x)), g(x)), D = (x, x),
    D' = (x, g_inv(x)), E = (x, f_inv(x)) and the convention
    F = (f_inv(g(x)), x):

        AB  = |f(x) - g(x)|         BC  = |x - f_inv(g(x))|
        ED  = |f_inv(x) - g_inv(x)| DDp = |x - g_inv(x)|    FDp = BC

    Ratio fields may be NaN when a length vanishes (flag "indeterminate");
    raw lengths print as 0 when only their log-space channel survives
    double-precision underflow (flag "logspace").
    """

    x: float
    AB: float
    BC: float
    ED: float
    DDp: float
    FDp: float
    ratio_AB_BC: float
    ratio_BC_ED: float
    ratio_DDp_FDp: float
    log_ratio_DDp_FDp: float
    flags: tuple[str, ...] = ()


def _is_counterexample_pair(f: NumericFunction, g: NumericFunction) -> bool:
    return (
        isinstance(f, InverseFn)
        and isinstance(f.base, PFlatFn)
        and isinstance(g, InverseFn)
        and isinstance(g.base, QPolyFn)
    )


def _counterexample_sample(
    f: InverseFn, g: InverseFn, x: float, flags: list[str]
) -> GeometricSample:
    """Log-channel evaluation for the pair f = p_inv, g = q_inv.

    Structure gives exact identities that bypass catastrophic subtraction:
    with u = p_inv(x), v = t = q_inv(x):

        BC  = |x - p(t)|  = theta(t)          (because q(t) = x)
        ED  = |p(x) - q(x)| = theta(x)
        AB  = v - u = theta(u) / (1 + u + v)  (divided difference of q)
        DDp = |x - q(x)| = x^2                (g_inv is q itself)
        FDp = BC                              (F convention)
    """
    u = f(x)
    v = g(x)
    log_ab = log_theta(u) - math.log1p(u + v)
    log_bc = log_theta(v)
    log_ed = log_theta(x)
    log_ddp = 2.0 * math.log(x)
    log_fdp = log_bc
    raw = [_exp(c) for c in (log_ab, log_bc, log_ed, log_fdp)]
    ab, bc, ed, fdp = raw
    ddp = x * x
    if any(value == 0.0 and math.isfinite(channel) for value, channel in
           zip(raw, (log_ab, log_bc, log_ed, log_fdp))):
        flags.append("logspace")
    return GeometricSample(
        x=x,
        AB=ab,
        BC=bc,
        ED=ed,
        DDp=ddp,
        FDp=fdp,
        ratio_AB_BC=_exp(log_ab - log_bc),
        ratio_BC_ED=_exp(log_bc - log_ed),
        ratio_DDp_FDp=_exp(log_ddp - log_fdp),
        log_ratio_DDp_FDp=log_ddp - log_fdp,
        flags=tuple(flags),
    )


def geometric_sample(f: NumericFunction, g: NumericFunction, x: float) -> GeometricSample:
    """All lengths and ratios of the picture at abscissa x.

    Valid configurations: f(x) = g(x) (degenerate, ratios indeterminate),
    or f(x) and g(x) on the same side of the diagonal with g strictly off
    it; that covers both the f > g > id picture and its mirror image
    f < g < id, which is where the counterexample pair lives.
    """
    fx = f(x)
    gx = g(x)
    flags: list[str] = []
    if gx == x and fx != gx:
        raise ConfigurationViolated(f"g(x) = x at x = {x}; the picture degenerates")
    if fx != gx:
        if (fx > gx) != (gx > x):
            raise ConfigurationViolated(
                f"need f(x) > g(x) > x or the mirror image at x = {x}; "
                f"got f(x) = {fx}, g(x) = {gx}"
            )
        if fx < gx:
            flags.append("mirrored")

    if _is_counterexample_pair(f, g):
        return _counterexample_sample(f, g, x, flags)

    f_inv = f.inverse()
    g_inv = g.inverse()
    ab = abs(fx - gx)
    bc = abs(x - f_inv(gx))
    ed = abs(f_inv(x) - g_inv(x))
    ddp = abs(x - g_inv(x))
    fdp = bc
    if fx == gx:
        flags.append("indeterminate")
        ratio_ab_bc = NAN
        ratio_bc_ed = NAN
    else:
        ratio_ab_bc = ab / bc if bc != 0.0 else NAN
        ratio_bc_ed = bc / ed if ed != 0.0 else NAN
    ratio_ddp_fdp = ddp / fdp if fdp != 0.0 else NAN
    if ddp > 0.0 and fdp > 0.0:
        log_ratio = math.log(ddp) - math.log(fdp)
    else:
        log_ratio = NAN
    return GeometricSample(
        x=x,
        AB=ab,
        BC=bc,
        ED=ed,
        DDp=ddp,
        FDp=fdp,
        ratio_AB_BC=ratio_ab_bc,
        ratio_BC_ED=ratio_bc_ed,
        ratio_DDp_FDp=ratio_ddp_fdp,
        log_ratio_DDp_FDp=log_ratio,
        flags=tuple(flags),
    )


def mvt_ratio_check(f: NumericFunction, g: NumericFunction, x: float) -> float:
    """|AB| / |BC| at x; NaN (flagged indeterminate) when f = g there.

    By the mean value theorem this tends to 1 as x -> 0 for C^1 functions
    tangent to the diagonal, analytic or not.
    """
    return geometric_sample(f, g, x).ratio_AB_BC


def counterexample_ratio(t: float, side: str = "right") -> float:
    """theta(t) / theta(t + t^2) for t > 0, entirely in log space.

    The log difference is log_theta(t) - log_theta(t + t^2)
    = -1/t + 1/(t + t^2), which telescopes exactly to -1/(1 + t); using the
    telescoped form avoids cancellation between two huge logs, so the
    value is accurate down to t = 1e-12 and visibly converges to 1/e.
    For side="left" the same reduction at -t gives +1/(1 - t), which tends
    to e instead; it is computed on request and no limit is asserted.
    """
    if not 0.0 < t < 1.0:
        raise InvalidInput(f"counterexample_ratio needs 0 < t < 1, got {t}")
    if side == "right":
        return math.exp(-1.0 / (1.0 + t))
    if side == "left":
        return math.exp(1.0 / (1.0 - t))
    raise InvalidInput(f"side must be 'right' or 'left', got {side!r}")


def flatness_check(n: int, xs: list[float] | tuple[float, ...]) -> list[float]:
    """theta(x) / x^n for each x, formed in log space.

    Positive for every x > 0, yet eventually decreasing to 0 as x -> 0 for
    every fixed n: the sampling shadow of all derivatives of theta
    vanishing at the origin.
    """
    if not 1 <= n <= 40:
        raise InvalidInput(f"flatness_check supports 1 <= n <= 40, got {n}")
    for x in xs:
        if not 0.0 < x < 1.0:
            raise InvalidInput(f"flatness_check needs x in (0, 1), got {x}")
    return [_exp(-1.0 / x - n * math.log(x)) for x in xs]


# sweeps


@dataclass(frozen=True)
class SweepTable:
    """Rows of GeometricSample at strictly decreasing abscissas."""

    rows: tuple[GeometricSample, ...]
    f_label: str
    g_label: str
    bracket: tuple[float, float] | None = None
    tol: float | None = None

    def to_csv(self) -> str:
        lines = [CSV_HEADER]
        for r in self.rows:
            fields = [
                _format_double(v)
                for v in (
                    r.x, r.AB, r.BC, r.ED, r.DDp, r.FDp,
                    r.ratio_AB_BC, r.ratio_BC_ED, r.log_ratio_DDp_FDp,
                )
            ]
            fields.append(";".join(r.flags))
            lines.append(",".join(fields))
        return "\n".join(lines) + "\n"

    def to_json_dict(self) -> dict:
        return {
            "metadata": {
                "f": self.f_label,
                "g": self.g_label,
                "bracket": list(self.bracket) if self.bracket else None,
                "tol": self.tol,
            },
            "rows": [
                {
                    "x": r.x,
                    "AB": r.AB,
                    "BC": r.BC,
                    "ED": r.ED,
                    "DDp": r.DDp,
                    "FDp": r.FDp,
                    "ratio_AB_BC": r.ratio_AB_BC,
                    "ratio_BC_ED": r.ratio_BC_ED,
                    "ratio_DDp_FDp": r.ratio_DDp_FDp,
                    "log_ratio_DDp_FDp": r.log_ratio_DDp_FDp,
                    "flags": list(r.flags),
                }
                for r in self.rows
            ],
        }


def _format_double(v: float) -> str:
    return "%.17g" % v


def thread_cap(row_count: int) -> int:
    """Worker count for sweeps: ARNOLD_LAB_THREADS if set, else modest."""
    raw = os.environ.get("ARNOLD_LAB_THREADS")
    if raw is None:
        return max(1, min(8, row_count))
    try:
        value = int(raw)
    except ValueError:
        value = 0
    if value < 1:
        raise InvalidInput(
            f"ARNOLD_LAB_THREADS must be a positive integer, got {raw!r}"
        )
    return value


def _flagged_row(x: float, flag: str) -> GeometricSample:
    return GeometricSample(
        x=x, AB=NAN, BC=NAN, ED=NAN, DDp=NAN, FDp=NAN,
        ratio_AB_BC=NAN, ratio_BC_ED=NAN, ratio_DDp_FDp=NAN,
        log_ratio_DDp_FDp=NAN, flags=(flag,),
    )


def sweep(
    f: NumericFunction,
    g: NumericFunction,
    xs: list[float] | tuple[float, ...],
) -> SweepTable:
    """One GeometricSample per abscissa; per-row failures become flags.

    Rows are evaluated in a thread pool (all sampling is pure) but the
    output order and values are identical to sequential evaluation.
    """
    xs = [float(x) for x in xs]
    if not xs:
        raise InvalidInput("sweep needs at least one abscissa")
    if any(a <= b for a, b in zip(xs, xs[1:])):
        raise InvalidInput("sweep abscissas must be strictly decreasing")

    def row(x: float) -> GeometricSample:
        try:
            return geometric_sample(f, g, x)
        except ConfigurationViolated:
            return _flagged_row(x, "configuration_violated")
        except (BracketInvalid, NotMonotone):
            return _flagged_row(x, "unresolved")

    workers = thread_cap(len(xs))
    if workers == 1:
        rows = [row(x) for x in xs]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(row, xs))
    bracket = getattr(f, "bracket", None)
    tol = getattr(f, "tol", None)
    return SweepTable(
        rows=tuple(rows),
        f_label=f.describe(),
        g_label=g.describe(),
        bracket=bracket,
        tol=tol,
    )


def counterexample_pair(
    bracket: tuple[float, float] = (0.0, 0.5),
    tol: float = 1e-12,
) -> tuple[NumericFunction, NumericFunction]:
    """The C-infinity pair: f = p_inv, g = q_inv with p = q + theta.

    p and q are explicit; f and g are realized by bisection, which is why
    the pair is built on the inverse side.
    """
    p = PFlatFn(bracket)
    q = QPolyFn(bracket)
    return InverseFn(p, bracket, tol), InverseFn(q, bracket, tol)


def counterexample_sweep(t_values: list[float] | tuple[float, ...]) -> SweepTable:
    """Sweep the counterexample pair at abscissas x = q(t), t decreasing."""
    f, g = counterexample_pair()
    q = g.inverse()
    xs = [q(float(t)) for t in t_values]
    return sweep(f, g, xs)
