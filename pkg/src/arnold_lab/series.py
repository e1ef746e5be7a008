"""Truncated formal power series over exact rationals.

A TruncatedSeries stores the coefficients of x^0 .. x^order exactly, as
fractions.  Every binary operation truncates its result to the minimum of
the operand orders: coefficients the operands cannot both vouch for are
never fabricated.  There is no floating point anywhere in this module, so
all results are bit-identical across runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import BinomialDomain, CompositionDomain, DivisionDomain, InvalidInput

# The coefficient scalar.  Python's Fraction already is an arbitrary
# precision rational kept in lowest terms with a positive denominator.
Rational = Fraction

RationalLike = Union[Rational, int, str]


def as_rational(value: RationalLike) -> Rational:
    """Coerce ints, strings like "-3/7", or Fractions to a Rational."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise InvalidInput(f"cannot interpret {value!r} as a rational coefficient")


@dataclass(frozen=True)
class FlatToOrder:
    """Marker returned by valuation() when every known coefficient is zero.

    A series that is zero through its truncation order may still be nonzero
    beyond it, so valuation cannot report an index; it reports how far the
    flatness is certified instead.
    """

    order: int


@dataclass(frozen=True)
class TruncatedSeries:
    """Coefficients of x^0 .. x^order, exact.

    Use make_series() (or the module-level operations) rather than mutating
    anything: instances are immutable and safe to share across threads.
    Equality compares order and all coefficients; use agrees_with() to
    compare two series of different orders on their common range.
    """

    coefficients: tuple[Rational, ...]

    def __post_init__(self) -> None:
        if not self.coefficients:
            raise InvalidInput("a series needs at least the constant coefficient")

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def coefficient(self, k: int) -> Rational:
        """The coefficient of x^k; k must not exceed the truncation order."""
        if not 0 <= k <= self.order:
            raise InvalidInput(f"coefficient index {k} outside 0..{self.order}")
        return self.coefficients[k]

    def truncate(self, order: int) -> "TruncatedSeries":
        """Forget coefficients above the given order (which must be known)."""
        if order > self.order:
            raise InvalidInput(f"cannot extend a series of order {self.order} to {order}")
        if order == self.order:
            return self
        return TruncatedSeries(self.coefficients[: order + 1])

    def agrees_with(self, other: "TruncatedSeries") -> bool:
        """Coefficient-wise equality up to the smaller of the two orders."""
        n = min(self.order, other.order)
        return self.coefficients[: n + 1] == other.coefficients[: n + 1]

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return add(self, other)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return sub(self, other)

    def __neg__(self) -> "TruncatedSeries":
        return neg(self)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return mul(self, other)

    def __truediv__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return divide(self, other)

    def __call__(self, outer_arg: "TruncatedSeries") -> "TruncatedSeries":
        return compose(self, outer_arg)

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coefficients):
            if c == 0:
                continue
            if k == 0:
                terms.append(str(c))
            elif k == 1:
                terms.append("x" if c == 1 else f"{c}*x")
            else:
                terms.append(f"x^{k}" if c == 1 else f"{c}*x^{k}")
        body = " + ".join(terms).replace("+ -", "- ") if terms else "0"
        return f"{body} + O(x^{self.order + 1})"


def make_series(coefficients: Sequence[RationalLike] | Iterable[RationalLike]) -> TruncatedSeries:
    """Build a series from coefficients of x^0, x^1, ...; order = len - 1."""
    coeffs = tuple(as_rational(c) for c in coefficients)
    if not coeffs:
        raise InvalidInput("a series needs at least the constant coefficient")
    return TruncatedSeries(coeffs)


def zero_series(order: int) -> TruncatedSeries:
    return TruncatedSeries((Fraction(0),) * (order + 1))


def one_series(order: int) -> TruncatedSeries:
    return TruncatedSeries((Fraction(1),) + (Fraction(0),) * order)


def identity_series(order: int) -> TruncatedSeries:
    """The series x, truncated to the given order (just [0] at order 0)."""
    if order == 0:
        return zero_series(0)
    return TruncatedSeries((Fraction(0), Fraction(1)) + (Fraction(0),) * (order - 1))


def monomial_series(coefficient: RationalLike, exponent: int, order: int) -> TruncatedSeries:
    """c * x^k at the given order; zero series if k exceeds the order."""
    c = as_rational(coefficient)
    coeffs = [Fraction(0)] * (order + 1)
    if 0 <= exponent <= order:
        coeffs[exponent] = c
    return TruncatedSeries(tuple(coeffs))


def add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    n = min(a.order, b.order)
    return TruncatedSeries(tuple(a.coefficients[k] + b.coefficients[k] for k in range(n + 1)))


def sub(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    n = min(a.order, b.order)
    return TruncatedSeries(tuple(a.coefficients[k] - b.coefficients[k] for k in range(n + 1)))


def neg(a: TruncatedSeries) -> TruncatedSeries:
    return TruncatedSeries(tuple(-c for c in a.coefficients))


def scale(a: TruncatedSeries, factor: RationalLike) -> TruncatedSeries:
    f = as_rational(factor)
    return TruncatedSeries(tuple(f * c for c in a.coefficients))


def mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated to the minimum operand order."""
    n = min(a.order, b.order)
    out = [Fraction(0)] * (n + 1)
    for i, ai in enumerate(a.coefficients[: n + 1]):
        if ai == 0:
            continue
        for j in range(n + 1 - i):
            bj = b.coefficients[j]
            if bj != 0:
                out[i + j] += ai * bj
    return TruncatedSeries(tuple(out))


def compose(outer: TruncatedSeries, inner: TruncatedSeries) -> TruncatedSeries:
    """outer(inner(x)), truncated to the minimum operand order.

    Requires inner(0) = 0; otherwise every outer coefficient would touch
    every result coefficient and truncation would be meaningless.
    Evaluated Horner style in the series ring.
    """
    if inner.coefficients[0] != 0:
        raise CompositionDomain(
            "inner series has nonzero constant term; formal composition needs positive valuation"
        )
    n = min(outer.order, inner.order)
    inner_t = inner.truncate(n)
    acc = zero_series(n)
    for k in range(n, -1, -1):
        acc = mul(acc, inner_t)
        ck = outer.coefficients[k]
        if ck != 0:
            acc = TruncatedSeries((acc.coefficients[0] + ck,) + acc.coefficients[1:])
    return acc


def divide(num: TruncatedSeries, den: TruncatedSeries) -> TruncatedSeries:
    """num / den by forward substitution; den must have a nonzero constant term."""
    d0 = den.coefficients[0]
    if d0 == 0:
        raise DivisionDomain("divisor has zero constant term; quotient is not a power series")
    n = min(num.order, den.order)
    q = [Fraction(0)] * (n + 1)
    for k in range(n + 1):
        acc = num.coefficients[k]
        for j in range(k):
            dj = den.coefficients[k - j]
            if dj != 0 and q[j] != 0:
                acc -= q[j] * dj
        q[k] = acc / d0
    return TruncatedSeries(tuple(q))


def derive(s: TruncatedSeries) -> TruncatedSeries:
    """Term-wise derivative; loses one order (order 0 stays order 0)."""
    if s.order == 0:
        return zero_series(0)
    return TruncatedSeries(tuple(Fraction(k) * s.coefficients[k] for k in range(1, s.order + 1)))


def integrate(s: TruncatedSeries) -> TruncatedSeries:
    """Term-wise antiderivative with zero constant term; gains one order."""
    out = [Fraction(0)] * (s.order + 2)
    for k, c in enumerate(s.coefficients):
        out[k + 1] = c / (k + 1)
    return TruncatedSeries(tuple(out))


def binomial_coefficient(alpha: Rational, k: int) -> Rational:
    """Generalized C(alpha, k) over the rationals, by the multiplicative recurrence."""
    c = Fraction(1)
    for i in range(1, k + 1):
        c = c * (alpha - (i - 1)) / i
    return c


def pow_binomial(base: TruncatedSeries, exponent: RationalLike) -> TruncatedSeries:
    """base^exponent for rational exponents, via the binomial series.

    Requires base(0) = 1 exactly, so that (1 + u)^alpha = sum C(alpha,k) u^k
    with u of positive valuation stays in exact rationals.
    """
    alpha = as_rational(exponent)
    if base.coefficients[0] != 1:
        raise BinomialDomain("binomial power needs constant term exactly 1")
    n = base.order
    u = TruncatedSeries((Fraction(0),) + base.coefficients[1:])
    acc = one_series(n)
    term = one_series(n)
    c = Fraction(1)
    for k in range(1, n + 1):
        term = mul(term, u)
        if all(t == 0 for t in term.coefficients):
            break
        c = c * (alpha - (k - 1)) / k
        if c != 0:
            acc = add(acc, scale(term, c))
    return acc


def valuation(s: TruncatedSeries) -> int | FlatToOrder:
    """Index of the first nonzero coefficient, or FlatToOrder if none is known."""
    for k, c in enumerate(s.coefficients):
        if c != 0:
            return k
    return FlatToOrder(s.order)


# JSON encoding: rationals as decimal strings so arbitrary precision
# survives serialization in every consumer.

def rational_to_json(r: Rational) -> dict:
    return {"num": str(r.numerator), "den": str(r.denominator)}


def rational_from_json(obj: dict) -> Rational:
    try:
        return Fraction(int(obj["num"]), int(obj["den"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInput(f"malformed rational object: {obj!r}") from exc


def series_to_json(s: TruncatedSeries) -> dict:
    return {
        "order": s.order,
        "coefficients": [rational_to_json(c) for c in s.coefficients],
    }


def series_from_json(obj: dict) -> TruncatedSeries:
    try:
        order = int(obj["order"])
        coeffs = [rational_from_json(c) for c in obj["coefficients"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInput(f"malformed series object: {obj!r}") from exc
    if len(coeffs) != order + 1:
        raise InvalidInput(
            f"series object claims order {order} but carries {len(coeffs)} coefficients"
        )
    return make_series(coeffs)
