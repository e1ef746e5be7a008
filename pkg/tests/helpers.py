"""Seeded corpus generators shared by unit and acceptance tests."""

from __future__ import annotations

import random
from fractions import Fraction

from arnold_lab import FlatToOrder, TruncatedSeries, make_series, sub, valuation
from arnold_lab.expressions import (
    Compose,
    Difference,
    FunctionExpr,
    Monomial,
    Primitive,
    Scale,
    Sum,
)

# small coefficients keep bignum growth inside the reversion benign
def random_rational(rng: random.Random, nonzero: bool = False) -> Fraction:
    while True:
        value = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
        if value != 0 or not nonzero:
            return value


def random_invertible_series(rng: random.Random, max_order: int = 16) -> TruncatedSeries:
    """a0 = 0, a1 != 0, the reversion corpus."""
    order = rng.randint(1, max_order)
    coeffs = [Fraction(0), random_rational(rng, nonzero=True)]
    coeffs += [random_rational(rng) for _ in range(order - 1)]
    return make_series(coeffs)


def random_tangent_series(
    rng: random.Random, order: int | None = None, max_order: int = 16
) -> TruncatedSeries:
    """x + O(x^2): the tangency condition holds exactly."""
    if order is None:
        order = rng.randint(2, max_order)
    coeffs = [Fraction(0), Fraction(1)]
    coeffs += [random_rational(rng) for _ in range(order - 1)]
    return make_series(coeffs)


def random_tangent_pair(rng: random.Random, max_order: int = 16):
    """Two tangent series of a shared order, diverging strictly below it
    (so the ratio's denominator is resolved at the shared order)."""
    order = rng.randint(3, max_order)
    while True:
        f = random_tangent_series(rng, order=order)
        g = random_tangent_series(rng, order=order)
        v = valuation(sub(f, g))
        if not isinstance(v, FlatToOrder) and v < order:
            return f, g


_NAMES = ("sin", "cos", "tan", "arcsin", "arctan", "id", "foo", "bar")


def random_ast(rng: random.Random, depth: int = 6) -> FunctionExpr:
    """A canonical FunctionExpr: Scale never wraps Monomial or Scale."""
    if depth <= 0 or rng.random() < 0.3:
        if rng.random() < 0.5:
            return Primitive(rng.choice(_NAMES))
        return Monomial(random_rational(rng, nonzero=True), rng.randint(1, 9))
    kind = rng.randint(0, 3)
    if kind == 0:
        return Sum(random_ast(rng, depth - 1), random_ast(rng, depth - 1))
    if kind == 1:
        return Difference(random_ast(rng, depth - 1), random_ast(rng, depth - 1))
    if kind == 2:
        return Compose(random_ast(rng, depth - 1), random_ast(rng, depth - 1))
    child = random_ast(rng, depth - 1)
    if isinstance(child, (Monomial, Scale)):
        child = Primitive(rng.choice(_NAMES))
    return Scale(random_rational(rng, nonzero=True), child)
