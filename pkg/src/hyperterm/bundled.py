"""Small bundled example terms used by the test suite and the docs."""

from __future__ import annotations

from fractions import Fraction

from .parsing import parse_multipoly
from .termratio import TermSpec, zero_divisor_spec


def constant_spec() -> TermSpec:
    """f identically 1 on Z."""
    one = parse_multipoly("1", 1)
    return TermSpec.make(1, [(one, one)], seed=((0,), Fraction(1)))


def odd_product_spec() -> TermSpec:
    """f(z1) = gp(0, z1) of (2j + 1): the odd double factorials, extended to
    negative arguments by the reciprocal convention."""
    return TermSpec.make(
        1,
        [(parse_multipoly("2*z1 + 1", 1), parse_multipoly("1", 1))],
        seed=((0,), Fraction(1)),
    )


def binomial_spec() -> TermSpec:
    """The binomial coefficient choose(z1, z2) as determined by its two
    quotients and f(0, 0) = 1."""
    return TermSpec.make(
        2,
        [
            (parse_multipoly("z1 + 1", 2), parse_multipoly("z1 + 1 - z2", 2)),
            (parse_multipoly("z1 - z2", 2), parse_multipoly("z2 + 1", 2)),
        ],
        seed=((0, 0), Fraction(1)),
    )


def annihilated_spec() -> TermSpec:
    """A zero divisor supported on the line z1 = 0."""
    return zero_divisor_spec(parse_multipoly("z1", 1), seed=((0,), Fraction(1)))


def bundled_specs() -> dict[str, TermSpec]:
    return {
        "constant": constant_spec(),
        "odd_product": odd_product_spec(),
        "binomial": binomial_spec(),
    }
