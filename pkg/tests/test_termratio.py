import itertools
import random
from fractions import Fraction

import pytest

from hyperterm.errors import CocycleError, PreconditionError
from hyperterm.geometry import HalfSpace, PolyhedralRegion
from hyperterm.parsing import parse_multipoly
from hyperterm.poly import MultiPoly
from hyperterm.termratio import (
    FactoredRational,
    TermSpec,
    check_compatibility,
    compose_direction,
    extend_by_zero,
    zero_divisor_spec,
)


def P(text, k):
    return parse_multipoly(text, k)


def binomial_spec(seed=True):
    gens = [
        (P("z1 + 1", 2), P("z1 + 1 - z2", 2)),
        (P("z1 - z2", 2), P("z2 + 1", 2)),
    ]
    s = ((0, 0), Fraction(1)) if seed else None
    return TermSpec.make(2, gens, seed=s)


def odd_product_spec():
    return TermSpec.make(1, [(P("2*z1 + 1", 1), P("1", 1))], seed=((0,), Fraction(1)))


# -- FactoredRational -----------------------------------------------------------


def test_factored_reduction():
    fr = FactoredRational.make(
        1, 2, [(P("z1^2 - 1", 1), 1), (P("z1 - 1", 1), -1)]
    )
    assert fr.eq_rational(FactoredRational.make(1, 2, [(P("z1 + 1", 1), 1)]))
    # gcd-splitting makes the stored bases coprime
    for (b1, _), (b2, _) in itertools.combinations(fr.factors, 2):
        from hyperterm.poly import gcd

        assert gcd(b1, b2).is_constant


def test_factored_constant_folding():
    fr = FactoredRational.make(1, 1, [(P("-2*z1 + 4", 1), 2)])
    assert fr.scalar == 4
    assert fr.factors[0][0] == P("z1 - 2", 1)


def test_factored_evaluate():
    fr = FactoredRational.make(1, 1, [(P("z1", 1), 1), (P("z1 + 1", 1), -1)])
    assert fr.evaluate((2,)) == Fraction(2, 3)
    assert fr.evaluate((0,)) == 0
    assert fr.evaluate((-1,)) is None


def test_factored_zero_rejected():
    with pytest.raises(PreconditionError):
        FactoredRational.make(1, 0)
    with pytest.raises(PreconditionError):
        FactoredRational.make(1, 1, [(MultiPoly(1, ()), 1)])


# -- compatibility ----------------------------------------------------------------


def test_binomial_compatible():
    assert check_compatibility(binomial_spec())


def test_separated_variables_compatible():
    spec = TermSpec.make(2, [(P("z1", 2), P("1", 2)), (P("z2", 2), P("1", 2))])
    assert check_compatibility(spec)


def test_incompatible_pair():
    spec = TermSpec.make(2, [(P("z2", 2), P("1", 2)), (P("1", 2), P("1", 2))])
    assert not check_compatibility(spec)


# -- composition --------------------------------------------------------------------


def test_compose_binomial_diagonal():
    # oracle: symbolic product R_{e1} * shift(R_{e2}, e1), reduced
    spec = binomial_spec()
    got = compose_direction(spec, (1, 1))
    expected = FactoredRational.make(
        2, 1, [(P("z1 + 1", 2), 1), (P("z2 + 1", 2), -1)]
    )
    assert got.eq_rational(expected)


def test_compose_zero_direction():
    spec = binomial_spec()
    assert compose_direction(spec, (0, 0)).is_one


def test_compose_two_steps():
    spec = odd_product_spec()
    got = compose_direction(spec, (2,))
    expected = FactoredRational.make(
        1, 1, [(P("2*z1 + 1", 1), 1), (P("2*z1 + 3", 1), 1)]
    )
    assert got.eq_rational(expected)


def test_compose_negative_direction_inverts():
    spec = binomial_spec()
    for w in [(1, 0), (0, 1), (2, -1), (-1, -2)]:
        fw = compose_direction(spec, w)
        back = compose_direction(spec, tuple(-x for x in w))
        assert back.eq_rational(fw.shift(tuple(-x for x in w)).inv())


def test_compose_incompatible_raises():
    spec = TermSpec.make(2, [(P("z2", 2), P("1", 2)), (P("1", 2), P("1", 2))])
    with pytest.raises(CocycleError):
        compose_direction(spec, (1, 1))


def test_compose_additivity_random():
    rng = random.Random(41)
    spec = binomial_spec()
    for _ in range(30):
        u = tuple(rng.randint(-3, 3) for _ in range(2))
        w = tuple(rng.randint(-3, 3) for _ in range(2))
        uw = tuple(a + b for a, b in zip(u, w))
        lhs = compose_direction(spec, uw)
        rhs = compose_direction(spec, u) * compose_direction(spec, w).shift(u)
        assert lhs.eq_rational(rhs)


def test_compose_path_independence():
    # route through axis 2 first must agree with the canonical axis-1 route
    spec = binomial_spec()
    for w in [(2, 1), (1, -2), (-1, 1), (3, 3)]:
        canonical = compose_direction(spec, w)
        other = compose_direction(spec, (0, w[1])) * compose_direction(
            spec, (w[0], 0)
        ).shift((0, w[1]))
        assert canonical.eq_rational(other)
        # equality even holds for the canonical reduced representations
        assert canonical == other


def test_zero_divisor_cocycle_form():
    # the certificate construction A = p, B = p shifted satisfies the
    # compatibility identity for arbitrary p
    rng = random.Random(43)
    for _ in range(10):
        d = {}
        for _ in range(3):
            mono = (rng.randint(0, 2), rng.randint(0, 2))
            d[mono] = Fraction(rng.randint(-3, 3))
        p = MultiPoly.from_dict(2, d)
        if p.is_zero:
            continue
        spec = zero_divisor_spec(p)
        assert check_compatibility(spec)


def test_zero_divisor_identity_arbitrary_directions():
    # R_v = p / (p shifted by v) satisfies R_v * shift(R_w, v) = R_w * shift(R_v, w)
    # for arbitrary integer directions, not just unit steps
    rng = random.Random(47)
    for _ in range(10):
        d = {}
        for _ in range(3):
            mono = (rng.randint(0, 2), rng.randint(0, 2))
            d[mono] = Fraction(rng.randint(-3, 3))
        p = MultiPoly.from_dict(2, d)
        if p.is_zero:
            continue
        for _ in range(5):
            v = tuple(rng.randint(-3, 3) for _ in range(2))
            w = tuple(rng.randint(-3, 3) for _ in range(2))
            rv = FactoredRational.make(2, 1, [(p, 1), (p.shift(v), -1)])
            rw = FactoredRational.make(2, 1, [(p, 1), (p.shift(w), -1)])
            lhs = rv * rw.shift(v)
            rhs = rw * rv.shift(w)
            assert lhs.eq_rational(rhs)


# -- extend by zero --------------------------------------------------------------------


def test_extend_whole_space_is_identity():
    spec = binomial_spec()
    ext = extend_by_zero(spec, PolyhedralRegion.whole(2))
    assert ext.generators == spec.generators


def test_extend_halfline():
    # constant term on {z1 > 0}: generators become A = B = z1
    spec = TermSpec.make(1, [(P("1", 1), P("1", 1))], seed=((1,), Fraction(1)))
    support = PolyhedralRegion.make(1, [HalfSpace.make((1,), 0)])
    ext = extend_by_zero(spec, support)
    g = ext.generators[0]
    assert g.num.numerator() == P("z1", 1)
    assert g.den.numerator() == P("z1", 1)
    assert any(h.v == (1,) and h.n == 0 for h in ext.exceptions.hyperplanes)
    # exhaustive identity check: g is 1 on support, 0 elsewhere
    def gval(z):
        return Fraction(1) if z > 0 else Fraction(0)

    for z in range(-4, 5):
        a = g.num.evaluate((z,))
        b = g.den.evaluate((z,))
        assert a * gval(z) == b * gval(z + 1)


def test_extend_binomial_wedge():
    spec = binomial_spec()
    support = PolyhedralRegion.make(
        2,
        [
            HalfSpace.make((1, 0), -1),
            HalfSpace.make((0, 1), -1),
            HalfSpace.make((1, -1), -1),
        ],
    )
    ext = extend_by_zero(spec, support)
    # oracle-evaluated g: binomial coefficients inside the wedge, 0 outside
    import math

    def gval(z1, z2):
        if z1 >= 0 and z2 >= 0 and z1 - z2 >= 0:
            return Fraction(math.comb(z1, z2))
        return Fraction(0)

    for i, gen in enumerate(ext.generators):
        e = (1, 0) if i == 0 else (0, 1)
        for z1 in range(-3, 7):
            for z2 in range(-3, 7):
                z = (z1, z2)
                zp = (z1 + e[0], z2 + e[1])
                a = gen.num.evaluate(z)
                b = gen.den.evaluate(z)
                assert a * gval(*z) == b * gval(*zp)
