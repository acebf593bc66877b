import random
from fractions import Fraction

import pytest

from hyperterm.errors import PreconditionError, StructureError, ZeroTermError
from hyperterm.oresato import Chain, OreSatoForm, decompose, gp_eval, ratio_from_form
from hyperterm.parsing import parse_multipoly, parse_unipoly
from hyperterm.poly import UniPoly, gcd
from hyperterm.termratio import FactoredRational, TermSpec, compose_direction


def P(text, k):
    return parse_multipoly(text, k)


def U(text):
    return parse_unipoly(text)


def binomial_spec():
    return TermSpec.make(
        2,
        [
            (P("z1 + 1", 2), P("z1 + 1 - z2", 2)),
            (P("z1 - z2", 2), P("z2 + 1", 2)),
        ],
        seed=((0, 0), Fraction(1)),
    )


def odd_product_spec():
    return TermSpec.make(1, [(P("2*z1 + 1", 1), P("1", 1))], seed=((0,), Fraction(1)))


def constant_spec():
    return TermSpec.make(1, [(P("1", 1), P("1", 1))], seed=((0,), Fraction(1)))


# -- gp ------------------------------------------------------------------------


def test_gp_forward():
    assert gp_eval(2, 5, lambda j: Fraction(j)) == 24


def test_gp_reciprocal():
    assert gp_eval(5, 2, lambda j: Fraction(j)) == Fraction(1, 24)


def test_gp_empty():
    assert gp_eval(3, 3, lambda j: Fraction(0)) == 1


def test_gp_odd_product_negative():
    # the two-case value: the product over [0, -2) is 1/((1-2)(1-4)) = 1/3
    assert gp_eval(0, -2, lambda j: Fraction(2 * j + 1)) == Fraction(1, 3)


def test_gp_zero_term():
    with pytest.raises(ZeroTermError) as info:
        gp_eval(0, 3, lambda j: Fraction(j - 1))
    assert info.value.index == 1


def test_gp_composition_random():
    rng = random.Random(47)
    for _ in range(60):
        a, b, c = (rng.randint(-6, 6) for _ in range(3))
        values = {}

        def term(j):
            if j not in values:
                values[j] = Fraction(rng.choice([1, 2, 3, -1, -2, 5]), rng.choice([1, 2, 3]))
            return values[j]

        assert gp_eval(a, b, term) * gp_eval(b, c, term) == gp_eval(a, c, term)


# -- decompose: bundled examples ----------------------------------------------------


def test_decompose_odd_product():
    form = decompose(odd_product_spec())
    assert form.c_poly.is_constant and form.d_poly.is_constant
    assert len(form.chains) == 1
    chain = form.chains[0]
    assert chain.direction == (1,)
    assert chain.num == U("2*t + 1")
    assert chain.den.is_constant
    assert form.gamma == (Fraction(1),)
    # identity: gp over [0,1) of a(z1 + j) reproduces the generator
    got = ratio_from_form(form, (1,))
    assert got.eq_rational(FactoredRational.from_poly(P("2*z1 + 1", 1)))


def test_decompose_constant():
    form = decompose(constant_spec())
    assert form.c_poly.is_constant and form.d_poly.is_constant
    assert form.chains == ()
    assert form.gamma == (Fraction(1),)


def test_decompose_binomial():
    form = decompose(binomial_spec())
    assert form.c_poly.is_constant and form.d_poly.is_constant
    chains = {c.direction: c for c in form.chains}
    assert set(chains) == {(1, 0), (0, 1), (1, -1)}
    assert chains[(1, 0)].num == U("t + 1")
    assert chains[(1, 0)].den.is_constant
    assert chains[(0, 1)].den == U("t + 1")
    assert chains[(0, 1)].num.is_constant
    assert chains[(1, -1)].den == U("t + 1")
    assert chains[(1, -1)].num.is_constant


def test_decompose_pure_scalar():
    spec = TermSpec.make(1, [(P("3", 1), P("2", 1))])
    form = decompose(spec)
    assert form.gamma == (Fraction(3, 2),)
    assert form.chains == ()


def test_decompose_telescoping_quotient():
    # R = (z1+1)/z1 comes from C = z1 with no chain at all
    spec = TermSpec.make(1, [(P("z1 + 1", 1), P("z1", 1))])
    form = decompose(spec)
    assert form.chains == ()
    assert form.c_poly == P("z1", 1)
    assert form.d_poly.is_constant


def test_decompose_long_telescope():
    # R = (z1+5)/(z1+1) telescopes over four consecutive shifts
    spec = TermSpec.make(1, [(P("z1 + 5", 1), P("z1 + 1", 1))])
    form = decompose(spec)
    assert form.chains == ()
    assert form.c_poly == P("(z1 + 1)*(z1 + 2)*(z1 + 3)*(z1 + 4)", 1)
    assert form.d_poly.is_constant
    assert ratio_from_form(form, (1,)).eq_rational(spec.ratios()[0])


def test_decompose_repeated_chain_factor():
    # R = (z1+1)^2 gives a squared chain polynomial
    spec = TermSpec.make(1, [(P("(z1 + 1)^2", 1), P("1", 1))])
    form = decompose(spec)
    assert form.c_poly.is_constant and form.d_poly.is_constant
    assert len(form.chains) == 1
    assert form.chains[0].num == U("t^2 + 2*t + 1")
    assert ratio_from_form(form, (2,)).eq_rational(compose_direction(spec, (2,)))


def test_decompose_direction_with_step_two():
    # a chain along (2, 1): the unit step e1 advances the chain argument by
    # two, so recovery works per residue class
    form = OreSatoForm(
        2,
        P("1", 2),
        P("1", 2),
        (Fraction(1), Fraction(1)),
        (Chain((2, 1), U("t + 1"), UniPoly.constant(1)),),
    )
    ratios = [ratio_from_form(form, e) for e in [(1, 0), (0, 1)]]
    assert ratios[0].eq_rational(
        FactoredRational.make(
            2, 1, [(P("2*z1 + z2 + 1", 2), 1), (P("2*z1 + z2 + 2", 2), 1)]
        )
    )
    spec = TermSpec.from_ratios(2, ratios)
    recovered = decompose(spec)
    assert len(recovered.chains) == 1
    chain = recovered.chains[0]
    assert chain.direction == (2, 1)
    assert chain.num == U("t + 1")
    assert chain.den.is_constant
    rng = random.Random(83)
    for _ in range(20):
        w = (rng.randint(-3, 3), rng.randint(-3, 3))
        assert ratio_from_form(recovered, w).eq_rational(compose_direction(spec, w))


def test_gprange_type():
    from hyperterm.oresato import GPRange

    r = GPRange(2, 5)
    assert r.evaluate(lambda j: Fraction(j)) == 24
    back = GPRange(5, 2)
    assert back.evaluate(lambda j: Fraction(j)) == Fraction(1, 24)
    assert list(back.indices()) == [2, 3, 4]


def test_decompose_nonsimple_quotient():
    # R_i = C(z+e_i)/C(z) for the non-simple C = z1*z2 + 1
    c = P("z1*z2 + 1", 2)
    gens = []
    for e in [(1, 0), (0, 1)]:
        gens.append((c.shift(e), c))
    spec = TermSpec.make(2, gens)
    form = decompose(spec)
    assert form.c_poly == c
    assert form.d_poly.is_constant
    assert form.chains == ()


def test_decompose_mixed():
    # D = z1*z2 + 1 in the denominator plus a chain in direction (1, 0)
    d = P("z1*z2 + 1", 2)
    r1 = FactoredRational.make(
        2, 1, [(d, 1), (d.shift((1, 0)), -1), (P("z1 + 3", 2), 1)]
    )
    r2 = FactoredRational.make(2, 1, [(d, 1), (d.shift((0, 1)), -1)])
    spec = TermSpec.from_ratios(2, [r1, r2])
    form = decompose(spec)
    assert form.d_poly == d
    assert form.c_poly.is_constant
    assert len(form.chains) == 1
    assert form.chains[0].direction == (1, 0)


def test_decompose_rejects_zero_divisor_spec():
    from hyperterm.termratio import zero_divisor_spec

    spec = zero_divisor_spec(P("z1", 2))
    with pytest.raises(PreconditionError):
        decompose(spec)


def test_decompose_opaque_product_is_structure_error():
    # the same expanded two-factor product in every generator: gcd-splitting
    # cannot recover the factors, and the orbit multiplicities cannot come
    # from a single polynomial pair
    c = P("(z1 + z2 + 1)*(z1*z2 + 1)", 2)
    spec = TermSpec.make(2, [(c.shift((1, 0)), c), (c.shift((0, 1)), c)])
    with pytest.raises(StructureError):
        decompose(spec)


def test_decompose_round_trip_generators():
    for spec in [odd_product_spec(), constant_spec(), binomial_spec()]:
        form = decompose(spec)
        k = spec.arity
        for i in range(k):
            e = tuple(1 if j == i else 0 for j in range(k))
            assert ratio_from_form(form, e).eq_rational(spec.ratios()[i])


def test_decompose_coprime_cd():
    d = P("z1*z2 + 1", 2)
    c = P("z1 + z2", 2)
    ratios = [
        FactoredRational.make(2, 1, [(c.shift(e), 1), (c, -1), (d, 1), (d.shift(e), -1)])
        for e in [(1, 0), (0, 1)]
    ]
    spec = TermSpec.from_ratios(2, ratios)
    form = decompose(spec)
    assert gcd(form.c_poly, form.d_poly).is_constant
    assert form.c_poly == c or form.c_poly == c.normalized()[1]
    assert form.d_poly == d


# -- ratio_from_form -----------------------------------------------------------------


def test_ratio_from_form_zero_direction():
    form = decompose(binomial_spec())
    assert ratio_from_form(form, (0, 0)).is_one


def test_ratio_from_form_telescoping():
    form = OreSatoForm(
        2,
        P("z1*z2", 2),
        P("1", 2),
        (Fraction(1), Fraction(1)),
        (),
    )
    got = ratio_from_form(form, (1, 1))
    expected = FactoredRational.make(
        2, 1, [(P("z1 + 1", 2), 1), (P("z2 + 1", 2), 1), (P("z1", 2), -1), (P("z2", 2), -1)]
    )
    assert got.eq_rational(expected)


def test_ratio_from_form_matches_compose_random():
    rng = random.Random(53)
    for spec in [odd_product_spec(), binomial_spec()]:
        form = decompose(spec)
        k = spec.arity
        for _ in range(50):
            w = tuple(rng.randint(-3, 3) for _ in range(k))
            assert ratio_from_form(form, w).eq_rational(compose_direction(spec, w))


def test_chain_factors_are_simple():
    from hyperterm.poly import detect_simple

    form = decompose(binomial_spec())
    for chain in form.chains:
        for poly, j in [(chain.num, 0), (chain.den, 1)]:
            if poly.is_constant:
                continue
            expanded = poly.as_multipoly(chain.direction, j)
            info = detect_simple(expanded)
            assert info is not None
            assert info[0] == chain.direction


# -- random round trips ----------------------------------------------------------------


from conftest import random_form, spec_from_form


def test_random_forms_round_trip():
    rng = random.Random(59)
    done = 0
    while done < 20:
        k = rng.choice([1, 2, 2])
        form = random_form(rng, k)
        spec = spec_from_form(form)
        from hyperterm.termratio import check_compatibility

        assert check_compatibility(spec)
        recovered = decompose(spec)
        for i in range(k):
            e = tuple(1 if j == i else 0 for j in range(k))
            assert ratio_from_form(recovered, e).eq_rational(spec.ratios()[i])
        for _ in range(5):
            w = tuple(rng.randint(-3, 3) for _ in range(k))
            assert ratio_from_form(recovered, w).eq_rational(compose_direction(spec, w))
        done += 1
