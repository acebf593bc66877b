"""Ore-Sato decomposition of a compatible term specification.

Every term ratio of a hypergeometric term that is not a zero divisor can be
written as

    R_w(z) = gamma^w * C(z+w)/C(z) * D(z)/D(z+w)
             * prod over directions v of gp(0, v.w) of a_v(v.z+j)/b_v(v.z+j)

with C, D relatively prime polynomials and a_v, b_v univariate.  ``gp`` is
the generalized product: product over [a, b) when b >= a and the reciprocal
product over [b, a) when b < a, which makes gp(a,b) * gp(b,c) = gp(a,c)
unconditionally.

``decompose`` reconstructs such a form from the unit-direction quotients:
simple factors (univariate polynomials of an integer linear form) are
sorted into per-direction shift families and balanced into telescoping
chains, while non-simple factors are grouped into shift orbits whose signed
multiplicity pattern must come from a single C/D pair.  The returned form
is verified symbolically against every generator before being returned;
input that does not telescope raises StructureError.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Callable, Sequence

from .errors import (
    CocycleError,
    DimensionError,
    IntegrityError,
    PreconditionError,
    StructureError,
    ZeroTermError,
)
from .poly import (
    MultiPoly,
    Point,
    UniPoly,
    detect_simple,
    exact_div,
    gcd,
    rational_roots,
    shift_between,
)
from .termratio import FactoredRational, TermSpec, check_compatibility

# ---------------------------------------------------------------------------
# generalized products
# ---------------------------------------------------------------------------


def gp_eval(a: int, b: int, term: Callable[[int], Fraction]) -> Fraction:
    """Product of term(j) over [a, b); reciprocal product over [b, a) when
    b < a.  gp(a, a) = 1.  A zero factor raises ZeroTermError naming j."""
    if b >= a:
        value = Fraction(1)
        for j in range(a, b):
            t = Fraction(term(j))
            if t == 0:
                raise ZeroTermError(f"zero factor at j = {j}", j)
            value *= t
        return value
    value = Fraction(1)
    for j in range(b, a):
        t = Fraction(term(j))
        if t == 0:
            raise ZeroTermError(f"zero factor at j = {j}", j)
        value *= t
    return 1 / value


@dataclass(frozen=True)
class GPRange:
    """Endpoints of a generalized product; upper < lower is legal and means
    the reciprocal product."""

    lower: int
    upper: int

    def evaluate(self, term: Callable[[int], Fraction]) -> Fraction:
        return gp_eval(self.lower, self.upper, term)

    def indices(self) -> range:
        return range(self.lower, self.upper) if self.upper >= self.lower else range(
            self.upper, self.lower
        )


# ---------------------------------------------------------------------------
# the decomposition form
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Chain:
    """Per-direction univariate chain: factors a(v.z+j)/b(v.z+j)."""

    direction: Point
    num: UniPoly
    den: UniPoly


@dataclass(frozen=True)
class OreSatoForm:
    """C, D, the per-direction chains, and the residual per-axis scalars."""

    arity: int
    c_poly: MultiPoly
    d_poly: MultiPoly
    gamma: tuple[Fraction, ...]
    chains: tuple[Chain, ...]

    def directions(self) -> list[Point]:
        return [c.direction for c in self.chains]


def ratio_from_form(form: OreSatoForm, w: Sequence[int]) -> FactoredRational:
    """Evaluate the decomposition's displayed formula symbolically: the
    reduced term ratio in direction w."""
    k = form.arity
    if len(w) != k:
        raise DimensionError("direction arity mismatch")
    w = tuple(int(x) for x in w)
    scalar = Fraction(1)
    for g, wi in zip(form.gamma, w):
        scalar *= Fraction(g) ** wi
    factors: list[tuple[MultiPoly, int]] = []
    if not form.c_poly.is_constant:
        factors.append((form.c_poly.shift(w), 1))
        factors.append((form.c_poly, -1))
    if not form.d_poly.is_constant:
        factors.append((form.d_poly, 1))
        factors.append((form.d_poly.shift(w), -1))
    for chain in form.chains:
        n = sum(a * b for a, b in zip(chain.direction, w))
        if n == 0:
            continue
        # reciprocal convention: a negative range swaps the chain sides
        js = range(0, n) if n > 0 else range(n, 0)
        num, den = (chain.num, chain.den) if n > 0 else (chain.den, chain.num)
        for j in js:
            if num.is_constant:
                scalar *= num.coeffs[0]
            else:
                factors.append((num.as_multipoly(chain.direction, j), 1))
            if den.is_constant:
                scalar /= den.coeffs[0]
            else:
                factors.append((den.as_multipoly(chain.direction, j), -1))
    return FactoredRational.make(k, scalar, factors)


# ---------------------------------------------------------------------------
# decomposition
# ---------------------------------------------------------------------------


def _unit(k: int, i: int) -> Point:
    return tuple(1 if j == i else 0 for j in range(k))


def _split_simple_base(base: MultiPoly) -> list[tuple[MultiPoly, int]]:
    """Refine a simple base by factoring its univariate profile at rational
    roots; non-simple bases are returned unchanged."""
    info = detect_simple(base)
    if info is None:
        return [(base, 1)]
    v, profile = info
    if profile.degree() <= 1:
        return [(base, 1)]
    roots, cofactor = rational_roots(profile)
    if not roots:
        return [(base, 1)]
    pieces: dict[MultiPoly, int] = {}
    for r in roots:
        linear = UniPoly.make([-r, 1]).as_multipoly(v)
        linear = linear.normalized()[1]
        pieces[linear] = pieces.get(linear, 0) + 1
    if cofactor.degree() >= 1:
        rest = cofactor.as_multipoly(v).normalized()[1]
        pieces[rest] = pieces.get(rest, 0) + 1
    return list(pieces.items())


def _joint_refine(ratios: list[FactoredRational]) -> list[FactoredRational]:
    """Re-express all ratios over one pairwise-coprime base set shared
    across the generators (gcd-splitting plus univariate factorization of
    simple bases)."""
    arity = ratios[0].arity
    bases = sorted(
        {b for fr in ratios for b, _ in fr.factors},
        key=lambda p: (p.total_degree(), p.terms),
    )
    work: list[MultiPoly] = []
    for b in bases:
        work.extend(piece for piece, _ in _split_simple_base(b))
    work = sorted(set(work), key=lambda p: (p.total_degree(), p.terms))
    changed = True
    while changed:
        changed = False
        for p, q in itertools.combinations(work, 2):
            if _surely_coprime(p, q):
                continue
            g = gcd(p, q)
            if g.is_constant:
                continue
            pieces = {g}
            for poly in (p, q):
                rest = poly
                while True:
                    nxt = exact_div(rest, g)
                    if nxt is None:
                        break
                    rest = nxt
                if not rest.is_constant:
                    pieces.add(rest)
            work = [x for x in work if x not in (p, q)]
            work.extend(x for x in pieces if x not in work)
            work.sort(key=lambda t: (t.total_degree(), t.terms))
            changed = True
            break
    refined = work
    out = []
    for fr in ratios:
        factors: list[tuple[MultiPoly, int]] = []
        for base, exp in fr.factors:
            rest = base
            for piece in refined:
                mult = 0
                while True:
                    nxt = exact_div(rest, piece)
                    if nxt is None:
                        break
                    rest = nxt
                    mult += 1
                if mult:
                    factors.append((piece, mult * exp))
            if not rest.is_constant:
                raise IntegrityError("base did not factor over the refined set")
        out.append(FactoredRational.make(arity, fr.scalar, factors))
    return out


def _surely_coprime(p: MultiPoly, q: MultiPoly) -> bool:
    """Cheap filter: simple polynomials in different directions share no
    nonconstant factor (every factor of a simple polynomial is simple with
    the same direction)."""
    ip, iq = detect_simple(p), detect_simple(q)
    return ip is not None and iq is not None and ip[0] != iq[0]


def _anchor_family(profile: UniPoly) -> tuple[UniPoly, int]:
    """Canonical representative of the integer-shift family of a univariate
    polynomial: translate so the root centroid lies in [0, 1).  Returns
    (anchor, offset) with profile(t) = anchor(t + offset) up to a scalar."""
    _, prim = profile.normalized()
    d = prim.degree()
    if d == 0:
        raise PreconditionError("constant profile has no shift family")
    centroid = -prim.coeffs[d - 1] / (d * prim.coeffs[d])
    m = math.floor(centroid)
    anchor = prim.shift_arg(m)
    return anchor, -m


class _FamilyData:
    """Observed exponents of one simple shift family (direction, anchor):
    per generator, offset -> exponent."""

    def __init__(self, arity: int):
        self.observed: list[dict[int, int]] = [dict() for _ in range(arity)]

    def add(self, gen_index: int, offset: int, exp: int) -> None:
        d = self.observed[gen_index]
        d[offset] = d.get(offset, 0) + exp
        if d[offset] == 0:
            del d[offset]


class _OrbitData:
    """Observed exponents of one non-simple shift orbit: per generator,
    lattice offset -> exponent."""

    def __init__(self, rep: MultiPoly, arity: int):
        self.rep = rep
        self.observed: list[dict[Point, int]] = [dict() for _ in range(arity)]

    def add(self, gen_index: int, offset: Point, exp: int) -> None:
        d = self.observed[gen_index]
        d[offset] = d.get(offset, 0) + exp
        if d[offset] == 0:
            del d[offset]


def _solve_family(
    direction: Point, anchor: UniPoly, data: _FamilyData
) -> tuple[dict[int, int], dict[int, int]]:
    """Recover the chain multiplicities mu and the C/D multiplicities nu of
    one simple family from the observed generator exponents.

    With G the cumulative unknown (chain prefix sums minus C/D placement),
    each generator imposes o_i(r) = G(r) - G(r - v_i); G is recovered by
    prefix summation along the first axis with v_i != 0 and checked against
    the rest.  The chain part is the monotone envelope of G clamped between
    0 and its limit M, which keeps the chain multiplicities single-signed
    (no cancelling root pairs between a_v and b_v); the remainder is pure
    telescoping and is absorbed into C/D.
    """
    k = len(direction)
    observed = data.observed
    for i in range(k):
        if direction[i] == 0 and observed[i]:
            raise StructureError(
                f"factors of direction {direction} appear in generator {i + 1} "
                "which cannot produce them",
                factor=anchor,
            )
    pivot = next(i for i in range(k) if direction[i] != 0)
    v = direction[pivot]  # positive: direction is primitive-canonical
    totals = {i: sum(observed[i].values()) for i in range(k)}
    if totals[pivot] % v != 0:
        raise StructureError("family exponent total does not telescope", factor=anchor)
    m_total = totals[pivot] // v
    for i in range(k):
        if totals[i] != direction[i] * m_total:
            raise StructureError(
                "family exponent totals are inconsistent across generators",
                factor=anchor,
            )
    support = sorted(set().union(*[set(d) for d in observed]) or {0})
    lo, hi = min(support) - v, max(support)
    o_pivot = observed[pivot]
    g_table: dict[int, int] = {}
    for r in range(lo, hi + 1):
        g_table[r] = o_pivot.get(r, 0) + g_table.get(r - v, 0)
    # tails must stabilise at M on every residue class
    for r in range(hi - v + 1, hi + 1):
        if g_table.get(r, 0) != m_total:
            raise StructureError(
                "family multiplicities do not telescope to a chain",
                factor=anchor,
            )

    def g_of(r: int) -> int:
        if r < lo:
            return 0
        if r > hi:
            return m_total
        return g_table[r]

    for i in range(k):
        vi = direction[i]
        if vi == 0:
            continue
        for r in range(lo - abs(vi), hi + abs(vi) + 1):
            if observed[i].get(r, 0) != g_of(r) - g_of(r - vi):
                raise StructureError(
                    f"generator {i + 1} disagrees with the family chain",
                    factor=anchor,
                )
    # split G into a monotone chain part and a finite C/D correction
    phi: dict[int, int] = {}
    if m_total > 0:
        running = 0
        for r in range(lo, hi + 1):
            running = max(running, min(m_total, g_of(r)))
            phi[r] = running
    elif m_total < 0:
        running = 0
        for r in range(lo, hi + 1):
            running = min(running, max(m_total, g_of(r)))
            phi[r] = running
    else:
        phi = {r: 0 for r in range(lo, hi + 1)}

    def phi_of(r: int) -> int:
        if r < lo:
            return 0
        if r > hi:
            return m_total
        return phi[r]

    mu: dict[int, int] = {}
    nu: dict[int, int] = {}
    for r in range(lo, hi + 2):
        d = phi_of(r) - phi_of(r - 1)
        if d:
            mu[r] = d
    for r in range(lo, hi + 1):
        d = phi_of(r) - g_of(r)
        if d:
            nu[r] = d
    return mu, nu


def _solve_orbit(data: _OrbitData, k: int) -> dict[Point, int]:
    """Recover the signed C/D multiplicity pattern m of a non-simple shift
    orbit from the k difference equations

        observed_i(w) = m(w - e_i) - m(w),

    by summation along the first axis, verifying the others."""
    observed = data.observed
    positions = set().union(*[set(d) for d in observed])
    if not positions:
        return {}
    lines: dict[tuple[int, ...], list[int]] = {}
    for w in positions:
        lines.setdefault(w[1:], []).append(w[0])
    m: dict[Point, int] = {}
    o1 = observed[0]
    for rest, firsts in lines.items():
        hi, lo = max(firsts), min(firsts)
        # m(w) is the sum of the axis-1 observations strictly above w
        acc = 0
        for x in range(hi, lo - 1, -1):
            if acc != 0:
                m[(x,) + rest] = acc
            acc += o1.get((x,) + rest, 0)
        # the full line sum must vanish for m to have finite support
        if acc != 0:
            raise StructureError(
                "orbit multiplicities do not come from a polynomial pair",
                factor=data.rep,
            )

    def m_of(w: Point) -> int:
        return m.get(w, 0)

    check_positions = set(m) | positions
    widened = set()
    for w in check_positions:
        for i in range(k):
            e = _unit(k, i)
            widened.add(tuple(a + b for a, b in zip(w, e)))
            widened.add(w)
    for w in widened:
        for i in range(k):
            e = _unit(k, i)
            w_minus = tuple(a - b for a, b in zip(w, e))
            if observed[i].get(w, 0) != m_of(w_minus) - m_of(w):
                raise StructureError(
                    f"generator {i + 1} disagrees with the orbit multiplicities",
                    factor=data.rep,
                )
    return m


def decompose(spec: TermSpec) -> OreSatoForm:
    """Compute an Ore-Sato form whose displayed formula reproduces every
    generator exactly.  The construction is heuristic-free for honest
    compatible input presented in factored form; the postcondition is
    machine-checked before the form is returned."""
    if spec.zero_divisor_witness is not None:
        raise PreconditionError("zero-divisor specs have no reduced decomposition")
    if not check_compatibility(spec):
        raise CocycleError("generators are not compatible")
    k = spec.arity
    ratios = _joint_refine(spec.ratios())

    families: dict[tuple[Point, UniPoly], _FamilyData] = {}
    orbits: list[_OrbitData] = []
    base_route: dict[MultiPoly, tuple] = {}

    for i, fr in enumerate(ratios):
        for base, exp in fr.factors:
            route = base_route.get(base)
            if route is None:
                info = detect_simple(base)
                if info is not None:
                    v, profile = info
                    anchor, offset = _anchor_family(profile)
                    route = ("family", (v, anchor), offset)
                else:
                    for orbit in orbits:
                        u = shift_between(orbit.rep, base)
                        if u is not None:
                            route = ("orbit", orbit, u)
                            break
                    else:
                        orbit = _OrbitData(base, k)
                        orbits.append(orbit)
                        route = ("orbit", orbit, (0,) * k)
                base_route[base] = route
            kind = route[0]
            if kind == "family":
                key, offset = route[1], route[2]
                families.setdefault(key, _FamilyData(k)).add(i, offset, exp)
            else:
                orbit, u = route[1], route[2]
                orbit.add(i, u, exp)

    c_poly = MultiPoly.constant(k, 1)
    d_poly = MultiPoly.constant(k, 1)
    chain_parts: dict[Point, tuple[UniPoly, UniPoly]] = {}

    for (v, anchor), data in sorted(
        families.items(), key=lambda t: (t[0][0], t[0][1].coeffs)
    ):
        mu, nu = _solve_family(v, anchor, data)
        num, den = chain_parts.get(v, (UniPoly.constant(1), UniPoly.constant(1)))
        for s, mult in sorted(mu.items()):
            piece = anchor.shift_arg(s)
            for _ in range(abs(mult)):
                if mult > 0:
                    num = num * piece
                else:
                    den = den * piece
        chain_parts[v] = (num, den)
        for s, mult in sorted(nu.items()):
            piece = anchor.shift_arg(s).as_multipoly(v)
            for _ in range(abs(mult)):
                if mult > 0:
                    c_poly = c_poly * piece
                else:
                    d_poly = d_poly * piece

    for orbit in orbits:
        m = _solve_orbit(orbit, k)
        for w, mult in sorted(m.items()):
            piece = orbit.rep.shift(w)
            for _ in range(abs(mult)):
                if mult > 0:
                    c_poly = c_poly * piece
                else:
                    d_poly = d_poly * piece

    chains = tuple(
        Chain(v, num, den)
        for v, (num, den) in sorted(chain_parts.items())
        if not (num.is_constant and den.is_constant)
    )
    form = OreSatoForm(
        k, c_poly.normalized()[1], d_poly.normalized()[1], (Fraction(1),) * k, chains
    )
    if not gcd(form.c_poly, form.d_poly).is_constant:
        raise IntegrityError("decomposition produced non-coprime C and D")

    gamma = []
    original = spec.ratios()
    for i in range(k):
        recon = ratio_from_form(form, _unit(k, i))
        residue = original[i] * recon.inv()
        if residue.factors:
            raise StructureError(
                f"generator {i + 1} is not reproduced by the decomposition",
                factor=residue.factors[0][0],
            )
        gamma.append(residue.scalar)
    form = replace(form, gamma=tuple(gamma))
    for i in range(k):
        if not ratio_from_form(form, _unit(k, i)).eq_rational(original[i]):
            raise IntegrityError("postcondition verification failed")
    return form
