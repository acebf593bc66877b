"""Piecewise closed forms over polyhedral regions, factorial rewrites, and
Pochhammer normal forms.

``build_structure`` partitions Z^k (up to a finite union of hyperplanes)
into polyhedral pieces on which the term is given exactly by

    f(z) = f(z0) * gamma^(z-z0) * C(z)/C(z0) * D(z0)/D(z)
           * prod over v of gp(v.z0, v.z) of a_v(j)/b_v(j)

with a base point z0 in the piece where C and D are both nonzero and the
base value f(z0) obtained by recurrence propagation from the user seed.
The hyperplanes are chosen so that every chain factor touched by a
generalized product inside a piece is nonzero; a zero there indicates a
construction bug and raises IntegrityError.

``split_factorial`` intersects each piece with the sign conditions of
v.(z - z0) and rewrites the generalized products as plain products
prod_{j=1}^{w.z + n} with nonnegative upper limits (the value 0 denotes
the empty product).  ``to_pochhammer`` further rewrites each chain whose
polynomials split over the rationals into rising factorials.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import (
    IntegrityError,
    PreconditionError,
    SplittingError,
    ZeroTermError,
)
from .geometry import (
    HalfSpace,
    Hyperplane,
    MeasureZeroSet,
    PolyhedralRegion,
    arrangement,
    erode,
    find_box,
    fm_feasible,
    is_measure_zero,
    region_rows,
    region_sample,
    s_path,
)
from .oracle import propagate
from .oresato import OreSatoForm, decompose, gp_eval
from .poly import MultiPoly, Point, UniPoly, find_nonzero_in_box, integer_roots, rational_roots
from .termratio import TermSpec

log = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# piecewise structure
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Piece:
    region: PolyhedralRegion
    base_point: Point
    base_value: Optional[Fraction]  # None: unreachable from the seed


@dataclass(frozen=True)
class PiecewiseStructure:
    form: OreSatoForm
    pieces: tuple[Piece, ...]
    excluded: MeasureZeroSet  # hyperplane cover of the complement of the pieces


@dataclass(frozen=True)
class EvalOutcome:
    status: str  # ok | no-piece | d-zero | value-unknown
    value: Optional[Fraction] = None


_MAX_CONNECTIVITY_SPLITS = 40


def _step_set(d: int, k: int) -> list[Point]:
    """Differences of size-d boxes around the origin and size-d boxes around
    the unit steps; always contains the unit steps themselves."""
    s0 = set(itertools.product(range(-d, d + 1), repeat=k))
    s1 = set()
    for s in s0:
        for i in range(k):
            for sign in (1, -1):
                s1.add(tuple(x + (sign if j == i else 0) for j, x in enumerate(s)))
    return sorted({tuple(a - b for a, b in zip(x, y)) for x in s0 for y in s1})


def _chain_zero_hyperplanes(form: OreSatoForm, steps: Sequence[Point]) -> list[Hyperplane]:
    """Hyperplanes where some chain factor touched by a step in ``steps``
    vanishes at an integer point.  A factor a_v(v.z + j) vanishes on the
    lattice exactly on the hyperplanes v.z = r - j for integer roots r."""
    planes: list[Hyperplane] = []
    for chain in form.chains:
        v = chain.direction
        products = [sum(a * b for a, b in zip(v, w)) for w in steps]
        lo = min(0, min(products, default=0))
        hi = max(0, max(products, default=0))
        roots = set(integer_roots(chain.num)) | set(integer_roots(chain.den))
        for r in roots:
            for j in range(lo, hi):
                planes.append(Hyperplane.make(v, r - j))
    return planes


def _sample_spread(region: PolyhedralRegion) -> list[Point]:
    """A handful of integer points spread across the region, for sampled
    connectivity checks."""
    first = region_sample(region)
    if first is None:
        return []
    points = [first]
    k = region.arity
    for i in range(k):
        for sign in (1, -1):
            v = tuple(sign if j == i else 0 for j in range(k))
            level = sum(a * b for a, b in zip(v, first)) + 4
            shifted = region.intersect(HalfSpace.make(v, level))
            extra = region_sample(shifted)
            if extra is not None and extra not in points:
                points.append(extra)
    return points


def build_structure(spec: TermSpec, propagation_margin: Optional[int] = None) -> PiecewiseStructure:
    """Construct the piecewise closed form of a term given by a compatible
    spec with a seed value.

    Pieces unreachable from the seed by nonzero-quotient propagation are
    kept with an unknown base value rather than a guessed one.
    """
    k = spec.arity
    if spec.zero_divisor_witness is not None:
        return _zero_divisor_structure(spec)
    if spec.seed is None:
        raise PreconditionError("building a structure requires a seed value")
    form = decompose(spec)
    d = form.c_poly.total_degree() + form.d_poly.total_degree()
    cd = form.c_poly * form.d_poly
    steps = _step_set(d, k)
    h2 = _chain_zero_hyperplanes(form, steps)
    h2.extend(spec.exceptions.hyperplanes)
    h2 = sorted({p for p in h2 if not p.empty})
    log.info("structure: %d hyperplanes in the arrangement", len(h2))
    cells = arrangement(h2, k)
    excluded = list(h2)

    pieces: list[Piece] = []
    worklist = list(cells)
    splits = 0
    while worklist:
        cell = worklist.pop()
        mz, cover = is_measure_zero(cell)
        if mz:
            excluded.extend(cover.hyperplanes)
            continue
        shrunk, lost = erode(cell, d)
        excluded.extend(lost.hyperplanes)
        mz, cover = is_measure_zero(shrunk)
        if mz:
            excluded.extend(cover.hyperplanes)
            continue
        # sampled connectivity check: step-set paths through the full cell
        samples = _sample_spread(shrunk)
        if not samples:
            log.warning("dropping cell with no reachable sample: %s", cell)
            continue
        hub = samples[0]
        failed_pair = None
        margin = max(max(abs(x) for x in s) for s in steps) * (k + 1) + d
        for other in samples[1:]:
            if s_path(hub, other, cell, steps, margin=margin) is None:
                failed_pair = (hub, other)
                break
        if failed_pair is not None and splits < _MAX_CONNECTIVITY_SPLITS:
            splits += 1
            a, b = failed_pair
            axis = max(range(k), key=lambda i: abs(a[i] - b[i]))
            level = (a[axis] + b[axis]) // 2
            plane = Hyperplane.make(tuple(1 if j == axis else 0 for j in range(k)), level)
            excluded.append(plane)
            side = HalfSpace.make(plane.v, plane.n)
            worklist.append(cell.intersect(side))
            worklist.append(cell.intersect(side.complement()))
            continue
        if failed_pair is not None:
            log.warning("sampled connectivity check failed; keeping cell %s", cell)
        inner = find_box(shrunk, d)
        if inner is None:
            log.warning("dropping cell without a base box: %s", cell)
            continue
        z0 = find_nonzero_in_box(cd, inner.corner, d)
        assert z0 is not None
        result = propagate(spec, spec.seed, z0, margin=propagation_margin)
        base_value = result.value if result.ok else None
        if base_value is None:
            log.info("piece at %s is unreachable from the seed", z0)
        pieces.append(Piece(shrunk, z0, base_value))

    pieces.sort(key=lambda p: (p.region.halfspaces, p.base_point))
    return PiecewiseStructure(form, tuple(pieces), MeasureZeroSet.make(excluded))


def _zero_divisor_structure(spec: TermSpec) -> PiecewiseStructure:
    """A term annihilated by p vanishes wherever p does not; the closed form
    C = 1, D = p, no chains, one piece covering everything, is exact off
    the zero set of p."""
    witness = spec.zero_divisor_witness
    k = spec.arity
    d_poly = witness.normalized()[1]
    form = OreSatoForm(
        k,
        MultiPoly.constant(k, 1),
        d_poly,
        (Fraction(1),) * k,
        (),
    )
    z0 = find_nonzero_in_box(d_poly, (0,) * k, d_poly.total_degree())
    piece = Piece(PolyhedralRegion.whole(k), z0, Fraction(0))
    return PiecewiseStructure(form, (piece,), MeasureZeroSet.empty())


def closed_form_eval(ps: PiecewiseStructure, z: Sequence[int]) -> EvalOutcome:
    """Value of the closed form at a lattice point, or the reason it is
    undefined there.  A zero chain factor inside the touched product range
    violates the construction guarantees and raises IntegrityError."""
    z = tuple(int(x) for x in z)
    piece = next((p for p in ps.pieces if p.region.contains(z)), None)
    if piece is None:
        return EvalOutcome("no-piece")
    form = ps.form
    if form.d_poly.evaluate(z) == 0:
        return EvalOutcome("d-zero")
    if piece.base_value is None:
        return EvalOutcome("value-unknown")
    z0 = piece.base_point
    value = piece.base_value
    for g, zi, z0i in zip(form.gamma, z, z0):
        value *= Fraction(g) ** (zi - z0i)
    value *= form.c_poly.evaluate(z) / form.c_poly.evaluate(z0)
    value *= form.d_poly.evaluate(z0) / form.d_poly.evaluate(z)
    for chain in form.chains:
        a = sum(x * y for x, y in zip(chain.direction, z0))
        b = sum(x * y for x, y in zip(chain.direction, z))
        try:
            value *= gp_eval(
                a, b, lambda j: chain.num.evaluate(j) / chain.den.evaluate(j)
                if chain.den.evaluate(j) != 0
                else Fraction(0)
            )
        except ZeroTermError as exc:
            raise IntegrityError(
                f"chain factor vanishes inside a piece at j = {exc.index}"
            ) from exc
    return EvalOutcome("ok", value)


# ---------------------------------------------------------------------------
# factorial forms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FactorialChain:
    direction: Point
    num: UniPoly
    den: UniPoly
    offset: int  # n with products running over 1 <= j <= direction.z + n


@dataclass(frozen=True)
class FactorialForm:
    region: PolyhedralRegion
    gamma: tuple[Fraction, ...]
    scalar: Fraction
    c_poly: MultiPoly
    d_poly: MultiPoly
    chains: tuple[FactorialChain, ...]


def split_factorial(ps: PiecewiseStructure) -> list[FactorialForm]:
    """Rewrite each piece as plain products with nonnegative upper limits.

    A piece is cut along the sign of v.(z - z0) for each chain direction v
    (at most 2^|V| nonempty subregions).  On the nonnegative side of v the
    product over [v.z0, v.z) becomes prod_{j=1}^{v.z - v.z0} of the
    arguments shifted by v.z0 - 1; on the negative side it becomes the
    reciprocal chain reflected through v.z0, running to v.z0 - v.z.  The
    upper limits are >= 0 on their subregions by construction, with 0
    denoting the empty product.
    """
    out: list[FactorialForm] = []
    form = ps.form
    k = form.arity
    for piece in ps.pieces:
        if piece.base_value is None:
            log.info("skipping factorial form for value-unknown piece at %s", piece.base_point)
            continue
        z0 = piece.base_point
        scalar = piece.base_value
        scalar *= form.d_poly.evaluate(z0) / form.c_poly.evaluate(z0)
        for g, z0i in zip(form.gamma, z0):
            scalar *= Fraction(g) ** (-z0i)
        directions = [c.direction for c in form.chains]
        for signs in itertools.product((1, -1), repeat=len(directions)):
            halves = []
            for v, sign in zip(directions, signs):
                level = sum(a * b for a, b in zip(v, z0))
                if sign > 0:
                    halves.append(HalfSpace.make(v, level - 1))  # v.z >= v.z0
                else:
                    halves.append(
                        HalfSpace.make(tuple(-x for x in v), -level)
                    )  # v.z < v.z0
            region = piece.region.intersect(*halves)
            if not fm_feasible(region_rows(region), k):
                continue
            chains = []
            for chain, sign in zip(form.chains, signs):
                level = sum(a * b for a, b in zip(chain.direction, z0))
                if sign > 0:
                    chains.append(
                        FactorialChain(
                            chain.direction,
                            chain.num.shift_arg(level - 1),
                            chain.den.shift_arg(level - 1),
                            -level,
                        )
                    )
                else:
                    chains.append(
                        FactorialChain(
                            tuple(-x for x in chain.direction),
                            chain.den.reflect(level),
                            chain.num.reflect(level),
                            level,
                        )
                    )
            out.append(
                FactorialForm(
                    region,
                    form.gamma,
                    scalar,
                    form.c_poly,
                    form.d_poly,
                    tuple(chains),
                )
            )
    return out


def factorial_eval(ff: FactorialForm, z: Sequence[int]) -> Optional[Fraction]:
    """Value of a factorial form at a point of its region; None when the
    denominator polynomial vanishes.  Negative upper limits and zero chain
    factors violate the form's guarantees and raise IntegrityError."""
    z = tuple(int(x) for x in z)
    if ff.d_poly.evaluate(z) == 0:
        return None
    value = ff.scalar
    for g, zi in zip(ff.gamma, z):
        value *= Fraction(g) ** zi
    value *= ff.c_poly.evaluate(z) / ff.d_poly.evaluate(z)
    for chain in ff.chains:
        upper = sum(a * b for a, b in zip(chain.direction, z)) + chain.offset
        if upper < 0:
            raise IntegrityError(f"negative product limit {upper} in a factorial form")
        for j in range(1, upper + 1):
            num = chain.num.evaluate(j)
            den = chain.den.evaluate(j)
            if num == 0 or den == 0:
                raise IntegrityError(f"zero chain factor at j = {j} in a factorial form")
            value *= num / den
    return value


# ---------------------------------------------------------------------------
# Pochhammer forms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PochhammerEntry:
    base: Fraction  # m of the rising factorial (m)_r
    direction: Point
    offset: int  # r = direction.z + offset


@dataclass(frozen=True)
class PochhammerForm:
    region: PolyhedralRegion
    gamma: tuple[Fraction, ...]
    scalar: Fraction
    c_poly: MultiPoly
    d_poly: MultiPoly
    numerator: tuple[PochhammerEntry, ...]
    denominator: tuple[PochhammerEntry, ...]


def rising_factorial(m: Fraction, length: int) -> Fraction:
    """(m)_r = m (m+1) ... (m+r-1), with (m)_0 = 1."""
    if length < 0:
        raise IntegrityError("rising factorial length must be nonnegative")
    value = Fraction(1)
    for i in range(length):
        value *= m + i
    return value


def to_pochhammer(ff: FactorialForm) -> PochhammerForm:
    """Rewrite a factorial form as rising factorials.

    Each linear factor (j - rho) of a chain polynomial contributes the
    symbol (1 - rho) rising (w.z + n) times; the leading coefficient alpha
    contributes alpha^w to the per-axis scalars and alpha^n to the global
    one.  A chain polynomial with an irreducible nonlinear factor over the
    rationals does not rewrite and raises SplittingError.
    """
    gamma = [Fraction(g) for g in ff.gamma]
    scalar = ff.scalar
    numerator: list[PochhammerEntry] = []
    denominator: list[PochhammerEntry] = []
    for chain in ff.chains:
        for poly, target, inverted in (
            (chain.num, numerator, False),
            (chain.den, denominator, True),
        ):
            if poly.is_constant:
                alpha = poly.coeffs[0] if poly.coeffs else Fraction(0)
            else:
                roots, cofactor = rational_roots(poly)
                if cofactor.degree() >= 1:
                    raise SplittingError(
                        f"chain factor {cofactor} does not split over the rationals",
                        factor=cofactor,
                    )
                alpha = cofactor.coeffs[0]
                for rho in roots:
                    target.append(PochhammerEntry(1 - rho, chain.direction, chain.offset))
            if alpha == 0:
                raise IntegrityError("zero chain polynomial in a factorial form")
            exponent = -1 if inverted else 1
            for i, w in enumerate(chain.direction):
                gamma[i] *= alpha ** (exponent * w)
            scalar *= alpha ** (exponent * chain.offset)
    return PochhammerForm(
        ff.region,
        tuple(gamma),
        scalar,
        ff.c_poly,
        ff.d_poly,
        tuple(numerator),
        tuple(denominator),
    )


def pochhammer_eval(pf: PochhammerForm, z: Sequence[int]) -> Optional[Fraction]:
    """Evaluate gamma^z * scalar * C(z)/D(z) times the rising-factorial
    quotient; None when D vanishes at z.  Points outside the region are a
    caller error."""
    z = tuple(int(x) for x in z)
    if not pf.region.contains(z):
        raise PreconditionError(f"{z} is outside the form's region")
    if pf.d_poly.evaluate(z) == 0:
        return None
    value = pf.scalar
    for g, zi in zip(pf.gamma, z):
        value *= Fraction(g) ** zi
    value *= pf.c_poly.evaluate(z) / pf.d_poly.evaluate(z)
    for entry in pf.numerator:
        length = sum(a * b for a, b in zip(entry.direction, z)) + entry.offset
        value *= rising_factorial(entry.base, length)
    for entry in pf.denominator:
        length = sum(a * b for a, b in zip(entry.direction, z)) + entry.offset
        value /= rising_factorial(entry.base, length)
    return value
