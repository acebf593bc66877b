"""Hypergeometric terms presented by their shift quotients.

A term f on Z^k is never stored as a function; it is specified by the k
reduced quotients R_i = A_i / B_i with A_i(z) f(z) = B_i(z) f(z + e_i),
an optional seed value, and a declared list of exception hyperplanes where
the recurrences are allowed to fail.  All algorithms consume only the
quotients and finitely many propagated values.

Rational functions are kept in factored form: a nonzero rational scalar
together with (base, exponent) pairs whose bases are normalized,
nonconstant, and pairwise coprime.  Input factors are trusted as the
finest available decomposition; they are refined only by gcd-splitting
between factors.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import CocycleError, DimensionError, PreconditionError
from .geometry import (
    MeasureZeroSet,
    PolyhedralRegion,
    certificate_cover,
    characteristic_certificates,
)
from .poly import MultiPoly, Point, exact_div, gcd

# ---------------------------------------------------------------------------
# factored rational functions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FactoredRational:
    """scalar * prod(base ** exponent) with normalized, pairwise coprime,
    nonconstant bases and nonzero exponents."""

    arity: int
    scalar: Fraction
    factors: tuple[tuple[MultiPoly, int], ...]

    @staticmethod
    def make(arity: int, scalar, factors: Iterable[tuple[MultiPoly, int]] = ()) -> "FactoredRational":
        scalar = Fraction(scalar)
        if scalar == 0:
            raise PreconditionError("rational function scalar must be nonzero")
        pool: list[tuple[MultiPoly, int]] = []
        for base, exp in factors:
            if base.arity != arity:
                raise DimensionError("factor arity mismatch")
            if exp == 0:
                continue
            if base.is_zero:
                raise PreconditionError("zero polynomial cannot be a factor")
            s, prim = base.normalized()
            scalar *= Fraction(s) ** exp
            if not prim.is_constant:
                pool.append((prim, exp))
        pool = _merge(pool)
        pool = _refine_coprime(pool)
        pool.sort(key=lambda t: (t[0].total_degree(), t[0].terms))
        return FactoredRational(arity, scalar, tuple(pool))

    @staticmethod
    def one(arity: int) -> "FactoredRational":
        return FactoredRational(arity, Fraction(1), ())

    @staticmethod
    def from_poly(p: MultiPoly) -> "FactoredRational":
        if p.is_zero:
            raise PreconditionError("zero polynomial is not a rational function")
        return FactoredRational.make(p.arity, 1, [(p, 1)])

    @property
    def is_one(self) -> bool:
        return self.scalar == 1 and not self.factors

    @property
    def is_constant(self) -> bool:
        return not self.factors

    def __mul__(self, other: "FactoredRational") -> "FactoredRational":
        if self.arity != other.arity:
            raise DimensionError("arity mismatch")
        return FactoredRational.make(
            self.arity, self.scalar * other.scalar, self.factors + other.factors
        )

    def inv(self) -> "FactoredRational":
        return FactoredRational(
            self.arity, 1 / self.scalar, tuple((b, -e) for b, e in self.factors)
        )

    def shift(self, v: Sequence[int]) -> "FactoredRational":
        # shifting preserves normalization and coprimality
        return FactoredRational(
            self.arity, self.scalar, tuple((b.shift(v), e) for b, e in self.factors)
        )

    def split(self) -> tuple["FactoredRational", "FactoredRational"]:
        """Numerator and denominator as factored polynomials (positive
        exponents); the scalar stays with the numerator."""
        num = FactoredRational(
            self.arity, self.scalar, tuple((b, e) for b, e in self.factors if e > 0)
        )
        den = FactoredRational(
            self.arity, Fraction(1), tuple((b, -e) for b, e in self.factors if e < 0)
        )
        return num, den

    def numerator(self) -> MultiPoly:
        num = MultiPoly.constant(self.arity, self.scalar)
        for base, exp in self.factors:
            if exp > 0:
                num = num * base**exp
        return num

    def denominator(self) -> MultiPoly:
        den = MultiPoly.constant(self.arity, 1)
        for base, exp in self.factors:
            if exp < 0:
                den = den * base ** (-exp)
        return den

    def eq_rational(self, other: "FactoredRational") -> bool:
        """Equality as rational functions (cross multiplication; robust to
        different factor granularity)."""
        return self.numerator() * other.denominator() == other.numerator() * self.denominator()

    def evaluate(self, z: Sequence[int]) -> Optional[Fraction]:
        """Value at an integer point; None when a denominator factor
        vanishes there."""
        for base, exp in self.factors:
            if exp < 0 and base.evaluate(z) == 0:
                return None
        value = self.scalar
        for base, exp in self.factors:
            v = base.evaluate(z)
            if v == 0:
                return Fraction(0)
            value *= v**exp
        return value

    def __str__(self) -> str:
        from .parsing import format_multipoly

        num, den = self.numerator(), self.denominator()
        if den.is_constant and den.constant_value() == 1:
            return format_multipoly(num)
        return f"({format_multipoly(num)}) / ({format_multipoly(den)})"


def _merge(pool: list[tuple[MultiPoly, int]]) -> list[tuple[MultiPoly, int]]:
    merged: dict[MultiPoly, int] = {}
    for base, exp in pool:
        merged[base] = merged.get(base, 0) + exp
    return [(b, e) for b, e in merged.items() if e != 0]


def _refine_coprime(pool: list[tuple[MultiPoly, int]]) -> list[tuple[MultiPoly, int]]:
    """gcd-split bases until pairwise coprime; exponents follow along."""
    work = list(pool)
    changed = True
    while changed:
        changed = False
        for i in range(len(work)):
            for j in range(i + 1, len(work)):
                p, ep = work[i]
                q, eq = work[j]
                g = gcd(p, q)
                if g.is_constant:
                    continue
                p2 = exact_div(p, g)
                q2 = exact_div(q, g)
                assert p2 is not None and q2 is not None
                replacement = [(g, ep + eq)]
                if not p2.is_constant:
                    replacement.append((p2, ep))
                if not q2.is_constant:
                    replacement.append((q2, eq))
                work = [work[m] for m in range(len(work)) if m not in (i, j)] + replacement
                work = _merge(work)
                changed = True
                break
            if changed:
                break
    return work


# ---------------------------------------------------------------------------
# term specifications
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Generator:
    """One recurrence A(z) f(z) = B(z) f(z + e_i), both sides kept in
    factored form.  num/den need not be coprime: extending a term by zero
    multiplies both by the same certificate polynomial."""

    num: FactoredRational
    den: FactoredRational

    def ratio(self) -> FactoredRational:
        """The reduced quotient A / B."""
        return self.num * self.den.inv()


@dataclass(frozen=True)
class TermSpec:
    """A hypergeometric term given by its unit-direction quotients."""

    arity: int
    generators: tuple[Generator, ...]
    exceptions: MeasureZeroSet = field(default_factory=MeasureZeroSet.empty)
    seed: Optional[tuple[Point, Fraction]] = None
    honest: bool = True
    zero_divisor_witness: Optional[MultiPoly] = None

    @staticmethod
    def make(
        arity: int,
        generators: Sequence[tuple],
        exceptions: MeasureZeroSet = MeasureZeroSet.empty(),
        seed: Optional[tuple[Sequence[int], Fraction]] = None,
        honest: bool = True,
        zero_divisor_witness: Optional[MultiPoly] = None,
    ) -> "TermSpec":
        """Each generator is a (numerator, denominator) pair; either side
        may be a MultiPoly, a FactoredRational with positive exponents, or
        a list of (base, exponent) factors.  Factored input is kept
        factored."""
        if arity < 1:
            raise PreconditionError("arity must be at least 1")
        if len(generators) != arity:
            raise DimensionError(f"expected {arity} generators, got {len(generators)}")
        gens = []
        for num, den in generators:
            gens.append(Generator(_as_factored_poly(num, arity), _as_factored_poly(den, arity)))
        if seed is not None:
            point, value = seed
            if len(point) != arity:
                raise DimensionError("seed point arity mismatch")
            value = Fraction(value)
            seed = (tuple(int(x) for x in point), value)
        return TermSpec(
            arity,
            tuple(gens),
            exceptions,
            seed,
            honest,
            zero_divisor_witness,
        )

    @staticmethod
    def from_ratios(
        arity: int,
        ratios: Sequence["FactoredRational"],
        exceptions: MeasureZeroSet = MeasureZeroSet.empty(),
        seed: Optional[tuple[Sequence[int], Fraction]] = None,
        honest: bool = True,
    ) -> "TermSpec":
        """Build a spec directly from reduced quotients, preserving their
        factored structure."""
        return TermSpec.make(
            arity,
            [r.split() for r in ratios],
            exceptions=exceptions,
            seed=seed,
            honest=honest,
        )

    def ratios(self) -> list[FactoredRational]:
        return [g.ratio() for g in self.generators]

    def with_seed(self, point: Sequence[int], value) -> "TermSpec":
        if len(point) != self.arity:
            raise DimensionError("seed point arity mismatch")
        return TermSpec(
            self.arity,
            self.generators,
            self.exceptions,
            (tuple(int(x) for x in point), Fraction(value)),
            self.honest,
            self.zero_divisor_witness,
        )


def _as_factored_poly(value, arity: int) -> FactoredRational:
    if isinstance(value, FactoredRational):
        if any(e < 0 for _, e in value.factors):
            raise PreconditionError("generator sides must be polynomials")
        return value
    if isinstance(value, MultiPoly):
        if value.is_zero:
            raise PreconditionError("generator polynomials must be nonzero")
        return FactoredRational.from_poly(value)
    return FactoredRational.make(arity, 1, list(value))


def zero_divisor_spec(
    witness: MultiPoly, seed: Optional[tuple[Sequence[int], Fraction]] = None
) -> TermSpec:
    """A term annihilated by the witness polynomial p: taking A_i = p and
    B_i = p shifted by e_i satisfies the recurrences for any function
    supported on the zero set of p."""
    if witness.is_zero:
        raise PreconditionError("zero-divisor witness must be nonzero")
    k = witness.arity
    gens = []
    for i in range(k):
        e = tuple(1 if j == i else 0 for j in range(k))
        gens.append((witness, witness.shift(e)))
    return TermSpec.make(k, gens, seed=seed, zero_divisor_witness=witness)


# ---------------------------------------------------------------------------
# compatibility and composition
# ---------------------------------------------------------------------------


def _unit(k: int, i: int) -> Point:
    return tuple(1 if j == i else 0 for j in range(k))


@functools.lru_cache(maxsize=256)
def check_compatibility(spec: TermSpec) -> bool:
    """Whether R_i * (R_j shifted by e_i) = R_j * (R_i shifted by e_j) as
    exact rational functions for every pair i < j.  This is the condition
    for the quotients to come from a single term."""
    ratios = spec.ratios()
    k = spec.arity
    for i in range(k):
        for j in range(i + 1, k):
            lhs = ratios[i] * ratios[j].shift(_unit(k, i))
            rhs = ratios[j] * ratios[i].shift(_unit(k, j))
            if not lhs.eq_rational(rhs):
                return False
    return True


def compose_direction(spec: TermSpec, w: Sequence[int]) -> FactoredRational:
    """The reduced term ratio R_w for an arbitrary integer direction w.

    Built axis by axis (all e_1 steps, then e_2, ...) from

        R_{u + e_i} = R_u * (R_{e_i} shifted by u)
        R_{u - e_i} = R_u / (R_{e_i} shifted by u - e_i)

    Compatibility makes the result independent of the route.
    """
    if len(w) != spec.arity:
        raise DimensionError("direction arity mismatch")
    if not check_compatibility(spec):
        raise CocycleError("generators are not compatible")
    ratios = spec.ratios()
    k = spec.arity
    result = FactoredRational.one(k)
    position = [0] * k
    for i in range(k):
        step = _unit(k, i)
        for _ in range(abs(int(w[i]))):
            if w[i] > 0:
                result = result * ratios[i].shift(tuple(position))
                position[i] += 1
            else:
                position[i] -= 1
                result = result * ratios[i].shift(tuple(position)).inv()
    return result


def extend_by_zero(spec: TermSpec, support: PolyhedralRegion) -> TermSpec:
    """The spec of the term that agrees with f on the support region and is
    zero elsewhere.

    Multiplying both sides of each recurrence by the characteristic
    certificate of the region makes the recurrence valid on all of Z^k;
    the certificate zero hyperplanes join the declared exceptions, since
    the reduced quotients may genuinely fail there.
    """
    if support.arity != spec.arity:
        raise DimensionError("support arity mismatch")
    certs = characteristic_certificates(support)
    gens = []
    for g, p in zip(spec.generators, certs):
        if p.is_constant:
            gens.append(g)
        else:
            factor = FactoredRational.from_poly(p)
            gens.append(Generator(g.num * factor, g.den * factor))
    exceptions = spec.exceptions.union(certificate_cover(support))
    seed = spec.seed
    if seed is not None and not support.contains(seed[0]):
        seed = None
    return TermSpec(
        spec.arity,
        tuple(gens),
        exceptions,
        seed,
        spec.honest,
        spec.zero_divisor_witness,
    )
