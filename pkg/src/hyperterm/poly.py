"""Exact polynomial arithmetic over the rationals.

Two representations are used throughout the package:

  MultiPoly  -- sparse multivariate polynomial: a sorted tuple of
                (exponent tuple, Fraction) pairs.  The zero polynomial has
                no terms.  Coefficients are exact rationals; no floating
                point appears anywhere.
  UniPoly    -- dense univariate polynomial: coefficient tuple, constant
                term first, leading coefficient nonzero.

Both types are immutable and hashable, so they can be dict keys and shared
freely between threads.

Monomials are ordered graded-lexicographically (total degree first, then
lexicographic on the exponent tuple).  Normalization of a polynomial means
scaling by a positive rational so the coefficients are coprime integers and
the graded-lex leading coefficient is positive; this gives every nonzero
polynomial a canonical associate.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from .errors import DimensionError, PreconditionError

Monomial = tuple[int, ...]
Point = tuple[int, ...]


def _glex_key(mono: Monomial):
    return (sum(mono), mono)


# ---------------------------------------------------------------------------
# multivariate polynomials
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MultiPoly:
    """Sparse multivariate polynomial with Fraction coefficients.

    ``terms`` is sorted by descending graded-lex order and never contains a
    zero coefficient, so equality and hashing are structural.
    """

    arity: int
    terms: tuple[tuple[Monomial, Fraction], ...]

    # -- constructors -------------------------------------------------------

    @staticmethod
    def from_dict(arity: int, coeffs: Mapping[Monomial, Fraction]) -> "MultiPoly":
        items = []
        for mono, c in coeffs.items():
            if len(mono) != arity:
                raise DimensionError(f"monomial {mono} has wrong length for arity {arity}")
            c = Fraction(c)
            if c != 0:
                items.append((tuple(mono), c))
        items.sort(key=lambda t: _glex_key(t[0]), reverse=True)
        return MultiPoly(arity, tuple(items))

    @staticmethod
    def constant(arity: int, value) -> "MultiPoly":
        return MultiPoly.from_dict(arity, {(0,) * arity: Fraction(value)})

    @staticmethod
    def variable(arity: int, index: int) -> "MultiPoly":
        if not 0 <= index < arity:
            raise DimensionError(f"variable index {index} out of range for arity {arity}")
        mono = tuple(1 if i == index else 0 for i in range(arity))
        return MultiPoly(arity, ((mono, Fraction(1)),))

    @staticmethod
    def linear(coeffs: Sequence[int], constant=0) -> "MultiPoly":
        """The polynomial coeffs . z + constant."""
        arity = len(coeffs)
        d: dict[Monomial, Fraction] = {}
        for i, c in enumerate(coeffs):
            if c:
                mono = tuple(1 if j == i else 0 for j in range(arity))
                d[mono] = Fraction(c)
        if constant:
            d[(0,) * arity] = Fraction(constant)
        return MultiPoly.from_dict(arity, d)

    # -- basic queries -------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_constant(self) -> bool:
        return all(sum(m) == 0 for m, _ in self.terms)

    def constant_value(self) -> Fraction:
        if self.is_zero:
            return Fraction(0)
        if not self.is_constant:
            raise PreconditionError("polynomial is not constant")
        return self.terms[0][1]

    def total_degree(self) -> int:
        """Total degree; 0 for the zero polynomial."""
        return max((sum(m) for m, _ in self.terms), default=0)

    def degree_in(self, index: int) -> int:
        return max((m[index] for m, _ in self.terms), default=0)

    def leading(self) -> tuple[Monomial, Fraction]:
        if self.is_zero:
            raise PreconditionError("zero polynomial has no leading term")
        return self.terms[0]

    def coefficient(self, mono: Monomial) -> Fraction:
        for m, c in self.terms:
            if m == mono:
                return c
        return Fraction(0)

    def as_dict(self) -> dict[Monomial, Fraction]:
        return dict(self.terms)

    def variables_used(self) -> list[int]:
        used = set()
        for m, _ in self.terms:
            for i, e in enumerate(m):
                if e:
                    used.add(i)
        return sorted(used)

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other: "MultiPoly") -> None:
        if self.arity != other.arity:
            raise DimensionError(f"arity mismatch: {self.arity} vs {other.arity}")

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        self._check(other)
        d = self.as_dict()
        for m, c in other.terms:
            d[m] = d.get(m, Fraction(0)) + c
        return MultiPoly.from_dict(self.arity, d)

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        self._check(other)
        d = self.as_dict()
        for m, c in other.terms:
            d[m] = d.get(m, Fraction(0)) - c
        return MultiPoly.from_dict(self.arity, d)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.arity, tuple((m, -c) for m, c in self.terms))

    def __mul__(self, other: "MultiPoly") -> "MultiPoly":
        self._check(other)
        d: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                m = tuple(a + b for a, b in zip(m1, m2))
                d[m] = d.get(m, Fraction(0)) + c1 * c2
        return MultiPoly.from_dict(self.arity, d)

    def scale(self, c) -> "MultiPoly":
        c = Fraction(c)
        if c == 0:
            return MultiPoly(self.arity, ())
        return MultiPoly(self.arity, tuple((m, c * k) for m, k in self.terms))

    def __pow__(self, n: int) -> "MultiPoly":
        if n < 0:
            raise PreconditionError("negative polynomial power")
        result = MultiPoly.constant(self.arity, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != self.arity:
            raise DimensionError("evaluation point has wrong length")
        vals = [Fraction(x) for x in point]
        total = Fraction(0)
        for mono, coeff in self.terms:
            term = coeff
            for e, v in zip(mono, vals):
                if e:
                    term *= v**e
            total += term
        return total

    def shift(self, v: Sequence[int]) -> "MultiPoly":
        """The polynomial z -> p(z + v)."""
        if len(v) != self.arity:
            raise DimensionError("shift vector has wrong length")
        if all(x == 0 for x in v):
            return self
        # expand each (z_i + v_i)^e with binomial coefficients
        d: dict[Monomial, Fraction] = {}
        for mono, coeff in self.terms:
            partial: dict[Monomial, Fraction] = {(0,) * self.arity: coeff}
            for i, e in enumerate(mono):
                if e == 0:
                    continue
                vi = v[i]
                nxt: dict[Monomial, Fraction] = {}
                for m0, c0 in partial.items():
                    for j in range(e + 1):
                        c = c0 * math.comb(e, j) * Fraction(vi) ** (e - j)
                        if c == 0:
                            continue
                        m = list(m0)
                        m[i] += j
                        key = tuple(m)
                        nxt[key] = nxt.get(key, Fraction(0)) + c
                partial = nxt
            for m, c in partial.items():
                d[m] = d.get(m, Fraction(0)) + c
        return MultiPoly.from_dict(self.arity, d)

    def partial(self, index: int) -> "MultiPoly":
        """Formal partial derivative with respect to variable ``index``."""
        d: dict[Monomial, Fraction] = {}
        for mono, coeff in self.terms:
            e = mono[index]
            if e == 0:
                continue
            m = list(mono)
            m[index] = e - 1
            d[tuple(m)] = coeff * e
        return MultiPoly.from_dict(self.arity, d)

    def homogeneous_part(self, degree: int) -> "MultiPoly":
        return MultiPoly(
            self.arity, tuple((m, c) for m, c in self.terms if sum(m) == degree)
        )

    def normalized(self) -> tuple[Fraction, "MultiPoly"]:
        """Split p = scalar * q with q having coprime integer coefficients
        and positive graded-lex leading coefficient.  The zero polynomial
        normalizes to (1, 0)."""
        if self.is_zero:
            return Fraction(1), self
        num_gcd = 0
        den_lcm = 1
        for _, c in self.terms:
            num_gcd = math.gcd(num_gcd, abs(c.numerator))
            den_lcm = den_lcm * c.denominator // math.gcd(den_lcm, c.denominator)
        scalar = Fraction(num_gcd, den_lcm)
        if self.terms[0][1] < 0:
            scalar = -scalar
        return scalar, self.scale(1 / scalar)

    def __str__(self) -> str:
        from .parsing import format_multipoly

        return format_multipoly(self)


# ---------------------------------------------------------------------------
# exact division and gcd
# ---------------------------------------------------------------------------


def _mono_div(a: Monomial, b: Monomial) -> Optional[Monomial]:
    out = []
    for x, y in zip(a, b):
        if x < y:
            return None
        out.append(x - y)
    return tuple(out)


def exact_div(p: MultiPoly, q: MultiPoly) -> Optional[MultiPoly]:
    """Return p / q when q divides p exactly, else None."""
    if q.is_zero:
        return None
    if p.is_zero:
        return p
    if p.arity != q.arity:
        raise DimensionError("arity mismatch in division")
    lq_mono, lq_coeff = q.leading()
    quotient: dict[Monomial, Fraction] = {}
    rem = p
    while not rem.is_zero:
        lr_mono, lr_coeff = rem.leading()
        m = _mono_div(lr_mono, lq_mono)
        if m is None:
            return None
        c = lr_coeff / lq_coeff
        quotient[m] = quotient.get(m, Fraction(0)) + c
        rem = rem - MultiPoly.from_dict(p.arity, {m: c}) * q
    return MultiPoly.from_dict(p.arity, quotient)


def _coeffs_in(p: MultiPoly, index: int) -> dict[int, MultiPoly]:
    """View p as a polynomial in variable ``index``: exponent -> coefficient
    (a MultiPoly of the same arity not involving that variable)."""
    out: dict[int, dict[Monomial, Fraction]] = {}
    for mono, coeff in p.terms:
        e = mono[index]
        m = list(mono)
        m[index] = 0
        out.setdefault(e, {})[tuple(m)] = coeff
    return {e: MultiPoly.from_dict(p.arity, d) for e, d in out.items()}


def _from_coeffs(arity: int, index: int, coeffs: Mapping[int, MultiPoly]) -> MultiPoly:
    d: dict[Monomial, Fraction] = {}
    for e, q in coeffs.items():
        for mono, c in q.terms:
            m = list(mono)
            m[index] += e
            d[tuple(m)] = d.get(tuple(m), Fraction(0)) + c
    return MultiPoly.from_dict(arity, d)


def _content_in(p: MultiPoly, index: int) -> MultiPoly:
    parts = list(_coeffs_in(p, index).values())
    g = MultiPoly(p.arity, ())
    for part in parts:
        g = gcd(g, part)
    return g


def _pseudo_rem(a: MultiPoly, b: MultiPoly, index: int) -> MultiPoly:
    """Pseudo-remainder of a by b with respect to variable ``index``."""
    db = b.degree_in(index)
    b_coeffs = _coeffs_in(b, index)
    lb = b_coeffs[db]
    r = a
    while not r.is_zero and r.degree_in(index) >= db:
        dr = r.degree_in(index)
        r_coeffs = _coeffs_in(r, index)
        lr = r_coeffs[dr]
        shift_mono = tuple(dr - db if i == index else 0 for i in range(a.arity))
        r = r * lb - b * (lr * MultiPoly.from_dict(a.arity, {shift_mono: Fraction(1)}))
    return r


@functools.lru_cache(maxsize=8192)
def gcd(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """Greatest common divisor, normalized (coprime integer coefficients,
    positive graded-lex leading coefficient).  gcd(p, 0) is the normalized p.

    Uses content/primitive-part recursion on the variable of lowest degree,
    with a primitive pseudo-remainder sequence.  Adequate at small scale
    (arity <= 4, degree <= 6)."""
    if p.arity != q.arity:
        raise DimensionError("arity mismatch in gcd")
    if p.is_zero and q.is_zero:
        return p
    if p.is_zero:
        return q.normalized()[1]
    if q.is_zero:
        return p.normalized()[1]
    if p.is_constant or q.is_constant:
        return MultiPoly.constant(p.arity, 1)
    # variable of lowest positive degree in either argument
    best = None
    for i in range(p.arity):
        d = max(p.degree_in(i), q.degree_in(i))
        if d > 0 and (best is None or d < best[1]):
            best = (i, d)
    assert best is not None
    i = best[0]
    cp = _content_in(p, i)
    cq = _content_in(q, i)
    cont = gcd(cp, cq)
    pp = exact_div(p, cp)
    qq = exact_div(q, cq)
    assert pp is not None and qq is not None
    a, b = pp, qq
    if a.degree_in(i) < b.degree_in(i):
        a, b = b, a
    while not b.is_zero:
        r = _pseudo_rem(a, b, i)
        if not r.is_zero:
            rc = _content_in(r, i)
            r = exact_div(r, rc)
            assert r is not None
        a, b = b, r
    result = cont * a.normalized()[1]
    return result.normalized()[1]


def coprime(p: MultiPoly, q: MultiPoly) -> bool:
    return gcd(p, q).is_constant


# ---------------------------------------------------------------------------
# univariate polynomials
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class UniPoly:
    """Dense univariate polynomial, constant coefficient first."""

    coeffs: tuple[Fraction, ...]

    @staticmethod
    def make(coeffs: Iterable) -> "UniPoly":
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        return UniPoly(tuple(cs))

    @staticmethod
    def constant(value) -> "UniPoly":
        return UniPoly.make([value])

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def degree(self) -> int:
        """Degree; 0 for the zero polynomial."""
        return max(len(self.coeffs) - 1, 0)

    def leading_coeff(self) -> Fraction:
        if self.is_zero:
            raise PreconditionError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def evaluate(self, x) -> Fraction:
        x = Fraction(x)
        total = Fraction(0)
        for c in reversed(self.coeffs):
            total = total * x + c
        return total

    def __add__(self, other: "UniPoly") -> "UniPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly.make(
            [
                (self.coeffs[i] if i < len(self.coeffs) else 0)
                + (other.coeffs[i] if i < len(other.coeffs) else 0)
                for i in range(n)
            ]
        )

    def __neg__(self) -> "UniPoly":
        return UniPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __mul__(self, other: "UniPoly") -> "UniPoly":
        if self.is_zero or other.is_zero:
            return UniPoly(())
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly.make(out)

    def scale(self, c) -> "UniPoly":
        c = Fraction(c)
        if c == 0:
            return UniPoly(())
        return UniPoly(tuple(c * k for k in self.coeffs))

    def shift_arg(self, c) -> "UniPoly":
        """The polynomial t -> p(t + c)."""
        c = Fraction(c)
        result = UniPoly(())
        linear = UniPoly.make([c, 1])
        for coeff in reversed(self.coeffs):
            result = result * linear + UniPoly.constant(coeff)
        return result

    def reflect(self, c) -> "UniPoly":
        """The polynomial t -> p(c - t)."""
        shifted = self.shift_arg(c)
        return UniPoly.make(
            [(-1) ** i * coeff for i, coeff in enumerate(shifted.coeffs)]
        )

    def divmod_linear(self, root: Fraction) -> tuple["UniPoly", Fraction]:
        """Divide by (t - root); return (quotient, remainder value)."""
        q = []
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * root + c
            q.append(acc)
        rem = q.pop() if q else Fraction(0)
        q.reverse()
        return UniPoly.make(q), rem

    def normalized(self) -> tuple[Fraction, "UniPoly"]:
        """Split p = scalar * q, q with coprime integer coefficients and
        positive leading coefficient."""
        if self.is_zero:
            return Fraction(1), self
        num_gcd = 0
        den_lcm = 1
        for c in self.coeffs:
            num_gcd = math.gcd(num_gcd, abs(c.numerator))
            den_lcm = den_lcm * c.denominator // math.gcd(den_lcm, c.denominator)
        scalar = Fraction(num_gcd, den_lcm)
        if self.coeffs[-1] < 0:
            scalar = -scalar
        return scalar, self.scale(1 / scalar)

    def as_multipoly(self, direction: Sequence[int], offset: int = 0) -> MultiPoly:
        """Substitute t = direction . z + offset, producing a MultiPoly."""
        arity = len(direction)
        linear = MultiPoly.linear(direction, offset)
        result = MultiPoly(arity, ())
        for coeff in reversed(self.coeffs):
            result = result * linear + MultiPoly.constant(arity, coeff)
        return result

    def __str__(self) -> str:
        from .parsing import format_unipoly

        return format_unipoly(self)


def _divisors(n: int) -> list[int]:
    n = abs(n)
    out = set()
    for d in range(1, int(math.isqrt(n)) + 1):
        if n % d == 0:
            out.add(d)
            out.add(n // d)
    return sorted(out)


def rational_roots(p: UniPoly) -> tuple[list[Fraction], UniPoly]:
    """All rational roots of p with multiplicity (sorted ascending), plus the
    root-free cofactor q with p = q * prod(t - root)."""
    if p.is_zero:
        raise PreconditionError("zero polynomial has no well-defined roots")
    roots: list[Fraction] = []
    work = p
    # strip powers of t
    while not work.is_constant and work.coeffs[0] == 0:
        roots.append(Fraction(0))
        work = UniPoly(work.coeffs[1:])
    if work.is_constant:
        roots.sort()
        return roots, work
    _, prim = work.normalized()
    trailing = prim.coeffs[0].numerator
    lead = prim.coeffs[-1].numerator
    candidates = sorted(
        {
            Fraction(sign * a, b)
            for a in _divisors(trailing)
            for b in _divisors(lead)
            for sign in (1, -1)
        }
    )
    for cand in candidates:
        while work.degree() >= 1 and work.evaluate(cand) == 0:
            work, rem = work.divmod_linear(cand)
            assert rem == 0
            roots.append(cand)
    roots.sort()
    return roots, work


def integer_roots(p: UniPoly) -> list[int]:
    roots, _ = rational_roots(p)
    return [int(r) for r in roots if r.denominator == 1]


# ---------------------------------------------------------------------------
# integer vector helpers
# ---------------------------------------------------------------------------


def primitive_vector(values: Sequence[Fraction]) -> Optional[Point]:
    """Scale a rational vector to a coprime integer vector whose first
    nonzero entry is positive.  None for the zero vector."""
    fracs = [Fraction(v) for v in values]
    if all(v == 0 for v in fracs):
        return None
    den = 1
    for v in fracs:
        den = den * v.denominator // math.gcd(den, v.denominator)
    ints = [int(v * den) for v in fracs]
    g = 0
    for x in ints:
        g = math.gcd(g, abs(x))
    ints = [x // g for x in ints]
    for x in ints:
        if x != 0:
            if x < 0:
                ints = [-y for y in ints]
            break
    return tuple(ints)


def bezout_vector(v: Sequence[int]) -> Point:
    """An integer vector w with v . w = 1; requires v primitive."""
    g = 0
    coeffs = [0] * len(v)
    for i, x in enumerate(v):
        if x == 0:
            continue
        if g == 0:
            g = abs(x)
            coeffs[i] = 1 if x > 0 else -1
            continue
        new_g, a, b = _ext_gcd(g, abs(x))
        coeffs = [c * a for c in coeffs]
        coeffs[i] = b if x > 0 else -b
        g = new_g
    if g != 1:
        raise PreconditionError(f"vector {tuple(v)} is not primitive")
    return tuple(coeffs)


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    if b == 0:
        return a, 1, 0
    g, x, y = _ext_gcd(b, a % b)
    return g, y, x - (a // b) * y


# ---------------------------------------------------------------------------
# simple-polynomial detection
# ---------------------------------------------------------------------------


def _interpolate(points: list[tuple[Fraction, Fraction]]) -> UniPoly:
    """Lagrange interpolation through exact points."""
    result = UniPoly(())
    for i, (xi, yi) in enumerate(points):
        num = UniPoly.constant(yi)
        den = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if i == j:
                continue
            num = num * UniPoly.make([-xj, 1])
            den *= xi - xj
        result = result + num.scale(1 / den)
    return result


@functools.lru_cache(maxsize=8192)
def detect_simple(p: MultiPoly) -> Optional[tuple[Point, UniPoly]]:
    """Recognize p(z) = q(v . z) for a univariate q and a primitive integer
    direction v.

    The candidate direction comes from proportionality of the formal partial
    derivatives (q(v.z) has gradient parallel to v everywhere); it is then
    verified by exact expansion.  Constants report the zero direction.
    Returns None when no such representation exists.
    """
    if p.is_zero:
        raise PreconditionError("detect_simple requires a nonzero polynomial")
    partials = [p.partial(i) for i in range(p.arity)]
    used = [i for i, q in enumerate(partials) if not q.is_zero]
    if not used:
        return (0,) * p.arity, UniPoly.constant(p.constant_value())
    j0 = used[0]
    base = partials[j0]
    ratios = [Fraction(0)] * p.arity
    ratios[j0] = Fraction(1)
    base_lead_mono, base_lead_coeff = base.leading()
    for i in used[1:]:
        ci = partials[i].coefficient(base_lead_mono) / base_lead_coeff
        if ci == 0 or partials[i] - base.scale(ci) != MultiPoly(p.arity, ()):
            return None
        ratios[i] = ci
    v = primitive_vector(ratios)
    assert v is not None
    # read off the univariate polynomial along a section with v . w = 1
    w = bezout_vector(v)
    n = p.total_degree()
    samples = [
        (Fraction(t), p.evaluate([t * wi for wi in w])) for t in range(n + 1)
    ]
    q = _interpolate(samples)
    if q.as_multipoly(v) != p:
        return None
    return v, q


# ---------------------------------------------------------------------------
# box search
# ---------------------------------------------------------------------------


def find_nonzero_in_box(p: MultiPoly, corner: Sequence[int], size: int) -> Optional[Point]:
    """A point of the box {z : corner_i <= z_i <= corner_i + size} where p is
    nonzero, or None when p is the zero polynomial.

    Requires size >= total_degree(p): a nonzero polynomial of total degree n
    cannot vanish on a whole box of size n, so the scan is guaranteed to
    succeed.
    """
    if len(corner) != p.arity:
        raise DimensionError("box corner has wrong length")
    if p.is_zero:
        return None
    if size < p.total_degree():
        raise PreconditionError(
            f"box size {size} is smaller than total degree {p.total_degree()}"
        )
    for offset in itertools.product(range(size + 1), repeat=p.arity):
        z = tuple(c + o for c, o in zip(corner, offset))
        if p.evaluate(z) != 0:
            return z
    raise PreconditionError("no nonzero point found; this should be impossible")


# ---------------------------------------------------------------------------
# shift equivalence
# ---------------------------------------------------------------------------


def _solve_linear(rows: list[list[Fraction]], rhs: list[Fraction]):
    """Gaussian elimination; returns (particular solution, nullspace basis)
    or None when inconsistent."""
    n_vars = len(rows[0]) if rows else 0
    aug = [row[:] + [b] for row, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for c in range(n_vars):
        pivot = next((i for i in range(r, len(aug)) if aug[i][c] != 0), None)
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        scale = aug[r][c]
        aug[r] = [x / scale for x in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    for i in range(r, len(aug)):
        if aug[i][n_vars] != 0:
            return None
    particular = [Fraction(0)] * n_vars
    for i, c in enumerate(pivots):
        particular[c] = aug[i][n_vars]
    free = [c for c in range(n_vars) if c not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * n_vars
        vec[f] = Fraction(1)
        for i, c in enumerate(pivots):
            vec[c] = -aug[i][f]
        basis.append(vec)
    return particular, basis


_SHIFT_SEARCH_WINDOW = 16


def shift_between(p: MultiPoly, q: MultiPoly) -> Optional[Point]:
    """An integer vector u with p(z + u) = q(z), or None.

    Both arguments must be normalized (coprime integer coefficients, positive
    leading coefficient); shifting preserves that normal form, so equal top
    homogeneous parts are a cheap necessary filter.  The candidate u comes
    from the degree (d-1) coefficients, which depend linearly on u; if the
    top form is degenerate the system is underdetermined and the affine
    solution family is enumerated over a bounded window.
    """
    if p.arity != q.arity:
        raise DimensionError("arity mismatch")
    if p == q:
        return (0,) * p.arity
    d = p.total_degree()
    if d != q.total_degree() or d == 0:
        return None
    if p.homogeneous_part(d) != q.homogeneous_part(d):
        return None
    grads = [p.partial(i).homogeneous_part(d - 1) for i in range(p.arity)]
    target = q.homogeneous_part(d - 1) - p.homogeneous_part(d - 1)
    monos = sorted(
        {m for g in grads for m, _ in g.terms} | {m for m, _ in target.terms}
    )
    rows = [[g.coefficient(m) for g in grads] for m in monos]
    rhs = [target.coefficient(m) for m in monos]
    solved = _solve_linear(rows, rhs)
    if solved is None:
        return None
    particular, basis = solved
    if not basis:
        if any(x.denominator != 1 for x in particular):
            return None
        u = tuple(int(x) for x in particular)
        return u if p.shift(u) == q else None
    w = _SHIFT_SEARCH_WINDOW
    free_axes = len(basis)
    for coeffs in itertools.product(range(-w, w + 1), repeat=free_axes):
        cand = list(particular)
        for c, vec in zip(coeffs, basis):
            cand = [x + c * y for x, y in zip(cand, vec)]
        if any(x.denominator != 1 for x in cand):
            continue
        u = tuple(int(x) for x in cand)
        if max(abs(x) for x in u) <= w and p.shift(u) == q:
            return u
    return None


def univariate_shift_between(p: UniPoly, q: UniPoly) -> Optional[int]:
    """Integer s with p(t + s) = q(t), or None.  Arguments normalized."""
    if p == q:
        return 0
    d = p.degree()
    if d != q.degree() or d == 0:
        return None
    if p.leading_coeff() != q.leading_coeff():
        return None
    # subleading coefficient shifts by d * lc * s
    diff = q.coeffs[d - 1] - p.coeffs[d - 1]
    s = diff / (d * p.leading_coeff())
    if s.denominator != 1:
        return None
    s = int(s)
    return s if p.shift_arg(s) == q else None
