"""Integer-lattice geometry: hyperplanes, half-spaces, polyhedral regions,
measure-zero covers, boxes, erosion, arrangements, and path connectivity.

Conventions:

  * A hyperplane is {z : v . z = n}; a half-space is {z : v . z > n}.
    Only strict inequalities are stored; ``>= n`` is encoded as ``> n - 1``.
  * A set of measure zero is a set covered by finitely many hyperplanes.
  * A box of size n at corner c is {z : c_i <= z_i <= c_i + n}.

All decisions (feasibility, emptiness of interiors, bounds) are made with
exact rational arithmetic via Fourier-Motzkin elimination; no floating
point is involved.  Integer witnesses inside rationally feasible regions
are found by rounding a rational sample and searching a small window; a
rationally feasible cell whose integer witness is not found is dropped with
a logged warning.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Optional, Sequence

from .errors import DimensionError, IntegrityError, PreconditionError
from .poly import MultiPoly, Point

log = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# basic value types
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Hyperplane:
    """{z : v . z = n} in canonical form: v primitive with positive first
    nonzero entry.  If canonicalization shows the plane carries no integer
    points (gcd of v does not divide n), it is stored with ``empty`` set."""

    v: Point
    n: int
    empty: bool = False

    @staticmethod
    def make(v: Sequence[int], n: int) -> "Hyperplane":
        v = tuple(int(x) for x in v)
        if all(x == 0 for x in v):
            raise PreconditionError("hyperplane normal must be nonzero")
        g = 0
        for x in v:
            g = math.gcd(g, abs(x))
        sign = 1
        for x in v:
            if x != 0:
                sign = 1 if x > 0 else -1
                break
        v = tuple(sign * x // g for x in v)
        n = sign * n
        if n % g != 0:
            return Hyperplane(v, n, empty=True)
        return Hyperplane(v, n // g)

    @property
    def arity(self) -> int:
        return len(self.v)

    def contains(self, z: Sequence[int]) -> bool:
        if self.empty:
            return False
        return sum(a * b for a, b in zip(self.v, z)) == self.n


@dataclass(frozen=True, order=True)
class HalfSpace:
    """{z : v . z > n} with v primitive (integer points are unchanged by
    dividing v by its gcd and flooring n)."""

    v: Point
    n: int

    @staticmethod
    def make(v: Sequence[int], n: int) -> "HalfSpace":
        v = tuple(int(x) for x in v)
        if all(x == 0 for x in v):
            raise PreconditionError("half-space normal must be nonzero")
        g = 0
        for x in v:
            g = math.gcd(g, abs(x))
        return HalfSpace(tuple(x // g for x in v), math.floor(Fraction(n, g)))

    @property
    def arity(self) -> int:
        return len(self.v)

    def contains(self, z: Sequence[int]) -> bool:
        return sum(a * b for a, b in zip(self.v, z)) > self.n

    def boundary(self) -> Hyperplane:
        return Hyperplane.make(self.v, self.n)

    def complement(self) -> "HalfSpace":
        """The other open side: {z : v . z < n} as a half-space."""
        return HalfSpace.make(tuple(-x for x in self.v), -self.n)


@dataclass(frozen=True)
class PolyhedralRegion:
    """Intersection of finitely many half-spaces; no constraints means all
    of Z^k."""

    arity: int
    halfspaces: tuple[HalfSpace, ...]

    @staticmethod
    def make(arity: int, halfspaces: Iterable[HalfSpace]) -> "PolyhedralRegion":
        hs = []
        seen = set()
        for h in halfspaces:
            if h.arity != arity:
                raise DimensionError("half-space arity mismatch")
            if h not in seen:
                seen.add(h)
                hs.append(h)
        return PolyhedralRegion(arity, tuple(sorted(hs)))

    @staticmethod
    def whole(arity: int) -> "PolyhedralRegion":
        return PolyhedralRegion(arity, ())

    def contains(self, z: Sequence[int]) -> bool:
        if len(z) != self.arity:
            raise DimensionError("point arity mismatch")
        return all(h.contains(z) for h in self.halfspaces)

    def intersect(self, *halfspaces: HalfSpace) -> "PolyhedralRegion":
        return PolyhedralRegion.make(self.arity, self.halfspaces + tuple(halfspaces))


@dataclass(frozen=True)
class MeasureZeroSet:
    """A finite list of hyperplanes, deduplicated under canonical form."""

    hyperplanes: tuple[Hyperplane, ...]

    @staticmethod
    def make(planes: Iterable[Hyperplane]) -> "MeasureZeroSet":
        return MeasureZeroSet(tuple(sorted(set(planes))))

    @staticmethod
    def empty() -> "MeasureZeroSet":
        return MeasureZeroSet(())

    def union(self, other: "MeasureZeroSet") -> "MeasureZeroSet":
        return MeasureZeroSet.make(self.hyperplanes + other.hyperplanes)

    def covers(self, z: Sequence[int]) -> bool:
        return any(h.contains(z) for h in self.hyperplanes)

    def __len__(self) -> int:
        return len(self.hyperplanes)


@dataclass(frozen=True)
class LatticeBox:
    """{z : corner_i <= z_i <= corner_i + size}."""

    corner: Point
    size: int

    def __post_init__(self):
        if self.size < 0:
            raise PreconditionError("box size must be nonnegative")

    @property
    def arity(self) -> int:
        return len(self.corner)

    def contains(self, z: Sequence[int]) -> bool:
        return all(c <= x <= c + self.size for c, x in zip(self.corner, z))

    def points(self) -> Iterator[Point]:
        ranges = [range(c, c + self.size + 1) for c in self.corner]
        return (tuple(p) for p in itertools.product(*ranges))


# ---------------------------------------------------------------------------
# exact linear feasibility (Fourier-Motzkin)
# ---------------------------------------------------------------------------

# A row is (coeffs, rhs, strict) meaning coeffs . x >= rhs, or > if strict.
Row = tuple[tuple[Fraction, ...], Fraction, bool]


def _row_canonical(row: Row) -> Row:
    coeffs, rhs, strict = row
    scale = next((abs(c) for c in coeffs if c != 0), None)
    if scale is None:
        return row
    return (tuple(c / scale for c in coeffs), rhs / scale, strict)


def _eliminate(rows: list[Row], var: int) -> Optional[list[Row]]:
    """Project away variable ``var``; returns None when a constant row is
    already infeasible."""
    zero, pos, neg = [], [], []
    for row in rows:
        c = row[0][var]
        if c == 0:
            zero.append(row)
        elif c > 0:
            pos.append(row)
        else:
            neg.append(row)
    out: dict[tuple, Row] = {}

    def add(row: Row) -> bool:
        coeffs, rhs, strict = _row_canonical(row)
        if all(c == 0 for c in coeffs):
            if rhs > 0 or (strict and rhs == 0):
                return False  # 0 >= positive: infeasible
            return True  # trivially true, drop
        key = (coeffs, strict)
        prev = out.get(key)
        if prev is None or rhs > prev[1]:
            out[key] = (coeffs, rhs, strict)
        return True

    for row in zero:
        if not add(row):
            return None
    for (pc, pr, ps) in pos:
        for (nc, nr, ns) in neg:
            a, b = pc[var], -nc[var]
            coeffs = tuple(b * x + a * y for x, y in zip(pc, nc))
            if not add((coeffs, b * pr + a * nr, ps or ns)):
                return None
    return list(out.values())


def _fm_project_all(rows: list[Row], n_vars: int) -> Optional[list[list[Row]]]:
    """Eliminate variables n_vars-1 .. 0; returns the stack of systems
    (systems[j] has variables 0..j-1), or None when infeasible."""
    systems = [None] * (n_vars + 1)
    systems[n_vars] = rows
    current = rows
    for j in range(n_vars - 1, -1, -1):
        current = _eliminate(current, j)
        if current is None:
            return None
        systems[j] = current
    for coeffs, rhs, strict in systems[0]:
        if rhs > 0 or (strict and rhs == 0):
            return None
    return systems  # type: ignore[return-value]


def fm_feasible(rows: list[Row], n_vars: int) -> bool:
    return _fm_project_all(rows, n_vars) is not None


def fm_sample(rows: list[Row], n_vars: int) -> Optional[tuple[Fraction, ...]]:
    """A rational solution of the system, preferring interior values."""
    systems = _fm_project_all(rows, n_vars)
    if systems is None:
        return None
    values: list[Fraction] = []
    for j in range(n_vars):
        lo: Optional[Fraction] = None
        hi: Optional[Fraction] = None
        for coeffs, rhs, strict in systems[j + 1]:
            c = coeffs[j]
            if c == 0:
                continue
            rest = rhs - sum(a * v for a, v in zip(coeffs[:j], values))
            bound = rest / c
            if c > 0:
                if lo is None or bound > lo:
                    lo = bound
            else:
                if hi is None or bound < hi:
                    hi = bound
        if lo is None and hi is None:
            values.append(Fraction(0))
        elif lo is None:
            values.append(hi - 1)
        elif hi is None:
            values.append(lo + 1)
        elif lo == hi:
            values.append(lo)
        else:
            values.append((lo + hi) / 2)
    return tuple(values)


def fm_sup(rows: list[Row], n_vars: int, objective: Sequence[Fraction]):
    """Supremum of objective . x over the solution set.

    Returns (value, attained) where value is None for unbounded; requires a
    feasible system."""
    ext_rows: list[Row] = [
        (tuple(coeffs) + (Fraction(0),), rhs, strict) for coeffs, rhs, strict in rows
    ]
    obj = tuple(Fraction(c) for c in objective)
    # y = objective . x encoded by two opposite inequalities
    ext_rows.append((obj + (Fraction(-1),), Fraction(0), False))
    ext_rows.append((tuple(-c for c in obj) + (Fraction(1),), Fraction(0), False))
    current = ext_rows
    for j in range(n_vars):
        current = _eliminate(current, j)
        if current is None:
            raise PreconditionError("fm_sup called on infeasible system")
    hi: Optional[Fraction] = None
    hi_strict = False
    for coeffs, rhs, strict in current:
        c = coeffs[n_vars]
        if c < 0:
            bound = rhs / c
            if hi is None or bound < hi or (bound == hi and strict):
                hi, hi_strict = bound, strict
    return hi, not hi_strict


def region_rows(r: PolyhedralRegion, strict: bool = False) -> list[Row]:
    """The region as rational rows.  With strict=False the integer-exact
    form v . z >= n + 1 is used; with strict=True the open form v . z > n."""
    rows: list[Row] = []
    for h in r.halfspaces:
        coeffs = tuple(Fraction(x) for x in h.v)
        if strict:
            rows.append((coeffs, Fraction(h.n), True))
        else:
            rows.append((coeffs, Fraction(h.n + 1), False))
    return rows


# ---------------------------------------------------------------------------
# integer sampling
# ---------------------------------------------------------------------------

_LOCAL_SEARCH_RADII = (1, 2, 4, 8)


def region_sample(r: PolyhedralRegion) -> Optional[Point]:
    """An integer point of the region, or None when none is found.

    Rationally infeasible regions definitely have no integer points.  A
    rationally feasible region is searched around a rational sample; the
    rare failure to locate an integer witness is logged and reported as
    None.
    """
    x = fm_sample(region_rows(r), r.arity)
    if x is None:
        return None
    center = tuple(int(math.floor(v)) for v in x)
    for radius in _LOCAL_SEARCH_RADII:
        best = None
        for offset in itertools.product(range(-radius, radius + 2), repeat=r.arity):
            z = tuple(c + o for c, o in zip(center, offset))
            if r.contains(z):
                dist = sum((Fraction(a) - b) ** 2 for a, b in zip(z, x))
                if best is None or dist < best[0]:
                    best = (dist, z)
        if best is not None:
            return best[1]
    log.warning("no integer point found near rational sample %s", x)
    return None


# ---------------------------------------------------------------------------
# erosion
# ---------------------------------------------------------------------------


def erode(r: PolyhedralRegion, n: int) -> tuple[PolyhedralRegion, MeasureZeroSet]:
    """Shrink r so every remaining point carries a box of size n inside r.

    The eroded region is the intersection of r - b over corners b of the
    size-n box at the origin; for a constraint {v . z > m} that tightens m
    by n * sum(max(0, -v_i)).  The removed set r \\ r' is covered by the
    returned hyperplanes {v . z = c}, m < c <= m + shift.
    """
    if n < 0:
        raise PreconditionError("erosion size must be nonnegative")
    new_hs = []
    cover: list[Hyperplane] = []
    for h in r.halfspaces:
        shift = n * sum(max(0, -x) for x in h.v)
        new_hs.append(HalfSpace.make(h.v, h.n + shift))
        for c in range(h.n + 1, h.n + shift + 1):
            cover.append(Hyperplane.make(h.v, c))
    return PolyhedralRegion.make(r.arity, new_hs), MeasureZeroSet.make(cover)


# ---------------------------------------------------------------------------
# measure-zero decision
# ---------------------------------------------------------------------------


def is_measure_zero(r: PolyhedralRegion) -> tuple[bool, Optional[MeasureZeroSet]]:
    """Decide whether the region can be covered by finitely many hyperplanes.

    A polyhedral region either contains arbitrarily large boxes or is a set
    of measure zero.  Eroding by a parameter t tightens each constraint by
    t * s_h with s_h >= 0; the region contains arbitrarily large boxes
    exactly when the joint system over (z, t) allows t to grow without
    bound, which is decided exactly by rational elimination.  When the
    region is measure zero a witness cover is produced from a constraint
    whose value is bounded above over the region.
    """
    base = region_rows(r)
    if not fm_feasible(base, r.arity):
        return True, MeasureZeroSet.empty()
    rows: list[Row] = []
    for h in r.halfspaces:
        s = sum(max(0, -x) for x in h.v)
        coeffs = tuple(Fraction(x) for x in h.v) + (Fraction(-s),)
        rows.append((coeffs, Fraction(h.n + 1), False))
    objective = (Fraction(0),) * r.arity + (Fraction(1),)
    sup_t, _ = fm_sup(rows, r.arity + 1, objective)
    if sup_t is None:
        return False, None
    # some constraint value is bounded above; cover its integer levels
    best: Optional[tuple[int, HalfSpace, int]] = None
    for h in r.halfspaces:
        hi, _ = fm_sup(base, r.arity, [Fraction(x) for x in h.v])
        if hi is None:
            continue
        count = math.floor(hi) - h.n
        if best is None or count < best[0]:
            best = (count, h, math.floor(hi))
    if best is None:
        raise IntegrityError("bounded erosion parameter but no bounded constraint")
    _, h, hi = best
    planes = [Hyperplane.make(h.v, c) for c in range(h.n + 1, hi + 1)]
    return True, MeasureZeroSet.make(planes)


def find_box(r: PolyhedralRegion, size: int) -> Optional[LatticeBox]:
    """A box of the requested size inside the region; available on demand
    whenever the region is not measure zero."""
    rows: list[Row] = []
    for h in r.halfspaces:
        s = sum(max(0, -x) for x in h.v)
        rows.append(
            (tuple(Fraction(x) for x in h.v), Fraction(h.n + 1 + (size + 1) * s), False)
        )
    x = fm_sample(rows, r.arity)
    if x is None:
        return None
    corner = tuple(int(math.ceil(v)) for v in x)
    box = LatticeBox(corner, size)
    if not all(r.contains(p) for p in box.points()):
        raise IntegrityError("computed box escapes the region")
    return box


# ---------------------------------------------------------------------------
# arrangements
# ---------------------------------------------------------------------------


def arrangement(planes: Iterable[Hyperplane], arity: int) -> list[PolyhedralRegion]:
    """The nonempty open cells cut out by the hyperplanes.

    Each cell is an intersection of strict sides, one per hyperplane; cells
    are pairwise disjoint, disjoint from every hyperplane, and together
    with the hyperplanes cover Z^k.  Cells with no integer point are not
    returned; a cell that is rationally feasible but yields no integer
    witness within the search window is dropped with a warning.
    """
    unique = sorted({p for p in planes if not p.empty})
    for p in unique:
        if p.arity != arity:
            raise DimensionError("hyperplane arity mismatch")
    cells: list[PolyhedralRegion] = []

    def recurse(index: int, chosen: list[HalfSpace]) -> None:
        region = PolyhedralRegion.make(arity, chosen)
        if not fm_feasible(region_rows(region), arity):
            return
        if index == len(unique):
            witness = region_sample(region)
            if witness is None:
                log.warning("dropping rationally feasible cell with no integer witness: %s", region)
                return
            cells.append(region)
            return
        h = unique[index]
        recurse(index + 1, chosen + [HalfSpace.make(h.v, h.n)])
        recurse(index + 1, chosen + [HalfSpace.make(tuple(-x for x in h.v), -h.n)])

    recurse(0, [])
    return cells


# ---------------------------------------------------------------------------
# path connectivity
# ---------------------------------------------------------------------------


def s_path(
    z1: Sequence[int],
    z2: Sequence[int],
    ambient: PolyhedralRegion,
    steps: Iterable[Point],
    margin: Optional[int] = None,
) -> Optional[list[Point]]:
    """A path z1 -> z2 with increments drawn from ``steps`` staying inside
    the ambient region, found by breadth-first search over a bounded
    window; None when no path exists within the window."""
    z1 = tuple(z1)
    z2 = tuple(z2)
    step_list = sorted(set(tuple(s) for s in steps))
    if not ambient.contains(z1) or not ambient.contains(z2):
        raise PreconditionError("path endpoints must lie in the ambient region")
    if z1 == z2:
        return [z1]
    k = ambient.arity
    if margin is None:
        biggest = max((max(abs(x) for x in s) for s in step_list), default=1)
        margin = biggest * (k + 1)
    lo = tuple(min(a, b) - margin for a, b in zip(z1, z2))
    hi = tuple(max(a, b) + margin for a, b in zip(z1, z2))

    def in_window(z: Point) -> bool:
        return all(a <= x <= b for x, a, b in zip(z, lo, hi))

    frontier = [z1]
    parents: dict[Point, Optional[Point]] = {z1: None}
    while frontier:
        nxt: list[Point] = []
        for node in frontier:
            for s in step_list:
                neighbor = tuple(a + b for a, b in zip(node, s))
                if neighbor in parents or not in_window(neighbor):
                    continue
                if not ambient.contains(neighbor):
                    continue
                parents[neighbor] = node
                if neighbor == z2:
                    path = [neighbor]
                    while path[-1] != z1:
                        path.append(parents[path[-1]])
                    path.reverse()
                    return path
                nxt.append(neighbor)
        frontier = nxt
    return [z1] if z1 == z2 else None


def hull_points(b0: LatticeBox, b1: LatticeBox) -> Callable[[Sequence[int]], bool]:
    """Membership test for the integer points of the rational convex hull of
    two size-1 boxes.

    The hull is the Minkowski sum of the unit cube with the segment from
    b0.corner to b1.corner, so membership reduces to a one-parameter
    rational interval intersection.
    """
    if b0.size != 1 or b1.size != 1:
        raise PreconditionError("hull_points requires boxes of size 1")
    if b0.arity != b1.arity:
        raise DimensionError("box arity mismatch")
    c0 = b0.corner
    w = tuple(b - a for a, b in zip(b0.corner, b1.corner))

    def member(z: Sequence[int]) -> bool:
        if len(z) != len(c0):
            raise DimensionError("point arity mismatch")
        lo, hi = Fraction(0), Fraction(1)
        for zi, ci, wi in zip(z, c0, w):
            a = Fraction(zi - ci - 1)
            b = Fraction(zi - ci)
            if wi == 0:
                if not a <= 0 <= b:
                    return False
            elif wi > 0:
                lo = max(lo, a / wi)
                hi = min(hi, b / wi)
            else:
                lo = max(lo, b / wi)
                hi = min(hi, a / wi)
        return lo <= hi

    return member


# ---------------------------------------------------------------------------
# characteristic-function certificates
# ---------------------------------------------------------------------------


def characteristic_certificates(r: PolyhedralRegion) -> list[MultiPoly]:
    """For each unit direction e_i, a nonzero product p_i of integer-rooted
    linear simple polynomials with

        p_i(z) * chi(z) == p_i(z) * chi(z + e_i)   for all z,

    where chi is the characteristic function of the region.  A unit step
    across the constraint {v . z > n} can only change membership when
    v . z lands on one of the at most |v_i| crossed levels, and each such
    level contributes the vanishing factor (v . z - level)."""
    out = []
    for i in range(r.arity):
        p = MultiPoly.constant(r.arity, 1)
        for h in r.halfspaces:
            vi = h.v[i]
            if vi > 0:
                levels = range(h.n - vi + 1, h.n + 1)
            elif vi < 0:
                levels = range(h.n + 1, h.n - vi + 1)
            else:
                continue
            for m in levels:
                p = p * MultiPoly.linear(h.v, -m)
        out.append(p)
    return out


def certificate_cover(r: PolyhedralRegion) -> MeasureZeroSet:
    """The hyperplanes where some characteristic certificate vanishes."""
    planes = []
    for h in r.halfspaces:
        pos = max((x for x in h.v if x > 0), default=0)
        neg = max((-x for x in h.v if x < 0), default=0)
        for m in range(h.n - pos + 1, h.n + neg + 1):
            planes.append(Hyperplane.make(h.v, m))
    return MeasureZeroSet.make(planes)
