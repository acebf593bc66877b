"""Ground-truth evaluation of a term from its recurrences.

Values are propagated from the seed by breadth-first search over unit
steps.  A forward step from y applies f(y + e_i) = f(y) * A_i(y) / B_i(y)
and needs B_i(y) != 0; a backward step to y applies
f(y) = f(y + e_i) * B_i(y) / A_i(y) and needs A_i(y) != 0.  Either way the
recurrence is evaluated at y, which must not lie on a declared exception
hyperplane.  Zero values propagate (a vanishing numerator produces an
honest zero); a step whose divisor vanishes is simply not taken, so a
point is ``blocked`` only when every path inside the window is.

The same flood supplies the comparison oracle for piecewise closed forms
and the search for boxes on which the term is nonzero.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import DimensionError, PreconditionError
from .geometry import LatticeBox
from .poly import Point
from .termratio import TermSpec

# ---------------------------------------------------------------------------
# propagation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PathStep:
    """One replayable propagation step: the recurrence for ``axis`` was
    evaluated at ``at`` and contributed ``multiplier`` to the value."""

    at: Point
    axis: int
    forward: bool
    multiplier: Fraction


@dataclass(frozen=True)
class PropagationResult:
    value: Optional[Fraction]
    reason: Optional[str] = None
    path: tuple[PathStep, ...] = ()

    @property
    def ok(self) -> bool:
        return self.value is not None


def _window_bounds(
    points: Sequence[Point], margin: int
) -> tuple[Point, Point]:
    lo = tuple(min(p[i] for p in points) - margin for i in range(len(points[0])))
    hi = tuple(max(p[i] for p in points) + margin for i in range(len(points[0])))
    return lo, hi


class _Flood:
    """Deterministic BFS flood of propagated values from the seed.

    Steps are explored in lexicographic order of the step vector, so the
    discovered path to each point (and therefore its certificate) is
    deterministic; the value itself is path independent for compatible
    specs wherever it is defined at all.
    """

    def __init__(self, spec: TermSpec, lo: Point, hi: Point, step_order=None):
        if spec.seed is None:
            raise PreconditionError("propagation requires a seed value")
        self.spec = spec
        self.lo = lo
        self.hi = hi
        k = spec.arity
        moves = []
        for i in range(k):
            e = tuple(1 if j == i else 0 for j in range(k))
            em = tuple(-1 if j == i else 0 for j in range(k))
            moves.append((e, i, True))
            moves.append((em, i, False))
        moves.sort(key=lambda m: m[0] if step_order is None else step_order(m[0]))
        self.moves = moves
        self.values: dict[Point, Fraction] = {}
        self.steps: dict[Point, Optional[tuple[Point, PathStep]]] = {}
        self._run()

    def _in_window(self, z: Point) -> bool:
        return all(a <= x <= b for x, a, b in zip(z, self.lo, self.hi))

    def _step(self, node: Point, move) -> Optional[tuple[Point, PathStep]]:
        offset, axis, forward = move
        target = tuple(a + b for a, b in zip(node, offset))
        gen = self.spec.generators[axis]
        at = node if forward else target
        if self.spec.exceptions.covers(at):
            return None
        a_val = gen.num.evaluate(at)
        b_val = gen.den.evaluate(at)
        if forward:
            if b_val == 0:
                return None
            mult = a_val / b_val
        else:
            if a_val == 0:
                return None
            mult = b_val / a_val
        return target, PathStep(at, axis, forward, mult)

    def _run(self) -> None:
        seed_point, seed_value = self.spec.seed
        if not self._in_window(seed_point):
            return
        self.values[seed_point] = Fraction(seed_value)
        self.steps[seed_point] = None
        frontier = [seed_point]
        while frontier:
            nxt = []
            for node in frontier:
                for move in self.moves:
                    stepped = self._step(node, move)
                    if stepped is None:
                        continue
                    target, step = stepped
                    if target in self.values or not self._in_window(target):
                        continue
                    self.values[target] = self.values[node] * step.multiplier
                    self.steps[target] = (node, step)
                    nxt.append(target)
            frontier = nxt

    def certificate(self, z: Point) -> tuple[PathStep, ...]:
        out = []
        while True:
            prev = self.steps[z]
            if prev is None:
                break
            node, step = prev
            out.append(step)
            z = node
        out.reverse()
        return tuple(out)


def propagate(
    spec: TermSpec,
    frm: tuple[Sequence[int], Fraction],
    to: Sequence[int],
    margin: Optional[int] = None,
    step_order=None,
) -> PropagationResult:
    """Value of the term at ``to`` propagated from the given point/value
    pair, searching within the bounding box of the two points inflated by
    ``margin`` (default 2 (k+1))."""
    point, value = (tuple(int(x) for x in frm[0]), Fraction(frm[1]))
    to = tuple(int(x) for x in to)
    if len(point) != spec.arity or len(to) != spec.arity:
        raise DimensionError("point arity mismatch")
    working = spec.with_seed(point, value)
    if margin is None:
        margin = 2 * (spec.arity + 1)
    lo, hi = _window_bounds([point, to], margin)
    flood = _Flood(working, lo, hi, step_order=step_order)
    if to in flood.values:
        return PropagationResult(flood.values[to], path=flood.certificate(to))
    return PropagationResult(None, reason="blocked")


def propagate_window(spec: TermSpec, window: LatticeBox) -> dict[Point, Fraction]:
    """All propagated values inside the window (plus a margin so paths may
    route around zero walls near the boundary)."""
    if spec.seed is None:
        raise PreconditionError("propagation requires a seed value")
    margin = 2 * (spec.arity + 1)
    seed_point = spec.seed[0]
    corner_hi = tuple(c + window.size for c in window.corner)
    lo, hi = _window_bounds([window.corner, corner_hi, seed_point], margin)
    flood = _Flood(spec, lo, hi)
    return {
        z: v
        for z, v in flood.values.items()
        if window.contains(z)
    }


# ---------------------------------------------------------------------------
# grid comparison
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Mismatch:
    z: Point
    closed: Fraction
    oracle: Fraction


@dataclass(frozen=True)
class GridReport:
    checked: int
    equal: int
    on_h: int
    d_zero: int
    blocked: int
    value_unknown: int
    mismatches: tuple[Mismatch, ...]

    @property
    def clean(self) -> bool:
        return not self.mismatches


def grid_compare(ps, spec: TermSpec, window: LatticeBox) -> GridReport:
    """Compare the piecewise closed form against propagated values at every
    point of the window; exact equality where both are defined."""
    from .structure import closed_form_eval

    if spec.seed is None:
        raise PreconditionError("grid comparison requires a seed value")
    table = propagate_window(spec, window)
    checked = equal = on_h = d_zero = blocked = value_unknown = 0
    mismatches = []
    for z in window.points():
        outcome = closed_form_eval(ps, z)
        if outcome.status == "no-piece":
            on_h += 1
            continue
        if outcome.status == "d-zero":
            d_zero += 1
            continue
        if outcome.status == "value-unknown":
            value_unknown += 1
            continue
        oracle_value = table.get(z)
        if oracle_value is None:
            blocked += 1
            continue
        checked += 1
        if outcome.value == oracle_value:
            equal += 1
        else:
            mismatches.append(Mismatch(z, outcome.value, oracle_value))
    return GridReport(
        checked, equal, on_h, d_zero, blocked, value_unknown, tuple(mismatches)
    )


# ---------------------------------------------------------------------------
# nonzero boxes
# ---------------------------------------------------------------------------


def nonzero_box_search(
    spec: TermSpec, size: int, window: LatticeBox
) -> Optional[LatticeBox]:
    """A box of the given size inside the window on which every propagated
    value is defined and nonzero; None when there is none."""
    table = propagate_window(spec, window)
    k = spec.arity
    span = window.size - size
    if span < 0:
        return None
    for offset in itertools.product(range(span + 1), repeat=k):
        corner = tuple(c + o for c, o in zip(window.corner, offset))
        box = LatticeBox(corner, size)
        if all(table.get(p, Fraction(0)) != 0 for p in box.points()):
            return box
    return None
