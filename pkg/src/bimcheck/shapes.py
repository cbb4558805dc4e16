"""Shapes as finite unions of convex cells, with exact boolean operations.

A convex cell is a feasible conjunction of halfspaces; a shape is a list of
cells whose point set is the disjunction.  Union appends, intersection
conjoins pairwise, complement of a cell is a disjoint "staircase"
decomposition, subtraction chains intersections with staircase complements.
Boxes are half-open (lower faces in, upper faces out) so abutting boxes
tile without overlap.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .linear import (
    Bound,
    Halfspace,
    LinSystem,
    _fold_single_var_bounds,
    _interval_nonempty,
    conjoin,
    format_rational,
    halfspace,
    interval_of,
    is_feasible,
    negate,
    simplify,
)

AXES = ("X", "Y", "Z")


class DimensionMismatch(ValueError):
    pass


def _check_dims(a: tuple[str, ...], b: tuple[str, ...]) -> None:
    if a != b:
        raise DimensionMismatch(f"dimension mismatch: {a} vs {b}")


@dataclass(frozen=True)
class Point:
    """A point with exact rational coordinates over named dimensions."""

    dims: tuple[str, ...]
    values: tuple[Fraction, ...]

    def __getitem__(self, dim: str) -> Fraction:
        return self.values[self.dims.index(dim)]

    def as_dict(self) -> dict[str, Fraction]:
        return dict(zip(self.dims, self.values))

    def __str__(self) -> str:
        return "(" + ", ".join(format_rational(v) for v in self.values) + ")"


def point(*values: object, dims: Sequence[str] | None = None) -> Point:
    """Convenience constructor: point(1, 2) is 2D, point(1, 2, 3) is 3D."""
    if dims is None:
        if len(values) > len(AXES):
            raise ValueError("give explicit dims for more than 3 coordinates")
        dims = AXES[: len(values)]
    if len(dims) != len(values):
        raise DimensionMismatch(f"{len(dims)} dims for {len(values)} values")
    return Point(tuple(dims), tuple(Fraction(str(v)) if isinstance(v, float) else Fraction(v) for v in values))


@dataclass(frozen=True)
class ConvexCell:
    """A feasible conjunction of halfspaces.

    Construction rejects infeasible systems; axis-aligned cells cache their
    per-dimension intervals for fast membership tests.
    """

    system: LinSystem

    def __post_init__(self) -> None:
        box_bounds = None
        if all(len(h.coeffs) == 1 for h in self.system.halfspaces):
            intervals, _ = _fold_single_var_bounds(self.system.halfspaces)
            if not all(_interval_nonempty(lo, hi) for lo, hi in intervals.values()):
                raise ValueError("infeasible convex cell")
            box_bounds = intervals
        elif not is_feasible(self.system):
            raise ValueError("infeasible convex cell")
        object.__setattr__(self, "_box_bounds", box_bounds)

    @property
    def dims(self) -> tuple[str, ...]:
        return self.system.dims

    def is_box(self) -> bool:
        return self._box_bounds is not None  # type: ignore[attr-defined]

    def contains(self, p: Point) -> bool:
        bounds = self._box_bounds  # type: ignore[attr-defined]
        if bounds is not None:
            for d, (lo, hi) in bounds.items():
                v = p[d]
                if lo is not None and (v < lo.value or (lo.open and v == lo.value)):
                    return False
                if hi is not None and (v > hi.value or (hi.open and v == hi.value)):
                    return False
            return True
        values = p.as_dict()
        return all(h.evaluate(values) for h in self.system.halfspaces)

    def interval(self, dim: str) -> tuple[Bound | None, Bound | None]:
        bounds = self._box_bounds  # type: ignore[attr-defined]
        if bounds is not None:
            return bounds.get(dim, (None, None))
        return interval_of(self.system, dim)


@dataclass(frozen=True)
class Shape:
    """A finite union of convex cells; the empty cell list is the empty shape."""

    cells: tuple[ConvexCell, ...]
    dims: tuple[str, ...]

    def __post_init__(self) -> None:
        for c in self.cells:
            _check_dims(c.dims, self.dims)

    @staticmethod
    def empty(dims: Sequence[str]) -> Shape:
        return Shape((), tuple(dims))

    @staticmethod
    def universe(dims: Sequence[str]) -> Shape:
        return Shape((ConvexCell(LinSystem((), tuple(dims))),), tuple(dims))


def _cell_from(system: LinSystem, prune: bool = True) -> ConvexCell | None:
    """A cell for the system, or None when infeasible."""
    if not is_feasible(system):
        return None
    return ConvexCell(simplify(system) if prune else system)


def box(p_low: Point, p_high: Point) -> Shape:
    """Half-open axis box: lower faces included, upper faces excluded.

    Returns the empty shape when any side has nonpositive extent.
    Constraint order is low,high per dimension in declared order.
    """
    _check_dims(p_low.dims, p_high.dims)
    dims = p_low.dims
    halfspaces: list[Halfspace] = []
    for d in dims:
        lo, hi = p_low[d], p_high[d]
        if lo >= hi:
            return Shape.empty(dims)
        halfspaces.append(halfspace({d: 1}, ">=", lo))
        halfspaces.append(halfspace({d: 1}, "<", hi))
    return Shape((ConvexCell(LinSystem(tuple(halfspaces), dims)),), dims)


def poly_extrude(vertices: Sequence[Point], h: object) -> Shape:
    """Extrude a convex polygon (vertices clockwise) into a single 3D cell.

    Vertices are 3D points; the base height is the first vertex's Z and the
    cell spans Z in [base, base+h).  Each directed edge, including the
    closing last-to-first edge, contributes the boundary-inclusive halfspace
    (Xb-Xa)*(Y-Ya) - (X-Xa)*(Yb-Ya) <= 0.
    """
    height = Fraction(str(h)) if isinstance(h, float) else Fraction(h)
    if len(vertices) < 3:
        raise ValueError("polygon needs at least 3 vertices")
    if height <= 0:
        raise ValueError("extrusion height must be positive")
    dims = ("X", "Y", "Z")
    for v in vertices:
        _check_dims(v.dims, dims)
    halfspaces: list[Halfspace] = []
    rotated = list(vertices[1:]) + [vertices[0]]
    for a, b in zip(vertices, rotated):
        xa, ya = a["X"], a["Y"]
        xb, yb = b["X"], b["Y"]
        cx = -(yb - ya)
        cy = xb - xa
        if cx == 0 and cy == 0:
            raise ValueError("repeated consecutive vertices")
        halfspaces.append(halfspace({"X": cx, "Y": cy}, "<=", cx * xa + cy * ya))
    za = vertices[0]["Z"]
    halfspaces.append(halfspace({"Z": 1}, ">=", za))
    halfspaces.append(halfspace({"Z": 1}, "<", za + height))
    system = LinSystem(tuple(halfspaces), dims)
    if not is_feasible(system):
        raise ValueError("extruded polygon is empty; are the vertices clockwise?")
    return Shape((ConvexCell(system),), dims)


def union(a: Shape, b: Shape) -> Shape:
    _check_dims(a.dims, b.dims)
    return Shape(a.cells + b.cells, a.dims)


def intersect(a: Shape, b: Shape) -> Shape:
    """Union of pairwise cell intersections, infeasible pairs dropped."""
    _check_dims(a.dims, b.dims)
    cells = []
    for ca in a.cells:
        for cb in b.cells:
            cell = _cell_from(conjoin(ca.system, cb.system))
            if cell is not None:
                cells.append(cell)
    return Shape(tuple(cells), a.dims)


def complement_cell(c: ConvexCell) -> Shape:
    """Disjoint staircase complement of one cell.

    With halfspaces h1..hk in stored order, piece i is
    {h1, .., h(i-1), not(hi)}; the pieces are pairwise disjoint and cover
    exactly the points outside the cell.  A constraint-free cell (the whole
    space) has the empty complement.
    """
    cells = []
    prefix: list[Halfspace] = []
    for h in c.system.halfspaces:
        piece = LinSystem(tuple(prefix) + (negate(h),), c.dims)
        if is_feasible(piece):
            cells.append(ConvexCell(piece))
        prefix.append(h)
    return Shape(tuple(cells), c.dims)


def complement(s: Shape) -> Shape:
    """Complement of a whole shape: intersection of its cells' complements."""
    result = Shape.universe(s.dims)
    for c in s.cells:
        result = intersect(result, complement_cell(c))
    return result


def subtract(a: Shape, b: Shape) -> Shape:
    """All points of a not in b.

    Each cell of a is narrowed through the cells of b in turn: cells that do
    not overlap the current piece are skipped, otherwise the piece is
    intersected with the staircase complement of the b-cell.  Pieces arising
    from one source cell stay pairwise disjoint.
    """
    _check_dims(a.dims, b.dims)
    out: list[ConvexCell] = []
    staircases = [complement_cell(cb) for cb in b.cells]
    for ca in a.cells:
        pieces = [ca]
        for cb, stair in zip(b.cells, staircases):
            next_pieces: list[ConvexCell] = []
            for piece in pieces:
                if not is_feasible(conjoin(piece.system, cb.system)):
                    next_pieces.append(piece)
                    continue
                for comp in stair.cells:
                    cell = _cell_from(conjoin(piece.system, comp.system))
                    if cell is not None:
                        next_pieces.append(cell)
            pieces = next_pieces
        out.extend(pieces)
    return Shape(tuple(out), a.dims)


def is_empty(a: Shape) -> bool:
    return not a.cells


def contains_point(a: Shape, p: Point) -> bool:
    _check_dims(a.dims, p.dims)
    return any(c.contains(p) for c in a.cells)


def equivalent(a: Shape, b: Shape) -> bool:
    """Exact point-set equality via mutual subtraction emptiness."""
    return is_empty(subtract(a, b)) and is_empty(subtract(b, a))


@dataclass(frozen=True)
class BoundingBox:
    """Per-dimension extents of a shape; None marks an unbounded side."""

    dims: tuple[str, ...]
    lows: dict[str, Fraction | None]
    highs: dict[str, Fraction | None]

    @property
    def unbounded_dims(self) -> tuple[str, ...]:
        return tuple(
            d for d in self.dims if self.lows[d] is None or self.highs[d] is None
        )

    def low_point(self) -> Point | None:
        if any(self.lows[d] is None for d in self.dims):
            return None
        return Point(self.dims, tuple(self.lows[d] for d in self.dims))

    def high_point(self) -> Point | None:
        if any(self.highs[d] is None for d in self.dims):
            return None
        return Point(self.dims, tuple(self.highs[d] for d in self.dims))


def bounding_box(a: Shape) -> BoundingBox:
    """Componentwise min of lower and max of upper bounds across cells."""
    if is_empty(a):
        raise ValueError("bounding_box of empty shape")
    lows: dict[str, Fraction | None] = {}
    highs: dict[str, Fraction | None] = {}
    for d in a.dims:
        lo_vals: list[Fraction] = []
        hi_vals: list[Fraction] = []
        lo_unbounded = hi_unbounded = False
        for c in a.cells:
            lo, hi = c.interval(d)
            if lo is None:
                lo_unbounded = True
            else:
                lo_vals.append(lo.value)
            if hi is None:
                hi_unbounded = True
            else:
                hi_vals.append(hi.value)
        lows[d] = None if lo_unbounded else min(lo_vals)
        highs[d] = None if hi_unbounded else max(hi_vals)
    return BoundingBox(a.dims, lows, highs)


def sample_grid(a: Shape, low: Point, high: Point, step: object) -> set[Point]:
    """Grid points of the region that belong to the shape.

    Points start at low + step/7 (the offset keeps samples off constraint
    boundaries built from 7-free denominators) and advance by step while
    strictly below the region's high corner.
    """
    _check_dims(a.dims, low.dims)
    _check_dims(low.dims, high.dims)
    h = Fraction(str(step)) if isinstance(step, float) else Fraction(step)
    if h <= 0:
        raise ValueError("step must be positive")
    offset = h / 7
    axes_values: list[list[Fraction]] = []
    for d in a.dims:
        vals = []
        v = low[d] + offset
        while v < high[d]:
            vals.append(v)
            v += h
        axes_values.append(vals)
    hits = set()
    for combo in itertools.product(*axes_values):
        p = Point(a.dims, combo)
        if contains_point(a, p):
            hits.add(p)
    return hits


def _format_interval(lo: Bound | None, hi: Bound | None) -> str:
    left = "(-inf" if lo is None else ("(" if lo.open else "[") + format_rational(lo.value)
    right = "inf)" if hi is None else format_rational(hi.value) + (")" if hi.open else "]")
    return f"{left},{right}"


def dump(a: Shape) -> str:
    """One line per cell with per-dimension projection intervals.

    Example: `convex{X in [1,4), Y in [2,5)}`.
    """
    lines = []
    for c in a.cells:
        parts = []
        for d in a.dims:
            lo, hi = c.interval(d)
            parts.append(f"{d} in {_format_interval(lo, hi)}")
        lines.append("convex{" + ", ".join(parts) + "}")
    return "\n".join(lines)


def cell_bounds(c: ConvexCell) -> dict[str, tuple[Bound | None, Bound | None]]:
    """Projection interval per dimension (exact for boxes and general cells)."""
    return {d: c.interval(d) for d in c.dims}


def iter_cells(shapes: Iterable[Shape]) -> Iterable[ConvexCell]:
    for s in shapes:
        yield from s.cells
