"""Building-object facts: ingestion, selection, slicing, and coverage.

Objects arrive as `object(Label, Id, point(..), point(..), Extra).` facts
holding axis-aligned bounding boxes; the same file may carry entity facts
(`room(r1).`, `size(r1, 25).`) consumed by the vague reasoner.  Spatial
queries build half-open box shapes on demand.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .facts import FactSyntaxError, Term, parse_program, term_text
from .linear import Halfspace, LinSystem, conjoin, is_feasible
from .shapes import (
    ConvexCell,
    Point,
    Shape,
    box,
    dump,
    intersect,
    is_empty,
    subtract,
)
from .vague import FactSet

SPACE_DIMS = ("X", "Y", "Z")
CORNER_DIMS = ("Xa", "Ya", "Za", "Xb", "Yb", "Zb")


@dataclass(frozen=True)
class BimObject:
    """One ingested object: IFC label, id, box corners, and a tag or centroid."""

    ifc_label: str
    id: str
    p_low: Point
    p_high: Point
    extra: Point | str

    @property
    def tag(self) -> str | None:
        return self.extra if isinstance(self.extra, str) else None

    @property
    def centroid(self) -> Point | None:
        return self.extra if isinstance(self.extra, Point) else None

    def shape(self) -> Shape:
        return box(self.p_low, self.p_high)

    def extent(self, dim: str) -> Fraction:
        return self.p_high[dim] - self.p_low[dim]

    def corner_values(self) -> dict[str, Fraction]:
        values = {f"{d}a": self.p_low[d] for d in SPACE_DIMS}
        values.update({f"{d}b": self.p_high[d] for d in SPACE_DIMS})
        return values

    def fact_line(self) -> str:
        extra = self.extra if isinstance(self.extra, str) else (
            "point(" + ", ".join(
                term_text(self.extra[d]) for d in SPACE_DIMS
            ) + ")"
        )
        low = ", ".join(term_text(self.p_low[d]) for d in SPACE_DIMS)
        high = ", ".join(term_text(self.p_high[d]) for d in SPACE_DIMS)
        return (
            f"object({self.ifc_label}, {self.id}, "
            f"point({low}), point({high}), {extra})."
        )


@dataclass
class ModelStore:
    """Objects plus any entity facts found alongside them."""

    objects: list[BimObject] = field(default_factory=list)
    entities: FactSet = field(default_factory=FactSet)
    warnings: list[str] = field(default_factory=list)
    by_label: dict[str, list[BimObject]] = field(default_factory=dict, repr=False)
    by_tag: dict[str, list[BimObject]] = field(default_factory=dict, repr=False)
    _by_id: dict[str, BimObject] = field(default_factory=dict, repr=False)

    def add(self, obj: BimObject, line: int = 0) -> None:
        if obj.id in self._by_id:
            raise FactSyntaxError(f"duplicate object id {obj.id!r}", line)
        self.objects.append(obj)
        self._by_id[obj.id] = obj
        self.by_label.setdefault(obj.ifc_label, []).append(obj)
        if obj.tag is not None:
            self.by_tag.setdefault(obj.tag, []).append(obj)

    def get(self, object_id: str) -> BimObject:
        return self._by_id[object_id]

    def has(self, object_id: str) -> bool:
        return object_id in self._by_id


def _point_from(term: object, line: int) -> Point:
    if (
        isinstance(term, Term)
        and term.functor == "point"
        and len(term.args) == 3
        and all(isinstance(a, Fraction) for a in term.args)
    ):
        return Point(SPACE_DIMS, tuple(term.args))
    raise FactSyntaxError("expected point(x, y, z) with numeric coordinates", line)


def _atom_name(arg: object, line: int, what: str) -> str:
    if isinstance(arg, Term) and not arg.args:
        return arg.functor
    raise FactSyntaxError(f"expected an atom for {what}", line)


def load_facts(text: str) -> ModelStore:
    """Parse a fact file; degenerate boxes are skipped with a warning.

    Syntax errors and duplicate ids raise with the offending line number.
    """
    store = ModelStore()
    entity_terms = []
    for t in parse_program(text):
        if t.functor == "object" and len(t.args) == 5:
            label = _atom_name(t.args[0], t.line, "the IFC label")
            obj_id = _atom_name(t.args[1], t.line, "the object id")
            p_low = _point_from(t.args[2], t.line)
            p_high = _point_from(t.args[3], t.line)
            extra_arg = t.args[4]
            extra: Point | str
            if isinstance(extra_arg, Term) and extra_arg.functor == "point":
                extra = _point_from(extra_arg, t.line)
            else:
                extra = _atom_name(extra_arg, t.line, "the tag")
            if any(p_low[d] >= p_high[d] for d in SPACE_DIMS):
                store.warnings.append(
                    f"line {t.line}: degenerate box for {obj_id!r} skipped"
                )
                continue
            store.add(BimObject(label, obj_id, p_low, p_high, extra), t.line)
        elif len(t.args) == 1 and isinstance(t.args[0], Term) and not t.args[0].args:
            entity_terms.append(t)
        elif (
            len(t.args) == 2
            and isinstance(t.args[0], Term)
            and not t.args[0].args
            and isinstance(t.args[1], Fraction)
        ):
            entity_terms.append(t)
        else:
            raise FactSyntaxError(
                f"unexpected statement {t.functor}/{len(t.args)}", t.line
            )
    store.entities = FactSet.from_terms(entity_terms)
    return store


def select(
    store: ModelStore, label: str | None = None, tag: str | None = None
) -> list[BimObject]:
    """Objects matching all given filters, in file order."""
    if label is not None:
        pool = store.by_label.get(label, [])
        return [o for o in pool if tag is None or o.tag == tag]
    if tag is not None:
        return list(store.by_tag.get(tag, []))
    return list(store.objects)


def slice_store(
    store: ModelStore,
    constraints: Sequence[Halfspace] = (),
    corner: Sequence[Halfspace] = (),
) -> tuple[list[BimObject], Shape]:
    """Select objects meeting a constraint slice plus corner-coordinate filters.

    `constraints` range over X/Y/Z and carve a (possibly unbounded) region;
    an object is selected when its box overlaps the region.  `corner`
    constraints range over Xa..Zb and apply to the object's own corners.
    An infeasible constraint set selects nothing.
    """
    for h in corner:
        unknown = set(h.coeffs) - set(CORNER_DIMS)
        if unknown:
            raise ValueError(f"corner constraint on unknown attribute(s) {sorted(unknown)}")
    system = LinSystem(tuple(constraints), SPACE_DIMS)
    if constraints and not is_feasible(system):
        warnings.warn("infeasible constraint set; nothing selected", stacklevel=2)
        return [], Shape.empty(SPACE_DIMS)
    slice_shape = Shape((ConvexCell(system),), SPACE_DIMS)
    selected = []
    for o in store.objects:
        corners = o.corner_values()
        if not all(h.evaluate(corners) for h in corner):
            continue
        if not constraints or _overlaps_shape(o, slice_shape):
            selected.append(o)
    return selected, slice_shape


def _overlaps_shape(obj: BimObject, shape: Shape) -> bool:
    obj_cell = obj.shape().cells[0]
    return any(
        is_feasible(conjoin(obj_cell.system, c.system)) for c in shape.cells
    )


def boxes_overlap(a: BimObject, b: BimObject) -> bool:
    """Half-open box overlap: strict inequalities on both sides."""
    return all(
        a.p_low[d] < b.p_high[d] and b.p_low[d] < a.p_high[d] for d in SPACE_DIMS
    )


def inflated_box(obj: BimObject, epsilon: Fraction) -> Shape:
    low = Point(SPACE_DIMS, tuple(obj.p_low[d] - epsilon for d in SPACE_DIMS))
    high = Point(SPACE_DIMS, tuple(obj.p_high[d] + epsilon for d in SPACE_DIMS))
    return box(low, high)


def window_belongs(
    store: ModelStore,
    window_id: str,
    room_id: str,
    epsilon: Fraction = Fraction(0),
) -> bool:
    """True iff the window box meets the (optionally inflated) room box.

    With epsilon 0 a window abutting the room's open upper face does not
    belong; a small inflation makes abutment count.
    """
    window = store.get(window_id)
    room = store.get(room_id)
    room_shape = inflated_box(room, epsilon) if epsilon else room.shape()
    return not is_empty(intersect(window.shape(), room_shape))


@dataclass(frozen=True)
class CoverageEntry:
    id: str
    covered: bool
    leftover: Shape

    def tsv_line(self) -> str:
        flag = "true" if self.covered else "false"
        return f"{self.id}\t{flag}\t{len(self.leftover.cells)}"


@dataclass
class CoverageReport:
    entries: list[CoverageEntry]

    @property
    def n_targets(self) -> int:
        return len(self.entries)

    @property
    def n_uncovered(self) -> int:
        return sum(1 for e in self.entries if not e.covered)

    def to_tsv(self, dump_shapes: bool = False) -> str:
        lines = []
        for e in self.entries:
            lines.append(e.tsv_line())
            if dump_shapes and not e.covered:
                lines.extend(f"# {e.id} {line}" for line in dump(e.leftover).splitlines())
        return "\n".join(lines)


def coverage_entry(target: BimObject, covers: Sequence[BimObject]) -> CoverageEntry:
    """Exact leftover of one target after subtracting its overlapping covers."""
    relevant = [c for c in covers if boxes_overlap(target, c)]
    cover_shape = Shape(
        tuple(cell for c in relevant for cell in c.shape().cells), SPACE_DIMS
    )
    leftover = subtract(target.shape(), cover_shape)
    return CoverageEntry(target.id, is_empty(leftover), leftover)


def iter_coverage(
    targets: Iterable[BimObject], covers: Sequence[BimObject]
) -> Iterator[CoverageEntry]:
    """Streaming coverage: one entry per target, in input order."""
    for t in targets:
        yield coverage_entry(t, covers)


def coverage(
    targets: Sequence[BimObject], covers: Sequence[BimObject], jobs: int = 1
) -> CoverageReport:
    """Coverage of every target; `jobs` > 1 fans subtraction out to processes."""
    if jobs <= 1:
        return CoverageReport(list(iter_coverage(targets, covers)))
    from concurrent.futures import ProcessPoolExecutor

    relevant = [
        (t, [c for c in covers if boxes_overlap(t, c)]) for t in targets
    ]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        entries = list(pool.map(_entry_star, relevant, chunksize=8))
    return CoverageReport(entries)


def _entry_star(pair: tuple[BimObject, list[BimObject]]) -> CoverageEntry:
    return coverage_entry(pair[0], pair[1])
