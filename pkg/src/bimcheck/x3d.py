"""X3D scene emission for query results.

Each convex cell becomes a Transform holding a Box sized to the cell's
extents; cells that are not axis-aligned boxes render as their bounding box
at transparency >= 0.5 with a comment flagging the approximation.
Unbounded cells must be clipped to an envelope first.  Output is
deterministic and byte-stable.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .linear import decimal_text
from .shapes import (
    ConvexCell,
    Point,
    Shape,
    bounding_box,
    box,
    intersect,
    is_empty,
)


@dataclass(frozen=True)
class SceneGroup:
    """A named, colored family of shapes destined for one appearance."""

    name: str
    color: tuple[float, float, float]
    transparency: float = 0.0
    shapes: tuple[Shape, ...] = ()

    def __post_init__(self) -> None:
        if not all(0 <= c <= 1 for c in self.color):
            raise ValueError("color components must lie in [0, 1]")
        if not 0 <= self.transparency <= 1:
            raise ValueError("transparency must lie in [0, 1]")


def clip_to_envelope(s: Shape, low: Point, high: Point) -> Shape:
    """Intersect a shape with a bounding envelope box."""
    envelope = box(low, high)
    if is_empty(envelope):
        raise ValueError("envelope must be a nonempty box")
    return intersect(s, envelope)


def default_envelope(
    groups: Sequence[SceneGroup], inflate: Fraction = Fraction(1, 10)
) -> tuple[Point, Point]:
    """Joint bounding box of all fully bounded shapes, inflated per side."""
    lows: dict[str, Fraction] = {}
    highs: dict[str, Fraction] = {}
    dims: tuple[str, ...] | None = None
    for g in groups:
        for s in g.shapes:
            if is_empty(s):
                continue
            bb = bounding_box(s)
            if bb.unbounded_dims:
                continue
            dims = dims or bb.dims
            for d in bb.dims:
                lows[d] = min(lows.get(d, bb.lows[d]), bb.lows[d])
                highs[d] = max(highs.get(d, bb.highs[d]), bb.highs[d])
    if dims is None:
        raise ValueError("no bounded shape to derive an envelope from")
    margin = {d: (highs[d] - lows[d]) * inflate for d in dims}
    low = Point(dims, tuple(lows[d] - margin[d] for d in dims))
    high = Point(dims, tuple(highs[d] + margin[d] for d in dims))
    return low, high


def clip_groups(
    groups: Sequence[SceneGroup],
    envelope: tuple[Point, Point] | None = None,
) -> list[SceneGroup]:
    """Clip every shape; groups left empty after clipping are dropped."""
    if envelope is None:
        envelope = default_envelope(groups)
    low, high = envelope
    clipped = []
    for g in groups:
        shapes = tuple(
            clip_to_envelope(s, low, high) for s in g.shapes
        )
        shapes = tuple(s for s in shapes if not is_empty(s))
        if shapes:
            clipped.append(SceneGroup(g.name, g.color, g.transparency, shapes))
    return clipped


_SLAB_THICKNESS = Fraction(1, 100)


def _cell_extents(cell: ConvexCell) -> tuple[list[str], list[str], bool]:
    """Center and size strings for a cell, plus an all-exact flag."""
    centers, sizes, exact = [], [], True
    for d in cell.dims:
        lo, hi = cell.interval(d)
        if lo is None or hi is None:
            raise ValueError(f"unbounded cell in dimension {d}; clip to an envelope first")
        c_text, c_exact = decimal_text((lo.value + hi.value) / 2)
        s_text, s_exact = decimal_text(hi.value - lo.value)
        centers.append(c_text)
        sizes.append(s_text)
        exact = exact and c_exact and s_exact
    if len(cell.dims) == 2:
        slab_center, _ = decimal_text(_SLAB_THICKNESS / 2)
        slab_size, _ = decimal_text(_SLAB_THICKNESS)
        centers.append(slab_center)
        sizes.append(slab_size)
    return centers, sizes, exact


def _color_text(color: tuple[float, float, float]) -> str:
    return " ".join(f"{c:g}" for c in color)


def emit_scene(groups: Sequence[SceneGroup]) -> str:
    """Serialize groups to X3D text: one Transform/Box per cell."""
    root = ET.Element("X3D", {"profile": "Interchange", "version": "3.3"})
    scene = ET.SubElement(root, "Scene")
    for g in groups:
        for s in g.shapes:
            for cell in s.cells:
                centers, sizes, exact = _cell_extents(cell)
                transparency = g.transparency
                is_box_cell = cell.is_box()
                transform = ET.SubElement(
                    scene, "Transform", {"translation": " ".join(centers)}
                )
                if not is_box_cell:
                    transparency = max(transparency, 0.5)
                    transform.append(
                        ET.Comment(f" non-box cell of group {g.name}: bounding box shown ")
                    )
                if not exact:
                    transform.append(
                        ET.Comment(" lossy print: some coordinate rounded to 12 digits ")
                    )
                shape_el = ET.SubElement(transform, "Shape")
                appearance = ET.SubElement(shape_el, "Appearance")
                ET.SubElement(
                    appearance,
                    "Material",
                    {
                        "diffuseColor": _color_text(g.color),
                        "transparency": f"{transparency:g}",
                    },
                )
                ET.SubElement(shape_el, "Box", {"size": " ".join(sizes)})
    ET.indent(root, space="  ")
    body = ET.tostring(root, encoding="unicode")
    return "<?xml version='1.0' encoding='UTF-8'?>\n" + body + "\n"
