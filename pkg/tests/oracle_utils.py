"""Independent oracles and random-shape generators for the geometry tests.

Everything here decides membership/feasibility from raw geometric data
(corner pairs, vertex lists, boundary intersections) without going through
the shape algebra or Fourier-Motzkin, so it can sit on the other side of a
dual-route check.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from bimcheck import (
    LinSystem,
    Point,
    Shape,
    box,
    complement_cell,
    contains_point,
    intersect,
    is_feasible,
    point,
    poly_extrude,
    subtract,
    union,
)
from bimcheck.linear import conjoin


# ---------------------------------------------------------------------------
# naive membership, straight from the defining data
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BoxSpec:
    low: tuple[Fraction, ...]
    high: tuple[Fraction, ...]

    def contains(self, coords: tuple[Fraction, ...]) -> bool:
        return all(
            lo <= v < hi for lo, v, hi in zip(self.low, coords, self.high)
        )

    def build(self) -> Shape:
        n = len(self.low)
        return box(point(*self.low), point(*self.high))

    def bbox(self) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
        return self.low, self.high


@dataclass(frozen=True)
class ExtrusionSpec:
    """Clockwise convex polygon vertices (x, y) at base z, extruded by h."""

    vertices: tuple[tuple[Fraction, Fraction], ...]
    base_z: Fraction
    height: Fraction

    def contains(self, coords: tuple[Fraction, ...]) -> bool:
        x, y, z = coords
        if not (self.base_z <= z < self.base_z + self.height):
            return False
        n = len(self.vertices)
        for i in range(n):
            xa, ya = self.vertices[i]
            xb, yb = self.vertices[(i + 1) % n]
            if (xb - xa) * (y - ya) - (x - xa) * (yb - ya) > 0:
                return False
        return True

    def build(self) -> Shape:
        pts = [point(x, y, self.base_z) for x, y in self.vertices]
        return poly_extrude(pts, self.height)

    def bbox(self) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
        xs = [v[0] for v in self.vertices]
        ys = [v[1] for v in self.vertices]
        return (
            (min(xs), min(ys), self.base_z),
            (max(xs), max(ys), self.base_z + self.height),
        )


# ---------------------------------------------------------------------------
# random generation with denominators <= 4
# ---------------------------------------------------------------------------

def q4(rng: random.Random, lo: float, hi: float) -> Fraction:
    return Fraction(rng.randint(int(lo * 4), int(hi * 4)), 4)


def random_box_spec(rng: random.Random, dims: int, anchor: tuple[Fraction, ...],
                    max_extent: float) -> BoxSpec:
    low = []
    high = []
    for i in range(dims):
        lo = anchor[i] + q4(rng, -1, 1)
        ext = q4(rng, 0.25, max_extent)
        low.append(lo)
        high.append(lo + ext)
    return BoxSpec(tuple(low), tuple(high))


def convex_hull_clockwise(
    points: list[tuple[Fraction, Fraction]]
) -> list[tuple[Fraction, Fraction]]:
    """Exact monotone-chain hull, strict turns only, returned clockwise."""
    pts = sorted(set(points))
    if len(pts) < 3:
        return []

    def cross(o, a, b) -> Fraction:
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower: list[tuple[Fraction, Fraction]] = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[tuple[Fraction, Fraction]] = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]  # counter-clockwise
    if len(hull) < 3:
        return []
    return list(reversed(hull))


def random_extrusion_spec(
    rng: random.Random, anchor: tuple[Fraction, ...], max_extent: float
) -> ExtrusionSpec | None:
    candidates = [
        (anchor[0] + q4(rng, 0, max_extent), anchor[1] + q4(rng, 0, max_extent))
        for _ in range(rng.randint(4, 7))
    ]
    hull = convex_hull_clockwise(candidates)
    if not hull:
        return None
    base_z = anchor[2] + q4(rng, -0.5, 0.5)
    height = q4(rng, 0.25, max_extent)
    return ExtrusionSpec(tuple(hull), base_z, height)


def random_spec(rng: random.Random, dims: int, anchor, max_extent: float):
    if dims == 3 and rng.random() < 0.4:
        spec = random_extrusion_spec(rng, anchor, max_extent)
        if spec is not None:
            return spec
    return random_box_spec(rng, dims, anchor, max_extent)


# ---------------------------------------------------------------------------
# boolean-correspondence runner
# ---------------------------------------------------------------------------

def grid_coords(lo: Fraction, hi: Fraction, step: Fraction) -> list[Fraction]:
    out = []
    v = lo + step / 7
    while v < hi:
        out.append(v)
        v += step
    return out


def cells_pairwise_disjoint(cells) -> bool:
    for a, b in itertools.combinations(cells, 2):
        if is_feasible(conjoin(a.system, b.system)):
            return False
    return True


def check_pair(spec_a, spec_b, step: Fraction) -> tuple[int, int, int]:
    """Compare composed shapes against naive input membership on a grid.

    Returns (points sampled, pointwise mismatches, disjointness violations).
    """
    a = spec_a.build()
    b = spec_b.build()
    dims = a.dims
    u = union(a, b)
    i = intersect(a, b)
    s = subtract(a, b)
    comp = complement_cell(b.cells[0])
    if not cells_pairwise_disjoint(comp.cells):
        return 0, 0, 1
    if not cells_pairwise_disjoint(s.cells):
        return 0, 0, 1

    (alo, ahi) = spec_a.bbox()
    (blo, bhi) = spec_b.bbox()
    lo = tuple(min(x, y) - step for x, y in zip(alo, blo))
    hi = tuple(max(x, y) + step for x, y in zip(ahi, bhi))
    axes = [grid_coords(l, h, step) for l, h in zip(lo, hi)]
    sampled = mismatches = 0
    for combo in itertools.product(*axes):
        sampled += 1
        in_a = spec_a.contains(combo)
        in_b = spec_b.contains(combo)
        p = Point(dims, combo)
        if contains_point(a, p) != in_a or contains_point(b, p) != in_b:
            mismatches += 1
            continue
        if contains_point(u, p) != (in_a or in_b):
            mismatches += 1
        if contains_point(i, p) != (in_a and in_b):
            mismatches += 1
        if contains_point(s, p) != (in_a and not in_b):
            mismatches += 1
        if contains_point(comp, p) == in_b:
            mismatches += 1
    return sampled, mismatches, 0


def run_correspondence(
    n_pairs: int, seed: int, step: Fraction = Fraction(1, 8)
) -> tuple[int, int, int]:
    """Randomized pairs of 2D/3D shapes; totals (points, mismatches, disjoint violations)."""
    rng = random.Random(seed)
    total = bad = disj = 0
    for k in range(n_pairs):
        three_d = k % 5 < 2  # 40 percent 3D pairs
        dims = 3 if three_d else 2
        max_extent = 1.0 if three_d else 4.0
        offset_scale = 0.75 if three_d else 2.0
        anchor = tuple(q4(rng, -6, 6) for _ in range(dims))
        near = tuple(v + q4(rng, -offset_scale, offset_scale) for v in anchor)
        spec_a = random_spec(rng, dims, anchor, max_extent)
        spec_b = random_spec(rng, dims, near, max_extent)
        sampled, mism, d = check_pair(spec_a, spec_b, step)
        total += sampled
        bad += mism
        disj += d
    return total, bad, disj


# ---------------------------------------------------------------------------
# exact vertex-centroid feasibility oracle (independent of Fourier-Motzkin)
# ---------------------------------------------------------------------------

def _solve_square(rows: list[tuple[list[Fraction], Fraction]]) -> tuple[Fraction, ...] | None:
    """Cramer's rule for a 2x2 or 3x3 exact system; None when singular."""
    n = len(rows)
    a = [list(r[0]) for r in rows]
    b = [r[1] for r in rows]
    if n == 2:
        det = a[0][0] * a[1][1] - a[0][1] * a[1][0]
        if det == 0:
            return None
        x = (b[0] * a[1][1] - a[0][1] * b[1]) / det
        y = (a[0][0] * b[1] - b[0] * a[1][0]) / det
        return (x, y)
    if n == 3:
        def det3(m):
            return (
                m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
            )
        det = det3(a)
        if det == 0:
            return None
        sols = []
        for col in range(3):
            m = [row[:] for row in a]
            for r in range(3):
                m[r][col] = b[r]
            sols.append(det3(m) / det)
        return tuple(sols)
    raise ValueError("only 2x2 and 3x3 supported")


def feasible_by_vertices(system: LinSystem) -> bool:
    """Exact feasibility for bounded 2D/3D systems via closure vertices.

    Vertices of the closed relaxation are boundary intersections; the
    centroid of the satisfying ones lies in the relative interior, so the
    (strictness-aware) system is feasible iff that centroid satisfies it.
    """
    dims = system.dims
    n = len(dims)
    hs = system.halfspaces
    rows = [
        ([h.coeffs.get(d, Fraction(0)) for d in dims], h.bound) for h in hs
    ]

    def closed_ok(pt: tuple[Fraction, ...]) -> bool:
        return all(
            sum(c * v for c, v in zip(r[0], pt)) <= r[1] for r in rows
        )

    vertices = []
    for combo in itertools.combinations(range(len(rows)), n):
        pt = _solve_square([rows[i] for i in combo])
        if pt is not None and closed_ok(pt):
            vertices.append(pt)
    if not vertices:
        return False
    centroid = tuple(
        sum(v[i] for v in vertices) / len(vertices) for i in range(n)
    )
    values = dict(zip(dims, centroid))
    return all(h.evaluate(values) for h in hs)
