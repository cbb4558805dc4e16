"""bimcheck: exact shape algebra and compliance reasoning for building models.

Shapes are finite unions of convex cells over exact rationals; vague room
predicates branch into partial models; prioritized data merges with
cancellation; building-object facts feed spatial and compliance queries
with X3D scene output.
"""

from .linear import (
    Bound,
    Halfspace,
    LinSystem,
    ParseError,
    Rational,
    eliminate,
    entails,
    format_rational,
    halfspace,
    interval_of,
    is_feasible,
    negate,
    parse_constraint,
    rat_of_decimal,
    simplify,
)
from .shapes import (
    AXES,
    BoundingBox,
    ConvexCell,
    DimensionMismatch,
    Point,
    Shape,
    bounding_box,
    box,
    complement,
    complement_cell,
    contains_point,
    dump,
    equivalent,
    intersect,
    is_empty,
    point,
    poly_extrude,
    sample_grid,
    subtract,
    union,
)
from .facts import FactSyntaxError, Term, Var, parse_program, term_text
from .vague import (
    Answer,
    Determination,
    FactSet,
    Literal,
    PartialModel,
    ThresholdRule,
    classify,
    count_global_models,
    enumerate_global_models,
    justify,
    models_for,
    query_room_is,
)
from .merge import Atom, DataItem, MergeStore, Verdict, load_scenario, merge_report
from .store import (
    BimObject,
    CoverageEntry,
    CoverageReport,
    ModelStore,
    coverage,
    iter_coverage,
    load_facts,
    select,
    slice_store,
    window_belongs,
)
from .compliance import (
    RuleVerdict,
    check_natural_ventilation,
    check_window_width,
)
from .x3d import SceneGroup, clip_groups, clip_to_envelope, default_envelope, emit_scene

__version__ = "0.1.0"

__all__ = [
    "AXES",
    "Answer",
    "Atom",
    "BimObject",
    "Bound",
    "BoundingBox",
    "ConvexCell",
    "CoverageEntry",
    "CoverageReport",
    "DataItem",
    "Determination",
    "DimensionMismatch",
    "FactSet",
    "FactSyntaxError",
    "Halfspace",
    "LinSystem",
    "Literal",
    "MergeStore",
    "ModelStore",
    "ParseError",
    "PartialModel",
    "Point",
    "Rational",
    "RuleVerdict",
    "SceneGroup",
    "Shape",
    "Term",
    "ThresholdRule",
    "Var",
    "Verdict",
    "bounding_box",
    "box",
    "check_natural_ventilation",
    "check_window_width",
    "classify",
    "clip_groups",
    "clip_to_envelope",
    "complement",
    "complement_cell",
    "contains_point",
    "count_global_models",
    "coverage",
    "default_envelope",
    "dump",
    "eliminate",
    "emit_scene",
    "entails",
    "enumerate_global_models",
    "equivalent",
    "format_rational",
    "halfspace",
    "intersect",
    "interval_of",
    "is_empty",
    "is_feasible",
    "iter_coverage",
    "justify",
    "load_facts",
    "load_scenario",
    "merge_report",
    "models_for",
    "negate",
    "parse_constraint",
    "parse_program",
    "point",
    "poly_extrude",
    "query_room_is",
    "rat_of_decimal",
    "sample_grid",
    "select",
    "simplify",
    "slice_store",
    "subtract",
    "term_text",
    "union",
    "window_belongs",
]
