"""Demo regulation rules combining geometry with vague classification.

The window-width rule requires some window wider than 0.60 m, relaxed to
0.50 m when the room is small; rooms whose smallness is undetermined get a
conditional verdict, one sub-outcome per assumption branch.  The natural
ventilation rule requires total window area of at least a tenth of the
floor area, decided exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .store import ModelStore, select, window_belongs
from .vague import (
    Determination,
    PartialModel,
    ThresholdRule,
    classify_value,
    models_for_value,
)

PASS = "pass"
FAIL = "fail"
CONDITIONAL = "conditional"

WIDE_THRESHOLD = Fraction("0.60")
SMALL_ROOM_THRESHOLD = Fraction("0.50")
VENTILATION_RATIO = Fraction(1, 10)

WINDOW_LABEL = "ifcwindow"
HORIZONTAL_DIMS = ("X", "Y")


@dataclass(frozen=True)
class RuleVerdict:
    rule: str
    room: str
    outcome: str
    branches: tuple[tuple[PartialModel, str], ...] = ()

    def text(self) -> str:
        line = f"{self.rule} {self.room} {self.outcome}"
        for model, sub in self.branches:
            assumed = next(iter(model.literals))
            line += f" [assume {assumed}: {sub}]"
        return line


def room_windows(
    store: ModelStore, room_id: str, epsilon: Fraction = Fraction(0)
) -> list:
    """Windows belonging to the room, i.e. whose box meets the room box."""
    return [
        w
        for w in select(store, label=WINDOW_LABEL)
        if window_belongs(store, w.id, room_id, epsilon=epsilon)
    ]


def window_width(window, pick: str = "larger") -> Fraction:
    """Width of a window: the larger (or smaller) horizontal box extent."""
    extents = sorted(window.extent(d) for d in HORIZONTAL_DIMS)
    return extents[-1] if pick == "larger" else extents[0]


def check_window_width(
    store: ModelStore,
    room_id: str,
    rule: ThresholdRule | None = None,
    width_pick: str = "larger",
    epsilon: Fraction = Fraction(0),
) -> RuleVerdict:
    """Window-width verdict for one room, branching on undetermined smallness.

    Thresholds are strict: a 0.60-wide window fails in the not-small branch.
    A room with no windows fails in every branch.
    """
    rule = rule or ThresholdRule()
    room = store.get(room_id)
    widths = [window_width(w, width_pick) for w in room_windows(store, room_id, epsilon)]

    def outcome_for(small: bool) -> str:
        threshold = SMALL_ROOM_THRESHOLD if small else WIDE_THRESHOLD
        return PASS if any(w > threshold for w in widths) else FAIL

    value = store.entities.value(room.id, rule.attribute)
    det = classify_value(value, rule)
    if det is Determination.PROVEN:
        return RuleVerdict("window-width", room_id, outcome_for(small=True))
    if det is Determination.PROVEN_NOT:
        return RuleVerdict("window-width", room_id, outcome_for(small=False))
    models = models_for_value(room_id, value, rule)
    branches = tuple(
        (m, outcome_for(small=next(iter(m.literals)).positive)) for m in models
    )
    return RuleVerdict("window-width", room_id, CONDITIONAL, branches)


def window_face_area(window) -> Fraction:
    """Face area: product of the two largest box extents."""
    extents = sorted(window.extent(d) for d in ("X", "Y", "Z"))
    return extents[-1] * extents[-2]


def check_natural_ventilation(
    store: ModelStore,
    room_id: str,
    ratio: Fraction = VENTILATION_RATIO,
    epsilon: Fraction = Fraction(0),
) -> RuleVerdict:
    """Pass iff total window face area >= ratio * floor area, exactly."""
    room = store.get(room_id)
    floor_area = room.extent("X") * room.extent("Y")
    total = sum(
        (window_face_area(w) for w in room_windows(store, room_id, epsilon)),
        Fraction(0),
    )
    outcome = PASS if total >= ratio * floor_area else FAIL
    return RuleVerdict("ventilation", room_id, outcome)
