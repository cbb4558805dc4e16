"""Command-line entry point.

Commands: select, slice, coverage, classify, count-models, merge, check,
export.  Exit status 0 on success, 1 when a compliance rule fails
unconditionally, 2 on input errors.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .compliance import FAIL, check_natural_ventilation, check_window_width
from .facts import FactSyntaxError
from .linear import ParseError, parse_constraint, rat_of_decimal
from .merge import load_scenario, merge_report
from .shapes import dump, is_empty
from .store import (
    CORNER_DIMS,
    SPACE_DIMS,
    ModelStore,
    coverage,
    iter_coverage,
    load_facts,
    select,
    slice_store,
)
from .vague import FactSet, ThresholdRule, count_global_models, justify, query_room_is
from .x3d import SceneGroup, clip_groups, emit_scene

BLUE = (0.0, 0.0, 1.0)
GREEN = (0.0, 1.0, 0.0)
RED = (1.0, 0.0, 0.0)
YELLOW = (1.0, 1.0, 0.0)


def _read_facts(path: str) -> ModelStore:
    text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    store = load_facts(text)
    for w in store.warnings:
        print(f"warning: {w}", file=sys.stderr)
    return store


def _rule_from(args: argparse.Namespace) -> ThresholdRule:
    return ThresholdRule(
        evidence_below=rat_of_decimal(args.small_below),
        counterevidence_above=rat_of_decimal(args.big_above),
    )


def _write_scene(groups: list[SceneGroup], path: str) -> None:
    clipped = clip_groups(groups)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(emit_scene(clipped))


def _write_plan(groups: list[SceneGroup], path: str) -> None:
    from .figures import render_plan

    render_plan(clip_groups(groups), path)


def cmd_select(args: argparse.Namespace) -> int:
    store = _read_facts(args.facts)
    for obj in select(store, label=args.label, tag=args.tag):
        print(obj.fact_line())
    return 0


def _split_constraints(texts: list[str]) -> tuple[list, list]:
    space, corner = [], []
    for t in texts:
        h = parse_constraint(t)
        (dim,) = h.coeffs
        if dim in SPACE_DIMS:
            space.append(h)
        elif dim in CORNER_DIMS:
            corner.append(h)
        else:
            raise ParseError(t, 0, reason=f"unknown variable {dim!r}")
    return space, corner


def cmd_slice(args: argparse.Namespace) -> int:
    import warnings

    store = _read_facts(args.facts)
    space, corner_extra = _split_constraints(args.constraint or [])
    _, corner = _split_constraints(args.corner or [])
    corner = corner_extra + corner
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")  # the CLI prints its own message below
        selected, slice_shape = slice_store(store, space, corner)
    if space and is_empty(slice_shape):
        print("warning: infeasible constraint set; nothing selected", file=sys.stderr)
    for obj in selected:
        print(obj.fact_line())
    if args.x3d or args.png:
        groups = _slice_groups(store, selected, slice_shape)
        if args.x3d:
            _write_scene(groups, args.x3d)
        if args.png:
            _write_plan(groups, args.png)
    return 0


def _slice_groups(store, selected, slice_shape) -> list[SceneGroup]:
    chosen = {o.id for o in selected}
    others = tuple(o.shape() for o in store.objects if o.id not in chosen)
    groups = []
    if others:
        groups.append(SceneGroup("others", BLUE, 0.7, others))
    if selected:
        groups.append(SceneGroup("selected", GREEN, 0.0, tuple(o.shape() for o in selected)))
    if not is_empty(slice_shape):
        groups.append(SceneGroup("slice", YELLOW, 0.8, (slice_shape,)))
    return groups


def cmd_coverage(args: argparse.Namespace) -> int:
    store = _read_facts(args.facts)
    targets = select(store, label=args.target_label, tag=args.target_tag)
    covers = select(store, label=args.cover_label, tag=args.cover_tag)
    if args.jobs > 1 or args.x3d or args.png:
        report = coverage(targets, covers, jobs=args.jobs)
        print(report.to_tsv(dump_shapes=args.dump_shapes))
        entries = report.entries
        print(
            f"# targets={report.n_targets} uncovered={report.n_uncovered}",
            file=sys.stderr,
        )
        if args.x3d or args.png:
            groups = _coverage_groups(targets, entries)
            if args.x3d:
                _write_scene(groups, args.x3d)
            if args.png:
                _write_plan(groups, args.png)
        return 0
    # streaming path: report each target as soon as it is decided
    n_targets = n_uncovered = 0
    for entry in iter_coverage(targets, covers):
        print(entry.tsv_line(), flush=True)
        if args.dump_shapes and not entry.covered:
            for line in dump(entry.leftover).splitlines():
                print(f"# {entry.id} {line}", flush=True)
        n_targets += 1
        n_uncovered += 0 if entry.covered else 1
    print(f"# targets={n_targets} uncovered={n_uncovered}", file=sys.stderr)
    return 0


def _coverage_groups(targets, entries) -> list[SceneGroup]:
    from .shapes import subtract

    covered_parts = []
    leftovers = []
    for target, entry in zip(targets, entries):
        if entry.covered:
            covered_parts.append(target.shape())
        else:
            covered_parts.append(subtract(target.shape(), entry.leftover))
            leftovers.append(entry.leftover)
    groups = []
    covered_parts = [s for s in covered_parts if not is_empty(s)]
    if covered_parts:
        groups.append(SceneGroup("covered", BLUE, 0.5, tuple(covered_parts)))
    if leftovers:
        groups.append(SceneGroup("uncovered", RED, 0.0, tuple(leftovers)))
    return groups


def cmd_classify(args: argparse.Namespace) -> int:
    store = _read_facts(args.facts)
    rule = _rule_from(args)
    entities = [args.room] if args.room else None
    for answer in query_room_is(store.entities, rule, entities):
        print(justify(answer, rule))
    return 0


def cmd_count_models(args: argparse.Namespace) -> int:
    store = _read_facts(args.facts)
    rule = _rule_from(args)
    if args.mode == "partial":
        print(len(query_room_is(store.entities, rule)))
    else:
        print(count_global_models(store.entities, rule))
    return 0


def cmd_merge(args: argparse.Namespace) -> int:
    text = sys.stdin.read() if args.scenario == "-" else open(args.scenario, encoding="utf-8").read()
    store = load_scenario(text)
    for line in merge_report(store):
        print(line)
    return 0


def cmd_check(args: argparse.Namespace) -> int:
    store = _read_facts(args.facts)
    rule = _rule_from(args)
    rooms = [args.room] if args.room else _declared_rooms(store)
    epsilon = rat_of_decimal(args.epsilon)
    failed = False
    for room in rooms:
        if args.rule == "window-width":
            verdict = check_window_width(store, room, rule, epsilon=epsilon)
        else:
            verdict = check_natural_ventilation(store, room, epsilon=epsilon)
        print(verdict.text())
        failed = failed or verdict.outcome == FAIL
    return 1 if failed else 0


def _declared_rooms(store: ModelStore) -> list[str]:
    facts: FactSet = store.entities
    return [e for e in facts.entities if store.has(e)]


def cmd_export(args: argparse.Namespace) -> int:
    store = _read_facts(args.facts)
    doors = tuple(o.shape() for o in select(store, label="ifcdoor"))
    rest = tuple(o.shape() for o in store.objects if o.ifc_label != "ifcdoor")
    groups = []
    if rest:
        groups.append(SceneGroup("objects", BLUE, 0.5, rest))
    if doors:
        groups.append(SceneGroup("doors", GREEN, 0.0, doors))
    if not groups:
        print("warning: no objects to export", file=sys.stderr)
        with open(args.x3d, "w", encoding="utf-8") as fh:
            fh.write(emit_scene([]))
        return 0
    _write_scene(groups, args.x3d)
    if args.png:
        _write_plan(groups, args.png)
    return 0


def _add_threshold_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--small-below", default="10", help="evidence threshold (default 10)")
    p.add_argument("--big-above", default="20", help="counter-evidence threshold (default 20)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bimcheck",
        description="Exact shape algebra and compliance reasoning over building-object facts.",
    )
    parser.add_argument("--version", action="version", version=f"bimcheck {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("select", help="list objects matching label/tag filters")
    p.add_argument("--facts", required=True, help="fact file, or - for stdin")
    p.add_argument("--label")
    p.add_argument("--tag")
    p.set_defaults(func=cmd_select)

    p = sub.add_parser("slice", help="select objects meeting constraints")
    p.add_argument("--facts", required=True)
    p.add_argument("--constraint", action="append", metavar="EXPR",
                   help="e.g. 'Y>=-7' (X/Y/Z space, Xa..Zb corners); repeatable")
    p.add_argument("--corner", action="append", metavar="EXPR",
                   help="corner-coordinate constraint, e.g. 'Ya<-4'; repeatable")
    p.add_argument("--x3d", metavar="OUT")
    p.add_argument("--png", metavar="OUT")
    p.set_defaults(func=cmd_slice)

    p = sub.add_parser("coverage", help="subtract covers from targets")
    p.add_argument("--facts", required=True)
    p.add_argument("--target-label")
    p.add_argument("--target-tag")
    p.add_argument("--cover-label")
    p.add_argument("--cover-tag")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--dump-shapes", action="store_true")
    p.add_argument("--x3d", metavar="OUT")
    p.add_argument("--png", metavar="OUT")
    p.set_defaults(func=cmd_coverage)

    p = sub.add_parser("classify", help="classify rooms with justifications")
    p.add_argument("--facts", required=True)
    p.add_argument("--room")
    _add_threshold_flags(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("count-models", help="count partial or global models")
    p.add_argument("--facts", required=True)
    p.add_argument("--mode", choices=("partial", "global"), required=True)
    _add_threshold_flags(p)
    p.set_defaults(func=cmd_count_models)

    p = sub.add_parser("merge", help="merge a prioritized data scenario")
    p.add_argument("--scenario", required=True, help="scenario file, or - for stdin")
    p.set_defaults(func=cmd_merge)

    p = sub.add_parser("check", help="run a compliance rule")
    p.add_argument("--facts", required=True)
    p.add_argument("--rule", choices=("window-width", "ventilation"), required=True)
    p.add_argument("--room")
    p.add_argument("--epsilon", default="0", help="room-box inflation for window tests")
    _add_threshold_flags(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("export", help="write an X3D scene of the whole model")
    p.add_argument("--facts", required=True)
    p.add_argument("--x3d", required=True, metavar="OUT")
    p.add_argument("--png", metavar="OUT")
    p.set_defaults(func=cmd_export)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (FactSyntaxError, ParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except KeyError as exc:
        print(f"error: unknown identifier {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
