from __future__ import annotations

import xml.etree.ElementTree as ET

import pytest

from bimcheck.cli import main
from conftest import FIXTURES


def run(capsys, *argv: str) -> tuple[int, str, str]:
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def facts(name: str) -> str:
    return str(FIXTURES / name)


# ---------------------------------------------------------------------------
# model counting and classification
# ---------------------------------------------------------------------------

def test_count_models_partial_eight_rooms(capsys):
    code, out, _ = run(capsys, "count-models", "--facts", facts("rooms8.pl"), "--mode", "partial")
    assert code == 0 and out.strip() == "14"


def test_count_models_global_eight_rooms(capsys):
    code, out, _ = run(capsys, "count-models", "--facts", facts("rooms8.pl"), "--mode", "global")
    assert code == 0 and out.strip() == "64"


def test_count_models_sixteen_rooms(capsys):
    code, out, _ = run(capsys, "count-models", "--facts", facts("rooms16.pl"), "--mode", "partial")
    assert out.strip() == "30"
    code, out, _ = run(capsys, "count-models", "--facts", facts("rooms16.pl"), "--mode", "global")
    assert out.strip() == "16384"


def test_classify_single_room(capsys):
    code, out, _ = run(capsys, "classify", "--facts", facts("rooms8.pl"), "--room", "r1")
    assert code == 0
    assert out.splitlines()[0] == "room_is(r1, big)"
    assert "25 > 20" in out


def test_classify_all_rooms_lists_fourteen_answers(capsys):
    code, out, _ = run(capsys, "classify", "--facts", facts("rooms8.pl"))
    assert out.count("room_is(") == 14


# ---------------------------------------------------------------------------
# merge
# ---------------------------------------------------------------------------

def test_merge_step2_prints_verdicts_and_flags_invalid(capsys):
    code, out, _ = run(capsys, "merge", "--scenario", facts("merge_step2.pl"))
    assert code == 0
    lines = out.splitlines()
    assert "{Pr=1, Data=ventilation(A), A\\=artificial}" in lines
    assert "{Pr=3, Data=ventilation(artificial)}" in lines
    assert "{Pr=3, Data=boiler(electrical)}" in lines
    assert sum(1 for l in lines if l.startswith("invalid:")) == 1
    assert any("boiler(gas)" in l and l.startswith("invalid:") for l in lines)


# ---------------------------------------------------------------------------
# selection, slicing, coverage
# ---------------------------------------------------------------------------

def test_select_by_label(capsys):
    code, out, _ = run(capsys, "select", "--facts", facts("building.pl"), "--label", "ifcwindow")
    ids = [line.split(", ")[1] for line in out.splitlines()]
    assert ids == ["w1", "w2", "w3", "wv1", "wv2"]


def test_select_round_trips_fact_lines(capsys, tmp_path):
    code, out, _ = run(capsys, "select", "--facts", facts("slice_demo.pl"))
    reread = tmp_path / "again.pl"
    reread.write_text(out, encoding="utf-8")
    code2, out2, _ = run(capsys, "select", "--facts", str(reread))
    assert out2 == out


def test_slice_with_constraints(capsys):
    code, out, _ = run(
        capsys, "slice", "--facts", facts("slice_demo.pl"),
        "--constraint", "Y>=-7", "--constraint", "Y<-4",
    )
    ids = [line.split(", ")[1] for line in out.splitlines()]
    assert ids == ["da", "wa"]


def test_slice_with_corner_filter(capsys):
    code, out, _ = run(
        capsys, "slice", "--facts", facts("slice_demo.pl"), "--corner", "Ya<-4.9",
    )
    ids = [line.split(", ")[1] for line in out.splitlines()]
    assert ids == ["da", "wa"]


def test_slice_scene_clips_unbounded_region(capsys, tmp_path):
    scene = tmp_path / "slice.x3d"
    code, out, _ = run(
        capsys, "slice", "--facts", facts("slice_demo.pl"),
        "--constraint", "Y>=-7", "--constraint", "Y<-4",
        "--x3d", str(scene),
    )
    assert code == 0
    root = ET.fromstring(scene.read_text(encoding="utf-8"))
    assert len(root.findall(".//Box")) >= 3  # others, selected, clipped slice


def test_infeasible_slice_warns_but_exits_zero(capsys):
    code, out, err = run(
        capsys, "slice", "--facts", facts("slice_demo.pl"),
        "--constraint", "Y>=0", "--constraint", "Y<-1",
    )
    assert code == 0 and out == ""
    assert "infeasible" in err


def test_coverage_streams_tsv(capsys, tmp_path):
    model = tmp_path / "cov.pl"
    model.write_text(
        "object(ifcbeam, b1, point(0,0,0), point(4,1,1), arq).\n"
        "object(ifccolumn, c1, point(0,0,0), point(2,1,1), str).\n"
        "object(ifccolumn, c2, point(3,0,0), point(4,1,1), str).\n",
        encoding="utf-8",
    )
    code, out, err = run(
        capsys, "coverage", "--facts", str(model),
        "--target-label", "ifcbeam", "--cover-tag", "str",
    )
    assert code == 0
    assert out.splitlines() == ["b1\tfalse\t1"]
    assert "targets=1 uncovered=1" in err


def test_coverage_with_scene_and_plan_outputs(capsys, tmp_path):
    model = tmp_path / "cov.pl"
    model.write_text(
        "object(ifcbeam, b1, point(0,0,0), point(4,1,1), arq).\n"
        "object(ifccolumn, c1, point(0,0,0), point(2,1,1), str).\n",
        encoding="utf-8",
    )
    scene = tmp_path / "cov.x3d"
    plan = tmp_path / "cov.png"
    code, out, _ = run(
        capsys, "coverage", "--facts", str(model),
        "--target-label", "ifcbeam", "--cover-tag", "str",
        "--x3d", str(scene), "--png", str(plan),
    )
    assert code == 0
    root = ET.fromstring(scene.read_text(encoding="utf-8"))
    materials = {m.get("diffuseColor") for m in root.findall(".//Material")}
    assert materials == {"0 0 1", "1 0 0"}  # covered blue, leftovers red
    assert plan.exists() and plan.stat().st_size > 0


# ---------------------------------------------------------------------------
# compliance checks and export
# ---------------------------------------------------------------------------

def test_check_window_width_single_room_pass(capsys):
    code, out, _ = run(
        capsys, "check", "--facts", facts("building.pl"),
        "--rule", "window-width", "--room", "r2",
    )
    assert code == 0
    assert out.strip() == "window-width r2 pass"


def test_check_window_width_failure_sets_exit_code(capsys):
    code, out, _ = run(
        capsys, "check", "--facts", facts("building.pl"),
        "--rule", "window-width", "--room", "r1",
    )
    assert code == 1
    assert out.strip() == "window-width r1 fail"


def test_check_conditional_room_does_not_fail_run(capsys):
    code, out, _ = run(
        capsys, "check", "--facts", facts("building.pl"),
        "--rule", "window-width", "--room", "r3",
    )
    assert code == 0
    assert "conditional" in out


def test_check_ventilation_all_rooms(capsys):
    code, out, _ = run(capsys, "check", "--facts", facts("building.pl"), "--rule", "ventilation")
    lines = out.splitlines()
    assert "ventilation vr1 pass" in lines
    assert "ventilation vr2 fail" in lines
    assert code == 1


def test_export_writes_scene_with_door_group(capsys, tmp_path):
    scene = tmp_path / "model.x3d"
    code, _, _ = run(capsys, "export", "--facts", facts("building.pl"), "--x3d", str(scene))
    assert code == 0
    root = ET.fromstring(scene.read_text(encoding="utf-8"))
    colors = [m.get("diffuseColor") for m in root.findall(".//Material")]
    assert "0 1 0" in colors and "0 0 1" in colors
    assert len(root.findall(".//Box")) == len(colors)


# ---------------------------------------------------------------------------
# error handling
# ---------------------------------------------------------------------------

def test_unknown_command_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_missing_file_is_input_error(capsys):
    code, _, err = run(capsys, "select", "--facts", "/no/such/file.pl")
    assert code == 2
    assert "error:" in err


def test_syntax_error_is_input_error(capsys, tmp_path):
    bad = tmp_path / "bad.pl"
    bad.write_text("object(oops.\n", encoding="utf-8")
    code, _, err = run(capsys, "select", "--facts", str(bad))
    assert code == 2
    assert "line 1" in err


def test_unknown_room_is_input_error(capsys):
    code, _, err = run(
        capsys, "check", "--facts", facts("building.pl"),
        "--rule", "ventilation", "--room", "r99",
    )
    assert code == 2


def test_facts_from_stdin(capsys, monkeypatch):
    import io

    monkeypatch.setattr("sys.stdin", io.StringIO("room(a). size(a, 25)."))
    code, out, _ = run(capsys, "count-models", "--facts", "-", "--mode", "partial")
    assert code == 0 and out.strip() == "1"
