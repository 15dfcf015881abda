import math
from pathlib import Path

import pytest

import sonarcane as sc

ROOT = Path(__file__).resolve().parents[2]


def test_overlap_distances():
    assert sc.overlap_distance(150, 50) == pytest.approx(186.6, abs=0.1)
    assert sc.overlap_distance(50, 5, 30) == pytest.approx(84.0, abs=0.1)
    with pytest.raises(ValueError):
        sc.overlap_distance(150, 50, 200)


def test_cone_and_measure_against_a_wall():
    scene = sc.Scene(obstacles=[(100, 110, 0, 200)])
    assert sc.cone_min_distance(scene, 0, 150, sc.Aim.Forward) == pytest.approx(100.0)
    assert sc.raycast(scene, 0, 50, 0.0, sc.Aim.Forward) == pytest.approx(100.0)
    chest = sc.SensorSpec(sc.SensorName.Chest)
    assert sc.measure(scene, chest) == pytest.approx(100.0)
    assert sc.measure(sc.Scene(), chest) is None


def test_bad_scene_rejected():
    with pytest.raises(sc.ConfigError):
        sc.Scene(obstacles=[(10, 5, 0, 1)])


def test_classifiers():
    assert sc.classify_chest(150.0) == 1
    assert sc.classify_chest(151.0) == 0
    assert sc.classify_chest(None) == 0
    assert sc.classify_knee(40.0) == 1
    assert sc.classify_toe(15.0) == 2
    assert sc.classify_depth(50.0) == (3, "StopImmediately")
    assert sc.is_downstep(20.0)
    assert sc.detect_upstairs(40.0, 15.0)
    assert not sc.detect_upstairs(40.0, 16.0)
    assert sc.infer_upper_level(100.0) == "Waist"


def test_temperature_and_calibration():
    assert sc.temperature_bias(20, 20) == pytest.approx(1.0)
    assert (1 - sc.temperature_bias(30, 20)) * 100 == pytest.approx(1.76, abs=0.05)
    cal = sc.fit_calibration([(10, 11), (20, 22), (30, 33)])
    assert cal.gain == pytest.approx(1.1)
    assert sc.correct(cal, 22.0) == pytest.approx(20.0)
    with pytest.raises(sc.DegenerateFit):
        sc.fit_calibration([(10, 11)])


def test_verify_tables():
    ok, report = sc.verify_tables()
    assert ok
    assert "150->1/151->0" in report


def test_run_scenario_from_text_and_file():
    rows = sc.run_scenario("OBSTACLE 15 40 0 10\nOBSTACLE 40 70 40 120\nWALK 0 0.3\n")
    assert len(rows) == 10
    assert rows[0]["knee"] == pytest.approx(40.0)
    assert rows[0]["toe"] == pytest.approx(15.0)
    assert rows[0]["upstairs"]
    assert rows[1]["advisory"] == "UpStairsAhead"

    path = ROOT / "scenarios" / "upstairs.scn"
    golden = (ROOT / "tests" / "golden" / "upstairs.csv").read_text()
    assert sc.trace(path) == golden
    assert sc.trace(path) == sc.trace(path.read_text())


def test_parse_error_has_line():
    with pytest.raises(sc.ParseError, match="line 2"):
        sc.run_scenario("WALK 100 1\nBOGUS 1 2\n")
