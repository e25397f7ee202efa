import csv
import json
import xml.etree.ElementTree as ET

import pytest

from parade_cover.cli import BENCH_COLUMNS, EXIT_REFUSED, EXIT_USAGE, main
from parade_cover.coverage import SensorModel
from parade_cover.geometry import Rect, World
from parade_cover.results import read_results, result_lines, strip_timing, write_results
from parade_cover.render import render_frame
from parade_cover.route import ParadeSchedule, make_path, route_instance
from parade_cover.scenario import (ScenarioFormatError, ScenarioNotFound, dump_scenario,
                                   load_scenario, scenario_from_dict, scenario_to_dict,
                                   shipped_scenario)
from parade_cover.simulator import Scenario, ScenarioError, run, scenario_digest

SVG = "{http://www.w3.org/2000/svg}"


def tiny_doc():
    return json.loads(shipped_scenario("tiny").read_text())


def write_doc(tmp_path, doc, name="s.json"):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return p


# -- scenario files ---------------------------------------------------------

def test_city10_loads_with_documented_shape():
    s = load_scenario(shipped_scenario("city10.json"))
    assert len(s.world.obstacles) == 10
    assert s.steps == 37
    assert s.candidate_count == 512
    assert s.team_size == 6
    assert s.sensor.fov_deg == 175.0
    assert s.schedule.points_per_instance >= 20


def test_team_size_zero_names_the_field(tmp_path):
    doc = tiny_doc()
    doc["team_size"] = 0
    with pytest.raises(ScenarioError) as e:
        load_scenario(write_doc(tmp_path, doc))
    assert e.value.field == "team_size"


def test_degenerate_obstacle_names_its_index(tmp_path):
    doc = tiny_doc()
    doc["world"]["obstacles"][1] = [[35, 10], [35, 10]]
    with pytest.raises(ScenarioError) as e:
        load_scenario(write_doc(tmp_path, doc))
    assert e.value.field == "world.obstacles[1]"


@pytest.mark.parametrize("where", ["", "world", "sensor", "heuristic", "schedule"])
def test_unknown_fields_rejected(where, tmp_path):
    doc = tiny_doc()
    target = doc if not where else doc.setdefault(where, {})
    target["colour"] = "red"
    with pytest.raises(ScenarioFormatError) as e:
        load_scenario(write_doc(tmp_path, doc))
    assert e.value.field == (f"{where}.colour" if where else "colour")


def test_error_kinds_are_distinguishable(tmp_path):
    with pytest.raises(ScenarioNotFound):
        load_scenario(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ScenarioFormatError):
        load_scenario(bad)
    doc = tiny_doc()
    doc["candidate_count"] = 1
    with pytest.raises(ScenarioError):
        load_scenario(write_doc(tmp_path, doc))
    # the three kinds are separate classes
    assert not issubclass(ScenarioFormatError, ScenarioError)
    assert not issubclass(ScenarioError, ScenarioFormatError)


def test_missing_required_field(tmp_path):
    doc = tiny_doc()
    del doc["points_per_instance"]
    with pytest.raises(ScenarioFormatError) as e:
        load_scenario(write_doc(tmp_path, doc))
    assert e.value.field == "points_per_instance"


def test_explicit_schedule(tmp_path):
    doc = tiny_doc()
    doc["schedule"] = {"tail": [0, 10, 20], "head": [30, 40, 50]}
    s = load_scenario(write_doc(tmp_path, doc))
    assert s.schedule.tail_arclength == (0, 10, 20)
    doc["schedule"] = {"tail": [0, 10], "head": [30]}
    with pytest.raises(ScenarioError):
        load_scenario(write_doc(tmp_path, doc))


@pytest.mark.parametrize("name", ["tiny", "city10"])
def test_round_trip_is_digest_equal(name, tmp_path):
    s = load_scenario(shipped_scenario(name))
    dump_scenario(s, tmp_path / "again.json")
    t = load_scenario(tmp_path / "again.json")
    assert scenario_digest(s) == scenario_digest(t)
    assert scenario_to_dict(t) == scenario_to_dict(s)
    assert scenario_from_dict(scenario_to_dict(s)) == s


# -- results ----------------------------------------------------------------

def test_result_stream_shape(tmp_path):
    s = load_scenario(shipped_scenario("tiny"))
    res = run(s)
    write_results(res, tmp_path / "r.jsonl", s.name)
    rows = read_results(tmp_path / "r.jsonl")
    assert len(rows) == s.steps + 2
    assert rows[0]["type"] == "header" and rows[0]["digest"] == res.digest
    assert rows[-1]["type"] == "footer" and rows[-1]["steps"] == s.steps
    assert [r["step"] for r in rows[1:-1]] == list(range(s.steps))


def test_floats_keep_full_precision():
    s = load_scenario(shipped_scenario("tiny"))
    res = run(s)
    res.records[0].move_distance = 0.1 + 0.2  # 0.30000000000000004
    line = json.loads(result_lines(res)[1])
    assert line["move_distance"] == 0.1 + 0.2


def test_strip_timing_removes_only_clock_fields():
    rows = [{"type": "step", "solve_seconds": 1.0, "t_boolean": 2.0},
            {"type": "footer", "mean_solve_seconds": 1.0, "max_solve_seconds": 2.0, "steps": 1}]
    assert strip_timing(rows) == [{"type": "step", "t_boolean": 2.0}, {"type": "footer", "steps": 1}]


# -- SVG frames -------------------------------------------------------------

def single_point_scenario():
    return Scenario(
        world=World(Rect.from_coords(0, 0, 20, 20)),
        path=make_path([(10, 10), (15, 10)]),
        schedule=ParadeSchedule((0.0,), (0.0,), 1),
        team_size=1,
        sensor=SensorModel(360.0),
        candidate_count=3,
        seed=1,
    )


def _frame(s, k=0):
    res = run(s)
    return render_frame(s, res.records[k], route_instance(s.path, s.schedule, k)), res


def test_single_robot_single_point_frame():
    svg, _ = _frame(single_point_scenario())
    root = ET.fromstring(svg.encode())
    classes = [el.get("class") for el in root.iter()]
    assert classes.count("guard") == 1
    assert classes.count("sight") == 1
    assert classes.count("candidate") == 3


def test_frames_well_formed_and_byte_identical():
    s = load_scenario(shipped_scenario("tiny"))
    for k in range(s.steps):
        a, _ = _frame(s, k)
        b, _ = _frame(s, k)
        assert a == b
        root = ET.fromstring(a.encode())
        assert root.tag == SVG + "svg"
        assert sum(1 for el in root.iter() if el.get("class") == "obstacle") == 2


def test_uncovered_point_gets_its_own_style():
    # a wall between the only guard and part of the route
    s = Scenario(
        world=World(Rect.from_coords(0, 0, 40, 20), (Rect.from_coords(19, 0, 21, 15),)),
        path=make_path([(5, 5), (35, 5)]),
        schedule=ParadeSchedule((0.0,), (30.0,), 4),
        team_size=1,
        sensor=SensorModel(360.0),
        candidate_count=1,
        seed=3,
    )
    svg, res = _frame(s)
    rec = res.records[0]
    assert rec.t_boolean == 0.0
    root = ET.fromstring(svg.encode())
    dark = [el for el in root.iter() if el.get("class") == "route-point uncovered"]
    assert len(dark) == sum(v == 0 for v in rec.point_coverage) > 0


# -- command line -----------------------------------------------------------

def test_cli_run_writes_results_and_frames(tmp_path, capsys):
    out = tmp_path / "r.jsonl"
    code = main(["run", str(shipped_scenario("tiny")), "--out", str(out), "--frames", str(tmp_path / "f")])
    assert code == 0
    assert len(out.read_text().splitlines()) == 3 + 2
    frames = sorted(p.name for p in (tmp_path / "f").iterdir())
    assert frames == ["frame_0000.svg", "frame_0001.svg", "frame_0002.svg"]


def test_cli_seed_override_changes_digest(tmp_path):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    assert main(["run", "tiny", "--out", str(a)]) == 0
    assert main(["run", "tiny", "--out", str(b), "--seed", "99"]) == 0
    assert read_results(a)[0]["digest"] != read_results(b)[0]["digest"]


def test_cli_oracle_prints_both_values(capsys):
    assert main(["oracle", "tiny.json", "--step", "0"]) == 0
    out = capsys.readouterr().out.splitlines()
    head, row = out[0].split("\t"), out[1].split("\t")
    assert head[:3] == ["step", "oracle_value", "heuristic_value"]
    assert float(row[1]) >= float(row[2])


def test_cli_oracle_refuses_large(capsys):
    assert main(["oracle", "city10", "--step", "0"]) == EXIT_REFUSED
    assert "refused" in capsys.readouterr().err


def test_cli_bench_rows(tmp_path):
    out = tmp_path / "b.csv"
    assert main(["bench", "tiny", "--robots", "1,2", "--candidates", "10,12", "--out", str(out)]) == 0
    rows = list(csv.DictReader(out.open()))
    assert list(rows[0].keys()) == BENCH_COLUMNS
    assert len(rows) == 2 * 2 * 3


@pytest.mark.parametrize("argv", [["run"], ["run", "tiny", "--bogus"], ["frobnicate"], []])
def test_cli_usage_errors(argv, capsys):
    assert main(argv) == EXIT_USAGE


def test_cli_reports_missing_and_bad_files(tmp_path, capsys):
    assert main(["run", str(tmp_path / "nope.json")]) not in (0, EXIT_USAGE)
    bad = tmp_path / "bad.json"
    bad.write_text("[")
    assert main(["run", str(bad)]) not in (0, EXIT_USAGE)
    assert "error" in capsys.readouterr().err
    assert main(["oracle", "tiny", "--step", "99"]) != 0
