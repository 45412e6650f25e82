import os

import pytest

from blisp.cli import main
from blisp.report import parse_curve, parse_run_table


def invoke(*argv):
    return main(list(argv))


def test_curve_row_count_and_values(tmp_path):
    out = tmp_path / "curve.csv"
    assert invoke("curve", "--models", "default", "--d-min", "1",
                  "--d-max", "120", "--steps", "120", "--out", str(out)) == 0
    rows = parse_curve(out.read_text(encoding="utf-8"))
    assert len(rows) == 240
    assert rows[0][:2] == (1.0, "wisp")
    assert rows[1][:2] == (1.0, "ble")
    assert rows[-1][0] == 120.0
    near_wall = [r for r in rows if r[0] == 30.0 and r[1] == "wisp"]
    assert near_wall and near_wall[0][3].value > 1e30


def test_curve_rejects_zero_dmin(tmp_path, capsys):
    out = tmp_path / "curve.csv"
    assert invoke("curve", "--d-min", "0", "--d-max", "10", "--steps", "5",
                  "--out", str(out)) == 2
    assert "error:" in capsys.readouterr().err
    assert not out.exists()


def test_curve_respects_model_validity(tmp_path):
    out = tmp_path / "curve.csv"
    assert invoke("curve", "--d-min", "1", "--d-max", "250", "--steps", "5",
                  "--out", str(out)) == 2


def test_run_outputs_are_deterministic(tmp_path):
    args = ("run", "--scenario", "static_in", "--policy", "naive",
            "--seed", "7", "--repeats", "5")
    a_out, a_log = tmp_path / "a.csv", tmp_path / "a_log.csv"
    b_out, b_log = tmp_path / "b.csv", tmp_path / "b_log.csv"
    assert invoke(*args, "--out", str(a_out), "--log", str(a_log)) == 0
    assert invoke(*args, "--out", str(b_out), "--log", str(b_log)) == 0
    assert a_out.read_bytes() == b_out.read_bytes()
    assert a_log.read_bytes() == b_log.read_bytes()


def test_run_table_shape_and_setups(tmp_path):
    out = tmp_path / "t.csv"
    assert invoke("run", "--scenario", "static_out", "--policy", "random",
                  "--max-backoff", "10", "--out", str(out)) == 0
    rows = parse_run_table(out.read_text(encoding="utf-8"))
    assert {r.setup for r in rows} == {"blisp_x10"}
    assert {r.metric for r in rows} == {
        "unique_messages", "unique_bytes", "goodput_Bps",
        "energy_per_unique_byte_uJ"}

    assert invoke("run", "--scenario", "static_out", "--setup", "wisp",
                  "--out", str(out)) == 0
    rows = parse_run_table(out.read_text(encoding="utf-8"))
    by_metric = {r.metric: r for r in rows}
    assert by_metric["energy_per_unique_byte_uJ"].mean is None
    assert by_metric["energy_per_unique_byte_uJ"].unbounded_count == 5
    assert by_metric["goodput_Bps"].mean == 0.0


def test_run_raw_mode_reports_per_radio_counts(tmp_path):
    out = tmp_path / "raw.csv"
    assert invoke("run", "--scenario", "static_alternating", "--raw",
                  "--out", str(out)) == 0
    rows = parse_run_table(out.read_text(encoding="utf-8"))
    assert {r.metric for r in rows} == {
        "raw_messages_wisp", "raw_messages_ble",
        "energy_uJ_wisp", "energy_uJ_ble"}


def test_run_log_columns(tmp_path):
    out, log = tmp_path / "t.csv", tmp_path / "log.csv"
    assert invoke("run", "--scenario", "static_in", "--repeats", "2",
                  "--out", str(out), "--log", str(log)) == 0
    lines = log.read_text(encoding="utf-8").splitlines()
    assert lines[0] == ("repeat,period,distance_m,wisp_tx,ble_tx,"
                        "planned_frames,acked_frames,wisp_delivered,"
                        "ble_delivered,wisp_energy_uJ,ble_energy_uJ,"
                        "wisp_message_ids,ble_message_ids")
    assert len(lines) == 1 + 2 * 120
    first = lines[1].split(",")
    assert first[:5] == ["0", "0", "5.0", "1", "0"]


@pytest.mark.parametrize("argv", [
    ("run", "--scenario", "static_in", "--max-backoff", "-1", "--out", "x.csv"),
    ("run", "--scenario", "static_in", "--policy", "random", "--out", "x.csv"),
    ("run", "--scenario", "static_in", "--policy", "naive",
     "--max-backoff", "3", "--out", "x.csv"),
    ("run", "--scenario", "no_such_preset", "--out", "x.csv"),
    ("run", "--scenario", "static_in", "--repeats", "0", "--out", "x.csv"),
    ("sweep", "--scenario", "static_out", "--max-backoff-list", "",
     "--out", "x.csv"),
    ("sweep", "--scenario", "static_out", "--max-backoff-list", "0,-3",
     "--out", "x.csv"),
    ("sweep", "--scenario", "static_out", "--max-backoff-list", "0,a",
     "--out", "x.csv"),
])
def test_validation_failures_exit_nonzero_without_output(argv, tmp_path, capsys):
    out = tmp_path / "x.csv"
    argv = [a if a != "x.csv" else str(out) for a in argv]
    assert invoke(*argv) == 2
    assert "error:" in capsys.readouterr().err
    assert not out.exists()
    assert not os.path.exists(str(out) + ".tmp")


def test_sweep_covers_all_windows(tmp_path):
    out = tmp_path / "sweep.csv"
    assert invoke("sweep", "--scenario", "static_out", "--max-backoff-list",
                  "0,3,10", "--seeds", "3", "--out", str(out)) == 0
    rows = parse_run_table(out.read_text(encoding="utf-8"))
    assert {r.setup for r in rows} == {"blisp_x0", "blisp_x3", "blisp_x10"}
    ordered = [(r.scenario, r.setup, r.metric) for r in rows]
    assert ordered == sorted(ordered)


def test_degenerate_sweep_matches_cmd_run(tmp_path):
    from blisp.config import load_preset

    sweep_out = tmp_path / "sweep.csv"
    run_out = tmp_path / "run.csv"
    assert invoke("sweep", "--scenario", "static_out", "--max-backoff-list",
                  "3", "--seeds", "1", "--out", str(sweep_out)) == 0
    # same scenario seed, one repeat, same policy window
    seed = load_preset("static_out").seed
    assert invoke("run", "--scenario", "static_out", "--policy", "random",
                  "--max-backoff", "3", "--seed", str(seed), "--repeats", "1",
                  "--out", str(run_out)) == 0
    assert sweep_out.read_bytes() == run_out.read_bytes()
