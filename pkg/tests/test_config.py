import pytest

from blisp.config import (
    ConfigError,
    load_preset,
    load_scenario,
    parse_scenario,
    preset_names,
    resolve_scenario,
    scenario_metadata,
)

MINIMAL = """
[trace]
segments = [[0.0, 5.0]]
ble_distance_m = 5.0
"""


def write(tmp_path, text):
    path = tmp_path / "scenario.toml"
    path.write_text(text, encoding="utf-8")
    return path


def test_preset_inventory():
    assert preset_names() == [
        "mobile_alternating", "mobile_in", "mobile_out",
        "static_alternating", "static_in", "static_out",
    ]


@pytest.mark.parametrize("name", [
    "static_in", "static_out", "static_alternating",
    "mobile_in", "mobile_out", "mobile_alternating",
])
def test_presets_load_and_validate(name):
    sc = load_preset(name)
    sc.validate()
    assert sc.duration_s == 120
    assert sc.frames_per_transmission == 10
    assert sc.payload_bytes_per_frame == 12
    assert sc.repeats == 5


def test_mobile_presets_shrink_the_backscatter_envelope():
    from blisp.link_model import energy_floor, operational_range

    mobile = load_preset("mobile_in")
    assert mobile.wisp_model.a == pytest.approx(0.1221103, rel=1e-5)
    wall = operational_range(mobile.wisp_model, 2 * energy_floor(mobile.wisp_model))
    assert wall == pytest.approx(0.1, rel=1e-3)
    assert mobile.trace.segments[0][1] < wall


def test_preset_metadata_mirrors_receiver_setups():
    static = scenario_metadata("static_in")
    assert static["receiver"] == "static_impinj"
    assert static["rfid_reader"] == "Impinj R420"
    assert static["reader_tx_power_dbm"] == 32.5
    mobile = scenario_metadata("mobile_out")
    assert mobile["receiver"] == "mobile_minime"
    assert mobile["reader_q_value"] == 5
    assert mobile["reader_session"] == 2


def test_minimal_file_uses_defaults(tmp_path):
    sc = load_scenario(write(tmp_path, MINIMAL))
    assert sc.wisp_model.id == "wisp"
    assert sc.ble_model.energy_per_frame == 8736.0
    assert sc.policy.max_backoff == 0
    assert sc.mode == "blisp"
    sc.validate()


def test_unknown_key_rejected_with_path():
    with pytest.raises(ConfigError, match="polcy: unknown key"):
        parse_scenario({"polcy": {}, "trace": {
            "segments": [[0.0, 5.0]], "ble_distance_m": 5.0}})
    with pytest.raises(ConfigError, match="policy.max_bakoff: unknown key"):
        parse_scenario({"policy": {"max_bakoff": 3}, "trace": {
            "segments": [[0.0, 5.0]], "ble_distance_m": 5.0}})
    with pytest.raises(ConfigError, match="wisp_model.gain: unknown key"):
        parse_scenario({"wisp_model": {"gain": 2}, "trace": {
            "segments": [[0.0, 5.0]], "ble_distance_m": 5.0}})


def test_type_errors_name_the_key():
    with pytest.raises(ConfigError, match="duration_s: expected int"):
        parse_scenario({"duration_s": "long", "trace": {
            "segments": [[0.0, 5.0]], "ble_distance_m": 5.0}})
    with pytest.raises(ConfigError, match=r"trace.segments\[1\]"):
        parse_scenario({"trace": {
            "segments": [[0.0, 5.0], [10.0]], "ble_distance_m": 5.0}})
    with pytest.raises(ConfigError, match="ble_distance_m: expected a number"):
        parse_scenario({"trace": {
            "segments": [[0.0, 5.0]], "ble_distance_m": "near"}})


def test_missing_trace_is_an_error():
    with pytest.raises(ConfigError, match="trace: required section"):
        parse_scenario({})


def test_invalid_values_carry_section_paths():
    with pytest.raises(ConfigError, match="policy"):
        parse_scenario({"policy": {"max_backoff": -1}, "trace": {
            "segments": [[0.0, 5.0]], "ble_distance_m": 5.0}})
    with pytest.raises(ConfigError, match="mode: must be one of"):
        parse_scenario({"mode": "hybrid", "trace": {
            "segments": [[0.0, 5.0]], "ble_distance_m": 5.0}})
    with pytest.raises(ConfigError, match="wisp_model"):
        parse_scenario({"wisp_model": {"a": -1.0}, "trace": {
            "segments": [[0.0, 5.0]], "ble_distance_m": 5.0}})


def test_data_rate_consistency_enforced(tmp_path):
    path = write(tmp_path, "frames_per_transmission = 5\n" + MINIMAL)
    with pytest.raises(ConfigError, match="data_rate_bps"):
        load_scenario(path)


def test_metadata_section_is_free_form(tmp_path):
    path = write(tmp_path, MINIMAL + "\n[metadata]\nnote = \"bench 3\"\n")
    load_scenario(path).validate()
    assert scenario_metadata(str(path)) == {"note": "bench 3"}


def test_resolve_scenario_prefers_presets_then_files(tmp_path):
    name, sc = resolve_scenario("static_in")
    assert name == "static_in"
    path = write(tmp_path, MINIMAL)
    name, sc = resolve_scenario(str(path))
    assert name == "scenario"
    with pytest.raises(ConfigError, match="neither a preset"):
        resolve_scenario("no_such_thing")


def test_model_override_merges_with_defaults(tmp_path):
    path = write(tmp_path, MINIMAL + "\n[wisp_model]\nenergy_per_frame = 1040.0\n")
    sc = load_scenario(path)
    assert sc.wisp_model.energy_per_frame == 1040.0
    assert sc.wisp_model.a == 30.0  # untouched default
