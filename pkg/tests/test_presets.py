import time

import pytest

from phasekit import ConfigError, run_figure
from phasekit.presets import PRESET_NAMES, PRESETS, preset_entries


def test_preset_names():
    assert PRESET_NAMES == tuple(f"fig{i}" for i in range(1, 12))


def test_unknown_preset_rejected():
    with pytest.raises(ConfigError):
        preset_entries("fig12")


def test_entry_counts():
    counts = {name: len(entries) for name, entries in PRESETS.items()}
    assert counts == {
        "fig1": 6, "fig2": 6, "fig3": 6, "fig4": 6,
        "fig5": 4, "fig6": 4, "fig7": 4, "fig8": 4,
        "fig9": 4, "fig10": 8, "fig11": 4,
    }


def test_boson_average_preset_structure():
    entries = preset_entries("fig1")
    names = [e.filename for e in entries]
    assert "fig1_boson_N2_U0.05_avgC_CN.csv" in names
    assert "fig1_boson_N10_U0.05_avgC_U.csv" in names
    for entry in entries:
        assert entry.config.system == "boson"
        assert entry.config.ubar == 0.05
        assert entry.config.N in (2, 5, 10)
        assert entry.config.steps == 2001
        assert entry.config.tau_max == 40.0
        assert entry.config.initial == "right-well"


def test_fermion_phase_presets_cover_both_pairs():
    cross = preset_entries("fig5")
    assert all(e.config.mode_pair == "l-up/r-down" for e in cross)
    assert all("lu-rd" in e.filename for e in cross)
    same = preset_entries("fig7")
    assert all(e.config.mode_pair == "l-up/r-up" for e in same)
    assert all("lu-ru" in e.filename for e in same)
    assert {e.config.channels[0] for e in cross} == \
        {"avgC_U", "avgS_U", "fluctC", "fluctS"}


def test_imbalance_presets_emit_both_systems():
    entries = preset_entries("fig10")
    systems = {(e.config.system, e.config.ubar) for e in entries}
    assert systems == {("boson", 0.05), ("boson", 0.5),
                       ("fermion", 0.05), ("fermion", 0.5)}
    names = [e.filename for e in entries]
    assert "fig10_fermion_U0.5_fluctW.csv" in names
    strong = preset_entries("fig11")
    assert {e.config.ubar for e in strong} == {5.0}


def test_run_figure_writes_and_is_idempotent(tmp_path):
    paths = run_figure("fig9", tmp_path)
    assert len(paths) == 4
    first = {p.name: p.read_bytes() for p in paths}
    again = run_figure("fig9", tmp_path)
    second = {p.name: p.read_bytes() for p in again}
    assert first == second
    for name, blob in first.items():
        assert blob.startswith(b"tau,")
        assert blob.count(b"\n") == 2002  # header + 2001 rows


def test_all_presets_complete_quickly(tmp_path):
    start = time.perf_counter()
    total = 0
    for name in PRESET_NAMES:
        total += len(run_figure(name, tmp_path / name))
    elapsed = time.perf_counter() - start
    assert total == 56
    assert elapsed < 60.0
