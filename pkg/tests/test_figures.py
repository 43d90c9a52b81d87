"""Figure rendering: fixed artifact set, deterministic bytes."""

from __future__ import annotations

from comrat.figures import FIGURE_NAMES, export_figures
from comrat.metrics import LabelledDataset
from comrat.report import build_report


def test_six_svg_files(fig1_dataset, tmp_path):
    report = build_report(fig1_dataset)
    paths = export_figures(report, tmp_path / "figs")
    assert [p.name for p in paths] == FIGURE_NAMES
    for p in paths:
        content = p.read_bytes()
        assert content.startswith(b"<?xml")
        assert b"<svg" in content


def test_rendering_is_deterministic(fig1_dataset, tmp_path):
    report = build_report(fig1_dataset)
    first = export_figures(report, tmp_path / "one")
    second = export_figures(report, tmp_path / "two")
    for a, b in zip(first, second):
        assert a.read_bytes() == b.read_bytes(), a.name


def test_empty_dataset_still_renders_all_figures(tmp_path):
    report = build_report(LabelledDataset(commits=[]))
    paths = export_figures(report, tmp_path)
    assert [p.name for p in paths] == FIGURE_NAMES
    for p in paths:
        assert b"no data" in p.read_bytes()
