"""Tests for SVG scaling plots"""

import xml.etree.ElementTree as ET

import numpy as np
import pandas as pd
import pytest

from core.exceptions import InvalidParam, IoError
from experiments import fit_scaling
from plotting import PlotManager, PlotStyler, emit_svg_plot


@pytest.fixture
def scaling_table():
    n = np.array([4.0, 8.0, 16.0, 32.0, 64.0])
    inv = 1.0 + 0.8 * np.log10(n) + np.array([0.01, -0.02, 0.015, -0.01, 0.005])
    return pd.DataFrame({'n': n, 'delta_ave': 1.0 / inv, 'delta_stderr': 0.01 * np.ones(5),
                         'inv_of_ave': inv})


def svg_ids(path):
    root = ET.parse(path).getroot()
    return {el.get('id') for el in root.iter() if el.get('id')}


class TestEmitSvgPlot:

    def test_series_and_fit_ids(self, scaling_table, tmp_path):
        fit = fit_scaling(scaling_table, 'inv_of_ave', 'semilog')
        path = str(tmp_path / "gaps.svg")
        emit_svg_plot(scaling_table, fit, path)
        ids = svg_ids(path)
        assert {'series-inv_of_ave', 'fit-semilog', 'r-squared'} <= ids
        with open(path, encoding='utf-8') as f:
            assert 'R² = ' in f.read()

    def test_byte_identical(self, scaling_table, tmp_path):
        fit = fit_scaling(scaling_table, 'inv_of_ave', 'semilog')
        first, second = tmp_path / "a.svg", tmp_path / "b.svg"
        emit_svg_plot(scaling_table, fit, str(first))
        emit_svg_plot(scaling_table, fit, str(second))
        assert first.read_bytes() == second.read_bytes()

    def test_without_fit(self, scaling_table, tmp_path):
        path = str(tmp_path / "delta.svg")
        emit_svg_plot(scaling_table, None, path, column='delta_ave')
        ids = svg_ids(path)
        assert 'series-delta_ave' in ids
        assert 'r-squared' not in ids

    def test_needs_a_column(self, scaling_table, tmp_path):
        with pytest.raises(InvalidParam):
            emit_svg_plot(scaling_table, None, str(tmp_path / "x.svg"))

    def test_missing_column(self, scaling_table, tmp_path):
        with pytest.raises(InvalidParam):
            emit_svg_plot(scaling_table, None, str(tmp_path / "x.svg"), column='lambda_ave')

    def test_unwritable_path(self, scaling_table, tmp_path):
        blocker = tmp_path / "file.txt"
        blocker.write_text("x")
        with pytest.raises(IoError):
            emit_svg_plot(scaling_table, None, str(blocker / "x.svg"), column='delta_ave')


class TestPlotManager:

    def test_several_columns(self, scaling_table):
        manager = PlotManager()
        manager.create_scaling_plot(scaling_table, ['delta_ave', 'inv_of_ave'])
        ax = manager.figure.axes[0]
        gids = {line.get_gid() for line in ax.get_lines()}
        assert {'series-delta_ave', 'series-inv_of_ave'} <= gids

    def test_loglog_axes(self, scaling_table):
        fit = fit_scaling(scaling_table, 'inv_of_ave', 'loglog')
        manager = PlotManager()
        manager.create_scaling_plot(scaling_table, 'inv_of_ave', fit)
        ax = manager.figure.axes[0]
        assert ax.get_xscale() == 'log'
        assert ax.get_yscale() == 'log'


class TestPlotStyler:

    def test_colors_cycle(self):
        colors = PlotStyler.get_colors(8)
        assert colors[6] == colors[0]

    def test_labels(self):
        assert PlotStyler.column_label('inv_of_ave') == '1/[δ]ave'
        assert PlotStyler.column_label('custom') == 'custom'

    def test_unknown_fit_axes(self):
        with pytest.raises(InvalidParam):
            PlotStyler.axes_for('cubic')
