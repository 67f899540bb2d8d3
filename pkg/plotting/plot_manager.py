"""
Plot Manager Module
Single-panel SVG scaling plots of ensemble tables with a fitted-law overlay
"""

import logging
import os
from typing import Dict, List, Optional, Tuple

import matplotlib

matplotlib.use('Agg')

import numpy as np
import pandas as pd
import matplotlib.pyplot as plt
from matplotlib.figure import Figure

from core.exceptions import InvalidParam, IoError

logger = logging.getLogger(__name__)


class PlotStyler:
    """Handles plot styling and the axis conventions of each fit family"""

    MODERN_COLORS = [
        '#3b82f6',  # Blue
        '#ef4444',  # Red
        '#10b981',  # Green
        '#f59e0b',  # Orange
        '#8b5cf6',  # Purple
        '#06b6d4',  # Cyan
    ]

    COLUMN_LABELS = {
        'delta_ave': '[δ]ave',
        'inv_delta_ave': '[1/δ]ave',
        'inv_of_ave': '1/[δ]ave',
        'lambda_ave': '[λ]ave',
        'eps_ave': '[ε]ave',
        'pass_rate': 'pass rate',
    }

    # x transform, x label, x log scale, y log scale
    FIT_AXES = {
        'semilog': (lambda x: x, '{x}', True, False),
        'loglog': (lambda x: x, '{x}', True, True),
        'polyloglog': (lambda x: np.log(np.log(x)), 'ln ln {x}', False, False),
        'polylog_power': (lambda x: np.log10(x), 'log10 {x}', True, True),
        None: (lambda x: x, '{x}', False, False),
    }

    @staticmethod
    def get_colors(n_colors: int) -> List[str]:
        colors = PlotStyler.MODERN_COLORS
        return [colors[i % len(colors)] for i in range(n_colors)]

    @classmethod
    def column_label(cls, column: str) -> str:
        return cls.COLUMN_LABELS.get(column, column)

    @classmethod
    def axes_for(cls, model: Optional[str]):
        if model not in cls.FIT_AXES:
            raise InvalidParam(f"no axis convention for fit model '{model}'")
        return cls.FIT_AXES[model]

    @staticmethod
    def style_axis(ax, title: str = "", xlabel: str = "", ylabel: str = "",
                   show_grid: bool = True, grid_alpha: float = 0.3):
        """Apply the common axis styling"""
        ax.set_facecolor('#ffffff')
        if title:
            ax.set_title(title, fontsize=13, fontweight='600', pad=15, color='#1e293b')
        if xlabel:
            ax.set_xlabel(xlabel, fontsize=11, fontweight='500', color='#374151')
        if ylabel:
            ax.set_ylabel(ylabel, fontsize=11, fontweight='500', color='#374151')
        if show_grid:
            ax.grid(True, alpha=grid_alpha, linestyle='-', linewidth=0.8, color='#e5e7eb')
            ax.set_axisbelow(True)

        ax.tick_params(axis='both', which='major', labelsize=10, colors='#4b5563',
                       direction='out', length=4, width=1)
        for spine in ax.spines.values():
            spine.set_color('#d1d5db')
            spine.set_linewidth(1)
        ax.spines['top'].set_visible(False)
        ax.spines['right'].set_visible(False)

    @staticmethod
    def apply_modern_theme():
        """Theme plus settings that make repeated SVG exports byte-identical"""
        plt.rcParams.update({
            'font.family': 'sans-serif',
            'font.sans-serif': ['DejaVu Sans'],
            'font.size': 10,
            'axes.titlesize': 14,
            'axes.labelsize': 11,
            'legend.fontsize': 9,
            'axes.linewidth': 1,
            'axes.edgecolor': '#e2e8f0',
            'figure.facecolor': '#ffffff',
            'lines.linewidth': 2.5,
            'lines.markersize': 6,
            'savefig.facecolor': '#ffffff',
            'savefig.edgecolor': 'none',
            'svg.fonttype': 'none',
            'svg.hashsalt': 'adiarank',
        })


class PlotManager:
    """Draws scaling tables and fits into a matplotlib figure"""

    def __init__(self, figure: Optional[Figure] = None):
        self.styler = PlotStyler()
        self.styler.apply_modern_theme()
        self.figure = figure if figure is not None else Figure(figsize=(7.0, 4.8))
        self.figure.patch.set_facecolor('#ffffff')

    def clear_plots(self):
        self.figure.clear()

    def create_scaling_plot(self, table: pd.DataFrame, columns, fit=None,
                            x_column: str = 'n', title: str = "", show_grid: bool = True):
        """Scatter each column against x; overlay the fitted law with its R^2"""
        columns = [columns] if isinstance(columns, str) else list(columns)
        for name in [x_column] + columns:
            if name not in table.columns:
                raise InvalidParam(f"table has no column '{name}'")

        self.clear_plots()
        ax = self.figure.add_subplot(111)
        transform, xlabel, log_x, log_y = self.styler.axes_for(getattr(fit, 'model', None))
        x = table[x_column].to_numpy(dtype=float)

        for column, color in zip(columns, self.styler.get_colors(len(columns))):
            self._plot_series(ax, table, x, transform, column, color)

        if fit is not None:
            self._plot_fit(ax, fit, x, transform)

        if log_x:
            ax.set_xscale('log')
        if log_y:
            ax.set_yscale('log')

        ylabel = ', '.join(self.styler.column_label(c) for c in columns)
        self.styler.style_axis(ax, title=title, xlabel=xlabel.format(x=x_column), ylabel=ylabel,
                               show_grid=show_grid)
        if len(columns) > 1 or fit is not None:
            ax.legend(loc='best', frameon=True, framealpha=1.0)
        ax.margins(x=0.03, y=0.05)
        self.figure.tight_layout()

    def _plot_series(self, ax, table: pd.DataFrame, x: np.ndarray, transform, column: str, color: str):
        y = table[column].to_numpy(dtype=float)
        stderr_column = column[:-len('_ave')] + '_stderr' if column.endswith('_ave') else None
        yerr = table[stderr_column].to_numpy(dtype=float) if stderr_column in table.columns else None

        container = ax.errorbar(transform(x), y, yerr=yerr, label=self.styler.column_label(column),
                                color=color, marker='o', linestyle='none', capsize=3, zorder=3)
        container.lines[0].set_gid(f'series-{column}')

    def _plot_fit(self, ax, fit, x: np.ndarray, transform):
        grid = np.geomspace(x.min(), x.max(), 200) if x.min() > 0 else np.linspace(x.min(), x.max(), 200)
        line, = ax.plot(transform(grid), fit.predict(grid), color='#1e293b', linewidth=1.5,
                        linestyle='--', label=f'{fit.model} fit', zorder=2)
        line.set_gid(f'fit-{fit.model}')
        ax.text(0.03, 0.95, f'R² = {fit.r_squared:.4f}', transform=ax.transAxes, fontsize=10,
                va='top', color='#1e293b', gid='r-squared',
                bbox=dict(boxstyle='round,pad=0.3', facecolor='white', edgecolor='#e2e8f0'))

    def export_plot(self, filename: str, format: str = 'svg', dpi: int = 100):
        """Export the figure; the SVG carries no timestamp"""
        try:
            directory = os.path.dirname(filename)
            if directory:
                os.makedirs(directory, exist_ok=True)
            self.figure.savefig(filename, format=format, dpi=dpi, metadata={'Date': None},
                                bbox_inches='tight', pad_inches=0.2)
        except OSError as e:
            raise IoError(f"cannot write plot {filename}: {e.strerror or e}") from e
        logger.info("Wrote plot to %s", filename)


def emit_svg_plot(table: pd.DataFrame, fit, path: str, column: Optional[str] = None,
                  x_column: Optional[str] = None, title: str = "") -> None:
    """Single-panel SVG of one table column with the fit overlaid"""
    column = column or getattr(fit, 'column', None)
    x_column = x_column or getattr(fit, 'x_column', 'n')
    if column is None:
        raise InvalidParam("a column must be given when no fit is supplied")
    manager = PlotManager()
    manager.create_scaling_plot(table, column, fit, x_column, title)
    manager.export_plot(path, format='svg')
