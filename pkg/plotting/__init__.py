"""
SVG plotting of scaling tables and fits
"""

from .plot_manager import PlotManager, PlotStyler, emit_svg_plot

__all__ = ['PlotManager', 'PlotStyler', 'emit_svg_plot']
