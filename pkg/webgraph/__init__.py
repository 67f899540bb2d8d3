"""
Random web-graph models and graph file handling
"""

from .graph_models import (DirectedGraph, GraphModelConfig, MODELS, gen_preferential_attachment,
                           gen_copying, reverse_graph, mix_graphs, complete_graph, empty_graph,
                           mixed_parts, max_degree_ratio, generate_graph)
from .degree_stats import DegreeHistogram, degree_histogram, merge_histograms, fit_degree_exponent
from .edgelist import write_edgelist, read_edgelist, format_edgelist, parse_edgelist

__all__ = ['DirectedGraph', 'GraphModelConfig', 'MODELS', 'gen_preferential_attachment',
           'gen_copying', 'reverse_graph', 'mix_graphs', 'complete_graph', 'empty_graph',
           'mixed_parts', 'max_degree_ratio', 'generate_graph',
           'DegreeHistogram', 'degree_histogram', 'merge_histograms', 'fit_degree_exponent',
           'write_edgelist', 'read_edgelist', 'format_edgelist', 'parse_edgelist']
