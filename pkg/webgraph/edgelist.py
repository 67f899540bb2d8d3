"""
Edge-list files
First line "n <node_count>", or "n <node_count> loops" for a graph that
admits self-loops, then one "<src> <dst>" pair per line; '#' starts a comment
"""

import logging
from pathlib import Path
from typing import Union

from core.exceptions import IoError, ParseError

from .graph_models import DirectedGraph

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

LOOPS_FLAG = 'loops'


def write_edgelist(g: DirectedGraph, path: PathLike) -> None:
    """Write the graph in sorted edge order (UTF-8, LF newlines)"""
    try:
        with open(path, 'w', encoding='utf-8', newline='\n') as file:
            file.write(format_edgelist(g))
    except OSError as e:
        raise IoError(f"cannot write edge list {path}: {e}") from e


def format_edgelist(g: DirectedGraph) -> str:
    header = f"n {g.n} {LOOPS_FLAG}" if g.allow_self_loops else f"n {g.n}"
    return '\n'.join([header] + [f"{s} {d}" for s, d in g.sorted_edges()]) + '\n'


def read_edgelist(path: PathLike) -> DirectedGraph:
    """Parse an edge-list file; errors name the offending line"""
    try:
        with open(path, 'r', encoding='utf-8') as file:
            lines = file.readlines()
    except OSError as e:
        raise IoError(f"cannot read edge list {path}: {e}") from e
    return parse_edgelist(lines)


def parse_edgelist(lines) -> DirectedGraph:
    n = None
    edges = set()
    self_loops = False

    for line_num, line in enumerate(lines, 1):
        line = line.strip()
        if not line or line.startswith('#'):
            continue

        parts = line.split()
        if n is None:
            if len(parts) not in (2, 3) or parts[0] != 'n':
                raise ParseError(f"expected header 'n <node_count> [{LOOPS_FLAG}]', got '{line}'", line_num)
            if len(parts) == 3 and parts[2] != LOOPS_FLAG:
                raise ParseError(f"unknown header flag '{parts[2]}'", line_num)
            n = _parse_index(parts[1], line_num)
            if n < 1:
                raise ParseError(f"node count must be >= 1, got {n}", line_num)
            self_loops = len(parts) == 3
            continue

        if len(parts) != 2:
            raise ParseError(f"expected '<src> <dst>', got '{line}'", line_num)
        src, dst = (_parse_index(p, line_num) for p in parts)
        if src >= n or dst >= n:
            raise ParseError(f"edge ({src}, {dst}) has an endpoint >= n={n}", line_num)
        if (src, dst) in edges:
            logger.warning("Duplicate edge %d -> %d on line %d collapsed", src, dst, line_num)
        if src == dst and not self_loops:
            # Files without the header flag still load; the loop turns it on
            logger.warning("Self-loop %d -> %d on line %d without '%s' header flag",
                           src, dst, line_num, LOOPS_FLAG)
            self_loops = True
        edges.add((src, dst))

    if n is None:
        raise ParseError("missing header 'n <node_count>'")
    return DirectedGraph(n, frozenset(edges), allow_self_loops=self_loops)


def _parse_index(token: str, line_num: int) -> int:
    try:
        value = int(token)
    except ValueError:
        raise ParseError(f"'{token}' is not a decimal integer", line_num) from None
    if value < 0:
        raise ParseError(f"negative index {value}", line_num)
    return value
