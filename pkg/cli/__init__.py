"""
Command-line front end
"""

from .command_line import Command, build_parser, parse_args, dispatch, main

__all__ = ['Command', 'build_parser', 'parse_args', 'dispatch', 'main']
