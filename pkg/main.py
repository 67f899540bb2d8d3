#!/usr/bin/env python3
"""
AdiaRank - Main Entry Point
Description: command-line entry point for the adiabatic quantum PageRank toolkit
"""
import sys

from cli.command_line import main

if __name__ == "__main__":
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        sys.stderr.write("\nerror: interrupted: terminated by user\n")
        sys.exit(130)
