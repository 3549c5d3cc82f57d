"""
CLI subcommands.

Each module exposes register(subparsers, parents) and a run(args, settings) handler.
"""

from innovrisk.commands import analyze, bench, fit, risk, simulate

__all__ = ["analyze", "bench", "fit", "risk", "simulate"]
