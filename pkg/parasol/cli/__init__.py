"""CLI entrypoint for parasol."""

from parasol.cli.parasolctl import main

__all__ = ["main"]
