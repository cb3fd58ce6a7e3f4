from .cli import Cli, main

__all__ = ["Cli", "main"]
