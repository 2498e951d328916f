"""
Command-line surface: configuration, run manifests and subcommands.
"""

__version__ = "0.1.0"
