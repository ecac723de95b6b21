"""
Command-line interface entry point for crosscheck.
"""

from crosscheck.cli import app


if __name__ == "__main__":
    app()
