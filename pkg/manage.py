#!/usr/bin/env python
"""collectorlab command-line entry point."""
import sys


def main():
    """Run collectorlab subcommands."""
    try:
        from collectorlab.cli import run
    except ImportError as exc:
        raise ImportError(
            "Couldn't import Django. Are you sure it's installed and "
            "available on your PYTHONPATH environment variable? Did you "
            "forget to activate a virtual environment?"
        ) from exc
    sys.exit(run(sys.argv[1:]))


if __name__ == '__main__':
    main()
