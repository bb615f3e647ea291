"""Module entry point: python -m acckit behaves like the acckit script."""

import sys

from .cli import main

if __name__ == "__main__":
    sys.exit(main())
