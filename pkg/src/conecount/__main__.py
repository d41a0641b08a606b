"""Module entry point: python -m conecount."""

import sys

from .cli import main

sys.exit(main())
