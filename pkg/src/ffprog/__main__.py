"""Allow ``python -m ffprog`` to behave like the ``ffprog`` script."""

import sys

from .cli import main

sys.exit(main())
