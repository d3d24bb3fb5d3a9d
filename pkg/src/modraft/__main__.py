"""Allow ``python -m modraft`` to behave like the ``modraft`` script."""

import sys

from .cli import main

if __name__ == "__main__":
    sys.exit(main())
