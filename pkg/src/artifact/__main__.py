"""Allow ``python -m artifact``."""
import sys

from .cli import main

sys.exit(main())
